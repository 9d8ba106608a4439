"""Z-linear and Z-affine sets: finite unions of (affine) subspaces kept in a
canonical, irredundant, sorted form."""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .linalg import Matrix, Subspace, span, vecmat, vector, vsub, zero_vector

LINEAR = "linear"
AFFINE = "affine"
MODES = (LINEAR, AFFINE)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be 'linear' or 'affine', not {mode!r}")
    return mode


@dataclass(frozen=True, eq=False)
class AffineComponent:
    """``point + direction`` with ``point`` reduced modulo the direction, so equal
    affine subspaces compare equal."""

    point: tuple
    direction: Subspace

    def __post_init__(self):
        if len(self.point) != self.direction.ambient_dim:
            raise DimensionMismatch("point and direction live in different dimensions")
        object.__setattr__(self, "point", self.direction.reduce(vector(self.point)))
        object.__setattr__(self, "_hash", hash((self.point, self.direction.basis)))
        # plain attributes: these are read in every containment test
        object.__setattr__(self, "dim", len(self.direction.basis))
        object.__setattr__(self, "ambient_dim", self.direction.ambient_dim)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AffineComponent):
            return NotImplemented
        return self._hash == other._hash and self.point == other.point \
            and self.direction == other.direction

    @classmethod
    def singleton(cls, x: Sequence) -> "AffineComponent":
        x = vector(x)
        return cls(x, Subspace.zero(len(x)))

    @classmethod
    def linear(cls, s: Subspace) -> "AffineComponent":
        return cls(zero_vector(s.ambient_dim), s)

    @classmethod
    def from_points(cls, points: Iterable[Sequence], ambient_dim: int, mode: str = AFFINE):
        """Affine (or linear) span of a non-empty collection of points."""
        pts = [vector(p) for p in points]
        if not pts:
            raise ValueError("span of an empty point set is not a component")
        if mode == LINEAR:
            return cls.linear(span(pts, ambient_dim))
        p0 = pts[0]
        return cls(p0, span([vsub(q, p0) for q in pts[1:]], ambient_dim))

    @property
    def is_linear(self) -> bool:
        return not any(self.point)

    def sort_key(self):
        return (self.dim, self.direction.basis, self.point)

    def __contains__(self, x) -> bool:
        return vsub(vector(x), self.point) in self.direction

    def issubset(self, other: "AffineComponent") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("components live in different ambient spaces")
        if self.dim >= other.dim:
            # canonical form: equal dimension means containment iff equality
            return self.dim == other.dim and self == other
        return self.direction.issubset(other.direction) and \
            vsub(self.point, other.point) in other.direction

    def as_linear(self) -> "AffineComponent":
        """Smallest linear subspace containing this component."""
        if self.is_linear:
            return self
        return AffineComponent.linear(self.direction.with_vectors([self.point]))

    def generators(self) -> list:
        """Points whose affine span is the component: p and p + b for each basis row b."""
        return [self.point] + [tuple(a + c for a, c in zip(self.point, b)) for b in self.direction.basis]

    def __repr__(self):
        from .linalg import format_scalar
        p = "(" + ",".join(format_scalar(a) for a in self.point) + ")"
        return f"AffineComponent({p} + {self.direction!r})"


def contains_component(a: AffineComponent, b: AffineComponent) -> bool:
    """``b ⊆ a``."""
    return b.issubset(a)


def apply_matrix(a: AffineComponent, m: Matrix) -> AffineComponent:
    """Image ``pM + VM``."""
    if m.rows != a.ambient_dim:
        raise DimensionMismatch(f"cannot apply a {m.rows}x{m.cols} matrix in dimension {a.ambient_dim}")
    return AffineComponent(vecmat(a.point, m), a.direction.image(m))


def affine_span_union(a: AffineComponent, b: AffineComponent) -> AffineComponent:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("components live in different ambient spaces")
    direction = a.direction.join(b.direction).with_vectors([vsub(b.point, a.point)])
    return AffineComponent(a.point, direction)


def linear_span_union(a: AffineComponent, b: AffineComponent) -> AffineComponent:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("components live in different ambient spaces")
    direction = a.direction.join(b.direction).with_vectors([a.point, b.point])
    return AffineComponent.linear(direction)


def span_union(a: AffineComponent, b: AffineComponent, mode: str) -> AffineComponent:
    return linear_span_union(a, b) if mode == LINEAR else affine_span_union(a, b)


def span_of(components: Sequence[AffineComponent], mode: str) -> AffineComponent:
    """Affine (or linear) span of a non-empty family of components."""
    out = components[0] if mode == AFFINE else components[0].as_linear()
    for c in components[1:]:
        out = span_union(out, c, mode)
    return out


@dataclass(frozen=True)
class ZSet:
    """A finite union of affine subspaces in canonical form.

    Components are irredundant (none contained in another) and sorted by
    dimension, then basis, then point.  In linear mode every component passes
    through the origin.  The empty set is allowed and has dimension -1.
    """

    ambient_dim: int
    components: tuple
    mode: str = AFFINE

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.components), default=-1)

    @property
    def length(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __contains__(self, x) -> bool:
        return contains_point(self, x)

    def contains_component(self, a: AffineComponent) -> bool:
        return contains_component_in(self, a)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.components)

    def issubset(self, other: "ZSet") -> bool:
        return all(other.contains_component(c) for c in self.components)

    def union(self, *components: AffineComponent) -> "ZSet":
        if len(components) == 1:
            return self._add(components[0])
        return canonicalize(self.components + tuple(components), self.mode, self.ambient_dim)

    def _add(self, c: AffineComponent) -> "ZSet":
        # O(length) insertion; the existing components are already irredundant
        if c.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"component in dimension {c.ambient_dim}, expected {self.ambient_dim}")
        if self.mode == LINEAR:
            c = c.as_linear()
        # equal dimension: containment is equality
        if c in self._members or any(c.issubset(k) for k in self.components if k.dim > c.dim):
            return self
        kept = [k for k in self.components if k.dim >= c.dim or not k.issubset(c)]
        keys = [k.sort_key() for k in kept]
        kept.insert(bisect.bisect(keys, c.sort_key()), c)
        return ZSet(self.ambient_dim, tuple(kept), self.mode)


def canonicalize(components: Iterable[AffineComponent], mode: str = AFFINE,
                 ambient_dim: int | None = None) -> ZSet:
    check_mode(mode)
    comps = list(components)
    if ambient_dim is None:
        if not comps:
            raise DimensionMismatch("ambient dimension needed for an empty Z-set")
        ambient_dim = comps[0].ambient_dim
    for c in comps:
        if c.ambient_dim != ambient_dim:
            raise DimensionMismatch(f"component in dimension {c.ambient_dim}, expected {ambient_dim}")
    if mode == LINEAR:
        comps = [c.as_linear() for c in comps]
    comps = sorted(set(comps), key=AffineComponent.sort_key)
    kept = []
    # larger components first so every survivor is checked against all bigger ones
    for c in sorted(comps, key=lambda c: -c.dim):
        if not any(c.issubset(k) for k in kept):
            kept.append(c)
    kept.sort(key=AffineComponent.sort_key)
    return ZSet(ambient_dim, tuple(kept), mode)


def empty_zset(ambient_dim: int, mode: str = AFFINE) -> ZSet:
    return ZSet(ambient_dim, (), check_mode(mode))


def full_zset(ambient_dim: int, mode: str = AFFINE) -> ZSet:
    return ZSet(ambient_dim, (AffineComponent.linear(Subspace.full(ambient_dim)),), check_mode(mode))


def contains_point(z: ZSet, x: Sequence) -> bool:
    if len(x) != z.ambient_dim:
        raise DimensionMismatch(f"point of length {len(x)} in ambient dimension {z.ambient_dim}")
    return any(x in c for c in z.components)


def contains_component_in(z: ZSet, a: AffineComponent) -> bool:
    """An irreducible set lies in a finite union iff it lies in one member."""
    if a.ambient_dim != z.ambient_dim:
        raise DimensionMismatch("component and Z-set live in different ambient spaces")
    return a in z._members or any(a.issubset(c) for c in z.components if c.dim > a.dim)


def first_container(z: ZSet, a: AffineComponent):
    """Index of the first component of ``z`` containing ``a``, or None."""
    for i, c in enumerate(z.components):
        if a.issubset(c):
            return i
    return None


def is_invariant(z: ZSet, wa) -> bool:
    """``u`` lies in ``z`` and every component is mapped into ``z`` by every mu(a)."""
    if z.ambient_dim != wa.dim:
        raise DimensionMismatch(f"Z-set in dimension {z.ambient_dim} for a {wa.dim}-dimensional automaton")
    if not contains_point(z, wa.initial):
        return False
    return all(contains_component_in(z, apply_matrix(c, m))
               for c in z.components for m in wa.matrices())


def z_dim(z: ZSet) -> int:
    return z.dim


def z_length(z: ZSet) -> int:
    return z.length


def transport(z: ZSet, m: Matrix) -> ZSet:
    """Image of ``z`` under a linear map, canonicalised."""
    return canonicalize((apply_matrix(c, m) for c in z.components), z.mode, m.cols)
