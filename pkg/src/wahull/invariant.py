"""Computing Z-linear / Z-affine invariants of a weighted automaton.

:func:`compute_invariant` grows a Z-set from ``{u}`` by adding images of its
components until it is stable, and merges two components whenever the length
would exceed ``c**d``.  The merge is chosen by :func:`find_mergeable_pair`,
which only merges components whose span is forced to lie inside every
invariant of length at most ``c``.  :func:`compute_invariant` replaces the
whole family found by that search with its span rather than a single pair.
The result is therefore contained in every such invariant.
"""
from __future__ import annotations

import logging
import math
import os
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceeded, NoMergeablePair
from .linalg import Subspace, span, vecmat, vsub
from .zariski import (
    AFFINE, LINEAR, AffineComponent, ZSet, apply_matrix, canonicalize, check_mode, is_invariant,
    span_of, span_union,
)

logger = logging.getLogger(__name__)

DEFAULT_LENGTH_BOUND = 16
DEFAULT_STEP_CAP = 10**6
# density probe gives up (and reports failure) after this many distinct reach vectors
DEFAULT_PROBE_CAP = 20000


def default_step_cap() -> int:
    env = os.environ.get("WAHULL_STEP_CAP")
    if env:
        return int(env)
    return DEFAULT_STEP_CAP


class _Steps:
    def __init__(self, cap):
        self.cap = default_step_cap() if cap is None else cap
        self.count = 0

    def tick(self, n=1):
        self.count += n
        if self.count > self.cap:
            raise BudgetExceeded(f"step cap of {self.cap} component operations exceeded")


@dataclass(frozen=True)
class InvariantReport:
    result: ZSet
    length_bound: int
    mode: str
    certified_strongest: bool = False
    density_check_passed: bool = False
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def dim(self):
        return self.result.dim

    @property
    def length(self):
        return self.result.length

    @property
    def exact(self) -> bool:
        """Certified, or at least corroborated by the density probe."""
        return self.certified_strongest or self.density_check_passed


def _start_component(wa, mode) -> AffineComponent:
    if mode == LINEAR:
        return AffineComponent.linear(span([wa.initial], wa.dim))
    return AffineComponent.singleton(wa.initial)


def compute_invariant(wa, c: int, mode: str = AFFINE, step_cap: int | None = None) -> InvariantReport:
    """Invariant of ``wa`` contained in every Z-set invariant (of the given
    mode) with at most ``c`` components."""
    check_mode(mode)
    if c < 1:
        raise ValueError("length bound c must be at least 1")
    steps = _Steps(step_cap)
    d = wa.dim
    limit = c ** d
    start = _start_component(wa, mode)
    j = canonicalize([start], mode, d)
    live = set(j.components)
    queue = deque((start, a) for a in wa.alphabet)
    stats = {"iterations": 0, "additions": 0, "merges": 0, "max_length": 1}
    while queue:
        comp, a = queue.popleft()
        if comp not in live:
            continue
        stats["iterations"] += 1
        steps.tick(1 + j.length)
        image = apply_matrix(comp, wa.transitions[a])
        if j.contains_component(image):
            continue
        j = j.union(image)
        stats["additions"] += 1
        fresh = [image]
        stats["max_length"] = max(stats["max_length"], j.length)
        if j.length > limit:
            j, merged = _reduce(j, c, mode, steps)
            stats["merges"] += 1
            # the image may survive the merge untouched
            fresh = [image, merged]
        live = set(j.components)
        for f in fresh:
            if f in live:
                queue.extend((f, b) for b in wa.alphabet)
    if not is_invariant(j, wa):  # pragma: no cover - guards the worklist argument
        raise AssertionError("worklist terminated on a non-invariant set")
    stats["steps"] = steps.count
    return InvariantReport(j, c, mode, stats=stats)


def reduce_zset(z: ZSet, c: int, d: int, mode: str | None = None, step_cap: int | None = None) -> ZSet:
    """Merge one pair of components when ``z`` is longer than ``c**d``."""
    mode = z.mode if mode is None else check_mode(mode)
    if z.length <= c ** d:
        return z
    return _reduce(z, c, mode, _Steps(step_cap), whole_family=False)[0]


def _reduce(z: ZSet, c: int, mode: str, steps: _Steps, whole_family: bool = True):
    comps = list(z.components)
    family = _find_family(comps, list(range(len(comps))), c, mode, steps)
    if not whole_family:
        family = family[:2]
    merged = span_of([comps[i] for i in family], mode)
    rest = [x for k, x in enumerate(comps) if k not in family]
    out = canonicalize(rest + [merged], mode, z.ambient_dim)
    logger.debug("merged %d components into a %d-dimensional one", len(family), merged.dim)
    return out, (merged.as_linear() if mode == LINEAR else merged)


def find_mergeable_pair(components, c: int, mode: str = AFFINE, step_cap: int | None = None):
    """Indices ``i < j`` such that the span of components ``i`` and ``j`` lies in
    every invariant of length ``<= c`` containing all the given components."""
    check_mode(mode)
    comps = list(components)
    family = _find_family(comps, list(range(len(comps))), c, mode, _Steps(step_cap))
    return family[0], family[1]


def find_mergeable_family(components, c: int, mode: str = AFFINE, step_cap: int | None = None):
    """Indices of components whose joint span lies in every invariant of length
    ``<= c`` containing all of them.

    Let ``k`` be the dimension of the joint span.  With at least ``c**k + 1``
    components, either some ``c**(k-1) + 1`` of them span a space of dimension
    below ``k`` (recurse on those) or none do.  In the latter case some
    component of any such invariant holds ``c**(k-1) + 1`` of them by
    pigeonhole, so it contains their ``k``-dimensional span, which is the span
    of the whole family.
    """
    check_mode(mode)
    comps = list(components)
    return _find_family(comps, list(range(len(comps))), c, mode, _Steps(step_cap))


def _find_family(comps, idx, c, mode, steps):
    if len(idx) < 2:
        raise NoMergeablePair("fewer than two components")
    k = span_of([comps[i] for i in idx], mode).dim
    if len(idx) < c ** max(k, 0) + 1:
        raise NoMergeablePair(f"{len(idx)} components spanning dimension {k} need at least {c ** k + 1}")
    if k <= 0:
        return idx
    need = c ** (k - 1) + 1
    for compatible in _low_dim_families(comps, idx, k - 1, mode, steps):
        if len(compatible) >= need:
            return _find_family(comps, compatible, c, mode, steps)
    return idx


def _low_dim_families(comps, idx, max_dim, mode, steps):
    """For each span ``A_Q`` of a minimal index set ``Q`` with ``dim A_Q <=
    max_dim`` (enumerated depth-first in lexicographic order of ``Q``), yield the
    indices of the components contained in ``A_Q``."""
    n = len(idx)

    def dfs(start, current):
        for pos in range(start, n):
            steps.tick()
            cand = comps[idx[pos]]
            if current is None:
                spanned = cand.as_linear() if mode == LINEAR else cand
            else:
                if cand.issubset(current):
                    continue
                spanned = span_union(current, cand, mode)
            if spanned.dim > max_dim:
                continue
            steps.tick(n)
            yield [i for i in idx if comps[i].issubset(spanned)]
            if spanned.dim < max_dim:
                # at the cap every strict enlargement overshoots
                yield from dfs(pos + 1, spanned)

    yield from dfs(0, None)


def commuting_length_bound(d: int, cap: int | None = None):
    """``(2 d^2)!``, the constant bounding the cyclic behaviour of invertible
    ``d x d`` rational matrices.  Returns ``math.inf`` when it exceeds ``cap``."""
    n = 2 * d * d
    value = math.factorial(n)
    if cap is not None and value > cap:
        return math.inf
    return value


def certificate_bound(wa, mode: str):
    """A length that provably bounds the strongest invariant, or None.

    Only the single-letter linear case is covered: the hull then has length
    at most ``d * (2 d^2)!``.
    """
    if mode != LINEAR or len(wa.alphabet) > 1:
        return None
    if wa.dim == 0 or not wa.alphabet:
        return 1
    return wa.dim * commuting_length_bound(wa.dim)


def density_check(wa, z: ZSet, probe_len: int, probe_cap: int = DEFAULT_PROBE_CAP) -> bool:
    """Does every component of ``z`` equal the span of the reach vectors
    ``u mu(w)``, ``|w| <= probe_len``, that it contains?

    This is necessary for ``z`` to be the closure of the reachability set, not
    sufficient.  Stops early once every component is spanned; gives up and
    answers False after ``probe_cap`` distinct vectors.
    """
    comps = list(z.components)
    spans = [None] * len(comps)
    remaining = set(range(len(comps)))

    def record(x):
        for i in list(remaining):
            c = comps[i]
            if x not in c:
                continue
            s = spans[i]
            if s is None:
                s = (x, span([x], z.ambient_dim) if z.mode == LINEAR else Subspace.zero(z.ambient_dim))
            else:
                p0, direction = s
                step = x if z.mode == LINEAR else vsub(x, p0)
                if step not in direction:
                    direction = direction.with_vectors([step])
                s = (p0, direction)
            spans[i] = s
            if s[1].dim == c.dim:
                remaining.discard(i)

    seen = {wa.initial}
    frontier = [wa.initial]
    record(wa.initial)
    depth = 0
    while remaining and frontier and depth < probe_len:
        depth += 1
        nxt = []
        for x in frontier:
            for m in wa.matrices():
                y = vecmat(x, m)
                if y in seen:
                    continue
                seen.add(y)
                if len(seen) > probe_cap:
                    return False
                nxt.append(y)
                record(y)
                if not remaining:
                    return True
        frontier = nxt
    return not remaining


def strongest_invariant(wa, mode: str = LINEAR, length_bound: int = DEFAULT_LENGTH_BOUND,
                        probe_len: int | None = None, step_cap: int | None = None,
                        probe_cap: int = DEFAULT_PROBE_CAP) -> InvariantReport:
    """Best available approximation of the linear/affine hull of ``wa``.

    ``certified_strongest`` is set only when ``length_bound`` reaches a proven
    bound on the hull length; ``density_check_passed`` records a necessary
    condition for the result being the hull.
    """
    rep = compute_invariant(wa, length_bound, mode, step_cap)
    z = rep.result
    if probe_len is None:
        probe_len = 2 * wa.dim * z.length
    dense = density_check(wa, z, probe_len, probe_cap)
    bound = certificate_bound(wa, mode)
    certified = dense and bound is not None and length_bound >= bound
    stats = dict(rep.stats, probe_len=probe_len)
    return InvariantReport(z, length_bound, mode, certified, dense, stats)


__all__ = [
    "InvariantReport", "compute_invariant", "reduce_zset", "find_mergeable_pair", "find_mergeable_family",
    "strongest_invariant", "commuting_length_bound", "certificate_bound", "density_check",
    "DEFAULT_LENGTH_BOUND",
]
