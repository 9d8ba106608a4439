"""Linear and affine cost register automata.

Registers are valued in a row vector ``x`` of length ``registers``.  A
transition replaces ``x`` by ``x F + b``; the output in state ``q`` is
``x c + beta``.  Linear CRAs are those with every ``b`` and ``beta`` zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, NotAnInvariant, UnknownLetter
from .linalg import (
    ONE, ZERO, Matrix, Scalar, Subspace, complete_basis, dot, invert, scalar, unit_vector, vadd, vecmat,
    vector, vsub, zero_vector,
)
from .wa import WeightedAutomaton
from .zariski import AFFINE, LINEAR, AffineComponent, ZSet, apply_matrix, canonicalize, check_mode, \
    first_container, is_invariant


@dataclass(frozen=True)
class Update:
    target: int
    linear: Matrix
    offset: tuple


@dataclass(frozen=True)
class Output:
    linear: tuple
    constant: Scalar = ZERO


@dataclass(frozen=True)
class Cra:
    """Deterministic, complete CRA over ``alphabet`` with states ``0..states-1``.

    ``updates`` maps ``(state, letter)`` to an :class:`Update`; ``outputs[q]`` is
    the output form of state ``q``.
    """

    alphabet: tuple
    states: int
    registers: int
    initial_valuation: tuple
    updates: Mapping
    outputs: tuple
    mode: str = LINEAR
    initial_state: int = 0

    def __post_init__(self):
        check_mode(self.mode)
        k = self.registers
        if self.states < 1:
            raise ValueError("a CRA needs at least one state")
        if not 0 <= self.initial_state < self.states:
            raise ValueError("initial state out of range")
        if len(self.initial_valuation) != k:
            raise DimensionMismatch(f"initial valuation has length {len(self.initial_valuation)}, expected {k}")
        if len(self.outputs) != self.states:
            raise DimensionMismatch("one output per state is required")
        expected = {(q, a) for q in range(self.states) for a in self.alphabet}
        if set(self.updates) != expected:
            raise ValueError("updates must be defined exactly on states x alphabet")
        for (q, a), up in self.updates.items():
            if up.linear.shape != (k, k) or len(up.offset) != k:
                raise DimensionMismatch(f"update on ({q}, {a!r}) does not act on {k} registers")
            if not 0 <= up.target < self.states:
                raise ValueError(f"update on ({q}, {a!r}) targets unknown state {up.target}")
            if self.mode == LINEAR and any(up.offset):
                raise ValueError("linear CRA with a non-zero update offset")
        for q, out in enumerate(self.outputs):
            if len(out.linear) != k:
                raise DimensionMismatch(f"output of state {q} does not read {k} registers")
            if self.mode == LINEAR and out.constant:
                raise ValueError("linear CRA with a non-zero output constant")

    def run(self, word):
        """Final ``(state, valuation)`` after reading ``word``."""
        q, x = self.initial_state, self.initial_valuation
        for a in word:
            try:
                up = self.updates[q, a]
            except KeyError:
                raise UnknownLetter(f"letter {a!r} is not in the alphabet {list(self.alphabet)}") from None
            x = vadd(vecmat(x, up.linear), up.offset)
            q = up.target
        return q, x

    def __call__(self, word) -> Scalar:
        return eval_cra(self, word)


def eval_cra(cra: Cra, word) -> Scalar:
    q, x = cra.run(word)
    out = cra.outputs[q]
    return dot(x, out.linear) + out.constant


def make_cra(alphabet, initial_valuation, updates, outputs, states=None, mode=LINEAR) -> Cra:
    """Build a CRA from plain data.

    ``updates`` maps ``(q, a)`` to ``(target, F)`` or ``(target, F, b)`` with
    ``F`` a nested list; ``outputs`` is a list of ``c`` or ``(c, beta)``.
    """
    v0 = vector(initial_valuation)
    k = len(v0)
    ups = {}
    for key, spec in updates.items():
        target, f = spec[0], spec[1]
        b = vector(spec[2]) if len(spec) > 2 else zero_vector(k)
        ups[key] = Update(target, f if isinstance(f, Matrix) else Matrix.from_rows(f, cols=k), b)
    outs = []
    for o in outputs:
        if isinstance(o, Output):
            outs.append(o)
        elif isinstance(o, tuple) and len(o) == 2 and not isinstance(o[1], (list, tuple)):
            outs.append(Output(vector(o[0]), scalar(o[1])))
        else:
            outs.append(Output(vector(o)))
    if states is None:
        states = len(outs)
    return Cra(tuple(alphabet), states, k, v0, ups, tuple(outs), mode)


def wa_to_single_state_cra(wa: WeightedAutomaton, mode: str = LINEAR) -> Cra:
    """One state, one register per dimension: ``mu(a)`` becomes the self-loop update."""
    d = wa.dim
    ups = {(0, a): Update(0, wa.transitions[a], zero_vector(d)) for a in wa.alphabet}
    return Cra(wa.alphabet, 1, d, wa.initial, ups, (Output(wa.final),), check_mode(mode))


def cra_from_invariant(wa: WeightedAutomaton, z: ZSet) -> Cra:
    """CRA with one state per component of the invariant ``z`` and ``dim(z)``
    registers holding coordinates relative to the component.

    In state ``q`` (component ``p_q + V_q``) a register vector ``x`` stands for
    the automaton vector ``p_q + x E_q`` where the rows of ``E_q`` start with a
    basis of ``V_q``.
    """
    if z.ambient_dim != wa.dim:
        raise DimensionMismatch(f"Z-set in dimension {z.ambient_dim} for a {wa.dim}-dimensional automaton")
    if not is_invariant(z, wa):
        raise NotAnInvariant("the given Z-set is not an invariant of the automaton")
    comps = list(z.components)
    first = next(i for i, c in enumerate(comps) if wa.initial in c)
    comps.insert(0, comps.pop(first))
    ordered = ZSet(z.ambient_dim, tuple(comps), z.mode)
    k = z.dim
    embed, coords = [], []
    for c in comps:
        b = complete_basis(c.direction)
        embed.append(b.take_rows(k))
        coords.append(invert(b).take_cols(k))
    points = [c.point for c in comps]
    v0 = vecmat(vsub(wa.initial, points[0]), coords[0])
    ups = {}
    for q, c in enumerate(comps):
        for a in wa.alphabet:
            m = wa.transitions[a]
            target = first_container(ordered, apply_matrix(c, m))
            f = embed[q] @ m @ coords[target]
            b = vecmat(vsub(vecmat(points[q], m), points[target]), coords[target])
            ups[q, a] = Update(target, f, b)
    outs = tuple(Output(embed[q].apply_right(wa.final), dot(points[q], wa.final))
                 for q in range(len(comps)))
    return Cra(wa.alphabet, len(comps), k, v0, ups, outs, z.mode)


def cra_to_wa(cra: Cra, encoding: str = AFFINE):
    """Weighted automaton simulating ``cra`` plus an invariant of it with one
    component per state and dimension ``registers``.

    ``encoding="affine"`` uses blocks ``(x, 1)`` of size ``k + 1`` per state and
    returns a Z-affine invariant; ``encoding="linear"`` (linear CRAs only) uses
    blocks ``x`` of size ``k`` and returns a Z-linear one.
    """
    check_mode(encoding)
    n, k = cra.states, cra.registers
    if encoding == LINEAR and cra.mode != LINEAR:
        raise ValueError("the linear encoding needs a linear CRA")
    size = k + 1 if encoding == AFFINE else k
    d = n * size

    def block(q, values):
        return zero_vector(q * size) + tuple(values) + zero_vector(d - (q + 1) * size)

    tail = (ONE,) if encoding == AFFINE else ()
    u = block(cra.initial_state, tuple(cra.initial_valuation) + tail)
    mus = {}
    for a in cra.alphabet:
        rows = [list(zero_vector(d)) for _ in range(d)]
        for q in range(n):
            up = cra.updates[q, a]
            col = up.target * size
            for i in range(k):
                rows[q * size + i][col:col + k] = up.linear.row(i)
            if encoding == AFFINE:
                rows[q * size + k][col:col + k] = up.offset
                rows[q * size + k][col + k] = ONE
        mus[a] = Matrix(d, d, tuple(tuple(r) for r in rows))
    v = ()
    for q in range(n):
        out = cra.outputs[q]
        v += tuple(out.linear) + ((out.constant,) if encoding == AFFINE else ())
    wa = WeightedAutomaton(cra.alphabet, u, mus, v)
    comps = []
    for q in range(n):
        direction = Subspace(d, tuple(unit_vector(d, q * size + i) for i in range(k)),
                             tuple(q * size + i for i in range(k)))
        point = unit_vector(d, q * size + k) if encoding == AFFINE else zero_vector(d)
        comps.append(AffineComponent(point, direction))
    return wa, canonicalize(comps, encoding, d)


__all__ = [
    "Cra", "Update", "Output", "eval_cra", "make_cra", "wa_to_single_state_cra",
    "cra_from_invariant", "cra_to_wa",
]
