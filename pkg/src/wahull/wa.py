"""Weighted automata over Q as ``(u, mu, v)`` triples."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import AlphabetMismatch, DimensionMismatch, UnknownLetter
from .linalg import (
    Matrix, Scalar, Subspace, ZERO, block_diag, complete_basis, dot, invert, span, vecmat, vector,
)


@dataclass(frozen=True)
class WeightedAutomaton:
    """A ``dim``-dimensional weighted automaton.

    ``initial`` is the row vector u, ``final`` the column vector v (stored as a
    tuple) and ``transitions[a]`` the matrix mu(a).  The series realised is
    ``w -> u mu(w) v``.
    """

    alphabet: tuple
    initial: tuple
    transitions: Mapping[str, Matrix]
    final: tuple

    def __post_init__(self):
        d = len(self.initial)
        if len(self.final) != d:
            raise DimensionMismatch(f"initial has length {d} but final has length {len(self.final)}")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("repeated letter in alphabet")
        if set(self.transitions) != set(self.alphabet):
            raise AlphabetMismatch("transitions must be given for exactly the alphabet letters")
        for a, m in self.transitions.items():
            if m.shape != (d, d):
                raise DimensionMismatch(f"mu({a}) has shape {m.shape}, expected {(d, d)}")

    @classmethod
    def build(cls, initial: Iterable, transitions: Mapping[str, Iterable], final: Iterable,
              alphabet: Sequence[str] | None = None) -> "WeightedAutomaton":
        """Convenience constructor from plain nested lists."""
        u = vector(initial)
        if alphabet is None:
            alphabet = tuple(transitions)
        mats = {a: m if isinstance(m, Matrix) else Matrix.from_rows(m, cols=len(u))
                for a, m in transitions.items()}
        return cls(tuple(alphabet), u, mats, vector(final))

    @property
    def dim(self) -> int:
        return len(self.initial)

    def mu(self, a: str) -> Matrix:
        try:
            return self.transitions[a]
        except KeyError:
            raise UnknownLetter(f"letter {a!r} is not in the alphabet {list(self.alphabet)}") from None

    def matrices(self):
        return [self.transitions[a] for a in self.alphabet]

    def reach(self, word: Iterable[str]) -> tuple:
        """The left reachability vector ``u mu(word)``."""
        x = self.initial
        for a in word:
            x = vecmat(x, self.mu(a))
        return x

    def __call__(self, word) -> Scalar:
        return eval_wa(self, word)

    def transpose(self) -> "WeightedAutomaton":
        """Mirror automaton ``(v^t, mu^t, u^t)``; it realises the reversed series."""
        return WeightedAutomaton(self.alphabet, self.final,
                                 {a: m.transpose() for a, m in self.transitions.items()}, self.initial)

    def change_basis(self, p: Matrix) -> "WeightedAutomaton":
        """Similar automaton ``(u P, P^-1 mu P, P^-1 v)``."""
        pinv = invert(p)
        return WeightedAutomaton(self.alphabet, vecmat(self.initial, p),
                                 {a: pinv @ m @ p for a, m in self.transitions.items()},
                                 pinv.apply_right(self.final))


def eval_wa(wa: WeightedAutomaton, word) -> Scalar:
    return dot(wa.reach(word), wa.final)


def words(alphabet: Sequence[str], max_len: int):
    """All words up to ``max_len`` in length-lexicographic order, as tuples."""
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


def _reach_span(start: tuple, mats: list, d: int) -> Subspace:
    # worklist closure; a vector is kept only when it enlarges the span
    s = span([start], d)
    todo = [start] if s.dim else []
    while todo:
        x = todo.pop(0)
        for m in mats:
            y = vecmat(x, m)
            if y not in s:
                s = s.with_vectors([y])
                todo.append(y)
    return s


def left_reach_basis(wa: WeightedAutomaton) -> Subspace:
    """Span of ``u mu(Sigma*)``."""
    return _reach_span(wa.initial, wa.matrices(), wa.dim)


def right_reach_basis(wa: WeightedAutomaton) -> Subspace:
    """Span of ``mu(Sigma*) v`` (column vectors written as rows)."""
    return _reach_span(wa.final, [m.transpose() for m in wa.matrices()], wa.dim)


def _left_reduce(wa: WeightedAutomaton):
    """Restrict to the span of the left reachability set.  Returns the reduced
    automaton and the ``d x r`` matrix sending old row vectors to new ones."""
    s = left_reach_basis(wa)
    r = s.dim
    b = complete_basis(s)
    binv = invert(b)
    proj = binv.take_cols(r)                  # x -> coordinates on the first r basis vectors
    basis = b.take_rows(r)
    u2 = vecmat(wa.initial, proj)
    mus = {a: basis @ m @ proj for a, m in wa.transitions.items()}
    v2 = basis.apply_right(wa.final)
    return WeightedAutomaton(wa.alphabet, u2, mus, v2), proj


def _right_reduce(wa: WeightedAutomaton):
    t, _ = _left_reduce(wa.transpose())
    s = right_reach_basis(wa)
    return t.transpose(), s.basis_matrix().transpose()


def is_minimal(wa: WeightedAutomaton) -> bool:
    return left_reach_basis(wa).dim == wa.dim and right_reach_basis(wa).dim == wa.dim


def minimize_wa(wa: WeightedAutomaton):
    """Minimal automaton realising the same series, with the composite
    ``d x d'`` matrix mapping row vectors of ``wa`` to row vectors of the result
    (reachability vectors and invariants transport along it)."""
    left_map = Matrix.identity(wa.dim)
    cur = wa
    while True:
        if left_reach_basis(cur).dim < cur.dim:
            cur, m = _left_reduce(cur)
            left_map = left_map @ m
            continue
        if right_reach_basis(cur).dim < cur.dim:
            cur, m = _right_reduce(cur)
            left_map = left_map @ m
            continue
        return cur, left_map


def difference_wa(a: WeightedAutomaton, b: WeightedAutomaton) -> WeightedAutomaton:
    """Automaton realising ``[[a]] - [[b]]``."""
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch("automata have different alphabets")
    mus = {x: block_diag(a.transitions[x], b.transitions[x]) for x in a.alphabet}
    return WeightedAutomaton(a.alphabet, a.initial + b.initial, mus,
                             a.final + tuple(-c for c in b.final))


def equivalent_wa(a: WeightedAutomaton, b: WeightedAutomaton) -> bool:
    diff = difference_wa(a, b)
    return all(dot(x, diff.final) == 0 for x in left_reach_basis(diff).basis)


def is_sequential_wa(wa: WeightedAutomaton) -> bool:
    """Deterministic underlying automaton: u has one non-zero entry and every
    row of every mu(a) has at most one."""
    if sum(1 for x in wa.initial if x) != 1:
        return wa.dim == 1
    for m in wa.matrices():
        if any(sum(1 for x in row if x) > 1 for row in m.entries):
            return False
    return True


def zero_wa(alphabet: Sequence[str]) -> WeightedAutomaton:
    return WeightedAutomaton(tuple(alphabet), (), {a: Matrix.zeros(0, 0) for a in alphabet}, ())


def coerce_word(word) -> tuple:
    if isinstance(word, str):
        return tuple(word)
    return tuple(word)


__all__ = [
    "WeightedAutomaton", "eval_wa", "left_reach_basis", "right_reach_basis", "minimize_wa",
    "equivalent_wa", "is_sequential_wa", "is_minimal", "difference_wa", "words", "zero_wa", "ZERO",
]
