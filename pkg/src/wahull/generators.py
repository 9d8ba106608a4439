"""Witness families of weighted automata.

* ``lower_bound_wa(i)``: unary automaton whose transition matrix is a block
  diagonal of cyclic permutation matrices, one block per prime ``p <= i``.
  Its linear hull is a union of ``prod(p)`` lines.
* ``merge_example_wa(n)``: ``2n``-dimensional automaton over ``abcd`` whose hull
  has ``n!`` lines that can all be merged into one component without raising
  the dimension.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations

from .cra import Cra, Output, Update
from .linalg import Matrix, Subspace, block_diag, rank, scalar, span, unit_vector, vector, zero_vector
from .wa import WeightedAutomaton
from .zariski import AFFINE, LINEAR, AffineComponent, ZSet, canonicalize

FAMILIES = ("lower-bound", "merge")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    size: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.size < 2:
            raise ValueError("size parameter must be at least 2")

    def build(self) -> WeightedAutomaton:
        if self.family == "lower-bound":
            return lower_bound_wa(self.size)
        return merge_example_wa(self.size)


def primes_up_to(n: int) -> list:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def cycle_matrix(p: int) -> Matrix:
    """Permutation matrix of the cycle (1 2 ... p): row j has its 1 in column j+1."""
    return Matrix(p, p, tuple(unit_vector(p, (j + 1) % p) for j in range(p)))


def transposition_matrix(n: int) -> Matrix:
    """Permutation matrix swapping the first two coordinates."""
    rows = [unit_vector(n, j) for j in range(n)]
    rows[0], rows[1] = rows[1], rows[0]
    return Matrix(n, n, tuple(rows))


def lower_bound_wa(i: int) -> WeightedAutomaton:
    if i < 2:
        raise ValueError("need i >= 2")
    mu = block_diag(*(cycle_matrix(p) for p in primes_up_to(i)))
    d = mu.rows
    u = vector(range(1, d + 1))
    return WeightedAutomaton(("a",), u, {"a": mu}, u)


def lower_bound_hull_length(i: int) -> int:
    return math.prod(primes_up_to(i))


def merge_example_wa(n: int) -> WeightedAutomaton:
    if n < 3:
        raise ValueError("need n >= 3")
    ident = Matrix.identity(n)
    zero = Matrix.zeros(n, n)
    # M: y -> (y_1 + y_n, y_2, ..., y_n);  M': cycles y_1..y_{n-1}, fixes y_n
    m_rows = [unit_vector(n, j) for j in range(n)]
    m_rows[n - 1] = tuple(vector([1] + [0] * (n - 2) + [1]))
    m = Matrix(n, n, tuple(m_rows))
    m_prime = block_diag(cycle_matrix(n - 1), Matrix.identity(1))
    mus = {
        "a": block_diag(cycle_matrix(n), ident),
        "b": block_diag(transposition_matrix(n), ident),
        "c": block_diag(zero, m),
        "d": block_diag(zero, m_prime),
    }
    u = vector(list(range(1, n + 1)) + [0] * (n - 1) + [1])
    return WeightedAutomaton(("a", "b", "c", "d"), u, mus, vector([1] * (2 * n)))


def _first_block_orbit(n: int):
    tail = zero_vector(n - 1) + (1,)
    return [vector(list(p) + list(tail)) for p in permutations(range(1, n + 1))]


def merge_example_invariant(n: int) -> ZSet:
    """Two-component Z-linear invariant: the span of the permuted initial
    vectors and the span of the second block."""
    d = 2 * n
    second = Subspace(d, tuple(unit_vector(d, j) for j in range(n, d)), tuple(range(n, d)))
    first = span(_first_block_orbit(n), d)
    return canonicalize([AffineComponent.linear(first), AffineComponent.linear(second)], LINEAR, d)


def merge_example_hull(n: int) -> ZSet:
    """The linear hull: ``n!`` lines through the permuted initial vectors and
    the second block."""
    d = 2 * n
    second = Subspace(d, tuple(unit_vector(d, j) for j in range(n, d)), tuple(range(n, d)))
    lines = [AffineComponent.linear(span([x], d)) for x in _first_block_orbit(n)]
    return canonicalize(lines + [AffineComponent.linear(second)], LINEAR, d)


def generate(family: str, size: int) -> WeightedAutomaton:
    return FamilySpec(family, size).build()


# plain random instances for property tests

def _entries(rng, n, low, high):
    return vector(rng.randint(low, high) for _ in range(n))


def random_matrix(rng: random.Random, rows: int, cols: int, low: int = -2, high: int = 2) -> Matrix:
    return Matrix(rows, cols, tuple(_entries(rng, cols, low, high) for _ in range(rows)))


def random_wa(rng: random.Random, dim: int, alphabet=("a",), low: int = -2, high: int = 2) -> WeightedAutomaton:
    return WeightedAutomaton(tuple(alphabet), _entries(rng, dim, low, high),
                             {a: random_matrix(rng, dim, dim, low, high) for a in alphabet},
                             _entries(rng, dim, low, high))


def random_invertible(rng: random.Random, dim: int, low: int = -3, high: int = 3) -> Matrix:
    while True:
        m = random_matrix(rng, dim, dim, low, high)
        if rank(m) == dim:
            return m


def random_cra(rng: random.Random, states: int, registers: int, alphabet=("a",), mode: str = AFFINE,
               low: int = -2, high: int = 2) -> Cra:
    k = registers

    def offset():
        return _entries(rng, k, low, high) if mode == AFFINE else zero_vector(k)

    ups = {(q, a): Update(rng.randrange(states), random_matrix(rng, k, k, low, high), offset())
           for q in range(states) for a in alphabet}
    outs = tuple(Output(_entries(rng, k, low, high),
                        scalar(rng.randint(low, high) if mode == AFFINE else 0))
                 for _ in range(states))
    return Cra(tuple(alphabet), states, k, _entries(rng, k, low, high), ups, outs, mode)
