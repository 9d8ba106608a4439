"""Register minimisation and the state/register tradeoff."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cra import Cra, cra_from_invariant, cra_to_wa
from .errors import BudgetExceeded
from .invariant import DEFAULT_LENGTH_BOUND, strongest_invariant
from .linalg import Subspace, vsub, zero_vector
from .wa import WeightedAutomaton, equivalent_wa, minimize_wa
from .zariski import (
    LINEAR, AffineComponent, apply_matrix, canonicalize, check_mode, contains_component_in,
)

DEFAULT_BUDGET = 200_000


def register_complexity(wa: WeightedAutomaton, mode: str = LINEAR,
                        length_bound: int = DEFAULT_LENGTH_BOUND, step_cap: int | None = None):
    """``(count, report)``: the dimension of the hull of the minimal automaton.

    ``report.exact`` is False when the count is only known to be an upper bound.
    """
    check_mode(mode)
    wa_min, _ = minimize_wa(wa)
    rep = strongest_invariant(wa_min, mode, length_bound, step_cap=step_cap)
    return max(rep.dim, 0), rep


def minimize_registers(wa: WeightedAutomaton, mode: str = LINEAR,
                       length_bound: int = DEFAULT_LENGTH_BOUND, step_cap: int | None = None) -> Cra:
    check_mode(mode)
    wa_min, _ = minimize_wa(wa)
    rep = strongest_invariant(wa_min, mode, length_bound, step_cap=step_cap)
    return cra_from_invariant(wa_min, rep.result)


def is_sequentializable(wa: WeightedAutomaton, length_bound: int = DEFAULT_LENGTH_BOUND) -> bool:
    return register_complexity(wa, LINEAR, length_bound)[0] <= 1


@dataclass(frozen=True)
class Representation:
    """Word sets ``S_1..S_l``; component ``i`` is the span of ``u mu(w)``, ``w`` in ``S_i``."""

    word_sets: tuple

    @property
    def total_size(self) -> int:
        return sum(len(w) for s in self.word_sets for w in s)

    @property
    def max_word_length(self) -> int:
        return max((len(w) for s in self.word_sets for w in s), default=0)

    def zset(self, wa: WeightedAutomaton, mode: str = LINEAR):
        comps = [AffineComponent.from_points([wa.reach(w) for w in s], wa.dim, mode)
                 for s in self.word_sets if s]
        return canonicalize(comps, mode, wa.dim)


@dataclass(frozen=True)
class FeasibilityAnswer:
    """``feasible`` is True, False or None (unknown: the node budget ran out)."""

    feasible: bool | None
    witness: Cra | None = None
    search_exhausted: bool = False
    representation: Representation | None = None
    stats: dict = field(default_factory=dict, compare=False, hash=False)


class _Slot:
    __slots__ = ("words", "point", "direction")

    def __init__(self, words, point, direction):
        self.words = words
        self.point = point
        self.direction = direction

    def component(self):
        return AffineComponent(self.point, self.direction)

    def extended(self, new_words, vectors, mode):
        words, point, direction = list(self.words), self.point, self.direction
        for w, x in zip(new_words, vectors):
            if point is None:
                point = x if mode != LINEAR else zero_vector(len(x))
                direction = Subspace.zero(len(x))
            step = x if mode == LINEAR else vsub(x, point)
            if step in direction:
                if not words:
                    words.append(w)
                continue
            direction = direction.with_vectors([step])
            words.append(w)
        return _Slot(tuple(words), point, direction)


def state_register_feasible(wa: WeightedAutomaton, n: int, k: int, mode: str = LINEAR,
                            budget: int = DEFAULT_BUDGET, seed: int | None = None) -> FeasibilityAnswer:
    """Is there an equivalent CRA with at most ``n`` states and ``k`` registers?

    Depth-first search over representations.  Slot ``i`` holds a word set whose
    reach vectors span one component.  At each node the first component/letter
    pair whose image escapes the union is repaired by feeding the image into
    one slot (an existing one or the first empty one); slots never exceed
    dimension ``k``.  Any invariant with ``n`` components of dimension ``<= k``
    guides one branch to success, so an exhausted search proves infeasibility.
    ``budget`` caps the number of nodes; ``seed`` shuffles branch order.
    """
    check_mode(mode)
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    wa_min, _ = minimize_wa(wa)
    rng = random.Random(seed) if seed is not None else None
    nodes = 0
    empty = _Slot((), None, None)
    root = empty.extended([()], [wa_min.initial], mode)
    if root.direction.dim > k:
        return FeasibilityAnswer(False, search_exhausted=True, stats={"nodes": 0})

    def violation(slots):
        comps = [s.component() for s in slots if s.words]
        z = canonicalize(comps, mode, wa_min.dim)
        for i, s in enumerate(slots):
            if not s.words:
                continue
            comp = comps[i]
            for a in wa_min.alphabet:
                if not contains_component_in(z, apply_matrix(comp, wa_min.transitions[a])):
                    return i, a, z
        return None, None, z

    def dfs(slots):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded
        i, a, z = violation(slots)
        if i is None:
            return slots, z
        src = slots[i]
        new_words = [w + (a,) for w in src.words]
        vectors = [wa_min.reach(w) for w in new_words]
        used = sum(1 for s in slots if s.words)
        choices = list(range(used)) + ([used] if used < n else [])
        if rng is not None:
            rng.shuffle(choices)
        for j in choices:
            grown = slots[j].extended(new_words, vectors, mode)
            if grown.direction.dim > k:
                continue
            found = dfs(slots[:j] + [grown] + slots[j + 1:])
            if found is not None:
                return found
        return None

    try:
        found = dfs([root] + [empty] * (n - 1))
    except BudgetExceeded:
        return FeasibilityAnswer(None, stats={"nodes": nodes})
    if found is None:
        return FeasibilityAnswer(False, search_exhausted=True, stats={"nodes": nodes})
    slots, z = found
    rep = Representation(tuple(s.words for s in slots if s.words))
    witness = cra_from_invariant(wa_min, z)
    assert witness.states <= n and witness.registers <= k
    assert equivalent_wa(wa, cra_to_wa(witness, mode)[0]), "witness CRA is not equivalent"
    return FeasibilityAnswer(True, witness, True, rep, stats={"nodes": nodes})


@dataclass(frozen=True)
class Frontier:
    """Optimal ``(states, registers)`` pairs; ``unknown`` lists the state counts
    where some budget ran out, so the pair reported there may not be optimal."""

    points: tuple
    unknown: tuple = ()


def pareto_frontier(wa: WeightedAutomaton, mode: str = LINEAR, max_states: int = 4,
                    budget: int = DEFAULT_BUDGET) -> Frontier:
    check_mode(mode)
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    wa_min, _ = minimize_wa(wa)
    d = wa_min.dim
    points, unknown = [], []
    best = None
    for n in range(1, max_states + 1):
        top = d if best is None else best - 1
        least, undecided = None, False
        for k in range(0, top + 1):
            ans = state_register_feasible(wa_min, n, k, mode, budget)
            if ans.feasible is None:
                undecided = True
            elif ans.feasible:
                least = k
                break
        if undecided:
            unknown.append(n)
        if least is not None:
            points.append((n, least))
            best = least
            if least == 0:
                break
    return Frontier(tuple(points), tuple(unknown))


__all__ = [
    "register_complexity", "minimize_registers", "is_sequentializable", "Representation",
    "FeasibilityAnswer", "state_register_feasible", "Frontier", "pareto_frontier",
]
