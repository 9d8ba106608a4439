"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import contextlib
import random
import time

import pytest

from conftest import alternating, sum_pow2
from oracles import all_words, linear_invariants, naive_eval, reach_vectors, subspace_pool
from wahull.cli import main
from wahull.cra import cra_from_invariant, cra_to_wa
from wahull.document import parse_cra, parse_zset, print_wa
from wahull.generators import lower_bound_wa, random_cra, random_invertible, random_wa
from wahull.invariant import compute_invariant
from wahull.linalg import span
from wahull.minimize import (
    is_sequentializable, minimize_registers, register_complexity, state_register_feasible,
)
from wahull.wa import equivalent_wa, minimize_wa
from wahull.zariski import AFFINE, LINEAR, AffineComponent, canonicalize, full_zset, is_invariant

N_RANDOM = 200


@pytest.fixture
def verdict(capsys, request):
    @contextlib.contextmanager
    def run(label):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                status = "PASS" if ok else "FAIL"
                print(f"\n[{status}] {label} ({time.perf_counter() - t0:.2f}s)")
    return run


def _cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def _rand_wa(seed):
    rng = random.Random(seed)
    return random_wa(rng, rng.randint(1, 3), ("a", "b")[:rng.randint(1, 2)], -2, 2)


def test_criterion_1_alternating(verdict, capsys, tmp_path):
    with verdict("1 alternating: hull length 2 dim 1, 2-state 1-register CRA"):
        path = tmp_path / "alt.json"
        path.write_text(print_wa(alternating()))
        t0 = time.perf_counter()
        code, out = _cli(capsys, "hull", str(path), "--mode", "linear")
        z = parse_zset(out)
        assert code == 0 and (z.length, z.dim) == (2, 1)
        axes = canonicalize([AffineComponent.linear(span([(1, 0)], 2)),
                             AffineComponent.linear(span([(0, 1)], 2))], LINEAR, 2)
        assert z == axes
        code, out = _cli(capsys, "reg-min", str(path))
        cra = parse_cra(out)
        assert code == 0 and (cra.states, cra.registers, cra.mode) == (2, 1, LINEAR)
        for n in range(21):
            assert cra("a" * n) == (2 ** n if n % 2 == 0 else 0)
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_sum_pow2(verdict):
    with verdict("2 sumPow2: linear dim 2, affine line y = x + 1, 1x1 affine CRA"):
        t0 = time.perf_counter()
        wa = sum_pow2()
        assert register_complexity(wa, LINEAR)[0] == 2
        z = compute_invariant(wa, 16, AFFINE).result
        assert (z.length, z.dim) == (1, 1)
        (comp,) = z.components
        for x in range(-5, 6):
            assert (x, x + 1) in comp
        assert (0, 0) not in comp
        cra = minimize_registers(wa, AFFINE)
        assert (cra.states, cra.registers) == (1, 1)
        for n in range(31):
            assert cra("a" * n) == 2 ** (n + 1) - 1
        assert time.perf_counter() - t0 < 1.0


@pytest.mark.parametrize("i,c,length", [(3, 8, 6), (5, 32, 30)])
def test_criterion_3_lower_bound(verdict, i, c, length):
    with verdict(f"3 lower-bound family i={i}: hull length {length}, dim 1 at c={c}"):
        t0 = time.perf_counter()
        z = compute_invariant(lower_bound_wa(i), c, LINEAR).result
        assert (z.length, z.dim) == (length, 1)
        assert time.perf_counter() - t0 < 30.0


def test_criterion_4_feasibility(verdict):
    with verdict("4 feasibility: (2,1) yes with witness, (1,1) no exhausted, (1,2) yes"):
        t0 = time.perf_counter()
        wa = alternating()
        yes = state_register_feasible(wa, 2, 1)
        assert yes.feasible is True
        assert yes.witness.states <= 2 and yes.witness.registers <= 1
        assert equivalent_wa(wa, cra_to_wa(yes.witness)[0])
        no = state_register_feasible(wa, 1, 1)
        assert no.feasible is False and no.search_exhausted
        assert state_register_feasible(wa, 1, 2).feasible is True
        assert time.perf_counter() - t0 < 5.0


def test_criterion_5_sequentiality(verdict):
    with verdict("5 sequentiality: alternating true, sumPow2 false"):
        assert is_sequentializable(alternating()) is True
        assert is_sequentializable(sum_pow2()) is False


def test_criterion_6_property_suite(verdict):
    with verdict(f"6 property suite on {N_RANDOM} random WAs (invariant, oracle containment, minimisation)"):
        for seed in range(N_RANDOM):
            wa = _rand_wa(seed)
            reach = reach_vectors(wa, 12)
            for mode in (LINEAR, AFFINE):
                z = compute_invariant(wa, 3, mode).result
                assert is_invariant(z, wa), (seed, mode)
                assert all(x in z for x in reach), (seed, mode)
                if mode == LINEAR:
                    pool = subspace_pool(list(reach_vectors(wa, 4)), wa.dim)
                    for inv in linear_invariants(wa, pool, 3):
                        assert z.issubset(inv), seed
            wa_min, _ = minimize_wa(wa)
            for w in all_words(wa.alphabet, 8):
                assert wa_min(w) == naive_eval(wa, w), seed


def test_criterion_7_round_trips(verdict):
    with verdict(f"7 round trips on {N_RANDOM} random CRAs and {N_RANDOM} random WAs"):
        for seed in range(N_RANDOM):
            rng = random.Random(seed)
            mode = (LINEAR, AFFINE)[seed % 2]
            cra = random_cra(rng, rng.randint(1, 3), rng.randint(0, 2),
                             ("a", "b")[:rng.randint(1, 2)], mode)
            wa, z = cra_to_wa(cra)
            assert is_invariant(z, wa), seed
            for w in all_words(cra.alphabet, 6):
                assert wa(w) == cra(w), seed
        for seed in range(N_RANDOM):
            wa = _rand_wa(10_000 + seed)
            mode = (LINEAR, AFFINE)[seed % 2]
            cra = cra_from_invariant(wa, full_zset(wa.dim, mode))
            assert equivalent_wa(wa, cra_to_wa(cra)[0]), seed
            for w in all_words(wa.alphabet, 6):
                assert cra(w) == wa(w), seed


SIMILARITY_CASES = [
    ("alternating", alternating, LINEAR), ("alternating", alternating, AFFINE),
    ("sumPow2", sum_pow2, LINEAR), ("sumPow2", sum_pow2, AFFINE),
    ("lower-bound i=3", lambda: lower_bound_wa(3), LINEAR),
]


@pytest.mark.parametrize("case", range(len(SIMILARITY_CASES)),
                         ids=[f"{n}-{m}" for n, _, m in SIMILARITY_CASES])
def test_criterion_8_similarity(verdict, case):
    name, make, mode = SIMILARITY_CASES[case]
    with verdict(f"8 similarity invariance: {name}, {mode}, 50 random bases"):
        wa = make()
        base = register_complexity(wa, mode)[0]
        rng = random.Random(800 + case)
        for _ in range(50):
            p = random_invertible(rng, wa.dim)
            moved = wa.change_basis(p)
            assert equivalent_wa(moved, wa)
            assert register_complexity(moved, mode)[0] == base
