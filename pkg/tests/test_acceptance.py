"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line (with wall time) to the summary printed
at the end of the pytest run.  Run alone with ``pytest tests/test_acceptance.py``
or as a script: ``python tests/test_acceptance.py``.
"""

import io
import time
from contextlib import contextmanager, redirect_stdout

import pytest

from cantorkit.cli import main
from cantorkit.core_bits import Window, all_reals, eq_star_n
from cantorkit.e0_invariance import (
    check_hamming_bound,
    check_uniform,
    min_drop,
    min_drop_counterexample,
    perm_modulus,
    permutation_map,
)
from cantorkit.generic_elimination import ForcingInstance, bit_of_g, check_lemma_1111, compute_g
from cantorkit.perm_recovery import (
    FinSupPermutation,
    conjugate_successor,
    induced_map,
    permutations_of,
    recover_inverse,
)
from cantorkit.pipeline import run_indproc
from cantorkit.theta_reconstruction import conjugate_shift, reconstruct_tables
from cantorkit.tt_algebra import HomeoPair, OutputTable, pair_and

from conftest import ACCEPTANCE_LINES

FAMILY = list(permutations_of(5))
SWAP05 = FinSupPermutation.swap(0, 5)


@contextmanager
def criterion(name, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        ACCEPTANCE_LINES.append(
            f"{'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s, limit {limit:g}s)"
        )
    assert elapsed < limit, f"{name} took {elapsed:.2f}s"


def _implication(left, right):
    use = tuple(left) + tuple(right)
    k = len(left)
    return OutputTable.from_function(use, lambda *bits: int(not all(bits[:k]) or all(bits[k:])))


def test_indproc_bit_exact():
    with criterion("indproc tables 1 and 2 bit-exact", 1):
        report = run_indproc()
        assert report.passed
        tables = reconstruct_tables(pair_and(), OutputTable((2, 3), (1, 0, 1, 1)), 3)
        assert tables[1] == _implication((4, 5), (6, 7))
        assert tables[2] == _implication(range(8, 12), range(12, 16))
        assert report.steps[1].detail["rendered"] == "A(4)A(5) -> A(6)A(7)"
        assert report.steps[2].detail["rendered"] == "A(8)A(9)A(10)A(11) -> A(12)A(13)A(14)A(15)"


def test_inverse_recursion_family():
    with criterion("inverse recovery for 120 permutations on [0,10)", 5):
        assert len(FAMILY) == 120
        for theta in FAMILY:
            k = conjugate_successor(theta, 12)
            assert recover_inverse(k, theta.inv(0), 10) == theta.inverse_table(10)


def test_elimination_family():
    with criterion("compute_g for n < 12 and use bound over 10^4 samples", 30):
        total = 0
        for i, theta in enumerate(FAMILY):
            g = conjugate_successor(theta, 12)
            inst = ForcingInstance(bit_of_g(g))
            assert [compute_g(inst, n, 16) for n in range(12)] == g
            check = check_lemma_1111(inst, g, 100, seed=i)
            assert check.ok, check.witness
            total += check.samples
        assert total >= 10_000


def test_permutation_modulus_family():
    with criterion("perm_modulus is a modulus on window 12, tight for swap(0,5)", 60):
        w = Window(12)
        for theta in FAMILY:
            f = permutation_map(theta)
            for a in range(5):
                assert check_uniform(f, a, perm_modulus(theta, a), w) is True
        swap = permutation_map(SWAP05)
        assert perm_modulus(SWAP05, 1) == 6
        assert check_uniform(swap, 1, 6, w) is True
        assert check_uniform(swap, 1, 5, w) is not True


def test_min_drop_counterexamples_and_hamming_bound():
    with criterion("min-drop counterexamples b <= 8 and Hamming bound on window 10", 60):
        for b in range(9):
            x, y = min_drop_counterexample(b)
            assert eq_star_n(x, y, 1)
            assert not eq_star_n(min_drop(x), min_drop(y), b)
        w = Window(10)
        by_tail: dict = {}
        xs = list(all_reals(10))
        for a in range(5):
            by_tail.clear()
            for x in xs:
                by_tail.setdefault(x.tail_key(a), []).append(x)
            for group in by_tail.values():
                for x in group:
                    for y in group:
                        assert check_hamming_bound(x, y, a, w)


def test_round_trip_family():
    with criterion("tables 0..7 rebuilt from Phi and table 0 for the family", 30):
        w = Window(12)
        for theta in FAMILY:
            pair = HomeoPair.from_permutation(theta, w)
            phi = conjugate_shift(pair, 8)
            assert reconstruct_tables(phi, pair.forward.table(0), 8) == pair.forward.tables(8)


def test_induced_inverse_family():
    with criterion("induced maps of theta and its inverse cancel on window 12", 60):
        xs = list(all_reals(12))
        for theta in FAMILY:
            inv = theta.inverse()
            for x in xs:
                assert induced_map(theta, induced_map(inv, x)) == x


DEMOS = [
    ["demo", "indproc"],
    ["demo", "lax", "--perm", '{"pairs":[[0,5],[5,0]]}', "--window", "10"],
    ["demo", "homeo", "--perm", '{"pairs":[[0,5],[5,0]]}', "--window", "8"],
]


def _run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue().encode()


def test_demos_deterministic():
    with criterion("repeated demo runs are byte-identical", 60):
        for argv in DEMOS:
            first, second = _run(argv), _run(argv)
            assert first[0] == 0
            assert first == second


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
