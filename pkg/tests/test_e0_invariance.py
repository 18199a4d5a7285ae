import pytest
from hypothesis import given, settings

from cantorkit.core_bits import BitString, EPReal, Window, all_reals, eq_star, eq_star_n, hamming_window
from cantorkit.e0_invariance import (
    IDENTITY,
    MIN_DROP,
    SHIFT,
    CantorMap,
    Counterexample,
    MissingDatabase,
    PreconditionViolated,
    RangeExceeded,
    UniformModulus,
    cantor_map,
    check_hamming_bound,
    check_uniform,
    compose_maps,
    extract_tt_from_forcing,
    least_modulus,
    min_drop,
    min_drop_counterexample,
    modulus_compose,
    perm_modulus,
    permutation_map,
    shift_real,
)
from cantorkit.generic_elimination import BudgetExhausted, PartialOracleFunctional, from_truth_table, never
from cantorkit.perm_recovery import FinSupPermutation, permutations_of
from cantorkit.tt_algebra import OutputTable, identity, pair_and, tables_equivalent

from conftest import reals

SWAP05 = FinSupPermutation.swap(0, 5)
S = EPReal.from_set


def test_perm_modulus_examples():
    assert perm_modulus(FinSupPermutation(), 3) == 3
    assert perm_modulus(SWAP05, 0) == 0
    assert perm_modulus(SWAP05, 1) == 6


def test_perm_modulus_examples_against_brute_force():
    assert least_modulus(permutation_map(FinSupPermutation()), 3, Window(10), 10) == 3
    swap = permutation_map(SWAP05)
    assert check_uniform(swap, 1, 6, Window(10)) is True
    assert check_uniform(swap, 1, 5, Window(10)) is not True


def test_perm_modulus_is_the_least_modulus():
    for theta in list(permutations_of(4)) + [SWAP05]:
        f = permutation_map(theta)
        for a in range(4):
            assert least_modulus(f, a, Window(8), 8) == perm_modulus(theta, a)


def test_check_uniform_examples():
    assert check_uniform(permutation_map(SWAP05), 1, 6, Window(10)) is True
    result = check_uniform(MIN_DROP, 1, 5, Window(10))
    assert isinstance(result, Counterexample) and not result
    assert (result.x, result.y) == (S({0, 5}), S({5}))
    assert result.to_json() == {"X": "100001|0", "Y": "000001|0", "a": 1, "b": 5}
    for a in range(4):
        assert check_uniform(IDENTITY, a, a, Window(6)) is True


def test_counterexample_witness_really_violates():
    result = check_uniform(MIN_DROP, 2, 7, Window(9))
    assert eq_star_n(result.x, result.y, 2)
    assert not eq_star_n(min_drop(result.x), min_drop(result.y), 7)


def test_min_drop_examples():
    assert min_drop(EPReal.constant(0)) == EPReal.constant(0)
    assert min_drop(S({0, 5})) == S({5})
    assert min_drop(EPReal.constant(1)) == EPReal.parse("0|1")
    assert min_drop(EPReal.parse("00|0110")) == EPReal.parse("0000|1001")


@given(reals())
def test_min_drop_pointwise(x):
    y = min_drop(x)
    ones = [i for i in range(40) if x(i)]
    for i in range(40):
        assert y(i) == (0 if ones and i == ones[0] else x(i))


@pytest.mark.parametrize("b, members", [(5, {5}), (0, {1}), (1, {1})])
def test_min_drop_counterexample_examples(b, members):
    x, y = min_drop_counterexample(b)
    assert y == S(members) and x == S(members | {0})
    assert eq_star_n(x, y, 1)
    assert min_drop(x) == y and min_drop(y) == EPReal.constant(0)
    assert not eq_star_n(min_drop(x), min_drop(y), b)


def test_min_drop_is_e0_invariant_on_window():
    xs = list(all_reals(6))
    for x in xs:
        for y in xs:
            if eq_star(x, y) is not None:
                assert eq_star(min_drop(x), min_drop(y)) is not None


def test_check_hamming_bound_examples():
    assert check_hamming_bound(S({0, 5}), S({5}), 1, Window(10))
    x = EPReal.parse("0110|01")
    assert check_hamming_bound(x, x, 0, Window(10))
    assert check_hamming_bound(EPReal.parse("111|0"), EPReal.constant(0), 3, Window(10))
    with pytest.raises(PreconditionViolated):
        check_hamming_bound(S({0, 5}), S({5}), 0, Window(10))


def test_check_hamming_bound_counts_past_a_short_window():
    # images {9} and {} differ only at 9, outside a window of 4
    assert check_hamming_bound(S({9}), S(set()), 10, Window(4))
    x, y = S({0, 1, 2, 9}), S({9})
    assert check_hamming_bound(x, y, 3, Window(4))
    assert hamming_window(min_drop(x), min_drop(y), Window(12)) == 3


def test_hamming_bound_holds_by_brute_force():
    w = Window(7)
    xs = list(all_reals(7))
    for a in range(4):
        worst = 0
        for x in xs:
            for y in xs:
                if eq_star_n(x, y, a):
                    worst = max(worst, hamming_window(min_drop(x), min_drop(y), w))
        assert worst <= a + 2


def test_shift_real():
    assert shift_real(EPReal.parse("10|01")) == EPReal.parse("0|01")
    assert shift_real(EPReal.parse("|01")) == EPReal.parse("|10")


def test_modulus_compose_examples():
    m = UniformModulus((0, 2, 2, 5))
    assert modulus_compose(UniformModulus.identity(10), m) == m
    shift_mod = UniformModulus.shift(8)
    assert modulus_compose(shift_mod, shift_mod)(5) == 3
    assert least_modulus(compose_maps(SHIFT, SHIFT), 5, Window(8), 8) == 3


def test_modulus_compose_after_shift():
    swap_mod = UniformModulus.for_permutation(SWAP05, 8)
    composed = modulus_compose(swap_mod, UniformModulus.shift(8))
    f = compose_maps(permutation_map(SWAP05), SHIFT)
    for a in range(6):
        b = composed(a)
        assert check_uniform(f, a, b, Window(10)) is True
        assert least_modulus(f, a, Window(10), b) <= b


def test_modulus_is_monotone_and_bounded():
    m = UniformModulus((3, 1, 4, 1, 5))
    assert m.modulus == (3, 3, 4, 4, 5)
    with pytest.raises(RangeExceeded):
        m(5)
    with pytest.raises(RangeExceeded):
        modulus_compose(UniformModulus.identity(2), UniformModulus((0, 7)))


def test_composed_moduli_are_upper_bounds():
    family = [FinSupPermutation.from_images(p) for p in ([1, 0, 2], [2, 0, 1], [0, 2, 3, 1])]
    for theta in family:
        for other in family:
            f = compose_maps(permutation_map(theta), permutation_map(other))
            m = modulus_compose(
                UniformModulus.for_permutation(theta, 8), UniformModulus.for_permutation(other, 5)
            )
            for a in range(5):
                assert check_uniform(f, a, m(a), Window(8)) is True


def test_registry():
    assert cantor_map("identity") is IDENTITY
    assert cantor_map("min-drop") is MIN_DROP
    f = cantor_map('perm:{"pairs":[[0,5],[5,0]]}')
    assert f(S({0})) == S({5})
    assert cantor_map("shift")(S({1})) == S({0})
    with pytest.raises(ValueError):
        cantor_map("bogus")


def test_extract_identity_through_splice():
    phi = PartialOracleFunctional(lambda rho, n, budget: rho[n] if n < len(rho) else None, "id")
    db = {n: OutputTable.projection(n) for n in range(2)}
    f = extract_tt_from_forcing(phi, BitString("11"), 2, db, 8)
    assert f.outputs == identity(8).outputs


def test_extract_pair_and_with_empty_sigma():
    phi = from_truth_table(pair_and())
    f = extract_tt_from_forcing(phi, BitString(), 0, {}, 6)
    assert f.outputs == pair_and(6).outputs


def test_extract_finds_positions_hidden_from_single_flips():
    # (A2 A3) -> (A4 A5): flipping one position from all-0 or all-1 rarely shows it
    t = OutputTable.from_function((2, 3, 4, 5), lambda a, b, c, d: (not (a and b)) or (c and d))
    phi = PartialOracleFunctional(
        lambda rho, n, budget: t.evaluate(rho.__getitem__) if len(rho) > 5 else None, "imp"
    )
    f = extract_tt_from_forcing(phi, BitString("0"), 0, {}, 1, probe_bound=10)
    assert f.table(0) == t


def test_extract_errors():
    with pytest.raises(BudgetExhausted):
        extract_tt_from_forcing(never(), BitString("1"), 0, {}, 2)
    with pytest.raises(MissingDatabase):
        extract_tt_from_forcing(from_truth_table(pair_and()), BitString("1"), 2, {0: OutputTable.constant(0)}, 3)


def test_extract_ignores_positions_fixed_by_sigma():
    phi = from_truth_table(pair_and())
    f = extract_tt_from_forcing(phi, BitString("10"), 1, {0: OutputTable.constant(0)}, 4)
    for n in range(1, 4):
        assert tables_equivalent(f.table(n), pair_and().table(n))


@settings(max_examples=10, deadline=None)
@given(reals())
def test_cantor_map_description(x):
    f = CantorMap(lambda y: y, "noop")
    assert f(x) == x and str(f) == "noop"
