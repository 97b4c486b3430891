from fractions import Fraction

import pytest

from covercount import closed_forms as cf
from covercount.errors import BadArguments
from covercount.permutations import hurwitz

from oracles import naive_hurwitz


@pytest.mark.parametrize("fn, args, expected", [
    (cf.twos_complete, (2,), Fraction(1)),
    (cf.twos_complete, (1,), Fraction(1, 2)),
    (cf.twos_complete, (3,), Fraction(3, 2)),
    (cf.twos_cycles, (2, 2, 2), Fraction(1, 4)),
    (cf.twos_cycles, (2, 3, 1), Fraction(0)),
    (cf.twos_cycles, (1, 1, 1), Fraction(1, 2)),
    (cf.twos_even, (2,), Fraction(1, 2)),
    (cf.twos_even, (3,), Fraction(1, 2)),
    (cf.twos_odd, (1,), Fraction(1)),
    (cf.twos_odd, (2,), Fraction(1)),
    (cf.near_cycle_pair, (4, 2, 2), Fraction(1, 2)),
    (cf.near_cycle_pair, (4, 1, 2), Fraction(1)),
    (cf.near_cycle_pair, (4, 1, 3), Fraction(1)),
])
def test_examples(fn, args, expected):
    assert fn(*args) == expected


def test_small_cases_against_naive_oracle():
    assert naive_hurwitz(2, [(2,), (2,), (1, 1)], connected=True) == Fraction(1, 2)
    assert naive_hurwitz(4, [(4,), (2, 2), (2, 1, 1)], connected=True) == Fraction(1, 2)
    assert naive_hurwitz(3, [(3,), (2, 1), (2, 1)], connected=True) == 1
    assert naive_hurwitz(4, [(3, 1), (3, 1), (3, 1)], connected=True) == 1


CASES = [(family, args) for family, inputs in cf.admissible_inputs(6).items() for args in inputs]


@pytest.mark.parametrize("family, args", CASES, ids=[f"{f}{a}" for f, a in CASES])
def test_closed_form_equals_connected_oracle(family, args):
    formula, profiles_of = cf.FAMILIES[family]
    profiles = profiles_of(*args)
    d = sum(profiles[0])
    assert formula(*args) == hurwitz(d, profiles, connected=True)


def test_disconnected_reading_fails_for_near_cycle_pair():
    # the extra disconnected covers here are a 3-cycle cover plus a fixed sheet
    profiles = cf.near_cycle_pair_profiles(4, 1, 3)
    assert hurwitz(4, profiles, connected=False) == Fraction(4, 3)
    assert cf.near_cycle_pair(4, 1, 3) == 1


def test_admissible_inputs_cover_the_boundary():
    inputs = cf.admissible_inputs(6)
    assert (6, 3, 4) in inputs["near_cycle_pair"]          # a = b = d/2 + 1
    assert cf.near_cycle_pair(6, 3, 4) == Fraction(3, 2)
    assert inputs["twos_odd"] == [(1,), (2,)]


@pytest.mark.parametrize("k", range(1, 6))
def test_twos_cycles_symmetric(k):
    for b in range(1, 2 * k):
        assert cf.twos_cycles(k, 2 * k - b, b) == cf.twos_cycles(k, b, 2 * k - b)


@pytest.mark.parametrize("d", range(2, 12))
def test_near_cycle_pair_monotone_in_a(d):
    for n in range(1, d // 2 + 1):
        values = [cf.near_cycle_pair(d, n, a) for a in range(2, d // 2 + 2)]
        assert values == sorted(values)
        assert values[-1] == (Fraction(min(d // 2, n)) / (2 if d == 2 * n else 1))


@pytest.mark.parametrize("fn, args", [
    (cf.twos_complete, (0,)),
    (cf.twos_even, (0,)),
    (cf.twos_odd, (0,)),
    (cf.twos_cycles, (2, 2, 1)),
    (cf.twos_cycles, (2, 4, 0)),
    (cf.near_cycle_pair, (4, 3, 2)),      # n > d/2
    (cf.near_cycle_pair, (4, 1, 4)),      # a > b
    (cf.near_cycle_pair, (4, 1, 1)),      # a < 2
    (cf.near_cycle_pair, (4, 0, 2)),
])
def test_out_of_domain_raises(fn, args):
    with pytest.raises(BadArguments):
        fn(*args)
