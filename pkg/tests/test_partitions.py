from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from covercount.errors import DegreeTooSmall, NonPositivePart, OverRamified, ProfileDegreeMismatch
from covercount.partitions import (
    Multiset, Partition, aut_profile_list, aut_single, format_list, make_partition,
    pad_with_simple, parse_list, parse_partition, partitions_of, rh_defect,
)

parts = st.lists(st.integers(1, 6), min_size=0, max_size=10)


@pytest.mark.parametrize("raw, expected", [
    ([1, 3, 2], (3, 2, 1)),
    ([4], (4,)),
    ([2, 2, 1, 1], (2, 2, 1, 1)),
])
def test_make_partition(raw, expected):
    assert make_partition(raw) == expected
    assert isinstance(make_partition(raw), Partition)


def test_partition_rejects_non_positive():
    with pytest.raises(NonPositivePart):
        make_partition([2, 0])
    with pytest.raises(NonPositivePart):
        make_partition([-1])


def test_empty_partition():
    p = make_partition([])
    assert p == () and p.sum == 0 and p.length == 0
    with pytest.raises(NonPositivePart):
        make_partition([], allow_empty=False)


@given(parts)
def test_make_partition_idempotent(raw):
    p = make_partition(raw)
    assert make_partition(p) == p
    assert list(p) == sorted(raw, reverse=True)
    assert p.sum == sum(raw) and p.length == len(raw)


@pytest.mark.parametrize("parts, expected", [
    ((2, 2), 2),
    ((2, 1, 1), 2),
    ((3, 2, 1), 1),
    ((1, 1, 1, 1), 24),
])
def test_aut_single(parts, expected):
    assert aut_single(Partition(parts)) == expected


@given(parts)
def test_aut_single_divides_length_factorial(raw):
    p = Partition(raw)
    a = aut_single(p)
    assert factorial(len(p)) % a == 0
    assert (a == 1) == (len(set(p)) == len(p))


def test_aut_single_matches_stabilizer_count():
    p = (3, 2, 2, 1, 1, 1)
    fixed = sum(1 for tau in permutations(range(len(p))) if all(p[tau[i]] == p[i] for i in range(len(p))))
    assert aut_single(p) == fixed == 12


def test_aut_profile_list():
    assert aut_profile_list([(3, 1), (2, 2), (2, 1, 1), (2, 1, 1)]) == 2
    assert aut_profile_list([(4,)]) == 1
    assert aut_profile_list([(2, 2), (2, 2), (2, 2)]) == 6


@given(st.lists(st.sampled_from([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]), max_size=6),
       st.randoms())
def test_aut_profile_list_order_free(profiles, rnd):
    shuffled = list(profiles)
    rnd.shuffle(shuffled)
    assert aut_profile_list(profiles) == aut_profile_list(shuffled)


def test_rh_defect_examples():
    assert rh_defect(4, 1, [(4,), (2, 2), (2, 2), (2, 1, 1)]) == 0
    assert rh_defect(2, 1, [(2,), (2,)]) == 2
    assert rh_defect(1, 0, []) == 0
    assert rh_defect(2, 0, [(2,)] * 4) == -2


def test_rh_defect_rejects_wrong_degree():
    with pytest.raises(ProfileDegreeMismatch):
        rh_defect(4, 1, [(3, 2)])


def test_pad_with_simple_examples():
    assert pad_with_simple(2, 1, [(2,), (2,)]) == [(2,)] * 4
    example = [(4,), (2, 2), (2, 2), (2, 1, 1)]
    assert pad_with_simple(4, 1, example) == example
    assert pad_with_simple(3, 1, [(3,), (3,), (2, 1)]) == [(3,), (3,), (2, 1), (2, 1)]


def test_pad_with_simple_errors():
    with pytest.raises(OverRamified):
        pad_with_simple(2, 0, [(2,), (2,), (2,), (2,)])
    with pytest.raises(DegreeTooSmall):
        pad_with_simple(1, 1, [(1,)])


@given(st.integers(2, 6), st.integers(0, 2), st.data())
def test_pad_with_simple_zeroes_defect(d, g, data):
    pool = list(partitions_of(d))
    profiles = data.draw(st.lists(st.sampled_from(pool), max_size=4))
    if rh_defect(d, g, profiles) < 0:
        return
    padded = pad_with_simple(d, g, profiles)
    assert rh_defect(d, g, padded) == 0
    assert padded[:len(profiles)] == [Partition(p) for p in profiles]


def test_text_syntax_round_trip():
    assert parse_list("2,2,1,1") == [2, 2, 1, 1]
    assert parse_list("") == []
    assert parse_partition("1,3,2") == (3, 2, 1)
    assert format_list(Partition([1, 2, 2])) == "2,2,1"
    assert format_list([]) == ""
    with pytest.raises(NonPositivePart):
        parse_list("2,x")


@given(st.lists(st.integers(1, 9), max_size=8), st.lists(st.integers(1, 9), max_size=4))
def test_multiset_add_remove_round_trip(values, extra):
    m = Multiset(values)
    assert m.add(*extra).remove(*extra) == m
    assert len(m.add(*extra)) == len(values) + len(extra)
    assert sorted(m.values(), reverse=True) == m.values() == sorted(values, reverse=True)


def test_multiset_pairs_and_strip():
    m = Multiset([2, 1, 2, 4, 1])
    assert m.items == ((4, 1), (2, 2), (1, 2))
    assert m.strip(1) == Multiset([4, 2, 2])
    assert m.count(2) == 2 and 3 not in m
    with pytest.raises(KeyError):
        m.remove(3)
    assert hash(Multiset([1, 2])) == hash(Multiset([2, 1]))


def test_partitions_of_counts():
    assert [sum(1 for _ in partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
