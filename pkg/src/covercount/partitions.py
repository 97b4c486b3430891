"""Partitions, multisets and the ramification bookkeeping built on them.

A :class:`Partition` is a tuple of positive integers kept in non-increasing
order, so equal partitions compare and hash equal no matter how they were
written down.  The empty partition is allowed; it is the base case of the
S-invariant recursion.
"""

from __future__ import annotations

from collections import Counter
from math import factorial
from typing import Iterable, Sequence

from .errors import DegreeTooSmall, NonPositivePart, OverRamified, ProfileDegreeMismatch


class Partition(tuple):
    """Canonical (non-increasing) tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        for p in parts:
            if p <= 0:
                raise NonPositivePart(f"partition parts must be positive, got {p}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def sum(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def without(self, *values: int) -> "Partition":
        """Remove one occurrence of each value."""
        rest = list(self)
        for v in values:
            rest.remove(v)
        return Partition(rest)

    def with_parts(self, *values: int) -> "Partition":
        return Partition(list(self) + list(values))

    def __repr__(self) -> str:
        return f"Partition({format_list(self) or '∅'})"


def make_partition(raw: Iterable[int], allow_empty: bool = True) -> Partition:
    p = Partition(raw)
    if not p and not allow_empty:
        raise NonPositivePart("empty partition not permitted here")
    return p


def hook(x: int, degree: int) -> Partition:
    """The profile ``(x, 1, ..., 1)`` of the given degree."""
    if not 1 <= x <= degree:
        raise ProfileDegreeMismatch(f"part {x} does not fit in degree {degree}")
    return Partition([x] + [1] * (degree - x))


def simple(degree: int) -> Partition:
    """Simple ramification ``(2, 1^(d-2))``."""
    if degree < 2:
        raise DegreeTooSmall("simple ramification needs degree >= 2")
    return hook(2, degree)


class Multiset:
    """Immutable multiset of positive integers.

    Stored as sorted ``(value, multiplicity)`` pairs, largest value first.
    """

    __slots__ = ("_items",)

    def __init__(self, values: Iterable[int] = ()):
        counts = Counter(int(v) for v in values)
        for v in counts:
            if v <= 0:
                raise NonPositivePart(f"multiset values must be positive, got {v}")
        self._items = tuple(sorted(counts.items(), reverse=True))

    @classmethod
    def _from_items(cls, items) -> "Multiset":
        m = cls.__new__(cls)
        m._items = tuple(sorted(((v, c) for v, c in items if c > 0), reverse=True))
        return m

    @property
    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def distinct(self) -> list[int]:
        return [v for v, _ in self._items]

    def count(self, value: int) -> int:
        for v, c in self._items:
            if v == value:
                return c
        return 0

    def values(self) -> list[int]:
        return [v for v, c in self._items for _ in range(c)]

    def add(self, *values: int) -> "Multiset":
        return Multiset(self.values() + list(values))

    def remove(self, *values: int) -> "Multiset":
        counts = dict(self._items)
        for v in values:
            if counts.get(v, 0) == 0:
                raise KeyError(v)
            counts[v] -= 1
        return Multiset._from_items(counts.items())

    def strip(self, value: int) -> "Multiset":
        """Drop every copy of ``value``."""
        return Multiset._from_items((v, c) for v, c in self._items if v != value)

    def __len__(self) -> int:
        return sum(c for _, c in self._items)

    def __iter__(self):
        return iter(self.values())

    def __contains__(self, value) -> bool:
        return self.count(value) > 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Multiset) and self._items == other._items

    def __hash__(self) -> int:
        return hash(("Multiset", self._items))

    def __repr__(self) -> str:
        return "{" + format_list(self.values()) + "}"


def format_list(values: Iterable[int]) -> str:
    """Inverse of :func:`parse_list`: ``2,2,1,1``; empty string for empty."""
    return ",".join(str(v) for v in values)


def parse_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise NonPositivePart(f"cannot parse integer list {text!r}") from None


def parse_partition(text: str) -> Partition:
    return Partition(parse_list(text))


def aut_single(parts: Iterable[int]) -> int:
    """Product of multiplicity factorials over distinct values."""
    out = 1
    for mult in Counter(parts).values():
        out *= factorial(mult)
    return out


def aut_profile_list(profiles: Sequence[Sequence[int]]) -> int:
    """Number of index permutations fixing an ordered list of partitions."""
    return aut_single(Partition(p) for p in profiles)


def _check_profiles(degree: int, profiles: Sequence[Partition]) -> None:
    for p in profiles:
        if sum(p) != degree:
            raise ProfileDegreeMismatch(
                f"profile {format_list(p)} sums to {sum(p)}, expected {degree}"
            )


def rh_defect(degree: int, genus: int, profiles: Sequence[Sequence[int]]) -> int:
    """Missing ramification: ``(2d - 2 + 2g) - sum(d - len(profile))``.

    Zero when Riemann-Hurwitz holds exactly, positive when more branching is
    required, negative when the profiles are over-ramified.
    """
    profiles = [Partition(p) for p in profiles]
    _check_profiles(degree, profiles)
    return (2 * degree - 2 + 2 * genus) - sum(degree - len(p) for p in profiles)


def pad_with_simple(degree: int, genus: int, profiles: Sequence[Sequence[int]]) -> list[Partition]:
    """Append simple profiles until Riemann-Hurwitz holds."""
    profiles = [Partition(p) for p in profiles]
    defect = rh_defect(degree, genus, profiles)
    if defect < 0:
        raise OverRamified(f"profiles exceed Riemann-Hurwitz by {-defect}")
    if defect == 0:
        return profiles
    return profiles + [simple(degree)] * defect


def partitions_of(n: int, max_part: int | None = None):
    """Yield the partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))
