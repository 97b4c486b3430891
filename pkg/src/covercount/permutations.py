"""Brute-force Hurwitz numbers from permutation tuples.

``H(σ_1, ..., σ_n)`` is ``1/d!`` times the number of tuples
``(s_1, ..., s_n)`` in ``S_d`` with ``s_i`` of cycle type ``σ_i`` and
``s_1 ⋯ s_n = 1``; the connected count also requires the tuple to generate a
transitive subgroup.

The enumeration fixes ``s_1`` to one representative of its class (the tuple
set is stable under simultaneous conjugation, so we multiply by the class
size afterwards), runs ``s_2, ..., s_{n-1}`` over their full classes and
solves for ``s_n``.  Permutations are 0-based tuples of images.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _ordered
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import BadArguments, BudgetExceeded, ProfileDegreeMismatch
from .partitions import Partition, aut_single, format_list

DEFAULT_BUDGET = 10**8

Perm = tuple


@dataclass(frozen=True)
class HurwitzQuery:
    degree: int
    profiles: tuple[Partition, ...]
    connected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "profiles", tuple(Partition(p) for p in self.profiles))
        if self.degree < 1:
            raise BadArguments("degree must be positive")
        for p in self.profiles:
            if sum(p) != self.degree:
                raise ProfileDegreeMismatch(
                    f"profile {format_list(p)} does not sum to degree {self.degree}"
                )

    def key(self) -> str:
        kind = "Hc" if self.connected else "H"
        return f"{kind}|d={self.degree}|" + "|".join(format_list(p) for p in self.profiles)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x
            self.components -= 1


def is_transitive(perms: Sequence[Perm], degree: int) -> bool:
    uf = UnionFind(degree)
    for p in perms:
        for i, j in enumerate(p):
            uf.union(i, j)
            if uf.components == 1:
                return True
    return uf.components == 1


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p: Sequence[int]) -> Partition:
    """Cycle lengths of a permutation given as 0- or 1-based images."""
    n = len(p)
    offset = min(p) if n else 0
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i] - offset
            length += 1
        lengths.append(length)
    return Partition(lengths)


def class_size(shape: Sequence[int]) -> int:
    d = sum(shape)
    denom = 1
    for m, mult in _multiplicities(shape).items():
        denom *= m**mult * factorial(mult)
    return factorial(d) // denom


def _multiplicities(shape):
    out: dict[int, int] = {}
    for m in shape:
        out[m] = out.get(m, 0) + 1
    return out


def representative(shape: Sequence[int]) -> Perm:
    """Consecutive cycles ``(0 1 .. l1-1)(l1 ..)...`` of the given type."""
    images = []
    start = 0
    for length in Partition(shape):
        images.extend(start + (i + 1) % length for i in range(length))
        start += length
    return tuple(images)


def class_elements(shape: Sequence[int]) -> Iterator[Perm]:
    """Every permutation of the given cycle type, in lexicographic cycle order.

    Each element is produced once: a cycle always opens at the smallest
    unused point and takes a length not yet tried at that position.
    """
    shape = Partition(shape)
    d = sum(shape)
    images = [0] * d

    def fill(unused: list[int], lengths: list[int]):
        if not unused:
            yield tuple(images)
            return
        head, rest = unused[0], unused[1:]
        for length in sorted(set(lengths)):
            remaining = list(lengths)
            remaining.remove(length)
            for tail in _ordered(rest, length - 1):
                cycle = (head,) + tail
                for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                    images[a] = b
                left = [x for x in rest if x not in tail]
                yield from fill(left, remaining)

    yield from fill(list(range(d)), list(shape))


@lru_cache(maxsize=None)
def _class_list(shape: Partition) -> tuple[Perm, ...]:
    return tuple(class_elements(shape))


def _count_tail(prefix: Perm, middle: tuple[Partition, ...], last: Partition,
                connected: bool, gens: list[Perm]) -> int:
    degree = len(prefix)
    if not middle:
        if cycle_type(prefix) != last:
            return 0
        if connected and not is_transitive(gens + [inverse(prefix)], degree):
            return 0
        return 1
    total = 0
    head, rest = middle[0], middle[1:]
    for g in _class_list(head):
        gens.append(g)
        total += _count_tail(compose(prefix, g), rest, last, connected, gens)
        gens.pop()
    return total


def _count_chunk(args) -> int:
    first, second_chunk, rest, last, connected = args
    total = 0
    for g in second_chunk:
        total += _count_tail(compose(first, g), rest, last, connected, [first, g])
    return total


def enumeration_work(profiles: Sequence[Sequence[int]]) -> int:
    """Tuples the enumerator visits for these profiles (after slot ordering)."""
    if len(profiles) < 2:
        return 1
    order = _slot_order([Partition(p) for p in profiles], True)
    return prod(class_size(p) for p in order[1:-1])


def _check_budget(work: int, budget: int | None) -> None:
    if budget is not None and work > budget:
        raise BudgetExceeded(
            f"enumeration needs {work} tuples, budget is {budget}; "
            "lower the degree or raise --max-work"
        )


def _slot_order(profiles: Sequence[Partition], reorder: bool) -> list[Partition]:
    """Largest classes go to the fixed slot s_1 and the solved slot s_n."""
    if not reorder:
        return list(profiles)
    ranked = sorted(profiles, key=lambda p: (class_size(p), tuple(p)), reverse=True)
    return [ranked[0]] + ranked[2:] + [ranked[1]]


def tuple_count(degree: int, profiles: Sequence[Sequence[int]], connected: bool = False,
                budget: int | None = DEFAULT_BUDGET, workers: int = 1,
                reorder: bool = True) -> int:
    """Number of valid tuples ``(s_1, ..., s_n)``; ``d!`` times the Hurwitz number.

    Raises :class:`BudgetExceeded` up front if more than ``budget`` tuples
    would have to be enumerated.
    """
    query = HurwitzQuery(degree, tuple(profiles), connected)
    if budget is not None and budget < 1:
        raise BadArguments("budget must be positive")
    profiles = list(query.profiles)
    if not profiles:
        # the empty product is the identity; transitive only on one point
        return 1 if (degree == 1 or not connected) else 0
    if len(profiles) == 1:
        if profiles[0] != Partition([1] * degree):
            return 0
        return 1 if (degree == 1 or not connected) else 0

    order = _slot_order(profiles, reorder)
    first, middle, last = order[0], tuple(order[1:-1]), order[-1]
    _check_budget(prod(class_size(p) for p in middle), budget)
    rep = representative(first)
    if not middle:
        count = _count_tail(rep, (), last, connected, [rep])
    elif workers > 1 and class_size(middle[0]) > 1:
        second = _class_list(middle[0])
        step = -(-len(second) // workers)
        jobs = [(rep, second[i:i + step], middle[1:], last, connected)
                for i in range(0, len(second), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            count = sum(pool.map(_count_chunk, jobs))
    else:
        count = _count_tail(rep, middle, last, connected, [rep])
    return count * class_size(first)


@lru_cache(maxsize=4096)
def _hurwitz_cached(degree: int, profiles: tuple[Partition, ...], connected: bool) -> Fraction:
    return Fraction(tuple_count(degree, profiles, connected, budget=None), factorial(degree))


def hurwitz(degree: int, profiles: Sequence[Sequence[int]], connected: bool = False,
            budget: int = DEFAULT_BUDGET, workers: int = 1, reorder: bool = True) -> Fraction:
    """Hurwitz number as an exact rational (disconnected sources allowed by default)."""
    profiles = tuple(Partition(p) for p in profiles)
    if workers == 1 and reorder:
        canonical = tuple(sorted(profiles, reverse=True))
        HurwitzQuery(degree, canonical, connected)
        if budget is not None and budget < 1:
            raise BadArguments("budget must be positive")
        _check_budget(enumeration_work(canonical), budget)
        return _hurwitz_cached(degree, canonical, connected)
    return Fraction(tuple_count(degree, profiles, connected, budget, workers, reorder),
                    factorial(degree))


def connected_hurwitz(degree: int, profiles: Sequence[Sequence[int]], **kw) -> Fraction:
    return hurwitz(degree, profiles, connected=True, **kw)


def marked_hurwitz(degree: int, profiles: Sequence[Sequence[int]], budget: int = DEFAULT_BUDGET,
                   workers: int = 1) -> Fraction:
    """Connected count with the points of every fiber labelled."""
    value = hurwitz(degree, profiles, connected=True, budget=budget, workers=workers)
    return value * prod(aut_single(p) for p in profiles)
