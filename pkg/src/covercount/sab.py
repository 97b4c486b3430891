"""Recursive evaluation of the genus-1 invariants ``S_{a,b}(μ)``.

``S_{a,b}(μ)`` counts covers of the line from a generic pointed genus-1
curve with marked fiber ``μ`` over 0, marked extra ramification indices
``b`` and unmarked ramification indices ``a``, every extra fiber having
shape ``(x, 1, ..., 1)``.  Three rules cover every key:

* two or more parts in ``μ``: merge two parts (:func:`reduce_a_terms`);
* one part and ``b`` non-empty: absorb an element of ``b``
  (:func:`reduce_b_terms`);
* one part, ``b`` empty: genus reduction to Hurwitz numbers (:func:`s_base`).

Each step lowers ``(len μ, len b, len a)`` lexicographically, so evaluation
terminates.  ``S(∅) = 0`` by convention.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Optional

from .errors import BadArguments, InternalError, InvalidKey
from .partitions import Multiset, Partition, aut_single, format_list, hook, parse_list
from .permutations import DEFAULT_BUDGET, hurwitz

CACHE_HEADER = "covercount-cache v1"

RULES = ("strip-one", "reduce-b-merge", "reduce-b-transfer", "reduce-a-merge",
         "reduce-a-pair", "base")


@dataclass(frozen=True)
class SKey:
    a: Multiset
    b: Multiset
    mu: Partition

    @classmethod
    def make(cls, a: Iterable[int] = (), b: Iterable[int] = (), mu: Iterable[int] = ()) -> "SKey":
        return cls(Multiset(a), Multiset(b), Partition(mu))

    @classmethod
    def parse(cls, text: str) -> "SKey":
        """Inverse of :meth:`canonical`."""
        try:
            tag, a, b, mu = text.split("|")
            if tag != "S" or not (a.startswith("a=") and b.startswith("b=") and mu.startswith("mu=")):
                raise ValueError
        except ValueError:
            raise InvalidKey(f"malformed key {text!r}") from None
        return cls.make(parse_list(a[2:]), parse_list(b[2:]), parse_list(mu[3:]))

    @property
    def degree(self) -> int:
        return sum(self.mu)

    def canonical(self) -> str:
        return (f"S|a={format_list(self.a.values())}|b={format_list(self.b.values())}"
                f"|mu={format_list(self.mu)}")

    __str__ = canonical


@dataclass(frozen=True)
class ReductionTerm:
    coefficient: Fraction
    child: SKey
    rule: str


def validate_key(key: SKey) -> bool:
    """Dimension count ``|a| = len(μ) + 2`` plus Riemann-Hurwitz.

    The empty-``μ`` convention key is not well-formed; :func:`s_invariant`
    handles it before validating.
    """
    d = key.degree
    if d < 1:
        return False
    values = key.a.values() + key.b.values()
    if any(not 1 <= x <= d for x in values):
        return False
    if len(key.a) != len(key.mu) + 2:
        return False
    return d - len(key.mu) + sum(x - 1 for x in values) == 2 * d


def is_convention_key(key: SKey) -> bool:
    return not key.mu


def normalize_b(key: SKey) -> SKey:
    """Drop trivial entries ``1`` from ``b``; the invariant does not change."""
    if 1 not in key.b:
        return key
    return SKey(key.a, key.b.strip(1), key.mu)


def _require_valid(key: SKey) -> None:
    if not validate_key(key):
        raise InvalidKey(f"{key.canonical()} violates the dimension or Riemann-Hurwitz condition")


def reduce_b_terms(key: SKey, part_n: int, y: Optional[int] = None) -> list[ReductionTerm]:
    """Absorb ``y`` from ``b`` into the part ``n`` of ``μ``.

    Emits the merge term ``S_{a,b-y}(μ-n, n-y+1)`` and, for each distinct
    ``z`` in ``a``, the transfer term with coefficient
    ``min(z-1, y-1, n, y+z-n-2)`` moving ``y+z-n-2`` into ``b``.
    """
    _require_valid(key)
    key = normalize_b(key)
    if not key.b:
        raise BadArguments("reduce_b_terms needs a non-trivial element of b")
    if y is None:
        y = key.b.values()[0]
    if y not in key.b or part_n not in key.mu:
        raise BadArguments(f"y={y} must be in b and n={part_n} in mu")
    n = part_n
    rest_mu = key.mu.without(n)
    rest_b = key.b.remove(y)
    terms = []
    if n - y + 1 >= 1:
        child = SKey(key.a, rest_b, rest_mu.with_parts(n - y + 1))
        terms.append(ReductionTerm(Fraction(1), normalize_b(child), "reduce-b-merge"))
    for z in key.a.distinct():
        e = y + z - n - 2
        coefficient = min(z - 1, y - 1, n, e)
        if coefficient <= 0:
            continue
        child = SKey(key.a.remove(z), rest_b.add(e), rest_mu)
        terms.append(ReductionTerm(Fraction(coefficient), normalize_b(child), "reduce-b-transfer"))
    return terms


def pair_coefficient(z1: int, z2: int, n: int, m: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Weight of a pair term: a connected Hurwitz number of degree ``z1+z2-3``
    with explicit edge/point symmetry factors."""
    c = z1 + z2 - n - m - 3
    degree = c + n + m
    if c <= 0 or z1 > degree or z2 > degree:
        return Fraction(0)
    h = hurwitz(degree, [Partition([c, n, m]), hook(z1, degree), hook(z2, degree)],
                connected=True, budget=budget)
    return h * aut_single((n, m, c)) / aut_single((z1, z2))


def reduce_a_terms(key: SKey, parts_n_m: tuple[int, int],
                   budget: int = DEFAULT_BUDGET) -> list[ReductionTerm]:
    """Merge the two parts ``n, m`` of ``μ``.

    Single family: one ``z`` in ``a`` is used up and ``n, m`` fuse into
    ``n+m-z+2``.  Pair family: ``z1, z2`` in ``a`` (value 2 excluded) are
    used up, ``n, m`` leave ``μ`` and ``c = z1+z2-n-m-3`` joins ``b``.
    """
    _require_valid(key)
    key = normalize_b(key)
    n, m = parts_n_m
    try:
        rest_mu = key.mu.without(n, m)
    except ValueError:
        raise BadArguments(f"({n}, {m}) are not two parts of {format_list(key.mu)}") from None
    terms = []
    for z in key.a.distinct():
        if z > n + m:
            continue
        coefficient = min(n, m, z - 1, n + m - z + 1)
        if coefficient <= 0:
            continue
        child = SKey(key.a.remove(z), key.b, rest_mu.with_parts(n + m - z + 2))
        terms.append(ReductionTerm(Fraction(coefficient), child, "reduce-a-merge"))
    candidates = [v for v in key.a.distinct() if v != 2]
    for i, z1 in enumerate(candidates):
        for z2 in candidates[i:]:
            if z1 == z2 and key.a.count(z1) < 2:
                continue
            c = z1 + z2 - n - m - 3
            if c <= 0:
                continue
            coefficient = pair_coefficient(z1, z2, n, m, budget)
            if coefficient <= 0:
                continue
            child = SKey(key.a.remove(z1, z2), key.b.add(c), rest_mu)
            terms.append(ReductionTerm(coefficient, normalize_b(child), "reduce-a-pair"))
    return terms


def s_base(a: Iterable[int], degree: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``S_{a,∅}((d))`` for three ramification indices, by genus reduction.

    Sums over which index ``a_i`` sits on the loop component and over
    unordered splits ``e <= f`` of ``d - a_i + 2`` into the two loop edges.
    """
    a = list(a)
    d = degree
    if len(a) != 3 or sum(a) != d + 4 or any(not 2 <= x <= d for x in a):
        raise InvalidKey(f"base case needs three indices in [2, d] summing to d + 4, got {a} at d={d}")
    symmetry = aut_single(a)
    total = Fraction(0)
    for i in range(3):
        ai = a[i]
        aj, ak = (a[j] for j in range(3) if j != i)
        s = d - ai + 2
        for e in range(1, s // 2 + 1):
            f = s - e
            split = Partition([e, f] + [1] * (d - s))
            h_loop = hurwitz(d, [Partition([d]), hook(ai, d), split], connected=True, budget=budget)
            if not h_loop:
                continue
            h_tail = hurwitz(s, [Partition([e, f]), hook(aj, s), hook(ak, s)],
                             connected=True, budget=budget)
            total += (2 * (aj + ak - 2) * h_loop * h_tail * aut_single(split)
                      / (factorial(ai - 2) * symmetry))
    return total


@dataclass
class MemoStore:
    """Canonical-key cache of S-values, optionally backed by a cache file."""

    values: dict = field(default_factory=dict)
    path: Optional[str] = None
    hits: int = 0
    misses: int = 0
    max_depth: int = 0
    _on_disk: set = field(default_factory=set, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def open(cls, path: Optional[str]) -> "MemoStore":
        store = cls(path=path)
        if path and os.path.exists(path):
            store.load(path)
        return store

    def get(self, key: str) -> Optional[Fraction]:
        value = self.values.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: str, value: Fraction) -> None:
        old = self.values.setdefault(key, value)
        if old != value:
            raise InternalError(f"conflicting values for {key}: {old} vs {value}")

    def load(self, path: str) -> None:
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header != CACHE_HEADER:
                raise InvalidKey(f"{path}: not a covercount cache (header {header!r})")
            for lineno, line in enumerate(fh, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    key, value = line.split("\t")
                    SKey.parse(key)
                    num, den = value.split("/")
                    fraction = Fraction(int(num), int(den))
                except (ValueError, InvalidKey):
                    raise InvalidKey(f"{path}:{lineno}: malformed cache line") from None
                self.put(key, fraction)
                self._on_disk.add(key)

    def persist(self, key: str) -> None:
        """Append one cached result to the backing file, once."""
        if not self.path or key in self._on_disk or key not in self.values:
            return
        value = self.values[key]
        with self._lock:
            fresh = not os.path.exists(self.path) or os.path.getsize(self.path) == 0
            with open(self.path, "a", encoding="utf-8") as fh:
                if fresh:
                    fh.write(CACHE_HEADER + "\n")
                fh.write(f"{key}\t{value.numerator}/{value.denominator}\n")
            self._on_disk.add(key)

    def stats(self) -> dict:
        return {"entries": len(self.values), "hits": self.hits, "misses": self.misses,
                "max_depth": self.max_depth}


# A move is ("a", (n, m)) or ("b", (n, y)).
Move = tuple
Chooser = Callable[[SKey], Move]


def default_move(key: SKey) -> Optional[Move]:
    """Largest two parts first; at one part, the largest element of ``b``."""
    if len(key.mu) >= 2:
        return ("a", (key.mu[0], key.mu[1]))
    if key.b:
        return ("b", (key.mu[0], key.b.values()[0]))
    return None


def expand(key: SKey, chooser: Chooser = default_move,
           budget: int = DEFAULT_BUDGET) -> tuple[str, list[ReductionTerm], Fraction]:
    """One recursion step: ``(rule, terms, constant)`` with
    ``S(key) = constant + sum(coefficient * S(child))``."""
    if is_convention_key(key):
        return "base", [], Fraction(0)
    _require_valid(key)
    normal = normalize_b(key)
    if normal != key:
        return "strip-one", [ReductionTerm(Fraction(1), normal, "strip-one")], Fraction(0)
    move = chooser(key)
    if move is None:
        return "base", [], s_base(key.a.values(), key.degree, budget)
    kind, args = move
    if kind == "a":
        return "reduce-a", reduce_a_terms(key, args, budget), Fraction(0)
    n, y = args
    return "reduce-b", reduce_b_terms(key, n, y), Fraction(0)


def s_invariant(key: SKey, memo: Optional[MemoStore] = None, chooser: Chooser = default_move,
                budget: int = DEFAULT_BUDGET) -> Fraction:
    """Exact value of ``S_{a,b}(μ)``."""
    if memo is None:
        memo = MemoStore()
    if is_convention_key(key):
        return Fraction(0)
    _require_valid(key)
    limit = 10 * (len(key.a) + len(key.b) + len(key.mu))

    def evaluate(k: SKey, depth: int) -> Fraction:
        if depth > limit:
            raise InternalError(f"recursion depth {depth} exceeded guard {limit} at {k}")
        memo.max_depth = max(memo.max_depth, depth)
        if is_convention_key(k):
            return Fraction(0)
        name = k.canonical()
        cached = memo.get(name)
        if cached is not None:
            return cached
        _, terms, value = expand(k, chooser, budget)
        for term in terms:
            value += term.coefficient * evaluate(term.child, depth + 1)
        memo.put(name, value)
        return value

    return evaluate(key, 0)


def u_key(d: int, a: int) -> SKey:
    """Key of ``U_{d,a}``: ``d-2`` threes, ``5-a`` twos, ``μ = (a, 1^(d-a))``."""
    if d < 2 or not 1 <= a <= d or a > 5:
        raise InvalidKey(f"U_{{{d},{a}}} is not defined (need 2<=d, 1<=a<=min(d,5))")
    key = SKey.make([3] * (d - 2) + [2] * (5 - a), [], [a] + [1] * (d - a))
    _require_valid(key)
    return key


def u_value(d: int, a: int, memo: Optional[MemoStore] = None,
            budget: int = DEFAULT_BUDGET) -> Fraction:
    value = s_invariant(u_key(d, a), memo, budget=budget)
    if value.denominator != 1 or value < 0:
        raise InternalError(f"U_{{{d},{a}}} = {value} is not a non-negative integer")
    return value


def u_quartic(d: int) -> int:
    if d < 2:
        raise BadArguments("the quartic law starts at d = 2")
    return d * (d - 1) * (2 * (d - 1) ** 2 + 1) // 6
