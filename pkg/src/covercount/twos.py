"""The even-profile invariants ``N_{(2^k),(2^k)}(μ)``.

Two independent routes: the closed form ``3 * 2^(len(μ) - 1)`` and a
structural recursion on ``len(μ)`` that merges two parts at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .errors import BadArguments, DegreeTooSmall, UnreachableCase
from .partitions import Partition, format_list

# N_{(2),(2)}(2) and N_{(2),(2)}(1,1); the closed form does not cover d = 2.
SMALL_DEGREE = {Partition([2]): 1, Partition([1, 1]): 1}

PairChooser = Callable[[Partition], "tuple[int, int]"]


@dataclass(frozen=True)
class TwosKey:
    k: int
    mu: Partition

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        if self.k < 1:
            raise BadArguments("k must be positive")
        if not self.mu or sum(self.mu) != 2 * self.k:
            raise BadArguments(f"mu must be a non-empty partition of {2 * self.k}")

    def __str__(self) -> str:
        return f"N2|k={self.k}|mu={format_list(self.mu)}"


@dataclass(frozen=True)
class TwosRecursionCase:
    """One application of the merge recursion to the parts ``a >= b``.

    The value is ``N_k(a+b, rest) + coefficient * child`` where the child is
    ``N_{k-b}(a-b, rest)`` when ``a > b``, ``N_{k-a}(rest)`` for the equal
    branch with ``|rest| > 2``, and the constant 1 otherwise.
    """

    tag: str
    a: int
    b: int
    coefficient: int
    residual: Partition

    def merged(self, k: int) -> TwosKey:
        return TwosKey(k, self.residual.with_parts(self.a + self.b))

    def child(self, k: int) -> Optional[TwosKey]:
        if self.tag == "merge-unequal":
            return TwosKey(k - self.b, self.residual.with_parts(self.a - self.b))
        if sum(self.residual) > 2:
            return TwosKey(k - self.a, self.residual)
        return None


def n_twos_closed(k: int, mu) -> int:
    key = TwosKey(k, mu)
    if 2 * key.k <= 2:
        raise DegreeTooSmall("the closed form needs degree 2k > 2")
    return 3 * 2 ** (len(key.mu) - 1)


def recursion_case(k: int, mu: Partition, a: int, b: int) -> TwosRecursionCase:
    """Pick the branch and coefficient for merging parts ``a >= b`` of ``mu``."""
    if a < b:
        a, b = b, a
    residual = Partition(mu).without(a, b)
    d = 2 * k
    d_rest = sum(residual)
    if a > b:
        if a - b == 2 and d_rest == 0:
            coefficient = 3
        elif a - b == 1 and d_rest == 1:
            coefficient = 6
        elif d - 2 * b > 2:
            coefficient = 1
        else:
            raise UnreachableCase(f"no unequal-branch coefficient for a={a}, b={b}, d'={d_rest}")
        return TwosRecursionCase("merge-unequal", a, b, coefficient, residual)
    if d_rest > 2:
        coefficient = 2
    elif d_rest == 0:
        coefficient = 3
    elif residual == Partition([2]):
        coefficient = 6
    elif residual == Partition([1, 1]):
        coefficient = 12
    else:
        raise UnreachableCase(f"no equal-branch case for a={a}, rest={format_list(residual)}")
    return TwosRecursionCase("merge-equal", a, b, coefficient, residual)


def largest_pair(mu: Partition) -> tuple[int, int]:
    return mu[0], mu[1]


def n_twos_recursive(k: int, mu, choose: PairChooser | None = None) -> int:
    """Evaluate by the merge recursion.

    ``choose`` picks the two parts to merge (default: the two largest);
    results with the default rule are memoized.
    """
    key = TwosKey(k, mu)
    if choose is None:
        return _recursive_cached(key.k, key.mu)
    return _evaluate(key.k, key.mu, choose, {})


@lru_cache(maxsize=None)
def _recursive_cached(k: int, mu: Partition) -> int:
    return _step(k, mu, lambda kk, m: _recursive_cached(kk, m), largest_pair)


def _evaluate(k, mu, choose, memo):
    key = (k, mu)
    if key not in memo:
        memo[key] = _step(k, mu, lambda kk, m: _evaluate(kk, m, choose, memo), choose)
    return memo[key]


def _step(k: int, mu: Partition, recurse, choose) -> int:
    if k == 1:
        return SMALL_DEGREE[mu]
    if len(mu) == 1:
        return 3
    a, b = choose(mu)
    case = recursion_case(k, mu, a, b)
    value = recurse(k, case.merged(k).mu)
    child = case.child(k)
    if child is None:
        return value + case.coefficient
    return value + case.coefficient * recurse(child.k, child.mu)
