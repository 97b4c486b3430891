"""Closed-form Hurwitz numbers for the even/near-cycle families.

Each function raises on inputs outside its family instead of returning 0,
so a recursion that asks for a nonsense value fails loudly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadArguments
from .partitions import Partition, hook


def twos_complete(k: int) -> Fraction:
    """``H((2k), (2^k), (2^k), (2,1^(2k-2)))``."""
    if k < 1:
        raise BadArguments("k must be positive")
    return Fraction(k, 2)


def twos_cycles(k: int, a: int, b: int) -> Fraction:
    """``H((2^k), (2^k), (a,b))``: ``1/(2k)`` when ``a = b = k``, else 0."""
    if k < 1 or a < 1 or b < 1 or a + b != 2 * k:
        raise BadArguments(f"need positive a, b with a + b = 2k, got k={k}, a={a}, b={b}")
    return Fraction(1, 2 * k) if a == b == k else Fraction(0)


def twos_even(k: int) -> Fraction:
    """``H((2k), (2^k), (2^(k-1),1,1))``."""
    if k < 1:
        raise BadArguments("k must be positive")
    return Fraction(1, 2)


def twos_odd(k: int) -> Fraction:
    """``H((2k+1), (2^k,1), (2^k,1))``."""
    if k < 1:
        raise BadArguments("k must be positive")
    return Fraction(1)


def near_cycle_pair(d: int, n: int, a: int) -> Fraction:
    """``H((d-n,n), (a,1,..), (b,1,..))`` with ``b = d + 2 - a``.

    Valid for ``1 <= n <= d/2`` and ``2 <= a <= b``.
    """
    b = d + 2 - a
    if not (1 <= n and 2 * n <= d and 2 <= a <= b and b <= d):
        raise BadArguments(f"near_cycle_pair needs 1<=n<=d/2 and 2<=a<=b<=d, got d={d}, n={n}, a={a}")
    value = Fraction(min(a - 1, n))
    return value / 2 if d == 2 * n else value


# Profiles each closed form describes, for oracle cross-checks.

def twos_complete_profiles(k: int) -> list[Partition]:
    d = 2 * k
    return [Partition([d]), Partition([2] * k), Partition([2] * k), hook(2, d)]


def twos_cycles_profiles(k: int, a: int, b: int) -> list[Partition]:
    return [Partition([2] * k), Partition([2] * k), Partition([a, b])]


def twos_even_profiles(k: int) -> list[Partition]:
    return [Partition([2 * k]), Partition([2] * k), Partition([2] * (k - 1) + [1, 1])]


def twos_odd_profiles(k: int) -> list[Partition]:
    return [Partition([2 * k + 1]), Partition([2] * k + [1]), Partition([2] * k + [1])]


def near_cycle_pair_profiles(d: int, n: int, a: int) -> list[Partition]:
    return [Partition([d - n, n]), hook(a, d), hook(d + 2 - a, d)]


def admissible_inputs(max_degree: int) -> dict[str, list[tuple[int, ...]]]:
    """Every argument tuple of each family whose degree is at most ``max_degree``."""
    out: dict[str, list[tuple[int, ...]]] = {
        "twos_complete": [], "twos_cycles": [], "twos_even": [], "twos_odd": [],
        "near_cycle_pair": [],
    }
    for k in range(1, max_degree // 2 + 1):
        out["twos_complete"].append((k,))
        out["twos_even"].append((k,))
        for b in range(1, k + 1):
            out["twos_cycles"].append((k, 2 * k - b, b))
    for k in range(1, (max_degree - 1) // 2 + 1):
        out["twos_odd"].append((k,))
    for d in range(2, max_degree + 1):
        for n in range(1, d // 2 + 1):
            for a in range(2, d // 2 + 2):
                out["near_cycle_pair"].append((d, n, a))
    return out


FAMILIES = {
    "twos_complete": (twos_complete, twos_complete_profiles),
    "twos_cycles": (twos_cycles, twos_cycles_profiles),
    "twos_even": (twos_even, twos_even_profiles),
    "twos_odd": (twos_odd, twos_odd_profiles),
    "near_cycle_pair": (near_cycle_pair, near_cycle_pair_profiles),
}
