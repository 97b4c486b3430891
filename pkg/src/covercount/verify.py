"""Cross-checks between closed forms, recursions and the brute-force oracle.

Each suite returns a list of :class:`Check` records in a fixed order so that
reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import closed_forms
from .partitions import format_list, partitions_of
from .permutations import DEFAULT_BUDGET, hurwitz
from .sab import MemoStore, SKey, default_move, s_base, s_invariant, u_quartic, u_value, validate_key
from .twos import n_twos_closed, n_twos_recursive

SUITES = ("appendix", "twos", "s", "u", "invariance", "all")

SEED = 20240601


@dataclass
class Check:
    suite: str
    name: str
    expected: str
    computed: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _fmt(x) -> str:
    return str(Fraction(x))


def appendix_suite(max_degree: int = 6, budget: int = DEFAULT_BUDGET) -> list[Check]:
    """Closed forms against both oracle flags; the matching flags are reported per family."""
    checks = []
    for family, inputs in closed_forms.admissible_inputs(max_degree).items():
        formula, profiles_of = closed_forms.FAMILIES[family]
        matches = {"connected": True, "disconnected": True}
        rows = []
        for args in inputs:
            profiles = profiles_of(*args)
            d = sum(profiles[0])
            closed = formula(*args)
            conn = hurwitz(d, profiles, connected=True, budget=budget)
            disc = hurwitz(d, profiles, connected=False, budget=budget)
            matches["connected"] &= closed == conn
            matches["disconnected"] &= closed == disc
            rows.append((args, profiles, closed, conn, disc))
        flags = [flag for flag, ok in matches.items() if ok]
        flag = flags[0] if flags else "connected"
        for args, profiles, closed, conn, disc in rows:
            oracle = conn if flag == "connected" else disc
            checks.append(Check(
                "appendix", f"{family}{args}", _fmt(closed), _fmt(oracle), closed == oracle,
                "profiles " + " ".join(format_list(p) for p in profiles)
                + f"; connected={_fmt(conn)} disconnected={_fmt(disc)}"
                + f"; matching flags: {','.join(flags) or 'none'}",
            ))
    return checks


def twos_suite(max_k: int = 5, max_length: int = 4) -> list[Check]:
    checks = []
    for k in range(2, max_k + 1):
        for mu in partitions_of(2 * k):
            if len(mu) > max_length:
                continue
            expected = 3 * 2 ** (len(mu) - 1)
            closed = n_twos_closed(k, mu)
            recursive = n_twos_recursive(k, mu)
            checks.append(Check(
                "twos", f"N2(k={k}, mu={format_list(mu)})", str(expected),
                f"closed={closed} recursive={recursive}",
                closed == recursive == expected,
            ))
    return checks


REFERENCE_S_VALUES = [
    (([4, 2, 2], [], [4]), 15),
    (([3, 2, 2, 2], [], [2, 1]), 9),
]

REFERENCE_BASE_VALUES = [
    (([2, 2, 2], 2), 1),
    (([3, 2, 2], 3), 8),
    (([3, 3, 2], 4), 20),
    (([3, 3, 3], 5), 16),
]


def s_suite(budget: int = DEFAULT_BUDGET) -> list[Check]:
    checks = []
    memo = MemoStore()
    for (a, b, mu), expected in REFERENCE_S_VALUES:
        key = SKey.make(a, b, mu)
        value = s_invariant(key, memo, budget=budget)
        checks.append(Check("s", key.canonical(), str(expected), _fmt(value), value == expected))
    for (a, d), expected in REFERENCE_BASE_VALUES:
        value = s_base(a, d, budget)
        checks.append(Check("s", f"base(a={format_list(a)}, d={d})", str(expected), _fmt(value),
                            value == expected))
    value = s_invariant(SKey.make(), memo)
    checks.append(Check("s", "S(empty)", "0", _fmt(value), value == 0))
    return checks


def _u_grid(max_degree: int, memo: MemoStore, budget: int) -> dict[tuple[int, int], Fraction]:
    table = {}
    for d in range(2, max_degree + 1):
        for a in range(1, min(d, 5) + 1):
            table[d, a] = u_value(d, a, memo, budget)
    return table


def _recurrence(table, d: int, a: int) -> tuple[str, Fraction]:
    """Right-hand side of the first-difference recurrence for cell ``(d, a)``.

    Cells outside the grid count as 0: ``U_{d,6}`` (more ramification than
    Riemann-Hurwitz allows) and ``U_{1,1}``, ``U_{0,1}`` (the degree-1 and
    empty ends of the recursion).
    """
    def cell(dd, aa):
        return table.get((dd, aa), Fraction(0))

    if a > 1:
        return f"U[{d},{a}] = U[{d},{a + 1}] + U[{d - 1},{a}]", cell(d, a + 1) + cell(d - 1, a)
    return f"U[{d},1] = U[{d},2] + U[{d - 2},1]", cell(d, 2) + cell(d - 2, 1)


def u_table(max_degree: int = 6, memo: Optional[MemoStore] = None,
            budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Rows of the U grid with the quartic value and a per-cell recurrence flag.

    The flag is ``None`` on the diagonal ``a = d``, which is a base case.
    """
    table = _u_grid(max_degree, memo or MemoStore(), budget)
    rows = []
    for d in range(2, max_degree + 1):
        cells = []
        for a in range(1, 6):
            if (d, a) not in table:
                cells.append(None)
                continue
            ok = None if a == d else table[d, a] == _recurrence(table, d, a)[1]
            cells.append({"a": a, "value": table[d, a], "recurrence": ok})
        rows.append({"d": d, "cells": cells, "quartic": u_quartic(d),
                     "quartic_ok": table[d, 1] == u_quartic(d)})
    return rows


def u_suite(max_degree: int = 6, budget: int = DEFAULT_BUDGET) -> list[Check]:
    """Quartic law for ``U_{d,1}`` and the two first-difference recurrences."""
    table = _u_grid(max_degree, MemoStore(), budget)
    checks = []
    for d in range(2, max_degree + 1):
        expected = u_quartic(d)
        checks.append(Check("u", f"quartic d={d}", str(expected), _fmt(table[d, 1]),
                            table[d, 1] == expected))
    for (d, a), value in sorted(table.items()):
        if a == d:
            continue
        name, rhs = _recurrence(table, d, a)
        checks.append(Check("u", name, _fmt(value), _fmt(rhs), value == rhs))
    return checks


# --- randomized invariance suites -------------------------------------------------

def random_profile_list(rng: random.Random, max_degree: int = 5, max_profiles: int = 4):
    d = rng.randint(1, max_degree)
    parts = list(partitions_of(d))
    n = rng.randint(1, max_profiles)
    return d, [rng.choice(parts) for _ in range(n)]


def valid_s_keys(max_degree: int = 5, max_b: int = 2) -> list[SKey]:
    """Every well-formed key with values >= 2, degree <= max_degree, len(b) <= max_b."""
    keys = []
    for d in range(1, max_degree + 1):
        values = range(2, d + 1)
        for mu in partitions_of(d):
            for a in itertools.combinations_with_replacement(values, len(mu) + 2):
                for nb in range(max_b + 1):
                    for b in itertools.combinations_with_replacement(values, nb):
                        key = SKey.make(a, b, mu)
                        if validate_key(key):
                            keys.append(key)
    return keys


def random_chooser(rng: random.Random) -> Callable:
    """Pick any admissible move: any two parts, or any part with any ``y`` in ``b``."""
    def choose(key: SKey):
        moves = sorted({("a", pair) for pair in itertools.combinations(key.mu, 2)})
        if key.b:
            moves += sorted({("b", (n, y)) for n in key.mu for y in key.b.distinct()})
        return rng.choice(moves) if moves else default_move(key)
    return choose


def invariance_suite(instances: int = 60, seed: int = SEED, max_degree: int = 5,
                     budget: int = DEFAULT_BUDGET) -> list[Check]:
    rng = random.Random(seed)
    checks = []

    for i in range(instances):
        d, profiles = random_profile_list(rng, max_degree)
        connected = bool(i % 2)
        base = hurwitz(d, profiles, connected=connected, budget=budget, reorder=False)
        shuffled = list(profiles)
        rng.shuffle(shuffled)
        other = hurwitz(d, shuffled, connected=connected, budget=budget, reorder=False)
        checks.append(Check(
            "invariance", f"profile-order #{i} d={d} " + " ".join(format_list(p) for p in profiles)
            + (" connected" if connected else ""),
            _fmt(base), _fmt(other), base == other,
            "shuffled " + " ".join(format_list(p) for p in shuffled),
        ))

    keys = valid_s_keys(max_degree)
    multi = [k for k in keys if len(k.mu) >= 2 or len(k.b) >= 2]
    for i in range(instances):
        key = rng.choice(multi)
        base = s_invariant(key, MemoStore(), budget=budget)
        other = s_invariant(key, MemoStore(), chooser=random_chooser(rng), budget=budget)
        checks.append(Check("invariance", f"move-choice #{i} {key}", _fmt(base), _fmt(other),
                            base == other))

    for i in range(instances):
        key = rng.choice(keys)
        ones = rng.randint(1, 3)
        padded = SKey(key.a, key.b.add(*[1] * ones), key.mu)
        base = s_invariant(key, MemoStore(), budget=budget)
        other = s_invariant(padded, MemoStore(), budget=budget)
        checks.append(Check("invariance", f"strip-one #{i} {padded}", _fmt(base), _fmt(other),
                            base == other))
    return checks


def run_suite(suite: str, max_degree: int = 6, budget: int = DEFAULT_BUDGET,
              max_k: Optional[int] = None) -> list[Check]:
    """Run one suite (or ``all``).  The twos suite covers ``2k <= max_degree``
    unless ``max_k`` is given."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    checks: list[Check] = []
    if suite in ("appendix", "all"):
        checks += appendix_suite(max_degree, budget)
    if suite in ("twos", "all"):
        checks += twos_suite(max_k=max_k or max(2, max_degree // 2))
    if suite in ("s", "all"):
        checks += s_suite(budget)
    if suite in ("u", "all"):
        checks += u_suite(max_degree, budget)
    if suite in ("invariance", "all"):
        checks += invariance_suite(max_degree=min(max_degree, 5), budget=budget)
    return checks
