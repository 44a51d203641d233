"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the package's bitmap machinery: forward
set-based dynamic programming and plain recursive search, so agreement with
the library is evidence rather than tautology.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `expected`


def oracle_powers(k: int, limit: int) -> list[int]:
    out, a = [], 1
    while a**k <= limit:
        out.append(a**k)
        a += 1
    return out


@lru_cache(maxsize=None)
def oracle_rep_sets(k: int, limit: int, jmax: int) -> dict[int, frozenset[int]]:
    """sets[j] = {n < limit : n is a sum of exactly j positive k-th powers}."""
    ps = oracle_powers(k, limit - 1)
    sets: dict[int, frozenset[int]] = {1: frozenset(ps)}
    for j in range(2, jmax + 1):
        nxt = set()
        for n in sets[j - 1]:
            for p in ps:
                if n + p < limit:
                    nxt.add(n + p)
        sets[j] = frozenset(nxt)
    return sets


@lru_cache(maxsize=None)
def oracle_representable(n: int, j: int, k: int) -> bool:
    """Recursive existence check with non-increasing parts (no bitmaps)."""
    if j == 1:
        r = round(n ** (1.0 / k))
        return any(b**k == n for b in (r - 1, r, r + 1) if b >= 1)

    def rec(remaining: int, parts: int, cap: int) -> bool:
        if parts == 1:
            r = round(remaining ** (1.0 / k))
            return any(b**k == remaining and b <= cap for b in (r - 1, r, r + 1) if b >= 1)
        b = 1
        while b <= cap and b**k <= remaining - (parts - 1):
            if rec(remaining - b**k, parts - 1, b):
                return True
            b += 1
        return False

    return n >= j and rec(n, j, n)


@lru_cache(maxsize=None)
def oracle_count_exact_parts(n: int, j: int, k: int, cap: int | None = None) -> int:
    """Count multisets of j positive k-th powers summing to n (ascending parts)."""
    if j == 0:
        return 1 if n == 0 else 0
    if n < j:
        return 0
    top = cap if cap is not None else n
    total = 0
    b = 1
    while b <= top and b**k <= n - (j - 1):
        total += oracle_count_exact_parts(n - b**k, j - 1, k, b)
        b += 1
    return total


@pytest.fixture(scope="session")
def stabilized_small():
    """Stabilization results for k=2 and k=3 at small windows, shared."""
    import waring

    return {
        2: waring.stabilize(2, 10**4, 12),
        3: waring.stabilize(3, 10**5, 20),
    }
