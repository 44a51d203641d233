"""Exact partition counting: p(n), p(n,j), and their k-th power analogues.

These are the slow-but-certain oracles behind the inclusion arguments for
the non-representable sets: p^k(n,j) >= 1 is exactly the statement that the
sieve bit (n,j,k) is set.  All counts are exact integers.

The public functions are pure; the memo tables behind them are only ever
appended to, so concurrent readers are safe.
"""

from __future__ import annotations

from functools import lru_cache

from .core import PreconditionError, build_power_table, iroot

_pentagonal_memo: list[int] = [1]


def count_partitions(n: int) -> int:
    """p(n), the unrestricted partition count (Euler's pentagonal recurrence)."""
    if n < 0:
        raise PreconditionError(f"count_partitions requires n >= 0, got {n}")
    memo = _pentagonal_memo
    while len(memo) <= n:
        m = len(memo)
        total = 0
        sign = 1
        q = 1
        while True:
            g1 = q * (3 * q - 1) // 2
            if g1 > m:
                break
            total += sign * memo[m - g1]
            g2 = q * (3 * q + 1) // 2
            if g2 <= m:
                total += sign * memo[m - g2]
            sign = -sign
            q += 1
        memo.append(total)
    return memo[n]


@lru_cache(maxsize=None)
def count_partitions_into_parts(n: int, j: int) -> int:
    """p(n,j), partitions of n into exactly j positive parts."""
    if n < 0 or j < 0:
        raise PreconditionError("count_partitions_into_parts requires n, j >= 0")
    if j == 0:
        return 1 if n == 0 else 0
    if n < j:
        return 0
    if n == j or j == 1:
        return 1
    # remove either a part equal to 1 or subtract 1 from every part
    return count_partitions_into_parts(n - 1, j - 1) + count_partitions_into_parts(n - j, j)


@lru_cache(maxsize=None)
def _power_parts(remaining: int, parts: int, max_base: int, k: int) -> int:
    if parts == 0:
        return 1 if remaining == 0 else 0
    if remaining < parts or remaining > parts * max_base**k:
        return 0
    total = 0
    top = min(max_base, iroot(remaining - (parts - 1), k))
    for b in range(top, 0, -1):
        total += _power_parts(remaining - b**k, parts - 1, b, k)
    return total


def count_power_partitions_into_parts(n: int, j: int, k: int) -> int:
    """p^k(n,j), partitions of n into exactly j positive k-th powers.

    Counted over non-increasing base sequences, memoized on
    (remaining, parts-left, max-base); p^k(n,j) >= 1 iff n is
    (j,k)-representable.
    """
    if n < 0 or j < 1 or k < 1:
        raise PreconditionError("count_power_partitions_into_parts requires n >= 0, j, k >= 1")
    if n < j:
        return 0
    return _power_parts(n, j, iroot(n, k), k)


def count_power_partitions(n: int, k: int) -> int:
    """p^k(n), partitions of n into positive k-th powers of any length."""
    if n < 0 or k < 1:
        raise PreconditionError("count_power_partitions requires n >= 0 and k >= 1")
    if n == 0:
        return 1
    ways = [1] + [0] * n
    for c in build_power_table(k, n).powers:
        for m in range(c, n + 1):
            ways[m] += ways[m - c]
    return ways[n]


def power_partition_table(n_max: int, j_max: int, k: int) -> list[list[int]]:
    """Dense table t[j][n] = p^k(n,j) for 0 <= n <= n_max, 0 <= j <= j_max.

    One pass per power keeps sweep-style scans (many (n,j) cells at once)
    cheap; pointwise values agree with count_power_partitions_into_parts.
    """
    if n_max < 0 or j_max < 0 or k < 1:
        raise PreconditionError("power_partition_table requires n_max, j_max >= 0 and k >= 1")
    table = [[0] * (n_max + 1) for _ in range(j_max + 1)]
    table[0][0] = 1
    if n_max >= 1:
        for c in build_power_table(k, n_max).powers:
            for j in range(1, j_max + 1):
                row, prev = table[j], table[j - 1]
                for n in range(c, n_max + 1):
                    row[n] += prev[n - c]
    return table
