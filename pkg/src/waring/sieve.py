"""Bit-parallel representability sieve.

The dynamic program: n is (j+1,k)-representable iff n - a**k is
(j,k)-representable for some a >= 1.  With the characteristic function held
as one big bitmap, one step is the OR of the bitmap shifted left by every
k-th power below the limit.  Shift order is irrelevant (OR commutes), and a
step reads only the previous immutable bitmap, so steps could be sharded by
word range without changing a single bit of the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    PreconditionError,
    RepSieve,
    ResourceCapError,
    build_power_table,
)

DEFAULT_RAM_CAP = 8 << 30  # bytes
_RAM_FRACTION = 0.75


def _require_memory(limit: int, ram_cap: int | None) -> None:
    # One advance holds the previous bitmap, the accumulator and a shifted
    # temporary: ~3 copies of limit bits.
    cap = DEFAULT_RAM_CAP if ram_cap is None else ram_cap
    needed = 3 * (limit // 8 + 1)
    if needed > _RAM_FRACTION * cap:
        raise ResourceCapError(
            f"sieve of {limit} bits needs ~{needed} bytes, over 75% of the "
            f"{cap}-byte RAM cap; raise the cap to proceed"
        )


def sieve_base(k: int, limit: int, ram_cap: int | None = None) -> RepSieve:
    """The j=1 sieve: bit n set iff n is a positive perfect k-th power."""
    if limit < 2:
        raise PreconditionError(f"limit must be >= 2, got {limit}")
    _require_memory(limit, ram_cap)
    bits = 0
    for p in build_power_table(k, limit - 1).powers:
        bits |= 1 << p
    return RepSieve(k=k, j=1, limit=limit, bits=bits)


def advance(prev: RepSieve, ram_cap: int | None = None) -> RepSieve:
    """One dynamic-programming step: the (j+1)-sieve from the j-sieve."""
    if prev.at_most:
        raise PreconditionError("advance needs an exact-j sieve, not a union sieve")
    _require_memory(prev.limit, ram_cap)
    mask = (1 << prev.limit) - 1
    bits = prev.bits
    acc = 0
    if bits:
        for p in build_power_table(prev.k, prev.limit - 1).powers:
            acc |= bits << p
        acc &= mask
    return RepSieve(k=prev.k, j=prev.j + 1, limit=prev.limit, bits=acc)


def sieve_exact(k: int, j: int, limit: int, ram_cap: int | None = None) -> RepSieve:
    """The sieve of (j,k)-representable n < limit (j-1 advances from the base)."""
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    s = sieve_base(k, limit, ram_cap=ram_cap)
    for _ in range(j - 1):
        s = advance(s, ram_cap=ram_cap)
    return s


def sieve_at_most(k: int, jmax: int, limit: int, ram_cap: int | None = None) -> RepSieve:
    """Union sieve: bit n set iff n is (j,k)-representable for some j <= jmax.

    This realizes the nonnegative-parts convention (a sum of jmax nonnegative
    k-th powers is a sum of at most jmax positive ones) as a union of the
    exact per-j sieves rather than by adding a fake zero power.
    """
    if jmax < 1:
        raise PreconditionError(f"jmax must be >= 1, got {jmax}")
    cur = sieve_base(k, limit, ram_cap=ram_cap)
    union = cur.bits
    for _ in range(jmax - 1):
        cur = advance(cur, ram_cap=ram_cap)
        union |= cur.bits
    return RepSieve(k=k, j=jmax, limit=limit, bits=union, at_most=True)


@dataclass(frozen=True)
class IntervalCertificate:
    """All m with lower < m < upper are (j,k)-representable.

    ``step`` records the a used when the certificate was produced by an
    extension step (None for a directly computed base interval).
    """

    k: int
    j: int
    lower: int
    upper: int
    step: int | None = None

    def __post_init__(self):
        if self.k < 1 or self.j < 1:
            raise PreconditionError("IntervalCertificate requires k >= 1 and j >= 1")
        if not 0 <= self.lower < self.upper:
            raise PreconditionError("IntervalCertificate requires 0 <= lower < upper")


def extend_interval(cert: IntervalCertificate, a: int) -> IntervalCertificate:
    """Lift a representability interval from j to j+1 parts using step a.

    Requires a**k - (a-1)**k < upper - lower; then every m with
    lower+1 < m < upper + a**k is (j+1,k)-representable: subtracting the
    minimal b**k that brings m below upper cannot overshoot past lower.
    """
    if a < 1:
        raise PreconditionError(f"step a must be >= 1, got {a}")
    gap = a**cert.k - (a - 1) ** cert.k
    span = cert.upper - cert.lower
    if gap >= span:
        raise PreconditionError(
            f"interval extension needs a^k - (a-1)^k < N - n, but "
            f"{a}^{cert.k} - {a - 1}^{cert.k} = {gap} >= {span}"
        )
    return IntervalCertificate(
        k=cert.k, j=cert.j + 1, lower=cert.lower + 1, upper=cert.upper + a**cert.k, step=a
    )


def nstar_application_bound(nstar: int, d: int, b: int, n0: int) -> int:
    """Threshold above which every integer is (b+d,k)-representable.

    Pure arithmetic (nstar + n0); the caller owes the two certificates: nstar
    is (j,k)-representable for every d <= j < b+d, and every n > n0 is a sum
    of at most b positive k-th powers.  Splitting n - nstar (a sum of at most
    b powers, say b' of them) and padding with a (b+d-b')-part representation
    of nstar gives n exactly b+d parts.
    """
    if nstar < 1 or d < 1 or b < 1 or n0 < 0:
        raise PreconditionError("nstar_application_bound requires nstar,d,b >= 1 and n0 >= 0")
    return nstar + n0
