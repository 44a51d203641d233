"""Core domain types: power tables, packed representability bitmaps, B-sets,
and the table of known constants for the classical and generalized Waring
problem.

Everything in this module is immutable after construction and safe to share
across threads.  All integer arithmetic is exact (native Python integers);
inputs are required to stay inside the unsigned 64-bit range so that the
on-disk sieve format and the tabulated constants (largest: n* for k=9,
25636699123453928) are representable everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Literal

import numpy as np

U64_MAX = 2**64 - 1


class WaringError(Exception):
    """Base class for errors raised by this package."""


class RangeOverflowError(WaringError, OverflowError):
    """An input or result would leave the supported 64-bit integer range."""


class NotTabulatedError(WaringError, LookupError):
    """Requested constant is outside the tabulated range."""


class PreconditionError(WaringError, ValueError):
    """A documented precondition does not hold; the message names it."""


class InconclusiveError(WaringError):
    """The computation window is too small to support a verdict."""


class ResourceCapError(WaringError):
    """Refusing an allocation that would exceed the configured RAM cap."""


class SearchBudgetError(WaringError):
    """Search node budget exhausted before the search space was covered."""


class CertificateError(WaringError):
    """A required witness representation could not be produced.

    ``j`` names the part-count that failed, when one is known.
    """

    def __init__(self, message: str, j: int | None = None):
        super().__init__(message)
        self.j = j


class ToleranceError(WaringError):
    """Requested tolerance unachievable; carries the best estimate."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n, by binary search on integers.

    Exact at any scale; no floating point is involved, so a result r always
    satisfies r**k <= n < (r+1)**k.
    """
    if k < 1:
        raise PreconditionError(f"root index k must be >= 1, got {k}")
    if n < 0:
        raise PreconditionError(f"iroot requires n >= 0, got {n}")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return isqrt(n)
    hi = 1 << ((n.bit_length() + k - 1) // k + 1)
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def iroot_ratio(num: int, den: int, k: int) -> int:
    """Floor of the k-th root of the exact rational num/den.

    Evaluated entirely in integer arithmetic (r**k * den <= num), so floors
    at boundaries can never be flipped by rounding.
    """
    if den <= 0 or num < 0:
        raise PreconditionError("iroot_ratio requires num >= 0 and den > 0")
    if k < 1:
        raise PreconditionError(f"root index k must be >= 1, got {k}")
    hi = 1 << ((num.bit_length() + k - 1) // k + 1)
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k * den <= num:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class PowerTable:
    """Ascending table of the positive k-th powers a**k <= limit."""

    k: int
    limit: int
    powers: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError(f"exponent k must be >= 1, got {self.k}")
        ps = self.powers
        if not ps or ps[0] != 1:
            raise PreconditionError("power table must start at 1**k = 1")
        if any(b >= a for a, b in zip(ps[1:], ps)):
            raise PreconditionError("power table must be strictly increasing")
        if ps[-1] > self.limit:
            raise PreconditionError("power table exceeds its limit")
        if (len(ps) + 1) ** self.k <= self.limit:
            raise PreconditionError("power table is missing its last entry")

    def __len__(self) -> int:
        return len(self.powers)


def build_power_table(k: int, limit: int) -> PowerTable:
    """All positive k-th powers <= limit, ascending.

    Raises RangeOverflowError if limit leaves the unsigned 64-bit range
    (the supported domain); inside it, arithmetic is exact.
    """
    if k < 1:
        raise PreconditionError(f"exponent k must be >= 1, got {k}")
    if limit < 1:
        raise PreconditionError(f"limit must be >= 1, got {limit}")
    if limit > U64_MAX:
        raise RangeOverflowError(
            f"limit {limit} exceeds the supported 64-bit range ({U64_MAX})"
        )
    powers = []
    a = 1
    while True:
        p = a**k
        if p > limit:
            break
        powers.append(p)
        a += 1
    return PowerTable(k=k, limit=limit, powers=tuple(powers))


@dataclass(frozen=True)
class RepSieve:
    """Packed bitmap over [0, limit): bit n set iff n is (j,k)-representable.

    ``bits`` is an arbitrary-size integer used as a bit array; bit n of the
    little-endian byte serialization is word n//64, position n%64, which is
    exactly ``bits.to_bytes(..., "little")``.

    ``at_most`` marks a union sieve (representable by *some* j' <= j); the
    low-bit invariants differ because 1 = 1**k is then always representable.
    """

    k: int
    j: int
    limit: int
    bits: int
    at_most: bool = False

    def __post_init__(self):
        if self.k < 1 or self.j < 1:
            raise PreconditionError("RepSieve requires k >= 1 and j >= 1")
        if self.limit < 1:
            raise PreconditionError("RepSieve limit must be >= 1")
        if self.bits < 0 or self.bits >> self.limit:
            raise PreconditionError("sieve has bits at or above its limit")
        if self.bits & 1:
            raise PreconditionError("bit 0 must be clear (0 has no positive parts)")
        floor = 1 if self.at_most else self.j
        if self.bits & ((1 << min(floor, self.limit)) - 1):
            raise PreconditionError(f"bits below {floor} must be clear")
        if floor < self.limit and not (self.bits >> floor) & 1:
            raise PreconditionError(f"bit {floor} (all-ones sum) must be set")

    def test(self, n: int) -> bool:
        """Membership of n in the representable set; n must lie in [0, limit)."""
        if not 0 <= n < self.limit:
            raise PreconditionError(f"n={n} outside sieve range [0, {self.limit})")
        return bool((self.bits >> n) & 1)

    def count(self) -> int:
        return self.bits.bit_count()

    def set_indices(self) -> np.ndarray:
        """All n with bit n set, ascending, as an int64 array."""
        return _unpack_indices(self.bits, self.limit, value=1)

    def clear_indices(self) -> np.ndarray:
        """All n in [1, limit) with bit n clear, ascending (the complement)."""
        return _unpack_indices(self.bits, self.limit, value=0)


def _unpack_indices(bits: int, limit: int, value: int) -> np.ndarray:
    nbytes = (limit + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    flat = np.unpackbits(raw, bitorder="little")[:limit]
    idx = np.flatnonzero(flat == value)
    return idx[idx >= 1] if value == 0 else idx


@dataclass(frozen=True)
class BSet:
    """Sorted exact set of non-representable integers below ``limit``.

    ``j`` is the number of parts (0 is the sentinel for a stabilized shifted
    set that no longer depends on j).  ``complete`` means the set is known to
    be the entire set of exceptions, not just the complement observed below
    ``limit``; it is only set when a stabilization verdict or a transcribed
    classical result justifies it.
    """

    k: int
    j: int
    limit: int
    elements: tuple[int, ...]
    complete: bool = False

    def __post_init__(self):
        els = self.elements
        if any(b >= a for a, b in zip(els[1:], els)):
            raise PreconditionError("BSet elements must be strictly increasing")
        if els and (els[0] < 1 or els[-1] >= self.limit):
            raise PreconditionError("BSet elements must lie in [1, limit)")

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def max_element(self) -> int:
        if not self.elements:
            raise PreconditionError("empty set has no maximum")
        return self.elements[-1]

    def shifted(self) -> tuple[int, ...]:
        """The down-shifted set {n - j : n in self, n > j}."""
        return tuple(n - self.j for n in self.elements if n > self.j)


Status = Literal["proven", "conjectured", "upper-bound"]


@dataclass(frozen=True)
class Bound:
    value: int
    status: Status


@dataclass(frozen=True)
class KnownBounds:
    """Tabulated constants of the generalized Waring problem for one k.

    ``g1`` is the least j from which the transient exception sets are empty,
    as established at theorem level; ``g1_variant`` is the discrepant
    companion value that circulates in print for k = 3, 4, 5, 7 (one off from
    the theorem-level value) and is retained so the disagreement stays
    visible.  ``nstar``/``d`` describe the witness integer that is a sum of
    d, d+1, ..., G(k)+d positive k-th powers.
    """

    k: int
    g: Bound
    G_upper: Bound
    G1_upper: Bound
    G1_conjectured: Bound | None
    g1: Bound
    g1_variant: int
    nstar: Bound | None
    d: Bound | None

    @property
    def verified_jmax(self) -> int | None:
        """G(k)+d, the top of the witness ladder, when a witness is tabulated."""
        if self.nstar is None or self.d is None:
            return None
        return self.G_upper.value + self.d.value


def _kb(k, g, gs, Gu, Gus, G1u, G1us, G1c, g1, g1s, g1v, ns, d) -> KnownBounds:
    return KnownBounds(
        k=k,
        g=Bound(g, gs),
        G_upper=Bound(Gu, Gus),
        G1_upper=Bound(G1u, G1us),
        G1_conjectured=None if G1c is None else Bound(G1c, "conjectured"),
        g1=Bound(g1, g1s),
        g1_variant=g1v,
        nstar=None if ns is None else Bound(ns, "proven"),
        d=None if ns is None else Bound(d, "proven"),
    )


# g(k): OEIS A002804.  G(k) and G(1,k) entries are proven exact for
# k = 1, 2, 4 (Lagrange, Davenport) and upper bounds elsewhere.
_KNOWN_BOUNDS: dict[int, KnownBounds] = {
    b.k: b
    for b in (
        _kb(1, 1, "proven", 1, "proven", 1, "proven", None, 1, "proven", 1, None, 0),
        _kb(2, 4, "proven", 4, "proven", 5, "proven", None, 6, "proven", 6, 169, 1),
        _kb(3, 9, "proven", 7, "upper-bound", 9, "upper-bound", None,
            14, "proven", 15, 1072, 2),
        _kb(4, 19, "proven", 16, "proven", 18, "upper-bound", None,
            21, "proven", 22, 77900162, 2),
        _kb(5, 37, "proven", 17, "upper-bound", 20, "upper-bound", 11,
            57, "proven", 58, 100000497376, 3),
        _kb(6, 73, "proven", 24, "upper-bound", 29, "upper-bound", 18,
            78, "conjectured", 78, 41253168892, 5),
        _kb(7, 143, "proven", 33, "upper-bound", 40, "upper-bound", 25,
            245, "proven", 244, 822480142011, 7),
        _kb(8, 279, "proven", 42, "upper-bound", 52, "upper-bound", 47,
            334, "proven", 334, 17373783550950, 9),
        _kb(9, 548, "proven", 50, "upper-bound", 117, "upper-bound", 121,
            717, "conjectured", 717, 25636699123453928, 14),
    )
}


def known_bounds(k: int) -> KnownBounds:
    """Tabulated constants for exponent k, 1 <= k <= 9."""
    try:
        return _KNOWN_BOUNDS[k]
    except KeyError:
        raise NotTabulatedError(f"no tabulated bounds for k={k} (supported: 1..9)") from None


def tabulated_exponents() -> tuple[int, ...]:
    return tuple(sorted(_KNOWN_BOUNDS))
