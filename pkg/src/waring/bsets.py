"""B-sets: extraction, reduction, stabilization and the classical
classifications for small exponents.

Terminology: B(j,k) is the set of positive integers that are not a sum of
exactly j positive k-th powers.  For j large enough it settles into
{1..j-1} plus a shifted copy of a fixed set B(k); the transient tail
observed before that is the reduced set returned by :func:`reduce_bset`.
Stabilization is certified by two checkable conditions on consecutive j
(:func:`check_consistency`); once they hold, the shifted set can no longer
change at any larger j.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .core import (
    BSet,
    InconclusiveError,
    PreconditionError,
    RepSieve,
    iroot,
    iroot_ratio,
)
from .sieve import advance, sieve_base

# Grosswald's set for squares: n is a sum of j >= 6 positive squares unless
# n <= j-1 or n-j lands in this set.
GROSSWALD_B2 = (1, 2, 4, 5, 7, 10, 13)

# Numbers t such that 4^a * t is not a sum of three positive squares even
# though it escapes the 4^a(8m+7) obstruction (Grosswald-Calloway-Calloway;
# at most one further element, necessarily > 5e10, could exist).
THREE_SQUARE_T = (1, 2, 5, 10, 13, 25, 37, 58, 85, 130)

# Dubouis: the non-sums of four positive squares are {1,2,3}, 4 + (B2 and
# {25,37}), and the three geometric families 2*4^a, 6*4^a, 14*4^a (A000534).
FOUR_SQUARE_SPORADIC = (25, 37)
FOUR_SQUARE_FAMILIES = (2, 6, 14)

# Observed (max, size) of the stabilized sets B(k).  Desk-scale computation
# reproduces k <= 5; the k >= 6 rows take multi-million-bit sieves on record
# and are retained untouched as reference values.
KNOWN_BSET_STATS = {
    2: (13, 7),
    3: (149, 75),
    4: (2641, 1321),
    5: (6261, 3175),
    6: (711649, 355825),
    7: (249077, 127839),
    8: (1890241, 945121),
    9: (6464397, 3438463),
}


def extract_bset(sieve: RepSieve) -> BSet:
    """The complement of a sieve on (0, limit) as a sorted exact set.

    The result is flagged empirical (complete=False): it is the truth below
    the sieve limit, with no claim about larger integers.
    """
    elements = tuple(int(n) for n in sieve.clear_indices())
    return BSet(k=sieve.k, j=sieve.j, limit=sieve.limit, elements=elements, complete=False)


def reduce_bset(bset_j: BSet, base: BSet) -> BSet:
    """The transient tail: shift bset_j down by j and remove the base set."""
    if bset_j.j < 1:
        raise PreconditionError("reduce_bset needs a per-j set (j >= 1)")
    if base.k != bset_j.k:
        raise PreconditionError(f"exponent mismatch: k={bset_j.k} vs base k={base.k}")
    drop = frozenset(base.elements)
    tail = tuple(n for n in bset_j.shifted() if n not in drop)
    return BSet(
        k=bset_j.k,
        j=bset_j.j,
        limit=max(bset_j.limit - bset_j.j, 1),
        elements=tail,
        complete=bset_j.complete and base.complete,
    )


@dataclass(frozen=True)
class ConsistencyVerdict:
    """Outcome of the two stabilization conditions at step j -> j+1.

    condition1: B(j+1) = {1} union (B(j) shifted up by one).
    condition2: floor of the k-th root of (m-j)(1 + 1/(2^k - 1)) equals
    floor of the k-th root of m, with m = max B(j); both floors are kept.
    """

    k: int
    j: int
    m: int
    condition1: bool
    condition2: bool
    floor_scaled: int
    floor_max: int

    def __post_init__(self):
        if self.condition2 != (self.floor_scaled == self.floor_max):
            raise PreconditionError("condition2 must match its floor values")

    @property
    def stabilized(self) -> bool:
        return self.condition1 and self.condition2


def check_consistency(bset_j: BSet, bset_j1: BSet) -> ConsistencyVerdict:
    """Evaluate the stabilization conditions on consecutive complements.

    Floors are taken with exact integer arithmetic; the scaled product
    (m-j) * 2^k / (2^k - 1) is never rounded before the root.  Raises
    InconclusiveError when the observed maximum sits within one advance step
    (2^k) of the window end, where the complement cannot be trusted to be
    the whole set.
    """
    if bset_j1.k != bset_j.k or bset_j1.j != bset_j.j + 1:
        raise PreconditionError("check_consistency needs consecutive j at the same k")
    if not bset_j.elements or not bset_j1.elements:
        raise InconclusiveError("empty complement: window too small or j out of range")
    window = min(bset_j.limit, bset_j1.limit)
    k, j = bset_j.k, bset_j.j
    m = bset_j.max_element
    if m >= window - 2**k or bset_j1.max_element >= window - 2**k:
        raise InconclusiveError(
            f"max element {m} within one advance step (2^{k}) of the window {window}"
        )
    shifted_up = {1} | {n + 1 for n in bset_j.elements}
    condition1 = shifted_up == set(bset_j1.elements)
    denom = 2**k - 1
    floor_scaled = iroot_ratio((m - j) * 2**k, denom, k)
    floor_max = iroot(m, k)
    return ConsistencyVerdict(
        k=k,
        j=j,
        m=m,
        condition1=condition1,
        condition2=floor_scaled == floor_max,
        floor_scaled=floor_scaled,
        floor_max=floor_max,
    )


def check_chain_inclusion(bset_j: BSet, bset_j1: BSet) -> bool:
    """Shifted inclusion {n-(j+1) : n in B(j+1)} within {n-j : n in B(j)}."""
    if bset_j1.k != bset_j.k or bset_j1.j != bset_j.j + 1:
        raise PreconditionError("check_chain_inclusion needs consecutive j at the same k")
    return set(bset_j1.shifted()) <= set(bset_j.shifted())


def stabilization_bound(a_jk: int, k: int) -> int:
    """Smallest j0 with j0 >= a_jk / (2^k - 1); beyond it no tail can survive."""
    if a_jk < 1:
        raise PreconditionError(f"a_jk must be >= 1, got {a_jk}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    denom = 2**k - 1
    return -(-a_jk // denom)


@dataclass(frozen=True)
class StabilizationStep:
    j: int
    size: int
    max_element: int
    conclusive: bool
    condition1: bool
    condition2: bool


@dataclass(frozen=True)
class StabilizationResult:
    """Outcome of advancing j until the consistency conditions hold."""

    k: int
    limit: int
    stabilized_at: int | None
    verdict: ConsistencyVerdict | None
    bset: BSet | None
    steps: tuple[StabilizationStep, ...]

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None


def stabilize(k: int, limit: int, jmax: int, ram_cap: int | None = None) -> StabilizationResult:
    """Advance j from 1, extracting complements, until stabilization.

    Returns at the first j whose consistency verdict holds; the candidate
    stabilized set is the j-complement shifted down by j and is flagged
    complete below the window precisely because the verdict justifies it.
    Inconclusive windows (complement still touching the limit) are recorded
    and skipped, never treated as failures.
    """
    if jmax < 1:
        raise PreconditionError(f"jmax must be >= 1, got {jmax}")
    cur = sieve_base(k, limit, ram_cap=ram_cap)
    cur_bset = extract_bset(cur)
    steps: list[StabilizationStep] = []
    for j in range(1, jmax + 1):
        nxt = advance(cur, ram_cap=ram_cap)
        nxt_bset = extract_bset(nxt)
        try:
            verdict = check_consistency(cur_bset, nxt_bset)
        except InconclusiveError:
            verdict = None
        steps.append(
            StabilizationStep(
                j=j,
                size=cur_bset.size,
                max_element=cur_bset.max_element if cur_bset.elements else 0,
                conclusive=verdict is not None,
                condition1=bool(verdict and verdict.condition1),
                condition2=bool(verdict and verdict.condition2),
            )
        )
        if verdict is not None and verdict.stabilized:
            candidate = BSet(
                k=k,
                j=0,
                limit=limit - j,
                elements=cur_bset.shifted(),
                complete=True,
            )
            return StabilizationResult(
                k=k,
                limit=limit,
                stabilized_at=j,
                verdict=verdict,
                bset=candidate,
                steps=tuple(steps),
            )
        cur, cur_bset = nxt, nxt_bset
    return StabilizationResult(
        k=k, limit=limit, stabilized_at=None, verdict=None, bset=None, steps=tuple(steps)
    )


def classify_four_squares(n: int) -> bool:
    """True iff n is NOT a sum of four positive squares (Dubouis).

    The non-representable numbers are {1,2,3}, 4+b for b in GROSSWALD_B2 or
    {25,37}, and the families 2*4^a, 6*4^a, 14*4^a (OEIS A000534).
    """
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if n <= 3:
        return True
    if n - 4 in GROSSWALD_B2 or n - 4 in FOUR_SQUARE_SPORADIC:
        return True
    t = n
    while t % 4 == 0:
        t //= 4
    return t in FOUR_SQUARE_FAMILIES


class ThreeSquares(Enum):
    """Verdict for n as a sum of three positive squares."""

    OBSTRUCTION_8M7 = "obstruction_8m7"
    IN_T_FAMILY = "in_T_family"
    REPRESENTABLE = "representable"


def classify_three_squares(n: int) -> ThreeSquares:
    """Classify n: 4^a(8m+7) obstruction, sporadic 4^a*T family, or a sum of
    three positive squares."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    t = n
    while t % 4 == 0:
        t //= 4
    if t % 8 == 7:
        return ThreeSquares.OBSTRUCTION_8M7
    if t in THREE_SQUARE_T:
        return ThreeSquares.IN_T_FAMILY
    return ThreeSquares.REPRESENTABLE


def three_cubes_obstruction(n: int) -> bool:
    """True iff n = 4 or 5 mod 9, which forbids a sum of three positive cubes
    (cubes are 0, +1, -1 mod 9)."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return n % 9 in (4, 5)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f <= isqrt(p):
        if p % f == 0:
            return False
        f += 2
    return True


def fermat_lower_bound(p: int) -> int:
    """Lower bound p^(p-1) * (p-1)/2 for the size of the stabilized set at
    exponent p-1.

    Little-Fermat residues mod p pin a fixed fraction of every block of
    length p^(p-1) outside the representable range, which is where the bound
    comes from.
    """
    if not _is_odd_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    return p ** (p - 1) * (p - 1) // 2


@dataclass(frozen=True)
class BSetStats:
    """Extremes of a stabilized set: a = max, b = cardinality."""

    k: int
    max_element: int
    size: int

    def __post_init__(self):
        if self.max_element < self.size or self.size < 1:
            raise PreconditionError("stats require max >= size >= 1")


def bset_stats(base: BSet) -> BSetStats:
    if not base.elements:
        raise PreconditionError("cannot take stats of an empty set")
    return BSetStats(k=base.k, max_element=base.max_element, size=base.size)


def check_conjectures(base: BSet) -> dict[str, bool]:
    """Finite-instance checks of the observed structural patterns.

    sizemax:  max = 2*size - 1 (holds at k a power of two, and at k=3).
    reverse:  n in B iff max-n not in B, a perfect reflection.
    odd_parity: both max and size are odd.
    These are checkable predicates for one set, never proofs.
    """
    stats = bset_stats(base)
    a = stats.max_element
    members = frozenset(base.elements)
    reverse = all((n in members) != ((a - n) in members) for n in range(1, a))
    return {
        "sizemax": a == 2 * stats.size - 1,
        "reverse": reverse and a in members,
        "odd_parity": a % 2 == 1 and stats.size % 2 == 1,
    }
