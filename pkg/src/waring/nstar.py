"""Search for witness integers n* that are simultaneously sums of d, d+1,
..., d+s-1 positive k-th powers, the doubling shortcut, and the heuristic
predictor for the smallest workable d.

A verified n* ladder up to G(k)+d, combined with a tail bound for sums of at
most G(k) powers, caps the last exponent at which non-representable
integers can still appear; minimizing d therefore tightens everything
downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import PreconditionError
from .repfind import Representation, find_representation
from .sieve import advance, sieve_base


def search_candidates(
    k: int,
    d: int,
    window: tuple[int, int],
    stages: int = 4,
    ram_cap: int | None = None,
) -> list[int]:
    """All n in the open window that are (j,k)-representable for every
    j in [d, d+stages).

    Implemented as the AND of the per-j bitmaps; an empty result is a valid
    outcome.  Survivors are candidates only: callers are expected to push
    them through verify_nstar for the full ladder.
    """
    lo, hi = window
    if not 0 <= lo < hi:
        raise PreconditionError(f"window must satisfy 0 <= lo < hi, got {window}")
    if d < 1 or stages < 1:
        raise PreconditionError("search_candidates requires d >= 1 and stages >= 1")
    cur = sieve_base(k, hi, ram_cap=ram_cap)
    for _ in range(d - 1):
        cur = advance(cur, ram_cap=ram_cap)
    inter = cur.bits
    for _ in range(stages - 1):
        cur = advance(cur, ram_cap=ram_cap)
        inter &= cur.bits
    # restrict to the open interval (lo, hi)
    inter >>= lo + 1
    out = []
    n = lo + 1
    while inter:
        tz = (inter & -inter).bit_length() - 1
        n += tz
        out.append(n)
        inter >>= tz + 1
        n += 1
    return out


@dataclass(frozen=True)
class DoubledCandidate:
    """n* = 2*nu built from one (delta,k)- and one (delta+1,k)-representation
    of nu; concatenating them in the three possible ways covers j = 2*delta,
    2*delta+1, 2*delta+2."""

    nstar: int
    k: int
    d: int
    representations: tuple[Representation, ...]


def double_candidate(nu: int, delta: int, k: int) -> DoubledCandidate:
    """Double nu into a candidate n* with d = 2*delta.

    Never minimal, but it only needs two representations of nu instead of a
    windowed multi-stage search; the route of record for the largest
    tabulated witnesses.
    """
    if nu < 1 or delta < 1 or k < 1:
        raise PreconditionError("double_candidate requires nu, delta, k >= 1")
    half = {}
    for j in (delta, delta + 1):
        rep = find_representation(nu, j, k)
        if rep is None:
            raise PreconditionError(
                f"nu={nu} has no representation as exactly {j} positive {k}-th powers"
            )
        half[j] = rep
    reps = tuple(
        Representation(
            k=k,
            parts=tuple(sorted(half[a].parts + half[b].parts, reverse=True)),
        )
        for a, b in ((delta, delta), (delta, delta + 1), (delta + 1, delta + 1))
    )
    return DoubledCandidate(nstar=2 * nu, k=k, d=2 * delta, representations=reps)


def run_exponent(k: int, d: int) -> Fraction:
    """E for the run of pairs (j,k), d <= j <= k-1: -(k-d)(k-d+1)/(2k).

    Agrees with the direct summation of j/k - 1 over the run; E = -1 is the
    boundary at which coincidences stop being expected in abundance.
    """
    if not 0 <= d <= k:
        raise PreconditionError(f"run_exponent requires 0 <= d <= k, got d={d}, k={k}")
    return Fraction(-(k - d) * (k - d + 1), 2 * k)


@dataclass(frozen=True)
class MinDEstimate:
    """Heuristic minimum d for exponent k, with the run exponents nearby.

    d_real solves (k-d)(k-d+1) = 2k, i.e. E = -1 exactly; exponents lists
    (d, E(d)) for the integers around the root.  E > -1 predicts solutions,
    E = -1 is borderline (k=3 lands on d=1 here, which no cube can honor).
    """

    k: int
    d_real: float
    exponents: tuple[tuple[int, Fraction], ...]


def min_d_heuristic(k: int) -> MinDEstimate:
    """The d at which a simultaneous-representation witness is first expected."""
    if k < 2:
        raise PreconditionError(f"min_d_heuristic requires k >= 2, got {k}")
    d_real = k + (1 - math.sqrt(1 + 8 * k)) / 2
    lo = max(0, math.floor(d_real))
    nearby = sorted({lo, min(k, lo + 1)})
    return MinDEstimate(
        k=k,
        d_real=d_real,
        exponents=tuple((d, run_exponent(k, d)) for d in nearby),
    )
