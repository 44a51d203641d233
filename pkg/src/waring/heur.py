"""Density heuristics for sums of k-th powers.

V(j,k) is the volume of the positive-orthant region under
x_1^k + ... + x_j^k = 1.  Counting lattice points under the scaled surface
gives ~ n^(j/k) * V(j,k) / j! representations below n (the 1/j! removes
tuple orderings), so the local proportion of (j,k)-representable integers
near n is its derivative

    density(n,j,k) = n^(j/k - 1) * V(j,k) / (k * (j-1)!).

Products of these densities estimate how often one integer carries several
part-counts at once; whether the expected total over [b, inf) is finite is
decided purely by the exponent E = sum(j_i/k_i) - m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Literal

import numpy as np

from .core import PreconditionError, ToleranceError

DEFAULT_QUAD_TOL = 1e-7
DEFAULT_MC_SAMPLES = 10**7
DEFAULT_MC_SEED = 20240801
_MC_BATCH = 1 << 19


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Adaptive Simpson quadrature with absolute tolerance tol."""
    if tol <= 0:
        raise PreconditionError(f"tolerance must be positive, got {tol}")
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fb, m, fm, whole, tol, depth=48)


def _simpson_step(f, a, b, fa, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    half = 0.5 * tol
    return _simpson_step(f, a, m, fa, fm, lm, flm, left, half, depth - 1) + _simpson_step(
        f, m, b, fm, fb, rm, frm, right, half, depth - 1
    )


Method = Literal["quadrature", "monte-carlo"]


@dataclass(frozen=True)
class VolumeEstimate:
    j: int
    k: int
    value: float
    method: Method
    error: float
    samples: int | None = None
    seed: int | None = None


def _volume_quadrature(j: int, k: int, tol: float) -> VolumeEstimate:
    # V(j,k) = V(j-1,k) * I(j-1) with I(m) = integral of (1-x^k)^(m/k) on [0,1]:
    # a cross-section at fixed x is the (j-1)-volume scaled by (1-x^k)^(1/k)
    # in each of its j-1 coordinates.
    value = 1.0
    per_term = tol / max(1, j - 1)
    for m in range(1, j):
        expo = m / k
        value *= adaptive_simpson(lambda x: (1.0 - x**k) ** expo, 0.0, 1.0, per_term)
    return VolumeEstimate(j=j, k=k, value=value, method="quadrature", error=tol)


def _volume_monte_carlo(j: int, k: int, samples: int, seed: int) -> VolumeEstimate:
    # Counter-based generator (Philox) so shard streams are reproducible from
    # the one recorded seed; batches are accumulated in a fixed order.
    rng = np.random.Generator(np.random.Philox(key=seed))
    hits = 0
    done = 0
    while done < samples:
        batch = min(_MC_BATCH, samples - done)
        x = rng.random((batch, j))
        hits += int(np.count_nonzero(np.sum(x**k, axis=1) <= 1.0))
        done += batch
    p = hits / samples
    stderr = math.sqrt(max(p * (1.0 - p), 1e-300) / samples)
    return VolumeEstimate(
        j=j, k=k, value=p, method="monte-carlo", error=stderr, samples=samples, seed=seed
    )


def volume(
    j: int,
    k: int,
    method: Method = "quadrature",
    tol: float | None = None,
    samples: int = DEFAULT_MC_SAMPLES,
    seed: int = DEFAULT_MC_SEED,
) -> VolumeEstimate:
    """Estimate V(j,k) by recursive quadrature or Monte Carlo sampling.

    When an explicit tol is passed and the method cannot meet it within its
    budget, ToleranceError carries the best estimate instead of returning a
    silently weaker number.
    """
    if j < 1 or k < 1:
        raise PreconditionError("volume requires j >= 1 and k >= 1")
    if j == 1:
        return VolumeEstimate(j=j, k=k, value=1.0, method=method, error=0.0)
    if method == "quadrature":
        return _volume_quadrature(j, k, DEFAULT_QUAD_TOL if tol is None else tol)
    if method == "monte-carlo":
        est = _volume_monte_carlo(j, k, samples, seed)
        if tol is not None and est.error > tol:
            raise ToleranceError(
                f"standard error {est.error:.3g} exceeds tol {tol:.3g} after "
                f"{samples} samples",
                estimate=est.value,
                error=est.error,
            )
        return est
    raise PreconditionError(f"unknown method {method!r}")


@dataclass(frozen=True)
class HeuristicModel:
    """Volumes V(j,k) for one exponent k, plus the derived density constants."""

    k: int
    volumes: tuple[VolumeEstimate, ...]

    @classmethod
    def build(
        cls,
        k: int,
        jmax: int,
        method: Method = "quadrature",
        tol: float | None = None,
        samples: int = DEFAULT_MC_SAMPLES,
        seed: int = DEFAULT_MC_SEED,
    ) -> HeuristicModel:
        vols = tuple(
            volume(j, k, method=method, tol=tol, samples=samples, seed=seed)
            for j in range(1, jmax + 1)
        )
        return cls(k=k, volumes=vols)

    def volume(self, j: int) -> VolumeEstimate:
        for v in self.volumes:
            if v.j == j:
                return v
        raise PreconditionError(f"model holds j up to {len(self.volumes)}, asked for {j}")

    def density_constant(self, j: int) -> float:
        """Coefficient of n^(j/k-1) in the density: V(j,k) / (k * (j-1)!)."""
        return self.volume(j).value / (self.k * math.factorial(j - 1))


def density(n: float, j: int, k: int, model: HeuristicModel | None = None) -> float:
    """Heuristic proportion of (j,k)-representable integers near n.

    The derivative of the counting approximation n^(j/k) V(j,k) / j!,
    including the volume factor throughout.
    """
    if n < 1:
        raise PreconditionError(f"density requires n >= 1, got {n}")
    if model is None:
        model = HeuristicModel.build(k, j)
    if model.k != k:
        raise PreconditionError(f"model is for k={model.k}, asked for k={k}")
    return float(n) ** (j / k - 1.0) * model.density_constant(j)


class Outlook(Enum):
    """Trichotomy on the exponent E of an expected-coincidence integrand."""

    FINITE = "finite-expected"      # E < -1: finitely many coincidences expected
    LOGARITHMIC = "logarithmic"     # E = -1: divergent, but only just
    INFINITE = "infinite"           # E > -1: infinitely many expected


@dataclass(frozen=True)
class ExponentVerdict:
    value: Fraction
    outlook: Outlook


def exponent_E(pairs: list[tuple[int, int]] | tuple[tuple[int, int], ...]) -> ExponentVerdict:
    """E = sum(j_i/k_i) - m for pairs (j_i, k_i), as an exact rational."""
    if not pairs:
        raise PreconditionError("exponent_E needs at least one (j,k) pair")
    if any(j < 1 or k < 1 for j, k in pairs):
        raise PreconditionError("all pairs must have j >= 1 and k >= 1")
    e = sum((Fraction(j, k) for j, k in pairs), start=Fraction(0)) - len(pairs)
    if e < -1:
        outlook = Outlook.FINITE
    elif e == -1:
        outlook = Outlook.LOGARITHMIC
    else:
        outlook = Outlook.INFINITE
    return ExponentVerdict(value=e, outlook=outlook)


@dataclass(frozen=True)
class CoincidenceEstimate:
    """Expected number of n >= b simultaneously representable for every pair.

    ``coefficient`` is the product of the per-pair density constants (the C
    in C * n^E); ``value`` is the integral of C * n^E over [b, inf):
    C * b^(E+1) / |E+1| when E < -1, and infinite otherwise (the E = -1 case
    diverges logarithmically and is flagged, not numbered).
    """

    lower_bound: int
    exponent: Fraction
    outlook: Outlook
    coefficient: float
    value: float


def expected_coincidences(
    lower_bound: int,
    pairs: list[tuple[int, int]] | tuple[tuple[int, int], ...],
    model: HeuristicModel,
) -> CoincidenceEstimate:
    """Integrate the product of densities for ``pairs`` from lower_bound up."""
    if lower_bound < 1:
        raise PreconditionError(f"lower bound must be >= 1, got {lower_bound}")
    verdict = exponent_E(pairs)
    if any(k != model.k for _, k in pairs):
        raise PreconditionError(f"all pairs must match the model exponent k={model.k}")
    coeff = 1.0
    for j, _ in pairs:
        coeff *= model.density_constant(j)
    if verdict.outlook is Outlook.FINITE:
        e1 = verdict.value + 1  # negative
        value = coeff * float(lower_bound) ** float(e1) / float(abs(e1))
    else:
        value = math.inf
    return CoincidenceEstimate(
        lower_bound=lower_bound,
        exponent=verdict.value,
        outlook=verdict.outlook,
        coefficient=coeff,
        value=value,
    )
