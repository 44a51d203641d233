"""Explicit representation search: produce an actual multiset of j positive
k-th powers summing to n, or certify that none exists.

Depth-first, largest base first.  The largest base is pinned between
ceil((n/j)^(1/k)) and floor(n^(1/k)); every deeper level inherits the
previous base as a cap, so only non-increasing sequences are visited and no
permuted duplicate is ever enumerated.  The first representation found in
this canonical order is returned, which makes the output deterministic.

An optional small-j sieve short-circuits the last few levels: when the
number of parts still open equals the sieve's j, a single bitmap probe
replaces that whole subtree when it is certain to fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CertificateError,
    PreconditionError,
    RepSieve,
    SearchBudgetError,
    iroot,
    iroot_ratio,
)
from .sieve import sieve_exact

DEFAULT_NODE_BUDGET = 10**9
PRUNE_PARTS = 4  # the bitmap probe replaces this many recursion levels


@dataclass(frozen=True)
class Representation:
    """A (j,k)-representation: non-increasing bases whose k-th powers sum to
    the target."""

    k: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError(f"k must be >= 1, got {self.k}")
        if not self.parts:
            raise PreconditionError("a representation needs at least one part")
        if any(p < 1 for p in self.parts):
            raise PreconditionError("all bases must be >= 1")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise PreconditionError("bases must be non-increasing")

    @property
    def j(self) -> int:
        return len(self.parts)

    def value(self) -> int:
        return sum(p**self.k for p in self.parts)


class _Search:
    __slots__ = ("k", "prune", "budget", "nodes")

    def __init__(self, k: int, prune: RepSieve | None, budget: int):
        self.k = k
        self.prune = prune
        self.budget = budget
        self.nodes = 0

    def run(self, remaining: int, parts: int, cap: int) -> tuple[int, ...] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetError(
                f"node budget {self.budget} exhausted; search inconclusive"
            )
        k = self.k
        if parts == 1:
            r = iroot(remaining, k)
            return (r,) if r**k == remaining and r <= cap else None
        prune = self.prune
        if (
            prune is not None
            and parts == prune.j
            and remaining < prune.limit
            and not prune.test(remaining)
        ):
            return None
        # largest part between the j-part average and the whole remainder
        low = _ceil_avg_root(remaining, parts, k)
        high = min(cap, iroot(remaining - (parts - 1), k))
        for b in range(high, low - 1, -1):
            rest = self.run(remaining - b**k, parts - 1, b)
            if rest is not None:
                return (b, *rest)
        return None


def _ceil_avg_root(n: int, j: int, k: int) -> int:
    """ceil((n/j)^(1/k)): the smallest admissible largest base."""
    r = iroot_ratio(n, j, k)
    return r if r**k * j >= n else r + 1


def find_representation(
    n: int,
    j: int,
    k: int,
    prune: RepSieve | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Representation | None:
    """Search for a (j,k)-representation of n; None means proven absence.

    The search is exhaustive within its canonical order, so None is a valid
    negative result, distinct from SearchBudgetError (raised when the node
    budget runs out first, so a truncated search is never silently read as
    absence).
    """
    if n < 1 or j < 1 or k < 1:
        raise PreconditionError("find_representation requires n, j, k >= 1")
    if prune is not None and (prune.k != k or prune.at_most):
        raise PreconditionError("prune sieve must be an exact-j sieve for the same k")
    if n < j:
        return None
    parts = _Search(k, prune, node_budget).run(n, j, n)
    return None if parts is None else Representation(k=k, parts=parts)


def build_prune_sieve(k: int, limit: int, parts: int = PRUNE_PARTS) -> RepSieve:
    """The exact-j membership sieve used to cut failing subtrees early."""
    return sieve_exact(k, parts, limit)


@dataclass(frozen=True)
class NStarCertificate:
    """Witness that nstar is (j,k)-representable for every j in [d, jmax]."""

    nstar: int
    k: int
    d: int
    jmax: int
    representations: tuple[Representation, ...]

    def __post_init__(self):
        if not 1 <= self.d <= self.jmax:
            raise PreconditionError("certificate needs 1 <= d <= jmax")
        expected = range(self.d, self.jmax + 1)
        if [r.j for r in self.representations] != list(expected):
            raise PreconditionError("certificate must hold one representation per j in [d, jmax]")
        for r in self.representations:
            if r.k != self.k or r.value() != self.nstar:
                raise PreconditionError(
                    f"representation with {r.j} parts does not sum to {self.nstar}"
                )


def verify_nstar(
    nstar: int,
    k: int,
    d: int,
    jmax: int,
    prune: RepSieve | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    prune_limit: int = 1 << 22,
) -> NStarCertificate:
    """Exhibit representations of nstar for every j in [d, jmax].

    Fails fast: the first j with no representation raises CertificateError
    naming it.  A default prune sieve is built once (bounded by prune_limit
    bits) and shared across all j.
    """
    if nstar < jmax:
        raise PreconditionError(f"nstar={nstar} is smaller than jmax={jmax}")
    if prune is None and jmax > PRUNE_PARTS:
        prune = build_prune_sieve(k, min(nstar + 1, prune_limit))
    reps = []
    for j in range(d, jmax + 1):
        rep = find_representation(nstar, j, k, prune=prune, node_budget=node_budget)
        if rep is None:
            raise CertificateError(
                f"{nstar} has no representation as exactly {j} positive {k}-th powers",
                j=j,
            )
        reps.append(rep)
    return NStarCertificate(nstar=nstar, k=k, d=d, jmax=jmax, representations=tuple(reps))
