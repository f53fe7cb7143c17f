"""Insider eigenvalues and exact community recovery for the regular SBM.

The community vector sigma is an exact integer eigenvector of A with
eigenvalue d1-d2; its lift puts two real eigenvalues inside the bulk circle
of radius sqrt(d1+d2-1) whenever (d1-d2)^2 > 4(d1+d2-1), and the sign
pattern of the corresponding eigenvector recovers the communities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbiguityError,
    DetectabilityError,
    DomainError,
    MultiplicityError,
    StructureError,
)
from .graphs import RsbmGraph
from .operators import adjacency_matrix
from .spectral import LiftedSpectrum, _quad_roots, full_lifted_spectrum, symmetric_eigs

#: tolerance for matching the four deterministic eigenvalues in a lifted spectrum
MATCH_TOL = 1e-8
#: isolation radius certifying those eigenvalues are simple
ISOLATION_TOL = 1e-6


@dataclass(frozen=True)
class InsiderPair:
    """Roots of mu^2 - (d1-d2) mu + (d1+d2-1) = 0, larger real part first."""

    mu2: complex
    mu2_prime: complex
    detectable: bool


@dataclass(frozen=True)
class RecoveryResult:
    sigma_hat: tuple
    agreement: float
    exact: bool
    zero_entries: int
    lam_selected: float


def rsbm_mu2(d1: int, d2: int) -> InsiderPair:
    """Insider eigenvalue pair for (d1, d2); detectable iff the roots are
    real and distinct, i.e. (d1-d2)^2 > 4(d1+d2-1) strictly."""
    if d1 < 1 or d2 < 1:
        raise DomainError("degrees must be positive")
    mu, mup = _quad_roots(float(d1 - d2), float(d1 + d2 - 1))
    detectable = (d1 - d2) ** 2 > 4 * (d1 + d2 - 1)
    return InsiderPair(mu2=mu, mu2_prime=mup, detectable=detectable)


def deterministic_sigma_eigenpair(g: RsbmGraph) -> "tuple[int, bool]":
    """Verify A sigma = (d1-d2) sigma in exact integer arithmetic.

    This holds for every valid sample by the degree structure; a failure
    means the generator (or a loaded file) is corrupt.
    """
    A = adjacency_matrix(g)
    sigma = np.asarray(g.sigma, dtype=np.int64)
    lhs = A @ sigma
    lam = g.d1 - g.d2
    if not np.array_equal(lhs, lam * sigma):
        raise StructureError("A sigma != (d1-d2) sigma; sigma is not an exact eigenvector")
    return lam, True


def recover_communities(g: RsbmGraph) -> RecoveryResult:
    """Estimate sigma from the sign pattern of the eigenvector of A whose
    eigenvalue is nearest d1-d2 (the Perron eigenvalue d1+d2 excluded).

    Raises AmbiguityError when the two nearest candidate eigenvalues are
    within 1e-6 of each other, and DetectabilityError below the threshold.
    """
    pair = rsbm_mu2(g.d1, g.d2)
    if not pair.detectable:
        raise DetectabilityError(
            f"(d1-d2)^2 = {(g.d1 - g.d2) ** 2} <= 4(d1+d2-1) = {4 * (g.d1 + g.d2 - 1)}"
        )
    eigs = symmetric_eigs(adjacency_matrix(g))
    lams = np.asarray([p.lam for p in eigs])
    perron = int(np.argmin(np.abs(lams - (g.d1 + g.d2))))
    target = float(g.d1 - g.d2)
    cand = [i for i in range(len(eigs)) if i != perron]
    cand.sort(key=lambda i: abs(lams[i] - target))
    best = cand[0]
    if len(cand) > 1 and abs(lams[cand[1]] - lams[best]) < 1e-6:
        raise AmbiguityError(
            f"eigenvalues {lams[best]} and {lams[cand[1]]} both lie near {target}"
        )
    v = eigs[best].v
    zero_entries = int(np.sum(v == 0.0))
    sigma_hat = np.where(v >= 0.0, 1, -1)
    sigma = np.asarray(g.sigma)
    agree = float(np.mean(sigma_hat == sigma))
    agreement = max(agree, 1.0 - agree)
    return RecoveryResult(
        sigma_hat=tuple(int(s) for s in sigma_hat),
        agreement=agreement,
        exact=agreement == 1.0,
        zero_entries=zero_entries,
        lam_selected=float(lams[best]),
    )


def sigma_reduced_eigenvector(g: RsbmGraph, mu: complex) -> np.ndarray:
    """Unit reduced-operator eigenvector [sigma; (mu/(d1+d2-1)) sigma]."""
    sigma = np.asarray(g.sigma, dtype=np.float64)
    u = np.concatenate([sigma.astype(np.complex128), (complex(mu) / (g.d1 + g.d2 - 1)) * sigma])
    return u / np.linalg.norm(u)


@dataclass(frozen=True)
class InsiderGapReport:
    n: int
    d1: int
    d2: int
    mu2: float
    mu2_prime: float
    specials: tuple
    max_circle_deviation: float
    radius: float


def insider_gap_report(g: RsbmGraph, spectrum: LiftedSpectrum | None = None) -> InsiderGapReport:
    """Locate {d1+d2-1, 1, mu2, mu2'} in the lifted spectrum (each simple)
    and report how far the remaining eigenvalues sit from the bulk circle."""
    pair = rsbm_mu2(g.d1, g.d2)
    if not pair.detectable:
        raise DetectabilityError("insider gap requires detectable parameters")
    if g.d1 % 2:
        raise DomainError("insider gap report requires even d1")
    spec = spectrum if spectrum is not None else full_lifted_spectrum(g)
    mus = spec.mus()
    specials = (
        float(g.d1 + g.d2 - 1),
        1.0,
        float(pair.mu2.real),
        float(pair.mu2_prime.real),
    )
    taken = np.zeros(len(mus), dtype=bool)
    for s in specials:
        dist = np.abs(mus - s)
        hits = np.flatnonzero((dist <= MATCH_TOL) & ~taken)
        if len(hits) != 1:
            raise MultiplicityError(f"expected exactly one eigenvalue at {s}, found {len(hits)}")
        idx = hits[0]
        others = np.delete(dist, idx)
        if np.min(others) < ISOLATION_TOL:
            raise MultiplicityError(f"eigenvalue at {s} is not isolated at radius {ISOLATION_TOL}")
        taken[idx] = True
    rest = mus[~taken]
    radius = math.sqrt(g.d1 + g.d2 - 1)
    dev = float(np.max(np.abs(np.abs(rest) - radius)))
    return InsiderGapReport(
        n=g.n,
        d1=g.d1,
        d2=g.d2,
        mu2=float(pair.mu2.real),
        mu2_prime=float(pair.mu2_prime.real),
        specials=specials,
        max_circle_deviation=dev,
        radius=radius,
    )
