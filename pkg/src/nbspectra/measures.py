"""Projection of lifted eigenvalues to the real line, closed-form limit
densities, and goodness-of-fit statistics.

Density variants:

* ``KestenMcKay(d)``   -- 2d sqrt((d-1)-x^2) / (pi (d^2-4x^2)) on [-sqrt(d-1), sqrt(d-1)]
* ``Semicircle()``     -- sqrt(4-x^2) / (2 pi) on [-2, 2]
* ``HyperFixed(d, k)`` -- fixed-(d,k) hypergraph law on [-2, 2]
* ``HyperAlpha(a)``    -- alpha / ((1+alpha+sqrt(alpha) x) pi) * sqrt(1-x^2/4) on [-2, 2]
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError, IntegrationError, InvariantError

CDF_ABS_TOL = 1e-8


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Uniformly weighted samples, sorted ascending."""

    samples: np.ndarray
    excluded_trivial: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", np.sort(np.asarray(self.samples, dtype=np.float64)))

    def __len__(self) -> int:
        return len(self.samples)


def trivial_projection_values(d: int, k: "int | None") -> "tuple[float, float]":
    """The deterministic lifted pair from lambda_1: (d-1, 1) or ((d-1)(k-1), 1)."""
    if k is None:
        return float(d - 1), 1.0
    return float((d - 1) * (k - 1)), 1.0


def project_real_parts(spectrum, rescale: str = "none", exclude_trivial: bool = False) -> EmpiricalMeasure:
    """Empirical measure of the real parts of the 2n lifted eigenvalues.

    rescale: "none" keeps raw Re(mu); "graph" maps x -> 2x/sqrt(d-1);
    "hypergraph" maps x -> (2x-(k-2))/sqrt((d-1)(k-1)).

    With exclude_trivial, the deterministic pair lifted from lambda_1 is
    removed (exactly two samples); only that pair is ever matched, bulk
    eigenvalues that happen to be real are kept.
    """
    pairs = list(spectrum.pairs)
    if not pairs:
        raise ValueError("empty spectrum")
    d, k = spectrum.d, spectrum.k
    xs = []
    excluded = 0
    if exclude_trivial:
        t_mu, t_mup = trivial_projection_values(d, k)
        top = max(range(len(pairs)), key=lambda i: pairs[i].lam)
        p1 = pairs[top]
        if abs(p1.mu - t_mu) > 1e-9 or abs(p1.mu_prime - t_mup) > 1e-9:
            raise InvariantError(
                f"top pair ({p1.mu}, {p1.mu_prime}) does not match the deterministic pair "
                f"({t_mu}, {t_mup}); is the graph connected?"
            )
        pairs = pairs[:top] + pairs[top + 1 :]
        excluded = 2
    for p in pairs:
        xs.append(p.mu.real)
        xs.append(p.mu_prime.real)
    x = np.asarray(xs, dtype=np.float64)
    if rescale == "none":
        pass
    elif rescale == "graph":
        x = 2.0 * x / math.sqrt(d - 1)
    elif rescale == "hypergraph":
        if k is None:
            raise DomainError("hypergraph rescale needs a hypergraph spectrum")
        # 2x/sqrt(q) recovers the normalized adjacency value: for a conjugate
        # pair, 2*Re(mu) = lambda - (k-2) already carries the shift
        x = 2.0 * x / math.sqrt((d - 1) * (k - 1))
    else:
        raise DomainError(f"unknown rescale mode {rescale!r}")
    return EmpiricalMeasure(samples=x, excluded_trivial=excluded)


def _eval_pdf(x, fn):
    """Evaluate fn on at-least-1d input; scalars in, floats out."""
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = fn(arr)
    return float(out[0]) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class KestenMcKay:
    d: int

    def __post_init__(self) -> None:
        if self.d < 3:
            raise DomainError("Kesten-McKay projection law requires d >= 3")

    @property
    def support(self) -> "tuple[float, float]":
        r = math.sqrt(self.d - 1)
        return (-r, r)

    def pdf(self, x):
        def f(arr):
            d = self.d
            rad = (d - 1) - arr * arr
            inside = rad > 0
            out = np.zeros_like(arr)
            out[inside] = 2.0 * d * np.sqrt(rad[inside]) / (np.pi * (d * d - 4.0 * arr[inside] ** 2))
            return out

        return _eval_pdf(x, f)


@dataclass(frozen=True)
class Semicircle:
    @property
    def support(self) -> "tuple[float, float]":
        return (-2.0, 2.0)

    def pdf(self, x):
        def f(arr):
            rad = 4.0 - arr * arr
            inside = rad > 0
            out = np.zeros_like(arr)
            out[inside] = np.sqrt(rad[inside]) / (2.0 * np.pi)
            return out

        return _eval_pdf(x, f)


@dataclass(frozen=True)
class HyperFixed:
    d: int
    k: int

    def __post_init__(self) -> None:
        if self.d < 2 or self.k < 2:
            raise DomainError("hypergraph law requires d >= 2 and k >= 2")

    @property
    def support(self) -> "tuple[float, float]":
        return (-2.0, 2.0)

    def pdf(self, x):
        def f(arr):
            q = (self.k - 1) * (self.d - 1)
            sq = math.sqrt(q)
            rad = 1.0 - arr * arr / 4.0
            inside = rad > 0
            out = np.zeros_like(arr)
            xi = arr[inside]
            f1 = 1.0 + 1.0 / q - xi / sq
            f2 = 1.0 + (self.k - 1) ** 2 / q + (self.k - 1) * xi / sq
            out[inside] = (1.0 + (self.k - 1) / q) * np.sqrt(rad[inside]) / (f1 * f2 * np.pi)
            return out

        return _eval_pdf(x, f)


@dataclass(frozen=True)
class HyperAlpha:
    alpha: float

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if self.alpha < 1:
            warnings.warn(
                f"alpha = {self.alpha} < 1 is outside the stated d/k -> alpha >= 1 regime",
                stacklevel=2,
            )

    @property
    def support(self) -> "tuple[float, float]":
        return (-2.0, 2.0)

    def pdf(self, x):
        def f(arr):
            a = self.alpha
            rad = 1.0 - arr * arr / 4.0
            inside = rad > 0
            out = np.zeros_like(arr)
            out[inside] = a * np.sqrt(rad[inside]) / ((1.0 + a + math.sqrt(a) * arr[inside]) * np.pi)
            return out

        return _eval_pdf(x, f)


#: any of the four closed-form limit laws
DensityModel = "KestenMcKay | Semicircle | HyperFixed | HyperAlpha"


def density_pdf(model, x):
    """Closed-form density value(s); zero outside the support."""
    return model.pdf(x)


def _segment_integral(model, lo: float, hi: float) -> float:
    # roundoff warnings near sqrt-singular endpoints are expected; the
    # returned error estimate is what we actually gate on
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(model.pdf, lo, hi, epsabs=1e-10, epsrel=1e-10, limit=400)
    if err > CDF_ABS_TOL:
        raise IntegrationError(f"quadrature error {err:.2e} on [{lo}, {hi}]")
    return val


def density_cdf(model, x: float) -> float:
    """CDF by adaptive quadrature from the left support endpoint."""
    a, b = model.support
    if x <= a:
        return 0.0
    return _segment_integral(model, a, min(float(x), b))


def ks_distance(m: EmpiricalMeasure, model) -> float:
    """One-sample Kolmogorov-Smirnov distance sup |F_emp - F_model|.

    The model CDF is accumulated by segment quadrature between consecutive
    sample points, so each sample costs one smooth-interval integral.
    """
    xs = m.samples
    if len(xs) == 0:
        raise ValueError("empty empirical measure")
    a, b = model.support
    n = len(xs)
    cuts = np.clip(xs, a, b)
    F = np.empty(n)
    acc = 0.0
    prev = a
    for i, x in enumerate(cuts):
        if x > prev:
            acc += _segment_integral(model, prev, x)
            prev = x
        F[i] = min(acc, 1.0)
    hi = np.abs(np.arange(1, n + 1) / n - F)
    lo = np.abs(np.arange(0, n) / n - F)
    return float(max(np.max(hi), np.max(lo)))


def model_quantile(model, p: float) -> float:
    """Inverse CDF by bisection (p strictly inside (0, 1))."""
    if not 0.0 < p < 1.0:
        raise DomainError("quantile level must be in (0, 1)")
    a, b = model.support
    return float(optimize.brentq(lambda x: density_cdf(model, x) - p, a, b, xtol=1e-12))


def consistency_check_k2(d_values=(3, 5), grid_points: int = 401, alpha: float = 1e4) -> dict:
    """Cross-law consistency report.

    For each d, the k=2 hypergraph law must equal the Kesten-McKay law
    transported through x -> 2x/sqrt(d-1) on a uniform grid (<= 1e-10), and
    the alpha -> infinity law must approach the semicircle (<= 1e-3 at the
    given alpha).
    """
    ys = np.linspace(-2.0, 2.0, grid_points)
    k2 = {}
    for d in d_values:
        lhs = HyperFixed(d, 2).pdf(ys)
        scale = math.sqrt(d - 1) / 2.0
        rhs = scale * KestenMcKay(d).pdf(ys * scale)
        k2[int(d)] = float(np.max(np.abs(lhs - rhs)))
    sc_dev = float(np.max(np.abs(HyperAlpha(alpha).pdf(ys) - Semicircle().pdf(ys))))
    passed = max(k2.values()) <= 1e-10 and sc_dev <= 1e-3
    return {
        "k2_max_deviation": k2,
        "alpha": alpha,
        "alpha_semicircle_deviation": sc_dev,
        "pass": bool(passed),
    }


def histogram(m: EmpiricalMeasure, bins=None):
    """(edges, counts, densities); Freedman-Diaconis bin width by default."""
    xs = m.samples
    edges = np.histogram_bin_edges(xs, bins=bins if bins is not None else "fd")
    counts, edges = np.histogram(xs, bins=edges)
    widths = np.diff(edges)
    dens = counts / (len(xs) * widths)
    return edges, counts, dens
