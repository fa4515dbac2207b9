"""Distribution utilities and the capacity metrics built on the Gaussian law."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .asymptotics import capacity_gaussian_approx
from .config import SystemConfig


def gaussian_cdf(x, eta: float, sigma_sq: float):
    """Normal CDF with mean eta and variance sigma_sq; array-friendly.

    sigma_sq = 0 degenerates to a unit step at eta (right-continuous).
    """
    if sigma_sq < 0:
        raise ValueError(f"sigma_sq must be nonnegative, got {sigma_sq}")
    x = np.asarray(x, dtype=float)
    if sigma_sq == 0:
        out = np.where(x >= eta, 1.0, 0.0)
    else:
        out = special.ndtr((x - eta) / np.sqrt(sigma_sq))
    return float(out) if out.ndim == 0 else out


def _gaussian_cdf_left(x, eta: float, sigma_sq: float):
    """Left limit P(X < x); differs from the CDF only in the degenerate case."""
    x = np.asarray(x, dtype=float)
    if sigma_sq == 0:
        out = np.where(x > eta, 1.0, 0.0)
        return float(out) if out.ndim == 0 else out
    return gaussian_cdf(x, eta, sigma_sq)


def gaussian_quantile(p: float, eta: float, sigma_sq: float) -> float:
    """Invert the Gaussian CDF by bracketed bisection on the standard score.

    Monotone bisection over z in [-40, 40] down to machine width, so the
    returned point satisfies gaussian_cdf(result) = p to well below 1e-10.
    A closed-form rational approximation would be one more thing to validate.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly inside (0, 1), got {p}")
    if sigma_sq <= 0:
        raise ValueError(f"sigma_sq must be positive, got {sigma_sq}")
    lo, hi = -40.0, 40.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if special.ndtr(mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return eta + np.sqrt(sigma_sq) * 0.5 * (lo + hi)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Sorted Monte Carlo sample of a scalar quantity (capacity in bits)."""

    samples: np.ndarray
    count: int

    @classmethod
    def from_samples(cls, values) -> "EmpiricalDistribution":
        arr = np.sort(np.asarray(values, dtype=float))
        if arr.size < 1:
            raise ValueError("empirical distribution needs at least one sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        return cls(samples=arr, count=int(arr.size))


def empirical_cdf(dist: EmpiricalDistribution, x) -> float | np.ndarray:
    """Fraction of samples <= x (right-continuous step function)."""
    out = np.searchsorted(dist.samples, np.asarray(x, dtype=float), side="right") / dist.count
    return float(out) if np.ndim(out) == 0 else out


def ks_distance(dist: EmpiricalDistribution, eta: float, sigma_sq: float) -> float:
    """Kolmogorov-Smirnov distance between the sample and N(eta, sigma_sq).

    Both one-sided limits are evaluated at every sample point, using the
    left limit of the model CDF so the degenerate case compares correctly.
    """
    x = dist.samples
    n = dist.count
    i = np.arange(1, n + 1)
    f_right = np.asarray(gaussian_cdf(x, eta, sigma_sq))
    f_left = np.asarray(_gaussian_cdf_left(x, eta, sigma_sq))
    d_plus = np.max(i / n - f_right)
    d_minus = np.max(f_left - (i - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


@dataclass(frozen=True)
class Summary:
    mean: float
    variance: float
    quantiles: dict


def summarize(dist: EmpiricalDistribution, probs=(0.1, 0.25, 0.5, 0.75, 0.9)) -> Summary:
    """Sample mean, unbiased variance and linearly interpolated quantiles."""
    if dist.count < 2:
        raise ValueError("variance needs at least two samples")
    qs = np.quantile(dist.samples, probs)
    return Summary(
        mean=float(dist.samples.mean()),
        variance=float(dist.samples.var(ddof=1)),
        quantiles={float(p): float(q) for p, q in zip(probs, qs)},
    )


@dataclass(frozen=True)
class OutageSpec:
    """Outage probability plus the quantile convention tying rate to it.

    convention="paper" reads P(I <= R) = 1 - p_out, so the 10% outage rate
    is the 90th percentile; convention="standard" uses P(I <= R) = p_out.
    Both are kept because published curves are ambiguous about which one
    they plot; run_outage_sweep reports the deviation of each.
    """

    p_out: float
    convention: str = "paper"

    def __post_init__(self) -> None:
        if not 0.0 < self.p_out < 1.0:
            raise ValueError(f"p_out must lie strictly inside (0, 1), got {self.p_out}")
        if self.convention not in ("paper", "standard"):
            raise ValueError(f"convention must be 'paper' or 'standard', got {self.convention!r}")


def ergodic_capacity(cfg: SystemConfig) -> float:
    """Approximate mean capacity in bits: the eta of the Gaussian law."""
    return capacity_gaussian_approx(cfg).eta


def outage_capacity(cfg: SystemConfig, spec: OutageSpec) -> float:
    """Rate threshold tied to the outage probability under the Gaussian law."""
    approx = capacity_gaussian_approx(cfg)
    if approx.sigma_sq == 0:
        return approx.eta
    p = 1.0 - spec.p_out if spec.convention == "paper" else spec.p_out
    return gaussian_quantile(p, approx.eta, approx.sigma_sq)
