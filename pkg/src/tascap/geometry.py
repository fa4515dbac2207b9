"""Per-realization secant approximation of the mutual information.

The average of the per-eigenvalue log terms is replaced by the midpoint of
a secant of the rate curve taken at mu - delta and mu + delta, where mu is
the eigenvalue centroid of the Gram matrix and delta**2 its eigenvalue
population variance.  A second-order determinant expansion fixes delta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import LN2, SelectionOutcome, trace_j_squared


class SecantDomainError(ArithmeticError):
    """Raised when a log argument of the secant form is not positive.

    Only happens for extreme eigenvalue spreads (mu - delta <= -l_t/rho);
    experiments count these instead of clamping them.
    """


@dataclass(frozen=True)
class GeometricTerms:
    """Scalars of the secant construction for one realization.

    mu:       trace(J) / L, the eigenvalue centroid
    kappa:    rho / (l_t + rho * mu), the curvature scale of the rate curve
    delta_sq: trace(J^2)/L - (trace(J)/L)^2, eigenvalue population variance
    l:        Gram size L = min(l_t, n_r)
    """

    mu: float
    kappa: float
    delta_sq: float
    l: int


def geometric_terms(sel: SelectionOutcome, rho: float, l_t: int) -> GeometricTerms:
    """Compute (mu, kappa, delta^2) from the Gram matrix of a selection."""
    l = sel.gram.shape[0]
    mu = sel.trace_j / l
    kappa = rho / (l_t + rho * mu)
    delta_sq = max(trace_j_squared(sel) / l - mu * mu, 0.0)
    return GeometricTerms(mu=mu, kappa=kappa, delta_sq=delta_sq, l=l)


def det_perturbation_expansion(delta: np.ndarray, kappa: float) -> float:
    """Second-order expansion of det(I + kappa * Delta) for Hermitian Delta.

    Returns 1 + kappa*tr(Delta) + kappa^2/2 * [tr(Delta)^2 - tr(Delta^2)],
    the characteristic-polynomial truncation with cubic error in kappa.
    """
    tr = float(np.trace(delta).real)
    tr_sq = float(np.sum(np.abs(delta) ** 2))
    return 1.0 + kappa * tr + 0.5 * kappa * kappa * (tr * tr - tr_sq)


def secant_mi_array(mu, delta_sq, l: int, rho: float, l_t: int) -> np.ndarray:
    """Vectorized secant form; NaN where a log argument is not positive."""
    mu = np.asarray(mu, dtype=float)
    delta = np.sqrt(np.maximum(np.asarray(delta_sq, dtype=float), 0.0))
    lo = (rho / l_t) * (mu - delta)
    hi = (rho / l_t) * (mu + delta)
    bad = lo <= -1.0
    lo = np.where(bad, 0.0, lo)
    out = 0.5 * l * (np.log1p(lo) + np.log1p(hi)) / LN2
    return np.where(bad, np.nan, out)


def secant_mi_approx(sel: SelectionOutcome, rho: float, l_t: int) -> float:
    """Secant approximation of the exact mutual information, in bits.

    Never exceeds the Jensen upper bound (concavity); exact when L = 1 or
    when all Gram eigenvalues coincide.
    """
    terms = geometric_terms(sel, rho, l_t)
    value = secant_mi_array(terms.mu, terms.delta_sq, terms.l, rho, l_t)
    if np.isnan(value):
        raise SecantDomainError(
            f"secant log argument <= 0 (mu={terms.mu:.6g}, "
            f"delta={np.sqrt(terms.delta_sq):.6g}, rho={rho:.6g}, l_t={l_t})"
        )
    return float(value)
