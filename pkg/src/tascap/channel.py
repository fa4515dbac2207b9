"""Rayleigh channel sampling, norm-based antenna selection and exact capacity.

This is the Monte Carlo reference: everything here is computed per channel
realization, without approximation, and the closed forms elsewhere in the
package are judged against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

LN2 = float(np.log(2.0))
_ISQRT2 = 1.0 / np.sqrt(2.0)


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    """Independent random stream for one trial, derived from (seed, trial).

    Philox counter offsets give each trial a disjoint 2**192-block stream,
    so results never depend on execution order or worker assignment.
    """
    return np.random.Generator(np.random.Philox(key=seed, counter=trial << 192))


def sample_matrix(n_r: int, n_t: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an n_r x n_t matrix of i.i.d. CN(0, 1) entries.

    Real and imaginary parts are independent N(0, 1/2), so each complex
    entry has unit variance.
    """
    z = rng.standard_normal((2, n_r, n_t))
    return (z[0] + 1j * z[1]) * _ISQRT2


def sample_channel(cfg: SystemConfig, rng: np.random.Generator) -> np.ndarray:
    """Draw one fading matrix for the configured link."""
    return sample_matrix(cfg.n_r, cfg.n_t, rng)


@dataclass(frozen=True)
class SelectionOutcome:
    """Effective channel after keeping the l_t strongest columns.

    indices:   selected column indices, squared norms non-increasing
    effective: n_r x l_t submatrix of the channel
    gram:      L x L Gram matrix with L = min(l_t, n_r); the smaller-side
               product, so its eigenvalues are cheap and nonnegative
    trace_j:   sum of the selected squared column norms (= trace of gram)
    """

    indices: np.ndarray
    effective: np.ndarray
    gram: np.ndarray
    trace_j: float


def select_antennas(h: np.ndarray, l_t: int) -> SelectionOutcome:
    """Keep the l_t columns of `h` with the largest squared norms.

    Ties (probability zero under the continuous fading model) break toward
    the smaller column index so runs are reproducible.
    """
    n_r, n_t = h.shape
    if l_t > n_t:
        raise ValueError(f"l_t > n_t: cannot select {l_t} of {n_t} columns")
    norms = np.einsum("ij,ij->j", h.conj(), h).real
    order = np.argsort(-norms, kind="stable")
    idx = order[:l_t]
    eff = h[:, idx]
    if l_t <= n_r:
        gram = eff.conj().T @ eff
    else:
        gram = eff @ eff.conj().T
    return SelectionOutcome(
        indices=idx,
        effective=eff,
        gram=gram,
        trace_j=float(norms[idx].sum()),
    )


def mi_from_eigenvalues(lam: np.ndarray, rho: float, l_t: int) -> np.ndarray | float:
    """Mutual information in bits from Gram eigenvalues: sum log2(1 + rho*lam/l_t).

    Accepts a 1-D eigenvalue vector or a (trials, L) stack; reduces over the
    last axis.  Eigenvalues are clamped at zero to absorb eigensolver noise
    on positive semidefinite input.
    """
    lam = np.maximum(lam, 0.0)
    return np.log1p((rho / l_t) * lam).sum(axis=-1) / LN2


def exact_mutual_information(sel: SelectionOutcome, rho: float, l_t: int) -> float:
    """log2 det(I + (rho/l_t) H~ H~^H), evaluated through the Gram eigenvalues."""
    if not np.all(np.isfinite(sel.effective)):
        raise ArithmeticError("channel matrix contains non-finite entries")
    lam = np.linalg.eigvalsh(sel.gram)
    return float(mi_from_eigenvalues(lam, rho, l_t))


def jensen_bound_from_trace(trace_j, l: int, rho: float, l_t: int):
    """L * log2(1 + rho * trace / (l_t * L)); array-friendly."""
    return l * np.log1p(rho * np.asarray(trace_j) / (l_t * l)) / LN2


def jensen_upper_bound(sel: SelectionOutcome, rho: float, l_t: int) -> float:
    """Concavity upper bound on the exact mutual information; tight when L = 1."""
    l = sel.gram.shape[0]
    return float(jensen_bound_from_trace(sel.trace_j, l, rho, l_t))


def hermitian_angles(sel: SelectionOutcome) -> np.ndarray:
    """Pairwise Hermitian angles between the selected columns.

    theta[i, j] = arccos(|h_i^H h_j| / (|h_i| |h_j|)) in [0, pi/2]; symmetric
    with a zero diagonal.  For i.i.d. complex Gaussian columns cos^2(theta)
    follows Beta(1, n_r - 1), which the statistical tests rely on.
    """
    g = sel.effective.conj().T @ sel.effective
    norms_sq = np.diag(g).real
    if np.any(norms_sq <= 0):
        raise ArithmeticError("zero-norm selected column, angles undefined")
    denom = np.sqrt(np.outer(norms_sq, norms_sq))
    cosines = np.clip(np.abs(g) / denom, 0.0, 1.0)
    angles = np.arccos(cosines)
    np.fill_diagonal(angles, 0.0)
    return angles


def trace_j_squared(sel: SelectionOutcome) -> float:
    """trace(J^2) = squared Frobenius norm of the Hermitian Gram matrix."""
    return float(np.sum(np.abs(sel.gram) ** 2))


def dump_channel_csv(h: np.ndarray, path: str) -> None:
    """Debug dump of a channel matrix as CSV with interleaved re/im columns."""
    n_r, n_t = h.shape
    header = ",".join(f"re_{j},im_{j}" for j in range(n_t))
    lines = [header]
    for r in range(n_r):
        cells = []
        for j in range(n_t):
            cells.append(f"{h[r, j].real:.10g}")
            cells.append(f"{h[r, j].imag:.10g}")
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
