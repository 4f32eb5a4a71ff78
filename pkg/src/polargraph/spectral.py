"""Adjacency spectrum of the looped polarity graph.

The eigensolver is cyclic Jacobi with round-robin (tournament) ordering:
every round rotates n/2 disjoint index pairs, which commute, so a round
is applied as a handful of vectorised row/column updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .polarity import LoopedView

OFF_TOL = 1e-10
MAX_SWEEPS = 100
CLUSTER_TOL = 1e-6


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal norm {residual:.3e})")
        self.residual = residual


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(matrix: np.ndarray, tol: float = OFF_TOL,
                max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray, int]:
    """Eigen-decomposition of a real symmetric matrix.

    Returns (eigenvalues, eigenvectors as columns, sweeps used), unsorted.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T):
        raise ValueError("jacobi_eigh needs a square symmetric matrix")
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v, 0
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        if _off_norm(a) < tol:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for ps, qs in rounds:
            apq = a[ps, qs]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = ps[live], qs[live], apq[live]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.where(safe >= 0, 1.0, -1.0) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- J^T A J, V <- V J with J the product of the disjoint rotations
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cp - s * cq
            a[:, q] = s * cp + c * cq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", _off_norm(a))


@dataclass
class SpectrumResult:
    eigenvalues: list[float]
    lambda1: float
    lambda_max_rest: float
    residual: float
    sweeps: int = 0
    vectors: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def clusters(values, tol: float = CLUSTER_TOL) -> list[tuple[float, int]]:
    """Group sorted-descending eigenvalues within ``tol``: (mean, multiplicity)."""
    out: list[list[float]] = []
    for x in values:
        if out and abs(out[-1][-1] - x) <= tol:
            out[-1].append(x)
        else:
            out.append([x])
    return [(sum(g) / len(g), len(g)) for g in out]


def matrix_spectrum(a: np.ndarray) -> SpectrumResult:
    n = a.shape[0]
    vals, vecs, sweeps = jacobi_eigh(a)
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    residual = float(np.max(np.linalg.norm(a @ vecs - vecs * vals, axis=0))) if n else 0.0
    if residual > 1e-8 * max(n, 1):
        raise ConvergenceError("eigenpair residual above tolerance", residual)
    rest = float(np.max(np.abs(vals[1:]))) if n > 1 else 0.0
    return SpectrumResult([float(x) for x in vals], float(vals[0]) if n else 0.0,
                          rest, residual, sweeps, vecs)


def adjacency_spectrum(view: LoopedView) -> SpectrumResult:
    """Spectrum of the 0/1 adjacency matrix with diagonal 1 at absolute points."""
    return matrix_spectrum(view.matrix().astype(float))


@dataclass
class GapVerdict:
    passed: bool
    reasons: list[str]
    lambda1: float | None = None
    lambda_max_rest: float | None = None
    sqrt_q: float | None = None


def spectral_gap_check(view: LoopedView, q: int, spectrum: SpectrumResult | None = None,
                       tol: float = 1e-6) -> GapVerdict:
    """lambda1 = q+1 (simple) and every other |lambda| <= sqrt(q)."""
    reasons = []
    d = view.regular_degree()
    if d is None:
        return GapVerdict(False, ["looped graph is not regular"])
    if d != q + 1:
        reasons.append(f"looped degree {d} != q+1 = {q + 1}")
    spec = spectrum or adjacency_spectrum(view)
    ev = spec.eigenvalues
    if abs(spec.lambda1 - (q + 1)) > tol:
        reasons.append(f"lambda1 = {spec.lambda1} != {q + 1}")
    if len(ev) > 1 and ev[0] - ev[1] <= 0.1:
        reasons.append(f"lambda1 not simple: next eigenvalue {ev[1]}")
    if spec.lambda_max_rest > math.sqrt(q) + tol:
        reasons.append(f"max |lambda_i|, i >= 2, is {spec.lambda_max_rest} > sqrt(q)")
    return GapVerdict(not reasons, reasons, spec.lambda1, spec.lambda_max_rest, math.sqrt(q))
