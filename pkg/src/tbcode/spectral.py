"""Adjacency spectra of regular graphs and (n, d, lambda) certification."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import LinearOperator, eigsh

from .errors import CapExceeded
from .graphs import Graph

SIZE_CAP = 2100
DENSE_LIMIT = 600
DEFAULT_TOL = 1e-8


class NotRegularConnected(ValueError):
    """The spectral routines need a connected regular graph."""


@dataclass(frozen=True)
class SpectralReport:
    n: int
    d: int | None
    lambda_max: float
    lambda_second_abs: float
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "lambda_max": self.lambda_max,
            "lambda_second_abs": self.lambda_second_abs,
            "tolerance": self.tolerance,
        }


def _check(G: Graph) -> int:
    if G.n > SIZE_CAP:
        raise CapExceeded(f"spectral routines capped at n <= {SIZE_CAP}")
    d = G.regular_degree()
    if d is None:
        raise NotRegularConnected("graph is not regular")
    if d == 0 or not G.is_connected():
        raise NotRegularConnected("graph is not connected")
    return d


def _trace_checks(eigs: np.ndarray, G: Graph, tol: float) -> None:
    slack = max(tol, 1e-9) * G.n * max(1.0, float(np.abs(eigs).max()))
    if abs(eigs.sum()) > slack:
        raise ArithmeticError("eigenvalues do not sum to the zero trace")
    if abs((eigs**2).sum() - 2 * G.num_edges) > slack * max(1.0, float(np.abs(eigs).max())):
        raise ArithmeticError("squared eigenvalues do not sum to 2|E|")


def second_largest_abs_eigenvalue(G: Graph, tol: float = DEFAULT_TOL) -> float:
    """max |lambda_i| over the spectrum with one copy of lambda_max = d removed."""
    d = _check(G)
    A = G.adjacency_matrix().astype(np.float64)
    if G.n <= DENSE_LIMIT:
        eigs = np.linalg.eigvalsh(A)
        _trace_checks(eigs, G, tol)
        top = int(np.argmin(np.abs(eigs - d)))
        return float(np.abs(np.delete(eigs, top)).max())
    S = csr_matrix(A)
    n = G.n

    def deflated(x):
        x = np.asarray(x).reshape(-1)
        return S @ x - d * x.mean()

    op = LinearOperator((n, n), matvec=deflated, dtype=np.float64)
    rng = np.random.default_rng(0)
    v0 = rng.standard_normal(n)
    hi = eigsh(op, k=1, which="LA", tol=tol, v0=v0, return_eigenvectors=True)
    lo = eigsh(op, k=1, which="SA", tol=tol, v0=v0, return_eigenvectors=True)
    best = 0.0
    for vals, vecs in (hi, lo):
        lam, x = float(vals[0]), vecs[:, 0]
        resid = np.linalg.norm(deflated(x) - lam * x)
        if resid > 1e3 * tol * max(1.0, abs(lam)):
            raise ArithmeticError(f"eigensolver residual {resid:.2e} too large")
        best = max(best, abs(lam))
    return best


def ndl_certify(G: Graph, tol: float = DEFAULT_TOL) -> SpectralReport:
    d = _check(G)
    lam = second_largest_abs_eigenvalue(G, tol)
    return SpectralReport(G.n, d, float(d), lam, tol)
