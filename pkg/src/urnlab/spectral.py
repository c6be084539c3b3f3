"""Validation and spectral analysis of urn generating matrices.

The limit generating matrix of an urn scheme drives every first- and
second-order limit theorem: its left principal eigenvector is the limiting
allocation proportion, and the real parts of the nonprincipal eigenvalues
set the fluctuation scale.  This module validates raw matrices, extracts
the spectral data, and classifies the scaling regime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import math

import numpy as np

from .errors import (
    DegenerateSpectrum,
    NegativeDiagonal,
    NegativeOffDiagonal,
    Reducible,
    UnequalRowSums,
)

ROW_SUM_TOL = 1e-12
PRINCIPAL_TOL = 1e-8
DEFECTIVE_COND = 1e8
CRITICAL_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GeneratingMatrix:
    """A validated K x K generating matrix, rescaled to unit row sums.

    ``entries`` holds the normalized matrix (every row sums to 1);
    ``row_sum`` keeps the original common row total so callers can undo
    the normalization if they need raw ball counts.
    """

    entries: np.ndarray
    K: int
    row_sum: float

    def __post_init__(self):
        object.__setattr__(self, "entries", _readonly(self.entries))


class Regime(Enum):
    SUB_CRITICAL = "sub-critical"
    CRITICAL = "critical"
    SUPER_CRITICAL = "super-critical"


@dataclass(frozen=True)
class SpectralData:
    """Spectral quantities of a generating matrix.

    Attributes
    ----------
    v : ndarray, shape (K,)
        Left principal eigenvector, normalized to sum 1; the limiting
        allocation proportions.  Strictly positive for irreducible input.
    eigenvalues : ndarray, shape (K-1,), complex
        Nonprincipal spectrum, sorted by descending real part (descending
        imaginary part breaks ties, so conjugate pairs are adjacent).
    tau : float
        Largest real part among nonprincipal eigenvalues.
    nu : int
        Largest estimated block order among eigenvalues attaining ``tau``;
        1 whenever the matrix is numerically diagonalizable.
    T : ndarray, shape (K, K), complex
        Eigenbasis; first column is the all-ones vector, remaining columns
        are right eigenvectors scaled to unit max-norm with their first
        significant entry real and positive.
    T_inv : ndarray, shape (K, K), complex
        Inverse of ``T``.
    diagonalizable : bool
        False when the eigenvector matrix is ill conditioned
        (condition number above 1e8), i.e. the matrix is numerically
        defective and only regime classification is meaningful.
    """

    matrix: GeneratingMatrix
    v: np.ndarray
    eigenvalues: np.ndarray
    tau: float
    nu: int
    T: np.ndarray
    T_inv: np.ndarray
    diagonalizable: bool

    def __post_init__(self):
        for name in ("v", "eigenvalues", "T", "T_inv"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    @property
    def K(self) -> int:
        return self.matrix.K


@dataclass(frozen=True)
class RegimeClass:
    """Scaling regime of the fluctuations and its normalizing function.

    ``scale(n)`` evaluates the normalization V_n:

    * sub-critical: sqrt(n)
    * critical: sqrt(n) * log(n) ** (nu - 1/2)
    * super-critical: n**tau * log(n) ** (nu - 1)
    """

    kind: Regime
    tau: float
    nu: int
    description: str = field(default="")

    def scale(self, n: float) -> float:
        if self.kind is Regime.SUB_CRITICAL:
            return math.sqrt(n)
        if self.kind is Regime.CRITICAL:
            return math.sqrt(n) * math.log(n) ** (self.nu - 0.5)
        return n**self.tau * math.log(n) ** (self.nu - 1)


def _irreducible(entries: np.ndarray) -> bool:
    # Reachability test on the sparsity pattern: (I + |H|)^(K-1) > 0.
    # Using the absolute pattern keeps the test meaningful for withdrawal
    # matrices whose diagonal entries are negative.
    K = entries.shape[0]
    pattern = np.eye(K) + (np.abs(entries) > 0).astype(float)
    power = np.linalg.matrix_power(pattern, K - 1)
    return bool(np.all(power > 0))


def validate_generating_matrix(
    raw, withdrawal_allowed: bool = False
) -> GeneratingMatrix:
    """Validate a raw generating matrix and rescale it to unit row sums.

    Parameters
    ----------
    raw : array_like, shape (K, K)
        Expected balls of each type added per draw of each type.
    withdrawal_allowed : bool
        Permit negative diagonal entries (drawing without replacement).

    Raises
    ------
    UnequalRowSums
        Rows do not share a common positive total within 1e-12.
    NegativeOffDiagonal, NegativeDiagonal
        Sign constraint violations.
    Reducible
        The sparsity pattern is not strongly connected.
    """
    entries = np.array(raw, dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"generating matrix must be square, got shape {entries.shape}")
    K = entries.shape[0]
    if K < 2:
        raise ValueError("generating matrix needs at least 2 arms")
    if not np.all(np.isfinite(entries)):
        raise ValueError("generating matrix entries must be finite")

    off_diag = entries[~np.eye(K, dtype=bool)]
    if np.any(off_diag < 0):
        raise NegativeOffDiagonal("off-diagonal entries must be nonnegative")
    if not withdrawal_allowed and np.any(np.diag(entries) < 0):
        raise NegativeDiagonal(
            "negative diagonal entries require withdrawal_allowed=True"
        )

    sums = entries.sum(axis=1)
    c1 = float(sums[0])
    tol = ROW_SUM_TOL * max(1.0, abs(c1))
    if np.any(np.abs(sums - c1) > tol):
        raise UnequalRowSums(f"row sums {sums} are not all equal to {c1}")
    if c1 <= 0:
        raise UnequalRowSums(f"common row sum must be positive, got {c1}")

    normalized = entries / c1
    if not _irreducible(normalized):
        raise Reducible("generating matrix is reducible")
    return GeneratingMatrix(entries=normalized, K=K, row_sum=c1)


def _normalize_column(col: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(col))
    significant = np.abs(col) > 1e-12 * scale
    first = int(np.argmax(significant))
    phase = col[first] / abs(col[first])
    col = col / phase
    return col / np.max(np.abs(col))


def spectral_decompose(matrix: GeneratingMatrix) -> SpectralData:
    """Extract allocation limit, nonprincipal spectrum and eigenbasis.

    The returned basis ``T`` has the all-ones vector in its first column
    (the right principal eigenvector of a unit-row-sum matrix) and
    deterministically normalized right eigenvectors in the rest, so
    downstream covariance output is reproducible run to run.

    Raises
    ------
    DegenerateSpectrum
        Eigenvalue 1 is not simple within tolerance.
    Reducible
        The computed stationary vector is not strictly positive.
    """
    H = matrix.entries
    K = matrix.K

    w, V = np.linalg.eig(H)
    near_one = np.abs(w - 1.0) < PRINCIPAL_TOL
    if int(near_one.sum()) != 1:
        raise DegenerateSpectrum(
            f"eigenvalue 1 must be simple; found {int(near_one.sum())} within "
            f"{PRINCIPAL_TOL} of 1 (spectrum {w})"
        )
    principal = int(np.argmax(near_one))

    # Left principal eigenvector: stationary allocation.
    wl, Vl = np.linalg.eig(H.T)
    left = int(np.argmin(np.abs(wl - 1.0)))
    v = Vl[:, left].real.astype(float)
    if np.all(v <= 0):
        v = -v
    if np.any(v <= 0):
        raise Reducible(
            "left principal eigenvector is not strictly positive; "
            "matrix is reducible or numerically degenerate"
        )
    v = v / v.sum()
    # Pin the float sum to exactly 1 by recomputing the largest entry.
    j = int(np.argmax(v))
    others = v.copy()
    others[j] = 0.0
    v[j] = 1.0 - others.sum()

    rest = [k for k in range(K) if k != principal]
    # Descending real part; descending imaginary part breaks ties so that
    # conjugate pairs sit next to each other in a fixed order.
    rest.sort(key=lambda k: (-w[k].real, -w[k].imag))
    eigenvalues = w[rest]

    T = np.empty((K, K), dtype=complex)
    T[:, 0] = 1.0
    for idx, k in enumerate(rest):
        T[:, idx + 1] = _normalize_column(V[:, k])

    cond = np.linalg.cond(T)
    diagonalizable = bool(np.isfinite(cond) and cond <= DEFECTIVE_COND)
    T_inv = np.linalg.inv(T)

    tau = float(np.max(eigenvalues.real))
    if diagonalizable:
        nu = 1
    else:
        # Best-effort block-order estimate: cluster size among eigenvalues
        # attaining tau.  Only used for the V_n exponent in reports.
        attaining = eigenvalues[np.abs(eigenvalues.real - tau) < 1e-8]
        nu = 1
        for lam in attaining:
            nu = max(nu, int(np.sum(np.abs(attaining - lam) < 1e-6)))

    return SpectralData(
        matrix=matrix,
        v=v,
        eigenvalues=eigenvalues,
        tau=tau,
        nu=nu,
        T=T,
        T_inv=T_inv,
        diagonalizable=diagonalizable,
    )


def classify_regime(
    spectral: SpectralData, exact_tau: Fraction | None = None
) -> RegimeClass:
    """Compare tau with 1/2 and return the scaling regime.

    ``exact_tau`` takes precedence when provided: rule catalogs expose
    their nonprincipal spectrum as exact rationals (e.g. p1 + p2 - 1 for
    two-arm success/failure rules), which makes the boundary case tau = 1/2
    decidable without floating-point tolerance games.
    """
    nu = spectral.nu
    if exact_tau is not None:
        half = Fraction(1, 2)
        if exact_tau < half:
            kind = Regime.SUB_CRITICAL
        elif exact_tau == half:
            kind = Regime.CRITICAL
        else:
            kind = Regime.SUPER_CRITICAL
        tau = float(exact_tau)
    else:
        tau = spectral.tau
        if abs(tau - 0.5) <= CRITICAL_TOL:
            kind = Regime.CRITICAL
        elif tau < 0.5:
            kind = Regime.SUB_CRITICAL
        else:
            kind = Regime.SUPER_CRITICAL

    if kind is Regime.SUB_CRITICAL:
        desc = "sqrt(n)"
    elif kind is Regime.CRITICAL:
        desc = "sqrt(n * log(n))" if nu == 1 else f"sqrt(n) * log(n)**{nu - 0.5}"
    else:
        desc = f"n**{tau:.12g}" + (f" * log(n)**{nu - 1}" if nu > 1 else "")
    return RegimeClass(kind=kind, tau=tau, nu=nu, description=desc)
