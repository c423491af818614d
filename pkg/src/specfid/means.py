"""Geometric, spectral, and weighted spectral means of positive matrices.

Singular inputs are handled through support-restricted fractional powers
throughout.  An identity-mixing helper provides the alternative
regularization route used by limiting arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, DomainError, ParamError
from .linalg import (
    as_hermitian,
    eig,
    frac_power,
    hermitize,
    psd_cutoff,
    support_cutoff,
)


@dataclass(frozen=True)
class PositivePair:
    """Two same-dimension PSD matrices, each flagged strictly positive or not."""

    a: np.ndarray
    b: np.ndarray
    a_definite: bool
    b_definite: bool

    @classmethod
    def of(cls, a: np.ndarray, b: np.ndarray) -> "PositivePair":
        a = as_hermitian(a)
        b = as_hermitian(b)
        if a.shape != b.shape:
            raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
        flags = []
        for mat in (a, b):
            w, _ = eig(mat)
            cutoff = psd_cutoff(mat)
            if float(w[0]) < -cutoff:
                raise DomainError(f"matrix is not PSD: min eigenvalue {float(w[0]):.3e}")
            flags.append(bool(w[0] > cutoff))
        return cls(a, b, flags[0], flags[1])


def _sqrt_pair(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Support-restricted M^{1/2} and M^{-1/2} from one decomposition."""
    w, v = eig(mat)
    if float(w[0]) < -psd_cutoff(mat):
        raise DomainError(f"matrix is not PSD: min eigenvalue {float(w[0]):.3e}")
    on = w > support_cutoff(w)
    root = np.where(on, np.sqrt(np.clip(w, 0.0, None)), 0.0)
    inv_root = np.zeros_like(w)
    inv_root[on] = 1.0 / root[on]
    half = hermitize((v * root) @ v.conj().T)
    inv_half = hermitize((v * inv_root) @ v.conj().T)
    return half, inv_half


def geometric_mean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Mean A^{1/2}(A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} of PSD matrices.

    For singular A the powers act on its support, so the result lives on
    the common support when the support projectors commute.  Assembled
    in Gram form M* M so the output stays PSD to rounding even when A is
    ill conditioned.
    """
    a_half, a_ihalf = _sqrt_pair(as_hermitian(a))
    quarter = frac_power(hermitize(a_ihalf @ b @ a_ihalf), 0.25, support_only=True)
    m = quarter @ a_half
    return hermitize(m.conj().T @ m)


def riccati_solution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Positive solution X of X A X = B, equal to the mean of A^{-1} and B.

    Computed as A^{-1/2}(A^{1/2} B A^{1/2})^{1/2} A^{-1/2}, which never
    forms the inverse of A explicitly and degrades gracefully when A is
    singular.  Assembled in Gram form M* M so the output stays PSD to
    rounding even when A is ill conditioned.
    """
    a_half, a_ihalf = _sqrt_pair(as_hermitian(a))
    quarter = frac_power(hermitize(a_half @ b @ a_half), 0.25, support_only=True)
    m = quarter @ a_ihalf
    return hermitize(m.conj().T @ m)


def spectral_mean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Spectral mean X^{1/2} A X^{1/2} with X the Riccati solution.

    Its eigenvalues are the positive square roots of the eigenvalues of
    the product A B.
    """
    return weighted_spectral_mean(a, b, 0.5)


def weighted_spectral_mean(
    a: np.ndarray, b: np.ndarray, t: float, extended: bool = False
) -> np.ndarray:
    """Weighted mean X^t A X^t with X the Riccati solution of the pair.

    Interpolates from A at t = 0 to B at t = 1.  Parameters outside
    [0, 1] are rejected unless extended is set (used by divergence-style
    sweeps over the whole real line).
    """
    if not extended and not 0.0 <= t <= 1.0:
        raise ParamError(f"weight t = {t} outside [0, 1]")
    a = as_hermitian(a)
    a_half, a_ihalf = _sqrt_pair(a)
    quarter = frac_power(hermitize(a_half @ as_hermitian(b) @ a_half), 0.25, support_only=True)
    m = quarter @ a_ihalf
    x = hermitize(m.conj().T @ m)
    xt = frac_power(x, float(t), support_only=True)
    m = a_half @ xt
    return hermitize(m.conj().T @ m)


def variational_objective(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> float:
    """Evaluate Tr(A X) + Tr(B X^{-1}) at a strictly positive X.

    Over positive definite X the unique minimizer is the Riccati
    solution of the pair, with minimum value twice the trace of the
    spectral mean.
    """
    x = as_hermitian(x)
    w, _ = eig(x)
    if float(w[0]) <= psd_cutoff(x):
        raise DomainError("objective needs a strictly positive X")
    x_inv = frac_power(x, -1.0)
    a = as_hermitian(a)
    b = as_hermitian(b)
    return float(np.real(np.trace(a @ x)) + np.real(np.trace(b @ x_inv)))


def mix_identity(mat: np.ndarray, eps: float | None = None) -> np.ndarray:
    """Blend (1 - eps) M + eps I/d, the standard full-rank regularization."""
    if eps is None:
        eps = TOL.eps_default
    if not 0.0 <= eps < 1.0:
        raise ParamError(f"mixing weight eps = {eps} outside [0, 1)")
    mat = as_hermitian(mat)
    d = mat.shape[0]
    return hermitize((1.0 - eps) * mat + eps * np.eye(d) / d)
