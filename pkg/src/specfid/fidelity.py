"""Fidelity-type scalars between quantum states.

The weighted spectral fidelity F_t(rho, sigma) = Tr[rho (rho^{-1} # sigma)^{2t}]
with # the matrix geometric mean, the Uhlmann root fidelity, the
Matsumoto fidelity, the sandwiched Renyi divergence, and the derived
Fuchs-van de Graaf quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NormalizationError, ParamError, SupportError
from .linalg import frac_power, hermitize, psd_cutoff, support_projector, trace_norm
from .means import geometric_mean, mix_identity, riccati_solution
from .states import DensityMatrix


@dataclass(frozen=True)
class FidelityValue:
    """One fidelity evaluation: value, parameter, and producing method.

    cross_checks records closed-form values detected for the same
    inputs as (method, value) pairs; the general-path value is always
    the one reported in `value`.
    """

    value: float
    t: float | None = None
    method: str = "spectral_general"
    cross_checks: tuple[tuple[str, float], ...] = ()


class FvgBounds(NamedTuple):
    """Quantities entering the Fuchs-van de Graaf comparisons."""

    lower_gap: float
    trace_dist_half: float
    second_rhs: float


def _check_pair(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"state dims differ: {rho.dim} vs {sigma.dim}")


def spectral_fidelity(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    t: float,
    extended: bool = False,
    regularization: float | None = None,
) -> FidelityValue:
    """Weighted spectral fidelity Tr[rho (rho^{-1} # sigma)^{2t}].

    Singular states are handled by restricting every inverse and
    fractional power to the relevant support.  With `regularization`
    set to a small eps, both states are first blended with the
    maximally mixed state instead; the two routes coincide as eps
    shrinks (exactly so for full-rank inputs).

    t outside [0, 1] is rejected unless `extended` is set; the family
    is well defined (though no longer a fidelity) on the whole line.

    When one input is detected rank-one, the matching closed form
    (overlap^t for rank-one rho, overlap^{1-t} for rank-one sigma) is
    recorded in cross_checks for auditing.
    """
    _check_pair(rho, sigma)
    if not extended and not 0.0 <= t <= 1.0:
        raise ParamError(f"parameter t = {t} outside [0, 1]")
    t = float(t)
    if regularization is not None:
        if not 0.0 < regularization < 1.0:
            raise ParamError(f"regularization eps = {regularization} outside (0, 1)")
        rho_m = mix_identity(rho.mat, regularization)
        sigma_m = mix_identity(sigma.mat, regularization)
        x = riccati_solution(rho_m, sigma_m)
        value = float(np.real(np.trace(rho_m @ frac_power(x, 2 * t, support_only=True))))
        return FidelityValue(value, t=t, method="spectral_regularized")

    x = riccati_solution(rho.mat, sigma.mat)
    value = float(np.real(np.trace(rho.mat @ frac_power(x, 2 * t, support_only=True))))

    checks: list[tuple[str, float]] = []
    if rho.rank == 1:
        p = float(np.real(np.trace(rho.mat @ sigma.mat)))
        checks.append(("pure_rho_closed_form", max(p, 0.0) ** t))
    elif sigma.rank == 1:
        q = float(np.real(np.trace(sigma.mat @ rho.mat)))
        checks.append(("pure_sigma_closed_form", max(q, 0.0) ** (1.0 - t)))
    return FidelityValue(value, t=t, cross_checks=tuple(checks))


def uhlmann_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> FidelityValue:
    """Root fidelity Tr sqrt(rho^{1/2} sigma rho^{1/2})."""
    _check_pair(rho, sigma)
    r_half = frac_power(rho.mat, 0.5, support_only=True)
    inner = hermitize(r_half @ sigma.mat @ r_half)
    value = float(np.real(np.trace(frac_power(inner, 0.5, support_only=True))))
    return FidelityValue(value, method="uhlmann")


def matsumoto_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> FidelityValue:
    """Trace of the matrix geometric mean of the two states."""
    _check_pair(rho, sigma)
    value = float(np.real(np.trace(geometric_mean(rho.mat, sigma.mat))))
    return FidelityValue(value, method="matsumoto")


def sandwiched_renyi(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> float:
    """Sandwiched Renyi divergence of order alpha (positive, not 1).

    Computed as log Tr[(sigma^s rho sigma^s)^alpha] / (alpha - 1) with
    s = (1 - alpha) / (2 alpha), powers restricted to supports.  For
    alpha > 1 the support of rho must lie inside the support of sigma.
    """
    _check_pair(rho, sigma)
    if alpha <= 0 or alpha == 1:
        raise ParamError(f"order alpha = {alpha} must be positive and not 1")
    if alpha > 1:
        proj = support_projector(sigma.mat)
        leak = float(np.abs(rho.mat - proj @ rho.mat @ proj).max())
        if leak > math.sqrt(psd_cutoff(rho.mat)):
            raise SupportError(
                f"support containment fails for alpha > 1: leakage {leak:.3e}"
            )
    s = (1.0 - alpha) / (2.0 * alpha)
    sig_s = frac_power(sigma.mat, s, support_only=True)
    inner = hermitize(sig_s @ rho.mat @ sig_s)
    tr = float(np.real(np.trace(frac_power(inner, alpha, support_only=True))))
    if tr <= 0.0:
        return math.inf
    return math.log(tr) / (alpha - 1.0)


def diagonal_spectral_fidelity(p, q, t: float) -> FidelityValue:
    """Classical family sum_i p_i^{1-t} q_i^t over probability vectors.

    Zero entries follow the continuity conventions: a term with
    p_i = 0 contributes 0 whenever t < 1, and a term with q_i = 0
    contributes 0 whenever t > 0; surviving zero exponents use x^0 = 1.
    """
    p = np.asarray(p, dtype=float).reshape(-1)
    q = np.asarray(q, dtype=float).reshape(-1)
    if p.shape != q.shape:
        raise DimensionMismatch(f"length mismatch: {p.shape[0]} vs {q.shape[0]}")
    for name, vec in (("p", p), ("q", q)):
        if np.any(vec < 0):
            raise NormalizationError(f"{name} has negative entries")
        if abs(float(vec.sum()) - 1.0) > 1e-12:
            raise NormalizationError(f"{name} sums to {float(vec.sum())!r}, not 1")
    t = float(t)
    total = 0.0
    for pi, qi in zip(p, q):
        if pi == 0.0 and t < 1.0:
            continue
        if qi == 0.0 and t > 0.0:
            continue
        total += pi ** (1.0 - t) * qi**t
    return FidelityValue(total, t=t, method="diagonal_closed_form")


def fvg_bounds(rho: DensityMatrix, sigma: DensityMatrix, t: float) -> FvgBounds:
    """Both sides of the Fuchs-van de Graaf comparisons at parameter t.

    Returns 1 - F_t, half the trace distance, and sqrt(1 - F_t^2); the
    lower bound 1 - F_t <= half trace distance always holds, while the
    upper comparison can fail away from t = 1/2.
    """
    _check_pair(rho, sigma)
    f = spectral_fidelity(rho, sigma, t).value
    dist = 0.5 * trace_norm(rho.mat - sigma.mat)
    return FvgBounds(1.0 - f, dist, math.sqrt(max(0.0, 1.0 - f * f)))
