"""Numerical tolerances shared by every module.

A single mutable instance holds the process-wide settings so the CLI can
apply overrides before any computation starts.  Library code reads the
attributes at call time and never caches them.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class Tolerances:
    # Hermiticity check, relative to the matrix scale.
    herm_tol: float = 1e-10
    # PSD cutoff scale; effective cutoff is psd_tol * max(1, max|M_ij|).
    psd_tol: float = 1e-10
    # Eigendecomposition reconstruction bound.
    recon_tol: float = 1e-9
    # Eigenvector orthonormality bound.
    ortho_tol: float = 1e-10
    # Fidelity bound checks.
    fid_tol: float = 1e-9
    # A data-processing violation must exceed this margin to count.
    dpi_margin: float = 1e-7
    # Default mixing weight for the identity-regularization path.
    eps_default: float = 1e-8
    # Support detection inside spectral calculus, relative to the largest
    # eigenvalue.  Sits just above eigensolver noise on exact zeros so
    # that genuinely tiny positive eigenvalues are kept, not truncated.
    support_rtol: float = 1e-13

    def override(self, name: str, value: float) -> None:
        """Set one tolerance by name, rejecting unknown keys."""
        if name not in {f.name for f in fields(self)}:
            raise KeyError(f"unknown tolerance {name!r}")
        setattr(self, name, float(value))


TOL = Tolerances()
