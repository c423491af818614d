"""Density matrices, Bloch parametrization, sampling, and CPTP maps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NormalizationError,
    NormError,
    ParamError,
    ZeroVector,
)
from .linalg import as_hermitian, eig, hermitize, psd_cutoff

# Pauli basis used by the qubit parametrization.
_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_TRACE_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix with its numerical rank."""

    mat: np.ndarray
    rank: int = field(init=False)

    def __post_init__(self) -> None:
        mat = as_hermitian(self.mat)
        w, _ = eig(mat)
        cutoff = psd_cutoff(mat)
        if float(w[0]) < -cutoff:
            raise NormalizationError(
                f"not a state: min eigenvalue {float(w[0]):.3e}"
            )
        trace = float(np.real(np.trace(mat)))
        if abs(trace - 1.0) > _TRACE_TOL:
            raise NormalizationError(f"not a state: trace {trace!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "rank", int(np.count_nonzero(w > cutoff)))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def from_bloch(r) -> DensityMatrix:
    """Qubit state (I + r . pauli)/2 from a real 3-vector of length <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionMismatch(f"expected a 3-vector, got shape {r.shape}")
    if float(np.linalg.norm(r)) > 1.0 + 1e-12:
        raise NormError(f"vector norm {float(np.linalg.norm(r))!r} exceeds 1")
    mat = np.eye(2, dtype=complex)
    for ri, pauli in zip(r, _PAULI):
        mat = mat + ri * pauli
    return DensityMatrix(mat / 2)


def to_bloch(rho: DensityMatrix) -> np.ndarray:
    """Real 3-vector of Pauli expectations of a qubit state."""
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch vector needs a qubit, got dim {rho.dim}")
    return np.array([float(np.real(np.trace(rho.mat @ p))) for p in _PAULI])


def pure_state(psi) -> DensityMatrix:
    """Rank-one projector onto a nonzero vector, normalized internally."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if norm <= 1e-150:
        raise ZeroVector("cannot normalize a zero state vector")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial, split off the suite seed by trial index.

    Splitting keys the stream to (seed, trial), so trials are
    reproducible independently of evaluation order.
    """
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    )


def random_density(dim: int, rank: int, seed) -> DensityMatrix:
    """Trace-normalized G G† with G a dim x rank complex Gaussian matrix."""
    if not 1 <= rank <= dim:
        raise ParamError(f"rank {rank} outside 1..{dim}")
    rng = _as_generator(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.real(np.trace(mat)))


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian with phase fix."""
    if dim < 1:
        raise ParamError(f"dimension {dim} must be positive")
    rng = _as_generator(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


@dataclass(frozen=True)
class Channel:
    """Completely positive trace-preserving map in Kraus form."""

    kraus: tuple

    def __post_init__(self) -> None:
        kraus = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not kraus:
            raise ParamError("a channel needs at least one Kraus operator")
        din = kraus[0].shape[1]
        if any(k.ndim != 2 or k.shape[1] != din for k in kraus):
            raise DimensionMismatch("Kraus operators have mismatched input dims")
        total = sum(k.conj().T @ k for k in kraus)
        if float(np.abs(total - np.eye(din)).max()) > 1e-10:
            raise NormalizationError("Kraus operators do not sum to the identity")
        object.__setattr__(self, "kraus", kraus)

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]


def pinching(basis_dim: int) -> Channel:
    """Dephasing channel that zeroes off-diagonal entries in the standard basis."""
    if basis_dim < 1:
        raise ParamError(f"dimension {basis_dim} must be positive")
    eye = np.eye(basis_dim, dtype=complex)
    return Channel(tuple(np.outer(eye[i], eye[i]) for i in range(basis_dim)))


def random_kraus_channel(dim: int, n_kraus: int, seed) -> Channel:
    """Random channel from a Haar isometry split into n_kraus blocks."""
    if n_kraus < 1:
        raise ParamError(f"need at least one Kraus operator, got {n_kraus}")
    rng = _as_generator(seed)
    g = rng.standard_normal((dim * n_kraus, dim)) + 1j * rng.standard_normal(
        (dim * n_kraus, dim)
    )
    q, _ = np.linalg.qr(g)
    return Channel(tuple(q[i * dim : (i + 1) * dim] for i in range(n_kraus)))


def apply(channel: Channel, rho: DensityMatrix) -> DensityMatrix:
    """Image sum_i K_i rho K_i† of a state under a channel."""
    if channel.dim_in != rho.dim:
        raise DimensionMismatch(
            f"channel input dim {channel.dim_in} vs state dim {rho.dim}"
        )
    out = sum(k @ rho.mat @ k.conj().T for k in channel.kraus)
    return DensityMatrix(hermitize(out))


def tensor(rho: DensityMatrix, sigma: DensityMatrix) -> DensityMatrix:
    """Kronecker product of two states."""
    return DensityMatrix(np.kron(rho.mat, sigma.mat))


def orthogonal_pair(dim_a: int, dim_b: int, seed) -> tuple[DensityMatrix, DensityMatrix]:
    """Random full-rank states padded onto disjoint diagonal blocks.

    The supports are exactly orthogonal by construction, with no
    tolerance ambiguity.
    """
    rng = _as_generator(seed)
    a = random_density(dim_a, dim_a, rng)
    b = random_density(dim_b, dim_b, rng)
    d = dim_a + dim_b
    rho = np.zeros((d, d), dtype=complex)
    sig = np.zeros((d, d), dtype=complex)
    rho[:dim_a, :dim_a] = a.mat
    sig[dim_a:, dim_a:] = b.mat
    return DensityMatrix(rho), DensityMatrix(sig)
