"""Dense complex small-matrix primitives for unitary gate synthesis.

Everything here operates on 3x3 / 4x4 complex matrices: certified
Hermitian / unitary wrappers, eigendecomposition-based exponentials
exp(-i*theta*H), Kronecker products and trace inner products.  Values are
immutable after construction and safe to share between workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Construction tolerances, roughly 100x double eps scaled by dimension.
# Fixed constants, deliberately not configurable.
HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10
EXPM_UNITARY_ATOL = 1e-12


class MatrixError(ValueError):
    """Raised when a matrix fails a structural certification check."""


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ComplexMatrix:
    """Square complex matrix with finite entries."""

    array: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = _freeze(self.array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise MatrixError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a.view(np.float64))):
            raise MatrixError("matrix entries must be finite")
        object.__setattr__(self, "array", a)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    def dagger(self) -> np.ndarray:
        return self.array.conj().T


@dataclass(frozen=True)
class HermitianMatrix(ComplexMatrix):
    """Matrix certified Hermitian: max|M - M^dag| <= 1e-12 at construction."""

    def __post_init__(self):
        super().__post_init__()
        dev = np.max(np.abs(self.array - self.array.conj().T))
        if dev > HERMITIAN_ATOL:
            raise MatrixError(f"not Hermitian: max|M - M^dag| = {dev:.3e}")


@dataclass(frozen=True)
class UnitaryMatrix(ComplexMatrix):
    """Matrix certified unitary: max|M^dag M - I| <= 1e-10 at construction."""

    def __post_init__(self):
        super().__post_init__()
        dev = np.max(np.abs(self.dagger() @ self.array - np.eye(self.dim)))
        if dev > UNITARY_ATOL:
            raise MatrixError(f"not unitary: max|M^dag M - I| = {dev:.3e}")


def hermitian_eig(h: HermitianMatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition H = V diag(w) V^dag with real eigenvalues w.

    Raises MatrixError on LAPACK non-convergence (diagnostic, not silent).
    """
    a = h.array if isinstance(h, ComplexMatrix) else np.asarray(h, dtype=np.complex128)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise MatrixError(f"eigendecomposition failed: {exc}") from exc
    return w, v


def expm_hermitian(h: HermitianMatrix, theta: float) -> UnitaryMatrix:
    """exp(-i*theta*H) for Hermitian H, via H = V diag(w) V^dag.

    The result is unitary to within 1e-12 by construction (unit-modulus
    phases on a unitary eigenbasis).
    """
    if not np.isfinite(theta):
        raise MatrixError(f"theta must be finite, got {theta!r}")
    w, v = hermitian_eig(h)
    phases = np.exp(-1j * theta * w)
    u = (v * phases[None, :]) @ v.conj().T
    return UnitaryMatrix(u)


def phase_divided_difference(w: np.ndarray, theta: float) -> np.ndarray:
    """Divided differences of x -> exp(-i*theta*x) on eigenvalues w.

    Entry (i, j) is (e^{-i theta w_i} - e^{-i theta w_j}) / (w_i - w_j),
    with the diagonal limit -i*theta*e^{-i theta w_i}.  Evaluated in the
    product form -i*theta*exp(-i*theta*(w_i+w_j)/2)*sinc(theta*(w_i-w_j)/2),
    which is exact and stable for (near-)degenerate eigenvalue pairs.

    This is the Loewner kernel of the matrix exponential: the directional
    derivative of exp(-i*theta*H) along E is V ((kernel) * (V^dag E V)) V^dag.
    """
    diff = w[:, None] - w[None, :]
    avg = 0.5 * (w[:, None] + w[None, :])
    return -1j * theta * np.exp(-1j * theta * avg) * np.sinc(0.5 * theta * diff / np.pi)


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product with a's index major: (A kron B)[iN+k, jN+l] = A[i,j]B[k,l]."""
    return ComplexMatrix(np.kron(a.array, b.array))


def trace_inner(a: ComplexMatrix, b: ComplexMatrix) -> complex:
    """Tr(A^dag B); the Hilbert-Schmidt inner product."""
    if a.dim != b.dim:
        raise MatrixError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.sum(a.array.conj() * b.array))
