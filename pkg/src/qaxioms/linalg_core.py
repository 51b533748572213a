"""
Dense complex linear algebra used by every other module.

Vectors and matrices are plain ``numpy`` arrays of dtype ``complex128``.
The inner product is conjugate-linear in its first argument (bra-ket
convention), so ``inner_product(a, b)`` is ``<a|b>``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    NonFiniteError,
    NotHermitianError,
)

DEFAULT_TOL = 1e-10


def as_vector(v) -> np.ndarray:
    """Coerce to a finite 1-D complex array."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("vector contains NaN or infinity")
    return arr


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidInputError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("matrix contains NaN or infinity")
    return arr


def as_square(m) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def inner_product(a, b) -> complex:
    a, b = as_vector(a), as_vector(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimensions differ: {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def max_scaled(v) -> tuple[np.ndarray, float]:
    """``(v / m, m)`` with ``m = max |v_k|``, so squaring can't under/overflow."""
    v = np.ascontiguousarray(v, dtype=complex)
    m = float(np.max(np.abs(v)))
    if m == 0.0:
        return v, 0.0
    # divide re/im as reals; complex division by a subnormal overflows
    return (v.view(np.float64) / m).view(complex), m


def norm(v) -> float:
    w, m = max_scaled(as_vector(v))
    return m * float(np.sqrt(np.vdot(w, w).real))


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def apply(m, v) -> np.ndarray:
    m, v = as_matrix(m), as_vector(v)
    if m.shape[1] != v.size:
        raise DimensionMismatchError(f"cannot apply {m.shape} matrix to dimension-{v.size} vector")
    return m @ v


def hermiticity_residual(h) -> float:
    h = as_square(h)
    return float(np.linalg.norm(h - h.conj().T, "fro"))


def hermitian_eigendecomposition(h, tol_herm: float = DEFAULT_TOL):
    """
    Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix with ``||h - h^dagger||_F <= tol_herm``.
    tol_herm : float
        Hermiticity tolerance (absolute, Frobenius).

    Returns
    -------
    eigenvalues : ndarray of float
        Ascending.
    eigenvectors : ndarray
        Orthonormal eigenvectors as *columns*, in the same order.
    """
    h = as_square(h)
    resid = hermiticity_residual(h)
    if resid > tol_herm:
        raise NotHermitianError(f"||H - H^dagger||_F = {resid:.3e} exceeds {tol_herm:.1e}")
    # symmetrize so LAPACK sees an exactly Hermitian input
    h = 0.5 * (h + h.conj().T)
    vals, vecs = np.linalg.eigh(h)
    return vals, vecs


class OperatorTag(str, enum.Enum):
    UNITARY = "Unitary"
    PROPORTIONAL_UNITARY = "ProportionalUnitary"
    GENERAL_INVERTIBLE = "GeneralInvertible"
    SINGULAR = "Singular"


@dataclass(frozen=True)
class OperatorClass:
    """Admissibility class of a square matrix as a time-evolution operator.

    ``scale`` is set only for proportional-unitary operators: ``M = scale * V``
    with ``V`` unitary. Its modulus is ``sqrt(tr(M^dagger M)/N)``; its phase is
    the principal ``N``-th root phase of ``det M``.
    """

    tag: OperatorTag
    scale: complex | None = None
    gram_residual: float = 0.0
    singular_values: tuple[float, ...] = ()

    @property
    def is_invertible(self) -> bool:
        return self.tag is not OperatorTag.SINGULAR

    @property
    def condition_number(self) -> float:
        if not self.singular_values or self.singular_values[-1] == 0.0:
            return float("inf")
        return self.singular_values[0] / self.singular_values[-1]


def gram_residual(m) -> float:
    """``||M^dagger M - I||_F``."""
    m = as_square(m)
    return float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), "fro"))


def classify_operator(m, tol: float = DEFAULT_TOL) -> OperatorClass:
    m = as_square(m)
    n = m.shape[0]
    gram = m.conj().T @ m
    eye = np.eye(n)
    resid = float(np.linalg.norm(gram - eye, "fro"))
    svals = tuple(float(s) for s in np.linalg.svd(m, compute_uv=False))

    if resid <= tol:
        return OperatorClass(OperatorTag.UNITARY, None, resid, svals)

    # exact when gram = |c|^2 I
    c2 = float(np.trace(gram).real) / n
    if c2 > 0.0 and np.linalg.norm(gram - c2 * eye, "fro") <= tol * c2:
        det = np.linalg.det(m)
        phase = np.exp(1j * np.angle(det) / n) if det != 0 else 1.0
        return OperatorClass(
            OperatorTag.PROPORTIONAL_UNITARY, complex(np.sqrt(c2) * phase), resid, svals
        )

    if svals[-1] <= tol * svals[0]:
        return OperatorClass(OperatorTag.SINGULAR, None, resid, svals)
    return OperatorClass(OperatorTag.GENERAL_INVERTIBLE, None, resid, svals)


def polarization_reconstruct(u, alpha, beta):
    """
    Recover ``<alpha|U^dagger U|beta>`` from the norms of ``U`` applied to
    ``alpha``, ``beta``, ``alpha + beta`` and ``alpha + i beta`` only.

    ``alpha`` and ``beta`` may be stacks of vectors (last axis is the
    vector index); the result then has the stack shape.
    """
    u = as_square(u)
    alpha = np.asarray(alpha, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    if alpha.shape != beta.shape or alpha.shape[-1] != u.shape[1]:
        raise DimensionMismatchError(
            f"operator {u.shape} incompatible with vectors {alpha.shape}, {beta.shape}"
        )

    def sqnorm(x):
        y = x @ u.T
        return np.sum((y * y.conj()).real, axis=-1)

    na, nb = sqnorm(alpha), sqnorm(beta)
    re = 0.5 * (sqnorm(alpha + beta) - na - nb)
    im = 0.5 * (na + nb - sqnorm(alpha + 1j * beta))
    out = re + 1j * im
    return complex(out) if np.ndim(out) == 0 else out


def random_unit_vectors(dim: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Normalized vectors of i.i.d. standard complex Gaussian entries."""
    shape = (dim,) if size is None else (size, dim)
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_invertible(
    dim: int, rng: np.random.Generator, min_condition: float = 1.01, max_condition: float = 1e6
) -> np.ndarray:
    """Complex Gaussian matrix, resampled until its condition number lies in
    ``[min_condition, max_condition]``.

    For ``dim == 1`` every nonzero scalar is proportional-unitary, so ``dim >= 2`` is required.
    """
    if dim < 2:
        raise InvalidInputError("a 1x1 operator cannot be non-unitary up to scale")
    while True:
        m = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2 * dim)
        if min_condition <= np.linalg.cond(m) <= max_condition:
            return m
