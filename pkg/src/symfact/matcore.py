"""Dense complex linear-algebra substrate.

Everything else in the package is built on the operations here: the two
inner products (bilinear u^T v and sesquilinear w2^* w1), reflector-based
complement bases, row-pivoted LU solves and determinants, and the principal
complex square root.  All public entry points validate shapes and reject
non-finite input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(np.float64).eps)


class ValidationError(ValueError):
    """Input rejected at a module boundary (bad shape, NaN/Inf, empty)."""


class SingularMatrixError(ValueError):
    """Linear system is singular to working precision."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy for the whole package.

    eig_tol      relative residual bound accepted for an eigenpair
    iso_tol      threshold on |e^T e| deciding that a unit vector is isotropic
    det_tol      lower bound on the accepted |det D| in the isotropic branch
    verify_tol   relative Frobenius bound for factorization verification
    max_qr_iters QR iterations allowed per eigenvalue before giving up
    seed         base seed for every internally drawn random vector
    """

    eig_tol: float = 1e-9
    iso_tol: float = 1e-8
    det_tol: float = 1e-10
    verify_tol: float = 1e-8
    max_qr_iters: int = 64
    seed: int = 0

    def __post_init__(self):
        for name in ("eig_tol", "iso_tol", "det_tol", "verify_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0.0 and np.isfinite(value)):
                raise ValidationError(f"{name} must be a finite positive number, got {value!r}")
        if not (isinstance(self.max_qr_iters, int) and self.max_qr_iters >= 1):
            raise ValidationError(f"max_qr_iters must be an integer >= 1, got {self.max_qr_iters!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValidationError(f"seed must be a nonnegative integer, got {self.seed!r}")


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D complex128 array."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a nonempty 1-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError(f"{name} contains NaN or Inf entries")
    return arr


def as_matrix(a, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-D complex128 array, optionally requiring it square."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise ValidationError(f"{name} must be a nonempty 2-D array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError(f"{name} contains NaN or Inf entries")
    return arr


def as_scalar(z, name: str = "scalar") -> complex:
    """Coerce to a finite python complex."""
    value = complex(z)
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.complex128).ravel()))


def bilinear(u, v) -> complex:
    """Non-conjugated product u^T v.  Vanishes on isotropic pairs."""
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise ValidationError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return complex(np.dot(u, v))


def sesquilinear(w1, w2) -> complex:
    """Euclidean inner product (w1, w2) = w2^* w1, conjugate-linear in w2."""
    w1 = as_vector(w1, "w1")
    w2 = as_vector(w2, "w2")
    if w1.shape != w2.shape:
        raise ValidationError(f"dimension mismatch: {w1.shape[0]} vs {w2.shape[0]}")
    return complex(np.vdot(w2, w1))


def principal_sqrt(z) -> complex:
    """Square root w of z with Re(w) >= 0; on the imaginary axis Im(w) >= 0."""
    value = as_scalar(z, "z")
    w = complex(np.sqrt(np.complex128(value)))
    if w.real < 0.0 or (w.real == 0.0 and w.imag < 0.0):
        w = -w
    return w


def _reflector(x: np.ndarray) -> np.ndarray:
    """Unitary Householder matrix whose first column is a unit multiple of x."""
    m = x.shape[0]
    x = x / np.linalg.norm(x)
    phase = x[0] / abs(x[0]) if abs(x[0]) > 0.0 else 1.0 + 0.0j
    v = x.copy()
    v[0] += phase  # v = x - alpha*e1 with alpha = -phase, so |v| is never small
    v /= np.linalg.norm(v)
    # first column comes out as -conj(phase)*x, still a unit multiple of x
    return np.eye(m, dtype=np.complex128) - 2.0 * np.outer(v, v.conj())


def complement_basis(e) -> np.ndarray:
    """Orthonormal basis (columns) of {w : w^* conj(e) = 0} = {w : e^T w = 0}.

    Built by unitary completion of conj(e), so the returned columns are
    exactly orthonormal and each satisfies bilinear(e, w) = 0 to rounding.
    """
    e = as_vector(e, "e")
    if np.linalg.norm(e) == 0.0:
        raise ValidationError("cannot build a complement basis for the zero vector")
    if e.shape[0] == 1:
        return np.zeros((1, 0), dtype=np.complex128)
    p = _reflector(e.conj())
    return p[:, 1:].copy()


def complement_basis_within(e, iso_tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis (columns) of {w : w^* conj(e) = 0 and w^* e = 0}.

    Requires e isotropic (|e^T e| <= iso_tol * |e|^2), which makes e and
    conj(e) orthogonal under the sesquilinear product, so the two
    completion steps commute cleanly.
    """
    e = as_vector(e, "e")
    norm_e = np.linalg.norm(e)
    if norm_e == 0.0:
        raise ValidationError("cannot build a complement basis for the zero vector")
    if abs(complex(np.dot(e, e))) > iso_tol * norm_e**2:
        raise ValidationError("input vector is not isotropic within iso_tol")
    m = e.shape[0]
    if m < 2:
        raise ValidationError("an isotropic vector needs dimension >= 2")
    u = e / norm_e
    p1 = _reflector(u.conj())
    z = p1.conj().T @ u  # coordinates of u in the completed basis; z[0] ~ e^T e = 0
    z = z[1:]
    z /= np.linalg.norm(z)
    p2 = _reflector(z)
    basis = p1[:, 1:] @ p2[:, 1:]
    return basis


def _lu(a: np.ndarray, mode: str):
    """Row-pivoted LU.  mode: 'solve' raises on tiny pivots, 'guard' replaces
    them (inverse-iteration style), 'det' accepts exact breakdown."""
    lu = np.array(a, dtype=np.complex128)
    m = lu.shape[0]
    order = np.arange(m)
    nswaps = 0
    scale = float(np.max(np.abs(lu))) if lu.size else 0.0
    tiny = m * _EPS * max(scale, np.finfo(np.float64).tiny)
    for k in range(m):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            order[[k, p]] = order[[p, k]]
            nswaps += 1
        piv = lu[k, k]
        if abs(piv) <= tiny:
            if mode == "solve":
                raise SingularMatrixError(f"matrix is singular to working precision (column {k})")
            if mode == "guard":
                piv = tiny if piv == 0.0 else piv / abs(piv) * tiny
                lu[k, k] = piv
            elif piv == 0.0:  # det: the whole subcolumn is zero, nothing to eliminate
                continue
        if k + 1 < m:
            lu[k + 1 :, k] /= piv
            lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, order, nswaps


def _lu_solve(lu: np.ndarray, order: np.ndarray, b: np.ndarray) -> np.ndarray:
    y = np.array(b[order], dtype=np.complex128)
    m = lu.shape[0]
    for k in range(m - 1):
        y[k + 1 :] -= np.multiply.outer(lu[k + 1 :, k], y[k])
    for k in range(m - 1, -1, -1):
        if k + 1 < m:
            y[k] -= lu[k, k + 1 :] @ y[k + 1 :]
        y[k] /= lu[k, k]
    return y


def solve_linear(a, b) -> np.ndarray:
    """Solve A X = B by row-pivoted elimination; never forms an inverse."""
    a = as_matrix(a, square=True, name="A")
    b_arr = np.asarray(b, dtype=np.complex128)
    vector_rhs = b_arr.ndim == 1
    b_arr = as_matrix(b_arr.reshape(-1, 1) if vector_rhs else b_arr, name="B")
    if b_arr.shape[0] != a.shape[0]:
        raise ValidationError(f"B has {b_arr.shape[0]} rows, expected {a.shape[0]}")
    lu, order, _ = _lu(a, mode="solve")
    x = _lu_solve(lu, order, b_arr)
    return x[:, 0] if vector_rhs else x


def determinant(a) -> complex:
    """Determinant via the same pivoted elimination; exact for triangular input."""
    a = as_matrix(a, square=True, name="A")
    lower = np.tril(a, -1)
    upper = np.triu(a, 1)
    if not lower.any() or not upper.any():
        return complex(np.prod(np.diag(a)))
    lu, _, nswaps = _lu(a, mode="det")
    det = complex(np.prod(np.diag(lu)))
    return -det if nswaps % 2 else det
