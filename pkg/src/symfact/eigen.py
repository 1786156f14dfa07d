"""Dense complex eigensolver.

Householder reduction to Hessenberg form, a single-shift QR iteration with
deflation for the eigenvalues, inverse iteration with Rayleigh refinement
for individual eigenpairs, and assembly of a complete biorthonormal
eigensystem {psi, phi} with Phi^* Psi = I for diagonalizable operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import (
    ToleranceConfig,
    ValidationError,
    SingularMatrixError,
    as_matrix,
    frobenius,
    solve_linear,
    _lu,
    _lu_solve,
)

_EPS = float(np.finfo(np.float64).eps)

#: subdiagonal h[k+1,k] is declared negligible below this multiple of its neighbours
_DEFLATE = 1e-14


class ConvergenceError(RuntimeError):
    """The QR or inverse iteration failed to converge within its budget."""


class DefectiveOperatorError(ValueError):
    """The operator is not diagonalizable to working precision."""


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with a unit-norm eigenvector and its residual
    |A e - value*e| (absolute, bounded by eig_tol * |A|_F on success)."""

    value: complex
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class EigenLevel:
    """One distinct eigenvalue: its multiplicity and the psi/phi column blocks."""

    value: complex
    multiplicity: int
    psi: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class BiorthonormalSystem:
    levels: tuple
    dim: int

    def psi_matrix(self) -> np.ndarray:
        return np.hstack([lv.psi for lv in self.levels])

    def phi_matrix(self) -> np.ndarray:
        return np.hstack([lv.phi for lv in self.levels])

    def eigenvalue_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([[lv.value] * lv.multiplicity for lv in self.levels]))


def _phase_canonical(v: np.ndarray) -> np.ndarray:
    """Fix the free complex phase: largest-modulus entry made real positive."""
    i = int(np.argmax(np.abs(v)))
    a = v[i]
    if a == 0.0:
        return v
    return v * (abs(a) / a)


def _rng(seed: int, *streams: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed)] + [int(s) & 0xFFFFFFFF for s in streams]))


def hessenberg_reduce(a) -> tuple[np.ndarray, np.ndarray]:
    """Unitary reduction A = Q H Q^* with H upper Hessenberg.

    Returns (H, Q) with Q^* A Q = H; Q is a product of Householder reflectors.
    """
    a = as_matrix(a, square=True, name="A")
    n = a.shape[0]
    h = a.copy()
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = h[k + 1 :, k]
        nx = np.linalg.norm(x)
        if nx == 0.0:
            continue
        phase = x[0] / abs(x[0]) if abs(x[0]) > 0.0 else 1.0 + 0.0j
        v = x.copy()
        v[0] += phase * nx
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        v = v / nv
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v.conj())
        h[k + 2 :, k] = 0.0
    return h, q


def _eig_2x2(a, b, c, d):
    t = 0.5 * (a + d)
    s = complex(np.sqrt(np.complex128(0.25 * (a - d) ** 2 + b * c)))
    return t + s, t - s


def _wilkinson_shift(h, hi):
    l1, l2 = _eig_2x2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
    return l1 if abs(l1 - h[hi, hi]) <= abs(l2 - h[hi, hi]) else l2


def _qr_hessenberg_eigvals(h0: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    h = np.array(h0, dtype=np.complex128)
    n = h.shape[0]
    out = np.empty(n, dtype=np.complex128)
    if n == 1:
        out[0] = h[0, 0]
        return out
    norm_h = frobenius(h)
    hi = n - 1
    stagnation = 0
    while hi >= 0:
        for k in range(hi):
            thr = _DEFLATE * (abs(h[k, k]) + abs(h[k + 1, k + 1]))
            if thr == 0.0:
                thr = _EPS * norm_h
            if abs(h[k + 1, k]) <= thr:
                h[k + 1, k] = 0.0
        if hi == 0:
            out[0] = h[0, 0]
            break
        lo = hi
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        if lo == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            stagnation = 0
            continue
        if hi - lo == 1:
            out[lo], out[hi] = _eig_2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            hi -= 2
            stagnation = 0
            continue
        stagnation += 1
        if stagnation > cfg.max_qr_iters:
            raise ConvergenceError(f"QR iteration did not converge within {cfg.max_qr_iters} steps")
        if stagnation % 10 == 0:  # exceptional shift to break rare cycling
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1]) * (1.0 + 0.5j)
        else:
            mu = _wilkinson_shift(h, hi)
        b = h[lo : hi + 1, lo : hi + 1]
        m = hi - lo + 1
        b.flat[:: m + 1] -= mu
        rotations = []
        for k in range(m - 1):
            f, g = b[k, k], b[k + 1, k]
            d = np.hypot(abs(f), abs(g))
            if d == 0.0:
                c_, s_ = 1.0 + 0.0j, 0.0 + 0.0j
            else:
                c_, s_ = f / d, g / d
            rotations.append((c_, s_))
            top = b[k, k:].copy()
            bot = b[k + 1, k:]
            b[k, k:] = np.conj(c_) * top + np.conj(s_) * bot
            b[k + 1, k:] = -s_ * top + c_ * bot
        for k, (c_, s_) in enumerate(rotations):
            colk = b[: k + 2, k].copy()
            colk1 = b[: k + 2, k + 1]
            b[: k + 2, k] = c_ * colk + s_ * colk1
            b[: k + 2, k + 1] = -np.conj(s_) * colk + np.conj(c_) * colk1
        b.flat[:: m + 1] += mu
    return out


def eigenvalues(a, cfg: ToleranceConfig | None = None) -> list:
    """All eigenvalues (with multiplicity), sorted by (real, imag)."""
    a = as_matrix(a, square=True, name="A")
    cfg = cfg or ToleranceConfig()
    h, _ = hessenberg_reduce(a)
    vals = _qr_hessenberg_eigvals(h, cfg)
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


def _guarded_shift_solve(a: np.ndarray, shift: complex):
    with np.errstate(all="ignore"):
        m = a - shift * np.eye(a.shape[0], dtype=np.complex128)
        lu, order, _ = _lu(m, mode="guard")
    return lambda b: _lu_solve(lu, order, b.reshape(-1, 1))[:, 0]


def _candidate_values(a: np.ndarray, cfg: ToleranceConfig) -> list:
    """Distinct eigenvalue candidates, largest modulus first (ties by the
    position in the (real, imag) sort)."""
    scale = frobenius(a)
    vals = eigenvalues(a, cfg)
    order = sorted(range(len(vals)), key=lambda i: (-abs(vals[i]), i))
    candidates = []
    for i in order:
        if all(abs(vals[i] - c) > 1e-12 * scale for c in candidates):
            candidates.append(vals[i])
    return candidates


def _inverse_iterate(a: np.ndarray, cand: complex, cfg: ToleranceConfig, salt: int):
    """Converge one eigenpair near the candidate eigenvalue.

    Inverse iteration with Rayleigh refinement; near-zero candidates get an
    extra probe at an almost-zero shift, which pins down the genuine
    eigendirection of nilpotent operators.  Returns (residual, value, vector)
    or None on stagnation.
    """
    scale = frobenius(a)
    n = a.shape[0]
    shifts = []
    if abs(cand) <= 1e-6 * scale:
        shifts.append(1e-14 * scale)  # probe an exactly-null direction first
    shifts.append(cand)
    shifts.append(cand + 1e-8 * scale * (0.6 + 0.8j))
    shifts.append(cand * (1.0 + 1e-7) + 1e-9 * scale)
    best = None
    for ai, shift in enumerate(shifts):
        rng = _rng(cfg.seed, 0xE16, n, salt, ai)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        solve = _guarded_shift_solve(a, shift)
        with np.errstate(all="ignore"):
            for _ in range(8):
                w = solve(v)
                nw = np.linalg.norm(w)
                if not np.isfinite(nw) or nw == 0.0:
                    break
                v = w / nw
                if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
                    break
                lam = complex(np.vdot(v, a @ v))
                res = float(np.linalg.norm(a @ v - lam * v))
                if abs(lam - cand) > 1e-3 * scale:
                    break  # wandered to a different eigenvalue
                if best is None or res < best[0]:
                    best = (res, lam, v.copy())
                if res <= 1e-14 * scale:
                    break
                if res > 1e-13 * scale:
                    solve = _guarded_shift_solve(a, lam)
        if best is not None and best[0] <= 1e-13 * scale:
            break
    if best is not None and best[0] <= cfg.eig_tol * scale:
        return best
    return None


def eigenpair(a, cfg: ToleranceConfig | None = None) -> EigenPair:
    """One eigenpair by inverse iteration at the selected eigenvalue.

    Selection rule: the largest-modulus eigenvalue whose inverse iteration
    converges, falling back to the next candidate on stagnation.
    """
    a = as_matrix(a, square=True, name="A")
    cfg = cfg or ToleranceConfig()
    if frobenius(a) == 0.0:
        raise ValidationError("eigenpair requires a nonzero matrix")
    for ci, cand in enumerate(_candidate_values(a, cfg)):
        got = _inverse_iterate(a, cand, cfg, ci)
        if got is not None:
            res, lam, v = got
            return EigenPair(value=lam, vector=_phase_canonical(v), residual=res)
    raise ConvergenceError("inverse iteration stagnated for every eigenvalue candidate")


def _cluster(values, eps: float):
    """Group eigenvalues closer than eps into levels (connected components)."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= eps:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    levels = []
    for members in groups.values():
        mean = sum(values[i] for i in members) / len(members)
        levels.append((complex(mean), len(members)))
    levels.sort(key=lambda t: (t[0].real, t[0].imag))
    return levels


def biorthonormal_system(h, cfg: ToleranceConfig | None = None) -> BiorthonormalSystem:
    """Complete biorthonormal eigensystem of a diagonalizable operator.

    Eigenvalues are clustered into distinct levels; each level's psi block is
    an orthonormal null-space basis of (H - E I).  The dual blocks are the
    columns of (Psi^{-1})^*, so Phi^* Psi = I holds globally.  Raises
    DefectiveOperatorError when some eigenspace is smaller than the
    eigenvalue's multiplicity or the eigenvector matrix is too ill-conditioned.
    """
    h = as_matrix(h, square=True, name="H")
    cfg = cfg or ToleranceConfig()
    n = h.shape[0]
    norm_h = frobenius(h)
    vals = eigenvalues(h, cfg)
    eps_cluster = 1e-8 * norm_h
    levels_meta = _cluster(vals, eps_cluster)
    theta = 1e-8 * max(norm_h, np.finfo(np.float64).tiny)
    psi_blocks = []
    for value, mult in levels_meta:
        m = h - value * np.eye(n, dtype=np.complex128)
        _, s, vh = np.linalg.svd(m)
        null_dim = int(np.sum(s <= theta))
        if null_dim < mult:
            raise DefectiveOperatorError(
                f"eigenvalue {value:.6g} has multiplicity {mult} but eigenspace dimension {null_dim}"
            )
        block = vh[n - mult :, :].conj().T[:, ::-1]  # smallest singular directions first
        block = np.column_stack([_phase_canonical(block[:, j]) for j in range(mult)])
        psi_blocks.append(block)
    psi = np.hstack(psi_blocks)
    cond = float(np.linalg.cond(psi))
    if not np.isfinite(cond) or cond > 1e8:
        raise DefectiveOperatorError(f"eigenvector matrix condition {cond:.3g} exceeds 1e8")
    diag = np.concatenate([[value] * mult for value, mult in levels_meta])
    if frobenius(h @ psi - psi * diag) > 1e-8 * max(norm_h, np.finfo(np.float64).tiny):
        raise DefectiveOperatorError("assembled eigenvectors do not reproduce the operator action")
    try:
        phi = solve_linear(psi, np.eye(n, dtype=np.complex128)).conj().T
    except SingularMatrixError as exc:
        raise DefectiveOperatorError("eigenvector matrix is numerically singular") from exc
    levels = []
    col = 0
    for value, mult in levels_meta:
        levels.append(
            EigenLevel(
                value=value,
                multiplicity=mult,
                psi=psi[:, col : col + mult].copy(),
                phi=phi[:, col : col + mult].copy(),
            )
        )
        col += mult
    return BiorthonormalSystem(levels=tuple(levels), dim=n)
