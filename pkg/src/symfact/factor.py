"""Constructive V V^T factorization of complex symmetric matrices.

The algorithm recurses on the dimension.  Each level takes one eigenpair
(lambda, e) of the current symmetric block C and branches on whether e is
isotropic (e^T e = 0, possible only over the complex field):

* ``CaseI``               non-isotropic e: congruence by [complement | e]
                          splits off a 1x1 corner, recurse on the rest.
* ``CaseII_LambdaZero``   isotropic e with lambda = 0: the congruence is
                          already block diagonal.
* ``CaseII_General``      isotropic e, lambda != 0, coupling block nonzero:
                          an extra bordered transform D restores the CaseI
                          shape; the free entries of D are chosen so that
                          det D is safely nonzero.
* ``CaseII_Degenerate``   isotropic e, lambda != 0, coupling block zero:
                          the remaining 2x2 antidiagonal core is factored
                          in closed form.
* ``Base`` / ``ZeroMatrix`` terminate the recursion.

Every returned factor satisfies |C - V V^T|_F <= verify_tol * max(|C|_F, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import eigen
from .matcore import (
    ToleranceConfig,
    ValidationError,
    _reflector,
    as_matrix,
    as_scalar,
    bilinear,
    complement_basis,
    complement_basis_within,
    frobenius,
    principal_sqrt,
    solve_linear,
)

BRANCH_BASE = "Base"
BRANCH_CASE_I = "CaseI"
BRANCH_CASE_II_LAMBDA_ZERO = "CaseII_LambdaZero"
BRANCH_CASE_II_GENERAL = "CaseII_General"
BRANCH_CASE_II_DEGENERATE = "CaseII_Degenerate"
BRANCH_ZERO_MATRIX = "ZeroMatrix"

ALL_BRANCHES = (
    BRANCH_BASE,
    BRANCH_CASE_I,
    BRANCH_CASE_II_LAMBDA_ZERO,
    BRANCH_CASE_II_GENERAL,
    BRANCH_CASE_II_DEGENERATE,
    BRANCH_ZERO_MATRIX,
)

#: |lambda*alpha| below this multiple of |C|_F is treated as lambda = 0
#: (dropping a corner this small costs at most sqrt(2)*1e-10 relative residual,
#: while feeding it to the bordered transform would divide by it)
_LAMBDA_ZERO_CUT = 1e-10
#: coupling block with max-entry below this multiple of |lambda*alpha| counts as zero
_ALLZERO_CUT = 1e-10
#: symmetry defect tolerated (and symmetrized away) on input
_SYM_BAND = 1e-12
#: |e^T e| below this makes the non-isotropic rescale too ill-conditioned;
#: the recursion then looks for a better eigenvalue candidate first
_ETE_DANGER = 3e-3
#: an isotropic eigenvector with 0 < |lambda| below this fraction of |C|_F
#: drives the bordered transform (x_n = -1/(lambda*alpha)) toward singularity;
#: such candidates are deferred the same way
_LAMBDA_DANGER = 1e-4


class NotSymmetricError(ValueError):
    """Input matrix is not symmetric within the accepted band."""


class AllZeroSignal:
    """Returned by choose_x when the coupling block vanishes identically."""

    def __repr__(self):  # pragma: no cover - cosmetic
        return "AllZeroSignal()"


@dataclass(frozen=True)
class ChosenX:
    x: np.ndarray
    det_d: complex
    strategy: str
    score: float = 1.0  # |det D| relative to the size of D, a 1/cond proxy


@dataclass(frozen=True)
class LevelRecord:
    dim: int
    branch: str
    value: complex | None = None
    ete: complex | None = None
    alpha: float | None = None
    det_d: complex | None = None
    x_strategy: str | None = None


@dataclass(frozen=True)
class RecursionTrace:
    levels: tuple

    def branches(self) -> list:
        return [lv.branch for lv in self.levels]


@dataclass(frozen=True)
class FactorizationResult:
    V: np.ndarray
    residual: float
    relative_residual: float
    trace: RecursionTrace


@dataclass(frozen=True)
class VerifyResult:
    residual: float
    relative_residual: float
    passed: bool


def verify_factorization(c, v, cfg: ToleranceConfig | None = None) -> VerifyResult:
    """Frobenius residual of C - V V^T, relative to max(|C|_F, 1)."""
    c = as_matrix(c, square=True, name="C")
    v = as_matrix(v, square=True, name="V")
    cfg = cfg or ToleranceConfig()
    if v.shape != c.shape:
        raise ValidationError(f"shape mismatch: C is {c.shape}, V is {v.shape}")
    residual = frobenius(c - v @ v.T)
    relative = residual / max(frobenius(c), 1.0)
    return VerifyResult(residual=residual, relative_residual=relative, passed=relative <= cfg.verify_tol)


def orthogonal_gauge(v, o, tol: float = 1e-10) -> np.ndarray:
    """Apply the gauge freedom V -> V o for complex orthogonal o (o^T o = I)."""
    v = as_matrix(v, name="V")
    o = as_matrix(o, square=True, name="o")
    if o.shape[0] != v.shape[1]:
        raise ValidationError(f"gauge matrix {o.shape} does not conform to V {v.shape}")
    defect = frobenius(o.T @ o - np.eye(o.shape[0]))
    if defect > tol * max(frobenius(o) ** 2, 1.0):
        raise ValidationError(f"gauge matrix is not orthogonal: |o^T o - I| = {defect:.3g}")
    return v @ o


def factor_antidiagonal(lambda_alpha) -> np.ndarray:
    """Closed-form 2x2 factor m with m^T m = [[0, la], [la, 0]]."""
    la = as_scalar(lambda_alpha, "lambda_alpha")
    if la == 0.0:
        raise ValidationError("lambda_alpha must be nonzero")
    return np.array([[1.0, la / 2.0], [1.0j, -1.0j * la / 2.0]], dtype=np.complex128)


def build_D(x, y) -> np.ndarray:
    """Bordered matrix [[I, x], [y^T, 0]]; det = -sum_i x_i y_i."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).ravel()
    if x.shape != y.shape or x.size == 0:
        raise ValidationError("x and y must be nonempty vectors of equal length")
    n = x.size
    d = np.eye(n + 1, dtype=np.complex128)
    d[:n, n] = x
    d[n, :n] = y
    d[n, n] = 0.0
    return d


def choose_x(c_tilde_prime, lambda_alpha, cfg: ToleranceConfig | None = None, depth: int = 0):
    """Pick the free entries of the bordered transform D.

    x_n is pinned to -1/(lambda*alpha); the free components walk a
    deterministic ladder (zero, unit vectors, seeded random draws) until
    |det D| clears det_tol at the natural scale.  Returns AllZeroSignal when
    the coupling block vanishes, which routes to the closed-form branch.
    """
    ct = as_matrix(c_tilde_prime, square=True, name="c_tilde_prime")
    la = as_scalar(lambda_alpha, "lambda_alpha")
    cfg = cfg or ToleranceConfig()
    if la == 0.0:
        raise ValidationError("lambda_alpha must be nonzero in this branch")
    n = ct.shape[0]
    if float(np.max(np.abs(ct))) <= _ALLZERO_CUT * abs(la):
        return AllZeroSignal()
    xn = -1.0 / la
    threshold = cfg.det_tol * max(1.0, frobenius(ct) / abs(la) ** 2)

    def evaluate(x_free: np.ndarray):
        x = np.concatenate([x_free, [xn]])
        y = ct @ x
        det_d = -complex(x @ y)
        # |det D| <= |x||y| always; a tiny ratio means D is nearly singular
        score = abs(det_d) / (1.0 + float(np.linalg.norm(x) * np.linalg.norm(y)))
        return x, det_d, score

    directions = []
    for i in range(n - 1):
        unit = np.zeros(n - 1, dtype=np.complex128)
        unit[i] = 1.0
        directions.append((f"unit:{i}", unit))
    if n > 1:
        rng = eigen._rng(cfg.seed, 0xD37, depth)
        for j in range(16):
            draw = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
            directions.append((f"random:{j}", draw))
    candidates = [("zero", np.zeros(n - 1, dtype=np.complex128))] + directions
    # when the coupling block is weak relative to lambda*alpha, only amplified
    # free components give a well-conditioned transform, so sweep magnitudes
    for magnitude in (1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8):
        for label, d in directions[: min(len(directions), n + 3)]:
            candidates.append((f"{label}*{magnitude:g}", magnitude * d))
    best = None
    for label, x_free in candidates:
        x, det_d, score = evaluate(x_free)
        if abs(det_d) >= threshold and score >= 1e-3:
            return ChosenX(x=x, det_d=det_d, strategy=label, score=score)
        if best is None or score > best.score:
            best = ChosenX(x=x, det_d=det_d, strategy=f"fallback:{label}", score=score)
    return best  # nonzero coupling: keep the best-conditioned draw


def _isotropic_upgrade(c: np.ndarray, pair: eigen.EigenPair, cfg: ToleranceConfig):
    """Isotropic eigenvector for pair.value when its eigenspace has one.

    A multi-dimensional eigenspace always contains isotropic directions
    (any nonzero quadratic form on C^k, k >= 2, has nontrivial zeros); one is
    extracted from the numerical null space of C - value*I.  Returns an
    upgraded EigenPair or None.
    """
    scale = frobenius(c)
    m = c - pair.value * np.eye(c.shape[0], dtype=np.complex128)
    _, s, vh = np.linalg.svd(m)
    theta = max(1e-11 * scale, 10.0 * pair.residual)
    k = int(np.sum(s <= theta))
    if k < 2:
        return None
    q = vh[c.shape[0] - k :, :].conj().T
    z = _isotropic_in_subspace(q.T @ q)
    if z is None:
        return None
    v = eigen._phase_canonical(q @ z / np.linalg.norm(q @ z))
    lam = complex(np.vdot(v, c @ v))
    res = float(np.linalg.norm(c @ v - lam * v))
    if res <= max(1e-10 * scale, 10.0 * pair.residual) and abs(bilinear(v, v)) <= 1e-12:
        return eigen.EigenPair(value=lam, vector=v, residual=res)
    return None


def _iso_route_is_sound(c: np.ndarray, pair: eigen.EigenPair, cfg: ToleranceConfig, depth: int) -> bool:
    """Dry-run the isotropic branch plan for this pair.

    Some coupling blocks (for instance a cross coupling with vanishing
    diagonal that is small but not negligible) admit no well-conditioned
    bordered transform at all; in that situation a different eigenvalue
    candidate is preferable.
    """
    a_prime, c_prime, ct_prime, _ = reduce_case_ii(c, pair, cfg)
    la = complex(c_prime[c.shape[0] - 2, c.shape[0] - 1])
    if abs(la) <= _LAMBDA_ZERO_CUT * frobenius(c):
        return True  # block-diagonal split, exact
    chosen = choose_x(ct_prime, la, cfg, depth)
    if isinstance(chosen, AllZeroSignal):
        return True
    if chosen.score >= 1e-3:
        return True
    return frobenius(ct_prime) <= 5e-9 * frobenius(c)  # assembly will drop it


def _recursion_eigenpair(c: np.ndarray, cfg: ToleranceConfig, depth: int) -> eigen.EigenPair:
    """Eigenpair for one recursion level.

    Walks the eigenvalue candidates largest modulus first.  A candidate is
    taken when it gives an exact route: a null vector (unitary split), an
    isotropic vector whose branch plan is well conditioned, or a safely
    non-isotropic vector.  Candidates in the ill-conditioned gaps are
    deferred; nearly nilpotent blocks always hold a clean candidate further
    down the list.
    """
    fallback_iso = None  # isotropic vector whose branch plan is awkward
    fallback_ete = None  # non-isotropic vector with e^T e in the ill-conditioned gap
    scale = frobenius(c)
    for ci, cand in enumerate(eigen._candidate_values(c, cfg)):
        got = eigen._inverse_iterate(c, cand, cfg, ci)
        if got is None:
            continue
        res, lam, v = got
        pair = eigen.EigenPair(value=lam, vector=eigen._phase_canonical(v), residual=res)
        ete = abs(bilinear(pair.vector, pair.vector))
        if abs(lam) <= _LAMBDA_ZERO_CUT * scale:
            # null vector: the unitary split takes any e^T e, but an isotropic
            # representative (when the null space holds one) keeps the branch exact
            if ete <= cfg.iso_tol:
                return pair
            return _isotropic_upgrade(c, pair, cfg) or pair
        candidates = [pair] if ete <= cfg.iso_tol else []
        if not candidates:
            upgraded = _isotropic_upgrade(c, pair, cfg)
            if upgraded is not None:
                candidates.append(upgraded)
        for iso_pair in candidates:
            if abs(iso_pair.value) <= _LAMBDA_ZERO_CUT * scale:
                return iso_pair
            if abs(iso_pair.value) >= _LAMBDA_DANGER * scale and _iso_route_is_sound(c, iso_pair, cfg, depth):
                return iso_pair
            if fallback_iso is None or abs(iso_pair.value) > abs(fallback_iso.value):
                fallback_iso = iso_pair
        if candidates:
            continue
        if ete >= _ETE_DANGER:
            return pair
        if fallback_ete is None or ete > abs(bilinear(fallback_ete.vector, fallback_ete.vector)):
            fallback_ete = pair
    if fallback_iso is not None:
        return fallback_iso
    if fallback_ete is not None:
        return fallback_ete
    raise eigen.ConvergenceError("inverse iteration stagnated for every eigenvalue candidate")


def _isotropic_in_subspace(s: np.ndarray):
    """Unit z with z^T S z ~ 0 for symmetric S (k >= 2); None if unavailable."""
    k = s.shape[0]
    if k < 2:
        return None
    scale = float(np.max(np.abs(s)))
    z = np.zeros(k, dtype=np.complex128)
    if scale == 0.0:
        z[0] = 1.0
        return z
    diag = np.abs(np.diag(s))
    j = int(np.argmin(diag))
    if diag[j] <= 1e-14 * scale:
        z[j] = 1.0
        return z
    i0 = int(np.argmax(diag))
    others = sorted((i for i in range(k) if i != i0), key=lambda i: -diag[i])
    for i1 in others:
        a, b, c = s[i0, i0], s[i0, i1], s[i1, i1]
        if abs(c) <= 1e-14 * scale:
            if abs(b) <= 1e-14 * scale:
                continue
            t = -a / (2.0 * b)
        else:
            disc = complex(np.sqrt(np.complex128(b * b - a * c)))
            roots = [(-b + disc) / c, (-b - disc) / c]
            t = min(roots, key=abs)
        z[:] = 0.0
        z[i0] = 1.0
        z[i1] = t
        return z / np.linalg.norm(z)
    return None


def dispatch_case(c, pair: eigen.EigenPair, cfg: ToleranceConfig | None = None) -> str:
    """Branch taken by the recursion for the given eigenpair."""
    c = as_matrix(c, square=True, name="C")
    cfg = cfg or ToleranceConfig()
    e = pair.vector
    norm2 = float(np.vdot(e, e).real)
    if abs(bilinear(e, e)) > cfg.iso_tol * norm2:
        return BRANCH_CASE_I
    _, c_prime, ct_prime, _ = reduce_case_ii(c, pair, cfg)
    m = c.shape[0]
    la = complex(c_prime[m - 2, m - 1])
    if abs(la) <= _LAMBDA_ZERO_CUT * frobenius(c):
        return BRANCH_CASE_II_LAMBDA_ZERO
    if isinstance(choose_x(ct_prime, la, cfg), AllZeroSignal):
        return BRANCH_CASE_II_DEGENERATE
    return BRANCH_CASE_II_GENERAL


def reduce_case_i(c, pair: eigen.EigenPair, cfg: ToleranceConfig | None = None):
    """Congruence data for the non-isotropic branch.

    Returns (A, c_tilde, mu) with A = [complement columns | e/sqrt(e^T e)],
    A^T C A = blockdiag(c_tilde, mu) up to rounding, and mu the measured
    corner entry e^T C e after the rescale.
    """
    c = as_matrix(c, square=True, name="C")
    cfg = cfg or ToleranceConfig()
    e = eigen._phase_canonical(np.asarray(pair.vector, dtype=np.complex128))
    ete = complex(np.dot(e, e))
    if ete == 0.0:
        raise ValidationError("eigenvector is isotropic; wrong branch")
    e1 = e / principal_sqrt(ete)
    w = complement_basis(e)
    a = np.hstack([w, e1.reshape(-1, 1)])
    ct = w.T @ c @ w
    ct = 0.5 * (ct + ct.T)
    mu = complex(e1 @ (c @ e1))
    return a, ct, mu


def assemble_case_i(v_tilde, mu, a) -> np.ndarray:
    """V = (B A^{-1})^T via the solve A^T V = B^T, B = blockdiag(v_tilde^T, sqrt(mu))."""
    v_tilde = as_matrix(v_tilde, square=True, name="v_tilde")
    a = as_matrix(a, square=True, name="A")
    mu = as_scalar(mu, "mu")
    n = v_tilde.shape[0]
    if a.shape[0] != n + 1:
        raise ValidationError(f"A must be {(n + 1, n + 1)}, got {a.shape}")
    b = np.zeros((n + 1, n + 1), dtype=np.complex128)
    b[:n, :n] = v_tilde.T
    b[n, n] = principal_sqrt(mu)
    return solve_linear(a.T, b.T)


def reduce_case_ii(c, pair: eigen.EigenPair, cfg: ToleranceConfig | None = None):
    """Congruence data for the isotropic branch.

    Returns (A', C', c_tilde_prime, alpha) where A' = [basis of the joint
    complement of {e, conj(e)} | conj(e) | e] is unitary, C' = A'^T C A' has
    its last row and column zero except the antidiagonal corner entries
    lambda*alpha, and c_tilde_prime is the leading symmetric block.
    """
    c = as_matrix(c, square=True, name="C")
    cfg = cfg or ToleranceConfig()
    e = eigen._phase_canonical(np.asarray(pair.vector, dtype=np.complex128))
    e = e / np.linalg.norm(e)
    if abs(complex(np.dot(e, e))) > cfg.iso_tol:
        raise ValidationError("eigenvector is not isotropic; wrong branch")
    vprime = complement_basis_within(e, iso_tol=cfg.iso_tol)
    a_prime = np.hstack([vprime, e.conj().reshape(-1, 1), e.reshape(-1, 1)])
    c_prime = a_prime.T @ c @ a_prime
    c_prime = 0.5 * (c_prime + c_prime.T)
    m = c.shape[0]
    ct_prime = c_prime[: m - 1, : m - 1].copy()
    alpha = float(np.vdot(e, e).real)
    return a_prime, c_prime, ct_prime, alpha


def assemble_case_ii(c, a_prime, c_tilde_prime, lambda_alpha, cfg: ToleranceConfig | None = None,
                     depth: int = 0, _levels: list | None = None) -> np.ndarray:
    """Resolve the isotropic sub-branches and assemble V for this level."""
    c = as_matrix(c, square=True, name="C")
    a_prime = as_matrix(a_prime, square=True, name="A_prime")
    ct_prime = as_matrix(c_tilde_prime, square=True, name="c_tilde_prime")
    la = as_scalar(lambda_alpha, "lambda_alpha")
    cfg = cfg or ToleranceConfig()
    levels = [] if _levels is None else _levels
    m = c.shape[0]
    if abs(la) <= _LAMBDA_ZERO_CUT * frobenius(c):
        levels.append(
            LevelRecord(dim=m, branch=BRANCH_CASE_II_LAMBDA_ZERO, value=la, ete=0.0, alpha=1.0)
        )
        vt = _factor_recursive(ct_prime, cfg, depth + 1, levels)
        b = np.zeros((m, m), dtype=np.complex128)
        b[: m - 1, : m - 1] = vt.T
        return solve_linear(a_prime.T, b.T)
    chosen = choose_x(ct_prime, la, cfg, depth)
    # go through the closed form when the coupling block vanishes, and also
    # when it is negligible yet admits no well-conditioned bordered transform
    # (dropping it then costs at most its own norm, far under verify_tol)
    droppable = (
        not isinstance(chosen, AllZeroSignal)
        and chosen.score < 1e-3
        and frobenius(ct_prime) <= 5e-9 * frobenius(c)
    )
    if isinstance(chosen, AllZeroSignal) or droppable:
        levels.append(
            LevelRecord(dim=m, branch=BRANCH_CASE_II_DEGENERATE, value=la, ete=0.0, alpha=1.0,
                        x_strategy="allzero" if isinstance(chosen, AllZeroSignal) else "dropped")
        )
        core = factor_antidiagonal(la)
        b = np.zeros((m, m), dtype=np.complex128)
        b[m - 2 :, m - 2 :] = core
        return solve_linear(a_prime.T, b.T)
    levels.append(
        LevelRecord(dim=m, branch=BRANCH_CASE_II_GENERAL, value=la, ete=0.0, alpha=1.0,
                    det_d=chosen.det_d, x_strategy=chosen.strategy)
    )
    x = chosen.x
    y = ct_prime @ x
    d = build_D(x, y)
    a = a_prime @ d
    u = np.zeros(m - 1, dtype=np.complex128)
    u[-1] = la
    ct = ct_prime + np.outer(y, u) + np.outer(u, y)
    ct = 0.5 * (ct + ct.T)
    vt = _factor_recursive(ct, cfg, depth + 1, levels)
    b = np.zeros((m, m), dtype=np.complex128)
    b[: m - 1, : m - 1] = vt.T
    b[m - 1, m - 1] = principal_sqrt(complex(x @ y))  # lambda'^2 = sum x_i y_i = -det D
    return solve_linear(a.T, b.T)


def _null_split(c: np.ndarray, pair: eigen.EigenPair, cfg: ToleranceConfig,
                depth: int, levels: list) -> np.ndarray:
    """Split off a null eigenvector with a unitary congruence.

    For lambda = 0 the blocking identity w^T C e = lambda w^T e holds for
    every w, so the basis [sesquilinear complement | e] works regardless of
    e^T e and keeps the transform perfectly conditioned.
    """
    m = c.shape[0]
    e = pair.vector
    ete = complex(np.dot(e, e))
    u = _reflector(e)
    w = u[:, 1:]
    basis = np.hstack([w, e.reshape(-1, 1)])
    ct = w.T @ c @ w
    ct = 0.5 * (ct + ct.T)
    mu = complex(e @ (c @ e))
    branch = BRANCH_CASE_II_LAMBDA_ZERO if abs(ete) <= cfg.iso_tol else BRANCH_CASE_I
    levels.append(LevelRecord(dim=m, branch=branch, value=pair.value, ete=ete,
                              alpha=float(np.vdot(e, e).real)))
    vt = _factor_recursive(ct, cfg, depth + 1, levels)
    b = np.zeros((m, m), dtype=np.complex128)
    b[: m - 1, : m - 1] = vt.T
    b[m - 1, m - 1] = principal_sqrt(mu)
    return solve_linear(basis.T, b.T)


def _factor_recursive(c: np.ndarray, cfg: ToleranceConfig, depth: int, levels: list) -> np.ndarray:
    m = c.shape[0]
    norm = frobenius(c)
    if norm == 0.0:
        levels.append(LevelRecord(dim=m, branch=BRANCH_ZERO_MATRIX))
        return np.zeros((m, m), dtype=np.complex128)
    if m == 1:
        value = complex(c[0, 0])
        levels.append(LevelRecord(dim=1, branch=BRANCH_BASE, value=value))
        return np.array([[principal_sqrt(value)]], dtype=np.complex128)
    # work at unit norm: the bordered transform of the isotropic branch uses
    # x_n = -1/(lambda*alpha), which is only well-scaled when |C| ~ 1
    if abs(np.log10(norm)) > 1.0:
        v = _factor_level(c / norm, cfg, depth, levels, vscale=norm)
        return v * np.sqrt(norm)
    return _factor_level(c, cfg, depth, levels)


def _factor_level(c: np.ndarray, cfg: ToleranceConfig, depth: int, levels: list,
                  vscale: float = 1.0) -> np.ndarray:
    m = c.shape[0]
    pair = _recursion_eigenpair(c, cfg, depth)
    if vscale != 1.0:  # record eigenvalues in the caller's units
        pair = eigen.EigenPair(value=pair.value * vscale, vector=pair.vector,
                               residual=pair.residual * vscale)
        cut = _LAMBDA_ZERO_CUT * frobenius(c) * vscale
    else:
        cut = _LAMBDA_ZERO_CUT * frobenius(c)
    if abs(pair.value) <= cut:
        return _null_split(c, pair, cfg, depth, levels)
    ete = complex(np.dot(pair.vector, pair.vector))
    if abs(ete) > cfg.iso_tol:
        a, ct, mu = reduce_case_i(c, pair, cfg)
        levels.append(LevelRecord(dim=m, branch=BRANCH_CASE_I, value=pair.value, ete=ete))
        vt = _factor_recursive(ct, cfg, depth + 1, levels)
        return assemble_case_i(vt, mu, a)
    a_prime, c_prime, ct_prime, alpha = reduce_case_ii(c, pair, cfg)
    la = complex(c_prime[m - 2, m - 1])  # measured corner entry lambda*alpha
    return assemble_case_ii(c, a_prime, ct_prime, la, cfg, depth, levels)


def factor_symmetric(c, cfg: ToleranceConfig | None = None) -> FactorizationResult:
    """Factor a complex symmetric matrix as C = V V^T.

    The input may deviate from exact symmetry by at most 1e-12 * |C|_F
    (it is symmetrized once); larger defects raise NotSymmetricError.
    """
    c = as_matrix(c, square=True, name="C")
    cfg = cfg or ToleranceConfig()
    norm_c = frobenius(c)
    defect = frobenius(c - c.T)
    if defect > _SYM_BAND * max(norm_c, np.finfo(np.float64).tiny):
        raise NotSymmetricError(f"matrix is not symmetric: |C - C^T| = {defect:.3g}")
    c = 0.5 * (c + c.T)
    levels: list = []
    v = _factor_recursive(c, cfg, 0, levels)
    check = verify_factorization(c, v, cfg)
    return FactorizationResult(
        V=v,
        residual=check.residual,
        relative_residual=check.relative_residual,
        trace=RecursionTrace(levels=tuple(levels)),
    )
