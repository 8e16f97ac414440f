"""Correlation-matrix data model and symplectic linear algebra for Gaussian states.

A zero-mean Gaussian state of n modes is described by its real symmetric
2n x 2n correlation matrix A, normalized so that the vacuum has A = I.  The
basis ordering is all positions first, then all momenta: (q_1..q_n, p_1..p_n).
Physical states satisfy A + iJ >= 0, where J is the standard symplectic form.

This module provides validation, the Williamson normal form A = S^T D S, the
Euler (Bloch-Messiah) factorization of symplectic matrices, the square-root
map Phi, and builders for thermal and squeezed thermal states.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.linalg import polar

from .errors import (
    ConditioningError,
    DecompositionError,
    DefinitenessError,
    DimensionError,
    GaussianStateError,
    NumericalConsistencyError,
    SymmetryError,
    SymplecticityError,
    UncertaintyViolationError,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "SymplecticForm",
    "CorrelationMatrix",
    "WilliamsonDecomposition",
    "EulerDecomposition",
    "standard_form",
    "validate",
    "is_pure",
    "purity",
    "symplectic_eigenvalues",
    "williamson",
    "euler_decompose",
    "phi",
    "tensor",
    "conjugate",
    "thermal_state",
    "squeezed_thermal_state",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the package.

    sym, recon, and imag are relative (scaled by max(1, largest entry) of the
    matrix in question); the others are absolute.

    Attributes:
        sym: symmetry deviation allowed in inputs.
        eig: slack below 1 allowed for symplectic eigenvalues of valid states.
        pure: half-width of the purity window around d = 1.
        symp: deviation allowed in S^T J S = J checks.
        recon: decomposition reconstruction residual bound.
        imag: imaginary residue bound for intermediates that must be real.
        fid: fidelity values within this of 1 are clamped to exactly 1.
        xcheck: formula-versus-formula agreement bound.
        cond_max: largest accepted condition number of an input matrix.
    """

    sym: float = 1e-10
    eig: float = 1e-9
    pure: float = 1e-8
    symp: float = 1e-9
    recon: float = 1e-8
    imag: float = 1e-8
    fid: float = 1e-9
    xcheck: float = 1e-8
    cond_max: float = 1e12

    @classmethod
    def from_dict(cls, overrides: dict) -> "Tolerances":
        """Build tolerances from a dict of overrides; unknown keys raise ValueError."""
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(overrides) - names
        if unknown:
            raise ValueError(f"unknown tolerance names: {sorted(unknown)}")
        return dataclasses.replace(cls(), **{k: float(v) for k, v in overrides.items()})


DEFAULT_TOLERANCES = Tolerances()


def _tol(tol: Tolerances | None) -> Tolerances:
    return DEFAULT_TOLERANCES if tol is None else tol


@dataclass(frozen=True)
class SymplecticForm:
    """The standard symplectic form J = [[0, I], [-I, 0]] on n modes."""

    n: int
    j: np.ndarray


@dataclass(frozen=True)
class CorrelationMatrix:
    """A validated correlation matrix of an n-mode zero-mean Gaussian state."""

    n: int
    a: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Williamson normal form A = S^T D S with D = diag(d) oplus diag(d).

    Attributes:
        s: real symplectic matrix.
        d: symplectic eigenvalues, sorted descending, each >= 1 for valid states.
    """

    s: np.ndarray
    d: np.ndarray

    @property
    def d_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([self.d, self.d]))


@dataclass(frozen=True)
class EulerDecomposition:
    """Euler factorization S = O M O' with O, O' orthogonal symplectic.

    M = diag(m) oplus diag(m)^-1 with m sorted descending, each m_j >= 1.
    """

    o: np.ndarray
    m: np.ndarray
    o_prime: np.ndarray

    @property
    def m_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([self.m, 1.0 / self.m]))


def standard_form(n: int) -> SymplecticForm:
    """Return the symplectic form for n modes in (q_1..q_n, p_1..p_n) ordering."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    j = np.block([[zero, eye], [-eye, zero]])
    return SymplecticForm(n=int(n), j=j)


def _as_array(a) -> np.ndarray:
    if isinstance(a, CorrelationMatrix):
        return a.a
    arr = np.asarray(a, dtype=float)
    return arr


def _mode_count(a: np.ndarray) -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] % 2 != 0 or a.shape[0] < 2:
        raise DimensionError(
            f"correlation matrices have even dimension 2n >= 2, got {a.shape[0]}"
        )
    return a.shape[0] // 2


def validate(a, tol: Tolerances | None = None) -> CorrelationMatrix:
    """Check that a matrix is a physical correlation matrix.

    The matrix must be real symmetric, positive definite, acceptably
    conditioned, and satisfy the Heisenberg constraint A + iJ >= 0 (all
    symplectic eigenvalues >= 1 - tol.eig).

    Args:
        a: square 2n x 2n array-like, or an already validated CorrelationMatrix
            (returned unchanged).
        tol: tolerance overrides.

    Returns:
        CorrelationMatrix wrapping the symmetrized input.

    Raises:
        DimensionError: wrong shape.
        SymmetryError: asymmetric beyond tol.sym.
        DefinitenessError: not positive definite.
        ConditioningError: condition number above tol.cond_max.
        UncertaintyViolationError: a symplectic eigenvalue falls below 1 - tol.eig.
    """
    if isinstance(a, CorrelationMatrix):
        return a
    t = _tol(tol)
    arr = np.asarray(a, dtype=float)
    n = _mode_count(arr)
    if not np.all(np.isfinite(arr)):
        raise GaussianStateError("correlation matrix has non-finite entries")
    scale = max(1.0, float(np.abs(arr).max()))
    asym = float(np.abs(arr - arr.T).max())
    if asym > t.sym * scale:
        raise SymmetryError(
            f"matrix is not symmetric: max |A - A^T| = {asym:.3e} "
            f"exceeds {t.sym:.1e} * {scale:.3e}"
        )
    arr = (arr + arr.T) / 2.0
    w = np.linalg.eigvalsh(arr)
    if w[0] <= 0.0:
        raise DefinitenessError(
            f"matrix is not positive definite: smallest eigenvalue {w[0]:.3e}"
        )
    cond = float(w[-1] / w[0])
    if cond > t.cond_max:
        raise ConditioningError(
            f"condition number {cond:.3e} exceeds {t.cond_max:.1e}; "
            "results would not be reliable in double precision"
        )
    j = standard_form(n).j
    h = arr.astype(complex) + 1j * j
    hmin = float(np.linalg.eigvalsh(h)[0])
    if hmin < -t.eig:
        raise UncertaintyViolationError(
            f"A + iJ has minimum eigenvalue {hmin:.3e} < -{t.eig:.1e}; "
            "the uncertainty relation is violated"
        )
    out = arr.copy()
    out.setflags(write=False)
    return CorrelationMatrix(n=n, a=out)


def _sqrtm_psd(a: np.ndarray) -> np.ndarray:
    """Principal square root of a symmetric positive semidefinite matrix."""
    w, v = np.linalg.eigh(a)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.T


def symplectic_eigenvalues(a, tol: Tolerances | None = None) -> np.ndarray:
    """Symplectic eigenvalues of a correlation matrix, sorted descending.

    Computed as the positive eigenvalues of the Hermitian matrix
    i A^{1/2} J A^{1/2}, which equal the moduli of the eigenvalues of iJA.
    """
    cm = validate(a, tol)
    j = standard_form(cm.n).j
    w = _sqrtm_psd(cm.a)
    h = 1j * (w @ j @ w)
    ev = np.linalg.eigvalsh(h)
    return ev[cm.n:][::-1].copy()


def is_pure(a, tol: Tolerances | None = None) -> bool:
    """True iff the state is pure: every symplectic eigenvalue within tol.pure of 1."""
    t = _tol(tol)
    d = symplectic_eigenvalues(a, tol)
    return bool(np.abs(d - 1.0).max() <= t.pure)


def purity(a, tol: Tolerances | None = None) -> float:
    """The purity Tr rho^2 = det(A)^{-1/2}, in (0, 1]."""
    cm = validate(a, tol)
    sign, logdet = np.linalg.slogdet(cm.a)
    if sign <= 0:
        raise DefinitenessError("determinant of a correlation matrix must be positive")
    return float(np.exp(-0.5 * logdet))


def _canonical_eigenbasis(vecs: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis for the +d eigenvectors.

    Within each exactly degenerate cluster the basis returned by the
    eigensolver is arbitrary; rebuild it by Gram-Schmidt over projected
    standard basis vectors in index order, then fix each vector's phase by
    making its largest-modulus entry real and positive.
    """
    out = np.array(vecs, dtype=complex)
    n = len(d)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and (d[start] - d[stop]) <= 1e-10 * max(1.0, d[start]):
            stop += 1
        k = stop - start
        if k > 1:
            block = out[:, start:stop]
            proj = block @ block.conj().T
            cols: list[np.ndarray] = []
            for i in range(proj.shape[0]):
                w = proj[:, i].copy()
                for c in cols:
                    w -= c * (c.conj() @ w)
                nw = np.linalg.norm(w)
                if nw > 1e-6:
                    cols.append(w / nw)
                if len(cols) == k:
                    break
            if len(cols) == k:
                out[:, start:stop] = np.column_stack(cols)
        start = stop
    for col in range(n):
        v = out[:, col]
        i = int(np.argmax(np.abs(v)))
        ph = v[i] / abs(v[i])
        out[:, col] = v * np.conj(ph)
    return out


def williamson(a, tol: Tolerances | None = None) -> WilliamsonDecomposition:
    """Williamson normal form of a correlation matrix.

    Finds a real symplectic S and symplectic eigenvalues d with
    A = S^T (diag(d) oplus diag(d)) S.  The construction diagonalizes the
    Hermitian matrix i A^{1/2} J A^{1/2}: for each positive eigenvalue d_j
    with unit eigenvector v_j = (x_j + i y_j)/sqrt(2), the real and imaginary
    parts assemble an orthogonal O = [X | -Y], and

        S = D^{-1/2} O^T A^{1/2}.

    Args:
        a: correlation matrix (array-like or CorrelationMatrix).
        tol: tolerance overrides.

    Returns:
        WilliamsonDecomposition with d sorted descending.

    Raises:
        DecompositionError: reconstruction or symplecticity residual too large.
    """
    t = _tol(tol)
    cm = validate(a, tol)
    n = cm.n
    j = standard_form(n).j
    w = _sqrtm_psd(cm.a)
    h = 1j * (w @ j @ w)
    ev, vec = np.linalg.eigh(h)
    d = ev[n:][::-1].copy()
    vpos = vec[:, n:][:, ::-1]
    vpos = _canonical_eigenbasis(vpos, d)
    x = np.sqrt(2.0) * vpos.real
    y = np.sqrt(2.0) * vpos.imag
    o = np.hstack([x, -y])
    inv_sqrt_d = 1.0 / np.sqrt(np.concatenate([d, d]))
    s = (inv_sqrt_d[:, None] * o.T) @ w

    d_full = np.concatenate([d, d])
    recon = float(np.abs(s.T @ (d_full[:, None] * s) - cm.a).max())
    scale = max(1.0, float(np.abs(cm.a).max()))
    if recon > t.recon * scale:
        raise DecompositionError(
            f"Williamson reconstruction residual {recon:.3e} exceeds "
            f"{t.recon:.1e} * {scale:.3e}"
        )
    symp = float(np.abs(s.T @ j @ s - j).max())
    if symp > t.symp:
        raise DecompositionError(
            f"Williamson output fails the symplectic check: residual {symp:.3e}"
        )
    return WilliamsonDecomposition(s=s, d=d)


def _check_symplectic(s: np.ndarray, t: Tolerances) -> tuple[int, np.ndarray]:
    s = np.asarray(s, dtype=float)
    n = _mode_count(s)
    j = standard_form(n).j
    resid = float(np.abs(s.T @ j @ s - j).max())
    if resid > t.symp:
        raise SymplecticityError(
            f"matrix is not symplectic: max |S^T J S - J| = {resid:.3e}"
        )
    return n, j


def euler_decompose(s, tol: Tolerances | None = None) -> EulerDecomposition:
    """Euler (Bloch-Messiah) factorization of a symplectic matrix.

    Writes S = O M O' with O, O' orthogonal symplectic and
    M = diag(m) oplus diag(m)^-1, m_j >= 1 sorted descending.  The factors
    come from the polar decomposition S = U P: the eigenvalues of the
    symmetric positive factor P pair up as (m, 1/m), and the eigenvectors u_j
    of the m-side pair with -J u_j to span an invariant plane each.  Within
    the m = 1 cluster the pairing is completed by Gram-Schmidt in the
    J-invariant complement.

    Raises:
        SymplecticityError: input fails S^T J S = J.
        DecompositionError: pairing or reconstruction failed.
    """
    t = _tol(tol)
    s = np.asarray(s, dtype=float)
    n, j = _check_symplectic(s, t)
    u_p, p = polar(s, side="right")
    w, v = np.linalg.eigh(p)
    order = np.argsort(w)[::-1][:n]
    cols: list[np.ndarray] = []
    for i in order:
        vec = v[:, i].copy()
        for c in cols:
            vec -= c * (c @ vec)
            jc = -(j @ c)
            vec -= jc * (jc @ vec)
        nv = np.linalg.norm(vec)
        if nv < 1e-8:
            raise DecompositionError(
                "Euler pairing failed: candidate eigenvector collapsed under "
                "Gram-Schmidt in the J-invariant complement"
            )
        cols.append(vec / nv)
    u = np.column_stack(cols)
    m = np.einsum("ij,jk,ki->i", u.T, p, u)
    perm = np.argsort(m)[::-1]
    u = u[:, perm]
    m = np.maximum(m[perm], 1.0)
    obar = np.hstack([u, -(j @ u)])
    o = u_p @ obar
    o_prime = obar.T

    m_full = np.concatenate([m, 1.0 / m])
    recon = float(np.abs((o * m_full[None, :]) @ o_prime - s).max())
    scale = max(1.0, float(np.abs(s).max()))
    ortho = max(
        float(np.abs(o.T @ o - np.eye(2 * n)).max()),
        float(np.abs(o_prime.T @ o_prime - np.eye(2 * n)).max()),
    )
    symp = max(
        float(np.abs(o.T @ j @ o - j).max()),
        float(np.abs(o_prime.T @ j @ o_prime - j).max()),
    )
    if recon > t.recon * scale or ortho > t.symp or symp > t.symp:
        raise DecompositionError(
            f"Euler factorization residuals too large: reconstruction {recon:.3e}, "
            f"orthogonality {ortho:.3e}, symplecticity {symp:.3e}"
        )
    return EulerDecomposition(o=o, m=m, o_prime=o_prime)


def phi(a, tol: Tolerances | None = None) -> tuple[np.ndarray, float]:
    """The square-root-state map Phi(A) = A (I + sqrt(I + (JA)^-2)).

    Phi(A) is the correlation matrix of the unnormalized square root of the
    Gaussian density operator with correlation matrix A.  It solves

        Phi - J Phi^-1 J = 2 A,

    and is evaluated through the Williamson form as
    Phi = A + S^T sqrt(D^2 - I) S, which is exact and avoids inverting JA.

    Returns:
        (Phi, K) where K = det(Phi)^{1/4} is the square-root normalization.
    """
    t = _tol(tol)
    cm = validate(a, tol)
    dec = williamson(cm, tol)
    x = dec.d * dec.d - 1.0
    if np.any(x < -t.pure):
        raise NumericalConsistencyError(
            f"d^2 - 1 = {x.min():.3e} is negative beyond the purity tolerance"
        )
    # Values inside the purity window are roundoff around an exactly pure
    # mode; snapping them to zero avoids the square root amplifying noise of
    # size eps into sqrt(eps).
    x[np.abs(x) <= t.pure] = 0.0
    root = np.sqrt(np.concatenate([x, x]))
    out = cm.a + dec.s.T @ (root[:, None] * dec.s)
    out = (out + out.T) / 2.0
    g = dec.d + np.sqrt(x)
    k = float(np.exp(0.5 * np.sum(np.log(g))))
    return out, k


def tensor(a1, a2, tol: Tolerances | None = None) -> CorrelationMatrix:
    """Correlation matrix of a product state, in standard (q..q, p..p) ordering."""
    c1 = validate(a1, tol)
    c2 = validate(a2, tol)
    n1, n2 = c1.n, c2.n
    n = n1 + n2
    out = np.zeros((2 * n, 2 * n))
    for bi in range(2):
        for bj in range(2):
            out[bi * n: bi * n + n1, bj * n: bj * n + n1] = c1.a[
                bi * n1: (bi + 1) * n1, bj * n1: (bj + 1) * n1
            ]
            out[bi * n + n1: (bi + 1) * n, bj * n + n1: (bj + 1) * n] = c2.a[
                bi * n2: (bi + 1) * n2, bj * n2: (bj + 1) * n2
            ]
    return validate(out, tol)


def conjugate(a, s, tol: Tolerances | None = None) -> CorrelationMatrix:
    """Correlation matrix after the Gaussian unitary with phase-space action S.

    The state transforms as A -> S^T A S.
    """
    t = _tol(tol)
    cm = validate(a, tol)
    s = np.asarray(s, dtype=float)
    n, _ = _check_symplectic(s, t)
    if n != cm.n:
        raise DimensionError(
            f"symplectic matrix is for {n} modes, state has {cm.n}"
        )
    return validate(s.T @ cm.a @ s, tol)


def thermal_state(nbar, tol: Tolerances | None = None) -> CorrelationMatrix:
    """Thermal state with mean photon numbers nbar: A = diag(2 nbar + 1) per quadrature."""
    nb = np.atleast_1d(np.asarray(nbar, dtype=float))
    if nb.ndim != 1 or nb.size < 1:
        raise DimensionError("nbar must be a scalar or a 1-d sequence")
    if np.any(nb < 0):
        raise GaussianStateError(f"mean photon numbers must be >= 0, got {nb}")
    diag = 2.0 * nb + 1.0
    return validate(np.diag(np.concatenate([diag, diag])), tol)


def squeezed_thermal_state(
    nbar, r, theta=None, tol: Tolerances | None = None
) -> CorrelationMatrix:
    """Per-mode squeezed thermal state.

    Mode j has A_j = R(theta_j)^T diag((2 nbar_j + 1) e^{2 r_j},
    (2 nbar_j + 1) e^{-2 r_j}) R(theta_j) with the rotation
    R(t) = [[cos t, sin t], [-sin t, cos t]] acting on (q_j, p_j); the modes
    are assembled in standard ordering.

    Args:
        nbar: mean photon numbers, all >= 0.
        r: squeezing magnitudes (sign selects the squeezed quadrature).
        theta: squeezing phases in radians; defaults to zero.
        tol: tolerance overrides.
    """
    nb = np.atleast_1d(np.asarray(nbar, dtype=float))
    rv = np.atleast_1d(np.asarray(r, dtype=float))
    tv = (
        np.zeros_like(nb)
        if theta is None
        else np.atleast_1d(np.asarray(theta, dtype=float))
    )
    if not (nb.shape == rv.shape == tv.shape) or nb.ndim != 1:
        raise DimensionError(
            f"nbar, r, theta must be 1-d and the same length, got shapes "
            f"{nb.shape}, {rv.shape}, {tv.shape}"
        )
    if np.any(nb < 0):
        raise GaussianStateError(f"mean photon numbers must be >= 0, got {nb}")
    n = nb.size
    qq = np.zeros(n)
    pp = np.zeros(n)
    qp = np.zeros(n)
    for k in range(n):
        dq = (2.0 * nb[k] + 1.0) * np.exp(2.0 * rv[k])
        dp = (2.0 * nb[k] + 1.0) * np.exp(-2.0 * rv[k])
        c, s = np.cos(tv[k]), np.sin(tv[k])
        rot = np.array([[c, s], [-s, c]])
        block = rot.T @ np.diag([dq, dp]) @ rot
        qq[k], pp[k], qp[k] = block[0, 0], block[1, 1], block[0, 1]
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = np.diag(qq)
    out[n:, n:] = np.diag(pp)
    out[:n, n:] = np.diag(qp)
    out[n:, :n] = np.diag(qp)
    return validate(out, tol)
