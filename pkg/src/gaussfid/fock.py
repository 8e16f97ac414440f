"""Truncated Fock-space oracle for brute-force cross checks.

This module builds explicit density matrices for Gaussian states in a photon
number basis truncated at a cutoff, then evaluates fidelities and operator
overlaps by direct linear algebra.  It exists to validate the closed formulas
in :mod:`gaussfid.fidelity` against an independent construction; it is not a
simulation tool.  Everything here scales polynomially in cutoff**modes, so
the builders enforce a hard envelope: at most two modes, cutoff between 2 and
100, symplectic eigenvalues at most 11, and squeezing factors at most e^1.5.

The construction goes through the normal form of the correlation matrix: a
thermal seed diagonal in the number basis, per-mode squeeze unitaries, and
passive (photon-number preserving) unitaries assembled sector by sector in
total photon number.  Every factor is exactly unitary on the truncated space,
so traces are preserved and the only approximation is the thermal tail beyond
the cutoff.  When the correlation matrix has no position-momentum cross
correlations the whole pipeline stays in real arithmetic, which halves memory
at large cutoffs and keeps the result a real symmetric matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, logm, polar

from .core import (
    Tolerances,
    _sqrtm_psd,
    euler_decompose,
    validate,
    williamson,
)
from .errors import (
    DimensionError,
    GaussianStateError,
    NumericalConsistencyError,
    SymmetryError,
    TruncationError,
)

__all__ = [
    "MAX_MODES",
    "MAX_CUTOFF",
    "MAX_SYMPLECTIC_EIGENVALUE",
    "MAX_SQUEEZE",
    "FockDensityMatrix",
    "ladder",
    "thermal_density",
    "squeeze_unitary",
    "unitarity_defect",
    "gaussian_density",
    "second_moments",
    "uhlmann_fidelity_numeric",
    "trace_product_numeric",
]

MAX_MODES = 2
MAX_CUTOFF = 100
MAX_SYMPLECTIC_EIGENVALUE = 11.0
MAX_SQUEEZE = 1.5

_NEGATIVITY_FLOOR = 1e-10
_ENVELOPE_SLACK = 1e-9


@dataclass(frozen=True)
class FockDensityMatrix:
    """A density matrix in the truncated number basis.

    Attributes:
        modes: number of modes n.
        cutoff: Fock levels kept per mode, so rho is cutoff**n square.
        rho: the matrix itself, real or complex, Hermitian.
        deficit: probability weight lost to truncation, 1 - Tr rho.
    """

    modes: int
    cutoff: int
    rho: np.ndarray
    deficit: float

    def __post_init__(self) -> None:
        dim = self.cutoff ** self.modes
        if self.rho.shape != (dim, dim):
            raise DimensionError(
                f"density matrix shape {self.rho.shape} does not match "
                f"{self.modes} modes at cutoff {self.cutoff}"
            )
        scale = max(1e-300, float(np.abs(self.rho).max()))
        defect = float(np.abs(self.rho - self.rho.conj().T).max())
        if defect > 1e-12 * scale:
            raise SymmetryError(
                f"density matrix is not Hermitian: defect {defect:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.rho)))


def _check_cutoff(cutoff: int) -> int:
    if not isinstance(cutoff, (int, np.integer)):
        raise DimensionError(f"cutoff must be an integer, got {cutoff!r}")
    if cutoff < 2:
        raise DimensionError(f"cutoff must be at least 2, got {cutoff}")
    if cutoff > MAX_CUTOFF:
        raise TruncationError(
            f"cutoff {cutoff} exceeds the supported maximum {MAX_CUTOFF}"
        )
    return int(cutoff)


def ladder(cutoff: int) -> np.ndarray:
    """The annihilation operator on a single mode, truncated at cutoff levels."""
    n = _check_cutoff(cutoff)
    a = np.zeros((n, n))
    k = np.arange(1, n)
    a[k - 1, k] = np.sqrt(k)
    return a


def _thermal_probabilities(nbar: float, cutoff: int) -> np.ndarray:
    k = np.arange(cutoff)
    if nbar <= 0.0:
        p = np.zeros(cutoff)
        p[0] = 1.0
        return p
    return np.exp(k * np.log(nbar) - (k + 1) * np.log(nbar + 1.0))


def thermal_density(nbar: float, cutoff: int) -> FockDensityMatrix:
    """Single-mode thermal state, diagonal with p_k = nbar^k / (nbar+1)^(k+1).

    The deficit field reports the geometric tail beyond the cutoff.
    """
    n = _check_cutoff(cutoff)
    nbar = float(nbar)
    if nbar < 0.0:
        raise GaussianStateError(f"mean photon number must be >= 0, got {nbar}")
    p = _thermal_probabilities(nbar, n)
    return FockDensityMatrix(
        modes=1, cutoff=n, rho=np.diag(p), deficit=float(1.0 - p.sum())
    )


def squeeze_unitary(r: float, theta: float, cutoff: int) -> np.ndarray:
    """Single-mode squeeze operator exp((conj(xi) a^2 - xi a^dag^2)/2), xi = r e^{i theta}.

    Exactly unitary on the truncated space since the truncated generator is
    anti-Hermitian.  For r > 0, theta = 0 this shrinks the position variance.

    Raises:
        TruncationError: |r| > 3; the truncated operator stops resembling the
            infinite-dimensional one well before that for moderate cutoffs.
    """
    n = _check_cutoff(cutoff)
    r = float(r)
    if abs(r) > 3.0:
        raise TruncationError(
            f"squeeze parameter |r| = {abs(r)} exceeds the supported maximum 3"
        )
    a = ladder(n)
    xi = r * np.exp(1j * float(theta))
    gen = (np.conj(xi) * (a @ a) - xi * (a.T @ a.T)) / 2.0
    return expm(gen.astype(complex))


def _squeeze_real(s: float, cutoff: int) -> np.ndarray:
    """exp(s (a^dag^2 - a^2) / 2), the real orthogonal squeeze with factor e^s."""
    a = ladder(cutoff)
    gen = 0.5 * s * (a.T @ a.T - a @ a)
    return expm(gen)


def unitarity_defect(u: np.ndarray) -> float:
    """max |U^H U - I|, a diagnostic for truncated operator quality."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {u.shape}")
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def _check_envelope(d: np.ndarray, log_m: np.ndarray) -> None:
    dmax = float(np.max(d))
    if dmax > MAX_SYMPLECTIC_EIGENVALUE + _ENVELOPE_SLACK:
        raise TruncationError(
            f"symplectic eigenvalue {dmax:.6g} exceeds the oracle envelope "
            f"{MAX_SYMPLECTIC_EIGENVALUE}; the truncated basis cannot hold "
            "that much thermal weight"
        )
    rmax = float(np.max(np.abs(log_m)))
    if rmax > MAX_SQUEEZE + _ENVELOPE_SLACK:
        raise TruncationError(
            f"squeezing exponent {rmax:.6g} exceeds the oracle envelope "
            f"{MAX_SQUEEZE}"
        )


def _thermal_seed(d: np.ndarray, cutoff: int) -> np.ndarray:
    """Diagonal of the thermal normal-form state, mode 0 index moving slowest."""
    d = np.maximum(d, 1.0)
    p = _thermal_probabilities((d[0] - 1.0) / 2.0, cutoff)
    for dk in d[1:]:
        p = np.kron(p, _thermal_probabilities((dk - 1.0) / 2.0, cutoff))
    return p


def _apply_mode_squeezes(b: np.ndarray, factors, cutoff: int) -> np.ndarray:
    """Right-multiply b by the tensor product of per-mode squeeze operators."""
    n = len(factors)
    us = [_squeeze_real(float(np.log(m)), cutoff) for m in factors]
    if n == 1:
        return b @ us[0]
    bt = b.reshape(cutoff, cutoff, cutoff, cutoff)
    bt = np.einsum("abcd,ce->abed", bt, us[0], optimize=True)
    bt = np.einsum("abed,df->abef", bt, us[1], optimize=True)
    return bt.reshape(cutoff * cutoff, cutoff * cutoff)


def _sector_indices(t: int, cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    lo = max(0, t - (cutoff - 1))
    hi = min(t, cutoff - 1)
    n0 = np.arange(lo, hi + 1)
    return n0, t - n0


def _passive_complex(o: np.ndarray, n: int, cutoff: int) -> np.ndarray:
    """Unitary for an orthogonal symplectic block rotation, built per sector.

    The n x n blocks of o define u = X - iY, a unitary acting on the mode
    annihilation operators; its generator h = i log(u) is Hermitian and the
    Fock-space operator exp(-i sum h_kl a^dag_k a_l) conserves total photon
    number, so it decomposes over sectors of fixed total occupation.
    """
    x = o[:n, :n]
    y = o[:n, n:]
    u = x - 1j * y
    h = 1j * logm(u)
    h = (h + h.conj().T) / 2.0
    if n == 1:
        k = np.arange(cutoff)
        return np.diag(np.exp(-1j * h[0, 0].real * k))
    dim = cutoff * cutoff
    out = np.zeros((dim, dim), dtype=complex)
    for t in range(2 * cutoff - 1):
        n0, n1 = _sector_indices(t, cutoff)
        idx = n0 * cutoff + n1
        m = len(n0)
        g = np.zeros((m, m), dtype=complex)
        g[np.arange(m), np.arange(m)] = h[0, 0].real * n0 + h[1, 1].real * n1
        if m > 1:
            c = np.sqrt((n0[:-1] + 1.0) * n1[:-1])
            g[np.arange(1, m), np.arange(m - 1)] += h[0, 1] * c
            g[np.arange(m - 1), np.arange(1, m)] += h[1, 0] * c
        w, v = np.linalg.eigh(g)
        out[np.ix_(idx, idx)] = (v * np.exp(-1j * w)) @ v.conj().T
    return out


def _passive_real(q: np.ndarray, cutoff: int) -> np.ndarray:
    """Real unitary for the block rotation diag(Q, Q), Q real orthogonal.

    A reflection factor (det Q = -1) splits off as a parity operator, which
    is diagonal; the remaining SO(2) rotation exponentiates to a real
    orthogonal matrix sector by sector.
    """
    n = q.shape[0]
    if n == 1:
        k = np.arange(cutoff)
        if q[0, 0] > 0.0:
            return np.eye(cutoff)
        return np.diag((-1.0) ** k)
    dim = cutoff * cutoff
    reflect = float(np.linalg.det(q)) < 0.0
    rot = q @ np.diag([1.0, -1.0]) if reflect else q
    phi = float(np.arctan2(rot[0, 1], rot[0, 0]))
    out = np.zeros((dim, dim))
    for t in range(2 * cutoff - 1):
        n0, n1 = _sector_indices(t, cutoff)
        idx = n0 * cutoff + n1
        m = len(n0)
        if m == 1 or phi == 0.0:
            out[idx, idx] = 1.0
            continue
        k = np.zeros((m, m))
        c = phi * np.sqrt((n0[:-1] + 1.0) * n1[:-1])
        k[np.arange(1, m), np.arange(m - 1)] = c
        k[np.arange(m - 1), np.arange(1, m)] = -c
        out[np.ix_(idx, idx)] = expm(k)
    if reflect:
        parity = (-1.0) ** (np.arange(dim) % cutoff)
        out = out * parity[None, :]
    return out


def _build_real(a: np.ndarray, n: int, cutoff: int) -> np.ndarray:
    """Construct rho for a correlation matrix with decoupled q and p blocks.

    The normal form is solved within the block subgroup: with W = Aq^{1/2}
    and W Ap W = V diag(d^2) V^T, the matrix Sq = diag(d)^{-1/2} V^T W gives
    A = S^T D S for S = diag(Sq, Sq^{-T}), and the polar factors of Sq^T stay
    n x n.  Every unitary in the resulting circuit is real.
    """
    aq = a[:n, :n]
    ap = a[n:, n:]
    w = _sqrtm_psd(aq)
    tv, v = np.linalg.eigh(w @ ap @ w)
    d = np.sqrt(np.clip(tv, 0.0, None))
    sq = (1.0 / np.sqrt(np.maximum(d, 1e-300)))[:, None] * (v.T @ w)
    xq, pq = polar(sq.T, side="right")
    m, vq = np.linalg.eigh(pq)
    _check_envelope(d, np.log(m))
    p = _thermal_seed(d, cutoff)
    isotropic = float(np.ptp(d)) < 1e-12 * max(1.0, float(d.max()))
    no_squeeze = float(np.abs(m - 1.0).max()) < 1e-13
    if isotropic and no_squeeze:
        return np.diag(p)
    b = _passive_real(xq @ vq, cutoff)
    if not no_squeeze:
        b = _apply_mode_squeezes(b, m, cutoff)
    if not isotropic:
        b = b @ _passive_real(vq.T, cutoff)
    rho = (b * p[None, :]) @ b.T
    return (rho + rho.T) / 2.0


def _build_complex(a: np.ndarray, n: int, cutoff: int, tol: Tolerances | None) -> np.ndarray:
    """Construct rho through the general Williamson and Euler factorizations."""
    dec = williamson(a, tol)
    eul = euler_decompose(dec.s.T, tol)
    _check_envelope(dec.d, np.log(eul.m))
    p = _thermal_seed(dec.d, cutoff)
    isotropic = float(np.ptp(dec.d)) < 1e-12 * max(1.0, float(dec.d.max()))
    no_squeeze = float(np.abs(eul.m - 1.0).max()) < 1e-13
    if isotropic and no_squeeze:
        return np.diag(p).astype(complex)
    b = _passive_complex(eul.o, n, cutoff)
    if not no_squeeze:
        b = _apply_mode_squeezes(b, eul.m, cutoff)
    if not isotropic:
        b = b @ _passive_complex(eul.o_prime, n, cutoff)
    rho = (b * p[None, :]) @ b.conj().T
    return (rho + rho.conj().T) / 2.0


def gaussian_density(a, cutoff: int, tol: Tolerances | None = None) -> FockDensityMatrix:
    """Density matrix of a zero-mean Gaussian state in the truncated number basis.

    Args:
        a: correlation matrix of one or two modes.
        cutoff: Fock levels per mode, between 2 and 100.
        tol: tolerance overrides for the validation and factorization steps.

    Returns:
        FockDensityMatrix whose rho is real symmetric whenever the input has
        no q-p cross correlations, complex Hermitian otherwise.  The deficit
        field reports the thermal weight beyond the cutoff; it bounds how far
        the truncated matrix can sit from the exact state.

    Raises:
        TruncationError: more than two modes, cutoff above 100, or state
            parameters outside the envelope (symplectic eigenvalue > 11,
            squeezing exponent > 1.5).
        DimensionError: cutoff below 2.
    """
    cutoff = _check_cutoff(cutoff)
    cm = validate(a, tol)
    if cm.n > MAX_MODES:
        raise TruncationError(
            f"the oracle supports at most {MAX_MODES} modes, got {cm.n}"
        )
    n = cm.n
    cross = float(np.abs(cm.a[:n, n:]).max())
    scale = max(1.0, float(np.abs(cm.a).max()))
    if cross <= 1e-13 * scale:
        rho = _build_real(cm.a, n, cutoff)
    else:
        rho = _build_complex(cm.a, n, cutoff, tol)
    rho.setflags(write=False)
    deficit = float(1.0 - np.real(np.trace(rho)))
    return FockDensityMatrix(modes=n, cutoff=cutoff, rho=rho, deficit=deficit)


def second_moments(state: FockDensityMatrix) -> np.ndarray:
    """Correlation matrix read back from a Fock density matrix.

    Gathers the ladder expectations <a_k a_l> and <a^dag_k a_l> directly from
    the stored matrix elements (each is a single strided sum, no operator
    products) and assembles the quadrature moments.  For a faithful state the
    result approaches the generating correlation matrix as the cutoff grows.
    """
    rho = state.rho
    n = state.modes
    cutoff = state.cutoff
    dim = rho.shape[0]
    occ = np.array(np.unravel_index(np.arange(dim), (cutoff,) * n))
    stride = np.array([cutoff ** (n - 1 - k) for k in range(n)])
    ar = np.arange(dim)
    alpha = np.zeros((n, n), dtype=complex)
    nu = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            if k == l:
                nu[k, l] = np.sum(np.real(np.diag(rho)) * occ[k])
                ok = occ[k] >= 2
                i = ar[ok]
                j = i - 2 * stride[k]
                coeff = np.sqrt(occ[k][ok] * (occ[k][ok] - 1.0))
            else:
                okn = (occ[l] >= 1) & (occ[k] <= cutoff - 2)
                ii = ar[okn]
                jj = ii + stride[k] - stride[l]
                nu[k, l] = np.sum(rho[ii, jj] * np.sqrt(occ[l][okn] * (occ[k][okn] + 1.0)))
                ok = (occ[k] >= 1) & (occ[l] >= 1)
                i = ar[ok]
                j = i - stride[k] - stride[l]
                coeff = np.sqrt(occ[k][ok] * occ[l][ok] * 1.0)
            alpha[k, l] = np.sum(rho[i, j] * coeff)
    eye = np.eye(n)
    sqq = np.real(alpha) + np.real(nu) + eye / 2.0
    spp = -np.real(alpha) + np.real(nu) + eye / 2.0
    sqp = np.imag(alpha) + np.imag(nu)
    return 2.0 * np.block([[sqq, sqp], [sqp.T, spp]])


def _as_rho(state) -> np.ndarray:
    if isinstance(state, FockDensityMatrix):
        return state.rho
    rho = np.asarray(state)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {rho.shape}")
    scale = max(1e-300, float(np.abs(rho).max()))
    defect = float(np.abs(rho - rho.conj().T).max())
    if defect > 1e-10 * scale:
        raise SymmetryError(f"density matrix is not Hermitian: defect {defect:.3e}")
    return rho


def uhlmann_fidelity_numeric(state1, state2) -> float:
    """Fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 by direct diagonalization.

    Accepts FockDensityMatrix instances or plain Hermitian arrays of equal
    shape.  Eigenvalues are clipped to zero from above the negativity floor
    -1e-10; anything below that raises, since it signals a broken input
    rather than roundoff.
    """
    r1 = _as_rho(state1)
    r2 = _as_rho(state2)
    if r1.shape != r2.shape:
        raise DimensionError(
            f"density matrices have different shapes: {r1.shape} and {r2.shape}"
        )
    if (
        isinstance(state1, FockDensityMatrix)
        and isinstance(state2, FockDensityMatrix)
        and state1.modes != state2.modes
    ):
        raise DimensionError(
            f"states have different mode counts: {state1.modes} and {state2.modes}"
        )
    w, v = np.linalg.eigh(r1)
    if float(w.min()) < -_NEGATIVITY_FLOOR:
        raise NumericalConsistencyError(
            f"first state has eigenvalue {w.min():.3e} below the negativity floor"
        )
    w = np.clip(w, 0.0, None)
    sq = (v * np.sqrt(w)) @ v.conj().T
    inner = sq @ r2 @ sq
    inner = (inner + inner.conj().T) / 2.0
    lam = np.linalg.eigvalsh(inner)
    if float(lam.min()) < -_NEGATIVITY_FLOOR:
        raise NumericalConsistencyError(
            f"product operator has eigenvalue {lam.min():.3e} below the negativity floor"
        )
    lam = np.clip(lam, 0.0, None)
    return float(np.sum(np.sqrt(lam)) ** 2)


def trace_product_numeric(states) -> complex:
    """Tr(rho_1 rho_2 ... rho_k) evaluated literally on the truncated matrices.

    Args:
        states: sequence of two or more FockDensityMatrix or Hermitian arrays,
            all of the same shape.

    Returns:
        The trace as a complex number; it is real for two factors but
        genuinely complex for three or more in general.
    """
    rhos = [_as_rho(s) for s in states]
    if len(rhos) < 2:
        raise DimensionError("need at least two states to form a trace product")
    shape = rhos[0].shape
    for r in rhos[1:]:
        if r.shape != shape:
            raise DimensionError(
                f"density matrices have different shapes: {shape} and {r.shape}"
            )
    if len(rhos) == 2:
        return complex(np.einsum("ij,ji->", rhos[0], rhos[1]))
    acc = rhos[0] @ rhos[1]
    for r in rhos[2:]:
        acc = acc @ r
    return complex(np.trace(acc))
