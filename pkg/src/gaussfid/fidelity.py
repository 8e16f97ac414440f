"""Uhlmann fidelity and overlap formulas for zero-mean Gaussian states.

All functions take correlation matrices in the convention of
:mod:`gaussfid.core` (vacuum is the identity).  The fidelity returned here is
the transition probability

    F(rho1, rho2) = (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2,

so F(rho, rho) = 1 and F is symmetric in its arguments.  Use
:func:`sqrt_fidelity` for the square-root (Bures) convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    CorrelationMatrix,
    Tolerances,
    phi,
    standard_form,
    symplectic_eigenvalues,
    validate,
)
from .errors import (
    ConditioningError,
    DimensionError,
    FormError,
    NumericalConsistencyError,
)

__all__ = [
    "FidelityBreakdown",
    "overlap",
    "triple_overlap",
    "fidelity_general",
    "fidelity_one_mode",
    "fidelity_thermal",
    "fidelity",
    "sqrt_fidelity",
]


@dataclass(frozen=True)
class FidelityBreakdown:
    """Intermediate quantities of the general fidelity computation.

    Attributes:
        phi1: Phi(A1), the square-root-state matrix of the first argument.
        u: the complex auxiliary matrix (A2 - iJ)(Phi1 + A2)^{-1}(A2 + iJ).
        o: the real correlation matrix entering the final determinant.
        l: the Gaussian overlap prefactor det((A1 + A2)/2)^{-1}.
        det_phi_o: det Phi(O).
        f: the fidelity F = sqrt(l * det_phi_o).
    """

    phi1: np.ndarray
    u: np.ndarray
    o: np.ndarray
    l: float
    det_phi_o: float
    f: float

    @property
    def sqrt_f(self) -> float:
        return float(np.sqrt(self.f))


def _pair(a1, a2, tol: Tolerances | None) -> tuple[CorrelationMatrix, CorrelationMatrix]:
    c1 = validate(a1, tol)
    c2 = validate(a2, tol)
    if c1.n != c2.n:
        raise DimensionError(
            f"states have different mode counts: {c1.n} and {c2.n}"
        )
    return c1, c2


def overlap(a1, a2, tol: Tolerances | None = None) -> float:
    """Tr(rho1 rho2) = det((A1 + A2)/2)^{-1/2}."""
    c1, c2 = _pair(a1, a2, tol)
    sign, logdet = np.linalg.slogdet((c1.a + c2.a) / 2.0)
    if sign <= 0:
        raise NumericalConsistencyError(
            "det((A1 + A2)/2) must be positive for valid states"
        )
    return float(np.exp(-0.5 * logdet))


def triple_overlap(a1, a2, a3, tol: Tolerances | None = None) -> complex:
    """Tr(rho1 rho2 rho3) for three zero-mean Gaussian states.

    The product rho1 rho2 is proportional to a Gaussian operator whose
    correlation matrix is

        A12 = A2 - (A2 + iJ)(A1 + A2)^{-1}(A2 - iJ),

    and tracing against rho3 reduces to two determinants.  The result is a
    genuine complex number in general; it is real only when the three
    operators commute in pairs up to ordering (for instance, co-diagonal
    thermal states).  Cyclic permutations of the arguments leave it
    unchanged.

    Returns:
        complex Tr(rho1 rho2 rho3).
    """
    c1 = validate(a1, tol)
    c2 = validate(a2, tol)
    c3 = validate(a3, tol)
    if not (c1.n == c2.n == c3.n):
        raise DimensionError(
            f"states have different mode counts: {c1.n}, {c2.n}, {c3.n}"
        )
    j = standard_form(c1.n).j
    aj = c2.a.astype(complex) + 1j * j
    amj = c2.a.astype(complex) - 1j * j
    try:
        a12 = c2.a - aj @ np.linalg.solve(c1.a + c2.a, amj)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(f"A1 + A2 is numerically singular: {exc}") from exc
    sign1, logdet1 = np.linalg.slogdet((c1.a + c2.a) / 2.0)
    if sign1 <= 0:
        raise NumericalConsistencyError(
            "det((A1 + A2)/2) must be positive for valid states"
        )
    sign2, logdet2 = np.linalg.slogdet((a12 + c3.a) / 2.0)
    root1 = np.exp(-0.5 * logdet1)
    root2 = np.exp(-0.5 * (logdet2 + 1j * np.angle(sign2)))
    return complex(root1 * root2)


def fidelity_general(a1, a2, tol: Tolerances | None = None) -> FidelityBreakdown:
    """Fidelity between two n-mode Gaussian states, with intermediates.

    The computation follows the closed formula

        U = (A2 - iJ)(Phi1 + A2)^{-1}(A2 + iJ)
        O = Phi1 - (Phi1 - iJ)(A2 + Phi1 - U)^{-1}(Phi1 + iJ)
        F = sqrt(det Phi(O) / det((A1 + A2)/2)).

    O is mathematically real and a valid correlation matrix; its imaginary
    residue is checked against tol.imag and discarded.  Determinants are
    evaluated in log space.

    Raises:
        ConditioningError: a linear solve hit a numerically singular matrix.
        NumericalConsistencyError: the imaginary residue of O is too large, or
            the final value exceeds 1 beyond tol.fid.
    """
    t = Tolerances() if tol is None else tol
    c1, c2 = _pair(a1, a2, tol)
    j = standard_form(c1.n).j
    phi1, _ = phi(c1, tol)
    a2c = c2.a.astype(complex)
    try:
        u = (a2c - 1j * j) @ np.linalg.solve(phi1 + c2.a, a2c + 1j * j)
        inner = a2c + phi1 - u
        o_complex = phi1 - (phi1 - 1j * j) @ np.linalg.solve(inner, phi1 + 1j * j)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(
            f"fidelity intermediates are numerically singular: {exc}"
        ) from exc
    o_complex = (o_complex + o_complex.T) / 2.0
    imag = float(np.abs(o_complex.imag).max())
    scale = max(1.0, float(np.abs(o_complex.real).max()))
    if imag > t.imag * scale:
        raise NumericalConsistencyError(
            f"intermediate O has imaginary residue {imag:.3e} beyond "
            f"{t.imag:.1e} * {scale:.3e}"
        )
    o_real = validate(o_complex.real, tol)
    d_o = symplectic_eigenvalues(o_real, tol)
    x = d_o * d_o - 1.0
    # Symplectic eigenvalues of O sit exactly at 1 when both inputs are
    # pure; snap roundoff inside the purity window so the square root does
    # not blow eps up to sqrt(eps).
    x[np.abs(x) <= t.pure] = 0.0
    x = np.clip(x, 0.0, None)
    log_det_phi_o = 2.0 * float(np.sum(np.log(d_o + np.sqrt(x))))
    sign, logdet_sum = np.linalg.slogdet((c1.a + c2.a) / 2.0)
    if sign <= 0:
        raise NumericalConsistencyError(
            "det((A1 + A2)/2) must be positive for valid states"
        )
    log_f = 0.5 * (log_det_phi_o - logdet_sum)
    f = float(np.exp(log_f))
    if f > 1.0:
        if f > 1.0 + t.fid:
            raise NumericalConsistencyError(
                f"fidelity {f!r} exceeds 1 beyond tolerance {t.fid:.1e}"
            )
        f = 1.0
    return FidelityBreakdown(
        phi1=phi1,
        u=u,
        o=o_real.a,
        l=float(np.exp(-logdet_sum)),
        det_phi_o=float(np.exp(log_det_phi_o)),
        f=f,
    )


def fidelity_one_mode(a1, a2, tol: Tolerances | None = None) -> float:
    """Closed-form fidelity for single-mode states.

    F = 2 / (sqrt(det(A1 + A2) + P) - sqrt(P)) with
    P = (det A1 - 1)(det A2 - 1).  Only defined for n = 1.
    """
    t = Tolerances() if tol is None else tol
    c1, c2 = _pair(a1, a2, tol)
    if c1.n != 1:
        raise DimensionError(
            f"the one-mode formula needs single-mode states, got n = {c1.n}"
        )
    det_sum = float(np.linalg.det(c1.a + c2.a))
    det1 = float(np.linalg.det(c1.a))
    det2 = float(np.linalg.det(c2.a))
    g1 = det1 - 1.0
    g2 = det2 - 1.0
    # det A = 1 marks a pure state; deviations inside the purity window are
    # roundoff and get snapped to zero so sqrt(p) stays exact for pure inputs.
    if abs(g1) <= t.pure * max(1.0, abs(det1)):
        g1 = 0.0
    if abs(g2) <= t.pure * max(1.0, abs(det2)):
        g2 = 0.0
    p = g1 * g2
    if p < 0.0:
        if p < -t.pure:
            raise NumericalConsistencyError(
                f"(det A1 - 1)(det A2 - 1) = {p:.3e} is negative beyond tolerance"
            )
        p = 0.0
    f = 2.0 / (np.sqrt(det_sum + p) - np.sqrt(p))
    if f > 1.0:
        if f > 1.0 + t.fid:
            raise NumericalConsistencyError(
                f"fidelity {f!r} exceeds 1 beyond tolerance {t.fid:.1e}"
            )
        f = 1.0
    return float(f)


def _thermal_diagonal(c: CorrelationMatrix, t: Tolerances) -> np.ndarray | None:
    """Per-mode variances if A = diag(v) oplus diag(v), else None."""
    a = c.a
    n = c.n
    scale = max(1.0, float(np.abs(a).max()))
    off = a - np.diag(np.diag(a))
    if float(np.abs(off).max()) > t.sym * scale:
        return None
    dq = np.diag(a)[:n]
    dp = np.diag(a)[n:]
    if float(np.abs(dq - dp).max()) > t.sym * scale:
        return None
    return dq.copy()


def fidelity_thermal(a1, a2, tol: Tolerances | None = None) -> float:
    """Closed-form fidelity for co-diagonal thermal-like states.

    Both inputs must be of the form diag(v) oplus diag(v) (equal q and p
    variances, no cross terms), as produced by :func:`gaussfid.core.thermal_state`.
    Then

        F = prod_j 2 / ((v1_j v2_j + 1) - sqrt((v1_j^2 - 1)(v2_j^2 - 1))).

    Raises:
        FormError: an input is not in the required diagonal form.
    """
    t = Tolerances() if tol is None else tol
    c1, c2 = _pair(a1, a2, tol)
    v1 = _thermal_diagonal(c1, t)
    v2 = _thermal_diagonal(c2, t)
    if v1 is None or v2 is None:
        raise FormError(
            "the thermal formula needs diag(v) oplus diag(v) inputs; "
            "use fidelity_general for anything else"
        )
    x1 = v1 * v1 - 1.0
    x2 = v2 * v2 - 1.0
    x1[np.abs(x1) <= t.pure] = 0.0
    x2[np.abs(x2) <= t.pure] = 0.0
    x1 = np.clip(x1, 0.0, None)
    x2 = np.clip(x2, 0.0, None)
    den = (v1 * v2 + 1.0) - np.sqrt(x1 * x2)
    if np.any(den <= 0.0):
        raise NumericalConsistencyError(
            "thermal fidelity denominator is not positive; inputs are invalid"
        )
    f = float(np.exp(np.sum(np.log(2.0) - np.log(den))))
    if f > 1.0:
        if f > 1.0 + t.fid:
            raise NumericalConsistencyError(
                f"fidelity {f!r} exceeds 1 beyond tolerance {t.fid:.1e}"
            )
        f = 1.0
    return f


def fidelity(a1, a2, tol: Tolerances | None = None) -> float:
    """Fidelity with automatic method choice.

    Single-mode inputs use the one-mode closed form, co-diagonal thermal-like
    pairs use the thermal product form, and everything else goes through the
    general formula.
    """
    t = Tolerances() if tol is None else tol
    c1, c2 = _pair(a1, a2, tol)
    if c1.n == 1:
        return fidelity_one_mode(c1, c2, tol)
    if _thermal_diagonal(c1, t) is not None and _thermal_diagonal(c2, t) is not None:
        return fidelity_thermal(c1, c2, tol)
    return fidelity_general(c1, c2, tol).f


def sqrt_fidelity(a1, a2, tol: Tolerances | None = None) -> float:
    """The square root of :func:`fidelity` (the Bures / Uhlmann amplitude)."""
    return float(np.sqrt(fidelity(a1, a2, tol)))
