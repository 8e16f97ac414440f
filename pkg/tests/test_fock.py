"""Truncated number-basis oracle: builders, moments, and formula cross checks.

The noise floor of the numeric fidelity sits near 1e-7 regardless of cutoff
(square roots of clipped near-zero eigenvalues), so convergence assertions
allow that much slack on top of monotone decrease.
"""

import numpy as np
import pytest

import gaussfid as gf
from conftest import oracle_pair_difference, two_mode_pair

PLATEAU_SLACK = 1e-7


def test_ladder_matrix_elements():
    a = gf.ladder(4)
    expected = np.zeros((4, 4))
    expected[0, 1] = 1.0
    expected[1, 2] = np.sqrt(2.0)
    expected[2, 3] = np.sqrt(3.0)
    assert np.array_equal(a, expected)


def test_thermal_density_probabilities_and_deficit():
    st = gf.thermal_density(1.0, 10)
    k = np.arange(10)
    assert np.allclose(np.diag(st.rho), 0.5 ** (k + 1))
    assert st.deficit == pytest.approx(2.0 ** -10, abs=1e-18)
    assert gf.thermal_density(0.0, 5).rho[0, 0] == 1.0
    with pytest.raises(gf.GaussianStateError):
        gf.thermal_density(-0.5, 10)


def test_squeeze_unitary_is_unitary():
    u = gf.squeeze_unitary(1.2, 0.7, 50)
    assert gf.unitarity_defect(u) <= 1e-12
    with pytest.raises(gf.TruncationError, match="squeeze"):
        gf.squeeze_unitary(3.5, 0.0, 50)


def test_gaussian_density_vacuum_is_exact():
    st = gf.gaussian_density(np.eye(2), 8)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    assert np.array_equal(st.rho, expected)
    assert st.deficit == 0.0


def test_gaussian_density_thermal_is_exact_diagonal():
    st = gf.gaussian_density(gf.thermal_state(1.0), 10)
    assert st.rho.dtype == np.float64
    assert np.allclose(st.rho, np.diag(0.5 ** (np.arange(10) + 1.0)))
    assert st.deficit == pytest.approx(2.0 ** -10, abs=1e-18)


def test_envelope_rejections():
    with pytest.raises(gf.TruncationError, match="symplectic eigenvalue"):
        gf.gaussian_density(gf.thermal_state(6.0), 20)
    with pytest.raises(gf.TruncationError, match="squeezing exponent"):
        gf.gaussian_density(gf.squeezed_thermal_state([0.0], [1.6]), 20)
    with pytest.raises(gf.TruncationError, match="modes"):
        gf.gaussian_density(gf.thermal_state([1.0, 1.0, 1.0]), 10)
    with pytest.raises(gf.TruncationError, match="cutoff"):
        gf.gaussian_density(np.eye(2), 101)
    with pytest.raises(gf.DimensionError, match="cutoff"):
        gf.gaussian_density(np.eye(2), 1)


def test_moments_round_trip_both_paths():
    # theta = 0 keeps q and p decoupled, so the state is built in real
    # arithmetic; a rotation forces the complex construction.  Both must
    # reproduce the generating correlation matrix.
    for theta, dtype in ((0.0, np.float64), (0.7, np.complex128)):
        a = gf.squeezed_thermal_state([0.5], [0.6], [theta]).a
        st = gf.gaussian_density(a, 60)
        assert st.rho.dtype == dtype
        assert np.abs(gf.second_moments(st) - a).max() <= 1e-5


def test_moments_agree_with_dense_operator_products():
    a = gf.squeezed_thermal_state([0.3], [0.4], [0.9]).a
    st = gf.gaussian_density(a, 30)
    aa = gf.ladder(30)
    q = (aa + aa.conj().T) / np.sqrt(2.0)
    p = -1j * (aa - aa.conj().T) / np.sqrt(2.0)
    quads = [q, p]
    dense = np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            sym = (quads[i] @ quads[j] + quads[j] @ quads[i]) / 2.0
            dense[i, j] = 2.0 * np.real(np.trace(st.rho @ sym))
    assert np.abs(dense - gf.second_moments(st)).max() <= 1e-5


def test_real_and_complex_constructions_agree():
    # The same two-mode state built through the real block factorization and
    # (after a negligible q-p perturbation) through the complex route.  The
    # remaining difference is pure truncation and dies out with the cutoff.
    a1, _ = two_mode_pair()
    perturbed = a1.copy()
    perturbed[0, 2] += 1e-11
    perturbed[2, 0] += 1e-11
    last = None
    for cutoff, bound in ((24, 2e-5), (32, 1e-6)):
        real = gf.gaussian_density(a1, cutoff)
        cplx = gf.gaussian_density(perturbed, cutoff)
        assert real.rho.dtype == np.float64
        assert cplx.rho.dtype == np.complex128
        gap = np.abs(real.rho - cplx.rho).max()
        assert gap <= bound
        if last is not None:
            assert gap < last
        last = gap


def test_two_mode_thermal_pair_matches_formula():
    t1 = gf.thermal_state([0.5, 2.0])
    t2 = gf.thermal_state([1.0, 0.25])
    assert oracle_pair_difference(t1.a, t2.a, 40) <= 1e-5


def test_one_mode_cutoff_convergence():
    a1 = gf.squeezed_thermal_state([0.0], [1.5]).a
    a2 = gf.thermal_state(2.0).a
    diffs = [oracle_pair_difference(a1, a2, n) for n in (20, 40, 60, 80)]
    for earlier, later in zip(diffs, diffs[1:]):
        assert later <= earlier + PLATEAU_SLACK
    assert diffs[-1] <= 1e-5


def test_two_mode_cutoff_convergence(two_mode_curve):
    for earlier, later in zip(two_mode_curve, two_mode_curve[1:]):
        assert later <= earlier + PLATEAU_SLACK
    assert two_mode_curve[-1] <= 1e-5


def test_overlap_matches_trace_product():
    a1 = gf.squeezed_thermal_state([0.3], [0.7], [0.5]).a
    a2 = gf.squeezed_thermal_state([0.6], [0.5], [1.2]).a
    r1 = gf.gaussian_density(a1, 60)
    r2 = gf.gaussian_density(a2, 60)
    tp = gf.trace_product_numeric([r1, r2])
    assert abs(tp.imag) <= 1e-10
    assert abs(gf.overlap(a1, a2) - tp.real) <= 1e-6


def test_uhlmann_numeric_self_fidelity():
    st = gf.gaussian_density(gf.thermal_state(0.5), 40)
    f = gf.uhlmann_fidelity_numeric(st, st)
    assert f == pytest.approx((1.0 - st.deficit) ** 2, abs=1e-12)


def test_uhlmann_numeric_input_checks():
    st = gf.gaussian_density(np.eye(2), 8)
    with pytest.raises(gf.DimensionError, match="shapes"):
        gf.uhlmann_fidelity_numeric(st, np.eye(9))
    bad = np.zeros((8, 8))
    bad[0, 1] = 0.5
    with pytest.raises(gf.SymmetryError, match="Hermitian"):
        gf.uhlmann_fidelity_numeric(st, bad)
    negative = np.diag([1.0] + [0.0] * 6 + [-1e-6])
    with pytest.raises(gf.NumericalConsistencyError, match="negativity"):
        gf.uhlmann_fidelity_numeric(negative, st)


def test_trace_product_three_factors():
    th = gf.thermal_density(1.0, 60)
    t = gf.trace_product_numeric([th, th, th])
    assert t.real == pytest.approx(1.0 / 7.0, abs=1e-9)
    with pytest.raises(gf.DimensionError, match="at least two"):
        gf.trace_product_numeric([th])


def test_fock_density_matrix_guards():
    with pytest.raises(gf.DimensionError, match="shape"):
        gf.FockDensityMatrix(modes=1, cutoff=5, rho=np.eye(4), deficit=0.0)
    lopsided = np.eye(4)
    lopsided[0, 1] = 1e-3
    with pytest.raises(gf.SymmetryError, match="Hermitian"):
        gf.FockDensityMatrix(modes=1, cutoff=4, rho=lopsided, deficit=0.0)
