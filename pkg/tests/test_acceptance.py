"""Acceptance gate: the binding numerical guarantees of the package.

Each test exercises one guarantee end to end, records a one-line verdict
(printed in the summary block at the end of the run), and then asserts.
Criteria with a runtime budget time themselves and fail when over budget.
"""

import time

import numpy as np
import pytest

import gaussfid as gf
from conftest import (
    oracle_pair_difference,
    random_pure,
    random_state,
    random_symplectic,
    record_criterion,
    two_mode_pair,
)


def test_criterion_1_closed_forms_match_general_formula():
    rng = np.random.default_rng(1001)
    start = time.monotonic()
    worst_one = 0.0
    for _ in range(500):
        a1 = random_state(rng, 1)
        a2 = random_state(rng, 1)
        diff = abs(gf.fidelity_one_mode(a1, a2) - gf.fidelity_general(a1, a2).f)
        worst_one = max(worst_one, diff)
    worst_thermal = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        t1 = gf.thermal_state(rng.uniform(0.0, 3.0, size=n))
        t2 = gf.thermal_state(rng.uniform(0.0, 3.0, size=n))
        diff = abs(gf.fidelity_thermal(t1, t2) - gf.fidelity_general(t1, t2).f)
        worst_thermal = max(worst_thermal, diff)
    elapsed = time.monotonic() - start
    ok = worst_one <= 1e-8 and worst_thermal <= 1e-8 and elapsed < 10.0
    record_criterion(
        1,
        ok,
        f"one-mode worst {worst_one:.2e}, thermal worst {worst_thermal:.2e} "
        f"(bound 1e-8), {elapsed:.1f}s (budget 10s)",
    )
    assert worst_one <= 1e-8
    assert worst_thermal <= 1e-8
    assert elapsed < 10.0


def test_criterion_2_oracle_grid_at_cutoff_80(oracle_grid):
    worst_name, worst = max(oracle_grid["rows"], key=lambda row: row[1])
    elapsed = oracle_grid["elapsed"]
    ok = worst <= 1e-5 and elapsed < 300.0
    record_criterion(
        2,
        ok,
        f"{len(oracle_grid['rows'])} pairs, worst {worst:.2e} at {worst_name} "
        f"(bound 1e-5), {elapsed:.0f}s (budget 300s)",
    )
    for name, diff in oracle_grid["rows"]:
        assert diff <= 1e-5, name
    assert elapsed < 300.0


def test_criterion_3_named_fidelity_values():
    worst = 0.0
    for nbar in (0.5, 1.0, 2.0, 5.0):
        f = gf.fidelity(np.eye(2), gf.thermal_state(nbar))
        worst = max(worst, abs(f - 1.0 / (nbar + 1.0)))
    for r in (0.5, 1.0, 2.0):
        f = gf.fidelity(gf.squeezed_thermal_state([0.0], [r]), np.eye(2))
        worst = max(worst, abs(f - 1.0 / np.cosh(r)))
    f = gf.fidelity(gf.thermal_state(1.0), gf.thermal_state(2.0))
    worst = max(worst, abs(f - 2.0 / (16.0 - 8.0 * np.sqrt(3.0))))
    ok = worst <= 1e-10
    record_criterion(3, ok, f"8 named values, worst {worst:.2e} (bound 1e-10)")
    assert worst <= 1e-10


def test_criterion_4_fidelity_axioms():
    rng = np.random.default_rng(1004)
    start = time.monotonic()
    checks = 0
    worst = 0.0
    range_violations = 0

    for _ in range(60):
        n = int(rng.integers(1, 4))
        a, b = random_state(rng, n), random_state(rng, n)
        f_ab = gf.fidelity(a, b)
        worst = max(worst, abs(f_ab - gf.fidelity(b, a)))
        checks += 1
        if not 0.0 < f_ab <= 1.0:
            range_violations += 1
        checks += 1

    for _ in range(30):
        n = int(rng.integers(1, 4))
        a = random_state(rng, n)
        worst = max(worst, abs(gf.fidelity(a, a) - 1.0))
        checks += 1

    for _ in range(25):
        n = int(rng.integers(1, 3))
        p, b = random_pure(rng, n), random_state(rng, n)
        worst = max(worst, abs(gf.fidelity(p, b) - gf.overlap(p, b)))
        checks += 1

    for _ in range(25):
        n = int(rng.integers(1, 3))
        a, b = random_state(rng, n), random_state(rng, n)
        s = random_symplectic(rng, n)
        moved = abs(
            gf.fidelity(gf.conjugate(a, s), gf.conjugate(b, s)) - gf.fidelity(a, b)
        )
        worst = max(worst, moved)
        checks += 1

    for _ in range(20):
        a1, b1 = random_state(rng, 1), random_state(rng, 1)
        a2, b2 = random_state(rng, 2), random_state(rng, 2)
        joint = gf.fidelity(gf.tensor(a1, a2), gf.tensor(b1, b2))
        split = gf.fidelity(a1, b1) * gf.fidelity(a2, b2)
        worst = max(worst, abs(joint - split))
        checks += 1

    elapsed = time.monotonic() - start
    ok = (
        worst <= 1e-8
        and range_violations == 0
        and checks >= 200
        and elapsed < 30.0
    )
    record_criterion(
        4,
        ok,
        f"{checks} axiom checks, worst deviation {worst:.2e} (bound 1e-8), "
        f"{range_violations} range violations, {elapsed:.1f}s (budget 30s)",
    )
    assert checks >= 200
    assert worst <= 1e-8
    assert range_violations == 0
    assert elapsed < 30.0


def test_criterion_5_phi_defining_identity():
    rng = np.random.default_rng(1005)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        a = random_state(rng, n)
        p, _ = gf.phi(a)
        j = gf.standard_form(n).j
        resid = np.abs(p - j @ np.linalg.inv(p) @ j - 2.0 * a).max()
        worst = max(worst, resid / max(1.0, np.abs(a).max()))
    ok = worst <= 1e-8
    record_criterion(
        5, ok, f"200 states, worst scaled residual {worst:.2e} (bound 1e-8)"
    )
    assert worst <= 1e-8


def test_criterion_6_decomposition_round_trips():
    rng = np.random.default_rng(1006)
    worst_w = 0.0
    worst_e = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        a = random_state(rng, n)
        dec = gf.williamson(a)
        resid = np.abs(dec.s.T @ dec.d_matrix @ dec.s - a).max()
        worst_w = max(worst_w, resid / max(1.0, np.abs(a).max()))
    for _ in range(200):
        n = int(rng.integers(1, 4))
        s = random_symplectic(rng, n)
        eul = gf.euler_decompose(s)
        resid = np.abs(eul.o @ eul.m_matrix @ eul.o_prime - s).max()
        worst_e = max(worst_e, resid / max(1.0, np.abs(s).max()))
    ok = worst_w <= 1e-8 and worst_e <= 1e-8
    record_criterion(
        6,
        ok,
        f"200 Williamson (worst {worst_w:.2e}) and 200 Euler (worst {worst_e:.2e}) "
        "round trips (bound 1e-8)",
    )
    assert worst_w <= 1e-8
    assert worst_e <= 1e-8


def test_criterion_7_triple_overlap_cyclicity_and_oracle():
    rng = np.random.default_rng(1007)
    worst_cycle = 0.0
    triples = []
    for _ in range(100):
        n = int(rng.integers(1, 3))
        tri = [random_state(rng, n, dmax=2.5) for _ in range(3)]
        if n == 1:
            triples.append(tri)
        t123 = gf.triple_overlap(tri[0], tri[1], tri[2])
        t231 = gf.triple_overlap(tri[1], tri[2], tri[0])
        t312 = gf.triple_overlap(tri[2], tri[0], tri[1])
        worst_cycle = max(worst_cycle, abs(t123 - t231), abs(t123 - t312))
    worst_oracle = 0.0
    for tri in triples[:10]:
        t_formula = gf.triple_overlap(tri[0], tri[1], tri[2])
        rhos = [gf.gaussian_density(a, 60) for a in tri]
        t_numeric = gf.trace_product_numeric(rhos)
        worst_oracle = max(worst_oracle, abs(t_formula - t_numeric))
    ok = worst_cycle <= 1e-10 and worst_oracle <= 1e-6
    record_criterion(
        7,
        ok,
        f"100 cyclicity checks (worst {worst_cycle:.2e}, bound 1e-10), "
        f"10 oracle comparisons (worst {worst_oracle:.2e}, bound 1e-6)",
    )
    assert worst_cycle <= 1e-10
    assert worst_oracle <= 1e-6
