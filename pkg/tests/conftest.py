"""Shared helpers and session fixtures for the test suite.

The expensive truncated-basis comparisons at cutoff 80 live in session-scoped
fixtures so the acceptance test and the convergence tests share one build.
Acceptance tests record a one-line verdict each; the lines are printed in a
summary block at the end of the run.
"""

import time

import numpy as np
import pytest
from scipy.linalg import expm

import gaussfid as gf

ACCEPTANCE_RESULTS = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_RESULTS.append(f"[criterion {number}] {status} - {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)


def random_symplectic(rng, n, scale=0.4):
    """A random symplectic matrix, exp(J * symmetric)."""
    j = gf.standard_form(n).j
    r = rng.normal(size=(2 * n, 2 * n), scale=scale)
    return expm(j @ (r + r.T) / 2.0)


def random_state(rng, n, dmax=4.0):
    """A random valid correlation matrix with symplectic eigenvalues in [1, dmax]."""
    s = random_symplectic(rng, n)
    d = rng.uniform(1.0, dmax, size=n)
    df = np.concatenate([d, d])
    return s.T @ (df[:, None] * s)


def random_pure(rng, n):
    s = random_symplectic(rng, n)
    return s.T @ s


def beam_splitter(theta):
    """Orthogonal symplectic mixing of two modes, acting identically on q and p."""
    c, s = np.cos(theta), np.sin(theta)
    r2 = np.array([[c, s], [-s, c]])
    z = np.zeros((2, 2))
    return np.block([[r2, z], [z, r2]])


def _squeezed_thermal_diag(pairs):
    qs = [d * np.exp(2.0 * r) for d, r in pairs]
    ps = [d * np.exp(-2.0 * r) for d, r in pairs]
    return np.diag(qs + ps)


def two_mode_pair():
    """A fixed pair of rotated two-mode squeezed thermal states.

    Both have equal symplectic eigenvalues per state and no q-p cross terms,
    which keeps their truncated density matrices real at large cutoffs.
    """
    o1 = beam_splitter(0.6)
    o2 = beam_splitter(-0.35)
    a1 = o1.T @ _squeezed_thermal_diag([(1.8, 0.5), (1.8, -0.3)]) @ o1
    a2 = o2.T @ _squeezed_thermal_diag([(2.8, -0.4), (2.8, 0.7)]) @ o2
    return a1, a2


def oracle_pair_difference(a1, a2, cutoff):
    """|closed formula - truncated-basis fidelity| at the given cutoff."""
    r1 = gf.gaussian_density(a1, cutoff)
    r2 = gf.gaussian_density(a2, cutoff)
    return abs(gf.fidelity(a1, a2) - gf.uhlmann_fidelity_numeric(r1, r2))


@pytest.fixture(scope="session")
def oracle_grid():
    """Formula-versus-oracle differences at cutoff 80 over the reference grid.

    Returns a dict with 'rows' (name, difference), 'elapsed' seconds for the
    whole grid, and the two-mode pair with its cutoff-80 difference for reuse
    by the convergence test.
    """
    rows = []
    start = time.monotonic()

    thermal_nbars = [0.0, 0.5, 1.0, 2.0]
    for i, n1 in enumerate(thermal_nbars):
        for n2 in thermal_nbars[i + 1:]:
            d = oracle_pair_difference(
                gf.thermal_state(n1).a, gf.thermal_state(n2).a, 80
            )
            rows.append((f"thermal {n1} vs {n2}", d))

    for r in (0.3, 1.0, 1.5):
        d = oracle_pair_difference(
            gf.squeezed_thermal_state([0.0], [r]).a, gf.thermal_state(1.0).a, 80
        )
        rows.append((f"squeezed r={r} vs thermal 1", d))

    d = oracle_pair_difference(
        gf.squeezed_thermal_state([0.2], [0.8], [0.4]).a,
        gf.squeezed_thermal_state([0.1], [1.0], [1.1]).a,
        80,
    )
    rows.append(("squeezed theta=0.4 vs theta=1.1", d))

    a1, a2 = two_mode_pair()
    d2 = oracle_pair_difference(a1, a2, 80)
    rows.append(("rotated two-mode pair", d2))

    elapsed = time.monotonic() - start
    return {
        "rows": rows,
        "elapsed": elapsed,
        "two_mode": (a1, a2, d2),
    }


@pytest.fixture(scope="session")
def two_mode_curve(oracle_grid):
    """Formula-versus-oracle differences for the two-mode pair at rising cutoffs."""
    a1, a2, d80 = oracle_grid["two_mode"]
    diffs = [oracle_pair_difference(a1, a2, n) for n in (20, 40, 60)]
    diffs.append(d80)
    return diffs
