import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mqsolve.anf import quadratic_monomials
from mqsolve.estimator import (
    ComplexityProfile,
    baseline_costs,
    exponent,
    f_alpha,
    m_func,
    minimize_exponent,
    quantum_security_bits,
    security_parameters,
)

REFERENCE_ENDPOINTS = [
    # (setting, theta, expected exponent, expected gamma*)
    ("classical", 3.0, 1 - 0.112, 0.27),
    ("classical", 2.376, 1 - 0.159, 0.40),
    ("classical", 2.0, 1 - 0.208, 0.55),
    ("quantum", 3.0, 0.477, 0.10),
    ("quantum", 2.376, 0.470, 0.13),
    ("quantum", 2.0, 0.462, 0.17),
]


# ---------------------------------------------------------------------------
# m_func / f_alpha
# ---------------------------------------------------------------------------

def test_m_func_reference_point():
    # frozen from direct evaluation of the closed form at x = 1/0.55
    assert math.isclose(m_func(1 / 0.55), 0.05568232074569801, rel_tol=1e-12)
    assert 0.05 < m_func(1 / 0.55) < 0.06


def test_m_func_monotone_decreasing():
    xs = [1.2 + 0.05 * i for i in range(int((10 - 1.2) / 0.05) + 1)]
    vals = [m_func(x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_m_func_vanishes_at_large_x():
    assert 0 < m_func(1e4) < 1e-3
    assert 0 < m_func(1e6) < 1e-4


def test_m_func_domain_error():
    with pytest.raises(ValueError):
        m_func(0.1)          # radicand negative
    with pytest.raises(ValueError):
        m_func(-1.0)


def test_f_alpha_reference_points():
    # frozen from direct evaluation; they reproduce the headline exponents below
    assert math.isclose(f_alpha(0.55, 1.0), 0.17053374601433696, rel_tol=1e-12)
    assert math.isclose(f_alpha(0.17, 1.0), 0.02373092234346225, rel_tol=1e-12)
    assert abs(1 - 0.55 + 2 * f_alpha(0.55, 1.0) - 0.792) <= 1e-3
    assert abs((1 - 0.17) / 2 + 2 * f_alpha(0.17, 1.0) - 0.462) <= 1e-3


def test_f_alpha_vanishes_at_zero():
    assert f_alpha(1e-4, 1.0) < 1e-3
    assert f_alpha(1e-6, 1.0) < 1e-4


# ---------------------------------------------------------------------------
# exponent
# ---------------------------------------------------------------------------

def test_exponent_lv_endpoints():
    classical = ComplexityProfile(theta=2.0, variant="las-vegas", setting="classical")
    assert abs(exponent(classical, 0.55) - 0.792) <= 1e-3
    quantum = ComplexityProfile(theta=2.0, variant="las-vegas", setting="quantum")
    assert abs(exponent(quantum, 0.17) - 0.462) <= 1e-3


def test_exponent_gamma_to_one_limit():
    prof = ComplexityProfile(theta=2.5, variant="deterministic", setting="classical")
    gamma = 1 - 1e-9
    assert math.isclose(exponent(prof, gamma), 2.5 * f_alpha(gamma, 1.0), rel_tol=1e-6)


@settings(max_examples=80, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(1.0, 3.0), st.floats(2.0, 3.0), st.booleans())
def test_classical_quantum_gap_identity(gamma, alpha, theta, deterministic):
    variant = "deterministic" if deterministic else "las-vegas"
    c = ComplexityProfile(alpha=alpha, theta=theta, variant=variant, setting="classical")
    q = ComplexityProfile(alpha=alpha, theta=theta, variant=variant, setting="quantum")
    assert math.isclose(exponent(c, gamma) - exponent(q, gamma), (1 - gamma) / 2, abs_tol=1e-12)


# ---------------------------------------------------------------------------
# minimization
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("setting,theta,expected_exp,expected_gamma", REFERENCE_ENDPOINTS)
def test_minimize_reproduces_endpoints(setting, theta, expected_exp, expected_gamma):
    prof = ComplexityProfile(theta=theta, variant="deterministic", setting=setting)
    res = minimize_exponent(prof)
    assert abs(res.exponent - expected_exp) <= 0.002
    assert abs(res.gamma_star - expected_gamma) <= 0.02


def test_lv_equals_theta2_deterministic():
    det2 = minimize_exponent(ComplexityProfile(theta=2.0, variant="deterministic"))
    lv = minimize_exponent(ComplexityProfile(theta=3.0, variant="las-vegas"))
    assert math.isclose(det2.exponent, lv.exponent, abs_tol=1e-9)


def test_minimize_unimodal_curve():
    for setting in ("classical", "quantum"):
        for theta, alpha in ((2.0, 1.0), (2.376, 1.0), (3.0, 1.0), (2.376, 1.5)):
            res = minimize_exponent(ComplexityProfile(alpha=alpha, theta=theta,
                                                      variant="deterministic",
                                                      setting=setting))
            values = [v for _, v in res.curve]
            drops = sum(1 for a, b in zip(values, values[1:]) if b < a - 1e-12)
            rises = sum(1 for a, b in zip(values, values[1:]) if b > a + 1e-12)
            # strictly down then strictly up: one sign change in the differences
            signs = [1 if b > a else -1 for a, b in zip(values, values[1:]) if abs(b - a) > 1e-12]
            changes = sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)
            assert changes <= 1 and drops > 0 and rises > 0


def test_minimize_grid_refined_agreement():
    for theta in (2.0, 2.376, 3.0):
        prof = ComplexityProfile(theta=theta, variant="deterministic", setting="quantum")
        res = minimize_exponent(prof)
        grid_min = min(v for _, v in res.curve)
        assert res.exponent <= grid_min + 1e-12
        assert grid_min - res.exponent <= 1e-3


def test_minimize_decreases_with_alpha():
    # more equations per variable can only help the attacker
    exps = [minimize_exponent(ComplexityProfile(alpha=a, theta=2.0,
                                                variant="las-vegas")).exponent
            for a in (1.0, 1.25, 1.5, 2.0)]
    assert all(x > y for x, y in zip(exps, exps[1:]))


def test_minimize_runs_fast():
    import time
    t0 = time.perf_counter()
    for setting, theta, _, _ in REFERENCE_ENDPOINTS:
        minimize_exponent(ComplexityProfile(theta=theta, variant="deterministic", setting=setting))
    assert time.perf_counter() - t0 < 1.0


def test_profile_validation():
    with pytest.raises(ValueError):
        ComplexityProfile(alpha=0.5)
    with pytest.raises(ValueError):
        ComplexityProfile(theta=1.5)
    with pytest.raises(ValueError):
        ComplexityProfile(variant="bogus")


# ---------------------------------------------------------------------------
# security parameters
# ---------------------------------------------------------------------------

TABLE = [
    # level, table n, table key size in bytes (decimal units)
    (64, 139, 167.36e3),
    (80, 173, 326.4e3),
    (128, 277, 1.33e6),
    (256, 555, 10.65e6),
]


def test_security_table_rows():
    for bits, table_n, table_bytes in TABLE:
        row = security_parameters(bits)
        assert abs(row.n - table_n) <= 1
        assert abs(row.public_key_bytes - table_bytes) / table_bytes <= 0.02


def test_security_key_formula_matches_coefficient_count():
    # independent count: enumerate the ANF coefficients of one quadratic polynomial
    for level, table_n, table_bytes in TABLE:
        per_poly = len(quadratic_monomials(table_n))
        assert per_poly == math.comb(table_n, 2) + table_n + 1
        bits = table_n * per_poly
        assert abs(bits / 8 - table_bytes) / table_bytes <= 0.02


def test_security_monotone():
    values = [security_parameters(s).n for s in range(1, 300, 7)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_reevaluated_256_variable_security():
    assert quantum_security_bits(256) == 118
    assert quantum_security_bits(256) == math.floor(0.462 * 256)


# ---------------------------------------------------------------------------
# baselines
# ---------------------------------------------------------------------------

def test_baseline_quantum_at_256():
    costs = baseline_costs(256, 256)
    assert math.floor(costs["quantum_hybrid"]) == 118


def test_baseline_exhaustive_at_80():
    # frozen from direct evaluation of 4 log2(n) 2^n at n = 80
    costs = baseline_costs(80, 80)
    assert math.isclose(costs["classical_exhaustive"], 84.66036462623588, rel_tol=1e-12)


def test_baseline_ordering_at_300():
    costs = baseline_costs(300, 300)
    ordered = [
        costs["quantum_hybrid"],
        costs["quantum_exhaustive"],
        costs["classical_hybrid"],
        costs["approximation"],
        costs["classical_exhaustive"],
    ]
    assert all(a < b for a, b in zip(ordered, ordered[1:]))
