"""Thresholds, certificates, and the empirical density classifier."""

import json
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fockdensity import (
    Certificate,
    FockParams,
    GridSpec,
    HEXAGONAL,
    LatticeSpec,
    PointSet,
    Region,
    certify_interpolating_by_separation,
    certify_sampling_by_covering,
    classify_by_density,
    covering_density_bound,
    covering_sampling_threshold,
    critical_density,
    generate,
    improved_interpolation_threshold,
    separation_density_bound,
    tung_threshold,
)
from fockdensity.certify import (
    ROUTE_COVERING,
    ROUTE_DENSITY_EMPIRICAL,
    ROUTE_SEPARATION_IMPROVED,
    VERDICT_INCONCLUSIVE,
    VERDICT_INTERPOLATING,
    VERDICT_SAMPLING,
)

SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------------------
# threshold values


def test_params_validation():
    with pytest.raises(ValueError):
        FockParams(alpha=0.0)
    with pytest.raises(ValueError):
        FockParams(alpha=1.0, p=0.0)
    assert FockParams(alpha=1.0, p=math.inf).p == math.inf


def test_classic_threshold_values():
    assert tung_threshold(FockParams(1.0)) == 2.0
    assert tung_threshold(FockParams(4.0)) == 1.0
    assert tung_threshold(FockParams(math.pi)) == pytest.approx(1.128379, abs=1e-6)


def test_improved_threshold_values():
    assert improved_interpolation_threshold(FockParams(1.0)) == \
        pytest.approx(1.904626, abs=1e-6)
    assert improved_interpolation_threshold(FockParams(2 * math.pi / SQRT3)) == \
        pytest.approx(1.0, rel=1e-12)


def test_covering_threshold_values():
    assert covering_sampling_threshold(FockParams(1.0)) == \
        pytest.approx(1.099636, abs=1e-6)
    assert covering_sampling_threshold(FockParams(2 * math.pi / (3 * SQRT3))) == \
        pytest.approx(1.0, rel=1e-12)


def test_critical_density_values():
    assert critical_density(FockParams(1.0)) == pytest.approx(0.318310, abs=1e-6)
    assert critical_density(FockParams(math.pi)) == pytest.approx(1.0, rel=1e-15)
    # alpha chosen so the critical density equals the unit hexagonal density
    alpha = math.pi * 2.0 / SQRT3
    assert critical_density(FockParams(alpha)) == \
        pytest.approx(separation_density_bound(1.0), rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, math.pi, 17.3])
def test_improved_threshold_strictly_below_classic(alpha):
    improved = improved_interpolation_threshold(alpha)
    classic = tung_threshold(alpha)
    assert improved < classic
    assert improved / classic == pytest.approx(0.952313, abs=1e-6)
    assert improved / covering_sampling_threshold(alpha) == \
        pytest.approx(SQRT3, rel=1e-12)


@given(st.floats(min_value=0.05, max_value=40.0),
       st.floats(min_value=0.05, max_value=40.0))
@settings(max_examples=200, deadline=None)
def test_threshold_and_bound_are_equivalent_conditions(alpha, sigma):
    thr = improved_interpolation_threshold(alpha)
    assume(abs(sigma - thr) > 1e-9 * thr)
    assert (sigma > thr) == (separation_density_bound(sigma) < alpha / math.pi)
    thr_s = covering_sampling_threshold(alpha)
    assume(abs(sigma - thr_s) > 1e-9 * thr_s)
    assert (sigma < thr_s) == (covering_density_bound(sigma) > alpha / math.pi)


# ---------------------------------------------------------------------------
# certificate structure


def test_certificate_invariants_enforced():
    with pytest.raises(ValueError):
        Certificate(verdict=VERDICT_INTERPOLATING, route=ROUTE_COVERING,
                    sigma=2.0, bound=0.1, critical=0.3, margin=0.2, notes="")
    with pytest.raises(ValueError):
        Certificate(verdict=VERDICT_INTERPOLATING, route=ROUTE_SEPARATION_IMPROVED,
                    sigma=2.0, bound=0.5, critical=0.3, margin=-0.2, notes="")
    with pytest.raises(ValueError):
        Certificate(verdict=VERDICT_SAMPLING, route=ROUTE_COVERING,
                    sigma=1.0, bound=0.1, critical=0.3, margin=-0.2, notes="")
    with pytest.raises(ValueError):
        Certificate(verdict="maybe", route=ROUTE_COVERING,
                    sigma=1.0, bound=0.1, critical=0.3, margin=0.0, notes="")


def test_certificate_json_fields_are_stable():
    cert = Certificate(verdict=VERDICT_SAMPLING, route=ROUTE_COVERING,
                       sigma=1.0, bound=0.5, critical=0.3, margin=0.2, notes="n")
    data = json.loads(cert.to_json())
    assert set(data) == {"verdict", "route", "sigma", "bound", "critical",
                         "margin", "notes"}


# ---------------------------------------------------------------------------
# separation certificates


def hex_set(spacing, side=30.0):
    return generate(LatticeSpec(HEXAGONAL, spacing), Region.centered_square(side))


def test_hex_spacing2_certified_interpolating():
    cert = certify_interpolating_by_separation(hex_set(2.0), FockParams(1.0))
    assert cert.verdict == VERDICT_INTERPOLATING
    assert cert.route == ROUTE_SEPARATION_IMPROVED
    assert cert.bound == pytest.approx(0.288675, abs=1e-5)
    assert cert.critical == pytest.approx(0.318310, abs=1e-6)
    assert cert.margin > 0
    assert cert.bound < cert.critical


def test_hex_spacing_195_certified_only_by_improved_threshold():
    # the headline gap: 1.95 clears 1.904626 but not the classic 2.0
    cert = certify_interpolating_by_separation(hex_set(1.95), FockParams(1.0))
    assert cert.verdict == VERDICT_INTERPOLATING
    assert cert.route == ROUTE_SEPARATION_IMPROVED
    assert cert.sigma == pytest.approx(1.95, rel=1e-9)
    assert cert.sigma < tung_threshold(1.0)
    assert "NOT met" in cert.notes


def test_hex_spacing_15_inconclusive():
    cert = certify_interpolating_by_separation(hex_set(1.5), FockParams(1.0))
    assert cert.verdict == VERDICT_INCONCLUSIVE
    assert cert.route == ROUTE_SEPARATION_IMPROVED


def test_interpolation_verdict_monotone_in_alpha():
    ps = hex_set(1.95)
    certified = [certify_interpolating_by_separation(ps, FockParams(a)).verdict
                 == VERDICT_INTERPOLATING
                 for a in (0.8, 0.95, 1.0, 1.5, 3.0)]
    # once certified at some alpha, certified at every larger alpha
    assert certified == sorted(certified)


# ---------------------------------------------------------------------------
# covering certificates


@pytest.fixture(scope="module")
def hex18_small():
    return generate(LatticeSpec(HEXAGONAL, 1.8), Region.centered_square(12))


def test_covering_certificate_certifies_sampling(hex18_small):
    cert = certify_sampling_by_covering(hex18_small, 1.05, Region.centered_square(6),
                                        GridSpec(0.01), FockParams(1.0))
    assert cert.verdict == VERDICT_SAMPLING
    assert cert.route == ROUTE_COVERING
    assert cert.bound == pytest.approx(0.349116, abs=1e-6)
    assert cert.bound > cert.critical
    assert cert.margin == pytest.approx(cert.bound - cert.critical, rel=1e-12)


def test_covering_certificate_detects_non_covering(hex18_small):
    cert = certify_sampling_by_covering(hex18_small, 1.0, Region.centered_square(6),
                                        GridSpec(0.01), FockParams(1.0))
    assert cert.verdict == VERDICT_INCONCLUSIVE
    assert "not a covering" in cert.notes


def test_covering_certificate_sigma_above_threshold(hex18_small):
    cert = certify_sampling_by_covering(hex18_small, 1.2, Region.centered_square(6),
                                        GridSpec(0.01), FockParams(1.0))
    assert cert.verdict == VERDICT_INCONCLUSIVE
    assert "sigma above threshold" in cert.notes


def test_sampling_verdict_monotone_in_alpha(hex18_small):
    region = Region.centered_square(6)
    grid = GridSpec(0.01)
    # covering holds at sigma=1.05; certification depends on the threshold
    certified = [certify_sampling_by_covering(hex18_small, 1.05, region, grid,
                                              FockParams(a)).verdict == VERDICT_SAMPLING
                 for a in (2.0, 1.2, 1.0, 0.9)]
    # once certified at some alpha, certified at every smaller alpha
    assert certified == sorted(certified)


# ---------------------------------------------------------------------------
# empirical classification


def test_classify_hex_unit_lattice_indicates_sampling():
    ps = generate(LatticeSpec(HEXAGONAL, 1.0), Region.centered_square(84))
    cert = classify_by_density(ps, FockParams(1.0))
    assert cert.verdict == VERDICT_INCONCLUSIVE
    assert cert.route == ROUTE_DENSITY_EMPIRICAL
    assert "sampling indication" in cert.notes
    assert "non-certified" in cert.notes
    assert cert.bound > cert.critical


def test_classify_dense_critical_flips_indication():
    ps = generate(LatticeSpec(HEXAGONAL, 1.0), Region.centered_square(84))
    cert = classify_by_density(ps, FockParams(4.0))
    assert cert.critical == pytest.approx(4.0 / math.pi, rel=1e-12)
    assert "no sampling indication" in cert.notes
    assert "interpolating indication" in cert.notes


def test_classify_sparse_lattice_consistent_with_separation_route():
    ps = generate(LatticeSpec(HEXAGONAL, 2.0), Region.centered_square(80))
    params = FockParams(1.0)
    emp = classify_by_density(ps, params)
    cert = certify_interpolating_by_separation(ps, params)
    assert cert.verdict == VERDICT_INTERPOLATING
    assert "interpolating indication" in emp.notes
    assert emp.bound == pytest.approx(separation_density_bound(2.0), rel=0.03)
