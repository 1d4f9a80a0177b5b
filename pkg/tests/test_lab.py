import json
import math

import numpy as np
import pytest
from scipy import integrate, special

from blaschke_hp import DyadicSector, StolzAngle, ZeroList, build_tree, in_stolz
from blaschke_hp.dyadic import verbitskii_levels
from blaschke_hp.exceptions import DiskDomainError, ParameterError
from blaschke_hp.lab import (FUNCTIONALS, FamilySpec, FunctionalReport, SweepReport,
                             auto_config, band_spread, fit_slope, functional_report, generate,
                             member_report, rng_from, single_functional, stolz_counts, sweep,
                             sweep_exponent)
from blaschke_hp.norms import DEFAULT_CONFIG, QuadratureConfig

import families

SINGLE = FamilySpec("single_zero_scaling", {"deltas": [2.0 ** -k for k in range(4, 13)]})


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def test_radial_example():
    zl = generate(FamilySpec("radial_separated", {"depth": 3}))
    assert sorted(zl.points.real) == [0.5, 0.75, 0.875]
    assert np.all(zl.points.imag == 0)


def test_stolz_all_ones_is_radial():
    a = generate(FamilySpec("stolz_confined", {"beta": 2.0, "counts": [1] * 6}))
    b = generate(FamilySpec("radial_separated", {"depth": 6}))
    assert a == b


@pytest.mark.parametrize("profile", ["one", "linear", "sqrt"])
@pytest.mark.parametrize("beta", [1.5, 2.0, 4.0])
def test_stolz_confined(profile, beta):
    depth = 8
    zl = generate(FamilySpec("stolz_confined", {"beta": beta, "profile": profile, "depth": depth}))
    assert np.all(in_stolz(zl.points, StolzAngle(0.0, beta)))
    want = dict(enumerate(stolz_counts(profile, depth), start=1))
    assert verbitskii_levels(zl) == want


def test_stolz_counts_profiles():
    assert stolz_counts("one", 4) == [1, 1, 1, 1]
    assert stolz_counts("linear", 4) == [1, 2, 3, 4]
    assert stolz_counts("sqrt", 6) == [1, 2, 2, 4, 5, 8]
    with pytest.raises(ParameterError):
        stolz_counts("cubic", 3)


def test_dyadic_full_level():
    zl = generate(FamilySpec("dyadic_pattern", {"levels": [5]}))
    tree = build_tree(zl)
    assert tree.level_counts(5) == {j: 1 for j in range(1, 17)}


def test_dyadic_cells_and_fill():
    zl = generate(FamilySpec("dyadic_pattern", {"cells": [[4, 3, 3], [6, 1, 1]]}))
    tree = build_tree(zl)
    assert tree.N(DyadicSector(4, 3)) == 3 and tree.N(DyadicSector(6, 1)) == 1
    a = generate(FamilySpec("dyadic_pattern", {"levels": [6], "fill": 0.5}, seed=4))
    b = generate(FamilySpec("dyadic_pattern", {"levels": [6], "fill": 0.5}, seed=4))
    assert a == b and 0 < a.degree < 32


def test_uniform_random_deterministic():
    spec = FamilySpec("uniform_random", {"n": 50, "r_max": 0.9}, seed=17)
    a, b = generate(spec), generate(spec)
    assert a == b and a.degree == 50
    assert np.all(np.abs(a.points) < 0.9)
    c = generate(FamilySpec("uniform_random", {"n": 50, "r_max": 0.9}, seed=18))
    assert a != c
    # the generator is counter based: the first draws are fixed by the seed alone
    assert rng_from(17).random() == np.random.Generator(np.random.Philox(17)).random()


def test_single_zero_and_origin():
    zl = generate(FamilySpec("single_zero_scaling", {"delta": 0.25, "theta": 1.0}))
    assert zl.points[0] == pytest.approx(0.75 * np.exp(1j))
    zl = generate(FamilySpec("single_zero_scaling", {"delta": 1.0, "multiplicity": 5}))
    assert zl.degree == 5 and zl.points[0] == 0


def test_generator_errors():
    with pytest.raises(ParameterError):
        FamilySpec("spiral")
    with pytest.raises(ParameterError):
        FamilySpec("radial_separated", rng="mt19937")
    with pytest.raises(DiskDomainError):
        generate(FamilySpec("single_zero_scaling", {"delta": 0.0}))
    with pytest.raises(DiskDomainError):
        generate(FamilySpec("radial_separated", {"depth": 60}))
    with pytest.raises(DiskDomainError):
        generate(FamilySpec("uniform_random", {"n": 3, "r_max": 1.0}))
    with pytest.raises(ParameterError):
        generate(SINGLE)


def test_grid_members_and_json():
    spec = FamilySpec("uniform_random", {"n": 8, "seeds": [1, 2, 3]})
    members = spec.members()
    assert [m.seed for m in members] == [1, 2, 3]
    assert all(m.grid is None for m in members)
    assert [m.driver() for m in SINGLE.members()] == [2.0 ** -k for k in range(4, 13)]
    back = FamilySpec.from_dict(json.loads(json.dumps(SINGLE.to_dict())))
    assert back.members() == SINGLE.members()


# ---------------------------------------------------------------------------
# functional reports
# ---------------------------------------------------------------------------

def test_auto_config():
    assert auto_config(4) == DEFAULT_CONFIG
    cfg = auto_config(200)
    assert cfg.refinement_depth == 8 and cfg.rel_tol == 2.0 ** -7
    assert auto_config(1000).refinement_depth == 6
    base = QuadratureConfig(refinement_depth=5, rel_tol=0.1)
    assert auto_config(50, base).refinement_depth == 5 and auto_config(50, base).rel_tol == 0.1


def test_report_origin_zero():
    p, c = 0.75, 0.5
    rep = functional_report(ZeroList.from_points([0j]), p, 2.0, c)
    assert not rep.errors and not rep.flags
    assert rep.hp_norm == pytest.approx(1.0, rel=1e-12)
    assert rep.value("cone_norm_p") == pytest.approx(1.0, rel=1e-12)
    # [DERIVED] |B| = |z|: I(c) = 2 pi int_0^c r (1-r)^(-1-p) dr
    ref = 2 * np.pi * integrate.quad(lambda r: r * (1 - r) ** (-1 - p), 0, c)[0]
    assert rep.sublevel_Ic == pytest.approx(ref, rel=DEFAULT_CONFIG.rel_tol)
    assert rep.besov_q1_sp == pytest.approx(2 * np.pi * special.beta(2, 1 - p), rel=1e-6)
    assert rep.protas_dyadic_sum == 0 and rep.corollary_F_sum == 0


def test_report_empty():
    rep = functional_report(ZeroList.empty(), 0.75)
    for name in FUNCTIONALS:
        if name == "verbitskii_sum":
            continue
        assert rep.value(name) == 0.0, name
    assert rep.degree == 0


def test_report_single_zero_ratios_present():
    rep = functional_report(ZeroList.from_points([1 - 2.0 ** -6]), 0.75)
    for name in ("sublevel_root", "cone_norm", "hp_norm"):
        assert math.isfinite(rep.value(name)) and rep.value(name) > 0


def test_report_flags_and_errors():
    rep = functional_report(ZeroList.from_points([0.5]), 0.4)
    assert any("outside (1/2, 1)" in f for f in rep.flags)
    cfg = QuadratureConfig(refinement_depth=0, rel_tol=1e-9)
    rep = functional_report(ZeroList.from_points([0.5, -0.4j]), 0.75, cfg=cfg)
    assert "sublevel_Ic" in rep.errors and math.isnan(rep.sublevel_Ic)
    assert math.isfinite(rep.hp_norm) and math.isfinite(rep.cone_norm)
    rep = functional_report(ZeroList.from_points([0.5, -0.4j]), 0.75, cfg=cfg, strict=False)
    assert not rep.errors
    with pytest.raises(ParameterError):
        functional_report(ZeroList.from_points([0.5]), 1.2)
    with pytest.raises(ParameterError):
        functional_report(ZeroList.from_points([0.5]), 0.75, alpha=1.0)


def test_report_stolz_confinement_flag():
    zl = ZeroList.from_points([0.9j])
    rep = functional_report(zl, 0.75, stolz_beta=2.0)
    assert any("not confined" in f for f in rep.flags)
    assert rep.verbitskii_sum is not None


def test_report_round_trip():
    rep = member_report(FamilySpec("radial_separated", {"depth": 3}))
    d = json.loads(rep.to_json())
    assert d["schema_version"] == 1
    back = FunctionalReport.from_dict(d)
    assert back.to_json() == rep.to_json()
    assert rep.csv_header().count(",") == rep.csv_row().count(",")


def test_reports_are_deterministic():
    spec = FamilySpec("uniform_random", {"n": 12, "r_max": 0.95}, seed=9)
    assert member_report(spec).to_json() == member_report(spec).to_json()


def test_radial_truncation_monotone():
    # every functional is nondecreasing as zeros are added along the radius
    rows = [member_report(FamilySpec("radial_separated", {"depth": J})) for J in range(1, 7)]
    for name in FUNCTIONALS:
        v = [r.value(name) for r in rows]
        slack = [DEFAULT_CONFIG.rel_tol * x if name.startswith("sublevel") else 1e-12 * x
                 for x in v]
        assert all(b >= a - s for a, b, s in zip(v, v[1:], slack)), name


def test_single_functional_matches_report():
    zl = generate(FamilySpec("uniform_random", {"n": 6, "r_max": 0.9}, seed=2))
    rep = functional_report(zl, 0.75)
    for name in FUNCTIONALS:
        if name == "verbitskii_sum":  # only reported for Stolz-confined input
            assert rep.verbitskii_sum is None
            continue
        assert single_functional(zl, name, 0.75) == pytest.approx(rep.value(name), rel=1e-12), name


# ---------------------------------------------------------------------------
# slopes and sweeps
# ---------------------------------------------------------------------------

def test_fit_slope():
    x = np.logspace(-4, 0, 7)
    assert fit_slope(x, 3 * x ** 0.4) == pytest.approx(0.4, abs=1e-12)
    with pytest.raises(ParameterError):
        fit_slope(x[:4], x[:4])
    with pytest.raises(ParameterError):
        fit_slope(np.linspace(1, 2, 8), np.linspace(1, 2, 8))
    with pytest.raises(ParameterError):
        fit_slope(x, -x)


@pytest.mark.parametrize("name, p", [("cone_norm_p", 0.75), ("hp_norm_p", 0.25),
                                     ("hp_norm_p", 0.75), ("sublevel_Ic", 0.75)])
def test_single_zero_exponents(name, p):
    # the single-zero quantities scale like delta^(1-p), and delta^p for the p < 1/2 norm
    assert 0.20 <= sweep_exponent(SINGLE, name, p) <= 0.30


def test_sweep_exponent_errors():
    short = FamilySpec("single_zero_scaling", {"deltas": [0.1, 0.01, 0.001]})
    with pytest.raises(ParameterError):
        sweep_exponent(short, "hp_norm_p")
    with pytest.raises(ParameterError):
        sweep_exponent(SINGLE, "sobolev")


def test_sweep_report_outputs(tmp_path):
    spec = FamilySpec("single_zero_scaling", {"deltas": [2.0 ** -k for k in range(2, 10, 2)]})
    rep = sweep(spec, functionals=())
    assert len(rep.members) == 4
    d = json.loads(rep.to_json())
    assert d["drivers"] == [2.0 ** -k for k in range(2, 10, 2)]
    lines = rep.to_csv().splitlines()
    assert len(lines) == 5 and lines[0].startswith("schema_version,member,driver")
    paths = rep.write_series(tmp_path, ["cone_norm_p"])
    rows = open(paths[0]).read().splitlines()
    assert rows[1] == "x,cone_norm_p" and len(rows) == 6
    with pytest.raises(ParameterError):
        sweep(spec, functionals=("cone_norm_p",))


def test_sweep_slopes_match_sweep_exponent():
    rep = sweep(SINGLE, functionals=("cone_norm_p",))
    assert rep.slopes["cone_norm_p"] == pytest.approx(sweep_exponent(SINGLE, "cone_norm_p"),
                                                      rel=1e-12)
    assert isinstance(rep, SweepReport)


# ---------------------------------------------------------------------------
# coherence bands (regression guards, frozen in tests/data/regression_bands.json)
# ---------------------------------------------------------------------------

def within(band, frozen, rel=0.01):
    return frozen[0] * (1 - rel) <= band[0] and band[1] <= frozen[1] * (1 + rel)


def test_separated_coherence(regression_bands):
    protas, cone = families.coherence_ratios()
    frozen = regression_bands["coherence"]
    assert within((min(protas), max(protas)), frozen["protas_over_direct"])
    assert within((min(cone), max(cone)), frozen["cone_p_over_direct"])
    assert band_spread((min(protas), max(protas))) <= 10
    assert band_spread((min(cone), max(cone))) <= 10


def test_preimage_coherence(regression_bands):
    r = families.preimage_ratios()
    assert len(r) == 60 and all(math.isfinite(x) and x > 0 for x in r)
    assert within((min(r), max(r)), regression_bands["preimage_over_hp_p"])
