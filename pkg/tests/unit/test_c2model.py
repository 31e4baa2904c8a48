# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

from unittest.mock import patch

import pytest
from sympy import expand

from mackeylab import c2model, complexes
from mackeylab.c2model import C2HomotopyModel, C2Map, Level
from mackeylab.exceptions import (
    CompatibilityFailure,
    CrossCheckFailure,
    FactorizationFailure,
    InvalidDegree,
    MalformedModel,
)
from mackeylab.gem import GradedPolyMap, GradedRing


def _finding(report, item):
    return next(f for f in report.findings if f.item == item)


@pytest.mark.parametrize(
    "i, expected",
    [
        (2, {"underlying": {"4": 1}, "fixed": {"4": 1}}),
        (3, {"underlying": {"6": 1}, "fixed": {}}),
        (4, {"underlying": {"8": 1}, "fixed": {"8": 1}}),
        (5, {"underlying": {"10": 1}, "fixed": {}}),
    ],
)
def test_model_kz_rho(i, expected):
    assert c2model.model_KZ_rho(i).homotopy().to_json() == expected


def test_model_ka_rho():
    model = c2model.model_KA_rho(2)
    assert model.homotopy().to_json() == {"underlying": {"4": 1}, "fixed": {"2": 1, "4": 1}}
    assert model.restrict.to_json() == {"y4": "y4_fp"}
    assert model.ring(Level.FIXED).names == ("x2_fp", "y4_fp")
    assert model.ring(Level.UNDERLYING).names == ("y4",)
    assert C2HomotopyModel.of_model(model) == model.homotopy()
    assert model.to_json() == {
        "name": "K(A,2rho)",
        "underlying": [{"name": "y4", "degree": 4}],
        "fixed": [{"name": "x2_fp", "degree": 2}, {"name": "y4_fp", "degree": 4}],
        "restrict": {"y4": "y4_fp"},
    }


@pytest.mark.parametrize(
    "builder, index",
    [
        (c2model.model_KZ_rho, 1),
        (c2model.model_KA_rho, 3),
        (c2model.model_F, 0),
        (c2model.model_KI, 3),
        (c2model.check_corollary_even, 0),
        (c2model.check_corollary_odd, 0),
    ],
)
def test_invalid_index(builder, index):
    with pytest.raises(InvalidDegree):
        builder(index)


def test_cross_check_against_wrong_complex():
    wrong = complexes.rho_suspension_Z(3)
    with patch("mackeylab.c2model.rho_suspension_Z", return_value=wrong):
        with pytest.raises(CrossCheckFailure, match="K\\(Z,2rho\\)"):
            c2model.model_KZ_rho(2)


def test_model_bsur_even_rank():
    model = c2model.model_BSUR(4)
    assert model.underlying.names == ("c2", "c3", "c4")
    assert model.fixed.names == ("p1", "e4")
    assert model.restrict.to_json() == {"c2": "p1", "c3": "0", "c4": "e4**2"}


def test_model_bsur_odd_rank():
    model = c2model.model_BSUR(5)
    assert model.fixed.names == ("p1", "p2")
    assert model.restrict.to_json() == {"c2": "p1", "c3": "0", "c4": "p2", "c5": "0"}


def test_model_bsur_invalid():
    with pytest.raises(InvalidDegree):
        c2model.model_BSUR(1)


def test_model_with_mismatched_restriction():
    ring = GradedRing.of(("a2", 2))
    other = GradedRing.of(("b4", 4))
    with pytest.raises(MalformedModel):
        c2model.C2CohModel("bad", ring, other, GradedPolyMap(ring, ring, {}))


def test_product():
    total = c2model.product(c2model.model_KZ_rho(2), c2model.model_KZ_rho(3))
    assert total.underlying.names == ("z4", "z6")
    assert total.fixed.names == ("z4_fp",)
    assert total.restrict.to_json() == {"z4": "z4_fp", "z6": "0"}
    assert c2model.product().underlying == c2model.TRIVIAL_RING


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_square_and_norm_are_compatible(n):
    assert c2model.map_square(n).compatibility_defects() == []
    assert c2model.map_norm(n).compatibility_defects() == []
    assert c2model.map_square(n).u_pullback == c2model.map_norm(n).u_pullback


@pytest.mark.parametrize("n", [1, 2, 3])
def test_corrupted_norm_fails_on_y(n):
    norm = c2model.corrupted_norm(n)
    assert norm.compatibility_defects() == [f"y{8 * n}"]
    with pytest.raises(CompatibilityFailure) as excinfo:
        norm.require_compatible()
    assert excinfo.value.generators == [f"y{8 * n}"]


def test_incompatible_map():
    broken = c2model.map_square(1).with_image(Level.FIXED, "y8_fp", 0)
    assert broken.compatibility_defects() == ["y8"]
    with pytest.raises(CompatibilityFailure) as excinfo:
        broken.require_compatible()
    assert excinfo.value.generators == ["y8"]


def test_pullbacks_must_match_models():
    square = c2model.map_square(1)
    with pytest.raises(MalformedModel):
        C2Map(square.source, square.target, square.f_pullback, square.u_pullback)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_square_minus_norm(n):
    difference = c2model.map_square_minus_norm(n)
    fixed = c2model.model_KA_rho(2 * n).fixed
    expected = fixed.gen(f"x{2 * n}_fp") ** 2 - fixed.gen(f"y{4 * n}_fp")
    assert expand(difference.f_pullback.image(f"v{4 * n}_fp") - expected) == 0
    assert difference.u_pullback.is_zero()


def test_square_minus_norm_needs_agreement_on_y():
    norm = c2model.map_norm(1).with_image(Level.FIXED, "y8_fp", 0)
    with pytest.raises(FactorizationFailure, match="y8_fp"):
        c2model.map_square_minus_norm(1, norm=norm)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_euler_class_is_killed_by_square_minus_norm(n):
    euler = c2model.euler_class_map(n)
    assert euler.compatibility_defects() == []
    assert c2model.map_square_minus_norm(n).compose(euler).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_euler_class_factors_through_fiber(n):
    factored = c2model.fiber_inclusion(n).compose(c2model.euler_lift(n))
    assert factored == c2model.euler_class_map(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fiber_of_square_minus_norm_is_f(n):
    fiber = c2model.fiber_homotopy_c2(c2model.map_square_minus_norm(n))
    assert fiber == c2model.model_F(n).homotopy()


@pytest.mark.parametrize("n, max_degree", [(1, 8), (2, 16), (1, 32), (2, 32), (3, 32)])
def test_main_theorem(n, max_degree):
    report = c2model.check_main_theorem(n, max_degree)
    assert report.passed
    assert report.params == {"n": n, "max_degree": max_degree}


def test_main_theorem_needs_euler_class():
    report = c2model.check_main_theorem(1, 8, drop_euler=True)
    assert not report.passed
    assert report.params["drop_euler"] is True
    assert _finding(report, "first series difference (fixed)").got == 2
    assert _finding(report, "first series difference (underlying)").ok


def test_main_theorem_with_corrupted_comparison():
    comparison = c2model.theorem_comparison(1).with_image(Level.FIXED, "x2_fp", 0)
    report = c2model.check_main_theorem(1, 8, comparison=comparison)
    assert not report.passed
    assert _finding(report, "compatibility square").got == ["w4"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_main_theorem_detects_any_dropped_generator(n):
    comparison = c2model.theorem_comparison(n)
    for level in Level:
        for generator in comparison.pullback(level).assignment:
            broken = comparison.with_image(level, generator, 0)
            report = c2model.check_main_theorem(n, 32, comparison=broken)
            assert not report.passed, generator


@pytest.mark.parametrize("n", [1, 2, 3])
def test_odd_theorem_detects_any_dropped_generator(n):
    comparison = c2model.odd_comparison(n)
    assert c2model.check_odd_theorem(n, 32, comparison).passed
    for level in Level:
        for generator in comparison.pullback(level).assignment:
            broken = comparison.with_image(level, generator, 0)
            assert not c2model.check_odd_theorem(n, 32, broken).passed, generator


@pytest.mark.parametrize("n, max_degree", [(0, 32), (2, 15)])
def test_main_theorem_invalid(n, max_degree):
    with pytest.raises(InvalidDegree):
        c2model.check_main_theorem(n, max_degree)


def test_odd_theorem():
    assert c2model.check_odd_theorem(1, 12).passed
    comparison = c2model.odd_comparison(1).with_image(Level.FIXED, "z4_fp", 0)
    assert not c2model.check_odd_theorem(1, 12, comparison).passed
    with pytest.raises(InvalidDegree):
        c2model.check_odd_theorem(1, 11)
    with pytest.raises(InvalidDegree):
        c2model.check_odd_theorem(0, 32)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_corollary_even(n, expected_tables):
    report = c2model.check_corollary_even(n)
    assert report.passed
    assert _finding(report, "homotopy dims").got == expected_tables["corollary_even"][str(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_corollary_odd(n, expected_tables):
    report = c2model.check_corollary_odd(n)
    assert report.passed
    assert _finding(report, "homotopy dims").got == expected_tables["corollary_odd"][str(n)]


def test_homotopy_model_arithmetic():
    a = C2HomotopyModel({3: 1}, {1: 1})
    b = C2HomotopyModel({3: 1}, {2: 1, 5: 0})
    assert a.mismatches(b) == ["fixed:1", "fixed:2"]
    assert (a + b).to_json() == {"underlying": {"3": 2}, "fixed": {"1": 1, "2": 1}}
    assert a.shift(1) == C2HomotopyModel({4: 1}, {2: 1})
    assert a.level(Level.FIXED) == {1: 1}
