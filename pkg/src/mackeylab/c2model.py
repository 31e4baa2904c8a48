# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Rational C2-spaces modeled by their cohomology on both levels.

A C2-space X whose underlying space and fixed points are rational GEMs is
recorded as the pair of cohomology rings (H*(X), H*(X^C2)) together with
the pullback along the inclusion X^C2 -> X. Maps of C2-spaces are pairs of
pullbacks whose restriction square must commute.

Generator names follow a fixed scheme so that products never collide:
``z{2i}`` for K(Z, i rho), ``y{2m}``/``x{m}_fp`` for K(A, m rho), ``w{4n}``
for F_{2n}, ``v{d}_fp`` for K(I, d) and ``c{i}``/``p{i}``/``e{2n}`` for the
characteristic classes of BSU_R. Fixed point generators carry the ``_fp``
suffix whenever the underlying ring has a generator of the same stem.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Any, Mapping, Optional

from pyrsistent import pmap
from sympy import expand

from mackeylab.complexes import HomologyGroup, homology, rho_suspension_A, rho_suspension_Z, shift
from mackeylab.exceptions import (
    CompatibilityFailure,
    CrossCheckFailure,
    FactorizationFailure,
    InvalidDegree,
    MalformedModel,
)
from mackeylab.gem import (
    GradedPolyMap,
    GradedRing,
    compose,
    fiber_dims,
    first_non_bijective_degree,
    hilbert_series,
    sphere_model,
)
from mackeylab.report import CheckReport

logger = logging.getLogger(__name__)

TRIVIAL_RING = GradedRing(())


class Level(Enum):
    """The two levels of a C2-space."""

    UNDERLYING = "underlying"
    FIXED = "fixed"


@dataclass(frozen=True)
class C2CohModel:
    """Cohomology of a C2-space on both levels with the fixed point restriction."""

    name: str = field(compare=False)
    underlying: GradedRing
    fixed: GradedRing
    restrict: GradedPolyMap

    def __post_init__(self) -> None:
        if self.restrict.source != self.fixed or self.restrict.target != self.underlying:
            raise MalformedModel(f"{self.name}: restriction does not go between its levels")

    def ring(self, level: Level) -> GradedRing:
        """Cohomology ring of one level."""
        return self.underlying if level is Level.UNDERLYING else self.fixed

    def homotopy(self) -> "C2HomotopyModel":
        """Homotopy dimensions of both levels."""
        return C2HomotopyModel(
            self.underlying.gem().homotopy_dims, self.fixed.gem().homotopy_dims
        )

    def to_json(self) -> dict[str, Any]:
        """Generators of both levels and the restriction."""
        return {
            "name": self.name,
            "underlying": self.underlying.to_json(),
            "fixed": self.fixed.to_json(),
            "restrict": self.restrict.to_json(),
        }


def make_model(
    name: str,
    underlying: GradedRing,
    fixed: GradedRing,
    restrict: Mapping[str, Any],
) -> C2CohModel:
    """Model from rings and the restriction images of underlying generators."""
    return C2CohModel(
        name, underlying, fixed, GradedPolyMap(fixed, underlying, restrict, f"{name}.restrict")
    )


def product(*models: C2CohModel) -> C2CohModel:
    """Product of C2-spaces: generators concatenated, restriction componentwise.

    Args:
        models (C2CohModel): factors with pairwise distinct generator names

    Returns:
        C2CohModel: the product, trivial when no factor is given
    """
    underlying = reduce(GradedRing.concat, (m.underlying for m in models), TRIVIAL_RING)
    fixed = reduce(GradedRing.concat, (m.fixed for m in models), TRIVIAL_RING)
    restrict: dict[str, Any] = {}
    for m in models:
        restrict.update(m.restrict.assignment)
    return make_model(" x ".join(m.name for m in models) or "pt", underlying, fixed, restrict)


@dataclass(frozen=True)
class C2Map:
    """Map of C2-spaces recorded by its pullbacks on both levels."""

    source: C2CohModel
    target: C2CohModel
    u_pullback: GradedPolyMap
    f_pullback: GradedPolyMap
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if (self.u_pullback.source, self.u_pullback.target) != (
            self.source.underlying,
            self.target.underlying,
        ) or (self.f_pullback.source, self.f_pullback.target) != (
            self.source.fixed,
            self.target.fixed,
        ):
            raise MalformedModel(f"{self.name}: pullbacks do not match the models")

    @classmethod
    def build(
        cls,
        name: str,
        source: C2CohModel,
        target: C2CohModel,
        underlying: Mapping[str, Any],
        fixed: Mapping[str, Any],
    ) -> "C2Map":
        """Map from generator images on both levels."""
        return cls(
            source,
            target,
            GradedPolyMap(source.underlying, target.underlying, underlying, f"{name}.u"),
            GradedPolyMap(source.fixed, target.fixed, fixed, f"{name}.fp"),
            name,
        )

    def pullback(self, level: Level) -> GradedPolyMap:
        """Pullback on one level."""
        return self.u_pullback if level is Level.UNDERLYING else self.f_pullback

    def compatibility_defects(self) -> list[str]:
        """Target underlying generators on which the restriction square fails."""
        via_underlying = compose(self.u_pullback, self.source.restrict)
        via_fixed = compose(self.target.restrict, self.f_pullback)
        return [
            g
            for g in self.target.underlying.names
            if expand(via_underlying.image(g) - via_fixed.image(g)) != 0
        ]

    def require_compatible(self) -> "C2Map":
        """Return self if the restriction square commutes.

        Returns:
            C2Map: this map

        Raises:
            CompatibilityFailure: naming the generators where it does not
        """
        defects = self.compatibility_defects()
        if defects:
            raise CompatibilityFailure(self.name, defects)
        return self

    def compose(self, other: "C2Map") -> "C2Map":
        """This map after ``other``."""
        return C2Map(
            other.source,
            self.target,
            compose(self.u_pullback, other.u_pullback),
            compose(self.f_pullback, other.f_pullback),
            f"{self.name}.{other.name}",
        )

    def is_zero(self) -> bool:
        """True if both pullbacks vanish on every generator."""
        return self.u_pullback.is_zero() and self.f_pullback.is_zero()

    def with_image(self, level: Level, generator: str, image: Any) -> "C2Map":
        """Copy of this map with one generator image replaced."""
        images = {
            lvl: dict(self.pullback(lvl).assignment) for lvl in (Level.UNDERLYING, Level.FIXED)
        }
        images[level][generator] = image
        return C2Map.build(
            self.name,
            self.source,
            self.target,
            images[Level.UNDERLYING],
            images[Level.FIXED],
        )


def _raw_dims(dims: Mapping[int, int]) -> Mapping[int, int]:
    return pmap({k: v for k, v in dims.items() if v})


@dataclass(frozen=True)
class C2HomotopyModel:
    """Homotopy dimensions of both levels of a rational C2-space.

    Degrees below 2 are allowed here so that desuspensions of GEMs can be compared.
    """

    underlying: Mapping[int, int]
    fixed: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "underlying", _raw_dims(self.underlying))
        object.__setattr__(self, "fixed", _raw_dims(self.fixed))

    @classmethod
    def of_model(cls, model: C2CohModel) -> "C2HomotopyModel":
        """Homotopy of a cohomology model."""
        return model.homotopy()

    @classmethod
    def from_homology(cls, groups: Mapping[int, HomologyGroup]) -> "C2HomotopyModel":
        """Homotopy of the Eilenberg-MacLane space of a complex: its homology dimensions."""
        return cls(
            {k: h.functor.underlying_dim for k, h in groups.items()},
            {k: h.functor.fixed_dim for k, h in groups.items()},
        )

    def level(self, level: Level) -> Mapping[int, int]:
        """Dimensions on one level."""
        return self.underlying if level is Level.UNDERLYING else self.fixed

    def shift(self, s: int) -> "C2HomotopyModel":
        """Suspension by s (desuspension for negative s)."""
        return C2HomotopyModel(
            {k + s: v for k, v in self.underlying.items()},
            {k + s: v for k, v in self.fixed.items()},
        )

    def __add__(self, other: "C2HomotopyModel") -> "C2HomotopyModel":
        """Product of spaces: dimensions add."""
        return C2HomotopyModel(
            {
                k: self.underlying.get(k, 0) + other.underlying.get(k, 0)
                for k in set(self.underlying) | set(other.underlying)
            },
            {
                k: self.fixed.get(k, 0) + other.fixed.get(k, 0)
                for k in set(self.fixed) | set(other.fixed)
            },
        )

    def mismatches(self, other: "C2HomotopyModel") -> list[str]:
        """Level and degree of every disagreement, ``level:degree``."""
        found = []
        for lvl in Level:
            mine, theirs = self.level(lvl), other.level(lvl)
            for k in sorted(set(mine) | set(theirs)):
                if mine.get(k, 0) != theirs.get(k, 0):
                    found.append(f"{lvl.value}:{k}")
        return found

    def to_json(self) -> dict[str, dict[str, int]]:
        """{level: {degree: dim}}"""
        return {
            lvl.value: {str(k): self.level(lvl)[k] for k in sorted(self.level(lvl))}
            for lvl in Level
        }


def _cross_check(model: C2CohModel, groups: Mapping[int, HomologyGroup]) -> C2CohModel:
    expected = C2HomotopyModel.from_homology(groups)
    got = model.homotopy()
    if expected != got:
        raise CrossCheckFailure(
            f"{model.name}: ring generators {got.to_json()} disagree with homology "
            f"{expected.to_json()}"
        )
    return model


def model_KZ_rho(i: int) -> C2CohModel:  # noqa: N802
    """K(Z, i rho): underlying K(Q, 2i), fixed K(Q, 2i) for even i and a point for odd i.

    Args:
        i (int): multiple of rho, at least 2

    Returns:
        C2CohModel: with restriction z -> z_fp (i even) or z -> 0 (i odd)

    Raises:
        InvalidDegree: if i < 2
        CrossCheckFailure: if the generators disagree with the homology of the complex
    """
    if i < 2:
        raise InvalidDegree(f"K(Z, i rho) model needs i >= 2, got {i}")
    name = f"z{2 * i}"
    underlying = GradedRing.of((name, 2 * i))
    if i % 2:
        model = make_model(f"K(Z,{i}rho)", underlying, TRIVIAL_RING, {name: 0})
    else:
        fixed = GradedRing.of((f"{name}_fp", 2 * i))
        model = make_model(f"K(Z,{i}rho)", underlying, fixed, {name: fixed.gen(f"{name}_fp")})
    return _cross_check(model, homology(rho_suspension_Z(i)))


def model_KA_rho(m: int) -> C2CohModel:  # noqa: N802
    """K(A, m rho) for even m: underlying K(Q, 2m), fixed K(Q, m) x K(Q, 2m).

    Args:
        m (int): even multiple of rho, at least 2

    Returns:
        C2CohModel: restriction y -> y_fp, projection onto the second factor

    Raises:
        InvalidDegree: if m is odd or below 2
        CrossCheckFailure: if the generators disagree with the homology of the complex
    """
    if m < 2 or m % 2:
        raise InvalidDegree(f"K(A, m rho) model needs even m >= 2, got {m}")
    y = f"y{2 * m}"
    underlying = GradedRing.of((y, 2 * m))
    fixed = GradedRing.of((f"x{m}_fp", m), (f"{y}_fp", 2 * m))
    model = make_model(f"K(A,{m}rho)", underlying, fixed, {y: fixed.gen(f"{y}_fp")})
    return _cross_check(model, homology(rho_suspension_A(m)))


def model_F(n: int) -> C2CohModel:  # noqa: N802
    """F_{2n}, the fiber of the square minus the norm: underlying K(Q, 4n), fixed K(Q, 2n)."""
    if n < 1:
        raise InvalidDegree(f"F_2n model needs n >= 1, got {n}")
    w, x = f"w{4 * n}", f"x{2 * n}_fp"
    underlying = GradedRing.of((w, 4 * n))
    fixed = GradedRing.of((x, 2 * n))
    return make_model(f"F_{2 * n}", underlying, fixed, {w: fixed.gen(x) ** 2})


def model_KI(d: int) -> C2CohModel:  # noqa: N802
    """K(I, d) = K(I, d rho): trivial underlying space, fixed K(Q, d)."""
    if d < 2 or d % 2:
        raise InvalidDegree(f"K(I, d) model needs even d >= 2, got {d}")
    fixed = GradedRing.of((f"v{d}_fp", d))
    return make_model(f"K(I,{d})", TRIVIAL_RING, fixed, {})


def model_BSUR(m: int) -> C2CohModel:  # noqa: N802
    """BSU_R(m) with complex conjugation: Chern classes upstairs, Pontryagin and Euler fixed.

    Args:
        m (int): rank, at least 2

    Returns:
        C2CohModel: underlying Q[c_2..c_m]; fixed Q[p_1..p_n] for m = 2n+1 and
        Q[p_1..p_{n-1}, e_{2n}] for m = 2n; restriction c_{2i} -> p_i, c_{2n} -> e^2 when
        m = 2n, odd Chern classes -> 0

    Raises:
        InvalidDegree: if m < 2
    """
    if m < 2:
        raise InvalidDegree(f"BSU_R model needs m >= 2, got {m}")
    half = m // 2
    underlying = GradedRing.of(*((f"c{i}", 2 * i) for i in range(2, m + 1)))
    pontryagin = half if m % 2 else half - 1
    pairs = [(f"p{i}", 4 * i) for i in range(1, pontryagin + 1)]
    if m % 2 == 0:
        pairs.append((f"e{m}", m))
    fixed = GradedRing.of(*pairs)
    restrict: dict[str, Any] = {}
    for i in range(2, m + 1):
        if i % 2:
            restrict[f"c{i}"] = 0
        elif i // 2 <= pontryagin:
            restrict[f"c{i}"] = fixed.gen(f"p{i // 2}")
        else:
            restrict[f"c{i}"] = fixed.gen(f"e{m}") ** 2
    return make_model(f"BSU_R({m})", underlying, fixed, restrict)


def map_square(n: int) -> C2Map:
    """Cup square K(A, 2n rho) -> K(A, 4n rho): y -> y^2 underlying, (x, y) -> (x^2, y^2) fixed."""
    source, target = model_KA_rho(2 * n), model_KA_rho(4 * n)
    x, y = source.fixed.gen(f"x{2 * n}_fp"), source.fixed.gen(f"y{4 * n}_fp")
    return C2Map.build(
        "square",
        source,
        target,
        {f"y{8 * n}": source.underlying.gen(f"y{4 * n}") ** 2},
        {f"x{4 * n}_fp": x**2, f"y{8 * n}_fp": y**2},
    ).require_compatible()


def _norm(n: int, fixed_y_image: Optional[Any] = None) -> C2Map:
    source, target = model_KA_rho(2 * n), model_KA_rho(4 * n)
    y = source.fixed.gen(f"y{4 * n}_fp")
    return C2Map.build(
        "norm",
        source,
        target,
        {f"y{8 * n}": source.underlying.gen(f"y{4 * n}") ** 2},
        {f"x{4 * n}_fp": y, f"y{8 * n}_fp": y**2 if fixed_y_image is None else fixed_y_image},
    )


def map_norm(n: int) -> C2Map:
    """Norm K(A, 2n rho) -> K(A, 4n rho): cup square underlying, (x, y) -> (y, y^2) fixed.

    Raises:
        CompatibilityFailure: if the restriction square does not commute
    """
    return _norm(n).require_compatible()


def corrupted_norm(n: int) -> C2Map:
    """Norm whose fixed image of y_{8n} is x_{2n}^2 y_{4n} instead of y_{4n}^2.

    The map is degree-valid but its restriction square fails on y_{8n}; it is returned
    unchecked so that callers can report the defect.
    """
    fixed = model_KA_rho(2 * n).fixed
    x, y = fixed.gen(f"x{2 * n}_fp"), fixed.gen(f"y{4 * n}_fp")
    return _norm(n, x**2 * y)


def map_square_minus_norm(
    n: int, square: Optional[C2Map] = None, norm: Optional[C2Map] = None
) -> C2Map:
    """Difference of the square and the norm, factored through K(I, 4n).

    Args:
        n (int): at least 1
        square (Optional[C2Map]): cup square, built when omitted
        norm (Optional[C2Map]): norm, built when omitted

    Returns:
        C2Map: into model_KI(4n) with fixed pullback v -> x^2 - y

    Raises:
        FactorizationFailure: if the difference is nonzero underlying or on y_fp
    """
    square = square or map_square(n)
    norm = norm or map_norm(n)
    for level, generator in ((Level.UNDERLYING, f"y{8 * n}"), (Level.FIXED, f"y{8 * n}_fp")):
        residue = expand(
            square.pullback(level).image(generator) - norm.pullback(level).image(generator)
        )
        if residue != 0:
            raise FactorizationFailure(
                f"square - norm is {residue} on {generator}, cannot factor through K(I, {4 * n})"
            )
    x = f"x{4 * n}_fp"
    return C2Map.build(
        "square-norm",
        square.source,
        model_KI(4 * n),
        {},
        {f"v{4 * n}_fp": square.f_pullback.image(x) - norm.f_pullback.image(x)},
    ).require_compatible()


def map_square_ideal(n: int) -> C2Map:
    """Cup square K(I, 2n) -> K(I, 4n) on fixed points."""
    source, target = model_KI(2 * n), model_KI(4 * n)
    v = source.fixed.gen(f"v{2 * n}_fp")
    return C2Map.build(
        "square", source, target, {}, {f"v{4 * n}_fp": v**2}
    ).require_compatible()


def euler_class_map(n: int) -> C2Map:
    """Euler class BSU_R(2n) -> K(A, 2n rho): y -> c_{2n} underlying, (e, e^2) fixed."""
    source, target = model_BSUR(2 * n), model_KA_rho(2 * n)
    e = source.fixed.gen(f"e{2 * n}")
    return C2Map.build(
        "euler",
        source,
        target,
        {f"y{4 * n}": source.underlying.gen(f"c{2 * n}")},
        {f"x{2 * n}_fp": e, f"y{4 * n}_fp": e**2},
    ).require_compatible()


def fiber_inclusion(n: int) -> C2Map:
    """F_{2n} -> K(A, 2n rho): identity underlying, x -> (x, x^2) on fixed points."""
    source, target = model_F(n), model_KA_rho(2 * n)
    x = source.fixed.gen(f"x{2 * n}_fp")
    return C2Map.build(
        "fiber",
        source,
        target,
        {f"y{4 * n}": source.underlying.gen(f"w{4 * n}")},
        {f"x{2 * n}_fp": x, f"y{4 * n}_fp": x**2},
    ).require_compatible()


def euler_lift(n: int) -> C2Map:
    """Factorization of the Euler class through F_{2n}: w -> c_{2n}, x -> e."""
    source, target = model_BSUR(2 * n), model_F(n)
    return C2Map.build(
        "euler-lift",
        source,
        target,
        {f"w{4 * n}": source.underlying.gen(f"c{2 * n}")},
        {f"x{2 * n}_fp": source.fixed.gen(f"e{2 * n}")},
    ).require_compatible()


def fiber_homotopy_c2(f: C2Map) -> C2HomotopyModel:
    """Homotopy of the fiber of a C2 map, level by level."""
    return C2HomotopyModel(fiber_dims(f.u_pullback), fiber_dims(f.f_pullback))


def theorem_comparison(n: int, drop_euler: bool = False) -> C2Map:
    """Comparison BSU_R(2n) -> prod_{i=2}^{2n-1} K(Z, i rho) x F_{2n} by Chern classes and e.

    Args:
        n (int): at least 1
        drop_euler (bool): replace F_{2n} by K(Z, 2n rho) and c_{2n}, leaving e out of the image

    Returns:
        C2Map: the comparison map, not yet checked
    """
    source = model_BSUR(2 * n)
    c, fixed = source.underlying.gen, source.fixed.gen
    factors = [model_KZ_rho(i) for i in range(2, 2 * n)]
    underlying = {f"z{2 * i}": c(f"c{i}") for i in range(2, 2 * n)}
    fixed_images = {f"z{2 * i}_fp": fixed(f"p{i // 2}") for i in range(2, 2 * n, 2)}
    if drop_euler:
        factors.append(model_KZ_rho(2 * n))
        underlying[f"z{4 * n}"] = c(f"c{2 * n}")
        fixed_images[f"z{4 * n}_fp"] = fixed(f"e{2 * n}") ** 2
    else:
        factors.append(model_F(n))
        underlying[f"w{4 * n}"] = c(f"c{2 * n}")
        fixed_images[f"x{2 * n}_fp"] = fixed(f"e{2 * n}")
    return C2Map.build("chern-euler", source, product(*factors), underlying, fixed_images)


def odd_comparison(n: int) -> C2Map:
    """Comparison BSU_R(2n+1) -> prod_{i=2}^{2n+1} K(Z, i rho) by Chern classes."""
    source = model_BSUR(2 * n + 1)
    c, fixed = source.underlying.gen, source.fixed.gen
    return C2Map.build(
        "chern",
        source,
        product(*(model_KZ_rho(i) for i in range(2, 2 * n + 2))),
        {f"z{2 * i}": c(f"c{i}") for i in range(2, 2 * n + 2)},
        {f"z{2 * i}_fp": fixed(f"p{i // 2}") for i in range(2, 2 * n + 2, 2)},
    )


def certify_equivalence(report: CheckReport, comparison: C2Map, max_degree: int) -> None:
    """Record compatibility, Hilbert series and bijectivity findings for a comparison map.

    Equal Hilbert series plus per-degree bijectivity up to ``max_degree`` certify that the
    pullbacks are isomorphisms in that range.
    """
    report.compare("compatibility square", [], comparison.compatibility_defects())
    for level in Level:
        pullback = comparison.pullback(level)
        expected = hilbert_series(pullback.source, max_degree)
        got = hilbert_series(pullback.target, max_degree)
        report.compare(f"hilbert series ({level.value})", expected.to_json(), got.to_json())
        report.compare(
            f"first series difference ({level.value})", None, expected.first_difference(got)
        )
        report.compare(
            f"first non-bijective degree ({level.value})",
            None,
            first_non_bijective_degree(pullback, max_degree),
        )


def check_main_theorem(
    n: int, max_degree: int, drop_euler: bool = False, comparison: Optional[C2Map] = None
) -> CheckReport:
    """Chern classes and the Euler class give BSU_R(2n) = prod K(Z, i rho) x F_{2n}.

    Args:
        n (int): at least 1
        max_degree (int): truncation degree, at least 8n
        drop_euler (bool): compare against Chern classes only
        comparison (Optional[C2Map]): comparison map to check instead of the standard one

    Returns:
        CheckReport: compatibility, series and bijectivity findings on both levels

    Raises:
        InvalidDegree: if n < 1 or max_degree < 8n
    """
    if n < 1:
        raise InvalidDegree(f"main theorem needs n >= 1, got {n}")
    if max_degree < 8 * n:
        raise InvalidDegree(f"max degree must be at least {8 * n} for n={n}, got {max_degree}")
    report = CheckReport("theorem", {"n": n, "max_degree": max_degree})
    if drop_euler:
        report.params["drop_euler"] = True
    certify_equivalence(
        report, comparison or theorem_comparison(n, drop_euler=drop_euler), max_degree
    )
    return report


def check_odd_theorem(
    n: int, max_degree: int, comparison: Optional[C2Map] = None
) -> CheckReport:
    """Chern classes give BSU_R(2n+1) = prod_{i=2}^{2n+1} K(Z, i rho).

    Raises:
        InvalidDegree: if n < 1 or max_degree < 4(2n+1)
    """
    if n < 1:
        raise InvalidDegree(f"odd theorem needs n >= 1, got {n}")
    minimum = 4 * (2 * n + 1)
    if max_degree < minimum:
        raise InvalidDegree(f"max degree must be at least {minimum} for n={n}, got {max_degree}")
    report = CheckReport("theorem-odd", {"n": n, "max_degree": max_degree})
    certify_equivalence(report, comparison or odd_comparison(n), max_degree)
    return report


def _sphere_dims(d: int) -> Mapping[int, int]:
    if d < 2:
        return pmap({d: 1})
    return sphere_model(d).homotopy_dims


def check_corollary_even(n: int) -> CheckReport:
    """S^{2n rho - 1} has the homotopy of the desuspended F_{2n}, level by level."""
    if n < 1:
        raise InvalidDegree(f"corollary needs n >= 1, got {n}")
    report = CheckReport("corollary-even", {"n": n})
    sphere = C2HomotopyModel(_sphere_dims(4 * n - 1), _sphere_dims(2 * n - 1))
    fiber = fiber_homotopy_c2(map_square_minus_norm(n))
    report.compare("F_2n model homotopy", model_F(n).homotopy().to_json(), fiber.to_json())
    desuspended = fiber.shift(-1)
    report.compare("homotopy dims", sphere.to_json(), desuspended.to_json())
    report.compare("mismatched degrees", [], sphere.mismatches(desuspended))
    return report


def check_corollary_odd(n: int) -> CheckReport:
    """S^{(2n+1) rho - 1} splits as K(Z, (2n+1) rho - 1) times the fiber of a square.

    The square is the cup square K(I, 2n) -> K(I, 4n) on fixed points.
    """
    if n < 1:
        raise InvalidDegree(f"corollary needs n >= 1, got {n}")
    report = CheckReport("corollary-odd", {"n": n})
    sphere = C2HomotopyModel(_sphere_dims(4 * n + 1), _sphere_dims(2 * n))
    eilenberg_maclane = C2HomotopyModel.from_homology(
        homology(shift(rho_suspension_Z(2 * n + 1), -1))
    )
    split = eilenberg_maclane + fiber_homotopy_c2(map_square_ideal(n))
    report.compare("homotopy dims", sphere.to_json(), split.to_json())
    report.compare("mismatched degrees", [], sphere.mismatches(split))
    return report
