# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Rational homotopy of generalized Eilenberg-MacLane spaces.

A product of K(Q, d)'s with d even has polynomial rational cohomology, one
generator per homotopy class. Maps between such products are recorded as
their pullback on cohomology: each generator of the target ring is sent to a
homogeneous polynomial in the generators of the source ring. Polynomials are
sympy expressions in the generator symbols.

On homotopy a map acts by its linear part: decomposable terms of the
pullback are invisible to homotopy groups of simply connected rational
spaces. Fibers are computed from the long exact sequence with that linear
part.
"""

import logging
from dataclasses import dataclass, field
from functools import cache, reduce
from operator import mul
from typing import Any, Mapping, Optional, Sequence

from pyrsistent import pmap
from sympy import QQ, Expr, Poly, Symbol, expand, sympify

from mackeylab.exceptions import DegreeMismatch, InvalidDegree, MalformedModel, UnknownGenerator
from mackeylab.qlinalg import RationalMatrix, rank, to_rational

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    """Polynomial generator with its cohomological degree."""

    name: str
    degree: int


@cache
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    """Exponent vectors of weighted degree d, lexicographically descending."""
    if not degrees:
        return ((),) if d == 0 else ()
    head, tail = degrees[0], degrees[1:]
    found = []
    for e in range(d // head, -1, -1):
        found.extend((e,) + rest for rest in _monomials(tail, d - e * head))
    return tuple(found)


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring over Q on even degree generators."""

    generators: tuple[Generator, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.degree <= 0 or g.degree % 2:
                raise InvalidDegree(f"generator {g.name} has degree {g.degree}, need even > 0")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise MalformedModel(f"duplicate generator names in {names}")

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "GradedRing":
        """Ring on (name, degree) pairs."""
        return cls(tuple(Generator(name, degree) for name, degree in pairs))

    @property
    def names(self) -> tuple[str, ...]:
        """Generator names in order."""
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        """Generator degrees in order."""
        return tuple(g.degree for g in self.generators)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        """Generator symbols in order."""
        return tuple(Symbol(g.name) for g in self.generators)

    def gen(self, name: str) -> Symbol:
        """Symbol of a generator.

        Args:
            name (str): generator name

        Returns:
            Symbol: the generator

        Raises:
            UnknownGenerator: if the ring has no such generator
        """
        if name not in self.names:
            raise UnknownGenerator(f"{name} is not a generator of {self.names}")
        return Symbol(name)

    def degree_of(self, monomial: Monomial) -> int:
        """Weighted degree of an exponent vector."""
        return sum(e * d for e, d in zip(monomial, self.degrees))

    def monomials(self, d: int) -> tuple[Monomial, ...]:
        """Monomial basis of the degree d part."""
        return _monomials(self.degrees, d)

    def terms(self, expr: Any) -> dict[Monomial, Any]:
        """Nonzero coefficients of a polynomial in this ring.

        Args:
            expr (Any): sympy expression or number

        Returns:
            dict[Monomial, Fraction]: coefficient per exponent vector

        Raises:
            UnknownGenerator: if the expression mentions other symbols
        """
        value = sympify(expr)
        unknown = value.free_symbols - set(self.symbols)
        if unknown:
            raise UnknownGenerator(f"{sorted(map(str, unknown))} not generators of {self.names}")
        if not self.generators:
            return {(): to_rational(value)} if value != 0 else {}
        poly = Poly(value, *self.symbols, domain=QQ)
        return {
            monomial: to_rational(QQ.to_sympy(coeff))
            for monomial, coeff in poly.terms()
            if coeff
        }

    def monomial_expr(self, monomial: Monomial) -> Expr:
        """Expression of an exponent vector."""
        return reduce(mul, (s**e for s, e in zip(self.symbols, monomial)), sympify(1))

    def concat(self, other: "GradedRing") -> "GradedRing":
        """Tensor product of free algebras: generators concatenated."""
        return GradedRing(self.generators + other.generators)

    def gem(self) -> "GemModel":
        """The product of K(Q, d)'s with this cohomology ring."""
        dims: dict[int, int] = {}
        for d in self.degrees:
            dims[d] = dims.get(d, 0) + 1
        return GemModel(dims)

    def to_json(self) -> list[dict[str, Any]]:
        """[{name, degree}]"""
        return [{"name": g.name, "degree": g.degree} for g in self.generators]


@dataclass(frozen=True)
class PowerSeries:
    """Integer power series truncated after degree ``truncation``."""

    truncation: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.truncation + 1:
            raise InvalidDegree("coefficient count must be truncation + 1")

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d]

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        top = min(self.truncation, other.truncation)
        product = [
            sum(self[i] * other[d - i] for i in range(d + 1)) for d in range(top + 1)
        ]
        return PowerSeries(top, tuple(product))

    def first_difference(self, other: "PowerSeries") -> Optional[int]:
        """Lowest degree where the coefficients differ, up to the common truncation."""
        top = min(self.truncation, other.truncation)
        return next((d for d in range(top + 1) if self[d] != other[d]), None)

    def to_json(self) -> list[int]:
        """Coefficient array."""
        return list(self.coefficients)


def hilbert_series(ring: GradedRing, max_degree: int) -> PowerSeries:
    """Hilbert series of a polynomial ring: product of 1/(1 - t^deg) up to ``max_degree``.

    Args:
        ring (GradedRing): the ring
        max_degree (int): truncation degree, at least 0

    Returns:
        PowerSeries: dimensions of the graded pieces

    Raises:
        InvalidDegree: if max_degree is negative
    """
    if max_degree < 0:
        raise InvalidDegree(f"truncation degree must be >= 0, got {max_degree}")
    coefficients = [1] + [0] * max_degree
    for deg in ring.degrees:
        for k in range(deg, max_degree + 1):
            coefficients[k] += coefficients[k - deg]
    return PowerSeries(max_degree, tuple(coefficients))


@dataclass(frozen=True)
class GemModel:
    """Rational GEM recorded by the dimension of its homotopy in each degree."""

    homotopy_dims: Mapping[int, int]

    def __post_init__(self) -> None:
        dims = {k: v for k, v in self.homotopy_dims.items() if v}
        for k, v in dims.items():
            if k < 2:
                raise InvalidDegree(f"GEM models are simply connected, got a class in degree {k}")
            if v < 0:
                raise InvalidDegree(f"negative dimension {v} in degree {k}")
        object.__setattr__(self, "homotopy_dims", pmap(dims))

    def dim(self, k: int) -> int:
        """dim pi_k"""
        return self.homotopy_dims.get(k, 0)

    def to_json(self) -> dict[str, int]:
        """{degree: dim}"""
        return {str(k): self.homotopy_dims[k] for k in sorted(self.homotopy_dims)}


@dataclass(frozen=True)
class GradedPolyMap:
    """Map of GEMs recorded by its pullback on generators.

    Each target generator is sent to a homogeneous polynomial in the source generators.
    """

    source: GradedRing
    target: GradedRing
    assignment: Mapping[str, Any]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        unknown = set(self.assignment) - set(self.target.names)
        if unknown:
            raise UnknownGenerator(
                f"{self.name}: {sorted(unknown)} not in target {self.target.names}"
            )
        images = {g: expand(sympify(self.assignment.get(g, 0))) for g in self.target.names}
        for g in self.target.generators:
            wrong = [
                m
                for m in self.source.terms(images[g.name])
                if self.source.degree_of(m) != g.degree
            ]
            if wrong:
                raise DegreeMismatch(
                    f"{self.name}: {g.name} has degree {g.degree} but is sent to "
                    f"{images[g.name]}"
                )
        object.__setattr__(self, "assignment", pmap(images))

    def image(self, name: str) -> Expr:
        """Pullback of a target generator."""
        return self.assignment[name]

    def apply(self, expr: Any) -> Expr:
        """Pull back a polynomial in the target generators."""
        substitution = {Symbol(g): img for g, img in self.assignment.items()}
        return expand(sympify(expr).xreplace(substitution))

    def is_zero(self) -> bool:
        """True if every generator pulls back to 0."""
        return all(img == 0 for img in self.assignment.values())

    def matrix_in_degree(self, d: int) -> RationalMatrix:
        """Pullback on the degree d part in monomial bases.

        Args:
            d (int): degree

        Returns:
            RationalMatrix: rows index source monomials, columns index target monomials
        """
        rows = self.source.monomials(d)
        index = {m: i for i, m in enumerate(rows)}
        columns = []
        for monomial in self.target.monomials(d):
            image = self.apply(self.target.monomial_expr(monomial))
            column = [0] * len(rows)
            for m, coeff in self.source.terms(image).items():
                column[index[m]] = coeff
            columns.append(column)
        return RationalMatrix.from_columns(columns, len(rows))

    def linear_part(self) -> dict[int, RationalMatrix]:
        """Map on homotopy, degree by degree.

        Returns:
            dict[int, RationalMatrix]: per degree, the coefficients of the degree one source
            monomials in the images of target generators (rows target, columns source)
        """
        parts: dict[int, RationalMatrix] = {}
        width = len(self.source.generators)
        for d in sorted(set(self.source.degrees) | set(self.target.degrees)):
            src = [i for i, g in enumerate(self.source.generators) if g.degree == d]
            tgt = [g.name for g in self.target.generators if g.degree == d]
            grid = []
            for name in tgt:
                terms = self.source.terms(self.image(name))
                grid.append([terms.get(tuple(int(k == i) for k in range(width)), 0) for i in src])
            parts[d] = RationalMatrix.from_rows(grid, cols=len(src))
        return parts

    def to_json(self) -> dict[str, str]:
        """{target generator: pullback}"""
        return {g: str(self.assignment[g]) for g in self.target.names}


def compose(outer: GradedPolyMap, inner: GradedPolyMap) -> GradedPolyMap:
    """The map ``outer`` after ``inner``: substitute inner's pullbacks into outer's.

    Args:
        outer (GradedPolyMap): Y -> Z
        inner (GradedPolyMap): X -> Y

    Returns:
        GradedPolyMap: X -> Z

    Raises:
        DegreeMismatch: if the maps are not composable
    """
    if outer.source != inner.target:
        raise DegreeMismatch(f"cannot compose {outer.name} after {inner.name}: rings differ")
    return GradedPolyMap(
        inner.source,
        outer.target,
        {g: inner.apply(outer.image(g)) for g in outer.target.names},
        f"{outer.name}.{inner.name}",
    )


def first_non_surjective_degree(f: GradedPolyMap, max_degree: int) -> Optional[int]:
    """Lowest degree <= max_degree where the pullback misses part of the source ring."""
    for d in range(max_degree + 1):
        m = f.matrix_in_degree(d)
        if rank(m) != m.rows:
            return d
    return None


def is_surjective_up_to(f: GradedPolyMap, max_degree: int) -> bool:
    """True if the pullback is onto in every degree up to ``max_degree``.

    Args:
        f (GradedPolyMap): map of GEMs
        max_degree (int): truncation degree

    Returns:
        bool: full row rank of every monomial-basis matrix
    """
    return first_non_surjective_degree(f, max_degree) is None


def first_non_bijective_degree(f: GradedPolyMap, max_degree: int) -> Optional[int]:
    """Lowest degree <= max_degree where the pullback matrix is not square of full rank."""
    for d in range(max_degree + 1):
        m = f.matrix_in_degree(d)
        if m.rows != m.cols or rank(m) != m.rows:
            return d
    return None


def fiber_dims(f: GradedPolyMap) -> dict[int, int]:
    """Homotopy dimensions of the homotopy fiber, allowing classes in low degrees.

    dim pi_k(fiber) = dim ker(L_k) + dim coker(L_{k+1}) with L the linear part.
    """
    source, target = f.source.gem(), f.target.gem()
    ranks = {d: rank(m) for d, m in f.linear_part().items()}
    degrees = set(source.homotopy_dims) | {d - 1 for d in target.homotopy_dims}
    dims = {
        k: (source.dim(k) - ranks.get(k, 0)) + (target.dim(k + 1) - ranks.get(k + 1, 0))
        for k in sorted(degrees)
    }
    logger.debug("fiber of %s has homotopy %s", f.name, dims)
    return {k: v for k, v in dims.items() if v}


def fiber_homotopy(f: GradedPolyMap) -> GemModel:
    """Homotopy of the fiber of a map of simply connected GEMs.

    Args:
        f (GradedPolyMap): map recorded by its pullback

    Returns:
        GemModel: homotopy dimensions from the long exact sequence

    Raises:
        InvalidDegree: if the fiber is not simply connected
    """
    return GemModel(fiber_dims(f))


def squaring_map(d: int) -> GradedPolyMap:
    """Cup square K(Q, d) -> K(Q, 2d), y -> x^2, for even d."""
    source = GradedRing.of((f"x{d}", d))
    target = GradedRing.of((f"y{2 * d}", 2 * d))
    return GradedPolyMap(source, target, {f"y{2 * d}": source.gen(f"x{d}") ** 2}, "square")


def sphere_model(d: int) -> GemModel:
    """Rational homotopy of S^d.

    Args:
        d (int): dimension, at least 2

    Returns:
        GemModel: Q in degree d for odd d; Q in degrees d and 2d-1 for even d, computed as
        the fiber of the cup square

    Raises:
        InvalidDegree: if d < 2
    """
    if d < 2:
        raise InvalidDegree(f"sphere_model needs d >= 2, got {d}")
    if d % 2:
        return GemModel({d: 1})
    return fiber_homotopy(squaring_map(d))


def les_balance(f: GradedPolyMap) -> int:
    """Alternating dimension count of the long exact sequence of the fiber; 0 when exact."""
    source, target = f.source.gem(), f.target.gem()
    fiber = fiber_dims(f)
    degrees = set(fiber) | set(source.homotopy_dims) | set(target.homotopy_dims)
    return sum(
        (-1) ** k * (fiber.get(k, 0) - source.dim(k) + target.dim(k)) for k in degrees
    )


def graded_dims(ring: GradedRing, degrees: Sequence[int]) -> list[int]:
    """Dimensions of the given graded pieces."""
    return [len(ring.monomials(d)) for d in degrees]
