# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Chain complexes of Mackey functors and the rho-suspension complexes.

Grading is homological: the differential in degree k goes from term(k) to
term(k-1). Degrees are absolute integers, so the complex computing
S^{i rho} tensor Z sits in degrees i..2i.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Mapping

from pyrsistent import pmap

from mackeylab.exceptions import AxiomViolation, InvalidDegree, ShapeMismatch
from mackeylab.mackey import (
    Cokernel,
    Decomposition,
    Kernel,
    MackeyFunctor,
    MackeyMorphism,
    check_axioms,
    cokernel,
    decompose,
    kernel,
    lift,
    permutation_multiplication,
    permutation_to_burnside,
    permutation_transfer,
    std_burnside,
    std_constant,
)
from mackeylab.qlinalg import solve_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MackeyComplex:
    """Bounded chain complex of Mackey functors on a contiguous range of degrees."""

    terms: Mapping[int, MackeyFunctor]
    differentials: Mapping[int, MackeyMorphism]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", pmap(self.terms))
        object.__setattr__(self, "differentials", pmap(self.differentials))
        if self.terms and set(self.terms) != set(range(min(self.terms), max(self.terms) + 1)):
            raise InvalidDegree(f"degrees {sorted(self.terms)} are not contiguous")
        for k, d in self.differentials.items():
            if k not in self.terms or k - 1 not in self.terms:
                raise InvalidDegree(f"differential in degree {k} leaves the complex")
            if d.source != self.terms[k] or d.target != self.terms[k - 1]:
                raise ShapeMismatch(f"differential in degree {k} has the wrong endpoints")

    @property
    def degrees(self) -> range:
        """Degrees carrying a term, in increasing order."""
        if not self.terms:
            return range(0)
        return range(min(self.terms), max(self.terms) + 1)

    def term(self, k: int) -> MackeyFunctor:
        """Term in degree k, zero outside the complex."""
        return self.terms.get(k, MackeyFunctor.zero())

    def differential(self, k: int) -> MackeyMorphism:
        """Differential term(k) -> term(k-1); zero where none is recorded."""
        if k in self.differentials:
            return self.differentials[k]
        return MackeyMorphism.zero(self.term(k), self.term(k - 1))

    def violations(self) -> list[str]:
        """Differentials that are not Mackey morphisms and degrees where d.d != 0."""
        found = []
        for k in self.degrees:
            bad = self.differential(k).violations()
            if bad:
                found.append(f"d_{k} fails {', '.join(c.value for c in bad)}")
            if not self.differential(k - 1).compose(self.differential(k)).is_zero():
                found.append(f"d_{k - 1}.d_{k} != 0")
        return found

    def shift(self, s: int) -> "MackeyComplex":
        """Translate every degree by s."""
        return MackeyComplex(
            {k + s: m for k, m in self.terms.items()},
            {k + s: d for k, d in self.differentials.items()},
            f"{self.name}[{s}]",
        )


@dataclass(frozen=True)
class ChainMap:
    """Degreewise Mackey morphisms commuting with the differentials."""

    source: MackeyComplex
    target: MackeyComplex
    components: Mapping[int, MackeyMorphism]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", pmap(self.components))
        for k, f in self.components.items():
            if f.source != self.source.term(k) or f.target != self.target.term(k):
                raise ShapeMismatch(f"component in degree {k} has the wrong endpoints")

    def component(self, k: int) -> MackeyMorphism:
        """Component in degree k, zero where none is recorded."""
        if k in self.components:
            return self.components[k]
        return MackeyMorphism.zero(self.source.term(k), self.target.term(k))

    def violations(self) -> list[str]:
        """Degrees where a component is not a morphism or fails to commute with d."""
        degrees = set(self.source.degrees) | set(self.target.degrees)
        found = []
        for k in sorted(degrees):
            if not self.component(k).is_valid():
                found.append(f"f_{k} is not a Mackey morphism")
            left = self.target.differential(k).compose(self.component(k))
            right = self.component(k - 1).compose(self.source.differential(k))
            if left != right:
                found.append(f"d.f_{k} != f_{k - 1}.d")
        return found


@dataclass(frozen=True)
class HomologyGroup:
    """Homology in one degree: cycles modulo boundaries, with the maps realizing it."""

    degree: int
    functor: MackeyFunctor
    cycles: Kernel
    quotient: Cokernel

    @property
    def decomposition(self) -> Decomposition:
        """Multiplicities of simple summands."""
        return decompose(self.functor)

    def to_json(self) -> dict[str, Any]:
        """Dimensions and decomposition triple."""
        return {
            "underlying_dim": self.functor.underlying_dim,
            "fixed_dim": self.functor.fixed_dim,
            "triple": list(self.decomposition),
        }


def _rho_complex(
    i: int, bottom: MackeyFunctor, bottom_map: MackeyMorphism, name: str
) -> MackeyComplex:
    if i < 1:
        raise InvalidDegree(f"rho suspension needs a positive multiple, got {i}")
    terms = {i: bottom}
    differentials = {i + 1: bottom_map}
    for k in range(i + 1, 2 * i + 1):
        terms[k] = bottom_map.source
    for k in range(i + 2, 2 * i + 1):
        # 1 - tau directly above the bottom map, then alternating
        sign = -1 if (k - i) % 2 == 0 else 1
        differentials[k] = permutation_multiplication(1, sign)
    return MackeyComplex(terms, differentials, name)


def rho_suspension_Z(i: int) -> MackeyComplex:  # noqa: N802
    """Complex computing S^{i rho} tensor Z.

    Args:
        i (int): multiple of rho, at least 1

    Returns:
        MackeyComplex: Z in degree i and Z[C2] in degrees i+1..2i

    Raises:
        InvalidDegree: if i < 1
    """
    return _rho_complex(i, std_constant(), permutation_transfer(), f"S^{i}rho(Z)")


def rho_suspension_A(m: int) -> MackeyComplex:  # noqa: N802
    """Complex computing S^{m rho} tensor A.

    Args:
        m (int): multiple of rho, at least 1

    Returns:
        MackeyComplex: A in degree m and Z[C2] in degrees m+1..2m

    Raises:
        InvalidDegree: if m < 1
    """
    return _rho_complex(m, std_burnside(), permutation_to_burnside(), f"S^{m}rho(A)")


def suspension(functor: MackeyFunctor, k: int) -> MackeyComplex:
    """The functor concentrated in degree k."""
    return MackeyComplex({k: functor}, {}, f"S^{k}({functor.name})")


def shift(complex_: MackeyComplex, s: int) -> MackeyComplex:
    """Translate degrees by s; homology moves along."""
    return complex_.shift(s)


def homology(complex_: MackeyComplex) -> Mapping[int, HomologyGroup]:
    """Homology of a complex, degree by degree, as Mackey functors.

    Args:
        complex_ (MackeyComplex): complex whose differentials are Mackey morphisms

    Returns:
        Mapping[int, HomologyGroup]: homology in every degree of the complex

    Raises:
        AxiomViolation: if a differential does not induce Mackey structure on homology
    """
    groups = {}
    for k in complex_.degrees:
        cycles = kernel(complex_.differential(k))
        boundaries = lift(complex_.differential(k + 1), cycles.inclusion)
        quotient = cokernel(boundaries)
        groups[k] = HomologyGroup(k, quotient.functor, cycles, quotient)
        logger.debug(
            "%s: H_%d has dims (%d, %d)",
            complex_.name,
            k,
            quotient.functor.underlying_dim,
            quotient.functor.fixed_dim,
        )
    return pmap(groups)


def homology_map(
    chain_map: ChainMap,
    source_homology: Mapping[int, HomologyGroup],
    target_homology: Mapping[int, HomologyGroup],
) -> Mapping[int, MackeyMorphism]:
    """Maps induced on homology by a chain map.

    Args:
        chain_map (ChainMap): a valid chain map
        source_homology (Mapping[int, HomologyGroup]): homology of the source complex
        target_homology (Mapping[int, HomologyGroup]): homology of the target complex

    Returns:
        Mapping[int, MackeyMorphism]: induced morphism in every degree where both sides are
        computed

    Raises:
        AxiomViolation: if a cycle is not sent to a cycle
    """
    induced = {}
    for k in sorted(set(source_homology) & set(target_homology)):
        src, tgt = source_homology[k], target_homology[k]
        f = chain_map.component(k)
        levels = []
        for f_level, s_cycles, s_section, t_cycles, t_proj in (
            (
                f.f_u,
                src.cycles.inclusion.f_u,
                src.quotient.section_u,
                tgt.cycles.inclusion.f_u,
                tgt.quotient.projection.f_u,
            ),
            (
                f.f_f,
                src.cycles.inclusion.f_f,
                src.quotient.section_f,
                tgt.cycles.inclusion.f_f,
                tgt.quotient.projection.f_f,
            ),
        ):
            coords = solve_matrix(t_cycles, f_level @ s_cycles @ s_section)
            if coords is None:
                raise AxiomViolation(f"degree {k}: cycles are not sent to cycles")
            levels.append(t_proj @ coords)
        induced[k] = MackeyMorphism(src.functor, tgt.functor, levels[0], levels[1])
    return pmap(induced)


def euler_chain_map(n: int) -> ChainMap:
    """Euler class a_{2n sigma}: S^{2n} tensor A -> S^{2n rho} tensor A.

    Args:
        n (int): at least 1

    Returns:
        ChainMap: identity on A in degree 2n, zero elsewhere

    Raises:
        InvalidDegree: if n < 1
    """
    if n < 1:
        raise InvalidDegree(f"Euler class needs n >= 1, got {n}")
    burnside = std_burnside()
    return ChainMap(
        suspension(burnside, 2 * n),
        rho_suspension_A(2 * n),
        {2 * n: MackeyMorphism.identity(burnside)},
    )


def euler_characteristic(complex_: MackeyComplex) -> tuple[int, int]:
    """Alternating sums of term dimensions (underlying, fixed)."""
    return (
        sum((-1) ** k * complex_.term(k).underlying_dim for k in complex_.degrees),
        sum((-1) ** k * complex_.term(k).fixed_dim for k in complex_.degrees),
    )


def homology_euler_characteristic(groups: Mapping[int, HomologyGroup]) -> tuple[int, int]:
    """Alternating sums of homology dimensions (underlying, fixed)."""
    return (
        sum((-1) ** k * h.functor.underlying_dim for k, h in groups.items()),
        sum((-1) ** k * h.functor.fixed_dim for k, h in groups.items()),
    )


def homology_axioms_hold(groups: Mapping[int, HomologyGroup]) -> bool:
    """True if every homology functor satisfies the Mackey axioms."""
    return all(all(check_axioms(h.functor).values()) for h in groups.values())


def homology_report(groups: Mapping[int, HomologyGroup]) -> dict[str, Any]:
    """JSON table {degree: {underlying_dim, fixed_dim, triple}}."""
    return {str(k): groups[k].to_json() for k in sorted(groups)}
