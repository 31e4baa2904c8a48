# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Rational C2-Mackey functors.

A Mackey functor is stored as its underlying C2-module M(C2/e), with the
generator acting by ``tau``, its fixed level M(C2/C2) (only the dimension
is needed, vectors are coordinates) and the restriction ``res`` (fixed to
underlying) and transfer ``tr`` (underlying to fixed).

Basis conventions:
    - Burnside functor A: fixed level basis (1, T), T the free orbit.
    - Permutation functor Z[C2]: underlying basis (1, tau), fixed generator 1 + tau.
    - Constant, Burnside and augmentation ideal functors have 1-dimensional levels
      wherever they are nonzero.

Rationally every Mackey functor splits into copies of the constant functor,
the sign module (underlying sign representation, zero fixed level) and the
augmentation ideal, so the multiplicities returned by ``decompose`` are a
complete isomorphism invariant.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

from mackeylab.exceptions import AxiomViolation, ShapeMismatch
from mackeylab.qlinalg import (
    RationalLike,
    RationalMatrix,
    direct_sum as block_diagonal,
    image_basis,
    kernel_basis,
    quotient_coordinates,
    rank,
    solve_matrix,
    to_rational,
)

logger = logging.getLogger(__name__)


class Orbit(Enum):
    """Orbit types of a finite C2-set."""

    TRIVIAL = "trivial point"
    FREE = "free orbit C2"


C2Set = tuple[Orbit, ...]


class Axiom(Enum):
    """Conditions checked by ``check_axioms``."""

    TAU_INVOLUTION = "tau^2 = 1"
    RESTRICTION_INVARIANT = "tau.res = res"
    TRANSFER_COINVARIANT = "tr.tau = tr"
    DOUBLE_COSET = "res.tr = 1 + tau"


class MorphismCondition(Enum):
    """Conditions a pair of level maps must satisfy to form a Mackey morphism."""

    EQUIVARIANT = "f_u.tau = tau.f_u"
    RESTRICTION = "f_u.res = res.f_f"
    TRANSFER = "f_f.tr = tr.f_u"


@dataclass(frozen=True)
class C2Module:
    """Finite dimensional rational vector space with an involution."""

    dim: int
    tau: RationalMatrix

    def __post_init__(self) -> None:
        if self.tau.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"tau has shape {self.tau.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def trivial(cls, dim: int) -> "C2Module":
        """Module with trivial action."""
        return cls(dim, RationalMatrix.identity(dim))

    def eigenspace_dim(self, sign: int) -> int:
        """Dimension of the (+1) or (-1) eigenspace of tau.

        Args:
            sign (int): +1 or -1

        Returns:
            int: dimension of ker(tau - sign)
        """
        return self.dim - rank(self.tau - RationalMatrix.identity(self.dim).scale(sign))


@dataclass(frozen=True)
class MackeyFunctor:
    """Rational C2-Mackey functor."""

    underlying: C2Module
    fixed_dim: int
    res: RationalMatrix
    tr: RationalMatrix
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = self.underlying.dim
        if self.res.shape != (n, self.fixed_dim):
            raise ShapeMismatch(f"res has shape {self.res.shape}, expected {n}x{self.fixed_dim}")
        if self.tr.shape != (self.fixed_dim, n):
            raise ShapeMismatch(f"tr has shape {self.tr.shape}, expected {self.fixed_dim}x{n}")

    @classmethod
    def zero(cls) -> "MackeyFunctor":
        """The zero Mackey functor."""
        return cls(
            C2Module.trivial(0), 0, RationalMatrix.zeros(0, 0), RationalMatrix.zeros(0, 0), "0"
        )

    @property
    def underlying_dim(self) -> int:
        """dim M(C2/e)"""
        return self.underlying.dim

    @property
    def tau(self) -> RationalMatrix:
        """The C2-action on the underlying level."""
        return self.underlying.tau

    def is_zero(self) -> bool:
        """True if both levels vanish."""
        return self.underlying_dim == 0 and self.fixed_dim == 0

    def to_json(self) -> dict[str, Any]:
        """Serialize with rationals as "p/q" strings."""
        return {
            "underlying_dim": self.underlying_dim,
            "tau": self.tau.to_json(),
            "fixed_dim": self.fixed_dim,
            "res": self.res.to_json(),
            "tr": self.tr.to_json(),
        }


@dataclass(frozen=True)
class MackeyMorphism:
    """Pair of level maps between Mackey functors."""

    source: MackeyFunctor
    target: MackeyFunctor
    f_u: RationalMatrix
    f_f: RationalMatrix

    def __post_init__(self) -> None:
        expected_u = (self.target.underlying_dim, self.source.underlying_dim)
        expected_f = (self.target.fixed_dim, self.source.fixed_dim)
        if self.f_u.shape != expected_u:
            raise ShapeMismatch(f"f_u has shape {self.f_u.shape}, expected {expected_u}")
        if self.f_f.shape != expected_f:
            raise ShapeMismatch(f"f_f has shape {self.f_f.shape}, expected {expected_f}")

    @classmethod
    def identity(cls, functor: MackeyFunctor) -> "MackeyMorphism":
        """Identity morphism."""
        return cls(
            functor,
            functor,
            RationalMatrix.identity(functor.underlying_dim),
            RationalMatrix.identity(functor.fixed_dim),
        )

    @classmethod
    def zero(cls, source: MackeyFunctor, target: MackeyFunctor) -> "MackeyMorphism":
        """Zero morphism."""
        return cls(
            source,
            target,
            RationalMatrix.zeros(target.underlying_dim, source.underlying_dim),
            RationalMatrix.zeros(target.fixed_dim, source.fixed_dim),
        )

    def violations(self) -> list[MorphismCondition]:
        """Morphism conditions that fail."""
        src, tgt = self.source, self.target
        checks = {
            MorphismCondition.EQUIVARIANT: self.f_u @ src.tau == tgt.tau @ self.f_u,
            MorphismCondition.RESTRICTION: self.f_u @ src.res == tgt.res @ self.f_f,
            MorphismCondition.TRANSFER: self.f_f @ src.tr == tgt.tr @ self.f_u,
        }
        return [condition for condition, holds in checks.items() if not holds]

    def is_valid(self) -> bool:
        """True if every morphism condition holds."""
        return not self.violations()

    def is_zero(self) -> bool:
        """True if both level maps vanish."""
        return self.f_u.is_zero() and self.f_f.is_zero()

    def compose(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """This morphism after ``other``."""
        if other.target != self.source:
            raise ShapeMismatch("morphisms are not composable")
        return MackeyMorphism(
            other.source, self.target, self.f_u @ other.f_u, self.f_f @ other.f_f
        )


class Decomposition(NamedTuple):
    """Multiplicities of the simple rational Mackey functors."""

    triv: int
    sign: int
    ideal: int


@dataclass(frozen=True)
class DirectSum:
    """Direct sum with its structure maps."""

    functor: MackeyFunctor
    inclusions: tuple[MackeyMorphism, ...]
    projections: tuple[MackeyMorphism, ...]


@dataclass(frozen=True)
class Kernel:
    """Levelwise kernel with its inclusion."""

    functor: MackeyFunctor
    inclusion: MackeyMorphism


@dataclass(frozen=True)
class Cokernel:
    """Levelwise cokernel with its projection and linear sections of the projection."""

    functor: MackeyFunctor
    projection: MackeyMorphism
    section_u: RationalMatrix
    section_f: RationalMatrix


def std_constant() -> MackeyFunctor:
    """Constant Mackey functor: restriction 1, transfer 2."""
    return MackeyFunctor(
        C2Module.trivial(1), 1, RationalMatrix.scalar(1), RationalMatrix.scalar(2), "Z"
    )


def std_burnside() -> MackeyFunctor:
    """Burnside Mackey functor with fixed basis (1, T): res(a+bT) = a+2b, tr(1) = T."""
    return MackeyFunctor(
        C2Module.trivial(1),
        2,
        RationalMatrix.from_rows([[1, 2]]),
        RationalMatrix.from_rows([[0], [1]]),
        "A",
    )


def std_augmentation_ideal() -> MackeyFunctor:
    """Augmentation ideal: zero underlying level, fixed level spanned by T - 2."""
    return MackeyFunctor(
        C2Module.trivial(0), 1, RationalMatrix.zeros(0, 1), RationalMatrix.zeros(1, 0), "I"
    )


def std_permutation() -> MackeyFunctor:
    """Permutation Mackey functor Z[C2]: res(1) = 1 + tau, tr(a + b tau) = a + b."""
    return MackeyFunctor(
        C2Module(2, RationalMatrix.from_rows([[0, 1], [1, 0]])),
        1,
        RationalMatrix.from_rows([[1], [1]]),
        RationalMatrix.from_rows([[1, 1]]),
        "Z[C2]",
    )


def augmentation() -> MackeyMorphism:
    """Orbit counting projection A -> Z, a + bT -> a + 2b."""
    return MackeyMorphism(
        std_burnside(),
        std_constant(),
        RationalMatrix.scalar(1),
        RationalMatrix.from_rows([[1, 2]]),
    )


def augmentation_inclusion() -> MackeyMorphism:
    """Inclusion I -> A of the generator T - 2."""
    return MackeyMorphism(
        std_augmentation_ideal(),
        std_burnside(),
        RationalMatrix.zeros(1, 0),
        RationalMatrix.from_rows([[-2], [1]]),
    )


def permutation_multiplication(a: RationalLike, b: RationalLike) -> MackeyMorphism:
    """Endomorphism of Z[C2] given by multiplication by a + b tau.

    Args:
        a (RationalLike): coefficient of 1
        b (RationalLike): coefficient of tau

    Returns:
        MackeyMorphism: multiplication on both levels; on the fixed generator 1 + tau it is
        multiplication by a + b
    """
    x, y = to_rational(a), to_rational(b)
    perm = std_permutation()
    return MackeyMorphism(
        perm,
        perm,
        RationalMatrix.from_rows([[x, y], [y, x]]),
        RationalMatrix.scalar(x + y),
    )


def permutation_transfer() -> MackeyMorphism:
    """Z[C2] -> Z induced by the transfer: sum of coefficients, and 2 on fixed points."""
    return MackeyMorphism(
        std_permutation(),
        std_constant(),
        RationalMatrix.from_rows([[1, 1]]),
        RationalMatrix.scalar(2),
    )


def permutation_to_burnside() -> MackeyMorphism:
    """Z[C2] -> A: sum of coefficients on underlying, 1 + tau -> T on fixed points."""
    return MackeyMorphism(
        std_permutation(),
        std_burnside(),
        RationalMatrix.from_rows([[1, 1]]),
        RationalMatrix.from_rows([[0], [1]]),
    )


def check_axioms(functor: MackeyFunctor) -> dict[Axiom, bool]:
    """Evaluate each Mackey functor axiom.

    Args:
        functor (MackeyFunctor): functor to check

    Returns:
        dict[Axiom, bool]: pass/fail per axiom
    """
    n = functor.underlying_dim
    identity = RationalMatrix.identity(n)
    tau, res, tr = functor.tau, functor.res, functor.tr
    return {
        Axiom.TAU_INVOLUTION: tau @ tau == identity,
        Axiom.RESTRICTION_INVARIANT: tau @ res == res,
        Axiom.TRANSFER_COINVARIANT: tr @ tau == tr,
        Axiom.DOUBLE_COSET: res @ tr == identity + tau,
    }


def require_axioms(functor: MackeyFunctor) -> MackeyFunctor:
    """Return the functor unchanged, or raise if an axiom fails.

    Args:
        functor (MackeyFunctor): functor to check

    Returns:
        MackeyFunctor: the same functor

    Raises:
        AxiomViolation: naming the failing axioms
    """
    failed = [axiom.value for axiom, ok in check_axioms(functor).items() if not ok]
    if failed:
        raise AxiomViolation(f"{functor.name or 'functor'} violates {', '.join(failed)}")
    return functor


def decompose(functor: MackeyFunctor) -> Decomposition:
    """Multiplicities of the constant, sign and augmentation ideal summands.

    The constant multiplicity is the rank of the idempotent (tr.res)/2 on the
    fixed level, the ideal multiplicity is the rest of the fixed level and the
    sign multiplicity is the (-1)-eigenspace of tau.

    Args:
        functor (MackeyFunctor): functor satisfying the axioms

    Returns:
        Decomposition: (triv, sign, ideal)
    """
    beta = (functor.tr @ functor.res).scale(Fraction(1, 2))
    triv = rank(beta)
    return Decomposition(triv, functor.underlying.eigenspace_dim(-1), functor.fixed_dim - triv)


def is_isomorphic(first: MackeyFunctor, second: MackeyFunctor) -> bool:
    """Isomorphism test by comparing decompositions."""
    return decompose(first) == decompose(second)


def _block_inclusion(dims: Sequence[int], k: int) -> RationalMatrix:
    total = sum(dims)
    offset = sum(dims[:k])
    identity = RationalMatrix.identity(total)
    return RationalMatrix.from_columns(
        [identity.column(offset + j) for j in range(dims[k])], total
    )


def direct_sum(*functors: MackeyFunctor) -> DirectSum:
    """Direct sum with inclusions and projections.

    Args:
        functors (MackeyFunctor): summands

    Returns:
        DirectSum: the sum and its structure maps
    """
    if not functors:
        return DirectSum(MackeyFunctor.zero(), (), ())
    module = C2Module(
        sum(m.underlying_dim for m in functors), block_diagonal(*(m.tau for m in functors))
    )
    total = MackeyFunctor(
        module,
        sum(m.fixed_dim for m in functors),
        block_diagonal(*(m.res for m in functors)),
        block_diagonal(*(m.tr for m in functors)),
        " + ".join(m.name for m in functors),
    )
    u_dims = [m.underlying_dim for m in functors]
    f_dims = [m.fixed_dim for m in functors]
    inclusions = tuple(
        MackeyMorphism(m, total, _block_inclusion(u_dims, k), _block_inclusion(f_dims, k))
        for k, m in enumerate(functors)
    )
    projections = tuple(
        MackeyMorphism(total, m, inc.f_u.transpose(), inc.f_f.transpose())
        for m, inc in zip(functors, inclusions)
    )
    return DirectSum(total, inclusions, projections)


def kernel(morphism: MackeyMorphism) -> Kernel:
    """Levelwise kernel with induced tau, res and tr.

    Args:
        morphism (MackeyMorphism): a Mackey morphism

    Returns:
        Kernel: kernel functor and its inclusion into the source

    Raises:
        AxiomViolation: if the kernel is not a sub-Mackey functor (input is not a morphism)
    """
    src = morphism.source
    k_u = RationalMatrix.from_columns(kernel_basis(morphism.f_u), src.underlying_dim)
    k_f = RationalMatrix.from_columns(kernel_basis(morphism.f_f), src.fixed_dim)
    tau = solve_matrix(k_u, src.tau @ k_u)
    res = solve_matrix(k_u, src.res @ k_f)
    tr = solve_matrix(k_f, src.tr @ k_u)
    if tau is None or res is None or tr is None:
        raise AxiomViolation("kernel is not stable under tau, res and tr")
    functor = require_axioms(
        MackeyFunctor(C2Module(k_u.cols, tau), k_f.cols, res, tr, f"ker({src.name})")
    )
    return Kernel(functor, MackeyMorphism(functor, src, k_u, k_f))


def cokernel(morphism: MackeyMorphism) -> Cokernel:
    """Levelwise cokernel with induced tau, res and tr.

    Quotient bases are the standard vectors left over by the rref pivots of the image.

    Args:
        morphism (MackeyMorphism): a Mackey morphism

    Returns:
        Cokernel: quotient functor, projection from the target and level sections

    Raises:
        AxiomViolation: if the image is not a sub-Mackey functor (input is not a morphism)
    """
    tgt = morphism.target
    w_u = RationalMatrix.from_columns(image_basis(morphism.f_u), tgt.underlying_dim)
    w_f = RationalMatrix.from_columns(image_basis(morphism.f_f), tgt.fixed_dim)
    p_u, e_u = quotient_coordinates(w_u)
    p_f, e_f = quotient_coordinates(w_f)
    stable = (
        (p_u @ tgt.tau @ w_u).is_zero()
        and (p_u @ tgt.res @ w_f).is_zero()
        and (p_f @ tgt.tr @ w_u).is_zero()
    )
    if not stable:
        raise AxiomViolation("image is not stable under tau, res and tr")
    functor = require_axioms(
        MackeyFunctor(
            C2Module(e_u.cols, p_u @ tgt.tau @ e_u),
            e_f.cols,
            p_u @ tgt.res @ e_f,
            p_f @ tgt.tr @ e_u,
            f"coker({tgt.name})",
        )
    )
    return Cokernel(functor, MackeyMorphism(tgt, functor, p_u, p_f), e_u, e_f)


def lift(morphism: MackeyMorphism, mono: MackeyMorphism) -> MackeyMorphism:
    """Factor ``morphism`` through a levelwise injective ``mono`` with the same target.

    Args:
        morphism (MackeyMorphism): S -> T
        mono (MackeyMorphism): K -> T, injective on both levels

    Returns:
        MackeyMorphism: g: S -> K with mono.g = morphism

    Raises:
        AxiomViolation: if the image of ``morphism`` is not contained in that of ``mono``
    """
    g_u = solve_matrix(mono.f_u, morphism.f_u)
    g_f = solve_matrix(mono.f_f, morphism.f_f)
    if g_u is None or g_f is None:
        raise AxiomViolation("morphism does not factor through the given subfunctor")
    return MackeyMorphism(morphism.source, mono.source, g_u, g_f)


def _induced(functor: MackeyFunctor) -> MackeyFunctor:
    """Tensor with the free orbit: M(C2/e)^2 underlying, M(C2/e) fixed.

    The underlying action is (v0, v1) -> (tau v1, tau v0), restriction is
    v -> (v, tau v) and transfer is (v0, v1) -> v0 + tau v1.
    """
    n = functor.underlying_dim
    tau = functor.tau
    identity = RationalMatrix.identity(n)
    zero = RationalMatrix.zeros(n, n)
    return MackeyFunctor(
        C2Module(2 * n, zero.hstack(tau).vstack(tau.hstack(zero))),
        n,
        identity.vstack(tau),
        identity.hstack(tau),
        f"{functor.name} x C2+",
    )


def tensor_c2set(functor: MackeyFunctor, c2set: C2Set) -> MackeyFunctor:
    """Tensor a Mackey functor with a finite C2-set.

    Args:
        functor (MackeyFunctor): M
        c2set (C2Set): orbits of S

    Returns:
        MackeyFunctor: M tensor S_+, the sum over orbits of M (trivial points) and the
        induced functor (free orbits)
    """
    pieces = []
    for orbit in c2set:
        match orbit:
            case Orbit.TRIVIAL:
                pieces.append(functor)
            case _:
                pieces.append(_induced(functor))
    if len(pieces) == 1:
        return pieces[0]
    return direct_sum(*pieces).functor
