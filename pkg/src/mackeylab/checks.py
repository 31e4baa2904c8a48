# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Verification routines behind the CLI subcommands.

Each routine returns a CheckReport. Errors raised by the library while a
check runs become failing findings; ``InvalidDegree`` is a precondition
error and propagates to the caller.
"""

import logging
from dataclasses import replace
from enum import Enum
from typing import Callable

from sympy import expand

from mackeylab.c2model import (
    Level,
    check_corollary_even,
    check_corollary_odd,
    check_main_theorem,
    check_odd_theorem,
    corrupted_norm,
    euler_class_map,
    euler_lift,
    fiber_inclusion,
    map_norm,
    map_square,
    map_square_minus_norm,
    model_KA_rho,
    odd_comparison,
    theorem_comparison,
)
from mackeylab.complexes import (
    MackeyComplex,
    euler_chain_map,
    euler_characteristic,
    homology,
    homology_euler_characteristic,
    homology_map,
    rho_suspension_A,
    rho_suspension_Z,
)
from mackeylab.exceptions import InvalidDegree, MackeyLabError
from mackeylab.mackey import (
    MackeyMorphism,
    Orbit,
    augmentation,
    augmentation_inclusion,
    check_axioms,
    cokernel,
    decompose,
    kernel,
    std_augmentation_ideal,
    std_burnside,
    std_constant,
    std_permutation,
    tensor_c2set,
)
from mackeylab.qlinalg import RationalMatrix, kernel_basis
from mackeylab.report import CheckReport

logger = logging.getLogger(__name__)

EXPECTED_TRIPLES = {
    "Z": [1, 0, 0],
    "A": [1, 0, 1],
    "I": [0, 0, 1],
    "Z[C2]": [1, 1, 0],
}


class FunctorKind(Enum):
    """Coefficients of the rho-suspension complexes."""

    Z = "Z"
    A = "A"


def _guard(report: CheckReport, body: Callable[[CheckReport], None]) -> CheckReport:
    """Run a check body, turning library errors into a failing finding."""
    try:
        body(report)
    except InvalidDegree:
        raise
    except MackeyLabError as e:
        logger.error("%s aborted: %s", report.check, e)
        report.record("error", None, f"{type(e).__name__}: {e}", False)
    return report


def cmd_verify_mackey(corrupt: bool = False) -> CheckReport:
    """Axioms and decompositions of the standard functors and the tensor identity.

    Args:
        corrupt (bool): use transfer 3 instead of 2 in the constant functor

    Returns:
        CheckReport: one finding per axiom and functor, plus kernel, cokernel and tensor checks
    """

    def body(report: CheckReport) -> None:
        constant = std_constant()
        if corrupt:
            constant = replace(constant, tr=RationalMatrix.scalar(3))
        for functor in (constant, std_burnside(), std_augmentation_ideal(), std_permutation()):
            for axiom, holds in check_axioms(functor).items():
                report.record(f"{functor.name}: {axiom.value}", True, holds, holds)
            report.compare(
                f"{functor.name}: decomposition",
                EXPECTED_TRIPLES[functor.name],
                list(decompose(functor)),
            )
        report.compare(
            "A x C2+ = Z x C2+",
            list(decompose(tensor_c2set(constant, (Orbit.FREE,)))),
            list(decompose(tensor_c2set(std_burnside(), (Orbit.FREE,)))),
        )
        report.compare(
            "ker(A -> Z) = I", [0, 0, 1], list(decompose(kernel(augmentation()).functor))
        )
        report.compare(
            "coker(I -> A) = Z",
            [1, 0, 0],
            list(decompose(cokernel(augmentation_inclusion()).functor)),
        )

    return _guard(CheckReport("mackey", {"corrupt": True} if corrupt else {}), body)


def expected_homology(kind: FunctorKind, index: int) -> dict[str, list[int]]:
    """Nonzero homology dims {degree: [underlying, fixed]} of S^{index rho} tensor Z or A."""
    table = {str(2 * index): [1, int(index % 2 == 0)]}
    if kind is FunctorKind.A:
        table[str(index)] = [0, 1]
    return table


def expected_triples(kind: FunctorKind, index: int) -> dict[str, list[int]]:
    """Decomposition of each nonzero homology functor."""
    table = {str(2 * index): [1, 0, 0] if index % 2 == 0 else [0, 1, 0]}
    if kind is FunctorKind.A:
        table[str(index)] = [0, 0, 1]
    return table


def _corrupt_top(complex_: MackeyComplex) -> MackeyComplex:
    top = max(complex_.differentials)
    d = complex_.differentials[top]
    flipped = d.f_u.with_entry(0, 0, -d.f_u[0, 0])
    differentials = dict(complex_.differentials)
    differentials[top] = MackeyMorphism(d.source, d.target, flipped, d.f_f)
    return MackeyComplex(complex_.terms, differentials, complex_.name)


def cmd_verify_complex(
    kind: FunctorKind = FunctorKind.Z, index: int = 1, corrupt: bool = False
) -> CheckReport:
    """d.d = 0 and the homology table of S^{i rho} tensor Z or S^{m rho} tensor A.

    Args:
        kind (FunctorKind): Z or A coefficients
        index (int): multiple of rho, at least 1
        corrupt (bool): flip the sign of one entry of the top differential

    Returns:
        CheckReport: complex, homology and Euler characteristic findings

    Raises:
        InvalidDegree: if index < 1
    """
    params = {"functor": kind.value, "i" if kind is FunctorKind.Z else "m": index}
    if corrupt:
        params["corrupt"] = True
    complex_ = rho_suspension_Z(index) if kind is FunctorKind.Z else rho_suspension_A(index)
    if corrupt:
        complex_ = _corrupt_top(complex_)

    def body(report: CheckReport) -> None:
        report.compare("complex violations", [], complex_.violations())
        groups = homology(complex_)
        nonzero = {k: h for k, h in groups.items() if not h.functor.is_zero()}
        report.compare(
            "homology dims",
            expected_homology(kind, index),
            {str(k): [h.functor.underlying_dim, h.functor.fixed_dim] for k, h in nonzero.items()},
        )
        report.compare(
            "homology decompositions",
            expected_triples(kind, index),
            {str(k): list(h.decomposition) for k, h in nonzero.items()},
        )
        report.compare(
            "euler characteristic",
            list(euler_characteristic(complex_)),
            list(homology_euler_characteristic(groups)),
        )

    return _guard(CheckReport("complex", params), body)


def _verify_euler_chain_map(report: CheckReport, n: int) -> None:
    chain_map = euler_chain_map(n)
    report.compare("euler chain map violations", [], chain_map.violations())
    induced = homology_map(
        chain_map, homology(chain_map.source), homology(chain_map.target)
    )[2 * n]
    report.record(
        "euler chain map underlying homology",
        "zero",
        induced.f_u.to_json(),
        induced.f_u.is_zero(),
    )
    report.compare(
        "euler chain map fixed kernel",
        [["0", "1"]],
        [[str(x) for x in v] for v in kernel_basis(induced.f_f)],
    )


def cmd_verify_maps(n: int, corrupt: bool = False) -> CheckReport:
    """Square, norm, their difference and the Euler class for one n.

    Args:
        n (int): at least 1
        corrupt (bool): build the norm with y_{8n} -> x_{2n}^2 y_{4n} on fixed points

    Returns:
        CheckReport: compatibility, factorization and Euler class findings

    Raises:
        InvalidDegree: if n < 1
    """
    if n < 1:
        raise InvalidDegree(f"maps need n >= 1, got {n}")
    params = {"n": n, "corrupt": True} if corrupt else {"n": n}

    def body(report: CheckReport) -> None:
        square = map_square(n)
        norm = corrupted_norm(n) if corrupt else map_norm(n)
        report.compare("square compatibility", [], square.compatibility_defects())
        if not report.compare("norm compatibility", [], norm.compatibility_defects()).ok:
            return
        report.compare(
            "square and norm agree underlying",
            square.u_pullback.to_json(),
            norm.u_pullback.to_json(),
        )
        difference = map_square_minus_norm(n, square, norm)
        report.compare("square - norm underlying", {}, difference.u_pullback.to_json())
        fixed = model_KA_rho(2 * n).fixed
        expected = fixed.gen(f"x{2 * n}_fp") ** 2 - fixed.gen(f"y{4 * n}_fp")
        got = difference.f_pullback.image(f"v{4 * n}_fp")
        report.record("square - norm fixed", str(expected), str(got), expand(got - expected) == 0)
        ideal, model = std_augmentation_ideal(), difference.target
        report.compare(
            "K(I, 4n) level dims",
            [ideal.underlying_dim, ideal.fixed_dim],
            [len(model.underlying.generators), len(model.fixed.generators)],
        )
        euler = euler_class_map(n)
        report.compare("euler compatibility", [], euler.compatibility_defects())
        vanishes = difference.compose(euler).is_zero()
        report.record("(square - norm).euler = 0", True, vanishes, vanishes)
        factored = fiber_inclusion(n).compose(euler_lift(n))
        report.record("euler factors through F_2n", True, factored == euler, factored == euler)
        on_fiber = difference.compose(fiber_inclusion(n)).is_zero()
        report.record("(square - norm).fiber = 0", True, on_fiber, on_fiber)
        _verify_euler_chain_map(report, n)

    return _guard(CheckReport("maps", params), body)


def cmd_verify_theorem(
    n: int, max_degree: int, odd: bool = False, corrupt: bool = False
) -> CheckReport:
    """Main theorem for BSU_R(2n), or its odd rank counterpart BSU_R(2n+1).

    Args:
        n (int): at least 1
        max_degree (int): truncation degree
        odd (bool): check BSU_R(2n+1) instead
        corrupt (bool): send the fixed generator x_{2n} (z_4 when odd) to 0

    Returns:
        CheckReport: findings of the theorem check

    Raises:
        InvalidDegree: if n < 1 or max_degree is below the required minimum
    """

    def run() -> CheckReport:
        if odd:
            comparison = odd_comparison(n)
            if corrupt:
                comparison = comparison.with_image(Level.FIXED, "z4_fp", 0)
            return check_odd_theorem(n, max_degree, comparison)
        comparison = theorem_comparison(n)
        if corrupt:
            comparison = comparison.with_image(Level.FIXED, f"x{2 * n}_fp", 0)
        return check_main_theorem(n, max_degree, comparison=comparison)

    try:
        report = run()
    except InvalidDegree:
        raise
    except MackeyLabError as e:
        logger.error("theorem check aborted: %s", e)
        check = "theorem-odd" if odd else "theorem"
        report = CheckReport(check, {"n": n, "max_degree": max_degree})
        report.record("error", None, f"{type(e).__name__}: {e}", False)
    if corrupt:
        report.params["corrupt"] = True
    return report


def cmd_verify_corollaries(n: int) -> CheckReport:
    """Both sphere corollaries for one n.

    Raises:
        InvalidDegree: if n < 1
    """
    if n < 1:
        raise InvalidDegree(f"corollaries need n >= 1, got {n}")

    def body(report: CheckReport) -> None:
        report.merge(check_corollary_even(n), "even: ")
        report.merge(check_corollary_odd(n), "odd: ")

    return _guard(CheckReport("corollaries", {"n": n}), body)


def sweep(max_degree: int, ns: range = range(1, 4)) -> list[Callable[[], CheckReport]]:
    """Checks run by ``mackeylab all``, in a fixed order."""
    checks: list[Callable[[], CheckReport]] = [cmd_verify_mackey]
    checks += [lambda i=i: cmd_verify_complex(FunctorKind.Z, i) for i in range(1, 9)]
    checks += [lambda m=m: cmd_verify_complex(FunctorKind.A, m) for m in (2, 4, 6, 8)]
    for n in ns:
        checks.append(lambda n=n: cmd_verify_maps(n))
        checks.append(lambda n=n: cmd_verify_theorem(n, max_degree))
        checks.append(lambda n=n: cmd_verify_theorem(n, max_degree, odd=True))
        checks.append(lambda n=n: cmd_verify_corollaries(n))
    return checks
