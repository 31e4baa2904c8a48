# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Errors raised by the mackeylab library."""


class MackeyLabError(Exception):
    """Base class of every error raised by mackeylab."""


class ShapeMismatch(MackeyLabError):
    """Matrix or vector dimensions disagree."""


class AxiomViolation(MackeyLabError):
    """An induced structure fails the Mackey functor axioms."""


class InvalidDegree(MackeyLabError):
    """A degree or index parameter is outside its admissible range."""


class DegreeMismatch(MackeyLabError):
    """A polynomial assignment is not homogeneous of the expected degree."""


class UnknownGenerator(MackeyLabError):
    """A polynomial mentions a symbol that is not a generator of its ring."""


class MalformedModel(MackeyLabError):
    """A C2 cohomology model or map is assembled from mismatched rings."""


class CompatibilityFailure(MackeyLabError):
    """The restriction square of a C2 map does not commute."""

    def __init__(self, name: str, generators: list[str]) -> None:
        super().__init__(f"{name}: compatibility square fails on {', '.join(generators)}")
        self.name = name
        self.generators = generators


class FactorizationFailure(MackeyLabError):
    """A map expected to factor through K(I, -) has a nonzero underlying part."""


class CrossCheckFailure(MackeyLabError):
    """A cohomology model disagrees with the homology of its chain complex."""
