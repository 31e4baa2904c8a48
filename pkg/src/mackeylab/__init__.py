# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Exact rational verification of rational C2-equivariant homotopy computations."""

__version__ = "0.1.0"
