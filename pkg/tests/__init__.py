# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Init file for the tests submodule."""
