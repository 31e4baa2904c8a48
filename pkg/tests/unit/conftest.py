# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Fixtures for unit tests"""

from unittest.mock import patch

import pytest

from mackeylab.report import CheckReport


@pytest.fixture
def mock_gauge():
    with patch("mackeylab.collector.GaugeMetricFamily") as mock:
        mock.return_value = mock
        yield mock


@pytest.fixture
def passing_report():
    report = CheckReport("theorem", {"n": 2, "max_degree": 32}, elapsed=1.5)
    report.compare("compatibility square", [], [])
    report.compare("first series difference (fixed)", None, None)
    return report


@pytest.fixture
def failing_report():
    report = CheckReport("maps", {"n": 1, "corrupt": True}, elapsed=0.25)
    report.compare("square compatibility", [], [])
    report.record("error", None, "DegreeMismatch: norm.fp: x4_fp", False)
    return report
