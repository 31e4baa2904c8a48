# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.
"""Prometheus metrics over check reports."""

import logging
from enum import Enum
from pathlib import Path
from typing import Generator, Iterable, Optional, Sequence

from prometheus_client import CollectorRegistry, write_to_textfile
from prometheus_client.core import GaugeMetricFamily, Metric

from mackeylab.report import CheckReport

try:  # pragma: no cover
    from prometheus_client.registry import (  # pylint: disable=ungrouped-imports
        Collector,
    )
except ImportError:  # pragma: no cover
    # python3-prometheus-client on Ubuntu 22.04 (jammy) lacks the Collector class.
    # Backport from python3-prometheus-client==0.19.0
    from abc import ABC, abstractmethod

    class Collector(ABC):  # type: ignore # pylint: disable=too-few-public-methods
        """Abstract Collector class"""

        @abstractmethod
        def collect(self) -> Iterable[Metric]:
            """Abstract method to collect the metrics"""


METRICS_PREFIX = "mackeylab_"
LABELS = ["check", "params"]

logger = logging.getLogger(__name__)


class CheckMetric(Enum):
    """Gauges exported per check"""

    STATUS = "check_status"
    FAILURES = "check_failures"
    ELAPSED = "check_elapsed_seconds"

    @property
    def documentation(self) -> str:
        """Help text of the gauge."""
        match self:
            case CheckMetric.STATUS:
                return "Whether the check passed (1 for pass, 0 for fail)"
            case CheckMetric.FAILURES:
                return "Number of failing findings of the check"
            case _:
                return "Wall clock time of the check in seconds"


def params_label(report: CheckReport) -> str:
    """Stable label value for the parameters of a report, e.g. ``max_degree=32,n=2``."""
    return ",".join(f"{k}={report.params[k]}" for k in sorted(report.params))


class ReportCollector(Collector):
    """Export the outcome of finished checks."""

    def __init__(self, reports: Sequence[CheckReport]) -> None:
        super().__init__()
        self.reports = reports

    def collect(self) -> Generator[Metric, None, None]:
        """Collect one sample per report for every check metric.

        Yields:
            Generator[Metric]: status, failure count and elapsed time gauges
        """
        for description, metric in self.metrics():
            if metric:
                yield metric
            else:
                logger.error("Could not get the metric: %s", description)

    def metrics(self) -> list[tuple[str, Optional[Metric]]]:
        """Get the check gauges.

        Returns:
            list[tuple[str, Optional[Metric]]]: gauges, None when there is no report
        """
        return [(metric.value, self._gauge(metric)) for metric in CheckMetric]

    def _gauge(self, metric: CheckMetric) -> Optional[Metric]:
        if not self.reports:
            return None
        gauge = GaugeMetricFamily(
            name=f"{METRICS_PREFIX}{metric.value}",
            documentation=metric.documentation,
            labels=LABELS,
        )
        for report in self.reports:
            gauge.add_metric([report.check, params_label(report)], _value(report, metric))
        return gauge


def _value(report: CheckReport, metric: CheckMetric) -> float:
    """Sample of one gauge for one report."""
    match metric:
        case CheckMetric.STATUS:
            return 1 if report.passed else 0
        case CheckMetric.FAILURES:
            return len(report.failures)
        case _:
            return report.elapsed


def write_metrics(reports: Sequence[CheckReport], path: Path) -> None:
    """Write the check gauges as a Prometheus textfile.

    Args:
        reports (Sequence[CheckReport]): finished reports
        path (Path): textfile to (over)write
    """
    registry = CollectorRegistry()
    registry.register(ReportCollector(reports))
    write_to_textfile(str(path), registry)
    logger.info("Metrics written to %s", path)
