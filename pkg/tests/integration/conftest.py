# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

import os
import subprocess
import sys
from pathlib import Path

import pytest

from mackeylab.collector import METRICS_PREFIX, CheckMetric

SRC = Path(__file__).resolve().parents[2] / "src"


@pytest.fixture
def run_cli():
    # Run the verification CLI as a separate process
    env = {**os.environ, "PYTHONPATH": str(SRC)}
    env.pop("MACKEYLAB_MAX_DEGREE", None)

    def run(*args: str) -> subprocess.CompletedProcess:
        return subprocess.run(
            [sys.executable, "-m", "mackeylab.main", *args],
            capture_output=True,
            text=True,
            env=env,
            timeout=600,
        )

    return run


@pytest.fixture
def expected_metrics():
    return {f"{METRICS_PREFIX}{metric.value}" for metric in CheckMetric}
