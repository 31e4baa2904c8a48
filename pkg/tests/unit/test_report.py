# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

import json
from unittest.mock import patch

from mackeylab import __version__, report
from mackeylab.report import CheckReport, Status


def test_status_is_derived(passing_report, failing_report):
    assert passing_report.status is Status.PASS
    assert passing_report.passed
    assert failing_report.status is Status.FAIL
    assert [f.item for f in failing_report.failures] == ["error"]


def test_empty_report_passes():
    assert CheckReport("mackey", {}).passed


@patch("mackeylab.report.logger")
def test_compare_logs_failures(mock_log):
    check = CheckReport("complex", {"i": 2})
    assert check.compare("dims", [1, 1], [1, 1]).ok
    mock_log.warning.assert_not_called()
    assert not check.compare("dims", [1, 1], [1, 0]).ok
    mock_log.warning.assert_called_once()


def test_merge_prefixes_items(passing_report):
    merged = CheckReport("corollaries", {"n": 1})
    merged.merge(passing_report, "even: ")
    assert [f.item for f in merged.findings] == [
        "even: compatibility square",
        "even: first series difference (fixed)",
    ]


def test_to_json_omits_elapsed(failing_report):
    data = failing_report.to_json()
    assert data == {
        "check": "maps",
        "params": {"n": 1, "corrupt": True},
        "status": "fail",
        "details": [
            {"item": "square compatibility", "expected": [], "got": [], "ok": True},
            {
                "item": "error",
                "expected": None,
                "got": "DegreeMismatch: norm.fp: x4_fp",
                "ok": False,
            },
        ],
        "version": __version__,
    }


def test_dumps_is_canonical(passing_report):
    again = CheckReport("theorem", {"max_degree": 32, "n": 2}, elapsed=99.0)
    again.compare("compatibility square", [], [])
    again.compare("first series difference (fixed)", None, None)
    assert again.dumps() == passing_report.dumps()
    assert json.loads(passing_report.dumps())["status"] == "pass"


def test_dumps_all(passing_report, failing_report):
    assert report.dumps_all([passing_report]) == passing_report.dumps()
    both = json.loads(report.dumps_all([passing_report, failing_report]))
    assert [r["check"] for r in both] == ["theorem", "maps"]


def test_to_text(failing_report):
    lines = failing_report.to_text().splitlines()
    assert lines[0] == "maps corrupt=True n=1: FAIL"
    assert lines[1].startswith("  [ok  ] square compatibility")
    assert lines[2].startswith("  [FAIL] error")
