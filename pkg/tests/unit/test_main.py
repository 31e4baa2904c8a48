# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

import argparse
import json
import os
from pathlib import Path
from unittest.mock import MagicMock, patch

import pytest

from mackeylab import main
from mackeylab.checks import FunctorKind
from mackeylab.exceptions import InvalidDegree


def test_setup_logging(caplog):
    main.setup_logging()

    with caplog.at_level(main.logging.INFO):
        main.logging.info("Test log message")

    assert len(caplog.records) == 1
    log_record = caplog.records[0]
    assert log_record.levelname == "INFO"
    assert log_record.message == "Test log message"


@patch("mackeylab.main.logging.basicConfig")
def test_setup_logging_level(mock_basic_config):
    main.setup_logging("DEBUG")

    kwargs = mock_basic_config.call_args.kwargs
    assert kwargs["level"] == "DEBUG"
    assert kwargs["handlers"][0].stream is main.sys.stderr


@pytest.mark.parametrize(
    "argv, expected", [(["all"], "INFO"), (["--log-level", "debug", "all"], "DEBUG")]
)
def test_parse_log_level(argv, expected):
    assert main.parse_command_line(argv).log_level == expected


@pytest.mark.parametrize("value, expected", [("1", 1), ("32", 32)])
def test_positive_int(value, expected):
    assert main.positive_int(value) == expected


@pytest.mark.parametrize("value", ["0", "-3", "two", "1.5"])
def test_positive_int_invalid(value):
    with pytest.raises(argparse.ArgumentTypeError):
        main.positive_int(value)


@pytest.mark.parametrize(
    "command, expected_command, expected_format",
    [
        (["verify-mackey"], "verify-mackey", main.OutputFormat.JSON),
        (["--format", "text", "verify-maps", "--n", "2"], "verify-maps", main.OutputFormat.TEXT),
        (["all"], "all", main.OutputFormat.JSON),
    ],
)
def test_parse_command_line(command, expected_command, expected_format):
    args = main.parse_command_line(command)
    assert args.command == expected_command
    assert args.format == expected_format
    assert args.metrics_file is None


def test_parse_command_line_defaults():
    args = main.parse_command_line(["verify-theorem"])
    assert args.n == 1
    assert args.max_degree is None
    assert not args.odd
    assert not args.corrupt


def test_parse_command_line_complex():
    args = main.parse_command_line(["verify-complex", "--m", "4", "--functor", "Z"])
    assert args.m == 4
    assert args.i is None
    assert args.functor is FunctorKind.Z


@pytest.mark.parametrize(
    "args",
    [
        ["-h"],
        ["--help"],
        ["help"],
        [],
        ["verify-complex"],
        ["verify-complex", "--i", "2", "--m", "2"],
        ["verify-complex", "--i", "0"],
        ["verify-theorem", "--max-degree", "zero"],
        ["--log-level", "TRACE", "all"],
    ],
)
@patch("mackeylab.main.argparse.ArgumentParser.exit", autospec=True)
def test_parse_command_line_exits(mock_exit, args):
    mock_exit.side_effect = SystemExit
    with pytest.raises(SystemExit):
        main.parse_command_line(args)


@patch.dict(os.environ, {main.MAX_DEGREE_ENV: "20"})
def test_build_config_from_environment():
    config = main.build_config(main.parse_command_line(["verify-theorem"]))
    assert config.max_degree == 20


@patch.dict(os.environ, {main.MAX_DEGREE_ENV: "20"})
def test_build_config_flag_wins():
    config = main.build_config(main.parse_command_line(["all", "--max-degree", "40"]))
    assert config.max_degree == 40


@patch.dict(os.environ, {}, clear=True)
def test_build_config_default():
    config = main.build_config(main.parse_command_line(["--output", "out.json", "verify-mackey"]))
    assert config.max_degree == main.DEFAULT_MAX_DEGREE
    assert config.output == Path("out.json")


@patch.dict(os.environ, {main.MAX_DEGREE_ENV: "many"})
def test_build_config_invalid_environment():
    with pytest.raises(InvalidDegree):
        main.build_config(main.parse_command_line(["verify-theorem"]))


@pytest.mark.parametrize(
    "argv, expected_kind, expected_index",
    [
        (["verify-complex", "--i", "3"], FunctorKind.Z, 3),
        (["verify-complex", "--m", "4"], FunctorKind.A, 4),
        (["verify-complex", "--m", "4", "--functor", "Z"], FunctorKind.Z, 4),
    ],
)
@patch("mackeylab.main.cmd_verify_complex")
def test_plan_complex(mock_complex, argv, expected_kind, expected_index):
    args = main.parse_command_line(argv)
    (check,) = main.plan(args, main.build_config(args))
    check()
    mock_complex.assert_called_once_with(expected_kind, expected_index, False)


@patch("mackeylab.main.cmd_verify_theorem")
def test_plan_theorem(mock_theorem):
    args = main.parse_command_line(["verify-theorem", "--n", "2", "--max-degree", "24", "--odd"])
    (check,) = main.plan(args, main.build_config(args))
    check()
    mock_theorem.assert_called_once_with(2, 24, True, False)


@pytest.mark.parametrize(
    "argv, target, expected_args",
    [
        (["verify-mackey", "--corrupt"], "cmd_verify_mackey", (True,)),
        (["verify-maps", "--n", "3"], "cmd_verify_maps", (3, False)),
        (["verify-corollaries", "--n", "2"], "cmd_verify_corollaries", (2,)),
    ],
)
def test_plan_single_checks(argv, target, expected_args):
    args = main.parse_command_line(argv)
    with patch(f"mackeylab.main.{target}") as mock_check:
        (check,) = main.plan(args, main.build_config(args))
        assert check() == mock_check.return_value
    mock_check.assert_called_once_with(*expected_args)


@patch("mackeylab.main.sweep")
def test_plan_all(mock_sweep):
    args = main.parse_command_line(["all", "--max-degree", "24"])
    assert main.plan(args, main.build_config(args)) == mock_sweep.return_value
    mock_sweep.assert_called_once_with(24)


@patch("mackeylab.main.logger")
def test_run_checks_sets_elapsed(mock_log, passing_report):
    check = MagicMock(return_value=passing_report)
    (report,) = main.run_checks([check])
    assert report is passing_report
    assert report.elapsed >= 0
    mock_log.info.assert_called_once()


def test_run_pass(capsys):
    assert main.run(["verify-mackey"]) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out)["status"] == "pass"


def test_run_fail(capsys):
    assert main.run(["verify-mackey", "--corrupt"]) == main.EXIT_FAIL
    assert json.loads(capsys.readouterr().out)["status"] == "fail"


@patch("mackeylab.main.emit")
def test_run_invalid_degree(mock_emit):
    assert main.run(["verify-theorem", "--n", "2", "--max-degree", "8"]) == main.EXIT_USAGE
    mock_emit.assert_not_called()


def test_run_text_output_and_metrics(tmp_path):
    output = tmp_path / "report.txt"
    metrics = tmp_path / "mackeylab.prom"
    argv = [
        "--format",
        "text",
        "--output",
        str(output),
        "--metrics-file",
        str(metrics),
        "verify-complex",
        "--i",
        "2",
    ]
    assert main.run(argv) == main.EXIT_PASS
    assert output.read_text().startswith("complex functor=Z i=2: PASS")
    assert 'mackeylab_check_status{check="complex",params="functor=Z,i=2"} 1.0' in (
        metrics.read_text()
    )


def test_emit_several_reports_as_array(capsys, passing_report, failing_report):
    config = main.Config(32, main.OutputFormat.JSON, None, None)
    main.emit([passing_report, failing_report], config)
    assert [r["check"] for r in json.loads(capsys.readouterr().out)] == ["theorem", "maps"]


@patch("mackeylab.main.run")
@patch("mackeylab.main.setup_logging")
@patch.object(main.sys, "argv", ["mackeylab", "--log-level", "WARNING", "verify-mackey"])
def test_main(mock_setup_logging, mock_run):
    mock_run.return_value = main.EXIT_FAIL

    with pytest.raises(SystemExit) as excinfo:
        main.main()

    mock_setup_logging.assert_called_once_with("WARNING")
    mock_run.assert_called_once_with(["--log-level", "WARNING", "verify-mackey"])
    assert excinfo.value.code == main.EXIT_FAIL
