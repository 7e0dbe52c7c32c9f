import csv
import io
import json
import math

import pytest

from cli.dispatch import main, parse_complex, parse_floats, parse_grid, resolve_emit, split_emit_fields
from cli.report import CHECKS, render_markdown, run_checks
from core.errors import UsageError
from model.OutputFormatEnum import OutputFormatEnum
from utility.logging_config import configure_logging


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_series_vdp_json(capsys):
    code, out, _ = run(capsys, "series", "vdp", "--n", "2")
    assert code == 0
    assert json.loads(out) == {"family": "vdp", "a": ["1", "-1/8", "-3/32"]}


def test_series_vdp_to_csv_file(capsys, tmp_path):
    target = tmp_path / "coefficients.csv"
    code, out, _ = run(capsys, "series", "vdp", "--n", "3", "--emit", str(target))
    assert code == 0
    assert out == ""
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == ["n", "a_n"]
    assert rows[2] == ["1", "-1/8"]
    assert len(rows) == 5


def test_unknown_flag_is_a_usage_error(capsys):
    code, _, err = run(capsys, "series", "vdp", "--n", "2", "--bogus")
    assert code == 2
    assert "bogus" in err


def test_help_exits_cleanly(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "canard" in out


def test_unreadable_emit_suffix(capsys):
    code, _, _ = run(capsys, "series", "vdp", "--n", "2", "--emit", "out.xlsx")
    assert code == 2


def test_format_a_command_cannot_produce(capsys):
    code, _, err = run(capsys, "series", "vdp", "--n", "2", "--emit", "svg")
    assert code == 2
    assert "cannot emit svg" in err


def test_emit_selects_fields(capsys):
    code, out, _ = run(capsys, "series", "vdp", "--n", "2", "--emit", "a,json")
    assert code == 0
    assert json.loads(out) == {"a": ["1", "-1/8", "-3/32"]}
    code, out, _ = run(capsys, "series", "vdp", "--n", "2", "--emit", "a_n,csv")
    assert code == 0
    assert list(csv.reader(io.StringIO(out))) == [["a_n"], ["1"], ["-1/8"], ["-3/32"]]


def test_emit_rejects_unknown_fields(capsys):
    code, _, err = run(capsys, "series", "vdp", "--n", "2", "--emit", "b,json")
    assert code == 2
    assert "unknown output fields" in err


def test_relief_contour_svg(capsys):
    code, out, _ = run(
        capsys, "relief", "contour", "--spec", "brusselator", "--levels", "1/3,0",
        "--bbox", "-2:1:-1.5:1.5", "--res", "60",
    )
    assert code == 0
    assert out.startswith("<!-- canard-lab")
    assert "<path" in out and "<circle" in out


def test_relief_error_is_a_json_record(capsys):
    code, _, err = run(capsys, "relief", "contour", "--spec", "lorenz", "--levels", "0")
    assert code == 1
    record = json.loads(err.strip().splitlines()[-1])
    assert record["error"] == "relief_error"


def test_relief_check_certifies_the_east_path(capsys):
    code, out, _ = run(capsys, "relief", "check", "--path", "9,1")
    assert code == 0
    certificate = json.loads(out)
    assert certificate["descending"] is True
    assert float(certificate["C"]) == pytest.approx(1)


def test_relief_descend_json(capsys):
    code, out, _ = run(capsys, "relief", "descend", "--spec", "quadratic", "--start", "2", "--target", "0")
    assert code == 0
    payload = json.loads(out)
    assert abs(complex(*map(float, payload["points"][-1]))) < 1e-3
    assert payload["certificate"]["descending"] is True


def test_ode_run_linear_decay(capsys):
    code, out, _ = run(
        capsys, "ode", "run", "--field", "linear-test", "--eps", "0.1", "--path", "0,1", "--y0", "1", "--emit", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert float(payload["end_value"][0]) == pytest.approx(math.exp(-10), rel=1e-7)
    assert int(payload["steps"]) == len(payload["trace"]) - 1


def test_asymp_ratio_csv(capsys):
    code, out, _ = run(capsys, "asymp", "ratio", "--n", "10", "--jobs", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "r_n"]
    assert len(rows) == 11


def test_inner_vdp_single_point(capsys):
    code, out, _ = run(capsys, "inner", "vdp", "--x", "3", "--emit", "json", "--jobs", "1")
    assert code == 0
    payload = json.loads(out)
    [sample] = payload["samples"]
    assert float(sample["diff_im"]) == pytest.approx(2.017e-7, rel=0.2)
    assert "log_slope" not in payload


def test_report_with_no_targets_is_header_only(capsys):
    code, out, _ = run(capsys, "report", "--targets", "")
    assert code == 0
    assert out.splitlines() == [
        "# canard-lab acceptance report",
        "",
        "| check | expected | computed | tolerance | result |",
        "|---|---|---|---|---|",
    ]


def test_report_rows():
    rows = run_checks(["a-exact", "no-such-check"])
    assert rows[0].passed
    assert not rows[1].passed
    text = render_markdown(rows)
    assert "| a-exact |" in text and "FAIL" in text


def test_argument_parsers():
    assert parse_complex("-1+10i") == -1 + 10j
    assert parse_floats("0, 1/2, 4/3") == pytest.approx([0, 0.5, 4 / 3])
    assert parse_grid("2:3:0.5") == [2.0, 2.5, 3.0]
    assert resolve_emit("trace.csv", OutputFormatEnum.json)[0] is OutputFormatEnum.csv
    assert resolve_emit(None, OutputFormatEnum.md) == (OutputFormatEnum.md, None)
    with pytest.raises(UsageError):
        parse_complex("one")
    with pytest.raises(UsageError):
        parse_grid("3:2:0.5")
    assert split_emit_fields("a,json") == (["a"], "json")
    assert split_emit_fields("eps, re_alpha,out.csv") == (["eps", "re_alpha"], "out.csv")
    assert split_emit_fields("json") == ([], "json")


def test_report_covers_the_shooting_checks():
    assert {"truncation-vs-shoot", "brusselator-scaling"} <= set(CHECKS)


def test_logging_setup_returns_nothing(tmp_path):
    assert configure_logging(str(tmp_path / "canard.log"), "info") is None
