import json
from pathlib import Path

import pytest

import hopfbrace
from hopfbrace import zoo
from hopfbrace.brace import BraceData, cop_brace
from hopfbrace.cli import EXIT_FAIL, EXIT_PARSE, EXIT_PASS, EXIT_USAGE, braid_lines, run_command
from hopfbrace.hopf_core import HopfData, sweedler_h4
from hopfbrace.hopffile import parse_hopf_file, read_hopf_file

H4_FILE = Path(hopfbrace.__file__).parent / "data" / "h4.hopf"


def _structured(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_check_hopf_passes(capsys):
    assert run_command(["check", "hopf", "zoo:h4"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "h4: pass"


def test_check_shipped_file(capsys):
    assert run_command(["check", "hopf", str(H4_FILE)]) == EXIT_PASS


@pytest.mark.parametrize("argv", [
    ["check", "brace", "zoo:h4-z2"],
    ["check", "brace", "zoo:h4-z2", "--field", "Fp:5"],
    ["check", "brace", "zoo:double-dual-z3"],
    ["check", "brace", "zoo:laurent", "--window", "1", "1"],
    ["check", "matched", "zoo:dual-s3-cop"],
    ["check", "matched", "zoo:h4-z2-pair"],
    ["check", "cocycle", "zoo:h4-cop"],
    ["check", "rmatrix", "zoo:r-d4"],
    ["check", "rmatrix", "zoo:r-h4-z2"],
    ["check", "braid", "zoo:dual-s3-cop"],
])
def test_checks_that_pass(argv, capsys):
    assert run_command(argv + ["--output", "structured"]) == EXIT_PASS
    report = _structured(capsys)
    assert report["status"] == "pass"
    assert report["failed_axiom"] == ""


def test_failing_check_is_structured(tmp_path, capsys):
    text = H4_FILE.read_text().replace("comul x = x(*)g + 1(*)x", "comul x = x(*)1 + 1(*)x")
    path = tmp_path / "broken.hopf"
    path.write_text(text.replace("name h4", "name broken"))
    assert run_command(["check", "hopf", str(path), "--output", "structured"]) == EXIT_FAIL
    report = _structured(capsys)
    assert report == {
        "status": "fail",
        "object_name": "broken",
        "failed_axiom": "comultiplication is multiplicative",
        "witness_labels": ["g", "x"],
        "residual": [[["xg", "1"], "-1"], [["xg", "g"], "1"]],
    }


def test_kernel_errors_are_failures(capsys):
    assert run_command(["check", "braid", "zoo:h4-cop", "--output", "structured"]) == EXIT_FAIL
    report = _structured(capsys)
    assert report["failed_axiom"] == "NotCommutative"
    assert report["object_name"] == "zoo:h4-cop"


@pytest.mark.parametrize("argv", [
    ["check", "brace", "zoo:nothing"],
    ["check", "brace", "zoo:double-dual-s3"],
    ["check", "hopf", "zoo:h4-cop"],
    ["check", "hopf", "missing.hopf"],
    ["check", "hopf", "zoo:h4", "--field", "Fp:4"],
    ["build", "twist", "zoo:h4"],
])
def test_usage_errors(argv, capsys):
    assert run_command(argv) == EXIT_USAGE
    assert capsys.readouterr().out.startswith("Error:")


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as caught:
        run_command(["check", "everything", "zoo:h4"])
    assert caught.value.code == EXIT_USAGE


def test_parse_errors(tmp_path, capsys):
    path = tmp_path / "empty_mult.hopf"
    path.write_text("basis 1 g\nunit = 1\ncomul 1 = 1(*)1\ncomul g = g(*)g\n")
    assert run_command(["check", "hopf", str(path)]) == EXIT_PARSE
    assert capsys.readouterr().out.strip() == "Error: line 4: missing mult entries: 1 1, 1 g, g 1, g g"


def test_zoo_list(capsys):
    assert run_command(["zoo", "list"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "laurent" in out and "infinite" in out
    assert "double-dual-s3" not in out
    assert run_command(["zoo", "list", "--extended"]) == EXIT_PASS
    assert "double-dual-s3" in capsys.readouterr().out


def test_braid_export(tmp_path, capsys):
    out = tmp_path / "braid.txt"
    assert run_command(["braid", "export", "zoo:trivial-z2", "--out", str(out)]) == EXIT_PASS
    assert out.read_text().splitlines() == [
        "1(*)1 1(*)1 1",
        "g(*)1 1(*)g 1",
        "1(*)g g(*)1 1",
        "g(*)g g(*)g 1",
    ]
    assert "Info: wrote" in capsys.readouterr().out


def test_braid_lines_count(fs):
    b = zoo.get("dual-s3-cop", fs)
    # the braid operator is invertible, so every column has an entry
    assert len({line.split()[1] for line in braid_lines(b)}) == 36


def test_build_cop_brace(tmp_path, fs):
    out = tmp_path / "h4-cop.hopf"
    assert run_command(["build", "cop-brace", "zoo:h4", "--out", str(out)]) == EXIT_PASS
    built = read_hopf_file(out)
    assert isinstance(built, BraceData)
    assert built.same_tables(cop_brace(sweedler_h4(fs)))


@pytest.mark.parametrize("argv, dim", [
    (["build", "bicrossed", "zoo:r-h4-z2"], 8),
    (["build", "bicrossed", "zoo:h4-z2-pair"], 8),
    (["build", "double-dual", "zoo:z2"], 4),
    (["build", "twist", "zoo:r-d4"], 8),
])
def test_builds_print_hopf_files(argv, dim, capsys):
    assert run_command(argv) == EXIT_PASS
    built = parse_hopf_file(capsys.readouterr().out)
    assert built.dim == dim
    assert isinstance(built, (HopfData, BraceData))


def test_config_file_sets_defaults(tmp_path, capsys):
    config = tmp_path / "config.md"
    config.write_text("OUTPUT: structured\nFIELD: Fp:7\n")
    assert run_command(["check", "hopf", "zoo:h4", "--config", str(config)]) == EXIT_PASS
    assert _structured(capsys)["status"] == "pass"
