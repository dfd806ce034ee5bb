import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from conftest import GOLDEN
from flagqec.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, load_schema, main


@pytest.fixture
def steane_file(data_dir):
    return str(data_dir / "steane.code")


@pytest.fixture
def code30_file(data_dir):
    return str(data_dir / "code30.code")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_steane(steane_file, capsys):
    code, out, _ = run(["build", steane_file], capsys)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "[[7,1,3]] cyclic=true"


def test_build_code30(code30_file, capsys):
    code, out, _ = run(["build", code30_file], capsys)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "[[30,14,3]] cyclic=true"
    assert "14 pairs, valid" in out


def test_build_json_validates(steane_file, capsys):
    code, out, _ = run(["build", steane_file, "--json"], capsys)
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("build"))
    assert payload["k"] == 1 and payload["d_x"] == 3


def test_build_non_dividing_polynomial(tmp_path, capsys):
    f = tmp_path / "bad.code"
    f.write_text("n = 7\ncheck_poly_x = 0,2\ncheck_poly_z = 0,2,3,4\n")
    code, _, err = run(["build", str(f)], capsys)
    assert code == EXIT_USAGE
    assert "1 + x^2" in err and "bad.code:2:" in err


def test_distinguish_theorem2(steane_file, capsys):
    code, out, _ = run(["distinguish", steane_file], capsys)
    assert code == EXIT_OK and out.startswith("theorem2: 7/7")


def test_distinguish_lemma1_witness(tmp_path, capsys):
    f = tmp_path / "rep.code"
    f.write_text("n = 4\nhx_row = 1111\nhz_row = 1111\n")
    code, out, _ = run(["distinguish", str(f), "--method", "lemma1", "--kind", "z", "--l", "0", "--json"], capsys)
    assert code == EXIT_FAIL
    payload = json.loads(out[out.index("{"):])
    jsonschema.validate(payload, load_schema("distinguish"))
    assert payload["reports"][0]["witness"] == ["IIII", "IIZZ"]


def test_distinguish_oracle_and_lemma3(steane_file, capsys):
    assert run(["distinguish", steane_file, "--method", "oracle", "--kind", "z"], capsys)[0] == EXIT_OK
    assert run(["distinguish", steane_file, "--method", "lemma3"], capsys)[0] == EXIT_OK
    assert run(["distinguish", steane_file, "--method", "lemma1", "--kind", "product"], capsys)[0] == EXIT_USAGE


def test_distinguish_shift_out_of_range(steane_file, capsys):
    code, _, err = run(["distinguish", steane_file, "--l", "99"], capsys)
    assert code == EXIT_USAGE and "--l 99" in err


def test_verify_ftec(steane_file, capsys):
    code, out, _ = run(["verify", steane_file, "--samples", "50", "--jobs", "1"], capsys)
    assert code == EXIT_OK and out.startswith("PASS ftec")


def test_verify_measure_code30(code30_file, capsys):
    code, out, _ = run(["verify", code30_file, "--protocol", "measure", "--operator", "X1 X11 X21", "--jobs", "1"], capsys)
    assert code == EXIT_OK and out.startswith("PASS measure")


@pytest.mark.parametrize(
    "extra, fragment",
    [
        (["--protocol", "measure", "--operator", "X1"], "anticommutes"),
        (["--protocol", "measure", "--operator", "X9"], "invalid operator"),
        (["--protocol", "measure"], "needs --operator"),
        (["--operator", "X1 X3 X4"], "only applies"),
    ],
)
def test_verify_usage_errors(steane_file, capsys, extra, fragment):
    code, _, err = run(["verify", steane_file, "--jobs", "1", *extra], capsys)
    assert code == EXIT_USAGE and fragment in err


def test_verify_report_dir_and_jobs(steane_file, tmp_path, monkeypatch, capsys):
    reports = {}
    for jobs in ("1", "2"):
        d = tmp_path / f"j{jobs}"
        monkeypatch.setenv("FLAGQEC_REPORT_DIR", str(d))
        assert run(["verify", steane_file, "--samples", "40", "--jobs", jobs], capsys)[0] == EXIT_OK
        (path,) = d.iterdir()
        reports[jobs] = path.read_bytes()
    assert reports["1"] == reports["2"]
    payload = json.loads(reports["1"])
    jsonschema.validate(payload, load_schema("campaign"))


def test_verify_tie_break_flag(steane_file, capsys):
    code, out, _ = run(["verify", steane_file, "--samples", "20", "--jobs", "1", "--tie-break", "reverse", "--json"], capsys)
    assert code == EXIT_OK
    assert json.loads(out[out.index("{"):])["tie_break"] == "reverse"


def test_tables_steane(steane_file, capsys):
    code, out, _ = run(["tables", steane_file], capsys)
    assert code == EXIT_FAIL
    assert out.rstrip().endswith("FAIL")
    assert out.count("MISMATCH") == 5


def test_tables_json_schema(steane_file, capsys):
    _, out, _ = run(["tables", steane_file, "--operator", "Z1 Z3 Z4", "--json"], capsys)
    payload = json.loads(out[out.index("{"):])
    jsonschema.validate(payload, load_schema("tables"))
    assert payload["operators"] == ["Z1 Z3 Z4"]


def test_circuit_golden(steane_file, capsys):
    code, out, _ = run(["circuit", steane_file, "--generator", "1", "--flag"], capsys)
    assert code == EXIT_OK and out == (GOLDEN / "steane_g1_flag.txt").read_text()
    code, out, _ = run(["circuit", steane_file, "--generator", "1", "--no-flag"], capsys)
    assert out == (GOLDEN / "steane_g1_noflag.txt").read_text()


@pytest.mark.parametrize(
    "extra, fragment",
    [
        (["--generator", "7"], "outside 1..6"),
        (["--operator", "IIIIIII"], "identity"),
        ([], "exactly one"),
        (["--generator", "1", "--operator", "X1"], "exactly one"),
    ],
)
def test_circuit_errors(steane_file, capsys, extra, fragment):
    code, _, err = run(["circuit", steane_file, *extra], capsys)
    assert code == EXIT_USAGE and fragment in err


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["build", "x.code", "--nope"])
    assert info.value.code == EXIT_USAGE


@pytest.mark.skipif(shutil.which("flagqec") is None, reason="console script not installed")
def test_console_script(steane_file):
    proc = subprocess.run(["flagqec", "build", steane_file], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("[[7,1,3]]")


def test_module_entry_point(steane_file):
    proc = subprocess.run([sys.executable, "-m", "flagqec.cli", "circuit", steane_file, "--generator", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[6:9] == ["CPL q1 Z", "CPL q2 Z", "CPL q3 Z"]
