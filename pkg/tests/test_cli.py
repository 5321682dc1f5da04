import json

import pytest

from lacolor.cli import main
from lacolor.dsl import SpecSemanticError, SpecSyntaxError, parse_spec
from lacolor.groups import Free, Hnn, Prod, Z
from lacolor.render import encode, read_netpbm


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    assert parse_spec("Z") == Z()
    assert parse_spec("free(Z,prod(Z,Z))") == Free(Z(), Prod(Z(), Z()))
    assert parse_spec(" hnn ( Z ,\n inv ) ") == Hnn(Z(), "inv")
    with pytest.raises(SpecSemanticError):
        parse_spec("hnn(free(Z,Z),id)")


@pytest.mark.parametrize(
    "text, line, col",
    [("free(Z", 1, 7), ("prod(Z,\n  Q)", 2, 3), ("Z Z", 1, 3), ("hnn(Z,neg)", 1, 7), ("", 1, 1)],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(SpecSyntaxError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_cli_parse(capsys):
    assert run(capsys, "parse", "--spec", "free( Z , Z )")[:2] == (0, "free(Z,Z)\n")
    code, _, err = run(capsys, "parse", "--spec", "free(Z")
    assert code == 3 and "column 7" in err
    assert run(capsys, "parse", "--spec", "hnn(free(Z,Z),id)")[0] == 3


def test_cli_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 3


def test_cli_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "aperiodic", "--spec", "Z", "--b-radius", "4", "--window", "64")
    assert code == 0
    assert json.loads(out)["verdict"] == "PASS"
    code, out, _ = run(capsys, "verify", "aperiodic", "--spec", "Z", "--coloring", "constant")
    assert code == 1
    code, out, _ = run(capsys, "verify", "la2", "--spec", "Z", "--coloring", "constant", "--g", "1", "--s-cap", "4")
    assert code == 2
    assert json.loads(out)["verdict"] == "INCONCLUSIVE-AT-CAP"
    code, _, err = run(capsys, "verify", "aperiodic", "--spec", "free(Z,Z)", "--window", "12", "--max-elements", "1000")
    assert code == 2 and "exceeded" in err


def test_cli_verify_other_scans(capsys):
    assert run(capsys, "verify", "la2", "--spec", "free(Z,Z)", "--g", "L1.R1", "--h-radius", "3", "--s-cap", "6")[0] == 0
    assert run(capsys, "verify", "ua", "--spec", "Z", "--g-radius", "4", "--h-radius", "30")[0] == 0
    code, out, _ = run(capsys, "verify", "orbit", "--spec", "prod(Z,Z)", "--window", "6",
                       "--schedule-radius", "6", "--schedule-random", "20", "--seed", "3")
    assert code == 0 and json.loads(out)["seed"] == 3
    assert run(capsys, "verify", "la2", "--spec", "Z", "--g", "0")[0] == 3


def test_cli_reports_byte_identical(capsys):
    argv = ["verify", "orbit", "--spec", "hnn(Z,inv)", "--window", "5", "--schedule-random", "30", "--seed", "9"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_cli_color_dump(capsys):
    code, out, _ = run(capsys, "color", "--spec", "prod(Z,Z)", "--radius", "1")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert lines[0] == "(0,0)\t(0,0)"
    assert all("\t" in line for line in lines)


def test_cli_seq_dump(capsys):
    assert run(capsys, "seq", "dump", "--which", "thue-morse", "--n", "16")[1] == "0110100110010110\n"
    assert run(capsys, "seq", "dump", "--which", "ternary", "--n", "6")[1] == "210201\n"


def test_cli_demo(capsys):
    code, out, _ = run(capsys, "demo", "counterexample", "--colors", "3", "--domain", "5000", "--window", "50", "--seed", "2")
    assert code == 0
    assert "verdict: PASS" in out
    assert run(capsys, "demo", "counterexample", "--domain", "10", "--window", "50")[0] == 3


def test_cli_render(tmp_path, capsys):
    out = tmp_path / "g.pgm"
    assert run(capsys, "render", "grid", "--spec", "prod(Z,Z)", "--n", "4", "-o", str(out))[0] == 0
    img = read_netpbm(out.read_bytes())
    assert (img["magic"], img["width"], img["height"], img["maxval"]) == ("P5", 9, 9, 255)
    assert set(img["pixels"]) <= {0, 85, 170, 255}
    assert run(capsys, "render", "grid", "--spec", "Z", "--n", "4")[0] == 3


def test_ppm_branch_for_large_palettes():
    data = encode([[0, 299], [5, 7]], 300)
    img = read_netpbm(data)
    assert img["magic"] == "P6" and len(img["pixels"]) == 2 * 2 * 3
    assert len({img["pixels"][i:i + 3] for i in range(0, 12, 3)}) == 4
