import json
import os
import subprocess
import sys

import pytest

from cone_green.catalog import inverse_term_closed_form
from cone_green.cli import main
from cone_green.errors import VerificationFailure
from cone_green.field import gr
from cone_green.poly import Poly
from cone_green.serialize import rational_from_json

FIRST = ["--op", "d^3 + t^-1 * d^2"]
SECOND = ["--op", "d^2 + a*d + b", "--param", "a=3/2", "--param", "b=-2+i"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_symbols_of_a_constant_operator(capsys):
    code, out, _ = run(capsys, "symbols", "--op", "5")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "cone-green/1"
    assert doc["mu"] == 0 and len(doc["terms"]) == 1
    assert doc["terms"][0]["numerator"] == [[["5/1+0/1*i"]]]


def test_invert_matches_the_closed_form(capsys):
    code, out, _ = run(capsys, "invert", *SECOND, "--terms", "5")
    doc = json.loads(out)
    assert code == 0 and doc["argument_shift"] == 2
    a, b = gr("3/2"), gr("-2+i")
    for k, rec in enumerate(doc["terms"]):
        num, den = inverse_term_closed_form(a, b, k)
        f = rational_from_json(rec)
        assert f.numerator[0, 0] * den == Poly([num]) * f.denominator
    assert len(doc["terms"]) == 6
    assert doc["residue_tables"][0] == [
        {"pole": "0/1+0/1*i", "residue": [["1/1+0/1*i"]]},
        {"pole": "-1/1+0/1*i", "residue": [["-1/1+0/1*i"]]},
    ]


def test_basis_of_the_first_example(capsys):
    code, out, _ = run(capsys, "basis", *FIRST, "--delta", "-1")
    basis = json.loads(out)["basis"]
    assert code == 0 and basis["dimension"] == 3 and basis["depth"] == 3
    assert basis["expansions"] == ["1", "−t·log t"]


def test_green_text_of_the_first_example(capsys):
    code, out, _ = run(capsys, "green", *FIRST, "--delta", "-1", "--text")
    assert code == 0
    assert out.strip() == "[u,v]_A = −αδ̄ + β_0γ̄_0 + β_0γ̄_1 − β_1γ̄_0"


def test_green_record_of_the_second_example(capsys):
    code, out, _ = run(capsys, "green", *SECOND, "--delta", "0")
    report = json.loads(out)["report"]
    assert code == 0 and report["verified"]
    assert report["text"] == "[u,v]_A = −3/2·αγ̄ + αδ̄ − βγ̄"


def test_verify_all_suites_in_name_order(capsys):
    code, out, _ = run(capsys, "verify", *FIRST, "--delta", "-1", "--suite", "all")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert [s["suite"] for s in doc["suites"]] == ["global", "green", "local"]


def test_op_file_accepts_a_json_record(tmp_path, capsys):
    path = tmp_path / "op.json"
    path.write_text(json.dumps({"expression": "d^2 + a*d + b", "bindings": {"a": "3/2", "b": "-2+i"}}))
    code, out, _ = run(capsys, "green", "--op-file", str(path), "--delta", "0", "--text")
    assert code == 0 and out.strip() == "[u,v]_A = −3/2·αγ̄ + αδ̄ − βγ̄"


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "symbols", *FIRST, "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["kind"] == "conormal_symbols"


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (["symbols", "--op", "d +"], 2, "parse_error"),
        (["symbols", "--op", "d^2 + a*d"], 2, "unbound_parameter"),
        (["symbols", "--op", "t^-2 * d"], 2, "not_fuchs_type"),
        (["green", *FIRST, "--delta", "1/2"], 3, "precondition_violation"),
        (["basis", "--op", "d", "--delta", "0", "--depth", "99"], 3, "precondition_violation"),
        (["invert", "--op", "theta^2 - 2"], 3, "singular_symbol"),
        (["basis", "--op", "t^-2 * (theta^2 - 2)", "--delta", "0"], 4, "unsupported_exponent_field"),
    ],
)
def test_errors_map_to_exit_codes(capsys, argv, code, kind):
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    assert json.loads(err)["error"]["kind"] == kind


def test_parse_error_record_has_a_location(capsys):
    _, _, err = run(capsys, "symbols", "--op", "d +")
    rec = json.loads(err)["error"]
    assert (rec["line"], rec["column"]) == (1, 3)


def test_verification_failures_have_their_own_code():
    assert VerificationFailure("x").exit_code == 5


def test_depth_cap_is_read_from_the_environment(monkeypatch, capsys):
    monkeypatch.setenv("CONE_GREEN_MAX_DEPTH", "2")
    code, _, err = run(capsys, "basis", *FIRST, "--delta", "-1")
    assert code == 3 and "CONE_GREEN_MAX_DEPTH=2" in err


def test_repeated_runs_are_byte_identical():
    argv = [sys.executable, "-m", "cone_green", "green", *SECOND, "--delta", "0"]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    env = dict(os.environ, CONE_GREEN_PURE_PYTHON="1")
    outs.append(subprocess.run(argv, capture_output=True, check=True, env=env).stdout)
    assert outs[0] == outs[1] == outs[2]
