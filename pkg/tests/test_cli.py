import json
import subprocess
import sys

import pytest

from simplecurrent.cli import main
from simplecurrent.metric import MetricGroup

Z4_IOTA = '{"orders":[4],"modulus":4,"q":[0,1,0,1]}'
Z4_ZETA8 = '{"orders":[4],"modulus":8,"q":[0,1,4,1]}'


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_appendix_even_twist(capsys):
    code, out, _ = run(["verify-appendix", "--case", "even-twist", "--param", "4"], capsys)
    assert code == 0
    assert json.loads(out) == {"value": "-1", "expected": "-1", "pass": True}
    assert out.strip() == '{"expected":"-1","pass":true,"value":"-1"}'


@pytest.mark.parametrize("case,param,code", [
    ("even-braiding", 6, 0),
    ("taft", 5, 0),
    ("odd-theta-normalized", 3, 0),
    ("odd-theta", 3, 1),
])
def test_verify_appendix_cases(capsys, case, param, code):
    got, out, _ = run(["verify-appendix", "--case", case, "--param", str(param)], capsys)
    assert got == code
    assert json.loads(out)["pass"] is (code == 0)


def test_analyze_z4_iota(capsys):
    code, out, _ = run(["analyze", "--json", Z4_IOTA], capsys)
    body = json.loads(out)
    assert code == 0
    assert body["gauss_sum"]["text"] == "2+2*z8^2"
    assert len(body["isotropic_subgroups"]) == 2
    assert body["lagrangian_subgroups"] == []
    assert body["nondegenerate"] is False


def test_analyze_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "form.json"
    path.write_text(Z4_ZETA8)
    _, a, _ = run(["analyze", str(path)], capsys)
    _, b, _ = run(["analyze", "-"], capsys, stdin=Z4_ZETA8, monkeypatch=monkeypatch)
    assert a == b
    assert json.loads(a)["nondegenerate"] is True


def test_condense_non_isotropic(capsys):
    code, out, _ = run(["condense", "--json", Z4_ZETA8, "--subgroup", '{"generators":[[2]]}'], capsys)
    assert code == 1
    assert json.loads(out)["error"]["code"] == "NotIsotropic"


def test_condense_roundtrip(capsys):
    code, out, _ = run(["condense", "--json", Z4_IOTA, "--subgroup", '{"generators":[[2]]}'], capsys)
    assert code == 0
    condensed = json.loads(out)["condensed"]
    m = MetricGroup.from_json(condensed)
    assert m.to_json() == condensed


def test_subgroup_from_input_field(capsys):
    doc = json.dumps({"orders": [2, 2], "q": [0, 0, 0, 2], "H": {"generators": [[0, 1]]}})
    code, out, _ = run(["algebra", "--json", doc], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["axioms_report"]["all_passed"] is True
    assert body["nakayama_trace"]["text"] == "2"


def test_classify_with_twist(capsys):
    doc = json.dumps({"orders": [2], "modulus": 4, "q": [0, 0], "chi": [0, 2]})
    code, out, _ = run(["classify", "--json", doc, "--subgroup", '{"generators":[[1]]}'], capsys)
    body = json.loads(out)
    assert code == 0 and body["frobenius"] is True and body["symmetric"] is False


def test_witt_verbs(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text('{"orders":[2],"q":[0,1]}')
    b.write_text('{"orders":[2],"q":[0,3]}')
    code, out, _ = run(["witt-equal", str(a), str(b)], capsys)
    assert code == 0 and json.loads(out) == {"equal": False}
    code, out, _ = run(["witt-class", "--json", '{"orders":[2,2],"q":[0,0,0,2]}'], capsys)
    assert code == 0 and json.loads(out)["kernel"]["orders"] == []
    code, out, _ = run(["witt-class", "--json", Z4_IOTA], capsys)
    assert code == 1 and json.loads(out)["error"]["code"] == "Degenerate"


def test_deligne_and_taft(capsys):
    code, out, _ = run(["deligne", "--p", "2", "2"], capsys)
    body = json.loads(out)
    assert code == 0 and body["classification"]["symmetric"] is True
    code, out, _ = run(["taft", "--n", "4"], capsys)
    body = json.loads(out)
    assert {"generators": [[2]], "order": 2} in body["isotropic_subgroups"]


def test_bounds_flag(capsys):
    code, out, _ = run(["--max-order", "2", "analyze", "--json", Z4_ZETA8], capsys)
    assert code == 1 and json.loads(out)["error"]["code"] == "TooLarge"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["analyze", "--nope"],
    ["analyze", "--json", "{bad"],
    ["analyze", "--json", '{"orders":[2]}'],
    ["condense", "--json", Z4_IOTA],
    ["verify-appendix", "--case", "other", "--param", "2"],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_invalid_form_is_domain_error(capsys):
    code, out, _ = run(["analyze", "--json", '{"orders":[3],"q":[0,1,1]}'], capsys)
    assert code == 1 and json.loads(out)["error"]["code"] == "InvalidForm"


def test_output_is_byte_deterministic():
    cmd = [sys.executable, "-m", "simplecurrent", "analyze", "--json", Z4_ZETA8]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")
