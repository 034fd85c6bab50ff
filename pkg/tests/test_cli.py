import io
import json

import pytest

from wkit.cli import main

TRIVIAL = "padic-nss p=3 f=X1 k=1 g=0 g1=X1 h1=1\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_divide_example():
    status, out, _ = run("divide", "--vars", "2", "--order", "8", "--f", "X2^2", "--g", "X2-X1")
    assert status == 0
    assert out.splitlines()[:2] == ["q = X1 + X2", "r = X1^2"]


def test_verify_example(tmp_path):
    cert = tmp_path / "cert.txt"
    cert.write_text(TRIVIAL)
    status, out, _ = run("verify", str(cert))
    assert (status, out.strip()) == (0, "verified")
    cert.write_text(TRIVIAL.replace("h1=1", "h1=2"))
    status, out, _ = run("verify", str(cert), "--json")
    assert status == 1 and json.loads(out)["verdict"] == "refuted"


def test_sample_definite_example():
    status, out, _ = run("sample-definite", "-p", "3", "-N", "8", "--f", "1", "--g", "3", "-n", "10")
    assert status == 1 and out.startswith("counterexample at")
    status, out, _ = run("sample-definite", "-p", "3", "-N", "8", "--f", "wp(X1)", "--g", "3*(wp(X1)^2-1)", "-n", "50")
    assert status == 0 and out.startswith("no counterexample")


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["prepare", "--order", "6", "--g", "X1 + X2^2 + X1*X2"], ["u = 1", "w = X1 + X1*X2 + X2^2", "degree = 2"]),
        (["shear", "--f", "X1", "-d", "2", "--vars", "2"], ["result = X1 + X2^2"]),
        (["regularize", "--f", "X1*X2", "--vars", "2", "--order", "6"], ["d = 1", "f1 = X1*X2 + X2^2", "order1 = 2"]),
        (["invert", "--f", "1-X1", "--order", "4"], ["inverse = 1 + X1 + X1^2 + X1^3 + X1^4"]),
        (["subst", "--f", "X1^2", "--g", "X1+X2", "--order", "4"], ["result = X1^2 + 2*X1*X2 + X2^2"]),
        (["hensel-root", "--f", "1+X1", "-k", "2", "--order", "3"], ["root = 1 + 1/2*X1 - 1/8*X1^2 + 1/16*X1^3"]),
        (["ift", "--f", "X1 - X2 + X2^2", "--order", "4"], ["y1 = X1 + X1^2 + 2*X1^3 + 5*X1^4"]),
        (["gauss-norm", "-p", "2", "--f", "1/2 + X1"], ["valuation = -1"]),
        (["tate-divide", "-p", "2", "-N", "8", "--f", "X1^3", "--g", "X1^2-2"], ["q = 2^0 * (X1) (mod 2^8)", "r = 2^0 * (2*X1) (mod 2^8)", "degree = 2"]),
        (["tate-prepare", "-p", "3", "-N", "8", "--g", "(1+3*X1)*(X1-3)"], ["u = 3^0 * (1 + 3*X1) (mod 3^8)", "w = 3^0 * (-3 + X1) (mod 3^8)", "degree = 1"]),
        (["eval", "--f", "X1+X2", "--at", "t, t^(3/2)"], ["value = t + t^(3/2)"]),
        (["eval", "--f", "1/(1-X1)", "--order", "3", "--at", "t"], ["value = 1 + t + t^2 + t^3 + O(t^(4))"]),
        (["eval", "-p", "3", "-N", "6", "--f", "X1^2", "--at", "3"], ["value = 9 + O(3^6)"]),
        (["val", "--a", "t^(1/2) + t"], ["valuation = 1/2"]),
        (["val", "--valuation", "composite:3", "--a", "3*t"], ["valuation = (1, 1)"]),
        (["compare", "--valuation", "composite:3", "--a", "t", "--b", "3"], ["preceq = true", "prec = true", "asymp = false", "sim = false"]),
        (["coarsen", "-p", "3", "--a", "3*t^(1/2) + t"], ["coarse = 1/2", "residue = 3", "composite = (1/2, 1)"]),
    ],
)
def test_commands(argv, expected):
    status, out, err = run(*argv)
    assert (status, err) == (0, "")
    assert out.splitlines() == expected


def test_tate_root():
    status, out, _ = run("tate-root", "-p", "3", "-N", "6", "-k", "2", "--f", "1+3*X1", "--json")
    assert status == 0 and json.loads(out)["root"].startswith("3^0 * (1 ")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["divide", "--f", "X1", "--g", "0"], "E_NOT_REGULAR"),
        (["invert", "--f", "X1"], "E_NOT_A_UNIT"),
        (["gauss-norm", "--f", "X1"], "E_USAGE"),
        (["divide", "--f", "X1 +", "--g", "X1"], "E_SYNTAX"),
        (["divide", "--f", "gamma(X1, X2)", "--g", "X1"], "E_ARITY"),
        (["eval", "--f", "X1", "--at", "1"], "E_NOT_INFINITESIMAL"),
        (["eval", "-p", "3", "--f", "X1", "--at", "1/3"], "E_OUT_OF_DOMAIN"),
        (["tate-root", "-p", "2", "-k", "2", "--f", "1+2*X1"], "E_RAMIFIED_INDEX"),
        (["hensel-root", "--f", "2+X1", "-k", "2"], "E_NO_CONSTANT_ROOT"),
        (["shear", "--f", "X1", "-d", "0", "--vars", "2"], "E_USAGE"),
        (["sample-definite", "-p", "3", "-N", "4", "--f", "0", "--g", "0", "-n", "3"], "E_PRECISION_EXHAUSTED"),
        (["verify", "/nonexistent/cert.txt"], "E_USAGE"),
        (["val", "--valuation", "bogus", "--a", "t"], "E_USAGE"),
    ],
)
def test_error_codes(argv, code):
    status, out, err = run(*argv)
    assert status == 2 and out == ""
    assert err.startswith(f"error[{code}]")


def test_verify_stdin_and_format_error(monkeypatch, tmp_path):
    monkeypatch.setattr("sys.stdin", io.StringIO(TRIVIAL))
    assert run("verify", "-")[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("padic-nss f=X1")
    status, _, err = run("verify", str(bad))
    assert status == 2 and "E_CERTIFICATE_FORMAT" in err
    iv = tmp_path / "iv.txt"
    iv.write_text("integral-valued p=3 f=X1 g=3*X1 h=1/3")
    status, _, err = run("verify", str(iv))
    assert status == 2 and "E_NORM_VIOLATION" in err


def test_unknown_flags_rejected():
    with pytest.raises(SystemExit) as exc:
        run("divide", "--f", "X1", "--g", "X1", "--bogus")
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        run("frobnicate")


def test_determinism():
    argv = ["sample-definite", "-p", "5", "-N", "6", "--f", "X1+X2", "--g", "5*X1", "-n", "200", "--seed", "3", "--json"]
    first = run(*argv)
    assert all(run(*argv) == first for _ in range(3))
    argv = ["divide", "--order", "7", "--f", "1/(1-X1*X2)", "--g", "X2^2 - X1 + X1*X2^3", "--json"]
    assert run(*argv) == run(*argv)
    data = json.loads(run(*argv)[1])
    assert set(data) == {"q", "r", "degree"}
