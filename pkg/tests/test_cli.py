import io
import json
import subprocess
import sys

from tate_periods.cli import main

from graphs import DATA


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate_theta():
    code, out, _ = run("validate", "-g", str(DATA / "theta.json"))
    assert code == 0 and "genus: 2" in out


def test_differentials_loop():
    code, out, _ = run("differentials", "-g", str(DATA / "loop.json"), "--omega", "1", "--order", "2")
    assert code == 0
    assert out == "omega1 [chart v, order 2] = (-1/(z^2 - z)) dz\n"


def test_json_output_nests_monomials():
    code, out, _ = run("differentials", "-g", str(DATA / "loop.json"), "--k", "2", "--order", "1",
                       "--out", "json")
    d = json.loads(out)
    assert set(d["coeff"]) == {"1", "y[e]"}


def test_unipotent_command():
    code, out, _ = run("unipotent", "-g", str(DATA / "g1t2.json"), "--word", "omega1,omega_t1_t0",
                       "--order", "1", "--zorder", "12")
    assert code == 0 and out.strip().endswith("= y[b] * Li[1](z)")


def test_polylog_and_padic():
    code, out, _ = run("polylog", "--index", "1", "--shuffle", "1")
    assert "2*Li[1,1](z)" in out
    code, out, _ = run("padic", "--index", "1", "--p", "5", "--prec", "10")
    assert code == 0 and out.startswith("Li[1](5) = ")


def test_domain_error_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["v"], "edges": [{"id": "e", "from": "v", "to": "v"}],
                               "tails": [{"id": "t", "at": "v", "number": 1}], "base_vertex": "v",
                               "coords": {"e+": "0", "e-": "0", "t": "1"}}))
    code, _, err = run("validate", "-g", str(bad))
    assert code == 1 and err.startswith("error[graph]:") and "x_e = x_-e" in err
    code, _, err = run("differentials", "-g", str(DATA / "loop.json"), "--omega", "5")
    assert code == 1 and "error[differentials]" in err


def test_missing_field_named(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["v"], "edges": []}))
    code, _, err = run("validate", "-g", str(bad))
    assert code == 1 and "base_vertex" in err


def test_usage_errors_exit_2():
    assert run("validate")[0] == 2
    assert run("bogus")[0] == 2
    assert run("differentials", "-g", str(DATA / "loop.json"))[0] == 2
    assert run("padic", "--index", "x")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "tate_periods", "validate", "-g", str(DATA / "loop.json")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "genus: 1" in r.stdout
