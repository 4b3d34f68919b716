import json

from localperiods.cli import format_complex, main, render_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_identity_json_pass(capsys):
    code, out, _ = run_cli(capsys, "identity", "--n", "1", "--place", "split", "--q", "2",
                           "--samples", "10", "--seed", "42", "--tol", "1e-7",
                           "--format", "json")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    report = json.loads(lines[0])
    assert report["pass"] is True
    assert report["check"] == "identity"
    assert report["place"] == "split"
    assert report["q"] == 2


def test_repeat_run_is_byte_identical(capsys):
    args = ("recursion", "--n", "2", "--place", "both", "--q", "2", "--q", "3",
            "--samples", "8", "--seed", "7")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert (code1, out1) == (code2, out2)
    assert len(out1.strip().splitlines()) == 4  # two places x two q


def test_threads_do_not_change_output(capsys):
    base = ("identity", "--n", "1", "--place", "inert", "--q", "2",
            "--samples", "6", "--seed", "5")
    _, out1, _ = run_cli(capsys, *base, "--threads", "1")
    _, out4, _ = run_cli(capsys, *base, "--threads", "4")
    assert out1 == out4
    # also on a failing run, where factor-diff collection order matters
    base = ("identity", "--n", "3", "--place", "split", "--q", "2",
            "--samples", "8", "--seed", "3")
    code1, out1, _ = run_cli(capsys, *base, "--threads", "1")
    code4, out4, _ = run_cli(capsys, *base, "--threads", "4")
    assert (code1, out1) == (code4, out4) == (1, out1)


def test_usage_error_large_n(capsys):
    code, _, err = run_cli(capsys, "identity", "--n", "9", "--q", "2")
    assert code == 2
    assert "guarded range" in err


def test_usage_error_bad_flag(capsys):
    code, _, _ = run_cli(capsys, "identity", "--bogus")
    assert code == 2


def test_usage_error_bad_q(capsys):
    code, _, err = run_cli(capsys, "identity", "--n", "1", "--q", "1")
    assert code == 2


def test_basecase_default_place(capsys):
    code, out, _ = run_cli(capsys, "basecase", "--q", "2", "--samples", "20")
    assert code == 0
    report = json.loads(out.strip())
    assert report["check"] == "basecase" and report["pass"] is True


def test_explicit_wrong_place_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "basecase", "--place", "inert", "--q", "2")
    assert code == 2
    code, _, err = run_cli(capsys, "appendix", "--place", "split", "--q", "2")
    assert code == 2


def test_failure_exit_code_and_diffs(capsys):
    code, out, _ = run_cli(capsys, "identity", "--n", "3", "--place", "split",
                           "--q", "2", "--samples", "5", "--seed", "1")
    assert code == 1
    report = json.loads(out.strip())
    assert report["pass"] is False
    assert len(report["factor_diffs"]) == 1
    assert report["factor_diffs"][0]["factor"].startswith("L_F(1/2, nu1*th2)")


def test_force_large_override(capsys):
    code, out, _ = run_cli(capsys, "identity", "--n", "4", "--place", "inert", "--q", "2",
                           "--samples", "2", "--seed", "1", "--force-large")
    assert code == 0
    assert json.loads(out.strip())["pass"] is True


def test_recursion_n0_base_case(capsys):
    code, out, _ = run_cli(capsys, "recursion", "--n", "0", "--q", "2", "--samples", "5")
    assert code == 0
    assert all(json.loads(line)["pass"] for line in out.strip().splitlines())


def test_table_schema(capsys):
    code, out, _ = run_cli(capsys, "table", "--n", "1", "--place", "inert", "--q", "2",
                           "--samples", "4", "--seed", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "sample_index,zeta,s_value,delta,lratio_half,lhs,rhs,rel_err"
    assert len(lines) == 5
    _, out2, _ = run_cli(capsys, "table", "--n", "1", "--place", "inert", "--q", "2",
                         "--samples", "4", "--seed", "2")
    assert out == out2


def test_csv_report_format(capsys):
    code, out, _ = run_cli(capsys, "weyl", "--n", "1", "--q", "2", "--samples", "5",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("check,n,place,q")
    assert lines[1].startswith("weyl,1,inert,2,5")


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "appendix", "--q", "2", "--samples", "3",
                           "--format", "text")
    assert code == 0
    assert out.startswith("PASS appendix")


def test_render_json_deterministic_floats():
    s = render_json({"b": 1e-7, "a": True, "z": [complex(1, -2)]})
    assert s == '{"a":true,"b":9.9999999999999995e-08,"z":["1-2i"]}'


def test_format_complex():
    assert format_complex(1.5 + 0j, 6) == "1.5+0i"
    assert format_complex(-2.25j, 6) == "-0-2.25i"
