import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from qcpr.cli import main, make_config, report_rows, scalar_table, ConfigError
from qcpr.qscalar import make_context


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_config_validation():
    with pytest.raises(ConfigError):
        make_config(0, "1")
    with pytest.raises(ConfigError):
        make_config(1, "x/y")
    with pytest.raises(ConfigError):
        make_config(1, "0")
    with pytest.raises(ConfigError):
        make_config(1, "7/10", suite="classical")
    cfg = make_config(2, "7/10", suite="all")
    assert cfg.t == Fraction(7, 10)
    assert cfg.suites() == ["matrix", "calculus", "curvature", "experiments"]
    assert "classical" in make_config(2, "1").suites()


@pytest.mark.parametrize("args", [
    ("verify", "--rank", "0"),
    ("verify", "--rank", "1", "--t", "1/0"),
    ("verify", "--rank", "1", "--t", "7/10", "--suite", "classical"),
    ("verify", "--rank", "1", "--jobs", "0"),
    ("report", "--ranks", "0"),
])
def test_config_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_bad_budget_env_exit_2():
    assert run("verify", "--rank", "1", "--suite", "matrix", env={"QCPR_MAX_COLUMNS": "lots"}).exit_code == 2


def test_verify_matrix_json():
    res = run("verify", "--rank", "2", "--t", "3/5", "--suite", "matrix", "--format", "json")
    assert res.exit_code == 0
    certs = json.loads(res.output)
    assert len(certs) == 34
    assert [c["item"] for c in certs] == sorted(c["item"] for c in certs)
    assert set(certs[0]) == {"item", "anchor", "status", "elapsed_ms", "degree", "word_space",
                             "span_size", "payload"}


def test_verify_csv_header():
    res = run("verify", "--rank", "1", "--suite", "matrix", "--format", "csv")
    assert res.output.splitlines()[0].startswith("item,status,degree")


def test_verify_all_r1():
    res = run("verify", "--rank", "1", "--t", "7/10", "--suite", "all", "--format", "json")
    certs = json.loads(res.output)
    assert len(certs) >= 60
    failed = {c["item"] for c in certs if c["status"] in ("FAIL", "INCONCLUSIVE")}
    # only the stated Einstein constant and scalar curvature disagree
    assert failed == {"curvature.einstein.proportional", "curvature.scalar"}
    assert res.exit_code == 1


def test_budget_degrades_to_inconclusive():
    res = run("verify", "--rank", "1", "--t", "7/10", "--suite", "calculus", env={"QCPR_MAX_COLUMNS": "50"})
    assert res.exit_code == 1
    assert "INCONCLUSIVE" in res.output


def test_jobs_pool_same_items():
    a = run("verify", "--rank", "1", "--t", "3/5", "--suite", "matrix", "--format", "json")
    cfg = make_config(1, "3/5", suite="all", jobs=2)
    from qcpr.cli import run_verify
    items = {c.item for c in run_verify(cfg)}
    assert {c["item"] for c in json.loads(a.output)} <= items


def test_compute_qdim():
    res = run("compute", "qdim", "--rank", "1", "--t", "7/10")
    assert res.exit_code == 0 and res.output.strip() == "12401/4900"


def test_compute_scal_prints_both():
    res = run("compute", "scal", "--rank", "2", "--t", "1")
    lines = dict(l.split() for l in res.output.strip().splitlines())
    assert lines == {"from_definition": "-6", "closed_form": "-12"}


def test_compute_k_certified():
    res = run("compute", "k", "--rank", "1", "--t", "1", "--certify")
    assert "from_definition -1" in res.output and "closed_form     -2" in res.output
    assert "ZERO" in res.output and "FAIL" in res.output
    assert res.exit_code == 1


def test_compute_metric_and_ricci():
    res = run("compute", "metric", "--rank", "1", "--t", "1")
    assert res.exit_code == 0 and "dp^11 (x) dbp^11" in res.output
    res = run("compute", "ricci", "--rank", "1", "--t", "7/10")
    assert res.exit_code == 0 and "ZERO" in res.output


@pytest.mark.xfail(strict=True, reason="stated k at t = 1 is -(r+1); the definition gives -(r+1)/2")
def test_compute_k_stated_classical():
    res = run("compute", "k", "--rank", "1", "--t", "1")
    assert res.output.splitlines()[0].split()[-1] == "-2"


@pytest.mark.xfail(strict=True, reason="stated scal at t = 1 is -2r(r+1); the definition gives -r(r+1)")
def test_compute_scal_stated_classical():
    res = run("compute", "scal", "--rank", "2", "--t", "1")
    assert res.output.splitlines()[0].split()[-1] == "-12"


def test_report_grid():
    rows = report_rows([1, 2], [Fraction(1), Fraction(7, 10), Fraction(3, 5)])
    assert len(rows) == 6
    for row in rows:
        assert row["qdim_match"] and row["trace_g_match"]
        assert not row["k_match"] and not row["scal_match"]
    t1 = [r for r in rows if r["t"] == "1"]
    for row in t1:
        r = row["r"]
        assert row["k_closed_form"] == row["k_classical"] == str(-(r + 1))
        assert row["scal_closed_form"] == row["scal_classical"] == str(-2 * r * (r + 1))
        assert row["trace_g_computed"] == str(2 * r)


@pytest.mark.xfail(strict=True, reason="k and scal closed forms are twice the computed values")
def test_report_all_match():
    assert all(r["match"] for r in report_rows([1, 2], [Fraction(1), Fraction(7, 10), Fraction(3, 5)]))


def test_report_formats_and_empty():
    res = run("report", "--t-grid", "", "--format", "csv")
    assert res.exit_code == 0 and res.output == ""
    res = run("report", "--ranks", "1", "--t-grid", "1,3/5", "--format", "json")
    assert res.exit_code == 0 and len(json.loads(res.output)) == 2
    res = run("report", "--ranks", "1", "--t-grid", "1")
    assert res.exit_code == 0 and "qdim_computed" in res.output.splitlines()[0]


def test_scalar_table_components_agree():
    tab = scalar_table(make_context(3, Fraction(3, 5)))
    got, stated = tab["k"]
    assert stated == 2 * got
