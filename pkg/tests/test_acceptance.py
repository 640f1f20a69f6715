"""Acceptance criteria 1-7, one printed pass/fail line each.

Lines are collected in conftest.ACCEPTANCE and written in the terminal
summary.  Criteria 3 and 4 are known not to hold as stated: the stated
Einstein constant and scalar curvature are twice what the Ricci definition
gives (the two Ricci components are proved separately and agree with their
closed forms).  Those two tests are strict xfails, so the suite stays green
while the printed lines say FAIL.
"""

import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import ACCEPTANCE, T_GRID, TIMINGS, suite

STATED = {"curvature.einstein.proportional", "curvature.scalar"}
STATED_CLASSICAL = {"classical.ricci", "classical.scal"}


def _record(k, ok, title, detail):
    ACCEPTANCE[k] = f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {title} -- {detail}"


def _configs(ranks):
    return [(r, t) for r in ranks for t in T_GRID]


def _label(r, t):
    return f"r={r},t={t}"


def _failures(certs):
    return sorted(c.item for c in certs.values() if c.asserted and not c.ok)


def test_criterion_1_matrix_tier():
    bad, slow, count = [], [], 0
    for r, t in _configs((1, 2, 3)):
        certs = suite("matrix", r, t)
        count += len(certs)
        bad += [f"{_label(r, t)}:{i}" for i in _failures(certs)]
        slow += [f"{_label(r, t)}:{c.item}" for c in certs.values() if c.elapsed_ms >= 5000]
    ok = not bad and not slow and count == 34 * 9
    _record(1, ok, "matrix identities, r in {1,2,3}, t in {1,7/10,3/5}",
            f"{count} checks, failures={bad or 'none'}, over 5 s={slow or 'none'}")
    assert ok


def test_criterion_2_calculus_tier():
    bad, count = [], 0
    for r, t in _configs((1, 2)):
        certs = suite("calculus", r, t)
        count += len(certs)
        bad += [f"{_label(r, t)}:{i}" for i in _failures(certs)]
        proj = certs["calculus.projection"]
        if proj.degree is None or proj.degree > 3:
            bad.append(f"{_label(r, t)}:projection degree {proj.degree}")
    ok = not bad
    _record(2, ok, "calculus identities ZERO, r in {1,2}", f"{count} certificates, failures={bad or 'none'}")
    assert ok


def _curvature_summary():
    bad, derived_ok, count = [], True, 0
    for r, t in _configs((1, 2)):
        certs = suite("curvature", r, t)
        count += len(certs)
        bad += [f"{_label(r, t)}:{i}" for i in _failures(certs)]
        for item in ("curvature.einstein.k_derived", "curvature.scalar.derived"):
            derived_ok &= certs[item].status == "ZERO"
    return bad, derived_ok, count


@pytest.mark.xfail(strict=True, reason="stated k and scal are twice the values the Ricci definition gives")
def test_criterion_3_curvature_tier():
    bad, derived_ok, count = _curvature_summary()
    unexpected = [b for b in bad if b.split(":")[1] not in STATED]
    ok = not bad
    detail = (f"{count} certificates; failing={sorted({b.split(':')[1] for b in bad}) or 'none'}"
              f" at {len({b.split(':')[0] for b in bad})} (r,t) points; other failures={unexpected or 'none'};"
              f" definition values k/2 and scal/2 ZERO everywhere={derived_ok}")
    _record(3, ok, "curvature tier incl. stated k and scal", detail)
    assert ok


def test_curvature_tier_apart_from_stated_constants():
    # the part of criterion 3 that does hold
    bad, derived_ok, _ = _curvature_summary()
    assert all(b.split(":")[1] in STATED for b in bad)
    assert derived_ok


def _classical_summary():
    bad, checked = [], 0
    for r in (1, 2):
        certs = dict(suite("classical", r, Fraction(1)))
        curv = suite("curvature", r, Fraction(1))
        certs.update({k: v for k, v in curv.items() if k.startswith(("curvature.sigma", "curvature.splitter"))})
        checked += len(certs)
        bad += [f"r={r}:{i}" for i in _failures(certs)]
    return bad, checked


@pytest.mark.xfail(strict=True, reason="stated classical Ricci = -(r+1) g and scal = -2r(r+1) are doubled")
def test_criterion_4_classical_limit():
    bad, checked = _classical_summary()
    items = sorted({b.split(":")[1] for b in bad})
    derived = {r: suite("classical", r, Fraction(1))["classical.ricci"].payload.get("derived") for r in (1, 2)}
    ok = not bad
    _record(4, ok, "t = 1 formulas, r in {1,2}",
            f"{checked} checks; failing={items or 'none'}; definition gives Ricci = k' g with k' = {derived}")
    assert ok


def test_classical_limit_apart_from_stated_constants():
    bad, _ = _classical_summary()
    assert all(b.split(":")[1] in STATED_CLASSICAL | STATED for b in bad)
    for r in (1, 2):
        c = suite("classical", r, Fraction(1))
        assert c["classical.ricci.derived"].status == "ZERO"
        assert c["classical.splitter.c"].ok and c["classical.trace"].ok


def test_criterion_5_experiments_reported():
    found = {}
    for r, t in _configs((1, 2)):
        ex = dict(suite("experiments", r, t))
        ex.update(suite("curvature", r, t))
        for item in ("experiment.ev_derivable", "curvature.sigma.braid_strict"):
            c = ex.get(item)
            found[(item, r, t)] = c is not None and c.status == "EXPERIMENT" and bool(c.payload)
    ok = all(found.values())
    ev = suite("experiments", 2, Fraction(7, 10))["experiment.ev_derivable"].payload["items"]
    br = suite("curvature", 2, Fraction(7, 10))["curvature.sigma.braid_strict"].payload
    _record(5, ok, "strict braid equation and EV derivability reported as EXPERIMENT",
            f"{sum(found.values())}/{len(found)} present; r=2,t=7/10: EV {ev}; braid {br.get('items', br)}")
    assert ok


def _wall(r, t, names):
    return sum(TIMINGS.get((n, r, Fraction(t)), 0.0) for n in names + ["braidings", "geometry"])


def test_criterion_6_performance():
    full = ["matrix", "calculus", "curvature", "experiments"]
    for r, t in _configs((1, 2)):
        for n in full:
            suite(n, r, t)
    for r in (1, 2):
        suite("classical", r, Fraction(1))
    r1 = max(_wall(1, t, full + (["classical"] if t == 1 else [])) for t in T_GRID)
    r2 = max(_wall(2, t, full + (["classical"] if t == 1 else [])) for t in T_GRID)
    r3 = max(_wall(3, t, ["matrix"]) for t in T_GRID)
    ok = r1 <= 60 and r2 <= 1800 and r3 <= 60
    _record(6, ok, "r=1 full <= 60 s, r=2 full <= 30 min, r=3 matrix <= 60 s",
            f"worst over t: r=1 {r1:.1f} s, r=2 {r2:.1f} s, r=3 matrix {r3:.1f} s")
    assert ok


def test_criterion_7_property_suites():
    here = Path(__file__).parent
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "property", "-p", "no:cacheprovider",
                           str(here)], capture_output=True, text=True, cwd=here.parent)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0
    _record(7, ok, "randomized property suites with fixed seeds",
            f"{tail} ({time.perf_counter() - t0:.0f} s)")
    assert ok
