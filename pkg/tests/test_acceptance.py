"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import math
import subprocess
import sys
import time
from collections import Counter

import numpy as np
import pytest

from optosqueeze.dynamics import residual, stability_check, steady_state
from optosqueeze.measures import classify_region
from optosqueeze.model import build_diffusion, build_drift, derive_params
from optosqueeze.oracle import longtime_vs_direct, pt_symplectic_oracle, tmsv_oracle
from optosqueeze.sweep import (
    FIG3_TARGETS,
    FIG4_TARGETS,
    evaluate_point,
    fig2_base,
    figure_recipe,
    find_crossing,
    find_extremum,
    run_sweep,
)

# every distinct full-resolution grid (fig5a/fig5c repeat fig4a/fig4b)
ALL_PANELS = ("fig2", "fig3", "fig4a", "fig4b", "fig5b", "fig5d", "fig6a", "fig6b", "fig7")

_RESULTS = {}


def panel(name):
    if name not in _RESULTS:
        recipe = figure_recipe(name)
        _RESULTS[name] = run_sweep(recipe.panels[name])
    return _RESULTS[name]


def report(number, ok, detail):
    line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}: {detail}"
    capture = getattr(report, "capture", None)
    if capture is not None:
        with capture.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


@pytest.fixture(autouse=True)
def _terminal(capsys):
    report.capture = capsys
    yield
    report.capture = None


def test_criterion_01_lyapunov_residual():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst, unstable = 0.0, 0
    for _ in range(100):
        p = fig2_base(
            r=1.0,
            delta2=rng.uniform(0.1, 1.2),
            E=rng.uniform(5e4, 8e5),
            g=rng.uniform(2e-5, 2e-4),
            J=rng.uniform(0.2, 2.5),
        )
        d = derive_params(p)
        m, dm = build_drift(p, d), build_diffusion(p, d)
        if not stability_check(m).stable:
            unstable += 1
            continue
        v = steady_state(m, dm, check_stability=False)
        worst = max(worst, residual(m, dm, v) / np.max(np.abs(dm)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 5.0 and unstable == 0
    report(1, ok, f"max residual/|D| = {worst:.2e} (<= 1e-10), unstable = {unstable}, "
                  f"runtime {elapsed:.2f} s (< 5 s)")


def test_criterion_02_longtime_vs_direct():
    start = time.perf_counter()
    reports = [longtime_vs_direct(fig2_base(r=r)) for r in (0.0, 0.5, 0.983)]
    elapsed = time.perf_counter() - start
    worst = max(r.max_rel_error for r in reports)
    ok = worst <= 1e-6 and elapsed < 10.0
    report(2, ok, f"max entrywise error/|V| = {worst:.2e} (<= 1e-6) at r in (0, 0.5, 0.983), "
                  f"runtime {elapsed:.2f} s (< 10 s)")


def test_criterion_03_null_case():
    rec = evaluate_point(fig2_base(r=0.0))
    vals = (rec.values["EN"], rec.values["G_b_to_a2"], rec.values["G_a2_to_b"])
    ok = rec.ok and max(vals) < 1e-9
    report(3, ok, "r=0: E_N, G_b->a2, G_a2->b = " + ", ".join(f"{x:.1e}" for x in vals) + " (< 1e-9)")


def test_criterion_04_measure_oracles():
    tmsv = tmsv_oracle((0.1, 0.25, 0.5, 1.0), tol=1e-9)
    pt = pt_symplectic_oracle(1000, seed=0, tol=1e-9)
    ok = tmsv.passed and pt.passed and pt.cases_run == 1000
    report(4, ok, f"TMSV max err {tmsv.max_abs_error:.1e}, PT eta_minus max err "
                  f"{pt.max_abs_error:.1e} over {pt.cases_run} states (<= 1e-9)")


def test_criterion_05_diffusion_identities():
    worst_diag, worst_det = 0.0, 0.0
    for r in np.linspace(0.0, 3.0, 61):
        p = fig2_base(r=float(r), theta=0.0)
        d2 = build_diffusion(p, derive_params(p))[2:4, 2:4]
        expected = p.kappa2 / 2 * np.diag([math.exp(2 * r), math.exp(-2 * r)])
        worst_diag = max(worst_diag, float(np.max(np.abs(d2 - expected))))
        for theta in np.linspace(0.0, 2 * math.pi, 17):
            q = p.replace(theta=float(theta), r=float(r))
            d2 = build_diffusion(q, derive_params(q))[2:4, 2:4]
            # the determinant is a difference of products of size |D2|^2
            scale = float(np.max(np.abs(d2))) ** 2
            err = abs(d2[0, 0] * d2[1, 1] - d2[0, 1] * d2[1, 0] - (q.kappa2 / 2) ** 2)
            worst_det = max(worst_det, err / scale)
    ok = worst_diag <= 1e-12 and worst_det <= 1e-12
    report(5, ok, f"theta=0 diag error {worst_diag:.1e} (<= 1e-12, r in [0,3]); "
                  f"det(D2) error/|D2|^2 {worst_det:.1e} (<= 1e-12, all theta)")


def test_criterion_06_hierarchy():
    violations = 0
    for rec in panel("fig4a").records:
        if not rec.ok:
            continue
        v = rec.values
        if max(v["G_b_to_a2"], v["G_a2_to_b"]) > 1e-6 and v["EN"] <= 1e-6:
            violations += 1
    two_way, directions, counts = 0, set(), {}
    for name in ("fig6a", "fig6b"):
        c = Counter()
        for rec in panel(name).records:
            if not rec.ok:
                continue
            rep = rec.report
            if rep.g_12 > 1e-6 and rep.g_21 > 1e-6:
                two_way += 1
            if rep.region == "C":
                directions.add(rep.direction_label)
                c[rep.direction_label] += 1
        counts[name] = dict(c)
    ok = violations == 0 and two_way == 0 and directions == {"a1->a2", "a2->a1"}
    report(6, ok, f"fig4 grid steering-without-entanglement points = {violations}; fig6 two-way points "
                  f"= {two_way}; one-way directions {counts}")


def test_criterion_07_physicality():
    worst, where, unstable = math.inf, None, 0
    for name in ALL_PANELS:
        for rec in panel(name).records:
            if not rec.ok:
                unstable += 1
                continue
            if rec.min_symplectic < worst:
                worst, where = rec.min_symplectic, name
    ok = worst >= 0.5 - 1e-9
    report(7, ok, f"min symplectic eigenvalue {worst:.15f} (>= 0.5 - 1e-9) on {where}; "
                  f"{len(ALL_PANELS)} grids, {unstable} points without a steady state")


def test_criterion_08_reference_targets():
    lines, ok = [], True
    spec = figure_recipe("fig4a").panels["fig4a"]
    for key, target in FIG4_TARGETS.items():
        value = find_extremum(spec, key, coarse=panel("fig4a")).value
        dev = (value - target) / target
        ok &= abs(dev) <= 0.15
        lines.append(f"{key} max {value:.4f} vs {target} ({dev:+.1%})")

    spec3 = figure_recipe("fig3").panels["fig3"]
    ext = find_extremum(spec3, "-var_y_a2", coarse=panel("fig3"))
    vmin, rmin = -ext.value, ext.point["r"]
    rx = find_crossing(spec3, "var_y_a2", 0.5, after=rmin, coarse=panel("fig3"))
    ok &= abs(vmin - FIG3_TARGETS["var_y_min"]) <= 0.15 * FIG3_TARGETS["var_y_min"]
    ok &= abs(rmin - FIG3_TARGETS["var_y_argmin_r"]) <= 0.1
    ok &= rx is not None and abs(rx - FIG3_TARGETS["var_y_recross_r"]) <= 0.1
    lines.append(f"<Y^2> min {vmin:.4f} at r={rmin:.3f}, recross r={rx:.3f}")

    def at(r):
        return evaluate_point(fig2_base(r=r)).values

    v0, v02, v1, v12 = at(0.0), at(0.2), at(1.0), at(1.2)
    seq = (
        max(v0["EN"], v0["G_b_to_a2"], v0["G_a2_to_b"]) < 1e-9,
        v02["EN"] > 1e-6 and v02["G_b_to_a2"] <= 1e-6,
        v1["G_b_to_a2"] > 1e-6 and v1["G_a2_to_b"] > 1e-6,
        v12["EN"] < 1e-3,
    )
    ok &= all(seq)
    lines.append(f"fig2 sequence {['ok' if s else 'no' for s in seq]}")
    report(8, ok, "; ".join(lines))


def test_criterion_09_region_transitions():
    result = panel("fig5b")
    labels = [rec.region for rec in result.records if rec.ok]
    order = []
    for label in labels:
        if not order or order[-1] != label:
            order.append(label)
    firsts = [labels.index(c) if c in labels else None for c in "ABCD"]
    ordered = None not in firsts and firsts == sorted(firsts)
    consistent = all(
        rec.region == classify_region(rec.report.e_n, rec.report.g_12, rec.report.g_21,
                                      rec.report.threshold).label
        for rec in result.records if rec.ok
    )
    report(9, ordered and consistent, f"delta2 cut sequence {'-'.join(order)}; "
                                      f"first A,B,C,D at indices {firsts}; consistent={consistent}")


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "optosqueeze", *args], cwd=cwd,
                          capture_output=True, check=True).stdout


def test_criterion_10_determinism(tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        _cli("figure", "fig4a", "--out", str(d), cwd=tmp_path)
        outs.append({f: (d / f).read_bytes() for f in ("grid.csv", "extrema.json", "regions.csv")})
    oracle_runs = [_cli("oracles", "--seed", "7", cwd=tmp_path) for _ in range(2)]
    same_fig = outs[0] == outs[1]
    same_oracles = oracle_runs[0] == oracle_runs[1]
    report(10, same_fig and same_oracles,
           f"figure fig4a files identical={same_fig}, oracles --seed 7 identical={same_oracles}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
