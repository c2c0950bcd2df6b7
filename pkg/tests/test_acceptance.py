"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed with
output capture disabled, so ``-s`` is not needed).
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from diracgeom import hydrogen, manifold
from diracgeom import verification as ver
from diracgeom.planewave import wavelengths
from diracgeom.sampling import make_rng, random_wave


def report(capsys, number, title, ok, detail, elapsed=None, budget=None):
    timing = "" if elapsed is None else f" [{elapsed:.2f}s / budget {budget:g}s]"
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'} - {detail}{timing}")
    assert ok, detail


def within(elapsed, budget):
    return budget is None or elapsed < budget


def summarize(checks):
    return ", ".join(f"{c.name}={c.max_deviation:.2e}<= {c.tolerance:g}" for c in checks)


def test_1_clifford(capsys):
    t0 = time.perf_counter()
    checks = ver.clifford_checks()
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and checks[0].max_deviation == 0.0 and within(dt, 1.0)
    report(capsys, 1, "Clifford anticommutators exact", ok, summarize(checks), dt, 1.0)


def test_2_planewave(capsys):
    t0 = time.perf_counter()
    checks = ver.planewave_checks(seed=0, waves=100, points=10, tol=1e-12, order_tol=0.1)
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and within(dt, 5.0)
    report(capsys, 2, "plane-wave residual and FD order", ok, summarize(checks), dt, 5.0)


def test_3_wavelength_mass_shell(capsys):
    rng = make_rng(3)
    worst = 0.0
    for _ in range(1000):
        w = random_wave(rng)
        # relative defect of (1/l_t)^2 - sum (1/l_k)^2 = (1/l_m)^2
        wl = wavelengths(w.momentum)
        worst = max(worst, wl.shell_defect())
    ok = worst <= 1e-12
    report(capsys, 3, "wavelength-form mass shell equivalence", ok, f"max relative defect {worst:.2e} <= 1e-12")


def test_4_sliding(capsys):
    t0 = time.perf_counter()
    checks = ver.sliding_checks(seed=0, waves=20, samples=20, tol=1e-10)
    checks += ver.reflection_checks(seed=0, waves=20, points=20, tol=1e-10)
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and within(dt, 10.0)
    report(capsys, 4, "sliding symmetry", ok, summarize(checks), dt, 10.0)


def test_5_manifold(capsys):
    t0 = time.perf_counter()
    l0 = 2 * math.pi
    circle = max(abs(manifold.perimeter_approx(r, r) - 2 * math.pi * r) / (2 * math.pi * r) for r in (0.1, 1.0, 7.0))
    top = manifold.a_max(l0)
    endpoint = max(
        abs(top - l0 / (1.5 * math.pi)),
        abs(manifold.solve_ellipse_b(l0, top, root="smaller").b),
        abs(manifold.region_at(l0, 0.0).x_max - top),
    )
    series = manifold.propagate(l0, -5.0, 5.0, 41)
    checks = ver.manifold_checks(series, l0, manifold.DEFAULT_GRID, tol=1e-10)
    scaling = 0.0
    for c in (0.5, 3.0):
        for T in (0.0, 1.0, 4.0):
            base = manifold.region_at(l0, T).x_max
            scaling = max(scaling, abs(manifold.region_at(c * l0, c * T).x_max - c * base) / (c * base))
    checks += [
        ver.Check("circle_perimeter", circle, 1e-15),
        ver.Check("a_max_endpoint", endpoint, 1e-12),
        ver.Check("scaling_covariance", scaling, 1e-10),
    ]
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and within(dt, 5.0)
    report(capsys, 5, "1D manifold family", ok, summarize(checks), dt, 5.0)


def test_6_weyl(capsys):
    t0 = time.perf_counter()
    checks = ver.weyl_checks(seed=0, n=64, refinements=2, order_tol=0.2)
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in checks) and within(dt, 30.0)
    report(capsys, 6, "Weyl gauge/curl/Bianchi orders and EM covariance", ok, summarize(checks), dt, 30.0)


def test_7_hydrogen(capsys):
    t0 = time.perf_counter()
    p = hydrogen.CoulombProblem()
    rows = hydrogen.spectrum(p, 3)
    checks = ver.hydrogen_checks(rows, p.m, tol=1e-6)
    ground = next(r for r in rows if r.n == 1)
    nonrel = abs((ground.E_numeric - p.m) / (-(p.alpha**2) * p.m / 2) - 1)
    shift = hydrogen.gauge_shift_check(p, 1e-3 * p.m)
    checks += [
        ver.Check("nonrelativistic_limit", nonrel, 1e-3),
        ver.Check("constant_gauge_shift", shift.max_deviation, 1e-8),
    ]
    dt = time.perf_counter() - t0
    ok = len(rows) == 9 and all(c.passed for c in checks) and within(dt, 60.0)
    report(capsys, 7, "hydrogen spectrum", ok, summarize(checks), dt, 60.0)


def _cli(*args, env=None):
    return subprocess.run([sys.executable, "-m", "diracgeom", *args], capture_output=True, env=env)


def test_8_cli(capsys):
    runs = {
        "planewave": ("planewave-verify", "--seed", "5", "--waves", "20"),
        "sliding": ("sliding-verify", "--seed", "5", "--waves", "5"),
        "manifold": ("manifold-sim", "--l0", "3", "--t-end", "2"),
    }
    identical = True
    for args in runs.values():
        a, b = _cli(*args), _cli(*args)
        identical &= a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    codes = {
        "pass": _cli("reflect-verify", "--waves", "2").returncode,
        "fail": _cli("planewave-verify", "--waves", "3", "--tol", "1e-30").returncode,
        "usage": _cli("planewave-verify", "--nope").returncode,
    }
    failing = json.loads(_cli("planewave-verify", "--waves", "3", "--tol", "1e-30").stdout)
    ok = identical and codes == {"pass": 0, "fail": 1, "usage": 2} and failing["pass"] is False
    report(capsys, 8, "CLI determinism and exit codes", ok, f"byte-identical={identical}, exit codes={codes}")
