"""Check suites shared by the command line and the acceptance tests.

Each ``*_checks`` function returns a list of :class:`Check` records; a
check passes when its ``max_deviation`` does not exceed ``tolerance``.
Convergence-order checks report ``|order - expected|`` as the deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import hydrogen, manifold, planewave, sliding, weyl
from .clifford import GAMMA, clifford_defects
from .sampling import make_rng, random_points, random_wave


@dataclass(frozen=True)
class Check:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.max_deviation) and self.max_deviation <= self.tolerance)

    def to_dict(self) -> dict:
        dev = self.max_deviation if math.isfinite(self.max_deviation) else None
        return {"name": self.name, "max_deviation": dev, "tolerance": self.tolerance, "pass": self.passed}


def observed_orders(errors, ratio: float = 2.0) -> list[float]:
    """log_ratio(e_k / e_{k+1}) for a sequence refined by ``ratio`` each step."""
    e = np.asarray(errors, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return list(np.log(e[:-1] / e[1:]) / math.log(ratio))


def order_deviation(errors, expected: float = 2.0, ratio: float = 2.0) -> float:
    orders = observed_orders(errors, ratio)
    if not orders or not all(math.isfinite(o) for o in orders):
        return math.inf
    return max(abs(o - expected) for o in orders)


# ---------------------------------------------------------------------------
# Clifford algebra and plane waves


def clifford_checks() -> list[Check]:
    return [Check("anticommutator_identities", float(np.max(clifford_defects(GAMMA))), 0.0)]


def fd_residual_errors(waves, points, steps) -> list[float]:
    """Summed finite-difference Dirac residual for each step size."""
    return [
        sum(planewave.dirac_residual(w, pt, h=h) for w in waves for pt in points) for h in steps
    ]


def planewave_checks(
    seed: int = 0,
    waves: int = 100,
    points: int = 10,
    tol: float = 1e-12,
    fd_steps=(1e-2, 5e-3, 2.5e-3),
    order_tol: float = 0.1,
) -> list[Check]:
    rng = make_rng(seed)
    sample = [random_wave(rng) for _ in range(waves)]
    pts = random_points(rng, points)
    residual = shell = wl_shell = form = 0.0
    for w in sample:
        norm = np.linalg.norm(w.amplitude)
        shell = max(shell, w.momentum.shell_defect())
        wl_shell = max(wl_shell, planewave.wavelengths(w.momentum).shell_defect())
        full = bool(np.all(w.momentum.components != 0))
        for pt in pts:
            residual = max(residual, planewave.dirac_residual(w, pt) / norm)
            if full:
                a, b = w(pt), planewave.evaluate_wavelength_form(w, pt)
                form = max(form, float(np.linalg.norm(a - b) / np.linalg.norm(a)))
    fd_errors = fd_residual_errors(sample[:10], pts[:3], fd_steps)
    return [
        Check("analytic_dirac_residual", residual, tol),
        Check("mass_shell", shell, tol),
        Check("wavelength_mass_shell", wl_shell, tol),
        Check("wavelength_form_agreement", form, tol),
        Check("fd_residual_order", order_deviation(fd_errors, ratio=fd_steps[0] / fd_steps[1]), order_tol),
    ]


# ---------------------------------------------------------------------------
# Sliding symmetry


def sliding_checks(seed: int = 0, waves: int = 20, samples: int = 20, tol: float = 1e-10) -> list[Check]:
    rng = make_rng(seed)
    translation = form = factor = 0.0
    for _ in range(waves):
        w = random_wave(rng, masses=(0.5, 1.0, 10.0), min_component=0.05)
        translation = max(translation, sliding.verify_translation_relation(w, samples, rng).max_residual)
        rep = sliding.verify_sliding_form(w, samples, rng)
        form = max(form, rep.checks["sliding_form"].max_residual)
        factor = max(factor, rep.checks["dirac_factor"].max_residual)
    return [
        Check("translation_relation", translation, tol),
        Check("sliding_form_residual", form, tol),
        Check("sliding_vs_dirac_factor_2pi", factor, tol),
    ]


def reflection_checks(seed: int = 0, waves: int = 20, points: int = 20, tol: float = 1e-10) -> list[Check]:
    rng = make_rng(seed)
    worst = {axis: 0.0 for axis in "txyz"}
    for _ in range(waves):
        w = random_wave(rng)
        rep = sliding.verify_reflection(w, points, rng)
        for axis, c in rep.checks.items():
            worst[axis] = max(worst[axis], c.max_residual)
    return [Check(f"reflection_solution_map_{a}", v, tol) for a, v in worst.items()]


# ---------------------------------------------------------------------------
# One-dimensional manifold


def manifold_checks(series: list[manifold.RegionSnapshot], l0: float, grid: int, tol: float = 1e-10) -> list[Check]:
    a, b = manifold.ellipse_family(l0, grid)
    perim = max(abs(manifold.perimeter_approx(ai, bi) - l0) / l0 for ai, bi in zip(a, b))
    sym = max(abs(s.x_min + s.x_max) for s in series)
    forward = [s for s in series if s.T >= 0]
    steps = np.diff([s.x_max for s in forward])
    # zero when strictly increasing; a flat step counts as a failure
    if np.all(steps > 0):
        monotone = 0.0
    else:
        monotone = float(-np.min(steps)) or math.inf
    even = max(abs(manifold.region_at(l0, -s.T, grid).x_max - s.x_max) for s in series)
    return [
        Check("perimeter_round_trip", perim, tol),
        Check("region_symmetry", sym, 0.0),
        Check("x_max_strictly_increasing", monotone, 0.0),
        Check("time_reversal_symmetry", even, 0.0),
    ]


# ---------------------------------------------------------------------------
# Weyl geometry


class FourierScalar:
    """Band-limited smooth scalar: sum of c_k sin(2 pi k.x + theta_k)."""

    def __init__(self, rng: np.random.Generator, ndim: int, modes: int = 4, kmax: int = 2, amplitude: float = 0.3):
        self.k = rng.integers(-kmax, kmax + 1, size=(modes, ndim))
        self.k[np.all(self.k == 0, axis=1), 0] = 1
        self.c = amplitude * rng.normal(size=modes)
        self.theta = rng.uniform(0, 2 * np.pi, size=modes)

    def _arg(self, coords, j):
        return 2 * np.pi * sum(self.k[j, d] * coords[d] for d in range(len(coords))) + self.theta[j]

    def value(self, coords) -> np.ndarray:
        return sum(self.c[j] * np.sin(self._arg(coords, j)) for j in range(len(self.c)))

    def gradient(self, coords) -> np.ndarray:
        return np.stack(
            [
                sum(self.c[j] * 2 * np.pi * self.k[j, d] * np.cos(self._arg(coords, j)) for j in range(len(self.c)))
                for d in range(len(coords))
            ]
        )


@dataclass
class WeylCase:
    """Random smooth fields, resampled on any grid."""

    ndim: int
    seed: int

    def __post_init__(self):
        rng = make_rng(self.seed)
        d = self.ndim
        self.log_lambda = FourierScalar(rng, d)
        self.phi = [FourierScalar(rng, d) for _ in range(d)]
        self.log_scale = FourierScalar(rng, d)
        self.potential = [FourierScalar(rng, d) for _ in range(d)]
        self.chi = FourierScalar(rng, d)
        self.psi = [(FourierScalar(rng, d), FourierScalar(rng, d)) for _ in range(4)]
        self.charge = 0.7

    def field(self, grid: weyl.Grid) -> weyl.WeylField:
        c = grid.coords()
        return weyl.WeylField(grid, np.exp(self.log_lambda.value(c)), np.stack([p.value(c) for p in self.phi]))

    def exact_curvature(self, grid: weyl.Grid) -> weyl.CurvatureField:
        c = grid.coords()
        grads = [p.gradient(c) for p in self.phi]
        comps = {(i, k): grads[i][k] - grads[k][i] for i, k in combinations(range(grid.ndim), 2)}
        return weyl.CurvatureField(grid, comps)

    def spinor(self, grid: weyl.Grid) -> np.ndarray:
        c = grid.coords()
        return np.stack([np.exp(1j * im.value(c)) * (1 + re.value(c)) for re, im in self.psi])

    def potential_field(self, grid: weyl.Grid) -> weyl.PotentialField:
        c = grid.coords()
        return weyl.PotentialField(grid, np.stack([a.value(c) for a in self.potential]), self.charge)


def refinement_grids(n: int, ndim: int, refinements: int) -> list[weyl.Grid]:
    """Unit-box grids with n, 2n-1, 4n-3, ... nodes per axis (spacing halves)."""
    out = []
    for _ in range(refinements + 1):
        out.append(weyl.Grid.uniform(n, ndim))
        n = 2 * n - 1
    return out


def weyl_errors(case: WeylCase, grids: list[weyl.Grid]) -> dict[str, list[float]]:
    gauge, curl, cov = [], [], []
    for g in grids:
        c = g.coords()
        f = case.field(g)
        scale = np.exp(case.log_scale.value(c))
        gauge.append(weyl.curvature_gauge_invariance(f, scale, case.log_scale.gradient(c)))
        pure = weyl.WeylField(g, f.lam, case.log_lambda.gradient(c))
        curl.append(weyl.scale_curvature(pure).interior_max())
        cov.append(
            weyl.covariance_defect(case.potential_field(g), case.spinor(g), case.chi.value(c), case.chi.gradient(c))
        )
    return {"gauge_invariance": gauge, "curl_of_gradient": curl, "em_covariance": cov}


def bianchi_errors(case: WeylCase, grids: list[weyl.Grid]) -> list[float]:
    return [weyl.bianchi_residual(case.exact_curvature(g)) for g in grids]


def weyl_checks(
    seed: int = 0, n: int = 64, refinements: int = 2, n3d: int = 24, order_tol: float = 0.2, roundoff: float = 1e-10
) -> list[Check]:
    case2 = WeylCase(2, seed)
    grids = refinement_grids(n, 2, refinements)
    errs = weyl_errors(case2, grids)
    g0 = grids[0]
    c0 = g0.coords()
    f0 = case2.field(g0)
    fd_gauge = weyl.curvature_gauge_invariance(f0, np.exp(case2.log_scale.value(c0)))
    fd_bianchi_2d = weyl.bianchi_residual(weyl.scale_curvature(f0))
    case3 = WeylCase(3, seed + 1)
    grids3 = refinement_grids(n3d, 3, refinements)
    fd_bianchi_3d = weyl.bianchi_residual(weyl.scale_curvature(case3.field(grids3[0])))
    checks = [Check(f"{k}_order", order_deviation(v), order_tol) for k, v in errs.items()]
    checks += [
        Check("bianchi_order_3d", order_deviation(bianchi_errors(case3, grids3)), order_tol),
        Check("gauge_invariance_fd_transform", fd_gauge, roundoff),
        Check("bianchi_fd_curvature_2d", fd_bianchi_2d, roundoff),
        Check("bianchi_fd_curvature_3d", fd_bianchi_3d, roundoff),
    ]
    return checks


# ---------------------------------------------------------------------------
# Hydrogen


def hydrogen_checks(rows: list[hydrogen.SpectrumRow], m: float = 1.0, tol: float = 1e-6) -> list[Check]:
    worst = max((r.rel_err for r in rows), default=0.0)
    by_level: dict[tuple[int, int], list[float]] = {}
    by_shell: dict[int, list[float]] = {}
    for r in rows:
        by_level.setdefault((r.n, abs(r.kappa)), []).append(r.E_numeric)
        by_shell.setdefault(r.n, []).append(r.E_numeric)
    degeneracy = max(((max(v) - min(v)) / max(v) for v in by_level.values()), default=0.0)
    shells = [by_shell[n] for n in sorted(by_shell)]
    ordered = all(max(a) < min(b) for a, b in zip(shells, shells[1:])) and all(max(s) < m for s in shells)
    return [
        Check("oracle_agreement", worst, tol),
        Check("kappa_degeneracy", degeneracy, tol),
        Check("level_ordering", 0.0 if ordered else math.inf, 0.0),
    ]
