"""Dirac-Coulomb bound states by two-sided radial shooting.

For a central potential the Dirac equation separates into two radial
amplitudes f (large) and g (small) labelled by the angular quantum number
kappa. With the potential energy V(r) = -Z alpha / r + c (c a constant
gauge offset) and natural units they obey

    f' = -(kappa/r) f + (E + m - V) g
    g' =  (kappa/r) g - (E - m - V) f

The system is integrated in x = ln r with an adaptive Runge-Kutta scheme
(DOP853), outward from r_min with the regular r^gamma start and inward
from r_max with the decaying exponential start. The energy is found by
Brent's method on the Wronskian of the two normalised solutions at the
outer classical turning point.

Energies and lengths use the electron mass as unit when m = 1; the default
radial grid is expressed in Bohr radii 1/(m Z alpha).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

ALPHA = 1.0 / 137.035999


class StateNotFound(RuntimeError):
    pass


class GridTooCoarse(RuntimeError):
    pass


@dataclass(frozen=True)
class CoulombProblem:
    Z: int = 1
    alpha: float = ALPHA
    m: float = 1.0
    offset: float = 0.0  # constant added to the potential energy e A_t

    def __post_init__(self):
        if int(self.Z) != self.Z or self.Z < 1:
            raise ValueError(f"Z must be a positive integer, got {self.Z}")
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if self.Z * self.alpha >= 1:
            raise ValueError(f"Z alpha = {self.Z * self.alpha} is not below the critical coupling 1")

    @property
    def coupling(self) -> float:
        return self.Z * self.alpha

    @property
    def charge(self) -> float:
        """e = sqrt(4 pi alpha) in Heaviside-Lorentz natural units."""
        return math.sqrt(4.0 * math.pi * self.alpha)

    @property
    def bohr_radius(self) -> float:
        return 1.0 / (self.m * self.coupling)

    def potential(self, r):
        return -self.coupling / np.asarray(r) + self.offset

    def shifted(self, c: float) -> "CoulombProblem":
        return replace(self, offset=self.offset + c)


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    kappa: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.kappa == 0 or abs(self.kappa) > self.n or self.kappa == self.n:
            raise ValueError(f"inadmissible kappa {self.kappa} for n = {self.n}")

    @property
    def l(self) -> int:
        """Orbital quantum number of the large component."""
        return self.kappa if self.kappa > 0 else -self.kappa - 1

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def nodes(self) -> int:
        """Number of radial nodes of the large component."""
        return self.n - self.l - 1

    def label(self) -> str:
        return f"{self.n}{'spdfghik'[self.l]}{int(2 * self.j)}/2"


def admissible_states(n_max: int) -> list[QuantumNumbers]:
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            out.append(QuantumNumbers(n, -k))
            if k < n:
                out.append(QuantumNumbers(n, k))
    return out


def sommerfeld_energy(p: CoulombProblem, q: QuantumNumbers) -> float:
    """Closed-form Dirac-Coulomb bound-state energy (plus the gauge offset)."""
    za = p.coupling
    if za >= abs(q.kappa):
        raise ValueError(f"Z alpha = {za} >= |kappa| = {abs(q.kappa)}")
    gamma = math.sqrt(q.kappa**2 - za**2)
    denom = q.n - abs(q.kappa) + gamma
    return p.m / math.sqrt(1.0 + (za / denom) ** 2) + p.offset


@dataclass(frozen=True)
class RadialGrid:
    """Logarithmic grid; r_min and r_max are in Bohr radii 1/(m Z alpha)."""

    r_min: float = 1e-6
    r_max: float = 300.0
    nodes: int = 20000

    def radii(self, p: CoulombProblem) -> np.ndarray:
        a0 = p.bohr_radius
        return np.geomspace(self.r_min * a0, self.r_max * a0, self.nodes)

    def refined(self) -> "RadialGrid":
        return replace(self, nodes=2 * self.nodes - 1)


@dataclass(frozen=True)
class RadialSolution:
    energy: float
    r: np.ndarray
    f: np.ndarray
    g: np.ndarray
    quantum: QuantumNumbers
    defect: float

    def norm(self) -> float:
        return float(np.trapezoid(self.f**2 + self.g**2, self.r))

    def tail_ratio(self) -> float:
        """max(|f|, |g|) at r_max relative to the respective maxima."""
        return max(abs(self.f[-1]) / np.max(np.abs(self.f)), abs(self.g[-1]) / np.max(np.abs(self.g)))

    def node_count(self) -> int:
        f = self.f[np.abs(self.f) > 1e-10 * np.max(np.abs(self.f))]
        return int(np.count_nonzero(np.diff(np.sign(f)) != 0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "f", "g"])
        for row in zip(self.r, self.f, self.g):
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


class _Shooter:
    rtol = 1e-12

    def __init__(self, p: CoulombProblem, q: QuantumNumbers, r: np.ndarray):
        self.p, self.q, self.r = p, q, r
        self.x = np.log(r)
        self.gamma = math.sqrt(q.kappa**2 - p.coupling**2)

    def _rhs(self, E: float):
        kappa, m, za = self.q.kappa, self.p.m, self.p.coupling
        e_eff = E - self.p.offset

        def rhs(x, y):
            r = math.exp(x)
            f, g = y
            return (-kappa * f + (r * (e_eff + m) + za) * g, kappa * g - (r * (e_eff - m) + za) * f)

        return rhs

    def _integrate(self, E, x0, x1, y0, t_eval=None):
        sol = solve_ivp(
            self._rhs(E), (x0, x1), y0, method="DOP853", rtol=self.rtol, atol=1e-300, t_eval=t_eval
        )
        if sol.status != 0 or not np.all(np.isfinite(sol.y)):
            raise GridTooCoarse(f"radial integration failed at E = {E}: {sol.message}")
        return sol

    def outward_start(self):
        za, kappa = self.p.coupling, self.q.kappa
        if za == 0:
            raise ValueError("shooting needs a nonzero Coulomb coupling")
        return [1.0, (self.gamma + kappa) / za]

    def inward_start(self, E):
        m, e_eff = self.p.m, E - self.p.offset
        return [1.0, -math.sqrt((m - e_eff) / (m + e_eff))]

    def match_index(self, E) -> int:
        binding = self.p.m - (E - self.p.offset)
        rc = self.p.coupling / binding
        i = int(np.searchsorted(self.r, rc))
        return min(max(i, 1), len(self.r) - 2)

    def defect(self, E: float, ic: int) -> float:
        xo = self._integrate(E, self.x[0], self.x[ic], self.outward_start()).y[:, -1]
        xi = self._integrate(E, self.x[-1], self.x[ic], self.inward_start(E)).y[:, -1]
        xo = xo / math.hypot(*xo)
        xi = xi / math.hypot(*xi)
        return float(xo[0] * xi[1] - xo[1] * xi[0])

    def solution(self, E: float, ic: int):
        out = self._integrate(E, self.x[0], self.x[ic], self.outward_start(), self.x[: ic + 1]).y
        inw = self._integrate(E, self.x[-1], self.x[ic], self.inward_start(E), self.x[ic:][::-1]).y[:, ::-1]
        # scale the inward branch onto the outward one at the matching node
        scale = np.dot(out[:, -1], inw[:, 0]) / np.dot(inw[:, 0], inw[:, 0])
        y = np.concatenate([out[:, :-1], scale * inw], axis=1)
        return y[0], y[1]


def solve_bound_state(
    p: CoulombProblem,
    q: QuantumNumbers,
    grid: RadialGrid = RadialGrid(),
    defect_tol: float = 1e-10,
    bracket_rel: float = 1e-3,
    widenings: int = 3,
) -> RadialSolution:
    """Bound state (n, kappa) of the Dirac-Coulomb problem.

    The energy bracket is the oracle binding energy times (1 -+ bracket_rel),
    widened tenfold up to ``widenings`` times when the defect does not
    change sign. The node count of the large component is checked against
    n - l - 1 so a neighbouring level cannot be returned silently.
    """
    if grid.r_min * p.bohr_radius * p.m > 1e-2:
        raise GridTooCoarse("grid too coarse near origin: r_min must be far below the Compton length")
    r = grid.radii(p)
    shooter = _Shooter(p, q, r)
    binding = p.m - (sommerfeld_energy(p, q) - p.offset)
    width = bracket_rel
    for _ in range(widenings + 1):
        lo = p.m + p.offset - binding * (1 + width)
        hi = p.m + p.offset - binding * (1 - min(width, 0.999))
        ic = shooter.match_index(0.5 * (lo + hi))
        d_lo, d_hi = shooter.defect(lo, ic), shooter.defect(hi, ic)
        if d_lo * d_hi < 0:
            break
        width *= 10
    else:
        raise StateNotFound(f"state not found in bracket for n={q.n}, kappa={q.kappa}")
    E = brentq(lambda e: shooter.defect(e, ic), lo, hi, xtol=1e-16 * p.m, rtol=1e-15, maxiter=200)
    d = shooter.defect(E, ic)
    if abs(d) > defect_tol:
        raise StateNotFound(f"matching defect {d} above {defect_tol} for n={q.n}, kappa={q.kappa}")
    f, g = shooter.solution(E, ic)
    norm = math.sqrt(np.trapezoid(f**2 + g**2, r))
    sign = 1.0 if f[np.argmax(np.abs(f))] > 0 else -1.0
    sol = RadialSolution(E, r, sign * f / norm, sign * g / norm, q, d)
    if sol.node_count() != q.nodes:
        raise StateNotFound(
            f"converged to a state with {sol.node_count()} nodes, expected {q.nodes} (n={q.n}, kappa={q.kappa})"
        )
    return sol


@dataclass(frozen=True)
class SpectrumRow:
    Z: int
    n: int
    kappa: int
    E_numeric: float
    E_oracle: float

    @property
    def rel_err(self) -> float:
        return abs(self.E_numeric - self.E_oracle) / abs(self.E_oracle)


def spectrum(p: CoulombProblem, n_max: int, grid: RadialGrid = RadialGrid()) -> list[SpectrumRow]:
    rows = []
    for q in admissible_states(n_max):
        sol = solve_bound_state(p, q, grid)
        rows.append(SpectrumRow(p.Z, q.n, q.kappa, sol.energy, sommerfeld_energy(p, q)))
    return rows


def spectrum_to_csv(rows: list[SpectrumRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["Z", "n", "kappa", "E_numeric", "E_oracle", "rel_err"])
    for row in rows:
        w.writerow([row.Z, row.n, row.kappa, repr(row.E_numeric), repr(row.E_oracle), repr(row.rel_err)])
    return buf.getvalue()


@dataclass(frozen=True)
class GaugeShiftReport:
    c: float
    states: list[QuantumNumbers]
    base: list[float]
    shifted: list[float]

    @property
    def deviations(self) -> list[float]:
        """|(E_shifted - E_base) - c|, relative to |c| when c is nonzero."""
        scale = abs(self.c) if self.c != 0 else 1.0
        return [abs((s - b) - self.c) / scale for b, s in zip(self.base, self.shifted)]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)

    def passed(self, tol: float = 1e-8) -> bool:
        return self.max_deviation < tol


def gauge_shift_check(
    p: CoulombProblem,
    c: float,
    states: list[QuantumNumbers] | None = None,
    grid: RadialGrid = RadialGrid(),
) -> GaugeShiftReport:
    """Re-solve with the potential energy shifted by the constant ``c``.

    A constant added to e A_t is the pure gauge d_t chi with chi linear in t;
    every eigenvalue must move by exactly ``c``.
    """
    states = states or [QuantumNumbers(1, -1)]
    base = [solve_bound_state(p, q, grid).energy for q in states]
    moved = p.shifted(c)
    shifted = [solve_bound_state(moved, q, grid).energy for q in states]
    return GaugeShiftReport(c, list(states), base, shifted)
