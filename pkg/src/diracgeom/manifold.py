"""One-dimensional closed-manifold analogy.

A circle of fixed perimeter ``l0`` is represented on its covering line by
``phi(x) = exp(-2 pi i x / l0)``, which satisfies ``i phi' = m0 phi`` with
``m0 = 2 pi / l0``. Deformations are restricted to ellipses whose semiaxes
obey the approximate perimeter relation

    l0 = pi * (1.5 (a + b) - sqrt(a b)),

and in the pseudo-euclidean (X, T) plane each ellipse becomes the
hyperbola X^2/a^2 - T^2/b^2 = 1, i.e. X(T) = a sqrt(1 + T^2/b^2).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
from scipy.special import ellipe

TWO_PI = 2.0 * math.pi
DEFAULT_GRID = 1024


@dataclass(frozen=True)
class CircleManifold:
    l0: float

    def __post_init__(self):
        if not (self.l0 > 0 and math.isfinite(self.l0)):
            raise ValueError(f"perimeter must be positive and finite, got {self.l0}")

    @property
    def m0(self) -> float:
        return TWO_PI / self.l0

    def representation(self, x, frequency: float = 1.0):
        """phi(x) = exp(-2 pi i frequency x / l0)."""
        return np.exp(-2j * math.pi * frequency * np.asarray(x) / self.l0)

    def translate(self, x, frequency: float = 1.0):
        """T_x phi = i (2 pi)^-1 l0 dphi/dx, with the derivative taken analytically."""
        dphi = -2j * math.pi * frequency / self.l0 * self.representation(x, frequency)
        return 1j / TWO_PI * self.l0 * dphi


def representation_residual(man: CircleManifold, x, frequency: float = 1.0) -> float:
    """|i phi'(x) - m0 phi(x)| for phi with the given frequency multiplier."""
    phi = man.representation(x, frequency)
    dphi = -2j * math.pi * frequency / man.l0 * phi
    return float(np.max(np.abs(1j * dphi - man.m0 * phi)))


def translation_deviation(man: CircleManifold, x) -> float:
    """|T_x phi(x + l0) - phi(x)|."""
    return float(np.max(np.abs(man.translate(np.asarray(x) + man.l0) - man.representation(x))))


def periodicity_deviation(man: CircleManifold, x) -> float:
    return float(np.max(np.abs(man.representation(np.asarray(x) + man.l0) - man.representation(x))))


@dataclass(frozen=True)
class EllipseShape:
    a: float
    b: float

    def perimeter(self) -> float:
        return perimeter_approx(self.a, self.b)

    def exact_perimeter(self) -> float:
        return perimeter_exact(self.a, self.b)


def perimeter_approx(a: float, b: float) -> float:
    return math.pi * (1.5 * (a + b) - math.sqrt(a * b))


def perimeter_exact(a: float, b: float) -> float:
    """Exact ellipse perimeter 4 A E(1 - B^2/A^2); diagnostic only."""
    big, small = max(a, b), min(a, b)
    if big == 0:
        return 0.0
    return 4.0 * big * float(ellipe(1.0 - (small / big) ** 2))


def a_max(l0: float) -> float:
    """Semiaxis of the degenerate (b = 0) member: l0 / (1.5 pi)."""
    return l0 / (1.5 * math.pi)


def a_turn(l0: float) -> float:
    """Largest a admitted by the perimeter relation (zero discriminant): 3 l0 / (4 pi)."""
    return 3.0 * l0 / (4.0 * math.pi)


def solve_ellipse_b(
    l0: float, a: float, root: Literal["larger", "smaller"] = "larger", rtol: float = 1e-10
) -> EllipseShape:
    """Semiaxis b for a given a from the perimeter relation.

    With u = sqrt(b) the relation is 1.5 u^2 - sqrt(a) u + (1.5 a - l0/pi) = 0.
    The larger root is the branch through the circle a = b and is admitted
    for 0 <= a <= a_max. The smaller root is nonnegative only for
    a_max <= a <= a_turn and reaches b = 0 at a = a_max.
    """
    if not l0 > 0:
        raise ValueError(f"perimeter must be positive, got {l0}")
    if root not in ("larger", "smaller"):
        raise ValueError(f"root must be 'larger' or 'smaller', got {root!r}")
    lo, hi = (0.0, a_max(l0)) if root == "larger" else (a_max(l0), a_turn(l0))
    slack = 1e-12 * l0
    if not (lo - slack <= a <= hi + slack):
        raise ValueError(f"a = {a} outside [{lo}, {hi}] for the {root} root")
    a = min(max(a, lo), hi)
    disc = max(6.0 * l0 / math.pi - 8.0 * a, 0.0)
    sa, sd = math.sqrt(a), math.sqrt(disc)
    u = (sa + sd) / 3.0 if root == "larger" else (sa - sd) / 3.0
    if u < 0:
        if u < -1e-7 * math.sqrt(l0):
            raise ValueError(f"negative root u = {u} for a = {a}")
        u = 0.0
    shape = EllipseShape(a, u * u)
    if abs(shape.perimeter() - l0) > rtol * l0:
        raise ArithmeticError(f"perimeter round trip failed: {shape.perimeter()} vs {l0}")
    return shape


@dataclass(frozen=True)
class RegionSnapshot:
    T: float
    x_min: float
    x_max: float


def hyperbola_x(a, b, T):
    """X >= a branch of X^2/a^2 - T^2/b^2 = 1; NaN for b = 0 when T != 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(b > 0, T / np.where(b > 0, b, 1.0), np.inf if T != 0 else 0.0)
        x = a * np.sqrt(1.0 + ratio * ratio)
    return np.where(np.isfinite(x), x, np.nan)


def ellipse_family(l0: float, grid: int = DEFAULT_GRID) -> tuple[np.ndarray, np.ndarray]:
    """Semiaxes (a, b) on a uniform sweep of a over (0, a_max]."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    top = a_max(l0)
    a = top * np.arange(1, grid + 1) / grid
    b = np.array([solve_ellipse_b(l0, ai).b for ai in a])
    return a, b


def region_at(l0: float, T: float, grid: int = DEFAULT_GRID) -> RegionSnapshot:
    a, b = ellipse_family(l0, grid)
    x = hyperbola_x(a, b, T)
    x_max = float(np.nanmax(x))
    return RegionSnapshot(float(T), -x_max, x_max)


def propagate(
    l0: float, t_start: float, t_end: float, steps: int, grid: int = DEFAULT_GRID
) -> list[RegionSnapshot]:
    """Snapshots at ``steps`` uniformly spaced times from t_start to t_end inclusive."""
    if not t_start < t_end:
        raise ValueError(f"need t_start < t_end, got {t_start}, {t_end}")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    a, b = ellipse_family(l0, grid)
    out = []
    for T in np.linspace(t_start, t_end, steps):
        x_max = float(np.nanmax(hyperbola_x(a, b, T)))
        out.append(RegionSnapshot(float(T), -x_max, x_max))
    return out


def series_to_csv(series: Iterable[RegionSnapshot]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "x_min", "x_max"])
    for s in series:
        w.writerow([repr(s.T), repr(s.x_min), repr(s.x_max)])
    return buf.getvalue()


def series_from_csv(text: str) -> list[RegionSnapshot]:
    rows = csv.DictReader(io.StringIO(text))
    return [RegionSnapshot(float(r["T"]), float(r["x_min"]), float(r["x_max"])) for r in rows]
