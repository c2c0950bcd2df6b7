"""Translation, reflection and sliding-symmetry operators on plane waves.

Derivatives in the translation operators are taken with respect to the
covariant coordinates ``x_mu = g_{mu nu} x^nu``, so for a spatial axis
``d/dx_k = -d/dx^k``. With that reading ``T_mu psi = psi`` for
``l_mu = 2 pi / p^mu`` on every axis, and the sliding form

    (1/l_t) g^t T_t psi - (1/l_x) g^x T_x psi - ... = (1/l_m) psi

is the free Dirac equation divided by 2 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import AXES, GAMMA, SIGNATURE, axis_index
from .planewave import TWO_PI, BispinorWave, dirac_operator, dirac_residual


@dataclass(frozen=True)
class AxisCheck:
    max_residual: float
    samples: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual < self.tolerance)

    def to_dict(self) -> dict:
        return {"max_residual": self.max_residual, "samples": self.samples, "pass": self.passed}


@dataclass(frozen=True)
class SymmetryReport:
    """Per-axis results, serialised as ``{axis: {max_residual, samples, pass}}``."""

    checks: dict[str, AxisCheck] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks.values()), default=0.0)

    def to_dict(self) -> dict:
        return {k: v.to_dict() for k, v in self.checks.items()}


@dataclass(frozen=True)
class TranslationOperator:
    """T = i (2 pi)^-1 l d/dx_axis.

    ``length`` may be negative: l_mu = 2 pi / p^mu carries the sign of the
    momentum component.
    """

    axis: str
    length: float

    def __post_init__(self):
        object.__setattr__(self, "axis", AXES[axis_index(self.axis)])
        if not math.isfinite(self.length) or self.length == 0:
            raise ValueError(f"translation length must be finite and nonzero, got {self.length}")

    @property
    def index(self) -> int:
        return axis_index(self.axis)

    def shift(self, pt, fraction: float = 1.0) -> np.ndarray:
        """x'_mu = x_mu + l on the covariant coordinate, returned contravariant."""
        out = np.array(pt, dtype=float)
        out[self.index] += SIGNATURE[self.index] * fraction * self.length
        return out


def covariant_derivative(field, pt, axis: int) -> np.ndarray:
    return SIGNATURE[axis] * field.gradient(pt)[axis]


def apply_translation(op: TranslationOperator, wave, pt) -> np.ndarray:
    return 1j / TWO_PI * op.length * covariant_derivative(wave, pt, op.index)


def translation_for(wave: BispinorWave, axis: str | int) -> TranslationOperator:
    """Translation over one wavelength l = 2 pi / p^axis of the wave."""
    i = axis_index(axis)
    p = wave.momentum.components[i]
    if p == 0:
        raise ValueError(f"momentum component along {AXES[i]} is zero; wavelength is infinite")
    return TranslationOperator(AXES[i], TWO_PI / p)


@dataclass(frozen=True)
class SlidingOperator:
    """P = gamma^axis T: matrix action after the translation operator."""

    translation: TranslationOperator

    @property
    def axis(self) -> str:
        return self.translation.axis

    @property
    def gamma(self) -> np.ndarray:
        return GAMMA[self.axis]

    def __call__(self, wave, pt) -> np.ndarray:
        return self.gamma @ apply_translation(self.translation, wave, pt)


def _sample_points(rng: np.random.Generator, samples: int, extent: float) -> np.ndarray:
    return rng.uniform(-extent, extent, size=(samples, 4))


def verify_translation_relation(
    wave: BispinorWave,
    samples: int,
    rng: np.random.Generator,
    fraction: float = 1.0,
    tolerance: float = 1e-10,
    extent: float = 10.0,
) -> SymmetryReport:
    """Check T psi(x + l) = psi(x) and psi(x + l) = psi(x) along every axis.

    ``fraction`` scales the step (0.5 gives the antiperiodic half step).
    Deviations are relative to |psi(x)|.
    """
    if np.any(wave.momentum.components == 0):
        raise ValueError("translation relation needs all four momentum components nonzero")
    points = _sample_points(rng, samples, extent)
    checks = {}
    for axis in AXES:
        op = translation_for(wave, axis)
        worst = 0.0
        for pt in points:
            ref = wave(pt)
            moved = op.shift(pt, fraction)
            norm = np.linalg.norm(ref)
            dev_t = np.linalg.norm(apply_translation(op, wave, moved) - ref) / norm
            dev_p = np.linalg.norm(wave(moved) - ref) / norm
            worst = max(worst, dev_t, dev_p)
        checks[axis] = AxisCheck(float(worst), samples, tolerance)
    return SymmetryReport(checks)


@dataclass(frozen=True)
class ReflectionMap:
    """Keeps ``axis`` and negates the other three coordinates."""

    axis: str

    def __post_init__(self):
        object.__setattr__(self, "axis", AXES[axis_index(self.axis)])

    @property
    def signs(self) -> np.ndarray:
        s = -np.ones(4)
        s[axis_index(self.axis)] = 1.0
        return s

    def __call__(self, pt) -> np.ndarray:
        return self.signs * np.asarray(pt, dtype=float)


@dataclass(frozen=True)
class ReflectedField:
    """phi(x) = gamma^axis psi(R x) for a source field psi."""

    reflection: ReflectionMap
    source: object

    @property
    def mass(self) -> float:
        return self.source.mass

    @property
    def gamma(self) -> np.ndarray:
        return GAMMA[self.reflection.axis]

    def __call__(self, pt) -> np.ndarray:
        return self.gamma @ self.source(self.reflection(pt))

    def gradient(self, pt) -> np.ndarray:
        inner = self.source.gradient(self.reflection(pt))
        return (self.reflection.signs[:, None] * inner) @ self.gamma.T


def reflect_solution(reflection: ReflectionMap, wave) -> ReflectedField:
    return ReflectedField(reflection, wave)


def sliding_operator_form(field, pt, mass: float | None = None) -> np.ndarray:
    """Left minus right side of the sliding form at a point.

    Uses the cancelled products (1/l_mu) T_mu = i (2 pi)^-1 d/dx_mu, so the
    expression is finite when some momentum components vanish.
    """
    m = field.mass if mass is None else mass
    out = -(m / TWO_PI) * field(pt)
    for mu in range(4):
        inv_l_times_t = 1j / TWO_PI * covariant_derivative(field, pt, mu)
        out = out + SIGNATURE[mu] * (GAMMA[mu] @ inv_l_times_t)
    return out


def sliding_residual(field, pt, mass: float | None = None) -> float:
    return float(np.linalg.norm(sliding_operator_form(field, pt, mass)))


def verify_sliding_form(
    wave: BispinorWave,
    samples: int,
    rng: np.random.Generator,
    tolerance: float = 1e-10,
    extent: float = 10.0,
) -> SymmetryReport:
    """Max of |sliding form residual| / |psi| over random points.

    Also reports, as ``dirac_factor``, the largest deviation of
    2 pi * sliding residual from the Dirac residual.
    """
    if wave.mass <= 0:
        raise ValueError("sliding form needs m > 0 (l_m is infinite for m = 0)")
    points = _sample_points(rng, samples, extent)
    worst = 0.0
    factor_dev = 0.0
    for pt in points:
        norm = np.linalg.norm(wave(pt))
        form = sliding_operator_form(wave, pt)
        worst = max(worst, np.linalg.norm(form) / norm)
        direct = dirac_operator(wave, pt)
        factor_dev = max(factor_dev, np.linalg.norm(TWO_PI * form - direct) / norm)
    return SymmetryReport(
        {
            "sliding_form": AxisCheck(float(worst), samples, tolerance),
            "dirac_factor": AxisCheck(float(factor_dev), samples, tolerance),
        }
    )


def verify_reflection(
    wave: BispinorWave,
    samples: int,
    rng: np.random.Generator,
    tolerance: float = 1e-10,
    extent: float = 10.0,
) -> SymmetryReport:
    """Reflected fields solve the Dirac equation; double reflection gives +-psi."""
    points = _sample_points(rng, samples, extent)
    checks = {}
    for axis in AXES:
        refl = ReflectionMap(axis)
        once = reflect_solution(refl, wave)
        twice = reflect_solution(refl, once)
        sign = SIGNATURE[axis_index(axis)]
        worst = 0.0
        for pt in points:
            norm = np.linalg.norm(wave(pt))
            worst = max(
                worst,
                dirac_residual(once, pt) / norm,
                np.linalg.norm(twice(pt) - sign * wave(pt)) / norm,
            )
        checks[axis] = AxisCheck(float(worst), samples, tolerance)
    return SymmetryReport(checks)
