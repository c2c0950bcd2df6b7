"""Plane-wave solutions of the free Dirac equation.

Natural units (hbar = c = 1). A wave is ``psi(x) = u exp(-i p.x)`` with
``p.x = p_t t - p_x x - p_y y - p_z z``; it solves
``i gamma^mu d_mu psi = m psi`` iff ``(p_slash - m) u = 0``, which needs the
mass shell ``p_t**2 - |p|**2 = m**2``.

Fields used here (plane waves and the reflected fields in
:mod:`diracgeom.sliding`) share a small duck-typed interface:
``field(pt)`` returns the bispinor at a point, ``field.gradient(pt)``
returns a (4, 4) array whose row ``mu`` is the derivative with respect to
the contravariant coordinate ``x^mu``, and ``field.mass`` is the mass in
the equation the field is meant to solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .clifford import GAMMA, IDENTITY4, SIGNATURE

TWO_PI = 2.0 * math.pi


class OffShellError(ValueError):
    """Raised when a momentum does not satisfy the mass shell."""


class SpacetimePoint(NamedTuple):
    t: float
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class FourMomentum:
    """Contravariant four-momentum together with the mass it belongs to.

    Construction does not enforce the mass shell so that off-shell and
    negative-energy momenta can be represented; use :func:`make_on_shell`
    for valid positive-energy momenta.
    """

    p_t: float
    p_x: float
    p_y: float
    p_z: float
    m: float

    @property
    def components(self) -> np.ndarray:
        return np.array([self.p_t, self.p_x, self.p_y, self.p_z], dtype=float)

    def invariant(self) -> float:
        p = self.components
        return float(p[0] ** 2 - p[1] ** 2 - p[2] ** 2 - p[3] ** 2)

    def shell_defect(self) -> float:
        """Relative mass-shell defect |p.p - m^2| / p_t^2."""
        scale = max(self.p_t**2, self.m**2, np.dot(self.components, self.components), 1e-300)
        return abs(self.invariant() - self.m**2) / scale

    def is_on_shell(self, rtol: float = 1e-12) -> bool:
        return self.shell_defect() <= rtol


def make_on_shell(spatial: Sequence[float], m: float) -> FourMomentum:
    """Positive-energy momentum with the given spatial part and mass."""
    if m < 0:
        raise ValueError(f"mass must be non-negative, got {m}")
    px, py, pz = (float(c) for c in spatial)
    if m == 0 and px == 0 and py == 0 and pz == 0:
        raise ValueError("massless momentum with zero spatial part has no wave")
    p_t = math.sqrt(m * m + px * px + py * py + pz * pz)
    return FourMomentum(p_t, px, py, pz, float(m))


def dirac_matrix(p: FourMomentum) -> np.ndarray:
    """Momentum-space Dirac operator p_slash - m."""
    return GAMMA.slash(p.components) - p.m * IDENTITY4


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # first component with non-negligible modulus made real positive
    k = int(np.argmax(np.abs(v) > 1e-12 * np.max(np.abs(v))))
    return v * (abs(v[k]) / v[k])


def solve_amplitude(p: FourMomentum, rtol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis of the null space of ``p_slash - m``.

    Singular values below ``rtol * (|p| + m)`` count as zero; anything
    other than a two-dimensional null space raises :class:`OffShellError`.
    """
    mat = dirac_matrix(p)
    _, s, vh = np.linalg.svd(mat)
    scale = float(np.abs(p.components).sum() + abs(p.m))
    null = s <= rtol * scale
    if int(null.sum()) != 2:
        raise OffShellError(
            f"null space of (p_slash - m) has dimension {int(null.sum())}, expected 2 "
            f"(singular values {s})"
        )
    basis = [_fix_phase(vh[i].conj()) for i in np.flatnonzero(null)]
    return [b / np.linalg.norm(b) for b in basis]


@dataclass(frozen=True)
class BispinorWave:
    """psi(x) = amplitude * exp(-i p.x). The amplitude is not checked here."""

    momentum: FourMomentum
    amplitude: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitude, dtype=complex).reshape(4)
        amp.flags.writeable = False
        object.__setattr__(self, "amplitude", amp)

    @property
    def mass(self) -> float:
        return self.momentum.m

    def phase(self, pt) -> complex:
        t, x, y, z = pt
        p = self.momentum
        return complex(np.exp(-1j * (p.p_t * t - p.p_x * x - p.p_y * y - p.p_z * z)))

    def __call__(self, pt) -> np.ndarray:
        return self.amplitude * self.phase(pt)

    def gradient(self, pt) -> np.ndarray:
        # d/dx^mu of exp(-i p.x) is -i * signature[mu] * p^mu
        k = -1j * np.array(SIGNATURE) * self.momentum.components
        return np.outer(k, self(pt))

    def scaled(self, c: complex) -> "BispinorWave":
        return BispinorWave(self.momentum, c * self.amplitude)

    def residual_norm(self) -> float:
        return float(np.linalg.norm(dirac_matrix(self.momentum) @ self.amplitude))


def plane_wave(spatial: Sequence[float], m: float, which: int = 0) -> BispinorWave:
    """On-shell positive-energy wave using basis amplitude ``which`` (0 or 1)."""
    p = make_on_shell(spatial, m)
    return BispinorWave(p, solve_amplitude(p)[which])


def evaluate(wave: BispinorWave, pt) -> np.ndarray:
    return wave(pt)


@dataclass(frozen=True)
class WavelengthSet:
    """Inverse lengths 1/l_mu = p_mu / 2pi and 1/l_m = m / 2pi."""

    inv_l: np.ndarray
    inv_l_m: float

    def shell_defect(self) -> float:
        """Relative defect of l_t^-2 - l_x^-2 - l_y^-2 - l_z^-2 = l_m^-2."""
        q = self.inv_l
        lhs = q[0] ** 2 - q[1] ** 2 - q[2] ** 2 - q[3] ** 2
        scale = max(float(np.dot(q, q)), self.inv_l_m**2, 1e-300)
        return abs(lhs - self.inv_l_m**2) / scale

    def lengths(self) -> np.ndarray:
        """l_mu, infinite where the momentum component vanishes."""
        with np.errstate(divide="ignore"):
            return np.where(self.inv_l == 0, np.inf, 1.0 / np.where(self.inv_l == 0, 1.0, self.inv_l))

    @property
    def l_m(self) -> float:
        return math.inf if self.inv_l_m == 0 else 1.0 / self.inv_l_m


def wavelengths(p: FourMomentum) -> WavelengthSet:
    inv = p.components / TWO_PI
    inv.flags.writeable = False
    return WavelengthSet(inv, p.m / TWO_PI)


def evaluate_wavelength_form(wave: BispinorWave, pt) -> np.ndarray:
    """psi written with explicit lengths:
    u exp(-2 pi i t/l_t + 2 pi i x/l_x + 2 pi i y/l_y + 2 pi i z/l_z).

    Every l_mu must be finite, i.e. all momentum components nonzero.
    """
    lengths = wavelengths(wave.momentum).lengths()
    if not np.all(np.isfinite(lengths)):
        raise ValueError("wavelength form needs all momentum components nonzero")
    t, x, y, z = pt
    lt, lx, ly, lz = lengths
    arg = -TWO_PI * t / lt + TWO_PI * x / lx + TWO_PI * y / ly + TWO_PI * z / lz
    return wave.amplitude * np.exp(1j * arg)


def fd_gradient(field, pt, h: float) -> np.ndarray:
    """Central-difference gradient of a field, rows indexed by axis."""
    pt = np.asarray(pt, dtype=float)
    rows = []
    for mu in range(4):
        e = np.zeros(4)
        e[mu] = h
        rows.append((field(pt + e) - field(pt - e)) / (2.0 * h))
    return np.array(rows)


def dirac_operator(field, pt, h: float | None = None, mass: float | None = None) -> np.ndarray:
    """(i gamma^mu d_mu - m) psi at ``pt``; analytic when ``h`` is None."""
    grad = field.gradient(pt) if h is None else fd_gradient(field, pt, h)
    m = field.mass if mass is None else mass
    out = -m * field(pt)
    for mu in range(4):
        out = out + 1j * (GAMMA[mu] @ grad[mu])
    return out


def dirac_residual(field, pt, h: float | None = None, mass: float | None = None) -> float:
    """Norm of (i gamma^mu d_mu - m) psi at a point.

    With ``h`` given, derivatives come from central differences of step
    ``h`` (second-order accurate) instead of the field's analytic gradient.
    """
    return float(np.linalg.norm(dirac_operator(field, pt, h=h, mass=mass)))
