"""Planar Weyl space sampled on a rectangular grid.

A :class:`WeylField` holds the conformal factor ``lambda(x) > 0`` of the
metric ``ds^2 = lambda (dt^2 - dx^2 - dy^2 - dz^2)`` and the connectivity
one-form ``phi_mu``. Under a gauge (scale) transformation

    lambda' = s lambda,    phi'_mu = phi_mu - d_mu ln s

only the scale curvature ``F_ik = d_k phi_i - d_i phi_k`` is invariant.

Grids may have 1 to 4 axes, taken in the order t, x, y, z. Derivatives are
second-order central differences in the interior and first-order one-sided
differences on the boundary (``numpy.gradient`` with ``edge_order=1``);
every invariant norm is taken over interior nodes only.
"""

from __future__ import annotations

import csv
import io
import struct
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .clifford import AXES

_BINARY_MAGIC = b"WEYLGRD1"


@dataclass(frozen=True)
class Grid:
    extents: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...]

    def __post_init__(self):
        ext = tuple(int(n) for n in self.extents)
        sp = tuple(float(h) for h in self.spacing)
        org = tuple(float(o) for o in self.origin)
        if not 1 <= len(ext) <= 4:
            raise ValueError(f"grid must have 1..4 axes, got {len(ext)}")
        if not len(ext) == len(sp) == len(org):
            raise ValueError("extents, spacing and origin must have equal length")
        if any(n < 2 for n in ext):
            raise ValueError(f"all extents must be >= 2, got {ext}")
        if any(not h > 0 for h in sp):
            raise ValueError(f"spacing must be positive, got {sp}")
        object.__setattr__(self, "extents", ext)
        object.__setattr__(self, "spacing", sp)
        object.__setattr__(self, "origin", org)

    @classmethod
    def uniform(cls, n: int, ndim: int = 2, length: float = 1.0, origin: float = 0.0) -> "Grid":
        """``n`` nodes per axis spanning ``[origin, origin + length]``."""
        return cls((n,) * ndim, (length / (n - 1),) * ndim, (origin,) * ndim)

    @property
    def ndim(self) -> int:
        return len(self.extents)

    @property
    def axes(self) -> tuple[str, ...]:
        return AXES[: self.ndim]

    def coords(self) -> list[np.ndarray]:
        """Coordinate arrays, one per axis, broadcast to the full grid shape."""
        lines = [o + h * np.arange(n) for n, h, o in zip(self.extents, self.spacing, self.origin)]
        return np.meshgrid(*lines, indexing="ij")

    def interior(self, depth: int = 1) -> tuple[slice, ...]:
        return tuple(slice(depth, n - depth) for n in self.extents)

    def sample(self, fn) -> np.ndarray:
        """Evaluate ``fn(*coords)`` on every node."""
        return np.asarray(fn(*self.coords())) * np.ones(self.extents)


def derivative(values: np.ndarray, grid: Grid, axis: int, offset: int = 0) -> np.ndarray:
    """Finite-difference derivative along grid ``axis``; ``offset`` skips leading component axes."""
    if grid.extents[axis] < 2:
        raise ValueError("need at least two nodes to differentiate")
    return np.gradient(values, grid.spacing[axis], axis=axis + offset, edge_order=1)


def gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    return np.stack([derivative(values, grid, k) for k in range(grid.ndim)])


@dataclass(frozen=True)
class WeylField:
    grid: Grid
    lam: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        phi = np.array(self.phi)
        if lam.shape != self.grid.extents:
            raise ValueError(f"lambda shape {lam.shape} does not match grid {self.grid.extents}")
        if phi.shape != (self.grid.ndim,) + self.grid.extents:
            raise ValueError(f"phi shape {phi.shape} does not match grid")
        if not np.all(lam > 0):
            raise ValueError("lambda must be positive everywhere")
        lam.flags.writeable = False
        phi.flags.writeable = False
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "phi", phi)

    def metric_diagonal(self) -> np.ndarray:
        """g_ii = lambda * signature_i at every node."""
        sig = np.array([1.0] + [-1.0] * (self.grid.ndim - 1))
        return sig.reshape((-1,) + (1,) * self.grid.ndim) * self.lam


def _positive_scale(scale) -> np.ndarray:
    scale = np.asarray(scale, dtype=float)
    if not np.all(scale > 0):
        raise ValueError("gauge scale must be positive everywhere")
    return scale


def gauge_transform(f: WeylField, scale, log_scale_gradient: np.ndarray | None = None) -> WeylField:
    """lambda' = scale * lambda, phi' = phi - d ln(scale).

    The gradient of ln(scale) is taken by finite differences unless the exact
    one is supplied as ``log_scale_gradient`` (shape ``(ndim,) + extents``).
    """
    scale = _positive_scale(np.broadcast_to(scale, f.grid.extents))
    if log_scale_gradient is None:
        log_scale_gradient = gradient(np.log(scale), f.grid)
    return WeylField(f.grid, scale * f.lam, f.phi - log_scale_gradient)


@dataclass(frozen=True)
class CurvatureField:
    """The independent components F_ik, i < k, keyed by axis-index pairs."""

    grid: Grid
    components: dict[tuple[int, int], np.ndarray]

    def __getitem__(self, ik: tuple[int, int]) -> np.ndarray:
        i, k = ik
        if i == k:
            return np.zeros(self.grid.extents)
        if i < k:
            return self.components[(i, k)]
        return -self.components[(k, i)]

    def interior_max(self, depth: int = 1) -> float:
        sl = self.grid.interior(depth)
        return max((float(np.max(np.abs(c[sl]))) for c in self.components.values()), default=0.0)

    def __sub__(self, other: "CurvatureField") -> "CurvatureField":
        return CurvatureField(self.grid, {k: v - other.components[k] for k, v in self.components.items()})


def curvature_from_connectivity(grid: Grid, phi: np.ndarray) -> CurvatureField:
    comps = {}
    for i, k in combinations(range(grid.ndim), 2):
        comps[(i, k)] = derivative(phi[i], grid, k) - derivative(phi[k], grid, i)
    return CurvatureField(grid, comps)


def scale_curvature(f: WeylField) -> CurvatureField:
    return curvature_from_connectivity(f.grid, f.phi)


def bianchi_residual(c: CurvatureField, depth: int = 2) -> float:
    """Max over interior nodes of |d_i F_kl + d_k F_li + d_l F_ik|.

    Triples with a repeated index vanish by antisymmetry, so only distinct
    i < k < l are evaluated; on grids with fewer than three axes the
    residual is identically zero.
    """
    grid = c.grid
    sl = grid.interior(depth)
    worst = 0.0
    for i, k, l in combinations(range(grid.ndim), 3):
        cyc = (
            derivative(c[(k, l)], grid, i)
            + derivative(c[(l, i)], grid, k)
            + derivative(c[(i, k)], grid, l)
        )
        worst = max(worst, float(np.max(np.abs(cyc[sl]))))
    return worst


def curvature_gauge_invariance(
    f: WeylField, scale, log_scale_gradient: np.ndarray | None = None, depth: int = 1
) -> float:
    """Max interior deviation of F under a gauge transformation."""
    before = scale_curvature(f)
    after = scale_curvature(gauge_transform(f, scale, log_scale_gradient))
    return (after - before).interior_max(depth)


@dataclass(frozen=True)
class PotentialField:
    """Electromagnetic potential A_mu on a grid together with the charge e."""

    grid: Grid
    A: np.ndarray
    charge: float

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        if A.shape != (self.grid.ndim,) + self.grid.extents:
            raise ValueError(f"potential shape {A.shape} does not match grid")
        A.flags.writeable = False
        object.__setattr__(self, "A", A)

    def gauge_shift(self, chi: np.ndarray, chi_gradient: np.ndarray | None = None) -> "PotentialField":
        """A' = A - d chi."""
        if chi_gradient is None:
            chi_gradient = np.stack([derivative(chi, self.grid, k) for k in range(self.grid.ndim)])
        return PotentialField(self.grid, self.A - chi_gradient, self.charge)


def connectivity_from_potential(p: PotentialField) -> np.ndarray:
    """phi_mu = i e A_mu."""
    return 1j * p.charge * p.A


def potential_from_connectivity(grid: Grid, phi: np.ndarray, charge: float) -> PotentialField:
    return PotentialField(grid, np.asarray(phi) / (1j * charge), charge)


def gauge_function_from_scale(scale, charge: float) -> np.ndarray:
    """chi with A' = A - d chi matching phi' = phi - d ln(scale) under phi = i e A.

    This is chi = ln(scale) / (i e); it coincides with i e ln(scale) only
    when (i e)^2 = 1.
    """
    return np.log(_positive_scale(scale)) / (1j * charge)


def long_derivative(p: PotentialField, psi: np.ndarray, axis: int) -> np.ndarray:
    """(d_axis - i e A_axis) psi for a field with leading component axes.

    ``psi`` has shape ``components + grid.extents`` (a bispinor field is
    ``(4,) + extents``).
    """
    psi = np.asarray(psi)
    lead = psi.ndim - p.grid.ndim
    if lead < 0 or psi.shape[lead:] != p.grid.extents:
        raise ValueError(f"field shape {psi.shape} does not conform to grid {p.grid.extents}")
    return derivative(psi, p.grid, axis, offset=lead) - 1j * p.charge * p.A[axis] * psi


def covariance_defect(
    p: PotentialField, psi: np.ndarray, chi: np.ndarray, chi_gradient: np.ndarray | None = None, depth: int = 1
) -> float:
    """Max interior |D'(exp(-i e chi) psi) - exp(-i e chi) D psi| over all axes."""
    phase = np.exp(-1j * p.charge * chi)
    shifted = p.gauge_shift(chi, chi_gradient)
    psi_t = phase * psi
    lead = np.asarray(psi).ndim - p.grid.ndim
    sl = (slice(None),) * lead + p.grid.interior(depth)
    worst = 0.0
    for axis in range(p.grid.ndim):
        diff = long_derivative(shifted, psi_t, axis) - phase * long_derivative(p, psi, axis)
        worst = max(worst, float(np.max(np.abs(diff[sl]))))
    return worst


# ---------------------------------------------------------------------------
# I/O


def field_to_csv(f: WeylField) -> str:
    """Rows ``index, coordinates..., lambda, phi...`` in row-major node order."""
    if np.iscomplexobj(f.phi) and np.any(f.phi.imag != 0):
        raise ValueError("CSV layout stores real connectivity only")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    axes = f.grid.axes
    w.writerow(["index", *axes, "lambda", *(f"phi_{a}" for a in axes)])
    coords = [c.ravel() for c in f.grid.coords()]
    lam = f.lam.ravel()
    phi = f.phi.reshape(f.grid.ndim, -1)
    for n in range(lam.size):
        w.writerow([n, *(repr(float(c[n])) for c in coords), repr(float(lam[n])), *(repr(float(v[n])) for v in phi)])
    return buf.getvalue()


def field_from_csv(text: str, grid: Grid) -> WeylField:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    d = grid.ndim
    if len(header) != 2 + 2 * d:
        raise ValueError(f"CSV has {len(header)} columns, expected {2 + 2 * d}")
    data = np.array([[float(v) for v in r] for r in body])
    if data.shape[0] != int(np.prod(grid.extents)):
        raise ValueError("CSV row count does not match the grid")
    order = np.argsort(data[:, 0].astype(int))
    data = data[order]
    lam = data[:, 1 + d].reshape(grid.extents)
    phi = data[:, 2 + d :].T.reshape((d,) + grid.extents)
    return WeylField(grid, lam, phi)


def field_to_bytes(f: WeylField) -> bytes:
    """Binary layout, all little-endian.

    magic ``WEYLGRD1`` (8 bytes); ``ndim`` as int64; extents (int64 x ndim);
    spacing (float64 x ndim); origin (float64 x ndim); then one record per
    node in row-major order: lambda, phi_0 .. phi_{ndim-1} as float64.
    """
    g = f.grid
    d = g.ndim
    if np.iscomplexobj(f.phi) and np.any(f.phi.imag != 0):
        raise ValueError("binary layout stores real connectivity only")
    head = _BINARY_MAGIC + struct.pack(f"<q{d}q{d}d{d}d", d, *g.extents, *g.spacing, *g.origin)
    nodes = np.concatenate([f.lam[None], f.phi.real]).reshape(d + 1, -1).T
    return head + np.ascontiguousarray(nodes, dtype="<f8").tobytes()


def field_from_bytes(data: bytes) -> WeylField:
    if data[:8] != _BINARY_MAGIC:
        raise ValueError("not a Weyl field binary blob")
    (d,) = struct.unpack_from("<q", data, 8)
    if not 1 <= d <= 4:
        raise ValueError(f"bad dimension {d}")
    fmt = f"<{d}q{d}d{d}d"
    vals = struct.unpack_from(fmt, data, 16)
    grid = Grid(vals[:d], vals[d : 2 * d], vals[2 * d :])
    offset = 16 + struct.calcsize(fmt)
    nodes = np.frombuffer(data, dtype="<f8", offset=offset)
    count = int(np.prod(grid.extents))
    if nodes.size != count * (d + 1):
        raise ValueError("payload size does not match header")
    nodes = nodes.reshape(count, d + 1).T
    return WeylField(grid, nodes[0].reshape(grid.extents), nodes[1:].reshape((d,) + grid.extents))


def save_field(f: WeylField, path: str | Path) -> None:
    path = Path(path)
    if path.suffix == ".csv":
        path.write_text(field_to_csv(f))
    else:
        path.write_bytes(field_to_bytes(f))


def load_field(path: str | Path, grid: Grid | None = None) -> WeylField:
    path = Path(path)
    if path.suffix == ".csv":
        if grid is None:
            raise ValueError("CSV import needs the grid")
        return field_from_csv(path.read_text(), grid)
    return field_from_bytes(path.read_bytes())
