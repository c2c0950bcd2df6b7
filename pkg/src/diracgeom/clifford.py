"""Pauli and Dirac gamma matrices in the chiral-block form.

The four 4x4 matrices are built from 2x2 blocks::

    gamma_t = [[0, 1], [1, 0]]
    gamma_k = [[0, -sigma_k], [sigma_k, 0]]     k = x, y, z

Axes are named ``t, x, y, z`` and the metric signature is (+, -, -, -).
All entries are 0, +-1 or +-i, so products of gamma matrices are exact in
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

AXES = ("t", "x", "y", "z")
SIGNATURE = (1, -1, -1, -1)

IDENTITY4 = np.eye(4, dtype=complex)
IDENTITY4.flags.writeable = False


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def axis_index(axis: str | int) -> int:
    """Map an axis name (or an index 0..3) to its index."""
    if isinstance(axis, str):
        try:
            return AXES.index(axis)
        except ValueError:
            raise ValueError(f"unknown axis {axis!r}; expected one of {AXES}") from None
    if not 0 <= int(axis) < 4:
        raise ValueError(f"axis index {axis} out of range 0..3")
    return int(axis)


def pauli_matrices() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return _frozen(sx), _frozen(sy), _frozen(sz)


@dataclass(frozen=True)
class GammaSet:
    """The four gamma matrices indexed by axis, with the metric signature."""

    gamma: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    signature: tuple[int, int, int, int] = SIGNATURE

    def __getitem__(self, axis: str | int) -> np.ndarray:
        return self.gamma[axis_index(axis)]

    def __iter__(self):
        return iter(self.gamma)

    def metric(self) -> np.ndarray:
        return np.diag(np.array(self.signature, dtype=float))

    def slash(self, p) -> np.ndarray:
        """Contract contravariant components ``p`` with the gammas: p_t g^t - p_x g^x - ..."""
        p = np.asarray(p)
        out = np.zeros((4, 4), dtype=complex)
        for g, s, c in zip(self.gamma, self.signature, p):
            out = out + s * c * g
        return out


def build_gamma_set() -> GammaSet:
    zero = np.zeros((2, 2), dtype=complex)
    one = np.eye(2, dtype=complex)
    gt = np.block([[zero, one], [one, zero]])
    spatial = tuple(np.block([[zero, -s], [s, zero]]) for s in pauli_matrices())
    return GammaSet(gamma=(_frozen(gt),) + tuple(_frozen(g) for g in spatial))


GAMMA = build_gamma_set()


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def apply(m: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Matrix-bispinor product."""
    return np.asarray(m) @ np.asarray(s, dtype=complex)


def clifford_defects(gammas: GammaSet = GAMMA) -> np.ndarray:
    """Max-abs entry of {g_mu, g_nu} - 2 g^{mu nu} I for every ordered pair."""
    metric = gammas.metric()
    out = np.empty((4, 4))
    for mu in range(4):
        for nu in range(4):
            diff = anticommutator(gammas[mu], gammas[nu]) - 2 * metric[mu, nu] * IDENTITY4
            out[mu, nu] = np.max(np.abs(diff))
    return out
