"""Executable checks for a geometric reading of the Dirac equation.

Modules: :mod:`clifford` (gamma matrices), :mod:`planewave` (free plane-wave
solutions), :mod:`sliding` (translation/reflection operators),
:mod:`manifold` (one-dimensional closed-manifold analogy), :mod:`weyl`
(planar Weyl space on a grid), :mod:`hydrogen` (Dirac-Coulomb shooting
solver) and :mod:`cli`.
"""

__version__ = "0.1.0"
