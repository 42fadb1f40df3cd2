"""Arithmetic toolkit for Markoff-type K3 surfaces.

Subpackages cover the symmetric (2,2,2)-forms and their geometry (`forms`),
finite-field arithmetic (`gf`), fiberwise point counting (`counting`), the
Frobenius/Picard pipeline (`zeta`), intersection lattices (`lattice`), Tate
cohomology of lattice involutions (`cohomology`), local solvability
certificates (`localsolve`), Hilbert symbols and obstruction verdicts
(`brauer`), and rational/integral point machinery (`rational`).  The `mk3`
console script exposes each pipeline with JSON output.
"""

__version__ = "0.1.0"
