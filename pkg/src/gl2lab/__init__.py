"""Subgroups of GL_2(Z/nZ), their orbits on torsion points and cyclic
submodules, and executable checks of the group theory behind fields of
definition of isogenies."""

__version__ = "0.1.0"

from .errors import Gl2LabError
from .groups import MatrixGroup, closure, parse_group_spec, standard_group
from .mat2 import Mat2
from .orbits import Space, orbit_decomposition, stabilizer
from .torsion import CyclicSubmodule, TorsionVector

__all__ = [
    "Gl2LabError", "Mat2", "MatrixGroup", "closure", "parse_group_spec", "standard_group",
    "Space", "orbit_decomposition", "stabilizer", "CyclicSubmodule", "TorsionVector",
    "__version__",
]
