"""fatmash: fat triangulations, tube meshes, mesh mashing and repairs.

Library layout:

* :mod:`fatmash.geometry` -- simplex predicates and quality measures
* :mod:`fatmash.complexes` -- simplicial complex container and file I/O
* :mod:`fatmash.hyperbolic` -- hyperbolic distance and geodesic frames
* :mod:`fatmash.tubes` -- tube-neighborhood prism meshes, node types
* :mod:`fatmash.overlay` -- general position, intersection cases, 2D overlay
* :mod:`fatmash.fatten2d` -- planar fattening repairs
* :mod:`fatmash.fatten3d` -- angle mixing, insets, cones, apex lifting
* :mod:`fatmash.pipeline` -- scene building and end-to-end mashing
* :mod:`fatmash.coloring` -- chessboard signs and distortion reports
* :mod:`fatmash.cli` -- command-line front end
"""

from .geometry import (
    FatnessRecord,
    circumradius_inradius,
    dihedral_angles,
    fatness,
    min_angle,
    orientation_sign,
    simplex_quality,
)
from .complexes import (
    SimplicialComplex,
    ValidityReport,
    boundary,
    subdivide_barycentric,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "FatnessRecord",
    "SimplicialComplex",
    "ValidityReport",
    "boundary",
    "circumradius_inradius",
    "dihedral_angles",
    "fatness",
    "min_angle",
    "orientation_sign",
    "simplex_quality",
    "subdivide_barycentric",
    "validate",
]
