"""Circular-arc constructions for planar curves of monotone curvature.

The package covers one pipeline and its supporting theory: approximate a
convex spiral arc by a biarc (or triarc) with exactly the same endpoints,
end tangents, and arc length; bound the attainable lengths; enclose the
approximation error; and model where curve endpoints can land when only
the curvature range, length, or turning is known.
"""

from .biarc import Biarc, BiarcFamily
from .bilens import Bilens
from .bounds import LengthBounds, NormalizedBounds, length_bounds
from .curves import (PiecewiseConstCurve, arc_displacement,
                     arc_length_from_chord, distance_to_curve,
                     spiral_from_levels)
from .errors import (ConvexityError, DegenerateLensError, InvalidDataError,
                     LengthRangeError, SolverError, SpiralArcsError,
                     UnsupportedRegimeError)
from .geom import (ChordData, CurvatureElement, G2ChordData, Pose,
                   RigidMotion, chord_frame, is_short_spiral_data,
                   q_invariant, reflected_about_bisector,
                   reflected_about_chord, reversed_data, vogt_sign_ok)
from .model import (BoundaryCurve, EndpointSet, Gamma2Diagnostic,
                    endpoint_set_spiral, fixed_turning_subset,
                    gamma2_canonical_check, z1, z2, z3)
from .ovals import (ClosenessReport, OneVertexModel, OvalCertificate,
                    OvalSpec, closeness_sweep, closure_certificate,
                    natural_mu_range, natural_nu_range,
                    one_vertex_endpoint_set, overlap_area, phi,
                    solve_symmetric_limits, symmetric_natural_range)
from .solver import ApproxResult, length_residual, solve_length_biarc
from .triarc import (MobiusMap, Triarc, concentric_frame, inscribed_triarc,
                     mobius_concentric, solve_length_triarc)

__version__ = "0.1.0"

__all__ = [
    "Biarc", "BiarcFamily", "Bilens",
    "LengthBounds", "NormalizedBounds", "length_bounds",
    "PiecewiseConstCurve", "arc_displacement", "arc_length_from_chord",
    "distance_to_curve", "spiral_from_levels",
    "ConvexityError", "DegenerateLensError", "InvalidDataError",
    "LengthRangeError", "SolverError", "SpiralArcsError",
    "UnsupportedRegimeError",
    "ChordData", "CurvatureElement", "G2ChordData", "Pose", "RigidMotion",
    "chord_frame", "is_short_spiral_data", "q_invariant",
    "reflected_about_bisector", "reflected_about_chord", "reversed_data",
    "vogt_sign_ok",
    "BoundaryCurve", "EndpointSet", "Gamma2Diagnostic",
    "endpoint_set_spiral", "fixed_turning_subset", "gamma2_canonical_check",
    "z1", "z2", "z3",
    "ClosenessReport", "OneVertexModel", "OvalCertificate", "OvalSpec",
    "closeness_sweep", "closure_certificate", "natural_mu_range",
    "natural_nu_range", "one_vertex_endpoint_set", "overlap_area", "phi",
    "solve_symmetric_limits", "symmetric_natural_range",
    "ApproxResult", "length_residual", "solve_length_biarc",
    "MobiusMap", "Triarc", "concentric_frame", "inscribed_triarc",
    "mobius_concentric", "solve_length_triarc",
    "__version__",
]
