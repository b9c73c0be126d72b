"""Six-vertex model with domain wall boundary: partition function and boundary correlators.

Three independent routes are provided: determinant formulas, orthogonal
polynomial identities, and exhaustive enumeration of configurations.
Importing the package sets the working precision to 256 bits, or to the
value of the ``SIXVERTEX_PRECISION`` environment variable.
"""

from .scalar import Angle, default_precision, precision, set_precision, tolerance

set_precision(default_precision())

from .errors import (  # noqa: E402
    DegenerateParameters,
    InadmissibleParameters,
    InexactDivision,
    SingularHankel,
    SingularJetDivision,
    SingularParameters,
    SixVertexError,
    SizeCapExceeded,
    UnsupportedSize,
)
from .homogeneous import G_hom, H2_hom_det, H_hom, Z_hom, crossing_check  # noqa: E402
from .inhomogeneous import G_inhom_det, H2_inhom, H_inhom_det, Z_inhom  # noqa: E402
from .lattice import enumerate_dwbc, refined_census  # noqa: E402
from .ortho import H2_identity, H_via_ortho, build_basis, moments, verify_genfun_identity  # noqa: E402
from .params import InhomParams, WeightParams  # noqa: E402

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "DegenerateParameters",
    "G_hom",
    "G_inhom_det",
    "H2_hom_det",
    "H2_identity",
    "H2_inhom",
    "H_hom",
    "H_inhom_det",
    "H_via_ortho",
    "InadmissibleParameters",
    "InexactDivision",
    "InhomParams",
    "SingularHankel",
    "SingularJetDivision",
    "SingularParameters",
    "SixVertexError",
    "SizeCapExceeded",
    "UnsupportedSize",
    "WeightParams",
    "Z_hom",
    "Z_inhom",
    "build_basis",
    "crossing_check",
    "default_precision",
    "enumerate_dwbc",
    "moments",
    "precision",
    "refined_census",
    "set_precision",
    "tolerance",
    "verify_genfun_identity",
]
