"""Exact toolkit for flexibility analysis of affine toric varieties and
a locally nilpotent derivation calculus over Q and Q(e), e^4 = -1."""

__version__ = "0.1.0"

from .cones import (  # noqa: E402,F401
    RationalCone,
    SimplicialPiece,
    double_description,
    dual_cone,
    dual_face,
    face_lattice,
    hilbert_basis,
    is_pointed,
    parallelepiped_points,
    triangulate,
)
from .monoid import (  # noqa: E402,F401
    HoleFamilyCertificate,
    MonoidPresentation,
)
from .toric import (  # noqa: E402,F401
    analyze,
    analyze_generators,
    divisorial_smoothness,
    flexibility_verdict,
    invariant_divisor_verdict,
    orbit_census,
)
from .numberfield import EPS, QEps  # noqa: E402,F401
from .poly import PolyRing, Polynomial  # noqa: E402,F401
from .derivations import (  # noqa: E402,F401
    AmbientModel,
    Derivation,
    GradingSpec,
    PresentedAlgebra,
    exp_derivation,
    graded_decompose,
    is_locally_nilpotent_bounded,
    jacobian_rank,
    preserves_relations,
    tangent_rank,
)
from .scenarios import build_xm, build_xm_general, parse_scenario  # noqa: E402,F401
from .verify import run_suite  # noqa: E402,F401
