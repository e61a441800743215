"""Positive cones of left-orderable groups as decidable oracles.

Groups: free groups (finite and infinite rank), Z^k, the tower groups T_n
and braid groups.  Cones classify elements exactly; global properties are
checked on finite balls and reported with re-checkable witnesses.
"""

__version__ = "0.1.0"

from .abelian import (
    FlagCone,
    FlagOrder,
    classify_flag,
    dense_approximation,
    discrete_approximation,
    is_discrete,
    min_convex_subgroup,
    rank_one_convex_construction,
    rational_hyperplane_approx,
)
from .braid import dehornoy_cone, example_braid_surgery, handle_reduce, parabolic_subgroup, sigma_class
from .cones import (
    BallCertificate,
    Comparison,
    Cone,
    Sign,
    check_axioms_on_ball,
    check_biinvariance_on_ball,
    check_conradian_on_ball,
    check_convex_on_ball,
    compare,
    density_witness,
    least_positive_on_ball,
    lex_extension,
    surgery,
)
from .elements import (
    AbelianGroup,
    BraidGroup,
    FreeGroup,
    TowerGroup,
    ball,
    braid_equal,
    commutator,
    parse_group,
)
from .errors import BudgetExceeded, DescriptorError, FamilyMismatch, OrdspaceError
from .lattice import Lattice, saturate
from .magnus import magnus_cone
from .quad import QuadField
from .realization import dense_approximation_free, finfty_approximation
from .tower import ball_cone_census, check_all_discrete, enumerate_tower_cones, tower_cone

__all__ = [
    "AbelianGroup",
    "BallCertificate",
    "BraidGroup",
    "BudgetExceeded",
    "Comparison",
    "Cone",
    "DescriptorError",
    "FamilyMismatch",
    "FlagCone",
    "FlagOrder",
    "FreeGroup",
    "Lattice",
    "OrdspaceError",
    "QuadField",
    "Sign",
    "TowerGroup",
    "ball",
    "ball_cone_census",
    "braid_equal",
    "check_all_discrete",
    "check_axioms_on_ball",
    "check_biinvariance_on_ball",
    "check_conradian_on_ball",
    "check_convex_on_ball",
    "classify_flag",
    "commutator",
    "compare",
    "dehornoy_cone",
    "dense_approximation",
    "dense_approximation_free",
    "density_witness",
    "discrete_approximation",
    "enumerate_tower_cones",
    "example_braid_surgery",
    "finfty_approximation",
    "handle_reduce",
    "is_discrete",
    "least_positive_on_ball",
    "lex_extension",
    "magnus_cone",
    "min_convex_subgroup",
    "parabolic_subgroup",
    "parse_group",
    "rank_one_convex_construction",
    "rational_hyperplane_approx",
    "saturate",
    "sigma_class",
    "surgery",
    "tower_cone",
]
