"""Exact computer algebra for genus-zero supergeometry over P^1|1."""

from .bundles import (
    Section,
    h0_dim,
    point_row,
    sl2_act_section,
    spinor_section,
    wronskian,
)
from .curves import (
    MarkedConfig,
    P1Point,
    SuperCurve,
    act_config,
    act_general,
    act_sl2_on_curve,
    act_susy_on_curve,
    eval_curve_at_superpoint,
    orbit_normalize_points,
    phi_deformation_dim,
    psi_space_dim,
    random_config,
    random_curve,
    same_orbit,
    slice_normalize_one_point,
    slice_normalize_two_points,
    torus_act_config,
    torus_act_curve,
)
from .curves import susy1_matrix as config_susy1_matrix
from .curves import susy1_report as config_susy1_report
from .grassmann import (
    GrassmannError,
    MAX_GENERATORS,
    Qi,
    QiPoly,
    RatT,
    Scalar,
    SuperNumber,
    T_PARAM,
    as_scalar,
    embed,
    invert,
    make_rat,
    mul,
    parity_split,
    random_qi,
    random_supernumber,
    reduce,
    scalar_sqrt,
)
from .linalg import (
    ModuleRankReport,
    field_inverse,
    field_rank,
    field_solve,
    mat_mul,
    mat_vec,
    module_rank_report,
    solve_body_invertible,
)
from .polyrat import ScalarPoly, SuperPoly, homog_subst, reverse_coeffs
from .scgroup import (
    SCMatrix,
    act_point,
    identity,
    lift_sl2,
    point_multiplier,
    random_sc_matrix,
    random_sl2_qi,
    reflection,
    same_automorphism,
    stabilizer_two_points,
    susy,
    three_point_normalize,
    torus_matrix,
)
from .superspace import (
    ChartPoint,
    ProjPoint,
    as_proj,
    point_infty,
    point_one,
    point_zero,
    preferred_chart,
    proj_equal,
    reduce_point,
    reduced_bodies_distinct,
    torus_act_point,
)
from .trees import (
    StableTree,
    TreeConfig,
    TreeDiagnostic,
    act_tree_config,
    forget_last_mark,
    glue,
    random_glue_pair,
    single_vertex_config,
    torus_act_tree,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "ChartPoint",
    "GrassmannError",
    "MAX_GENERATORS",
    "MarkedConfig",
    "ModuleRankReport",
    "P1Point",
    "ProjPoint",
    "Qi",
    "QiPoly",
    "RatT",
    "SCMatrix",
    "Scalar",
    "ScalarPoly",
    "Section",
    "StableTree",
    "SuperCurve",
    "SuperNumber",
    "SuperPoly",
    "T_PARAM",
    "TreeConfig",
    "TreeDiagnostic",
    "__version__",
    "act_config",
    "act_general",
    "act_point",
    "act_sl2_on_curve",
    "act_susy_on_curve",
    "act_tree_config",
    "as_proj",
    "as_scalar",
    "config_susy1_matrix",
    "config_susy1_report",
    "embed",
    "eval_curve_at_superpoint",
    "field_inverse",
    "field_rank",
    "field_solve",
    "forget_last_mark",
    "glue",
    "h0_dim",
    "homog_subst",
    "identity",
    "invert",
    "lift_sl2",
    "make_rat",
    "mat_mul",
    "mat_vec",
    "module_rank_report",
    "mul",
    "orbit_normalize_points",
    "parity_split",
    "phi_deformation_dim",
    "point_infty",
    "point_multiplier",
    "point_one",
    "point_row",
    "point_zero",
    "preferred_chart",
    "proj_equal",
    "psi_space_dim",
    "random_config",
    "random_curve",
    "random_glue_pair",
    "random_qi",
    "random_sc_matrix",
    "random_sl2_qi",
    "random_supernumber",
    "reduce",
    "reduce_point",
    "reduced_bodies_distinct",
    "reflection",
    "reverse_coeffs",
    "same_automorphism",
    "same_orbit",
    "scalar_sqrt",
    "single_vertex_config",
    "sl2_act_section",
    "slice_normalize_one_point",
    "slice_normalize_two_points",
    "solve_body_invertible",
    "spinor_section",
    "stabilizer_two_points",
    "susy",
    "three_point_normalize",
    "torus_act_config",
    "torus_act_curve",
    "torus_act_point",
    "torus_act_tree",
    "torus_matrix",
    "validate",
    "wronskian",
]
