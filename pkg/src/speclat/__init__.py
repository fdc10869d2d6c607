"""Exact spectral theory of finite-dimensional linear effect algebras.

Effects are points of an order interval ``[0, u]`` in ``Q^n``; all
arithmetic is over :class:`fractions.Fraction`.
"""
from .algebra import (
    Effect,
    EffectAlgebra,
    as_polyhedral,
    complement,
    convex_combination,
    effect_sum,
    interval_vertices,
    is_extremal,
    is_one_dimensional,
    is_sharp,
    leq,
    make_algebra,
    order_unit_norm,
    scale,
    sharpness_certificate,
)
from .cone import Cone, dd_convert, dual_cone, extreme_rays
from .constructions import (
    affine_isomorphism_search,
    builtin,
    builtin_corpus,
    classify_sum_contexts,
    direct_convex_sum,
    direct_product,
    nonspectral_witness_for_sum,
    verify_isomorphism,
)
from .errors import *  # noqa: F401,F403
from .polytope import HPolytope, lp_solve, polytope_vertices
from .spectral import (
    Context,
    ContextFamily,
    Decomposition,
    GroupedDecomposition,
    NonSpectralWitness,
    decompose_vector,
    enumerate_contexts,
    grouped_decomposition,
    minmax_extrema,
    orthomodularity_check,
    require_decomposition,
    sharp_candidates,
    sharp_cover,
    sharp_join,
    sharp_meet,
    sharp_one_dim_elements,
    spectral_decomposition,
)
from .states import (
    State,
    extreme_states,
    hat_face,
    is_E_exposed_point,
    order_determining_check,
    sharply_determining_check,
)

__version__ = "0.1.0"
