"""Width-limited interval-valued overlap and aggregation functions on [0, 1]."""

from .interval import (
    Interval,
    IntervalError,
    d_alpha,
    from_kalpha_width,
    k_alpha_point,
    lambda_alpha,
    moore_distance,
    parse_interval,
)
from .scalar import (
    AM,
    CATALOG,
    MAX,
    O_GM,
    O_M,
    O_MM,
    O_OB,
    O_P,
    O_T,
    ONE,
    Custom,
    KAlpha,
    Negation,
    ScalarFn,
    Tri,
    check_overlap_axioms,
    compose3,
    convex_sum,
    dual,
    is_ab_ultramodular_sampled,
    is_ultramodular_sampled,
    lookup,
    register,
)
from .orders import AlphaBetaOrder, GeneratedPairOrder, InclusionOrder, OrderError, ProductOrder
from .constructions import (
    AOAlpha,
    BestRep,
    Construct1,
    Construct2,
    Construct3,
    IvCompose,
    KLambdaAggregation,
    SpecError,
    iv_eval,
)
from .width import GridFn, check_composition_bound, check_ultradual, least_width_limiting
from .properties import CheckReport, check_iv_overlap, check_order_laws, check_w_iv_overlap
from .parsing import ParseError, parse_expr, parse_ivfn, parse_order, parse_tuple

__version__ = "0.1.0"
