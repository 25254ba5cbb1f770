"""Rate curve and achievable bounds."""

from hypergraph_coding.bounds.curve import RateCurve, critical_epsilons, curve_to_csv, rate_curve
from hypergraph_coding.bounds.estimates import approx_function_bound, lipschitz_bound

__all__ = [
    "RateCurve",
    "approx_function_bound",
    "critical_epsilons",
    "curve_to_csv",
    "lipschitz_bound",
    "rate_curve",
]
