"""Tests for the rate curve and the Lipschitz and approximation bounds."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from hypergraph_coding.bounds import (
    RateCurve,
    approx_function_bound,
    critical_epsilons,
    curve_to_csv,
    lipschitz_bound,
    rate_curve,
)
from hypergraph_coding.core.errors import PreconditionViolated
from hypergraph_coding.core.model import identity_instance
from hypergraph_coding.entropy import solve_entropy
from hypergraph_coding.hypergraph import build_hypergraph

BREAKPOINTS = [math.sqrt(13) / 4, 1.0, 13 / 12]
RATES = [math.log2(3), 2 / 3, math.log2(3) - 1, 0.0]


class TestRateCurve:
    """Behavior tests for tracing R(epsilon)."""

    def test_critical_epsilons_of_planar_example(self, fig5):
        """
        Given the planar example
        When listing the candidate breakpoints
        Then they are zero and the three enclosing radii
        """
        assert critical_epsilons(fig5) == pytest.approx([0.0] + BREAKPOINTS, abs=1e-9)

    def test_planar_example_curve(self, fig5):
        """
        Given the planar example
        When tracing its rate curve
        Then the breakpoints and rates match the closed forms
        """
        curve = rate_curve(fig5)

        assert curve.breakpoints == pytest.approx(BREAKPOINTS, abs=1e-9)
        assert curve.rates == pytest.approx(RATES, abs=1e-4)
        assert curve.hypergraphs[1] == [(0, 1), (1, 2)]
        assert curve.hypergraphs[-1] == [(0, 1, 2)]

    def test_evaluate_is_right_continuous(self, fig5):
        """
        Given the planar curve
        When evaluating inside intervals and at breakpoints
        Then each breakpoint takes the value of the interval it opens
        """
        curve = rate_curve(fig5)

        assert curve.evaluate(0.5) == pytest.approx(RATES[0], abs=1e-4)
        assert curve.evaluate(0.95) == pytest.approx(RATES[1], abs=1e-4)
        assert curve.evaluate(1.0) == pytest.approx(RATES[2], abs=1e-4)
        assert curve.evaluate(5.0) == 0.0

    def test_rates_never_increase(self, random_instance):
        """
        Given random instances
        When tracing their curves
        Then the rate is nonincreasing in epsilon
        """
        rng = np.random.default_rng(8)
        for _ in range(10):
            curve = rate_curve(random_instance(rng, max_nx=4))

            assert all(b <= a + 1e-6 for a, b in zip(curve.rates, curve.rates[1:]))

    def test_intervals_and_csv(self, fig5):
        """
        Given the planar curve
        When exporting it
        Then there is one CSV row per interval and the last one is unbounded
        """
        curve = rate_curve(fig5)

        intervals = curve.intervals()
        lines = curve_to_csv(curve).splitlines()

        assert intervals[0][0] == 0.0
        assert intervals[-1][1] == math.inf
        assert lines[0] == "eps_lo,eps_hi,rate"
        assert len(lines) == 5
        assert lines[-1].split(",")[1] == "inf"

    def test_shape_is_validated(self):
        """
        Given rates that do not match the breakpoints
        When building a curve
        Then validation fails
        """
        with pytest.raises(ValidationError):
            RateCurve(breakpoints=[1.0], rates=[1.0], hypergraphs=[[(0,)]])
        with pytest.raises(ValidationError):
            RateCurve(breakpoints=[1.0, 0.5], rates=[1.0, 0.5, 0.0], hypergraphs=[[(0,)]] * 3)

    def test_critical_epsilons_on_a_line(self):
        """
        Given the identity on {0, 1, 2}
        When listing the candidate breakpoints
        Then they are zero, the pairwise half-distances and the triple radius
        """
        inst = identity_instance([0.0, 1.0, 2.0], [1 / 3] * 3, 0.0)

        assert critical_epsilons(inst) == pytest.approx([0.0, 0.5, 1.0], abs=1e-12)

    def test_every_breakpoint_changes_the_hypergraph(self, random_instance):
        """
        Given random curves
        When building the hypergraph inside each interval and at each breakpoint
        Then the interval graph is the stored one and each breakpoint opens a different one
        """
        rng = np.random.default_rng(9)
        for _ in range(10):
            inst = random_instance(rng, max_nx=4)
            curve = rate_curve(inst)

            lows = [0.0] + curve.breakpoints
            for i, b in enumerate(curve.breakpoints):
                inside = build_hypergraph(inst.with_epsilon((lows[i] + b) / 2)).maximal_edges
                opened = build_hypergraph(inst.with_epsilon(b)).maximal_edges

                assert inside == curve.hypergraphs[i]
                assert opened == curve.hypergraphs[i + 1]
                assert inside != opened

    def test_interior_fidelity_reproduces_the_stored_rate(self, random_instance):
        """
        Given random curves
        When solving directly at a fidelity inside each interval
        Then the value matches the curve and the bound with no approximation error
        """
        rng = np.random.default_rng(10)
        for _ in range(10):
            inst = random_instance(rng, max_nx=4)
            curve = rate_curve(inst)

            lows = [0.0] + curve.breakpoints
            highs = curve.breakpoints + [lows[-1] + 1.0]
            for lo, hi in zip(lows, highs):
                eps = (lo + hi) / 2
                direct = solve_entropy(inst.with_epsilon(eps), build_hypergraph(inst.with_epsilon(eps))).value

                assert direct == pytest.approx(curve.evaluate(eps), abs=1e-6)
                assert approx_function_bound(inst, 0.0, eps) == pytest.approx(curve.evaluate(eps), abs=1e-6)


class TestBounds:
    """Behavior tests for the Lipschitz and approximate-function bounds."""

    def test_lipschitz_bound_scales_the_fidelity(self):
        """
        Given three equally spaced symbols
        When bounding the rate for several Lipschitz constants
        Then the hypergraph is built at epsilon / L
        """
        points = [0.0, 1.0, 2.0]
        px = [1 / 3] * 3

        assert lipschitz_bound(points, px, 1.0, 0.5) == pytest.approx(2 / 3, abs=1e-5)
        assert lipschitz_bound(points, px, 2.0, 1.0) == pytest.approx(2 / 3, abs=1e-5)
        assert lipschitz_bound(points, px, 1.0, 1.0) == pytest.approx(0.0, abs=1e-9)
        assert lipschitz_bound(points, px, 10.0, 1.0) == pytest.approx(math.log2(3), abs=1e-9)

    @pytest.mark.parametrize(
        "L, epsilon, expected",
        [
            (2.0, 2.0, 0.0),
            (1.0, 1.0, 0.0),
            (1.0, 0.99, 2 / 3),
            (4.0, 1.0, math.log2(3)),
        ],
    )
    def test_lipschitz_bound_on_three_uniform_symbols(self, L, epsilon, expected):
        """
        Given X uniform on {0, 1, 2}
        When bounding the rate for L-Lipschitz functions
        Then one edge gives zero, two overlapping edges give 2/3 and singletons give H(X)
        """
        assert lipschitz_bound([0.0, 1.0, 2.0], [1 / 3] * 3, L, epsilon) == pytest.approx(expected, abs=1e-4)

    @pytest.mark.parametrize("L, epsilon", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
    def test_lipschitz_preconditions(self, L, epsilon):
        """
        Given a nonpositive Lipschitz constant or fidelity
        When bounding the rate
        Then PreconditionViolated is raised
        """
        with pytest.raises(PreconditionViolated):
            lipschitz_bound([0.0, 1.0], [0.5, 0.5], L, epsilon)

    def test_approximation_bound_shrinks_the_fidelity(self, fig5):
        """
        Given a surrogate function and an approximation error
        When bounding the rate
        Then the surrogate's hypergraph at epsilon - 2 delta is used
        """
        assert approx_function_bound(fig5, 0.0, 0.95) == pytest.approx(2 / 3, abs=1e-5)
        assert approx_function_bound(fig5, 0.025, 0.95) == pytest.approx(math.log2(3), abs=1e-9)

    def test_approximation_bound_is_monotone_in_delta(self, fig5):
        """
        Given growing approximation errors
        When bounding the rate
        Then the bound never decreases
        """
        values = [approx_function_bound(fig5, delta, 1.2) for delta in (0.0, 0.05, 0.1, 0.2)]

        assert all(b >= a - 1e-6 for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("delta, epsilon", [(-0.1, 1.0), (0.5, 1.0), (0.6, 1.0)])
    def test_approximation_preconditions(self, fig5, delta, epsilon):
        """
        Given a negative delta or epsilon not above 2 delta
        When bounding the rate
        Then PreconditionViolated is raised
        """
        with pytest.raises(PreconditionViolated):
            approx_function_bound(fig5, delta, epsilon)
