"""Tests for problem instances, probability helpers and distortion evaluation."""

import math

import numpy as np
import pytest

from hypergraph_coding.core.channel import QuantizerChannel, ReconstructionMap
from hypergraph_coding.core.errors import ChannelError, DimensionMismatchError, InstanceError
from hypergraph_coding.core.model import (
    Distribution,
    ErrorReport,
    ProblemInstance,
    cmi_from_rows,
    conditional_mutual_information,
    distortion_eps,
    entropy,
    identity_instance,
    independent_instance,
    mutual_information_xw,
    p_avg,
    sample_pairs,
)


def _instance(**overrides):
    data = dict(nx=2, ny=1, dim=1, epsilon=0.5, p=[[0.5], [0.5]], f=[[[0.0]], [[1.0]]])
    data.update(overrides)
    return ProblemInstance(**data)


class TestProblemInstance:
    """Behavior tests for instance validation and derived distributions."""

    def test_valid_instance_exposes_arrays(self, example2):
        """
        Given a bundled instance
        When reading its tables
        Then the pmf and the function table have the declared shapes
        """
        assert example2.p_matrix.shape == (3, 2)
        assert example2.f_table.shape == (3, 2, 2)
        assert example2.px == pytest.approx([1 / 3] * 3)
        assert example2.py == pytest.approx([0.5, 0.5])

    @pytest.mark.parametrize(
        "overrides, field",
        [
            ({"p": [[0.5], [0.6]]}, "p"),
            ({"p": [[1.5], [-0.5]]}, "p"),
            ({"p": [[0.5, 0.0], [0.5, 0.0]]}, "p"),
            ({"epsilon": -0.1}, "epsilon"),
            ({"epsilon": math.inf}, "epsilon"),
            ({"nx": 0, "p": [], "f": []}, "nx"),
        ],
    )
    def test_invalid_instances_name_the_field(self, overrides, field):
        """
        Given an instance that breaks an invariant
        When it is constructed
        Then an InstanceError names the offending field
        """
        with pytest.raises(InstanceError) as info:
            _instance(**overrides)

        assert info.value.field == field

    def test_inconsistent_point_dimension(self):
        """
        Given a function value with the wrong number of coordinates
        When the instance is constructed
        Then a DimensionMismatchError is raised
        """
        with pytest.raises(DimensionMismatchError):
            _instance(f=[[[0.0]], [[1.0, 2.0]]])

    def test_rounding_within_tolerance_is_accepted(self):
        """
        Given probabilities that sum to one up to floating point rounding
        When the instance is constructed
        Then it is accepted
        """
        inst = _instance(nx=3, p=[[0.1], [0.2], [0.7]], f=[[[0.0]], [[1.0]], [[2.0]]])

        assert inst.px.sum() == pytest.approx(1.0)

    def test_marginals_and_conditionals(self, example1):
        """
        Given dependent X and Y
        When computing marginals and conditionals
        Then they match the joint pmf
        """
        assert example1.marginal_x().probs == pytest.approx([2 / 7, 3 / 7, 2 / 7])
        assert example1.marginal_y().probs == pytest.approx([3 / 7, 3 / 7, 1 / 7])
        assert example1.conditional_x_given_y(2).probs == pytest.approx([0.0, 1.0, 0.0])
        assert example1.conditional_y_given_x(0).probs == pytest.approx([0.5, 0.5, 0.0])
        assert not example1.is_independent()

    def test_conditional_on_zero_probability(self):
        """
        Given a side-information symbol of probability zero
        When conditioning on it
        Then an InstanceError is raised
        """
        inst = _instance(ny=2, p=[[0.5, 0.0], [0.5, 0.0]], f=[[[0.0], [0.0]], [[1.0], [1.0]]])

        with pytest.raises(InstanceError):
            inst.conditional_x_given_y(1)

    def test_with_px_builds_independent_copy(self, example1):
        """
        Given a dependent instance
        When replacing p(x)
        Then the copy is independent with the requested marginal
        """
        copy = example1.with_px([0.2, 0.3, 0.5], py=[0.25, 0.25, 0.5])

        assert copy.is_independent()
        assert copy.px == pytest.approx([0.2, 0.3, 0.5])
        assert copy.f == example1.f

    def test_with_epsilon_keeps_everything_else(self, fig5):
        """
        Given an instance
        When changing the fidelity
        Then only epsilon differs
        """
        copy = fig5.with_epsilon(2.0)

        assert copy.epsilon == 2.0
        assert copy.p == fig5.p
        assert copy.f == fig5.f

    def test_identity_instance(self):
        """
        Given one-dimensional points and probabilities
        When building the identity instance
        Then every symbol maps to its own point without side information
        """
        inst = identity_instance([0.0, 1.0, 2.0], [0.25, 0.25, 0.5], 0.5)

        assert (inst.nx, inst.ny, inst.dim) == (3, 1, 1)
        assert inst.f_table[:, 0, 0].tolist() == [0.0, 1.0, 2.0]

    def test_identity_instance_length_mismatch(self):
        """
        Given more points than probabilities
        When building the identity instance
        Then a DimensionMismatchError is raised
        """
        with pytest.raises(DimensionMismatchError):
            identity_instance([[0.0], [1.0]], [1.0], 0.5)

    def test_independent_instance(self):
        """
        Given marginals and a function table
        When building an independent instance
        Then p(x, y) is the product of the marginals
        """
        inst = independent_instance([0.5, 0.5], [0.25, 0.75], [[[0.0], [1.0]], [[2.0], [3.0]]], 0.0)

        assert inst.p_matrix == pytest.approx(np.array([[0.125, 0.375], [0.125, 0.375]]))
        assert inst.is_independent()


class TestDistortion:
    """Behavior tests for the maximal-distortion indicator."""

    def test_boundary_counts_as_within(self, example2):
        """
        Given a reconstruction exactly epsilon away from f(x, y)
        When evaluating the indicator
        Then it reports no error
        """
        center = [1.5, 1.75]

        assert distortion_eps(example2, 0, 0, center) == 0
        assert distortion_eps(example2, 1, 0, center) == 0
        assert distortion_eps(example2, 2, 0, center) == 1

    def test_dimension_mismatch(self, example2):
        """
        Given a point of the wrong dimension
        When evaluating the indicator
        Then a DimensionMismatchError is raised
        """
        with pytest.raises(DimensionMismatchError):
            distortion_eps(example2, 0, 0, [1.0])

    def test_p_avg_counts_violations(self, fig5):
        """
        Given reconstructions with one far point and one undefined point
        When computing the average error probability
        Then both are counted as violations
        """
        xs = [0, 1, 2, 0]
        ys = [0, 0, 0, 0]
        zs = [[1.0, 1.0], [2.0, 2.5], [10.0, 10.0], [math.nan, math.nan]]

        report = p_avg(fig5, xs, ys, zs)

        assert report == ErrorReport(n=4, violations=2, p_avg=0.5)

    def test_p_avg_rejects_ragged_input(self, fig5):
        """
        Given sequences of different lengths
        When computing the average error probability
        Then a DimensionMismatchError is raised
        """
        with pytest.raises(DimensionMismatchError):
            p_avg(fig5, [0, 1], [0], [[1.0, 1.0]])

    @pytest.mark.parametrize("x, y", [(-1, 0), (3, 0), (0, 1), (0, -1)])
    def test_indicator_rejects_symbols_outside_the_alphabets(self, fig5, x, y):
        """
        Given a source or side-information symbol outside its alphabet
        When evaluating the indicator
        Then an InstanceError is raised instead of wrapping around
        """
        with pytest.raises(InstanceError):
            distortion_eps(fig5, x, y, [1.0, 1.0])

    @pytest.mark.parametrize("xs, ys", [([0, -1], [0, 0]), ([0, 3], [0, 0]), ([0, 1], [0, 1])])
    def test_p_avg_rejects_symbols_outside_the_alphabets(self, fig5, xs, ys):
        """
        Given sequences holding a negative or too large symbol
        When computing the average error probability
        Then an InstanceError is raised
        """
        with pytest.raises(InstanceError):
            p_avg(fig5, xs, ys, [[1.0, 1.0], [2.0, 2.5]])

    def test_p_avg_ignores_order(self, example1):
        """
        Given a block of triples and a permutation of it
        When computing the average error probability of both
        Then the reports are equal
        """
        rng = np.random.default_rng(3)
        xs, ys = sample_pairs(example1, 200, rng)
        zs = example1.f_table[xs, ys] + rng.choice([0.0, 1.0], size=(200, example1.dim))
        order = rng.permutation(200)

        assert p_avg(example1, xs, ys, zs) == p_avg(example1, xs[order], ys[order], zs[order])


class TestInformationMeasures:
    """Behavior tests for entropies and mutual informations."""

    def test_entropy_in_bits(self):
        """
        Given uniform and degenerate distributions
        When computing their entropy
        Then the values are log2 of the support size
        """
        assert entropy([0.25] * 4) == pytest.approx(2.0)
        assert entropy(Distribution(probs=[1.0, 0.0])) == pytest.approx(0.0)

    def test_distribution_must_be_normalized(self):
        """
        Given probabilities that do not sum to one
        When building a distribution
        Then validation fails
        """
        with pytest.raises(InstanceError):
            Distribution(probs=[0.5, 0.6])

    def test_identity_channel_reveals_the_source(self):
        """
        Given the identity channel
        When computing I(W;X)
        Then it equals H(X)
        """
        px = [0.5, 0.25, 0.25]

        assert mutual_information_xw(px, np.eye(3)) == pytest.approx(1.5)

    def test_conditional_mutual_information_of_deterministic_quantizer(self, example1):
        """
        Given the clustering {0}, {1, 2} of a dependent instance
        When computing I(W;X|Y)
        Then it equals H(W|Y) = 6/7 h(1/3)
        """
        channel = QuantizerChannel(edges=[(1, 2), (0,)], rows=np.array([[0.0, 1.0], [1.0, 0.0], [1.0, 0.0]]))
        h = -(1 / 3) * math.log2(1 / 3) - (2 / 3) * math.log2(2 / 3)

        assert conditional_mutual_information(example1, channel) == pytest.approx(6 / 7 * h)

    def test_conditional_mutual_information_matches_entropy_difference(self):
        """
        Given random joints and random channels with any number of outputs
        When computing I(W;X|Y)
        Then it equals H(W|Y) - H(W|X,Y) and is never negative
        """
        rng = np.random.default_rng(21)
        for _ in range(50):
            nx, ny, nw = (int(v) for v in rng.integers(2, 5, size=3))
            p = rng.random((nx, ny)) * (rng.random((nx, ny)) > 0.2)
            p[0, 0] += 0.1
            p /= p.sum()
            rows = rng.dirichlet(np.ones(nw), size=nx)

            h_w_given_y = sum(
                p[:, y].sum() * entropy(p[:, y] @ rows / p[:, y].sum()) for y in range(ny) if p[:, y].sum() > 0
            )
            h_w_given_xy = sum(p[x, y] * entropy(rows[x]) for x in range(nx) for y in range(ny))
            value = cmi_from_rows(p, rows)

            assert value >= 0.0
            assert value == pytest.approx(h_w_given_y - h_w_given_xy, abs=1e-10)

    def test_conditional_mutual_information_vanishes_only_for_conditionally_independent_w(self):
        """
        Given a fully supported joint
        When the channel ignores x, and when its rows differ
        Then I(W;X|Y) is zero exactly in the first case
        """
        rng = np.random.default_rng(22)
        for _ in range(20):
            p = rng.random((3, 2)) + 0.05
            p /= p.sum()
            shared = rng.dirichlet(np.ones(3))
            distinct = rng.dirichlet(np.ones(3), size=3)

            assert cmi_from_rows(p, np.tile(shared, (3, 1))) == pytest.approx(0.0, abs=1e-12)
            assert cmi_from_rows(p, distinct) > 1e-6

    def test_channel_rows_must_be_normalized(self, fig5):
        """
        Given a channel row of a positive-probability vertex that does not sum to one
        When computing I(W;X|Y)
        Then a ChannelError is raised
        """
        channel = QuantizerChannel(edges=[(0, 1), (1, 2)], rows=np.array([[1.0, 0.0], [0.3, 0.3], [0.0, 1.0]]))

        with pytest.raises(ChannelError):
            conditional_mutual_information(fig5, channel)

    def test_channel_mass_outside_edge(self):
        """
        Given a channel that puts mass on an edge not containing the vertex
        When it is constructed
        Then a ChannelError is raised
        """
        with pytest.raises(ChannelError):
            QuantizerChannel(edges=[(0,), (1,)], rows=np.array([[0.5, 0.5], [0.0, 1.0]]))

    def test_reconstruction_map_undefined_points(self):
        """
        Given a reconstruction map with an undefined pair
        When looking it up and serializing
        Then the pair reads as None
        """
        recon = ReconstructionMap(edges=[(0,)], points=np.array([[[1.0], [math.nan]]]))

        assert recon.g(0, 0).tolist() == [1.0]
        assert recon.g(0, 1) is None
        assert recon.to_dict()["points"] == [[[1.0], None]]


class TestSampling:
    """Behavior tests for i.i.d. sampling from p(x, y)."""

    def test_frequencies_follow_the_pmf(self, example1):
        """
        Given a joint pmf with zero cells
        When drawing many pairs
        Then empirical frequencies approach p(x, y) and zero cells never occur
        """
        # Given
        rng = np.random.default_rng(7)

        # When
        xs, ys = sample_pairs(example1, 40_000, rng)

        # Then
        counts = np.zeros((3, 3))
        np.add.at(counts, (xs, ys), 1)
        assert counts[0, 2] == 0 and counts[2, 2] == 0
        assert counts / counts.sum() == pytest.approx(example1.p_matrix, abs=0.01)

    def test_seed_reproducibility(self, fig5):
        """
        Given two generators with the same seed
        When sampling
        Then the draws are identical
        """
        first = sample_pairs(fig5, 100, np.random.default_rng(3))
        second = sample_pairs(fig5, 100, np.random.default_rng(3))

        assert np.array_equal(first[0], second[0])
        assert np.array_equal(first[1], second[1])
