"""Registered checks at reduced sizes, and the mutations each must catch."""

import numpy as np

from warpkit.experiments import load_config
from warpkit.experiments.checks import CHECKS
from warpkit.experiments.checks.field import RigidityArgs, twopoint_rigidity
from warpkit.experiments.checks.musc import GeometryArgs, musc_geometry, padded_immersion, random_multigraph
from warpkit.experiments.checks.oscillatory import (
    DEFAULT_CASES,
    DEFAULT_TRIPLES,
    CutoffIndependenceArgs,
    GaussianOracleArgs,
    IntertwinerArgs,
    IterationBoundArgs,
    TrivialIntegralArgs,
    gaussian_oracle,
    intertwiner,
    iteration_bound,
    prop38_suite,
)
from warpkit.musc.graph import instantiates
from warpkit.musc.reduction import prune_graph


def test_registered_names():
    assert {"prop38_suite", "musc_geometry", "vacuum_musc", "warp_laws"} <= set(CHECKS.names())


class TestMuscGeometry:
    def test_small_run_passes(self):
        result = musc_geometry(GeometryArgs(n_pairs=40, n_singletons=10, n_trials=25, seed=5))
        assert result.status.is_passed(), result.status.summary()
        assert [row[0] for row in result.table.rows] == ["gamma2_closed_form", "gamma1_empty", "pruning", "reduction"]
        assert result.metrics["gamma2_disagreements"] == 0
        assert result.metrics["nullified_edges"] > 0

    def test_seeded(self):
        a = musc_geometry(GeometryArgs(n_pairs=10, n_singletons=2, n_trials=5, seed=1))
        b = musc_geometry(GeometryArgs(n_pairs=10, n_singletons=2, n_trials=5, seed=1))
        assert a.model_dump() == b.model_dump()

    def test_generators(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            g, c, leading, trailing = padded_immersion(rng)
            pruned = prune_graph(g, c, leading, trailing)
            assert instantiates(pruned, c.middle(leading, trailing))
            assert all(any(e.covector) for e in pruned.edges)
            assert random_multigraph(rng).n_vertices >= 2


class TestIterationBound:
    def test_formula_and_refusal_without_evaluation(self):
        result = iteration_bound(IterationBoundArgs(evaluate_k=[]))
        assert result.status.is_passed(), result.status.summary()
        assert len(result.table.rows) == len(DEFAULT_TRIPLES) == 12

    def test_one_evaluated_triple(self):
        result = iteration_bound(IterationBoundArgs(triples=[(0.0, 1.0, 1)], evaluate_k=[1]))
        assert result.status.is_passed(), result.status.summary()
        (row,) = result.table.rows
        assert row[3] == 2
        assert row[-1] is True

    def test_two_dimensional_triples(self):
        rows = [(0.0, 1.0, 2), (-4.0, 0.5, 2), (-5.0, 1.0, 2)]
        result = iteration_bound(IterationBoundArgs(triples=rows, evaluate_k=[2]))
        assert result.status.is_passed(), result.status.summary()
        assert [row[3] for row in result.table.rows] == [3, 1, 0]
        assert all(row[5] is not None and row[6] is not None for row in result.table.rows)

    def test_every_default_triple_is_evaluated(self):
        assert {k for _, _, k in DEFAULT_TRIPLES} <= set(IterationBoundArgs().evaluate_k)

    def test_bundled_config_evaluates_both_dimensions(self):
        (entry,) = load_config("iteration_bound").checks
        args = IterationBoundArgs.model_validate(entry.params)
        assert args.evaluate_k == [1, 2]
        assert args.bulk_radius == {1: 16.0, 2: 3.0}


class TestCutoffIndependence:
    def test_full_family_by_default(self):
        assert CutoffIndependenceArgs().k == [1, 2]
        (entry,) = load_config("cutoff_independence").checks
        assert CutoffIndependenceArgs.model_validate(entry.params).k == [1, 2]


class TestTrivialSuite:
    def test_regularized_two_dimensional_members(self):
        args = TrivialIntegralArgs(k=[2], methods=["regularized"], min_members=4)
        result = prop38_suite(args)
        assert result.status.is_passed(), result.status.summary()
        assert len(result.table.rows) == 4
        assert result.metrics["max_relative_error_regularized"] <= 1e-3
        assert not result.status.diagnostics


class TestIntertwiner:
    def test_singular_profile_against_closed_form(self):
        cases = [c for c in DEFAULT_CASES if c.label == "inverse_sqrt_profile"]
        result = intertwiner(IntertwinerArgs(cases=cases))
        assert result.status.is_passed(), result.status.summary()
        (row,) = result.table.rows
        assert row[4] is not None
        assert result.metrics["max_oracle_error"] <= 1e-3


def test_gaussian_oracle_fiber():
    result = gaussian_oracle(GaussianOracleArgs(family=False))
    assert result.status.is_passed(), result.status.summary()
    assert abs(result.metrics["value"] - 5**-0.5) <= 1e-6 * 5**-0.5


def test_rigidity_separation_is_enforced():
    result = twopoint_rigidity(RigidityArgs(n_pairs=1, separation=1e30))
    assert not result.status.is_passed()
    assert "differs from the undeformed one by only" in result.status.errors[-1]
