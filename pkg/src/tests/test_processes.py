from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError, parse_obj_as

from fundsim.exceptions import DomainError, EnumerationBudgetExceeded, MissingKernelRow
from fundsim.market import RebalanceSchedule
from fundsim.processes import (
    MAX_SEED,
    count_trajectories,
    enumerate_trajectories,
    increment_pmf_states,
    kernel_increment_pmf,
    marginals,
    ou_transition,
    reachable_states,
    sample_path,
    sample_paths,
    step_states,
    stream_for,
)
from fundsim.schemas import (
    AR1Spec,
    ConstantSpec,
    DegenerateDist,
    LatticeKernel,
    LatticePmf,
    NormalDist,
    OUSpec,
    ProcessSpec,
    TwoPointDist,
    UniformDist,
)

OU_UNIT = OUSpec(theta=1.0, sigma=1.0, init=TwoPointDist(v=1.0))


class TestOUTransition:
    def test_mean_at_the_critical_spacing(self) -> None:
        mean, _ = ou_transition(1.0, math.log(2.0), OU_UNIT)
        assert mean == pytest.approx(-0.5, abs=1e-15)

    def test_mean_vanishes_at_zero(self) -> None:
        mean, _ = ou_transition(0.0, 0.37, OU_UNIT)
        assert mean == 0.0

    def test_variance(self) -> None:
        _, variance = ou_transition(1.0, math.log(2.0), OU_UNIT)
        assert variance == pytest.approx(0.375, abs=1e-15)

    def test_rejects_non_positive_steps(self) -> None:
        with pytest.raises(DomainError):
            ou_transition(1.0, 0.0, OU_UNIT)


class TestStreams:
    def test_same_key_same_stream(self) -> None:
        first = stream_for(7, 3, 1).random(5)
        second = stream_for(7, 3, 1).random(5)
        np.testing.assert_array_equal(first, second)

    def test_distinct_keys_distinct_streams(self) -> None:
        base = stream_for(7, 0, 0).random(5)
        assert not np.array_equal(base, stream_for(7, 1, 0).random(5))
        assert not np.array_equal(base, stream_for(7, 0, 1).random(5))
        assert not np.array_equal(base, stream_for(8, 0, 0).random(5))

    @pytest.mark.parametrize("seed", [-1, MAX_SEED + 1])
    def test_rejects_bad_seeds(self, seed: int) -> None:
        with pytest.raises(DomainError):
            stream_for(seed, 0, 0)


class TestDistributions:
    def test_two_point_support(self) -> None:
        draws = TwoPointDist(v=1.5).sample(np.random.default_rng(0), 1000)
        assert set(np.unique(draws)) == {-1.5, 1.5}

    def test_uniform_range(self) -> None:
        draws = UniformDist(v=2.0).sample(np.random.default_rng(0), 1000)
        assert np.all(np.abs(draws) <= 2.0)

    def test_normal_is_unbounded(self) -> None:
        assert NormalDist(sigma=1.0).unbounded_above
        assert not UniformDist(v=1.0).unbounded_above

    def test_degenerate(self) -> None:
        dist = DegenerateDist()
        assert dist.is_trivial
        np.testing.assert_array_equal(dist.sample(np.random.default_rng(0), 3), np.zeros(3))

    def test_lattice_pmf(self) -> None:
        dist = LatticePmf(s=0.5, weights={1: 0.7, -1: 0.3})
        assert dist.pmf() == {-0.5: 0.3, 0.5: 0.7}
        assert not dist.is_symmetric()
        assert LatticePmf(s=0.5, weights={2: 0.5, -2: 0.5}).is_symmetric()
        assert LatticePmf(s=0.5, weights={0: 1.0}).is_trivial
        draws = dist.sample(np.random.default_rng(0), 1000)
        assert set(np.unique(draws)) == {-0.5, 0.5}

    @pytest.mark.parametrize("weights", [{}, {1: 0.5}, {1: 1.5, -1: -0.5}])
    def test_lattice_pmf_must_sum_to_one(self, weights: dict[int, float]) -> None:
        with pytest.raises(ValidationError):
            LatticePmf(s=1.0, weights=weights)


class TestProcessSpecs:
    def test_discriminated_parsing(self) -> None:
        spec = parse_obj_as(ProcessSpec, {"kind": "ou", "theta": 1, "sigma": 1, "init": {"kind": "two_point", "v": 1}})
        assert isinstance(spec, OUSpec)
        assert isinstance(spec.init, TwoPointDist)

    def test_lattice_keys_are_integers(self) -> None:
        spec = parse_obj_as(
            ProcessSpec,
            {"kind": "lattice", "s": 1.0, "transitions": {"1": {"2": 0.4, "0": 0.6}}, "init": {"1": 1.0}},
        )
        assert spec.row(1) == {2: 0.4, 0: 0.6}

    @pytest.mark.parametrize(
        "payload",
        [
            {"kind": "ou", "theta": 0, "sigma": 1, "init": {"kind": "degenerate"}},
            {"kind": "ou", "theta": 1, "sigma": -1, "init": {"kind": "degenerate"}},
            {"kind": "ar1", "theta": "nan", "noise": {"kind": "degenerate"}, "init": {"kind": "degenerate"}},
            {"kind": "lattice", "s": 1.0, "transitions": {"0": {"0": 0.5}}, "init": {"0": 1.0}},
            {"kind": "brownian"},
        ],
    )
    def test_rejects_invalid_payloads(self, payload: dict) -> None:
        with pytest.raises(ValidationError):
            parse_obj_as(ProcessSpec, payload)

    def test_missing_row_names_the_state(self, random_walk_kernel: LatticeKernel) -> None:
        with pytest.raises(MissingKernelRow) as exc_info:
            random_walk_kernel.row(5)
        assert exc_info.value.state == 5

    def test_constant_detection(self) -> None:
        assert ConstantSpec().is_constant
        assert LatticeKernel(s=1.0, transitions={0: {0: 1.0}}, init={0: 1.0}).is_constant
        assert not OU_UNIT.is_constant


class TestLattice:
    def test_increment_pmf(self) -> None:
        kernel = LatticeKernel(s=0.5, transitions={1: {2: 0.4, 0: 0.6}}, init={1: 1.0})
        assert increment_pmf_states(kernel, 1) == {(1, -1): 0.6, (1, 1): 0.4}
        assert kernel_increment_pmf(kernel, 1) == {(0.5, -0.5): 0.6, (0.5, 0.5): 0.4}

    def test_identity_row_has_no_increment(self) -> None:
        kernel = LatticeKernel(s=1.0, transitions={3: {3: 1.0}}, init={3: 1.0})
        assert kernel_increment_pmf(kernel, 3) == {(3.0, 0.0): 1.0}

    def test_random_walk_row_has_two_equal_atoms(self, random_walk_kernel: LatticeKernel) -> None:
        assert kernel_increment_pmf(random_walk_kernel, 1) == {(1.0, -1.0): 0.5, (1.0, 1.0): 0.5}

    def test_marginals_and_reachability(self) -> None:
        kernel = LatticeKernel(s=1.0, transitions={1: {0: 1.0}, -1: {0: 1.0}, 0: {0: 1.0}}, init={1: 0.5, -1: 0.5})
        assert marginals(kernel, 2) == [{1: 0.5, -1: 0.5}, {0: 1.0}, {0: 1.0}]
        assert reachable_states(kernel, 1) == [{1, -1}, {0}]

    def test_missing_reachable_row(self, random_walk_kernel: LatticeKernel) -> None:
        with pytest.raises(MissingKernelRow):
            marginals(random_walk_kernel, 2)

    def test_enumeration(self) -> None:
        kernel = LatticeKernel(s=1.0, transitions={1: {2: 0.4, 0: 0.6}, -1: {-2: 0.4, 0: 0.6}}, init={1: 0.5, -1: 0.5})
        states, probs = enumerate_trajectories(kernel, 1)
        assert states.shape == (4, 2)
        assert math.fsum(probs) == pytest.approx(1.0)
        assert count_trajectories(kernel, 1) == 4
        assert {tuple(row) for row in states} == {(-1, -2), (-1, 0), (1, 0), (1, 2)}

    def test_enumeration_budget(self) -> None:
        kernel = LatticeKernel(s=1.0, transitions={0: {1: 0.5, 0: 0.5}, 1: {1: 0.5, 0: 0.5}}, init={0: 1.0})
        assert count_trajectories(kernel, 4) == 16
        with pytest.raises(EnumerationBudgetExceeded) as exc_info:
            enumerate_trajectories(kernel, 4, limit=10)
        assert exc_info.value.budget == 10
        assert exc_info.value.size > 10

    def test_horizon_bounds(self, random_walk_kernel: LatticeKernel) -> None:
        with pytest.raises(DomainError):
            marginals(random_walk_kernel, -1)

    def test_step_states_follow_the_kernel(self) -> None:
        kernel = LatticeKernel(s=1.0, transitions={1: {2: 0.4, 0: 0.6}}, init={1: 1.0})
        following = step_states(kernel, np.ones(20000, dtype=np.int64), np.random.default_rng(5))
        assert set(np.unique(following)) == {0, 2}
        assert np.mean(following == 2) == pytest.approx(0.4, abs=0.02)


class TestSampling:
    def test_ou_first_value_is_on_the_init_support(self) -> None:
        paths = sample_paths(OU_UNIT, RebalanceSchedule.unit(3), np.random.default_rng(1), 100)
        assert paths.shape == (100, 4)
        assert set(np.unique(paths[:, 0])) <= {-1.0, 1.0}

    def test_ou_step_mean(self) -> None:
        spec = OUSpec(theta=1.0, sigma=1.0, init=LatticePmf(s=1.0, weights={1: 1.0}))
        paths = sample_paths(spec, RebalanceSchedule([0.0, math.log(2.0)]), np.random.default_rng(2), 40000)
        increments = paths[:, 1] - paths[:, 0]
        assert np.mean(increments) == pytest.approx(-0.5, abs=0.02)
        assert np.var(increments) == pytest.approx(0.375, abs=0.02)

    def test_ar1_white_noise(self) -> None:
        spec = AR1Spec(theta=0.0, noise=NormalDist(sigma=1.0), init=DegenerateDist())
        paths = sample_paths(spec, RebalanceSchedule.unit(2), np.random.default_rng(3), 20000)
        np.testing.assert_array_equal(paths[:, 0], 0.0)
        assert np.std(paths[:, 2]) == pytest.approx(1.0, abs=0.03)

    def test_lattice_paths_stay_on_the_lattice(self) -> None:
        kernel = LatticeKernel(s=0.5, transitions={1: {2: 0.4, 0: 0.6}, 2: {2: 1.0}, 0: {0: 1.0}}, init={1: 1.0})
        path = sample_path(kernel, RebalanceSchedule.unit(2), np.random.default_rng(4))
        assert path[0] == 0.5
        assert path[1] in {0.0, 1.0}
        assert path[2] == path[1]

    def test_constant(self) -> None:
        np.testing.assert_array_equal(
            sample_paths(ConstantSpec(), RebalanceSchedule.unit(2), np.random.default_rng(0), 3), np.zeros((3, 3))
        )

    @pytest.mark.parametrize(
        "spec, schedule",
        [
            (OU_UNIT, RebalanceSchedule([0.0, math.log(2.0), 2 * math.log(2.0), 3 * math.log(2.0)])),
            (AR1Spec(theta=0.5, noise=NormalDist(sigma=1.0), init=TwoPointDist(v=1.0)), RebalanceSchedule.unit(3)),
            (
                LatticeKernel(
                    s=0.5,
                    transitions={1: {2: 0.2, 0: 0.4, -1: 0.4}, -1: {-2: 0.2, 0: 0.4, 1: 0.4}, 2: {1: 1.0}, -2: {-1: 1.0}, 0: {1: 0.5, -1: 0.5}},
                    init={1: 0.5, -1: 0.5},
                ),
                RebalanceSchedule.unit(3),
            ),
        ],
    )
    def test_symmetric_specs_stay_symmetric(self, spec: ProcessSpec, schedule: RebalanceSchedule) -> None:
        paths = sample_paths(spec, schedule, stream_for(17, 0, 0), 100_000)
        means = paths.mean(axis=0)
        stderrs = paths.std(axis=0, ddof=1) / np.sqrt(len(paths))
        # Y and -Y differ in mean by 2 * mean with standard error 2 * stderr
        assert np.all(np.abs(means) <= 4 * stderrs)

    def test_skewed_start_is_visible(self) -> None:
        spec = OUSpec(theta=1.0, sigma=1.0, init=LatticePmf(s=1.0, weights={1: 0.7, -1: 0.3}))
        paths = sample_paths(spec, RebalanceSchedule.unit(1), stream_for(17, 0, 0), 100_000)
        assert abs(paths[:, 0].mean()) > 4 * paths[:, 0].std(ddof=1) / np.sqrt(len(paths))
