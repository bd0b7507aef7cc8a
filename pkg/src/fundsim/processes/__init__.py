from __future__ import annotations

from .lattice import (
    count_trajectories,
    enumerate_trajectories,
    increment_pmf_states,
    kernel_increment_pmf,
    marginals,
    reachable_states,
    step_states,
)
from .ou import ou_transition
from .rng import MAX_SEED, stream_for
from .sampling import sample_path, sample_paths
