from __future__ import annotations

from .chains import check_cor3_conditions, check_t2_conditions
from .corollaries import check_ar1_conditions, check_ou_conditions, check_ou_spacing
from .measures import (
    DiscreteJointMeasure,
    Interval,
    Rectangle,
    constant_measure,
    induced_measures,
    reflect_atom,
)
from .scenario import applicable_tags, check_scenario, check_t5_structure
from .strength import check_t1_mass_r1, check_t1_strength, check_t1_symmetry
from .threshold import check_t4_conditions, minimal_admissible_r
