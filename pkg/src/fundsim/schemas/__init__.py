from __future__ import annotations

from .processes import (
    AR1Spec,
    ConstantSpec,
    DegenerateDist,
    LatticeKernel,
    LatticePmf,
    NormalDist,
    OUSpec,
    ProcessSpec,
    SymmetricDist,
    TwoPointDist,
    UniformDist,
)
from .reports import (
    ConditionReport,
    ConditionResult,
    LogRatioEntry,
    LogRatioReport,
    Provenance,
    RunSummary,
    Witness,
)
from .scenario import McSettings, Scenario, T4Settings
