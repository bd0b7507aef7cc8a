from __future__ import annotations

from .commands import cmd_check, cmd_counterexample, cmd_run, counterexample_spec, run_scenario
from .loader import apply_overrides, json_pointer, load_scenario, parse_scenario
from .main import build_parser, main
from .verdicts import verdict_for, verdicts_for
