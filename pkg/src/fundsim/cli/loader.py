from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from fundsim.exceptions import DomainError, ScenarioInvalid
from fundsim.schemas.scenario import Scenario


def json_pointer(loc: tuple[Any, ...]) -> str:
    """('processes', 0, 'theta') -> '/processes/0/theta'."""

    parts = []
    for part in loc:
        if part == "__root__":
            continue
        parts.append(str(part).replace("~", "~0").replace("/", "~1"))
    return "/" + "/".join(parts)


def _diagnostics(exc: ValidationError, prefix: tuple[Any, ...] = ()) -> list[str]:
    return [f"{json_pointer(prefix + error['loc'])}: {error['msg']}" for error in exc.errors()]


def parse_scenario(data: Any) -> Scenario:
    try:
        return Scenario.parse_obj(data)
    except ValidationError as exc:
        raise ScenarioInvalid(diagnostics=_diagnostics(exc)) from None
    except DomainError as exc:
        raise ScenarioInvalid(diagnostics=[f"/: {exc.detail}"]) from None


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ScenarioInvalid(diagnostics=[f"/: cannot read {path}: {exc.strerror}"], detail=f"Cannot read scenario {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioInvalid(diagnostics=[f"/: invalid JSON at line {exc.lineno}: {exc.msg}"], detail=f"Scenario {path} is not JSON") from None
    return parse_scenario(data)


def apply_overrides(scenario: Scenario, *, paths: int | None = None, seed: int | None = None) -> Scenario:
    """Command-line overrides of the Monte Carlo block, validated like the file itself."""

    try:
        return scenario.with_overrides(paths=paths, seed=seed)
    except ValidationError as exc:
        raise ScenarioInvalid(diagnostics=_diagnostics(exc, prefix=("mc",)), detail="Invalid command-line override") from None
