from __future__ import annotations

from importlib.resources import files
from pathlib import Path

BUNDLED = (
    "counterexample_s1",
    "counterexample_full_reversion",
    "ou_cor1",
    "ar1_white_noise",
    "markov_cor3",
)


def bundled(name: str) -> Path:
    """Path of a scenario file shipped with the package."""

    if name not in BUNDLED:
        raise KeyError(f"No bundled scenario named {name!r}; choose from {', '.join(BUNDLED)}")
    return Path(str(files(__name__) / f"{name}.json"))
