from __future__ import annotations

import enum
from typing import Any, Iterable


class CellFormats(enum.Enum):
    FLOAT = "FLOAT"
    OPTIONAL_FLOAT = "OPTIONAL_FLOAT"
    INT = "INT"
    STR = "STR"


class ExporterFields:
    """
    Column declarations: each class attribute names a column and maps to the
    CellFormats used to write it.
    """

    @classmethod
    def _class_attrs(cls) -> Iterable[tuple[str, Any]]:
        for klass in reversed(cls.__mro__):
            for k, v in klass.__dict__.items():
                if not k.startswith("_") and isinstance(v, CellFormats):
                    yield k, v

    @classmethod
    def as_dict(cls) -> dict[str, CellFormats]:
        return {k: v for k, v in cls._class_attrs()}


class LogRatioFields(ExporterFields):
    t = CellFormats.FLOAT
    estimate = CellFormats.FLOAT
    stderr = CellFormats.FLOAT
    ci_low = CellFormats.FLOAT
    ci_high = CellFormats.FLOAT
    method = CellFormats.STR
    paths = CellFormats.INT
    increment = CellFormats.OPTIONAL_FLOAT
    increment_stderr = CellFormats.OPTIONAL_FLOAT
    increment_lower = CellFormats.OPTIONAL_FLOAT
    increment_upper = CellFormats.OPTIONAL_FLOAT
