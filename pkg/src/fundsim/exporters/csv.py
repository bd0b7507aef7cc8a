from __future__ import annotations

import csv
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from .base import Exporter
from .exporter_fields import CellFormats


class CSVExporter(Exporter):
    """
    Writes one row per model. Floats go through repr, so equal reports give
    byte-identical files.
    """

    file_extension = "csv"

    @staticmethod
    def _cell(value: Any, fmt: CellFormats) -> str:
        match fmt:
            case CellFormats.FLOAT:
                return repr(float(value))
            case CellFormats.OPTIONAL_FLOAT:
                return "" if value is None else repr(float(value))
            case CellFormats.INT:
                return str(int(value))
            case _:
                return "" if value is None else str(value)

    def load(self, data: list[BaseModel]) -> Path:
        if self.fields is None:
            raise ValueError("CSVExporter needs a field declaration")
        columns = self.fields.as_dict()
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.path, "w", newline="") as f:
            writer_obj = csv.writer(f, lineterminator="\n")
            writer_obj.writerow(columns.keys())
            writer_obj.writerows(
                [self._cell(getattr(item, field, None), fmt) for field, fmt in columns.items()] for item in data
            )
        return self.path
