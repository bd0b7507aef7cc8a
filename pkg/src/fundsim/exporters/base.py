from __future__ import annotations

from pathlib import Path
from typing import Any

from .exporter_fields import ExporterFields


class Exporter:
    file_extension: str

    def __init__(self, fields: type[ExporterFields] | None = None, filename: str | None = None, directory: str | Path = ".") -> None:
        self.fields = fields
        self.directory = Path(directory)

        if filename is None:
            self.filename = f"report.{self.file_extension}"
        elif not filename.lower().endswith(self.file_extension):
            self.filename = f"{filename}.{self.file_extension}"
        else:
            self.filename = filename

    @property
    def path(self) -> Path:
        return self.directory / self.filename

    def load(self, data: Any) -> Path:
        raise NotImplementedError
