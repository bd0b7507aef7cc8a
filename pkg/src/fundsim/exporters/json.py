from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel
from pydantic.json import pydantic_encoder

from .base import Exporter


class JSONExporter(Exporter):
    file_extension = "json"

    def load(self, data: BaseModel | list[BaseModel]) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        if isinstance(data, BaseModel):
            text = data.json(indent=2)
        else:
            text = json.dumps(data, default=pydantic_encoder, indent=2)
        self.path.write_text(text + "\n")
        return self.path
