from __future__ import annotations

from .base import Exporter
from .csv import CSVExporter
from .exporter_fields import CellFormats, ExporterFields, LogRatioFields
from .json import JSONExporter
