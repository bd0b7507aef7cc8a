from __future__ import annotations

from .arrays import FloatArray, IntArray
from .measures import Atom, AtomMasses, Row, Transitions
