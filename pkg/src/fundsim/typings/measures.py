from __future__ import annotations

Atom = tuple[float, float]
AtomMasses = dict[Atom, float]

# lattice kernels: integer state -> {integer target state: probability}
Row = dict[int, float]
Transitions = dict[int, Row]
