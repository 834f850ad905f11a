"""Oscillator quantum numbers for N-particle internal motion.

A state is the list of N-1 per-pair quantum numbers (n_i, l_i) plus the
space dimension D.  The solvers consume the single global quantum number

    Q = sum_i (2 n_i + l_i + D/2)          for D >= 2
    Q = sum_i (n_i + 1/2)                  for D = 1 (no angular part)

and, for the split-improved spectrum, its radial/angular parts

    radial  = sum_i (n_i + 1/2)
    angular = sum_i (l_i + (D-2)/2)

so that 2*radial + angular recovers Q exactly.  All values are exact
multiples of 1/2 and therefore exact in binary floating point.

No bosonic/fermionic filtering is applied: any list of quantum numbers is
accepted as given.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class StateSpec:
    """Per-pair quantum numbers (n_i, l_i) and the space dimension."""

    pairs: Tuple[Tuple[int, int], ...]
    dimension: int = 3

    def __post_init__(self):
        pairs = tuple((int(n), int(l)) for n, l in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.dimension!r}")
        for n, l in pairs:
            if n < 0 or l < 0:
                raise ValueError(f"quantum numbers must be non-negative, got ({n}, {l})")
            if self.dimension == 1 and l != 0:
                raise ValueError("D = 1 states have no angular part; all l must be 0")

    @property
    def n_particles(self) -> int:
        return len(self.pairs) + 1


@dataclass(frozen=True)
class QSplit:
    """Global quantum number and its radial/angular split (D >= 2)."""

    total: float
    radial: float
    angular: float


def global_quantum_number(state: StateSpec) -> float:
    """Q for the given state; minimal for the bosonic ground state."""
    if state.dimension == 1:
        return sum(n for n, _ in state.pairs) + 0.5 * len(state.pairs)
    return (sum(2 * n + l for n, l in state.pairs)
            + len(state.pairs) * state.dimension / 2.0)


def split_quantum_number(state: StateSpec) -> QSplit:
    """Radial/angular decomposition of Q; undefined for D = 1."""
    if state.dimension < 2:
        raise ValueError("the radial/angular split requires D >= 2")
    npairs = len(state.pairs)
    radial = sum(n for n, _ in state.pairs) + 0.5 * npairs
    angular = (sum(l for _, l in state.pairs)
               + npairs * (state.dimension - 2) / 2.0)
    return QSplit(global_quantum_number(state), radial, angular)


def bosonic_ground(n_particles: int, dimension: int = 3) -> StateSpec:
    """All internal excitations zero; Q = (N-1) * D / 2."""
    if n_particles < 2:
        raise ValueError(f"need at least 2 particles, got {n_particles}")
    return StateSpec(((0, 0),) * (n_particles - 1), dimension)


_PAIR_RE = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_state(text: str, n_particles: int, dimension: int = 3) -> StateSpec:
    """State from CLI notation: "ground" or "(n,l);(n,l);..." (N-1 pairs).

    For a single particle (mixed systems with one member in the identical
    set) "ground" maps to the empty state with Q = 0.
    """
    text = text.strip()
    if text.lower() == "ground":
        if n_particles == 1:
            return StateSpec((), dimension)
        return bosonic_ground(n_particles, dimension)
    pairs = []
    for chunk in text.split(";"):
        m = _PAIR_RE.match(chunk.strip())
        if not m:
            raise ValueError(
                f"cannot parse state component {chunk.strip()!r}; "
                "expected \"(n,l)\" entries separated by ';' or \"ground\"")
        pairs.append((int(m.group(1)), int(m.group(2))))
    if len(pairs) != n_particles - 1:
        raise ValueError(
            f"state needs exactly {n_particles - 1} (n,l) pairs for "
            f"{n_particles} particles, got {len(pairs)}")
    return StateSpec(tuple(pairs), dimension)
