"""Problem instances and solver results."""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterable

from .classes import ClassFamily, is_scattered_modulator
from .graph import Graph, GraphError


class InvariantViolation(AssertionError):
    """A solver produced an answer that fails verification."""


@dataclass(frozen=True)
class ScatteredInstance:
    g: Graph
    k: int
    classes: ClassFamily

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("budget k must be non-negative")


@dataclass(frozen=True)
class CompressionInstance:
    """Find Z disjoint from W and U with |Z| <= k, given the modulator W."""

    g: Graph
    k: int
    w: frozenset[int]
    u: frozenset[int]
    classes: ClassFamily

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", frozenset(self.w))
        object.__setattr__(self, "u", frozenset(self.u))
        unknown = (self.w | self.u) - self.g.vertex_set
        if unknown:
            raise GraphError(f"unknown vertex ids {sorted(unknown)}")
        if not is_scattered_modulator(self.g, self.w, self.classes):
            raise ValueError("w is not a scattered modulator of g")

    @property
    def blocked(self) -> frozenset[int]:
        return self.w | self.u


@dataclass(frozen=True)
class SeparationContext:
    w1: frozenset[int]
    w2: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w1", frozenset(self.w1))
        object.__setattr__(self, "w2", frozenset(self.w2))
        if self.w1 & self.w2:
            raise ValueError("w1 and w2 must be disjoint")


@dataclass(frozen=True)
class BranchTuple:
    lam: int
    ell: int

    def check(self, k: int) -> None:
        if not (1 <= self.lam <= k and 0 <= self.ell < k):
            raise ValueError(f"branch tuple ({self.lam}, {self.ell}) out of range for k={k}")


@dataclass
class Stats:
    branch_nodes: int = 0
    separator_enumerations: int = 0
    oracle_fallbacks: int = 0
    gadgets_glued: int = 0
    wall_time: float = 0.0

    def merge(self, other: "Stats") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self, timing: bool = True) -> dict[str, float]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if not timing:
            out.pop("wall_time")
        return out


@dataclass(frozen=True)
class SolveResult:
    answer: bool
    witness: frozenset[int] | None = None
    stats: Stats = field(default_factory=Stats, compare=False)

    def __post_init__(self) -> None:
        if self.answer and self.witness is None:
            raise ValueError("a yes answer needs a witness")
        if self.witness is not None:
            object.__setattr__(self, "witness", frozenset(self.witness))


def verify_witness(g: Graph, z: Iterable[int] | None, k: int, classes: ClassFamily,
                   forbidden: Iterable[int] = ()) -> None:
    """Raise InvariantViolation unless z is a valid solution."""
    if z is None:
        raise InvariantViolation("missing witness")
    z = frozenset(z)
    if len(z) > k:
        raise InvariantViolation(f"witness has {len(z)} > {k} vertices")
    if not z <= g.vertex_set:
        raise InvariantViolation("witness uses unknown vertices")
    if z & frozenset(forbidden):
        raise InvariantViolation("witness uses vertices that must be kept")
    if not is_scattered_modulator(g, z, classes):
        raise InvariantViolation("witness is not a scattered modulator")
