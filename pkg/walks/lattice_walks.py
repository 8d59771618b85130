"""
Lattice Walks — finite nearest-neighbour walks on Z and Z².

Provides:
  • Direction / Walk / LoopClass value types with a text round-trip
  • loop predicates: displacement, classify, first_return_index
  • the first-return decomposition of a nontrivial loop
  • a depth-first enumeration oracle counting loops and simple loops

Usage::

    from walks.lattice_walks import Walk, classify
    classify(Walk.parse("RULLDR"))       # LoopClass.SIMPLE_LOOP
    enumerate_simple_loop_count(2, 2)    # 20
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from utils.errors import DomainError, ResourceLimitError
from utils.logger import get_logger
from utils.settings import load_settings
from utils.telemetry import WALK_NODES

log = get_logger(__name__)

DIMENSIONS = (1, 2)


# ── Value types ───────────────────────────────────────────────────────────────

class Direction(Enum):
    """Unit step. Canonical order R, L, U, D; 1D walks use R and L only."""

    R = (1, 0)
    L = (-1, 0)
    U = (0, 1)
    D = (0, -1)

    @property
    def code(self) -> str:
        return self.name

    def vector(self, dimension: int) -> tuple[int, ...]:
        return self.value[:dimension]


class LoopClass(str, Enum):
    NOT_LOOP       = "NotLoop"
    TRIVIAL_LOOP   = "TrivialLoop"
    SIMPLE_LOOP    = "SimpleLoop"
    COMPOSITE_LOOP = "CompositeLoop"


def check_dimension(dimension: int) -> int:
    if dimension not in DIMENSIONS:
        raise DomainError(f"dimension must be 1 or 2, got {dimension!r}")
    return dimension


def directions(dimension: int) -> tuple[Direction, ...]:
    """The 2d codes available in ``dimension``, in canonical order."""
    check_dimension(dimension)
    return tuple(Direction)[: 2 * dimension]


@dataclass(frozen=True)
class Walk:
    """An immutable walk; the empty walk is the trivial loop."""

    dimension: int
    steps: tuple[Direction, ...] = ()

    def __post_init__(self) -> None:
        check_dimension(self.dimension)
        allowed = directions(self.dimension)
        for step in self.steps:
            if step not in allowed:
                raise DomainError(
                    f"step {step.code} is not a {self.dimension}D direction"
                )

    @classmethod
    def parse(cls, text: str, dimension: int = 2) -> "Walk":
        """Parse a string over ``RLUD`` (2D) or ``RL`` (1D); case-sensitive."""
        try:
            steps = tuple(Direction[ch] for ch in text)
        except KeyError as exc:
            raise DomainError(f"invalid step character {exc.args[0]!r} in walk {text!r}") from None
        return cls(dimension, steps)

    def __str__(self) -> str:
        return "".join(step.code for step in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: "Walk") -> "Walk":
        if not isinstance(other, Walk):
            return NotImplemented
        if other.dimension != self.dimension:
            raise DomainError("cannot concatenate walks of different dimensions")
        return Walk(self.dimension, self.steps + other.steps)

    def prefix_positions(self) -> Iterator[tuple[int, ...]]:
        """Positions after each step (excluding the start at the origin)."""
        pos = [0] * self.dimension
        for step in self.steps:
            for axis, delta in enumerate(step.vector(self.dimension)):
                pos[axis] += delta
            yield tuple(pos)


# ── Loop predicates ───────────────────────────────────────────────────────────

def displacement(w: Walk) -> tuple[int, ...]:
    """Componentwise sum of the step vectors."""
    return tuple(
        sum(step.vector(w.dimension)[axis] for step in w.steps)
        for axis in range(w.dimension)
    )


def first_return_index(w: Walk) -> int | None:
    """Smallest k >= 1 whose prefix of length k ends at the origin."""
    origin = (0,) * w.dimension
    for k, pos in enumerate(w.prefix_positions(), start=1):
        if pos == origin:
            return k
    return None


def classify(w: Walk) -> LoopClass:
    if any(displacement(w)):
        return LoopClass.NOT_LOOP
    if len(w) == 0:
        return LoopClass.TRIVIAL_LOOP
    if first_return_index(w) == len(w):
        return LoopClass.SIMPLE_LOOP
    return LoopClass.COMPOSITE_LOOP


def split_at_first_return(w: Walk) -> tuple[Walk, Walk]:
    """
    Split a nontrivial loop into its simple-loop prefix and loop suffix.

    ``prefix + suffix == w`` always holds; the suffix may be trivial.
    """
    if classify(w) not in (LoopClass.SIMPLE_LOOP, LoopClass.COMPOSITE_LOOP):
        raise DomainError(f"walk {str(w)!r} is not a nontrivial loop")
    k = first_return_index(w)
    return Walk(w.dimension, w.steps[:k]), Walk(w.dimension, w.steps[k:])


def walk_probability(w: Walk) -> Fraction:
    """Probability of performing exactly ``w``: each step has weight 1/(2d)."""
    return Fraction(1, (2 * w.dimension) ** len(w))


# ── Enumeration oracle ────────────────────────────────────────────────────────
#
# Depth-first search over walks of length 2n that can still close. A branch
# is cut as soon as the Manhattan distance to the origin exceeds the steps
# left (this also enforces parity) and, for simple loops, as soon as it
# touches the origin before the last step.

def check_enumeration_cap(dimension: int, n: int, cap: int | None = None) -> None:
    """Raise ResourceLimitError if walks of length 2n exceed the cap for ``dimension``."""
    check_dimension(dimension)
    if n < 0:
        raise DomainError(f"half-length must be >= 0, got {n}")
    limit = load_settings().cap_for(dimension) if cap is None else cap
    if n > limit:
        raise ResourceLimitError(
            f"enumeration of {dimension}D walks of length {2 * n} exceeds "
            f"cap n <= {limit} ({(2 * dimension) ** (2 * n)} walks)"
        )


class _LoopSearch:
    """One enumeration run; tracks visited nodes for telemetry."""

    def __init__(self, dimension: int, n: int, simple: bool) -> None:
        self.dimension = dimension
        self.length = 2 * n
        self.simple = simple
        self.moves = [(step, step.value) for step in directions(dimension)]
        self.nodes = 0

    def _children(self, x: int, y: int, left: int) -> Iterator[tuple[Direction, int, int]]:
        for step, (dx, dy) in self.moves:
            nx, ny = x + dx, y + dy
            if abs(nx) + abs(ny) > left:
                continue
            if self.simple and left and nx == 0 and ny == 0:
                continue
            yield step, nx, ny

    def count(self, x: int = 0, y: int = 0, remaining: int | None = None) -> int:
        remaining = self.length if remaining is None else remaining
        self.nodes += 1
        if remaining == 0:
            return 1
        return sum(
            self.count(nx, ny, remaining - 1)
            for _, nx, ny in self._children(x, y, remaining - 1)
        )

    def paths(
        self,
        x: int = 0,
        y: int = 0,
        remaining: int | None = None,
        prefix: tuple[Direction, ...] = (),
    ) -> Iterator[tuple[Direction, ...]]:
        remaining = self.length if remaining is None else remaining
        self.nodes += 1
        if remaining == 0:
            yield prefix
            return
        for step, nx, ny in self._children(x, y, remaining - 1):
            yield from self.paths(nx, ny, remaining - 1, prefix + (step,))

    def record(self, total: int) -> None:
        WALK_NODES.labels(dimension=str(self.dimension)).inc(self.nodes)
        log.debug(
            "enumerated %s %dD loops of length %d: %d (nodes visited: %d)",
            "simple" if self.simple else "all", self.dimension, self.length,
            total, self.nodes,
        )


def enumerate_loop_count(dimension: int, n: int, cap: int | None = None) -> int:
    """Exact number of walks of length 2n with zero displacement (B_n)."""
    check_enumeration_cap(dimension, n, cap)
    search = _LoopSearch(dimension, n, simple=False)
    total = search.count()
    search.record(total)
    return total


def enumerate_simple_loop_count(dimension: int, n: int, cap: int | None = None) -> int:
    """Exact number of simple loops of length 2n (P_n); n = 0 is a domain error."""
    if n == 0:
        raise DomainError("simple loops are nontrivial: half-length must be >= 1")
    check_enumeration_cap(dimension, n, cap)
    search = _LoopSearch(dimension, n, simple=True)
    total = search.count()
    search.record(total)
    return total


def iter_loops(
    dimension: int,
    n: int,
    simple: bool = False,
    cap: int | None = None,
) -> Iterator[Walk]:
    """Yield every loop (or simple loop) of length 2n in canonical order."""
    if simple and n == 0:
        raise DomainError("simple loops are nontrivial: half-length must be >= 1")
    check_enumeration_cap(dimension, n, cap)
    search = _LoopSearch(dimension, n, simple)
    total = 0
    for steps in search.paths():
        total += 1
        yield Walk(dimension, steps)
    search.record(total)
