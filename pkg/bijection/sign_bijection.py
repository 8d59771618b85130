"""
Sign Bijection — 2D walks as pairs of ±1 strings.

Step i of a walk is read off the i-th entries of two sign strings:

    (a, b) = (+1, +1) → R      (a, b) = (-1, +1) → U
    (a, b) = (-1, -1) → L      (a, b) = (+1, -1) → D

i.e. a[i] = sign(Δx − Δy) and b[i] = sign(Δx + Δy). A walk closes exactly
when both strings are balanced, so loops of length 2n are counted by
C(2n, n)².

Usage::

    from bijection.sign_bijection import SignPair, decode_pair
    str(decode_pair(SignPair.parse("+---++,++---+")))   # "RULLDR"
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from math import comb

from utils.errors import DomainError
from walks.lattice_walks import Direction, Walk

_STEP_OF_PAIR = {
    (+1, +1): Direction.R,
    (-1, -1): Direction.L,
    (-1, +1): Direction.U,
    (+1, -1): Direction.D,
}
_PAIR_OF_STEP = {step: pair for pair, step in _STEP_OF_PAIR.items()}

_SIGN_CHAR = {+1: "+", -1: "-"}
_CHAR_SIGN = {"+": +1, "-": -1}


# ── Value types ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SignString:
    """A string over {+1, -1}; text form uses '+' and '-' without separators."""

    entries: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(e not in _SIGN_CHAR for e in self.entries):
            raise DomainError(f"sign string entries must be +1 or -1, got {self.entries!r}")

    @classmethod
    def parse(cls, text: str) -> "SignString":
        try:
            return cls(tuple(_CHAR_SIGN[ch] for ch in text))
        except KeyError as exc:
            raise DomainError(f"invalid sign character {exc.args[0]!r} in {text!r}") from None

    @property
    def balanced(self) -> bool:
        return sum(self.entries) == 0

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "".join(_SIGN_CHAR[e] for e in self.entries)


@dataclass(frozen=True)
class SignPair:
    """Two sign strings of equal length; text form ``"a,b"``."""

    a: SignString
    b: SignString

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise DomainError(
                f"sign strings must have equal length, got {len(self.a)} and {len(self.b)}"
            )

    @classmethod
    def parse(cls, text: str) -> "SignPair":
        a, sep, b = text.partition(",")
        if not sep or "," in b:
            raise DomainError(f"sign pair must look like 'a,b', got {text!r}")
        return cls(SignString.parse(a.strip()), SignString.parse(b.strip()))

    @property
    def balanced(self) -> bool:
        return self.a.balanced and self.b.balanced

    def __len__(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return f"{self.a},{self.b}"


# ── Bijection ─────────────────────────────────────────────────────────────────

def decode_pair(p: SignPair) -> Walk:
    """The 2D walk whose i-th step is given by (a[i], b[i])."""
    return Walk(2, tuple(_STEP_OF_PAIR[pair] for pair in zip(p.a.entries, p.b.entries)))


def encode_walk(w: Walk) -> SignPair:
    """Inverse of :func:`decode_pair`; total on 2D walks."""
    if w.dimension != 2:
        raise DomainError(f"the sign bijection is two-dimensional, got a {w.dimension}D walk")
    pairs = [_PAIR_OF_STEP[step] for step in w.steps]
    return SignPair(
        SignString(tuple(a for a, _ in pairs)),
        SignString(tuple(b for _, b in pairs)),
    )


def count_balanced_pairs(n: int) -> int:
    """C(2n, n)²: pairs of length 2n with both strings balanced."""
    if n < 0:
        raise DomainError(f"half-length must be >= 0, got {n}")
    return comb(2 * n, n) ** 2


def _balanced_strings(n: int) -> list[SignString]:
    # Positions of the +1 entries, lexicographic → '+' first.
    out = []
    for plus in itertools.combinations(range(2 * n), n):
        chosen = set(plus)
        out.append(SignString(tuple(+1 if i in chosen else -1 for i in range(2 * n))))
    return out


def iter_balanced_pairs(n: int) -> Iterator[SignPair]:
    """Every pair of balanced strings of length 2n."""
    if n < 0:
        raise DomainError(f"half-length must be >= 0, got {n}")
    strings = _balanced_strings(n)
    for a, b in itertools.product(strings, repeat=2):
        yield SignPair(a, b)


# ── Rotated-coordinate view ───────────────────────────────────────────────────

def partial_sums(s: SignString) -> list[int]:
    return list(itertools.accumulate(s.entries))


def rotation_view(w: Walk) -> list[tuple[int, int]]:
    """Prefix positions of ``w`` as (x − y, x + y) pairs."""
    if w.dimension != 2:
        raise DomainError(f"the rotated view is two-dimensional, got a {w.dimension}D walk")
    return [(x - y, x + y) for x, y in w.prefix_positions()]
