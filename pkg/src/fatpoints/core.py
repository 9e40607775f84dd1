"""Sequence types, exact comparisons and dimension bookkeeping.

Everything here is integer arithmetic.  Bounds of the shape ``A / sqrt(k)``
are kept as :class:`QuadraticBound` and compared by squaring, so no decision
ever passes through a float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, isqrt
from typing import Iterable, Iterator, Sequence

IntSequence = tuple[int, ...]


class MalformedSequenceError(ValueError):
    """Input sequence violates a structural precondition."""


class HypothesisNotMet(ValueError):
    """A numerical criterion was called outside its stated range."""


class ContractViolation(RuntimeError):
    """An internal invariant or caller contract was broken."""


def as_int_sequence(values: Iterable[int]) -> IntSequence:
    seq = tuple(int(v) for v in values)
    if any(v < 0 for v in seq):
        raise MalformedSequenceError(f"negative entry in {seq}")
    return seq


def size(seq: Sequence[int]) -> int:
    return sum(seq)


def dominated_by(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` is no longer than ``b`` and entrywise below it."""
    return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))


def strip_trailing_zeros(seq: Sequence[int]) -> IntSequence:
    end = len(seq)
    while end and seq[end - 1] == 0:
        end -= 1
    return tuple(seq[:end])


class MultiplicitySequence(Sequence[int]):
    """Multiplicities ``m_1 >= ... >= m_s >= 1`` of a fat points scheme.

    Input is sorted on construction; zeros and negatives are rejected.
    Indexing is 0-based like any Python sequence; :meth:`m` gives the
    1-based accessor used in the formulas.
    """

    __slots__ = ("_mults",)

    def __init__(self, mults: Iterable[int]):
        values = sorted((int(m) for m in mults), reverse=True)
        if not values:
            raise MalformedSequenceError("multiplicity sequence is empty")
        if values[-1] < 1:
            raise MalformedSequenceError(f"multiplicities must be positive, got {values[-1]}")
        self._mults: IntSequence = tuple(values)

    @classmethod
    def parse(cls, text: str) -> "MultiplicitySequence":
        return cls(parse_int_list(text))

    @classmethod
    def from_counts(cls, pairs: Iterable[tuple[int, int]]) -> "MultiplicitySequence":
        """Build from ``(value, count)`` pairs, e.g. ``[(8, 9), (1, 103)]``."""
        return cls(v for v, c in pairs for _ in range(c))

    def __getitem__(self, i):
        return self._mults[i]

    def __len__(self) -> int:
        return len(self._mults)

    def __iter__(self) -> Iterator[int]:
        return iter(self._mults)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiplicitySequence):
            return self._mults == other._mults
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mults)

    def __repr__(self) -> str:
        return f"MultiplicitySequence({self.compressed()!r})"

    def m(self, i: int) -> int:
        """1-based access, ``m(1)`` is the largest multiplicity."""
        if i < 1:
            raise IndexError(i)
        return self._mults[i - 1]

    @property
    def values(self) -> IntSequence:
        return self._mults

    @property
    def s(self) -> int:
        return len(self._mults)

    @property
    def total(self) -> int:
        return sum(self._mults)

    @property
    def sum_squares(self) -> int:
        return sum(m * m for m in self._mults)

    def counts(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for m in self._mults:
            if out and out[-1][0] == m:
                out[-1] = (m, out[-1][1] + 1)
            else:
                out.append((m, 1))
        return out

    def compressed(self) -> str:
        return ",".join(f"{v}^{c}" if c > 1 else str(v) for v, c in self.counts())

    def __str__(self) -> str:
        return ",".join(map(str, self._mults))


_TOKEN = re.compile(r"^\s*(-?\d+)\s*(?:(\^)\s*(\d+)|(\.\.)\s*(-?\d+))?\s*$")


def parse_int_list(text: str) -> list[int]:
    """Parse ``"4,4,3"``, ``"8^9,1^103"`` or ``"1..10"`` (mixable)."""
    out: list[int] = []
    if not text.strip():
        return out
    for token in text.split(","):
        match = _TOKEN.match(token)
        if match is None:
            raise MalformedSequenceError(f"cannot parse {token!r} in {text!r}")
        first = int(match.group(1))
        if match.group(2):
            out.extend([first] * int(match.group(3)))
        elif match.group(4):
            last = int(match.group(5))
            if last < first:
                raise MalformedSequenceError(f"empty range {token!r}")
            out.extend(range(first, last + 1))
        else:
            out.append(first)
    return out


def vdim(n: int, t: int, mults: Iterable[int]) -> int:
    """Virtual dimension of degree ``t`` hypersurfaces in P^n through fat points."""
    if n < 1:
        raise ValueError("n must be positive")
    if t < 0:
        return -1 - sum(comb(n + m - 1, n) for m in mults)
    return comb(n + t, n) - sum(comb(n + m - 1, n) for m in mults) - 1


def edim(n: int, t: int, mults: Iterable[int]) -> int:
    return max(vdim(n, t, mults), -1)


@dataclass(frozen=True)
class QuadraticBound:
    """The real number ``A / sqrt(k)`` with ``A >= 0`` and ``k >= 1``."""

    A: int
    k: int

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("radicand k must be positive")
        if self.A < 0:
            raise ValueError("numerator A must be non-negative")

    def floor(self) -> int:
        return isqrt(self.A * self.A // self.k)

    def __float__(self) -> float:
        return self.A / self.k**0.5

    def __str__(self) -> str:
        return str(self.A) if self.k == 1 else f"{self.A}/sqrt({self.k})"


def cmp_int_vs_quadratic(v: int, bound: QuadraticBound) -> int:
    """Exact sign of ``v - A/sqrt(k)``: -1, 0 or 1."""
    if bound.k <= 0:
        raise ValueError("radicand k must be positive")
    if v < 0:
        return -1
    lhs, rhs = v * v * bound.k, bound.A * bound.A
    return (lhs > rhs) - (lhs < rhs)


def le_quadratic(v: int, bound: QuadraticBound) -> bool:
    return cmp_int_vs_quadratic(v, bound) <= 0
