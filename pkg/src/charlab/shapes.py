"""Partitions, highest weights and skew diagrams.

A :class:`Shape` is a fixed-length, non-increasing sequence of integers or of
half-integers (never a mix).  Its length is significant: ``(2, 0)`` and
``(2,)`` index determinants of different sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence, Tuple


class ShapeError(ValueError):
    pass


def parse_half(text) -> int:
    """Doubled value of ``"3"``, ``"3/2"``, ``3`` or ``Fraction(3, 2)``."""
    value = Fraction(text.strip()) if isinstance(text, str) else Fraction(text)
    d = 2 * value
    if d.denominator != 1:
        raise ShapeError(f"{text!r} is not an integer or half-integer")
    return int(d)


def format_half(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled}/2"


@dataclass(frozen=True)
class Shape:
    """Row lengths, stored doubled (``doubled[i] == 2 * part_i``)."""

    doubled: Tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(v) for v in self.doubled)
        object.__setattr__(self, "doubled", d)
        if any(a < b for a, b in zip(d, d[1:])):
            raise ShapeError(f"parts must be non-increasing: {self}")
        if d and len({v % 2 for v in d}) > 1:
            raise ShapeError(f"parts mix integers and half-integers: {self}")
        if any(v < 0 for v in d[:-1]):
            raise ShapeError(f"only the last part may be negative: {self}")

    @classmethod
    def of(cls, parts: Sequence) -> "Shape":
        return cls(tuple(parse_half(p) for p in parts))

    @classmethod
    def parse(cls, text: str) -> "Shape":
        """Parse ``"2,2,1"`` or ``"3/2,3/2"``; the empty string is ``()``."""
        text = text.strip()
        if not text:
            return cls(())
        return cls.of(text.split(","))

    def __len__(self) -> int:
        return len(self.doubled)

    def __iter__(self) -> Iterator[Fraction]:
        return (Fraction(v, 2) for v in self.doubled)

    def __str__(self) -> str:
        return ",".join(format_half(v) for v in self.doubled)

    @property
    def parts(self) -> Tuple[Fraction, ...]:
        return tuple(self)

    @property
    def is_half(self) -> bool:
        return bool(self.doubled) and self.doubled[0] % 2 == 1

    @property
    def is_partition(self) -> bool:
        return not self.is_half and all(v >= 0 for v in self.doubled)

    def int_parts(self) -> Tuple[int, ...]:
        if self.is_half:
            raise ShapeError(f"{self} has half-integer parts")
        return tuple(v // 2 for v in self.doubled)

    def size(self) -> Fraction:
        return Fraction(sum(self.doubled), 2)

    def padded(self, length: int) -> "Shape":
        """Append zero parts up to ``length``; never truncates."""
        if length < len(self):
            raise ShapeError(f"cannot pad {self} down to length {length}")
        if self.is_half and length > len(self):
            raise ShapeError("zero padding would mix integer and half-integer parts")
        return Shape(self.doubled + (0,) * (length - len(self)))

    def trimmed(self) -> "Shape":
        """Drop trailing zero parts."""
        d = list(self.doubled)
        while d and d[-1] == 0:
            d.pop()
        return Shape(tuple(d))

    def shifted(self, half_steps: int) -> "Shape":
        """Add ``half_steps / 2`` to every part (``shifted(1)`` is lambda + 1/2)."""
        return Shape(tuple(v + half_steps for v in self.doubled))


def partition(*parts: int) -> Shape:
    return Shape(tuple(2 * p for p in parts))


def rectangle(M, n: int) -> Shape:
    """The shape ``(M^n)``; ``M`` may be a half-integer."""
    d = parse_half(M)
    if d < 0:
        raise ShapeError("rectangle side must be non-negative")
    if n < 0:
        raise ShapeError("rectangle needs a non-negative number of rows")
    return Shape((d,) * n)


def conjugate(s: Shape) -> Shape:
    """Transpose of the Young diagram, with trailing zeros dropped."""
    if not s.is_partition:
        raise ShapeError(f"conjugate needs a partition, got {s}")
    parts = s.int_parts()
    width = parts[0] if parts else 0
    return partition(*(sum(1 for p in parts if p > j) for j in range(width)))


@dataclass(frozen=True)
class SkewDiagram:
    outer: Shape
    inner: Shape

    def __post_init__(self):
        if not (self.outer.is_partition and self.inner.is_partition):
            raise ShapeError("skew diagrams need integer non-negative shapes")
        n = max(len(self.outer), len(self.inner))
        o = self.outer.padded(n).int_parts()
        i = self.inner.padded(n).int_parts()
        if any(a < b for a, b in zip(o, i)):
            raise ShapeError(f"{self.inner} is not contained in {self.outer}")

    def cells(self) -> Iterator[Tuple[int, int]]:
        """1-based ``(row, column)`` cells of the skew shape."""
        n = max(len(self.outer), len(self.inner))
        o = self.outer.padded(n).int_parts()
        i = self.inner.padded(n).int_parts()
        for r in range(n):
            for c in range(i[r], o[r]):
                yield r + 1, c + 1

    def column_heights(self) -> Tuple[int, ...]:
        oc = conjugate(self.outer).int_parts()
        ic = conjugate(self.inner).int_parts()
        ic = ic + (0,) * (len(oc) - len(ic))
        return tuple(a - b for a, b in zip(oc, ic))


def odd_columns(d: SkewDiagram) -> int:
    """Number of columns of the skew diagram with an odd number of cells."""
    return sum(h % 2 for h in d.column_heights())


def subshapes_of_rectangle(M: int, n: int) -> Iterator[Shape]:
    """All partitions with at most ``n`` parts, each at most ``M``.

    Yields length-``n`` shapes (zero padded) in lexicographically descending
    order; there are ``C(M + n, n)`` of them.
    """
    if M < 0 or n < 0:
        raise ShapeError("rectangle sides must be non-negative")

    def rec(prefix, bound, left):
        if left == 0:
            yield partition(*prefix)
            return
        for v in range(bound, -1, -1):
            yield from rec(prefix + (v,), v, left - 1)

    yield from rec((), M, n)


def count_subshapes(M: int, n: int) -> int:
    return comb(M + n, n)
