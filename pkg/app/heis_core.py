"""
Exact arithmetic in the discrete Heisenberg group

An element (a, b, c) stands for the upper unitriangular matrix

    [[1, a, c],
     [0, 1, b],
     [0, 0, 1]]

All results are checked against the signed 64-bit range.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence

from app.error_handlers import IntegerOverflowError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


def checked(value: int) -> int:
    """Return value unchanged, or raise if it does not fit in 64 bits"""
    if value < INT64_MIN or value > INT64_MAX:
        raise IntegerOverflowError(f"integer overflow: {value} outside 64-bit range")
    return value


def binom2(n: int) -> int:
    """n choose 2, valid for negative n"""
    return n * (n - 1) // 2


@dataclass(frozen=True, order=True)
class HeisElement:
    """Element of the Heisenberg group"""
    a: int
    b: int
    c: int

    def __post_init__(self):
        for value in (self.a, self.b, self.c):
            checked(value)

    def __mul__(self, other: 'HeisElement') -> 'HeisElement':
        return mul(self, other)

    def __pow__(self, n: int) -> 'HeisElement':
        return power(self, n)

    def inverse(self) -> 'HeisElement':
        return inv(self)

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def to_matrix(self) -> List[List[int]]:
        return [[1, self.a, self.c], [0, 1, self.b], [0, 0, 1]]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> 'HeisElement':
        rows = [[int(x) for x in row] for row in matrix]
        if rows[0][0] != 1 or rows[1][1] != 1 or rows[2][2] != 1 or \
                rows[1][0] != 0 or rows[2][0] != 0 or rows[2][1] != 0:
            raise ValueError(f"not an upper unitriangular matrix: {rows}")
        return cls(rows[0][1], rows[1][2], rows[0][2])

    def to_text(self) -> str:
        return f"{self.a} {self.b} {self.c}"

    @classmethod
    def from_text(cls, text: str) -> 'HeisElement':
        parts = text.split()
        if len(parts) != 3:
            raise ValueError(f"expected 'a b c', got {text!r}")
        return cls(*(int(p) for p in parts))

    def to_dict(self) -> Dict[str, int]:
        return {'a': self.a, 'b': self.b, 'c': self.c}

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> 'HeisElement':
        return cls(int(data['a']), int(data['b']), int(data['c']))

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def __repr__(self):
        return f'<HeisElement ({self.a},{self.b},{self.c})>'


IDENTITY = HeisElement(0, 0, 0)
CENTER_GEN = HeisElement(0, 0, 1)


def identity() -> HeisElement:
    return IDENTITY


def mul(g: HeisElement, h: HeisElement) -> HeisElement:
    """Group law: (a+a', b+b', c+c'+a*b')"""
    return HeisElement(
        checked(g.a + h.a),
        checked(g.b + h.b),
        checked(g.c + h.c + checked(g.a * h.b)),
    )


def inv(g: HeisElement) -> HeisElement:
    return HeisElement(checked(-g.a), checked(-g.b), checked(checked(g.a * g.b) - g.c))


def power(g: HeisElement, n: int) -> HeisElement:
    """Closed form of the n-fold product, any integer n"""
    return HeisElement(
        checked(n * g.a),
        checked(n * g.b),
        checked(n * g.c + binom2(n) * g.a * g.b),
    )


def commutator(g: HeisElement, h: HeisElement) -> HeisElement:
    """g h g^-1 h^-1, always central"""
    return HeisElement(0, 0, checked(g.a * h.b - h.a * g.b))


def conjugate(gamma: HeisElement, g: HeisElement) -> HeisElement:
    """gamma g gamma^-1; the first two coordinates are preserved"""
    return HeisElement(g.a, g.b, checked(g.c + gamma.a * g.b - gamma.b * g.a))


def is_central(g: HeisElement) -> bool:
    return g.a == 0 and g.b == 0


def ball(bound: int) -> Iterator[HeisElement]:
    """All elements with |a|, |b|, |c| <= bound, lexicographic order"""
    span = range(-bound, bound + 1)
    for a, b, c in itertools.product(span, span, span):
        yield HeisElement(a, b, c)


def plane_ball(bound: int) -> Iterator[HeisElement]:
    """Elements (x, y, 0) with |x|, |y| <= bound"""
    span = range(-bound, bound + 1)
    for x, y in itertools.product(span, span):
        yield HeisElement(x, y, 0)
