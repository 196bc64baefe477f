"""
Symbolic model of the double mapping cylinder E = Cyl(f, g)

Points come in three kinds:

    VPoint    a point (x, y) of the plane V, acted on by translation by (a, b)
    WPoint    [delta, w] in W_alpha, induced from the normalizer acting on the
              line W~ by translation through the complement exponent
    Interior  [delta, (v, w)] in U_alpha times an open cylinder parameter,
              on the half of the segment pointing to V or to W

Cosets are stored as canonical representatives (see
cyclic_class.canonical_coset), so dataclass equality is point equality.
Coordinates are exact Fractions.
"""
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from app.cyclic_class import (
    ConjClassId, SubgroupKind, SubgroupSpec, canonical_class, canonical_coset,
    class_splitting, classify_subgroup, coset_invariant, find_conjugator, in_cyclic,
)
from app.error_handlers import CensusError, HeisvcError
from app.heis_core import (
    IDENTITY, HeisElement, ball, conjugate, inv, mul,
)

logger = logging.getLogger(__name__)


class Side(enum.Enum):
    TOWARD_V = 'TowardV'
    TOWARD_W = 'TowardW'


@dataclass(frozen=True)
class VPoint:
    x: Fraction
    y: Fraction

    def to_dict(self):
        return {'kind': 'V', 'x': str(self.x), 'y': str(self.y)}


@dataclass(frozen=True)
class WPoint:
    conj_class: ConjClassId
    coset: HeisElement
    w: Fraction

    def to_dict(self):
        return {
            'kind': 'W',
            'class': self.conj_class.to_dict(),
            'coset': self.coset.to_dict(),
            'w': str(self.w),
        }


@dataclass(frozen=True)
class Interior:
    conj_class: ConjClassId
    coset: HeisElement
    v: Fraction
    w: Fraction
    side: Side
    s: Fraction

    def __post_init__(self):
        if not 0 < self.s < 1:
            raise ValueError(f"cylinder parameter must lie in (0, 1), got {self.s}")

    def to_dict(self):
        return {
            'kind': 'Interior',
            'class': self.conj_class.to_dict(),
            'coset': self.coset.to_dict(),
            'v': str(self.v),
            'w': str(self.w),
            'side': self.side.value,
            's': str(self.s),
        }


PointE = Union[VPoint, WPoint, Interior]


def v_point(x, y) -> VPoint:
    return VPoint(Fraction(x), Fraction(y))


def _normalize(cls: ConjClassId, delta: HeisElement):
    """Split delta = rep * n with rep canonical and n in the normalizer"""
    rep = canonical_coset(cls, delta)
    n = mul(inv(rep), delta)
    split = class_splitting(cls)
    if not split.lattice.contains(n):
        raise HeisvcError(f"coset normalization failed for {delta!r} in class {cls.label()}")
    return rep, n, split


def w_point(cls: ConjClassId, coset: HeisElement, w) -> WPoint:
    """[coset, w] rewritten with the canonical coset representative"""
    rep, n, split = _normalize(cls, coset)
    return WPoint(cls, rep, Fraction(w) + split.projection(n))


def interior_point(cls: ConjClassId, coset: HeisElement, v, w, side: Side, s) -> Interior:
    rep, n, split = _normalize(cls, coset)
    return Interior(
        cls, rep,
        Fraction(v) + split.direction_shift(n),
        Fraction(w) + split.projection(n),
        side, Fraction(s),
    )


def act(gamma: HeisElement, p: PointE) -> PointE:
    """
    Action of gamma on a point of E

    VPoint (x, y) moves to (x + a, y + b). For the induced pieces,
    gamma*[delta, q] = [gamma*delta, q] = [rep, n*q] where gamma*delta = rep*n;
    n shifts v by its direction exponent and w by its complement exponent.
    """
    if isinstance(p, VPoint):
        return VPoint(p.x + gamma.a, p.y + gamma.b)

    if isinstance(p, WPoint):
        return w_point(p.conj_class, mul(gamma, p.coset), p.w)

    if isinstance(p, Interior):
        return interior_point(p.conj_class, mul(gamma, p.coset), p.v, p.w, p.side, p.s)

    raise TypeError(f"not a point of E: {p!r}")


class IsotropyKind(enum.Enum):
    TRIVIAL = 'Trivial'
    CENTER = 'Center'
    MAX_CYCLIC_CONJ = 'MaxCyclicConj'


@dataclass(frozen=True)
class IsotropyDesc:
    """Isotropy group: trivial, the center, or conjugator*H*conjugator^-1"""
    kind: IsotropyKind
    conj_class: Optional[ConjClassId] = None
    conjugator: Optional[HeisElement] = None

    def generator(self) -> Optional[HeisElement]:
        """Generator of the isotropy group when it is a conjugated class subgroup"""
        if self.kind is not IsotropyKind.MAX_CYCLIC_CONJ:
            return None
        return conjugate(self.conjugator, self.conj_class.representative())

    def conjugated_by(self, gamma: HeisElement) -> 'IsotropyDesc':
        if self.kind is not IsotropyKind.MAX_CYCLIC_CONJ:
            return self
        return IsotropyDesc(self.kind, self.conj_class,
                            canonical_coset(self.conj_class, mul(gamma, self.conjugator)))

    def to_dict(self):
        data = {'kind': self.kind.value}
        if self.kind is IsotropyKind.MAX_CYCLIC_CONJ:
            data['class'] = self.conj_class.to_dict()
            data['conjugator'] = self.conjugator.to_dict()
        return data


def isotropy(p: PointE) -> IsotropyDesc:
    if isinstance(p, VPoint):
        return IsotropyDesc(IsotropyKind.CENTER)
    if isinstance(p, WPoint):
        return IsotropyDesc(IsotropyKind.MAX_CYCLIC_CONJ, p.conj_class, p.coset)
    return IsotropyDesc(IsotropyKind.TRIVIAL)


class FixedSetKind(enum.Enum):
    EMPTY = 'Empty'
    WHOLE_E = 'WholeE'
    V_PLANE = 'VPlane'
    W_LINE = 'WLine'


_CASES = {
    FixedSetKind.W_LINE: 'A',
    FixedSetKind.V_PLANE: 'B',
    FixedSetKind.WHOLE_E: 'C',
    FixedSetKind.EMPTY: 'D',
}


@dataclass(frozen=True)
class FixedSetDesc:
    kind: FixedSetKind
    conj_class: Optional[ConjClassId] = None
    coset: Optional[HeisElement] = None

    @property
    def case(self) -> str:
        return _CASES[self.kind]

    def contains(self, p: PointE) -> bool:
        if self.kind is FixedSetKind.WHOLE_E:
            return True
        if self.kind is FixedSetKind.V_PLANE:
            return isinstance(p, VPoint)
        if self.kind is FixedSetKind.W_LINE:
            return isinstance(p, WPoint) and p.conj_class == self.conj_class \
                and p.coset == self.coset
        return False

    def to_dict(self):
        data = {'case': self.case, 'fixed_set': self.kind.value}
        if self.kind is FixedSetKind.W_LINE:
            data['class'] = self.conj_class.to_dict()
            data['coset'] = self.coset.to_dict()
        return data


def fixed_set(spec: SubgroupSpec) -> FixedSetDesc:
    """
    Fixed set E^K

    Trivial K fixes everything, central cyclic K fixes exactly V, non-central
    cyclic K fixes one W-line, and non-cyclic K fixes nothing.
    """
    result = classify_subgroup(spec)

    if result.kind is SubgroupKind.TRIVIAL:
        return FixedSetDesc(FixedSetKind.WHOLE_E)

    if result.kind is SubgroupKind.CENTRAL_CYCLIC:
        return FixedSetDesc(FixedSetKind.V_PLANE)

    if result.kind is SubgroupKind.NON_CENTRAL_CYCLIC:
        root = result.decomposition.root
        cls = canonical_class(root)
        gamma = find_conjugator(cls.representative(), root)
        return FixedSetDesc(FixedSetKind.W_LINE, cls, canonical_coset(cls, gamma))

    return FixedSetDesc(FixedSetKind.EMPTY)


@dataclass(frozen=True)
class Census:
    """Qualifying cosets under the computed normalizer and under Z*H"""
    conj_class: ConjClassId
    bound: int
    computed_normalizer: int
    zh: int
    computed_representatives: tuple = ()
    zh_representatives: tuple = ()

    def to_dict(self):
        return {
            'computed_normalizer': self.computed_normalizer,
            'zh': self.zh,
        }


def _zh_coset_key(cls: ConjClassId, gamma: HeisElement):
    """Left cosets of Z*H: normalizer coset plus direction exponent mod d"""
    m = coset_invariant(cls, gamma)
    rep = canonical_coset(cls, gamma)
    n = mul(inv(rep), gamma)
    t, _ = class_splitting(cls).lattice.exponents(n)
    return m, t % cls.d


def fixed_point_census(spec: SubgroupSpec, bound: int) -> Census:
    """
    Count coset representatives gamma_i in the ball with K inside
    gamma_i H gamma_i^-1, once for cosets of the computed normalizer and once
    for cosets of Z*H

    Each coset is represented by its lexicographically smallest element in
    the ball.
    """
    result = classify_subgroup(spec)
    if result.kind is not SubgroupKind.NON_CENTRAL_CYCLIC:
        raise CensusError(f"census needs a non-central cyclic subgroup, got {result.kind.value}")

    k = result.generator
    cls = canonical_class(result.decomposition.root)
    rep = cls.representative()

    normalizer_cosets = {}
    zh_cosets = {}
    for gamma in ball(bound):
        normalizer_cosets.setdefault(coset_invariant(cls, gamma), gamma)
        zh_cosets.setdefault(_zh_coset_key(cls, gamma), gamma)

    def qualifying(representatives) -> List[HeisElement]:
        return sorted(g for g in representatives if in_cyclic(k, conjugate(g, rep)))

    computed = qualifying(normalizer_cosets.values())
    zh = qualifying(zh_cosets.values())
    logger.debug(f"Census for class {cls.label()} on ball {bound}: {len(computed)} / {len(zh)}")
    return Census(cls, bound, len(computed), len(zh), tuple(computed), tuple(zh))


def limit_point(p: Interior) -> Union[VPoint, WPoint]:
    """
    Endpoint of the cylinder segment through p (the s -> 1 limit)

    Toward V this is F_alpha: [delta, (v, w)] -> delta * (v*a0, v*b0).
    Toward W this is G_alpha: [delta, (v, w)] -> [delta, w].
    """
    if p.side is Side.TOWARD_V:
        a0, b0 = p.conj_class.direction
        return VPoint(p.v * a0 + p.coset.a, p.v * b0 + p.coset.b)
    return WPoint(p.conj_class, p.coset, p.w)


SAMPLE_CLASSES = [
    HeisElement(0, 1, 0),
    HeisElement(1, 0, 0),
    HeisElement(1, 1, 0),
    HeisElement(2, 0, 1),
    HeisElement(2, 3, 1),
    HeisElement(1, -2, 0),
    HeisElement(0, 2, 1),
    HeisElement(3, 3, 1),
]

_SAMPLE_FRACTIONS = [Fraction(0), Fraction(1, 2), Fraction(-3, 4), Fraction(5, 3), Fraction(-2)]


def sample_points(per_kind: int = 20) -> List[PointE]:
    """Deterministic sample with per_kind points of each kind"""
    classes = [canonical_class(g) for g in SAMPLE_CLASSES]
    cosets = [IDENTITY, HeisElement(1, 0, 0), HeisElement(0, -1, 0),
              HeisElement(2, 1, 3), HeisElement(-1, 2, 0)]

    v_points, w_points, interiors = [], [], []
    i = 0
    while len(v_points) < per_kind:
        x = _SAMPLE_FRACTIONS[i % 5] + i // 5
        y = _SAMPLE_FRACTIONS[(i * 2 + 1) % 5] - i // 7
        v_points.append(v_point(x, y))
        cls = classes[i % len(classes)]
        coset = cosets[i % len(cosets)]
        w = _SAMPLE_FRACTIONS[(i + 3) % 5]
        w_points.append(w_point(cls, coset, w))
        side = Side.TOWARD_V if i % 2 else Side.TOWARD_W
        s = Fraction(i % 9 + 1, 10)
        interiors.append(interior_point(cls, coset, x, w, side, s))
        i += 1

    return v_points + w_points + interiors
