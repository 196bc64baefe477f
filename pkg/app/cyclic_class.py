"""
Cyclic subgroups of the Heisenberg group

Primitive roots, conjugacy canonical forms of maximal cyclic subgroups,
normalizers, direct-product splittings of normalizers and the five-way
subgroup classification, plus the brute-force cross-check harness.

A non-central element g = (a, b, c) with d = gcd(|a|, |b|) lives in the
lattice {(t*a0, t*b0, z)} spanned by the direction element (a0, b0, 0) and
the center generator (0, 0, 1), where (a0, b0) = (a/d, b/d). Inside that
lattice g has coordinates (d, c - C(d,2)*a0*b0).
"""
import enum
import functools
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from app.error_handlers import (
    CentralInputError, IdentityInputError, NotConjugateError, NotPrimitiveError,
    SplittingError, SubgroupSpecError, ValidationError, validate_bound,
)
from app.heis_core import (
    CENTER_GEN, IDENTITY, HeisElement, ball, binom2, commutator, conjugate, inv,
    is_central, mul, plane_ball, power,
)
from app.models import OracleTally
from app import oracles

logger = logging.getLogger(__name__)

MAX_BF_BOUND = 8


def egcd(p: int, q: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*p + t*q == g == gcd(p, q) >= 0"""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
        old_t, t = t, old_t - quotient * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def direction_gcd(g: HeisElement) -> int:
    return math.gcd(abs(g.a), abs(g.b))


def _divisors_descending(n: int) -> List[int]:
    return [int(k) for k in reversed(sympy.divisors(n))]


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """g == root ** exponent with root not a proper power"""
    root: HeisElement
    exponent: int

    def element(self) -> HeisElement:
        return power(self.root, self.exponent)

    def to_dict(self):
        return {'root': self.root.to_dict(), 'exponent': self.exponent}


class ClassKind(enum.Enum):
    NON_CENTRAL = 'NonCentralClass'
    CENTER = 'CenterZ'


@dataclass(frozen=True)
class ConjClassId:
    """Canonical id of a conjugacy class of maximal cyclic subgroups"""
    a: int
    b: int
    c_residue: int
    kind: ClassKind = ClassKind.NON_CENTRAL

    @property
    def is_center(self) -> bool:
        return self.kind is ClassKind.CENTER

    @property
    def d(self) -> int:
        return math.gcd(abs(self.a), abs(self.b))

    @property
    def direction(self) -> Tuple[int, int]:
        return self.a // self.d, self.b // self.d

    def representative(self) -> HeisElement:
        """Generator of the chosen representative subgroup"""
        if self.is_center:
            return CENTER_GEN
        return HeisElement(self.a, self.b, self.c_residue)

    def label(self) -> str:
        if self.is_center:
            return 'Z'
        return f'({self.a},{self.b},{self.c_residue})'

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'a': self.a,
            'b': self.b,
            'c_residue': self.c_residue,
        }

    def __lt__(self, other):
        return (self.kind.value, self.a, self.b, self.c_residue) < \
            (other.kind.value, other.a, other.b, other.c_residue)


CENTER_CLASS = ConjClassId(0, 0, 0, ClassKind.CENTER)


@dataclass(frozen=True)
class NormalizerLattice:
    """Normalizer of a non-central cyclic subgroup: {direction^t * center^z}"""
    direction_gen: HeisElement
    center_gen: HeisElement = CENTER_GEN

    @property
    def generators(self) -> Tuple[HeisElement, HeisElement]:
        return self.direction_gen, self.center_gen

    def contains(self, gamma: HeisElement) -> bool:
        return gamma.a * self.direction_gen.b - gamma.b * self.direction_gen.a == 0

    def exponents(self, n: HeisElement) -> Tuple[int, int]:
        """Coordinates (t, z) with n == direction^t * center^z"""
        if not self.contains(n):
            raise ValueError(f"{n!r} is not in the normalizer")
        a0, b0 = self.direction_gen.a, self.direction_gen.b
        t = n.a // a0 if a0 else n.b // b0
        return t, n.c - binom2(t) * a0 * b0

    def element(self, t: int, z: int) -> HeisElement:
        return mul(power(self.direction_gen, t), power(self.center_gen, z))

    def to_dict(self):
        return {
            'direction_gen': self.direction_gen.to_dict(),
            'center_gen': self.center_gen.to_dict(),
        }


@dataclass(frozen=True)
class Splitting:
    """Normalizer written as <h> x <u>"""
    h: HeisElement
    u: HeisElement
    exponent_matrix: Tuple[Tuple[int, int], Tuple[int, int]]
    lattice: NormalizerLattice

    @property
    def determinant(self) -> int:
        (d, p), (k, q) = self.exponent_matrix
        return d * q - p * k

    def factor(self, n: HeisElement) -> Tuple[int, int]:
        """Unique (j, m) with n == h^j * u^m"""
        t, z = self.lattice.exponents(n)
        (d, p), (k, q) = self.exponent_matrix
        det = self.determinant
        return (q * t - p * z) * det, (d * z - k * t) * det

    def projection(self, n: HeisElement) -> int:
        """Complement exponent of n; the translation it induces on the W-line"""
        return self.factor(n)[1]

    def direction_shift(self, n: HeisElement) -> int:
        """Translation n induces on the V-line, in units of the direction vector"""
        return self.lattice.exponents(n)[0]

    def to_dict(self):
        return {
            'h': self.h.to_dict(),
            'u': self.u.to_dict(),
            'exponent_matrix': [list(row) for row in self.exponent_matrix],
        }


@dataclass(frozen=True)
class ZHComparison:
    """Index of Z<g> in the normalizer of <g>"""
    index: int

    @property
    def is_equal(self) -> bool:
        return self.index == 1

    def to_dict(self):
        if self.is_equal:
            return {'relation': 'Equal'}
        return {'relation': 'ProperContainment', 'index': self.index}


@dataclass(frozen=True)
class SubgroupSpec:
    """Subgroup given by generators; never mutated by classification"""
    generators: Tuple[HeisElement, ...]

    @classmethod
    def of(cls, *generators) -> 'SubgroupSpec':
        return cls(tuple(g if isinstance(g, HeisElement) else HeisElement(*g)
                         for g in generators))

    def to_dict(self):
        return {'generators': [g.to_dict() for g in self.generators]}


class SubgroupKind(enum.Enum):
    TRIVIAL = 'Trivial'
    CENTRAL_CYCLIC = 'CentralCyclic'
    NON_CENTRAL_CYCLIC = 'NonCentralCyclic'
    ABELIAN_NON_CYCLIC = 'AbelianNonCyclic'
    NON_ABELIAN = 'NonAbelian'


@dataclass(frozen=True)
class SubgroupClass:
    kind: SubgroupKind
    generator: Optional[HeisElement] = None
    decomposition: Optional[PrimitiveDecomposition] = None

    @property
    def is_cyclic(self) -> bool:
        return self.kind in (SubgroupKind.TRIVIAL, SubgroupKind.CENTRAL_CYCLIC,
                             SubgroupKind.NON_CENTRAL_CYCLIC)

    def to_dict(self):
        data = {'kind': self.kind.value}
        if self.generator is not None:
            data['generator'] = self.generator.to_dict()
        if self.decomposition is not None:
            data['decomposition'] = self.decomposition.to_dict()
        return data


def primitive_root(g: HeisElement) -> PrimitiveDecomposition:
    """
    Write g as root ** exponent with root primitive

    Args:
        g: Non-identity element

    Returns:
        PrimitiveDecomposition; root generates the unique maximal cyclic
        subgroup containing g
    """
    if g.is_identity:
        raise IdentityInputError("no primitive root of identity")

    if is_central(g):
        return PrimitiveDecomposition(HeisElement(0, 0, 1 if g.c > 0 else -1), abs(g.c))

    for n in _divisors_descending(direction_gcd(g)):
        a1, b1 = g.a // n, g.b // n
        numerator = g.c - binom2(n) * a1 * b1
        if numerator % n == 0:
            return PrimitiveDecomposition(HeisElement(a1, b1, numerator // n), n)

    raise AssertionError("exponent 1 always succeeds")


def is_primitive(g: HeisElement) -> bool:
    return not g.is_identity and primitive_root(g).exponent == 1


def _require_primitive(g: HeisElement):
    if g.is_identity:
        raise IdentityInputError("identity does not generate a maximal cyclic subgroup")
    if primitive_root(g).exponent != 1:
        raise NotPrimitiveError("generator not primitive")


def _sign_normalized(g: HeisElement) -> HeisElement:
    if g.a < 0 or (g.a == 0 and g.b < 0):
        return inv(g)
    return g


def canonical_class(g: HeisElement) -> ConjClassId:
    """
    Canonical id of the conjugacy class of <g>

    Conjugation shifts c by x*b - y*a, which runs over d*Z, so the class is
    the sign-normalized direction together with c mod d.
    """
    _require_primitive(g)

    if is_central(g):
        return CENTER_CLASS

    g = _sign_normalized(g)
    return ConjClassId(g.a, g.b, g.c % direction_gcd(g))


def are_conjugate(g1: HeisElement, g2: HeisElement) -> bool:
    return canonical_class(g1) == canonical_class(g2)


def find_conjugator(g_from: HeisElement, g_to: HeisElement) -> HeisElement:
    """
    Find gamma with gamma * g_from * gamma^-1 == g_to

    g_from is replaced by its inverse first when the two point in opposite
    directions, so the subgroups <g_from> and <g_to> are what is matched.
    """
    if is_central(g_from) and is_central(g_to):
        if g_to in (g_from, inv(g_from)):
            return IDENTITY
        raise NotConjugateError(f"{g_from!r} and {g_to!r} are not conjugate")

    if (g_from.a, g_from.b) == (g_to.a, g_to.b):
        source = g_from
    elif (g_from.a, g_from.b) == (-g_to.a, -g_to.b):
        source = inv(g_from)
    else:
        raise NotConjugateError(f"{g_from!r} and {g_to!r} are not conjugate")

    delta = g_to.c - source.c
    g, s, t = egcd(source.b, -source.a)
    if delta % g:
        raise NotConjugateError(f"{g_from!r} and {g_to!r} are not conjugate")

    gamma = HeisElement(s * (delta // g), t * (delta // g), 0)
    if conjugate(gamma, source) != g_to:
        raise AssertionError(f"conjugator {gamma!r} failed to conjugate {source!r} to {g_to!r}")
    return gamma


def lattice_for(g: HeisElement) -> NormalizerLattice:
    d = direction_gcd(g)
    return NormalizerLattice(HeisElement(g.a // d, g.b // d, 0))


def normalizer(g: HeisElement) -> NormalizerLattice:
    """
    Normalizer of <g> for non-central g

    gamma g gamma^-1 == (a, b, c + x*b - y*a), so gamma normalizes <g>
    exactly when x*b - y*a == 0.
    """
    if g.is_identity or is_central(g):
        raise CentralInputError("normalizer of a central subgroup is the whole group")
    return lattice_for(g)


def compare_normalizer_zh(g: HeisElement) -> ZHComparison:
    """Index of Z<g> in N(<g>); the coordinates of g are (d, k), so it is d"""
    lattice = normalizer(g)
    t, _ = lattice.exponents(g)
    # Z<g> is spanned by (t, k) and (0, 1) inside the rank-2 lattice
    return ZHComparison(index=abs(t))


def splitting(g: HeisElement) -> Splitting:
    """
    Split N(<g>) as <g> x <u>

    g has coordinates (d, k); primitivity gives gcd(d, k) == 1, and the
    extended gcd completes (d, k) to a unimodular matrix whose second column
    is the coordinate vector of u.
    """
    if g.is_identity or is_central(g):
        raise CentralInputError("splitting needs a non-central generator")
    _require_primitive(g)

    lattice = normalizer(g)
    d, k = lattice.exponents(g)
    g_, s, t = egcd(d, k)
    if g_ != 1:
        raise SplittingError("primitive generator not a direct factor")

    p, q = -t, s
    u = lattice.element(p, q)
    result = Splitting(h=g, u=u, exponent_matrix=((d, p), (k, q)), lattice=lattice)
    logger.debug(f"Split normalizer of {g!r}: u={u!r}, det={result.determinant}")
    return result


@functools.lru_cache(maxsize=1024)
def class_splitting(cls: ConjClassId) -> Splitting:
    """Splitting of the normalizer of the class representative"""
    return splitting(cls.representative())


def coset_invariant(cls: ConjClassId, gamma: HeisElement) -> int:
    """Left cosets gamma*N are classified by x*b0 - y*a0"""
    a0, b0 = cls.direction
    return gamma.a * b0 - gamma.b * a0


def canonical_coset(cls: ConjClassId, gamma: HeisElement) -> HeisElement:
    """Canonical representative (x, y, 0) of gamma * N(H_cls)"""
    a0, b0 = cls.direction
    m = coset_invariant(cls, gamma)
    _, s, t = egcd(b0, -a0)
    return HeisElement(s * m, t * m, 0)


def in_cyclic(k: HeisElement, g: HeisElement) -> bool:
    """Exact membership of k in <g>"""
    if g.is_identity:
        return k.is_identity
    if is_central(g):
        return is_central(k) and k.c % g.c == 0
    if g.a:
        if k.a % g.a:
            return False
        n = k.a // g.a
    else:
        if k.b % g.b:
            return False
        n = k.b // g.b
    return power(g, n) == k


def subgroup_generated(g: HeisElement, h: HeisElement) -> Optional[HeisElement]:
    """
    Generator of <g, h> for commuting g, h, or None when it is not cyclic

    Both elements lie in the centralizer lattice of whichever one is
    non-central, where cyclicity means their coordinate vectors are parallel.
    """
    if g.is_identity:
        return h
    if h.is_identity:
        return g
    if not commutator(g, h).is_identity:
        raise ValueError("generators do not commute")

    if is_central(g) and is_central(h):
        return HeisElement(0, 0, math.gcd(g.c, h.c))

    lattice = lattice_for(h if is_central(g) else g)
    (x1, y1), (x2, y2) = lattice.exponents(g), lattice.exponents(h)
    if x1 * y2 - y1 * x2 != 0:
        return None

    m1 = math.gcd(x1, y1)
    px, py = x1 // m1, y1 // m1
    m2 = x2 // px if px else y2 // py
    step = math.gcd(m1, m2)
    return lattice.element(step * px, step * py)


def classify_subgroup(spec: SubgroupSpec) -> SubgroupClass:
    """
    Five-way classification of the subgroup generated by spec

    Generators are folded pairwise left to right once every pair is known
    to commute.
    """
    generators = list(spec.generators)
    if not generators:
        raise SubgroupSpecError("empty generator sequence")

    for g, h in itertools.combinations(generators, 2):
        if not commutator(g, h).is_identity:
            return SubgroupClass(SubgroupKind.NON_ABELIAN)

    current = IDENTITY
    for g in generators:
        current = subgroup_generated(current, g)
        if current is None:
            return SubgroupClass(SubgroupKind.ABELIAN_NON_CYCLIC)

    if current.is_identity:
        return SubgroupClass(SubgroupKind.TRIVIAL, generator=IDENTITY)

    decomposition = primitive_root(current)
    if is_central(current):
        return SubgroupClass(SubgroupKind.CENTRAL_CYCLIC,
                             generator=HeisElement(0, 0, abs(current.c)),
                             decomposition=decomposition)
    return SubgroupClass(SubgroupKind.NON_CENTRAL_CYCLIC, generator=current,
                         decomposition=decomposition)


def primitive_elements(bound: int, include_central=False) -> Iterable[HeisElement]:
    for g in ball(bound):
        if g.is_identity or (is_central(g) and not include_central):
            continue
        if primitive_root(g).exponent == 1:
            yield g


def bf_verify(bound: int, counterexample_limit: int = 20) -> dict:
    """
    Cross-check the classification against brute force on a ball

    Args:
        bound: Ball radius, 1..8
        counterexample_limit: Counterexamples kept per check

    Returns:
        JSON-ready report with per-check tallies and normalizer findings
    """
    is_valid, message = validate_bound(bound, MAX_BF_BOUND)
    if not is_valid:
        raise ValidationError(message)

    logger.info(f"Brute-force verification on ball {bound}")
    elements = list(ball(bound))
    primitives = list(primitive_elements(bound))
    conjugators = list(plane_ball(bound))

    tallies = [
        _check_primitive_roots(elements),
        _check_canonical_class(primitives, conjugators),
        *_check_conjugacy(primitives, 2 * bound),
        _check_normalizer_membership(primitives, conjugators),
        _check_splitting(primitives, elements),
    ]
    zh_tally, findings = _check_normalizer_zh(primitives)
    tallies.append(zh_tally)

    checks = sorted((t.finalize(counterexample_limit) for t in tallies), key=lambda t: t.name)
    failed = [t.name for t in checks if not t.passed]
    if failed:
        logger.error(f"Brute-force checks failed: {', '.join(failed)}")
    else:
        logger.info(f"All {len(checks)} brute-force checks passed on ball {bound}")

    return {
        'bound': bound,
        'checks': [t.to_dict() for t in checks],
        'findings': findings,
    }


def _check_primitive_roots(elements: Sequence[HeisElement]) -> OracleTally:
    tally = OracleTally('primitive_root')
    for g in elements:
        if g.is_identity:
            continue
        decomposition = primitive_root(g)
        expected = oracles.brute_max_exponent(g)
        ok = decomposition.element() == g and decomposition.exponent == expected
        tally.record(ok, {
            'input': [g.as_tuple()],
            'got': decomposition.exponent,
            'expected': expected,
        })
    return tally


def _check_canonical_class(primitives, conjugators) -> OracleTally:
    tally = OracleTally('canonical_class')
    for g in primitives:
        cls = canonical_class(g)
        ok = canonical_class(inv(g)) == cls and all(
            canonical_class(conjugate(gamma, g)) == cls for gamma in conjugators)
        tally.record(ok, {'input': [g.as_tuple()], 'class': cls.label()})
    return tally


def _check_conjugacy(primitives, conjugator_bound) -> Tuple[OracleTally, OracleTally]:
    """Compare are_conjugate with orbit search inside each +/- direction"""
    same_direction = defaultdict(list)
    for g in primitives:
        normalized = _sign_normalized(g)
        same_direction[normalized.a, normalized.b].append(g)

    conjugacy = OracleTally('are_conjugate')
    witness = OracleTally('find_conjugator')
    for group in same_direction.values():
        for g1 in group:
            orbit = oracles.brute_conjugacy_orbit(g1, conjugator_bound)
            for g2 in group:
                expected = g2 in orbit or inv(g2) in orbit
                got = are_conjugate(g1, g2)
                conjugacy.record(got == expected, {
                    'input': [g1.as_tuple(), g2.as_tuple()],
                    'got': got,
                    'expected': expected,
                })
                if got:
                    gamma = find_conjugator(g1, g2)
                    witness.record(conjugate(gamma, g1) in (g2, inv(g2)), {
                        'input': [g1.as_tuple(), g2.as_tuple()],
                        'conjugator': gamma.as_tuple(),
                    })
    return conjugacy, witness


def _check_normalizer_membership(primitives, conjugators) -> OracleTally:
    tally = OracleTally('normalizer_membership')
    for g in primitives:
        lattice = normalizer(g)
        for gamma in conjugators:
            got = lattice.contains(gamma)
            expected = oracles.brute_normalizes(gamma, g)
            tally.record(got == expected, {
                'input': [g.as_tuple(), gamma.as_tuple()],
                'got': got,
                'expected': expected,
            })
    return tally


def _check_splitting(primitives, elements) -> OracleTally:
    tally = OracleTally('splitting')
    central = [n for n in elements if is_central(n)]
    by_direction = defaultdict(list)
    for n in elements:
        if not is_central(n):
            d = direction_gcd(n)
            by_direction[n.a // d, n.b // d].append(n)

    for g in primitives:
        split = splitting(g)
        a0, b0 = split.lattice.direction_gen.a, split.lattice.direction_gen.b
        members = central + by_direction[a0, b0] + by_direction[-a0, -b0]
        ok = abs(split.determinant) == 1 and commutator(split.h, split.u).is_identity
        for n in members:
            if not ok:
                break
            j, m = split.factor(n)
            ok = oracles.brute_factors_as(split.h, split.u, j, m, n)
        tally.record(ok, {'input': [g.as_tuple()], 'u': split.u.as_tuple()})
    return tally


def _check_normalizer_zh(primitives) -> Tuple[OracleTally, list]:
    tally = OracleTally('compare_normalizer_zh')
    proper = {}
    iff_gcd_one = True
    for g in primitives:
        got = compare_normalizer_zh(g)
        expected = oracles.brute_zh_index(g)
        tally.record(got.index == expected, {
            'input': [g.as_tuple()],
            'got': got.index,
            'expected': expected,
        })
        if got.is_equal != (direction_gcd(g) == 1):
            iff_gcd_one = False
        if not got.is_equal:
            proper.setdefault(canonical_class(g), got.index)

    findings = [
        {
            'finding': 'normalizer_strictly_contains_zh',
            'class': cls.to_dict(),
            'index': index,
        }
        for cls, index in sorted(proper.items())
    ]
    if proper:
        logger.warning(f"Z*H differs from the normalizer for {len(proper)} classes")
    findings.append({
        'finding': 'zh_equal_iff_gcd_one',
        'holds': iff_gcd_one,
        'classes_tested': len({canonical_class(g) for g in primitives}),
    })
    return tally, findings
