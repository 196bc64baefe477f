"""
Tests for the symbolic double mapping cylinder
"""
from fractions import Fraction

import pytest

from app.cyclic_class import SubgroupSpec, canonical_class
from app.error_handlers import CensusError
from app.heis_core import IDENTITY, ball, conjugate, mul, plane_ball
from app.model_e import (
    FixedSetKind, Interior, IsotropyKind, Side, VPoint, WPoint, act, fixed_point_census,
    fixed_set, interior_point, isotropy, limit_point, sample_points, v_point, w_point,
)


@pytest.fixture
def line_class(H):
    return canonical_class(H(0, 1, 0))


@pytest.fixture
def points():
    return sample_points(20)


def test_v_points_translate(H):
    """Elements translate V by their (a, b) part"""
    assert act(H(1, 2, 0), v_point(0, 0)) == v_point(1, 2)
    assert act(H(-3, 1, 9), v_point(Fraction(1, 2), 4)) == v_point(Fraction(-5, 2), 5)


def test_center_fixes_v(H):
    """The center acts trivially on V"""
    p = v_point(Fraction(1, 3), -2)
    assert act(H(0, 0, 5), p) == p


def test_w_point_uses_canonical_coset(H, line_class):
    """W-points sit on canonical cosets and the center slides along the line"""
    p = w_point(line_class, IDENTITY, 0)
    assert p == WPoint(line_class, IDENTITY, Fraction(0))

    # (0, 1, 0) generates the class subgroup itself
    assert act(H(0, 1, 0), p) == p
    # the center slides along the line
    assert act(H(0, 0, 1), p) == WPoint(line_class, IDENTITY, Fraction(1))
    # (1, 0, 0) lands on a different line
    moved = act(H(1, 0, 0), p)
    assert moved.coset == H(1, 0, 0)
    assert moved.w == 0


def test_w_point_absorbs_normalizer_part(H, line_class):
    """Normalizer parts of the coset move into the line coordinate"""
    assert w_point(line_class, H(0, 0, 3), Fraction(1, 2)) == w_point(line_class, IDENTITY, Fraction(7, 2))
    assert w_point(line_class, H(0, 5, 0), 0) == w_point(line_class, IDENTITY, 0)


def test_identity_acts_trivially(points):
    """The identity fixes every sample point"""
    for p in points:
        assert act(IDENTITY, p) == p


def test_action_composes(points):
    """act(gh, p) equals act(g, act(h, p)) for g and h in the unit ball"""
    elements = list(ball(1))
    for g in elements:
        for h in elements:
            for p in points:
                assert act(mul(g, h), p) == act(g, act(h, p))


def test_act_rejects_other_objects(H):
    """Acting on something that is not a point raises TypeError"""
    with pytest.raises(TypeError):
        act(H(1, 0, 0), (0, 0))


def test_interior_parameter_is_open(line_class):
    """Cylinder parameters must lie strictly between 0 and 1"""
    with pytest.raises(ValueError):
        interior_point(line_class, IDENTITY, 0, 0, Side.TOWARD_V, 0)
    with pytest.raises(ValueError):
        interior_point(line_class, IDENTITY, 0, 0, Side.TOWARD_W, 1)


def test_isotropy_kinds(H, line_class):
    """Isotropy is the center on V, a cyclic group on W and trivial inside"""
    assert isotropy(v_point(0, 0)).kind is IsotropyKind.CENTER
    assert isotropy(interior_point(line_class, IDENTITY, 0, 0, Side.TOWARD_W, Fraction(1, 2))).kind \
        is IsotropyKind.TRIVIAL

    desc = isotropy(w_point(line_class, H(3, 0, 0), 0))
    assert desc.kind is IsotropyKind.MAX_CYCLIC_CONJ
    assert desc.conjugator == H(3, 0, 0)
    assert desc.generator() == conjugate(H(3, 0, 0), H(0, 1, 0))


def test_isotropy_generator_fixes_its_point(points):
    """The isotropy generator fixes the point it came from"""
    for p in points:
        generator = isotropy(p).generator()
        if generator is not None:
            assert act(generator, p) == p


def test_isotropy_is_equivariant(points):
    """Moving a point conjugates its isotropy"""
    for gamma in plane_ball(1):
        for p in points:
            assert isotropy(act(gamma, p)) == isotropy(p).conjugated_by(gamma)


def test_interior_points_are_moved_by_everything_else(points):
    """Only the identity fixes a cylinder interior point"""
    interiors = [p for p in points if isinstance(p, Interior)]
    for gamma in ball(1):
        if gamma.is_identity:
            continue
        for p in interiors:
            assert act(gamma, p) != p


@pytest.mark.parametrize('generators, kind, case', [
    ([(1, 0, 0), (0, 1, 0)], FixedSetKind.EMPTY, 'D'),
    ([(1, 0, 0), (0, 0, 1)], FixedSetKind.EMPTY, 'D'),
    ([(0, 0, 0)], FixedSetKind.WHOLE_E, 'C'),
    ([(0, 0, 2)], FixedSetKind.V_PLANE, 'B'),
    ([(4, 6, 8)], FixedSetKind.W_LINE, 'A'),
    ([(2, 0, 1)], FixedSetKind.W_LINE, 'A'),
])
def test_fixed_set_cases(generators, kind, case):
    """Fixed-set case for each kind of subgroup"""
    desc = fixed_set(SubgroupSpec.of(*generators))
    assert desc.kind is kind
    assert desc.case == case
    assert desc.to_dict()['case'] == case


def test_fixed_line_carries_the_subgroup(H):
    """A fixed W-line lies over a coset conjugating the subgroup into its class"""
    desc = fixed_set(SubgroupSpec.of((4, 6, 8)))
    assert desc.conj_class == canonical_class(H(2, 3, 1))
    assert conjugate(desc.coset, desc.conj_class.representative()) == H(2, 3, 1)
    assert desc.contains(w_point(desc.conj_class, desc.coset, Fraction(1, 2)))
    assert not desc.contains(w_point(desc.conj_class, IDENTITY, 0))


@pytest.mark.parametrize('generators', [
    [(2, 3, 1)],
    [(4, 6, 8)],
    [(0, 1, 0)],
    [(0, 0, 2)],
    [(0, 0, 0)],
    [(1, 0, 0), (0, 1, 0)],
    [(2, 0, 1), (0, 0, 1)],
])
def test_fixed_set_matches_action(generators, points):
    """Points reported fixed are exactly the points the action fixes"""
    spec = SubgroupSpec.of(*generators)
    desc = fixed_set(spec)
    extra = []
    if desc.kind is FixedSetKind.W_LINE:
        extra = [w_point(desc.conj_class, desc.coset, w) for w in (0, Fraction(-1, 3))]
    for p in points + extra:
        fixed = all(act(g, p) == p for g in spec.generators)
        assert desc.contains(p) == fixed, p


@pytest.mark.parametrize('generator, computed, zh', [
    ((0, 1, 0), 1, 1),
    ((1, 1, 0), 1, 1),
    ((2, 0, 1), 1, 2),
])
def test_fixed_point_census(generator, computed, zh):
    """Coset counts under the computed normalizer and under Z*H"""
    census = fixed_point_census(SubgroupSpec.of(generator), 4)
    assert census.computed_normalizer == computed
    assert census.zh == zh
    assert census.to_dict() == {'computed_normalizer': computed, 'zh': zh}


def test_census_representatives_conjugate_into_the_subgroup(H):
    """Every census representative conjugates the class into the subgroup"""
    census = fixed_point_census(SubgroupSpec.of((2, 0, 1)), 4)
    rep = census.conj_class.representative()
    for gamma in census.zh_representatives:
        assert conjugate(gamma, rep) in (H(2, 0, 1), H(-2, 0, -1))


@pytest.mark.parametrize('generators', [
    [(0, 0, 1)],
    [(0, 0, 0)],
    [(1, 0, 0), (0, 1, 0)],
])
def test_census_needs_non_central_cyclic(generators):
    """The census rejects subgroups that are not non-central cyclic"""
    with pytest.raises(CensusError):
        fixed_point_census(SubgroupSpec.of(*generators), 3)


def test_limit_point_ends(H, line_class):
    """Interior points limit to their V and W ends"""
    p = interior_point(line_class, H(1, 0, 0), Fraction(1, 2), 3, Side.TOWARD_V, Fraction(1, 4))
    assert limit_point(p) == VPoint(Fraction(1), Fraction(1, 2))

    q = interior_point(line_class, H(1, 0, 0), Fraction(1, 2), 3, Side.TOWARD_W, Fraction(1, 4))
    assert limit_point(q) == WPoint(line_class, H(1, 0, 0), Fraction(3))


def test_limit_point_is_equivariant(points):
    """Limit maps commute with the action"""
    interiors = [p for p in points if isinstance(p, Interior)]
    for gamma in ball(1):
        for p in interiors:
            assert limit_point(act(gamma, p)) == act(gamma, limit_point(p))


def test_sample_points_are_deterministic():
    """Sampling returns the same points each time"""
    first = sample_points(5)
    assert first == sample_points(5)
    assert len(first) == 15
    assert sum(isinstance(p, VPoint) for p in first) == 5
    assert sum(isinstance(p, WPoint) for p in first) == 5


def test_point_dicts(line_class):
    """Points serialize with their kind and exact coordinates"""
    assert v_point(Fraction(1, 2), 0).to_dict() == {'kind': 'V', 'x': '1/2', 'y': '0'}
    data = w_point(line_class, IDENTITY, Fraction(-3, 4)).to_dict()
    assert data['kind'] == 'W'
    assert data['w'] == '-3/4'
    assert data['class']['kind'] == 'NonCentralClass'
