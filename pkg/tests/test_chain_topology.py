"""
Tests for the chain complex engine
"""
import math

import numpy as np
import pytest
import sympy

from app.chain_topology import (
    ChainComplex, ChainMap, DegreeHomology, IntMatrix, SimplicialComplex,
    circle_complex, constant_map, direct_sum, double_cylinder_complex, from_simplicial,
    full_simplex, homology, identity_map, mapping_cone, negate, point_complex,
    product_complex, random_simplicial_complex, s3_via_double_cylinder, s3_via_join,
    simplex_boundary, simplicial_join, smith_normal_form, torus_complex, zero_map,
)
from app.error_handlers import (
    IntegerOverflowError, InvalidChainMapError, InvalidComplexError, MalformedSimplexError,
)


def groups(C):
    return [d.describe() for d in homology(C).trimmed()]


def moore_z2():
    return ChainComplex((1, 1), (IntMatrix.from_rows([[2]]),))


def sympy_matrix(m):
    return sympy.Matrix(m.to_rows())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


class TestIntMatrix:
    def test_arithmetic(self):
        """Matrix product, sum, difference, negation and transpose"""
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_rows() == [[2, 1], [4, 3]]
        assert (a + b).to_rows() == [[1, 3], [4, 4]]
        assert (a - b).to_rows() == [[1, 1], [2, 4]]
        assert (-a).to_rows() == [[-1, -2], [-3, -4]]
        assert a.transpose().to_rows() == [[1, 3], [2, 4]]

    def test_kron(self):
        """Kronecker products, including empty factors"""
        a = IntMatrix.from_rows([[1, 2]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert a.kron(b).to_rows() == [[0, 1, 0, 2], [1, 0, 2, 0]]
        assert IntMatrix.identity(0).kron(b).shape == (0, 0)

    def test_empty_shapes(self):
        """Zero-sized matrices keep their shapes through products"""
        assert IntMatrix.from_rows([], cols=3).shape == (0, 3)
        product = IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3)
        assert product == IntMatrix.zeros(2, 3)

    def test_rejects_bad_grids(self):
        """Ragged, fractional or mis-sized grids are rejected"""
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1.5]])
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2]], cols=3)

    def test_overflow(self):
        """Entries and results outside int64 raise IntegerOverflowError"""
        with pytest.raises(IntegerOverflowError):
            IntMatrix.from_rows([[2 ** 63]])
        big = IntMatrix.from_rows([[2 ** 62]])
        with pytest.raises(IntegerOverflowError):
            big @ IntMatrix.from_rows([[4]])
        with pytest.raises(IntegerOverflowError):
            big + big

    def test_immutable(self):
        """Matrices cannot be modified after construction"""
        a = IntMatrix.identity(2)
        with pytest.raises(AttributeError):
            a.entries = None
        with pytest.raises(ValueError):
            a.entries[0, 0] = 5


class TestSmithNormalForm:
    @pytest.mark.parametrize('rows, factors', [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[6, 4], [2, 2]], (2, 2)),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
        ([[0, 0], [0, 0]], ()),
        ([[2]], (2,)),
        ([[-3, 0, 0]], (3,)),
    ])
    def test_examples(self, rows, factors):
        """Invariant factors of hand-computed examples"""
        matrix = IntMatrix.from_rows(rows)
        form = smith_normal_form(matrix)
        assert form.invariant_factors == factors
        assert form.rank == len(factors)
        assert form.reproduces(matrix)

    def test_untracked_form_has_no_transforms(self):
        """Skipping transforms still yields the invariant factors"""
        form = smith_normal_form(IntMatrix.from_rows([[4, 6]]), track=False)
        assert form.invariant_factors == (2,)
        assert form.left is None and form.right is None
        assert not form.reproduces(IntMatrix.from_rows([[4, 6]]))

    def test_random_matrices_against_sympy(self, rng):
        """Random matrices agree with sympy on rank and determinant"""
        for _ in range(40):
            m, n = (int(x) for x in rng.integers(1, 6, size=2))
            matrix = IntMatrix.from_rows(rng.integers(-4, 5, size=(m, n)).tolist())
            form = smith_normal_form(matrix)

            assert form.reproduces(matrix)
            assert abs(sympy_matrix(form.left).det()) == 1
            assert abs(sympy_matrix(form.right).det()) == 1
            assert form.rank == sympy_matrix(matrix).rank()

            factors = form.invariant_factors
            assert all(f > 0 for f in factors)
            assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
            if m == n and form.rank == m:
                assert math.prod(factors) == abs(sympy_matrix(matrix).det())

            diagonal = form.diagonal.to_rows()
            off_diagonal = [diagonal[i][j] for i in range(m) for j in range(n) if i != j]
            assert not any(off_diagonal)


class TestChainComplex:
    def test_validation(self):
        """Shape mismatches and nonzero boundary composites are rejected"""
        with pytest.raises(InvalidComplexError):
            ChainComplex((1, 1), ())
        with pytest.raises(InvalidComplexError):
            ChainComplex((1, 2), (IntMatrix.zeros(1, 1),))
        with pytest.raises(InvalidComplexError):
            ChainComplex(
                (1, 1, 1),
                (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])),
            )
        with pytest.raises(InvalidComplexError):
            ChainComplex((), ())

    def test_boundary_outside_range_is_zero(self):
        """Boundaries beyond the top degree are empty"""
        C = circle_complex()
        assert C.boundary(0).shape == (0, 1)
        assert C.boundary(2).shape == (1, 0)
        assert C.rank(5) == 0

    def test_dict_form(self):
        """The dict form loads back to an equal object"""
        C = moore_z2()
        assert C.to_dict() == {'ranks': [1, 1], 'boundaries': [[[2]]]}
        assert ChainComplex.from_dict(C.to_dict()) == C
        with pytest.raises(InvalidComplexError):
            ChainComplex.from_dict({'ranks': [1, 1], 'boundaries': []})

    def test_euler_characteristic(self):
        """Euler characteristic from ranks"""
        assert circle_complex().euler_characteristic() == 0
        assert point_complex().euler_characteristic() == 1


class TestHomology:
    def test_point_and_circle(self):
        """Homology of a point and of a circle"""
        assert groups(point_complex()) == ['Z']
        assert groups(circle_complex()) == ['Z', 'Z']

    def test_torsion(self):
        """Torsion shows up as Z/n"""
        result = homology(moore_z2())
        assert result.degree(0) == DegreeHomology(0, (2,))
        assert result.degree(1).is_zero
        assert result.describe() == ['Z/2', '0']

    def test_torus(self):
        """The torus has homology Z, Z^2, Z"""
        torus, _ = torus_complex()
        assert torus.ranks == (1, 2, 1)
        assert groups(torus) == ['Z', 'Z^2', 'Z']

    def test_s3_double_cylinder(self):
        """The double cylinder of the torus projections is a homology 3-sphere"""
        assert groups(s3_via_double_cylinder()) == ['Z', '0', '0', 'Z']
        assert s3_via_double_cylinder().euler_characteristic() == 0

    def test_s3_join(self):
        """The join of two triangle boundaries is a homology 3-sphere"""
        join = simplicial_join(simplex_boundary(2), simplex_boundary(2))
        assert join.vertex_count == 6
        assert len(join.maximal) == 9
        C = from_simplicial(join)
        assert C.ranks == (6, 15, 18, 9)
        assert groups(C) == ['Z', '0', '0', 'Z']

    def test_s3_pipelines_agree(self):
        """Both S3 constructions give the same groups"""
        assert homology(s3_via_double_cylinder()).same_groups(homology(s3_via_join()))

    def test_simplicial_examples(self):
        """Homology of simplex boundaries, a full simplex and two points"""
        assert groups(from_simplicial(simplex_boundary(2))) == ['Z', 'Z']
        assert groups(from_simplicial(simplex_boundary(3))) == ['Z', '0', 'Z']
        assert groups(from_simplicial(full_simplex(3))) == ['Z']
        two_points = SimplicialComplex(2, ())
        assert groups(from_simplicial(two_points)) == ['Z^2']

    def test_homology_summaries(self):
        """Betti numbers, reduced Betti numbers and the dict summary"""
        result = homology(from_simplicial(simplex_boundary(3)))
        assert result.betti_numbers == [1, 0, 1]
        assert result.reduced_betti() == [0, 0, 1]
        assert result.euler_characteristic() == 2
        data = result.to_dict()
        assert data['betti'] == [1, 0, 1]
        assert data['degrees'][2] == {'degree': 2, 'betti': 1, 'torsion': [], 'group': 'Z'}

    def test_describe_direct_sum(self):
        """Groups are written as a direct sum of free and torsion parts"""
        assert DegreeHomology(2, (2, 4)).describe() == 'Z^2 + Z/2 + Z/4'
        assert DegreeHomology(0).describe() == '0'

    def test_euler_characteristic_matches_ranks(self, rng):
        """Euler characteristic from homology matches the one from ranks"""
        for _ in range(25):
            C = from_simplicial(random_simplicial_complex(rng))
            assert homology(C).euler_characteristic() == C.euler_characteristic()
            assert homology(C).betti_numbers[0] >= 1


class TestSimplicial:
    def test_faces_and_signs(self):
        """Faces carry alternating signs"""
        C = from_simplicial(full_simplex(2))
        assert C.ranks == (3, 3, 1)
        # edges (0,1), (0,2), (1,2); face dropping vertex i has sign (-1)^i
        assert C.boundary(2).to_rows() == [[1], [-1], [1]]
        assert C.boundary(1).to_rows() == [[-1, -1, 0], [1, 0, -1], [0, 1, 1]]

    @pytest.mark.parametrize('maximal', [
        ((),),
        ((1, 0),),
        ((0, 0),),
        ((0, 5),),
        ((-1, 0),),
    ])
    def test_malformed_simplices(self, maximal):
        """Empty, unsorted, repeated or out-of-range simplices are rejected"""
        with pytest.raises(MalformedSimplexError):
            from_simplicial(SimplicialComplex(3, maximal))

    def test_join_with_empty_complex(self):
        """Joining with the empty complex changes nothing"""
        K = simplex_boundary(2)
        joined = simplicial_join(K, SimplicialComplex(0, ()))
        assert joined.maximal == K.maximal

    def test_join_of_two_points_is_an_edge(self):
        """Isolated vertices take part in the join"""
        joined = simplicial_join(SimplicialComplex(1, ()), SimplicialComplex(1, ()))
        assert joined.maximal == ((0, 1),)
        assert groups(from_simplicial(joined)) == ['Z']

    def test_join_cones_isolated_vertex(self):
        """An isolated vertex of K is coned off along with the rest of K"""
        K = SimplicialComplex(3, ((0, 1),))
        joined = simplicial_join(K, SimplicialComplex(1, ((0,),)))
        assert joined.maximal == ((0, 1, 3), (2, 3))
        assert groups(from_simplicial(joined)) == ['Z']

    def test_facets_include_isolated_vertices(self):
        """Uncovered vertices are listed after the maximal simplices"""
        assert SimplicialComplex(4, ((1, 2),)).facets() == ((1, 2), (0,), (3,))

    def test_dict_form(self):
        """The dict form loads back to an equal object"""
        K = simplex_boundary(2)
        assert SimplicialComplex.from_dict(K.to_dict()) == K


class TestChainMaps:
    def test_identity_and_composition(self):
        """Identity maps compose to themselves and are isomorphisms"""
        C = circle_complex()
        phi = identity_map(C)
        assert phi.compose(phi) == phi
        assert phi.is_isomorphism()
        assert not zero_map(C, C).is_isomorphism()

    def test_negate(self):
        """Negated identity is still an isomorphism"""
        phi = negate(identity_map(circle_complex()))
        assert phi.components[0].to_rows() == [[-1]]
        assert phi.is_isomorphism()

    def test_component_count_checked(self):
        """A chain map needs one component per degree"""
        with pytest.raises(InvalidChainMapError):
            ChainMap(circle_complex(), point_complex(), (IntMatrix.zeros(1, 1),))

    def test_component_shape_checked(self):
        """Components must match the ranks they connect"""
        with pytest.raises(InvalidChainMapError):
            ChainMap(point_complex(), point_complex(), (IntMatrix.zeros(2, 1),))

    def test_must_commute_with_boundary(self):
        """Components that do not commute with the boundary are rejected"""
        C = circle_complex()
        with pytest.raises(InvalidChainMapError):
            ChainMap(moore_z2(), C, (IntMatrix.identity(1), IntMatrix.identity(1)))

    def test_compose_checks_endpoints(self):
        """Maps compose only when target and source agree"""
        with pytest.raises(InvalidChainMapError):
            identity_map(circle_complex()).compose(identity_map(point_complex()))

    def test_double_cylinder_needs_common_source(self):
        """Double cylinders need two maps out of the same complex"""
        with pytest.raises(InvalidChainMapError):
            double_cylinder_complex(identity_map(circle_complex()), identity_map(point_complex()))


class TestCones:
    def test_cone_of_identity_is_acyclic(self):
        """The cone of an identity has no homology"""
        for C in (circle_complex(), torus_complex()[0], from_simplicial(simplex_boundary(3))):
            assert homology(mapping_cone(identity_map(C))).is_acyclic

    def test_cone_of_isomorphism_is_acyclic(self):
        """The cone of any isomorphism has no homology"""
        C = torus_complex()[0]
        assert homology(mapping_cone(negate(identity_map(C)))).is_acyclic

    def test_cone_of_zero_map(self):
        """The cone of a zero map keeps the homology of both ends"""
        # relative homology of the zero chain map keeps both complexes
        cone = mapping_cone(zero_map(circle_complex(), point_complex()))
        assert cone.ranks == (1, 1, 1)
        assert groups(cone) == ['Z', 'Z', 'Z']

    def test_cone_of_augmentation(self):
        """The cone of the map to a point suspends the circle"""
        cone = mapping_cone(constant_map(circle_complex()))
        assert homology(cone).describe() == ['0', '0', 'Z']

    def test_cone_shape(self):
        """Cone ranks and block boundaries"""
        cone = mapping_cone(identity_map(circle_complex()))
        assert cone.ranks == (1, 2, 1)
        assert cone.boundary(1).to_rows() == [[1, 0]]
        assert cone.boundary(2).to_rows() == [[0], [1]]

    def test_cylinder_of_identities(self):
        """The double cylinder of two identities has the homology of the source"""
        C = from_simplicial(simplex_boundary(2))
        cylinder = double_cylinder_complex(identity_map(C), identity_map(C))
        assert homology(cylinder).same_groups(homology(C))

    def test_direct_sum(self):
        """Homology of a direct sum adds up"""
        C = direct_sum(circle_complex(), from_simplicial(simplex_boundary(3)))
        assert groups(C) == ['Z^2', 'Z', 'Z']


class TestProducts:
    def test_product_projections_are_chain_maps(self):
        """Products come with projections onto both factors"""
        K = from_simplicial(simplex_boundary(2))
        product, (first, second) = product_complex(K, K)
        assert product.ranks == (9, 18, 9)
        assert first.target == K and second.target == K
        assert groups(product) == ['Z', 'Z^2', 'Z']

    def test_triangulated_torus_cylinder_is_s3(self):
        """Using triangle boundaries for the circles still gives S3"""
        K = from_simplicial(simplex_boundary(2))
        _, (first, second) = product_complex(K, K)
        assert groups(double_cylinder_complex(first, second)) == ['Z', '0', '0', 'Z']

    def test_product_with_point(self):
        """Product with a point returns the complex itself"""
        C = from_simplicial(simplex_boundary(3))
        product, _ = product_complex(C, point_complex())
        assert product == C

    def test_kunneth_betti_numbers(self, rng):
        """Betti numbers of a product are the convolution of the factors"""
        for _ in range(5):
            K = random_simplicial_complex(rng, max_vertices=4, max_simplices=3, max_dim=2)
            L = random_simplicial_complex(rng, max_vertices=4, max_simplices=3, max_dim=2)
            C, D = from_simplicial(K), from_simplicial(L)
            product, _ = product_complex(C, D)
            expected = np.convolve(homology(C).betti_numbers, homology(D).betti_numbers)
            assert homology(product).betti_numbers == [int(b) for b in expected]
