"""
Integer chain complexes, chain maps and their homology

Matrices are dense numpy int64 grids. Every product, sum and Kronecker
product is computed on exact Python integers first and range-checked
before it is stored, so results never wrap silently.

Conventions:
    boundary(k) maps degree k to degree k-1 and has shape rank(k-1) x rank(k)
    product cells are ordered by (p, i, j) for sigma_i x tau_j with deg sigma = p
    d(sigma x tau) = d(sigma) x tau + (-1)^p sigma x d(tau)
    cone_n = C_{n-1} + D_n with d(x, y) = (-d x, phi x + d y)
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.error_handlers import (
    IntegerOverflowError,
    InvalidChainMapError,
    InvalidComplexError,
    MalformedSimplexError,
)
from app.heis_core import INT64_MAX, INT64_MIN

logger = logging.getLogger(__name__)


def _to_checked_int64(values: np.ndarray) -> np.ndarray:
    """Convert an object array of Python ints to int64, raising on overflow"""
    for value in values.flat:
        if value < INT64_MIN or value > INT64_MAX:
            raise IntegerOverflowError(f"integer overflow: {value} outside 64-bit range")
    return values.astype(np.int64)


class IntMatrix:
    """Immutable dense integer matrix with overflow-checked arithmetic"""

    __slots__ = ('entries',)

    def __init__(self, entries):
        array = np.asarray(entries)
        if array.ndim != 2:
            raise ValueError(f"IntMatrix needs a 2-D grid, got shape {array.shape}")
        if array.dtype != np.int64:
            array = _to_checked_int64(np.array(array, dtype=object).reshape(array.shape))
        else:
            array = array.copy()
        array.setflags(write=False)
        object.__setattr__(self, 'entries', array)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntMatrix':
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> 'IntMatrix':
        """Build from a row-major grid; cols is needed only when there are no rows"""
        rows = [list(row) for row in rows]
        if not rows:
            return cls.zeros(0, cols or 0)
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise ValueError(f"ragged rows: widths {sorted(widths)}")
        width = widths.pop()
        if cols is not None and cols != width:
            raise ValueError(f"expected {cols} columns, got {width}")
        grid = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if isinstance(value, bool) or int(value) != value:
                    raise ValueError(f"non-integer entry {value!r}")
                grid[i, j] = int(value)
        return cls(_to_checked_int64(grid))

    @property
    def shape(self) -> Tuple[int, int]:
        return int(self.entries.shape[0]), int(self.entries.shape[1])

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def exact(self) -> np.ndarray:
        """Entries as an object array of Python ints"""
        return self.entries.astype(object)

    def to_rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def is_zero(self) -> bool:
        return not self.entries.any()

    def transpose(self) -> 'IntMatrix':
        return IntMatrix(self.entries.T)

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(_to_checked_int64(self.exact() @ other.exact()))

    def __add__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return IntMatrix(_to_checked_int64(self.exact() + other.exact()))

    def __sub__(self, other: 'IntMatrix') -> 'IntMatrix':
        return self + (-other)

    def __neg__(self) -> 'IntMatrix':
        return self.scale(-1)

    def scale(self, k: int) -> 'IntMatrix':
        return IntMatrix(_to_checked_int64(self.exact() * k))

    def kron(self, other: 'IntMatrix') -> 'IntMatrix':
        br, bc = other.shape
        grid = np.zeros((self.rows * br, self.cols * bc), dtype=object)
        block = other.exact()
        for (i, j), value in np.ndenumerate(self.entries):
            if value:
                grid[i * br:(i + 1) * br, j * bc:(j + 1) * bc] = block * int(value)
        return IntMatrix(_to_checked_int64(grid))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.shape, self.entries.tobytes()))

    def __repr__(self):
        return f'<IntMatrix {self.rows}x{self.cols}>'


def assemble(row_sizes: Sequence[int], col_sizes: Sequence[int],
             blocks: Dict[Tuple[int, int], IntMatrix]) -> IntMatrix:
    """Block matrix from a sparse dict of (block_row, block_col) -> IntMatrix"""
    row_offsets = [0, *itertools.accumulate(row_sizes)]
    col_offsets = [0, *itertools.accumulate(col_sizes)]
    grid = np.zeros((row_offsets[-1], col_offsets[-1]), dtype=np.int64)
    for (i, j), block in blocks.items():
        expected = (row_sizes[i], col_sizes[j])
        if block.shape != expected:
            raise ValueError(f"block ({i},{j}) has shape {block.shape}, expected {expected}")
        grid[row_offsets[i]:row_offsets[i + 1], col_offsets[j]:col_offsets[j + 1]] = block.entries
    return IntMatrix(grid)


@dataclass(frozen=True)
class ChainComplex:
    """
    Finite chain complex of free abelian groups in degrees 0..top

    boundaries[k - 1] is the boundary out of degree k.
    """
    ranks: Tuple[int, ...]
    boundaries: Tuple[IntMatrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'ranks', tuple(int(r) for r in self.ranks))
        object.__setattr__(self, 'boundaries', tuple(self.boundaries))

        if not self.ranks:
            raise InvalidComplexError("complex needs at least degree 0")
        if any(r < 0 for r in self.ranks):
            raise InvalidComplexError(f"negative rank in {self.ranks}")
        if len(self.boundaries) != len(self.ranks) - 1:
            raise InvalidComplexError(
                f"{len(self.ranks)} degrees need {len(self.ranks) - 1} boundaries, "
                f"got {len(self.boundaries)}"
            )
        for k in range(1, self.top + 1):
            expected = (self.ranks[k - 1], self.ranks[k])
            if self.boundaries[k - 1].shape != expected:
                raise InvalidComplexError(
                    f"boundary {k} has shape {self.boundaries[k - 1].shape}, expected {expected}"
                )
        for k in range(2, self.top + 1):
            if not (self.boundaries[k - 2] @ self.boundaries[k - 1]).is_zero():
                raise InvalidComplexError(f"boundary {k - 1} * boundary {k} is not zero")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k <= self.top else 0

    def boundary(self, k: int) -> IntMatrix:
        """Boundary out of degree k, zero outside 1..top"""
        if 1 <= k <= self.top:
            return self.boundaries[k - 1]
        return IntMatrix.zeros(self.rank(k - 1), self.rank(k))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def to_dict(self):
        """Convert complex to its JSON form"""
        return {
            'ranks': list(self.ranks),
            'boundaries': [b.to_rows() for b in self.boundaries],
        }

    @classmethod
    def from_dict(cls, data) -> 'ChainComplex':
        ranks = [int(r) for r in data['ranks']]
        grids = data.get('boundaries', [])
        if len(grids) != len(ranks) - 1:
            raise InvalidComplexError(
                f"{len(ranks)} degrees need {len(ranks) - 1} boundaries, got {len(grids)}"
            )
        boundaries = [IntMatrix.from_rows(grid, cols=ranks[k + 1]) for k, grid in enumerate(grids)]
        return cls(tuple(ranks), tuple(boundaries))

    def __repr__(self):
        return f'<ChainComplex ranks={self.ranks}>'


@dataclass(frozen=True)
class ChainMap:
    """Degreewise integer matrices commuting with the boundaries"""
    source: ChainComplex
    target: ChainComplex
    components: Tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, 'components', tuple(self.components))
        if len(self.components) != len(self.source.ranks):
            raise InvalidChainMapError(
                f"expected {len(self.source.ranks)} components, got {len(self.components)}"
            )
        for k, component in enumerate(self.components):
            expected = (self.target.rank(k), self.source.rank(k))
            if component.shape != expected:
                raise InvalidChainMapError(
                    f"component {k} has shape {component.shape}, expected {expected}"
                )
        for k in range(1, self.source.top + 1):
            left = self.target.boundary(k) @ self.components[k]
            right = self.components[k - 1] @ self.source.boundary(k)
            if left != right:
                raise InvalidChainMapError(f"chain map does not commute with boundary {k}")

    def component(self, k: int) -> IntMatrix:
        if 0 <= k <= self.source.top:
            return self.components[k]
        return IntMatrix.zeros(self.target.rank(k), self.source.rank(k))

    def compose(self, other: 'ChainMap') -> 'ChainMap':
        """self after other"""
        if other.target != self.source:
            raise InvalidChainMapError("cannot compose: target and source differ")
        return ChainMap(
            other.source,
            self.target,
            tuple(self.component(k) @ other.component(k) for k in range(other.source.top + 1)),
        )

    def is_isomorphism(self) -> bool:
        """Square components with determinant +-1 in every degree"""
        for component in self.components:
            if component.rows != component.cols:
                return False
            form = smith_normal_form(component, track=False)
            if form.rank != component.rows or any(f != 1 for f in form.invariant_factors):
                return False
        return True

    def __repr__(self):
        return f'<ChainMap {self.source.ranks} -> {self.target.ranks}>'


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices 0..vertex_count-1 and maximal simplices as sorted vertex tuples"""
    vertex_count: int
    maximal: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'maximal', tuple(tuple(int(v) for v in s) for s in self.maximal))

    def validate(self):
        if self.vertex_count < 0:
            raise MalformedSimplexError(f"negative vertex count {self.vertex_count}")
        for simplex in self.maximal:
            if not simplex:
                raise MalformedSimplexError("empty simplex")
            if any(b <= a for a, b in zip(simplex, simplex[1:])):
                raise MalformedSimplexError(f"simplex {list(simplex)} is not strictly increasing")
            if simplex[0] < 0 or simplex[-1] >= self.vertex_count:
                raise MalformedSimplexError(
                    f"simplex {list(simplex)} refers to a vertex outside 0..{self.vertex_count - 1}"
                )

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.maximal), default=0)

    def facets(self) -> Tuple[Tuple[int, ...], ...]:
        """Maximal simplices plus every vertex no maximal simplex covers"""
        covered = {v for s in self.maximal for v in s}
        isolated = tuple((v,) for v in range(self.vertex_count) if v not in covered)
        return self.maximal + isolated

    def simplices(self) -> List[List[Tuple[int, ...]]]:
        """All faces grouped by dimension, each group sorted lexicographically"""
        faces = {(v,) for v in range(self.vertex_count)}
        for simplex in self.maximal:
            for size in range(1, len(simplex) + 1):
                faces.update(itertools.combinations(simplex, size))
        top = max((len(f) for f in faces), default=1) - 1
        return [sorted(f for f in faces if len(f) == dim + 1) for dim in range(top + 1)]

    def to_dict(self):
        return {'vertices': self.vertex_count, 'maximal': [list(s) for s in self.maximal]}

    @classmethod
    def from_dict(cls, data) -> 'SimplicialComplex':
        return cls(int(data['vertices']), tuple(tuple(s) for s in data['maximal']))


@dataclass(frozen=True)
class SmithForm:
    """left @ M @ right = diagonal, with the invariant factors on the diagonal"""
    invariant_factors: Tuple[int, ...]
    rank: int
    diagonal: IntMatrix
    left: Optional[IntMatrix] = None
    right: Optional[IntMatrix] = None

    def reproduces(self, matrix: IntMatrix) -> bool:
        if self.left is None or self.right is None:
            return False
        return self.left @ matrix @ self.right == self.diagonal


@dataclass(frozen=True)
class DegreeHomology:
    betti: int
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def describe(self) -> str:
        """Readable group: '0', 'Z', 'Z^2 + Z/2'"""
        parts = []
        if self.betti == 1:
            parts.append('Z')
        elif self.betti > 1:
            parts.append(f'Z^{self.betti}')
        parts.extend(f'Z/{t}' for t in self.torsion)
        return ' + '.join(parts) or '0'

    def to_dict(self):
        return {'betti': self.betti, 'torsion': list(self.torsion), 'group': self.describe()}


@dataclass(frozen=True)
class HomologyResult:
    degrees: Tuple[DegreeHomology, ...] = field(default_factory=tuple)

    @property
    def betti_numbers(self) -> List[int]:
        return [d.betti for d in self.degrees]

    @property
    def torsion(self) -> List[Tuple[int, ...]]:
        return [d.torsion for d in self.degrees]

    def degree(self, k: int) -> DegreeHomology:
        return self.degrees[k] if 0 <= k < len(self.degrees) else DegreeHomology(0)

    def trimmed(self) -> Tuple[DegreeHomology, ...]:
        """Degrees with trailing zero groups removed"""
        degrees = list(self.degrees)
        while degrees and degrees[-1].is_zero:
            degrees.pop()
        return tuple(degrees)

    def same_groups(self, other: 'HomologyResult') -> bool:
        return self.trimmed() == other.trimmed()

    def reduced_betti(self) -> List[int]:
        """Betti numbers with degree 0 lowered by one"""
        betti = self.betti_numbers
        if betti:
            betti[0] -= 1
        return betti

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti_numbers))

    @property
    def is_acyclic(self) -> bool:
        return all(d.is_zero for d in self.degrees)

    def describe(self) -> List[str]:
        return [d.describe() for d in self.degrees]

    def to_dict(self):
        return {
            'degrees': [dict(degree=k, **d.to_dict()) for k, d in enumerate(self.degrees)],
            'betti': self.betti_numbers,
        }


def smith_normal_form(matrix: IntMatrix, track: bool = True) -> SmithForm:
    """
    Smith normal form by repeated smallest-pivot elimination

    Runs on Python integers and range-checks the results. With track=True
    the unimodular left and right transforms are accumulated.

    Args:
        matrix: Integer matrix
        track: Accumulate the left/right transforms

    Returns:
        SmithForm with positive factors d1 | d2 | ... | dr
    """
    m, n = matrix.shape
    A = matrix.to_rows()
    L = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    R = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, q):
        A[target] = [x + q * y for x, y in zip(A[target], A[source])]
        if track:
            L[target] = [x + q * y for x, y in zip(L[target], L[source])]

    def add_col(target, source, q):
        for row in A:
            row[target] += q * row[source]
        if track:
            for row in R:
                row[target] += q * row[source]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)

        while True:
            pivot = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // pivot
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = A[t][j] // pivot
                if q:
                    add_col(j, t, -q)

            remainders = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
            remainders += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
            if remainders:
                _, is_col, index = min(remainders)
                if is_col:
                    swap_cols(t, index)
                else:
                    swap_rows(t, index)
                continue

            # pivot must divide the rest of the block
            bad_row = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % pivot), None
            )
            if bad_row is not None:
                add_row(t, bad_row, 1)
                continue
            break

        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                L[t] = [-x for x in L[t]]
        t += 1

    factors = tuple(A[k][k] for k in range(t))
    return SmithForm(
        invariant_factors=factors,
        rank=t,
        diagonal=IntMatrix.from_rows(A, cols=n),
        left=IntMatrix.from_rows(L, cols=m) if track else None,
        right=IntMatrix.from_rows(R, cols=n) if track else None,
    )


def homology(C: ChainComplex) -> HomologyResult:
    """Integer homology of every degree 0..top"""
    forms = {k: smith_normal_form(C.boundary(k), track=False) for k in range(1, C.top + 1)}

    def rank_of(k):
        return forms[k].rank if k in forms else 0

    degrees = []
    for k in range(C.top + 1):
        betti = C.rank(k) - rank_of(k) - rank_of(k + 1)
        torsion = tuple(f for f in forms[k + 1].invariant_factors if f > 1) if k + 1 in forms else ()
        degrees.append(DegreeHomology(betti, torsion))

    result = HomologyResult(tuple(degrees))
    logger.debug(f"Homology of {C!r}: {result.describe()}")
    return result


def point_complex() -> ChainComplex:
    return ChainComplex((1,), ())


def circle_complex() -> ChainComplex:
    """One 0-cell and one 1-cell with zero boundary"""
    return ChainComplex((1, 1), (IntMatrix.zeros(1, 1),))


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, tuple(IntMatrix.identity(r) for r in C.ranks))


def zero_map(source: ChainComplex, target: ChainComplex) -> ChainMap:
    return ChainMap(
        source, target, tuple(IntMatrix.zeros(target.rank(k), r) for k, r in enumerate(source.ranks))
    )


def negate(phi: ChainMap) -> ChainMap:
    return ChainMap(phi.source, phi.target, tuple(-c for c in phi.components))


def constant_map(C: ChainComplex) -> ChainMap:
    """Augmentation onto the point: every vertex to the point, higher cells to 0"""
    point = point_complex()
    components = [IntMatrix(np.ones((1, C.rank(0)), dtype=np.int64))]
    components += [IntMatrix.zeros(0, r) for r in C.ranks[1:]]
    return ChainMap(C, point, tuple(components))


def direct_sum(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    top = max(C.top, D.top)
    ranks = tuple(C.rank(k) + D.rank(k) for k in range(top + 1))
    boundaries = tuple(
        assemble(
            [C.rank(k - 1), D.rank(k - 1)],
            [C.rank(k), D.rank(k)],
            {(0, 0): C.boundary(k), (1, 1): D.boundary(k)},
        )
        for k in range(1, top + 1)
    )
    return ChainComplex(ranks, boundaries)


def _product_cells(C: ChainComplex, D: ChainComplex, n: int) -> List[Tuple[int, int]]:
    """(p, q) blocks of degree n in ascending p"""
    return [(p, n - p) for p in range(n + 1) if p <= C.top and n - p <= D.top]


def product_complex(C: ChainComplex, D: ChainComplex) -> Tuple[ChainComplex, Tuple[ChainMap, ChainMap]]:
    """
    Cellular product with the Leibniz boundary and its two projections

    The projections send sigma x vertex to sigma and are chain maps only when
    the boundary out of degree 1 has zero column sums in both factors.

    Args:
        C: First factor
        D: Second factor

    Returns:
        Tuple of (product complex, (projection onto C, projection onto D))
    """
    top = C.top + D.top
    cells = [_product_cells(C, D, n) for n in range(top + 1)]
    sizes = [[C.rank(p) * D.rank(q) for p, q in cells[n]] for n in range(top + 1)]
    ranks = tuple(sum(s) for s in sizes)

    boundaries = []
    for n in range(1, top + 1):
        lower = {cell: index for index, cell in enumerate(cells[n - 1])}
        blocks = {}
        for col, (p, q) in enumerate(cells[n]):
            if p >= 1:
                blocks[(lower[(p - 1, q)], col)] = C.boundary(p).kron(IntMatrix.identity(D.rank(q)))
            if q >= 1:
                block = IntMatrix.identity(C.rank(p)).kron(D.boundary(q))
                blocks[(lower[(p, q - 1)], col)] = block if p % 2 == 0 else -block
        boundaries.append(assemble(sizes[n - 1], sizes[n], blocks))

    product = ChainComplex(ranks, tuple(boundaries))

    first, second = [], []
    for n in range(top + 1):
        first_blocks, second_blocks = {}, {}
        for col, (p, q) in enumerate(cells[n]):
            if q == 0:
                ones = IntMatrix(np.ones((1, D.rank(0)), dtype=np.int64))
                first_blocks[(0, col)] = IntMatrix.identity(C.rank(p)).kron(ones)
            if p == 0:
                ones = IntMatrix(np.ones((1, C.rank(0)), dtype=np.int64))
                second_blocks[(0, col)] = ones.kron(IntMatrix.identity(D.rank(q)))
        first.append(assemble([C.rank(n)], sizes[n], first_blocks))
        second.append(assemble([D.rank(n)], sizes[n], second_blocks))

    projections = (ChainMap(product, C, tuple(first)), ChainMap(product, D, tuple(second)))
    return product, projections


def mapping_cone(phi: ChainMap) -> ChainComplex:
    """Algebraic mapping cone; its homology is the relative homology of phi"""
    C, D = phi.source, phi.target
    top = max(C.top + 1, D.top)
    ranks = tuple(C.rank(n - 1) + D.rank(n) for n in range(top + 1))
    boundaries = tuple(
        assemble(
            [C.rank(n - 2), D.rank(n - 1)],
            [C.rank(n - 1), D.rank(n)],
            {
                (0, 0): -C.boundary(n - 1),
                (1, 0): phi.component(n - 1),
                (1, 1): D.boundary(n),
            },
        )
        for n in range(1, top + 1)
    )
    return ChainComplex(ranks, boundaries)


def double_cylinder_complex(f: ChainMap, g: ChainMap) -> ChainComplex:
    """Chain model of the double mapping cylinder: the cone of x -> (f x, -g x)"""
    if f.source != g.source:
        raise InvalidChainMapError("double cylinder needs maps with the same source")

    target = direct_sum(f.target, g.target)
    components = tuple(
        assemble(
            [f.target.rank(k), g.target.rank(k)],
            [f.source.rank(k)],
            {(0, 0): f.component(k), (1, 0): -g.component(k)},
        )
        for k in range(f.source.top + 1)
    )
    return mapping_cone(ChainMap(f.source, target, components))


def from_simplicial(K: SimplicialComplex) -> ChainComplex:
    """Simplicial chains; the face dropping vertex i carries sign (-1)^i"""
    K.validate()
    levels = K.simplices()
    index = [{simplex: i for i, simplex in enumerate(level)} for level in levels]

    boundaries = []
    for dim in range(1, len(levels)):
        grid = np.zeros((len(levels[dim - 1]), len(levels[dim])), dtype=np.int64)
        for col, simplex in enumerate(levels[dim]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1:]
                grid[index[dim - 1][face], col] += (-1) ** i
        boundaries.append(IntMatrix(grid))

    return ChainComplex(tuple(len(level) for level in levels), tuple(boundaries))


def simplicial_join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join with the vertices of L shifted past those of K"""
    shift = K.vertex_count
    left = K.facets() or ((),)
    right = tuple(tuple(v + shift for v in s) for s in L.facets()) or ((),)
    maximal = tuple(s + t for s, t in itertools.product(left, right) if s + t)
    return SimplicialComplex(K.vertex_count + L.vertex_count, maximal)


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a triangulated (n-1)-sphere"""
    return SimplicialComplex(n + 1, tuple(itertools.combinations(range(n + 1), n)))


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n + 1, (tuple(range(n + 1)),))


def torus_complex() -> Tuple[ChainComplex, Tuple[ChainMap, ChainMap]]:
    """Product of two circles with its coordinate projections"""
    return product_complex(circle_complex(), circle_complex())


def s3_via_double_cylinder() -> ChainComplex:
    torus, (first, second) = torus_complex()
    return double_cylinder_complex(first, second)


def s3_via_join() -> ChainComplex:
    return from_simplicial(simplicial_join(simplex_boundary(2), simplex_boundary(2)))


def random_simplicial_complex(rng: np.random.Generator, max_vertices: int = 6,
                              max_simplices: int = 4, max_dim: int = 3) -> SimplicialComplex:
    """Small random complex for property checks"""
    vertex_count = int(rng.integers(1, max_vertices + 1))
    maximal = []
    for _ in range(int(rng.integers(1, max_simplices + 1))):
        size = int(rng.integers(1, min(max_dim + 1, vertex_count) + 1))
        vertices = rng.choice(vertex_count, size=size, replace=False)
        maximal.append(tuple(sorted(int(v) for v in vertices)))
    return SimplicialComplex(vertex_count, tuple(maximal))
