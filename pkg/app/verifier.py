"""
Verification suites behind the verify-all command

Each suite returns a list of checks plus a list of findings. Findings record
where the computed objects differ from the textbook description of the
space; they never fail a run.
"""
import functools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app import chain_topology as ct
from app.cyclic_class import (
    MAX_BF_BOUND, SubgroupSpec, bf_verify, primitive_elements,
)
from app.error_handlers import ValidationError, validate_bound
from app.heis_core import (
    CENTER_GEN, IDENTITY, HeisElement, ball, conjugate, inv, mul, power,
)
from app.model_e import (
    Interior, VPoint, WPoint, act, fixed_point_census, fixed_set, isotropy,
    limit_point, sample_points,
)
from app.models import FAIL, PASS, Check, OracleTally, Report

logger = logging.getLogger(__name__)

MAX_VERIFY_BOUND = 6

# Pairwise group-law and action checks stay on the ball of radius 3
GROUP_LAW_BOUND = 3
POWER_RANGE = 6
CENSUS_BOUND = 4

# Points of each kind in the action and fixed-set samples
SAMPLE_PER_KIND = 20

# Second factor of the composition law ranges over this ball
COMPOSITION_BOUND = 1

# Examples with a known fixed-set case
FIXED_SET_TABLE = [
    ([(0, 0, 5)], 'B'),
    ([(0, 0, 0)], 'C'),
    ([(1, 0, 0), (0, 1, 0)], 'D'),
    ([(1, 0, 0), (0, 0, 1)], 'D'),
    ([(2, 0, 0), (3, 0, 1)], 'D'),
    ([(0, 1, 0)], 'A'),
    ([(4, 6, 8)], 'A'),
    ([(2, 0, 1)], 'A'),
    ([(0, 0, 2), (0, 0, 3)], 'B'),
    ([(1, 1, 0), (2, 2, 1)], 'A'),
]

SuiteResult = Tuple[List[Check], List[Dict]]


def _tally_check(tally: OracleTally, limit: int) -> Check:
    tally.finalize(limit)
    return Check(tally.name, PASS if tally.passed else FAIL, tally.to_dict())


def _mul_rows(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Group law on broadcast (..., 3) coordinate arrays"""
    a = x[..., 0] + y[..., 0]
    b = x[..., 1] + y[..., 1]
    c = x[..., 2] + y[..., 2] + x[..., 0] * y[..., 1]
    return np.stack([a, b, c], axis=-1)


def _coords(matrix) -> Tuple[int, int, int]:
    return int(matrix[0, 1]), int(matrix[1, 2]), int(matrix[0, 2])


class Verifier:
    """Runs the verification suites and assembles a report"""

    def __init__(self, bound: int = 3, counterexample_limit: int = 20,
                 random_complex_count: int = 100, seed: int = 0, max_workers: int = 4):
        """
        Initialize verifier

        Args:
            bound: Ball radius for the exhaustive suites, 1..6
            counterexample_limit: Counterexamples kept per check
            random_complex_count: Random complexes in the chain engine suite
            seed: Seed for every randomized suite
            max_workers: Suites run concurrently on this many threads
        """
        is_valid, message = validate_bound(bound, MAX_VERIFY_BOUND)
        if not is_valid:
            raise ValidationError(message)

        self.bound = bound
        self.counterexample_limit = counterexample_limit
        self.random_complex_count = random_complex_count
        self.seed = seed
        self.max_workers = max_workers

    @classmethod
    def from_config(cls, config, bound: Optional[int] = None) -> 'Verifier':
        return cls(
            bound=config['DEFAULT_BOUND'] if bound is None else bound,
            counterexample_limit=config['COUNTEREXAMPLE_LIMIT'],
            random_complex_count=config['RANDOM_COMPLEX_COUNT'],
            seed=config['RANDOM_SEED'],
            max_workers=config['MAX_WORKERS'],
        )

    @property
    def suites(self) -> Dict[str, Callable[[], SuiteResult]]:
        return {
            'group_law': self.check_group_law,
            'bf': self.check_classification,
            'action': self.check_action,
            'fixed_set': self.check_fixed_sets,
            'census': self.check_census,
            'homology': self.check_homology,
            'chain_engine': self.check_chain_engine,
        }

    def run(self, report: Report, names: Optional[List[str]] = None) -> Report:
        """
        Run the selected suites (all by default) into report

        Suites run on a thread pool; the report sorts checks and findings, so
        the output does not depend on completion order.
        """
        suites = self.suites
        selected = names or list(suites)
        logger.info(f"Running {len(selected)} suites on ball {self.bound}")

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            futures = {name: pool.submit(self._timed, name, suites[name]) for name in selected}
            for name in selected:
                checks, findings = futures[name].result()
                for check in checks:
                    report.add(check)
                for finding in findings:
                    report.add_finding(finding)

        failures = report.failures
        if failures:
            logger.error(f"{len(failures)} checks failed: {', '.join(c.name for c in failures)}")
        else:
            logger.info(f"All {len(report.checks)} checks passed")
        for finding in report.findings:
            logger.warning(f"Finding: {finding.get('finding')}")
        return report

    def _timed(self, name: str, suite: Callable[[], SuiteResult]) -> SuiteResult:
        start = time.perf_counter()
        checks, findings = suite()
        elapsed = (time.perf_counter() - start) * 1000
        for check in checks:
            check.elapsed_ms = elapsed
        logger.info(f"Suite {name} finished in {elapsed:.0f} ms")
        return checks, findings

    def check_group_law(self) -> SuiteResult:
        """
        Compare mul, inv, power and conjugate with 3x3 integer matrices

        Products and conjugates are compared for every pair in the ball;
        associativity is checked on every triple with the vectorized law.
        """
        elements = list(ball(min(self.bound, GROUP_LAW_BOUND)))
        matrices = np.array([g.to_matrix() for g in elements], dtype=np.int64)
        inverses = np.array([inv(g).to_matrix() for g in elements], dtype=np.int64)
        eye = np.eye(3, dtype=np.int64)

        products = np.einsum('iab,jbc->ijac', matrices, matrices)
        conjugates = np.einsum('iab,jbc,icd->ijad', matrices, matrices, inverses)
        coords = np.array([g.as_tuple() for g in elements], dtype=np.int64)
        pairs = _mul_rows(coords[:, None, :], coords[None, :, :])

        mul_tally = OracleTally('group_law.mul')
        conj_tally = OracleTally('group_law.conjugate')
        for i, g in enumerate(elements):
            for j, h in enumerate(elements):
                got = mul(g, h).as_tuple()
                expected = _coords(products[i, j])
                ok = got == expected == tuple(int(v) for v in pairs[i, j])
                mul_tally.record(ok, None if ok else {
                    'input': [g.as_tuple(), h.as_tuple()], 'got': got, 'expected': expected,
                })
                got = conjugate(g, h).as_tuple()
                expected = _coords(conjugates[i, j])
                conj_tally.record(got == expected, None if got == expected else {
                    'input': [g.as_tuple(), h.as_tuple()], 'got': got, 'expected': expected,
                })

        inv_tally = OracleTally('group_law.inv')
        pow_tally = OracleTally('group_law.power')
        for i, g in enumerate(elements):
            ok = np.array_equal(matrices[i] @ inverses[i], eye) and \
                np.array_equal(inverses[i] @ matrices[i], eye)
            inv_tally.record(ok, {'input': [g.as_tuple()]})

            for n in range(-POWER_RANGE, POWER_RANGE + 1):
                base = matrices[i] if n >= 0 else inverses[i]
                expected = _coords(np.linalg.matrix_power(base, abs(n)))
                step = g if n >= 0 else inv(g)
                iterated = functools.reduce(mul, [step] * abs(n), IDENTITY).as_tuple()
                got = power(g, n).as_tuple()
                ok = got == expected == iterated
                pow_tally.record(ok, None if ok else {
                    'input': [g.as_tuple(), n], 'got': got, 'expected': expected,
                })

        # _mul_rows matched mul and the matrix product on every pair above
        assoc_tally = OracleTally('group_law.associativity')
        for i, g in enumerate(elements):
            left = _mul_rows(_mul_rows(coords[i], coords)[:, None, :], coords[None, :, :])
            right = _mul_rows(coords[i], pairs)
            bad = np.argwhere(np.any(left != right, axis=-1))
            assoc_tally.record_batch(len(elements) ** 2, len(bad), [
                {'input': [g.as_tuple(), elements[j].as_tuple(), elements[k].as_tuple()]}
                for j, k in bad[:self.counterexample_limit]
            ])

        tallies = [mul_tally, conj_tally, inv_tally, pow_tally, assoc_tally]
        return [_tally_check(t, self.counterexample_limit) for t in tallies], []

    def check_classification(self) -> SuiteResult:
        """Brute-force cross-check of the cyclic subgroup classification"""
        result = bf_verify(min(self.bound, MAX_BF_BOUND), self.counterexample_limit)
        checks = [
            Check(f"bf.{tally['name']}", PASS if tally['failed'] == 0 else FAIL, tally)
            for tally in result['checks']
        ]
        return checks, result['findings']

    def check_action(self) -> SuiteResult:
        """Action laws, isotropy equivariance and equivariance of the limit maps"""
        points = sample_points(per_kind=SAMPLE_PER_KIND)
        conjugators = list(ball(min(self.bound, GROUP_LAW_BOUND)))
        second_factors = list(ball(COMPOSITION_BOUND))

        identity_tally = OracleTally('action.identity')
        for p in points:
            identity_tally.record(act(IDENTITY, p) == p, {'input': [p.to_dict()]})

        composition_tally = OracleTally('action.composition')
        isotropy_tally = OracleTally('action.isotropy_equivariance')
        limit_tally = OracleTally('action.limit_equivariance')
        for p in points:
            moved = {g2: act(g2, p) for g2 in second_factors}
            expected_isotropy = isotropy(p)
            for gamma in conjugators:
                image = act(gamma, p)
                for g2 in second_factors:
                    ok = act(mul(gamma, g2), p) == act(gamma, moved[g2])
                    composition_tally.record(ok, None if ok else {
                        'input': [gamma.as_tuple(), g2.as_tuple(), p.to_dict()],
                    })

                ok = isotropy(image) == expected_isotropy.conjugated_by(gamma)
                isotropy_tally.record(ok, None if ok else {
                    'input': [gamma.as_tuple(), p.to_dict()],
                })

                if isinstance(p, Interior):
                    ok = limit_point(image) == act(gamma, limit_point(p))
                    limit_tally.record(ok, None if ok else {
                        'input': [gamma.as_tuple(), p.to_dict()],
                    })

        stabilizer_tally = OracleTally('action.isotropy_fixes_point')
        for p in points:
            desc = isotropy(p)
            if isinstance(p, VPoint):
                ok = act(CENTER_GEN, p) == p and act(HeisElement(1, 0, 0), p) != p
            elif isinstance(p, WPoint):
                ok = act(desc.generator(), p) == p
            else:
                ok = act(CENTER_GEN, p) != p
            stabilizer_tally.record(ok, None if ok else {'input': [p.to_dict()]})

        tallies = [identity_tally, composition_tally, isotropy_tally, limit_tally, stabilizer_tally]
        return [_tally_check(t, self.counterexample_limit) for t in tallies], []

    def check_fixed_sets(self) -> SuiteResult:
        """Case table plus agreement between fixed_set and the action itself"""
        cases_tally = OracleTally('fixed_set.cases')
        for generators, case in FIXED_SET_TABLE:
            got = fixed_set(SubgroupSpec.of(*generators)).case
            cases_tally.record(got == case, {'input': generators, 'got': got, 'expected': case})

        consistency_tally = OracleTally('fixed_set.consistency')
        points = sample_points(per_kind=SAMPLE_PER_KIND)
        specs = [SubgroupSpec.of(k) for k in ball(min(self.bound, GROUP_LAW_BOUND))]
        specs += [SubgroupSpec.of(*generators) for generators, _ in FIXED_SET_TABLE]
        for spec in specs:
            desc = fixed_set(spec)
            for p in points:
                fixed = all(act(k, p) == p for k in spec.generators)
                ok = fixed == desc.contains(p)
                consistency_tally.record(ok, None if ok else {
                    'input': [[k.as_tuple() for k in spec.generators], p.to_dict()],
                    'fixed': fixed,
                    'case': desc.case,
                })

        tallies = [cases_tally, consistency_tally]
        return [_tally_check(t, self.counterexample_limit) for t in tallies], []

    def check_census(self) -> SuiteResult:
        """Exactly one qualifying normalizer coset for every primitive K"""
        bound = min(self.bound, CENSUS_BOUND)
        tally = OracleTally('census.exactly_one')
        differs = []
        for k in primitive_elements(bound):
            census = fixed_point_census(SubgroupSpec.of(k), bound)
            ok = census.computed_normalizer == 1
            tally.record(ok, None if ok else {
                'input': [k.as_tuple()], 'got': census.computed_normalizer,
            })
            if census.zh != census.computed_normalizer:
                differs.append(census)

        findings = []
        if differs:
            by_class = {c.conj_class: c for c in differs}
            findings.append({
                'finding': 'census_differs_under_zh',
                'bound': bound,
                'classes': [
                    {'class': cls.to_dict(), **by_class[cls].to_dict()}
                    for cls in sorted(by_class)
                ],
            })
        return [_tally_check(tally, self.counterexample_limit)], findings

    def check_homology(self) -> SuiteResult:
        """S3 from the double cylinder of the torus projections, and from the join"""
        s3_expected = ct.HomologyResult(tuple(
            ct.DegreeHomology(b) for b in (1, 0, 0, 1)
        ))
        torus_expected = ct.HomologyResult(tuple(
            ct.DegreeHomology(b) for b in (1, 2, 1)
        ))

        cylinder = ct.homology(ct.s3_via_double_cylinder())
        join = ct.homology(ct.s3_via_join())
        torus = ct.homology(ct.torus_complex()[0])
        circle = ct.homology(ct.circle_complex())
        identity_cone = ct.homology(ct.mapping_cone(ct.identity_map(ct.circle_complex())))

        def check(name, got, expected):
            ok = got.same_groups(expected)
            return Check(name, PASS if ok else FAIL, {
                'got': got.describe(),
                'expected': expected.describe(),
            })

        checks = [
            check('homology.s3_double_cylinder', cylinder, s3_expected),
            check('homology.s3_join', join, s3_expected),
            check('homology.s3_pipelines_agree', cylinder, join),
            check('homology.torus', torus, torus_expected),
            check('homology.circle', circle, ct.HomologyResult((ct.DegreeHomology(1), ct.DegreeHomology(1)))),
            check('homology.cone_of_identity', identity_cone, ct.HomologyResult()),
        ]
        return checks, []

    def check_chain_engine(self) -> SuiteResult:
        """Randomized soundness of the chain engine on small simplicial complexes"""
        rng = np.random.default_rng(self.seed)
        snf_tally = OracleTally('chain_engine.smith_form')
        cone_tally = OracleTally('chain_engine.cone_of_isomorphism')
        euler_tally = OracleTally('chain_engine.euler_characteristic')
        product_tally = OracleTally('chain_engine.product_boundary')
        cylinder_tally = OracleTally('chain_engine.cylinder_of_identity')
        circle = ct.circle_complex()

        for _ in range(self.random_complex_count):
            K = ct.random_simplicial_complex(rng)
            example = {'input': K.to_dict()}
            C = ct.from_simplicial(K)

            ok = True
            for k in range(1, C.top + 1):
                ok = ok and _smith_form_sound(C.boundary(k))
            snf_tally.record(ok, example)

            cone = ct.mapping_cone(ct.negate(ct.identity_map(C)))
            cone_tally.record(ct.homology(cone).is_acyclic, example)

            H = ct.homology(C)
            euler_tally.record(H.euler_characteristic() == C.euler_characteristic(), example)

            try:
                product, _ = ct.product_complex(C, circle)
                ok = ct.homology(product).euler_characteristic() == 0
            except ValueError:
                ok = False
            product_tally.record(ok, example)

            ident = ct.identity_map(C)
            cylinder = ct.homology(ct.double_cylinder_complex(ident, ident))
            cylinder_tally.record(cylinder.same_groups(H), example)

        tallies = [snf_tally, cone_tally, euler_tally, product_tally, cylinder_tally]
        return [_tally_check(t, self.counterexample_limit) for t in tallies], []


def _smith_form_sound(matrix: ct.IntMatrix) -> bool:
    """Transforms reproduce the input, are unimodular, and the factors divide in chain"""
    form = ct.smith_normal_form(matrix)
    if not form.reproduces(matrix):
        return False
    factors = form.invariant_factors
    if any(f <= 0 for f in factors) or any(b % a for a, b in zip(factors, factors[1:])):
        return False
    for transform in (form.left, form.right):
        unit = ct.smith_normal_form(transform, track=False)
        if unit.rank != transform.rows or any(f != 1 for f in unit.invariant_factors):
            return False
    return True
