"""
Definition-level brute-force oracles for the classification code

Nothing here uses the closed forms of cyclic_class; every answer comes from
searching group elements directly.
"""
from typing import Set

from app.heis_core import (
    HeisElement, binom2, conjugate, inv, mul, plane_ball, power,
)


def brute_max_exponent(g: HeisElement) -> int:
    """Largest n >= 1 such that some h has h^n == g"""
    best = 0
    limit = max(abs(g.a), abs(g.b), abs(g.c), 1)
    for n in range(1, limit + 1):
        if g.a % n or g.b % n:
            continue
        ha, hb = g.a // n, g.b // n
        radius = (abs(g.c) + abs(binom2(n) * ha * hb)) // n + 1
        for hc in range(-radius, radius + 1):
            if power(HeisElement(ha, hb, hc), n) == g:
                best = n
                break
    return best


def brute_in_cyclic(k: HeisElement, g: HeisElement, span: int = 2) -> bool:
    """k == g^n for some |n| <= span"""
    return any(power(g, n) == k for n in range(-span, span + 1))


def brute_conjugacy_orbit(g: HeisElement, conjugator_bound: int) -> Set[HeisElement]:
    """All gamma g gamma^-1 for gamma = (x, y, 0) in the plane ball

    Central conjugators act trivially, so the z coordinate is fixed at 0.
    """
    orbit = set()
    for gamma in plane_ball(conjugator_bound):
        orbit.add(mul(mul(gamma, g), inv(gamma)))
    return orbit


def brute_are_conjugate(g1: HeisElement, g2: HeisElement, conjugator_bound: int) -> bool:
    orbit = brute_conjugacy_orbit(g1, conjugator_bound)
    return g2 in orbit or inv(g2) in orbit


def brute_normalizes(gamma: HeisElement, g: HeisElement, span: int = 2) -> bool:
    """gamma <g> gamma^-1 == <g>, checked by mutual containment of generators"""
    forward = conjugate(gamma, g)
    backward = conjugate(inv(gamma), g)
    return brute_in_cyclic(forward, g, span) and brute_in_cyclic(backward, g, span)


def brute_zh_index(g: HeisElement) -> int:
    """Index of Z<g> inside the normalizer of <g>, for non-central g

    The quotient is cyclic, generated by the primitive direction element,
    so the index is the first t > 0 with direction^t in Z<g>.
    """
    limit = abs(g.a) + abs(g.b)
    step_a, step_b = _primitive_direction(g)
    for t in range(1, limit + 1):
        for j in range(-t, t + 1):
            candidate = power(g, j)
            if candidate.a == t * step_a and candidate.b == t * step_b:
                return t
    return 0


def brute_factors_as(h: HeisElement, u: HeisElement, j: int, m: int,
                     n: HeisElement) -> bool:
    return mul(power(h, j), power(u, m)) == n


def _primitive_direction(g: HeisElement):
    # divide out the largest common divisor of a and b
    for n in range(max(abs(g.a), abs(g.b)), 0, -1):
        if g.a % n == 0 and g.b % n == 0:
            return g.a // n, g.b // n
    return 0, 0
