"""Finite root systems, affine weights, and the fixed-point dichotomy.

Positive roots are generated two independent ways (root-string closure
from the simple roots, and the reflection orbit of the simple roots)
and the two sets are required to agree.  Roots are integer vectors in
the simple-root basis of the reference finite diagram, i.e. reference
vertices 1..n from the classification; dimension vectors on the quiver
are moved into these coordinates through standard_labeling.

The status of the fixed-point component attached to a dimension vector
v with trivial multiplicity 1 follows the restriction of the weight
functional to the finite Cartan subalgebra: the affine simple root at
the trivial vertex restricts to minus the highest root theta, so the
relevant finite vector is (v restricted) - theta.  It is delta exactly
when that vector vanishes (the minimal resolution), a single point
exactly when it is a root, and empty otherwise; summing the single
points and the Cartan rank recovers dim g.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvariantError
from .quiver import CartanData, Matrix, reference_affine, reference_finite

__all__ = [
    "RootSystem",
    "MVStatus",
    "AffineWeight",
    "positive_roots",
    "root_system_for",
    "m_v_status",
    "reconstruct_g_dim",
    "dominance_leq",
    "weyl_reflect",
    "restrict_to_finite",
]

GENERATION_BOUND_FACTOR = 10


class MVStatus(enum.Enum):
    EMPTY = "empty"
    SINGLE_POINT = "single_point"
    MINIMAL_RESOLUTION = "minimal_resolution"


@dataclass(frozen=True)
class RootSystem:
    cartan: Matrix
    positive: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def count(self) -> int:
        return len(self.positive)

    @property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive[-1]

    def is_root(self, vector: tuple[int, ...]) -> bool:
        """Membership in the full root system (either sign)."""
        return vector in self._positive_set or \
            tuple(-x for x in vector) in self._positive_set

    @property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive)

    def to_json_obj(self) -> dict:
        return {"cartan": [list(r) for r in self.cartan],
                "positive_roots": [list(r) for r in self.positive]}


def _pairing(cartan: Matrix, vector: tuple[int, ...], i: int) -> int:
    return sum(cartan[i][j] * vector[j] for j in range(len(vector)))


def _roots_by_string_closure(cartan: Matrix) -> set[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found: set[tuple[int, ...]] = set(simple)
    frontier = list(simple)
    iterations = 0
    while frontier:
        iterations += 1
        if iterations > GENERATION_BOUND_FACTOR * n * n:
            raise InvariantError("root generation did not terminate; "
                                 "the Cartan matrix is not finite ADE type")
        fresh = []
        for beta in frontier:
            for i in range(n):
                down = 0
                step = list(beta)
                while True:
                    step[i] -= 1
                    if min(step) < 0 or tuple(step) not in found:
                        break
                    down += 1
                if down - _pairing(cartan, beta, i) > 0:
                    up = list(beta)
                    up[i] += 1
                    candidate = tuple(up)
                    if candidate not in found:
                        found.add(candidate)
                        fresh.append(candidate)
        frontier = fresh
    return found


def _roots_by_reflection_orbit(cartan: Matrix) -> set[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    orbit: set[tuple[int, ...]] = set(simple)
    frontier = list(simple)
    iterations = 0
    while frontier:
        iterations += 1
        if iterations > GENERATION_BOUND_FACTOR * n * n:
            raise InvariantError("reflection orbit did not close")
        fresh = []
        for beta in frontier:
            for i in range(n):
                image = list(beta)
                image[i] -= _pairing(cartan, beta, i)
                candidate = tuple(image)
                if candidate not in orbit:
                    orbit.add(candidate)
                    fresh.append(candidate)
        frontier = fresh
    return {beta for beta in orbit if min(beta) >= 0}


def positive_roots(cartan_finite: Matrix) -> RootSystem:
    """Generate the positive roots; the two methods must agree."""
    cartan = tuple(tuple(row) for row in cartan_finite)
    by_strings = _roots_by_string_closure(cartan)
    by_orbit = _roots_by_reflection_orbit(cartan)
    if by_strings != by_orbit:
        raise InvariantError("string closure and reflection orbit disagree")
    ordered = sorted(by_strings, key=lambda b: (sum(b), b))
    heights = [sum(b) for b in ordered]
    if heights.count(heights[-1]) != 1:
        raise InvariantError("highest root is not unique")
    return RootSystem(cartan=cartan, positive=tuple(ordered))


@lru_cache(maxsize=None)
def _root_system_for_type(ade_type: str) -> RootSystem:
    system = positive_roots(reference_finite(ade_type))
    _, ref_delta = reference_affine(ade_type)
    theta = tuple(ref_delta[1:])
    if system.highest_root != theta:
        raise InvariantError("highest root differs from the finite part of delta")
    return system


def root_system_for(cd: CartanData) -> RootSystem:
    return _root_system_for_type(cd.ade_type)


def restrict_to_finite(cd: CartanData, v) -> tuple[int, ...]:
    """Drop the trivial vertex and reorder into reference coordinates."""
    out = [0] * cd.rank
    for vertex, value in enumerate(v):
        if vertex == cd.trivial_vertex:
            continue
        out[cd.standard_labeling[vertex] - 1] = value
    return tuple(out)


def _unrestrict(cd: CartanData, finite_part: tuple[int, ...]) -> tuple[int, ...]:
    out = [1] * cd.vertex_count
    for vertex in range(cd.vertex_count):
        ref = cd.standard_labeling[vertex]
        if ref != 0:
            out[vertex] = finite_part[ref - 1]
    return tuple(out)


def m_v_status(v, cd: CartanData) -> MVStatus:
    """Classify the fixed-point component of a dimension vector with
    trivial multiplicity 1: the minimal resolution at delta, otherwise
    a single point or empty according to the root dichotomy."""
    v = tuple(v)
    if len(v) != cd.vertex_count or min(v) < 0:
        raise ValueError("dimension vector must be nonnegative on every vertex")
    if v[cd.trivial_vertex] != 1:
        raise ValueError("the component trichotomy is only defined for "
                         "trivial multiplicity 1")
    if v == cd.delta:
        return MVStatus.MINIMAL_RESOLUTION
    system = root_system_for(cd)
    theta = system.highest_root
    gamma = tuple(a - t for a, t in zip(restrict_to_finite(cd, v), theta))
    return MVStatus.SINGLE_POINT if system.is_root(gamma) else MVStatus.EMPTY


def reconstruct_g_dim(cd: CartanData) -> int:
    """dim g as (number of single-point components with trivial
    multiplicity 1) + rank, computed from the generated root system."""
    system = root_system_for(cd)
    theta = system.highest_root
    count = 0
    for positive in system.positive:
        for beta in (positive, tuple(-x for x in positive)):
            v = _unrestrict(cd, tuple(t + b for t, b in zip(theta, beta)))
            if v != cd.delta and m_v_status(v, cd) is MVStatus.SINGLE_POINT:
                count += 1
    return count + cd.rank


@dataclass(frozen=True)
class AffineWeight:
    """sum_i framing_i Lambda_i - sum_i drop_i alpha_i."""

    framing: tuple[int, ...]
    drop: tuple[int, ...]

    def __post_init__(self):
        if len(self.framing) != len(self.drop):
            raise ValueError("framing and drop must have the same length")

    def pairing(self, i: int, cd: CartanData) -> int:
        """<weight, alpha_i^vee> = w_i - (C v)_i."""
        return self.framing[i] - _pairing(cd.cartan, self.drop, i)


def dominance_leq(mu: AffineWeight, nu: AffineWeight) -> bool:
    """mu <= nu in dominance order: nu - mu is a nonnegative integer
    combination of simple roots."""
    if mu.framing != nu.framing:
        raise ValueError("dominance order requires matching framings")
    return all(a >= b for a, b in zip(mu.drop, nu.drop))


def weyl_reflect(mu: AffineWeight, i: int, cd: CartanData) -> AffineWeight:
    """Simple reflection s_i(mu) = mu - <mu, alpha_i^vee> alpha_i."""
    if not 0 <= i < cd.vertex_count:
        raise ValueError(f"vertex {i} out of range")
    pairing = mu.pairing(i, cd)
    drop = list(mu.drop)
    drop[i] += pairing
    return AffineWeight(framing=mu.framing, drop=tuple(drop))
