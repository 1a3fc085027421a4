import itertools
import random
from collections import Counter

import pytest

from mckay.strata import (FiberLabel, StratumLabel, cartan_apply,
                          enumerate_strata, enumerate_strata_rank1,
                          fiber_decomposition, fixed_sym_product, partitions,
                          transported_framing)

from conftest import pipeline


def test_fixed_sym_product():
    assert fixed_sym_product(5, 2) == 2
    assert fixed_sym_product(0, 7) == 0
    assert fixed_sym_product(120, 120) == 1
    with pytest.raises(ValueError):
        fixed_sym_product(-1, 2)
    with pytest.raises(ValueError):
        fixed_sym_product(4, 1)


def test_partitions_reverse_lexicographic():
    assert partitions(0) == [()]
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_stratum_label_validation():
    with pytest.raises(ValueError):
        StratumLabel(v0=(0,), lam=(1, 2), residual=0)
    with pytest.raises(ValueError):
        StratumLabel(v0=(0,), lam=(0,), residual=0)
    with pytest.raises(ValueError):
        StratumLabel(v0=(0,), lam=(), residual=-1)


def test_rank1_strata_for_cyclic_2_n_4():
    _, _, cd = pipeline("cyclic:2")
    labels = enumerate_strata_rank1(4, cd)
    assert [(l.lam, l.residual) for l in labels] == \
        [((1, 1), 0), ((2,), 0), ((1,), 2), ((), 4)]
    assert all(l.v0 == (0, 0) and not l.candidate for l in labels)


def test_rank1_strata_small_windows():
    _, _, cd = pipeline("cyclic:2")
    assert [(l.lam, l.residual) for l in enumerate_strata_rank1(0, cd)] == \
        [((), 0)]
    assert [(l.lam, l.residual) for l in enumerate_strata_rank1(1, cd)] == \
        [((), 1)]


def _brute_force_type_count(n: int, group_order: int, free_orbits: int) -> int:
    """Independent oracle: enumerate invariant n-point multisets on a
    sample set (the origin plus some free orbits of a rotation) and
    count the distinct types (orbit-multiplicity partition, residual)."""
    points = [("origin", 0)]
    for orbit in range(free_orbits):
        points.extend(("orbit", orbit * group_order + k)
                      for k in range(group_order))

    def rotate(point):
        kind, tag = point
        if kind == "origin":
            return point
        orbit, k = divmod(tag, group_order)
        return ("orbit", orbit * group_order + (k + 1) % group_order)

    types = set()
    for multiset in itertools.combinations_with_replacement(points, n):
        counts = Counter(multiset)
        if Counter({rotate(p): c for p, c in counts.items()}) != counts:
            continue
        orbit_mults = Counter()
        residual = 0
        for (kind, tag), c in counts.items():
            if kind == "origin":
                residual = c
            else:
                orbit_mults[tag // group_order] += c
        lam = tuple(sorted((c // group_order for c in orbit_mults.values()),
                           reverse=True))
        types.add((lam, residual))
    return len(types)


@pytest.mark.parametrize("text,n", [("cyclic:2", 4), ("cyclic:2", 6),
                                    ("cyclic:3", 6)])
def test_rank1_strata_count_against_brute_force(text, n):
    _, _, cd = pipeline(text)
    order = cd.group_order
    needed = n // order
    got = len(enumerate_strata_rank1(n, cd))
    assert got == _brute_force_type_count(n, order, max(needed, 1))


def test_transported_framing_examples():
    _, _, cd = pipeline("cyclic:2")
    assert transported_framing((3, 1), (0, 0), cd) == (3, 1)
    assert transported_framing((2, 0), (1, 0), cd) == (0, 2)
    assert transported_framing((1, 0), (1, 0), cd) is None


def test_transported_framing_preserves_level():
    rng = random.Random(11)
    for text in ["cyclic:4", "binary-dihedral:3", "binary-tetrahedral"]:
        _, _, cd = pipeline(text)
        n = cd.vertex_count
        for _ in range(100):
            w = tuple(rng.randrange(5) for _ in range(n))
            v0 = tuple(rng.randrange(4) for _ in range(n))
            moved = tuple(a - b for a, b in zip(w, cartan_apply(cd, v0)))
            assert sum(m * d for m, d in zip(moved, cd.delta)) == \
                sum(a * d for a, d in zip(w, cd.delta))


def test_fiber_decomposition_zero_stratum_is_identity():
    _, _, cd = pipeline("binary-dihedral:2")
    zero = (0,) * cd.vertex_count
    s = StratumLabel(v0=zero, lam=(), residual=3)
    v = (2, 1, 0, 1, 2)
    w = (1, 0, 0, 1, 0)
    fiber = fiber_decomposition(v, w, s, cd)
    assert fiber == FiberLabel(lagrangian_v=v, transported_w=w,
                               punctual_parts=(), empty=False)


def test_fiber_decomposition_delta_example():
    _, _, cd = pipeline("cyclic:2")
    s = StratumLabel(v0=(0, 0), lam=(1,), residual=0)
    fiber = fiber_decomposition((1, 1), (1, 0), s, cd)
    assert fiber.lagrangian_v == (0, 0)
    assert fiber.punctual_parts == (1,)
    assert not fiber.empty


def test_fiber_decomposition_flags_negative_labels():
    _, _, cd = pipeline("cyclic:2")
    s = StratumLabel(v0=(0, 0), lam=(2,), residual=0)
    fiber = fiber_decomposition((1, 1), (1, 0), s, cd)
    assert fiber.empty


def test_fiber_bookkeeping_identity_raw():
    rng = random.Random(23)
    for text in ["cyclic:3", "binary-dihedral:2"]:
        _, _, cd = pipeline(text)
        n = cd.vertex_count
        for _ in range(200):
            v = tuple(rng.randrange(8) for _ in range(n))
            w = tuple(rng.randrange(4) for _ in range(n))
            v0 = tuple(rng.randrange(2) for _ in range(n))
            lam = tuple(sorted((rng.randrange(1, 3)
                                for _ in range(rng.randrange(3))), reverse=True))
            s = StratumLabel(v0=v0, lam=lam, residual=0, candidate=True)
            fiber = fiber_decomposition(v, w, s, cd)
            if fiber.empty:
                continue
            m = sum(lam)
            rebuilt = tuple(l + a + m * d for l, a, d in
                            zip(fiber.lagrangian_v, v0, cd.delta))
            assert rebuilt == v


def test_enumerate_strata_zero_points():
    _, _, cd = pipeline("cyclic:2")
    labels = enumerate_strata(0, (2, 1), cd)
    assert [(l.v0, l.lam, l.residual) for l in labels] == [((0, 0), (), 0)]


def test_enumerate_strata_rank_one_reduces_to_the_symmetric_product():
    _, _, cd = pipeline("cyclic:3")
    w = tuple(1 if i == cd.trivial_vertex else 0 for i in range(3))
    assert enumerate_strata(7, w, cd) == enumerate_strata_rank1(7, cd)


def test_enumerate_strata_candidate_filter():
    _, _, cd = pipeline("cyclic:2")
    labels = enumerate_strata(2, (2, 0), cd)
    entries = {(l.v0, l.lam): l for l in labels}
    assert ((1, 0), ()) in entries
    assert entries[((1, 0), ())].candidate
    assert entries[((1, 0), ())].residual == 1
    # w - C v0 with a negative entry is filtered out
    assert all(l.v0 != (0, 1) for l in labels)
    assert transported_framing((2, 0), (0, 1), cd) is None


def test_enumerate_strata_respects_the_point_budget():
    _, _, cd = pipeline("cyclic:2")
    for n in range(6):
        for label in enumerate_strata(n, (3, 1), cd):
            used = sum(a * d for a, d in zip(label.v0, cd.delta))
            assert used + cd.group_order * sum(label.lam) + label.residual == n
