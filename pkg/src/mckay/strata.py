"""Stratification of fixed-point sets and fiber bookkeeping.

A stratum is labeled by the dimension vector of the locally-free part,
a partition recording cycle multiplicities at distinct nonzero points
of the quotient singularity, and the residual multiplicity at the
origin.  Points are counted upstairs throughout: a free orbit costs
the group order, the locally-free part costs sum(v0_i * delta_i), and
the residual is whatever remains of n.

The transported framing w - C v0 must be the class of an honest
representation, so nonnegativity is enforced as a necessary
nonemptiness filter; labels with a nonzero locally-free part are only
candidates (no sufficient criterion is implemented).  In rank one, the
only locally-free sheaf trivial at infinity is the trivial line
bundle, so v0 = 0 is forced there.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import CartanData

__all__ = [
    "StratumLabel",
    "FiberLabel",
    "fixed_sym_product",
    "partitions",
    "enumerate_strata_rank1",
    "cartan_apply",
    "transported_framing",
    "fiber_parts",
    "fiber_decomposition",
    "enumerate_strata",
]


@dataclass(frozen=True)
class StratumLabel:
    """(locally-free part, partition of free-orbit multiplicities,
    residual multiplicity at the origin)."""

    v0: tuple[int, ...]
    lam: tuple[int, ...]
    residual: int
    candidate: bool = False

    def __post_init__(self):
        if any(x < 0 for x in self.v0):
            raise ValueError("v0 must be componentwise nonnegative")
        if any(a <= 0 for a in self.lam):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(self.lam, self.lam[1:])):
            raise ValueError("partition parts must be weakly decreasing")
        if self.residual < 0:
            raise ValueError("residual multiplicity must be nonnegative")

    def to_json_obj(self) -> dict:
        return {"v0": list(self.v0), "lam": list(self.lam),
                "residual": self.residual, "candidate": self.candidate}


@dataclass(frozen=True)
class FiberLabel:
    """Label of the fiber over a stratum point: a Lagrangian central
    fiber for the transported framing, times punctual pieces."""

    lagrangian_v: tuple[int, ...]
    transported_w: tuple[int, ...] | None
    punctual_parts: tuple[int, ...]
    empty: bool

    def to_json_obj(self) -> dict:
        return {
            "lagrangian_v": list(self.lagrangian_v),
            "transported_w": None if self.transported_w is None
            else list(self.transported_w),
            "punctual_parts": list(self.punctual_parts),
            "empty": self.empty,
        }


def fixed_sym_product(n: int, gamma_order: int) -> int:
    """Largest m with m * gamma_order <= n: the symmetric-product power
    of the quotient surface fixed by the group."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if gamma_order < 2:
        raise ValueError("the catalog starts at groups of order 2")
    return n // gamma_order


def partitions(m: int) -> list[tuple[int, ...]]:
    """All partitions of m, in reverse-lexicographic order."""
    if m < 0:
        raise ValueError("cannot partition a negative integer")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, largest: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(prefix + (part,), remaining - part, part)

    rec((), m, m)
    return out


def _label_sort_key(label: StratumLabel) -> tuple:
    return (-sum(label.lam), label.lam)


def enumerate_strata_rank1(n: int, cd: CartanData) -> list[StratumLabel]:
    """All strata of the invariant n-point locus: a partition worth of
    free orbits plus the residue at the origin.  Ordered by total
    partition size descending, then lexicographically."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    order = cd.group_order
    zero = tuple([0] * cd.vertex_count)
    labels = []
    for m in range(n // order, -1, -1):
        for lam in partitions(m):
            labels.append(StratumLabel(v0=zero, lam=lam,
                                       residual=n - order * m))
    labels.sort(key=_label_sort_key)
    return labels


def cartan_apply(cd: CartanData, v) -> tuple[int, ...]:
    v = tuple(v)
    return tuple(sum(row[j] * v[j] for j in range(cd.vertex_count))
                 for row in cd.cartan)


def transported_framing(w, v0, cd: CartanData) -> tuple[int, ...] | None:
    """w - C v0 when componentwise nonnegative, else None: the fiber of
    the locally-free part at the origin must be a representation."""
    w, v0 = tuple(w), tuple(v0)
    moved = tuple(a - b for a, b in zip(w, cartan_apply(cd, v0)))
    return moved if min(moved) >= 0 else None


def fiber_parts(v, w, v0, lam, cd: CartanData) -> FiberLabel:
    """Fiber bookkeeping from raw pieces: the residual Lagrangian label
    v - v0 - m*delta with the transported framing, and one punctual
    factor per partition part."""
    v, w, v0, lam = tuple(v), tuple(w), tuple(v0), tuple(lam)
    m = sum(lam)
    lagrangian = tuple(a - b - m * d for a, b, d in zip(v, v0, cd.delta))
    moved = transported_framing(w, v0, cd)
    return FiberLabel(
        lagrangian_v=lagrangian,
        transported_w=moved,
        punctual_parts=lam,
        empty=min(lagrangian) < 0 or moved is None,
    )


def fiber_decomposition(v, w, s: StratumLabel, cd: CartanData) -> FiberLabel:
    """Bookkeeping of the fiber over a point of stratum s."""
    return fiber_parts(v, w, s.v0, s.lam, cd)


def _bounded_vectors(weights: tuple[int, ...], budget: int) -> list[tuple[int, ...]]:
    """Nonnegative vectors v with sum(v_i * weights_i) <= budget, in
    lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, pos: int) -> None:
        if pos == len(weights):
            out.append(prefix)
            return
        for value in range(remaining // weights[pos] + 1):
            rec(prefix + (value,), remaining - value * weights[pos], pos + 1)

    rec((), budget, 0)
    return out


def enumerate_strata(n: int, w, cd: CartanData) -> list[StratumLabel]:
    """Candidate strata for framing w: all (v0, lam) with the upstairs
    point count  |Gamma|*|lam| + sum(v0_i delta_i)  at most n and a
    nonnegative transported framing.  Labels with v0 != 0 carry the
    candidate flag (no sufficient nonemptiness criterion is known
    here); in rank one only v0 = 0 occurs."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    w = tuple(w)
    if len(w) != cd.vertex_count or min(w) < 0:
        raise ValueError("framing must be a nonnegative vector on the vertices")
    rank_one = all(w[i] == (1 if i == cd.trivial_vertex else 0)
                   for i in range(cd.vertex_count))
    if rank_one:
        return enumerate_strata_rank1(n, cd)
    order = cd.group_order
    labels = []
    for v0 in _bounded_vectors(cd.delta, n):
        if transported_framing(w, v0, cd) is None:
            continue
        used = sum(a * d for a, d in zip(v0, cd.delta))
        sub = []
        for m in range((n - used) // order, -1, -1):
            for lam in partitions(m):
                sub.append(StratumLabel(v0=v0, lam=lam,
                                        residual=n - used - order * m,
                                        candidate=any(v0)))
        sub.sort(key=_label_sort_key)
        labels.extend(sub)
    labels.sort(key=lambda s: (sum(a * d for a, d in zip(s.v0, cd.delta)), s.v0,
                               _label_sort_key(s)))
    return labels
