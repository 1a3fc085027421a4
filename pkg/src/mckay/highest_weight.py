"""Weight multiplicities of integrable highest-weight modules, twice.

Multiplicities m(v) are indexed by the drop vector v >= 0: the module
with highest weight  sum w_i Lambda_i  has weight  w - sum v_i alpha_i
with multiplicity m(v).  Two independent algorithms are provided:

  * freudenthal: the Freudenthal recursion in increasing height, with
    non-dominant weights handled by reflecting to the dominant chamber
    (multiplicities are Weyl invariant);
  * weylkac_oracle: a truncated series evaluation of the character as
    (alternating sum over the affine Weyl orbit of w + rho) divided by
    the product of (1 - e^-beta)^mult over positive roots, the division
    done as a sparse prefix recursion.

Both run over a finite window of drop vectors: either all v of height
at most D, or all v componentwise below a cap (the cap form reaches
the imaginary root of the big exceptional types cheaply, since the box
below delta is small while the height simplex is astronomically big).
All arithmetic is exact integers.

The symmetric form is fixed by (Lambda_i, alpha_j) = delta_ij and
(alpha_i, alpha_j) = C_ij, with rho = sum Lambda_i; positive affine
roots are the finite positives, the shifts (n delta +- finite), and
the imaginary multiples of delta carrying multiplicity rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cyclotomic import CycNumber
from .errors import InvariantError
from .quiver import CartanData
from .roots import AffineWeight, root_system_for

__all__ = [
    "MultiplicityTable",
    "DrinfeldData",
    "freudenthal",
    "freudenthal_box",
    "weylkac_oracle",
    "weylkac_box",
    "weight_of_lagrangian",
    "drinfeld_polynomials",
]


@dataclass(frozen=True)
class MultiplicityTable:
    """Nonzero weight multiplicities within a finite window."""

    framing: tuple[int, ...]
    depth: int | None
    cap: tuple[int, ...] | None
    entries: dict[tuple[int, ...], int]

    def multiplicity(self, v) -> int:
        return self.entries.get(tuple(v), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiplicityTable):
            return NotImplemented
        return self.framing == other.framing and self.entries == other.entries

    def sorted_items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def to_json_obj(self) -> dict:
        return {"framing": list(self.framing),
                "depth": self.depth,
                "entries": [[list(v), m] for v, m in self.sorted_items()]}


def _check_framing(w, cd: CartanData) -> tuple[int, ...]:
    w = tuple(w)
    if len(w) != cd.vertex_count:
        raise ValueError("framing length does not match the vertex count")
    if any(x < 0 for x in w):
        raise ValueError("framing entries must be nonnegative")
    return w


def _simplex_vectors(n: int, depth: int) -> list[tuple[int, ...]]:
    """All nonnegative integer vectors of length n with sum <= depth,
    ordered by (height, lexicographic)."""
    out = []
    for h in range(depth + 1):
        level = []

        def fill(prefix, remaining, slots):
            if slots == 1:
                level.append(prefix + (remaining,))
                return
            for first in range(remaining + 1):
                fill(prefix + (first,), remaining - first, slots - 1)

        fill((), h, n)
        out.extend(sorted(level))
    return out


def _box_vectors(cap: tuple[int, ...]) -> list[tuple[int, ...]]:
    vectors = list(itertools.product(*(range(c + 1) for c in cap)))
    vectors.sort(key=lambda v: (sum(v), v))
    return vectors


def _finite_roots_on_vertices(cd: CartanData) -> list[tuple[int, ...]]:
    """Positive finite roots as vectors on the quiver vertices (zero at
    the trivial vertex), via the standard labeling."""
    system = root_system_for(cd)
    out = []
    for beta in system.positive:
        vec = [0] * cd.vertex_count
        for vertex in range(cd.vertex_count):
            ref = cd.standard_labeling[vertex]
            if ref != 0:
                vec[vertex] = beta[ref - 1]
        out.append(tuple(vec))
    return out


def _window_roots(cd: CartanData, max_height: int,
                  cap: tuple[int, ...] | None = None
                  ) -> list[tuple[tuple[int, ...], int]]:
    """Positive affine roots of height <= max_height (and componentwise
    <= cap when given) with their multiplicities, sorted by height."""
    delta = cd.delta
    height_delta = sum(delta)
    finite = _finite_roots_on_vertices(cd)
    roots: list[tuple[tuple[int, ...], int]] = []

    def admit(vec: tuple[int, ...], mult: int) -> None:
        if sum(vec) <= max_height and min(vec) >= 0:
            if cap is None or all(a <= b for a, b in zip(vec, cap)):
                roots.append((vec, mult))

    for beta in finite:
        admit(beta, 1)
    shift = 1
    while shift * height_delta - height_delta + 1 <= max_height:
        base = tuple(shift * d for d in delta)
        admit(base, cd.rank)
        for beta in finite:
            admit(tuple(b + x for b, x in zip(base, beta)), 1)
            admit(tuple(b - x for b, x in zip(base, beta)), 1)
        shift += 1
    roots.sort(key=lambda item: (sum(item[0]), item[0]))
    return roots


def _sparse_rows(cartan) -> list[list[tuple[int, int]]]:
    return [[(j, c) for j, c in enumerate(row) if c] for row in cartan]


def _freudenthal_core(w: tuple[int, ...], cd: CartanData,
                      vectors: list[tuple[int, ...]],
                      roots: list[tuple[tuple[int, ...], int]]
                      ) -> dict[tuple[int, ...], int]:
    n = cd.vertex_count
    rows = _sparse_rows(cd.cartan)
    root_data = [(beta, mult,
                  sum(w[i] * beta[i] for i in range(n)),
                  [sum(cd.cartan[i][j] * beta[j] for j in range(n))
                   for i in range(n)])
                 for beta, mult in roots]
    table: dict[tuple[int, ...], int] = {vectors[0]: 1}
    for v in vectors[1:]:
        cv = [sum(c * v[j] for j, c in row) for row in rows]
        reflected = False
        for i in range(n):
            pairing = w[i] - cv[i]
            if pairing < 0:
                moved = list(v)
                moved[i] += pairing
                if moved[i] >= 0:
                    value = table.get(tuple(moved), 0)
                    if value:
                        table[v] = value
                reflected = True
                break
        if reflected:
            continue
        denominator = sum(v[i] * (2 * (w[i] + 1) - cv[i]) for i in range(n))
        if denominator <= 0:
            raise InvariantError(
                f"Freudenthal denominator {denominator} at dominant v={v}; "
                "bookkeeping is corrupt")
        rhs = 0
        for beta, mult, w_beta, c_beta in root_data:
            u = tuple(a - b for a, b in zip(v, beta))
            while min(u) >= 0:
                m_u = table.get(u, 0)
                if m_u:
                    rhs += mult * m_u * (w_beta - sum(u[i] * c_beta[i]
                                                      for i in range(n)))
                u = tuple(a - b for a, b in zip(u, beta))
        rhs *= 2
        if rhs % denominator:
            raise InvariantError(f"non-integral multiplicity at v={v}")
        value = rhs // denominator
        if value < 0:
            raise InvariantError(f"negative multiplicity at v={v}")
        if value:
            table[v] = value
    return table


def _numerator_signs(w: tuple[int, ...], cd: CartanData,
                     member) -> dict[tuple[int, ...], int]:
    """Alternating sum over the affine Weyl orbit of w + rho, recorded
    by the drop of the orbit point below w + rho.  Drops grow
    monotonically along geodesics from the identity, so pruning to the
    window loses nothing inside it."""
    n = cd.vertex_count
    rows = _sparse_rows(cd.cartan)
    zero = tuple([0] * n)
    signs: dict[tuple[int, ...], int] = {zero: 1}
    queue = [zero]
    while queue:
        drop = queue.pop()
        sign = signs[drop]
        for i in range(n):
            pairing = (w[i] + 1) - sum(c * drop[j] for j, c in rows[i])
            moved = list(drop)
            moved[i] += pairing
            candidate = tuple(moved)
            if candidate not in signs and member(candidate):
                signs[candidate] = -sign
                queue.append(candidate)
    return signs


def _weylkac_core(w: tuple[int, ...], cd: CartanData,
                  vectors: list[tuple[int, ...]],
                  roots: list[tuple[tuple[int, ...], int]],
                  member) -> dict[tuple[int, ...], int]:
    series = dict(_numerator_signs(w, cd, member))
    zero = tuple([0] * cd.vertex_count)
    # divide by prod (1 - e^-beta)^mult: one sparse prefix pass per factor
    for beta, mult in roots:
        for _ in range(mult):
            for v in vectors:
                if all(a >= b for a, b in zip(v, beta)):
                    lower = series.get(tuple(a - b for a, b in zip(v, beta)))
                    if lower:
                        series[v] = series.get(v, 0) + lower
    table = {}
    for v, value in series.items():
        if value < 0:
            raise InvariantError(f"negative coefficient at v={v} in the "
                                 "character series")
        if value:
            table[v] = value
    if table.get(zero) != 1:
        raise InvariantError("highest weight multiplicity is not 1")
    return table


def _weylkac_core_box(w: tuple[int, ...], cd: CartanData,
                      cap: tuple[int, ...],
                      roots: list[tuple[tuple[int, ...], int]]
                      ) -> dict[tuple[int, ...], int]:
    """Box-window series division on a flat mixed-radix array; the
    row-major index order refines the componentwise order, so each
    prefix pass runs over its sub-box in valid order."""
    n = cd.vertex_count
    dims = [c + 1 for c in cap]
    strides = [0] * n
    acc = 1
    for i in reversed(range(n)):
        strides[i] = acc
        acc *= dims[i]
    series = [0] * acc

    member = (lambda v: min(v) >= 0 and all(a <= b for a, b in zip(v, cap)))
    for drop, sign in _numerator_signs(w, cd, member).items():
        series[sum(d * s for d, s in zip(drop, strides))] = sign

    for beta, mult in roots:
        offset = sum(b * s for b, s in zip(beta, strides))
        lo, hi = beta[n - 1], dims[n - 1]
        for _ in range(mult):
            for digits in itertools.product(
                    *(range(beta[i], dims[i]) for i in range(n - 1))):
                base = sum(d * s for d, s in zip(digits, strides))
                for idx in range(base + lo, base + hi):
                    value = series[idx - offset]
                    if value:
                        series[idx] += value
    table = {}
    for idx, value in enumerate(series):
        if value:
            if value < 0:
                raise InvariantError("negative coefficient in the character series")
            rest = idx
            v = []
            for s in strides:
                v.append(rest // s)
                rest %= s
            table[tuple(v)] = value
    if table.get(tuple([0] * n)) != 1:
        raise InvariantError("highest weight multiplicity is not 1")
    return table


def freudenthal(w, cd: CartanData, depth: int) -> MultiplicityTable:
    """Multiplicities for all drops of height <= depth."""
    w = _check_framing(w, cd)
    if not any(w):
        raise ValueError("the framing must be nonzero")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    vectors = _simplex_vectors(cd.vertex_count, depth)
    roots = _window_roots(cd, depth)
    entries = _freudenthal_core(w, cd, vectors, roots)
    return MultiplicityTable(framing=w, depth=depth, cap=None, entries=entries)


def freudenthal_box(w, cd: CartanData, cap) -> MultiplicityTable:
    """Multiplicities for all drops componentwise below cap."""
    w = _check_framing(w, cd)
    if not any(w):
        raise ValueError("the framing must be nonzero")
    cap = tuple(cap)
    vectors = _box_vectors(cap)
    roots = _window_roots(cd, sum(cap), cap=cap)
    entries = _freudenthal_core(w, cd, vectors, roots)
    return MultiplicityTable(framing=w, depth=None, cap=cap, entries=entries)


def weylkac_oracle(w, cd: CartanData, depth: int) -> MultiplicityTable:
    """Same table as freudenthal, by the truncated character series."""
    w = _check_framing(w, cd)
    if not any(w):
        raise ValueError("the framing must be nonzero")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    vectors = _simplex_vectors(cd.vertex_count, depth)
    roots = _window_roots(cd, depth)
    entries = _weylkac_core(w, cd, vectors, roots,
                            member=lambda v: sum(v) <= depth and min(v) >= 0)
    return MultiplicityTable(framing=w, depth=depth, cap=None, entries=entries)


def weylkac_box(w, cd: CartanData, cap) -> MultiplicityTable:
    w = _check_framing(w, cd)
    if not any(w):
        raise ValueError("the framing must be nonzero")
    cap = tuple(cap)
    roots = _window_roots(cd, sum(cap), cap=cap)
    entries = _weylkac_core_box(w, cd, cap, roots)
    return MultiplicityTable(framing=w, depth=None, cap=cap, entries=entries)


def weight_of_lagrangian(v, w) -> AffineWeight:
    """The weight w - v attached to the central-fiber component of v."""
    return AffineWeight(framing=tuple(w), drop=tuple(v))


@dataclass(frozen=True)
class DrinfeldData:
    """Per-vertex eigenvalue multisets and their polynomials P_i with
    P_i(0) = 1; coefficients are listed from the constant term up."""

    eigenvalues: tuple[tuple[CycNumber, ...], ...]
    polynomials: tuple[tuple[CycNumber, ...], ...]

    def to_json_obj(self) -> dict:
        return {
            "eigenvalues": [[a.to_json_obj() for a in vs]
                            for vs in self.eigenvalues],
            "polynomials": [[c.to_json_obj() for c in poly]
                            for poly in self.polynomials],
        }


def drinfeld_polynomials(eigenvalue_multisets) -> DrinfeldData:
    """P_i(u) = prod over the i-th multiset of (1 - a u)."""
    multisets = []
    polynomials = []
    for values in eigenvalue_multisets:
        coerced = sorted((CycNumber.coerce(a) for a in values),
                         key=lambda a: a.sort_key())
        if any(a.is_zero() for a in coerced):
            raise ValueError("eigenvalue 0 is not invertible")
        poly = [CycNumber.coerce(1)]
        for a in coerced:
            nxt = [CycNumber.coerce(0)] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k] = nxt[k] + c
                nxt[k + 1] = nxt[k + 1] - a * c
            poly = nxt
        multisets.append(tuple(coerced))
        polynomials.append(tuple(poly))
    return DrinfeldData(eigenvalues=tuple(multisets),
                        polynomials=tuple(polynomials))
