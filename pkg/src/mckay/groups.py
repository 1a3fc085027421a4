"""Catalog and exact enumeration of the finite subgroups of SL2(C).

Each catalog group is built by closing a small set of generator matrices
(entries are exact cyclotomic numbers) under multiplication.  The
closure itself validates the generators: a wrong sign or conductor gives
the wrong group order and construction fails loudly.

Generator conventions (all checked by closure order):
  cyclic n:            diag(zeta_n, zeta_n^-1)
  binary dihedral m:   diag(zeta_2m, zeta_2m^-1)  and  [[0,1],[-1,0]]
  binary tetrahedral:  quaternion units i, j and
                       omega = 1/2 [[-1+i, -1+i], [1+i, -1-i]]
                       (omega^3 = 1; entries in Q(zeta_4))
  binary octahedral:   the above plus diag(zeta_8, zeta_8^-1),
                       which equals (1/sqrt2) diag(1+i, 1-i)
  binary icosahedral:  omega and the unit quaternion
                       (tau + tau^-1 i + j)/2,  tau = (1+sqrt5)/2,
                       written over Q(zeta_20)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import CycNumber, root_of_unity
from .errors import InternalError

__all__ = [
    "GroupSpec",
    "GroupElement",
    "FiniteSubgroup",
    "GroupConstructionError",
    "build_group",
    "conjugacy_classes",
    "defining_character",
    "FAMILIES",
]

CLOSURE_BOUND = 2000

FAMILIES = (
    "cyclic",
    "binary-dihedral",
    "binary-tetrahedral",
    "binary-octahedral",
    "binary-icosahedral",
)


class GroupConstructionError(InternalError):
    """Group closure or validation failed; signals wrong generators."""


@dataclass(frozen=True)
class GroupSpec:
    """One of the five families of finite subgroups of SL2(C)."""

    family: str
    parameter: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; valid: {', '.join(FAMILIES)}")
        if self.family == "cyclic":
            if self.parameter is None or self.parameter < 2:
                raise ValueError("cyclic:n requires n >= 2")
        elif self.family == "binary-dihedral":
            if self.parameter is None or self.parameter < 2:
                raise ValueError("binary-dihedral:m requires m >= 2")
        elif self.parameter is not None:
            raise ValueError(f"{self.family} takes no parameter")

    @property
    def order(self) -> int:
        if self.family == "cyclic":
            return self.parameter
        if self.family == "binary-dihedral":
            return 4 * self.parameter
        return {"binary-tetrahedral": 24, "binary-octahedral": 48,
                "binary-icosahedral": 120}[self.family]

    @property
    def class_count(self) -> int:
        """Number of conjugacy classes = vertex count of the affine diagram."""
        if self.family == "cyclic":
            return self.parameter
        if self.family == "binary-dihedral":
            return self.parameter + 3
        return {"binary-tetrahedral": 7, "binary-octahedral": 8,
                "binary-icosahedral": 9}[self.family]

    @staticmethod
    def parse(text: str) -> GroupSpec:
        """Parse 'cyclic:n', 'binary-dihedral:m', or a bare exceptional name."""
        name, sep, arg = text.partition(":")
        name = name.strip().lower()
        if name not in FAMILIES:
            raise ValueError(f"unknown group spec {text!r}; valid families: "
                             + ", ".join(FAMILIES))
        if sep:
            try:
                return GroupSpec(name, int(arg))
            except ValueError as exc:
                raise ValueError(f"bad parameter in group spec {text!r}: {exc}") from None
        return GroupSpec(name)

    def __str__(self) -> str:
        if self.parameter is not None:
            return f"{self.family}:{self.parameter}"
        return self.family


class GroupElement:
    """A 2x2 matrix over a cyclotomic field with determinant exactly 1."""

    __slots__ = ("entries", "_hash")

    def __init__(self, a, b, c, d, check: bool = True):
        entries = tuple(CycNumber.coerce(x) for x in (a, b, c, d))
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", hash(entries))
        if check and self.det() != 1:
            raise ValueError(f"matrix {entries} is not in SL2: det = {self.det()}")

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def det(self) -> CycNumber:
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self) -> CycNumber:
        a, _, _, d = self.entries
        return a + d

    def __mul__(self, other: GroupElement) -> GroupElement:
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        out = object.__new__(GroupElement)
        entries = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        object.__setattr__(out, "entries", entries)
        object.__setattr__(out, "_hash", hash(entries))
        return out

    def inverse(self) -> GroupElement:
        a, b, c, d = self.entries
        return GroupElement(d, -b, -c, a, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(e.sort_key() for e in self.entries)

    def to_json_obj(self) -> list:
        return [e.to_json_obj() for e in self.entries]

    @staticmethod
    def from_json_obj(obj: list) -> GroupElement:
        return GroupElement(*(CycNumber.from_json_obj(e) for e in obj))

    def __repr__(self) -> str:
        a, b, c, d = self.entries
        return f"GroupElement([[{a}, {b}], [{c}, {d}]])"


IDENTITY = GroupElement(1, 0, 0, 1)


def _quaternion(a, b, c, d) -> GroupElement:
    """a + bi + cj + dk as [[a+bi, c+di], [-c+di, a-bi]]."""
    i = root_of_unity(4)
    a, b, c, d = (CycNumber.coerce(x) for x in (a, b, c, d))
    return GroupElement(a + b * i, c + d * i, -c + d * i, a - b * i)


def _generators(spec: GroupSpec) -> list[GroupElement]:
    half = Fraction(1, 2)
    if spec.family == "cyclic":
        n = spec.parameter
        return [GroupElement(root_of_unity(n, 1), 0, 0, root_of_unity(n, n - 1))]
    if spec.family == "binary-dihedral":
        n = 2 * spec.parameter
        return [GroupElement(root_of_unity(n, 1), 0, 0, root_of_unity(n, n - 1)),
                GroupElement(0, 1, -1, 0)]
    i = root_of_unity(4)
    omega = GroupElement((-1 + i) * half, (-1 + i) * half,
                         (1 + i) * half, (-1 - i) * half)
    if spec.family == "binary-tetrahedral":
        return [_quaternion(0, 1, 0, 0), _quaternion(0, 0, 1, 0), omega]
    if spec.family == "binary-octahedral":
        return [_quaternion(0, 1, 0, 0), _quaternion(0, 0, 1, 0), omega,
                GroupElement(root_of_unity(8, 1), 0, 0, root_of_unity(8, 7))]
    # binary icosahedral; tau = (1 + sqrt5)/2, tau^-1 = tau - 1
    z5 = root_of_unity(5)
    sqrt5 = z5 - z5 ** 2 - z5 ** 3 + z5 ** 4
    tau = (1 + sqrt5) * half
    return [omega, _quaternion(tau * half, (tau - 1) * half, half, 0)]


@dataclass(frozen=True)
class FiniteSubgroup:
    """A fully enumerated subgroup of SL2(C) with its class structure.

    Elements are ordered with the identity first, then by (element
    order, canonical serialization); classes by (representative order,
    class size, representative serialization).  Everything downstream
    relies on these orders being deterministic.
    """

    spec: GroupSpec
    elements: tuple[GroupElement, ...]
    mult_table: tuple[tuple[int, ...], ...]
    identity_index: int
    inverse_of: tuple[int, ...]
    element_orders: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    class_reps: tuple[int, ...]
    exponent: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def multiply(self, i: int, j: int) -> int:
        return self.mult_table[i][j]

    def power(self, i: int, k: int) -> int:
        out = self.identity_index
        step = i
        k %= self.element_orders[i]
        while k:
            if k & 1:
                out = self.mult_table[out][step]
            step = self.mult_table[step][step]
            k >>= 1
        return out

    def to_json_obj(self) -> dict:
        return {
            "spec": str(self.spec),
            "order": self.order,
            "elements": [g.to_json_obj() for g in self.elements],
            "mult_table": [list(row) for row in self.mult_table],
            "identity": self.identity_index,
            "inverses": list(self.inverse_of),
            "element_orders": list(self.element_orders),
            "classes": [list(c) for c in self.classes],
            "class_reps": list(self.class_reps),
            "exponent": self.exponent,
        }

    @staticmethod
    def from_json_obj(obj: dict) -> FiniteSubgroup:
        classes = tuple(tuple(c) for c in obj["classes"])
        class_of = [0] * obj["order"]
        for ci, members in enumerate(classes):
            for m in members:
                class_of[m] = ci
        return FiniteSubgroup(
            spec=GroupSpec.parse(obj["spec"]),
            elements=tuple(GroupElement.from_json_obj(e) for e in obj["elements"]),
            mult_table=tuple(tuple(row) for row in obj["mult_table"]),
            identity_index=obj["identity"],
            inverse_of=tuple(obj["inverses"]),
            element_orders=tuple(obj["element_orders"]),
            classes=classes,
            class_of=tuple(class_of),
            class_reps=tuple(obj["class_reps"]),
            exponent=obj["exponent"],
        )


def _close_under_multiplication(
        gens: list[GroupElement]) -> tuple[list[GroupElement], list[tuple[int, int]]]:
    """BFS closure.  Also records how each element was first reached:
    parents[i] = (parent index, generator position) with
    elements[i] = elements[parent] * gens[position]."""
    elements = [IDENTITY]
    index = {IDENTITY: 0}
    parents = [(0, -1)]
    frontier = [0]
    while frontier:
        fresh = []
        for gi in frontier:
            g = elements[gi]
            for pos, h in enumerate(gens):
                prod = g * h
                if prod not in index:
                    if prod.det() != 1:
                        raise GroupConstructionError(
                            f"closure produced a matrix with det {prod.det()} != 1")
                    index[prod] = len(elements)
                    elements.append(prod)
                    parents.append((gi, pos))
                    fresh.append(index[prod])
                    if len(elements) > CLOSURE_BOUND:
                        raise GroupConstructionError(
                            f"closure exceeded {CLOSURE_BOUND} elements; "
                            "generators are wrong")
        frontier = fresh
    return elements, parents


def _full_table(elements: list[GroupElement], gens: list[GroupElement],
                parents: list[tuple[int, int]]) -> list[list[int]]:
    """Multiplication table via left-translation permutations.

    Only O(|G| * #generators) exact matrix products are needed: writing
    g = parent * gen gives L_g = L_parent . L_gen on indices, so rows
    are built by permutation composition in discovery order.
    """
    n = len(elements)
    index = {g: i for i, g in enumerate(elements)}
    gen_rows = [[index[h * x] for x in elements] for h in gens]
    left: list[list[int] | None] = [None] * n
    left[0] = list(range(n))
    for i in range(1, n):
        parent, pos = parents[i]
        parent_row = left[parent]
        gen_row = gen_rows[pos]
        left[i] = [parent_row[gen_row[x]] for x in range(n)]
    return left


def _element_order(table: list[list[int]], identity: int, i: int) -> int:
    order, x = 1, i
    while x != identity:
        x = table[x][i]
        order += 1
        if order > len(table):
            raise GroupConstructionError("element order exceeds group order")
    return order


def _conjugacy_partition(table: list[list[int]],
                         inverse_of: list[int]) -> list[list[int]]:
    n = len(table)
    seen = [False] * n
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = set()
        for h in range(n):
            orbit.add(table[table[h][x]][inverse_of[h]])
        members = sorted(orbit)
        for m in members:
            seen[m] = True
        classes.append(members)
    return classes


def _validate(group: FiniteSubgroup) -> None:
    table = group.mult_table
    n = group.order
    e = group.identity_index
    if any(table[e][j] != j or table[j][e] != j for j in range(n)):
        raise GroupConstructionError("identity row/column is wrong")
    for i in range(n):
        j = group.inverse_of[i]
        if table[i][j] != e or table[j][i] != e:
            raise GroupConstructionError("inverse map is wrong")
    rng = random.Random(0)
    for _ in range(min(200, n ** 3)):
        a, b, c = (rng.randrange(n) for _ in range(3))
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupConstructionError("associativity spot check failed")
    if sorted(itertools.chain.from_iterable(group.classes)) != list(range(n)):
        raise GroupConstructionError("classes do not partition the elements")
    if group.classes[group.class_of[e]] != (e,):
        raise GroupConstructionError("identity class is not a singleton")


def build_group(spec: GroupSpec) -> FiniteSubgroup:
    """Enumerate the group, order it canonically, and compute its classes."""
    gens = _generators(spec)
    elements, parents = _close_under_multiplication(gens)
    if len(elements) != spec.order:
        raise GroupConstructionError(
            f"{spec}: closure has {len(elements)} elements, expected {spec.order}")
    table = _full_table(elements, gens, parents)

    orders = [_element_order(table, 0, i) for i in range(len(elements))]
    # canonical element order: identity first, then (order, serialization)
    perm = sorted(range(len(elements)),
                  key=lambda i: (i != 0, orders[i], elements[i].sort_key()))
    where = {old: new for new, old in enumerate(perm)}
    elements = [elements[old] for old in perm]
    table = [[where[table[perm[i]][perm[j]]] for j in range(len(elements))]
             for i in range(len(elements))]
    orders = [orders[old] for old in perm]

    identity = 0
    inverse_of = [0] * len(elements)
    for i in range(len(elements)):
        inverse_of[i] = table[i].index(identity)

    classes = _conjugacy_partition(table, inverse_of)
    reps = [min(c) for c in classes]
    class_order = sorted(
        range(len(classes)),
        key=lambda ci: (orders[reps[ci]], len(classes[ci]),
                        elements[reps[ci]].sort_key()))
    classes = [tuple(classes[ci]) for ci in class_order]
    reps = [min(c) for c in classes]
    class_of = [0] * len(elements)
    for ci, members in enumerate(classes):
        for m in members:
            class_of[m] = ci

    group = FiniteSubgroup(
        spec=spec,
        elements=tuple(elements),
        mult_table=tuple(tuple(row) for row in table),
        identity_index=identity,
        inverse_of=tuple(inverse_of),
        element_orders=tuple(orders),
        classes=tuple(classes),
        class_of=tuple(class_of),
        class_reps=tuple(reps),
        exponent=lcm(*orders),
    )
    _validate(group)
    return group


def conjugacy_classes(group: FiniteSubgroup) -> tuple[tuple[int, ...], ...]:
    """The partition of element indices into conjugacy classes."""
    return group.classes


def defining_character(group: FiniteSubgroup) -> tuple[CycNumber, ...]:
    """Trace of the defining 2-dimensional representation, per class."""
    return tuple(group.elements[r].trace() for r in group.class_reps)
