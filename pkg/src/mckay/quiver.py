"""McKay quiver, affine Cartan data, and ADE classification.

The quiver has one vertex per irreducible character; the number of
edges between vertices i and j is the multiplicity of character j in
the product of the defining character with character i.  Its graph is
classified against explicit reference affine diagrams, and the data
(adjacency, Cartan matrix, kernel vector, labeling) is verified rather
than assumed: C * delta = 0, one-dimensional kernel, primitive delta.

Reference labelings put the affine vertex at 0; the finite diagram on
vertices 1..n follows the usual conventions (chains numbered along the
diagram, branch vertex carrying the fork).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chartab import CharacterTable
from .errors import InternalError, InvariantError
from .groups import GroupSpec

__all__ = [
    "CartanData",
    "ClassificationError",
    "mckay_quiver",
    "classify_ade",
    "finite_cartan",
    "reference_affine",
    "reference_finite",
    "expected_ade_type",
    "matrix_determinant",
    "to_dot",
]

Matrix = tuple[tuple[int, ...], ...]


class ClassificationError(InternalError):
    """The graph is not an affine ADE diagram."""


@dataclass(frozen=True)
class CartanData:
    """Affine Cartan data attached to a McKay quiver.

    standard_labeling[v] is the vertex of the reference diagram of
    ade_type that v corresponds to; the trivial vertex maps to 0.
    """

    vertex_count: int
    adjacency: Matrix
    cartan: Matrix
    delta: tuple[int, ...]
    trivial_vertex: int
    ade_type: str
    standard_labeling: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.vertex_count - 1

    @property
    def group_order(self) -> int:
        return sum(d * d for d in self.delta)

    def to_json_obj(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "adjacency": [list(r) for r in self.adjacency],
            "cartan": [list(r) for r in self.cartan],
            "delta": list(self.delta),
            "trivial_vertex": self.trivial_vertex,
            "ade_type": self.ade_type,
            "standard_labeling": list(self.standard_labeling),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> CartanData:
        return CartanData(
            vertex_count=obj["vertex_count"],
            adjacency=tuple(tuple(r) for r in obj["adjacency"]),
            cartan=tuple(tuple(r) for r in obj["cartan"]),
            delta=tuple(obj["delta"]),
            trivial_vertex=obj["trivial_vertex"],
            ade_type=obj["ade_type"],
            standard_labeling=tuple(obj["standard_labeling"]),
        )


# -- reference diagrams ------------------------------------------------

def _from_edges(count: int, edges: list[tuple[int, int]],
                delta: tuple[int, ...]) -> tuple[Matrix, tuple[int, ...]]:
    adj = [[0] * count for _ in range(count)]
    for a, b in edges:
        adj[a][b] += 1
        adj[b][a] += 1
    return tuple(tuple(r) for r in adj), delta


@lru_cache(maxsize=None)
def reference_affine(ade_type: str) -> tuple[Matrix, tuple[int, ...]]:
    """Adjacency and kernel vector of the reference affine diagram."""
    kind, _, num = ade_type.partition("~")
    n = int(num) if num else 0
    if kind == "A" and n == 1:
        return ((0, 2), (2, 0)), (1, 1)
    if kind == "A" and n >= 2:
        edges = [(i, i + 1) for i in range(n)] + [(n, 0)]
        return _from_edges(n + 1, edges, (1,) * (n + 1))
    if kind == "D" and n >= 4:
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n)]
        delta = (1, 1) + (2,) * (n - 3) + (1, 1)
        return _from_edges(n + 1, edges, delta)
    if ade_type == "E~6":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)]
        return _from_edges(7, edges, (1, 1, 2, 2, 3, 2, 1))
    if ade_type == "E~7":
        edges = [(0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]
        return _from_edges(8, edges, (1, 2, 2, 3, 4, 3, 2, 1))
    if ade_type == "E~8":
        edges = [(0, 8), (8, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 1), (2, 4)]
        return _from_edges(9, edges, (1, 2, 3, 4, 6, 5, 4, 3, 2))
    raise ValueError(f"unknown affine ADE type {ade_type!r}")


@lru_cache(maxsize=None)
def reference_finite(ade_type: str) -> Matrix:
    """Finite Cartan matrix: delete vertex 0 of the reference diagram."""
    adj, _ = reference_affine(ade_type)
    n = len(adj) - 1
    return tuple(tuple((2 if i == j else 0) - adj[i + 1][j + 1] for j in range(n))
                 for i in range(n))


def expected_ade_type(spec: GroupSpec) -> str:
    """The classical assignment; tests compare the computed type to it."""
    if spec.family == "cyclic":
        return f"A~{spec.parameter - 1}"
    if spec.family == "binary-dihedral":
        return f"D~{spec.parameter + 2}"
    return {"binary-tetrahedral": "E~6", "binary-octahedral": "E~7",
            "binary-icosahedral": "E~8"}[spec.family]


def _candidate_types(count: int) -> list[str]:
    out = []
    if count >= 2:
        out.append(f"A~{count - 1}")
    if count >= 5:
        out.append(f"D~{count - 1}")
    if count == 7:
        out.append("E~6")
    if count == 8:
        out.append("E~7")
    if count == 9:
        out.append("E~8")
    return out


def _is_connected(adjacency: Matrix) -> bool:
    n = len(adjacency)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if adjacency[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _find_isomorphism(adjacency: Matrix, delta: tuple[int, ...],
                      ref_adj: Matrix, ref_delta: tuple[int, ...],
                      root_vertex: int | None) -> tuple[int, ...] | None:
    """Backtracking graph isomorphism preserving delta labels, with the
    optional constraint root_vertex -> 0.  Deterministic: vertices are
    assigned in order and the smallest valid image wins."""
    n = len(adjacency)
    image: list[int | None] = [None] * n
    used = [False] * n

    def consistent(v: int, t: int) -> bool:
        if delta[v] != ref_delta[t]:
            return False
        for u in range(n):
            if image[u] is not None and adjacency[v][u] != ref_adj[t][image[u]]:
                return False
        return True

    def assign(v: int) -> bool:
        if v == n:
            return True
        targets = [0] if root_vertex == v else range(n)
        for t in targets:
            if not used[t] and consistent(v, t):
                image[v] = t
                used[t] = True
                if assign(v + 1):
                    return True
                image[v] = None
                used[t] = False
        return False

    if root_vertex is not None and not consistent(root_vertex, 0):
        return None
    return tuple(image) if assign(0) else None


def classify_ade(adjacency: Matrix, delta: tuple[int, ...],
                 root_vertex: int | None = None) -> tuple[str, tuple[int, ...]]:
    """Identify the graph with a reference affine ADE diagram.

    Returns the type tag and an explicit vertex bijection onto the
    reference labeling (root_vertex, when given, is sent to vertex 0).
    Raises ClassificationError if the graph matches no reference.
    """
    adjacency = tuple(tuple(row) for row in adjacency)
    n = len(adjacency)
    if any(len(row) != n for row in adjacency):
        raise ClassificationError("adjacency matrix is not square")
    if any(adjacency[i][j] != adjacency[j][i] for i in range(n) for j in range(n)):
        raise ClassificationError("adjacency matrix is not symmetric")
    if not _is_connected(adjacency):
        raise ClassificationError("not an affine ADE diagram: graph is disconnected")
    delta = tuple(delta)
    for ade_type in _candidate_types(n):
        ref_adj, ref_delta = reference_affine(ade_type)
        if sorted(map(sum, adjacency)) != sorted(map(sum, ref_adj)):
            continue
        if sorted(delta) != sorted(ref_delta):
            continue
        labeling = _find_isomorphism(adjacency, delta, ref_adj, ref_delta,
                                     root_vertex)
        if labeling is not None:
            return ade_type, labeling
    raise ClassificationError("not an affine ADE diagram")


# -- exact linear algebra over Q ---------------------------------------

def _rank_over_q(matrix: Matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def matrix_determinant(matrix: Matrix) -> Fraction:
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return det


# -- the quiver itself -------------------------------------------------

def mckay_quiver(table: CharacterTable) -> CartanData:
    """Adjacency a_ij = multiplicity of character j in (defining * i)."""
    r = table.n_classes
    order = table.group_order
    if order < 2:
        raise ValueError("the catalog starts at groups of order 2")
    chi_q = table.defining_values
    adjacency = [[0] * r for _ in range(r)]
    for i in range(r):
        product = tuple(chi_q[c] * table.values[i][c] for c in range(r))
        for j in range(r):
            acc = 0
            for c in range(r):
                acc = product[c] * table.values[j][c].conj() * table.class_sizes[c] + acc
            acc = acc * Fraction(1, order)
            if not acc.is_integer() or acc.rational_value() < 0:
                raise InvariantError(f"multiplicity a[{i}][{j}] = {acc} is not a "
                                     "nonnegative integer")
            adjacency[i][j] = int(acc.rational_value())
    for i in range(r):
        if adjacency[i][i] != 0:
            raise InvariantError(f"loop at vertex {i}: catalog quivers have none")
        for j in range(r):
            if adjacency[i][j] != adjacency[j][i]:
                raise InvariantError("quiver adjacency is not symmetric")

    cartan = tuple(tuple((2 if i == j else 0) - adjacency[i][j] for j in range(r))
                   for i in range(r))
    delta = tuple(table.degrees)
    if any(sum(cartan[i][j] * delta[j] for j in range(r)) != 0 for i in range(r)):
        raise InvariantError("C * delta != 0")
    if _rank_over_q(cartan) != r - 1:
        raise InvariantError("kernel of the affine Cartan matrix is not a line")
    if min(delta) < 1 or delta[table.trivial_index] != 1:
        raise InvariantError("delta is not a primitive positive kernel vector")

    ade_type, labeling = classify_ade(adjacency, delta,
                                      root_vertex=table.trivial_index)
    return CartanData(
        vertex_count=r,
        adjacency=tuple(tuple(row) for row in adjacency),
        cartan=cartan,
        delta=delta,
        trivial_vertex=table.trivial_index,
        ade_type=ade_type,
        standard_labeling=labeling,
    )


def finite_cartan(cd: CartanData) -> Matrix:
    """Delete the trivial vertex; verified positive definite."""
    keep = [i for i in range(cd.vertex_count) if i != cd.trivial_vertex]
    matrix = tuple(tuple(cd.cartan[i][j] for j in keep) for i in keep)
    for k in range(1, len(matrix) + 1):
        minor = tuple(row[:k] for row in matrix[:k])
        if matrix_determinant(minor) <= 0:
            raise InvariantError("finite Cartan matrix is not positive definite")
    return matrix


def to_dot(cd: CartanData) -> str:
    """DOT rendering with delta labels; the trivial vertex is double-circled."""
    lines = ["graph mckay_quiver {"]
    for v in range(cd.vertex_count):
        shape = "doublecircle" if v == cd.trivial_vertex else "circle"
        lines.append(f'  v{v} [label="ρ{v} (d={cd.delta[v]})", shape={shape}];')
    for i in range(cd.vertex_count):
        for j in range(i + 1, cd.vertex_count):
            lines.extend([f"  v{i} -- v{j};"] * cd.adjacency[i][j])
    lines.append("}")
    return "\n".join(lines) + "\n"
