import itertools

import pytest

from mckay.quiver import (CartanData, ClassificationError, classify_ade,
                          expected_ade_type, finite_cartan, matrix_determinant,
                          reference_affine, reference_finite, to_dot)
from mckay.groups import GroupSpec

from conftest import pipeline

ALL_SPECS = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
             "cyclic:7", "cyclic:8",
             "binary-dihedral:2", "binary-dihedral:3", "binary-dihedral:4",
             "binary-dihedral:5", "binary-dihedral:6",
             "binary-tetrahedral", "binary-octahedral", "binary-icosahedral"]


def test_reference_diagrams_have_delta_in_the_kernel():
    for ade in ["A~1", "A~2", "A~5", "D~4", "D~7", "E~6", "E~7", "E~8"]:
        adj, delta = reference_affine(ade)
        n = len(adj)
        for i in range(n):
            row = sum((2 if i == j else 0) * delta[j] - adj[i][j] * delta[j]
                      for j in range(n))
            assert row == 0
        assert delta[0] == 1


def test_cyclic_2_adjacency_is_a_double_edge():
    _, _, cd = pipeline("cyclic:2")
    assert cd.adjacency == ((0, 2), (2, 0))
    assert cd.ade_type == "A~1"


def test_cyclic_3_adjacency_is_a_triangle():
    _, _, cd = pipeline("cyclic:3")
    assert cd.adjacency == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert cd.ade_type == "A~2"


@pytest.mark.parametrize("text", ALL_SPECS)
def test_classified_types_match_the_classical_assignment(text):
    _, _, cd = pipeline(text)
    assert cd.ade_type == expected_ade_type(GroupSpec.parse(text))


@pytest.mark.parametrize("text", ALL_SPECS)
def test_cartan_kernel_and_delta(text):
    _, table, cd = pipeline(text)
    n = cd.vertex_count
    assert cd.delta == table.degrees
    for i in range(n):
        assert sum(cd.cartan[i][j] * cd.delta[j] for j in range(n)) == 0
    assert cd.delta[cd.trivial_vertex] == 1
    assert sum(d * d for d in cd.delta) == table.group_order
    assert all(cd.adjacency[i][i] == 0 for i in range(n))
    assert all(cd.adjacency[i][j] == cd.adjacency[j][i]
               for i in range(n) for j in range(n))


def test_binary_icosahedral_delta_max_entry():
    _, _, cd = pipeline("binary-icosahedral")
    assert cd.ade_type == "E~8"
    assert max(cd.delta) == 6


def test_standard_labeling_is_a_delta_preserving_isomorphism():
    for text in ["binary-dihedral:4", "binary-octahedral"]:
        _, _, cd = pipeline(text)
        ref_adj, ref_delta = reference_affine(cd.ade_type)
        lab = cd.standard_labeling
        assert sorted(lab) == list(range(cd.vertex_count))
        assert lab[cd.trivial_vertex] == 0
        for i in range(cd.vertex_count):
            assert cd.delta[i] == ref_delta[lab[i]]
            for j in range(cd.vertex_count):
                assert cd.adjacency[i][j] == ref_adj[lab[i]][lab[j]]


def test_classify_branch_graph_as_d4():
    adj = ((0, 0, 1, 0, 0), (0, 0, 1, 0, 0), (1, 1, 0, 1, 1),
           (0, 0, 1, 0, 0), (0, 0, 1, 0, 0))
    ade, _ = classify_ade(adj, (1, 1, 2, 1, 1))
    assert ade == "D~4"


def test_classify_square_as_a3():
    adj = ((0, 1, 0, 1), (1, 0, 1, 0), (0, 1, 0, 1), (1, 0, 1, 0))
    ade, lab = classify_ade(adj, (1, 1, 1, 1), root_vertex=2)
    assert ade == "A~3"
    assert lab[2] == 0


def test_classify_rejects_non_ade_graphs():
    complete = tuple(tuple(0 if i == j else 1 for j in range(4))
                     for i in range(4))
    with pytest.raises(ClassificationError):
        classify_ade(complete, (1, 1, 1, 1))
    disconnected = ((0, 2, 0, 0), (2, 0, 0, 0), (0, 0, 0, 2), (0, 0, 2, 0))
    with pytest.raises(ClassificationError):
        classify_ade(disconnected, (1, 1, 1, 1))


def _permutation_equal(a, b):
    n = len(a)
    for perm in itertools.permutations(range(n)):
        if all(a[i][j] == b[perm[i]][perm[j]] for i in range(n)
               for j in range(n)):
            return True
    return False


def test_finite_cartan_examples():
    _, _, cd2 = pipeline("cyclic:2")
    assert finite_cartan(cd2) == ((2,),)
    _, _, cd4 = pipeline("cyclic:4")
    assert _permutation_equal(finite_cartan(cd4), reference_finite("A~3"))


@pytest.mark.parametrize("text,det", [
    ("cyclic:2", 2), ("cyclic:5", 5), ("cyclic:8", 8),
    ("binary-dihedral:2", 4), ("binary-dihedral:6", 4),
    ("binary-tetrahedral", 3), ("binary-octahedral", 2),
    ("binary-icosahedral", 1),
])
def test_finite_cartan_determinants_match_classical_indices(text, det):
    _, _, cd = pipeline(text)
    assert matrix_determinant(finite_cartan(cd)) == det


def test_dot_output_shape():
    _, _, cd = pipeline("cyclic:3")
    dot = to_dot(cd)
    assert dot.startswith("graph")
    assert "doublecircle" in dot
    assert dot.count(" -- ") == sum(sum(row) for row in cd.adjacency) // 2
    assert "(d=1)" in dot


def test_cartan_data_json_round_trip():
    _, _, cd = pipeline("binary-tetrahedral")
    assert CartanData.from_json_obj(cd.to_json_obj()) == cd
