import json

import pytest

from mckay import cache
from mckay.cli import run


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MCKAY_CACHE", str(tmp_path / "cache"))
    yield


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_char_depth_zero(capsys):
    code, out, _ = invoke(capsys, "char", "cyclic:2", "--hw", "1,0",
                          "--depth", "0")
    assert code == 0
    assert json.loads(out) == {"(0,0)": 1}


def test_quiver_dot_triangle(capsys):
    code, out, _ = invoke(capsys, "quiver", "cyclic:3", "--dot")
    assert code == 0
    assert out.count(" -- ") == 3
    assert "doublecircle" in out
    assert out.count("(d=1)") == 3


def test_quiver_json(capsys):
    code, out, _ = invoke(capsys, "quiver", "cyclic:2")
    assert code == 0
    data = json.loads(out)
    assert data["ade_type"] == "A~1"
    assert data["adjacency"] == [[0, 2], [2, 0]]


def test_dimg(capsys):
    code, out, _ = invoke(capsys, "dimg", "cyclic:4")
    assert code == 0
    assert json.loads(out) == {"dim_g": 15, "type": "A~3"}


def test_roots_output(capsys):
    code, out, _ = invoke(capsys, "roots", "cyclic:3")
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "A~2"
    assert sorted(map(tuple, data["positive_roots"])) == \
        [(0, 1), (1, 0), (1, 1)]


def test_unknown_spec_exits_2_and_lists_families(capsys):
    code, _, err = invoke(capsys, "group", "icosahedral")
    assert code == 2
    assert "cyclic" in err and "binary-icosahedral" in err


def test_usage_error_exits_2(capsys):
    code, _, _ = invoke(capsys, "char", "cyclic:2", "--hw", "1,2,3",
                        "--depth", "2")
    assert code == 2
    code, _, _ = invoke(capsys, "nonsense")
    assert code == 2


def test_char_oracle_flag(capsys):
    code, out, _ = invoke(capsys, "char", "cyclic:3", "--hw", "1,1,0",
                          "--depth", "3", "--oracle")
    assert code == 0
    table = json.loads(out)
    assert table["(0,0,0)"] == 1


def test_byte_deterministic_output(capsys):
    args = ("chartab", "binary-dihedral:2")
    code1, out1, _ = invoke(capsys, *args)
    code2, out2, _ = invoke(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_cache_hit_is_byte_identical_to_fresh_serialization(capsys):
    code, _, _ = invoke(capsys, "group", "cyclic:5")
    assert code == 0
    path = cache.entry_path("cyclic:5")
    assert path.exists()
    stored = json.loads(path.read_text())
    assert stored["format_version"] == cache.FORMAT_VERSION
    assert stored["key"] == "cyclic:5"

    from mckay.cli import _build_payload
    from mckay.groups import GroupSpec
    fresh = _build_payload(GroupSpec.parse("cyclic:5"))
    assert json.dumps(stored["payload"], indent=2) == \
        json.dumps(fresh, indent=2)


def test_no_cache_bypasses_the_store(capsys):
    code, _, _ = invoke(capsys, "quiver", "cyclic:3", "--no-cache")
    assert code == 0
    assert not cache.entry_path("cyclic:3").exists()


def test_cache_round_trip_preserves_results(capsys):
    code1, out1, _ = invoke(capsys, "dimg", "binary-dihedral:2")
    code2, out2, _ = invoke(capsys, "dimg", "binary-dihedral:2")
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1) == {"dim_g": 28, "type": "D~4"}


def test_strata_subcommand(capsys):
    code, out, _ = invoke(capsys, "strata", "cyclic:2", "--n", "4")
    assert code == 0
    labels = json.loads(out)
    assert [tuple(l["lam"]) for l in labels] == [(1, 1), (2,), (1,), ()]
    code, out, _ = invoke(capsys, "strata", "cyclic:2", "--n", "2",
                          "--w", "2,0")
    assert code == 0
    labels = json.loads(out)
    assert {"v0": [1, 0], "lam": [], "residual": 1, "candidate": True} in labels


def test_fiber_subcommand(capsys):
    code, out, _ = invoke(capsys, "fiber", "cyclic:2", "--v", "1,1",
                          "--w", "1,0", "--v0", "0,0", "--lam", "1")
    assert code == 0
    data = json.loads(out)
    assert data == {"lagrangian_v": [0, 0], "transported_w": [1, 0],
                    "punctual_parts": [1], "empty": False}


def test_drinfeld_subcommand(capsys):
    code, out, _ = invoke(capsys, "drinfeld", "--eigs", "1,1;z4;")
    assert code == 0
    data = json.loads(out)
    assert len(data["polynomials"]) == 3
    assert data["polynomials"][2] == [{"N": 1, "terms": [[0, "1"]]}]
    code, _, err = invoke(capsys, "drinfeld", "--eigs", "0")
    assert code == 2
    assert "eigenvalue" in err


def test_group_json_contains_table_and_classes(capsys):
    code, out, _ = invoke(capsys, "group", "binary-dihedral:2")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 8
    assert len(data["classes"]) == 5
    assert len(data["mult_table"]) == 8


def test_fiber_subcommand_with_oversized_stratum(capsys):
    code, out, _ = invoke(capsys, "fiber", "cyclic:2", "--v", "1,1",
                          "--w", "1,0", "--v0", "0,0", "--lam", "2")
    assert code == 0
    data = json.loads(out)
    assert data["empty"] is True
    assert data["lagrangian_v"] == [-1, -1]
    assert data["transported_w"] == [1, 0]


def test_dimg_binary_icosahedral(capsys):
    code, out, _ = invoke(capsys, "dimg", "binary-icosahedral")
    assert code == 0
    assert json.loads(out) == {"dim_g": 248, "type": "E~8"}


def test_output_is_byte_deterministic_across_processes(tmp_path):
    # separate interpreters get different hash seeds; any reliance on
    # dict/set iteration order would show up here
    import subprocess
    import sys

    env = {"MCKAY_CACHE": str(tmp_path / "c1"), "PATH": "/usr/bin:/bin"}
    cmd = [sys.executable, "-m", "mckay.cli", "chartab", "binary-tetrahedral"]
    runs = []
    for seed in ("1", "31337"):
        env["PYTHONHASHSEED"] = seed
        result = subprocess.run(cmd, capture_output=True, text=True, env=env,
                                cwd="/")
        assert result.returncode == 0, result.stderr
        runs.append(result.stdout)
    assert runs[0] == runs[1]


def test_corrupt_cache_entries_are_recomputed(capsys):
    code, out1, _ = invoke(capsys, "dimg", "cyclic:3")
    assert code == 0
    path = cache.entry_path("cyclic:3")
    path.write_text("{not json")
    code, out2, _ = invoke(capsys, "dimg", "cyclic:3")
    assert code == 0 and out2 == out1
    path.write_text(json.dumps({"format_version": -1, "key": "cyclic:3",
                                "payload": {}}))
    code, out3, _ = invoke(capsys, "dimg", "cyclic:3")
    assert code == 0 and out3 == out1
