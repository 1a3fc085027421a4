from __future__ import annotations

from functools import lru_cache

import pytest

from mckay.chartab import character_table
from mckay.groups import GroupSpec, build_group
from mckay.quiver import mckay_quiver


@lru_cache(maxsize=None)
def pipeline(text: str):
    """(group, character table, cartan data) for a spec string; built
    once per test session."""
    group = build_group(GroupSpec.parse(text))
    table = character_table(group)
    return group, table, mckay_quiver(table)


@pytest.fixture
def get_pipeline():
    return pipeline


def lambda_0(cd) -> tuple[int, ...]:
    return tuple(1 if i == cd.trivial_vertex else 0
                 for i in range(cd.vertex_count))
