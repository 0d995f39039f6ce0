"""Root systems, chamber representatives, and the sp projection."""

from fractions import Fraction

import pytest

from orbitforge.lattice import (RootSystem, chamber_canonical, gl_roots,
                                is_root_difference, project_to_sp_diag,
                                sl_roots, sp_chamber_canonical, sp_diag_roots)
from orbitforge.ratgeom import Vec


def test_gl_roots_count_and_membership():
    rs = gl_roots(3)
    assert len(rs.roots) == 6
    assert Vec([1, -1, 0]) in rs
    assert Vec([1, 0, -1]) in rs
    assert Vec([1, 1, -2]) not in rs
    assert Vec([0, 0, 0]) not in rs
    assert sl_roots(3).roots == rs.roots


def test_sp_roots_count():
    # 2m^2 restricted roots: +-2eps_i and +-eps_i +- eps_j.
    for m in (1, 2, 3):
        assert len(sp_diag_roots(m).roots) == 2 * m * m


def test_sp_roots_are_patterns():
    rs = sp_diag_roots(3)
    for r in rs.roots:
        assert r == project_to_sp_diag(r, 3)
    h = Fraction(1, 2)
    assert Vec([1, 0, 0, 0, 0, -1]) in rs          # 2 eps_1
    assert Vec([h, -h, 0, 0, h, -h]) in rs         # eps_1 - eps_2
    assert Vec([h, h, 0, 0, -h, -h]) in rs         # eps_1 + eps_2
    assert Vec([1, -1, 0, 0, 0, 0]) not in rs


def test_project_to_sp_diag():
    h = Fraction(1, 2)
    assert project_to_sp_diag(Vec([1, 0, 0, 0, 0, 0]), 3) == Vec([h, 0, 0, 0, 0, -h])
    # Patterns are fixed points of the projection.
    p = Vec([2, -1, 3, -3, 1, -2])
    assert project_to_sp_diag(p, 3) == p
    # The projection kills the orthogonal complement (constant-pair vectors).
    assert project_to_sp_diag(Vec([1, 0, 0, 0, 0, 1]), 3) == Vec([0] * 6)
    with pytest.raises(ValueError):
        project_to_sp_diag(Vec([1, 0, 0]), 2)


def test_chamber_canonical_sorts_ascending():
    assert chamber_canonical(Vec([0, -2, 1])) == Vec([-2, 0, 1])
    assert chamber_canonical((3, 1, 2)) == Vec([1, 2, 3])


def test_sp_chamber_canonical():
    h = Fraction(1, 2)
    assert sp_chamber_canonical(Vec([h, 0, -1, 1, 0, -h]), 3) == \
        Vec([-1, -h, 0, 0, h, 1])
    with pytest.raises(ValueError):
        sp_chamber_canonical(Vec([1, 0, 0, 0, 0, 0]), 3)


def test_is_root_difference():
    rs = gl_roots(3)
    assert is_root_difference(Vec([-1, -3, 0]), Vec([-2, -2, 0]), rs)
    assert not is_root_difference(Vec([-4, 0, 0]), Vec([-2, -2, 0]), rs)


def test_root_system_validation():
    with pytest.raises(ValueError):
        RootSystem(2, frozenset({Vec([1, -1])}), "gl")  # not negation-closed
    with pytest.raises(ValueError):
        RootSystem(2, frozenset({Vec([0, 0])}), "gl")
