from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, strategies as st
from sympy.liealgebras.cartan_matrix import CartanMatrix

from leibgrade.rootsys import (
    PairClass,
    UnsupportedType,
    a2_classes,
    apply_word,
    enumerate_a2_pairs,
    epsilon_indices,
    pair_class,
    parse_root_system,
    reflect,
    root_from_epsilon,
    simple_coefficients_sign_ok,
    word_mapping_root,
)

TYPES = ["A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"]


@pytest.mark.parametrize("name", TYPES)
def test_cartan_matrix_matches_sympy(name):
    rs = parse_root_system(name)
    ours = [[rs.pairing(a, b) for b in rs.simple] for a in rs.simple]
    ref = CartanMatrix(name)
    assert ours == [[int(ref[i, j]) for j in range(rs.rank)] for i in range(rs.rank)]


def _orbit_from_cartan(name):
    """Roots in simple-root coordinates as the Weyl orbit of the simple roots."""
    C = CartanMatrix(name)
    l = C.shape[0]
    simple = [tuple(int(i == k) for i in range(l)) for k in range(l)]
    seen, todo = set(simple), list(simple)
    while todo:
        v = todo.pop()
        for k in range(l):
            c = sum(v[i] * int(C[i, k]) for i in range(l))
            w = tuple(v[i] - (c if i == k else 0) for i in range(l))
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


@pytest.mark.parametrize("name", ["A2", "A3", "A4", "D4", "D5", "E6", "E7"])
def test_roots_match_cartan_orbit(name):
    rs = parse_root_system(name)
    assert set(map(tuple, rs.coefficients)) == _orbit_from_cartan(name)


@pytest.mark.parametrize("name,count", [("E6", 72), ("E7", 126), ("E8", 240), ("D4", 24), ("A3", 12)])
def test_root_count(name, count):
    assert len(parse_root_system(name)) == count


@pytest.mark.parametrize("name", TYPES)
def test_roots_positive_or_negative_combinations(name):
    rs = parse_root_system(name)
    assert all(simple_coefficients_sign_ok(rs, a) for a in range(len(rs)))
    assert all(rs.pairing(a, a) == 2 for a in range(len(rs)))


@pytest.mark.parametrize("name", ["A3", "D4", "E6"])
def test_reflection_involution_and_isometry(name):
    rs = parse_root_system(name)
    for a, l, m in product(range(len(rs)), repeat=3):
        if (a + l + m) % 7:
            continue
        rl, rm = reflect(rs, a, rs.roots[l]), reflect(rs, a, rs.roots[m])
        assert reflect(rs, a, rl) == rs.roots[l]
        assert rs.vector_pairing(rl, rm) == rs.vector_pairing(rs.roots[l], rs.roots[m])


@given(st.sampled_from(["A3", "D4", "E6"]), st.data())
def test_word_mapping_root(name, data):
    rs = parse_root_system(name)
    a = data.draw(st.integers(0, len(rs) - 1))
    b = data.draw(st.integers(0, len(rs) - 1))
    w = word_mapping_root(rs, a, b)
    assert apply_word(rs, w, a) == b
    assert word_mapping_root(rs, a, b) == w


def _bruteforce_pairs(rs):
    """Independent count straight from coordinates."""
    n = len(rs)
    out = []
    for b, g in product(range(n), repeat=2):
        d = sum(x * y for x, y in zip(rs.roots[b], rs.roots[g])) / rs.divisor
        if d == -1:
            out.append((b, g))
    return out


@pytest.mark.parametrize("name,classes", [("A2", 2), ("A3", 2), ("A4", 2), ("D4", 1), ("D5", 1)])
def test_a2_class_census(name, classes):
    rs = parse_root_system(name)
    cls = a2_classes(rs)
    pairs = _bruteforce_pairs(rs)
    assert len(cls) == classes
    assert sorted(p for c in cls for p in c) == sorted(pairs)
    assert len(enumerate_a2_pairs(rs)) == len(pairs)


def test_a2_has_twelve_pairs_in_two_classes_of_six():
    rs = parse_root_system("A2")
    assert len(_bruteforce_pairs(rs)) == 12
    assert sorted(len(c) for c in a2_classes(rs)) == [6, 6]


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_pair_class_symmetries(name):
    rs = parse_root_system(name)
    tags = {(p.first, p.second): p.class_tag for p in enumerate_a2_pairs(rs)}
    for (b, g), t in tags.items():
        assert tags[(rs.negative(g), rs.negative(b))] == t
        assert tags[(g, b)] != t
        assert pair_class(rs, b, g) == t


@pytest.mark.parametrize("name", ["A3", "D4"])
def test_pair_class_transitivity(name):
    rs = parse_root_system(name)
    tags = {(p.first, p.second): p.class_tag for p in enumerate_a2_pairs(rs)}
    for (b, g), (g2, d) in product(tags, repeat=2):
        if g2 != g or rs.pairing(b, d) != 0:
            continue
        gd, bg = rs.add(g, d), rs.add(b, g)
        quad = [tags[(b, g)], tags[(g, d)], tags[(b, gd)], tags[(bg, d)]]
        assert len(set(quad)) == 1


def test_simple_pair_is_positive():
    rs = parse_root_system("A3")
    a1, a2 = rs.simple[:2]
    assert pair_class(rs, a1, a2) == PairClass.POSITIVE
    assert pair_class(rs, a2, a1) == PairClass.NEGATIVE


def test_epsilon_coordinates():
    rs = parse_root_system("A3")
    for i, j in product(range(4), repeat=2):
        if i != j:
            assert epsilon_indices(rs, root_from_epsilon(rs, i, j)) == (i, j)
    assert epsilon_indices(rs, rs.simple[0]) == (0, 1)
    with pytest.raises(UnsupportedType):
        epsilon_indices(parse_root_system("D4"), 0)


@pytest.mark.parametrize("bad", ["B3", "A0", "D3", "E5", "x"])
def test_unsupported(bad):
    with pytest.raises(UnsupportedType):
        parse_root_system(bad)
