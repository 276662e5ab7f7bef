from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from leibgrade.acceptance import HL2_D4_DUAL, HL2_SL3_K2, HL2_SL4_K2
from leibgrade.chevalley import build_chevalley
from leibgrade.dialg import dialgebra_to_leibniz, dual_numbers, kn
from leibgrade.exactlin import ONE, Q, Subspace, rank
from leibgrade.leibniz import (
    DegreeTooLarge,
    LeibnizAlgebra,
    LeibnizIdentityFailure,
    NotPerfect,
    ad,
    boundary,
    center,
    check_leibniz,
    derivations,
    homology,
    is_perfect,
    lie_quotient,
    quotient_algebra,
    universal_central_extension,
)
from leibgrade.matrixleib import build_gl, build_sl, sl_embedding
from leibgrade.rootsys import parse_root_system

from oracles import hl2_modp, leibniz_violation, weights_from


def sl2() -> LeibnizAlgebra:
    # e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    t = {(0, 1): {2: ONE}, (1, 0): {2: -ONE}, (2, 0): {0: Q(2)}, (0, 2): {0: Q(-2)},
         (2, 1): {1: Q(-2)}, (1, 2): {1: Q(2)}}
    return LeibnizAlgebra(3, t, ["e", "f", "h"])


def dl_k2() -> LeibnizAlgebra:
    return dialgebra_to_leibniz(kn(2))


@pytest.mark.parametrize("make", [sl2, dl_k2], ids=["sl2", "DL(K2)"])
def test_boundary_squares_to_zero(make):
    L = make()
    for n in (2, 3):
        assert (boundary(L, n).delta @ boundary(L, n + 1).delta).is_zero()


def test_boundary_catches_corrupted_bracket():
    L = sl2()
    t = L.table()
    t[(2, 0)] = {0: Q(3)}
    t[(0, 2)] = {0: Q(-3)}
    bad = LeibnizAlgebra(3, t, check=False)
    assert leibniz_violation(bad) is not None
    assert not check_leibniz(bad)[0].holds
    assert not (boundary(bad, 2).delta @ boundary(bad, 3).delta).is_zero()
    with pytest.raises(LeibnizIdentityFailure):
        LeibnizAlgebra(3, t)


def test_degree_two_boundary_sign():
    L = sl2()
    d2 = boundary(L, 2).delta
    # d2(e (x) f) = -[e, f]
    assert d2.apply({0 * 3 + 1: ONE}) == {2: -ONE}


def test_dl_k2_is_abelian_and_gl_is_not_lie():
    L = dl_k2()
    assert not L.nonzero_pairs() or all(not v for _, _, v in L.nonzero_pairs())
    assert L.is_lie()
    for n in (2, 3):
        assert not build_gl(n, kn(2)).carrier.is_lie()


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_chevalley_centrally_closed(name):
    L = build_chevalley(parse_root_system(name)).algebra
    assert homology(L, 2).dim == 0
    assert hl2_modp(L) == 0


def _sl_case(n, D):
    sl = build_sl(n, D)
    emb = sl_embedding(sl, build_chevalley(parse_root_system(f"A{n - 1}")))
    return sl.carrier, weights_from(sl.carrier, [emb.h(i) for i in range(1, n)])


def test_frozen_hl2_sl3_k2():
    L, w = _sl_case(3, kn(2))
    assert homology(L, 2).dim == HL2_SL3_K2 == hl2_modp(L, w)


def test_hl2_sl3_dual():
    L, w = _sl_case(3, dual_numbers())
    ext = universal_central_extension(L)
    assert ext.kernel.dim == homology(L, 2).dim == hl2_modp(L, w) == 1


@pytest.mark.slow
def test_frozen_hl2_sl4_k2():
    L, w = _sl_case(4, kn(2))
    assert hl2_modp(L, w) == HL2_SL4_K2
    assert universal_central_extension(L).kernel.dim == HL2_SL4_K2


@pytest.mark.slow
def test_frozen_hl2_d4_dual(d4_dual):
    L = d4_dual.algebra
    e = d4_dual.embedding()
    assert hl2_modp(L, weights_from(L, [e.h(i) for i in range(1, 5)])) == HL2_D4_DUAL
    assert universal_central_extension(L).kernel.dim == HL2_D4_DUAL


def test_uce_properties():
    L, _ = _sl_case(3, dual_numbers())
    ext = universal_central_extension(L)
    U = ext.total
    assert ext.dim == L.dim + ext.kernel.dim
    assert rank(ext.projection) == L.dim
    assert is_perfect(U)
    assert ext.kernel.is_subspace_of(center(U))
    # centrally closed: the extension of the extension adds nothing
    assert hl2_modp(U) == 0


def test_uce_projection_recovers_bracket():
    L = sl2()
    ext = universal_central_extension(L)
    for i in range(3):
        for j in range(3):
            c = ext.cls_tensor({i: ONE}, {j: ONE})
            assert ext.projection.apply(c) == L.structure(i, j)


def test_uce_requires_perfect():
    with pytest.raises(NotPerfect):
        universal_central_extension(dl_k2())


def test_cap():
    with pytest.raises(DegreeTooLarge):
        boundary(sl2(), 3, cap=10)


@pytest.mark.parametrize("make", [sl2, lambda: build_sl(3, kn(2)).carrier, lambda: build_gl(2, kn(2)).carrier],
                         ids=["sl2", "sl3K2", "gl2K2"])
def test_ad_is_derivation(make):
    L = make()
    for z in range(L.dim):
        ad(L, {z: ONE}, verify=True)


def test_inner_derivations_of_sl2():
    der, inn = derivations(sl2())
    assert der.dim == inn.dim == 3


@pytest.mark.parametrize("n", [2, 3])
def test_lie_quotient_is_lie(n):
    L = build_gl(n, kn(2)).carrier
    Q_, proj = lie_quotient(L)
    assert Q_.is_lie()
    for i in range(Q_.dim):
        assert not Q_.structure(i, i)


def test_quotient_by_center():
    L, _ = _sl_case(3, dual_numbers())
    ext = universal_central_extension(L)
    Lq, _ = quotient_algebra(ext.total, ext.kernel)
    assert Lq.dim == L.dim and is_perfect(Lq)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)), max_size=4))
def test_leibniz_check_agrees_with_oracle(entries):
    """Random perturbations of sl2: the library verdict matches the mod-p oracle."""
    t = sl2().table()
    for i, j, c in entries:
        t.setdefault((i, j), {})
        t[(i, j)] = {**t[(i, j)], (i + j) % 3: Q(c)}
    L = LeibnizAlgebra(3, t, check=False)
    assert check_leibniz(L)[0].holds == (leibniz_violation(L) is None)


def test_json_roundtrip():
    L = build_gl(2, kn(2)).carrier
    assert LeibnizAlgebra.from_json(L.to_json()) == L


def test_center_of_gl():
    L = build_gl(2, dual_numbers()).carrier
    z = center(L)
    assert isinstance(z, Subspace) and z.dim >= 1
