from __future__ import annotations

import dataclasses
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from leibgrade.chevalley import ChevalleyEmbedding, build_chevalley
from leibgrade.dialg import Dialgebra, dual_numbers, kn
from leibgrade.exactlin import ONE, Q, Matrix, inverse
from leibgrade.leibniz import LeibnizAlgebra, center, universal_central_extension
from leibgrade.matrixleib import build_sl, build_steinberg_model, sl_embedding
from leibgrade.recognition import (
    GradingFailure,
    NotASubalgebra,
    NotDeltaHom,
    ZERO_WEIGHT,
    ZeroConditionFailure,
    build_chart,
    build_phi_DE,
    check_delta_homomorphism,
    check_n_on_pairs,
    check_operator_laws,
    check_pair_consistency,
    check_typeA_relations,
    check_zero_weight_action,
    extend_linearly,
    lift_embedding,
    recognize,
    recover_products,
    steinberg_grading,
    verify_grading,
)
from leibgrade.rootsys import parse_root_system


def _sl(n, D):
    sl = build_sl(n, D)
    return sl, sl_embedding(sl, build_chevalley(parse_root_system(f"A{n - 1}")))


def _same_tables(R: Dialgebra, D: Dialgebra) -> bool:
    return R.dim == D.dim and R.left == D.left and R.right == D.right


# ---------- type A ----------

def test_typeA_roundtrip_sl4_k2(sl4_k2, typeA_pipeline):
    sl, _ = sl4_k2
    gd, chart, rd = typeA_pipeline
    # canonical identification r -> E_12(r)
    basis = [sl.E(0, 1, {p: ONE}) for p in range(2)]
    rec = recognize(sl.carrier, gd.emb, basis=basis)
    assert rec.log().ok, rec.log().failures()
    assert _same_tables(rec.dialgebra, kn(2))
    assert rec.dialgebra.bar_unit == kn(2).bar_unit
    assert {e["check"] for e in rec.axioms.entries} >= {"unital", "ass1", "ass5"}


def test_typeA_relations_and_steinberg_map(typeA_pipeline):
    gd, chart, rd = typeA_pipeline
    rep = check_typeA_relations(gd, chart, rd)
    assert rep.log.ok, rep.log.failures()
    assert rep.kernel.dim == rep.extra["model"].kernel.dim


def test_grading_dimensions(typeA_pipeline):
    gd, _, _ = typeA_pipeline
    assert all(gd.space(a).dim == 2 for a in range(len(gd.rs)))
    assert gd.space(ZERO_WEIGHT).dim + 2 * len(gd.rs) == gd.L.dim


def test_rank_two_steinberg_model_alternative():
    st_ = build_steinberg_model(3, kn(2))
    g = build_chevalley(parse_root_system("A2"))
    emb = steinberg_grading(st_, g)
    basis = [st_.v(0, 1, {p: ONE}) for p in range(2)]
    rec = recognize(st_.algebra, emb, basis=basis)
    assert rec.log().ok
    assert {e["check"] for e in rec.axioms.entries} >= {"alt1", "alt5", "alt-jx-diag"}
    assert _same_tables(rec.dialgebra, kn(2))


def test_recovered_dialgebra_independent_of_pair_choice(typeA_pipeline):
    _, _, rd = typeA_pipeline
    assert check_pair_consistency(rd)


@settings(max_examples=8)
@given(st.tuples(*[st.integers(-2, 2)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0))
def test_base_change_equivariance(m):
    """Recovering in a new basis of L_alpha gives the transported tables."""
    sl, emb = _sl(3, kn(2))
    P = Matrix.from_dense([[m[0], m[1]], [m[2], m[3]]])
    cols = [P.column(q) for q in range(2)]
    basis = [sl.E(0, 1, c) for c in cols]
    R = recognize(sl.carrier, emb, basis=basis).dialgebra
    D, Pi = kn(2), inverse(P)
    for p, q in product(range(2), repeat=2):
        assert R.left_mul({p: ONE}, {q: ONE}) == Pi.apply(D.left_mul(cols[p], cols[q]))
        assert R.right_mul({p: ONE}, {q: ONE}) == Pi.apply(D.right_mul(cols[p], cols[q]))


def test_recognition_is_deterministic(sl4_k2):
    sl, emb = _sl(3, dual_numbers())
    a = recognize(sl.carrier, emb, seed=5)
    b = recognize(sl.carrier, emb, seed=5)
    assert a.dialgebra.to_json() == b.dialgebra.to_json()
    assert a.log().entries == b.log().entries


# ---------- type D ----------

def test_typeD_roundtrip(d4_dual, typeD_pipeline):
    gd, chart, rd = typeD_pipeline
    g = d4_dual.g
    a = gd.rs.simple[0]
    basis = [d4_dual.pure(g.e(a), {p: ONE}) for p in range(2)]
    rec = recognize(d4_dual.algebra, d4_dual.embedding(), basis=basis)
    assert rec.log().ok
    assert _same_tables(rec.dialgebra, dual_numbers())
    assert {e["check"] for e in rec.axioms.entries} >= {"left-commutative", "left-right-flip", "ass3"}


def test_typeD_phi(typeD_pipeline):
    gd, chart, rd = typeD_pipeline
    rep = build_phi_DE(gd, chart, rd)
    assert rep.log.ok
    assert rep.kernel.dim == 0


def test_zero_weight_action(typeD_pipeline):
    gd, chart, rd = typeD_pipeline
    assert check_zero_weight_action(gd, chart, rd).ok


def test_zero_weight_action_detects_corruption(typeD_pipeline):
    gd, chart, rd = typeD_pipeline
    D = rd.dialgebra
    left = dict(D.left)
    left[(1, 1)] = {1: ONE}
    bad = dataclasses.replace(rd, dialgebra=Dialgebra(D.dim, left, D.right))
    log = check_zero_weight_action(gd, chart, bad)
    assert not log.ok
    assert log.failures()[0]["witness"]


def test_operator_laws(typeD_pipeline):
    gd, _, _ = typeD_pipeline
    assert check_operator_laws(gd, roots=range(0, len(gd.rs), 5)).ok


def test_n_on_pairs_A3(typeA_pipeline):
    gd, chart, _ = typeA_pipeline
    assert check_n_on_pairs(gd, chart)


def test_uce_same_dialgebra_sl3_dual():
    sl, emb = _sl(3, dual_numbers())
    ext = universal_central_extension(sl.carrier)
    assert ext.kernel.dim == 1
    emb_u = lift_embedding(ext, emb)
    rec_u = recognize(ext.total, emb_u)
    rec = recognize(sl.carrier, emb)
    assert rec_u.log().ok
    assert rec_u.dialgebra.dim == rec.dialgebra.dim
    assert ext.kernel.is_subspace_of(rec_u.gd.zero)
    assert ext.kernel.is_subspace_of(center(ext.total))
    # projection is a graded map fixing g
    log = check_delta_homomorphism(rec_u.gd, rec.gd, ext.projection, rec_u.chart, rec.chart, rec_u.rd, rec.rd)
    assert log.ok


# ---------- failures ----------

def test_not_a_subalgebra():
    sl, emb = _sl(3, kn(2))
    images = list(emb.images)
    images[0], images[1] = images[1], images[0]
    with pytest.raises(NotASubalgebra):
        verify_grading(sl.carrier, ChevalleyEmbedding(sl.carrier, emb.chev, images))


def test_extra_zero_weight_rejected():
    g = build_chevalley(parse_root_system("A2"))
    L = LeibnizAlgebra(g.dim + 1, g.algebra.table(), list(g.algebra.basis) + ["z"])
    emb = ChevalleyEmbedding(L, g, g.adjoint_embedding().images)
    with pytest.raises(ZeroConditionFailure):
        verify_grading(L, emb)
    assert issubclass(ZeroConditionFailure, GradingFailure)


def test_extend_linearly_detects_inconsistency():
    data = [({0: ONE}, {0: ONE}, "a"), ({1: ONE}, {1: ONE}, "b"), ({0: ONE, 1: ONE}, {0: ONE}, "c")]
    smap, span, bad = extend_linearly(2, 2, data)
    assert smap is None and bad == "c"
    smap, span, bad = extend_linearly(2, 2, data[:2])
    assert bad is None and smap.apply({0: Q(3), 1: ONE}) == {0: Q(3), 1: ONE}


def test_non_graded_map_rejected():
    sl, emb = _sl(3, kn(2))
    gd = verify_grading(sl.carrier, emb)
    chart = build_chart(gd)
    rd = recover_products(gd, chart)
    zero = Matrix.zero(sl.dim, sl.dim)
    with pytest.raises(NotDeltaHom):
        check_delta_homomorphism(gd, gd, zero, chart, chart, rd, rd)
    log = check_delta_homomorphism(gd, gd, Matrix.identity(sl.dim), chart, chart, rd, rd)
    assert log.ok and log.extra["bijective"]
