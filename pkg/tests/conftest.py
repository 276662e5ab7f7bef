from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from leibgrade.chevalley import build_chevalley
from leibgrade.dialg import dual_numbers, kn
from leibgrade.matrixleib import build_sl, build_tensor_algebra, sl_embedding
from leibgrade.recognition import build_chart, recover_products, verify_grading
from leibgrade.rootsys import build_root_system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def dense_matrices(draw, max_rows=5, max_cols=5, elements=small_ints):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(elements) for _ in range(c)] for _ in range(r)]


@pytest.fixture(scope="session")
def g_a2():
    return build_chevalley(build_root_system("A", 2))


@pytest.fixture(scope="session")
def g_a3():
    return build_chevalley(build_root_system("A", 3))


@pytest.fixture(scope="session")
def g_d4():
    return build_chevalley(build_root_system("D", 4))


@pytest.fixture(scope="session")
def sl4_k2(g_a3):
    sl = build_sl(4, kn(2))
    return sl, sl_embedding(sl, g_a3)


@pytest.fixture(scope="session")
def d4_dual(g_d4):
    return build_tensor_algebra(g_d4, dual_numbers())


@pytest.fixture(scope="session")
def typeA_pipeline(sl4_k2):
    sl, emb = sl4_k2
    gd = verify_grading(sl.carrier, emb)
    chart = build_chart(gd)
    return gd, chart, recover_products(gd, chart)


@pytest.fixture(scope="session")
def typeD_pipeline(d4_dual):
    gd = verify_grading(d4_dual.algebra, d4_dual.embedding())
    chart = build_chart(gd)
    return gd, chart, recover_products(gd, chart)
