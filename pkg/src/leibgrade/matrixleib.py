"""Matrix Leibniz algebras gl(n, D), sl(n, D), the Steinberg model, and
tensor products g (x) R of a Chevalley algebra with a dialgebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .chevalley import ChevalleyAlgebra, ChevalleyEmbedding
from .checks import CheckLog
from .dialg import (
    Dialgebra,
    MissingBarUnit,
    NotAssociative,
    axioms_hold,
    check_alternative,
    check_associative,
    is_commutative,
)
from .exactlin import ONE, Matrix, Q, Subspace, Vec, axpy, scale
from .leibniz import (
    DEFAULT_CAP,
    CentralExtension,
    LeibnizAlgebra,
    derived_subalgebra,
    homology,
    is_perfect,
    subalgebra,
    universal_central_extension,
)


class NotCommutative(ValueError):
    pass


def _require_associative(D: Dialgebra) -> None:
    reps = check_associative(D)
    if not axioms_hold(reps):
        bad = next(r for r in reps if not r.holds)
        raise NotAssociative(f"dialgebra fails {bad.axiom_id} at {bad.counterexample}", bad)


@dataclass
class MatrixLeibnizAlgebra:
    """gl(n, D) on the basis E_ij(d_p) at index (i*n + j)*dim(D) + p (0-based i, j)."""

    n: int
    D: Dialgebra
    carrier: LeibnizAlgebra

    def index(self, i: int, j: int, p: int) -> int:
        return (i * self.n + j) * self.D.dim + p

    def unindex(self, k: int) -> tuple[int, int, int]:
        ij, p = divmod(k, self.D.dim)
        i, j = divmod(ij, self.n)
        return i, j, p

    def E(self, i: int, j: int, a: Vec) -> Vec:
        return {self.index(i, j, p): x for p, x in a.items() if x}

    @property
    def dim(self) -> int:
        return self.carrier.dim


def build_gl(n: int, D: Dialgebra, check: bool = True) -> MatrixLeibnizAlgebra:
    """[E_ij(a), E_kl(b)] = d_jk E_il(a -| b) - d_il E_kj(b |- a)."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_associative(D)
    m = D.dim
    names = [f"E{i + 1}{j + 1}({D.basis[p]})" for i in range(n) for j in range(n) for p in range(m)]
    idx = lambda i, j, p: (i * n + j) * m + p
    table: dict = {}
    for i, j, k, l in product(range(n), repeat=4):
        if j != k and i != l:
            continue
        for p, q in product(range(m), repeat=2):
            out: Vec = {}
            if j == k:
                for r, x in D.left.get((p, q), {}).items():
                    axpy(out, x, {idx(i, l, r): ONE})
            if i == l:
                for r, x in D.right.get((q, p), {}).items():
                    axpy(out, -x, {idx(k, j, r): ONE})
            if out:
                table[(idx(i, j, p), idx(k, l, q))] = out
    return MatrixLeibnizAlgebra(n, D, LeibnizAlgebra(n * n * m, table, names, check=check))


@dataclass
class SpecialLinear:
    """sl(n, D) = [gl, gl] with coordinates relative to an echelon basis of the span."""

    gl: MatrixLeibnizAlgebra
    space: Subspace
    carrier: LeibnizAlgebra

    @property
    def n(self) -> int:
        return self.gl.n

    @property
    def D(self) -> Dialgebra:
        return self.gl.D

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def restrict(self, v: Vec) -> Vec:
        """gl coordinates -> sl coordinates (raises NotContained)."""
        return {k: x for k, x in enumerate(self.space.coordinates(v)) if x}

    def embed(self, v: Vec) -> Vec:
        out: Vec = {}
        for k, x in v.items():
            axpy(out, x, self.space.basis[k])
        return out

    def E(self, i: int, j: int, a: Vec) -> Vec:
        return self.restrict(self.gl.E(i, j, a))

    def embedding_matrix(self) -> Matrix:
        return Matrix.from_columns(list(self.space.basis), self.gl.dim)


def check_sl_relations(sl: SpecialLinear) -> CheckLog:
    """The three generator relations for off-diagonal E_ij(a), E_kl(b)."""
    log = CheckLog()
    n, D = sl.n, sl.D
    gl = sl.gl
    for i, j, k, l in product(range(n), repeat=4):
        if i == j or k == l:
            continue
        for p, q in product(range(D.dim), repeat=2):
            a, b = {p: ONE}, {q: ONE}
            got = gl.carrier.bracket(gl.E(i, j, a), gl.E(k, l, b))
            if i != l and j == k:
                want = gl.E(i, l, D.left_mul(a, b))
            elif i == l and j != k:
                want = scale(gl.E(k, j, D.right_mul(b, a)), -ONE)
            elif i != l and j != k:
                want = {}
            else:
                continue
            if got != want:
                log.record("sl-relation", False, generators=[i + 1, j + 1, k + 1, l + 1, p, q])
                return log
    log.record("sl-relation", True)
    return log


def build_sl(n: int, D: Dialgebra, check: bool = True) -> SpecialLinear:
    gl = build_gl(n, D, check=check)
    space = derived_subalgebra(gl.carrier)
    carrier = subalgebra(gl.carrier, space, check=check)
    sl = SpecialLinear(gl, space, carrier)
    for i, j in product(range(n), repeat=2):
        if i != j:
            for p in range(D.dim):
                assert space.contains(gl.E(i, j, {p: ONE})), "off-diagonal generators lie in sl"
    if check:
        log = check_sl_relations(sl)
        assert log.ok, f"sl relations fail: {log.failures()}"
    assert is_perfect(carrier), "sl(n, D) must be perfect"
    return sl


# ---------- Steinberg model ----------

@dataclass
class SteinbergModel:
    """stl(n, D) realized as the universal central extension of sl(n, D)."""

    sl: SpecialLinear
    uce: CentralExtension
    log: CheckLog = field(default_factory=CheckLog)
    _lift_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.sl.n

    @property
    def D(self) -> Dialgebra:
        return self.sl.D

    @property
    def algebra(self) -> LeibnizAlgebra:
        return self.uce.total

    @property
    def kernel(self) -> Subspace:
        return self.uce.kernel

    def _aux(self, i: int, j: int) -> int:
        return min(k for k in range(self.n) if k not in (i, j))

    def lift(self, i: int, j: int, a: Vec, k: int | None = None, flipped: bool = False) -> Vec:
        """v_ij(a) = cls(E_ik(a) (x) E_kj(1)); flipped uses -cls(E_kj(a) (x) E_ik(1))."""
        if i == j:
            raise ValueError("v_ij needs i != j")
        k = self._aux(i, j) if k is None else k
        if k in (i, j):
            raise ValueError("auxiliary index must differ from i and j")
        one = self.D.bar_unit
        out: Vec = {}
        for p, x in a.items():
            key = (i, j, p, k, flipped)
            c = self._lift_cache.get(key)
            if c is None:
                sl, e = self.sl, {p: ONE}
                if flipped:
                    c = scale(self.uce.cls_tensor(sl.E(k, j, e), sl.E(i, k, one)), -ONE)
                else:
                    c = self.uce.cls_tensor(sl.E(i, k, e), sl.E(k, j, one))
                self._lift_cache[key] = c
            axpy(out, x, c)
        return out

    def v(self, i: int, j: int, a: Vec) -> Vec:
        return self.lift(i, j, a)

    def H(self, i: int, j: int, a: Vec, b: Vec) -> Vec:
        return self.algebra.bracket(self.v(i, j, a), self.v(j, i, b))

    def psi(self, x: Vec) -> Vec:
        """Projection to sl(n, D) coordinates."""
        return self.uce.projection.apply(x)


def _verify_steinberg(st: SteinbergModel) -> CheckLog:
    log = st.log
    n, D = st.n, st.D
    sl, L = st.sl, st.algebra
    basis = [{p: ONE} for p in range(D.dim)]
    pairs = [(i, j) for i, j in product(range(n), repeat=2) if i != j]

    ok = all(st.psi(st.v(i, j, a)) == sl.E(i, j, a) for i, j in pairs for a in basis)
    log.record("lift-projects", ok)

    indep = True
    for i, j in pairs:
        for a in basis:
            ref = st.v(i, j, a)
            for k in range(n):
                if k in (i, j):
                    continue
                if st.lift(i, j, a, k) != ref or st.lift(i, j, a, k, flipped=True) != ref:
                    indep = False
    log.record("lift-independent", indep)

    lin = True
    for i, j in pairs:
        for p, q in product(range(D.dim), repeat=2):
            comb = {p: Q(2)}
            axpy(comb, Q(-3), {q: ONE})
            want = scale(st.v(i, j, {p: ONE}), Q(2))
            axpy(want, Q(-3), st.v(i, j, {q: ONE}))
            lin &= st.v(i, j, comb) == want
    log.record("v-linear", lin)

    r5 = r6 = r7 = True
    for (i, j), (k, l) in product(pairs, repeat=2):
        for a, b in product(basis, repeat=2):
            got = L.bracket(st.v(i, j, a), st.v(k, l, b))
            if i != l and j != k:
                r5 &= not got
            elif i != l and j == k:
                r6 &= got == st.v(i, l, D.left_mul(a, b))
            elif i == l and j != k:
                r7 &= got == scale(st.v(k, j, D.right_mul(b, a)), -ONE)
    log.record("v-commute", r5)
    log.record("v-left-product", r6)
    log.record("v-right-product", r7)

    diag = Subspace(sl.gl.dim, [sl.gl.E(i, i, a) for i in range(n) for a in basis])
    hd = all(diag.contains(sl.embed(st.psi(st.H(i, j, a, b))))
             for i, j in pairs for a, b in product(basis, repeat=2))
    log.record("H-diagonal", hd)
    log.record("perfect", is_perfect(L))
    return log


def build_steinberg_model(n: int, D: Dialgebra, cap: int = DEFAULT_CAP,
                          check: bool = True) -> SteinbergModel:
    if n < 3:
        raise ValueError("the Steinberg model needs n >= 3")
    if D.bar_unit is None:
        raise MissingBarUnit("stl(n, D) needs a bar-unit for the generator lifts")
    if n >= 4:
        _require_associative(D)
    else:
        reps = check_alternative(D)
        if not axioms_hold(reps):
            bad = next(r for r in reps if not r.holds)
            raise NotAssociative(f"dialgebra fails {bad.axiom_id}", bad)
    sl = build_sl(n, D, check=check)
    uce = universal_central_extension(sl.carrier, cap=cap, check=check)
    st = SteinbergModel(sl, uce)
    _verify_steinberg(st)
    return st


def hl2_dimension(sl: SpecialLinear, cap: int = DEFAULT_CAP) -> int:
    return homology(sl.carrier, 2, cap).dim


# ---------- g (x) R ----------

@dataclass
class TensorAlgebra:
    """g (x) R on the basis x_i (x) r_p at index i*dim(R) + p."""

    g: ChevalleyAlgebra
    R: Dialgebra
    algebra: LeibnizAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def pure(self, x: Vec, a: Vec) -> Vec:
        m = self.R.dim
        out: Vec = {}
        for i, s in x.items():
            for p, t in a.items():
                axpy(out, s * t, {i * m + p: ONE})
        return out

    def embedding(self) -> ChevalleyEmbedding:
        """x -> x (x) 1 using the bar-unit of R."""
        one = self.R.bar_unit
        return ChevalleyEmbedding(self.algebra, self.g,
                                  [self.pure({i: ONE}, one) for i in range(self.g.dim)])


def build_tensor_algebra(g: ChevalleyAlgebra, R: Dialgebra, check: bool = True) -> TensorAlgebra:
    """[x (x) a, y (x) b] = [x, y] (x) (a -| b)."""
    _require_associative(R)
    comm = is_commutative(R)[0]
    if not comm.holds:
        raise NotCommutative(f"left product is not commutative at {comm.counterexample}")
    if R.bar_unit is None:
        raise MissingBarUnit("the coefficient dialgebra needs a bar-unit")
    m = R.dim
    table: dict = {}
    for (x, y, br), (p, q) in product(g.algebra.nonzero_pairs(), product(range(m), repeat=2)):
        prod_ = R.left.get((p, q))
        if not prod_:
            continue
        out: Vec = {}
        for k, c in br.items():
            for r, d in prod_.items():
                axpy(out, c * d, {k * m + r: ONE})
        if out:
            table[(x * m + p, y * m + q)] = out
    names = [f"{g.algebra.basis[i]}(x){R.basis[p]}" for i in range(g.dim) for p in range(m)]
    return TensorAlgebra(g, R, LeibnizAlgebra(g.dim * m, table, names, check=check))


def sl_embedding(sl: SpecialLinear, chev: ChevalleyAlgebra) -> ChevalleyEmbedding:
    """e_(ei-ej) -> E_ij(1), H_k -> E_kk(1) - E_k+1,k+1(1) (1 the bar-unit)."""
    from .rootsys import epsilon_indices
    if sl.D.bar_unit is None:
        raise MissingBarUnit("the Chevalley embedding needs a bar-unit")
    rs, one = chev.rs, sl.D.bar_unit
    if rs.kind != "A" or rs.rank != sl.n - 1:
        raise ValueError(f"sl({sl.n}, D) carries type A{sl.n - 1}, not {rs.name}")
    images = []
    for a in range(len(rs)):
        i, j = epsilon_indices(rs, a)
        images.append(sl.E(i, j, one))
    for k in range(rs.rank):
        h = sl.gl.E(k, k, one)
        axpy(h, -ONE, sl.gl.E(k + 1, k + 1, one))
        images.append(sl.restrict(h))
    return ChevalleyEmbedding(sl.carrier, chev, images)
