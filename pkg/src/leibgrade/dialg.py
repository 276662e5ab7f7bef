"""Dialgebras by structure constants: axiom suites, example constructors,
bar-units, and the passage to Leibniz algebras.

A dialgebra has a left product (-|, written ``left``) and a right product
(|-, written ``right``).  Every identity here is multilinear, so it is
decided by evaluating all basis triples; the first failing triple in
lexicographic order is reported.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping, Sequence

from .checks import AxiomReport, failed, passed
from .exactlin import (
    ONE,
    Matrix,
    Vec,
    axpy,
    dense,
    format_scalar,
    parse_scalar,
    scale,
    sub,
    vec,
)
from .leibniz import LeibnizAlgebra, LeibnizIdentityFailure, check_leibniz


class NotAssociative(ValueError):
    def __init__(self, msg: str, report: AxiomReport | None = None):
        super().__init__(msg)
        self.report = report


class NotADifferential(ValueError):
    pass


class NotABarUnit(ValueError):
    pass


class MissingBarUnit(ValueError):
    pass


Table = Mapping[tuple[int, int], Vec]


def _clean_table(table, dim: int) -> dict:
    """Accept {(i, j): vec} or dense c[i][j][k]; return {(i, j): sparse vec}."""
    out = {}
    if isinstance(table, Mapping):
        items = table.items()
    else:
        items = (((i, j), table[i][j]) for i in range(dim) for j in range(dim))
    for (i, j), v in items:
        v = v if isinstance(v, dict) else vec(v)
        v = {k: x for k, x in v.items() if x}
        if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k in v):
            raise IndexError(f"product index out of range at ({i}, {j})")
        if v:
            out[(i, j)] = v
    return out


def _mul(table: dict, u: Vec, v: Vec) -> Vec:
    out: Vec = {}
    for i, a in u.items():
        for j, b in v.items():
            t = table.get((i, j))
            if t:
                axpy(out, a * b, t)
    return out


class Dialgebra:
    def __init__(self, dim: int, left, right, basis: Sequence[str] | None = None,
                 bar_unit: Vec | Sequence | None = None):
        self.dim = dim
        self.basis = tuple(basis) if basis is not None else tuple(f"d{i}" for i in range(dim))
        if len(self.basis) != dim:
            raise ValueError("basis label count does not match dim")
        self.left = _clean_table(left, dim)
        self.right = _clean_table(right, dim)
        if bar_unit is not None and not isinstance(bar_unit, dict):
            bar_unit = vec(bar_unit)
        self.bar_unit = bar_unit
        if bar_unit is not None:
            for x in range(dim):
                e = {x: ONE}
                if self.right_mul(bar_unit, e) != e or self.left_mul(e, bar_unit) != e:
                    raise NotABarUnit(f"designated bar-unit fails on basis element {x}")

    def left_mul(self, x: Vec, y: Vec) -> Vec:
        return _mul(self.left, x, y)

    def right_mul(self, x: Vec, y: Vec) -> Vec:
        return _mul(self.right, x, y)

    def with_bar_unit(self, e: Vec | None) -> "Dialgebra":
        return Dialgebra(self.dim, self.left, self.right, self.basis, e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dialgebra):
            return NotImplemented
        return (self.dim, self.left, self.right) == (other.dim, other.left, other.right)

    def __repr__(self) -> str:
        return f"Dialgebra(dim={self.dim}, unital={self.bar_unit is not None})"

    def to_json(self) -> dict:
        def enc(t):
            return sorted([i, j, k, format_scalar(x)] for (i, j), v in t.items() for k, x in v.items())
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "left": enc(self.left),
            "right": enc(self.right),
            "bar_unit": None if self.bar_unit is None
            else [format_scalar(x) for x in dense(self.bar_unit, self.dim)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Dialgebra":
        dim = int(data["dim"])

        def dec(entries, field_name):
            t: dict = {}
            for n, item in enumerate(entries):
                if len(item) != 4:
                    raise ValueError(f"{field_name}[{n}]: expected [i, j, k, 'num/den']")
                i, j, k, x = item
                t.setdefault((int(i), int(j)), {})[int(k)] = parse_scalar(x)
            return t

        bar = data.get("bar_unit")
        return cls(dim, dec(data["left"], "left"), dec(data["right"], "right"),
                   data.get("basis"), None if bar is None else vec(bar))


def left_mul(d: Dialgebra, x: Vec, y: Vec) -> Vec:
    return d.left_mul(x, y)


def right_mul(d: Dialgebra, x: Vec, y: Vec) -> Vec:
    return d.right_mul(x, y)


# ---------- axiom suites ----------

def _sweep(dim: int, arity: int, axiom_id: str, lhs: Callable, rhs: Callable,
           note: str = "") -> AxiomReport:
    for idx in product(range(dim), repeat=arity):
        args = [{i: ONE} for i in idx]
        a, b = lhs(*args), rhs(*args)
        if a != b:
            return failed(axiom_id, idx, a, b, note)
    return passed(axiom_id, note)


def associators(d: Dialgebra):
    L, R = d.left_mul, d.right_mul

    def j_left(a, b, c):
        return sub(L(L(a, b), c), L(a, L(b, c)))

    def j_right(a, b, c):
        return sub(R(R(a, b), c), R(a, R(b, c)))

    def j_cross(a, b, c):
        return sub(L(R(a, b), c), R(a, L(b, c)))

    return j_left, j_right, j_cross


def check_associative(d: Dialgebra) -> list:
    L, R = d.left_mul, d.right_mul
    n = d.dim
    return [
        _sweep(n, 3, "ass1", lambda a, b, c: L(a, L(b, c)), lambda a, b, c: L(L(a, b), c),
               "a-|(b-|c) = (a-|b)-|c"),
        _sweep(n, 3, "ass2", lambda a, b, c: L(L(a, b), c), lambda a, b, c: L(a, R(b, c)),
               "(a-|b)-|c = a-|(b|-c)"),
        _sweep(n, 3, "ass3", lambda a, b, c: L(R(a, b), c), lambda a, b, c: R(a, L(b, c)),
               "(a|-b)-|c = a|-(b-|c)"),
        _sweep(n, 3, "ass4", lambda a, b, c: R(R(a, b), c), lambda a, b, c: R(a, R(b, c)),
               "(a|-b)|-c = a|-(b|-c)"),
        _sweep(n, 3, "ass5", lambda a, b, c: R(a, R(b, c)), lambda a, b, c: R(L(a, b), c),
               "a|-(b|-c) = (a-|b)|-c"),
    ]


def check_alternative(d: Dialgebra, derived: bool = True) -> list:
    """The five alternative-dialgebra axioms, then their stated consequences."""
    L, R = d.left_mul, d.right_mul
    jl, jr, jx = associators(d)
    n = d.dim
    neg = lambda v: scale(v, -ONE)
    out = [
        _sweep(n, 3, "alt1", lambda a, b, c: jl(a, b, c), lambda a, b, c: neg(jr(c, b, a)),
               "J-|(a,b,c) = -J|-(c,b,a)"),
        _sweep(n, 3, "alt2", lambda a, b, c: jl(a, b, c), lambda a, b, c: jr(b, c, a),
               "J-|(a,b,c) = J|-(b,c,a)"),
        _sweep(n, 3, "alt3", lambda a, b, c: jx(a, b, c), lambda a, b, c: neg(jr(a, c, b)),
               "Jx(a,b,c) = -J|-(a,c,b)"),
        _sweep(n, 3, "alt4", lambda a, b, c: R(R(a, b), c), lambda a, b, c: R(L(a, b), c),
               "(a|-b)|-c = (a-|b)|-c"),
        _sweep(n, 3, "alt5", lambda a, b, c: L(a, R(b, c)), lambda a, b, c: L(a, L(b, c)),
               "a-|(b|-c) = a-|(b-|c)"),
    ]
    if derived:
        zero = lambda *args: {}
        out += [
            _sweep(n, 3, "alt-jl-skew", jl, lambda a, b, c: neg(jl(a, c, b)), "J-|(a,b,c) = -J-|(a,c,b)"),
            _sweep(n, 3, "alt-jr-skew", jr, lambda a, b, c: neg(jr(b, a, c)), "J|-(a,b,c) = -J|-(b,a,c)"),
            _sweep(n, 3, "alt-jx-skew", jx, lambda a, b, c: neg(jx(c, b, a)), "Jx(a,b,c) = -Jx(c,b,a)"),
            # quadratic identities: basis diagonal plus the polarized forms above
            _sweep(n, 2, "alt-jl-diag", lambda a, b: jl(a, b, b), zero, "J-|(a,b,b) = 0"),
            _sweep(n, 2, "alt-jr-diag", lambda a, b: jr(a, a, b), zero, "J|-(a,a,b) = 0"),
            _sweep(n, 2, "alt-jx-diag", lambda a, b: jx(a, b, a), zero, "Jx(a,b,a) = 0"),
        ]
    return out


def axioms_hold(reports) -> bool:
    return all(r.holds for r in reports)


def is_commutative(d: Dialgebra) -> list:
    """[x-|y = y-|x, x-|y = y|-x] over basis pairs."""
    L, R = d.left_mul, d.right_mul
    return [
        _sweep(d.dim, 2, "left-commutative", lambda x, y: L(x, y), lambda x, y: L(y, x),
               "x-|y = y-|x"),
        _sweep(d.dim, 2, "left-right-flip", lambda x, y: L(x, y), lambda x, y: R(y, x),
               "x-|y = y|-x"),
    ]


def check_dialgebra_homomorphism(d1: Dialgebra, d2: Dialgebra, f: Matrix) -> list:
    img = lambda v: f.apply(v)
    return [
        _sweep(d1.dim, 2, "hom-left", lambda x, y: img(d1.left_mul(x, y)),
               lambda x, y: d2.left_mul(img(x), img(y))),
        _sweep(d1.dim, 2, "hom-right", lambda x, y: img(d1.right_mul(x, y)),
               lambda x, y: d2.right_mul(img(x), img(y))),
    ]


# ---------- ordinary algebras ----------

def algebra_associativity(table: Table, dim: int) -> AxiomReport:
    t = _clean_table(table, dim)
    m = lambda x, y: _mul(t, x, y)
    return _sweep(dim, 3, "associative", lambda a, b, c: m(m(a, b), c), lambda a, b, c: m(a, m(b, c)))


def algebra_alternativity(table: Table, dim: int) -> list:
    t = _clean_table(table, dim)
    m = lambda x, y: _mul(t, x, y)
    assoc = lambda a, b, c: sub(m(m(a, b), c), m(a, m(b, c)))
    return [
        _sweep(dim, 3, "alt-flip", assoc, lambda a, b, c: scale(assoc(c, b, a), -ONE)),
        _sweep(dim, 3, "alt-cycle", assoc, lambda a, b, c: assoc(b, c, a)),
    ]


def from_associative_algebra(table: Table, dim: int, unit: Vec | None = None,
                             basis: Sequence[str] | None = None) -> Dialgebra:
    """An associative algebra as a dialgebra with both products equal."""
    t = _clean_table(table, dim)
    rep = algebra_associativity(t, dim)
    if not rep.holds:
        raise NotAssociative(f"product is not associative at {rep.counterexample}", rep)
    return Dialgebra(dim, t, t, basis, unit)


def from_differential_algebra(table: Table, d_matrix: Matrix, dim: int,
                              basis: Sequence[str] | None = None) -> Dialgebra:
    """x -| y = x d(y), x |- y = d(x) y for a square-zero derivation d."""
    t = _clean_table(table, dim)
    m = lambda x, y: _mul(t, x, y)
    dd = d_matrix
    for x in range(dim):
        if dd.apply(dd.apply({x: ONE})):
            raise NotADifferential(f"d^2 != 0 on basis element {x}")
    for x, y in product(range(dim), repeat=2):
        ex, ey = {x: ONE}, {y: ONE}
        lhs = dd.apply(m(ex, ey))
        rhs = m(dd.apply(ex), ey)
        axpy(rhs, ONE, m(ex, dd.apply(ey)))
        if lhs != rhs:
            raise NotADifferential(f"Leibniz rule fails on pair ({x}, {y})")
    left = {}
    right = {}
    for x, y in product(range(dim), repeat=2):
        ex, ey = {x: ONE}, {y: ONE}
        left[(x, y)] = m(ex, dd.apply(ey))
        right[(x, y)] = m(dd.apply(ex), ey)
    return Dialgebra(dim, left, right, basis)


def tensor(d1: Dialgebra, d2: Dialgebra) -> Dialgebra:
    for d in (d1, d2):
        reps = check_associative(d)
        if not axioms_hold(reps):
            bad = next(r for r in reps if not r.holds)
            raise NotAssociative(f"tensor factor fails {bad.axiom_id}", bad)
    n2 = d2.dim
    dim = d1.dim * n2

    def tens(t1, t2):
        out = {}
        for (i, j), u in t1.items():
            for (p, q), v in t2.items():
                w: Vec = {}
                for k, a in u.items():
                    for s, b in v.items():
                        w[k * n2 + s] = a * b
                out[(i * n2 + p, j * n2 + q)] = w
        return out

    bar = None
    if d1.bar_unit is not None and d2.bar_unit is not None:
        bar = {}
        for k, a in d1.bar_unit.items():
            for s, b in d2.bar_unit.items():
                bar[k * n2 + s] = a * b
    names = [f"{x}(x){y}" for x in d1.basis for y in d2.basis]
    return Dialgebra(dim, tens(d1.left, d2.left), tens(d1.right, d2.right), names, bar)


def from_nspace(base_table: Table, n: int, base_dim: int, unit: Vec | None = None,
                basis: Sequence[str] | None = None) -> Dialgebra:
    """n copies of an associative (or alternative) algebra A with
    (x -| y)_i = x_i (sum_j y_j) and (x |- y)_i = (sum_j x_j) y_i."""
    t = _clean_table(base_table, base_dim)
    if not algebra_associativity(t, base_dim).holds:
        if not all(r.holds for r in algebra_alternativity(t, base_dim)):
            raise NotAssociative("base algebra is neither associative nor alternative")
    m = base_dim
    left, right = {}, {}
    for i, j in product(range(n), repeat=2):
        for (p, q), v in t.items():
            left[(i * m + p, j * m + q)] = {i * m + k: x for k, x in v.items()}
            right[(i * m + p, j * m + q)] = {j * m + k: x for k, x in v.items()}
    bar = None if unit is None else dict(unit)
    if basis is None:
        basis = [f"e{i + 1}" if m == 1 else f"e{i + 1}.{p}" for i in range(n) for p in range(m)]
    return Dialgebra(n * m, left, right, basis, bar)


def dialgebra_to_leibniz(d: Dialgebra, check: bool = True) -> LeibnizAlgebra:
    """[x, y] = x -| y - y |- x."""
    table = {}
    for x, y in product(range(d.dim), repeat=2):
        ex, ey = {x: ONE}, {y: ONE}
        v = sub(d.left_mul(ex, ey), d.right_mul(ey, ex))
        if v:
            table[(x, y)] = v
    L = LeibnizAlgebra(d.dim, table, d.basis, check=False)
    if check:
        rep, _ = check_leibniz(L)
        if not rep.holds:
            raise LeibnizIdentityFailure(rep)
    return L


# ---------- bundled examples ----------

def base_field() -> Dialgebra:
    """K itself."""
    return from_associative_algebra({(0, 0): {0: ONE}}, 1, {0: ONE}, ["1"])


def dual_numbers() -> Dialgebra:
    """K[x]/(x^2) with both products equal."""
    t = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}}
    return from_associative_algebra(t, 2, {0: ONE}, ["1", "x"])


def matrix_algebra(n: int) -> Dialgebra:
    """M_n(K), basis E_ij at index i*n + j."""
    t = {}
    for i, j, l in product(range(n), repeat=3):
        t[(i * n + j, j * n + l)] = {i * n + l: ONE}
    unit = {i * n + i: ONE for i in range(n)}
    return from_associative_algebra(t, n * n, unit, [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)])


def kn(n: int) -> Dialgebra:
    """n-space over K with the sum-weighted products; bar-unit (1, 0, ..., 0)."""
    return from_nspace({(0, 0): {0: ONE}}, n, 1, {0: ONE})


def differential_example() -> Dialgebra:
    """A = K1 + Ka + Kb, a, b square to zero against each other, d(b) = a."""
    t = {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}, (0, 2): {2: ONE}, (2, 0): {2: ONE}}
    d = Matrix(3, 3, {1: {2: ONE}})
    return from_differential_algebra(t, d, 3, ["1", "a", "b"])


def coords_of(d: Dialgebra, v: Vec) -> list:
    return dense(v, d.dim)
