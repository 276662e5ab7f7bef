"""Split simple Lie algebras with a Chevalley basis, and the operators
exp ad, n_alpha(t), h_alpha(t) acting on any algebra that contains one.

Basis order of a ChevalleyAlgebra: e_alpha for every root (in root-system
order), then H_1..H_l with H_i = alpha_i^vee.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from itertools import product

from .exactlin import ONE, Matrix, Q, Vec, axpy, scale
from .leibniz import AlgebraOperator, LeibnizAlgebra, check_leibniz
from .rootsys import RootSystem, epsilon_indices, root_from_epsilon


class ConstructionFailure(AssertionError):
    pass


class NotNilpotent(ValueError):
    pass


class ZeroParameter(ValueError):
    pass


def cocycle_sign(rs: RootSystem, a: int, b: int) -> int:
    """Bimultiplicative sign with eps(a_i, a_i) = -1 and eps(a_i, a_j) = (-1)^(a_i, a_j) for i < j."""
    ca, cb = rs.coefficients[a], rs.coefficients[b]
    l = rs.rank
    parity = 0
    for i in range(l):
        if ca[i] == 0:
            continue
        parity += ca[i] * cb[i]
        for j in range(i + 1, l):
            g = rs.pairing(rs.simple[i], rs.simple[j])
            if g:
                parity += ca[i] * cb[j] * g
    return -1 if parity % 2 else 1


@dataclass
class ChevalleyAlgebra:
    rs: RootSystem
    algebra: LeibnizAlgebra
    _digest: str = field(default="", repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def num_roots(self) -> int:
        return len(self.rs)

    def e(self, a: int) -> Vec:
        return {a: ONE}

    def e_index(self, a: int) -> int:
        return a

    def h(self, i: int) -> Vec:
        return {len(self.rs) + i - 1: ONE}

    def h_index(self, i: int) -> int:
        return len(self.rs) + i - 1

    def coroot(self, a: int) -> Vec:
        n = len(self.rs)
        return {n + i: Q(c) for i, c in enumerate(self.rs.coefficients[a]) if c}

    def structure_constant(self, a: int, b: int) -> Q:
        """N with [e_a, e_b] = N e_(a+b); 0 when a+b is not a root."""
        s = self.rs.add(a, b)
        if s is None:
            return Q(0)
        return self.algebra.structure(a, b).get(s, Q(0))

    def digest(self) -> str:
        if not self._digest:
            blob = json.dumps(self.algebra.to_json(), sort_keys=True, separators=(",", ":"))
            self._digest = hashlib.sha256(blob.encode()).hexdigest()
        return self._digest

    def adjoint_embedding(self) -> "ChevalleyEmbedding":
        return ChevalleyEmbedding(self.algebra, self, [{i: ONE} for i in range(self.dim)])


def _names(rs: RootSystem) -> list:
    return [f"e[{rs.root_name(a)}]" for a in range(len(rs))] + [f"H{i}" for i in range(1, rs.rank + 1)]


def _cartan_brackets(rs: RootSystem, table: dict) -> None:
    n = len(rs)
    for a in range(n):
        for i in range(1, rs.rank + 1):
            w = rs.pairing(a, rs.simple[i - 1])
            if w:
                table[(n + i - 1, a)] = {a: Q(w)}
                table[(a, n + i - 1)] = {a: Q(-w)}


def _coroot(rs: RootSystem, a: int) -> Vec:
    n = len(rs)
    return {n + i: Q(c) for i, c in enumerate(rs.coefficients[a]) if c}


def _type_a_table(rs: RootSystem) -> dict:
    """Matrix units E_ij with [E_ij, E_kl] = d_jk E_il - d_li E_kj."""
    n = len(rs)
    table: dict = {}
    eps = [epsilon_indices(rs, a) for a in range(n)]
    for a, b in product(range(n), repeat=2):
        i, j = eps[a]
        k, l = eps[b]
        out: Vec = {}
        if j == k and i != l:
            axpy(out, ONE, {root_from_epsilon(rs, i, l): ONE})
        if l == i and j != k:
            axpy(out, -ONE, {root_from_epsilon(rs, k, j): ONE})
        if j == k and i == l:
            axpy(out, ONE, _coroot(rs, a))
        if out:
            table[(a, b)] = out
    return table


def _cocycle_table(rs: RootSystem) -> dict:
    n = len(rs)
    # rescaling e_(-alpha) -> -e_(-alpha) for positive alpha turns [e_a, e_-a] = -a^vee into a^vee
    sign = [1 if rs.is_positive(a) else -1 for a in range(n)]
    table: dict = {}
    for a, b in product(range(n), repeat=2):
        s = rs.add(a, b)
        if s is not None:
            c = cocycle_sign(rs, a, b) * sign[a] * sign[b] * sign[s]
            table[(a, b)] = {s: Q(c)}
        elif rs.negative(a) == b:
            c = cocycle_sign(rs, a, b) * sign[a] * sign[b]
            table[(a, b)] = scale(_coroot(rs, a), Q(c))
    return table


def build_chevalley(rs: RootSystem, verify: str = "full", samples: int = 10_000,
                    seed: int = 0) -> ChevalleyAlgebra:
    """Split simple Lie algebra of type rs.

    verify: "full" checks Jacobi on all basis triples, "sample" on ``samples``
    random triples; the Cartan and [e_a, e_-a] = a^vee sweeps always run.
    """
    if rs.kind == "A":
        table = _type_a_table(rs)
    else:
        table = _cocycle_table(rs)
    _cartan_brackets(rs, table)
    alg = LeibnizAlgebra(len(rs) + rs.rank, table, _names(rs), check=False)
    chev = ChevalleyAlgebra(rs, alg)
    _verify_chevalley(chev, verify, samples, seed)
    return chev


def _verify_chevalley(chev: ChevalleyAlgebra, verify: str, samples: int, seed: int) -> None:
    rs, L = chev.rs, chev.algebra
    n, dim = len(rs), chev.dim
    _, is_lie = check_leibniz(L, lie_only=True)
    if not is_lie:
        raise ConstructionFailure("bracket is not antisymmetric")
    for a in range(n):
        if L.structure(a, rs.negative(a)) != chev.coroot(a):
            raise ConstructionFailure(f"[e_a, e_-a] != a^vee for root {rs.root_name(a)}")
        for i in range(1, rs.rank + 1):
            w = rs.pairing(a, rs.simple[i - 1])
            if L.bracket(chev.h(i), chev.e(a)) != ({a: Q(w)} if w else {}):
                raise ConstructionFailure(f"[H_{i}, e_a] wrong for root {rs.root_name(a)}")
        for b in range(n):
            v = L.structure(a, b)
            s = rs.add(a, b)
            if s is None and b != rs.negative(a) and v:
                raise ConstructionFailure("bracket of non-adding roots must vanish")
            if s is not None and v not in ({s: ONE}, {s: -ONE}):
                raise ConstructionFailure("[e_a, e_b] must be +-e_(a+b)")
    for i in range(1, rs.rank + 1):
        for j in range(1, rs.rank + 1):
            if L.bracket(chev.h(i), chev.h(j)):
                raise ConstructionFailure("Cartan subalgebra is not abelian")
    if verify == "full":
        triples = None
    elif verify == "sample":
        rng = random.Random(seed)
        triples = [(rng.randrange(dim), rng.randrange(dim), rng.randrange(dim)) for _ in range(samples)]
    else:
        return
    report, _ = check_leibniz(L, triples=triples)
    if not report.holds:
        raise ConstructionFailure(f"Jacobi identity fails at {report.counterexample}")


# ---------- embeddings and group operators ----------

class ChevalleyEmbedding:
    """Images of the Chevalley basis inside a Leibniz algebra."""

    def __init__(self, algebra: LeibnizAlgebra, chev: ChevalleyAlgebra, images):
        if len(images) != chev.dim:
            raise ValueError("one image per Chevalley basis element is required")
        self.algebra = algebra
        self.chev = chev
        self.images = [dict(v) for v in images]
        self._exp_cache: dict = {}
        self._n_cache: dict = {}

    @property
    def rs(self) -> RootSystem:
        return self.chev.rs

    def e(self, a: int) -> Vec:
        return self.images[a]

    def h(self, i: int) -> Vec:
        return self.images[self.chev.h_index(i)]

    def image(self, v: Vec) -> Vec:
        out: Vec = {}
        for k, x in v.items():
            axpy(out, x, self.images[k])
        return out

    def coroot(self, a: int) -> Vec:
        return self.image(self.chev.coroot(a))

    def to_json(self) -> dict:
        from .exactlin import format_scalar
        rs = self.rs
        enc = lambda v: [[k, format_scalar(x)] for k, x in sorted(v.items())]
        return {
            "roots": rs.name,
            "e": {rs.root_name(a): enc(self.e(a)) for a in range(len(rs))},
            "H": [enc(self.h(i)) for i in range(1, rs.rank + 1)],
        }

    @classmethod
    def from_json(cls, data, algebra: LeibnizAlgebra, chev: ChevalleyAlgebra) -> "ChevalleyEmbedding":
        from .exactlin import parse_scalar, vec

        def dec(v):
            if v and isinstance(v[0], (list, tuple)):
                return {int(k): parse_scalar(x) for k, x in v}
            return vec(v)

        rs = chev.rs
        images = []
        for a in range(len(rs)):
            name = rs.root_name(a)
            if name not in data["e"]:
                raise KeyError(f"embedding is missing root {name}")
            images.append(dec(data["e"][name]))
        if len(data["H"]) != rs.rank:
            raise ValueError("embedding needs one H image per simple root")
        images.extend(dec(v) for v in data["H"])
        return cls(algebra, chev, images)


def exp_ad(L: LeibnizAlgebra, x: Vec, t=1) -> AlgebraOperator:
    """sum_k (t ad x)^k / k!  with ad x (y) = -[y, x]."""
    t = Q(t)
    ident = Matrix.identity(L.dim)
    if not t or not x:
        return AlgebraOperator(ident, "exp(0)")
    step = L.right_operator(x).scaled(-t)
    result = ident
    power = ident
    k = 1
    while True:
        power = (step @ power).scaled(Q(1, k))
        if power.is_zero():
            break
        if k > L.dim:
            raise NotNilpotent("ad x is not nilpotent")
        result = result + power
        k += 1
    return AlgebraOperator(result, f"exp({t} ad)")


def _exp(emb: ChevalleyEmbedding, a: int, t) -> AlgebraOperator:
    key = (a, Q(t))
    op = emb._exp_cache.get(key)
    if op is None:
        op = exp_ad(emb.algebra, emb.e(a), t)
        emb._exp_cache[key] = op
    return op


def n_operator(emb: ChevalleyEmbedding, a: int, t=1) -> AlgebraOperator:
    """n_a(t) = exp(t e_a) exp(-t^-1 e_-a) exp(t e_a) acting through Ad."""
    t = Q(t)
    if not t:
        raise ZeroParameter("n_alpha(t) needs t != 0")
    key = (a, t)
    op = emb._n_cache.get(key)
    if op is None:
        x = _exp(emb, a, t)
        y = _exp(emb, emb.rs.negative(a), -1 / t)
        op = AlgebraOperator(x.matrix @ y.matrix @ x.matrix,
                             f"n[{emb.rs.root_name(a)}]({t})")
        emb._n_cache[key] = op
    return op


def h_operator(emb: ChevalleyEmbedding, a: int, t) -> AlgebraOperator:
    """h_a(t) = n_a(t) n_a(1)^-1, using n_a(1)^-1 = n_a(-1)."""
    t = Q(t)
    if not t:
        raise ZeroParameter("h_alpha(t) needs t != 0")
    inv = n_operator(emb, a, -1)
    return AlgebraOperator(n_operator(emb, a, t).matrix @ inv.matrix,
                           f"h[{emb.rs.root_name(a)}]({t})")


def word_operator(emb: ChevalleyEmbedding, word) -> AlgebraOperator:
    """Product of n_(alpha_k)(1) along a Weyl word, first letter applied first."""
    m = Matrix.identity(emb.algebra.dim)
    for k in word:
        m = n_operator(emb, emb.rs.simple[k - 1], 1).matrix @ m
    return AlgebraOperator(m, "n" + "".join(map(str, word)))


def is_automorphism(L: LeibnizAlgebra, op: AlgebraOperator) -> bool:
    from .leibniz import check_homomorphism
    return check_homomorphism(L, L, op.matrix).holds
