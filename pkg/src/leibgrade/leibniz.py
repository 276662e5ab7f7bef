"""Finite-dimensional Leibniz algebras over Q given by structure constants.

Conventions: ``ad z (x) = -[x, z]``; the boundary map on tensor powers uses the
sign ``(-1)^(j+1)`` for the pair (i < j), so ``delta_2(x (x) y) = -[x, y]``.
The universal central extension is ``(L (x) L) / im delta_3`` with projection
``cls(x (x) y) -> [x, y]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .checks import AxiomReport, failed, passed
from .exactlin import (
    ONE,
    Echelon,
    Matrix,
    Subspace,
    Vec,
    axpy,
    format_scalar,
    kernel_basis,
    parse_scalar,
    rank,
    scale,
    sub,
)

DEFAULT_CAP = 10 ** 7


class LeibnizIdentityFailure(ValueError):
    def __init__(self, report: AxiomReport):
        super().__init__(f"Leibniz identity fails at basis triple {report.counterexample}")
        self.report = report


class NotPerfect(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class LeibnizAlgebra:
    """Bracket algebra on Q^dim; the Leibniz identity is enforced unless check=False."""

    def __init__(self, dim: int, table: Mapping[tuple[int, int], Vec],
                 basis: Sequence[str] | None = None, check: bool = True):
        self.dim = dim
        self.basis = tuple(basis) if basis is not None else tuple(f"x{i}" for i in range(dim))
        if len(self.basis) != dim:
            raise ValueError("basis label count does not match dim")
        rows: list[dict] = [dict() for _ in range(dim)]
        for (i, j), v in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            v = {k: x for k, x in v.items() if x}
            if any(not 0 <= k < dim for k in v):
                raise IndexError(f"bracket value of ({i}, {j}) out of range")
            if v:
                rows[i][j] = v
        self._rows = rows
        if check:
            report, _ = check_leibniz(self)
            if not report.holds:
                raise LeibnizIdentityFailure(report)

    def structure(self, i: int, j: int) -> Vec:
        return self._rows[i].get(j, {})

    def nonzero_pairs(self) -> Iterator[tuple[int, int, Vec]]:
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                yield i, j, v

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        rows = self._rows
        for i, a in u.items():
            row = rows[i]
            if not row:
                continue
            for j, b in v.items():
                t = row.get(j)
                if t:
                    axpy(out, a * b, t)
        return out

    def right_operator(self, z: Vec) -> Matrix:
        """Matrix of x -> [x, z]."""
        return Matrix.from_columns([self.bracket({i: ONE}, z) for i in range(self.dim)], self.dim)

    def left_operator(self, z: Vec) -> Matrix:
        """Matrix of x -> [z, x]."""
        return Matrix.from_columns([self.bracket(z, {i: ONE}) for i in range(self.dim)], self.dim)

    def is_lie(self) -> bool:
        return check_leibniz(self, lie_only=True)[1]

    def table(self) -> dict:
        return {(i, j): dict(v) for i, j, v in self.nonzero_pairs()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._rows == other._rows

    def __repr__(self) -> str:
        return f"LeibnizAlgebra(dim={self.dim})"

    def to_json(self) -> dict:
        entries = [[i, j, k, format_scalar(x)]
                   for i, j, v in self.nonzero_pairs() for k, x in sorted(v.items())]
        entries.sort(key=lambda e: (e[0], e[1], e[2]))
        return {"dim": self.dim, "basis": list(self.basis), "bracket": entries}

    @classmethod
    def from_json(cls, data: Mapping, check: bool = True) -> "LeibnizAlgebra":
        dim = int(data["dim"])
        table: dict = {}
        for n, item in enumerate(data["bracket"]):
            if len(item) != 4:
                raise ValueError(f"bracket entry {n}: expected [i, j, k, 'num/den']")
            i, j, k, x = item
            table.setdefault((int(i), int(j)), {})[int(k)] = parse_scalar(x)
        return cls(dim, table, data.get("basis"), check=check)


# ---------- identity checks ----------

def check_leibniz(L: LeibnizAlgebra, lie_only: bool = False, triples: Iterable | None = None):
    """Exhaustive check of [x,[y,z]] = [[x,y],z] - [[x,z],y] on basis triples.

    Returns (report, is_lie).  ``triples`` restricts the sweep to a sample.
    """
    n = L.dim
    is_lie = True
    for i in range(n):
        if L.structure(i, i):
            is_lie = False
            break
        for j in range(i + 1, n):
            a, b = L.structure(i, j), L.structure(j, i)
            if a != scale(b, -ONE):
                is_lie = False
                break
        if not is_lie:
            break
    if lie_only:
        return None, is_lie
    it = triples if triples is not None else product(range(n), repeat=3)
    for x, y, z in it:
        yz = L.structure(y, z)
        xy = L.structure(x, y)
        xz = L.structure(x, z)
        lhs = L.bracket({x: ONE}, yz) if yz else {}
        rhs = sub(L.bracket(xy, {z: ONE}) if xy else {}, L.bracket(xz, {y: ONE}) if xz else {})
        if lhs != rhs:
            return failed("leibniz", (x, y, z), lhs, rhs), is_lie
    return passed("leibniz"), is_lie


def check_right_module(L: LeibnizAlgebra, module_dim: int,
                       action: Mapping[tuple[int, int], Vec]) -> AxiomReport:
    """[m,[x,y]] = [[m,x],y] - [[m,y],x] for an action M x L -> M."""

    def act(mv: Vec, xv: Vec) -> Vec:
        out: Vec = {}
        for m, a in mv.items():
            for x, b in xv.items():
                t = action.get((m, x))
                if t:
                    axpy(out, a * b, t)
        return out

    for m, x, y in product(range(module_dim), range(L.dim), range(L.dim)):
        lhs = act({m: ONE}, L.structure(x, y))
        rhs = sub(act(act({m: ONE}, {x: ONE}), {y: ONE}), act(act({m: ONE}, {y: ONE}), {x: ONE}))
        if lhs != rhs:
            return failed("right-module", (m, x, y), lhs, rhs)
    return passed("right-module")


def adjoint_action(L: LeibnizAlgebra) -> dict:
    return L.table()


def check_homomorphism(L1: LeibnizAlgebra, L2: LeibnizAlgebra, phi: Matrix,
                       pairs: Iterable | None = None) -> AxiomReport:
    """phi([x,y]) = [phi x, phi y] on basis pairs of L1."""
    images = [phi.apply({i: ONE}) for i in range(L1.dim)]
    it = pairs if pairs is not None else product(range(L1.dim), repeat=2)
    for i, j in it:
        lhs = phi.apply(L1.structure(i, j))
        rhs = L2.bracket(images[i], images[j])
        if lhs != rhs:
            return failed("homomorphism", (i, j), lhs, rhs)
    return passed("homomorphism")


# ---------- operators and derivations ----------

@dataclass(frozen=True)
class AlgebraOperator:
    matrix: Matrix
    note: str = ""

    @property
    def domain_dim(self) -> int:
        return self.matrix.cols

    def apply(self, v: Vec) -> Vec:
        return self.matrix.apply(v)

    def __call__(self, v: Vec) -> Vec:
        return self.matrix.apply(v)

    def then(self, other: "AlgebraOperator") -> "AlgebraOperator":
        """Apply self first, then other."""
        return AlgebraOperator(other.matrix @ self.matrix, f"{other.note}*{self.note}")

    def __matmul__(self, other: "AlgebraOperator") -> "AlgebraOperator":
        return AlgebraOperator(self.matrix @ other.matrix, f"{self.note}*{other.note}")

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def ad(L: LeibnizAlgebra, z: Vec, verify: bool = True) -> AlgebraOperator:
    """ad z (x) = -[x, z]; asserted to be a derivation on basis pairs."""
    m = L.right_operator(z).scaled(-1)
    op = AlgebraOperator(m, "ad")
    if verify:
        rep = check_derivation(L, m)
        if not rep.holds:
            raise AssertionError(f"ad z is not a derivation: {rep.counterexample}")
    return op


def check_derivation(L: LeibnizAlgebra, rho: Matrix) -> AxiomReport:
    images = [rho.apply({i: ONE}) for i in range(L.dim)]
    for i, j in product(range(L.dim), repeat=2):
        lhs = rho.apply(L.structure(i, j))
        rhs = L.bracket(images[i], {j: ONE})
        axpy(rhs, ONE, L.bracket({i: ONE}, images[j]))
        if lhs != rhs:
            return failed("derivation", (i, j), lhs, rhs)
    return passed("derivation")


def operator_to_vector(m: Matrix) -> Vec:
    """Flatten an n x n operator: entry (row k, column j) -> index j*n + k."""
    n = m.cols
    return {j * n + k: x for k, row in m.row_items() for j, x in row.items()}


def vector_to_operator(v: Vec, n: int) -> Matrix:
    row_map: dict = {}
    for idx, x in v.items():
        j, k = divmod(idx, n)
        row_map.setdefault(k, {})[j] = x
    return Matrix(n, n, row_map)


def derivations(L: LeibnizAlgebra) -> tuple[Subspace, Subspace]:
    """(Der(L), Inn(L)) as subspaces of the flattened operator space."""
    n = L.dim

    def var(j, k):  # coefficient of e_k in rho(e_j)
        return j * n + k

    rows = []
    for x, y in product(range(n), repeat=2):
        eq: dict[int, dict] = {}
        for j, c in L.structure(x, y).items():
            for m in range(n):
                eq.setdefault(m, {})
                axpy(eq[m], ONE, {var(j, m): c})
        for k in range(n):
            for m, c in L.structure(k, y).items():
                axpy(eq.setdefault(m, {}), -ONE, {var(x, k): c})
            for m, c in L.structure(x, k).items():
                axpy(eq.setdefault(m, {}), -ONE, {var(y, k): c})
        rows.extend(r for r in eq.values() if r)
    system = Matrix(len(rows), n * n, dict(enumerate(rows)))
    der = kernel_basis(system)
    inn = Subspace(n * n, [operator_to_vector(ad(L, {i: ONE}, verify=False).matrix)
                           for i in range(n)])
    assert inn.is_subspace_of(der), "inner derivations must be derivations"
    return der, inn


# ---------- subspaces and quotients ----------

def derived_subalgebra(L: LeibnizAlgebra) -> Subspace:
    return Subspace(L.dim, (v for _, _, v in L.nonzero_pairs()))


def is_perfect(L: LeibnizAlgebra) -> bool:
    return derived_subalgebra(L).dim == L.dim


def center(L: LeibnizAlgebra) -> Subspace:
    n = L.dim
    rows = []
    for x in range(n):
        left: dict[int, dict] = {}
        right: dict[int, dict] = {}
        for j in range(n):
            for m, c in L.structure(x, j).items():
                left.setdefault(m, {})[j] = c
            for m, c in L.structure(j, x).items():
                right.setdefault(m, {})[j] = c
        rows.extend(left.values())
        rows.extend(right.values())
    return kernel_basis(Matrix(len(rows), n, dict(enumerate(rows))))


def ideal_closure(L: LeibnizAlgebra, generators: Iterable[Vec]) -> Subspace:
    """Smallest two-sided ideal containing the generators."""
    e = Echelon(L.dim)
    todo = [g for g in generators if e.add(g)]
    basis = [{i: ONE} for i in range(L.dim)]
    while todo:
        v = todo.pop()
        for b in basis:
            for w in (L.bracket(v, b), L.bracket(b, v)):
                if w and e.add(w):
                    todo.append(w)
    return e.to_subspace()


def is_ideal(L: LeibnizAlgebra, sub_: Subspace) -> bool:
    for v in sub_.basis:
        for i in range(L.dim):
            if not sub_.contains(L.bracket(v, {i: ONE})) or not sub_.contains(L.bracket({i: ONE}, v)):
                return False
    return True


def quotient_algebra(L: LeibnizAlgebra, ideal: Subspace) -> tuple[LeibnizAlgebra, Matrix]:
    """L / ideal on the complement spanned by non-pivot unit vectors."""
    if not is_ideal(L, ideal):
        raise ValueError("subspace is not an ideal")
    comp = ideal.complement_indices()
    pos = {c: t for t, c in enumerate(comp)}

    def project(v: Vec) -> Vec:
        r = ideal.reduce(v)
        return {pos[k]: x for k, x in r.items()}

    table = {}
    for a, ca in enumerate(comp):
        for b, cb in enumerate(comp):
            w = project(L.structure(ca, cb))
            if w:
                table[(a, b)] = w
    Qalg = LeibnizAlgebra(len(comp), table, [L.basis[c] for c in comp])
    proj = Matrix.from_columns([project({i: ONE}) for i in range(L.dim)], len(comp))
    return Qalg, proj


def lie_quotient(L: LeibnizAlgebra) -> tuple[LeibnizAlgebra, Matrix]:
    gens = []
    for i in range(L.dim):
        for j in range(i, L.dim):
            s = dict(L.structure(i, j))
            axpy(s, ONE, L.structure(j, i))
            if s:
                gens.append(s)
    ideal = ideal_closure(L, gens)
    Qalg, proj = quotient_algebra(L, ideal)
    assert Qalg.is_lie(), "Lie quotient must be antisymmetric"
    return Qalg, proj


def subalgebra(L: LeibnizAlgebra, space: Subspace, names: Sequence[str] | None = None,
               check: bool = True) -> LeibnizAlgebra:
    """Induced bracket on a subspace closed under the bracket, in echelon coordinates."""
    table = {}
    for a, u in enumerate(space.basis):
        for b, v in enumerate(space.basis):
            w = L.bracket(u, v)
            if w:
                c = space.coordinates(w)
                table[(a, b)] = {k: x for k, x in enumerate(c) if x}
    return LeibnizAlgebra(space.dim, table, names, check=check)


# ---------- chain complex and homology ----------

@dataclass(frozen=True)
class ChainComplexSlice:
    n: int
    delta: Matrix


def _check_cap(L: LeibnizAlgebra, n: int, cap: int) -> None:
    if L.dim ** n > cap:
        raise DegreeTooLarge(f"dim^{n} = {L.dim ** n} exceeds the coordinate cap {cap}")


def boundary_columns(L: LeibnizAlgebra, n: int) -> Iterator[tuple[int, Vec]]:
    """Yield (column index, delta_n of that tensor basis element)."""
    d = L.dim
    if n <= 1:
        return
    for col, idx in enumerate(product(range(d), repeat=n)):
        out: Vec = {}
        for p in range(n - 1):
            for q in range(p + 1, n):
                br = L.structure(idx[p], idx[q])
                if not br:
                    continue
                sign = ONE if q % 2 == 0 else -ONE
                rest = idx[:q] + idx[q + 1:]
                base = 0
                for t, k in enumerate(rest):
                    if t != p:
                        base += k * d ** (n - 2 - t)
                w = d ** (n - 2 - p)
                for k, c in br.items():
                    axpy(out, sign, {base + k * w: c})
        yield col, out


def boundary(L: LeibnizAlgebra, n: int, cap: int = DEFAULT_CAP) -> ChainComplexSlice:
    if n < 1:
        raise ValueError("degree must be at least 1")
    _check_cap(L, n, cap)
    if n == 1:
        return ChainComplexSlice(1, Matrix.zero(1, L.dim))
    cols = [v for _, v in boundary_columns(L, n)]
    return ChainComplexSlice(n, Matrix.from_columns(cols, L.dim ** (n - 1)))


def boundary_image(L: LeibnizAlgebra, n: int, cap: int = DEFAULT_CAP,
                   stop_at: int | None = None) -> Echelon:
    """Echelon basis of im delta_n, streamed without materializing the matrix."""
    _check_cap(L, n, cap)
    e = Echelon(L.dim ** (n - 1))
    for _, v in boundary_columns(L, n):
        if v:
            e.add(v)
            if stop_at is not None and e.rank >= stop_at:
                break
    return e


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    dim: int
    cycles_dim: int
    boundaries_dim: int
    representatives: tuple


def homology(L: LeibnizAlgebra, n: int, cap: int = DEFAULT_CAP) -> HomologyResult:
    _check_cap(L, n + 1, cap)
    if n == 1:
        cycles = Subspace.full(L.dim)
    else:
        cycles = kernel_basis(boundary(L, n, cap).delta)
    im = boundary_image(L, n + 1, cap, stop_at=cycles.dim)
    for b in im.rows.values():
        if not cycles.contains(b):
            raise AssertionError("boundary of a boundary is nonzero")
    e = Echelon(cycles.ambient_dim)
    e.rows = {p: dict(r) for p, r in im.rows.items()}
    reps = [dict(c) for c in cycles.basis if e.add(c)]
    h = cycles.dim - im.rank
    assert len(reps) == h
    return HomologyResult(n, h, cycles.dim, im.rank, tuple(reps))


# ---------- universal central extension ----------

class CentralExtension:
    """uce(L) = (L (x) L) / im delta_3 with projection cls(x (x) y) -> [x, y]."""

    def __init__(self, base: LeibnizAlgebra, relations: Echelon, check: bool = True):
        d = base.dim
        self.base = base
        self.relations = relations
        comp = [i for i in range(d * d) if i not in relations.rows]
        self._comp = comp
        self._pos = {c: t for t, c in enumerate(comp)}
        names = [f"{base.basis[c // d]}(x){base.basis[c % d]}" for c in comp]
        m = len(comp)
        brackets = [base.structure(c // d, c % d) for c in comp]
        table = {}
        for a in range(m):
            if not brackets[a]:
                continue
            for b in range(m):
                if brackets[b]:
                    w = self.cls_tensor(brackets[a], brackets[b])
                    if w:
                        table[(a, b)] = w
        self.total = LeibnizAlgebra(m, table, names, check=check)
        self.projection = Matrix.from_columns(brackets, d)
        self.kernel = kernel_basis(self.projection)

    @property
    def dim(self) -> int:
        return self.total.dim

    def cls_vector(self, t: Vec) -> Vec:
        """Class of a vector of L (x) L (index i*dim + j)."""
        r = self.relations.reduce(t)
        return {self._pos[k]: x for k, x in r.items()}

    def cls_tensor(self, x: Vec, y: Vec) -> Vec:
        d = self.base.dim
        t: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(t, ONE, {i * d + j: a * b})
        return self.cls_vector(t)

    def representative(self, a: int) -> tuple[int, int]:
        return divmod(self._comp[a], self.base.dim)


def universal_central_extension(L: LeibnizAlgebra, cap: int = DEFAULT_CAP,
                                check: bool = True) -> CentralExtension:
    if not is_perfect(L):
        raise NotPerfect("only perfect Leibniz algebras have a universal central extension")
    rel = boundary_image(L, 3, cap)
    ext = CentralExtension(L, rel, check=check)
    # invariants: surjective homomorphism with central kernel of dim HL_2
    assert rank(ext.projection) == L.dim, "projection must be surjective"
    if check:
        hom = check_homomorphism(ext.total, L, ext.projection)
        assert hom.holds, f"projection is not a homomorphism: {hom.counterexample}"
        z = center(ext.total)
        assert ext.kernel.is_subspace_of(z), "kernel must be central"
    cycles_dim = L.dim ** 2 - rank(boundary(L, 2, cap).delta)
    assert ext.kernel.dim == cycles_dim - rel.rank, "kernel must equal HL_2"
    return ext
