"""Exact linear algebra over the rationals.

Vectors are sparse ``dict[int, Q]`` maps with no stored zeros.  Matrices are
immutable, stored row-wise, with a lazily built column view.  Subspaces are
kept in reduced row echelon form so that equality is a direct comparison.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Sequence

import gmpy2

Q = gmpy2.mpq
Vec = dict  # dict[int, Q]

DEBUG = bool(os.environ.get("LEIBGRADE_DEBUG"))

ZERO = Q(0)
ONE = Q(1)


class NotContained(ValueError):
    """A vector expected inside a subspace lies outside it."""


class NoSolution(ValueError):
    """The right-hand side is not in the column space."""


# ---------- scalars ----------

def parse_scalar(text) -> Q:
    if isinstance(text, str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            den_i = int(den)
            if den_i == 0:
                raise ValueError(f"zero denominator in {text!r}")
            return Q(int(num), den_i)
        return Q(int(text))
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, int):
        return Q(text)
    if isinstance(text, float):
        raise TypeError("floating-point input is not exact; pass 'num/den' strings")
    return Q(text)


def format_scalar(q) -> str:
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


# ---------- sparse vectors ----------

def vec(entries: Mapping[int, object] | Sequence[object]) -> Vec:
    """Sparse vector from a mapping or a dense sequence."""
    if isinstance(entries, Mapping):
        items = entries.items()
    else:
        items = enumerate(entries)
    out = {}
    for k, x in items:
        x = x if isinstance(x, type(ZERO)) else parse_scalar(x)
        if x:
            out[int(k)] = x
    return out


def unit(i: int) -> Vec:
    return {i: ONE}


def dense(v: Vec, n: int) -> list:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return out


def axpy(y: Vec, a, x: Vec) -> Vec:
    """In place: y += a*x.  Returns y."""
    if not a:
        return y
    for k, xv in x.items():
        cur = y.get(k)
        if cur is None:
            y[k] = a * xv
        else:
            cur = cur + a * xv
            if cur:
                y[k] = cur
            else:
                del y[k]
    return y


def scale(v: Vec, a) -> Vec:
    if not a:
        return {}
    return {k: a * x for k, x in v.items()}


def add(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), ONE, v)


def sub(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), -ONE, v)


def lincomb(terms: Iterable[tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for a, v in terms:
        axpy(out, a, v)
    return out


def dot(u: Vec, v: Vec):
    if len(u) > len(v):
        u, v = v, u
    s = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s += x * y
    return s


# ---------- matrices ----------

class Matrix:
    """Immutable sparse rational matrix."""

    __slots__ = ("rows", "cols", "_rows", "_cols")

    def __init__(self, rows: int, cols: int, row_map: Mapping[int, Vec] | None = None):
        self.rows = rows
        self.cols = cols
        clean = {}
        for i, r in (row_map or {}).items():
            if not 0 <= i < rows:
                raise IndexError(f"row {i} out of range {rows}")
            r = {k: x for k, x in r.items() if x}
            for k in r:
                if not 0 <= k < cols:
                    raise IndexError(f"column {k} out of range {cols}")
            if r:
                clean[i] = r
        self._rows = clean
        self._cols = None

    # constructors
    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, {i: vec(r) for i, r in enumerate(data)})

    @classmethod
    def from_columns(cls, columns: Sequence[Vec], rows: int) -> "Matrix":
        row_map: dict[int, Vec] = {}
        for j, c in enumerate(columns):
            for i, x in c.items():
                if x:
                    row_map.setdefault(i, {})[j] = x
        return cls(rows, len(columns), row_map)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    # access
    def entry(self, i: int, j: int):
        return self._rows.get(i, {}).get(j, ZERO)

    def row(self, i: int) -> Vec:
        return dict(self._rows.get(i, {}))

    def row_items(self):
        return self._rows.items()

    def _column_map(self) -> dict:
        if self._cols is None:
            cm: dict[int, Vec] = {}
            for i, r in self._rows.items():
                for j, x in r.items():
                    cm.setdefault(j, {})[i] = x
            self._cols = cm
        return self._cols

    def column(self, j: int) -> Vec:
        return dict(self._column_map().get(j, {}))

    def columns(self) -> list:
        cm = self._column_map()
        return [dict(cm.get(j, {})) for j in range(self.cols)]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    # algebra
    def apply(self, v: Vec) -> Vec:
        cm = self._column_map()
        out: Vec = {}
        for k, x in v.items():
            c = cm.get(k)
            if c:
                axpy(out, x, c)
        return out

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = {}
            for i, r in self._rows.items():
                acc: Vec = {}
                for k, x in r.items():
                    orow = other._rows.get(k)
                    if orow:
                        axpy(acc, x, orow)
                if acc:
                    out[i] = acc
            return Matrix(self.rows, other.cols, out)
        if isinstance(other, dict):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            axpy(out.setdefault(i, {}), ONE, r)
        return Matrix(self.rows, self.cols, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scaled(-ONE)

    def __neg__(self) -> "Matrix":
        return self.scaled(-ONE)

    def scaled(self, a) -> "Matrix":
        a = Q(a)
        return Matrix(self.rows, self.cols, {i: scale(r, a) for i, r in self._rows.items()})

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self._column_map())

    T = property(transpose)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(
            (i, j, x) for i, r in self._rows.items() for j, x in r.items()))))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_dense(self) -> list:
        return [dense(self._rows.get(i, {}), self.cols) for i in range(self.rows)]

    def to_json(self) -> dict:
        entries = [[i, j, format_scalar(x)]
                   for i in sorted(self._rows) for j, x in sorted(self._rows[i].items())]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, data: Mapping) -> "Matrix":
        rows, cols = int(data["rows"]), int(data["cols"])
        row_map: dict[int, Vec] = {}
        for n, item in enumerate(data["entries"]):
            if len(item) != 3:
                raise ValueError(f"entry {n}: expected [i, j, 'num/den'], got {item!r}")
            i, j, x = item
            row_map.setdefault(int(i), {})[int(j)] = parse_scalar(x)
        return cls(rows, cols, row_map)


# ---------- echelon machinery ----------

class Echelon:
    """Reduced row echelon basis that grows one vector at a time.

    Each stored row has its pivot (smallest index) equal to 1 and zeros at
    every other pivot, so reducing a vector is a single pass over its pivots.
    """

    __slots__ = ("ambient_dim", "rows")

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: dict[int, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        rows = self.rows
        r = dict(v)
        for p in [k for k in v if k in rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, rows[p])
        return r

    def add(self, v: Vec) -> bool:
        """Add v to the span; True iff the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: Vec) -> None:
        p = min(r)
        inv = ONE / r[p]
        if inv != ONE:
            r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c is not None:
                axpy(row, -c, r)
        self.rows[p] = r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list:
        return sorted(self.rows)

    def to_subspace(self) -> "Subspace":
        return Subspace._from_rows(self.ambient_dim, self.rows)


class Subspace:
    """A subspace of Q^n given by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_rows")

    def __init__(self, ambient_dim: int, vectors: Iterable[Vec] = ()):
        e = Echelon(ambient_dim)
        for v in vectors:
            e.add(v)
        self._set(ambient_dim, e.rows)

    @classmethod
    def _from_rows(cls, ambient_dim: int, rows: Mapping[int, Vec]) -> "Subspace":
        s = cls.__new__(cls)
        s._set(ambient_dim, rows)
        return s

    def _set(self, ambient_dim, rows):
        self.ambient_dim = ambient_dim
        self.pivots = tuple(sorted(rows))
        self._rows = {p: dict(rows[p]) for p in self.pivots}
        self.basis = tuple(self._rows[p] for p in self.pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_rows(n, {i: {i: ONE} for i in range(n)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        rows = self._rows
        r = dict(v)
        for p in [k for k in v if k in rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, rows[p])
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def __contains__(self, v: Vec) -> bool:
        return self.contains(v)

    def coordinates(self, v: Vec) -> list:
        """Coordinates of v in the echelon basis; raises NotContained."""
        if not self.contains(v):
            raise NotContained("vector not in subspace")
        return [v.get(p, ZERO) for p in self.pivots]

    def element(self, coords: Sequence[object]) -> Vec:
        return lincomb((c, b) for c, b in zip(coords, self.basis))

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        e = Echelon(self.ambient_dim)
        e.rows = {p: dict(r) for p, r in self._rows.items()}
        for b in other.basis:
            e.add(b)
        return e.to_subspace()

    def complement_indices(self) -> list:
        """Coordinate indices whose unit vectors span a complement."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def echelon(self) -> Echelon:
        e = Echelon(self.ambient_dim)
        e.rows = {p: dict(r) for p, r in self._rows.items()}
        return e

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


# ---------- operations ----------

def row_echelon(m: Matrix) -> Echelon:
    e = Echelon(m.cols)
    for _, r in sorted(m.row_items()):
        e.add(r)
    return e


def rank(m: Matrix) -> int:
    # eliminate along the shorter side
    if m.rows <= m.cols:
        return row_echelon(m).rank
    return row_echelon(m.transpose()).rank


def kernel_basis(m: Matrix) -> Subspace:
    e = row_echelon(m)
    pivots = set(e.rows)
    vectors = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = {f: ONE}
        for p, row in e.rows.items():
            c = row.get(f)
            if c:
                v[p] = -c
        vectors.append(v)
    ker = Subspace(m.cols, vectors)
    if DEBUG:
        assert e.rank + ker.dim == m.cols, "rank-nullity violated"
        assert all(not m.apply(b) for b in ker.basis)
    return ker


def image_basis(m: Matrix) -> Subspace:
    return Subspace(m.rows, m.columns())


def quotient_dim(big: Subspace, small: Subspace) -> tuple[int, list]:
    """dim(big/small) with lifted representatives of a quotient basis."""
    for b in small.basis:
        if not big.contains(b):
            raise NotContained("small subspace is not contained in big")
    e = small.echelon()
    reps = []
    for b in big.basis:
        if e.add(b):
            reps.append(dict(b))
    assert len(reps) == big.dim - small.dim
    return big.dim - small.dim, reps


def solve(m: Matrix, b: Vec) -> Vec:
    """Some x with m·x = b; raises NoSolution."""
    n = m.cols
    aug = {i: dict(r) for i, r in m.row_items()}
    for i, x in b.items():
        if not 0 <= i < m.rows:
            raise IndexError("right-hand side out of range")
        aug.setdefault(i, {})[n] = x
    e = Echelon(n + 1)
    for i in sorted(aug):
        e.add(aug[i])
    if n in e.rows:
        raise NoSolution("right-hand side not in the column space")
    x = {}
    for p, row in e.rows.items():
        c = row.get(n)
        if c:
            x[p] = c
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.cols
    e = Echelon(2 * n)
    for i in range(n):
        r = m.row(i)
        r[n + i] = ONE
        e.add(r)
    if any(p not in e.rows for p in range(n)):
        raise NoSolution("matrix is singular")
    return Matrix(n, n, {p: {k - n: x for k, x in e.rows[p].items() if k >= n}
                         for p in range(n)})


def span_matrix(vectors: Sequence[Vec], ambient_dim: int) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return Matrix.from_columns(list(vectors), ambient_dim)
