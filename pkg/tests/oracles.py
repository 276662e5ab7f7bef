"""Independent reference computations used by the test suite.

Everything here works from raw structure constants with plain Python
integers modulo a large prime, sharing no code with the library's
elimination or chain-complex routines.
"""

from __future__ import annotations

from itertools import product

P = 2_147_483_647


def _modp(x) -> int:
    num, den = int(x.numerator), int(x.denominator)
    return num * pow(den, -1, P) % P


def structure_modp(L):
    n = L.dim
    return [[{k: _modp(c) for k, c in L.structure(i, j).items()} for j in range(n)] for i in range(n)]


def weights_from(L, hs):
    """Per-basis weights under the operators [-, h]; None if the basis is not homogeneous."""
    out = []
    for b in range(L.dim):
        w = []
        for h in hs:
            v = L.bracket({b: 1}, h)
            if not v:
                w.append(0)
                continue
            if set(v) != {b}:
                return None
            w.append(v[b])
        out.append(tuple(w))
    return out


class _Reducer:
    def __init__(self):
        self.rows: dict[int, dict] = {}

    def add(self, v: dict) -> bool:
        v = {k: x for k, x in v.items() if x}
        while v:
            p = min(v)
            r = self.rows.get(p)
            if r is None:
                inv = pow(v[p], -1, P)
                self.rows[p] = {k: x * inv % P for k, x in v.items()}
                return True
            c = v[p]
            for k, x in r.items():
                y = (v.get(k, 0) - c * x) % P
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def hl2_modp(L, weights=None) -> int:
    """dim ker d2 - rank d3 with
    d2(x (x) y) = [x, y] and
    d3(x (x) y (x) z) = [x,y] (x) z - [x,z] (x) y - x (x) [y,z],
    split into weight blocks when a homogeneous weight labelling is given."""
    n = L.dim
    T = structure_modp(L)
    wt = weights or [()] * n

    def add_w(*ws):
        return tuple(map(sum, zip(*ws))) if ws[0] else ()

    # d2 rank per block
    blocks2: dict = {}
    for x, y in product(range(n), repeat=2):
        blocks2.setdefault(add_w(wt[x], wt[y]), []).append((x, y))
    ker2 = {}
    for w, pairs in blocks2.items():
        red = _Reducer()
        # rank of d2 restricted to this block = rank of the span of the brackets
        for x, y in pairs:
            red.add(dict(T[x][y]))
        ker2[w] = len(pairs) - red.rank

    total = 0
    cols: dict = {}
    for x, y, z in product(range(n), repeat=3):
        cols.setdefault(add_w(wt[x], wt[y], wt[z]), []).append((x, y, z))
    for w, k in ker2.items():
        if k == 0:
            continue
        red = _Reducer()
        for x, y, z in cols.get(w, ()):
            v: dict = {}
            for a, c in T[x][y].items():
                v[a * n + z] = (v.get(a * n + z, 0) + c) % P
            for a, c in T[x][z].items():
                v[a * n + y] = (v.get(a * n + y, 0) - c) % P
            for a, c in T[y][z].items():
                v[x * n + a] = (v.get(x * n + a, 0) - c) % P
            red.add(v)
            if red.rank == k:
                break
        total += k - red.rank
    return total


def leibniz_violation(L):
    """First basis triple breaking [x,[y,z]] = [[x,y],z] - [[x,z],y] mod P."""
    n = L.dim
    T = structure_modp(L)

    def br(v, j):
        out: dict = {}
        for i, c in v.items():
            for k, d in T[i][j].items():
                out[k] = (out.get(k, 0) + c * d) % P
        return {k: x for k, x in out.items() if x}

    for x, y, z in product(range(n), repeat=3):
        lhs: dict = {}
        for k, c in T[y][z].items():
            for m, d in T[x][k].items():
                lhs[m] = (lhs.get(m, 0) + c * d) % P
        rhs = br(T[x][y], z)
        for m, d in br(T[x][z], y).items():
            rhs[m] = (rhs.get(m, 0) - d) % P
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return (x, y, z)
    return None
