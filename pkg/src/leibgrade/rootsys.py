"""Simply-laced finite root systems of types A, D and E.

Roots are stored twice: as integer coordinate vectors (epsilon model for A
and D, the E8 lattice doubled for E) and as coefficient vectors over the
simple roots.  The pairing is normalized so every root has square length 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
import random
from typing import Sequence


class UnsupportedType(ValueError):
    pass


class PairClass(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _simple_roots(kind: str, l: int) -> tuple[list[tuple[int, ...]], int]:
    """Simple-root coordinates and the pairing divisor."""
    if kind == "A":
        n = l + 1
        simple = []
        for i in range(l):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            simple.append(tuple(v))
        return simple, 1
    if kind == "D":
        simple = []
        for i in range(l - 1):
            v = [0] * l
            v[i], v[i + 1] = 1, -1
            simple.append(tuple(v))
        v = [0] * l
        v[l - 2], v[l - 1] = 1, 1
        simple.append(tuple(v))
        return simple, 1
    if kind == "E":
        # Bourbaki base of E8, coordinates doubled
        e8 = [(1, -1, -1, -1, -1, -1, -1, 1), (2, 2, 0, 0, 0, 0, 0, 0)]
        for i in range(6):
            v = [0] * 8
            v[i], v[i + 1] = -2, 2
            e8.append(tuple(v))
        return e8[:l], 4
    raise UnsupportedType(kind)


def _e8_coordinate_roots() -> list[tuple[int, ...]]:
    roots = []
    for i, j in combinations(range(8), 2):
        for si, sj in product((2, -2), repeat=2):
            v = [0] * 8
            v[i], v[j] = si, sj
            roots.append(tuple(v))
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    return roots


def coordinate_roots(kind: str, l: int) -> list[tuple[int, ...]]:
    """Direct enumeration of the root set in the coordinate model."""
    if kind == "A":
        n = l + 1
        out = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    v = [0] * n
                    v[i], v[j] = 1, -1
                    out.append(tuple(v))
        return out
    if kind == "D":
        out = []
        for i, j in combinations(range(l), 2):
            for si, sj in product((1, -1), repeat=2):
                v = [0] * l
                v[i], v[j] = si, sj
                out.append(tuple(v))
        return out
    if kind == "E":
        # E7, E6 sit inside E8 as the roots orthogonal to fixed vectors
        constraints = {8: [], 7: [(0, 0, 0, 0, 0, 0, 1, 1)],
                       6: [(0, 0, 0, 0, 0, 0, 1, 1), (0, 0, 0, 0, 0, 1, -1, 0)]}[l]
        return [r for r in _e8_coordinate_roots()
                if all(_dot(r, c) == 0 for c in constraints)]
    raise UnsupportedType(kind)


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    roots: tuple  # coordinate vectors
    coefficients: tuple  # simple-root coefficient vectors, parallel to roots
    simple: tuple  # indices of the simple roots alpha_1..alpha_l
    divisor: int
    index: dict = field(compare=False, repr=False)
    _pair: tuple = field(compare=False, repr=False)
    _sref: tuple = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    def __len__(self) -> int:
        return len(self.roots)

    def pairing(self, b: int, a: int) -> int:
        """(beta, alpha) for root indices; equals <beta, alpha^vee>."""
        return self._pair[b][a]

    def vector_pairing(self, u: Sequence[int], v: Sequence[int]):
        d = _dot(u, v)
        if d % self.divisor:
            from fractions import Fraction
            return Fraction(d, self.divisor)
        return d // self.divisor

    def negative(self, a: int) -> int:
        return self.index[tuple(-x for x in self.roots[a])]

    def add(self, a: int, b: int) -> int | None:
        """Index of roots[a] + roots[b] if it is a root."""
        return self.index.get(tuple(x + y for x, y in zip(self.roots[a], self.roots[b])))

    def simple_reflection(self, k: int, a: int) -> int:
        """Index of s_k(root a), k in 1..rank."""
        return self._sref[k - 1][a]

    def height(self, a: int) -> int:
        return sum(self.coefficients[a])

    def is_positive(self, a: int) -> bool:
        return self.height(a) > 0

    def root_name(self, a: int) -> str:
        c = self.coefficients[a]
        sign = "-" if self.height(a) < 0 else ""
        return sign + "a" + "".join(str(abs(x)) for x in c)

    def weight(self, a: int) -> tuple:
        """Values (root, alpha_i) for i = 1..rank: the eigenvalues on H_i."""
        return tuple(self._pair[a][s] for s in self.simple)

    def lookup(self, name: str) -> int:
        for a in range(len(self.roots)):
            if self.root_name(a) == name:
                return a
        raise KeyError(name)


def build_root_system(kind: str, rank: int) -> RootSystem:
    kind = kind.upper()
    ok = ((kind == "A" and rank >= 2) or (kind == "D" and rank >= 4)
          or (kind == "E" and rank in (6, 7, 8)))
    if not ok:
        raise UnsupportedType(f"unsupported root system {kind}{rank}")
    simple, divisor = _simple_roots(kind, rank)
    l = rank
    gram = [[_dot(a, b) // divisor for b in simple] for a in simple]

    def coords(c):
        return tuple(sum(ci * s[k] for ci, s in zip(c, simple)) for k in range(len(simple[0])))

    # positive roots by closure: beta + alpha_i is a root iff (beta, alpha_i) = -1
    units = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    positive = list(units)
    seen = set(positive)
    frontier = list(units)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(l):
                p = sum(c[j] * gram[j][i] for j in range(l))
                if p == -1:
                    d = tuple(x + (j == i) for j, x in enumerate(c))
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
        positive.extend(nxt)
        frontier = nxt
    positive.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
    coeffs = positive + [tuple(-x for x in c) for c in positive]
    roots = [coords(c) for c in coeffs]
    index = {r: i for i, r in enumerate(roots)}
    n = len(roots)
    pair = tuple(tuple(_dot(roots[i], roots[j]) // divisor for j in range(n)) for i in range(n))
    sref = []
    for k in range(l):
        s = k  # simple roots occupy indices 0..l-1
        row = []
        for a in range(n):
            c = pair[a][s]
            row.append(index[tuple(x - c * y for x, y in zip(roots[a], roots[s]))])
        sref.append(tuple(row))
    return RootSystem(kind, rank, tuple(roots), tuple(coeffs), tuple(range(l)), divisor,
                      index, pair, tuple(sref))


def parse_root_system(name: str) -> RootSystem:
    name = name.strip().upper()
    try:
        return build_root_system(name[0], int(name[1:]))
    except (ValueError, IndexError) as exc:
        raise UnsupportedType(f"cannot parse root system {name!r}") from exc


def pairing(rs: RootSystem, b: int, a: int) -> int:
    return rs.pairing(b, a)


def reflect(rs: RootSystem, a: int, lam: Sequence[int]) -> tuple:
    """r_alpha(lam) = lam - <lam, alpha^vee> alpha, lam in ambient coordinates."""
    alpha = rs.roots[a]
    c = rs.vector_pairing(lam, alpha)
    return tuple(x - c * y for x, y in zip(lam, alpha))


def apply_word(rs: RootSystem, word: Sequence[int], a: int) -> int:
    """Apply simple reflections in sequence order: s_{w[-1]} ... s_{w[0]} (a)."""
    for k in word:
        a = rs.simple_reflection(k, a)
    return a


def word_mapping_root(rs: RootSystem, a: int, b: int) -> tuple:
    """Shortest word (smallest indices first on ties) taking root a to root b."""
    if a == b:
        return ()
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for k in range(1, rs.rank + 1):
            y = rs.simple_reflection(k, x)
            if y not in prev:
                prev[y] = (x, k)
                if y == b:
                    word = []
                    while prev[y] is not None:
                        y, kk = prev[y]
                        word.append(kk)
                    return tuple(reversed(word))
                queue.append(y)
    raise AssertionError(f"root {b} not in the Weyl orbit of {a}")


def alternative_words(rs: RootSystem, a: int, b: int, count: int, seed: int = 0) -> list:
    """Extra words mapping a to b: a random detour followed by a shortest path."""
    rng = random.Random(seed * 1000003 + a * 1009 + b)
    base = word_mapping_root(rs, a, b)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * (count + 1):
        attempts += 1
        detour = tuple(rng.randint(1, rs.rank) for _ in range(rng.randint(1, 2 * rs.rank)))
        mid = apply_word(rs, detour, a)
        w = detour + word_mapping_root(rs, mid, b)
        if w != base and w not in out:
            out.append(w)
    return out


@dataclass(frozen=True)
class A2Pair:
    first: int
    second: int
    class_tag: PairClass


def _pair_orbit(rs: RootSystem, seed: tuple[int, int]) -> set:
    orbit = {seed}
    queue = deque([seed])
    while queue:
        b, g = queue.popleft()
        for k in range(1, rs.rank + 1):
            img = (rs.simple_reflection(k, b), rs.simple_reflection(k, g))
            if img not in orbit:
                orbit.add(img)
                queue.append(img)
    return orbit


def all_a2_pairs(rs: RootSystem) -> list:
    n = len(rs)
    return [(b, g) for b in range(n) for g in range(n) if rs.pairing(b, g) == -1]


def a2_classes(rs: RootSystem) -> list:
    """Partition of all A2-pairs into Weyl orbits, seeded orbit first."""
    remaining = set(all_a2_pairs(rs))
    a1, a2 = rs.simple[0], rs.simple[1]
    classes = []
    for seed in [(a1, a2), (a2, a1)] + sorted(remaining):
        if seed in remaining:
            orb = _pair_orbit(rs, seed)
            classes.append(orb)
            remaining -= orb
        if not remaining:
            break
    return classes


def enumerate_a2_pairs(rs: RootSystem) -> list:
    a1, a2 = rs.simple[0], rs.simple[1]
    pos = _pair_orbit(rs, (a1, a2))
    out = []
    for b, g in all_a2_pairs(rs):
        if rs.kind == "A":
            tag = PairClass.POSITIVE if (b, g) in pos else PairClass.NEGATIVE
        else:
            tag = PairClass.POSITIVE
        out.append(A2Pair(b, g, tag))
    return out


def pair_class(rs: RootSystem, b: int, g: int) -> PairClass:
    if rs.pairing(b, g) != -1:
        raise ValueError("not an A2-pair")
    if rs.kind != "A":
        return PairClass.POSITIVE
    # type A: (e_i - e_j, e_j - e_k) is positive, (e_i - e_j, e_k - e_i) negative
    i, j = epsilon_indices(rs, b)
    k, _ = epsilon_indices(rs, g)
    return PairClass.POSITIVE if k == j else PairClass.NEGATIVE


def epsilon_indices(rs: RootSystem, a: int) -> tuple[int, int]:
    """(i, j) with root a = e_i - e_j, 0-based; type A only."""
    if rs.kind != "A":
        raise UnsupportedType("epsilon indices exist only in type A")
    v = rs.roots[a]
    return v.index(1), v.index(-1)


def root_from_epsilon(rs: RootSystem, i: int, j: int) -> int:
    v = [0] * (rs.rank + 1)
    v[i], v[j] = 1, -1
    return rs.index[tuple(v)]


def simple_coefficients_sign_ok(rs: RootSystem, a: int) -> bool:
    c = rs.coefficients[a]
    return all(x >= 0 for x in c) or all(x <= 0 for x in c)
