"""The Bruhat-Tits tree of GL_2(Q_p) and its Hecke operators.

Vertices are homothety classes of lattices, stored in the canonical form
``g_v = (p^n mu; 0 1)``. An oriented edge is a coset ``g IZ`` and is stored
as the pair ``([g L_0], [g alpha L_0])``. Functions on edges are finite
F_p-linear combinations of the elementary functions ``[[g, 1]]`` of the
compact induction of an ``IZ``-character; functions on vertices take values
in ``V_r = Sym^r F_p^2``.

Operators act by right translation of matrix representatives followed by
re-canonicalization; the flip/source/sink description is kept out of the
implementation so tests can use it as an independent check.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .padic_core import INF, check_prime, reduce_mod, vp

# matrices


@dataclass(frozen=True)
class GL2Mat:
    """``(a b; c d)`` with rational entries and nonzero determinant."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.det == 0:
            raise ValueError("matrix is not invertible")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "GL2Mat") -> "GL2Mat":
        return GL2Mat(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "GL2Mat":
        D = self.det
        return GL2Mat(self.d / D, -self.b / D, -self.c / D, self.a / D)

    def scale(self, s) -> "GL2Mat":
        return GL2Mat(self.a * s, self.b * s, self.c * s, self.d * s)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


def mat(a, b, c, d) -> GL2Mat:
    return GL2Mat(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


def identity() -> GL2Mat:
    return mat(1, 0, 0, 1)


def alpha(p: int) -> GL2Mat:
    return mat(1, 0, 0, p)


def beta(p: int) -> GL2Mat:
    return mat(0, 1, p, 0)


def w_matrix() -> GL2Mat:
    return mat(0, 1, 1, 0)


def _min_val(m: GL2Mat, p: int) -> int:
    return min(vp(x, p) for x in m.entries() if x != 0)


# vertices


@dataclass(frozen=True, eq=False)
class VertexClass:
    """Class of the lattice spanned by the columns of ``(p^n mu; 0 1)``.

    ``mu`` is the canonical representative ``sum_{e < n} d_e p^e`` with
    digits ``d_e`` in ``[0, p)``.
    """

    p: int
    n: int
    mu: Fraction

    def __post_init__(self):
        mu = Fraction(self.mu)
        object.__setattr__(self, "mu", mu)
        key = (self.p, self.n, mu.numerator, mu.denominator)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexClass):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "VertexClass") -> bool:
        return (self.n, self.mu) < (other.n, other.mu)

    def matrix(self) -> GL2Mat:
        return mat(Fraction(self.p) ** self.n, self.mu, 0, 1)

    def digits(self) -> tuple:
        """``((e, d_e), ...)`` for the nonzero digits of ``mu``."""
        if self.mu == 0:
            return ()
        e0 = vp(self.mu, self.p)
        t = reduce_mod(self.mu / Fraction(self.p) ** e0, self.p, self.n - e0)
        out = []
        e = e0
        while t:
            t, d = divmod(t, self.p)
            if d:
                out.append((e, d))
            e += 1
        return tuple(out)

    def parent(self) -> "VertexClass":
        return make_vertex(self.p, self.n - 1, self.mu)

    def child(self, digit: int) -> "VertexClass":
        return VertexClass(self.p, self.n + 1, self.mu + digit * Fraction(self.p) ** self.n)

    def neighbours(self) -> list:
        return [self.parent()] + [self.child(d) for d in range(self.p)]

    def to_json(self) -> dict:
        return {"n": self.n, "mu_digits": [list(x) for x in self.digits()]}


def _reduce_mu(mu: Fraction, n: int, p: int) -> Fraction:
    if mu == 0:
        return Fraction(0)
    e0 = vp(mu, p)
    if e0 >= n:
        return Fraction(0)
    t = reduce_mod(mu / Fraction(p) ** e0, p, n - e0)
    return Fraction(t) * Fraction(p) ** e0


def make_vertex(p: int, n: int, mu) -> VertexClass:
    return VertexClass(p, n, _reduce_mu(Fraction(mu), n, p))


def root(p: int) -> VertexClass:
    return VertexClass(p, 0, Fraction(0))


def canonicalize_vertex(g: GL2Mat, p: int) -> VertexClass:
    """Canonical vertex ``[g L_0]``."""
    a, b, c, d = g.entries()
    if d == 0 or (c != 0 and vp(c, p) < vp(d, p)):
        a, b, c, d = b, a, d, c
    a1 = a - b * (c / d)
    A = a1 / d
    B = b / d
    return make_vertex(p, vp(A, p), B)


def vertex_decompose(g: GL2Mat, p: int) -> tuple:
    """``(v, k)`` with ``g = g_v * k * p^s`` and ``k`` in ``GL_2(Z_p)``."""
    v = canonicalize_vertex(g, p)
    m = v.matrix().inverse() @ g
    s = _min_val(m, p)
    k = m.scale(Fraction(p) ** -s)
    if vp(k.det, p) != 0:
        raise AssertionError("vertex canonicalization failed")
    return v, k


def enumerate_ball(center: VertexClass, radius: int) -> list:
    """All vertices within tree distance ``radius`` of ``center``, in BFS order."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    seen = {center}
    order = [center]
    frontier = deque([(center, 0)])
    while frontier:
        v, dist = frontier.popleft()
        if dist == radius:
            continue
        for u in v.neighbours():
            if u not in seen:
                seen.add(u)
                order.append(u)
                frontier.append((u, dist + 1))
    return order


def are_adjacent(u: VertexClass, v: VertexClass) -> bool:
    return v == u.parent() or u == v.parent()


# edges and characters


@dataclass(frozen=True, eq=False)
class OrientedEdge:
    source: VertexClass
    target: VertexClass

    def __post_init__(self):
        if not are_adjacent(self.source, self.target):
            raise ValueError("source and target are not adjacent")
        object.__setattr__(self, "_hash", hash((self.source, self.target)))

    @classmethod
    def _trusted(cls, source: VertexClass, target: VertexClass) -> "OrientedEdge":
        e = object.__new__(cls)
        object.__setattr__(e, "source", source)
        object.__setattr__(e, "target", target)
        object.__setattr__(e, "_hash", hash((source, target)))
        return e

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedEdge):
            return NotImplemented
        return self._hash == other._hash and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "OrientedEdge") -> bool:
        return (self.source, self.target) < (other.source, other.target)

    def flip(self) -> "OrientedEdge":
        return OrientedEdge._trusted(self.target, self.source)

    def matrix(self) -> GL2Mat:
        """Canonical representative ``gamma`` of the coset."""
        s, t = self.source, self.target
        gv = s.matrix()
        if t.n == s.n - 1:
            return gv
        lam = (t.mu - s.mu) / Fraction(s.p) ** s.n
        return gv @ mat(lam, 1, 1, 0)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json()}


def standard_edge(p: int) -> OrientedEdge:
    return OrientedEdge(root(p), canonicalize_vertex(alpha(p), p))


@dataclass(frozen=True)
class IZCharacter:
    """``(a b; pc d) -> a^l d^m`` mod p, trivial on the scalar ``p``."""

    p: int
    l: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "l", self.l % (self.p - 1))
        object.__setattr__(self, "m", self.m % (self.p - 1))
        p = self.p
        pa = [pow(a, self.l, p) for a in range(p)]
        pd = [pow(d, self.m, p) for d in range(p)]
        object.__setattr__(self, "_pows", (pa, pd))

    @classmethod
    def d_power(cls, r: int, p: int) -> "IZCharacter":
        return cls(p, 0, r)

    def swapped(self) -> "IZCharacter":
        """The character ``h -> chi(beta h beta^-1)``."""
        return IZCharacter(self.p, self.m, self.l)

    @property
    def is_trivial(self) -> bool:
        return self.l == 0 and self.m == 0

    def value(self, a: int, d: int) -> int:
        """``a^l d^m`` for residues ``a, d``."""
        pa, pd = self._pows
        return pa[a] * pd[d] % self.p

    def __call__(self, h: GL2Mat) -> int:
        p = self.p
        s = _min_val(h, p)
        hp = h.scale(Fraction(p) ** -s)
        if hp.c != 0 and vp(hp.c, p) < 1:
            raise ArithmeticError("matrix is not in IZ: lower-left entry is a unit")
        if vp(hp.a, p) != 0 or vp(hp.d, p) != 0:
            raise ArithmeticError("matrix is not in IZ: diagonal is not a unit")
        return self.value(reduce_mod(hp.a, p, 1), reduce_mod(hp.d, p, 1))


def edge_coset_reference(g: GL2Mat, p: int) -> tuple:
    """``(edge, gamma)`` by direct rational matrix algebra (slow reference path)."""
    v = canonicalize_vertex(g, p)
    gv = v.matrix()
    m = gv.inverse() @ g
    m = m.scale(Fraction(p) ** -_min_val(m, p))
    if m.c == 0 or vp(m.c, p) >= 1:
        edge = OrientedEdge(v, v.parent())
        return edge, gv
    lam = reduce_mod(m.a / m.c, p, 1)
    edge = OrientedEdge(v, v.child(lam))
    return edge, gv @ mat(lam, 1, 1, 0)


def canonicalize_edge_reference(g: GL2Mat, chi: IZCharacter) -> tuple:
    edge, gamma = edge_coset_reference(g, chi.p)
    return edge, chi(gamma.inverse() @ g)


def _v(x: int, p: int) -> float:
    if x == 0:
        return INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _res(x: int, e: int, p: int) -> int:
    """Residue mod p of ``x / p^e``; requires ``v_p(x) >= e``."""
    if e <= 0:
        return x * p ** (-e) % p
    q = p**e
    if x % q:
        raise ArithmeticError("entry is not integral: canonicalizer bug")
    return (x // q) % p


def _edge_data(a: int, b: int, c: int, d: int, p: int) -> tuple:
    """Canonical edge of the coset ``g IZ`` for an integer matrix, with the
    diagonal residues of ``h = gamma^-1 g`` after removing its p-power scalar."""
    vc, vd = _v(c, p), _v(d, p)
    A, B, D = (b, a, c) if vc < vd else (a, b, d)
    vD = min(vc, vd)
    n = int(_v(a * d - b * c, p) - 2 * vD)
    # mu = B / D mod p^n, kept as m * p^e0
    vB = _v(B, p)
    if B == 0 or vB - vD >= n:
        m, e0 = 0, 0
    else:
        e0 = int(vB - vD)
        mod = p ** (n - e0)
        m = (B // p ** int(vB)) * pow(D // p ** int(vD), -1, mod) % mod
    mu = Fraction(m) * Fraction(p) ** e0 if m else Fraction(0)
    src = VertexClass(p, n, mu)
    q = max(0, -e0)
    shift = q + n + int(vD)  # M = g_v^-1 g; first-row entries are X / p^(q+n), second row (c, d)
    s = int(vD)
    X = a * p**q - m * p ** (e0 + q) * c
    Y = b * p**q - m * p ** (e0 + q) * d
    if vc > s:
        tgt = make_vertex(p, n - 1, mu)
        ha, hd = _res(X, shift, p), _res(d, s, p)
    else:
        c_res = _res(c, s, p)
        lam = _res(X, shift, p) * pow(c_res, -1, p) % p
        tgt = VertexClass(p, n + 1, mu + lam * Fraction(p) ** n)
        ha = c_res
        hd = (_res(Y, shift, p) - lam * (_res(d, s, p) if vd == s else 0)) % p
    if ha == 0 or hd == 0:
        raise ArithmeticError("h is not in IZ: canonicalizer bug")
    return OrientedEdge._trusted(src, tgt), ha, hd


def _scaled_ints(g: GL2Mat, p: int) -> tuple:
    """Integer entries of ``D g`` and the prime-to-p part of ``D``."""
    den = math.lcm(*(x.denominator for x in g.entries()))
    u = den
    while u % p == 0:
        u //= p
    return tuple(int(x * den) for x in g.entries()), u


def edge_coset(g: GL2Mat, p: int) -> tuple:
    """``(edge, gamma)`` with ``gamma`` the canonical representative of ``g IZ``."""
    (a, b, c, d), _ = _scaled_ints(g, p)
    edge, _, _ = _edge_data(a, b, c, d, p)
    return edge, edge.matrix()


def canonicalize_edge(g: GL2Mat, chi: IZCharacter) -> tuple:
    """``(edge, chi(h))`` where ``g = gamma h`` with ``gamma`` canonical."""
    p = chi.p
    (a, b, c, d), u = _scaled_ints(g, p)
    edge, ha, hd = _edge_data(a, b, c, d, p)
    # g was scaled by a unit u times a p-power; chi(u) = u^(l+m)
    corr = pow(pow(u % p, chi.l + chi.m, p), -1, p)
    return edge, chi.value(ha, hd) * corr % p


# edge functions


@dataclass(frozen=True, eq=False)
class EdgeFunction:
    """``sum_e c_e [[gamma_e, 1]]`` in the compact induction of ``character``."""

    p: int
    character: IZCharacter
    support: Mapping

    def __post_init__(self):
        clean = {e: c % self.p for e, c in self.support.items() if c % self.p}
        object.__setattr__(self, "support", clean)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeFunction):
            return NotImplemented
        return self.p == other.p and self.character == other.character and self.support == other.support

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "EdgeFunction") -> "EdgeFunction":
        if other.character != self.character:
            raise ValueError("characters differ")
        out = dict(self.support)
        for e, c in other.support.items():
            out[e] = out.get(e, 0) + c
        return EdgeFunction(self.p, self.character, out)

    def __neg__(self) -> "EdgeFunction":
        return self.scale(-1)

    def __sub__(self, other: "EdgeFunction") -> "EdgeFunction":
        return self + (-other)

    def scale(self, s: int) -> "EdgeFunction":
        return EdgeFunction(self.p, self.character, {e: c * s for e, c in self.support.items()})

    @property
    def is_zero(self) -> bool:
        return not self.support

    def to_json(self) -> list:
        return [{"edge": e.to_json(), "value": c} for e, c in sorted(self.support.items())]


def delta(edge: OrientedEdge, chi: IZCharacter, value: int = 1) -> EdgeFunction:
    return EdgeFunction(chi.p, chi, {edge: value})


def elementary(g: GL2Mat, chi: IZCharacter, value: int = 1) -> EdgeFunction:
    """``value * [[g, 1]]`` written on its canonical edge."""
    edge, s = canonicalize_edge(g, chi)
    return EdgeFunction(chi.p, chi, {edge: value * s})


_TRANSLATE_CACHE: dict = {}


def _int_matrix(edge: OrientedEdge) -> tuple:
    """Entries of ``p^k gamma`` as integers for the canonical representative ``gamma``."""
    s, t = edge.source, edge.target
    p = s.p
    k = max(0, -s.n, vp(s.mu, p) * -1 if s.mu else 0)
    S = p**k
    P = Fraction(p) ** s.n
    if t.n == s.n - 1:
        ent = (P, s.mu, 0, 1)
    else:
        lam = (t.mu - s.mu) / P
        ent = (P * lam + s.mu, P, 1, 0)
    return tuple(int(Fraction(x) * S) for x in ent)


def _translate_edge(edge: OrientedEdge, key: str, mats: tuple) -> tuple:
    """Images ``(edge', a-residue, d-residue)`` of ``gamma M`` for each ``M``."""
    ck = (edge, key)
    hit = _TRANSLATE_CACHE.get(ck)
    if hit is None:
        a, b, c, d = _int_matrix(edge)
        p = edge.source.p
        hit = tuple(
            _edge_data(a * x + b * z, a * y + b * w, c * x + d * z, c * y + d * w, p)
            for x, y, z, w in mats
        )
        _TRANSLATE_CACHE[ck] = hit
    return hit


def _apply(f: EdgeFunction, key: str, mats: tuple, chi_out: IZCharacter) -> EdgeFunction:
    out: dict = {}
    for e, c in f.support.items():
        for e2, ha, hd in _translate_edge(e, key, mats):
            out[e2] = out.get(e2, 0) + c * chi_out.value(ha, hd)
    return EdgeFunction(f.p, chi_out, out)


def _source_mats(p: int) -> tuple:
    return tuple((p, lam, 0, 1) for lam in range(p))


def _sink_mats(p: int) -> tuple:
    return tuple((1, 0, p * lam, p) for lam in range(p))


def hecke_T10(f: EdgeFunction) -> EdgeFunction:
    """``[[g, v]] -> [[g beta, v]]``; the character ``a^l d^m`` becomes ``a^m d^l``."""
    return _apply(f, "T10", ((0, 1, f.p, 0),), f.character.swapped())


def hecke_Tm10(f: EdgeFunction) -> EdgeFunction:
    """``[[g, v]] -> sum_lambda [[g (p [lambda]; 0 1), v]]``."""
    return _apply(f, "T-10", _source_mats(f.p), f.character)


def hecke_T12(f: EdgeFunction) -> EdgeFunction:
    """``[[g, v]] -> sum_lambda [[g (1 0; p[lambda] p), v]]``."""
    return _apply(f, "T12", _sink_mats(f.p), f.character)


def translate(g0: GL2Mat, f: EdgeFunction) -> EdgeFunction:
    """Left action ``g0 . [[g, v]] = [[g0 g, v]]``."""
    out: dict = {}
    for e, c in f.support.items():
        e2, s = canonicalize_edge(g0 @ e.matrix(), f.character)
        out[e2] = out.get(e2, 0) + c * s
    return EdgeFunction(f.p, f.character, out)


# vertex functions


@dataclass(frozen=True)
class SymVector:
    """``sum_j c_j X^j Y^{r-j}`` over F_p."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @property
    def r(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, o: "SymVector") -> "SymVector":
        return SymVector(self.p, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    def scale(self, s: int) -> "SymVector":
        return SymVector(self.p, tuple(x * s for x in self.coeffs))

    def substitute(self, a: int, b: int, c: int, d: int) -> "SymVector":
        """``v(aX + cY, bX + dY)``."""
        p, r = self.p, self.r
        out = [0] * (r + 1)
        for j, cj in enumerate(self.coeffs):
            if not cj:
                continue
            poly = [cj]  # coefficients indexed by the power of X
            for _ in range(j):
                poly = _poly_mul(poly, [c, a], p)
            for _ in range(r - j):
                poly = _poly_mul(poly, [d, b], p)
            for i, x in enumerate(poly):
                out[i] = (out[i] + x) % p
        return SymVector(p, tuple(out))

    def act(self, k: GL2Mat) -> "SymVector":
        """Action of ``k`` in ``GL_2(Z_p)`` through its reduction mod p."""
        p = self.p
        a, b, c, d = (reduce_mod(x, p, 1) for x in k.entries())
        return self.substitute(a, b, c, d)


def _poly_mul(f: list, g: list, p: int) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def monomial(r: int, j: int, p: int) -> SymVector:
    """``X^j Y^{r-j}``."""
    c = [0] * (r + 1)
    c[j] = 1
    return SymVector(p, tuple(c))


@dataclass(frozen=True, eq=False)
class VertexFunction:
    """``sum_v [g_v, w_v]`` in ``ind_{KZ}^G V_r``."""

    p: int
    r: int
    support: Mapping

    def __post_init__(self):
        clean = {v: w for v, w in self.support.items() if not w.is_zero}
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexFunction):
            return NotImplemented
        return (self.p, self.r, self.support) == (other.p, other.r, other.support)

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_zero(self) -> bool:
        return not self.support


def _accumulate(out: dict, v: VertexClass, w: SymVector) -> None:
    out[v] = out[v] + w if v in out else w


def vertex_elementary(g: GL2Mat, w: SymVector) -> VertexFunction:
    """``[g, w]`` written on its canonical vertex: ``[g_v k, w] = [g_v, k w]``."""
    v, k = vertex_decompose(g, w.p)
    return VertexFunction(w.p, w.r, {v: w.act(k)})


def vertex_translate(g0: GL2Mat, f: VertexFunction) -> VertexFunction:
    out: dict = {}
    for v, w in f.support.items():
        v2, k = vertex_decompose(g0 @ v.matrix(), f.p)
        _accumulate(out, v2, w.act(k))
    return VertexFunction(f.p, f.r, out)


def hecke_spherical_T(f: VertexFunction) -> VertexFunction:
    """``T[g, v] = sum_lambda [g (p [lambda]; 0 1), v(X, -[lambda] X)] + [g alpha, v(0, Y)]`` mod p."""
    p, r = f.p, f.r
    if r > p - 1:
        raise ValueError("need r <= p - 1")
    out: dict = {}
    for v, w in f.support.items():
        g = v.matrix()
        for lam in range(p):
            v2, k = vertex_decompose(g @ mat(p, lam, 0, 1), p)
            _accumulate(out, v2, w.substitute(1, -lam, 0, 0).act(k))
        v2, k = vertex_decompose(g @ alpha(p), p)
        _accumulate(out, v2, w.substitute(0, 0, 0, 1).act(k))
    return VertexFunction(p, r, out)


def edges_around(v: VertexClass) -> Iterable[OrientedEdge]:
    return (OrientedEdge(v, u) for u in v.neighbours())


def check_p(p: int) -> int:
    return check_prime(p)


# random functions and relation checks


_EDGE_POOLS: dict = {}


def edge_pool(p: int, radius: int) -> list:
    """Oriented edges whose source lies within ``radius`` of the root."""
    key = (p, radius)
    if key not in _EDGE_POOLS:
        _EDGE_POOLS[key] = [e for v in enumerate_ball(root(p), radius) for e in edges_around(v)]
    return _EDGE_POOLS[key]


def random_edge_function(chi: IZCharacter, rng, max_support: int = 6, radius: int = 2) -> EdgeFunction:
    pool = edge_pool(chi.p, radius)
    size = rng.randint(1, max_support)
    return EdgeFunction(chi.p, chi, {e: rng.randrange(1, chi.p) for e in rng.sample(pool, size)})


def applicable_relations(p: int, r: int) -> list:
    if r in (0, p - 1):
        return ["T10^2 = 1", "T12 T10 T12 = -T12", "T-10 = T10 T12 T10"]
    return ["T10^2 = 1", "T-10 T12 = 0", "T12 T-10 = 0"]


def check_relation(name: str, f: EdgeFunction) -> bool:
    if name == "T10^2 = 1":
        return hecke_T10(hecke_T10(f)) == f
    if name == "T12 T10 T12 = -T12":
        return hecke_T12(hecke_T10(hecke_T12(f))) == -hecke_T12(f)
    if name == "T-10 = T10 T12 T10":
        return hecke_Tm10(f) == hecke_T10(hecke_T12(hecke_T10(f)))
    if name == "T-10 T12 = 0":
        return hecke_Tm10(hecke_T12(f)).is_zero
    if name == "T12 T-10 = 0":
        return hecke_T12(hecke_Tm10(f)).is_zero
    raise ValueError(f"unknown relation {name!r}")


def verify_relations(p: int, r: int, trials: int, rng) -> dict:
    """Failure counts per relation on random functions in the induction of ``d^r``."""
    if not 0 <= r <= p - 1:
        raise ValueError("need 0 <= r <= p-1")
    chi = IZCharacter.d_power(r, p)
    names = applicable_relations(p, r)
    failures = {n: 0 for n in names}
    for _ in range(trials):
        f = random_edge_function(chi, rng)
        for n in names:
            if not check_relation(n, f):
                failures[n] += 1
    return failures
