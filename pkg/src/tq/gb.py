"""Exact multivariate polynomials over Q, Buchberger's algorithm and ideal operations.

Polynomials are sparse maps from exponent tuples to ``Fraction``.  A
:class:`TermOrder` turns an exponent tuple into a sort key (larger key =
larger monomial), which is all the Gröbner machinery needs.
"""

from __future__ import annotations

import heapq
import re
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import lattice
from .lattice import LatticeBasis


# --- term orders ------------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """``grevlex``, ``lex``, or ``block``.

    ``block`` compares the first ``block_size`` variables by grevlex and
    breaks ties with ``inner`` on the rest; it eliminates the first block.
    ``perm`` optionally relabels variables before comparison: position
    ``k`` of the permuted exponent is ``exps[perm[k]]``.  ``weights``
    (positive, indexed by the original variables) replace the total degree
    of ``grevlex``.
    """

    kind: str = "grevlex"
    block_size: int = 0
    inner: str = "grevlex"
    perm: Optional[tuple] = None
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.weights is not None and (self.kind != "grevlex" or min(self.weights) <= 0):
            raise ValueError("weights need grevlex and positive entries")

    def key_function(self):
        if self.weights is not None:
            W, perm = self.weights, self.perm

            def weighted(e):
                pe = e if perm is None else tuple(e[i] for i in perm)
                return (sum(w * x for w, x in zip(W, e)),) + tuple(-x for x in reversed(pe))

            return weighted
        base = _KEYS[self.kind] if self.kind != "block" else None
        if self.kind == "block":
            k = self.block_size
            inner = _KEYS[self.inner]
            outer = _grevlex_key

            def base(e):
                return outer(e[:k]) + inner(e[k:])

        if self.perm is None:
            return base
        perm = self.perm
        return lambda e: base(tuple(e[i] for i in perm))


# keys are flat integer tuples so that negating them gives a min-heap key
def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return tuple(e)


_KEYS = {"grevlex": _grevlex_key, "lex": _lex_key}

GREVLEX = TermOrder()


def elimination_order(k: int, inner: str = "grevlex") -> TermOrder:
    return TermOrder("block", k, inner)


# --- rings and polynomials --------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over Q in the named variables."""

    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def indexed(cls, prefix: str, n: int, start: int = 1) -> "PolyRing":
        return cls(tuple(f"{prefix}{i}" for i in range(start, start + n)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(int(x) for x in exps): Fraction(coeff)})

    def binomial(self, u: Sequence[int], v: Sequence[int]) -> "Polynomial":
        """``y^u - y^v``."""
        return Polynomial(self, _sub({tuple(u): Fraction(1)}, {tuple(v): Fraction(1)}))

    def one(self) -> "Polynomial":
        return self.monomial([0] * self.nvars)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, name: str = "t") -> "PolyRing":
        """Ring with one extra variable prepended."""
        while name in self.names:
            name = name + "_"
        return PolyRing((name,) + self.names)


class Polynomial:
    """Immutable polynomial: ``{exponent tuple: Fraction}`` with no zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.one() * Fraction(other) if other else self.ring.zero()

    def __add__(self, other):
        other = self._lift(other)
        return Polynomial(self.ring, _add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        return Polynomial(self.ring, _sub(self.terms, other.terms))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def leading_monomial(self, order: TermOrder = GREVLEX) -> tuple:
        return max(self.terms, key=order.key_function())

    def leading_coefficient(self, order: TermOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_pure_binomial(self) -> bool:
        """``c (y^u - y^v)`` with ``u != v``."""
        if len(self.terms) != 2:
            return False
        a, b = self.terms.values()
        return a == -b

    def variables(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def sorted_terms(self, order: TermOrder = GREVLEX) -> list:
        key = order.key_function()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


# --- text I/O ---------------------------------------------------------------

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"([A-Za-z][A-Za-z_]*\d*)(?:\^(\d+))?")
_COEFF = re.compile(r"(\d+(?:/\d+)?)")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``-3*y1^2*y4 + 1/2*y2`` style text.  ``*`` between factors is optional."""
    index = {n: i for i, n in enumerate(ring.names)}
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)[1:]
    if len(parts) % 2:
        raise ValueError(f"cannot parse polynomial {text!r}")
    terms: dict = {}
    for sign, body in zip(parts[0::2], parts[1::2]):
        body = body.replace(" ", "")
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        pos = 0
        m = _COEFF.match(body)
        if m:
            coeff = Fraction(m.group(1))
            pos = m.end()
            if pos < len(body) and body[pos] == "*":
                pos += 1
        exps = [0] * ring.nvars
        while pos < len(body):
            m = _FACTOR.match(body, pos)
            if not m:
                raise ValueError(f"cannot parse term {body!r}")
            name = m.group(1)
            if name not in index:
                raise ValueError(f"unknown variable {name!r}")
            exps[index[name]] += int(m.group(2) or 1)
            pos = m.end()
            if pos < len(body) and body[pos] == "*":
                pos += 1
        if sign == "-":
            coeff = -coeff
        e = tuple(exps)
        v = terms.get(e, 0) + coeff
        if v:
            terms[e] = v
        else:
            terms.pop(e, None)
    return Polynomial(ring, terms)


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for n, x in zip(names, exps):
        if x == 1:
            parts.append(n)
        elif x > 1:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, order: TermOrder = GREVLEX) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(order)):
        mono = format_monomial(e, p.ring.names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# --- Buchberger -------------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mask(e: tuple) -> int:
    """Support bitmask; ``a | b`` needs ``mask(a) & ~mask(b) == 0``."""
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Basis:
    """Working polynomial list for one Buchberger run."""

    def __init__(self, key):
        self.key = key
        self.polys = []  # dict terms, monic
        self.lms = []
        self.masks = []
        self.sugar = []

    def add(self, terms: dict, sugar: int) -> int:
        lm = max(terms, key=self.key)
        c = terms[lm]
        if c == -1:
            terms = {e: -v for e, v in terms.items()}
        elif c != 1:
            inv = Fraction(1) / c
            terms = {e: _shrink(v * inv) for e, v in terms.items()}
        self.polys.append(terms)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.sugar.append(sugar)
        return len(self.polys) - 1


def _shrink(c):
    """Integral Fractions become ints, which are much faster to combine."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _reduce(f: dict, divisors: list, polys: list, lms: list, key, full: bool = True, masks=None) -> dict:
    """Multivariate division of ``f`` by the monic polynomials with indices ``divisors``.

    Pending monomials sit in a heap keyed by the negated order key, with
    lazy deletion.  With ``full=False`` only the leading term is reduced.
    """
    if masks is None:
        masks = [_mask(m) for m in lms]
    f = dict(f)
    heap = [(tuple(-x for x in key(e)), e) for e in f]
    heapq.heapify(heap)
    queued = set(f)
    rem = {}
    while heap:
        _, lm = heapq.heappop(heap)
        queued.discard(lm)
        c = f.pop(lm, 0)
        if not c:
            continue
        mlm = _mask(lm)
        for j in divisors:
            glm = lms[j]
            if not (masks[j] & ~mlm) and _divides(glm, lm):
                q = tuple(a - b for a, b in zip(lm, glm))
                for e, gc in polys[j].items():
                    if e == glm:
                        continue
                    e2 = tuple(a + b for a, b in zip(e, q))
                    v = f.get(e2, 0) - c * gc
                    if v:
                        f[e2] = v
                        if e2 not in queued:
                            queued.add(e2)
                            heapq.heappush(heap, (tuple(-x for x in key(e2)), e2))
                    else:
                        f.pop(e2, None)
                break
        else:
            rem[lm] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _spoly(i: int, j: int, B: _Basis) -> dict:
    li, lj = B.lms[i], B.lms[j]
    L = _lcm(li, lj)
    qi = tuple(a - b for a, b in zip(L, li))
    qj = tuple(a - b for a, b in zip(L, lj))
    out = {}
    for e, c in B.polys[i].items():
        out[tuple(a + b for a, b in zip(e, qi))] = c
    for e, c in B.polys[j].items():
        e2 = tuple(a + b for a, b in zip(e, qj))
        v = out.get(e2, 0) - c
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _deg(e):
    return sum(e)


def buchberger(gens: Iterable[Polynomial], order: TermOrder = GREVLEX) -> list:
    """Reduced Gröbner basis of the ideal generated by ``gens`` (sorted, monic).

    Uses the Gebauer-Möller installation of the coprime and chain criteria
    and the sugar selection strategy.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ring = gens[0].ring
    key = order.key_function()
    B = _Basis(key)
    G: list = []  # indices of current basis
    pairs: list = []  # (selection key, i, j, lcm)

    def pair(i: int, j: int, L: tuple) -> tuple:
        # sugar strategy, ties by lcm
        sug = max(B.sugar[i] - _deg(B.lms[i]), B.sugar[j] - _deg(B.lms[j])) + _deg(L)
        return ((sug,) + key(L), i, j, L)

    def update(h: int):
        nonlocal G, pairs
        lh = B.lms[h]
        mh = B.masks[h]
        C = []
        for g in G:
            l = _lcm(lh, B.lms[g])
            C.append((g, l, _mask(l)))
        D = []
        while C:
            g1, l1, m1 = C.pop()
            if not (mh & B.masks[g1]):
                D.append((g1, l1, m1))
                continue
            if any(not (m2 & ~m1) and _divides(l2, l1) for _, l2, m2 in C) or any(
                not (m2 & ~m1) and _divides(l2, l1) for _, l2, m2 in D
            ):
                continue
            D.append((g1, l1, m1))
        E = [(g, l) for g, l, _ in D if mh & B.masks[g]]
        kept = []
        for p in pairs:
            _, i, j, L = p
            if (
                _divides(lh, L)
                and _lcm(B.lms[i], lh) != L
                and _lcm(lh, B.lms[j]) != L
            ):
                continue
            kept.append(p)
        kept.extend(pair(g, h, l) for g, l in E)
        pairs = kept
        G = [g for g in G if (mh & ~B.masks[g]) or not _divides(lh, B.lms[g])] + [h]

    # interreduce the input a little: sort by leading monomial
    start = []
    for g in gens:
        start.append({e: _shrink(c) for e, c in g.terms.items()})
    start.sort(key=lambda t: key(max(t, key=key)))
    for t in start:
        r = _reduce(t, G, B.polys, B.lms, key, masks=B.masks)
        if r:
            h = B.add(r, max(_deg(e) for e in r))
            update(h)

    while pairs:
        best = min(pairs)
        pairs.remove(best)
        skey, i, j, L = best
        s = _spoly(i, j, B)
        if not s:
            continue
        sug = skey[0]
        r = _reduce(s, G, B.polys, B.lms, key, full=False, masks=B.masks)
        if r:
            h = B.add(r, sug)
            update(h)

    return _reduced(G, B, ring, order)


def _reduced(G: list, B: _Basis, ring: PolyRing, order: TermOrder) -> list:
    key = B.key
    # minimal basis
    G = sorted(set(G), key=lambda g: key(B.lms[g]))
    minimal = []
    for g in G:
        if not any(_divides(B.lms[h], B.lms[g]) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h != g]
        lm = B.lms[g]
        tail = {e: c for e, c in B.polys[g].items() if e != lm}
        r = _reduce(tail, others, B.polys, B.lms, key, masks=B.masks) if tail else {}
        r[lm] = Fraction(1)
        out.append(Polynomial(ring, r))
    out.sort(key=lambda p: key(p.leading_monomial(order)))
    return out


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on full division by ``basis`` (a Gröbner basis for ``order``)."""
    key = order.key_function()
    polys, lms = [], []
    for g in basis:
        if not g.terms:
            continue
        lm = max(g.terms, key=key)
        inv = 1 / g.terms[lm]
        polys.append({e: c * inv for e, c in g.terms.items()})
        lms.append(lm)
    r = _reduce(f.terms, list(range(len(polys))), polys, lms, key)
    return Polynomial(f.ring, r)


# --- ideals -----------------------------------------------------------------


class Ideal:
    """Ideal given by generators; reduced Gröbner bases are cached per term order.

    The cache is the only mutable state.  Entries are computed
    deterministically, so concurrent fills write identical values.
    """

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        self.ring = ring
        gl = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.terms:
                gl.append(g)
        self.gens = tuple(gl)
        self._gb: dict = {}

    def groebner(self, order: TermOrder = GREVLEX) -> list:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.gens, order)
            self._gb[order] = gb
        return list(gb)

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, f: Polynomial) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        return not normal_form(f, self.groebner(), GREVLEX).terms

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def strings(self, order: TermOrder = GREVLEX) -> list:
        return [format_polynomial(g) for g in self.groebner(order)]

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]!r})"


def equal(I: Ideal, J: Ideal, order: TermOrder = GREVLEX) -> bool:
    """Ideal equality by comparison of reduced Gröbner bases."""
    if I.ring.nvars != J.ring.nvars:
        return False
    a = [g.terms for g in I.groebner(order)]
    b = [g.terms for g in J.groebner(order)]
    return a == b


def _embed(p: Polynomial, ring: PolyRing, shift: int = 1) -> Polynomial:
    pad = (0,) * shift
    return Polynomial(ring, {pad + e: c for e, c in p.terms.items()})


def _eliminate_first(gens: list, big: PolyRing, small: PolyRing) -> Ideal:
    gb = buchberger(gens, elimination_order(1))
    kept = [Polynomial(small, {e[1:]: c for e, c in g.terms.items()}) for g in gb if all(e[0] == 0 for e in g.terms)]
    return Ideal(small, kept)


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f^inf)`` by eliminating ``t`` from ``I + (t f - 1)``."""
    if not f.terms:
        raise ValueError("cannot saturate by zero")
    if I.is_zero():
        return Ideal(I.ring, [])
    if len(f.terms) == 1 and not any(next(iter(f.terms))):
        return Ideal(I.ring, I.groebner())
    big = I.ring.extend("t")
    t = big.gen(0)
    gens = [_embed(g, big) for g in I.gens]
    gens.append(t * _embed(f, big) - 1)
    return _eliminate_first(gens, big, I.ring)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t I + (1 - t) J``."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    big = I.ring.extend("t")
    t = big.gen(0)
    gens = [t * _embed(g, big) for g in I.gens] + [(1 - t) * _embed(g, big) for g in J.gens]
    return _eliminate_first(gens, big, I.ring)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def monomial_exponents(I: Ideal) -> list:
    if not I.is_monomial():
        raise ValueError("not a monomial ideal")
    return [next(iter(g.terms)) for g in I.gens]


def minimal_monomials(exps: Iterable[tuple]) -> list:
    """Minimal generators of a monomial ideal, given exponent vectors."""
    ex = sorted(set(tuple(e) for e in exps), key=lambda e: (sum(e), e))
    out = []
    for e in ex:
        if not any(_divides(m, e) for m in out):
            out.append(e)
    return out


def monomial_intersection(I: Ideal, J: Ideal) -> Ideal:
    """Intersection of monomial ideals via pairwise lcms."""
    a, b = monomial_exponents(I), monomial_exponents(J)
    lcms = minimal_monomials(_lcm(x, y) for x in a for y in b)
    return Ideal(I.ring, [I.ring.monomial(e) for e in lcms])


def monomial_radical_contains(gens: Sequence[tuple], m: tuple) -> bool:
    """Is the monomial ``m`` in the radical of the monomial ideal with generators ``gens``?"""
    supp = {i for i, x in enumerate(m) if x}
    return any({i for i, x in enumerate(g) if x} <= supp for g in gens)


def _minimal_transversals(supports: list) -> list:
    """Minimal vertex covers of a hypergraph, i.e. minimal primes of a squarefree monomial ideal."""
    covers = [frozenset()]
    for s in supports:
        nxt = set()
        for c in covers:
            if c & s:
                nxt.add(c)
            else:
                for v in s:
                    nxt.add(c | {v})
        covers = [c for c in nxt if not any(o < c for o in nxt)]
    return sorted(covers, key=lambda c: (len(c), sorted(c)))


def saturate_by_monomial_ideal(I: Ideal, B: Ideal, method: str = "primes") -> Ideal:
    """``(I : B^inf)`` for a monomial ideal ``B``.

    ``method="generators"`` intersects ``(I : m^inf)`` over the generators
    ``m`` of ``B``.  ``method="primes"`` (default) uses that the saturation
    depends only on ``rad(B) = P_1 ∩ ... ∩ P_s`` with ``P_k`` generated by
    variables, so ``(I : B^inf) = (...((I : P_1^inf) : P_2^inf) ...)`` and
    ``(I : P^inf) = ∩_{y in P} (I : y^inf)``.  Both give the same ideal.
    """
    if not B.is_monomial():
        raise ValueError("saturator must be a monomial ideal")
    if I.is_zero():
        return Ideal(I.ring, [])
    exps = monomial_exponents(B)
    if not exps:
        return Ideal(I.ring, [I.ring.one()])
    if method == "generators":
        parts = [saturate(I, I.ring.monomial(e)) for e in exps]
        return intersect_all(parts)
    if method != "primes":
        raise ValueError(f"unknown method {method!r}")
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in exps]
    if any(not s for s in supports):
        return Ideal(I.ring, I.groebner())
    current = Ideal(I.ring, I.groebner())
    for prime in _minimal_transversals(supports):
        parts = []
        for v in sorted(prime):
            parts.append(saturate(current, I.ring.gen(v)))
        current = intersect_all(parts)
        current = Ideal(I.ring, current.groebner())
    return current


def lattice_ideal(kernel: LatticeBasis, ring: PolyRing) -> Ideal:
    """Lattice ideal of a saturated lattice: saturate the basis binomials by all variables."""
    if kernel.ambient_dim != ring.nvars:
        raise ValueError("kernel dimension must equal the number of variables")
    if kernel.rank == 0:
        return Ideal(ring, [])
    gens = []
    for u in kernel.basis.entries:
        pos = tuple(x if x > 0 else 0 for x in u)
        neg = tuple(-x if x < 0 else 0 for x in u)
        gens.append(ring.binomial(pos, neg))
    I = Ideal(ring, gens)
    w = positive_grading(kernel)
    if w is None:
        return saturate(I, ring.monomial([1] * ring.nvars))
    # I is w-homogeneous: saturate one variable at a time by making it the
    # smallest in a weighted grevlex order and dividing out its powers
    support = [v for v in range(ring.nvars) if any(u[v] for u in kernel.basis.entries)]
    current = gens
    for v in support:
        perm = tuple(k for k in range(ring.nvars) if k != v) + (v,)
        G = buchberger(current, TermOrder(weights=w, perm=perm))
        current = []
        for g in G:
            low = min(e[v] for e in g.terms)
            current.append(
                Polynomial(ring, {e[:v] + (e[v] - low,) + e[v + 1:]: c for e, c in g.terms.items()})
            )
    return Ideal(ring, current)


def positive_grading(kernel: LatticeBasis) -> Optional[tuple]:
    """Integer ``w >= 1`` orthogonal to every kernel vector, if one exists."""
    rows = kernel.basis.entries
    n = kernel.ambient_dim
    # w = 1 + x with x >= 0 and  K x = -K 1
    x = lattice.feasible_nonnegative(rows, [-sum(r) for r in rows])
    if x is None:
        return None
    w = [1 + Fraction(t) for t in x]
    den = 1
    for t in w:
        den = den * t.denominator // gcd(den, t.denominator)
    return tuple(int(t * den) for t in w)


def is_homogeneous(f: Polynomial, degree_of) -> bool:
    """All terms share one value of ``degree_of(exps)``."""
    vals = {degree_of(e) for e in f.terms}
    return len(vals) <= 1
