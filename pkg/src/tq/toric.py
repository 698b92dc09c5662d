"""Fans, torus-invariant divisors, sections and positivity on complete toric varieties.

Conventions: for a divisor ``D = sum u_rho D_rho`` the polytope is
``P_D = {m : <m, v_rho> >= -u_rho}``, a lattice point ``m`` gives the
section with divisor ``D + div(chi^m)``, and ``div(chi^m)_rho = <m, v_rho>``.
Cartier data ``m_sigma`` satisfy ``<m_sigma, v_rho> = -u_rho`` on ``sigma``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import floor, ceil, gcd
from typing import Optional, Sequence

from . import lattice
from .lattice import IntMatrix


class FanError(ValueError):
    """Base class for invalid fan input."""


class NonPrimitiveRay(FanError):
    pass


class NonStronglyConvexCone(FanError):
    pass


class NotAFan(FanError):
    pass


class IncompletenessDetected(FanError):
    pass


class RaysDoNotSpan(FanError):
    pass


class UnboundedPolytope(ValueError):
    pass


class NotCartier(ValueError):
    pass


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones)
        )

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> IntMatrix:
        """``#rays x rank``; row ``rho`` is ``v_rho``, so ``A m = div(chi^m)``."""
        return IntMatrix(self.rays, self.rank)

    def principal(self, m: Sequence[int]) -> tuple:
        return tuple(_dot(m, v) for v in self.rays)

    def is_simplicial(self) -> bool:
        return all(lattice.rank([self.rays[i] for i in c]) == len(c) for c in self.max_cones)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "complete": self.complete,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        try:
            return cls(
                int(data["rank"]),
                data["rays"],
                data["max_cones"],
                bool(data.get("complete", True)),
            )
        except (KeyError, TypeError) as exc:
            raise FanError(f"malformed fan data: {exc}") from None


@dataclass
class ValidationReport:
    valid: bool
    simplicial: bool
    smooth: bool
    complete: bool
    intersections_checked: bool
    messages: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "simplicial": self.simplicial,
            "smooth": self.smooth,
            "complete": self.complete,
            "intersections_checked": self.intersections_checked,
            "messages": list(self.messages),
        }


def _contains_line(vectors) -> bool:
    """Is there a nonzero nonnegative combination equal to zero?"""
    if not vectors:
        return False
    dim = len(vectors[0])
    A = [[v[i] for v in vectors] for i in range(dim)] + [[1] * len(vectors)]
    b = [0] * dim + [1]
    return lattice.feasible_nonnegative(A, b) is not None


def _improper_overlap(fan: Fan, s: tuple, t: tuple) -> bool:
    """For simplicial cones: does ``cone(s) ∩ cone(t)`` contain a point outside ``cone(s ∩ t)``?"""
    common = set(s) & set(t)
    only_s = [i for i in s if i not in common]
    if not only_s:
        return False
    dim = fan.rank
    cols = [fan.rays[i] for i in s] + [tuple(-x for x in fan.rays[j]) for j in t]
    A = [[c[k] for c in cols] for k in range(dim)]
    A.append([1 if (idx < len(s) and s[idx] in only_s) else 0 for idx in range(len(cols))])
    b = [0] * dim + [1]
    return lattice.feasible_nonnegative(A, b) is not None


def validate_fan(fan: Fan, raise_on_error: bool = True) -> ValidationReport:
    """Check primitivity, strong convexity, the fan axiom and completeness."""
    d = fan.rank
    msgs = []

    def fail(exc_cls, msg):
        if raise_on_error:
            raise exc_cls(msg)
        msgs.append(f"{exc_cls.__name__}: {msg}")

    for i, v in enumerate(fan.rays):
        if len(v) != d:
            fail(FanError, f"ray {i} has length {len(v)}, expected {d}")
            return ValidationReport(False, False, False, False, False, msgs)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            fail(NonPrimitiveRay, f"ray {i} = {list(v)} is not primitive")
    for c in fan.max_cones:
        if not c or any(i < 0 or i >= fan.nrays for i in c):
            fail(FanError, f"cone {list(c)} has bad ray indices")
            return ValidationReport(False, False, False, False, False, msgs)
        if len(set(c)) != len(c):
            fail(FanError, f"cone {list(c)} repeats a ray")
        if _contains_line([fan.rays[i] for i in c]):
            fail(NonStronglyConvexCone, f"cone {list(c)} contains a line")
    if msgs:
        return ValidationReport(False, False, False, False, False, msgs)

    simplicial = fan.is_simplicial()
    smooth = simplicial and all(
        lattice.smith_normal_form([fan.rays[i] for i in c])[0] == [1] * len(c) for c in fan.max_cones
    )
    checked = False
    if simplicial:
        checked = True
        for s, t in itertools.combinations(fan.max_cones, 2):
            if _improper_overlap(fan, s, t) or _improper_overlap(fan, t, s):
                fail(NotAFan, f"cones {list(s)} and {list(t)} meet outside a common face")
                return ValidationReport(False, simplicial, smooth, False, checked, msgs)
    complete = False
    if simplicial:
        complete = all(len(c) == d for c in fan.max_cones)
        if complete:
            counts: dict = {}
            for c in fan.max_cones:
                for f in itertools.combinations(c, d - 1):
                    counts[f] = counts.get(f, 0) + 1
            complete = all(v == 2 for v in counts.values()) and bool(counts)
        if d == 0:
            complete = True
        if fan.complete and not complete:
            fail(IncompletenessDetected, "facet pairing fails: some facet lies in != 2 maximal cones")
            return ValidationReport(False, simplicial, smooth, False, checked, msgs)
    else:
        complete = fan.complete
        msgs.append("non-simplicial fan: completeness taken from the complete flag")
    all_rays_used = set(itertools.chain.from_iterable(fan.max_cones)) == set(range(fan.nrays))
    if not all_rays_used:
        fail(FanError, "some ray lies in no maximal cone")
        return ValidationReport(False, simplicial, smooth, complete, checked, msgs)
    return ValidationReport(True, simplicial, smooth, complete, checked, msgs)


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple
    projection: IntMatrix  # rows: free coordinates then torsion coordinates (mod torsion[k])

    def cls(self, u: Sequence[int]) -> tuple:
        img = self.projection @ u
        f = self.free_rank
        return tuple(img[:f]) + tuple(x % t for x, t in zip(img[f:], self.torsion))


def class_group(fan: Fan) -> ClassGroup:
    """``Cl(X) = coker(M -> Z^rays)`` from the Smith form of the ray matrix."""
    A = fan.ray_matrix()
    factors, U, _ = lattice.smith_normal_form(A)
    if len(factors) < fan.rank:
        raise RaysDoNotSpan("rays do not span the lattice over Q")
    n = fan.nrays
    tors_idx = [i for i, x in enumerate(factors) if x != 1]
    rows = [U.row(i) for i in range(len(factors), n)] + [U.row(i) for i in tors_idx]
    torsion = tuple(factors[i] for i in tors_idx)
    return ClassGroup(n - len(factors), torsion, IntMatrix(rows, n))


def linearly_equivalent(fan: Fan, D: Sequence[int], E: Sequence[int]) -> Optional[tuple]:
    """``m`` with ``E = D + div(chi^m)``, or ``None``."""
    diff = [e - d for d, e in zip(D, E)]
    return lattice.solve_integer(fan.ray_matrix(), diff)


def _positively_spanning(fan: Fan) -> bool:
    d = fan.rank
    for i in range(d):
        for s in (1, -1):
            e = [0] * d
            e[i] = s
            if not lattice.cone_membership(fan.rays, e):
                return False
    return True


def polytope_vertices(fan: Fan, D: Sequence[int]) -> list:
    """Vertices of ``P_D`` by exact enumeration of d-subsets of facets."""
    d = fan.rank
    verts = set()
    for sub in itertools.combinations(range(fan.nrays), d):
        A = [fan.rays[i] for i in sub]
        if lattice.rank(A) < d:
            continue
        x = lattice.solve_rational(A, [-D[i] for i in sub])
        if x is None:
            continue
        if all(_dot(x, v) >= -u for v, u in zip(fan.rays, D)):
            verts.add(x)
    return sorted(verts)


def lattice_points(fan: Fan, D: Sequence[int]) -> list:
    """Lattice points of ``P_D``, lexicographically sorted."""
    if len(D) != fan.nrays:
        raise ValueError("divisor length must equal the number of rays")
    if not _positively_spanning(fan):
        raise UnboundedPolytope("rays do not positively span; P_D is unbounded")
    d = fan.rank
    if d == 0:
        return [()]
    verts = polytope_vertices(fan, D)
    if not verts:
        return []
    lo = [ceil(min(v[k] for v in verts)) for k in range(d)]
    hi = [floor(max(v[k] for v in verts)) for k in range(d)]
    pts = []
    for m in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if all(_dot(m, v) >= -u for v, u in zip(fan.rays, D)):
            pts.append(tuple(m))
    return pts


def global_sections(fan: Fan, D: Sequence[int]) -> list:
    """All effective divisors linearly equivalent to ``D``, sorted lexicographically descending.

    Descending lex order puts ``x_1`` before ``x_2`` before ..., which is
    the order the worked examples list their arrows in.
    """
    out = []
    for m in lattice_points(fan, D):
        div = tuple(u + p for u, p in zip(D, fan.principal(m)))
        out.append(div)
    return sorted(set(out), reverse=True)


@dataclass(frozen=True)
class CartierData:
    m: dict  # cone (tuple of ray indices) -> character tuple

    def __getitem__(self, cone):
        return self.m[cone]


def is_cartier(fan: Fan, D: Sequence[int]) -> Optional[CartierData]:
    data = {}
    for c in fan.max_cones:
        A = [fan.rays[i] for i in c]
        m = lattice.solve_integer(A, [-D[i] for i in c])
        if m is None:
            return None
        data[c] = tuple(m)
    return CartierData(data)


@dataclass(frozen=True)
class Positivity:
    basepoint_free: bool
    ample: bool
    very_ample: bool
    method: str  # how very_ample was decided


def positivity(fan: Fan, D: Sequence[int], smooth: Optional[bool] = None) -> Positivity:
    cd = is_cartier(fan, D)
    if cd is None:
        raise NotCartier(f"divisor {list(D)} is not Cartier")
    bpf = True
    ample = True
    for c, m in cd.m.items():
        for rho, v in enumerate(fan.rays):
            val = _dot(m, v) + D[rho]
            if val < 0:
                bpf = False
            if rho not in c and val <= 0:
                ample = False
    ample = ample and bpf
    if smooth is None:
        smooth = validate_fan(fan, raise_on_error=False).smooth
    if not ample:
        return Positivity(bpf, False, False, "not ample")
    if smooth:
        return Positivity(bpf, True, True, "smooth")
    pts = lattice_points(fan, D)
    va = all(
        semigroup_generates(fan, c, [tuple(p - q for p, q in zip(pt, m)) for pt in pts])
        for c, m in cd.m.items()
    )
    return Positivity(bpf, True, va, "exhaustive")


def dual_cone_hilbert_basis(fan: Fan, cone: Sequence[int]) -> list:
    """Hilbert basis of ``sigma^vee ∩ M`` for a full-dimensional simplicial ``sigma``.

    Every Hilbert basis element lies in the half-open fundamental
    parallelepiped of the dual generators or is a dual generator, so a
    bounded scan suffices.
    """
    d = fan.rank
    if len(cone) != d:
        raise NotImplementedError("Hilbert basis only for full-dimensional simplicial cones")
    A = IntMatrix([fan.rays[i] for i in cone], d)
    det = lattice.determinant(A)
    if det == 0:
        raise NotImplementedError("cone is not simplicial")
    # dual generators: columns of A^{-1}, scaled to primitive integer vectors
    gens = []
    for k in range(d):
        e = [0] * d
        e[k] = 1
        col = lattice.solve_rational(A, e)
        gens.append(lattice._normalise_direction(col))
    cand = set(gens)
    # points sum c_k g_k with 0 <= c_k < 1
    G = IntMatrix(gens, d).T  # columns are generators
    gdet = abs(lattice.determinant(G))
    box = [
        range(sum(min(0, g[k]) for g in gens), sum(max(0, g[k]) for g in gens) + 1) for k in range(d)
    ]
    if gdet > 1:
        for m in itertools.product(*box):
            c = lattice.solve_rational(G, m)
            if all(0 <= x < 1 for x in c) and any(m):
                cand.add(tuple(m))
    cand = [c for c in cand if any(c)]
    # keep irreducible elements

    def height(v):
        return sum(_dot(v, fan.rays[i]) for i in cone)

    cand.sort(key=height)
    basis = []
    cset = set(cand)
    for v in cand:
        reducible = False
        for w in cand:
            if w == v or height(w) >= height(v):
                continue
            rest = tuple(a - b for a, b in zip(v, w))
            if all(_dot(rest, fan.rays[i]) >= 0 for i in cone) and any(rest):
                reducible = True
                break
        if not reducible:
            basis.append(v)
    return sorted(basis)


def semigroup_generates(fan: Fan, cone: Sequence[int], vectors: Sequence[Sequence[int]]) -> bool:
    """Do ``vectors`` (inside ``sigma^vee``) generate ``sigma^vee ∩ M`` as a semigroup?"""
    cone = tuple(cone)

    def height(v):
        return sum(_dot(v, fan.rays[i]) for i in cone)

    vecs = sorted({tuple(v) for v in vectors if any(v)})
    if any(_dot(v, fan.rays[i]) < 0 for v in vecs for i in cone):
        return False
    targets = dual_cone_hilbert_basis(fan, cone)
    for h in targets:
        if not _reachable(h, vecs, height):
            return False
    return True


def _reachable(target: tuple, vecs: list, height) -> bool:
    """Is ``target`` an N-combination of ``vecs``?  ``height`` is positive on all of them."""
    H = height(target)
    frontier = {tuple(0 for _ in target)}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for p in frontier:
            for v in vecs:
                q = tuple(a + b for a, b in zip(p, v))
                if q == target:
                    return True
                if q not in seen and height(q) < H:
                    seen.add(q)
                    nxt.add(q)
        frontier = nxt
    return target == tuple(0 for _ in target)


def multiplication_surjective(fan: Fan, divisors: Sequence[Sequence[int]]) -> bool:
    """Is every lattice point of ``P_{sum D_i}`` a sum of lattice points of the ``P_{D_i}``?"""
    if not divisors:
        return True
    if len(divisors) == 1:
        return True
    total = [sum(col) for col in zip(*divisors)]
    target = set(lattice_points(fan, total))
    sums = {tuple(0 for _ in range(fan.rank))}
    for D in divisors:
        pts = lattice_points(fan, D)
        sums = {tuple(a + b for a, b in zip(s, p)) for s in sums for p in pts}
    return target <= sums


def irrelevant_ideal_monomials(fan: Fan) -> list:
    """Exponent vectors of ``x^{sigma hat}`` for the maximal cones."""
    out = []
    for c in fan.max_cones:
        out.append(tuple(0 if i in c else 1 for i in range(fan.nrays)))
    return out
