"""Multilinear series of a bundle list and the decision procedures built on it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import gb, lattice, quiver, toric
from .gb import Ideal, PolyRing
from .lattice import IntMatrix, LatticeBasis
from .quiver import Quiver


class PreconditionFailed(ValueError):
    pass


class NoAmpleCombination(ValueError):
    pass


class InconsistentCertificates(AssertionError):
    """Two independent tests of the same statement disagreed."""


def arrow_ring(Q: Quiver, prefix: str = "y", start: int = 1) -> PolyRing:
    return PolyRing.indexed(prefix, Q.narrows, start)


def ray_ring(fan: toric.Fan, prefix: str = "x") -> PolyRing:
    return PolyRing.indexed(prefix, fan.nrays)


def _nrays(Q: Quiver) -> int:
    if Q.arrows:
        return len(Q.arrows[0].label)
    return len(Q.bundles[0]) if Q.bundles else 0


# --- section lattice --------------------------------------------------------


@dataclass(frozen=True)
class SectionLatticePresentation:
    matrix: IntMatrix  # (|Q0| + #rays) x |Q1|
    nvertices: int
    rank: int

    @property
    def incidence(self) -> IntMatrix:
        return IntMatrix(self.matrix.entries[: self.nvertices], self.matrix.cols)

    @property
    def divisors(self) -> IntMatrix:
        return IntMatrix(self.matrix.entries[self.nvertices :], self.matrix.cols)


def section_lattice(Q: Quiver) -> SectionLatticePresentation:
    """``pi = (inc, div)`` stacked, with the rank of its image."""
    inc = quiver.incidence_matrix(Q)
    n = _nrays(Q)
    div = IntMatrix([[a.label[r] for a in Q.arrows] for r in range(n)], Q.narrows)
    pi = inc.vstack(div)
    return SectionLatticePresentation(pi, Q.nvertices, lattice.rank(pi))


# --- multilinear series -----------------------------------------------------


@dataclass(frozen=True)
class MultilinearSeries:
    quiver: Quiver
    basis: LatticeBasis  # rows are circuits; column a is the ray of arrow a
    trees: tuple
    max_cones: tuple  # arrow complements of the trees
    ring: PolyRing
    B_Y: Ideal = field(compare=False)

    @property
    def dim(self) -> int:
        return self.basis.rank

    @property
    def rays(self) -> list:
        return [self.basis.basis.column(a) for a in range(self.quiver.narrows)]

    @property
    def ray_matrix(self) -> list:
        return self.basis.basis.tolist()

    @property
    def theta(self) -> tuple:
        return quiver.special_weight(self.quiver)

    def is_unimodular(self) -> bool:
        M = self.basis.basis
        return all(abs(lattice.determinant(M.select_columns(c))) == 1 for c in self.max_cones)

    def is_facet_paired(self) -> bool:
        if self.dim == 0:
            # Y is a point: the fan {0} is complete
            return len(self.max_cones) == 1
        counts: dict = {}
        for c in self.max_cones:
            for f in itertools.combinations(c, len(c) - 1):
                counts[f] = counts.get(f, 0) + 1
        return all(v == 2 for v in counts.values())

    def fan(self) -> toric.Fan:
        return toric.Fan(self.dim, [tuple(r) for r in self.rays], [tuple(c) for c in self.max_cones], True)


def irrelevant_generators(Q: Quiver, trees: Optional[Sequence] = None) -> list:
    """Minimal exponent vectors of ``prod_{a in T} y_a`` over rooted spanning trees ``T``."""
    trees = quiver.spanning_trees_rooted(Q) if trees is None else trees
    exps = []
    for t in trees:
        e = [0] * Q.narrows
        for a in t:
            e[a] = 1
        exps.append(tuple(e))
    return gb.minimal_monomials(exps)


def irrelevant_by_vertices(Q: Quiver, ring: PolyRing) -> Ideal:
    """``B_Y`` as the intersection over vertices ``i >= 1`` of ``(y_a : head(a) = i)``."""
    parts = [Ideal(ring, [ring.gen(a) for a in Q.incoming(v)]) for v in range(1, Q.nvertices)]
    if not parts:
        return Ideal(ring, [ring.one()])
    out = parts[0]
    for p in parts[1:]:
        out = gb.monomial_intersection(out, p)
    return out


def multilinear_fan(
    Q: Quiver,
    circuit_basis: Optional[Sequence] = None,
    ring: Optional[PolyRing] = None,
) -> MultilinearSeries:
    """Fan of ``|L|``: rays are columns of a circulation basis, cones complement trees.

    ``circuit_basis`` may be integer rows or walk strings such as ``"a1 a3^-1"``.
    """
    if not (Q.is_acyclic() and Q.is_connected() and Q.is_rooted()):
        raise PreconditionFailed("quiver must be connected, acyclic and rooted at 0")
    if circuit_basis is not None:
        circuit_basis = [
            quiver.parse_walk(c, Q.narrows) if isinstance(c, str) else tuple(c) for c in circuit_basis
        ]
    basis = quiver.circulation_basis(Q, circuit_basis)
    trees = tuple(quiver.spanning_trees_rooted(Q))
    cones = tuple(tuple(a for a in range(Q.narrows) if a not in set(t)) for t in trees)
    ring = ring or arrow_ring(Q)
    by_trees = Ideal(ring, [ring.monomial(e) for e in irrelevant_generators(Q, trees)])
    by_vertices = irrelevant_by_vertices(Q, ring)
    if sorted(gb.monomial_exponents(by_vertices)) != sorted(gb.monomial_exponents(by_trees)):
        raise InconsistentCertificates("the two presentations of B_Y differ")
    return MultilinearSeries(Q, basis, trees, cones, ring, by_trees)


def _subtree(Q: Quiver, tree: Sequence[int], v: int) -> set:
    children: dict = {}
    for a in tree:
        children.setdefault(Q.arrows[a].tail, []).append(Q.arrows[a].head)
    out = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for c in children.get(w, []):
            out.add(c)
            stack.append(c)
    return out


def tree_flow_forms(Q: Quiver, tree: Sequence[int]) -> list:
    """Linear forms in ``(theta_1..theta_r)`` giving the coefficient of each tree arrow.

    In a rooted tree the arrow into ``h`` carries the total weight of the
    subtree hanging from ``h``.
    """
    forms = []
    for a in sorted(tree):
        sub = _subtree(Q, tree, Q.arrows[a].head)
        forms.append(tuple(1 if j in sub else 0 for j in range(1, Q.nvertices)))
    return forms


def _theta_coordinates(Q: Quiver, theta: Sequence[int]) -> tuple:
    theta = tuple(theta)
    if len(theta) == Q.nvertices:
        if sum(theta) != 0:
            raise ValueError("a weight must have coordinate sum zero")
        return theta[1:]
    if len(theta) != Q.r:
        raise ValueError(f"weight needs {Q.r} or {Q.nvertices} coordinates")
    return theta


@dataclass(frozen=True)
class Membership:
    nef: bool
    ample: bool
    facets: tuple  # irredundant inequalities a . theta >= 0 describing Nef(Y)


def nef_cone_facets(series: MultilinearSeries) -> list:
    forms = set()
    for t in series.trees:
        forms.update(tree_flow_forms(series.quiver, t))
    return sorted(lattice.irredundant_inequalities(sorted(forms)))


def nef_ample_membership(series: MultilinearSeries, theta: Sequence[int]) -> Membership:
    """``theta`` given as ``(theta_1..theta_r)`` or as a full weight ``(theta_0..theta_r)``."""
    th = _theta_coordinates(series.quiver, theta)
    facets = nef_cone_facets(series)

    def val(f):
        return sum(a * b for a, b in zip(f, th))

    nef = all(val(f) >= 0 for f in facets)
    ample = nef and all(val(f) > 0 for f in facets)
    # per-tree check: the interior of a finite intersection is the intersection of interiors
    per_tree = [[val(f) for f in tree_flow_forms(series.quiver, t)] for t in series.trees]
    if nef != all(x >= 0 for row in per_tree for x in row) or ample != all(x > 0 for row in per_tree for x in row):
        raise InconsistentCertificates("facet description disagrees with the tree cones")
    return Membership(nef, ample, tuple(tuple(f) for f in facets))


# --- ideals -----------------------------------------------------------------


def base_ideal(Q: Quiver, ring: Optional[PolyRing] = None) -> Ideal:
    """``B_Q``: monomials ``x^{sum div(a)}`` over rooted spanning trees."""
    ring = ring or PolyRing.indexed("x", _nrays(Q))
    exps = []
    for t in quiver.spanning_trees_rooted(Q):
        e = [0] * ring.nvars
        for a in t:
            for r, x in enumerate(Q.arrows[a].label):
                e[r] += x
        exps.append(tuple(e))
    return Ideal(ring, [ring.monomial(e) for e in gb.minimal_monomials(exps)])


def toric_ideal_IQ(Q: Quiver, ring: Optional[PolyRing] = None) -> Ideal:
    """Lattice ideal of ``ker(pi)``."""
    ring = ring or arrow_ring(Q)
    pi = section_lattice(Q).matrix
    return gb.lattice_ideal(lattice.kernel_basis(pi), ring)


def relation_ideal_IR(Q: Quiver, ring: Optional[PolyRing] = None, rels: Optional[list] = None) -> Ideal:
    ring = ring or arrow_ring(Q)
    rels = quiver.relations(Q) if rels is None else rels
    gens = [ring.binomial(quiver.path_vector(Q, r.canonical), quiver.path_vector(Q, r.other)) for r in rels]
    return Ideal(ring, gens)


def weight_of_exponent(Q: Quiver, e: Sequence[int]) -> tuple:
    """``inc(e)`` for an exponent vector over the arrows."""
    return tuple(quiver.incidence_matrix(Q) @ tuple(e))


def is_weight_homogeneous(Q: Quiver, f: gb.Polynomial) -> bool:
    return gb.is_homogeneous(f, lambda e: weight_of_exponent(Q, e))


# --- basepoint-free and very ample -----------------------------------------


@dataclass(frozen=True)
class BasepointFree:
    value: bool
    witness: dict  # cone -> tree (tuple of arrows) or None where it fails
    condition_b: bool

    def __bool__(self):
        return self.value


def _reachability_tree(Q: Quiver, allowed: set) -> Optional[tuple]:
    parent = {0: None}
    for v in range(Q.nvertices):  # vertices are topologically ordered
        if v not in parent:
            continue
        for k in Q.outgoing(v):
            if k in allowed and Q.arrows[k].head not in parent:
                parent[Q.arrows[k].head] = k
    if len(parent) < Q.nvertices:
        return None
    return tuple(sorted(k for k in parent.values() if k is not None))


def is_basepoint_free(Q: Quiver, fan: toric.Fan) -> BasepointFree:
    """Per maximal cone, look for a rooted tree of arrows avoiding the cone's rays."""
    witness = {}
    for c in fan.max_cones:
        allowed = {k for k, a in enumerate(Q.arrows) if all(a.label[r] == 0 for r in c)}
        witness[tuple(c)] = _reachability_tree(Q, allowed)
    cond_c = all(w is not None for w in witness.values())
    BQ = gb.monomial_exponents(base_ideal(Q))
    cond_b = all(gb.monomial_radical_contains(BQ, m) for m in toric.irrelevant_ideal_monomials(fan))
    if cond_b != cond_c:
        raise InconsistentCertificates("basepoint-free conditions (b) and (c) disagree")
    return BasepointFree(cond_c, witness, cond_b)


def total_bundle(Q: Quiver) -> tuple:
    """``L = tensor of all L_i``, i.e. ``pic(theta)``."""
    return tuple(sum(col) for col in zip(*Q.bundles))


def theta_flows(Q: Quiver, cap: Optional[int] = None) -> list:
    """All ``u`` in ``N^{Q1}`` with ``inc(u) = theta``, vertex by vertex from the top."""
    cap = quiver.path_cap() if cap is None else cap
    n = Q.narrows
    results = []

    def rec(v, u):
        if v == 0:
            results.append(tuple(u))
            if len(results) > cap:
                raise quiver.PathCapExceeded(f"more than {cap} flows")
            return
        need = 1 + sum(u[k] for k in Q.outgoing(v))
        inc = Q.incoming(v)
        for combo in itertools.combinations_with_replacement(inc, need):
            for k in combo:
                u[k] += 1
            rec(v - 1, u)
            for k in combo:
                u[k] -= 1

    rec(Q.r, [0] * n)
    return results


@dataclass(frozen=True)
class VeryAmple:
    value: bool
    path: str  # "fast" or "exhaustive"
    L_ample: bool
    multiplication_surjective: bool
    detail: str = ""

    def __bool__(self):
        return self.value


def is_very_ample(Q: Quiver, fan: toric.Fan, exhaustive: bool = False, bpf: Optional[BasepointFree] = None) -> VeryAmple:
    """Is ``phi_Q : X -> Y`` a closed embedding?

    When multiplication of sections is surjective the answer is whether
    ``L`` is very ample.  Otherwise, or on request, every cone is checked
    against the semigroup generated by the ``theta``-flow images.
    """
    bpf = is_basepoint_free(Q, fan) if bpf is None else bpf
    if not bpf:
        raise PreconditionFailed("basepoint_free")
    L = total_bundle(Q)
    surj = toric.multiplication_surjective(fan, Q.bundles[1:])
    pos = toric.positivity(fan, L)
    if surj and not exhaustive:
        return VeryAmple(pos.very_ample, "fast", pos.ample, surj, f"L very ample by {pos.method} test")
    if not pos.ample:
        return VeryAmple(False, "exhaustive", False, surj, "L is not ample")
    V = set()
    for u in theta_flows(Q):
        E = [0] * fan.nrays
        for k, x in enumerate(u):
            if x:
                for r, c in enumerate(Q.arrows[k].label):
                    E[r] += x * c
        m = toric.linearly_equivalent(fan, L, E)
        V.add(tuple(m))
    cd = toric.is_cartier(fan, L)
    for c, v_sigma in sorted(cd.m.items()):
        shifted = [tuple(p - q for p, q in zip(pt, v_sigma)) for pt in V]
        if not toric.semigroup_generates(fan, c, shifted):
            return VeryAmple(False, "exhaustive", True, surj, f"cone {list(c)} not generated")
    return VeryAmple(True, "exhaustive", True, surj, "every cone generated")


def embedding_rank_check(Q: Quiver, fan: toric.Fan) -> bool:
    return section_lattice(Q).rank == fan.rank + Q.r


# --- fine certificate -------------------------------------------------------


@dataclass
class FineReport:
    connected: bool
    rooted: bool
    acyclic: bool
    basepoint_free: bool
    L_ample: bool
    multiplication_surjective: bool
    very_ample: bool
    saturation_equal: bool
    fine: bool
    quiver: Quiver
    I_Q: Ideal
    I_R: Ideal
    B_Y: Ideal
    B_Q: Ideal
    diagnostics: list
    very_ample_path: str = ""

    def flags(self) -> dict:
        keys = [
            "connected", "rooted", "acyclic", "basepoint_free", "L_ample",
            "multiplication_surjective", "very_ample", "saturation_equal", "fine",
        ]
        return {k: getattr(self, k) for k in keys}

    def to_json(self) -> dict:
        Q = self.quiver
        return {
            "flags": self.flags(),
            "very_ample_path": self.very_ample_path,
            "bundles": [list(b) for b in Q.bundles],
            "arrows": [{"tail": a.tail, "head": a.head, "label": list(a.label)} for a in Q.arrows],
            "ideals": {
                "I_Q": self.I_Q.strings(),
                "I_R": self.I_R.strings(),
                "B_Y": self.B_Y.strings(),
                "B_Q": self.B_Q.strings(),
            },
            "diagnostics": list(self.diagnostics),
        }


def is_fine(
    fan: toric.Fan,
    bundles: Sequence[Sequence[int]],
    arrow_order: Optional[Sequence[int]] = None,
    exhaustive: bool = False,
    saturation_method: str = "primes",
    reorder: bool = False,
    Q: Optional[Quiver] = None,
) -> FineReport:
    """Full pipeline; ``fine`` means very ample and ``I_Q = (I_R : B_Y^inf)``."""
    if Q is None:
        Q = quiver.complete_quiver_of_sections(fan, bundles, reorder=reorder)
    if arrow_order is not None:
        Q = Q.permuted(arrow_order)
    diag = []
    connected, rooted, acyclic = Q.is_connected(), Q.is_rooted(), Q.is_acyclic()
    series = multilinear_fan(Q)
    ring = series.ring
    IQ = toric_ideal_IQ(Q, ring)
    IR = relation_ideal_IR(Q, ring)
    BQ = base_ideal(Q)
    bpf = is_basepoint_free(Q, fan)
    if bpf:
        va = is_very_ample(Q, fan, exhaustive=exhaustive, bpf=bpf)
        very_ample, L_ample, surj, path = va.value, va.L_ample, va.multiplication_surjective, va.path
        if not very_ample:
            diag.append(f"very ample check failed: {va.detail}")
    else:
        L = total_bundle(Q)
        L_ample = toric.positivity(fan, L).ample
        surj = toric.multiplication_surjective(fan, Q.bundles[1:])
        very_ample, path = False, ""
        bad = [list(c) for c, w in bpf.witness.items() if w is None]
        diag.append(f"not basepoint-free on cones {bad}")
    sat = gb.saturate_by_monomial_ideal(IR, series.B_Y, method=saturation_method)
    sat_eq = gb.equal(IQ, sat)
    if not sat_eq:
        diag.append("(I_R : B_Y^inf) differs from I_Q")
    return FineReport(
        connected, rooted, acyclic, bool(bpf), L_ample, surj, very_ample, sat_eq,
        very_ample and sat_eq, Q, IQ, IR, series.B_Y, BQ, diag, path,
    )


# --- tautological bundles ---------------------------------------------------


def pic(Q: Quiver, theta: Sequence[int]) -> tuple:
    """``pic(theta) = sum theta_i L_i`` for a full weight ``theta``."""
    n = len(Q.bundles[0])
    out = [0] * n
    for t, L in zip(theta, Q.bundles):
        for r in range(n):
            out[r] += t * L[r]
    return tuple(out)


def tautological_degrees(Q: Quiver) -> list:
    """``[(chi_i - chi_0, pic of it)]`` for ``i = 0..r``; entry 0 is the trivial bundle."""
    out = []
    for i in range(Q.nvertices):
        w = [0] * Q.nvertices
        if i:
            w[i], w[0] = 1, -1
        out.append((tuple(w[1:]), pic(Q, w)))
    return out


@dataclass(frozen=True)
class Completion:
    bundles: Optional[tuple]
    report: Optional[FineReport]
    coefficients: Optional[tuple]
    diagnostics: tuple = ()


def complete_to_fine(fan: toric.Fan, partial: Sequence[Sequence[int]], search_bound: int = 2) -> Completion:
    """Search ``L' = sum b_i L_i`` with ``0 <= b_i <= bound`` so that ``partial + (L', 2L')`` is fine."""
    partial = [tuple(int(x) for x in b) for b in partial]
    base = partial[1:]
    if not base:
        raise NoAmpleCombination("the trivial list generates no ample class")
    smooth = toric.validate_fan(fan, raise_on_error=False).smooth
    cands = [
        b for b in itertools.product(range(search_bound + 1), repeat=len(base)) if any(b)
    ]
    cands.sort(key=lambda b: (sum(b), b))
    diag = []
    any_ample = False
    for b in cands:
        L1 = tuple(sum(c * L[r] for c, L in zip(b, base)) for r in range(fan.nrays))
        try:
            if not toric.positivity(fan, L1, smooth).ample:
                continue
        except toric.NotCartier:
            continue
        any_ample = True
        L2 = tuple(2 * x for x in L1)
        ext = list(partial)
        for new in (L1, L2):
            if not any(toric.linearly_equivalent(fan, old, new) is not None for old in ext):
                ext.append(new)
        try:
            rep = is_fine(fan, ext, reorder=True)
        except quiver.QuiverError as exc:
            diag.append(f"b={list(b)}: {exc}")
            continue
        if rep.fine:
            return Completion(tuple(rep.quiver.bundles), rep, b, tuple(diag))
        diag.append(f"b={list(b)}: not fine ({'; '.join(rep.diagnostics)})")
    if not any_ample:
        raise NoAmpleCombination(f"no ample combination with coefficients up to {search_bound}")
    return Completion(None, None, None, tuple(diag))
