"""Quivers of sections: paths, circulations, rooted spanning trees, relations."""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from . import lattice, toric
from .lattice import IntMatrix, LatticeBasis

DEFAULT_PATH_CAP = 10**6


class QuiverError(ValueError):
    pass


class DuplicateBundle(QuiverError):
    pass


class EmptySections(QuiverError):
    def __init__(self, index: int):
        super().__init__(f"bundle {index} has no global sections")
        self.index = index


class NoValidOrdering(QuiverError):
    pass


class VertexUnreachable(QuiverError):
    pass


class SuppliedBasisInvalid(QuiverError):
    pass


class PathCapExceeded(RuntimeError):
    pass


def path_cap() -> int:
    raw = os.environ.get("TQ_PATH_CAP")
    return int(raw) if raw else DEFAULT_PATH_CAP


@dataclass(frozen=True)
class Arrow:
    tail: int
    head: int
    label: tuple  # divisor coefficients over the rays of X


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0..nvertices-1``; arrows optionally labelled by divisors."""

    nvertices: int
    arrows: tuple
    bundles: Optional[tuple] = None  # divisor of L_i per vertex, for quivers of sections

    def __post_init__(self):
        object.__setattr__(
            self,
            "arrows",
            tuple(a if isinstance(a, Arrow) else Arrow(int(a[0]), int(a[1]), tuple(a[2]) if len(a) > 2 else ()) for a in self.arrows),
        )

    @property
    def r(self) -> int:
        return self.nvertices - 1

    @property
    def narrows(self) -> int:
        return len(self.arrows)

    def incoming(self, v: int) -> list:
        return [k for k, a in enumerate(self.arrows) if a.head == v]

    def outgoing(self, v: int) -> list:
        return [k for k, a in enumerate(self.arrows) if a.tail == v]

    def permuted(self, order: Sequence[int]) -> "Quiver":
        """Quiver whose ``k``-th arrow is arrow ``order[k]`` of this one."""
        if sorted(order) != list(range(self.narrows)):
            raise ValueError("not a permutation of the arrows")
        return Quiver(self.nvertices, tuple(self.arrows[i] for i in order), self.bundles)

    def is_acyclic(self) -> bool:
        indeg = [0] * self.nvertices
        for a in self.arrows:
            indeg[a.head] += 1
        stack = [v for v in range(self.nvertices) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for k in self.outgoing(v):
                h = self.arrows[k].head
                indeg[h] -= 1
                if indeg[h] == 0:
                    stack.append(h)
        return seen == self.nvertices

    def is_connected(self) -> bool:
        if self.nvertices == 0:
            return True
        adj = {v: set() for v in range(self.nvertices)}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.nvertices

    def sources(self) -> list:
        heads = {a.head for a in self.arrows}
        return [v for v in range(self.nvertices) if v not in heads]

    def is_rooted(self) -> bool:
        return self.sources() == [0]


def incidence_matrix(Q: Quiver) -> IntMatrix:
    """Column ``a`` is ``chi_head(a) - chi_tail(a)``."""
    rows = [[0] * Q.narrows for _ in range(Q.nvertices)]
    for k, a in enumerate(Q.arrows):
        rows[a.head][k] += 1
        rows[a.tail][k] -= 1
    return IntMatrix(rows, Q.narrows)


def circulation_basis(Q: Quiver, supplied: Optional[Sequence[Sequence[int]]] = None) -> LatticeBasis:
    """Basis of ``Cir(Q) = ker(inc)``; HNF-canonical unless a basis is supplied."""
    inc = incidence_matrix(Q)
    kern = lattice.kernel_basis(inc)
    if supplied is None:
        return kern
    rows = [tuple(int(x) for x in r) for r in supplied]
    if any(len(r) != Q.narrows for r in rows):
        raise SuppliedBasisInvalid("supplied circuits have the wrong length")
    if any(any(inc @ r) for r in rows):
        raise SuppliedBasisInvalid("a supplied vector is not a circulation")
    if len(rows) != kern.rank:
        raise SuppliedBasisInvalid(f"expected {kern.rank} circuits, got {len(rows)}")
    # same lattice iff the HNFs agree
    if rows:
        H1 = lattice.image_basis(IntMatrix(rows, Q.narrows).T).basis
        if H1 != kern.basis:
            raise SuppliedBasisInvalid("supplied circuits do not generate Cir(Q)")
    return LatticeBasis(Q.narrows, IntMatrix(rows, Q.narrows))


_WALK_STEP = re.compile(r"a(\d+)(\^-1|\^\{-1\})?")


def parse_walk(text: str, narrows: int) -> tuple:
    """``"a1 a6 a7^-1 a3^-1"`` (1-based arrows) to its vector ``f(walk)``."""
    vec = [0] * narrows
    pos = 0
    s = text.replace(" ", "").replace("*", "")
    while pos < len(s):
        m = _WALK_STEP.match(s, pos)
        if not m:
            raise SuppliedBasisInvalid(f"cannot parse walk {text!r}")
        k = int(m.group(1)) - 1
        if not 0 <= k < narrows:
            raise SuppliedBasisInvalid(f"arrow a{k + 1} out of range")
        vec[k] += -1 if m.group(2) else 1
        pos = m.end()
    return tuple(vec)


def enumerate_paths(Q: Quiver, i: int, j: int, cap: Optional[int] = None) -> list:
    """All paths ``i -> j`` as arrow-index tuples, in lexicographic order."""
    cap = path_cap() if cap is None else cap
    out = []
    if i == j:
        return [()]

    def dfs(v, prefix):
        if v == j:
            out.append(tuple(prefix))
            if len(out) > cap:
                raise PathCapExceeded(f"more than {cap} paths from {i} to {j}")
            return
        for k in Q.outgoing(v):
            prefix.append(k)
            dfs(Q.arrows[k].head, prefix)
            prefix.pop()

    dfs(i, [])
    return sorted(out)


def path_divisor(Q: Quiver, p: Sequence[int]) -> tuple:
    n = len(Q.arrows[0].label) if Q.arrows else 0
    tot = [0] * n
    for k in p:
        for idx, x in enumerate(Q.arrows[k].label):
            tot[idx] += x
    return tuple(tot)


def path_vector(Q: Quiver, p: Sequence[int]) -> tuple:
    """``f(p)`` in ``Z^{Q1}``."""
    v = [0] * Q.narrows
    for k in p:
        v[k] += 1
    return tuple(v)


def spanning_trees_rooted(Q: Quiver) -> list:
    """Arrow-index tuples choosing one incoming arrow at each non-source vertex."""
    choices = []
    for v in range(1, Q.nvertices):
        inc = Q.incoming(v)
        if not inc:
            raise VertexUnreachable(f"vertex {v} has no incoming arrow")
        choices.append(inc)
    return [tuple(sorted(t)) for t in itertools.product(*choices)]


def special_weight(Q: Quiver) -> tuple:
    """``(-r, 1, ..., 1)``."""
    return (-Q.r,) + (1,) * Q.r


# --- quivers of sections ----------------------------------------------------


def _difference(Lj, Li):
    return tuple(a - b for a, b in zip(Lj, Li))


def _section_table(fan: toric.Fan, bundles: Sequence[Sequence[int]]) -> dict:
    n = len(bundles)
    table = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                table[i, j] = toric.global_sections(fan, _difference(bundles[j], bundles[i]))
    return table


def check_bundles(fan: toric.Fan, bundles: Sequence[Sequence[int]]) -> None:
    if not bundles:
        raise QuiverError("empty bundle list")
    for i, b in enumerate(bundles):
        if len(b) != fan.nrays:
            raise QuiverError(f"bundle {i} has {len(b)} coefficients, fan has {fan.nrays} rays")
    if any(bundles[0]):
        raise QuiverError("the first bundle must be the zero divisor (trivial bundle)")
    for i, j in itertools.combinations(range(len(bundles)), 2):
        if toric.linearly_equivalent(fan, bundles[i], bundles[j]) is not None:
            raise DuplicateBundle(f"bundles {i} and {j} define the same class")


def topological_order(fan: toric.Fan, bundles: Sequence[Sequence[int]]) -> list:
    """Order with ``H^0(L_j - L_i) = 0`` whenever ``j < i``; vertex 0 stays first."""
    n = len(bundles)
    edges = {
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and toric.lattice_points(fan, _difference(bundles[j], bundles[i]))
    }
    order = []
    remaining = set(range(n))
    while remaining:
        ready = sorted(v for v in remaining if not any((u, v) in edges for u in remaining if u != v))
        if not ready:
            raise NoValidOrdering("bundle list has no admissible ordering")
        if not order and 0 not in ready:
            raise NoValidOrdering("the trivial bundle cannot come first")
        v = 0 if not order else ready[0]
        order.append(v)
        remaining.remove(v)
    return order


def indecomposable_sections(fan, bundles, i: int, j: int, table: Optional[dict] = None) -> list:
    """Sections of ``L_j - L_i`` not a sum of sections through a third bundle."""
    if table is None:
        table = _section_table(fan, bundles)
    n = len(bundles)
    secs = table[i, j]
    decomposable = set()
    for k in range(n):
        if k in (i, j):
            continue
        first, second = table[i, k], table[k, j]
        if not first or not second:
            continue
        for a in first:
            for b in second:
                decomposable.add(tuple(x + y for x, y in zip(a, b)))
    return [s for s in secs if s not in decomposable]


def complete_quiver_of_sections(fan: toric.Fan, bundles: Sequence[Sequence[int]], reorder: bool = False) -> Quiver:
    """The complete quiver of sections, arrows sorted by (tail, head, label descending)."""
    bundles = [tuple(int(x) for x in b) for b in bundles]
    check_bundles(fan, bundles)
    for i, b in enumerate(bundles):
        if not toric.lattice_points(fan, b):
            raise EmptySections(i)
    order = topological_order(fan, bundles)
    if order != list(range(len(bundles))):
        if not reorder:
            raise NoValidOrdering(f"bundles violate the ordering convention; admissible order: {order}")
        bundles = [bundles[k] for k in order]
    table = _section_table(fan, bundles)
    arrows = []
    n = len(bundles)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for s in indecomposable_sections(fan, bundles, i, j, table):
                arrows.append(Arrow(i, j, s))
    arrows.sort(key=lambda a: (a.tail, a.head, tuple(-x for x in a.label)))
    return Quiver(n, tuple(arrows), tuple(bundles))


def arrow_permutation(Q: Quiver, listing: Sequence[tuple]) -> list:
    """Indices of ``Q``'s arrows matching ``listing = [(tail, head, label), ...]``."""
    index = {(a.tail, a.head, a.label): k for k, a in enumerate(Q.arrows)}
    out = []
    for t, h, lab in listing:
        key = (t, h, tuple(lab))
        if key not in index:
            raise QuiverError(f"no arrow {t}->{h} labelled {list(lab)}")
        out.append(index[key])
    return out


@dataclass(frozen=True)
class Relation:
    canonical: tuple
    other: tuple
    tail: int
    head: int
    divisor: tuple


def all_paths(Q: Quiver, cap: Optional[int] = None) -> dict:
    """``{(i, j): [paths]}`` for ``i != j``."""
    cap = path_cap() if cap is None else cap
    out = {}
    total = 0
    for i in range(Q.nvertices):
        for j in range(Q.nvertices):
            if i != j:
                ps = enumerate_paths(Q, i, j, cap)
                total += len(ps)
                if total > cap:
                    raise PathCapExceeded(f"more than {cap} paths in total")
                if ps:
                    out[i, j] = ps
    return out


def relations(Q: Quiver, cap: Optional[int] = None) -> list:
    """Star pattern: each path paired with the smallest path sharing tail, head and divisor."""
    rels = []
    for (i, j), paths in sorted(all_paths(Q, cap).items()):
        classes: dict = {}
        for p in paths:
            classes.setdefault(path_divisor(Q, p), []).append(p)
        for div, ps in sorted(classes.items()):
            if len(ps) < 2:
                continue
            ps = sorted(ps)
            for p in ps[1:]:
                rels.append(Relation(ps[0], p, i, j, div))
    return rels


def to_dot(Q: Quiver, ray_names: Optional[Sequence[str]] = None) -> str:
    """Graphviz text with monomial labels on the arrows."""
    from .gb import format_monomial

    nrays = len(Q.arrows[0].label) if Q.arrows else 0
    names = ray_names or [f"x{k + 1}" for k in range(nrays)]
    lines = ["digraph Q {", "  rankdir=LR;"]
    for v in range(Q.nvertices):
        lab = str(v)
        if Q.bundles is not None:
            lab += f"\\n{list(Q.bundles[v])}"
        lines.append(f'  {v} [label="{lab}"];')
    for k, a in enumerate(Q.arrows):
        mono = format_monomial(a.label, names) or "1"
        lines.append(f'  {a.tail} -> {a.head} [label="a{k + 1}: {mono}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
