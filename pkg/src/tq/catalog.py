"""Built-in fans and bundle lists, including the worked examples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .toric import Fan


class UnknownName(KeyError):
    pass


def projective_space(n: int) -> Fan:
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, rays, cones, True)


def hirzebruch(a: int) -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)], True)


def threefold_flop() -> Fan:
    """Smooth projective threefold with five rays, one side of a flop."""
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, -1), (0, 1, 1), (1, 0, 1)]
    cones = [(0, 1, 2), (0, 1, 3), (1, 2, 3), (0, 2, 4), (0, 3, 4), (2, 3, 4)]
    return Fan(3, rays, cones, True)


@dataclass(frozen=True)
class BundleList:
    fan: str
    bundles: tuple
    description: str
    arrow_order: Optional[tuple] = None  # (tail, head, label) for a1, a2, ...
    circuits: Optional[tuple] = None  # walk strings in the numbering above


def _O(k, l, ray_k, ray_l, n):
    v = [0] * n
    v[ray_k] += k
    v[ray_l] += l
    return tuple(v)


def _f1_list():
    b = (_O(0, 0, 0, 3, 4), _O(1, 0, 0, 3, 4), _O(0, 1, 0, 3, 4))
    order = (
        (0, 1, (1, 0, 0, 0)),
        (1, 2, (0, 1, 0, 0)),
        (0, 1, (0, 0, 1, 0)),
        (0, 2, (0, 0, 0, 1)),
    )
    return BundleList("hirzebruch:1", b, "O, O(1,0), O(0,1) on F_1", order, ("a1 a3^-1", "a3 a2 a4^-1"))


def _f2_list():
    b = tuple(_O(k, l, 0, 3, 4) for k, l in [(0, 0), (1, 0), (0, 1), (1, 1)])
    circuits = ("a1 a2^-1", "a1 a4 a3^-1", "a1 a5 a3^-1", "a1 a6 a7^-1 a3^-1", "a1 a6 a8^-1 a3^-1")
    return BundleList("hirzebruch:2", b, "O, O(1,0), O(0,1), O(1,1) on F_2", None, circuits)


def _threefold_list():
    # O(k, l) = k D3 + l D2 (1-based ray labels)
    b = tuple(_O(k, l, 2, 1, 5) for k, l in [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)])

    def x(*idx):
        v = [0] * 5
        for i in idx:
            v[i - 1] += 1
        return tuple(v)

    order = (
        (0, 1, x(2)), (0, 1, x(5)), (0, 2, x(3)), (1, 2, x(1)), (1, 2, x(4)),
        (1, 3, x(3)), (2, 4, x(3)), (2, 3, x(2)), (2, 3, x(5)), (3, 4, x(1)),
        (3, 4, x(4)), (3, 5, x(3)), (4, 5, x(2)), (4, 5, x(5)),
    )
    return BundleList("threefold-flop", b, "O, O(0,1), O(1,0), O(1,1), O(2,0), O(2,1) on the flop threefold", order)


FANS = {
    "projective:1": lambda: projective_space(1),
    "projective:2": lambda: projective_space(2),
    "projective:3": lambda: projective_space(3),
    "hirzebruch:0": lambda: hirzebruch(0),
    "hirzebruch:1": lambda: hirzebruch(1),
    "hirzebruch:2": lambda: hirzebruch(2),
    "hirzebruch:3": lambda: hirzebruch(3),
    "threefold-flop": threefold_flop,
}

BUNDLE_LISTS = {
    "paper:f1-list": _f1_list,
    "paper:f2-list": _f2_list,
    "paper:p1-o2": lambda: BundleList("projective:1", ((0, 0), (2, 0)), "O, O(2) on P^1"),
    "paper:p1-fine": lambda: BundleList("projective:1", ((0, 0), (2, 0), (4, 0)), "O, O(2), O(4) on P^1"),
    "paper:threefold-list": _threefold_list,
}


def names() -> list:
    return sorted(FANS) + sorted(BUNDLE_LISTS)


def fan(name: str) -> Fan:
    if name not in FANS:
        raise UnknownName(name)
    return FANS[name]()


def bundle_list(name: str) -> BundleList:
    if name not in BUNDLE_LISTS:
        raise UnknownName(name)
    return BUNDLE_LISTS[name]()


def emit(name: str) -> dict:
    """JSON-ready fixture: a FanFile for fans, a BundleListFile (plus fan name) for lists."""
    if name in FANS:
        return fan(name).to_json()
    bl = bundle_list(name)
    out = {"fan": bl.fan, "bundles": [list(b) for b in bl.bundles], "description": bl.description}
    if bl.arrow_order is not None:
        out["arrow_order"] = [[t, h, list(lab)] for t, h, lab in bl.arrow_order]
    if bl.circuits is not None:
        out["circuits"] = list(bl.circuits)
    return out
