"""Reference data for the worked examples, transcribed once and shared by the tests."""

from functools import lru_cache

from tq import catalog, moduli, quiver
from tq.gb import Ideal, PolyRing

# 1-based arrow variables y1..yn in the listed arrow numbering
F2_IQ = ["y2*y4-y1*y5", "y1*y6-y3*y7", "y2*y6-y3*y8", "y2*y7-y1*y8", "y5*y7-y4*y8"]
F2_IR = ["y2*y4-y1*y5", "y4*y8-y5*y7", "y2*y6-y3*y8", "y1*y6-y3*y7"]
F2_RAYS = [
    [1, -1, 0, 0, 0, 0, 0, 0],
    [1, 0, -1, 1, 0, 0, 0, 0],
    [1, 0, -1, 0, 1, 0, 0, 0],
    [1, 0, -1, 0, 0, 1, -1, 0],
    [1, 0, -1, 0, 0, 1, 0, -1],
]
F1_RAYS = [[1, 0, -1, 0], [0, 1, 1, -1]]

P1_O2_IQ_ZERO_BASED = ["y0*y2-y1^2"]
P1_FINE_IQ = ["y2^2-y1*y3", "y5^2-y4*y6", "y3*y5-y2*y6", "y2*y5-y1*y6", "y3*y4-y1*y6", "y2*y4-y1*y5"]
P1_FINE_IR = ["y3*y5-y2*y6", "y3*y4-y2*y5", "y2*y5-y1*y6", "y2*y4-y1*y5"]

THREEFOLD_IQ = [
    "y9*y13-y8*y14", "y2*y13-y1*y14", "y9*y12-y7*y14", "y8*y12-y7*y13", "y5*y10-y4*y11",
    "y2*y8-y1*y9", "y5*y7-y6*y11", "y4*y7-y6*y10", "y2*y6-y3*y9", "y1*y6-y3*y8",
    "y2*y5*y12-y3*y11*y14", "y1*y5*y12-y3*y11*y13", "y2*y4*y12-y3*y10*y14", "y1*y4*y12-y3*y10*y13",
]
THREEFOLD_IR = [
    "y9*y12-y7*y14", "y8*y12-y7*y13", "y5*y7-y6*y11", "y4*y7-y6*y10", "y2*y6-y3*y9",
    "y1*y6-y3*y8", "y9*y11*y13-y8*y11*y14", "y9*y10*y13-y8*y10*y14", "y5*y9*y10-y4*y9*y11",
    "y5*y8*y10-y4*y8*y11", "y2*y5*y8-y1*y5*y9", "y2*y4*y8-y1*y4*y9",
]
# the four components other than I_Q in the displayed decomposition of I_R
THREEFOLD_COMPONENTS = [
    ["y12", "y11", "y10", "y7", "y2*y8-y1*y9", "y2*y6-y3*y9", "y1*y6-y3*y8"],
    ["y6", "y5", "y4", "y3", "y9*y13-y8*y14", "y9*y12-y7*y14", "y8*y12-y7*y13"],
    ["y12", "y11", "y10", "y7", "y6", "y5", "y4", "y3"],
    ["y9", "y8", "y7", "y6"],
]

# arrow tables (tail, head, 1-based ray monomial) in the listed numbering
F1_ARROWS = [(0, 1, "x1"), (1, 2, "x2"), (0, 1, "x3"), (0, 2, "x4")]
F2_ARROWS = [
    (0, 1, "x1"), (0, 1, "x3"), (0, 2, "x4"), (1, 2, "x1*x2"),
    (1, 2, "x2*x3"), (1, 3, "x4"), (2, 3, "x1"), (2, 3, "x3"),
]
THREEFOLD_ARROWS = [
    (0, 1, "x2"), (0, 1, "x5"), (0, 2, "x3"), (1, 2, "x1"), (1, 2, "x4"),
    (1, 3, "x3"), (2, 4, "x3"), (2, 3, "x2"), (2, 3, "x5"), (3, 4, "x1"),
    (3, 4, "x4"), (3, 5, "x3"), (4, 5, "x2"), (4, 5, "x5"),
]

LIST_NAMES = ["paper:f1-list", "paper:f2-list", "paper:p1-o2", "paper:p1-fine", "paper:threefold-list"]


def ring_for(n, start=1):
    return PolyRing.indexed("y", n, start)


def ideal(ring, gens):
    return Ideal(ring, list(gens))


def monomial_of(label, nrays):
    """``"x1*x2^2"`` to an exponent vector."""
    e = [0] * nrays
    for part in label.split("*"):
        base, _, exp = part.partition("^")
        e[int(base[1:]) - 1] += int(exp or 1)
    return tuple(e)


@lru_cache(maxsize=None)
def example(name):
    """``(fan, bundles, Q)`` with arrows in the listed numbering when one is stored."""
    bl = catalog.bundle_list(name)
    fan = catalog.fan(bl.fan)
    Q = quiver.complete_quiver_of_sections(fan, bl.bundles)
    if bl.arrow_order is not None:
        Q = Q.permuted(quiver.arrow_permutation(Q, bl.arrow_order))
    return fan, bl.bundles, Q


@lru_cache(maxsize=None)
def fine_report(name):
    fan, bundles, Q = example(name)
    return moduli.is_fine(fan, bundles, Q=Q)

# stacked (inc, div) matrices, one column per arrow
F1_PI = [
    [-1, 0, -1, -1], [1, -1, 1, 0], [0, 1, 0, 1],
    [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
]
F2_PI = [
    [-1, -1, -1, 0, 0, 0, 0, 0],
    [1, 1, 0, -1, -1, -1, 0, 0],
    [0, 0, 1, 1, 1, 0, -1, -1],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 1, 0, 0],
]
P1_O2_PI = [[-1, -1, -1], [1, 1, 1], [2, 1, 0], [0, 1, 2]]
