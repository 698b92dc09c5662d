"""Exact integer linear algebra.

Everything here works over Python's arbitrary-precision ``int`` and
``fractions.Fraction``; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.entries],
                other.cols,
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix(self.entries + other.entries, self.cols)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[r[j] for j in idx] for r in self.entries], len(idx))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of Z^ambient_dim given by linearly independent rows."""

    ambient_dim: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return self.basis.rows

    def vectors(self) -> list:
        return [tuple(r) for r in self.basis.entries]


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


# --- normal forms -----------------------------------------------------------


def hermite_normal_form(A) -> tuple:
    """Row-style HNF.  Returns ``(H, U)`` with ``U @ A == H`` and ``U`` unimodular.

    Pivots of ``H`` are positive and the entries above each pivot lie in
    ``[0, pivot)``; zero rows sit at the bottom.
    """
    A = _as_matrix(A)
    m, n = A.shape
    H = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivot_row = 0
    pivots = []
    for col in range(n):
        if pivot_row >= m:
            break
        # gcd-combine everything below into pivot_row
        for i in range(pivot_row + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[pivot_row][col], H[i][col]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [x y; -q p] has det 1
            r1 = [x * u + y * v for u, v in zip(H[pivot_row], H[i])]
            r2 = [-q * u + p * v for u, v in zip(H[pivot_row], H[i])]
            H[pivot_row], H[i] = r1, r2
            u1 = [x * u + y * v for u, v in zip(U[pivot_row], U[i])]
            u2 = [-q * u + p * v for u, v in zip(U[pivot_row], U[i])]
            U[pivot_row], U[i] = u1, u2
        if H[pivot_row][col] == 0:
            continue
        if H[pivot_row][col] < 0:
            H[pivot_row] = [-x for x in H[pivot_row]]
            U[pivot_row] = [-x for x in U[pivot_row]]
        piv = H[pivot_row][col]
        for i in range(pivot_row):
            f = H[i][col] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[pivot_row])]
                U[i] = [u - f * v for u, v in zip(U[i], U[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return IntMatrix(H, n), IntMatrix(U, m)


def _xgcd(a: int, b: int) -> tuple:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``a*x + b*y = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(A) -> tuple:
    """Return ``(invariant_factors, U, V)`` with ``U @ A @ V`` diagonal.

    The invariant factors are the nonzero diagonal entries
    ``d1 | d2 | ...``, all positive.
    """
    A = _as_matrix(A)
    m, n = A.shape
    S = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    a, b = S[t][t], S[i][t]
                    g, x, y = (a, 1, 0) if b % a == 0 else _xgcd(a, b)
                    p, q = a // g, b // g
                    S[t], S[i] = (
                        [x * u + y * v for u, v in zip(S[t], S[i])],
                        [-q * u + p * v for u, v in zip(S[t], S[i])],
                    )
                    U[t], U[i] = (
                        [x * u + y * v for u, v in zip(U[t], U[i])],
                        [-q * u + p * v for u, v in zip(U[t], U[i])],
                    )
                    changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    a, b = S[t][t], S[t][j]
                    g, x, y = (a, 1, 0) if b % a == 0 else _xgcd(a, b)
                    p, q = a // g, b // g
                    for M in (S, V):
                        for r in M:
                            r[t], r[j] = x * r[t] + y * r[j], -q * r[t] + p * r[j]
                    changed = True
            if not changed:
                # enforce divisibility by the rest of the block
                piv = S[t][t]
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                S[t] = [u + v for u, v in zip(S[t], S[i])]
                U[t] = [u + v for u, v in zip(U[t], U[i])]
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = [S[i][i] for i in range(min(m, n)) if S[i][i] != 0]
    return factors, IntMatrix(U, m), IntMatrix(V, n)


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = _as_matrix(A)
    n = A.rows
    if n != A.cols:
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    M = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A) -> int:
    A = _as_matrix(A)
    if A.rows == 0 or A.cols == 0:
        return 0
    H, _ = hermite_normal_form(A)
    return sum(1 for r in H.entries if any(r))


def kernel_basis(A) -> LatticeBasis:
    """Saturated basis of ``{u in Z^cols : A u = 0}``, rows in HNF."""
    A = _as_matrix(A)
    n = A.cols
    if A.rows == 0:
        return LatticeBasis(n, IntMatrix.identity(n))
    H, U = hermite_normal_form(A.T)
    kern = [U.row(i) for i in range(H.rows) if not any(H.row(i))]
    if not kern:
        return LatticeBasis(n, IntMatrix([], n))
    K, _ = hermite_normal_form(kern)
    return LatticeBasis(n, IntMatrix([r for r in K.entries if any(r)], n))


def image_basis(A) -> LatticeBasis:
    """HNF basis of the lattice spanned by the columns of ``A``."""
    A = _as_matrix(A)
    H, _ = hermite_normal_form(A.T)
    return LatticeBasis(A.rows, IntMatrix([r for r in H.entries if any(r)], A.rows))


def solve_integer(A, b: Sequence[int]) -> Optional[tuple]:
    """Some integer ``u`` with ``A u = b``, or ``None`` if none exists."""
    A = _as_matrix(A)
    b = [int(x) for x in b]
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    H, U = hermite_normal_form(A.T)
    # A @ U.T == H.T, so b must be an integer combination of the rows of H
    z = [0] * H.rows
    rem = list(b)
    for i in range(H.rows):
        row = H.row(i)
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            break
        q, r = divmod(rem[piv], row[piv])
        if r:
            return None
        z[i] = q
        if q:
            rem = [x - q * y for x, y in zip(rem, row)]
    if any(rem):
        return None
    return tuple(U.T @ z)


def solve_rational(A, b: Sequence) -> Optional[tuple]:
    """Some rational ``x`` with ``A x = b`` (Gauss-Jordan over Q), or ``None``."""
    A = _as_matrix(A)
    m, n = A.shape
    M = [[Fraction(x) for x in A.row(i)] + [Fraction(b[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    if any(M[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][n]
    return tuple(x)


# --- exact linear programming -----------------------------------------------


def feasible_nonnegative(A_rows: Sequence[Sequence], b: Sequence) -> Optional[tuple]:
    """Find ``x >= 0`` with ``A x = b`` by exact phase-one simplex (Bland's rule).

    Returns a feasible point or ``None``.
    """
    m = len(A_rows)
    if m == 0:
        return ()
    n = len(A_rows[0])
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A_rows[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # phase-one objective: minimise the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] -= T[i][j]
    for j in range(n, n + m):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded; cannot happen for phase one
            break
        _, leave = best
        pv = T[leave][enter]
        T[leave] = [x / pv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, T[leave])]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    x = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        x[bv] = T[i][width]
    if any(x[j] != 0 for j in range(n, width)):
        return None
    return tuple(x[:n])


def cone_membership(generators: Sequence[Sequence], point: Sequence, strict: bool = False) -> bool:
    """Does ``point`` lie in the cone spanned by ``generators``?

    With ``strict`` the question is membership in the relative interior,
    i.e. whether ``point`` is a combination with every coefficient > 0.
    """
    dim = len(point)
    gens = [list(g) for g in generators]
    if any(len(g) != dim for g in gens):
        raise ValueError("dimension mismatch")
    if not gens:
        return all(Fraction(x) == 0 for x in point)
    k = len(gens)
    if not strict:
        A = [[gens[j][i] for j in range(k)] for i in range(dim)]
        return feasible_nonnegative(A, point) is not None
    # sum_j (1 + mu_j) g_j - (1 + s) p = 0 with mu, s >= 0
    A = [[gens[j][i] for j in range(k)] + [-Fraction(point[i])] for i in range(dim)]
    rhs = [Fraction(point[i]) - sum(Fraction(g[i]) for g in gens) for i in range(dim)]
    return feasible_nonnegative(A, rhs) is not None


def irredundant_inequalities(ineqs: Sequence[Sequence]) -> list:
    """Drop duplicate and redundant linear forms from ``{x : a . x >= 0}``.

    A form is redundant when it is a nonnegative combination of the
    remaining ones (Farkas); the test is an exact LP.
    """
    uniq = []
    seen = set()
    for a in ineqs:
        a = tuple(Fraction(x) for x in a)
        if not any(a):
            continue
        g = _normalise_direction(a)
        if g not in seen:
            seen.add(g)
            uniq.append(g)
    keep = list(uniq)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if others and cone_membership(others, keep[i]):
            keep = others
        else:
            i += 1
    return keep


def _normalise_direction(a: Sequence[Fraction]) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    from math import gcd, lcm

    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)
