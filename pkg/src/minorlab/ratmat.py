"""Exact rational linear algebra on small dense matrices.

Matrices are lists of lists of Fraction; vectors are lists of Fraction.
Everything here is plain Gaussian elimination over Q with no pivots lost
to rounding, which is the whole point.
"""

from __future__ import annotations

from fractions import Fraction as Q

Matrix = "list[list[Q]]"
Vector = "list[Q]"


def zeros(rows: int, cols: int) -> list[list[Q]]:
    return [[Q(0)] * cols for _ in range(rows)]


def identity(n: int) -> list[list[Q]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Q(1)
    return m


def mat_mul(a: list[list[Q]], b: list[list[Q]]) -> list[list[Q]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c == 0:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] += c * bk[j]
    return out


def mat_vec(a: list[list[Q]], v: list[Q]) -> list[Q]:
    return [sum((c * x for c, x in zip(row, v) if c and x), Q(0)) for row in a]


def mat_eq(a: list[list[Q]], b: list[list[Q]]) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def transpose(a: list[list[Q]]) -> list[list[Q]]:
    return [list(col) for col in zip(*a)] if a else []


def rref(a: list[list[Q]]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Q(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: list[list[Q]]) -> int:
    return len(rref(a)[1])


def nullspace(a: list[list[Q]]) -> list[list[Q]]:
    """Basis of the right kernel, one vector per free column, deterministic."""
    if not a:
        return []
    m, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * cols
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: list[list[Q]], b: list[Q]) -> list[Q] | None:
    """One solution of A x = b with free variables set to zero, or None."""
    if not a:
        return None
    cols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Q(0)] * cols
    for r, p in enumerate(pivots):
        x[p] = m[r][cols]
    return x


def invert(a: list[list[Q]]) -> list[list[Q]]:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m]


class IncrementalRank:
    """Row-echelon accumulator: feed vectors, track the rank so far."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[Q]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec: list[Q]) -> bool:
        """Reduce vec against the basis; returns True if it increased the rank."""
        v = list(vec)
        for row, p in zip(self._rows, self._pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return False
        inv = Q(1) / v[pivot]
        v = [x * inv for x in v]
        self._rows.append(v)
        self._pivots.append(pivot)
        return True
