"""Exact linear algebra over Q(t).

Rows are sparse dicts ``column -> value``; dense matrices are lists of
lists.  All arithmetic is exact, so no pivoting strategy beyond
"first nonzero" is needed.
"""
from __future__ import annotations

from flint import fmpq

from .errors import LinearlyDependent

ZERO = fmpq(0)
ONE = fmpq(1)


class RowReducer:
    """Incremental reduced row echelon form over sparse rows.

    Pivot rows are kept fully reduced against each other, so reducing a new
    row takes a single pass over its pivot columns.
    """

    def __init__(self, key=None):
        self.pivots: dict = {}  # column -> row with 1 at the column
        self.key = key

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        r = {c: v for c, v in row.items() if v}
        for c in [c for c in r if c in self.pivots]:
            f = r.get(c)
            if not f:
                continue
            for c2, v2 in self.pivots[c].items():
                nv = r.get(c2, ZERO) - f * v2
                if nv:
                    r[c2] = nv
                else:
                    r.pop(c2, None)
        return r

    def add(self, row: dict):
        """Insert a row; returns the new pivot column or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        c = min(r, key=self.key) if self.key else min(r)
        inv = ONE / r[c]
        r = {k: v * inv for k, v in r.items()}
        for pr in self.pivots.values():
            f = pr.get(c)
            if f:
                for c2, v2 in r.items():
                    nv = pr.get(c2, ZERO) - f * v2
                    if nv:
                        pr[c2] = nv
                    else:
                        pr.pop(c2, None)
        self.pivots[c] = r
        return c

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def _sparse(row) -> dict:
    if isinstance(row, dict):
        return row
    return {j: v for j, v in enumerate(row) if v}


def rank(rows) -> int:
    rr = RowReducer()
    for r in rows:
        rr.add(_sparse(r))
    return len(rr)


def rref(rows):
    rr = RowReducer()
    for r in rows:
        rr.add(_sparse(r))
    return rr


def nullspace(rows, ncols: int) -> list:
    """Basis of {v in K^ncols : row . v = 0 for every row}, as dense lists."""
    rr = rref(rows)
    free = [j for j in range(ncols) if j not in rr.pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for c, pr in rr.pivots.items():
            x = pr.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def sparse_nullspace(rows, columns: list) -> list:
    """Nullspace over an explicit list of column keys; vectors are dicts."""
    idx = {c: k for k, c in enumerate(columns)}
    rr = RowReducer(key=idx.__getitem__)
    for r in rows:
        rr.add(r)
    out = []
    for f in columns:
        if f in rr.pivots:
            continue
        v = {f: ONE}
        for c, pr in rr.pivots.items():
            x = pr.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


def solve(A, b):
    """One solution x of A x = b (dense), or None."""
    n = len(A[0]) if A else 0
    rows = []
    for i, row in enumerate(A):
        r = _sparse(row)
        if b[i]:
            r = dict(r)
            r[n] = b[i]
        rows.append(r)
    rr = rref(rows)
    if n in rr.pivots:
        return None
    x = [ZERO] * n
    for c, pr in rr.pivots.items():
        x[c] = pr.get(n, ZERO)
    return x


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list:
    return [[ZERO] * n for _ in range(m)]


def mat_mul(A, B) -> list:
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * n
        for k, a in enumerate(row):
            if not a:
                continue
            for j, bv in enumerate(B[k]):
                if bv:
                    acc[j] = acc[j] + a * bv
        out.append(acc)
    return out


def mat_add(A, B) -> list:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B) -> list:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c) -> list:
    return [[a * c for a in row] for row in A]


def transpose(A) -> list:
    return [list(r) for r in zip(*A)] if A else []


def mat_vec(A, v) -> list:
    out = []
    for row in A:
        s = ZERO
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def is_zero_matrix(A) -> bool:
    return all(not a for row in A for a in row)


def mat_equal(A, B) -> bool:
    return all(not (a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def det(M):
    n = len(M)
    A = [list(r) for r in M]
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        inv = ONE / piv
        for r in range(c + 1, n):
            f = A[r][c]
            if f:
                f = f * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def inverse(M):
    """Inverse of a square matrix, or None if singular."""
    n = len(M)
    rows = [{**_sparse(M[i]), n + i: ONE} for i in range(n)]
    rr = rref(rows)
    if any(c not in rr.pivots for c in range(n)):
        return None
    return [[rr.pivots[i].get(n + j, ZERO) for j in range(n)] for i in range(n)]


def independent_subset(vectors) -> list:
    """Indices of a maximal linearly independent subsequence."""
    rr = RowReducer()
    return [k for k, v in enumerate(vectors) if rr.add(_sparse(v)) is not None]


def check_independent(vectors):
    if len(independent_subset(vectors)) != len(vectors):
        raise LinearlyDependent("vectors are linearly dependent")


def span_basis(vectors) -> list:
    """An echelon basis of the span (dense lists)."""
    if not vectors:
        return []
    n = len(vectors[0])
    rr = rref(vectors)
    return [[pr.get(j, ZERO) for j in range(n)] for _, pr in sorted(rr.pivots.items())]


def complete_basis(vectors, n: int) -> list:
    """Extend independent ``vectors`` by standard basis vectors to a basis of K^n."""
    rr = RowReducer()
    out = []
    for v in vectors:
        if rr.add(_sparse(v)) is None:
            raise LinearlyDependent("cannot complete a dependent family")
        out.append(list(v))
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        if rr.add({j: ONE}) is not None:
            out.append(e)
    return out


def in_span(vectors, v) -> bool:
    rr = rref(vectors)
    return rr.contains(_sparse(v))


def coordinates(basis, v):
    """Coefficients c with sum c_k basis[k] = v, or None."""
    if not basis:
        return [] if all(not x for x in v) else None
    return solve(transpose(basis), v)
