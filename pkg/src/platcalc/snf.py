"""Smith normal form over the integers, with the transforms kept.

The decomposition is D = U·A·V with U, V unimodular and D diagonal whose
nonzero entries form a divisibility chain.  V is needed downstream to
reduce vectors into the cokernel, so this cannot be outsourced to a
float-based routine.
"""

from __future__ import annotations

import dataclasses

Matrix = tuple[tuple[int, ...], ...]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _freeze(rows: list[list[int]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols))
        for row in a
    )


@dataclasses.dataclass(frozen=True, slots=True)
class SmithDecomposition:
    u: Matrix
    d: Matrix
    v: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        rows = len(self.d)
        cols = len(self.d[0]) if rows else 0
        return tuple(self.d[i][i] for i in range(min(rows, cols)))


def smith_normal_form(rows) -> SmithDecomposition:
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("matrix rows must have equal length")
    u = _identity(m)
    v = _identity(n)

    def row_sub(i: int, t: int, q: int) -> None:
        for c in range(n):
            a[i][c] -= q * a[t][c]
        for c in range(m):
            u[i][c] -= q * u[t][c]

    def col_sub(j: int, t: int, q: int) -> None:
        for r in range(m):
            a[r][j] -= q * a[r][t]
        for r in range(n):
            v[r][j] -= q * v[r][t]

    t = 0
    while t < m and t < n:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            a[pivot[0]], a[t] = a[t], a[pivot[0]]
            u[pivot[0]], u[t] = u[t], u[pivot[0]]
        if pivot[1] != t:
            j = pivot[1]
            for r in range(m):
                a[r][j], a[r][t] = a[r][t], a[r][j]
            for r in range(n):
                v[r][j], v[r][t] = v[r][t], v[r][j]
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                if q:
                    row_sub(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                if q:
                    col_sub(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue  # smaller remainders appeared; re-pick the pivot
        d = a[t][t]
        offender = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % d),
            None,
        )
        if offender is not None:
            row_sub(t, offender, -1)  # pull the bad row up, then restart
            continue
        t += 1
    for i in range(min(m, n)):
        if a[i][i] < 0:
            for c in range(n):
                a[i][c] = -a[i][c]
            for c in range(m):
                u[i][c] = -u[i][c]
    return SmithDecomposition(_freeze(u), _freeze(a), _freeze(v))


def invariant_factors(rows) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, in divisibility order."""
    return tuple(d for d in smith_normal_form(rows).diagonal if d != 0)
