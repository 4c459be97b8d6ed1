"""Exact linear algebra over the rationals: inversion, signature, basis selection.

All matrices are tuples of tuples of Fraction; nothing here ever sees a float.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateMetricError

_F0 = Fraction(0)
_F1 = Fraction(1)


def freeze(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n):
    return tuple(tuple(_F1 if i == j else _F0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), _F0) for j in range(p))
        for i in range(n)
    )


def transpose(a):
    return tuple(tuple(row[i] for row in a) for i in range(len(a[0])))


def mat_vec(a, v):
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), _F0) for i in range(len(a)))


def invert(rows):
    """Exact inverse by Gauss-Jordan elimination; raises on a singular matrix."""
    n = len(rows)
    a = [list(r) for r in rows]
    inv = [list(r) for r in identity(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise DegenerateMetricError("matrix is singular over the rationals")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return freeze(inv)


def signature(rows):
    """Signature (positives, negatives) of a symmetric matrix by rational
    congruence reduction (Sylvester's law); raises if the form is degenerate."""
    n = len(rows)
    a = [list(r) for r in rows]
    p = q = 0
    for k in range(n):
        if not a[k][k]:
            swap = next((j for j in range(k + 1, n) if a[j][j]), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is None:
                    raise DegenerateMetricError("symmetric form is degenerate")
                # hyperbolic pair: add row/col j into k to create a diagonal pivot
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] = row[k] + row[j]
        piv = a[k][k]
        if piv > 0:
            p += 1
        else:
            q += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] = row[i] - f * row[k]
    return (p, q)


def select_independent(vectors, need):
    """Pick the first `need` linearly independent vectors, in input order."""
    chosen = []
    reduced = []  # row-echelon copies of the chosen vectors
    for v in vectors:
        w = list(v)
        for r in reduced:
            lead = next(i for i, x in enumerate(r) if x)
            if w[lead]:
                f = w[lead] / r[lead]
                w = [x - f * y for x, y in zip(w, r)]
        if any(w):
            chosen.append(tuple(v))
            reduced.append(w)
            if len(chosen) == need:
                return chosen
    raise DegenerateMetricError("could not select enough independent vectors")


def solve_single(coeffs, rhs):
    """One solution of a single linear equation coeffs . x = rhs, putting the
    whole weight on the smallest-index nonzero coefficient."""
    for i, c in enumerate(coeffs):
        if c:
            x = [_F0] * len(coeffs)
            x[i] = Fraction(rhs) / c
            return tuple(x)
    raise DegenerateMetricError("equation has identically zero left-hand side")
