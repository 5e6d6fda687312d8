"""Small exact linear algebra over Fraction for the vector-field layers.

Matrices are lists of lists of Fraction.  Everything here is dense and
intended for the small systems that appear in linear-part computations,
eigenvalue extraction and weight feasibility (dimensions in the tens).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]
Vector = List[Fraction]


def _as_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * cols for _ in range(rows)]
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


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), start=Fraction(0))
            for row in a]


def rref(rows: Sequence[Sequence[int | Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = _as_matrix(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[int | Fraction]], ncols: int | None = None) -> List[Vector]:
    """Basis of the right kernel {v : A v = 0}."""
    m = _as_matrix(rows)
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    if not m:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
                for j in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis: List[Vector] = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> Optional[Vector]:
    """One exact solution of A x = b, or None if inconsistent."""
    m = _as_matrix(rows)
    b = [Fraction(x) for x in rhs]
    if not m:
        return [] if all(x == 0 for x in b) else None
    ncols = len(m[0])
    aug = [row + [bv] for row, bv in zip(m, b)]
    red, pivots = rref(aug)
    for r in range(len(red)):
        if all(red[r][c] == 0 for c in range(ncols)) and red[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = red[r][ncols]
    return x


def inverse(rows: Sequence[Sequence[int | Fraction]]) -> Optional[Matrix]:
    m = _as_matrix(rows)
    n = len(m)
    aug = [m[i] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def row_space_basis(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    red, pivots = rref(rows)
    return [red[i] for i in range(len(pivots))]


def in_row_space(rows: Matrix, v: Sequence[Fraction]) -> bool:
    base = rank(rows) if rows else 0
    return rank(list(rows) + [list(v)]) == base


# -- characteristic polynomial and rational eigenvalues ---------------------


def charpoly(a: Sequence[Sequence[int | Fraction]]) -> List[Fraction]:
    """Monic characteristic polynomial of A via the Faddeev-LeVerrier recursion.

    Returns coefficients [1, c_1, ..., c_n] of det(tI - A) in descending powers.
    """
    m = _as_matrix(a)
    n = len(m)
    coeffs = [Fraction(1)]
    mk = identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] += ck
    return coeffs


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Split off all rational roots (with multiplicity).

    Returns (roots, residual) where residual is the monic cofactor without
    rational roots (an empty list denotes the constant 1, i.e. full split).
    """
    work = [Fraction(c) for c in coeffs]
    while work and work[0] == 0:
        work.pop(0)
    if not work:
        raise ValueError("zero polynomial")
    roots: List[Fraction] = []
    # Strip roots at zero first.
    while len(work) > 1 and work[-1] == 0:
        roots.append(Fraction(0))
        work.pop()
    while len(work) > 1:
        # Clear denominators to apply the rational root test.
        from math import lcm

        denom = lcm(*[c.denominator for c in work]) if len(work) > 1 else 1
        ints = [int(c * denom) for c in work]
        lead, const = ints[0], ints[-1]
        if const == 0:
            roots.append(Fraction(0))
            work = work[:-1]
            continue
        found = None
        for p in _divisors(const):
            for q in _divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly_eval(work, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # Synthetic division by (t - found).
        new = [work[0]]
        for c in work[1:-1]:
            new.append(c + new[-1] * found)
        work = new
    if len(work) == 1:
        residual: List[Fraction] = []
    else:
        lead = work[0]
        residual = [c / lead for c in work]
    return sorted(roots), residual
