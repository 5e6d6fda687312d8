"""Independent oracles used by the test suite.

These deliberately avoid the standard-basis machinery: quotient dimensions
are recomputed by plain Gaussian elimination on truncated monomial bases, and
products by a naive convolution over raw dictionaries, so that agreement with
the engine is meaningful evidence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from singinv.localstd import FreeModuleElement
from singinv.poly import Poly


def monomials_up_to(n: int, bound: int) -> List[Tuple[int, ...]]:
    out = []
    for exp in product(range(bound + 1), repeat=n):
        if sum(exp) <= bound:
            out.append(exp)
    return sorted(out)


def _sparse_reduce(rows: List[Dict[int, Fraction]]) -> int:
    """Rank of a sparse rational matrix via ordered elimination."""
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead not in pivots:
                lc = row[lead]
                pivots[lead] = {c: v / lc for c, v in row.items()}
                break
            factor = row[lead]
            for c, v in pivots[lead].items():
                s = row.get(c, Fraction(0)) - factor * v
                if s == 0:
                    row.pop(c, None)
                else:
                    row[c] = s
    return len(pivots)


def jet_quotient_dim(
    gens: Sequence[FreeModuleElement], rank: int, bound: int
) -> int:
    """dim of O^rank / (M + m^{bound+1} O^rank) by brute-force linear algebra.

    Every element of M + m^{bound+1} has, modulo degree > bound, the form
    sum over generators of (monomial multiples of degree <= bound), so the
    quotient dimension is the monomial count minus the rank of those jets.
    """
    if not gens:
        raise ValueError("need generators")
    ring_ = gens[0].ring
    n = ring_.n
    monos = monomials_up_to(n, bound)
    col_index = {}
    for comp in range(rank):
        for m in monos:
            col_index[(comp, m)] = len(col_index)
    rows: List[Dict[int, Fraction]] = []
    for g in gens:
        for alpha in monos:
            row: Dict[int, Fraction] = {}
            for comp, p in enumerate(g.comps):
                for exp, coeff in p.terms.items():
                    shifted = tuple(a + b for a, b in zip(exp, alpha))
                    if sum(shifted) <= bound:
                        row[col_index[(comp, shifted)]] = coeff
            if row:
                rows.append(row)
    return len(col_index) - _sparse_reduce(rows)


def jet_ideal_dim(polys: Sequence[Poly], bound: int) -> int:
    return jet_quotient_dim([FreeModuleElement(p.ring, (p,)) for p in polys], 1, bound)


def stabilized_jet_dim(polys: Sequence[Poly], start: int = 8, limit: int = 16) -> int:
    """Increase the truncation until two consecutive dimensions agree."""
    prev = jet_ideal_dim(polys, start)
    for bound in range(start + 1, limit + 1):
        cur = jet_ideal_dim(polys, bound)
        if cur == prev:
            return cur
        prev = cur
    raise AssertionError(f"jet dimensions did not stabilize below bound {limit}")


def convolution_mul(a: Poly, b: Poly) -> Dict[Tuple[int, ...], Fraction]:
    """Naive term-by-term convolution over the raw dictionaries."""
    out: Dict[Tuple[int, ...], Fraction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c != 0}
