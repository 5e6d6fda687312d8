"""Vector-field modules attached to a pair (f, X).

Builds the module of logarithmic vector fields of X (derivations preserving
the ideal of X), the Hamiltonian module of a function (the kernel of df),
pair-Jacobian minor ideals, and the space of linear parts of origin-vanishing
fields in a given module.  Ideals of varieties are taken as given by the
user's generators; no radical computation is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .localstd import (
    FreeModuleElement,
    LocalOrdering,
    interreduce,
    standard_basis_ideal,
    syzygies,
)
from .poly import Poly, PolyRing, VectorField

Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class GermPair:
    """A function germ f together with generators of the ideal of X."""

    f: Poly
    xgens: Tuple[Poly, ...]

    def __post_init__(self) -> None:
        if not self.xgens:
            raise ValueError("need at least one generator for the ideal of X")
        ring_ = self.f.ring
        for h in self.xgens:
            if h.ring != ring_:
                raise ValueError("pair members live in different ring contexts")
            if h.constant_term() != 0:
                raise ValueError(
                    f"ideal generator does not vanish at the origin: {h.format()}"
                )
        if self.f.constant_term() != 0:
            raise ValueError("f does not vanish at the origin")

    @property
    def ring(self) -> PolyRing:
        return self.f.ring


def _field_from_components(ring_: PolyRing, comps: Sequence[Poly]) -> VectorField:
    return VectorField(ring_, comps)


def hamiltonian_module(f: Poly) -> List[VectorField]:
    """Generators of ker(df): the antisymmetric fields f_{x_i} d_j - f_{x_j} d_i."""
    ring_ = f.ring
    n = ring_.n
    if n < 2:
        raise ValueError("the Hamiltonian module needs at least two variables")
    partials = [f.diff(i) for i in range(n)]
    out: List[VectorField] = []
    for i in range(n):
        for j in range(i + 1, n):
            comps = [ring_.zero()] * n
            comps[j] = partials[i]
            comps[i] = -partials[j]
            eta = VectorField(ring_, comps)
            if not eta.is_zero():
                out.append(eta)
    return out


def logarithmic_module(
    xgens: Sequence[Poly], ordering: LocalOrdering | None = None
) -> List[VectorField]:
    """Generators of the module of derivations preserving the ideal <xgens>.

    A field delta is logarithmic iff delta(h_j) = sum_k a_{jk} h_k for some
    matrix (a_{jk}); the module is the projection to the delta-block of the
    relation module of the columns (dh_j/dx_i)_j and (-h_k e_j)_{jk}.
    """
    xgens = [h for h in xgens]
    if not xgens:
        raise ValueError("need at least one ideal generator")
    ring_ = xgens[0].ring
    n = ring_.n
    m = len(xgens)
    for h in xgens:
        if h.constant_term() != 0:
            raise ValueError(f"generator does not vanish at the origin: {h.format()}")
    columns: List[FreeModuleElement] = []
    for i in range(n):
        columns.append(FreeModuleElement(ring_, [h.diff(i) for h in xgens]))
    for j in range(m):
        for k in range(m):
            comps = [ring_.zero()] * m
            comps[j] = -xgens[k]
            columns.append(FreeModuleElement(ring_, comps))
    relations = syzygies(columns, ordering)
    fields: List[VectorField] = []
    for rel in relations:
        delta = VectorField(ring_, rel.comps[:n])
        if not delta.is_zero():
            fields.append(delta)
    reduced = interreduce([FreeModuleElement(ring_, d.coefficients) for d in fields], ordering)
    result = [VectorField(ring_, e.comps) for e in reduced]
    _verify_logarithmic(result, xgens, ordering)
    return result


def _verify_logarithmic(
    fields: Sequence[VectorField], xgens: Sequence[Poly], ordering: LocalOrdering | None
) -> None:
    sb = standard_basis_ideal(list(xgens), ordering)
    for delta in fields:
        for h in xgens:
            image = delta.apply(h)
            if image.is_zero():
                continue
            if not sb.contains(FreeModuleElement(h.ring, (image,))):
                raise AssertionError("logarithmic field fails to preserve the ideal")


def logarithmic_module_of_pair(pair: GermPair, ordering: LocalOrdering | None = None) -> List[VectorField]:
    return logarithmic_module(pair.xgens, ordering)


def tangent_fields(
    ideal_targets: Sequence[Sequence[Poly]],
    kernel_targets: Sequence[Poly] = (),
    ordering: LocalOrdering | None = None,
) -> List[VectorField]:
    """Fields preserving every listed ideal and annihilating every kernel target.

    Computes the intersection of the corresponding logarithmic modules (and
    Hamiltonian kernels) in one syzygy projection instead of intersecting the
    modules pairwise; one row per ideal generator or kernel function, with
    multiplier columns only for the ideal rows.
    """
    ideal_targets = [list(t) for t in ideal_targets]
    kernel_targets = list(kernel_targets)
    if not ideal_targets and not kernel_targets:
        raise ValueError("need at least one tangency or kernel target")
    some = (ideal_targets[0][0] if ideal_targets else kernel_targets[0])
    ring_ = some.ring
    n = ring_.n
    rows = sum(len(t) for t in ideal_targets) + len(kernel_targets)
    columns: List[FreeModuleElement] = []
    for i in range(n):
        comps: List[Poly] = []
        for target in ideal_targets:
            comps.extend(h.diff(i) for h in target)
        comps.extend(g.diff(i) for g in kernel_targets)
        columns.append(FreeModuleElement(ring_, comps))
    offset = 0
    for target in ideal_targets:
        m = len(target)
        for j in range(m):
            for k in range(m):
                comps = [ring_.zero()] * rows
                comps[offset + j] = -target[k]
                columns.append(FreeModuleElement(ring_, comps))
        offset += m
    relations = syzygies(columns, ordering)
    fields = []
    for rel in relations:
        delta = VectorField(ring_, rel.comps[:n])
        if not delta.is_zero():
            fields.append(delta)
    return fields


def jacobian_pair_minors(f: Poly, h: Poly) -> List[Poly]:
    """The 2x2 minors f_{x_i} h_{x_j} - f_{x_j} h_{x_i}, i < j."""
    if f.ring != h.ring:
        raise ValueError("minors across ring contexts")
    n = f.ring.n
    df = [f.diff(i) for i in range(n)]
    dh = [h.diff(i) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(df[i] * dh[j] - df[j] * dh[i])
    return out


# -- linear parts of module elements ------------------------------------------


@dataclass(frozen=True)
class LinearPartSpace:
    """Basis of {j^1 delta : delta in M, delta(0) = 0} with realizing witnesses."""

    basis: Tuple[Matrix, ...]
    witnesses: Tuple[VectorField, ...]
    source: str

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _jet1_columns(gens: Sequence[VectorField]) -> Tuple[List[List[Fraction]], List[List[Poly]]]:
    """Linearization of combinations sum_k (c_k + sum_i t_{k,i} x_i) * g_k.

    Returns the matrix whose columns (one per unknown c_k, t_{k,i}) hold the
    stacked (constant part, linear part) of the combination, together with the
    polynomial coefficient realizing each unknown.
    """
    ring_ = gens[0].ring
    n = ring_.n
    cols: List[List[Fraction]] = []
    coeff_polys: List[List[Poly]] = []
    for k, g in enumerate(gens):
        g0 = g.constant_part()
        g1 = g.linear_part()
        # Unknown c_k (constant coefficient).
        col = [g0[j] for j in range(n)]
        for j in range(n):
            col.extend(g1[j])
        cols.append(col)
        coeffs = [ring_.zero()] * len(gens)
        coeffs[k] = ring_.one()
        coeff_polys.append(coeffs)
        # Unknowns t_{k,i} (coefficient of x_i).
        for i in range(n):
            col = [Fraction(0)] * n
            lin = [[Fraction(0)] * n for _ in range(n)]
            for j in range(n):
                lin[j][i] = g0[j]
            for j in range(n):
                col.extend(lin[j])
            cols.append(col)
            coeffs = [ring_.zero()] * len(gens)
            coeffs[k] = ring_.var(i)
            coeff_polys.append(coeffs)
    return cols, coeff_polys


def _combination(gens: Sequence[VectorField], coeffs: Sequence[Poly]) -> VectorField:
    ring_ = gens[0].ring
    acc = VectorField(ring_, [ring_.zero()] * ring_.n)
    for c, g in zip(coeffs, gens):
        if c.is_zero():
            continue
        acc = acc + VectorField(ring_, [c * comp for comp in g.coefficients])
    return acc


def linear_part_space(
    gens: Sequence[VectorField], source: str = "module"
) -> LinearPartSpace:
    """Exact basis of the linear parts of origin-vanishing fields in <gens>.

    Only degree-<=1 jets of the generator coefficients contribute to the
    0- and 1-jets of a combination, so the space is the image of a finite
    linear map restricted to the kernel of the constant-part constraint.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return LinearPartSpace((), (), source)
    ring_ = gens[0].ring
    n = gens[0].ring.n
    cols, coeff_polys = _jet1_columns(gens)
    nunk = len(cols)
    # Constant-part rows are the first n entries of each column.
    const_rows = [[cols[u][j] for u in range(nunk)] for j in range(n)]
    kernel = linalg.nullspace(const_rows, ncols=nunk)
    basis_mats: List[Matrix] = []
    witnesses: List[VectorField] = []
    seen_rows: List[List[Fraction]] = []
    for vec in kernel:
        flat = [
            sum((vec[u] * cols[u][n + idx] for u in range(nunk) if vec[u]), start=Fraction(0))
            for idx in range(n * n)
        ]
        if all(x == 0 for x in flat):
            continue
        if linalg.in_row_space(seen_rows, flat):
            continue
        seen_rows.append(flat)
        mat = tuple(tuple(flat[j * n + i] for i in range(n)) for j in range(n))
        basis_mats.append(mat)
        coeffs = [ring_.zero()] * len(gens)
        for u, amount in enumerate(vec):
            if amount:
                coeffs = [
                    c + cp.scale(amount) for c, cp in zip(coeffs, coeff_polys[u])
                ]
        witnesses.append(_combination(gens, coeffs))
    return LinearPartSpace(tuple(basis_mats), tuple(witnesses), source)


def solve_jet1_target(
    gens: Sequence[VectorField],
    constant_target: Sequence[Fraction],
    linear_target: Sequence[Sequence[Fraction]],
) -> Optional[VectorField]:
    """Find a combination of gens with prescribed 0- and 1-jets, if one exists.

    Coefficients are restricted to degree <= 1; that suffices because only
    those jets of the coefficients reach the target jets.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return None
    ring_ = gens[0].ring
    n = ring_.n
    cols, coeff_polys = _jet1_columns(gens)
    rows = [[col[idx] for col in cols] for idx in range(n + n * n)]
    rhs = list(constant_target) + [linear_target[j][i] for j in range(n) for i in range(n)]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    coeffs = [ring_.zero()] * len(gens)
    for u, amount in enumerate(sol):
        if amount:
            coeffs = [c + cp.scale(amount) for c, cp in zip(coeffs, coeff_polys[u])]
    return _combination(gens, coeffs)


def fields_to_elements(fields: Sequence[VectorField]) -> List[FreeModuleElement]:
    return [FreeModuleElement(f.ring, f.coefficients) for f in fields]


def elements_to_fields(elems: Sequence[FreeModuleElement]) -> List[VectorField]:
    return [VectorField(e.ring, e.comps) for e in elems]
