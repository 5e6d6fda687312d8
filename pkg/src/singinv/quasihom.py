"""Relative quasihomogeneity: weight search, Euler fields, normal forms.

A pair (f, X) is relatively quasihomogeneous when one positive rational
weight system makes f weighted-homogeneous of degree 1 and some generating
set of the ideal of X weighted-homogeneous as well.  The certification
pipeline here searches for an Euler field (a logarithmic field with
delta(f) = f), analyses the possible linear parts inside Theta_X cap Theta_Y,
normalizes a found field to Poincare-Dulac form by a polynomial jet of a
coordinate change, and then verifies the quasihomogeneity claims directly in
the new coordinates.  Refutations are only issued on airtight grounds: a
failed exact membership test, or a pinned-down linear-part space whose forced
spectrum is not positive rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import derlog, linalg
from .derlog import GermPair
from .invariants import NotApplicableError
from .localstd import (
    LocalOrdering,
    ideal_codim,
    ideal_element,
    membership_with_witness,
    standard_basis_ideal,
)
from .poly import (
    DegreeCapError,
    Exponent,
    Poly,
    PolyRing,
    VectorField,
    euler_field,
    lie_bracket,
    substitute,
    substitute_jet,
    weighted_degree,
)

Matrix = Tuple[Tuple[Fraction, ...], ...]


class UnsupportedSpectrumError(ValueError):
    """Linear part not diagonalizable over Q, or spectrum not rational."""


# -- weight vectors and direct checks -----------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """Positive rational weights; degrees[0] is f's degree (always 1 here),
    degrees[1:] are the weighted degrees of the ideal generators."""

    weights: Tuple[Fraction, ...]
    degrees: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    def to_dict(self) -> Dict[str, List[str]]:
        return {
            "weights": [str(w) for w in self.weights],
            "degrees": [str(d) for d in self.degrees],
        }


def weight_feasibility(
    supports: Sequence[Sequence[Exponent]],
    fixed_degrees: Sequence[Optional[Fraction]],
    n: Optional[int] = None,
) -> Optional[WeightVector]:
    """Solve for positive rational weights putting each support on a hyperplane.

    Target j imposes <w, m> = d_j for every exponent m in its support, where
    d_j is either fixed (e.g. 1 for f) or a free positive unknown.  Decided
    exactly: Gaussian elimination on the equalities, then Fourier-Motzkin on
    the strict positivity constraints (variables eliminated in ascending
    constraint-count order).  Returns one solution or None if infeasible.
    """
    if not supports or any(not s for s in supports):
        raise ValueError("every target needs a nonempty support")
    if len(supports) != len(fixed_degrees):
        raise ValueError("one degree slot per support required")
    if n is None:
        n = len(next(iter(supports[0])))
    free_idx = [j for j, d in enumerate(fixed_degrees) if d is None]
    nunk = n + len(free_idx)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for j, support in enumerate(supports):
        for m in support:
            if len(m) != n:
                raise ValueError("exponent length mismatch")
            row = [Fraction(k) for k in m] + [Fraction(0)] * len(free_idx)
            if fixed_degrees[j] is None:
                row[n + free_idx.index(j)] = Fraction(-1)
                rhs.append(Fraction(0))
            else:
                rhs.append(Fraction(fixed_degrees[j]))
            rows.append(row)
    aug = [row + [b] for row, b in zip(rows, rhs)]
    red, pivots = linalg.rref(aug)
    for r in range(len(red)):
        if all(red[r][c] == 0 for c in range(nunk)) and red[r][nunk] != 0:
            return None  # inconsistent equalities
    if nunk in pivots:
        return None
    # Particular solution and parameter directions.
    x0 = [Fraction(0)] * nunk
    for r, pc in enumerate(pivots):
        x0[pc] = red[r][nunk]
    free_cols = [c for c in range(nunk) if c not in pivots]
    dirs: List[List[Fraction]] = []
    for fc in free_cols:
        v = [Fraction(0)] * nunk
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        dirs.append(v)
    # Strict constraints: every unknown (weights and free degrees) positive.
    constraints: List[Tuple[List[Fraction], Fraction]] = []
    for k in range(nunk):
        coeffs = [d[k] for d in dirs]
        constraints.append((coeffs, x0[k]))
    params = _fourier_motzkin_strict(constraints, len(dirs))
    if params is None:
        return None
    x = list(x0)
    for t, d in zip(params, dirs):
        if t:
            x = [xi + t * di for xi, di in zip(x, d)]
    weights = tuple(x[:n])
    degrees: List[Fraction] = []
    for j, d in enumerate(fixed_degrees):
        degrees.append(Fraction(d) if d is not None else x[n + free_idx.index(j)])
    assert all(w > 0 for w in weights) and all(d > 0 for d in degrees)
    for j, support in enumerate(supports):
        for m in support:
            assert weighted_degree(m, weights) == degrees[j]
    return WeightVector(weights, tuple(degrees))


def _fourier_motzkin_strict(
    constraints: List[Tuple[List[Fraction], Fraction]], nvars: int
) -> Optional[List[Fraction]]:
    """Feasibility of {a.t + c > 0}; returns one solution point or None."""
    remaining = list(range(nvars))
    stack: List[Tuple[int, List[Tuple[List[Fraction], Fraction]]]] = []
    current = [(list(a), c) for a, c in constraints]
    while remaining:
        counts = {
            v: sum(1 for a, _ in current if a[v] != 0) for v in remaining
        }
        v = min(remaining, key=lambda k: (counts[k], k))
        stack.append((v, [(list(a), c) for a, c in current]))
        pos = [(a, c) for a, c in current if a[v] > 0]
        neg = [(a, c) for a, c in current if a[v] < 0]
        zero = [(a, c) for a, c in current if a[v] == 0]
        new = list(zero)
        for ap, cp in pos:
            for an, cn in neg:
                coeffs = [
                    ap[v] * an[k] - an[v] * ap[k] for k in range(nvars)
                ]
                const = ap[v] * cn - an[v] * cp
                new.append((coeffs, const))
        current = new
        remaining.remove(v)
    for a, c in current:
        if all(x == 0 for x in a) and c <= 0:
            return None
    # Back-substitute, latest eliminated variable first.
    point = [Fraction(0)] * nvars
    for v, cons in reversed(stack):
        lower: List[Fraction] = []
        upper: List[Fraction] = []
        feas = True
        for a, c in cons:
            if a[v] == 0:
                continue
            rest = c + sum(a[k] * point[k] for k in range(nvars) if k != v and a[k])
            bound = -rest / a[v]
            if a[v] > 0:
                lower.append(bound)
            else:
                upper.append(bound)
        lo = max(lower) if lower else None
        hi = min(upper) if upper else None
        if lo is not None and hi is not None:
            if not lo < hi:
                return None
            point[v] = (lo + hi) / 2
        elif lo is not None:
            point[v] = lo + 1
        elif hi is not None:
            point[v] = hi - 1
        else:
            point[v] = Fraction(1)
    return point


@dataclass(frozen=True)
class RelativeQHCheck:
    holds: bool
    target: Optional[int] = None       # 0 = f, i >= 1 = xgens[i-1]
    monomial: Optional[Exponent] = None
    expected: Optional[Fraction] = None
    actual: Optional[Fraction] = None


def check_relative_qh(pair: GermPair, wv: WeightVector) -> RelativeQHCheck:
    """Verify the defining support conditions in the given coordinates.

    Every monomial of f must sit on <w, m> = 1 and every monomial of the i-th
    generator on <w, m> = d_i.  Missing degrees are inferred from the first
    monomial of each generator.
    """
    w = wv.weights
    targets = [(pair.f, Fraction(1))]
    for i, h in enumerate(pair.xgens):
        if len(wv.degrees) > i + 1:
            d = wv.degrees[i + 1]
        else:
            d = weighted_degree(min(h.terms), w)
        targets.append((h, d))
    for idx, (g, d) in enumerate(targets):
        for m in sorted(g.terms):
            actual = weighted_degree(m, w)
            if actual != d:
                return RelativeQHCheck(False, idx, m, d, actual)
    return RelativeQHCheck(True)


# -- spectra -------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset of a linear part, when it splits over Q."""

    values: Optional[Tuple[Fraction, ...]]  # sorted, with multiplicity
    unsplit: Tuple[Fraction, ...] = ()      # monic residual factor, if any

    @property
    def rational(self) -> bool:
        return self.values is not None

    def all_positive(self) -> bool:
        return self.rational and all(v > 0 for v in self.values)

    def to_list(self) -> Optional[List[str]]:
        return None if self.values is None else [str(v) for v in self.values]


def spectrum(delta: VectorField) -> Spectrum:
    """Eigenvalues of the linear part of an origin-vanishing field."""
    if any(c != 0 for c in delta.constant_part()):
        raise ValueError("spectrum requires delta(0) = 0")
    return matrix_spectrum(delta.linear_part())


def matrix_spectrum(a: Sequence[Sequence[Fraction]]) -> Spectrum:
    coeffs = linalg.charpoly([list(row) for row in a])
    roots, residual = linalg.rational_roots(coeffs)
    if residual:
        return Spectrum(None, tuple(residual))
    return Spectrum(tuple(sorted(roots)))


def _is_diagonal(a: Sequence[Sequence[Fraction]]) -> bool:
    n = len(a)
    return all(a[i][j] == 0 for i in range(n) for j in range(n) if i != j)


def _diagonalize(a: Matrix) -> Tuple[List[Fraction], linalg.Matrix]:
    """Return (eigenvalues per new coordinate, basis matrix P) with P^-1 A P diagonal.

    Raises UnsupportedSpectrumError when the spectrum is irrational or the
    matrix is not diagonalizable over Q.
    """
    n = len(a)
    if _is_diagonal(a):
        return [a[i][i] for i in range(n)], linalg.identity(n)
    spec = matrix_spectrum(a)
    if not spec.rational:
        raise UnsupportedSpectrumError(
            f"spectrum does not split over Q; residual factor {spec.unsplit}"
        )
    columns: List[List[Fraction]] = []
    weights: List[Fraction] = []
    for lam in sorted(set(spec.values)):
        shifted = [
            [a[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)
        ]
        for vec in linalg.nullspace(shifted, ncols=n):
            columns.append(vec)
            weights.append(lam)
    if len(columns) != n:
        raise UnsupportedSpectrumError(
            "linear part is not diagonalizable over Q (minimal polynomial not square-free)"
        )
    p = [[columns[j][i] for j in range(n)] for i in range(n)]
    return weights, p


def _linear_field(ring_: PolyRing, a: Sequence[Sequence[Fraction]]) -> VectorField:
    n = ring_.n
    comps = []
    for j in range(n):
        acc = ring_.zero()
        for i in range(n):
            if a[j][i]:
                acc = acc + ring_.var(i).scale(a[j][i])
        comps.append(acc)
    return VectorField(ring_, comps)


# -- vector-field transport ----------------------------------------------------


def pushforward(delta: VectorField, psi: Sequence[Poly], bound: int) -> VectorField:
    """The field in y-coordinates for the substitution x = psi(y), jet to bound.

    Solves (D psi) * delta' = delta(psi) as truncated power series; psi must
    preserve the origin and have an invertible linear part.
    """
    ring_ = delta.ring
    n = ring_.n
    composed = [substitute_jet(c, psi, bound) for c in delta.coefficients]
    jac = [[psi[i].diff(j).jet(bound) for j in range(n)] for i in range(n)]
    j0 = [[jac[i][j].constant_term() for j in range(n)] for i in range(n)]
    inv0 = linalg.inverse(j0)
    if inv0 is None:
        raise ValueError("substitution has singular linear part")
    jplus = [
        [jac[i][j] - ring_.const(j0[i][j]) for j in range(n)] for i in range(n)
    ]

    def apply_const(mat: linalg.Matrix, vec: List[Poly]) -> List[Poly]:
        return [
            sum((vec[j].scale(mat[i][j]) for j in range(n) if mat[i][j]), start=ring_.zero())
            for i in range(n)
        ]

    def apply_poly(mat: List[List[Poly]], vec: List[Poly]) -> List[Poly]:
        return [
            sum(
                (mat[i][j].mul_jet(vec[j], bound) for j in range(n) if not mat[i][j].is_zero()),
                start=ring_.zero(),
            )
            for i in range(n)
        ]

    rhs = apply_const(inv0, composed)
    acc = list(rhs)
    term = rhs
    for _ in range(bound + 1):
        term = apply_const(inv0, apply_poly(jplus, term))
        term = [-t for t in term]
        if all(t.is_zero() for t in term):
            break
        acc = [a + t for a, t in zip(acc, term)]
    return VectorField(ring_, [a.jet(bound) for a in acc])


# -- Poincare-Dulac normalization -----------------------------------------------


@dataclass(frozen=True)
class PDResult:
    """Normalization transcript: x = phi(z) carries the field to chi_w + nilpotent."""

    weights: Tuple[Fraction, ...]        # per final coordinate
    phi: Tuple[Poly, ...]                # jet of the coordinate change
    delta_s: VectorField
    delta_n: VectorField
    bound: int


def poincare_dulac_jet(delta: VectorField, bound: int) -> PDResult:
    """Kill non-resonant terms of delta degree by degree up to the bound.

    Requires delta(0) = 0 and a linear part that is diagonalizable over Q with
    rational eigenvalues; anything else raises UnsupportedSpectrumError.  The
    retained nilpotent part commutes with the semisimple part (verified).
    """
    ring_ = delta.ring
    n = ring_.n
    if any(c != 0 for c in delta.constant_part()):
        raise ValueError("normalization requires delta(0) = 0")
    weights, p = _diagonalize(delta.linear_part())
    p_map = [
        sum((ring_.var(j).scale(p[i][j]) for j in range(n) if p[i][j]), start=ring_.zero())
        for i in range(n)
    ]
    identity_p = all(
        p[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    )
    cur = delta if identity_p else pushforward(delta, p_map, bound)
    phi = [ring_.var(i) for i in range(n)] if identity_p else list(p_map)
    w = [Fraction(x) for x in weights]
    for d in range(2, bound + 1):
        correction = [ring_.zero() for _ in range(n)]
        needed = False
        for j in range(n):
            for exp, coeff in cur.coefficients[j].terms.items():
                if sum(exp) != d:
                    continue
                gap = weighted_degree(exp, w) - w[j]
                if gap != 0:
                    correction[j] = correction[j] + ring_.monomial(exp, coeff / gap)
                    needed = True
        if not needed:
            continue
        psi = [ring_.var(i) + correction[i] for i in range(n)]
        cur = pushforward(cur, psi, bound)
        phi = [substitute_jet(c, psi, bound, check=False) for c in phi]
    chi = euler_field(ring_, w)
    delta_n = cur - chi
    for j in range(n):
        for exp in delta_n.coefficients[j].terms:
            if sum(exp) >= 2 and weighted_degree(exp, w) != w[j]:
                raise AssertionError("non-resonant term survived normalization")
    bracket = lie_bracket(chi, delta_n, bound)
    if not bracket.is_zero():
        raise AssertionError("semisimple and nilpotent parts fail to commute")
    return PDResult(tuple(w), tuple(phi), chi, delta_n, bound)


# -- Euler-field search ----------------------------------------------------------


@dataclass(frozen=True)
class EulerSearchResult:
    found: bool
    field: Optional[VectorField]
    jet_bound: Optional[int]
    witness: Optional[Tuple[Poly, ...]]       # coefficients over the Theta_X generators
    theta_x: Tuple[VectorField, ...]


def euler_field_search(
    pair: GermPair,
    ordering: LocalOrdering | None = None,
    jet_bound: Optional[int] = None,
    theta_x: Optional[Sequence[VectorField]] = None,
) -> EulerSearchResult:
    """Search for delta in Theta_X with delta(f) = f, via exact membership.

    Membership of f in the derivative ideal is decided exactly; the returned
    field is assembled from the jet-truncated witness, so delta(f) = f holds
    modulo terms of degree > jet_bound.
    """
    f = pair.f
    if theta_x is None:
        theta_x = derlog.logarithmic_module(pair.xgens, ordering)
    theta_x = tuple(theta_x)
    images = [delta.apply(f) for delta in theta_x]
    mu_x = ideal_codim(images, ordering)
    if not mu_x.is_finite:
        raise NotApplicableError("mu_X(f) is infinite")
    mem = membership_with_witness(
        ideal_element(f),
        [ideal_element(p) for p in images],
        ordering,
        jet_bound,
    )
    if not mem.member:
        return EulerSearchResult(False, None, None, None, theta_x)
    ring_ = pair.ring
    acc = VectorField(ring_, [ring_.zero()] * ring_.n)
    for c, delta in zip(mem.witness, theta_x):
        if not c.is_zero():
            acc = acc + VectorField(ring_, [c * comp for comp in delta.coefficients])
    residual = acc.apply(f) - f
    if not residual.is_zero() and residual.order() <= mem.jet_bound:
        raise AssertionError("Euler witness fails its jet identity")
    return EulerSearchResult(True, acc, mem.jet_bound, mem.witness, theta_x)


# -- linear-part pinning ----------------------------------------------------------


@dataclass(frozen=True)
class PinnedLinearParts:
    """Admissible linear parts A in the span of the linear-part space with
    A(f_low) = f_low: an affine subspace, given by one particular matrix and
    homogeneous directions (all with realizing witnesses in the module)."""

    space: derlog.LinearPartSpace
    particular: Optional[Matrix]
    directions: Tuple[Matrix, ...]
    particular_coeffs: Optional[Tuple[Fraction, ...]]
    direction_coeffs: Tuple[Tuple[Fraction, ...], ...]


def _matrix_action(ring_: PolyRing, a: Matrix, g: Poly) -> Poly:
    return _linear_field(ring_, a).apply(g)


def pin_linear_parts(
    pair: GermPair, space: derlog.LinearPartSpace
) -> PinnedLinearParts:
    ring_ = pair.ring
    f_low = pair.f.low_part()
    monos = sorted(f_low.terms)
    images = [_matrix_action(ring_, b, f_low) for b in space.basis]
    mono_set = sorted({m for img in images for m in img.terms} | set(monos))
    rows = [[img.coefficient(m) for img in images] for m in mono_set]
    rhs = [f_low.coefficient(m) for m in mono_set]
    sol = linalg.solve(rows, rhs) if space.basis else None
    if sol is None:
        return PinnedLinearParts(space, None, (), None, ())
    kernel = linalg.nullspace(rows, ncols=len(space.basis)) if space.basis else []

    def combine(alpha: Sequence[Fraction]) -> Matrix:
        n = ring_.n
        acc = [[Fraction(0)] * n for _ in range(n)]
        for a, b in zip(alpha, space.basis):
            if a:
                for i in range(n):
                    for j in range(n):
                        acc[i][j] += a * b[i][j]
        return tuple(tuple(row) for row in acc)

    return PinnedLinearParts(
        space,
        combine(sol),
        tuple(combine(k) for k in kernel),
        tuple(sol),
        tuple(tuple(k) for k in kernel),
    )


@dataclass(frozen=True)
class ObstructionReport:
    status: str                                # "obstruction" | "clear" | "inconclusive"
    dimension: int
    spectrum: Optional[Tuple[Fraction, ...]]   # pinned spectrum when determined
    basis_matrix: Optional[Matrix]
    reason: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status,
            "dimension": self.dimension,
            "spectrum": None if self.spectrum is None else [str(v) for v in self.spectrum],
            "reason": self.reason,
        }


def nonqh_linear_obstruction(
    pair: GermPair, ordering: LocalOrdering | None = None
) -> ObstructionReport:
    """Decide via linear parts of Theta_X cap Theta_Y whether the scale pinned
    by delta(f) = f admits an all-positive rational spectrum.

    Eigenvalues of a vector field are invariant under coordinate changes, so a
    forced non-positive (or irrational) spectrum refutes relative quasi-
    homogeneity outright.  Decision is restricted to linear-part spaces of
    dimension <= 1; higher dimensions report inconclusive by design.
    """
    inter = derlog.tangent_fields([pair.xgens, [pair.f]], ordering=ordering)
    space = derlog.linear_part_space(inter, source="Theta_X cap Theta_Y")
    if space.dimension >= 2:
        return ObstructionReport(
            "inconclusive",
            space.dimension,
            None,
            None,
            "linear-part space has dimension >= 2; decision restricted by design",
        )
    pinned = pin_linear_parts(pair, space)
    if pinned.particular is None:
        return ObstructionReport(
            "obstruction",
            space.dimension,
            None,
            space.basis[0] if space.basis else None,
            "no linear part compatible with delta(f) = f exists in the module",
        )
    mat = pinned.particular
    spec = matrix_spectrum(mat)
    if not spec.rational:
        return ObstructionReport(
            "obstruction",
            space.dimension,
            None,
            mat,
            f"pinned spectrum is irrational (residual factor {[str(c) for c in spec.unsplit]})",
        )
    if spec.all_positive():
        return ObstructionReport("clear", space.dimension, spec.values, mat)
    return ObstructionReport(
        "obstruction",
        space.dimension,
        spec.values,
        mat,
        "pinned spectrum contains a non-positive eigenvalue",
    )


# -- certification -----------------------------------------------------------------


@dataclass
class CertifyConfig:
    jet_bound: Optional[int] = None   # Euler-witness jet order; None = automatic
    pd_slack: int = 4                 # extra degrees past the support bound
    degree_cap: int = 30              # hard cap on any jet computation
    ordering: Optional[LocalOrdering] = None


@dataclass
class QHCertificate:
    status: str  # "certified-qh" | "refuted" | "inconclusive"
    weights: Optional[WeightVector] = None
    coordinate_change: Optional[Tuple[Poly, ...]] = None
    change_jet_order: Optional[int] = None
    euler_field: Optional[VectorField] = None
    obstruction: Optional[Dict[str, object]] = None
    transcripts: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status,
            "weights": None if self.weights is None else self.weights.to_dict(),
            "coordinate_change": None
            if self.coordinate_change is None
            else [p.format() for p in self.coordinate_change],
            "change_jet_order": self.change_jet_order,
            "euler_field": None
            if self.euler_field is None
            else [c.format() for c in self.euler_field.coefficients],
            "obstruction": self.obstruction,
            "transcripts": self.transcripts,
        }


def _spectrum_ok(mat: Matrix) -> Optional[Tuple[Fraction, ...]]:
    """Positive rational diagonalizable spectrum of mat, else None."""
    spec = matrix_spectrum(mat)
    if not spec.rational or not spec.all_positive():
        return None
    try:
        _diagonalize(mat)
    except UnsupportedSpectrumError:
        return None
    return spec.values


def certify_relative_qh(pair: GermPair, config: CertifyConfig | None = None) -> QHCertificate:
    """Certify, refute, or give up on relative quasihomogeneity of the pair.

    Pipeline: direct weight feasibility in the given coordinates; exact
    Euler-field membership; pinning of admissible linear parts inside
    Theta_X cap Theta_Y; Poincare-Dulac normalization of the corrected Euler
    field; and a final verification of the support conditions in the new
    coordinates.  A certificate is only issued after the final checks pass;
    refutations carry a checkable obstruction.
    """
    cfg = config or CertifyConfig()
    ordering = cfg.ordering
    ring_ = pair.ring
    n = ring_.n
    f = pair.f
    transcripts: Dict[str, object] = {}

    theta_x = derlog.logarithmic_module(pair.xgens, ordering)
    images = [delta.apply(f) for delta in theta_x]
    mu_x = ideal_codim(images, ordering)
    if not mu_x.is_finite:
        raise NotApplicableError("mu_X(f) is infinite")
    transcripts["mu_X"] = mu_x.value

    # Step 0: the pair may already be quasihomogeneous as given.
    direct = weight_feasibility(
        [pair.f.support()] + [h.support() for h in pair.xgens],
        [Fraction(1)] + [None] * len(pair.xgens),
        n,
    )
    if direct is not None:
        check = check_relative_qh(pair, direct)
        if check.holds:
            chi = euler_field(ring_, direct.weights)
            assert chi.apply(f) == f
            transcripts["route"] = "direct-weights"
            return QHCertificate(
                status="certified-qh",
                weights=direct,
                coordinate_change=tuple(ring_.var(i) for i in range(n)),
                change_jet_order=None,
                euler_field=chi,
                transcripts=transcripts,
            )

    # Step 1: exact membership f in df(Theta_X); failure refutes outright.
    search = euler_field_search(pair, ordering, cfg.jet_bound, theta_x)
    if not search.found:
        transcripts["route"] = "membership-refuted"
        return QHCertificate(
            status="refuted",
            obstruction={
                "kind": "bruce_roberts_numbers_differ",
                "detail": "f is not in df(Theta_X), so the relative Milnor and "
                "Tjurina numbers differ and no Euler field exists",
            },
            transcripts=transcripts,
        )
    delta0 = search.field
    transcripts["euler_witness_jet"] = search.jet_bound

    # Step 2: admissible linear parts of origin-vanishing fields in the
    # intersection module, with the scale pinned by delta(f) = f.
    inter = derlog.tangent_fields([pair.xgens, [f]], ordering=ordering)
    space = derlog.linear_part_space(inter, source="Theta_X cap Theta_Y")
    pinned = pin_linear_parts(pair, space)
    transcripts["linear_part_dimension"] = space.dimension

    if pinned.particular is None:
        if space.dimension <= 1:
            transcripts["route"] = "linear-part-refuted"
            return QHCertificate(
                status="refuted",
                obstruction={
                    "kind": "no_admissible_linear_part",
                    "dimension": space.dimension,
                    "detail": "no linear part compatible with delta(f) = f",
                },
                transcripts=transcripts,
            )
        return QHCertificate(
            status="inconclusive",
            obstruction={
                "kind": "undecided_linear_parts",
                "dimension": space.dimension,
            },
            transcripts=transcripts,
        )

    candidates: List[Matrix] = []
    delta0_lin = delta0.linear_part()
    if not pinned.directions:
        candidates.append(pinned.particular)
    else:
        # Prefer the witness field's own linear part when it is admissible.
        want = [
            [delta0_lin[i][j] - pinned.particular[i][j] for j in range(n)]
            for i in range(n)
        ]
        rows = [
            [pinned.directions[k][i][j] for k in range(len(pinned.directions))]
            for i in range(n)
            for j in range(n)
        ]
        rhs = [want[i][j] for i in range(n) for j in range(n)]
        if linalg.solve(rows, rhs) is not None:
            candidates.append(delta0_lin)
        candidates.append(pinned.particular)
        for direction in pinned.directions:
            for t in (1, -1, 2, -2):
                cand = tuple(
                    tuple(
                        pinned.particular[i][j] + t * direction[i][j]
                        for j in range(n)
                    )
                    for i in range(n)
                )
                candidates.append(cand)

    chosen: Optional[Tuple[Matrix, Tuple[Fraction, ...]]] = None
    for cand in candidates:
        vals = _spectrum_ok(cand)
        if vals is not None:
            chosen = (cand, vals)
            break
    if chosen is None:
        unique = not pinned.directions
        if unique and space.dimension <= 1:
            spec = matrix_spectrum(pinned.particular)
            transcripts["route"] = "spectrum-refuted"
            return QHCertificate(
                status="refuted",
                obstruction={
                    "kind": "pinned_spectrum_not_positive_rational",
                    "dimension": space.dimension,
                    "spectrum": spec.to_list(),
                    "detail": "eigenvalues are coordinate-change invariants",
                },
                transcripts=transcripts,
            )
        return QHCertificate(
            status="inconclusive",
            obstruction={
                "kind": "no_positive_spectrum_candidate",
                "dimension": space.dimension,
            },
            transcripts=transcripts,
        )
    target, spec_values = chosen
    transcripts["candidate_spectrum"] = [str(v) for v in spec_values]

    # Step 3: correct the witness field to vanish at the origin and carry the
    # chosen linear part, by subtracting an exact kernel field (Theta_X cap H_Y).
    delta1 = _correct_witness(pair, delta0, target, theta_x, inter, ordering)
    if delta1 is None:
        return QHCertificate(
            status="inconclusive",
            obstruction={
                "kind": "witness_normalization_failed",
                "detail": "could not arrange delta(0) = 0 with the admissible linear part",
            },
            transcripts=transcripts,
        )

    # Step 4: Poincare-Dulac normalization and final verification.
    w_min = min(spec_values)
    w_max = max(spec_values)
    d_est = max(
        [Fraction(1)] + [w_max * h.order() for h in pair.xgens]
    )
    bound = math.ceil(d_est / w_min) + cfg.pd_slack
    if bound > cfg.degree_cap:
        raise DegreeCapError(
            f"normalization would need jets of degree {bound} "
            f"(cap {cfg.degree_cap}); raise the degree cap to proceed"
        )
    transcripts["pd_degree"] = bound
    try:
        pd = poincare_dulac_jet(delta1, bound)
    except UnsupportedSpectrumError as exc:
        return QHCertificate(
            status="inconclusive",
            obstruction={"kind": "unsupported_spectrum", "detail": str(exc)},
            transcripts=transcripts,
        )
    w = pd.weights
    f_new = substitute_jet(f, list(pd.phi), bound, check=False)
    chi = pd.delta_s
    f_ok = chi.apply(f_new) == f_new
    # Positive weights confine a degree-1 weighted-homogeneous function to
    # total degree <= 1/w_min <= bound, so the jet sees all of f's image.
    f_exact: Optional[bool] = None
    phi_deg = max(p.degree() for p in pd.phi)
    if f_ok and f.degree() * phi_deg <= 60:
        f_full = substitute(f, list(pd.phi), check=False)
        f_exact = chi.apply(f_full) == f_full
    transcripts["f_check"] = {
        "jet_degree": bound,
        "holds": f_ok,
        "exact_polynomial": f_exact,
    }
    h_checks: List[Dict[str, object]] = []
    h_ok = True
    if f_ok:
        # The transformed generators are only certified as jets; membership of
        # chi_w(h o Phi) is therefore claimed modulo degree > bound, and the
        # certificate discloses that modulus.
        h_new = [substitute_jet(h, list(pd.phi), bound, check=False) for h in pair.xgens]
        sb_new = standard_basis_ideal(h_new, ordering)
        for i, hn in enumerate(h_new):
            image = chi.apply(hn)
            nf = sb_new.normal_form(ideal_element(image))
            rem = nf.remainder.comps[0]
            if rem.is_zero() or rem.order() > bound:
                h_checks.append(
                    {"generator": i, "holds": True, "modulus": f"degree > {bound}"}
                )
            else:
                h_checks.append({"generator": i, "holds": False})
                h_ok = False
    transcripts["h_checks"] = h_checks
    if not (f_ok and h_ok):
        return QHCertificate(
            status="inconclusive",
            obstruction={
                "kind": "verification_failed",
                "detail": "normalized coordinates fail the support conditions at this jet order",
            },
            transcripts=transcripts,
        )
    degrees = [Fraction(1)]
    for hn in h_new:
        degrees.append(min(weighted_degree(m, w) for m in hn.terms))
    if any(d <= 0 for d in degrees):
        return QHCertificate(
            status="inconclusive",
            obstruction={"kind": "nonpositive_generator_degree"},
            transcripts=transcripts,
        )
    transcripts["route"] = "normalization"
    transcripts["delta_n_zero"] = pd.delta_n.is_zero()
    return QHCertificate(
        status="certified-qh",
        weights=WeightVector(w, tuple(degrees)),
        coordinate_change=pd.phi,
        change_jet_order=bound,
        euler_field=delta1,
        transcripts=transcripts,
    )


def _correct_witness(
    pair: GermPair,
    delta0: VectorField,
    target: Matrix,
    theta_x: Sequence[VectorField],
    inter: Sequence[VectorField],
    ordering: LocalOrdering | None,
) -> Optional[VectorField]:
    """Adjust the Euler witness to delta(0) = 0 with the chosen linear part.

    Subtracting a field from Theta_X cap H_Y keeps both Theta_X membership and
    the high-order Euler identity (kernel fields annihilate f exactly).
    """
    ring_ = pair.ring
    n = ring_.n
    const = delta0.constant_part()
    lin = delta0.linear_part()
    if all(c == 0 for c in const) and lin == target:
        return delta0
    kernel = derlog.tangent_fields([pair.xgens], [pair.f], ordering=ordering)
    want_linear = [
        [lin[i][j] - target[i][j] for j in range(n)] for i in range(n)
    ]
    if kernel:
        kappa = derlog.solve_jet1_target(kernel, const, want_linear)
        if kappa is not None:
            return delta0 - kappa
    # Fall back to an exact first-order Euler witness from the intersection.
    fallback = derlog.solve_jet1_target(
        inter, [Fraction(0)] * n, [list(row) for row in target]
    )
    return fallback
