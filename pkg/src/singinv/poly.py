"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives in a fixed ring context (an ordered tuple of variable
names) and is stored as a dictionary mapping exponent tuples to nonzero
Fraction coefficients.  The zero polynomial is the empty dictionary.  All
arithmetic is exact; there is no floating-point mode.

The module also provides the local monomial ordering used by the standard
basis engine (negative total degree refined by reverse lexicographic
comparison, under which 1 is the largest monomial), formal derivations,
vector fields, and jet-truncated substitution of polynomial maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

Exponent = Tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RingMismatchError(ValueError):
    """Raised when operands belong to different ring contexts."""


class DegreeCapError(RuntimeError):
    """Raised when a jet computation would exceed the configured degree cap."""


@dataclass(frozen=True)
class PolyRing:
    """Ring context: a fixed, ordered tuple of variable names."""

    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.names) == 0:
            raise ValueError("ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @property
    def n(self) -> int:
        return len(self.names)

    def zero(self) -> Poly:
        return Poly._make(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, value: int | Fraction) -> Poly:
        c = Fraction(value)
        if c == 0:
            return Poly._make(self, {})
        return Poly._make(self, {(0,) * self.n: c})

    def var(self, i: int) -> Poly:
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        exp = [0] * self.n
        exp[i] = 1
        return Poly._make(self, {tuple(exp): _ONE})

    def gens(self) -> Tuple[Poly, ...]:
        return tuple(self.var(i) for i in range(self.n))

    def monomial(self, exp: Sequence[int], coeff: int | Fraction = 1) -> Poly:
        e = tuple(int(k) for k in exp)
        if len(e) != self.n or any(k < 0 for k in e):
            raise ValueError(f"bad exponent {exp} for n={self.n}")
        c = Fraction(coeff)
        if c == 0:
            return Poly._make(self, {})
        return Poly._make(self, {e: c})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int | Fraction]]) -> Poly:
        acc: Dict[Exponent, Fraction] = {}
        for exp, coeff in terms:
            e = tuple(int(k) for k in exp)
            if len(e) != self.n:
                raise ValueError(f"bad exponent {exp} for n={self.n}")
            c = acc.get(e, _ZERO) + Fraction(coeff)
            if c == 0:
                acc.pop(e, None)
            else:
                acc[e] = c
        return Poly._make(self, acc)


def ring(*names: str) -> PolyRing:
    """Convenience constructor: ``ring("x", "y", "z")``."""
    return PolyRing(tuple(names))


class Poly:
    """Immutable sparse polynomial over Q in a fixed ring context."""

    __slots__ = ("ring", "terms", "_deg")

    ring: PolyRing
    terms: Dict[Exponent, Fraction]

    def __init__(self, ring_: PolyRing, terms: Dict[Exponent, Fraction]):
        # Public constructor canonicalizes; _make is the trusted fast path.
        clean = {e: c for e, c in terms.items() if c != 0}
        object.__setattr__(self, "ring", ring_)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_deg", None)

    @staticmethod
    def _make(ring_: PolyRing, terms: Dict[Exponent, Fraction]) -> Poly:
        p = object.__new__(Poly)
        object.__setattr__(p, "ring", ring_)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_deg", None)
        return p

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Poly is immutable")

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_unit(self) -> bool:
        """True iff invertible in the local ring (nonzero constant term)."""
        return self.constant_term() != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- basic data ------------------------------------------------------

    def degree(self) -> int:
        """Maximal total degree (0 for the zero polynomial)."""
        d = self._deg
        if d is None:
            d = max((sum(e) for e in self.terms), default=0)
            object.__setattr__(self, "_deg", d)
        return d

    def order(self) -> int:
        """Minimal total degree of a term; 0 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        zero_exp = (0,) * self.ring.n
        return self.terms.get(zero_exp, _ZERO)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), _ZERO)

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self.terms))

    def num_terms(self) -> int:
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if self.ring != other.ring:
            raise RingMismatchError(
                f"ring contexts differ: {self.ring.names} vs {other.ring.names}"
            )

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly._make(self.ring, out)

    def __sub__(self, other: Poly) -> Poly:
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) - c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Poly._make(self.ring, out)

    def __neg__(self) -> Poly:
        return Poly._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        if not self.terms or not other.terms:
            return Poly._make(self.ring, {})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Exponent, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(sum, zip(ea, eb)))
                s = out.get(e, _ZERO) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly._make(self.ring, out)

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: int | Fraction) -> Poly:
        c = Fraction(c)
        if c == 0:
            return Poly._make(self.ring, {})
        return Poly._make(self.ring, {e: c * k for e, k in self.terms.items()})

    def term_mul(self, coeff: Fraction, exp: Exponent) -> Poly:
        """Multiply by the single term coeff * x^exp."""
        if coeff == 0:
            return Poly._make(self.ring, {})
        out = {}
        for e, c in self.terms.items():
            out[tuple(map(sum, zip(e, exp)))] = c * coeff
        return Poly._make(self.ring, out)

    def mul_jet(self, other: Poly, bound: int) -> Poly:
        """Product truncated to total degree <= bound during accumulation."""
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        a = sorted(self.terms.items(), key=lambda t: sum(t[0]))
        b = sorted(other.terms.items(), key=lambda t: sum(t[0]))
        for ea, ca in a:
            da = sum(ea)
            if da > bound:
                break
            for eb, cb in b:
                if da + sum(eb) > bound:
                    break
                e = tuple(map(sum, zip(ea, eb)))
                s = out.get(e, _ZERO) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly._make(self.ring, out)

    # -- calculus --------------------------------------------------------

    def diff(self, i: int) -> Poly:
        """Formal partial derivative with respect to the i-th variable."""
        if not 0 <= i < self.ring.n:
            raise IndexError(f"variable index {i} out of range for n={self.ring.n}")
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            de = list(e)
            de[i] = k - 1
            out[tuple(de)] = c * k
        return Poly._make(self.ring, out)

    def jet(self, bound: int) -> Poly:
        """Truncate to terms of total degree <= bound."""
        return Poly._make(
            self.ring, {e: c for e, c in self.terms.items() if sum(e) <= bound}
        )

    def low_part(self) -> Poly:
        """The homogeneous part of minimal total degree (0 for zero)."""
        if not self.terms:
            return self
        o = self.order()
        return Poly._make(self.ring, {e: c for e, c in self.terms.items() if sum(e) == o})

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._make(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def evaluate(self, point: Sequence[int | Fraction]) -> Fraction:
        vals = [Fraction(v) for v in point]
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for k, v in zip(e, vals):
                if k:
                    term *= v**k
            total += term
        return total

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self.format()})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            text += " - " + body[1:] if body.startswith("-") else " + " + body
        return text


# -- local monomial ordering ----------------------------------------------


@dataclass(frozen=True)
class LocalOrdering:
    """Negative-total-degree ordering with a declared tie-break.

    The default tie-break is reverse lexicographic ("revlex"); "lex" is the
    alternate used to assert ordering-independence of computed dimensions.
    Under either, 1 is the largest monomial, lower total degree wins, and the
    ordering is multiplicative.  Module terms extend term-over-position with
    ascending component index (lower component wins ties).
    """

    tie_break: str = "revlex"

    def __post_init__(self) -> None:
        if self.tie_break not in ("revlex", "lex"):
            raise ValueError(f"unknown tie break {self.tie_break!r}")

    def sort_key(self, exp: Exponent):
        # Smaller key = larger monomial, so leading terms are found via min().
        if self.tie_break == "revlex":
            return (sum(exp), exp[::-1])
        return (sum(exp), tuple(-k for k in exp))

    def compare(self, u: Exponent, v: Exponent) -> int:
        """Return 1 if u > v, 0 if equal, -1 if u < v."""
        if len(u) != len(v):
            raise ValueError("exponent length mismatch")
        ku, kv = self.sort_key(tuple(u)), self.sort_key(tuple(v))
        if ku == kv:
            return 0
        return 1 if ku < kv else -1


def compare_monomials(ordering: LocalOrdering, u: Exponent, v: Exponent) -> str:
    """Compare two monomials; returns "less", "equal" or "greater"."""
    c = ordering.compare(u, v)
    return {1: "greater", 0: "equal", -1: "less"}[c]


# -- vector fields ---------------------------------------------------------


class VectorField:
    """Derivation sum_i c_i * d/dx_i with polynomial coefficients."""

    __slots__ = ("ring", "coefficients")

    def __init__(self, ring_: PolyRing, coefficients: Sequence[Poly]):
        coeffs = tuple(coefficients)
        if len(coeffs) != ring_.n:
            raise ValueError(f"need {ring_.n} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.ring != ring_:
                raise RingMismatchError("vector field coefficient in wrong ring")
        object.__setattr__(self, "ring", ring_)
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("VectorField is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.ring == other.ring and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.ring, self.coefficients))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def apply(self, f: Poly) -> Poly:
        """Lie derivative of f along the field."""
        if f.ring != self.ring:
            raise RingMismatchError("apply_derivation across ring contexts")
        out = self.ring.zero()
        for i, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            out = out + c * f.diff(i)
        return out

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(
            self.ring,
            [a + b for a, b in zip(self.coefficients, other.coefficients)],
        )

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(
            self.ring,
            [a - b for a, b in zip(self.coefficients, other.coefficients)],
        )

    def __neg__(self) -> VectorField:
        return VectorField(self.ring, [-a for a in self.coefficients])

    def scale(self, c: int | Fraction) -> VectorField:
        return VectorField(self.ring, [a.scale(c) for a in self.coefficients])

    def jet(self, bound: int) -> VectorField:
        return VectorField(self.ring, [a.jet(bound) for a in self.coefficients])

    def constant_part(self) -> Tuple[Fraction, ...]:
        return tuple(c.constant_term() for c in self.coefficients)

    def linear_part(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Matrix A with A[j][i] = coefficient of x_i in the j-th component."""
        n = self.ring.n
        rows = []
        for j in range(n):
            comp = self.coefficients[j]
            row = []
            for i in range(n):
                e = [0] * n
                e[i] = 1
                row.append(comp.coefficient(e))
            rows.append(tuple(row))
        return tuple(rows)

    def __repr__(self) -> str:
        names = self.ring.names
        parts = [
            f"({c.format()})*d_{names[i]}"
            for i, c in enumerate(self.coefficients)
            if not c.is_zero()
        ]
        return "VectorField(" + (" + ".join(parts) if parts else "0") + ")"


def apply_derivation(delta: VectorField, f: Poly) -> Poly:
    return delta.apply(f)


def euler_field(ring_: PolyRing, weights: Sequence[int | Fraction]) -> VectorField:
    """The diagonal field sum_i w_i x_i d/dx_i."""
    if len(weights) != ring_.n:
        raise ValueError("one weight per variable required")
    return VectorField(
        ring_, [ring_.var(i).scale(Fraction(w)) for i, w in enumerate(weights)]
    )


def lie_bracket(a: VectorField, b: VectorField, bound: int | None = None) -> VectorField:
    """[a, b], optionally jet-truncated at the given total degree."""
    if a.ring != b.ring:
        raise RingMismatchError("bracket across ring contexts")
    comps = []
    for j in range(a.ring.n):
        c = a.apply(b.coefficients[j]) - b.apply(a.coefficients[j])
        comps.append(c if bound is None else c.jet(bound))
    return VectorField(a.ring, comps)


# -- substitution ----------------------------------------------------------


def _check_map(phi: Sequence[Poly], ring_: PolyRing) -> None:
    if len(phi) != ring_.n:
        raise ValueError("substitution needs one image per variable")
    for p in phi:
        if p.ring != ring_:
            raise RingMismatchError("substitution image in wrong ring")
        if p.constant_term() != 0:
            raise ValueError("substitution must preserve the origin")
    from . import linalg

    mat = [[phi[i].coefficient(_unit_exp(ring_.n, j)) for j in range(ring_.n)]
           for i in range(ring_.n)]
    if linalg.rank([list(row) for row in mat]) != ring_.n:
        raise ValueError("substitution has singular linear part")


def _unit_exp(n: int, i: int) -> Exponent:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def substitute_jet(f: Poly, phi: Sequence[Poly], bound: int | None,
                   check: bool = True) -> Poly:
    """Compose f with the origin-preserving map x_i -> phi_i.

    With ``bound`` set, the result is truncated to total degree <= bound and
    intermediate products are truncated as well; with ``bound=None`` the exact
    polynomial composition is returned.
    """
    ring_ = f.ring
    if check:
        _check_map(phi, ring_)
    if f.is_zero():
        return f
    cap = bound if bound is not None else f.degree() * max(
        (p.degree() for p in phi), default=1
    )
    # Power cache per variable: powers[i][k] = phi_i^k (jet-truncated).
    powers: list[dict[int, Poly]] = [dict() for _ in range(ring_.n)]

    def power(i: int, k: int) -> Poly:
        cache = powers[i]
        if k in cache:
            return cache[k]
        if k == 0:
            p = ring_.one()
        elif k == 1:
            p = phi[i] if bound is None else phi[i].jet(cap)
        else:
            half = power(i, k // 2)
            p = half.mul_jet(half, cap)
            if k & 1:
                p = p.mul_jet(power(i, 1), cap)
        cache[k] = p
        return p

    out = ring_.zero()
    for e, c in f.terms.items():
        if bound is not None and sum(e) > cap and all(p.order() >= 1 for p in phi):
            # phi preserves the origin, so this term only feeds degrees > cap
            continue
        term = ring_.const(c)
        for i, k in enumerate(e):
            if k:
                term = term.mul_jet(power(i, k), cap)
            if term.is_zero():
                break
        out = out + term
    return out if bound is None else out.jet(bound)


def substitute(f: Poly, phi: Sequence[Poly], check: bool = True) -> Poly:
    """Exact polynomial composition f(phi_1, ..., phi_n)."""
    return substitute_jet(f, phi, None, check=check)


def inverse_map_jet(phi: Sequence[Poly], bound: int) -> list[Poly]:
    """Jet of the inverse of an origin-preserving map with invertible linear part.

    Solves phi(psi(y)) = y degree by degree up to total degree ``bound``.
    """
    from . import linalg

    ring_ = phi[0].ring
    n = ring_.n
    _check_map(phi, ring_)
    lin = [[phi[i].coefficient(_unit_exp(n, j)) for j in range(n)] for i in range(n)]
    inv = linalg.inverse(lin)
    if inv is None:
        raise ValueError("substitution has singular linear part")
    # psi_1 = L^{-1} y
    psi = [
        sum(
            (ring_.var(j).scale(inv[i][j]) for j in range(n)),
            start=ring_.zero(),
        )
        for i in range(n)
    ]
    for d in range(2, bound + 1):
        comp = [substitute_jet(p, psi, d, check=False) for p in phi]
        for i in range(n):
            err = comp[i] - ring_.var(i)
            err_d = err.homogeneous_part(d)
            if err_d.is_zero():
                continue
            # Correct psi_i by -L^{-1} applied to the degree-d error.
            for k in range(n):
                delta = err_d.scale(-inv[k][i])
                psi[k] = psi[k] + delta
    return psi


# -- weighted-degree helpers ------------------------------------------------


def weighted_degree(exp: Exponent, weights: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(w) * k for w, k in zip(weights, exp)), start=Fraction(0))


def weighted_parts(f: Poly, weights: Sequence[Fraction]) -> Dict[Fraction, Poly]:
    """Split f into its weighted-homogeneous pieces, keyed by weighted degree."""
    buckets: Dict[Fraction, Dict[Exponent, Fraction]] = {}
    for e, c in f.terms.items():
        d = weighted_degree(e, weights)
        buckets.setdefault(d, {})[e] = c
    return {d: Poly._make(f.ring, t) for d, t in sorted(buckets.items())}


def quasihomogeneous_degree(f: Poly, weights: Sequence[Fraction]) -> Fraction | None:
    """The common weighted degree of f's monomials, or None if mixed."""
    if f.is_zero():
        return None
    degs = {weighted_degree(e, weights) for e in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None
