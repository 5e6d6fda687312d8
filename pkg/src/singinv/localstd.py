"""Standard-basis engine for submodules of free modules over the local ring.

Division uses the classical Mora tangent-cone strategy: reducers are chosen
by minimal ecart (then oldest first) and partial remainders join the reducer
pool, which makes the division terminate for local orderings at the price of
producing a *weak* normal form

    u * g  =  sum_k q_k * G_k  +  r,        u a unit (u(0) = 1),

with the leading term of a nonzero r not divisible by any leading term of G.
Units and quotients are tracked on demand so that membership witnesses can be
reconstructed over the original generators.

Completion follows the normal pair strategy (pairs ordered by total degree of
the leading-term lcm, FIFO among equals) with no pair-discarding criteria;
determinism is preferred over micro-performance throughout.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Exponent, LocalOrdering, Poly, PolyRing, RingMismatchError

_ZERO = Fraction(0)


class FreeModuleElement:
    """Element of a rank-r free module: a tuple of r polynomials."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring_: PolyRing, comps: Sequence[Poly]):
        comps = tuple(comps)
        if not comps:
            raise ValueError("rank must be positive")
        for c in comps:
            if c.ring != ring_:
                raise RingMismatchError("component in wrong ring context")
        object.__setattr__(self, "ring", ring_)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, name, value):
        raise AttributeError("FreeModuleElement is immutable")

    @property
    def rank(self) -> int:
        return len(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.comps == other.comps

    def __hash__(self):
        return hash((self.ring, self.comps))

    def __add__(self, other: FreeModuleElement) -> FreeModuleElement:
        self._check(other)
        return FreeModuleElement(self.ring, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: FreeModuleElement) -> FreeModuleElement:
        self._check(other)
        return FreeModuleElement(self.ring, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> FreeModuleElement:
        return FreeModuleElement(self.ring, [-a for a in self.comps])

    def scale(self, c: int | Fraction) -> FreeModuleElement:
        return FreeModuleElement(self.ring, [a.scale(c) for a in self.comps])

    def term_mul(self, coeff: Fraction, exp: Exponent) -> FreeModuleElement:
        return FreeModuleElement(self.ring, [a.term_mul(coeff, exp) for a in self.comps])

    def poly_mul(self, p: Poly) -> FreeModuleElement:
        return FreeModuleElement(self.ring, [a * p for a in self.comps])

    def degree(self) -> int:
        return max((c.degree() for c in self.comps if not c.is_zero()), default=0)

    def jet(self, bound: int) -> FreeModuleElement:
        return FreeModuleElement(self.ring, [c.jet(bound) for c in self.comps])

    def _check(self, other: FreeModuleElement) -> None:
        if self.ring != other.ring:
            raise RingMismatchError("module elements in different ring contexts")
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __repr__(self) -> str:
        return "FreeModuleElement(" + ", ".join(c.format() for c in self.comps) + ")"


def ideal_element(p: Poly) -> FreeModuleElement:
    return FreeModuleElement(p.ring, (p,))


def _content(elem: FreeModuleElement) -> Fraction:
    """Positive rational c with elem/c integer and primitive (0 for zero)."""
    import math

    num_gcd = 0
    den_lcm = 1
    for comp in elem.comps:
        for coeff in comp.terms.values():
            num_gcd = math.gcd(num_gcd, abs(coeff.numerator))
            den_lcm = den_lcm * coeff.denominator // math.gcd(den_lcm, coeff.denominator)
    if num_gcd == 0:
        return Fraction(0)
    return Fraction(num_gcd, den_lcm)


@dataclass(frozen=True)
class ModuleOrdering:
    """Module extension of a LocalOrdering: term over position, ascending index.

    With ``split`` set, components below the split form an elimination block:
    every term in the first block is larger than every term in the second.
    """

    base: LocalOrdering
    split: Optional[int] = None

    def key(self, comp: int, exp: Exponent):
        block = 0 if self.split is None or comp < self.split else 1
        return (block, self.base.sort_key(exp), comp)


LeadingTerm = Tuple[int, Exponent, Fraction]


def leading_term(elem: FreeModuleElement, mord: ModuleOrdering) -> LeadingTerm:
    best = None
    best_key = None
    for comp, p in enumerate(elem.comps):
        for exp, coeff in p.terms.items():
            k = mord.key(comp, exp)
            if best_key is None or k < best_key:
                best_key = k
                best = (comp, exp, coeff)
    if best is None:
        raise ValueError("zero element has no leading term")
    return best


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _ecart(elem: FreeModuleElement, lt: LeadingTerm) -> int:
    return elem.degree() - sum(lt[1])


@dataclass
class NFResult:
    remainder: FreeModuleElement
    unit: Optional[Poly]            # tracked only when requested; unit(0) = 1
    quotients: Optional[List[Poly]]  # over the reducer list, when requested
    steps: int = 0
    aborted: bool = False           # set when a step budget ran out


class _PoolEntry:
    __slots__ = ("terms", "lt", "ecart", "tag", "unit", "quots")

    def __init__(self, terms, lt, ecart, tag, unit=None, quots=None):
        self.terms = terms      # list of (comp, exp, coeff), leading first
        self.lt = lt
        self.ecart = ecart
        self.tag = tag          # "orig" with index in quots slot, or "rem"
        self.unit = unit        # for "rem": snapshot of the tracked unit (dict)
        self.quots = quots      # for "orig": reducer index; for "rem": snapshot


class _WorkVector:
    """Mutable division state over the integers: term dict with lazy heaps for
    the leading term (ordering key) and the total degree (ecart).  With a
    truncation bound set, terms beyond the bound are dropped on entry (the
    division then happens modulo m^{bound+1})."""

    __slots__ = ("mord", "terms", "lead_heap", "deg_heap", "truncate")

    def __init__(self, mord: ModuleOrdering, truncate: Optional[int] = None):
        self.mord = mord
        self.truncate = truncate
        self.terms: dict = {}
        self.lead_heap: list = []
        self.deg_heap: list = []

    def _introduce(self, comp: int, exp: Exponent, coeff: int) -> None:
        if self.truncate is not None and sum(exp) > self.truncate:
            return
        key = (comp, exp)
        cur = self.terms.get(key)
        if cur is None:
            self.terms[key] = coeff
            heapq.heappush(self.lead_heap, (self.mord.key(comp, exp), comp, exp))
            heapq.heappush(self.deg_heap, (-sum(exp), comp, exp))
        else:
            s = cur + coeff
            if s == 0:
                del self.terms[key]
            else:
                self.terms[key] = s

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Tuple[int, Exponent, int]:
        while self.lead_heap:
            _, comp, exp = self.lead_heap[0]
            coeff = self.terms.get((comp, exp))
            if coeff is None:
                heapq.heappop(self.lead_heap)
            else:
                return comp, exp, coeff
        raise ValueError("zero element has no leading term")

    def degree(self) -> int:
        while self.deg_heap:
            negdeg, comp, exp = self.deg_heap[0]
            if (comp, exp) in self.terms:
                return -negdeg
            heapq.heappop(self.deg_heap)
        return 0

    def combine(self, a: int, terms, b: int, m_exp: Exponent) -> None:
        """Replace h by a*h - b*x^{m_exp}*terms (integer cross-elimination)."""
        if a != 1:
            for key in self.terms:
                self.terms[key] *= a
        for comp, exp, coeff in terms:
            shifted = tuple(p + q for p, q in zip(exp, m_exp))
            self._introduce(comp, shifted, -b * coeff)

    def strip(self) -> int:
        import math

        g = 0
        for coeff in self.terms.values():
            g = math.gcd(g, coeff)
            if g == 1:
                return 1
        if g > 1:
            for key in self.terms:
                self.terms[key] //= g
        return g if g else 1

    def snapshot_terms(self) -> list:
        ordered = sorted(
            self.terms.items(), key=lambda kv: self.mord.key(kv[0][0], kv[0][1])
        )
        return [(comp, exp, coeff) for (comp, exp), coeff in ordered]

    def to_element(self, ring_: PolyRing, rank: int, scale: Fraction) -> FreeModuleElement:
        comps: List[dict] = [dict() for _ in range(rank)]
        for (comp, exp), coeff in self.terms.items():
            comps[comp][exp] = coeff * scale
        return FreeModuleElement(ring_, [Poly._make(ring_, d) for d in comps])


def _integer_terms(elem: FreeModuleElement, mord: ModuleOrdering) -> Tuple[list, Fraction]:
    """Primitive integer term list (leading first) and the factor c with
    elem = c * integer_part."""
    c = _content(elem)
    inv = Fraction(1) / c
    out = []
    for comp, p in enumerate(elem.comps):
        for exp, coeff in p.terms.items():
            out.append((comp, exp, int(coeff * inv)))
    out.sort(key=lambda t: mord.key(t[0], t[1]))
    return out, c


def _dict_combine(acc: dict, a: int, other: dict, b: int, m_exp: Exponent) -> None:
    """acc = a*acc - b*x^{m_exp}*other, plain exponent dicts over the integers."""
    if a != 1:
        for key in acc:
            acc[key] *= a
    for exp, coeff in other.items():
        shifted = tuple(p + q for p, q in zip(exp, m_exp))
        s = acc.get(shifted, 0) - b * coeff
        if s == 0:
            acc.pop(shifted, None)
        else:
            acc[shifted] = s


def mora_normal_form(
    g: FreeModuleElement,
    reducers: Sequence[FreeModuleElement],
    mord: ModuleOrdering,
    track: bool = False,
    max_steps: Optional[int] = None,
    truncate: Optional[int] = None,
) -> NFResult:
    """Weak normal form of g against the reducer list.

    When ``track`` is set, the returned unit u and quotients q satisfy
    u * g = sum_k q_k * reducers_k + remainder exactly.  ``max_steps`` bounds
    the division effort; on exhaustion the result carries ``aborted=True``
    (callers using the cap must treat the remainder as unusable).  With
    ``truncate`` the division runs modulo m^{truncate+1} (no tracking).

    The division is fraction-free: every elimination is an integer
    cross-multiplication a*h - b*x^m*f with gcd-reduced a, b, applied to the
    tracked unit and quotients alike, with periodic joint content strips.
    The returned triple is one consistent scalar multiple of the monic-unit
    normalization, which every caller treats interchangeably.
    """
    if truncate is not None and track:
        raise ValueError("tracking a truncated division is not meaningful")
    import math

    ring_ = g.ring
    rank = g.rank
    zero_exp = (0,) * ring_.n

    h = _WorkVector(mord, truncate)
    g_scale = Fraction(1)
    if not g.is_zero():
        g_terms, g_scale = _integer_terms(g, mord)
        for comp, exp, coeff in g_terms:
            h._introduce(comp, exp, coeff)
    unit_d: Optional[dict] = {zero_exp: 1} if track else None
    quots_d: Optional[List[dict]] = [dict() for _ in reducers] if track else None

    pool: List[_PoolEntry] = []
    entry_scale: List[Fraction] = []
    for idx, r in enumerate(reducers):
        if r.is_zero():
            continue
        terms, c = _integer_terms(r, mord)
        lt = leading_term(r, mord)
        pool.append(
            _PoolEntry(terms, (lt[0], lt[1], terms[0][2]), _ecart(r, lt), "orig", None, idx)
        )
        entry_scale.append(c)

    def materialize(steps: int, aborted: bool = False) -> NFResult:
        unit = quots = None
        if track:
            # u * g_int = sum Q_k * red_int_k + H with g = g_scale * g_int and
            # reducer_k = c_k * red_int_k, so u/g_scale and Q_k/c_k close the loop.
            unit = Poly._make(
                ring_, {e: Fraction(c) / g_scale for e, c in unit_d.items()}
            )
            quots = []
            live = 0
            for r in reducers:
                if r.is_zero():
                    quots.append(ring_.zero())
                    continue
                c = entry_scale[live]
                quots.append(
                    Poly._make(ring_, {e: Fraction(v) / c for e, v in quots_d[live].items()})
                )
                live += 1
            # reorder: quots_d is indexed by live reducers in pool order
        rem = h.to_element(ring_, rank, Fraction(1))
        return NFResult(rem, unit, quots, steps, aborted)

    if h.is_zero():
        return materialize(0)

    steps = 0
    while not h.is_zero():
        if max_steps is not None and steps >= max_steps:
            return materialize(steps, aborted=True)
        comp_h, exp_h, coeff_h = h.leading()
        best: Optional[_PoolEntry] = None
        for entry in pool:
            if entry.lt[0] == comp_h and _divides(entry.lt[1], exp_h):
                if best is None or entry.ecart < best.ecart:
                    best = entry
        if best is None:
            break
        ec_h = h.degree() - sum(exp_h)
        if best.ecart > ec_h:
            # Store the current partial remainder so later reductions may use it.
            snap_u = dict(unit_d) if track else None
            snap_q = [dict(q) for q in quots_d] if track else None
            pool.append(
                _PoolEntry(
                    h.snapshot_terms(),
                    (comp_h, exp_h, coeff_h),
                    ec_h,
                    "rem",
                    snap_u,
                    snap_q,
                )
            )
        c_f = best.lt[2]
        g0 = math.gcd(abs(coeff_h), abs(c_f))
        a = c_f // g0
        b = coeff_h // g0
        m_exp = tuple(p - q for p, q in zip(exp_h, best.lt[1]))
        h.combine(a, best.terms, b, m_exp)
        steps += 1
        if track:
            if best.tag == "orig":
                j = best.quots
                q = quots_d[j]
                if a != 1:
                    for qd in quots_d:
                        for key in qd:
                            qd[key] *= a
                    for key in unit_d:
                        unit_d[key] *= a
                s = q.get(m_exp, 0) + b
                if s == 0:
                    q.pop(m_exp, None)
                else:
                    q[m_exp] = s
            else:
                _dict_combine(unit_d, a, best.unit, b, m_exp)
                for q, q0 in zip(quots_d, best.quots):
                    _dict_combine(q, a, q0, b, m_exp)
        if steps % 16 == 0 and not h.is_zero():
            if track:
                # Joint content strip keeps the division identity intact.
                g_all = 0
                for coeff in h.terms.values():
                    g_all = math.gcd(g_all, coeff)
                for coeff in unit_d.values():
                    g_all = math.gcd(g_all, coeff)
                    if g_all == 1:
                        break
                if g_all > 1:
                    for qd in quots_d:
                        for coeff in qd.values():
                            g_all = math.gcd(g_all, coeff)
                            if g_all == 1:
                                break
                        if g_all == 1:
                            break
                if g_all > 1:
                    for key in h.terms:
                        h.terms[key] //= g_all
                    for key in unit_d:
                        unit_d[key] //= g_all
                    for qd in quots_d:
                        for key in qd:
                            qd[key] //= g_all
            else:
                h.strip()
    return materialize(steps)


@dataclass
class BasisStats:
    """Diagnostics from one standard-basis computation."""

    input_generators: int = 0
    basis_size: int = 0
    pairs_considered: int = 0
    zero_reductions: int = 0
    reduction_steps: int = 0


@dataclass(frozen=True)
class StandardBasis:
    ring: PolyRing
    rank: int
    ordering: ModuleOrdering
    elements: Tuple[FreeModuleElement, ...]
    leading: Tuple[LeadingTerm, ...]
    combos: Optional[Tuple[Tuple[Poly, ...], ...]]  # rows over the input generators
    stats: BasisStats = field(compare=False, default_factory=BasisStats)
    truncated: Optional[int] = None  # basis of M + m^{truncated+1} when set

    def contains(self, elem: FreeModuleElement) -> bool:
        if self.truncated is not None:
            raise ValueError("membership against a truncated basis is not exact")
        return mora_normal_form(elem, self.elements, self.ordering).remainder.is_zero()

    def normal_form(self, elem: FreeModuleElement, track: bool = False) -> NFResult:
        if self.truncated is not None:
            raise ValueError("normal forms against a truncated basis are not exact")
        return mora_normal_form(elem, self.elements, self.ordering, track=track)


def standard_basis(
    gens: Sequence[FreeModuleElement],
    ordering: LocalOrdering | ModuleOrdering | None = None,
    track: bool = False,
    truncate: Optional[int] = None,
) -> StandardBasis:
    """Mora completion of the module generated by ``gens``.

    With ``track`` set, every basis element carries its exact polynomial
    combination over the input generators.  With ``truncate`` set, the result
    is a standard basis of M + m^{truncate+1} O^r: all arithmetic drops terms
    beyond the bound (s-pairs against the implicit power monomials reduce to
    zero automatically, since a local-ordering tail never has lower degree
    than its leading term); see ``quotient_codim_of`` for the certificate
    that turns this into an exact dimension.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("standard basis of the zero module is empty; handle upstream")
    ring_ = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if g.rank != rank or g.ring != ring_:
            raise ValueError("generators must share rank and ring context")
    if truncate is not None:
        if track:
            raise ValueError("tracking across a truncated basis is not meaningful")
        gens = [g.jet(truncate) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("all generators vanish modulo the truncation")
    if ordering is None:
        mord = ModuleOrdering(LocalOrdering())
    elif isinstance(ordering, LocalOrdering):
        mord = ModuleOrdering(ordering)
    else:
        mord = ordering

    stats = BasisStats(input_generators=len(gens))
    elements: List[FreeModuleElement] = []
    lts: List[LeadingTerm] = []
    combos: List[List[Poly]] = []
    npairs = itertools.count()
    pairs: List[Tuple[int, int, int, int]] = []  # (lcm degree, seq, i, j)

    def add_element(elem: FreeModuleElement, combo: Optional[List[Poly]]) -> None:
        c = _content(elem)
        if c != 1:
            inv = Fraction(1) / c
            elem = elem.scale(inv)
            if combo is not None:
                combo = [q.scale(inv) for q in combo]
        lt = leading_term(elem, mord)
        idx = len(elements)
        elements.append(elem)
        lts.append(lt)
        if track:
            combos.append(combo)
        for j in range(idx):
            if lts[j][0] != lt[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(lts[j][1], lt[1]))
            heapq.heappush(pairs, (sum(lcm), next(npairs), j, idx))

    for k, g in enumerate(gens):
        combo = None
        if track:
            combo = [ring_.zero()] * len(gens)
            combo[k] = ring_.one()
        add_element(g, combo)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        stats.pairs_considered += 1
        ci, ei, ai = lts[i]
        cj, ej, aj = lts[j]
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        mi = (Fraction(1) / ai, tuple(a - b for a, b in zip(lcm, ei)))
        mj = (Fraction(1) / aj, tuple(a - b for a, b in zip(lcm, ej)))
        s = elements[i].term_mul(*mi) - elements[j].term_mul(*mj)
        if s.is_zero():
            stats.zero_reductions += 1
            continue
        nf = mora_normal_form(s, elements, mord, track=track, truncate=truncate)
        stats.reduction_steps += nf.steps
        if nf.remainder.is_zero():
            stats.zero_reductions += 1
            continue
        combo_r = None
        if track:
            combo_s = [
                a.term_mul(*mi) - b.term_mul(*mj)
                for a, b in zip(combos[i], combos[j])
            ]
            combo_r = [c * nf.unit for c in combo_s]
            for b_idx, q in enumerate(nf.quotients):
                if q.is_zero():
                    continue
                combo_r = [c - q * cb for c, cb in zip(combo_r, combos[b_idx])]
        add_element(nf.remainder, combo_r)

    # Minimalize: drop elements whose leading term is divisible by another's.
    order_idx = sorted(range(len(elements)), key=lambda k: sum(lts[k][1]))
    kept: List[int] = []
    for k in order_idx:
        ck, ek, _ = lts[k]
        if any(lts[m][0] == ck and _divides(lts[m][1], ek) for m in kept):
            continue
        kept.append(k)
    kept.sort()
    final = tuple(elements[k] for k in kept)
    final_lts = tuple(lts[k] for k in kept)
    final_combos = tuple(tuple(combos[k]) for k in kept) if track else None
    stats.basis_size = len(final)
    return StandardBasis(
        ring_, rank, mord, final, final_lts, final_combos, stats, truncated=truncate
    )


def standard_basis_ideal(
    polys: Sequence[Poly], ordering: LocalOrdering | None = None, track: bool = False
) -> StandardBasis:
    gens = [ideal_element(p) for p in polys if not p.is_zero()]
    if not gens:
        raise ValueError("all ideal generators are zero; handle upstream")
    return standard_basis(gens, ordering, track=track)


# -- quotient dimension ------------------------------------------------------


@dataclass(frozen=True)
class CodimResult:
    """A natural number or the distinguished value INFINITE (value None)."""

    value: Optional[int]

    @classmethod
    def finite(cls, k: int) -> CodimResult:
        return cls(int(k))

    @classmethod
    def infinite(cls) -> CodimResult:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return "INFINITE" if self.value is None else str(self.value)


INFINITE = CodimResult.infinite()


def _standard_monomials(basis: StandardBasis):
    """Monomials outside the leading module, per component, or None if infinite.

    For a truncated basis the pure powers of degree truncated+1 are implicitly
    present, so the result is always finite there.
    """
    n = basis.ring.n
    out = []
    for comp in range(basis.rank):
        lts = [exp for (c, exp, _) in basis.leading if c == comp]
        if any(sum(e) == 0 for e in lts):
            out.append([])
            continue
        bounds = []
        for i in range(n):
            pure = [e[i] for e in lts if e[i] > 0 and all(e[j] == 0 for j in range(n) if j != i)]
            if basis.truncated is not None:
                pure.append(basis.truncated + 1)
            if not pure:
                return None
            bounds.append(min(pure))
        standard = []
        for mono in itertools.product(*(range(b) for b in bounds)):
            if basis.truncated is not None and sum(mono) > basis.truncated:
                continue  # inside the implicit m^{truncated+1}
            if not any(_divides(e, mono) for e in lts):
                standard.append(mono)
        out.append(standard)
    return out


def quotient_codim(basis: StandardBasis) -> CodimResult:
    """Dimension of O^r / M counted on monomials outside the leading module.

    INFINITE exactly when some component's leading-term ideal misses a pure
    power of some variable (and is not the unit ideal).
    """
    standard = _standard_monomials(basis)
    if standard is None:
        return INFINITE
    return CodimResult.finite(sum(len(s) for s in standard))


def quotient_codim_of(
    gens: Sequence[FreeModuleElement], rank: int, ordering: LocalOrdering | None = None
) -> CodimResult:
    """Codimension of the module generated by gens inside O^rank.

    Fast path: complete modulo m^{D+1} (which caps all intermediate degrees)
    and certify exactness by the standard-monomial bound.  If no standard
    monomial reaches degree D, every monomial of degree >= D lies in the true
    leading module as well (low-degree leading terms cannot involve the added
    power generators), so the truncated and true counts agree.  Otherwise the
    bound escalates, and finally the honest completion decides, including the
    INFINITE case.
    """
    live = [g for g in gens if not g.is_zero()]
    if not live:
        return INFINITE  # quotient is all of O^rank
    bound = min(8, 2 * max(g.degree() for g in live) + 2)
    for _ in range(4):
        if bound > 30:
            break
        sb = standard_basis(live, ordering, truncate=bound)
        standard = _standard_monomials(sb)
        if standard is not None and all(
            sum(m) < bound for comp in standard for m in comp
        ):
            return CodimResult.finite(sum(len(s) for s in standard))
        bound += max(4, bound // 2)
    return quotient_codim(standard_basis(live, ordering))


def ideal_codim(polys: Sequence[Poly], ordering: LocalOrdering | None = None) -> CodimResult:
    return quotient_codim_of([ideal_element(p) for p in polys], 1, ordering)


# -- membership with witnesses -----------------------------------------------


def unit_inverse_jet(u: Poly, bound: int) -> Poly:
    """Jet of 1/u for a local unit u, via Newton iteration."""
    c0 = u.constant_term()
    if c0 == 0:
        raise ValueError("not a unit in the local ring")
    ring_ = u.ring
    v = ring_.const(Fraction(1) / c0)
    prec = 1
    while prec <= bound:
        prec *= 2
        cap = min(prec - 1, bound)
        two = ring_.const(2)
        v = v.mul_jet(two - u.mul_jet(v, cap), cap)
    return v.jet(bound)


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Optional[Tuple[Poly, ...]]  # g = sum_k witness_k * gen_k mod deg > jet_bound
    unit: Optional[Poly]
    jet_bound: Optional[int]


def default_jet_bound(degrees: Sequence[int]) -> int:
    return 2 * max(degrees, default=1) + 2


def membership_with_witness(
    g: FreeModuleElement,
    gens: Sequence[FreeModuleElement],
    ordering: LocalOrdering | None = None,
    jet_bound: Optional[int] = None,
) -> Membership:
    """Exact membership decision plus a jet-truncated witness on success."""
    live = [x for x in gens if not x.is_zero()]
    if not live:
        return Membership(g.is_zero(), tuple() if g.is_zero() else None, None, jet_bound)
    if jet_bound is None:
        jet_bound = default_jet_bound([g.degree()] + [x.degree() for x in live])
    if jet_bound < 1:
        raise ValueError("jet bound must be at least 1")
    sb = standard_basis(live, ordering, track=True)
    nf = sb.normal_form(g, track=True)
    if not nf.remainder.is_zero():
        return Membership(False, None, None, None)
    ring_ = g.ring
    # u*g = sum_b q_b * basis_b and basis_b = sum_k combo_{b,k} * live_k exactly.
    c_over_live = [ring_.zero() for _ in live]
    for b_idx, q in enumerate(nf.quotients):
        if q.is_zero():
            continue
        for k, cb in enumerate(sb.combos[b_idx]):
            if not cb.is_zero():
                c_over_live[k] = c_over_live[k] + q * cb
    u_inv = unit_inverse_jet(nf.unit, jet_bound)
    witness_live = [u_inv.mul_jet(c, jet_bound) for c in c_over_live]
    # Re-expand over the original generator list (zeros get zero witnesses).
    witness: List[Poly] = []
    it = iter(witness_live)
    for x in gens:
        witness.append(ring_.zero() if x.is_zero() else next(it))
    return Membership(True, tuple(witness), nf.unit, jet_bound)


# -- module operations --------------------------------------------------------


def interreduce(
    gens: Sequence[FreeModuleElement],
    ordering: LocalOrdering | None = None,
    effort: int = 200,
) -> List[FreeModuleElement]:
    """Reduce each generator against the others; drops redundant ones.

    The generated module over the local ring is unchanged: Mora division
    replaces a generator by a unit multiple modulo the rest, and a generator
    whose division exceeds the step budget is simply kept as is (this is a
    cleanup pass, not a correctness requirement).
    """
    mord = ModuleOrdering(ordering or LocalOrdering())
    work = [g for g in gens if not g.is_zero()]
    seen = set()
    deduped = []
    for g in work:
        if g not in seen:
            seen.add(g)
            deduped.append(g)
    work = deduped
    for _ in range(4):
        changed = False
        out: List[FreeModuleElement] = []
        for i, g in enumerate(work):
            others = out + work[i + 1:]
            if not others:
                out.append(g)
                continue
            nf = mora_normal_form(g, others, mord, max_steps=effort)
            if nf.aborted:
                out.append(g)
                continue
            r = nf.remainder
            if r.is_zero():
                changed = True
                continue
            if r != g:
                changed = True
                c = _content(r)
                if c != 1:
                    r = r.scale(Fraction(1) / c)
            out.append(r)
        work = out
        if not changed:
            break
    return work


def module_sum(
    a: Sequence[FreeModuleElement],
    b: Sequence[FreeModuleElement],
    ordering: LocalOrdering | None = None,
) -> List[FreeModuleElement]:
    """Generators of M + N: concatenation followed by interreduction."""
    combined = [g for g in list(a) + list(b) if not g.is_zero()]
    if combined:
        ranks = {g.rank for g in combined}
        if len(ranks) > 1:
            raise ValueError(f"rank mismatch in module sum: {sorted(ranks)}")
    return interreduce(combined, ordering)


def syzygies(
    gens: Sequence[FreeModuleElement], ordering: LocalOrdering | None = None
) -> List[FreeModuleElement]:
    """Generators of the relation module {c : sum_k c_k * gen_k = 0}.

    Schreyer-style: take a tracked standard basis G = C * gens, lift every
    s-pair of G through its weak standard representation
    u * spoly(G_i, G_j) = sum_b q_b G_b to the relation
    u * (m_i e_i - m_j e_j) - q over G, and transport relations to the
    original generators through C.  The unit rows u_k e_k - q_k C coming from
    dividing each generator by G close the gap between the two generator
    sets.  Mora division yields standard representations (every quotient term
    enters at or below the leading term it cancels), which is exactly what
    the Schreyer argument needs, so these relations generate the full syzygy
    module over the local ring.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("syzygies of an empty generator list")
    ring_ = gens[0].ring
    r = gens[0].rank
    s = len(gens)
    base = ordering or LocalOrdering()
    mord = ModuleOrdering(base)
    live_idx = [k for k, g in enumerate(gens) if not g.is_zero()]
    relations: List[FreeModuleElement] = []
    # A zero generator is related to everything by the unit relation e_k.
    for k, g in enumerate(gens):
        if g.is_zero():
            comps = [ring_.zero()] * s
            comps[k] = ring_.one()
            relations.append(FreeModuleElement(ring_, comps))
    if live_idx:
        live = [gens[k] for k in live_idx]
        sb = standard_basis(live, base, track=True)
        basis = list(sb.elements)
        combos = [list(row) for row in sb.combos]

        def to_full_row(row_live: Sequence[Poly]) -> FreeModuleElement:
            comps = [ring_.zero()] * s
            for pos, k in enumerate(live_idx):
                comps[k] = row_live[pos]
            return FreeModuleElement(ring_, comps)

        lts = [leading_term(b, mord) for b in basis]
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if lts[i][0] != lts[j][0]:
                    continue
                ci, ei, ai = lts[i]
                cj, ej, aj = lts[j]
                lcm = tuple(max(a, b) for a, b in zip(ei, ej))
                mi = (Fraction(1) / ai, tuple(a - b for a, b in zip(lcm, ei)))
                mj = (Fraction(1) / aj, tuple(a - b for a, b in zip(lcm, ej)))
                spoly = basis[i].term_mul(*mi) - basis[j].term_mul(*mj)
                if spoly.is_zero():
                    rel_over_basis = [ring_.zero()] * len(basis)
                    rel_over_basis[i] = ring_.one().term_mul(*mi)
                    rel_over_basis[j] = -ring_.one().term_mul(*mj)
                else:
                    nf = mora_normal_form(spoly, basis, mord, track=True)
                    if not nf.remainder.is_zero():
                        raise AssertionError("standard basis fails its own s-pair")
                    rel_over_basis = [-q for q in nf.quotients]
                    rel_over_basis[i] = rel_over_basis[i] + nf.unit.term_mul(*mi)
                    rel_over_basis[j] = rel_over_basis[j] - nf.unit.term_mul(*mj)
                row = [ring_.zero()] * len(live)
                for b_idx, q in enumerate(rel_over_basis):
                    if q.is_zero():
                        continue
                    for k, cb in enumerate(combos[b_idx]):
                        if not cb.is_zero():
                            row[k] = row[k] + q * cb
                rel = to_full_row(row)
                if not rel.is_zero():
                    relations.append(rel)
        # Unit rows: u_k gen_k = sum q_b G_b lifts to u_k e_k - q_k C.
        for pos, g in enumerate(live):
            nf = mora_normal_form(g, basis, mord, track=True)
            if not nf.remainder.is_zero():
                raise AssertionError("generator does not reduce to zero against its basis")
            row = [ring_.zero()] * len(live)
            row[pos] = nf.unit
            for b_idx, q in enumerate(nf.quotients):
                if q.is_zero():
                    continue
                for k, cb in enumerate(combos[b_idx]):
                    if not cb.is_zero():
                        row[k] = row[k] - q * cb
            rel = to_full_row(row)
            if not rel.is_zero():
                relations.append(rel)
    # Safety net: every relation must evaluate to zero on the generators.
    for rel in relations:
        acc = FreeModuleElement(ring_, [ring_.zero()] * r)
        for c, g in zip(rel.comps, gens):
            if not c.is_zero():
                acc = acc + g.poly_mul(c)
        if not acc.is_zero():
            raise AssertionError("syzygy verification failed")
    return interreduce(relations, base)


def module_intersection(
    a: Sequence[FreeModuleElement],
    b: Sequence[FreeModuleElement],
    ordering: LocalOrdering | None = None,
) -> List[FreeModuleElement]:
    """Generators of M 	cap N from syzygies of the combined generator list."""
    a = [g for g in a if not g.is_zero()]
    b = [g for g in b if not g.is_zero()]
    if not a or not b:
        return []
    if a[0].rank != b[0].rank:
        raise ValueError(f"rank mismatch in intersection: {a[0].rank} vs {b[0].rank}")
    ring_ = a[0].ring
    rels = syzygies(a + b, ordering)
    out: List[FreeModuleElement] = []
    for rel in rels:
        acc = FreeModuleElement(ring_, [ring_.zero()] * a[0].rank)
        for c, g in zip(rel.comps[: len(a)], a):
            if not c.is_zero():
                acc = acc + g.poly_mul(c)
        if not acc.is_zero():
            out.append(acc)
    return interreduce(out, ordering)
