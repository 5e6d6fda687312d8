"""Numerical invariants of pairs (f, X) and their exact cross-identities.

All invariants are codimensions of explicitly constructed ideals or
submodules inside free modules over the local ring, computed through the
standard-basis engine.  The identity checks recompute both sides from
independent constructions; they are the test oracle for the whole engine,
so nothing here derives one number from another.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import derlog
from .derlog import GermPair
from .localstd import (
    INFINITE,
    CodimResult,
    FreeModuleElement,
    LocalOrdering,
    ideal_codim,
    module_intersection,
    module_sum,
    quotient_codim_of,
    standard_basis,
)
from .poly import Poly


class NotApplicableError(ValueError):
    """Raised when an invariant's hypothesis fails (e.g. an infinite input)."""


def milnor(f: Poly, ordering: LocalOrdering | None = None) -> CodimResult:
    """dim O_n / J(f)."""
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    n = f.ring.n
    return ideal_codim([f.diff(i) for i in range(n)], ordering)


def tjurina(f: Poly, ordering: LocalOrdering | None = None) -> CodimResult:
    """dim O_n / (J(f) + <f>)."""
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    n = f.ring.n
    return ideal_codim([f.diff(i) for i in range(n)] + [f], ordering)


def _derivative_ideal(pair: GermPair, ordering: LocalOrdering | None = None) -> List[Poly]:
    theta = derlog.logarithmic_module(pair.xgens, ordering)
    return [delta.apply(pair.f) for delta in theta]


def br_milnor(pair: GermPair, ordering: LocalOrdering | None = None) -> CodimResult:
    """Bruce-Roberts Milnor number: dim O_n / df(Theta_X)."""
    return ideal_codim(_derivative_ideal(pair, ordering), ordering)


def br_tjurina(pair: GermPair, ordering: LocalOrdering | None = None) -> CodimResult:
    """Bruce-Roberts Tjurina number: dim O_n / (df(Theta_X) + <f>)."""
    return ideal_codim(_derivative_ideal(pair, ordering) + [pair.f], ordering)


def relative_numbers(
    pair: GermPair, ordering: LocalOrdering | None = None
) -> Tuple[CodimResult, CodimResult]:
    """(dim Theta/(Theta_X + H_Y), dim Theta/(Theta_X + Theta_Y)) for Y = f^{-1}(0)."""
    n = pair.ring.n
    theta_x = derlog.fields_to_elements(derlog.logarithmic_module(pair.xgens, ordering))
    ham = derlog.fields_to_elements(derlog.hamiltonian_module(pair.f))
    theta_y = derlog.fields_to_elements(derlog.logarithmic_module([pair.f], ordering))
    mubar = quotient_codim_of(module_sum(theta_x, ham, ordering), n, ordering)
    taubar = quotient_codim_of(module_sum(theta_x, theta_y, ordering), n, ordering)
    return mubar, taubar


def icis_milnor(f: Poly, h: Poly, ordering: LocalOrdering | None = None) -> CodimResult:
    """Milnor number of the complete-intersection germ (f, h) via Le-Greuel.

    mu(f, h) = dim O_n/(<f> + J(f, h)) - mu(f); requires mu(f) finite.
    """
    mu_f = milnor(f, ordering)
    if not mu_f.is_finite:
        raise NotApplicableError("mu(f) is infinite; the Le-Greuel formula needs mu(f) < oo")
    total = ideal_codim([f] + derlog.jacobian_pair_minors(f, h), ordering)
    if not total.is_finite:
        return INFINITE
    return CodimResult.finite(total.value - mu_f.value)


def icis_tjurina(f: Poly, h: Poly, ordering: LocalOrdering | None = None) -> CodimResult:
    """Tjurina number of the complete-intersection germ (f, h).

    Codimension of d(f,h)(Theta) + <f, h> O^2 inside the rank-2 free module.
    """
    if f.ring != h.ring:
        raise ValueError("pair members in different ring contexts")
    ring_ = f.ring
    n = ring_.n
    gens = [FreeModuleElement(ring_, [f.diff(i), h.diff(i)]) for i in range(n)]
    for g in (f, h):
        gens.append(FreeModuleElement(ring_, [g, ring_.zero()]))
        gens.append(FreeModuleElement(ring_, [ring_.zero(), g]))
    return quotient_codim_of(gens, 2, ordering)


def taubar_pair(f: Poly, h: Poly, ordering: LocalOrdering | None = None) -> CodimResult:
    """dim Theta/(Theta_{h^{-1}(0)} + Theta_{f^{-1}(0)}); symmetric in f and h."""
    if f.ring != h.ring:
        raise ValueError("pair members in different ring contexts")
    n = f.ring.n
    tx = derlog.fields_to_elements(derlog.logarithmic_module([h], ordering))
    ty = derlog.fields_to_elements(derlog.logarithmic_module([f], ordering))
    return quotient_codim_of(module_sum(tx, ty, ordering), n, ordering)


# -- the assembled report -----------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    status: str  # "holds" | "fails" | "not-applicable"
    detail: str = ""
    kind: str = "identity"  # "identity" must hold; "observation" is input-dependent

    def to_dict(self) -> Dict[str, str]:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "kind": self.kind,
        }


@dataclass
class ConjectureLog:
    """Tally of observed instances of the chain mu(f,h) >= tau(f,h) >= taubar(f,h).

    The chain is recorded as empirical evidence, never asserted as a theorem.
    """

    instances: int = 0
    violations: List[str] = field(default_factory=list)

    def record(self, label: str, mu: CodimResult, tau: CodimResult, taubar: CodimResult) -> bool:
        self.instances += 1
        ok = (
            mu.is_finite
            and tau.is_finite
            and taubar.is_finite
            and mu.value >= tau.value >= taubar.value
        )
        if not ok:
            self.violations.append(
                f"{label}: mu={mu} tau={tau} taubar={taubar}"
            )
        return ok


@dataclass
class InvariantReport:
    mu_f: CodimResult
    tau_f: CodimResult
    mu_h: Optional[CodimResult]
    tau_h: Optional[CodimResult]
    mu_X_f: CodimResult
    tau_X_f: CodimResult
    mu_Y_h: Optional[CodimResult]
    tau_Y_h: Optional[CodimResult]
    mubar_X_f: CodimResult
    taubar_X_f: CodimResult
    mu_icis: Optional[CodimResult]
    tau_icis: Optional[CodimResult]
    taubar_pair: Optional[CodimResult]
    identity_checks: List[IdentityCheck]

    def check(self, name: str) -> IdentityCheck:
        for c in self.identity_checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def all_applicable_hold(self) -> bool:
        """True when no theorem-backed identity fails (observations don't gate)."""
        return all(
            c.status != "fails" for c in self.identity_checks if c.kind == "identity"
        )

    def to_dict(self) -> Dict[str, object]:
        def enc(v: Optional[CodimResult]):
            if v is None:
                return None
            return "INFINITE" if not v.is_finite else v.value

        return {
            "mu_f": enc(self.mu_f),
            "tau_f": enc(self.tau_f),
            "mu_h": enc(self.mu_h),
            "tau_h": enc(self.tau_h),
            "mu_X_f": enc(self.mu_X_f),
            "tau_X_f": enc(self.tau_X_f),
            "mu_Y_h": enc(self.mu_Y_h),
            "tau_Y_h": enc(self.tau_Y_h),
            "mubar_X_f": enc(self.mubar_X_f),
            "taubar_X_f": enc(self.taubar_X_f),
            "mu_icis": enc(self.mu_icis),
            "tau_icis": enc(self.tau_icis),
            "taubar_pair": enc(self.taubar_pair),
            "identity_checks": [c.to_dict() for c in self.identity_checks],
        }

    def format_table(self) -> str:
        def cell(v: Optional[CodimResult]) -> str:
            return "-" if v is None else str(v)

        rows = [
            ("", "pair (f,h)", "f vs X", "h vs Y"),
            ("mu", cell(self.mu_icis), cell(self.mu_X_f), cell(self.mu_Y_h)),
            ("tau", cell(self.tau_icis), cell(self.tau_X_f), cell(self.tau_Y_h)),
            ("taubar", cell(self.taubar_pair), cell(self.taubar_X_f), "-"),
        ]
        head = [
            f"mu(f)  = {self.mu_f}   tau(f) = {self.tau_f}",
        ]
        if self.mu_h is not None:
            head.append(f"mu(h)  = {self.mu_h}   tau(h) = {self.tau_h}")
        head.append(f"mubar  = {self.mubar_X_f}")
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        table = [
            "  ".join(val.rjust(w) for val, w in zip(r, widths)) for r in rows
        ]
        checks = [
            f"{c.name}: {c.status}" + (f" ({c.detail})" if c.detail else "")
            for c in self.identity_checks
        ]
        return "\n".join(head + [""] + table + [""] + checks)


def _both(a: CodimResult, b: CodimResult) -> bool:
    return a.is_finite and b.is_finite


def full_report(
    pair: GermPair,
    ordering: LocalOrdering | None = None,
    conjecture_log: ConjectureLog | None = None,
) -> InvariantReport:
    """Compute every applicable invariant of the pair and cross-check identities.

    When X is a hypersurface with isolated singularity the report additionally
    covers the complete-intersection numbers of (f, h), the swapped pair
    (h against Y = f^{-1}(0)), and the equivalences tying them together.
    """
    f = pair.f
    ring_ = pair.ring
    n = ring_.n
    checks: List[IdentityCheck] = []

    mu_f = milnor(f, ordering)
    tau_f = tjurina(f, ordering)

    theta_x_fields = derlog.logarithmic_module(pair.xgens, ordering)
    theta_x = derlog.fields_to_elements(theta_x_fields)
    dfx = [delta.apply(f) for delta in theta_x_fields]
    mu_X_f = ideal_codim(dfx, ordering)
    tau_X_f = ideal_codim(dfx + [f], ordering)

    ham = derlog.fields_to_elements(derlog.hamiltonian_module(f))
    theta_y_fields = derlog.logarithmic_module([f], ordering)
    theta_y = derlog.fields_to_elements(theta_y_fields)
    mubar = quotient_codim_of(module_sum(theta_x, ham, ordering), n, ordering)
    taubar_x = quotient_codim_of(module_sum(theta_x, theta_y, ordering), n, ordering)

    if mu_f.is_finite and tau_f.is_finite and mu_f.value < tau_f.value:
        raise AssertionError("mu(f) < tau(f): engine inconsistency")
    if _both(mu_X_f, tau_X_f) and mu_X_f.value < tau_X_f.value:
        raise AssertionError("mu_X(f) < tau_X(f): engine inconsistency")

    def add(name: str, applicable: bool, holds: bool | None, detail: str = "") -> None:
        if not applicable:
            checks.append(IdentityCheck(name, "not-applicable", detail))
        else:
            checks.append(IdentityCheck(name, "holds" if holds else "fails", detail))

    # mu_X = mu + mubar
    ok = _both(mu_X_f, mu_f) and mubar.is_finite
    add(
        "mu_decomposition",
        ok,
        ok and mu_X_f.value == mu_f.value + mubar.value,
        f"{mu_X_f} = {mu_f} + {mubar}",
    )
    # tau_X = tau + taubar
    ok = _both(tau_X_f, tau_f) and taubar_x.is_finite
    add(
        "tau_decomposition",
        ok,
        ok and tau_X_f.value == tau_f.value + taubar_x.value,
        f"{tau_X_f} = {tau_f} + {taubar_x}",
    )
    # difference form
    ok = all(v.is_finite for v in (mu_X_f, tau_X_f, mu_f, tau_f, mubar, taubar_x))
    add(
        "difference_decomposition",
        ok,
        ok
        and mu_X_f.value - tau_X_f.value
        == (mu_f.value - tau_f.value) + (mubar.value - taubar_x.value),
    )

    # Hypersurface-X branch.
    mu_h = tau_h = mu_Y_h = tau_Y_h = mu_ic = tau_ic = taubar_p = None
    hypersurface = len(pair.xgens) == 1
    if hypersurface:
        h = pair.xgens[0]
        mu_h = milnor(h, ordering)
        tau_h = tjurina(h, ordering)
    if hypersurface and mu_h.is_finite:
        h = pair.xgens[0]
        dhy = [delta.apply(h) for delta in theta_y_fields]
        mu_Y_h = ideal_codim(dhy, ordering)
        tau_Y_h = ideal_codim(dhy + [h], ordering)
        mu_ic = icis_milnor(f, h, ordering) if mu_f.is_finite else None
        tau_ic = icis_tjurina(f, h, ordering)
        taubar_p = taubar_x  # Theta_{h^-1(0)} = Theta_X here, by construction

        # mu_X = mu(f) + mu(f,h) + mu(h) - tau(h)
        ok = (
            mu_ic is not None
            and all(v.is_finite for v in (mu_X_f, mu_f, mu_ic, mu_h, tau_h))
        )
        add(
            "ihs_milnor_formula",
            ok,
            ok
            and mu_X_f.value
            == mu_f.value + mu_ic.value + mu_h.value - tau_h.value,
            f"{mu_X_f} = {mu_f} + {mu_ic} + {mu_h} - {tau_h}" if ok else "",
        )
        # mu_X - tau_X = (mu-tau)(f) + (mu-tau)(h) + mu(f,h) - taubar(f,h)
        ok = (
            mu_ic is not None
            and all(
                v.is_finite
                for v in (mu_X_f, tau_X_f, mu_f, tau_f, mu_h, tau_h, mu_ic, taubar_p)
            )
        )
        add(
            "ihs_difference_formula",
            ok,
            ok
            and mu_X_f.value - tau_X_f.value
            == (mu_f.value - tau_f.value)
            + (mu_h.value - tau_h.value)
            + mu_ic.value
            - taubar_p.value,
        )
        # mu_X(f) - tau_X(f) = mu_Y(h) - tau_Y(h)
        ok = all(v.is_finite for v in (mu_X_f, tau_X_f, mu_Y_h, tau_Y_h))
        add(
            "pair_symmetry",
            ok,
            ok
            and mu_X_f.value - tau_X_f.value == mu_Y_h.value - tau_Y_h.value,
            f"{mu_X_f}-{tau_X_f} vs {mu_Y_h}-{tau_Y_h}" if ok else "",
        )

        # Module identity Theta_Y = Theta_X cap Theta_Y + H_Y, checked both ways,
        # and the equivalence mu_X = tau_X <=> (mu = tau and the module identity).
        if _both(mu_X_f, tau_X_f) and _both(mu_f, tau_f):
            inter = derlog.fields_to_elements(
                derlog.tangent_fields([list(pair.xgens), [f]], ordering=ordering)
            )
            rhs_gens = module_sum(inter, ham, ordering)
            eq7 = _modules_equal(theta_y, rhs_gens, ordering)
            # Whether the module identity holds is a fact about the pair, not
            # a theorem; the theorem is its equivalence with mu_X = tau_X.
            checks.append(
                IdentityCheck(
                    "module_decomposition",
                    "holds" if eq7 else "fails",
                    "Theta_Y = Theta_X cap Theta_Y + H_Y (bidirectional membership)",
                    kind="observation",
                )
            )
            lhs = mu_X_f.value == tau_X_f.value
            rhs = (mu_f.value == tau_f.value) and eq7
            add(
                "br_equality_equivalence",
                True,
                lhs == rhs,
                f"mu_X=tau_X is {lhs}; (mu=tau and module identity) is {rhs}",
            )
        else:
            checks.append(
                IdentityCheck("module_decomposition", "not-applicable", kind="observation")
            )
            add("br_equality_equivalence", False, None)

        # mu_X = tau_X <=> mu(f)=tau(f), mu(h)=tau(h), mu(f,h)=taubar(f,h)
        ok = (
            mu_ic is not None
            and all(
                v.is_finite
                for v in (mu_X_f, tau_X_f, mu_f, tau_f, mu_h, tau_h, mu_ic, taubar_p)
            )
        )
        if ok:
            lhs = mu_X_f.value == tau_X_f.value
            rhs = (
                mu_f.value == tau_f.value
                and mu_h.value == tau_h.value
                and mu_ic.value == taubar_p.value
            )
            add("ihs_equality_equivalence", True, lhs == rhs)
        else:
            add("ihs_equality_equivalence", False, None)

        # Observed chain mu(f,h) >= tau(f,h) >= taubar(f,h): logged, not
        # asserted, and only where the intersection germ has positive
        # dimension (the classical mu >= tau inequality is a dim >= 1
        # statement; zero-dimensional pairs genuinely violate it).
        if n >= 3 and mu_ic is not None and tau_ic.is_finite and taubar_p.is_finite:
            log = conjecture_log if conjecture_log is not None else ConjectureLog()
            held = log.record(f"f={f.format()}; h={h.format()}", mu_ic, tau_ic, taubar_p)
            checks.append(
                IdentityCheck(
                    "icis_chain_observed",
                    "holds" if held else "fails",
                    f"observed {mu_ic} >= {tau_ic} >= {taubar_p}",
                    kind="observation",
                )
            )
        else:
            why = "" if n >= 3 else "zero-dimensional intersection germ"
            checks.append(
                IdentityCheck("icis_chain_observed", "not-applicable", why, kind="observation")
            )
    else:
        why = "X is not a hypersurface with isolated singularity"
        for name in (
            "ihs_milnor_formula",
            "ihs_difference_formula",
            "pair_symmetry",
            "br_equality_equivalence",
            "ihs_equality_equivalence",
        ):
            add(name, False, None, why)
        for name in ("module_decomposition", "icis_chain_observed"):
            checks.append(IdentityCheck(name, "not-applicable", why, kind="observation"))

    return InvariantReport(
        mu_f=mu_f,
        tau_f=tau_f,
        mu_h=mu_h,
        tau_h=tau_h,
        mu_X_f=mu_X_f,
        tau_X_f=tau_X_f,
        mu_Y_h=mu_Y_h,
        tau_Y_h=tau_Y_h,
        mubar_X_f=mubar,
        taubar_X_f=taubar_x,
        mu_icis=mu_ic,
        tau_icis=tau_ic,
        taubar_pair=taubar_p,
        identity_checks=checks,
    )


def _modules_equal(
    a: Sequence[FreeModuleElement],
    b: Sequence[FreeModuleElement],
    ordering: LocalOrdering | None = None,
) -> bool:
    """Bidirectional membership of generator sets."""
    if not a and not b:
        return True
    if not a or not b:
        return False
    sb_a = standard_basis(list(a), ordering)
    sb_b = standard_basis(list(b), ordering)
    return all(sb_b.contains(g) for g in a) and all(sb_a.contains(g) for g in b)
