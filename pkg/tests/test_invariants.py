"""Invariants: classical numbers, Bruce-Roberts numbers, identities."""

import random
from fractions import Fraction

import pytest

from singinv.derlog import GermPair
from singinv.invariants import (
    ConjectureLog,
    NotApplicableError,
    br_milnor,
    br_tjurina,
    full_report,
    icis_milnor,
    icis_tjurina,
    milnor,
    relative_numbers,
    taubar_pair,
    tjurina,
)
from singinv.localstd import CodimResult
from singinv.poly import ring, substitute
from singinv.cli import parse_poly
from corpus import identity_pairs, pair, INFINITE_PAIR, XY, XYZ

R2 = ring("x", "y")
R3 = ring("x", "y", "z")
X, Y = R2.gens()
X3, Y3, Z3 = R3.gens()


def fin(k):
    return CodimResult.finite(k)


def test_milnor_values():
    assert milnor(X3**2 + Y3**4 + Z3**5) == fin(12)
    assert milnor(Y3 * Z3 + X3**3) == fin(2)
    assert milnor(X3**2 + Y3**2 + Z3**2) == fin(1)


def test_tjurina_values():
    assert tjurina(X3**2 + Y3**4 + Z3**5) == fin(12)
    assert tjurina(Y3 * Z3 + X3**3) == fin(2)
    assert tjurina(X**2 + Y**2) == fin(1)


def test_br_numbers_golden_pair():
    p = pair(XYZ, "x^2+y^4+z^5", ("y*z+x^3",))
    assert br_milnor(p) == fin(22)
    assert br_tjurina(p) == fin(21)


def test_br_numbers_nonisolated_pair():
    p = pair(XYZ, "x", ("x*y^3*z^3+y^5+z^5",))
    assert br_milnor(p) == fin(1)
    assert br_tjurina(p) == fin(1)


def test_br_smooth_derived():
    p = pair(XYZ, "x+y^2+z^2", ("x",))
    assert br_milnor(p) == fin(1)


def test_br_equal_for_quasihomogeneous_pair():
    p = pair(XY, "x^2+y^3", ("y",))
    mu = br_milnor(p)
    assert mu.is_finite
    assert br_tjurina(p) == mu


def test_relative_numbers_golden():
    p = pair(XYZ, "x^2+y^4+z^5", ("y*z+x^3",))
    mubar, taubar = relative_numbers(p)
    assert mubar == fin(10)
    assert taubar == fin(9)


def test_relative_numbers_tangent_smooth_pair():
    # X = {x=0} and Y = f^{-1}(0) are tangent; d_x lies in neither module,
    # so the sum has codimension 1 (consistent with the decompositions).
    p = pair(XYZ, "x+y^2+z^2", ("x",))
    mubar, taubar = relative_numbers(p)
    assert taubar == fin(1)
    rep = full_report(p)
    assert rep.check("tau_decomposition").status == "holds"


def test_relative_numbers_transverse_pair():
    p = pair(XYZ, "y", ("x",))
    _, taubar = relative_numbers(p)
    assert taubar == fin(0)


def test_icis_milnor_values():
    assert icis_milnor(X3**2 + Y3**4 + Z3**5, Y3 * Z3 + X3**3) == fin(10)
    assert icis_milnor(X3, X3**2 + Y3**2 + Z3**2) == fin(1)
    assert icis_milnor(X, Y) == fin(0)


def test_icis_milnor_requires_finite_mu():
    with pytest.raises(NotApplicableError):
        icis_milnor(X3 * Y3 * X3, Y3)  # f = x^2 y has non-isolated singularity


def test_icis_tjurina_values():
    assert icis_tjurina(X3**2 + Y3**4 + Z3**5, Y3 * Z3 + X3**3) == fin(10)
    assert icis_tjurina(X, Y) == fin(0)


def test_icis_tjurina_equals_milnor_for_common_weight_pairs():
    # curve germs cut out by two functions quasihomogeneous for one weight
    # system; their Milnor and Tjurina numbers must agree
    cases = [
        (X3**2 + Y3**4 + Z3**5, X3**2 - Y3**4),   # w = (1/2, 1/4, 1/5)
        (X3**2 + Y3**3 + Z3**4, Y3 * Z3),         # w = (1/2, 1/3, 1/4)
        (X3**2 + Y3**3 + Z3**5, X3 * Y3),         # w = (1/2, 1/3, 1/5)
    ]
    for f, h in cases:
        mu = icis_milnor(f, h)
        tau = icis_tjurina(f, h)
        assert mu.is_finite, (f.format(), h.format())
        assert mu == tau, (f.format(), h.format(), str(mu), str(tau))


def test_taubar_pair_golden_and_symmetry():
    f = X3**2 + Y3**4 + Z3**5
    h = Y3 * Z3 + X3**3
    assert taubar_pair(f, h) == fin(9)
    assert taubar_pair(h, f) == fin(9)


def test_taubar_pair_transverse():
    assert taubar_pair(X3, Y3 + Z3**2) == fin(0)


def test_full_report_golden_values():
    p = pair(XYZ, "x^2+y^4+z^5", ("y*z+x^3",))
    rep = full_report(p)
    d = rep.to_dict()
    assert d["mu_f"] == 12 and d["tau_f"] == 12
    assert d["mu_h"] == 2 and d["tau_h"] == 2
    assert d["mu_X_f"] == 22 and d["tau_X_f"] == 21
    assert d["mu_Y_h"] == 12 and d["tau_Y_h"] == 11
    assert d["mu_icis"] == 10 and d["tau_icis"] == 10
    assert d["mubar_X_f"] == 10 and d["taubar_X_f"] == 9
    assert d["taubar_pair"] == 9
    for name in ("mu_decomposition", "tau_decomposition", "difference_decomposition",
                 "ihs_milnor_formula", "ihs_difference_formula", "pair_symmetry",
                 "br_equality_equivalence", "ihs_equality_equivalence"):
        assert rep.check(name).status == "holds", name
    # the module identity legitimately fails here (mubar != taubar) and the
    # chain observation holds; neither is a theorem violation
    assert rep.check("module_decomposition").status == "fails"
    assert rep.check("module_decomposition").kind == "observation"
    assert rep.check("icis_chain_observed").status == "holds"
    assert rep.all_applicable_hold()


def test_full_report_momentum_on_nonisolated_example():
    p = pair(XYZ, "x", ("x*y^3*z^3+y^5+z^5",))
    rep = full_report(p)
    assert rep.mu_X_f == fin(1) and rep.tau_X_f == fin(1)
    # h has a non-isolated singularity, so the hypersurface branch is skipped
    assert rep.check("ihs_milnor_formula").status == "not-applicable"
    assert rep.all_applicable_hold()


def test_full_report_infinite_pathway():
    cls, names, f, xgens = INFINITE_PAIR
    rep = full_report(pair(names, f, xgens))
    assert not rep.mu_X_f.is_finite
    assert rep.check("mu_decomposition").status == "not-applicable"
    assert rep.all_applicable_hold()


def test_identity_corpus_all_hold():
    log = ConjectureLog()
    finite = 0
    classes = set()
    for cls, p in identity_pairs():
        rep = full_report(p, conjecture_log=log)
        if rep.mu_X_f.is_finite:
            finite += 1
            classes.add(cls)
        assert rep.all_applicable_hold(), (cls, p.f.format())
    assert finite >= 20
    assert classes == {"smooth", "ihs", "nonhyp"}
    assert log.violations == []


def test_dimensions_invariant_under_linear_change():
    rng = random.Random(2024)
    p = pair(XYZ, "x^2+y^3+z^3", ("x*y+z^2",))
    base = (
        milnor(p.f), tjurina(p.f), br_milnor(p), br_tjurina(p), relative_numbers(p)
    )
    for _ in range(2):
        while True:
            rows = [[Fraction(rng.randrange(-2, 3)) for _ in range(3)] for _ in range(3)]
            from singinv import linalg
            if linalg.inverse(rows) is not None:
                break
        phi = [
            sum((R3.var(j).scale(rows[i][j]) for j in range(3)), start=R3.zero())
            for i in range(3)
        ]
        q = GermPair(substitute(p.f, phi), tuple(substitute(h, phi) for h in p.xgens))
        got = (
            milnor(q.f), tjurina(q.f), br_milnor(q), br_tjurina(q), relative_numbers(q)
        )
        assert got == base


def test_mu_at_least_tau_on_corpus():
    for cls, p in identity_pairs():
        rep = full_report(p)
        if rep.mu_f.is_finite and rep.tau_f.is_finite:
            assert rep.mu_f.value >= rep.tau_f.value
        if rep.mu_X_f.is_finite and rep.tau_X_f.is_finite:
            assert rep.mu_X_f.value >= rep.tau_X_f.value
        if rep.mubar_X_f.is_finite and rep.taubar_X_f.is_finite:
            assert rep.mubar_X_f.value >= rep.taubar_X_f.value


def test_report_serialization_roundtrip():
    import json

    p = pair(XY, "x^2+y^3", ("x*y",))
    rep = full_report(p)
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["mu_X_f"] == rep.mu_X_f.value
    assert doc["identity_checks"][0]["name"] == rep.identity_checks[0].name


def test_format_table_mentions_all_numbers():
    p = pair(XYZ, "x^2+y^4+z^5", ("y*z+x^3",))
    text = full_report(p).format_table()
    for token in ("22", "21", "12", "11", "10", "9"):
        assert token in text
