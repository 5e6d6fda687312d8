"""Polynomial layer: arithmetic, orderings, derivations, substitution."""

import random
from fractions import Fraction

import pytest

from singinv.poly import (
    LocalOrdering,
    PolyRing,
    RingMismatchError,
    VectorField,
    compare_monomials,
    euler_field,
    inverse_map_jet,
    ring,
    substitute,
    substitute_jet,
    weighted_degree,
)
from oracles import convolution_mul

R2 = ring("x", "y")
R3 = ring("x", "y", "z")
X, Y = R2.gens()
X3, Y3, Z3 = R3.gens()


def random_poly(rng, ring_, max_deg=3, max_terms=4):
    terms = []
    for _ in range(rng.randrange(max_terms + 1)):
        exp = [0] * ring_.n
        for _ in range(rng.randrange(max_deg + 1)):
            exp[rng.randrange(ring_.n)] += 1
        terms.append((exp, Fraction(rng.randrange(-4, 5), rng.randrange(1, 4))))
    return ring_.from_terms(terms)


def test_multiply_binomial():
    assert (X + Y) * (X + Y) == X**2 + X * Y * R2.const(2) + Y**2


def test_multiply_identity():
    p = X**2 + Y**3 - R2.const(Fraction(3, 2)) * X * Y
    assert R2.one() * p == p


def test_multiply_matches_convolution_oracle():
    f = X3**2 + Y3**4 + Z3**5
    g = Y3 * Z3 + X3**3
    assert (f * g).terms == convolution_mul(f, g)


def test_ring_axioms_randomized():
    rng = random.Random(987)
    for _ in range(40):
        a, b, c = (random_poly(rng, R2) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_ring_context_mismatch():
    with pytest.raises(RingMismatchError):
        X * X3


def test_partial_derivative():
    f = X3**2 + Y3**4 + Z3**5
    assert f.diff(0) == X3.scale(2)
    assert (Y3 * Z3 + X3**3).diff(1) == Z3
    assert R3.const(7).diff(0).is_zero()
    with pytest.raises(IndexError):
        f.diff(3)


def test_apply_derivation_euler_identity():
    f = X3**2 + Y3**4 + Z3**5
    chi = euler_field(R3, [Fraction(1, 2), Fraction(1, 4), Fraction(1, 5)])
    assert chi.apply(f) == f


def test_apply_derivation_hamiltonian_kills_f():
    f = X3**2 + Y3**4 + Z3**5
    eta = VectorField(R3, [-f.diff(1), f.diff(0), R3.zero()])
    assert eta.apply(f).is_zero()


def test_apply_derivation_basic():
    d = VectorField(R2, [R2.one(), R2.zero()])
    assert d.apply(X) == R2.one()


def test_euler_identity_random_quasihomogeneous():
    rng = random.Random(321)
    for _ in range(20):
        w = [Fraction(1, rng.randrange(2, 6)) for _ in range(2)]
        terms = []
        # sample monomials on the weight-1 hyperplane
        for a in range(0, 13):
            for b in range(0, 13):
                if w[0] * a + w[1] * b == 1:
                    terms.append(((a, b), rng.randrange(-3, 4)))
        f = R2.from_terms(terms)
        if f.is_zero():
            continue
        assert euler_field(R2, w).apply(f) == f


def test_leibniz_rule_randomized():
    rng = random.Random(55)
    for _ in range(25):
        f, g = random_poly(rng, R2), random_poly(rng, R2)
        delta = VectorField(R2, [random_poly(rng, R2), random_poly(rng, R2)])
        assert delta.apply(f * g) == f * delta.apply(g) + g * delta.apply(f)


# -- local ordering ------------------------------------------------------------


def test_one_is_largest():
    ord_ = LocalOrdering()
    assert compare_monomials(ord_, (0, 0), (1, 0)) == "greater"
    assert compare_monomials(ord_, (0, 0), (0, 3)) == "greater"


def test_lower_degree_wins():
    ord_ = LocalOrdering()
    assert compare_monomials(ord_, (1, 0), (2, 0)) == "greater"


def test_tie_break_deterministic():
    ord_ = LocalOrdering()
    first = compare_monomials(ord_, (1, 0), (0, 1))
    for _ in range(5):
        assert compare_monomials(ord_, (1, 0), (0, 1)) == first
    assert first == "greater"  # revlex: x beats y at equal degree
    alt = LocalOrdering(tie_break="lex")
    assert compare_monomials(alt, (1, 0), (0, 1)) == "greater"


def test_ordering_multiplicative():
    for tie in ("revlex", "lex"):
        ord_ = LocalOrdering(tie_break=tie)
        rng = random.Random(7)
        for _ in range(100):
            u = tuple(rng.randrange(4) for _ in range(3))
            v = tuple(rng.randrange(4) for _ in range(3))
            w = tuple(rng.randrange(4) for _ in range(3))
            c = ord_.compare(u, v)
            uw = tuple(a + b for a, b in zip(u, w))
            vw = tuple(a + b for a, b in zip(v, w))
            assert ord_.compare(uw, vw) == c


def test_compare_length_mismatch():
    with pytest.raises(ValueError):
        LocalOrdering().compare((1, 0), (1, 0, 0))


# -- substitution ---------------------------------------------------------------


def test_substitute_identity():
    f = X**2 + Y**3 + X * Y
    phi = [X, Y]
    assert substitute_jet(f, phi, 2) == f.jet(2)
    assert substitute(f, phi) == f


def test_substitute_swap_symmetric():
    f = X * Y
    assert substitute(f, [Y, X]) == f


def test_substitute_shear():
    phi = [X + Y**2, Y]
    assert substitute_jet(X, phi, 2) == X + Y**2


def test_substitute_requires_origin():
    with pytest.raises(ValueError):
        substitute(X, [X + R2.one(), Y])


def test_substitute_requires_invertible_linear_part():
    with pytest.raises(ValueError):
        substitute(X, [X + Y, X + Y])


def test_substitute_jet_inverse_roundtrip():
    rng = random.Random(99)
    bound = 6
    for _ in range(10):
        phi = [
            X.scale(rng.choice([1, 2])) + Y.scale(rng.randrange(-1, 2))
            + R2.monomial((0, 2), rng.randrange(-2, 3)),
            Y.scale(rng.choice([1, -1])) + R2.monomial((2, 0), rng.randrange(-2, 3)),
        ]
        psi = inverse_map_jet(phi, bound)
        f = random_poly(rng, R2)
        back = substitute_jet(substitute_jet(f, phi, bound), psi, bound)
        assert back == f.jet(bound)


def test_weighted_degree():
    w = [Fraction(1, 2), Fraction(1, 3)]
    assert weighted_degree((2, 0), w) == 1
    assert weighted_degree((1, 1), w) == Fraction(5, 6)
