"""Shared fixture corpus: identity-suite pairs and round-trip constructions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from singinv.cli import parse_poly
from singinv.derlog import GermPair
from singinv.poly import Poly, PolyRing, substitute

XY = ("x", "y")
XYZ = ("x", "y", "z")


def pair(names: Sequence[str], f: str, xgens: Sequence[str]) -> GermPair:
    ring_ = PolyRing(tuple(names))
    return GermPair(parse_poly(ring_, f), tuple(parse_poly(ring_, h) for h in xgens))


# (class, variables, f, xgens); mu_X is finite for every entry except the one
# marked infinite, which exercises the INFINITE pathway.
IDENTITY_CORPUS: List[Tuple[str, Tuple[str, ...], str, Tuple[str, ...]]] = [
    ("smooth", XY, "x^2+y^2", ("x",)),
    ("smooth", XY, "x^2+y^3", ("x",)),
    ("smooth", XY, "x+y^2", ("y",)),
    ("smooth", XY, "x^3+y^3", ("x",)),
    ("smooth", XY, "x^2+y^5", ("y",)),
    ("ihs", XY, "x^2+y^3", ("x^2+y^2",)),
    ("ihs", XY, "x^2+y^2", ("x^2+y^3",)),
    ("ihs", XY, "x^3+y^4", ("x*y",)),
    ("ihs", XY, "x^2+y^5", ("x*y",)),
    ("ihs", XY, "x^2+y^3+x*y^2", ("x^2-y^2",)),
    ("nonhyp", XY, "x^2+y^3", ("x", "y")),
    ("nonhyp", XY, "x^2+y^2", ("x", "y")),
    ("nonhyp", XY, "x^3+y^4+x*y^2", ("x", "y")),
    ("smooth", XYZ, "x^2+y^2+z^2", ("x",)),
    ("smooth", XYZ, "x+y^2+z^2", ("x",)),
    ("smooth", XYZ, "x^2+y^3+z^5", ("z",)),
    ("ihs", XYZ, "x^2+y^4+z^5", ("y*z+x^3",)),
    ("ihs", XYZ, "x^2+y^3+z^3", ("x*y+z^2",)),
    ("ihs", XYZ, "x^3+y^3+z^3", ("x^2+y^2+z^2",)),
    ("ihs", XYZ, "x^2+y^2+z^2", ("x^2+y^3+z^3",)),
    ("nonhyp", XYZ, "x^2+y^2+z^2", ("x", "y")),
    ("nonhyp", XYZ, "x^2+y^3+z^4", ("x", "y")),
    ("nonhyp", XYZ, "x^2+y^2+z^2", ("x*y", "x*z", "y*z")),
    ("nonhyp", XYZ, "x^2+y^3+z^5", ("x*y", "x*z", "y*z")),
]

INFINITE_PAIR = ("ihs", XYZ, "x^2+y^2+z^3", ("x^2+y^2+z^2",))


def identity_pairs():
    for cls, names, f, xgens in IDENTITY_CORPUS:
        yield cls, pair(names, f, xgens)


# -- round-trip constructions ---------------------------------------------------


@dataclass(frozen=True)
class RoundTrip:
    name: str
    names: Tuple[str, ...]
    f0: str
    xgens0: Tuple[str, ...]
    weights: Tuple[Fraction, ...]
    seed: int


F = Fraction

ROUND_TRIPS: List[RoundTrip] = [
    RoundTrip("rt-a2-smooth", XY, "x^2+y^3", ("y",), (F(1, 2), F(1, 3)), 11),
    RoundTrip("rt-a3-mixed", XY, "x^2+y^4+x*y^2", ("x",), (F(1, 2), F(1, 4)), 12),
    RoundTrip("rt-m3-plane", XY, "x^3+y^4", ("x*y",), (F(1, 3), F(1, 4)), 13),
    RoundTrip("rt-equal-w", XY, "x^3+y^3+x*y^2", ("x+y",), (F(1, 3), F(1, 3)), 14),
    RoundTrip("rt-brieskorn", XYZ, "x^2+y^3+z^5", ("x*y",), (F(1, 2), F(1, 3), F(1, 5)), 15),
    RoundTrip("rt-repeated", XYZ, "x^2+y^4+z^4+y^2*z^2", ("y*z",), (F(1, 2), F(1, 4), F(1, 4)), 16),
    RoundTrip("rt-m3-space", XYZ, "x^3+y^4+z^5", ("z",), (F(1, 3), F(1, 4), F(1, 5)), 17),
    RoundTrip("rt-line", XYZ, "x^2+y^3+z^4", ("x", "y"), (F(1, 2), F(1, 3), F(1, 4)), 18),
    RoundTrip("rt-cubic-xy", XYZ, "x^3+y^3+z^4+x*y^2", ("x*y",), (F(1, 3), F(1, 3), F(1, 4)), 19),
    RoundTrip("rt-m3-steep", XYZ, "x^5+y^4+z^3", ("x",), (F(1, 5), F(1, 4), F(1, 3)), 20),
]


def random_automorphism(ring_: PolyRing, rng: random.Random, max_degree: int = 3) -> List[Poly]:
    """Random origin-preserving polynomial automorphism of degree <= max_degree.

    Built as unit-triangular linear layers composed with one triangular shear,
    so the exact inverse is again polynomial.
    """
    n = ring_.n
    gens = list(ring_.gens())

    def linear_layer() -> List[Poly]:
        lower = rng.random() < 0.5
        out = list(gens)
        for i in range(n):
            for j in range(n):
                if (j < i) if lower else (j > i):
                    c = rng.choice([0, 0, 1, -1, 2])
                    if c:
                        out[i] = out[i] + gens[j].scale(c)
        return out

    def shear_layer() -> List[Poly]:
        out = list(gens)
        i = rng.randrange(n)
        others = [j for j in range(n) if j != i]
        deg = rng.choice([2] * 3 + [3] * (1 if max_degree >= 3 else 0))
        exp = [0] * n
        for _ in range(deg):
            exp[rng.choice(others)] += 1
        c = rng.choice([1, -1, 2, Fraction(1, 2)])
        out[i] = out[i] + ring_.monomial(exp, c)
        return out

    layers = [linear_layer(), shear_layer()]
    if rng.random() < 0.5:
        layers.reverse()
    acc = list(gens)
    for layer in layers:
        acc = [substitute(p, layer) for p in acc]
    assert max(p.degree() for p in acc) <= max_degree
    return acc


def obfuscated_pair(rt: RoundTrip) -> GermPair:
    ring_ = PolyRing(rt.names)
    rng = random.Random(rt.seed)
    psi = random_automorphism(ring_, rng)
    f = substitute(parse_poly(ring_, rt.f0), psi)
    xgens = tuple(substitute(parse_poly(ring_, h), psi) for h in rt.xgens0)
    return GermPair(f, xgens)
