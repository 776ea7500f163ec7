"""Cross-checks against sympy's independent Groebner implementation."""

import random

import sympy

from krull.groebner import IdealRep, radical_member
from krull.poly import Ring


def to_sympy(f, syms):
    expr = 0
    for e, c in f.terms:
        term = sympy.Rational(c)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr


def random_poly(R, rng, deg=2, nterms=3):
    terms = []
    for _ in range(nterms):
        e = tuple(rng.randint(0, deg) for _ in R.vars)
        terms.append((e, rng.randint(-3, 3)))
    return R.from_terms(terms)


def test_basis_leading_ideals_match_sympy():
    rng = random.Random(2024)
    R = Ring(0, ["x", "y"])
    syms = sympy.symbols("x y")
    for _ in range(8):
        gens = [random_poly(R, rng) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ours = IdealRep(R, gens).basis_polys()
        theirs = sympy.groebner([to_sympy(g, syms) for g in gens],
                                *syms, order="grevlex")
        ours_set = {g.text() for g in ours}
        theirs_set = set()
        for e in theirs.exprs:
            p = sympy.Poly(e, *syms)
            lc = p.LC(order="grevlex")
            theirs_set.add(to_text(R, sympy.expand(e / lc), syms))
        assert ours_set == theirs_set


def to_text(R, expr, syms):
    poly = sympy.Poly(expr, *syms)
    terms = [(tuple(int(k) for k in mono), sympy.Rational(c))
             for mono, c in poly.terms()]
    from fractions import Fraction
    return R.from_terms([(m, Fraction(int(c.p), int(c.q))) for m, c in terms]).text()


def test_radical_membership_matches_sympy():
    rng = random.Random(99)
    R = Ring(0, ["x", "y"])
    syms = sympy.symbols("x y")
    t = sympy.Symbol("t_rab")
    for _ in range(8):
        gens = [random_poly(R, rng) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        f = random_poly(R, rng, deg=1, nterms=2)
        if not gens or f.is_zero():
            continue
        ours = radical_member(f, IdealRep(R, gens)) is not None
        sgens = [to_sympy(g, syms) for g in gens] + [1 - t * to_sympy(f, syms)]
        gb = sympy.groebner(sgens, t, *syms, order="lex")
        theirs = list(gb.exprs) == [1]
        assert ours == theirs
