"""Exact arithmetic on word polynomials."""

from fractions import Fraction

from opal import poly as P
from opal.words import STAR

X = ("x",)
Y = ("y",)


def test_build_and_cancel():
    f = P.poly((X, 1), (Y, 2), (X, -1))
    assert f == {Y: Fraction(2)}
    assert P.monomial(X, 0) == {}
    assert P.poly() == {}


def test_add_sub_scale():
    f = P.poly((X, 1), (Y, Fraction(1, 2)))
    g = P.poly((X, -1), (Y, Fraction(1, 2)))
    assert P.add(f, g) == {Y: Fraction(1)}
    assert P.sub(f, f) == {}
    assert P.scale(f, 2) == {X: Fraction(2), Y: Fraction(1)}
    assert P.scale(f, 0) == {}


def test_mul_word():
    f = P.poly((X, 1), (Y, -1))
    assert P.mul_word(f, Y, "right") == {("x", "y"): Fraction(1),
                                         ("y", "y"): Fraction(-1)}
    assert P.mul_word(f, Y, "left") == {("y", "x"): Fraction(1),
                                        ("y", "y"): Fraction(-1)}


def test_substitute_poly():
    q = (("P", (STAR,)),)
    f = P.poly((X, 1), (Y, -2))
    out = P.substitute_poly(q, f)
    assert out == {(("P", ("x",)),): Fraction(1),
                   (("P", ("y",)),): Fraction(-2)}
    # substitution can merge monomials
    q2 = (STAR,)
    g = {("x",): Fraction(1), ("y",): Fraction(1)}
    assert P.substitute_poly(q2, g) == g


def test_support_equal():
    f = P.poly((X, 1), (Y, -1))
    assert P.support(f) == {X, Y}
    assert P.equal(f, dict(f))
