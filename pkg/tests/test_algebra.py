from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pvseq.algebra import PoleError, Poly, RatFunc, ZeroPolynomial, poly_integer_roots
from pvseq.parsing import ParseError, parse_ratfunc

P = parse_ratfunc


def test_eval_numerator_root():
    assert P("(z-4)/(z-5)")(4) == 0


def test_eval_pole():
    with pytest.raises(PoleError) as exc:
        P("(z-4)/(z-5)")(5)
    assert exc.value.point == 5


def test_eval_hand_value():
    # (9 + 1) / (3 + 2)
    assert P("(z^2+1)/(z+2)")(3) == 2


def test_shift_examples():
    assert P("z").shift(1) == P("z+1")
    assert P("1/(z-1)").shift(1) == P("1/z")
    assert P("(z-4)/(z-5)").shift(5) == P("(z+1)/z")


def test_integer_roots_examples():
    assert poly_integer_roots(Poly.from_roots([5, -2])) == {-2, 5}
    assert poly_integer_roots(P("z^2+1").num) == set()
    with pytest.raises(ZeroPolynomial):
        poly_integer_roots(Poly())


def test_integer_roots_against_scan():
    p = P("z*(z-3)^2").num
    scanned = {i for i in range(-100, 101) if p(i) == 0}
    assert poly_integer_roots(p) == scanned == {0, 3}


def test_rational_coefficients_and_leading_coefficient():
    p = Poly([Fraction(-7, 2), Fraction(7, 3), Fraction(1, 6)])  # (z^2 + 14 z - 21) / 6
    scanned = {i for i in range(-200, 201) if p(i) == 0}
    assert poly_integer_roots(p) == scanned


def test_canonical_form_is_structural():
    h = P("(2*z+2)/(4*z^2-4)")
    assert h == P("(1/2)/(z-1)")
    assert h.den.lead == 1
    assert str(h) == "(1/2)/(z - 1)"


def test_zero_canonical():
    h = P("0/(z+7)")
    assert h.num.is_zero() and h.den == Poly.const(1)


@pytest.mark.parametrize("text", ["(z^2+1)/(z-3)", "-z^2/(2*z+4)", "z/2 + 1/3", "1/z^2", "7", "-3/5"])
def test_str_round_trip(text):
    h = P(text)
    assert P(str(h)) == h


@pytest.mark.parametrize("text,pos", [("z/(z-z)", 1), ("z + * 2", 4), ("(z+1", 4), ("z^-1", 1),
                                      ("y+1", 0), ("2 $ z", 2), ("", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        P(text)
    assert exc.value.position == pos


def test_precedence():
    assert P("-z^2")(3) == -9
    assert P("(2^3)^2") == P("64")
    assert P("1/2*z") == P("z/2")


small_int = st.integers(-6, 6)
polys = st.lists(small_int, min_size=1, max_size=4).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.tuples(polys, nonzero_polys).map(lambda t: RatFunc(t[0], t[1]))


@given(polys, nonzero_polys, nonzero_polys)
def test_scaling_numerator_and_denominator_is_invisible(num, den, a):
    assert RatFunc(a * num, a * den) == RatFunc(num, den)


@given(ratfuncs, ratfuncs, st.integers(-5, 5))
def test_shift_is_ring_action(h1, h2, t):
    assert (h1 * h2).shift(t) == h1.shift(t) * h2.shift(t)
    assert (h1 + h2).shift(t) == h1.shift(t) + h2.shift(t)
    assert h1.shift(t).shift(-t) == h1


@settings(max_examples=60)
@given(ratfuncs, st.integers(-20, 20))
def test_eval_commutes_with_shift(h, i):
    try:
        lhs = h.shift(1)(i)
    except PoleError:
        with pytest.raises(PoleError):
            h(i + 1)
        return
    assert lhs == h(i + 1)


@given(ratfuncs, ratfuncs)
def test_field_identities(a, b):
    assert (a + b) - b == a
    if not b.is_zero():
        assert (a / b) * b == a


@given(nonzero_polys)
def test_integer_roots_match_bounded_scan(p):
    # coefficients in [-6, 6] keep every integer root within the Cauchy bound 7
    assert poly_integer_roots(p) == {i for i in range(-8, 9) if p(i) == 0}
