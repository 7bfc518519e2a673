import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import leibniz_det
from rees_ag.errors import InputError, ParseError, RingMismatchError
from rees_ag.polyring import Polynomial, det_exact, minors2, poly_arith, polynomial_ring

R = polynomial_ring(["x", "y", "z"])
x, y, z = R.gens()


def P(text, ring=R):
    return ring.parse(text)


class TestParse:
    def test_single_monomial(self):
        f = P("y^2")
        assert f.terms == {(0, 2, 0): 1}

    def test_distributivity(self):
        assert P("x*(1-x)") == x - x * x
        assert str(P("x*(1-x)")) == "-x^2 + x"

    def test_cancellation(self):
        f = P("y*z - z*y")
        assert not f and f.terms == {}
        assert str(f) == "0"

    def test_precedence(self):
        assert P("-x^2") == -(x * x)
        assert P("2*x^2*y") == (x * x * y).scale(2)
        assert P("(x+y)^2") == x * x + (x * y).scale(2) + y * y

    def test_rational_constant_division(self):
        assert P("x/2") == x.scale(Fraction(1, 2))
        assert str(P("3*x^2*y - 1/2*z + 7")) == "3*x^2*y - 1/2*z + 7"

    @pytest.mark.parametrize("text,pos", [("2x", 1), ("x+*y", 2), ("(x", 2), ("x^y", 2), ("", 0)])
    def test_syntax_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as ei:
            P(text)
        assert ei.value.position == pos
        assert f"position {pos}" in str(ei.value)

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable 'w'"):
            P("x + w")

    def test_division_by_variable_rejected(self):
        with pytest.raises(ParseError):
            P("x/y")

    def test_fp_denominator_not_invertible(self):
        F2 = polynomial_ring(["x"], 2)
        with pytest.raises(InputError):
            P("x/2", F2)
        F5 = polynomial_ring(["x"], 5)
        assert P("x/2", F5) == F5.var(0).scale(3)

    def test_grlex_print_order(self):
        assert str(P("z + y^2 + x*z + x")) == "x*z + y^2 + x + z"


class TestRing:
    @pytest.mark.parametrize("names,p", [(["x", "x"], 0), ([], 0), (["x"], 4), (["1a"], 0)])
    def test_invalid_descriptors(self, names, p):
        with pytest.raises(InputError):
            polynomial_ring(names, p)

    def test_ring_mismatch(self):
        S = polynomial_ring(["x", "y"])
        with pytest.raises(RingMismatchError):
            poly_arith("add", x, S.var(0))

    def test_extend(self):
        S = R.extend(["X1", "X2"])
        assert S.variables == ("x", "y", "z", "X1", "X2")
        assert x.embed(S) == S.var("x")


class TestArith:
    def test_difference_of_squares(self):
        assert poly_arith("mul", x + y, x - y) == x * x - y * y

    def test_frobenius_in_char_two(self):
        F2 = polynomial_ring(["x", "y"], 2)
        a, b = F2.gens()
        assert (a + b) * (a + b) == a * a + b * b

    def test_additive_identity(self):
        f = P("x^3 - 2*y*z + 5")
        assert poly_arith("add", f, R.zero()) == f
        assert poly_arith("scale", f, 0) == R.zero()

    def test_fp_reduction(self):
        F3 = polynomial_ring(["x"], 3)
        t = F3.var(0)
        assert t.scale(3) == F3.zero()
        assert (t + 1) ** 3 == t ** 3 + 1

    def test_substitute_and_truncate(self):
        f = P("x^2 + y*z + z^3")
        assert f.substitute({0: y}) == P("y^2 + y*z + z^3")
        assert f.truncate(3) == P("x^2 + y*z")
        assert f.order() == 2 and f.degree() == 3


class TestDet:
    def test_diagonal(self):
        assert det_exact([[y, R.zero()], [R.zero(), z]]) == y * z

    def test_two_by_two_minor(self):
        S = polynomial_ring(["a1", "a2", "X1", "X2"])
        a1, a2, X1, X2 = S.gens()
        assert det_exact([[X1, X2], [a1, a2]]) == X1 * a2 - X2 * a1
        assert minors2([X1, X2], [a1, a2]) == [X1 * a2 - X2 * a1]

    def test_equal_rows(self):
        row = [x, y + z, P("x*y")]
        assert det_exact([row, [z, x, y], row]) == R.zero()

    def test_errors(self):
        with pytest.raises(InputError):
            det_exact([[x, y]])
        with pytest.raises(InputError):
            det_exact([])

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_leibniz(self, seed):
        rng = random.Random(seed)
        n = rng.choice([3, 4])

        def entry():
            f = R.zero()
            for _ in range(rng.randint(0, 3)):
                f = f + R.monomial([rng.randint(0, 2) for _ in range(3)], rng.randint(-3, 3))
            return f

        M = [[entry() for _ in range(n)] for _ in range(n)]
        assert det_exact(M) == leibniz_det(M, R.one())


# -- property tests ---------------------------------------------------------------------

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))
monos = st.tuples(*(st.integers(0, 3) for _ in range(3)))
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda t: Polynomial(R, t))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()


@settings(max_examples=80, deadline=None)
@given(polys)
def test_parse_print_round_trip(f):
    g = R.parse(str(f))
    assert g == f
    assert str(g) == str(f)


F7 = polynomial_ring(["x", "y", "z"], 7)
polys7 = st.dictionaries(monos, st.integers(0, 6), max_size=5).map(lambda t: Polynomial(F7, t))


@settings(max_examples=40, deadline=None)
@given(polys7)
def test_parse_print_round_trip_fp(f):
    assert F7.parse(str(f)) == f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), polys, polys)
def test_graded_multiplication(k, l, f, g):
    fk, gl = f.homogeneous_part(k), g.homogeneous_part(l)
    prod = fk * gl
    if prod:
        assert prod.is_homogeneous() and prod.degree() == k + l
