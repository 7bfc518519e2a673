import random
from itertools import product

import pytest

import _oracles as orc
from rees_ag import artinian as art
from rees_ag.artinian import LocalIdeal
from rees_ag.errors import HypothesisError, InputError, NotPrimaryError, RingMismatchError
from rees_ag.polyring import polynomial_ring

R = polynomial_ring(["x", "y", "z"])
x, y, z = R.gens()
m = LocalIdeal.maximal(R)


def I(*texts, ring=R):
    return LocalIdeal.parse(ring, texts)


def mono_ideal(gens, ring=R):
    return LocalIdeal.parse(ring, [orc.to_text(g, ring.variables) for g in gens])


MONOMIAL_CIS = [(a, b, c) for a, b, c in product(range(1, 4), repeat=3) if (a, b, c) != (1, 1, 1)]


def ci(a, b, c):
    return [(a, 0, 0), (0, b, 0), (0, 0, c)]


class TestQuotient:
    def test_maximal(self):
        q = art.stabilized_quotient(m)
        assert q.length == 1 and q.basis == ((0, 0, 0),)

    def test_example_basis(self):
        q = art.stabilized_quotient(I("x", "y^2", "z^2"))
        assert [str(R.monomial(b)) for b in q.basis] == ["1", "y", "z", "y*z"]

    def test_not_primary(self):
        with pytest.raises(NotPrimaryError, match="not m-primary or cap too small"):
            art.stabilized_quotient(I("x", "y"))

    def test_cap_too_small(self):
        with pytest.raises(NotPrimaryError):
            art.stabilized_quotient(I("x", "y", "z^30"), nmax=10)
        assert art.local_length(I("x", "y", "z^30"), nmax=40) == 30

    def test_constant_term_rejected(self):
        with pytest.raises(InputError):
            I("x", "1 + y", "z")

    def test_local_unit_factor(self):
        # x*(1-x) generates the same local ideal as x
        assert art.ideal_equal(I("x*(1-x)", "y", "z^2"), I("x", "y", "z^2"))


class TestLength:
    @pytest.mark.parametrize("gens,expected", [(("x", "y^2", "z^2"), 4), (("x", "y^2", "z^3"), 6), (("x", "y", "z"), 1)])
    def test_examples(self, gens, expected):
        assert art.local_length(I(*gens)) == expected

    @pytest.mark.parametrize("abc", MONOMIAL_CIS)
    def test_against_enumeration_oracle(self, abc):
        gens = ci(*abc)
        assert art.local_length(mono_ideal(gens)) == orc.length(gens, 3)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_monomial_ideals(self, seed):
        rng = random.Random(seed)
        gens = ci(*(rng.randint(1, 4) for _ in range(3)))
        gens += [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(rng.randint(0, 3))]
        gens = [g for g in gens if any(g)]
        assert art.local_length(mono_ideal(gens)) == orc.length(gens, 3)

    def test_non_monomial(self):
        # (x + y^2, y + z^3, z^2) ~ (x, y, z^2) after a change of coordinates: length 2
        assert art.local_length(I("x + y^2", "y + z^3", "z^2")) == 2
        # (x^2 - y^2, x*y, z) has length 4 (a complete intersection of two quadrics in 2 vars)
        assert art.local_length(I("x^2 - y^2", "x*y", "z")) == 4

    @pytest.mark.parametrize("gens", [("x", "y^2", "z^2"), ("x^2", "y^3", "z^2", "x*y*z"),
                                      ("x + y^2", "y + z^3", "z^2"), ("x^2 - y^2", "x*y", "z^3")])
    def test_stabilization_invariance(self, gens):
        Q = I(*gens)
        q = art.stabilized_quotient(Q)
        lens = {art.truncated_colength(R, list(Q.gens), N) for N in (q.N, q.N + 1, q.N + 3)}
        assert lens == {q.length}


class TestMembership:
    def test_socle_monomial_not_in_ideal(self):
        assert not art.membership(y * z, I("x", "y^2", "z^2"))

    def test_generator(self):
        assert art.membership(y * y, I("x", "y^2", "z^2"))

    def test_unit_multiple(self):
        assert art.membership(R.parse("x^2*(1 + y + z^5)"), I("x", "y^2", "z^2"))

    def test_normal_form_of_ideal_element(self):
        q = art.stabilized_quotient(I("x", "y^2", "z^2"))
        assert not q.normal_form(R.parse("3*x*y + y^2*z - z^2"))
        assert q.normal_form(R.parse("y*z + x")) == y * z

    def test_ring_mismatch(self):
        S = polynomial_ring(["a", "b"])
        with pytest.raises(RingMismatchError):
            art.membership(S.var(0), I("x", "y", "z"))

    @pytest.mark.parametrize("seed", range(6))
    def test_permutation_and_unit_scaling(self, seed):
        rng = random.Random(seed)
        gens = ["x^2 + y*z", "y^3 - x*z", "z^2 + x*y", "x*y*z"]
        Q = I(*gens)
        perm = gens[:]
        rng.shuffle(perm)
        scaled = [f"({g})*({rng.randint(1, 5)} + x)" for g in perm]
        Q2 = I(*scaled)
        assert art.ideal_equal(Q, Q2)
        assert art.local_length(Q) == art.local_length(Q2)
        probes = [R.monomial([rng.randint(0, 3) for _ in range(3)]) for _ in range(10)]
        for f in probes:
            assert art.membership(f, Q) == art.membership(f, Q2)
            assert art.membership(f.scale(7), Q) == art.membership(f, Q)

    @pytest.mark.parametrize("abc", MONOMIAL_CIS[:10])
    def test_membership_against_divisibility(self, abc):
        gens = ci(*abc) + [(1, 1, 0)]
        Q = mono_ideal(gens)
        for e in product(range(4), repeat=3):
            assert art.membership(R.monomial(e), Q) == orc.mono_in(e, gens)


class TestCombine:
    def test_product_generators(self):
        Q = I("x", "y^2", "z^2")
        prod = Q * Q
        assert len(prod.gens) == 9
        assert {str(g) for g in prod.gens} == {"x^2", "x*y^2", "x*z^2", "y^4", "y^2*z^2", "z^4"}

    def test_sum(self):
        Im = I("x", "y^2", "y*z", "z^2") + m * m
        assert len(Im.gens) == 4 + 9
        assert art.ideal_equal(Im, I("x") + m * m)

    def test_product_with_zero_ideal(self):
        zero = LocalIdeal(R, ())
        assert not (I("x", "y") * zero).nonzero_gens()


class TestColon:
    def test_socle_examples(self):
        assert art.ideal_equal(art.colon(I("x", "y^2", "z^2"), m), I("x", "y^2", "y*z", "z^2"))
        assert art.ideal_equal(art.colon(I("x", "y^2", "z^3"), m), I("x", "y^2", "y*z^2", "z^3"))

    def test_self_colon_is_unit(self):
        Q = I("x^2", "y^2", "z^3")
        C = art.colon(Q, Q)
        assert art.membership(R.one(), C) or any(g.constant_term() for g in C.gens)

    @pytest.mark.parametrize("abc", MONOMIAL_CIS)
    def test_socle_against_monomial_oracle(self, abc):
        gens = ci(*abc)
        expected = orc.mono_colon(gens, orc.maximal(3), 3)
        got = art.socle_ideal(mono_ideal(gens))
        assert art.ideal_equal(got, mono_ideal(expected))

    @pytest.mark.parametrize("seed", range(8))
    def test_colon_by_monomial_ideal_against_oracle(self, seed):
        rng = random.Random(seed)
        A = ci(*(rng.randint(1, 4) for _ in range(3))) + [tuple(rng.randint(0, 2) for _ in range(3))]
        A = [g for g in A if any(g)]
        B = [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(2)]
        B = [g for g in B if any(g)] or [(1, 0, 0)]
        got = art.colon(mono_ideal(A), mono_ideal(B))
        expected = orc.mono_colon(A, B, 3)
        if (0, 0, 0) in expected:
            assert art.local_length(got) == 0
        else:
            assert art.ideal_equal(got, mono_ideal(expected))

    def test_monotonicity(self):
        A, A2 = I("x^2", "y^2", "z^2"), I("x^2", "y^2", "z^2", "x*y")
        B, B2 = I("x", "y^2", "z"), m
        assert art.contains_ideal(art.colon(A, B), A)
        assert art.contains_ideal(art.colon(A2, B), art.colon(A, B))      # monotone in A
        assert art.contains_ideal(art.colon(A, B), art.colon(A, B2))      # antitone in B

    def test_colon_ignores_zero_generators(self):
        A = I("x", "y^2", "z^2")
        assert art.ideal_equal(art.colon(A, LocalIdeal(R, (R.zero(), x))), art.colon(A, I("x")))


class TestSocle:
    def test_example(self):
        Q = I("x", "y^2", "z^2")
        S = art.socle_ideal(Q)
        assert art.ideal_equal(S, I("x", "y^2", "y*z", "z^2"))
        assert art.local_length(S) == 3

    def test_maximal_socle(self):
        assert art.ideal_equal(art.socle_ideal(I("x", "y", "z^2")), m)

    def test_rejects_maximal(self):
        with pytest.raises(HypothesisError, match="unit ideal"):
            art.socle_ideal(m)

    def test_non_gorenstein_quotient_has_bigger_socle(self):
        assert art.socle_dimension(m * m) == 3


class TestMu:
    def test_maximal(self):
        assert art.mu(m) == 3

    def test_socle_example(self):
        assert art.mu(I("x", "y^2", "y*z", "z^2")) == 4

    def test_m_squared(self):
        assert art.mu(m * m) == 6

    def test_redundant_generators_do_not_count(self):
        assert art.mu(I("x", "y", "z", "x + y", "x^2")) == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_against_minimal_generator_oracle(self, seed):
        rng = random.Random(seed)
        gens = ci(*(rng.randint(1, 4) for _ in range(3)))
        gens += [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(3)]
        gens = [g for g in gens if any(g)]
        assert art.mu(mono_ideal(gens)) == orc.mu(gens)

    def test_subquotient_examples(self):
        assert art.mu_subquotient(m, I("x") + m * m) == 2
        J = I("x", "y^2", "z^2")
        assert art.mu_subquotient(J, J) == 0
        assert art.mu_subquotient(m, m * m) == 3

    def test_subquotient_containment_error(self):
        with pytest.raises(HypothesisError, match="y"):
            art.mu_subquotient(I("x", "y^2", "z"), I("x", "y"))

    @pytest.mark.parametrize("abc", MONOMIAL_CIS)
    def test_subquotient_against_oracle(self, abc):
        Q = ci(*abc)
        soc = orc.mono_colon(Q, orc.maximal(3), 3)
        J = orc.mono_colon(Q, soc, 3)
        if (0, 0, 0) in soc:
            return
        assert art.mu_subquotient(mono_ideal(J), mono_ideal(soc)) == orc.mu_sub(J, soc)


class TestLinearRank:
    @pytest.mark.parametrize("gens,expected", [(("x", "y", "z"), 3), (("x", "y^2", "z^2"), 1),
                                               (("x + y^2", "y + z^3", "z^2"), 2), (("x + y", "x - y", "x + z^2"), 2),
                                               (("x^2", "y^2", "z^2"), 0)])
    def test_examples(self, gens, expected):
        assert art.linear_rank(I(*gens)) == expected

    def test_positive_characteristic(self):
        F2 = polynomial_ring(["x", "y", "z"], 2)
        # x + y and x - y coincide in characteristic 2
        assert art.linear_rank(I("x + y", "x - y", "z", ring=F2)) == 2


def test_fp_lengths_agree_for_monomials():
    F5 = polynomial_ring(["x", "y", "z"], 5)
    for abc in MONOMIAL_CIS[:8]:
        gens = ci(*abc)
        assert art.local_length(mono_ideal(gens, F5)) == orc.length(gens, 3)
