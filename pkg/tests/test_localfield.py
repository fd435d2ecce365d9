import random
from fractions import Fraction

import pytest

from extraspecial import (ExtRational, INF, LaurentSeries, TowerParams, build_tower,
                          compose, elt_valuation, elt_valuation_top, enumerate_group,
                          galois_generators, group_structure, residue_field, wp_eval)
from extraspecial.localfield import ConstructionError, GaloisMap, PlanRejection
from extraspecial.planner import default_leads
from conftest import random_elem


def make_tower(variant="H", p=3, n=1, u=1, t=1, prec=None):
    field = residue_field(p, 2 * n)
    params = TowerParams(p=p, n=n, variant=variant, e0=INF, r=u,
                         m=(0,) * (2 * n) + (t,), leads=default_leads(field, n),
                         field=field)
    return build_tower(params, prec)


@pytest.fixture(scope="module")
def h_tower():
    return make_tower("H")


@pytest.fixture(scope="module")
def m_tower():
    return make_tower("M")


def random_element(tower, rng, max_terms=3):
    total = tower.algebra.zero()
    k = tower.nvars
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randrange(tower.p) for _ in range(k))
        coeff = LaurentSeries.monomial(tower.field, random_elem(tower.field, rng, True),
                                       rng.randint(-4, 4))
        mono = tower.algebra.from_series(coeff)
        for i, e in enumerate(exps):
            mono = mono * tower.algebra.gen(i) ** e
        total = total + mono
    return total


class TestBuildTower:
    def test_constants(self, h_tower):
        f = h_tower.field
        g = f.gen()
        assert h_tower.a[0] == LaurentSeries.monomial(f, 1, -1)
        # g^(p^2n) = g^9 = g in F_9
        assert h_tower.a[1] == LaurentSeries.monomial(f, g, -1)
        assert h_tower.a[2] == LaurentSeries.monomial(f, 1, -10)

    def test_constant_valuations_match_u(self, h_tower):
        u = h_tower.plan_report.u
        assert tuple(-s.valuation() for s in h_tower.a) == u

    def test_degree(self, h_tower):
        assert h_tower.degree == 27

    def test_unit_multiplication(self, h_tower):
        a1 = h_tower.alpha(1)
        assert a1 * h_tower.algebra.one() == a1

    def test_top_relation_holds(self, h_tower):
        top = h_tower.alpha(3)
        rhs = h_tower.cross_term + h_tower.a[2]
        assert (wp_eval(top, 3) - rhs).is_zero()

    def test_m_variant_carry_term(self, m_tower):
        top = m_tower.alpha(3)
        rhs = m_tower.cross_term + m_tower.carry_term + m_tower.a[2]
        assert (wp_eval(top, 3) - rhs).is_zero()

    def test_rejects_finite_e0(self):
        field = residue_field(3, 2)
        params = TowerParams(p=3, n=1, variant="H", e0=ExtRational(100), r=1,
                             m=(0, 0, 1), leads=default_leads(field, 1), field=field)
        with pytest.raises(PlanRejection):
            build_tower(params)

    def test_rejects_uncertified(self):
        field = residue_field(3, 2)
        params = TowerParams(p=3, n=1, variant="H", e0=INF, r=5,
                             m=(0, 0, 1), leads=default_leads(field, 1), field=field)
        with pytest.raises(PlanRejection):
            build_tower(params)

    def test_reduction_keeps_exponents_small(self, h_tower):
        rng = random.Random(2)
        x = random_element(h_tower, rng)
        y = random_element(h_tower, rng)
        prod = x * y
        assert all(all(e < 3 for e in exps) for exps in prod.coeffs)


class TestValuation:
    def test_uniformizer(self, h_tower):
        pi = h_tower.algebra.from_series(LaurentSeries.monomial(h_tower.field, 1, 1))
        assert elt_valuation(pi, h_tower) == 1

    def test_alpha1(self, h_tower):
        assert elt_valuation(h_tower.alpha(1), h_tower) == Fraction(-1, 3)

    def test_alpha_top(self, h_tower):
        assert elt_valuation(h_tower.alpha(3), h_tower) == Fraction(-10, 3)

    def test_alpha_valuations_match_prediction(self, m_tower):
        # v_0(alpha_i) = -u_i / p on every level
        u = m_tower.plan_report.u
        for i in range(1, 4):
            assert elt_valuation(m_tower.alpha(i), m_tower) == Fraction(-u[i - 1], 3)

    def test_zero(self, h_tower):
        assert elt_valuation(h_tower.algebra.zero(), h_tower).is_infinite

    def test_multiplicative(self, h_tower):
        rng = random.Random(5)
        for _ in range(12):
            x = random_element(h_tower, rng)
            y = random_element(h_tower, rng)
            if x.is_zero() or y.is_zero():
                continue
            assert elt_valuation(x * y, h_tower) == \
                elt_valuation(x, h_tower) + elt_valuation(y, h_tower)

    def test_ultrametric(self, h_tower):
        rng = random.Random(8)
        for _ in range(12):
            x = random_element(h_tower, rng)
            y = random_element(h_tower, rng)
            s = x + y
            if x.is_zero() or y.is_zero() or s.is_zero():
                continue
            vx, vy = elt_valuation(x, h_tower), elt_valuation(y, h_tower)
            vs = elt_valuation(s, h_tower)
            assert vs >= min(vx, vy)
            if vx != vy:
                assert vs == min(vx, vy)

    def test_top_normalization_integral(self, h_tower):
        rng = random.Random(21)
        for _ in range(8):
            x = random_element(h_tower, rng)
            if x.is_zero():
                continue
            assert isinstance(elt_valuation_top(x, h_tower), int)


class TestGaloisGenerators:
    def test_h_images(self, h_tower):
        s1, s2, s3 = galois_generators(h_tower)
        a1, a2, a3 = (h_tower.alpha(i) for i in (1, 2, 3))
        one = h_tower.algebra.one()
        assert s1.images == (a1 + one, a2, a3)
        assert s2.images == (a1, a2 + one, a3 + a1)
        assert s3.images == (a1, a2, a3 + one)

    def test_m_sigma1_carry_image(self, m_tower):
        from extraspecial import witt_carry
        s1 = galois_generators(m_tower)[0]
        a1 = m_tower.alpha(1)
        a3 = m_tower.alpha(3)
        delta = witt_carry(m_tower.algebra.one(), a1, 3)
        assert s1.images[2] == a3 + delta
        # the translate solves the twisted relation: wp(delta) equals the
        # shift of the defining right-hand side
        rhs = m_tower.cross_term + m_tower.carry_term + m_tower.a[2]
        assert wp_eval(s1.images[2], 3) == s1.apply(rhs)
        # equivalently, wp(delta) = D(alpha_1 + 1, a_1) - D(alpha_1, a_1)
        a1_series = m_tower.algebra.from_series(m_tower.a[0])
        one = m_tower.algebra.one()
        assert wp_eval(delta, 3) == \
            witt_carry(a1 + one, a1_series, 3) - witt_carry(a1, a1_series, 3)

    def test_invalid_image_rejected(self, h_tower):
        a1, a2, a3 = (h_tower.alpha(i) for i in (1, 2, 3))
        with pytest.raises(ConstructionError):
            GaloisMap(h_tower.algebra, (a1 + a2, a2, a3))

    def test_maps_preserve_valuation(self, h_tower):
        rng = random.Random(12)
        gens = galois_generators(h_tower)
        for _ in range(8):
            x = random_element(h_tower, rng)
            if x.is_zero():
                continue
            v = elt_valuation(x, h_tower)
            for s in gens:
                assert elt_valuation(s.apply(x), h_tower) == v


class TestComposition:
    def test_identity_neutral(self, h_tower):
        s1 = galois_generators(h_tower)[0]
        ident = GaloisMap.identity(h_tower.algebra)
        assert compose(s1, ident) == s1
        assert compose(ident, s1) == s1

    def test_noncommuting_pair_and_commutator(self, h_tower):
        s1, s2, s3 = galois_generators(h_tower)
        assert compose(s1, s2) != compose(s2, s1)
        comm = compose(compose(s1, s2), compose(s1.inverse(), s2.inverse()))
        assert comm == s3

    def test_center(self, h_tower):
        gens = galois_generators(h_tower)
        s3 = gens[2]
        for s in gens:
            assert compose(s, s3) == compose(s3, s)


class TestGroupStructure:
    def test_h_group(self, h_tower):
        gens = galois_generators(h_tower)
        table = enumerate_group(h_tower, gens)
        assert table.order == 27
        rep = group_structure(h_tower, gens, table)
        assert rep.gen_orders == (3, 3, 3)
        assert rep.matches_expected
        assert rep.commutator_words[(1, 2)] == (0, 0, 1)
        assert rep.commutator_words[(1, 3)] == (0, 0, 0)
        assert rep.commutator_words[(2, 3)] == (0, 0, 0)

    def test_m_group(self, m_tower):
        gens = galois_generators(m_tower)
        table = enumerate_group(m_tower, gens)
        rep = group_structure(m_tower, gens, table)
        assert rep.gen_orders[0] == 9
        assert rep.gen_orders[1:] == (3, 3)
        assert rep.sigma1_p_word[:-1] == (0, 0)
        assert rep.sigma1_p_word[-1] in (1, 2)
        assert rep.metacyclic_w == rep.sigma1_p_word[-1]
        assert rep.matches_expected
