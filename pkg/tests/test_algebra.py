import itertools
import random
from fractions import Fraction

import pytest

from kdeform import GaussRational, HSeries, Metric, PoincareAlgebra, VectorTau
from kdeform.errors import ContextMismatchError, DegenerateMetricError

from conftest import random_metric


I = GaussRational(0, 1)


class TestMetric:
    def test_signature_lorentzian(self, eta4):
        assert eta4.signature == (3, 1)

    def test_signature_hyperbolic_plane(self):
        assert Metric([[0, 1], [1, 0]]).signature == (1, 1)

    def test_signature_kleinian(self, kleinian):
        assert kleinian.signature == (2, 2)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateMetricError):
            Metric([[1, 1], [1, 1]])

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            Metric([[1, 2], [0, 1]])

    def test_exact_inverse(self, nondiag_lorentzian):
        g = nondiag_lorentzian
        d = g.dim
        prod = [
            [sum(g.rows[i][k] * g.inverse[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)
        ]
        assert prod == [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


class TestBrackets:
    def test_rotation_momentum_lorentzian(self, eta4):
        # [M_01, P_0] = i(g_10 P_0 - g_00 P_1) = i P_1
        alg = PoincareAlgebra(eta4, 2)
        assert alg.bracket(alg.M(0, 1), alg.P(0)) == alg.P(1) * I

    def test_momenta_commute(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        assert alg.bracket(alg.P(0), alg.P(1)).is_zero

    def test_lightcone_boost_momentum(self):
        # [M_{+-}, P_+] = i P_+ in the 2d light-cone metric
        lc = Metric([[0, 1], [1, 0]])
        alg = PoincareAlgebra(lc, 2)
        assert alg.bracket(alg.M(0, 1), alg.P(0)) == alg.P(0) * I

    def test_antisymmetry_all_pairs(self, eta3):
        alg = PoincareAlgebra(eta3, 1)
        codes = alg.generator_codes()
        for a in codes:
            for b in codes:
                ea = alg.from_codes({a: GaussRational(1)})
                eb = alg.from_codes({b: GaussRational(1)})
                assert (alg.bracket(ea, eb) + alg.bracket(eb, ea)).is_zero

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_jacobi_all_triples(self, dim):
        rows = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            rows[i][i] = -1 if i == 0 else 1
        rng = random.Random(11 + dim)
        for metric in (Metric(rows), random_metric(rng, dim)):
            alg = PoincareAlgebra(metric, 1)
            codes = alg.generator_codes()
            gens = [alg.from_codes({c: GaussRational(1)}) for c in codes]
            for x, y, z in itertools.combinations(gens, 3):
                jac = (
                    alg.bracket(x, alg.bracket(y, z))
                    + alg.bracket(y, alg.bracket(z, x))
                    + alg.bracket(z, alg.bracket(x, y))
                )
                assert jac.is_zero


class TestMultiply:
    def test_momenta_merge(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        m = (alg.P(1) * alg.P(0)).terms
        assert list(m) == [(alg.momentum_code(0), alg.momentum_code(1))]

    def test_single_rewrite_step(self, eta4):
        # P_0 M_01 = M_01 P_0 - [M_01, P_0] = M_01 P_0 - i P_1
        alg = PoincareAlgebra(eta4, 2)
        assert alg.P(0) * alg.M(0, 1) == alg.M(0, 1) * alg.P(0) - alg.P(1) * I

    def test_unit(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        a = alg.M(0, 1) * alg.P(2) + alg.P(0) * HSeries.h_power(2, 1)
        assert alg.one() * a == a
        assert a * alg.one() == a

    def test_associativity_random_words(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        rng = random.Random(3)
        gens = [alg.M(0, 1), alg.M(1, 2), alg.M(0, 3), alg.P(0), alg.P(2)]
        for _ in range(25):
            x, y, z = (rng.choice(gens) for _ in range(3))
            assert (x * y) * z == x * (y * z)

    def test_normal_form_idempotent(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        a = alg.M(0, 1) * alg.M(1, 3) * alg.P(0) * alg.P(2)
        terms = dict(a.terms)
        redone = alg.finalize_rows(alg.mul_terms(terms, {(): HSeries.one(2)}))
        assert redone == terms

    def test_context_mismatch(self, eta4, eta3):
        a4 = PoincareAlgebra(eta4, 2)
        a3 = PoincareAlgebra(eta3, 2)
        with pytest.raises(ContextMismatchError):
            a4.P(0) * a3.P(0)


class TestCasimir:
    def test_lorentzian(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        expect = (
            -(alg.P(0) * alg.P(0))
            + alg.P(1) * alg.P(1)
            + alg.P(2) * alg.P(2)
            + alg.P(3) * alg.P(3)
        )
        assert alg.casimir() == expect

    def test_lightcone_d4(self):
        # product light-cone metric: C = 2 P_+ P_- + P^a P_a
        g = Metric([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]])
        alg = PoincareAlgebra(g, 2)
        expect = (
            alg.P(0) * alg.P(3) * 2 + alg.P(1) * alg.P(1) + alg.P(2) * alg.P(2)
        )
        assert alg.casimir() == expect

    def test_offdiagonal_d2(self):
        alg = PoincareAlgebra(Metric([[0, 1], [1, 0]]), 2)
        assert alg.casimir() == alg.P(0) * alg.P(1) * 2

    def test_centrality(self, nondiag_lorentzian):
        alg = PoincareAlgebra(nondiag_lorentzian, 2)
        c = alg.casimir()
        for code in alg.generator_codes():
            x = alg.from_codes({code: GaussRational(1)})
            assert c * x == x * c


class TestContractTau:
    def test_unit_vector(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        p_tau, m_tau = alg.contract_tau(VectorTau(eta4, [1, 0, 0, 0]))
        assert p_tau == alg.P(0)
        assert m_tau[1] == alg.M(0, 1)
        assert m_tau[0].is_zero

    def test_null_vector(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        p_tau, _ = alg.contract_tau(VectorTau(eta4, [1, 0, 0, 1]))
        assert p_tau == alg.P(0) + alg.P(3)

    def test_zero_vector(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        p_tau, m_tau = alg.contract_tau(VectorTau(eta4, [0, 0, 0, 0]))
        assert p_tau.is_zero
        assert all(m.is_zero for m in m_tau)


class TestStar:
    def test_antilinear(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        assert (alg.P(0) * I).star() == alg.P(0) * (-I)

    def test_reverses_and_reorders(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        # (M_01 P_0)* = P_0 M_01 = M_01 P_0 - i P_1
        assert (alg.M(0, 1) * alg.P(0)).star() == alg.M(0, 1) * alg.P(0) - alg.P(1) * I

    def test_involution(self, eta4):
        alg = PoincareAlgebra(eta4, 3)
        a = alg.M(0, 1) * alg.P(0) * I + alg.P(2) * HSeries.h_power(3, 1) + alg.one()
        assert a.star().star() == a
