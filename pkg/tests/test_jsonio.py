import json

import pytest

from kdeform import (
    HSeries,
    PoincareAlgebra,
    VectorTau,
    classify_orbit,
    omega,
    r_matrix,
)
from kdeform import jsonio
from kdeform.hopf import DeformationContext
from kdeform.minkowski import coordinate
from kdeform.scalars import GaussRational as GR

I = GR(0, 1)


class TestScalarRoundTrip:
    def test_hseries(self):
        hs = HSeries(3, [1, GR(0, 1), GR(2, -3), 0])
        data = jsonio.hseries_to_json(hs)
        assert all(set(d) == {"h_power", "re_num", "re_den", "im_num", "im_den"} for d in data)
        assert len(data) == 3  # zero coefficient omitted
        assert jsonio.hseries_from_json(json.loads(json.dumps(data)), 3) == hs

    def test_rational_strings(self):
        from fractions import Fraction

        assert jsonio.parse_rational("3/4") == Fraction(3, 4)
        assert jsonio.parse_rational(-2) == Fraction(-2)
        with pytest.raises(ValueError):
            jsonio.parse_rational(0.5)


class TestExpressionRoundTrips:
    def test_algebra_element(self, eta4):
        ctx = DeformationContext(eta4, [1, 0, 0, 0], 3)
        for elem in (ctx.pi, ctx.pi_inv, ctx.c_tau, ctx.antipode(ctx.algebra.momentum_code(0))):
            data = json.loads(json.dumps(jsonio.element_to_json(elem)))
            assert jsonio.element_from_json(data, ctx.algebra) == elem

    def test_tensor_element(self, eta4):
        ctx = DeformationContext(eta4, [1, 0, 0, 1], 3)
        for code in ctx.generator_codes():
            t = ctx.coproduct(code)
            data = json.loads(json.dumps(jsonio.tensor_to_json(t)))
            assert jsonio.tensor_from_json(data, ctx.algebra) == t

    def test_wedge_element(self, eta4):
        alg = PoincareAlgebra(eta4, 2)
        for w in (r_matrix(alg, VectorTau(eta4, [1, 0, 0, 1])), omega(alg)):
            data = json.loads(json.dumps(jsonio.wedge_to_json(w)))
            assert jsonio.wedge_from_json(data, alg) == w

    def test_minkowski_element(self, eta4):
        ctx = DeformationContext(eta4, [1, 0, 0, 0], 2)
        elem = coordinate(ctx, 1) * coordinate(ctx, 0) + coordinate(ctx, 2) * I
        data = json.loads(json.dumps(jsonio.mink_to_json(elem)))
        assert jsonio.mink_from_json(data, ctx) == elem

    def test_orbit(self, eta4):
        o = classify_orbit(eta4, VectorTau(eta4, [0, 0, 0, 1]))
        data = json.loads(json.dumps(jsonio.orbit_to_json(o)))
        assert jsonio.orbit_from_json(data) == o
        assert data["stability"] == {"kind": "SO", "p": 2, "q": 1}


class TestStructuredOutputs:
    def test_basis_change(self, eta4):
        from kdeform.bases import orthogonal_decompose

        ch = orthogonal_decompose(eta4, VectorTau(eta4, [2, 1, 0, 0]))
        data = json.loads(json.dumps(jsonio.basischange_to_json(ch)))
        assert set(data) == {"matrix", "transformed_metric"}
        assert data["transformed_metric"][0][0] == "-3"
        assert data["matrix"][0][0] == "2"  # first column is tau

    def test_failed_check_carries_residual_json(self, eta4):
        from kdeform import TensorElement
        from kdeform.hopf import DeformationContext, verify_hopf

        ctx = DeformationContext(eta4, [1, 0, 0, 0], 2)
        code = ctx.generator_codes()[0]
        ctx._coproducts[code] = ctx.coproduct(code) + TensorElement.unit(ctx.algebra, 2)
        rep = verify_hopf(ctx, checks=[3])
        bad = [c for c in rep.checks if not c.passed]
        assert bad
        payload = json.loads(json.dumps(rep.to_json()))
        failed = [c for c in payload["checks"] if not c["passed"]]
        assert failed and "residual" in failed[0]


class TestRunConfig:
    def test_parse_and_validate(self):
        cfg = jsonio.config_from_json(
            {
                "dimension": 2,
                "metric": [["0", "1"], ["1", "0"]],
                "tau": ["1", "0"],
                "truncation_order": 3,
                "basis": "lightcone",
                "output_format": "json",
            }
        )
        assert cfg.dimension == 2
        assert cfg.tau.tau_sq == 0
        assert cfg.truncation_order == 3

    def test_float_rejected(self):
        with pytest.raises(ValueError):
            jsonio.config_from_json({"metric": [[1.0, 0], [0, 1]], "tau": [1, 0]})

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            jsonio.config_from_json({"metric": [[1, 2], [0, 1]], "tau": [1, 0]})

    def test_suite_order_defaults(self):
        cfg = jsonio.config_from_json({"metric": [[-1, 0], [0, 1]], "tau": [1, 0]})
        assert cfg.order_for("hopf") == 4
        assert cfg.order_for("twist") == 3
        cfg.truncation_order = 2
        assert cfg.order_for("twist") == 2

    def test_json_round_trip(self):
        raw = {
            "dimension": 2,
            "metric": [["-1", "0"], ["0", "1"]],
            "tau": ["1", "0"],
            "truncation_order": 2,
            "basis": "auto",
            "output_format": "text",
        }
        cfg = jsonio.config_from_json(raw)
        assert jsonio.config_to_json(cfg) == raw
