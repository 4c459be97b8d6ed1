import json

import pytest

from kdeform.cli import EXAMPLES, main
from kdeform import jsonio


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestClassify:
    @pytest.mark.parametrize(
        "name,yb,label",
        [
            ("time-like", "MYBE", "SO(3)"),
            ("light-like", "CYBE", "ISO(2)"),
            ("tachyonic", "MYBE", "SO(2,1)"),
            ("kleinian", "CYBE", "ISO(1,1)"),
            ("non-diagonal-lorentzian", "MYBE", "SO(3)"),
        ],
    )
    def test_builtin_examples(self, capsys, name, yb, label):
        code, out, _ = run(capsys, "classify", "--example", name)
        assert code == 0
        assert yb in out and label in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "classify", "--example", "light-like", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["yb_type"] == "CYBE"
        assert data["stability"] == {"kind": "ISO", "p": 2, "q": 0}

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"metric": [["-1", 0], [0, 1]], "tau": [1, 0]}))
        code, out, _ = run(capsys, "classify", "--config", str(cfg))
        assert code == 0 and "MYBE" in out

    def test_bad_config_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"metric": [[1.5, 0], [0, 1]], "tau": [1, 0]}))
        code, _, err = run(capsys, "classify", "--config", str(cfg))
        assert code == 2 and "error" in err

    def test_missing_source_exits_2(self, capsys):
        code, _, err = run(capsys, "classify")
        assert code == 2


class TestEmit:
    def test_coproduct_timelike(self, capsys):
        code, out, _ = run(
            capsys, "emit", "coproduct", "--generator", "P 1",
            "--example", "time-like", "--order", "2",
        )
        assert code == 0
        assert "P_1 (x) 1" in out or "1 (x) P_1" in out

    def test_coproduct_json_round_trips(self, capsys, eta4):
        code, out, _ = run(
            capsys, "emit", "coproduct", "--generator", "P 1",
            "--example", "time-like", "--order", "2", "--format", "json",
        )
        assert code == 0
        from kdeform.hopf import DeformationContext

        data = json.loads(out)
        ctx = DeformationContext(eta4, [1, 0, 0, 0], 2)
        parsed = jsonio.tensor_from_json(data, ctx.algebra)
        assert parsed == ctx.coproduct(ctx.algebra.momentum_code(1))

    def test_schouten_lightlike_is_zero(self, capsys):
        code, out, _ = run(capsys, "emit", "schouten", "--example", "light-like", "--order", "2")
        assert code == 0 and out.strip() == "0"

    def test_twist_on_timelike_exits_2(self, capsys):
        code, _, err = run(capsys, "emit", "twist", "--example", "time-like", "--order", "2")
        assert code == 2
        assert "tau^2" in err

    def test_twist_lightlike(self, capsys):
        code, out, _ = run(
            capsys, "emit", "twist", "--example", "light-like", "--order", "2",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert set(data) == {"twist", "r_matrix"}

    def test_latex(self, capsys):
        code, out, _ = run(
            capsys, "emit", "pi", "--example", "time-like", "--order", "2",
            "--format", "latex",
        )
        assert code == 0 and "\\Pi_\\tau" in out

    def test_generator_required(self, capsys):
        code, _, err = run(capsys, "emit", "coproduct", "--example", "time-like", "--order", "2")
        assert code == 2

    def test_bad_generator(self, capsys):
        code, _, err = run(
            capsys, "emit", "coproduct", "--generator", "Q 7",
            "--example", "time-like", "--order", "2",
        )
        assert code == 2


class TestVerify:
    def test_hopf_suite_small(self, capsys, tmp_path):
        cfg = tmp_path / "d2.json"
        cfg.write_text(
            json.dumps({"metric": [["-1", 0], [0, 1]], "tau": [1, 0], "truncation_order": 2})
        )
        code, out, _ = run(capsys, "verify", "--suite", "hopf", "--config", str(cfg))
        assert code == 0
        assert "PASS" in out

    def test_all_suites_lightlike_d2(self, capsys, tmp_path):
        cfg = tmp_path / "lc2.json"
        cfg.write_text(
            json.dumps({"metric": [[0, 1], [1, 0]], "tau": [1, 0], "truncation_order": 2})
        )
        code, out, _ = run(capsys, "verify", "--suite", "all", "--config", str(cfg))
        assert code == 0
        assert "skipped" in out  # the MR suite does not apply to null tau

    def test_corrupted_coproduct_fails(self, capsys, tmp_path):
        cfg = tmp_path / "d2.json"
        cfg.write_text(
            json.dumps({"metric": [["-1", 0], [0, 1]], "tau": [1, 0], "truncation_order": 2})
        )
        code, out, _ = run(
            capsys, "verify", "--suite", "hopf", "--config", str(cfg), "--corrupt"
        )
        assert code == 1
        assert "FAILED" in out

    def test_json_report(self, capsys, tmp_path):
        cfg = tmp_path / "d2.json"
        cfg.write_text(
            json.dumps({"metric": [["-1", 0], [0, 1]], "tau": [1, 0], "truncation_order": 2})
        )
        code, out, _ = run(
            capsys, "verify", "--suite", "hopf", "--config", str(cfg), "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert all(r["passed"] for r in data)


class TestExamples:
    def test_listing(self, capsys):
        code, out, _ = run(capsys, "examples")
        assert code == 0
        for name in EXAMPLES:
            assert name in out

    def test_show_one_loads(self, capsys):
        for name in EXAMPLES:
            code, out, _ = run(capsys, "examples", "--example", name)
            assert code == 0
            jsonio.config_from_json(json.loads(out))
