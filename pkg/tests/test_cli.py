import io
import json
import random

import pytest
from rich.console import Console

from chain_codes.algebra import ExitCode, MultiPoly, format_poly, parse_ring_spec
from chain_codes.cli import main
from chain_codes.cli.commands import CommandRegistry, HelpCommand, create_default_registry
from chain_codes.codes import (
    assemble_from_components,
    codes_equal,
    nd_generators,
    span_from_generators,
)

from conftest import polys, random_gens

Q0 = "5*(x^8 + x^6 + x^4 + x^2 + 1)"
Q1 = "x^9 + x^8 + x^7 + x^6 + x^5 + x^4 + x^3 + x^2 + x + 1"


def run(*argv):
    buffer = io.StringIO()
    console = Console(file=buffer, width=200, force_terminal=False)
    code = main(list(argv), console=console)
    return code, buffer.getvalue()


def run_json(*argv):
    code, out = run(*argv, "--format", "json")
    return code, json.loads(out)


class TestCanonical:
    def test_two_level_component(self):
        code, data = run_json("canonical", "--ring", "Z/25", "--dims", "10", "--gens", f"{Q0}, {Q1}")
        assert code == ExitCode.SUCCESS
        assert [e["gamma_exponent"] for e in data["entries"]] == [1, 0]
        assert data["staircase"] is True
        assert data["bound"] == 2
        assert data["zero_code"] is False

    def test_unit_ideal(self):
        code, data = run_json("can", "--ring", "Z/9", "--dims", "5", "--gens", "x + 1, 1")
        assert code == ExitCode.SUCCESS
        assert data["entries"] == [{"gamma_exponent": 0, "q": "1"}]

    def test_zero_code_text(self):
        code, out = run("canonical", "--ring", "Z/9", "--dims", "4")
        assert code == ExitCode.SUCCESS
        assert "zero code" in out

    def test_text_output(self):
        code, out = run("canonical", "--ring", "F4[g]/(g^2)", "--dims", "8", "--gens", "x - 1, g")
        assert code == ExitCode.SUCCESS
        assert "i = (1, 0), deg = (0, 1)" in out

    def test_requires_single_length(self):
        code, _ = run("canonical", "--ring", "Z/9", "--dims", "2,2", "--gens", "x")
        assert code == ExitCode.PRECONDITION


class TestGenerate:
    def test_separable_generators(self, z25):
        c_even = polys(f"{Q0}, {Q1}", z25, (10,))
        c_odd = polys("x - 1", z25, (10,))
        assembled = assemble_from_components(z25, (10, 4), [c_even, c_odd, c_even, c_odd])
        gens = ", ".join(format_poly(g) for g in assembled.polys())

        code, data = run_json(
            "generate", "--ring", "Z/25", "--dims", "10,4", "--gens", gens, "--method", "method2"
        )
        assert code == ExitCode.SUCCESS
        assert data["method"] == "method2"
        assert len(data["generators"]) == 6
        assert all(data["separable"])
        assert data["certified"] is True
        assert data["oracle"] == "not-run"
        assert [level["label"] for level in data["levels"]] == ["C_0", "C_1", "C_2", "C_3"]

    def test_large_instance_beyond_budgets(self):
        spec = parse_ring_spec("F17[g]/(g^2)")
        components = [
            polys("g*(x^3 - 3*x^2 + 3*x - 1)", spec, (17,)),
            polys("(x - 1)^6", spec, (17,)),
            polys("g*(x - 1)^5, (x - 1)^7 + g*(x^3 + 2*x^2 - 3*x + 2)", spec, (17,)),
            polys("g*(x - 1)^4, (x - 1)^9", spec, (17,)),
        ]
        assembled = assemble_from_components(spec, (17, 4), components)
        assert len(assembled.generators) == 6
        gens = "\n".join(format_poly(g) for g in assembled.polys())

        code, data = run_json(
            "generate",
            "--ring",
            "F17[g]/(g^2)",
            "--dims",
            "17,4",
            "--gens",
            gens,
            "--verify",
            "--certify-budget",
            "16",
        )
        assert code == ExitCode.SUCCESS
        assert data["certified"] is False
        assert data["oracle"] == "skipped"
        assert data["method"] == "method2"
        assert all(data["separable"])

    def test_twelve_component_instance_beyond_budgets(self):
        spec = parse_ring_spec("F13[g]/(g^2)")
        dims = (169,)
        c_pair = polys("g*(x - 1)^4, (x - 1)^5 + g*(x^3 - 3*x^2 + 4*x - 2)", spec, dims)
        components = [
            polys("(x - 1)^5", spec, dims),
            polys("(x - 1)^5", spec, dims),
            polys("(x - 1)^6", spec, dims),
            polys("g*(x - 1)^7", spec, dims),
            polys("g*(x - 1)^8", spec, dims),
            c_pair,
            c_pair,
            polys("g*(x - 1)^9", spec, dims),
            polys("g*(x - 1)^9", spec, dims),
            polys("g*(x - 1)^6", spec, dims),
            polys("g*(x - 1)^6", spec, dims),
            polys("(x - 1)^8", spec, dims),
        ]
        assembled = assemble_from_components(spec, (169, 12), components)
        assert len(assembled.generators) == 14
        gens = "\n".join(format_poly(g) for g in assembled.polys())

        code, data = run_json(
            "generate",
            "--ring",
            "F13[g]/(g^2)",
            "--dims",
            "169,12",
            "--gens",
            gens,
            "--verify",
            "--certify-budget",
            "16",
        )
        assert code == ExitCode.SUCCESS
        assert data["method"] == "method2"
        assert data["certified"] is False
        assert data["oracle"] == "skipped"
        assert len(data["generators"]) == 14
        assert all(data["separable"])

    def test_zero_code(self):
        code, data = run_json("gen", "--ring", "Z/9", "--dims", "2,2", "--gens", "0")
        assert code == ExitCode.SUCCESS
        assert data["generators"] == []

    def test_verify_passes(self):
        code, data = run_json(
            "generate", "--ring", "Z/9", "--dims", "2,2", "--gens", "x*y + 3, 3*x + y", "--verify"
        )
        assert code == ExitCode.SUCCESS
        assert data["oracle"] == "passed"
        assert all(check["passed"] for check in data["checks"])

    def test_verify_skipped_over_budget(self):
        code, data = run_json(
            "generate",
            "--ring",
            "Z/9",
            "--dims",
            "3,2",
            "--gens",
            "x + y",
            "--verify",
            "--budget",
            "100",
        )
        assert code == ExitCode.SUCCESS
        assert data["oracle"] == "skipped"

    def test_method1_and_transpose(self):
        code, data = run_json(
            "generate",
            "--ring",
            "Z/9",
            "--dims",
            "2,3",
            "--gens",
            "x*y + 1",
            "--method",
            "method1",
            "--transpose",
        )
        assert code == ExitCode.SUCCESS
        assert data["method"] == "method1"
        assert data["axis_order"] == [1, 0]

    def test_uncertified_text(self):
        code, out = run(
            "generate", "--ring", "Z/9", "--dims", "3,2", "--gens", "x + y", "--certify-budget", "2"
        )
        assert code == ExitCode.SUCCESS
        assert "uncertified" in out
        assert "生成元" in out

    def test_forced_method2_incompatible(self):
        code, out = run(
            "generate", "--ring", "Z/9", "--dims", "3,3", "--gens", "x", "--method", "method2"
        )
        assert code == ExitCode.PRECONDITION
        assert "前置条件不满足" in out


class TestVerify:
    def test_recomputed_generators_pass(self):
        code, data = run_json("verify", "--ring", "Z/4", "--dims", "2,2", "--gens", "2 + 2*y, (x + 1)*y")
        assert code == ExitCode.SUCCESS
        assert data["oracle"] == "passed"
        assert data["counterexample"] is None

    def test_wrong_claim(self):
        code, data = run_json(
            "check", "--ring", "Z/4", "--dims", "2", "--gens", "x + 1", "--claimed", "2*x + 2"
        )
        assert code == ExitCode.VERIFICATION_FAILURE
        assert data["oracle"] == "failed"
        assert data["counterexample"] == "x + 1"

    def test_wrong_claim_text(self):
        code, out = run("verify", "--ring", "Z/4", "--dims", "2", "--gens", "x + 1", "--claimed", "2")
        assert code == ExitCode.VERIFICATION_FAILURE
        assert "反例" in out

    def test_mutated_generators_fail(self, z9):
        rng = random.Random(8)
        nonzero = [c for c in z9.elements() if c]
        changed = 0
        attempts = 0
        while changed < 20 and attempts < 400:
            attempts += 1
            gens = random_gens(rng, z9, (2, 2))
            claimed = nd_generators(z9, (2, 2), gens).polys()
            if not claimed:
                continue
            index = rng.randrange(len(claimed))
            exponent = (rng.randrange(2), rng.randrange(2))
            claimed[index] = claimed[index] + MultiPoly.monomial(
                z9, (2, 2), exponent, rng.choice(nonzero)
            )
            differs = not codes_equal(
                span_from_generators(z9, (2, 2), gens),
                span_from_generators(z9, (2, 2), claimed),
            )

            code, data = run_json(
                "verify",
                "--ring",
                "Z/9",
                "--dims",
                "2,2",
                "--gens",
                ", ".join(format_poly(g) for g in gens),
                "--claimed",
                ", ".join(format_poly(g) for g in claimed),
            )
            if differs:
                changed += 1
                assert code == ExitCode.VERIFICATION_FAILURE
                assert data["oracle"] == "failed"
                assert data["counterexample"] is not None
            else:
                assert code == ExitCode.SUCCESS
        assert changed >= 20

    def test_budget_exceeded(self):
        code, out = run("verify", "--ring", "Z/9", "--dims", "3", "--gens", "x", "--budget", "100")
        assert code == ExitCode.BUDGET_EXCEEDED
        assert "超出预算" in out

    def test_budget_exceeded_on_huge_dims(self):
        code, out = run(
            "verify", "--ring", "F13[g]/(g^2)", "--dims", "169,12", "--gens", "x - 1", "--claimed", "x - 1"
        )
        assert code == ExitCode.BUDGET_EXCEEDED
        assert "超出预算" in out
        assert "~2^" in out


class TestIdempotentsAndRoots:
    def test_idempotents_json(self):
        code, data = run_json("idempotents", "--ring", "Z/25", "--n", "4")
        assert code == ExitCode.SUCCESS
        assert data["zeta"] == "7"
        assert data["thetas"] == [
            "19*y^3 + 19*y^2 + 19*y + 19",
            "8*y^3 + 6*y^2 + 17*y + 19",
            "6*y^3 + 19*y^2 + 6*y + 19",
            "17*y^3 + 6*y^2 + 8*y + 19",
        ]

    def test_idempotents_text(self):
        code, out = run("idem", "--ring", "Z/9", "--n", "2")
        assert code == ExitCode.SUCCESS
        assert "zeta = 8" in out
        assert "4*y + 5" in out

    def test_root(self):
        code, out = run("root", "--ring", "Z/25", "--n", "4")
        assert code == ExitCode.SUCCESS
        assert "zeta = 7" in out

    def test_root_lift(self):
        code, data = run_json("zeta", "--ring", "Z/25", "--n", "4", "--omega", "2")
        assert code == ExitCode.SUCCESS
        assert data["zeta"] == "7"

    def test_root_incompatible_order(self):
        code, _ = run("root", "--ring", "Z/25", "--n", "3")
        assert code == ExitCode.PRECONDITION

    def test_root_not_simple(self):
        code, _ = run("root", "--ring", "Z/25", "--n", "4", "--omega", "0")
        assert code == ExitCode.PRECONDITION


class TestErrors:
    def test_polynomial_syntax(self):
        code, out = run("canonical", "--ring", "Z/9", "--dims", "3", "--gens", "x +* 1")
        assert code == ExitCode.PARSE_ERROR
        assert "line 1" in out

    def test_bad_ring(self):
        code, _ = run("canonical", "--ring", "Z/6", "--dims", "3", "--gens", "x")
        assert code == ExitCode.PARSE_ERROR

    def test_bad_dims(self):
        code, _ = run("generate", "--ring", "Z/9", "--dims", "0,2", "--gens", "x")
        assert code == ExitCode.PARSE_ERROR

    def test_unknown_subcommand(self):
        code, _ = run("frobnicate")
        assert code == ExitCode.PARSE_ERROR

    def test_argparse_help(self):
        code, _ = run("--help")
        assert code == ExitCode.SUCCESS


class TestHelp:
    def test_lists_commands(self):
        code, out = run("help")
        assert code == ExitCode.SUCCESS
        assert "可用命令" in out
        for name in ("canonical", "generate", "verify", "idempotents", "root"):
            assert name in out

    def test_topic(self):
        code, out = run("h", "gen")
        assert code == ExitCode.SUCCESS
        assert "generate: " in out
        assert "gen" in out

    def test_unknown_topic_lists_names(self):
        code, out = run("help", "nosuch")
        assert code == ExitCode.PARSE_ERROR
        assert "未找到命令" in out
        assert "idem" in out
        assert "zeta" in out


class TestRegistry:
    def test_aliases(self):
        registry = create_default_registry(Console(file=io.StringIO()))
        assert registry.get("can").name == "canonical"
        assert registry.get_command("zeta").name == "root"
        assert "idem" in registry.get_command_names()

    def test_unregister(self):
        registry = CommandRegistry()
        registry.register(HelpCommand(registry, Console(file=io.StringIO())))
        registry.unregister("help")
        assert registry.get("h") is None
        assert registry.list_commands() == []


class TestConfigPriority:
    @pytest.fixture
    def config_file(self, tmp_path):
        path = tmp_path / "chain_codes.toml"
        path.write_text('[chain_codes]\noutput_format = "json"\n', encoding="utf-8")
        return str(path)

    def test_file(self, config_file):
        code, out = run("root", "--ring", "Z/25", "--n", "4", "--config", config_file)
        assert code == ExitCode.SUCCESS
        assert json.loads(out)["zeta"] == "7"

    def test_env_over_file(self, config_file, monkeypatch):
        monkeypatch.setenv("CHAIN_CODES_OUTPUT_FORMAT", "text")
        code, out = run("root", "--ring", "Z/25", "--n", "4", "--config", config_file)
        assert code == ExitCode.SUCCESS
        assert "zeta = 7" in out

    def test_flag_over_env(self, monkeypatch):
        monkeypatch.setenv("CHAIN_CODES_OUTPUT_FORMAT", "text")
        code, data = run_json("root", "--ring", "Z/25", "--n", "4")
        assert code == ExitCode.SUCCESS
        assert data["n"] == 4

    def test_env_budget(self, monkeypatch):
        monkeypatch.setenv("CHAIN_CODES_ORACLE_BUDGET", "100")
        code, _ = run("verify", "--ring", "Z/9", "--dims", "3", "--gens", "x")
        assert code == ExitCode.BUDGET_EXCEEDED

    def test_invalid_env_value(self, monkeypatch):
        monkeypatch.setenv("CHAIN_CODES_DEFAULT_METHOD", "method3")
        code, _ = run("root", "--ring", "Z/25", "--n", "4")
        assert code == ExitCode.PRECONDITION

    def test_missing_config_file(self, tmp_path):
        code, _ = run("root", "--ring", "Z/25", "--n", "4", "--config", str(tmp_path / "none.toml"))
        assert code == ExitCode.PRECONDITION
