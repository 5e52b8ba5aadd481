import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

import hermdens.cli as climod
from hermdens.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, **kw):
    return runner.invoke(main, args, catch_exceptions=False, **kw)


def out_json(result):
    return json.loads(result.stdout)


class TestIntegral:
    def test_norm_unit_with_oracle(self, runner):
        res = invoke(runner, ["integral", "--kind", "norm", "--region", "unit",
                              "--e", "-1", "--oracle", "--p", "3", "--depth", "4"])
        assert res.exit_code == 0
        doc = out_json(res)
        assert doc["value"]["str"] == "s^-1 - s^-2"
        assert doc["oracle"]["matches"] is True
        assert doc["oracle"]["value"] == "-4/9"

    def test_trace_pair_region_count(self, runner):
        res = invoke(runner, ["integral", "--kind", "trace_pair",
                              "--region", "O", "--e", "0"])
        assert res.exit_code == 2

    def test_deterministic_output(self, runner):
        args = ["--json", "integral", "--kind", "norm", "--region", "O", "--e", "-2"]
        a = invoke(runner, args)
        b = invoke(runner, args)
        assert a.stdout == b.stdout
        assert a.stdout.count("\n") == 1


class TestWdens:
    def test_symbolic_anchor(self, runner):
        res = invoke(runner, ["wdens", "--n", "1", "--h", "1", "--t", "1",
                              "--B", "diag:0,-1", "--symbolic", "--derivative"])
        doc = out_json(res)
        assert doc["value"]["str"] == "-s^-3 + 2*s^-4 - s^-5"
        assert doc["derivative"]["str"] == "-s^-4 + s^-5"

    def test_numeric_mode_with_tail(self, runner):
        res = invoke(runner, ["wdens", "--h", "1", "--t", "1", "--B", "diag:0,-1",
                              "--q", "3", "--emin", "-20", "--emax", "20"])
        doc = out_json(res)
        got = Fraction(doc["value"])
        assert abs(got - Fraction(16, 243)) < Fraction(1, 10 ** 9)
        assert doc["tail_report"]["value_shift"] < 1e-9

    def test_mode_exclusivity(self, runner):
        res = invoke(runner, ["wdens", "--h", "1", "--t", "1", "--B", "diag:0,0"])
        assert res.exit_code == 2
        res = invoke(runner, ["wdens", "--h", "1", "--t", "1", "--B", "diag:0,0",
                              "--symbolic", "--q", "3"])
        assert res.exit_code == 2

    def test_rank_guard(self, runner):
        res = invoke(runner, ["wdens", "--n", "2", "--h", "1", "--t", "1",
                              "--B", "diag:0,0,0,0", "--symbolic"])
        assert res.exit_code == 2

    def test_bad_form_literal(self, runner):
        res = invoke(runner, ["wdens", "--h", "1", "--t", "1",
                              "--B", "nonsense", "--symbolic"])
        assert res.exit_code == 2


class TestBeta:
    def test_closed_top_constant(self, runner):
        res = invoke(runner, ["beta", "--n", "2", "--h", "1", "--closed"])
        doc = out_json(res)
        assert doc["closed_matches"] is True
        assert len(doc["beta_h"]) == 2

    def test_closed_wrong_level(self, runner):
        assert invoke(runner, ["beta", "--n", "2", "--h", "2", "--closed"]).exit_code == 2

    def test_identity_check_numeric(self, runner):
        res = invoke(runner, ["beta", "--n", "1", "--h", "1", "--verify",
                              "--B", "diag:1,1", "--q", "3"])
        doc = out_json(res)
        assert doc["identity"]["match"] is True
        assert doc["identity"]["lhs_at_q"] == doc["identity"]["rhs_at_q"]


class TestAlpha:
    def test_coefficients_and_prime(self, runner):
        res = invoke(runner, ["alpha", "--xi", "1,0", "--lam", "0,0", "--prime"])
        doc = out_json(res)
        assert [c["str"] for c in doc["coefficients"]] == ["1", "-1 - s^-1", "s^-1"]
        assert doc["value"]["str"] == "0"
        assert doc["prime"]["str"] == "1 - s^-1"

    def test_brute_corroboration(self, runner):
        res = invoke(runner, ["alpha", "--xi", "1,0", "--lam", "1,0",
                              "--brute", "--q", "3", "--d", "2"])
        doc = out_json(res)
        assert doc["brute"]["matches"] is True

    def test_pad_parity(self, runner):
        assert invoke(runner, ["alpha", "--xi", "0", "--lam", "0",
                               "--pad", "3"]).exit_code == 2

    def test_budget_exit_code(self, runner):
        res = invoke(runner, ["alpha", "--xi", "0,0,0,0", "--lam", "0",
                              "--brute", "--q", "5", "--d", "3"])
        assert res.exit_code == 3


class TestJfunAndAppendix:
    def test_assembled_constant(self, runner):
        res = invoke(runner, ["jfun", "--t", "1", "--B", "diag:2,0"])
        assert out_json(res)["value"]["str"] == "2"

    def test_appendix_identity(self, runner):
        res = invoke(runner, ["appendix", "--n", "1", "--B1", "2,0"])
        doc = out_json(res)
        assert doc["match"] is True
        assert doc["lhs"] == doc["rhs"]


class TestTree:
    def test_overlapping_case(self, runner):
        res = invoke(runner, ["tree", "--q", "3", "--mx", "3", "--my", "2", "--d", "1"])
        doc = out_json(res)
        assert doc["case"] == 3
        assert doc["intersection"] == "3"
        assert doc["r"] == 2

    def test_bucket_components(self, runner):
        res = invoke(runner, ["tree", "--q", "3", "--mx", "9", "--my", "7",
                              "--d", "8", "--per-f"])
        doc = out_json(res)
        assert doc["f_components"] == {"-1": "0", "0": "3", "1": "-3", "2": "4", "3": "0"}

    def test_bucket_shape_guard(self, runner):
        res = invoke(runner, ["tree", "--q", "3", "--mx", "2", "--my", "2",
                              "--d", "0", "--per-f"])
        assert res.exit_code == 2

    def test_engulfed_needs_vdet(self, runner):
        res = invoke(runner, ["tree", "--q", "3", "--mx", "6", "--my", "1",
                              "--d", "1", "--vdet", "10"])
        doc = out_json(res)
        assert doc["case"] == 1
        assert doc["intersection"] == "6"


class TestVerifyCommand:
    def test_suite_pass(self, runner):
        res = invoke(runner, ["verify", "--suite", "jfun-h0"])
        assert res.exit_code == 0
        assert "0 failed" in res.stdout

    def test_alias_token(self, runner):
        res = invoke(runner, ["--json", "verify", "--suite", "lemma4_4"])
        doc = out_json(res)
        assert doc["suite"] == "jfun-assembly"
        assert doc["failed"] == 0
        for c in doc["checks"]:
            assert set(c) == {"id", "anchor", "status", "lhs", "rhs", "elapsed"}

    def test_unknown_suite(self, runner):
        assert invoke(runner, ["verify", "--suite", "nope"]).exit_code == 2


class TestCache:
    def test_hit_does_not_grow_file(self, runner, tmp_path):
        path = tmp_path / "c.jsonl"
        args = ["--cache", str(path), "--json", "jfun", "--t", "1", "--B", "diag:0,0"]
        a = invoke(runner, args)
        b = invoke(runner, args)
        assert a.stdout == b.stdout
        assert len(path.read_text().splitlines()) == 1
        assert "hit" in b.stderr

    def test_corrupt_line_skipped(self, runner, tmp_path):
        path = tmp_path / "c.jsonl"
        args = ["--cache", str(path), "--json", "jfun", "--t", "1", "--B", "diag:0,0"]
        invoke(runner, args)
        with open(path, "a") as fh:
            fh.write("{not json\n")
        res = invoke(runner, args)
        assert res.exit_code == 0
        assert "corrupt" in res.stderr
        assert "hit" in res.stderr

    def test_version_bump_misses(self, runner, tmp_path, monkeypatch):
        path = tmp_path / "c.jsonl"
        args = ["--cache", str(path), "--json", "jfun", "--t", "1", "--B", "diag:0,0"]
        invoke(runner, args)
        monkeypatch.setattr(climod, "ARTIFACT_VERSION", "999")
        res = invoke(runner, args)
        assert "store" in res.stderr
        assert len(path.read_text().splitlines()) == 2

    def test_get_put_stats(self, runner, tmp_path):
        path = tmp_path / "c.jsonl"
        put = invoke(runner, ["--cache", str(path), "cache", "put",
                              "--key", "abc", "--value", '{"x": 1}'])
        assert put.exit_code == 0
        got = invoke(runner, ["--cache", str(path), "--json", "cache", "get",
                              "--key", "abc"])
        assert out_json(got) == {"x": 1}
        stats = invoke(runner, ["--cache", str(path), "--json", "cache", "stats"])
        assert out_json(stats)["entries"] == 1
        missing = invoke(runner, ["--cache", str(path), "cache", "get",
                                  "--key", "zzz"])
        assert missing.exit_code == 2

    def test_no_cache_configured(self, runner):
        assert invoke(runner, ["cache", "stats"]).exit_code == 2


class TestConfig:
    def test_file_sets_decimal_flag_overrides(self, runner, tmp_path):
        conf = tmp_path / "conf"
        conf.write_text("decimal=4\nunknown_key=1\n")
        res = invoke(runner, ["--config", str(conf), "--json",
                              "jfun", "--t", "1", "--B", "diag:0,0"])
        assert "decimal" in out_json(res)
        assert "unknown key" in res.stderr
        res2 = invoke(runner, ["--config", str(conf), "--decimal", "0", "--json",
                               "jfun", "--t", "1", "--B", "diag:0,0"])
        assert "decimal" not in out_json(res2)

    def test_env_var_fallback(self, runner, tmp_path, monkeypatch):
        conf = tmp_path / "conf"
        conf.write_text("decimal=3\n")
        monkeypatch.setenv("HERMDENS_CONFIG", str(conf))
        res = invoke(runner, ["--json", "jfun", "--t", "1", "--B", "diag:0,0"])
        assert out_json(res)["decimal"]["value"] == "1"

    def test_jobs_validation(self, runner):
        res = invoke(runner, ["--jobs", "0", "verify", "--suite", "jfun-h0"])
        assert res.exit_code == 2
