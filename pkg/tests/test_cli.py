import io
import json
import subprocess
import sys

import pytest

from enrichcat import errors
from enrichcat.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_compose_bool_relations(fixtures):
    code, out, _ = call("compose", fixtures / "bool_relations.json", "M", "Y", "N")
    assert code == EXIT_PASS
    assert "oracle agreement: exact" in out
    assert "(x0, z0): true" in out and "(x1, z0): false" in out
    assert out.endswith("overall: pass\n")


def test_compose_wrong_middle(fixtures):
    code, _, err = call("compose", fixtures / "bool_relations.json", "M", "X", "N")
    assert code == EXIT_USAGE and "does not end at" in err


def test_compose_with_truncation(fixtures):
    code, out, _ = call("compose", fixtures / "finset_chain.json", "M1", "M2", "--k-max", "2")
    assert code == EXIT_PASS and "realization truncation" in out


def test_segal(fixtures):
    assert call("segal", fixtures / "bool_relations.json", "K")[0] == EXIT_PASS
    assert call("segal", fixtures / "finset_chain.json", "K")[0] == EXIT_PASS
    assert call("segal", fixtures / "finset_chain.json", "K3")[0] == EXIT_PASS


def test_validate_reports_witnesses(fixtures):
    code, out, _ = call("validate", fixtures / "broken.json")
    assert code == EXIT_FAIL
    assert "  - associativity at (0, 1, 2, 3)\n" in out
    assert "  - right associativity at (a0, b0, b1, b2)\n" in out
    assert "  - composition not preserved at (0, 1, 2)\n" in out
    assert call("validate", fixtures / "finset_chain.json")[0] == EXIT_PASS


def test_fun(fixtures):
    code, out, _ = call("fun", fixtures / "fun_small.json", "I1", "I2", "--level", "3", "--segal")
    assert code == EXIT_PASS and "level 3: 105 functors" in out
    code, out, _ = call("fun", fixtures / "fun_small.json", "I1", "E1", "--level", "0", "--complete")
    assert code == EXIT_FAIL and "target gaunt: no" in out
    assert call("fun", fixtures / "fun_small.json", "I1", "I2", "--level", "1", "--segal")[0] == EXIT_USAGE


def test_budget_exit_code_and_restore(fixtures):
    before = errors.DEFAULT_BUDGET
    code, _, err = call("fun", fixtures / "fun_small.json", "I1", "I2", "--level", "2", "--bound", "5")
    assert code == EXIT_BUDGET and "budget exceeded" in err
    assert errors.DEFAULT_BUDGET == before


def test_probes():
    code, out, _ = call("probe", "cofinal", "--sizes", "1,1,1", "--bound", "2")
    assert code == EXIT_PASS and "NECESSARY-ONLY: pass" in out
    assert call("probe", "fiber", "--sizes", "1,2,1")[0] == EXIT_PASS
    assert call("probe", "terminal", "--sizes", "1", "--n", "1", "--bound", "2")[0] == EXIT_PASS
    code, out, _ = call("probe", "sifted", "--xi", "0,2", "--n", "2")
    assert code == EXIT_PASS and "NECESSARY-ONLY" in out
    assert call("probe", "sifted", "--xi", "2,0")[0] == EXIT_USAGE
    assert call("probe", "cofinal", "--sizes", "1,1")[0] == EXIT_USAGE


def test_cofinal_probe_default_rank():
    code, out, _ = call("probe", "cofinal", "--bound", "3")
    assert code == EXIT_PASS and "NECESSARY-ONLY: pass" in out


def test_suites():
    assert call("suite", "oracle", "--count", "3", "--seed", "1")[0] == EXIT_PASS
    assert call("suite", "segal", "--count", "2", "--seed", "1")[0] == EXIT_PASS


def test_usage_errors(fixtures, tmp_path):
    assert call()[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call("compose", fixtures / "bool_relations.json", "M", "Nope")[0] == EXIT_USAGE
    assert call("validate", tmp_path / "missing.json")[0] == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1,}')
    code, _, err = call("validate", bad)
    assert code == EXIT_USAGE and "line 1" in err


def test_machine_output_is_stable_json(fixtures):
    code, out, _ = call("compose", fixtures / "bool_relations.json", "M", "N", "--machine")
    doc = json.loads(out)
    assert code == EXIT_PASS and doc["ok"] and doc["command"] == "compose"
    assert call("compose", fixtures / "bool_relations.json", "M", "N", "--machine")[1] == out


@pytest.mark.parametrize("argv", [
    ["validate", "broken.json"],
    ["compose", "finset_chain.json", "M1", "M2"],
    ["suite", "oracle", "--count", "2", "--seed", "5"],
])
def test_reports_are_byte_identical_across_processes(fixtures, argv):
    argv = [str(fixtures / a) if a.endswith(".json") else a for a in argv]
    runs = [subprocess.run([sys.executable, "-m", "enrichcat", *argv], capture_output=True)
            for _ in range(2)]
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
    assert runs[0].returncode == call(*argv)[0]
