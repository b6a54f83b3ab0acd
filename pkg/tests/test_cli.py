import io
import json
import subprocess
import sys

import pytest

from spherevec import cli, glmod


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--json", *argv)
    return code, json.loads(text)


def test_envelope_shape():
    code, env = run_json("act", "--field", "D23", "--elem", "z^2 (x) v0", "-m", "0", "-a", "-2")
    assert code == 0
    assert set(env) == {"command", "inputs", "payload", "exact", "elapsed_s", "seed", "exit_code"}
    assert env["exact"] is True and env["command"] == "act" and env["exit_code"] == 0
    assert env["inputs"]["alpha"] == "-2"


def test_act_proof_formula():
    code, text = run("act", "--field", "D23", "--elem", "z^2 (x) v0", "-m", "0", "-a", "-2")
    assert code == 0 and text.strip() == "(-y*z) ⊗ v0 [0,-2]"


def test_act_zero_and_reversed_symbols():
    assert run("act", "--field", "D23", "--elem", "0", "-m", "1", "-a", "1")[1].strip() == "0 [1,1]"
    a = run("act", "--field=-D32", "--elem", "x (x) v1", "-m", "1", "-a", "1/2")[1]
    b = run("act", "--field", "D23", "--elem", "x (x) v1", "-m", "1", "-a", "1/2")[1]
    assert a == b


def test_parse_error_exit_code(capsys):
    code, _ = run("act", "--field", "D23", "--elem", "z^ (x) v0", "-m", "0", "-a", "0")
    assert code == 2
    err = capsys.readouterr().err
    assert "position" in err and "^" in err


def test_bad_basis_index():
    code, env = run_json("act", "--field", "D12", "--elem", "1 (x) v3", "-m", "1", "-a", "1")
    assert code == 2 and "v3" in env["payload"]["error"]


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        run("generate", "-m", "1", "-a", "one")
    assert info.value.code == 2


def test_generate_bounded():
    code, env = run_json("generate", "-m", "2", "-a", "0", "-K", "2", "-D", "6")
    assert code == 0
    assert env["payload"]["status"] == "Bounded(-1)"
    assert env["payload"]["expected_degree"] == -1
    code, text = run("generate", "-m", "0", "-a", "-2")
    assert code == 0 and "Bounded(1)" in text


def test_generate_non_integral():
    code, env = run_json("generate", "-m", "1", "-a", "0", "-D", "4")
    assert code == 0
    p = env["payload"]
    assert "non_integral" in p and p["strictly_decreasing"]
    degrees = [t["min_degree"] for t in p["degree_trail"]]
    assert degrees == sorted(degrees, reverse=True) and len(set(degrees)) == 3


def test_decompose():
    code, env = run_json("decompose", "-m", "1", "-a", "1", "-n", "1", "-b", "-1")
    assert code == 0
    p = env["payload"]
    assert p["phi_identity"]
    assert [c["k"] for c in p["components"]] == [0, 1]
    assert all(e["member"] for c in p["components"] for e in c["probes"])


@pytest.mark.parametrize("args, weights", [(("0", "2", "0", "-2"), [(0, "0")]), (("1", "1", "0", "-2"), [(1, "-1")])])
def test_decompose_rank_one(args, weights):
    m, a, n, b = args
    code, env = run_json("decompose", "-m", m, "-a", a, "-n", n, "-b", b)
    assert code == 0
    got = [(c["target"]["m"], c["target"]["alpha"]) for c in env["payload"]["components"]]
    assert got == weights


def test_decompose_non_integral():
    code, _ = run("decompose", "-m", "1", "-a", "0", "-n", "1", "-b", "1")
    assert code == 2


@pytest.mark.parametrize("module", ["A^-2", "Omega", "Vect", "w:2,0"])
@pytest.mark.parametrize("pair", ["z,x", "x,y", "z,y", "z,z"])
def test_transition(module, pair):
    code, env = run_json("transition", "--pair", pair, "--module", module)
    assert code == 0 and env["payload"]["diagram"] and env["payload"]["cocycle"]


def test_transition_errors():
    assert run("transition", "--pair", "z,x", "--module", "Sym2")[0] == 2
    with pytest.raises(SystemExit):
        run("transition", "--pair", "z,w", "--module", "Omega")


def test_verify_axioms_passes_and_embeds_seed():
    code, env = run_json("verify-axioms", "--trials", "5", "--seed", "7")
    assert code == 0 and env["seed"] == 7
    assert all(p["ok"] for p in env["payload"]["properties"])
    assert all(env["payload"]["bracket_table"].values())


def test_verify_axioms_deterministic():
    a = run_json("verify-axioms", "--trials", "3", "--seed", "11")[1]["payload"]
    b = run_json("verify-axioms", "--trials", "3", "--seed", "11")[1]["payload"]
    assert a == b


def test_verify_axioms_zero_trials_warns():
    code, env = run_json("verify-axioms", "--trials", "0")
    assert code == 0 and "warning" in env["payload"]


def test_mutation_is_caught(monkeypatch):
    original = glmod.action.__wrapped__

    def corrupted(p, q, w):
        table = original(p, q, w)
        if (p, q) == (1, 2):
            return tuple(tuple((j, -c) for j, c in row) for row in table)
        return table

    monkeypatch.setattr(glmod, "action", corrupted)
    code, env = run_json("verify-axioms", "--trials", "20", "--seed", "1")
    assert code == 1
    failed = [p for p in env["payload"]["properties"] if not p["ok"]]
    assert failed and all("counterexample" in p for p in failed)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spherevec", "transition", "--pair", "z,x", "--module", "A^-2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "pass" in proc.stdout
