import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from mqsolve.cli import main, make_rng

SCHEMA_DIR = Path(__file__).parent.parent / "docs" / "schemas"


def load_validator(name):
    registry = Registry()
    for path in SCHEMA_DIR.glob("*.schema.json"):
        resource = Resource.from_contents(json.loads(path.read_text()))
        registry = registry.with_resource(uri=path.name, resource=resource)
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
    return Draft202012Validator(schema, registry=registry)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def gen_file(tmp_path, capsys, n=8, m=8, seed=3, plant=False):
    path = tmp_path / "sys.mq"
    args = ["gen", "--n", str(n), "--m", str(m), "--seed", str(seed), "--out", str(path)]
    if plant:
        args.append("--plant")
    code, _, _ = run_cli(capsys, *args)
    assert code == 0
    return path


# ---------------------------------------------------------------------------
# rng contract
# ---------------------------------------------------------------------------

def test_rng_reference_vectors():
    # frozen in docs/formats.md; alternate implementations must reproduce these
    draws = [int(x) for x in make_rng(0).integers(0, 2**64, size=4, dtype=np.uint64)]
    assert draws == [259491006799949737, 4754966410622352325,
                     8698845897610382596, 1686395276220330909]
    draws = [int(x) for x in make_rng(1).integers(0, 2**64, size=4, dtype=np.uint64)]
    assert draws == [1232279569898196538, 1457532264001425278,
                     106569017797417483, 14878344917644725055]
    draws = [int(x) for x in make_rng(0, (1,)).integers(0, 2**64, size=4, dtype=np.uint64)]
    assert draws == [12441188205270234579, 8834087402389068706,
                     5718262333018195187, 8718541290919479255]


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def test_gen_deterministic_bytes(tmp_path, capsys):
    a = tmp_path / "a.mq"
    b = tmp_path / "b.mq"
    assert run_cli(capsys, "gen", "--n", "10", "--m", "10", "--seed", "5", "--out", str(a))[0] == 0
    assert run_cli(capsys, "gen", "--n", "10", "--m", "10", "--seed", "5", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_round_trips(tmp_path, capsys):
    from mqsolve.anf import parse_system, serialize_system
    path = gen_file(tmp_path, capsys, n=9, m=7, seed=8)
    text = path.read_text()
    assert serialize_system(parse_system(text)) == text


def test_gen_planted_solvable(tmp_path, capsys):
    path = tmp_path / "p.mq"
    code, out, _ = run_cli(capsys, "gen", "--n", "8", "--m", "8", "--seed", "2",
                           "--plant", "--out", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("gen").validate(payload)
    from mqsolve.anf import brute_force_solve, parse_system
    system = parse_system(path.read_text())
    root = tuple(int(c) for c in payload["planted"])
    assert root in brute_force_solve(system)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def test_solve_json_and_pipeline(tmp_path, capsys):
    path = tmp_path / "p.mq"
    code, out, _ = run_cli(capsys, "gen", "--n", "8", "--m", "8", "--seed", "2",
                           "--plant", "--out", str(path), "--json")
    planted = json.loads(out)["planted"]
    code, out, _ = run_cli(capsys, "solve", "--in", str(path), "--k", "3",
                           "--seed", "7", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("solve").validate(payload)
    assert planted in payload["solutions"]
    assert payload["searches_run"] == payload["macaulay_tests"] - payload["certificates_found"]
    assert "wall_time_s" not in payload


def test_solve_deterministic_output(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, seed=13)
    _, out1, _ = run_cli(capsys, "solve", "--in", str(path), "--k", "2", "--json")
    _, out2, _ = run_cli(capsys, "solve", "--in", str(path), "--k", "2", "--json")
    assert out1 == out2


def test_solve_timings_flag(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    _, out, _ = run_cli(capsys, "solve", "--in", str(path), "--k", "2", "--json", "--timings")
    assert "wall_time_s" in json.loads(out)


def test_solve_auto_k(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, n=8, m=8)
    code, out, _ = run_cli(capsys, "solve", "--in", str(path), "--auto-k", "--variant", "lv", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == round((1 - 0.5506) * 8)


def test_solve_matches_brute_force(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, n=9, m=9, seed=21)
    from mqsolve.anf import assignment_to_string, brute_force_solve, parse_system
    _, out, _ = run_cli(capsys, "solve", "--in", str(path), "--k", "3", "--json")
    payload = json.loads(out)
    expect = [assignment_to_string(a) for a in sorted(brute_force_solve(parse_system(path.read_text())))]
    assert payload["solutions"] == expect


def test_solve_missing_file(capsys):
    code, _, err = run_cli(capsys, "solve", "--in", "/nonexistent/x.mq", "--k", "2")
    assert code == 1
    assert "/nonexistent/x.mq" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])          # missing --in
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# grover
# ---------------------------------------------------------------------------

def test_grover_json(tmp_path, capsys):
    path = tmp_path / "p.mq"
    run_cli(capsys, "gen", "--n", "10", "--m", "10", "--seed", "4", "--plant", "--out", str(path))
    code, out, _ = run_cli(capsys, "grover", "--in", str(path), "--k", "5",
                           "--shots", "400", "--seed", "9", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("grover").validate(payload)
    assert payload["stage1"]["marked"] >= 1
    assert payload["end_to_end"]["status"] == "root"
    assert abs(payload["stage1"]["measured_frequency"]
               - payload["stage1"]["success_probability"]) < 0.1


def test_grover_deterministic(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, n=8, m=8, seed=6, plant=True)
    _, out1, _ = run_cli(capsys, "grover", "--in", str(path), "--k", "4", "--seed", "1", "--json")
    _, out2, _ = run_cli(capsys, "grover", "--in", str(path), "--k", "4", "--seed", "1", "--json")
    assert out1 == out2


# ---------------------------------------------------------------------------
# macaulay
# ---------------------------------------------------------------------------

def test_macaulay_json_and_dump(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, n=10, m=10, seed=5)
    dump = tmp_path / "mat.txt"
    code, out, _ = run_cli(capsys, "macaulay", "--in", str(path), "--k", "3",
                           "--dump", str(dump), "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("macaulay").validate(payload)
    header = dump.read_text().splitlines()[0].split()
    assert [int(x) for x in header] == [payload["r_mac"], payload["c_mac"]]
    assert payload["bounds"] is not None
    assert payload["r_mac"] < payload["bounds"]["rows"]


def test_macaulay_text_output(tmp_path, capsys):
    path = gen_file(tmp_path, capsys, n=8, m=8)
    code, out, _ = run_cli(capsys, "macaulay", "--in", str(path))
    assert code == 0
    assert "witness degree" in out


# ---------------------------------------------------------------------------
# gatecount
# ---------------------------------------------------------------------------

def test_gatecount_builders(capsys):
    code, out, _ = run_cli(capsys, "gatecount", "--circuit", "inner-product", "--n", "5", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("gatecount").validate(payload)
    assert payload["counts"] == {"toffoli": 5}
    assert payload["cnot_equivalent"] == 30


def test_gatecount_qrs(capsys):
    code, out, _ = run_cli(capsys, "gatecount", "--circuit", "qrs", "--n", "4", "--r", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("gatecount").validate(payload)
    assert payload["steps"]["step4"] == {"toffoli": 8, "cnot": 2}
    code, _, err = run_cli(capsys, "gatecount", "--circuit", "qrs", "--n", "4")
    assert code == 1 and "--r" in err


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

def test_estimate_quantum_headline(capsys):
    code, out, _ = run_cli(capsys, "estimate", "--theta", "2", "--setting", "quantum", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("estimate").validate(payload)
    assert abs(payload["gamma_star"] - 0.17) <= 0.02
    assert abs(payload["exponent"] - 0.462) <= 0.002


def test_estimate_security_and_baselines(capsys):
    code, out, _ = run_cli(capsys, "estimate", "--theta", "2", "--setting", "quantum",
                           "--security", "64", "80", "128", "256",
                           "--compare-n", "256", "--json")
    assert code == 0
    payload = json.loads(out)
    load_validator("estimate").validate(payload)
    ns = [row["n"] for row in payload["security_table"]]
    assert all(abs(a - b) <= 1 for a, b in zip(ns, [139, 173, 277, 555]))
    assert payload["baselines"]["quantum_hybrid"] == pytest.approx(0.462 * 256)
