import json
import subprocess
import sys

import pytest

from consensus_halving.cli import main, run_stats
from consensus_halving.generators import gen_random
from consensus_halving.monotonic import table1_oracle


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def test_generate_and_solve_halving(tmp_path, capsys):
    path = tmp_path / "inst.json"
    code, _ = run(capsys, "generate", "random", "--n", 3, "--m", 10, "--seed", 4, "-o", path)
    assert code == 0
    code, out = run(capsys, "solve", "halving", path)
    payload = json.loads(out)
    assert code == 0
    assert payload["verification"]["passed"]
    assert len(payload["verification"]["cut_items"]) <= 3


def test_solve_ksplit_single_item(tmp_path, capsys):
    path = write(tmp_path, "one.json", {"n": 1, "m": 1, "utilities": [["1"]]})
    code, out = run(capsys, "solve", "ksplit", path, "--ratios", "1/3,1/3,1/3")
    assert code == 0
    assert json.loads(out)["split"]["fractions"] == [["1/3", "1/3", "1/3"]]


def test_solve_austin_on_oracle_json(tmp_path, capsys):
    payload = {
        "kind": "coverage",
        "weights": [["1", "2", "3"], ["3", "1", "1"]],
        "covers": [[[0], [1], [2], [0, 1]], [[2], [0], [1], [1, 2]]],
    }
    path = write(tmp_path, "cov.json", payload)
    code, out = run(capsys, "solve", "austin", path)
    payload = json.loads(out)
    assert code == 0 and payload["verification"]["exact1"]


@pytest.mark.parametrize("kind", ["discrete", "lovasz", "agreeable"])
def test_solve_oracle_kinds(tmp_path, capsys, kind):
    path = write(tmp_path, "t1.json", table1_oracle().to_json())
    code, out = run(capsys, "solve", kind, path)
    assert code == 0, out


def test_solve_agreeable_additive(tmp_path, capsys):
    path = write(tmp_path, "inst.json", gen_random(3, 9, 2).to_json())
    code, out = run(capsys, "solve", "agreeable", path)
    payload = json.loads(out)
    assert code == 0 and payload["size"] <= payload["size_bound"] == 6


def test_solve_greedy(tmp_path, capsys):
    path = write(tmp_path, "g.json", gen_random(1, 200, 3).to_json())
    code, out = run(capsys, "solve", "greedy-one-cut", path, "--k", 3)
    assert code == 0 and json.loads(out)["condition_met"]
    small = write(tmp_path, "s.json", {"n": 1, "m": 1, "utilities": [["1"]]})
    code, out = run(capsys, "solve", "greedy-one-cut", small)
    assert code == 1 and not json.loads(out)["condition_met"]


def test_verify(tmp_path, capsys):
    inst = write(tmp_path, "i.json", {"n": 1, "m": 2, "utilities": [["1", "1"]]})
    good = write(tmp_path, "good.json", {"k": 2, "fractions": [["1", "0"], ["0", "1"]]})
    bad = write(tmp_path, "bad.json", {"k": 2, "fractions": [["1", "0"], ["1", "0"]]})
    assert run(capsys, "verify", inst, good)[0] == 0
    assert run(capsys, "verify", inst, bad)[0] == 1


def test_oracle_commands(tmp_path, capsys):
    inst = write(tmp_path, "i.json", {"n": 2, "m": 2, "utilities": [["1", "0"], ["0", "1"]]})
    code, out = run(capsys, "oracle", "min-cuts", inst)
    assert code == 0 and json.loads(out)["min_cuts"] == 2
    code, out = run(capsys, "oracle", "line", inst, "--order", "1,0")
    assert code == 0 and json.loads(out)["min_cuts"] == 2
    code, out = run(capsys, "oracle", "agreeable-size", inst)
    assert json.loads(out)["min_size"] == 2


def test_exit_codes(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(capsys, "solve", "halving", broken)[0] == 2
    assert run(capsys, "solve", "halving", tmp_path / "missing.json")[0] == 2
    big = write(tmp_path, "big.json", gen_random(1, 13, 0).to_json())
    assert run(capsys, "oracle", "min-cuts", big)[0] == 3
    assert run(capsys, "stats", "min-cuts", "--n", 9)[0] == 3
    neg = write(tmp_path, "neg.json", {"n": 1, "m": 1, "utilities": [["-1"]]})
    assert run(capsys, "solve", "halving", neg)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "nonsense", "x"])
    assert exc.value.code == 2


def test_stats_deterministic_and_parallel():
    serial = run_stats("min-cuts", 6, 3, 5, 4, 10, 10**6, threads=1)
    parallel = run_stats("min-cuts", 6, 3, 5, 4, 10, 10**6, threads=2)
    assert serial == parallel
    assert serial["distribution"] == {"3": 6}


def test_stats_zero_trials(capsys):
    code, out = run(capsys, "stats", "greedy-one-cut", "--trials", 0, "--m", 1000)
    payload = json.loads(out)
    assert code == 0 and payload["trials"] == 0 and payload["successes"] == 0


def test_stats_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "stats", "greedy-one-cut", "--trials", 3, "--m", 300, "--seed", 5, "-o", a)
    run(capsys, "stats", "greedy-one-cut", "--trials", 3, "--m", 300, "--seed", 5, "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_pretty_output(capsys):
    code, out = run(capsys, "stats", "min-cuts", "--trials", 2, "--pretty")
    assert code == 0 and "distribution:" in out and not out.lstrip().startswith("{")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "consensus_halving", "generate", "line", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"] == 5
