import json
import subprocess
import sys

import pytest

from intensional import dump_task, gen_logic_task
from intensional.cli import RunConfig, main, parse_seeds


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_intensional(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "and:2", "--mode", "intensional")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x0=0 & x2=0 | x1=0 & x2=0 | x0=1 & x1=1 & x2=1"
    assert "  weakness: 4" in lines and "  bits: 24" in lines and "  valid: true" in lines


def test_solve_extensional_json(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "and:2", "--mode", "extensional", "--json")
    assert code == 0
    [rec] = [json.loads(line) for line in out.splitlines()]
    assert rec["terms"] == 4 and rec["weakness"] == 4 and rec["bits"] == 40


def test_solve_one_class(capsys, tmp_path):
    path = tmp_path / "pos.task"
    path.write_text("vars 4\ngoal 1100\ngoal 1101\ngoal 1110\nsituation 1100\nsituation 1101\nsituation 1110\n")
    code, out, _ = run(capsys, "solve", "--task", str(path), "--mode", "one-class")
    assert code == 0 and out.splitlines()[0] == "x0=1 & x1=1"


def test_solve_task_file(capsys, tmp_path):
    path = tmp_path / "and3.task"
    path.write_text(dump_task(gen_logic_task("AND", 2)))
    code, out, _ = run(capsys, "solve", "--task", str(path))
    assert code == 0 and out.startswith("x0=0 & x2=0 |")


def test_solve_errors(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--task", str(tmp_path / "missing.task"))
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.task"
    bad.write_text("vars 3\ngoal 000\nsituation **1\n")
    code, _, err = run(capsys, "solve", "--task", str(bad))
    assert code == 2 and "line 3" in err
    code, _, _ = run(capsys, "solve")
    assert code == 2
    code, _, _ = run(capsys, "solve", "--gen", "mul:2")
    assert code == 2
    code, _, err = run(capsys, "solve", "--gen", "add:3", "--max-primes", "8")
    assert code == 3 and "capacity" in err
    assert run(capsys)[0] == 2


def test_eval_rows(capsys, tmp_path):
    out_path = tmp_path / "run.csv"
    argv = ["eval", "--gen", "add:2", "--fractions", "0.25,0.5,0.75", "--seeds", "0..19",
            "--agents", "intentional,mimic,hybrid", "-o", str(out_path)]
    assert run(capsys, *argv)[0] == 0
    first = out_path.read_bytes()
    assert first.count(b"\n") == 181
    assert run(capsys, *argv)[0] == 0
    assert out_path.read_bytes() == first


def test_eval_mimic_only(capsys):
    code, out, _ = run(capsys, "eval", "--gen", "add:1", "--seeds", "0..9", "--agents", "mimic")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert len(rows) == 10 and all(r[5] == "0.000000" and r[4] == "mimic" for r in rows)


def test_eval_bad_agent(capsys):
    assert run(capsys, "eval", "--gen", "add:1", "--agents", "oracle")[0] == 2


def test_parse(capsys):
    assert run(capsys, "parse", "--n", "3", "x2=0 & x0=0")[:2] == (0, "x0=0 & x2=0\n")
    code, _, err = run(capsys, "parse", "--n", "3", "x0=1 & x0=0")
    assert code == 2 and "contradict" in err and "byte 7" in err
    code, _, err = run(capsys, "parse", "--n", "2", "x7=1")
    assert code == 2 and "byte 0" in err


def test_archive(capsys):
    code, out, _ = run(capsys, "archive", "--gen", "and:2", "--max-terms", "4", "--max-literals", "3")
    assert code == 0
    assert "intersection nonempty: true" in out
    rec = json.loads(out.splitlines()[-1])
    assert rec["claim_holds"] and rec["min_bits"] == 24
    code, out, _ = run(capsys, "archive", "--gen", "parity:2", "--json")
    assert code == 0 and json.loads(out)["intensional_is_extensional"]
    assert run(capsys, "archive", "--gen", "add:1")[0] == 3


def test_dump_task(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "and:2", "--dump-task")
    assert code == 0
    assert out == dump_task(gen_logic_task("AND", 2))


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--gen", "and:2", "--mode", "extensional"],
        ["eval", "--gen", "add:1", "--seeds", "0..4", "--fractions", "0.25,0.5"],
        ["parse", "--n", "3", "x1=1 | x1=1 & x0=0"],
        ["archive", "--gen", "or:2"],
    ],
)
def test_print_config_round_trip(capsys, tmp_path, argv):
    code, dump, _ = run(capsys, *argv, "--print-config")
    assert code == 0
    cfg = RunConfig.load(dump)
    assert cfg.dump() == dump
    path = tmp_path / "cfg.json"
    path.write_text(dump)
    _, direct, _ = run(capsys, *argv)
    _, replayed, _ = run(capsys, "--config", str(path))
    assert direct == replayed and direct


def test_bad_config(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"subcommand": "solve", "colour": "red"}')
    assert run(capsys, "--config", str(path))[0] == 2
    path.write_text("not json")
    assert run(capsys, "--config", str(path))[0] == 2


def test_parse_seeds():
    assert parse_seeds("0..3") == [0, 1, 2, 3]
    assert parse_seeds("5, 7,0..1") == [5, 7, 0, 1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "intensional", "parse", "--n", "3", "TRUE | x0=1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "TRUE\n"
