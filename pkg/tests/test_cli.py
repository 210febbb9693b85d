import json

import pytest

from cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, main, parse_range
from groups import save_group, AlternatingGroup, CyclicGroup
from mixing import MixingSequence, write_json
from reps import dihedral_irreps


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out)


def test_construct_and_verify(capsys, tmp_path):
    path = tmp_path / "s4.json"
    status, doc = run_json(capsys, "-o", str(path), "construct", "--family", "sym", "--n", "4")
    assert status == EXIT_OK
    assert doc["result"]["family"] == "sym-fast"
    assert doc["result"]["length"] == 5
    assert doc["result"]["bound_ok"]
    assert MixingSequence.from_file(path).length == 5

    status, doc = run_json(capsys, "verify", "--sequence", str(path))
    assert status == EXIT_OK
    assert doc["result"]["uniform"]
    assert doc["result"]["mode"] == "exact"
    assert str(path) in doc["inputs"]


def test_construct_embeds_the_sequence(capsys):
    status, doc = run_json(capsys, "construct", "--family", "dihedral", "--n", "4")
    assert status == EXIT_OK
    assert doc["result"]["sequence"]["steps"] == [{"g": [0, 1], "p": "1/2"}, {"g": [1, 0], "p": "1/2"},
                                                  {"g": [2, 0], "p": "1/2"}]


@pytest.mark.parametrize("argv,length", [
    (["--family", "alt", "--n", "5"], 8),
    (["--family", "alt", "--method", "action", "--n", "6"], 4),
    (["--family", "sym", "--method", "adjacent", "--n", "4"], 6),
    (["--family", "cyclic", "--d", "3"], 3),
    (["--family", "coxeter-b", "--n", "2"], 3),
    (["--family", "psl2", "--e", "1"], 4),
    (["--family", "dihedral", "--method", "irreps", "--n", "5"], 7),
])
def test_construct_families(capsys, argv, length):
    status, doc = run_json(capsys, "construct", *argv)
    assert status == EXIT_OK
    assert doc["result"]["length"] == length


def test_construct_two_group(capsys, tmp_path):
    group_path = tmp_path / "z8.json"
    save_group(CyclicGroup(8), group_path)
    status, doc = run_json(capsys, "construct", "--family", "two-group", "--group", str(group_path))
    assert status == EXIT_OK
    assert doc["result"]["length"] == 3
    assert doc["result"]["verification"]["uniform"]


def test_construct_errors(capsys):
    assert run(capsys, "construct", "--family", "sym")[0] == EXIT_ERROR
    assert run(capsys, "construct", "--family", "sym", "--method", "bubble", "--n", "4")[0] == EXIT_ERROR
    assert run(capsys, "construct", "--family", "alt", "--n", "4")[0] == EXIT_ERROR
    assert run(capsys, "construct", "--family", "two-group")[0] == EXIT_ERROR


def test_verify_failure(capsys, tmp_path):
    path = tmp_path / "short.json"
    write_json({"group": {"kind": "cyclic", "n": 8}, "steps": [{"g": 1, "p": "1/2"}, {"g": 2, "p": "1/2"}]}, path)
    status, doc = run_json(capsys, "verify", "--sequence", str(path))
    assert status == EXIT_FAILED
    assert not doc["result"]["uniform"]
    assert doc["result"]["max_dev"] == "1/8"

    assert run(capsys, "verify", "--sequence", str(tmp_path / "missing.json"))[0] == EXIT_ERROR


def test_analyze(capsys, tmp_path):
    path = tmp_path / "a4.json"
    save_group(AlternatingGroup(4), path)
    status, doc = run_json(capsys, "analyze", "--group", str(path))
    assert status == EXIT_OK
    assert doc["result"]["odd_quotient"] == 3
    assert doc["result"]["involution_series"] == [1, 4]


def test_search(capsys, tmp_path):
    z4, z3 = tmp_path / "z4.json", tmp_path / "z3.json"
    save_group(CyclicGroup(4), z4)
    save_group(CyclicGroup(3), z3)

    status, doc = run_json(capsys, "search", "--group", str(z4), "--max-len", "3")
    assert status == EXIT_OK
    assert doc["result"]["outcome"] == "found"
    assert doc["result"]["length"] == 2

    status, doc = run_json(capsys, "--threads", "2", "search", "--group", str(z3), "--max-len", "5",
                           "--p-grid", "1/3,1/2,2/3")
    assert status == EXIT_FAILED
    assert doc["result"]["outcome"] == "exhausted"
    assert doc["result"]["pruned"]["singular"] > 0

    status, doc = run_json(capsys, "search", "--group", str(z3), "--max-len", "5", "--p-grid", "1/3,1/2,2/3",
                           "--no-structural-pruning")
    assert status == EXIT_FAILED
    assert doc["result"]["pruned"]["singular"] == 0

    status, doc = run_json(capsys, "search", "--group", str(z3), "--max-len", "5", "--expect-none")
    assert status == EXIT_OK
    assert doc["result"]["odd_quotient"] == 3

    status, doc = run_json(capsys, "search", "--group", str(z4), "--max-len", "3", "--expect-none")
    assert status == EXIT_FAILED
    assert doc["result"]["outcome"] == "found"

    assert run(capsys, "search", "--group", str(z4), "--max-len", "3", "--p-grid", "3/2")[0] == EXIT_ERROR


def test_rep_mix(capsys, tmp_path):
    rep_path, out_path = tmp_path / "rep.json", tmp_path / "mixer.json"
    dihedral_irreps(3)[1].to_file(rep_path)
    status, doc = run_json(capsys, "-o", str(out_path), "rep-mix", "--rep", str(rep_path))
    assert status == EXIT_OK
    assert len(doc["result"]["steps"]) == 3
    assert MixingSequence.from_file(out_path).length == 3


def test_sample(capsys, tmp_path):
    path = tmp_path / "z8.json"
    run(capsys, "-o", str(path), "construct", "--family", "cyclic", "--d", "3")
    status, doc = run_json(capsys, "--seed", "5", "sample", "--sequence", str(path), "--trials", "800")
    assert status == EXIT_OK
    assert doc["result"]["seed"] == 5
    assert doc["result"]["trials"] == 800
    assert sum(c for _, c in doc["result"]["counts"]) == 800


def test_table(capsys, tmp_path):
    path = tmp_path / "table.md"
    status, out = run(capsys, "-o", str(path), "table", "--family", "sym-fast", "--range", "2..5")
    assert status == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 2 + 4
    assert "n" in lines[0] and "bound_ok" in lines[0]
    assert path.read_text(encoding="utf-8").strip() == out.strip()
    assert run(capsys, "table", "--family", "sym-fast", "--range", "5..2")[0] == EXIT_ERROR


def test_status(capsys):
    status, doc = run_json(capsys, "status", "--q", "4", "--d", "2")
    assert status == EXIT_OK
    assert doc["result"]["char2_constructive"]


def test_parse_range():
    assert parse_range("2..8") == (2, 8)
    assert parse_range("5") == (5, 5)
    for bad in ["a..b", "8..2", ""]:
        with pytest.raises(ValueError):
            parse_range(bad)
