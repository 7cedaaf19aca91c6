import json

import pytest

from khdet.cli import main

TREFOIL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_invariants_trefoil(capsys):
    code, doc = run_json(capsys, "invariants", "--pd", TREFOIL)
    assert code == 0
    assert set(doc) == {"schema_version", "input", "results"}
    assert doc["results"]["determinant"] == 3


def test_invariants_hopf_braid(capsys):
    code, doc = run_json(capsys, "invariants", "--braid", "1,1", "--strands", "2")
    assert code == 0 and doc["results"]["determinant"] == 2
    assert doc["input"]["braid"] == [1, 1]


def test_invariants_hopf_cable(capsys):
    code, doc = run_json(capsys, "invariants", "--hopf-cable", "1", "3", "--ring", "f2")
    assert code == 0
    res = doc["results"]
    assert res["determinant"] == 0
    assert res["branched_h1"] == {"free_rank": 1, "torsion": [], "display": "Z"}
    assert res["kh_ranks"] == {"F2": 16}


def test_kh_unknot_rows(capsys):
    code, doc = run_json(capsys, "kh", "--pd", "PD[] + 1")
    assert code == 0
    assert doc["results"]["table"] == [
        {"i": 0, "j": -1, "free_rank": 1, "torsion": []},
        {"i": 0, "j": 1, "free_rank": 1, "torsion": []},
    ]


def test_kh_unlink_f2(capsys):
    code, doc = run_json(capsys, "kh", "--pd", "PD[] + 2", "--ring", "f2")
    assert doc["results"]["total_rank"] == 4


def test_kh_h13_above_four(capsys):
    code, doc = run_json(capsys, "kh", "--hopf-cable", "1", "3", "--ring", "f2")
    assert code == 0 and doc["results"]["total_rank"] > 4


def test_kh_reduced_and_text(capsys):
    code, out, _ = run(capsys, "kh", "--braid", "1,1,1", "--ring", "f2", "--reduced")
    assert code == 0 and "total rank 3" in out


def test_kh_lee(capsys):
    code, doc = run_json(capsys, "kh", "--braid", "1,1", "--lee")
    assert doc["results"]["total_rank"] == 4


def test_jones_output(capsys):
    code, out, _ = run(capsys, "jones", "--hopf-cable", "-1", "-3")
    assert out.strip() == "-t^(-9/2) - t^(-13/2) + t^(-21/2) - t^(-23/2)"


def test_classify_bundle(capsys):
    code, doc = run_json(capsys, "classify-bundle", "1", "3")
    assert code == 0
    assert doc["results"]["order"] == 6 and doc["results"]["trefoil_surgery_type"] is True


def test_deterministic_output(capsys):
    argv = ("invariants", "--hopf-cable", "1", "3", "--json")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


@pytest.mark.parametrize(
    "argv",
    [
        ("invariants", "--pd", "PD[X(1,4,2,3),X(3,6,4,5),X(5,2,6,1)]"),
        ("kh", "--pd", "PD[X(1,2"),
        ("kh", "--braid", "1,q"),
        ("kh", "--braid", "1,1", "--reduced"),
        ("jones",),
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "input error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["kh", "--ring", "z7"])
    assert info.value.code == 2


def test_cap_exit_3(capsys, monkeypatch):
    assert run(capsys, "kh", "--hopf-cable", "1", "3", "--max-generators", "100")[0] == 3
    monkeypatch.setenv("KHDET_MAX_GENERATORS", "10")
    assert run(capsys, "kh", "--braid", "1,1,1")[0] == 3


@pytest.mark.slow
def test_paper_verify(capsys):
    code, doc = run_json(capsys, "paper-verify", "--seed", "0")
    assert code == 0
    assert doc["results"]["failed"] == []
    assert len(doc["results"]["checks"]) == 13
    assert all(c["citation"] for c in doc["results"]["checks"])
