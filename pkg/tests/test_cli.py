import json

import pytest

import main as cli
from main import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def error_payload(err):
    return json.loads([line for line in err.splitlines() if line.startswith("{")][-1])


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    rows = json_lines(out)
    assert code == 0
    assert len(rows) == 24
    assert rows[0] == {"perm": [0, 1, 2, 3], "word": []}
    assert rows[-1] == {"perm": [3, 2, 1, 0], "word": [0, 1, 0, 2, 1, 0]}

    _, out, _ = run(capsys, "enumerate", "--n", "6", "--limit", "5")
    assert len(json_lines(out)) == 5


def test_enumerate_domain_error(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "1")
    assert code == 2
    assert error_payload(err)["error"] == "domain_error"


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--perm", "[3,2,0,1]")
    (row,) = json_lines(out)
    assert code == 0
    assert row["word"] == [1, 0, 2, 1, 0]
    assert row["length"] == row["inversions"] == 5

    _, out, _ = run(capsys, "decompose", "--cycles", "(0 3 1)(2)", "--n", "4")
    assert json_lines(out)[0]["perm"] == [3, 0, 2, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ("decompose", "--perm", "[0,0,1]"),
        ("decompose", "--perm", "not json"),
        ("decompose", "--cycles", "(0 1)"),
    ],
)
def test_decompose_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert error_payload(err)["error"] == "validation_error"


def test_sample_is_deterministic(capsys):
    _, first, _ = run(capsys, "sample", "--n", "5", "--count", "10", "--seed", "7")
    _, second, _ = run(capsys, "sample", "--n", "5", "--count", "10", "--seed", "7")
    assert first == second
    rows = json_lines(first)
    assert len(rows) == 10
    assert all(sorted(row["perm"]) == list(range(5)) for row in rows)


def test_sample_with_restriction(capsys, tmp_path):
    spec = {"N": 3, "slots": [{"k": 0, "mode": "pinned", "pin": 1}, {"k": 1, "mode": "barred"}]}
    path = tmp_path / "restrict.json"
    path.write_text(json.dumps(spec), encoding="utf-8")

    code, out, _ = run(capsys, "sample", "--n", "3", "--count", "40", "--seed", "1", "--restrict", str(path))
    assert code == 0
    assert {tuple(row["word"]) for row in json_lines(out)} <= {(0, 1), (0, 1, 0)}


def test_synth_qasm(capsys):
    code, out, _ = run(capsys, "synth", "--word", "[5]", "--qubits", "3", "--lower", "--qasm")
    assert code == 0
    assert out.startswith("OPENQASM 3.0;")
    assert out.splitlines()[3:] == [
        "cx q[0], q[1];",
        "ctrl(2) @ x q[2], q[1], q[0];",
        "cx q[0], q[1];",
    ]


def test_synth_json(capsys):
    code, out, _ = run(capsys, "synth", "--word", "[0]", "--qubits", "3")
    (row,) = json_lines(out)
    assert code == 0
    assert row["n"] == 3
    assert row["lowered_counts"] == {"x": 4, "cnot": 0, "toffoli": 1, "toffoli_arity": 3}


def test_synth_must_lower(capsys):
    code, _, err = run(capsys, "synth", "--word", "[4]", "--qubits", "3", "--qasm")
    assert code == 2
    assert error_payload(err)["error"] == "must_lower"


def test_randtest(capsys, tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("\n".join(str(v) for v in range(1, 9)) + "\n", encoding="utf-8")

    code, out, _ = run(
        capsys, "randtest", "--data", str(path), "--m", "2", "--shots", "3000", "--seed", "1", "--exact"
    )
    (report,) = json_lines(out)
    assert code == 0
    assert report["class_count"] == 28
    assert report["t_star"] == pytest.approx(2.0)
    assert report["p_value"] == pytest.approx(24 / 28)


def test_randtest_qubit_mismatch(capsys, tmp_path):
    path = tmp_path / "data.json"
    path.write_text("[1, 2, 3, 4]", encoding="utf-8")
    code, _, err = run(capsys, "randtest", "--data", str(path), "--n", "3", "--m", "1", "--shots", "10")
    assert code == 2
    assert error_payload(err)["error"] == "validation_error"


def test_corona(capsys):
    code, out, _ = run(capsys, "corona", "--n", "4")
    (payload,) = json_lines(out)
    assert code == 0
    assert payload["vertex_count"] == 24
    assert payload["edge_count"] == 37

    _, out, _ = run(capsys, "corona", "--n", "3", "--dot")
    assert "S3G" in out


def test_missing_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    assert error_payload(capsys.readouterr().err)["error"] == "usage_error"


@pytest.mark.parametrize(
    "argv",
    [
        ("enumerate", "--n", "3", "--bogus"),
        ("enumerate", "--n", "three"),
        ("randtest", "--data", "x.csv", "--m", "1", "--shots", "5", "--tail", "UP"),
    ],
)
def test_usage_errors_are_json(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2
    payload = error_payload(capsys.readouterr().err)
    assert payload["error"] == "usage_error"
    assert payload["message"]


def test_negative_limit(capsys):
    code, out, err = run(capsys, "enumerate", "--n", "3", "--limit", "-1")
    assert code == 2
    assert out == ""
    assert error_payload(err)["error"] == "validation_error"


def test_randtest_non_numeric_json(capsys, tmp_path):
    path = tmp_path / "data.json"
    path.write_text(json.dumps(["a", "b", "c", "d"]), encoding="utf-8")
    code, _, err = run(capsys, "randtest", "--data", str(path), "--m", "1", "--shots", "10")
    assert code == 2
    assert error_payload(err)["error"] == "validation_error"


def test_unexpected_error_is_json(capsys, monkeypatch):
    def broken(args):
        raise RuntimeError("壞掉了")

    monkeypatch.setattr(cli, "cmd_corona", broken)
    code, _, err = run(capsys, "corona", "--n", "3")
    assert code == 1
    payload = error_payload(err)
    assert payload["error"] == "internal_error"
    assert "RuntimeError" in payload["message"]


def test_corona_size_limit(capsys):
    code, _, err = run(capsys, "corona", "--n", "12")
    assert code == 2
    assert error_payload(err)["error"] == "resource_limit"


def test_synth_text_word_matches_json(capsys):
    _, from_json, _ = run(capsys, "synth", "--word", "[5, 4]", "--qubits", "3")
    _, from_text, _ = run(capsys, "synth", "--word", "s5 s4", "--qubits", "3")
    assert from_json == from_text

    _, out, _ = run(capsys, "synth", "--word", "I", "--qubits", "2")
    assert json_lines(out)[0]["gates"] == []
