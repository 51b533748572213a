import json

import jsonschema
import numpy as np
import pytest

from qaxioms import serialization as ser
from qaxioms.cli import main
from qaxioms.measurement import make_observable
from qaxioms.signaling import SIGNALING_REPORT_SCHEMA
from qaxioms.states import RawState


@pytest.fixture
def write_matrix(tmp_path):
    def write(m, name="m.json"):
        path = tmp_path / name
        path.write_text(ser.dumps(ser.matrix_to_json(np.asarray(m, dtype=complex))))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_golden(capsys, write_matrix):
    code, out, _ = run(capsys, "classify", write_matrix(np.eye(2)))
    assert code == 0 and out.splitlines()[0] == "UNITARY"
    code, out, _ = run(capsys, "classify", write_matrix(np.diag([1, 0.5])))
    assert code == 0 and out.splitlines()[0] == "NON-UNITARY (B′ only)"
    code, out, _ = run(capsys, "classify", write_matrix(np.diag([1, 0])))
    assert code == 2 and out.startswith("SINGULAR")
    code, out, _ = run(capsys, "classify", write_matrix(2 * np.eye(2)), "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["operator_class"]["tag"] == "ProportionalUnitary"
    jsonschema.validate(obj["operator_class"], ser.OPERATOR_CLASS_SCHEMA)


def test_classify_parse_failure(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "classify", str(bad))[0] == 1
    assert run(capsys, "classify", str(tmp_path / "missing.json"))[0] == 1
    bad.write_text('{"rows": 2, "cols": 2, "entries": [[1, 0]]}')
    assert run(capsys, "classify", str(bad))[0] == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bell-signal", "--bit", "7"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_bell_signal_json(capsys):
    code, out, _ = run(capsys, "bell-signal", "--epsilon", "0.1", "--bit", "0", "--trials", "10000", "--seed", "42", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    jsonschema.validate(obj, SIGNALING_REPORT_SCHEMA)
    p0 = obj["analytic_bob_distribution"]["outcomes"][0]["probability"]
    assert abs(p0 - 1 / 1.01) <= 1e-14
    assert sum(obj["empirical_counts"]) == 10000


def test_bell_signal_is_byte_identical(capsys):
    args = ("bell-signal", "--epsilon", "0.1", "--bit", "0", "--trials", "100000", "--seed", "42", "--format", "json")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_bell_signal_bad_epsilon(capsys):
    for eps in ("0", "1", "-0.2", "1.5"):
        code, _, err = run(capsys, "bell-signal", "--epsilon", eps)
        assert code == 1 and "epsilon" in err


def test_bell_signal_human_and_tsv(capsys):
    code, out, _ = run(capsys, "bell-signal", "--trials", "1000")
    assert code == 0
    assert "0.9900990099010" in out and "projective" in out and "unit vector" in out
    code, out, _ = run(capsys, "bell-signal", "--trials", "1000", "--format", "tsv")
    header, row = out.splitlines()
    assert len(header.split("\t")) == len(row.split("\t")) == 10


def test_theorem_check_verdicts(capsys, write_matrix, rng):
    from qaxioms.linalg_core import random_unitary

    code, out, _ = run(capsys, "theorem-check", write_matrix(random_unitary(3, rng)))
    assert code == 0 and "admissible under A′ and B′" in out
    code, out, _ = run(capsys, "theorem-check", write_matrix(np.diag([1, 0.5])))
    assert code == 0 and "admissible under B′ only" in out and "witness" in out
    code, out, _ = run(capsys, "theorem-check", write_matrix(2 * np.eye(2)))
    assert code == 0 and "proportional-unitary: physically standard under manual normalization" in out
    code, out, _ = run(capsys, "theorem-check", write_matrix(np.diag([1, 0])))
    assert code == 2
    code, out, _ = run(capsys, "theorem-check", write_matrix(np.diag([1, 0.5])), "--format", "json", "--samples", "50", "--seed", "4")
    obj = json.loads(out)
    jsonschema.validate(obj, ser.THEOREM_REPORT_SCHEMA)
    assert obj["admissible_B"] and not obj["admissible_A"]
    assert run(capsys, "theorem-check", write_matrix(np.diag([1, 0.5])), "--format", "json", "--samples", "50", "--seed", "4")[1] == out


def test_evolve_engines(capsys, tmp_path, write_matrix):
    state = tmp_path / "s.json"
    state.write_text(ser.dumps(ser.state_to_json(RawState([1, 1]))))
    diag = write_matrix(np.diag([1, 0.1]))
    code, out, _ = run(capsys, "evolve", "--state", str(state), "--matrix", diag, "--engine", "linear-B", "--format", "json")
    assert code == 0 and np.allclose(ser.state_from_json(json.loads(out)).vec, [1, 0.1])
    code, out, _ = run(capsys, "evolve", "--state", str(state), "--matrix", diag, "--engine", "manual-A", "--format", "json")
    s = ser.state_from_json(json.loads(out))
    assert code == 0 and abs(np.linalg.norm(s.vec) - 1) < 1e-15
    assert run(capsys, "evolve", "--state", str(state), "--matrix", diag, "--engine", "unitary")[0] == 1
    singular = write_matrix(np.diag([1, 0]), "sing.json")
    assert run(capsys, "evolve", "--state", str(state), "--matrix", singular, "--engine", "linear-B")[0] == 2
    assert run(capsys, "evolve", "--state", str(state), "--matrix", singular, "--engine", "manual-A")[0] == 2


def test_measure(capsys, tmp_path):
    state = tmp_path / "s.json"
    state.write_text(ser.dumps(ser.state_to_json(RawState([3, 4j]))))
    obs = tmp_path / "o.json"
    obs.write_text(ser.dumps(ser.observable_to_json(make_observable(np.diag([0.0, 1.0])))))
    code, out, _ = run(capsys, "measure", "--state", str(state), "--observable", str(obs), "--format", "json", "--sample", "--seed", "3")
    obj = json.loads(out)
    assert code == 0
    jsonschema.validate(obj["formulation_A"], ser.DISTRIBUTION_SCHEMA)
    assert obj["formulation_B"]["outcomes"][1]["probability"] == pytest.approx(16 / 25, abs=1e-15)
    assert obj["sample"]["observed_eigenvalue"] in (0.0, 1.0)
    code, out, _ = run(capsys, "measure", "--state", str(state), "--observable", str(obs))
    assert code == 0 and "unit vector" in out and "projective" in out
    obs.write_text(ser.dumps(ser.matrix_to_json(np.array([[0, 1], [0, 0]]))))
    assert run(capsys, "measure", "--state", str(state), "--observable", str(obs))[0] == 1


def test_numeric_contract_exit_code(capsys, monkeypatch, write_matrix):
    from qaxioms import cli
    from qaxioms.errors import NumericContractError

    def broken(*_, **__):
        raise NumericContractError("probabilities sum to 0.9")

    monkeypatch.setattr(cli, "run_protocol", broken)
    assert run(capsys, "bell-signal")[0] == 3


def test_no_comm_and_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "no-comm-check", "--unitaries", "100", "--seed", "0", "--format", "json")
    assert code == 0 and json.loads(out)["max_marginal_deviation"] <= 1e-10
    dest = tmp_path / "sweep.tsv"
    code, out, _ = run(capsys, "sweep", "--epsilons", "0.1,0.5", "--trials", "1000", "--format", "tsv", "--out", str(dest))
    assert code == 0 and out == ""
    lines = dest.read_text().splitlines()
    assert len(lines) == 3 and lines[2].split("\t")[5] == "0.2"
