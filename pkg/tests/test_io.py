import json

import numpy as np
import pytest

from qutrit_sic import io
from qutrit_sic.errors import UsageError
from qutrit_sic.invariants import invariant_tensors
from qutrit_sic.rotations import closed_form_rotation
from qutrit_sic.sic import FamilySpec, build_sic, builtin_specs
from qutrit_sic.verify import SUITES, run_suites, worker_count


def test_fmt_uses_17_significant_digits():
    assert io.fmt(0.1) == "0.10000000000000001"
    assert float(io.fmt(1 / 3)) == 1 / 3
    assert io.fmt(3) == "3"
    assert io.fmt(True) == "True"
    assert io.fmt(-0.0) == "-0"


def test_csv_text_header_and_newlines():
    text = io.csv_text(["a", "b"], [(1, 0.5), (2, 0.25)])
    assert text == "a,b\n1,0.5\n2,0.25\n"
    assert float(io.csv_text(["a"], [(1e-20,)]).split()[1]) == 1e-20
    assert io.csv_text(["a"], []) == "a\n"


def test_complex_pairs_round_trip():
    a = np.array([[1 + 2j, -0.5j], [3.25, 1e-300 + 1j]])
    np.testing.assert_array_equal(io.from_pairs(io.complex_pairs(a)), a)
    with pytest.raises(UsageError):
        io.from_pairs([[1, 2, 3]])


@pytest.mark.parametrize("spec", builtin_specs(3)[::5])
def test_sic_json_round_trip_is_exact(spec):
    sic = build_sic(spec)
    back = io.sic_from_dict(json.loads(io.dumps(io.sic_to_dict(sic))))
    np.testing.assert_array_equal(back.projectors, sic.projectors)
    np.testing.assert_array_equal(back.fiducial, sic.fiducial)
    assert back.spec == sic.spec


def test_tensor_dump_order():
    inv = invariant_tensors(build_sic(FamilySpec.generic(3, 1, 0.2)))
    d = io.tensors_to_dict(inv)
    s = io.from_pairs(d["S"]).reshape(9, 9, 9)
    np.testing.assert_array_equal(s, inv.S)
    assert len(d["T"]) == 729


def test_rotation_csv_shape():
    text = io.rotation_csv(closed_form_rotation((2, -1), 0.3))
    lines = text.splitlines()
    assert lines[0] == ",".join(f"c{j}" for j in range(1, 10))
    m = np.array([line.split(",") for line in lines[1:]], dtype=float)
    np.testing.assert_array_equal(m, closed_form_rotation((2, -1), 0.3).matrix)


@pytest.mark.parametrize(
    "payload, kind",
    [
        ([[[1, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]]], "matrix"),
        ([[1, 0, 0], [0, 0, 0], [0, 0, 0]], "matrix"),
        ([1 / 9] * 9, "probs"),
        ({"rho": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]}, "matrix"),
        ({"probs": [1 / 9] * 9}, "probs"),
    ],
)
def test_read_state_file_detects_shape(tmp_path, payload, kind):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(payload))
    got, data = io.read_state_file(path)
    assert got == kind
    assert data.shape == ((3, 3) if kind == "matrix" else (9,))


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("QUTRIT_SIC_THREADS", "3")
    assert worker_count() == 3
    for raw in ("0", "", "junk", "-2"):
        monkeypatch.setenv("QUTRIT_SIC_THREADS", raw)
        assert worker_count() >= 1


def test_suite_order_is_deterministic():
    names = ["sic-rotations", "linalg-core", "sic-invariants"]
    serial = run_suites(names, workers=1)
    parallel = run_suites(names, workers=3)
    assert [s.name for s in serial] == names == [s.name for s in parallel]
    for a, b in zip(serial, parallel):
        assert [(c.name, c.worst) for c in a.checks] == [(c.name, c.worst) for c in b.checks]


def test_suite_names_match_modules():
    assert list(SUITES) == [
        "linalg-core", "weyl-heisenberg-sic", "sic-invariants", "sic-representation",
        "sic-rotations", "qutrit-boundary", "cli-tool",
    ]
