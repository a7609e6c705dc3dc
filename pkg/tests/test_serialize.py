"""JSON schemas for channels and states."""

import json

import numpy as np
import pytest
from conftest import random_pauli, random_unital

from qubit_retro import (
    BlochState,
    PauliChannel,
    channel_from_json,
    channel_to_json,
    dump_json,
    load_channel,
    load_state,
    matrix_from_pairs,
    matrix_to_pairs,
    state_from_json,
    state_to_json,
)

SEED = 20260825


def test_matrix_pair_roundtrip():
    rng = np.random.default_rng(SEED)
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    back = matrix_from_pairs(matrix_to_pairs(m))
    assert np.abs(back - m).max() == 0.0


def test_matrix_from_pairs_validation():
    with pytest.raises(ValueError):
        matrix_from_pairs([[[0.0], [0.0, 1.0]], [[0.0, 0.0], [0.0, 0.0]]])
    with pytest.raises(ValueError):
        matrix_from_pairs([[[0.0, 0.0]]])


def test_pauli_channel_roundtrip():
    rng = np.random.default_rng(SEED + 1)
    pc = random_pauli(rng)
    doc = channel_to_json(pc)
    assert doc["kind"] == "pauli"
    back = channel_from_json(json.loads(json.dumps(doc)))
    assert isinstance(back, PauliChannel)
    assert np.abs(back.p - pc.p).max() < 1e-15


def test_kraus_channel_roundtrip():
    rng = np.random.default_rng(SEED + 2)
    rep, _, _, _ = random_unital(rng)
    doc = channel_to_json(rep)
    assert doc["kind"] == "kraus"
    back = channel_from_json(json.loads(json.dumps(doc)))
    assert np.abs(back.choi - rep.choi).max() < 1e-12


def test_ptm_channel_document():
    ptm = np.diag([1.0, 0.5, 0.5, 0.25])
    doc = {"kind": "ptm", "m": [float(x) for x in ptm.ravel()]}
    back = channel_from_json(doc)
    assert np.abs(back.ptm - ptm).max() < 1e-15


def test_channel_from_json_rejects_malformed_documents():
    for doc in (
        None,
        [],
        {},
        {"kind": "bell"},
        {"kind": "pauli"},
        {"kind": "pauli", "p": [0.5, 0.5]},
        {"kind": "kraus", "ops": []},
        {"kind": "ptm", "m": [1.0] * 15},
    ):
        with pytest.raises(ValueError):
            channel_from_json(doc)


def test_state_roundtrip():
    s = BlochState(np.array([0.1, -0.2, 0.3]))
    back = state_from_json(json.loads(json.dumps(state_to_json(s))))
    assert np.abs(back.r - s.r).max() < 1e-15


def test_state_from_json_rejects_malformed_documents():
    for doc in (None, {}, {"bloch": [0.0, 0.0]}, {"bloch": "xyz"}):
        with pytest.raises(ValueError):
            state_from_json(doc)


def test_load_helpers_and_dump(tmp_path):
    cpath = tmp_path / "chan.json"
    spath = tmp_path / "state.json"
    dump_json(cpath, {"kind": "pauli", "p": [0.7, 0.1, 0.1, 0.1]})
    dump_json(spath, {"bloch": [0.0, 0.0, 0.5]})
    pc = load_channel(cpath)
    s = load_state(spath)
    assert isinstance(pc, PauliChannel) and abs(pc.p[0] - 0.7) < 1e-15
    assert abs(s.r[2] - 0.5) < 1e-15
    assert cpath.read_bytes().endswith(b"\n")


def test_load_errors_mention_the_path(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ValueError) as err:
        load_channel(missing)
    assert "nope.json" in str(err.value)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError) as err:
        load_state(bad)
    assert "bad.json" in str(err.value)
