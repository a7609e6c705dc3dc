"""JSON schemas for channels and states.

Channel documents carry a "kind" tag:

    {"kind": "pauli", "p": [p0, p1, p2, p3]}
    {"kind": "kraus", "ops": [[[ [re, im], [re, im] ], [ [re, im], [re, im] ]], ...]}
    {"kind": "ptm",   "m": [t00, t01, ..., t33]}        (16 reals, row-major)

States are {"bloch": [r1, r2, r3]}. Complex numbers always serialize as
[re, im] pairs, matrices row-major.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import BlochState, ChannelRep, PauliChannel

__all__ = [
    "matrix_to_pairs",
    "matrix_from_pairs",
    "channel_to_json",
    "channel_from_json",
    "state_to_json",
    "state_from_json",
    "load_channel",
    "load_state",
    "dump_json",
]


def matrix_to_pairs(m: np.ndarray) -> list:
    """Nested row-major [re, im] encoding of a complex matrix."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_pairs(rows, shape=(2, 2)) -> np.ndarray:
    try:
        m = np.array(
            [[complex(entry[0], entry[1]) for entry in row] for row in rows],
            dtype=np.complex128,
        )
    except (TypeError, IndexError) as exc:
        raise ValueError(f"malformed complex matrix encoding: {exc}") from None
    if m.shape != shape:
        raise ValueError(f"matrix has shape {m.shape}, expected {shape}")
    return m


def channel_to_json(e) -> dict:
    """Schema document for a channel; Pauli channels keep their kind."""
    if isinstance(e, PauliChannel):
        return {"kind": "pauli", "p": [float(x) for x in e.p]}
    if isinstance(e, ChannelRep):
        return {"kind": "kraus", "ops": [matrix_to_pairs(k) for k in e.kraus]}
    raise TypeError(f"cannot serialize {type(e).__name__} as a channel")


def channel_from_json(doc: dict):
    """Parse a channel document into a PauliChannel or ChannelRep.

    :raises ValueError: on any schema violation (missing keys, bad shapes,
        out-of-simplex probabilities, ...).
    """
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError('channel document must be an object with a "kind" field')
    kind = doc["kind"]
    if kind == "pauli":
        p = doc.get("p")
        if not isinstance(p, list) or len(p) != 4:
            raise ValueError('"pauli" channel needs a 4-entry "p" list')
        return PauliChannel(np.array([float(x) for x in p]))
    if kind == "kraus":
        ops = doc.get("ops")
        if not isinstance(ops, list) or not ops:
            raise ValueError('"kraus" channel needs a non-empty "ops" list')
        return ChannelRep.from_kraus([matrix_from_pairs(op) for op in ops])
    if kind == "ptm":
        m = doc.get("m")
        if not isinstance(m, list) or len(m) != 16:
            raise ValueError('"ptm" channel needs a 16-entry row-major "m" list')
        return ChannelRep.from_ptm(np.array([float(x) for x in m]).reshape(4, 4))
    raise ValueError(f"unknown channel kind {kind!r}")


def state_to_json(s: BlochState) -> dict:
    return {"bloch": [float(x) for x in s.r]}


def state_from_json(doc: dict) -> BlochState:
    if not isinstance(doc, dict) or "bloch" not in doc:
        raise ValueError('state document must be an object with a "bloch" field')
    r = doc["bloch"]
    if not isinstance(r, list) or len(r) != 3:
        raise ValueError('"bloch" must be a 3-entry list')
    return BlochState(np.array([float(x) for x in r]))


def _load(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None


def load_channel(path):
    return channel_from_json(_load(path))


def load_state(path) -> BlochState:
    return state_from_json(_load(path))


def dump_json(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
