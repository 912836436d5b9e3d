"""File formats: state / covariance-matrix / chain-spec JSON, report
envelopes, and the sweep CSV layout.

States serialize as
    { "dims": [..], "partyA": [..], "kind": "pure"|"mixed",
      "amplitudes"|"matrix": [[re, im], ..] (row-major, flat),
      "truncation_deficit": x }
with a third kind "tmsvs" accepted on input:
    { "kind": "tmsvs", "r": x, "cutoff": n? }.

Reports are wrapped in a deterministic envelope {config, result, meta};
everything outside "meta" is byte-stable for a fixed config and seed, so
comparisons should drop "meta" (it carries timing and the timestamp).
"""

from __future__ import annotations

import json
import time
from typing import Any

import numpy as np

from . import __version__
from .gaussian import CovarianceMatrix
from .states import DensityMatrix, PureState, TmsvsSpec, tmsvs_truncated
from .tensor import SubsystemLayout

STATE_SCHEMA = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
                "partyA": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                "kind": {"const": "pure"},
                "amplitudes": {"type": "array",
                               "items": {"type": "array", "items": {"type": "number"},
                                         "minItems": 2, "maxItems": 2}},
                "truncation_deficit": {"type": "number", "minimum": 0},
            },
            "required": ["dims", "partyA", "kind", "amplitudes"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
                "partyA": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                "kind": {"const": "mixed"},
                "matrix": {"type": "array",
                           "items": {"type": "array", "items": {"type": "number"},
                                     "minItems": 2, "maxItems": 2}},
                "truncation_deficit": {"type": "number", "minimum": 0},
            },
            "required": ["dims", "partyA", "kind", "matrix"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "kind": {"const": "tmsvs"},
                "r": {"type": "number", "exclusiveMinimum": 0},
                "cutoff": {"type": "integer", "minimum": 1},
            },
            "required": ["kind", "r"],
            "additionalProperties": False,
        },
    ],
}

CM_SCHEMA = {
    "type": "object",
    "properties": {
        "modes": {"type": "integer", "minimum": 1},
        "gamma": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "displacement": {"type": "array", "items": {"type": "number"}},
    },
    "required": ["modes", "gamma"],
    "additionalProperties": False,
}

CHAIN_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["tmsvs", "qubit", "qudit"]},
        "links": {
            "oneOf": [
                {"type": "array", "items": {"type": "object"}, "minItems": 1},
                {
                    "type": "object",
                    "properties": {"identical": {"type": "object"},
                                   "count": {"type": "integer", "minimum": 1}},
                    "required": ["identical", "count"],
                    "additionalProperties": False,
                },
            ]
        },
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "measure": {"type": "string"},
    },
    "required": ["kind", "links"],
    "additionalProperties": False,
}

SCAN_SCHEMA = {
    "type": "object",
    "properties": {
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 3},
        "samples": {"type": "integer", "minimum": 1},
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
    },
    "required": ["dims", "samples", "alpha", "seed"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "version": {"type": "string"},
        "config": {"type": "object"},
        "result": {"type": ["object", "array"]},
        "meta": {
            "type": "object",
            "properties": {"elapsed_seconds": {"type": "number"},
                           "timestamp": {"type": "string"}},
        },
    },
    "required": ["command", "version", "config", "result"],
    "additionalProperties": False,
}

SWEEP_CSV_COLUMNS = ("l", "value", "xi", "alpha", "kind")


def _pairs(z: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(z, dtype=complex).reshape(-1)]


def _from_pairs(pairs, expected: int, what: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] != expected:
        raise ValueError(f"{what} must be a flat row-major list of {expected} [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_json(state: PureState | DensityMatrix) -> dict:
    base = {"dims": list(state.layout.dims), "partyA": list(state.layout.party_a),
            "truncation_deficit": state.truncation_deficit}
    if isinstance(state, PureState):
        return {**base, "kind": "pure", "amplitudes": _pairs(state.amplitudes)}
    return {**base, "kind": "mixed", "matrix": _pairs(state.matrix)}


def state_from_json(doc: dict) -> PureState | DensityMatrix:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("state document must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "tmsvs":
        spec = TmsvsSpec.from_r(float(doc["r"]), doc.get("cutoff"))
        return tmsvs_truncated(spec)
    if kind not in ("pure", "mixed"):
        raise ValueError(f"unknown state kind {kind!r}")
    layout = SubsystemLayout(doc["dims"], doc["partyA"])
    deficit = float(doc.get("truncation_deficit", 0.0))
    if kind == "pure":
        amps = _from_pairs(doc["amplitudes"], layout.dim, "amplitudes")
        return PureState(amps, layout, deficit)
    mat = _from_pairs(doc["matrix"], layout.dim ** 2, "matrix").reshape(layout.dim, layout.dim)
    return DensityMatrix(mat, layout, deficit)


def cm_to_json(cm: CovarianceMatrix) -> dict:
    return {"modes": cm.modes, "gamma": [[float(v) for v in row] for row in cm.gamma],
            "displacement": [float(v) for v in cm.displacement]}


def cm_from_json(doc: dict) -> CovarianceMatrix:
    cm = CovarianceMatrix(np.asarray(doc["gamma"], dtype=float), doc.get("displacement"))
    if cm.modes != int(doc["modes"]):
        raise ValueError(f"declared modes {doc['modes']} != matrix modes {cm.modes}")
    return cm


def make_report(command: str, config: dict, result, elapsed: float | None = None,
                with_meta: bool = True) -> dict:
    report: dict[str, Any] = {"command": command, "version": __version__,
                              "config": config, "result": result}
    if with_meta:
        report["meta"] = {
            "elapsed_seconds": 0.0 if elapsed is None else float(elapsed),
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        }
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def strip_meta(report: dict) -> dict:
    """The byte-stable part of a report, for comparisons across runs."""
    return {k: v for k, v in report.items() if k != "meta"}
