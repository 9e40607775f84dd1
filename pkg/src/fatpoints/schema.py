"""JSON Schemas for ``fatpoints --json`` output.

Every document is an envelope ``{"schema", "command", "result"}``; bump
``SCHEMA_VERSION`` whenever a result shape changes incompatibly.
"""

SCHEMA_VERSION = "fatpoints/1"

_int_list = {"type": "array", "items": {"type": "integer"}}
_nullable_int = {"type": ["integer", "null"]}

_fact = {
    "type": "object",
    "required": ["name", "form", "lhs", "op", "rhs", "holds"],
    "properties": {
        "name": {"type": "string"},
        "form": {"type": "string"},
        "lhs": {"type": "integer"},
        "op": {"enum": ["<=", ">=", "<", ">", "=="]},
        "rhs": {"type": "integer"},
        "holds": {"type": "boolean"},
    },
}

_step = {
    "type": "object",
    "required": ["m", "reducers", "output"],
    "properties": {"m": {"type": "integer", "minimum": 1}, "reducers": _int_list, "output": _int_list},
}

_certificate = {
    "type": "object",
    "required": ["initial", "steps", "final", "final_size"],
    "properties": {
        "initial": _int_list,
        "steps": {"type": "array", "items": _step},
        "final": _int_list,
        "final_size": {"type": "integer", "minimum": 0},
    },
}

_failure = {
    "type": "object",
    "required": ["reason", "m", "input", "stop_index", "witness", "partial_reducers"],
    "properties": {
        "reason": {"enum": ["too-short", "flat-tail"]},
        "m": {"type": "integer"},
        "input": _int_list,
        "stop_index": _nullable_int,
        "blocked_by": _nullable_int,
        "witness": {"type": ["array", "null"], "items": {"type": "integer"}},
        "partial_reducers": {"type": "array", "items": _int_list},
    },
}

_chain_failure = {
    "type": "object",
    "required": ["step_index", "failure", "steps"],
    "properties": {"step_index": {"type": "integer"}, "failure": _failure, "steps": {"type": "array", "items": _step}},
}

_status = {"enum": ["proven", "unknown", "refuted-by-vdim"]}

SPECIALITY = {
    "type": "object",
    "required": ["d", "mults", "vdim", "nonspecial", "effective", "h1_regular", "route", "certificate"],
    "properties": {
        "d": {"type": "integer"},
        "mults": _int_list,
        "order": _int_list,
        "vdim": {"type": "integer"},
        "nonspecial": _status,
        "effective": _status,
        "h1_regular": _status,
        "route": {"enum": ["reduction-chain", "criterion"]},
        "certificate": {"oneOf": [_certificate, {"type": "null"}]},
        "failure": {"oneOf": [_chain_failure, {"type": "null"}]},
    },
}

REDUCE = {
    "type": "object",
    "required": ["ok"],
    "properties": {
        "ok": {"type": "boolean"},
        "certificate": _certificate,
        "failure": _chain_failure,
    },
}

CONTAINMENT = {
    "type": "object",
    "required": ["mults", "points", "proven", "route", "witness_d", "branch", "facts"],
    "properties": {
        "mults": {"type": "string"},
        "points": {"type": "integer"},
        "proven": {"type": "boolean"},
        "route": {
            "enum": ["all-ones", "almost-simple", "almost-homogeneous", "uniformly-fat", "direct-criterion", "unknown"]
        },
        "witness_d": _nullable_int,
        "branch": {"type": ["string", "null"]},
        "branches": {"type": "array", "items": {"enum": ["nagata", "cremona", "big-point"]}},
        "facts": {"type": "array", "items": _fact},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}

ORACLE_DIM = {
    "type": "object",
    "required": ["d", "mults", "prime", "seed", "rows", "cols", "ranks", "dim_observed", "edim", "certificate"],
    "properties": {
        "certificate": {"enum": ["nonspecial", "empty", "none"]},
        "ranks": _int_list,
        "seed": {"type": "integer"},
    },
}

ORACLE_ALPHA = {
    "type": "object",
    "required": ["mults", "scale", "alpha_lb", "alpha_observed", "exact"],
}

ORACLE_CONTAINMENT = {
    "type": "object",
    "required": ["mults", "r", "t_max", "prime", "seed", "holds", "degrees"],
    "properties": {
        "degrees": {
            "type": "array",
            "items": {"type": "object", "required": ["t", "dim_symbolic", "dim_target", "contained"]},
        }
    },
}

GRID = {
    "type": "object",
    "required": ["name", "cells", "failures", "pass"],
    "properties": {"cells": {"type": "integer"}, "pass": {"type": "boolean"}},
}

RESULTS = {
    "reduce": REDUCE,
    "prove": SPECIALITY,
    "criterion": SPECIALITY,
    "containment": CONTAINMENT,
    "oracle dim": ORACLE_DIM,
    "oracle alpha": ORACLE_ALPHA,
    "oracle containment": ORACLE_CONTAINMENT,
    "scan": {"type": "object", "required": ["family", "count", "sequences"]},
    "verify-lemma": GRID,
    "selftest": {"type": "object", "required": ["pass", "grids"]},
    "crosscheck": {"type": "object", "required": ["limits", "cases", "proven", "violations"]},
}


def envelope_schema(command: str) -> dict:
    return {
        "type": "object",
        "required": ["schema", "command", "result"],
        "properties": {
            "schema": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "result": RESULTS[command],
        },
    }
