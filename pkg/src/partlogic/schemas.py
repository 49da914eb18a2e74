"""JSON schemas for every document the command line reads or writes.

Inputs are validated with ``validate`` before any parsing so malformed
documents fail with a message that points at the offending field.
"""

from __future__ import annotations

import jsonschema

from .errors import InputError

_LABEL = {"type": "string", "minLength": 1}
_RATIONAL = {
    "oneOf": [
        {"type": "integer", "minimum": 0},
        {"type": "string", "pattern": r"^\s*\d+(\s*/\s*\d+|\.\d+)?\s*$"},
    ]
}
_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}

PARTITION = {
    "type": "object",
    "required": ["universe", "blocks"],
    "properties": {
        "universe": {"type": "array", "items": _LABEL},
        "blocks": {"type": "array", "items": {"type": "array", "items": _LABEL}},
    },
}

DISTRIBUTION = {
    "oneOf": [
        {"type": "array", "items": _RATIONAL, "minItems": 1},
        {
            "type": "object",
            "required": ["universe", "p"],
            "properties": {
                "universe": {"type": "array", "items": _LABEL},
                "p": {
                    "oneOf": [
                        {"type": "array", "items": _RATIONAL},
                        {"type": "object", "additionalProperties": _RATIONAL},
                    ]
                },
            },
        },
    ]
}

DENSITY = {
    "type": "object",
    "required": ["basis", "re"],
    "properties": {"basis": {"type": "array", "items": _LABEL}, "re": _MATRIX, "im": _MATRIX},
}

EIGENFUNCTION = {
    "type": "object",
    "required": ["f"],
    "properties": {"f": {"type": "object", "additionalProperties": {"type": "number"}}},
}

EVOLUTION = {"type": "object", "additionalProperties": {"type": "array", "items": _LABEL}}

SCENARIO = {
    "type": "object",
    "properties": {"detection": {"type": "boolean"}, "evolution": EVOLUTION},
    "additionalProperties": False,
}

SUBSET = {"type": "array", "items": _LABEL}

STATS_REQUEST = {
    "type": "object",
    "required": ["k", "n"],
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "balls": {"type": "string"},
        "boxes": {"type": "string"},
        "map": {"type": "string"},
        "theta": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

RATIONAL_RESULT = {
    "type": "object",
    "required": ["value", "decimal"],
    "properties": {"value": {"type": "string"}, "decimal": {"type": "string"}},
}

COUNT_RESULT = {
    "type": "object",
    "required": ["count", "probability_each"],
    "properties": {
        "count": {"type": "string", "pattern": r"^\d+$"},
        "probability_each": {"type": ["string", "null"]},
    },
}

OUTCOMES_RESULT = {
    "type": "object",
    "required": ["outcomes"],
    "properties": {
        "outcomes": {"type": "object", "additionalProperties": {"type": "string"}},
        "trace": {"type": "array"},
    },
}

LATTICE_RESULT = {
    "type": "object",
    "required": ["universe", "nodes", "edges"],
    "properties": {
        "universe": {"type": "array", "items": _LABEL},
        "nodes": {"type": "array"},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

BOX_RESULT = {
    "type": "object",
    "required": ["universe", "cells", "off_block_total"],
    "properties": {
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["row", "col", "value", "on_block"],
                "properties": {
                    "row": {"type": "integer"},
                    "col": {"type": "integer"},
                    "value": {"type": "string"},
                    "on_block": {"type": "boolean"},
                },
            },
        }
    },
}

ALL = {
    "partition": PARTITION,
    "distribution": DISTRIBUTION,
    "density": DENSITY,
    "eigenfunction": EIGENFUNCTION,
    "scenario": SCENARIO,
    "subset": SUBSET,
    "evolution": EVOLUTION,
    "stats_request": STATS_REQUEST,
    "rational_result": RATIONAL_RESULT,
    "count_result": COUNT_RESULT,
    "outcomes_result": OUTCOMES_RESULT,
    "lattice_result": LATTICE_RESULT,
    "box_result": BOX_RESULT,
}


def validate(doc, name: str) -> None:
    """Raise ``InputError`` if ``doc`` does not match schema ``name``."""
    try:
        jsonschema.validate(doc, ALL[name])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{name} JSON invalid at {where}: {exc.message}") from None
