"""JSON schemas for every machine-readable output, checked with ``jsonschema``."""

from __future__ import annotations

import jsonschema

from .classifier import CLASSES

# exact values travel as "p/q" strings, float values as numbers
SCALAR = {"type": ["string", "number", "null"]}

DESCRIPTOR = {
    "type": "object",
    "required": ["class", "nu0_tilde", "c", "p", "lambda_samples", "window", "arithmetic_mode"],
    "properties": {
        "class": {"enum": list(CLASSES)},
        "nu0_tilde": SCALAR,
        "c": SCALAR,
        "p": {"type": ["integer", "null"], "minimum": 0},
        "lambda_samples": {
            "type": "object",
            "patternProperties": {"^-?[0-9]+$": SCALAR},
            "additionalProperties": False,
        },
        "window": {"type": "integer", "minimum": 1},
        "arithmetic_mode": {"enum": ["exact", "float"]},
        "offset": {"type": "integer"},
        "fock": {"type": "boolean"},
        "lambda_poly": {"type": ["string", "null"]},
        "lambda_poly_mode": {"enum": ["exact", "float", None]},
        "extra_zeros": {"type": "array", "items": {"type": "integer"}},
        "reason": {"type": "string"},
    },
}

VERIFY_REPORT = {
    "type": "object",
    "required": ["passed", "tol", "residuals", "interior", "dim", "class", "mode"],
    "properties": {
        "passed": {"type": "boolean"},
        "tol": {"type": "number", "minimum": 0},
        "dim": {"type": "integer", "minimum": 1},
        "class": {"enum": list(CLASSES)},
        "mode": {"enum": ["exact", "float"]},
        "interior": {
            "type": "array",
            "items": {"type": "integer"},
            "minItems": 2,
            "maxItems": 2,
        },
        "residuals": {
            "type": "object",
            "additionalProperties": {"type": ["number", "null"]},
        },
        "scaled_residuals": {
            "type": "object",
            "additionalProperties": {"type": ["number", "null"]},
        },
        "edge_residual": {"type": ["number", "null"]},
        "casimir": {"type": "object"},
    },
}

MATRIX_DUMP = {
    "type": "object",
    "required": ["class", "dim", "nu0_tilde", "c", "q", "n_start", "A", "Adag", "N", "verify"],
    "properties": {
        "class": {"enum": list(CLASSES)},
        "dim": {"type": "integer", "minimum": 1},
        "nu0_tilde": SCALAR,
        "c": SCALAR,
        "q": SCALAR,
        "n_start": {"type": "integer"},
        "truncated": {"type": "boolean"},
        "A": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "Adag": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "N": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "verify": VERIFY_REPORT,
    },
}

FAMILY_ROW = {
    "type": "object",
    "required": ["type", "nu0", "lambda", "degenerate"],
    "properties": {
        "type": {"enum": ["BFB", "BFA", "FD", "UB"]},
        "nu0": {"enum": ["R", "Z", "2Z", "2Z+1", "[0,1)", "{0}"]},
        "c": {"type": "string"},
        "c_range": {"type": "array", "items": {"type": "string"}},
        "p": {"type": "integer", "minimum": 0},
        "lambda": {"type": "string"},
        "degenerate": {"type": "boolean"},
    },
}

TABLE_REPORT = {
    "type": "object",
    "required": ["algebra", "q", "regime", "families"],
    "properties": {
        "algebra": {"type": "string"},
        "q": SCALAR,
        "regime": {"type": "string"},
        "empty": {"type": "boolean"},
        "families": {"type": "array", "items": FAMILY_ROW},
        "golden": {"type": "array", "items": FAMILY_ROW},
        "check": {
            "type": "object",
            "required": ["ok", "problems"],
            "properties": {
                "ok": {"type": "boolean"},
                "matched_rows": {"type": "integer"},
                "problems": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
}

SWEEP_REPORT = {
    "type": "object",
    "required": ["algebra", "points"],
    "properties": {
        "algebra": {"type": "string"},
        "points": {"type": "array", "items": TABLE_REPORT},
    },
}

CHAIN_REPORT = {
    "type": "object",
    "required": ["steps"],
    "properties": {
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "q", "F", "f"],
                "properties": {
                    "k": {"type": "integer", "minimum": 0},
                    "q": SCALAR,
                    "F": {"type": "string"},
                    "f": {"type": "string"},
                },
            },
        },
        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
    },
}

GOLDEN_FILE = {
    "type": "object",
    "required": ["format", "version", "records"],
    "properties": {
        "format": {"const": "oscrep-golden-tables"},
        "version": {"type": "integer"},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["algebra", "regime", "q_range", "type"],
                "properties": {
                    "algebra": {"type": "string"},
                    "regime": {"type": "string"},
                    "q_range": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "type": {"enum": ["BFB", "BFA", "FD", "UB", None]},
                    "degenerate": {"type": "boolean"},
                    "nu0": {"type": "string"},
                    "c": {"type": "string"},
                    "c_range": {"type": "array", "items": {"type": "string"}},
                    "p": {"type": "integer"},
                    "lambda": {"type": "string"},
                },
                "if": {"properties": {"type": {"type": "string"}}},
                "then": {
                    "required": ["nu0", "lambda"],
                    "oneOf": [{"required": ["c"]}, {"required": ["c_range"]}],
                },
            },
        },
    },
}


def _validator(schema):
    return lambda data: jsonschema.validate(data, schema)


validate_descriptor = _validator(DESCRIPTOR)
validate_verify_report = _validator(VERIFY_REPORT)
validate_matrix_dump = _validator(MATRIX_DUMP)
validate_table_report = _validator(TABLE_REPORT)
validate_sweep_report = _validator(SWEEP_REPORT)
validate_chain_report = _validator(CHAIN_REPORT)
validate_golden = _validator(GOLDEN_FILE)

__all__ = [
    "CHAIN_REPORT",
    "DESCRIPTOR",
    "GOLDEN_FILE",
    "MATRIX_DUMP",
    "SWEEP_REPORT",
    "TABLE_REPORT",
    "VERIFY_REPORT",
    "validate_chain_report",
    "validate_descriptor",
    "validate_golden",
    "validate_matrix_dump",
    "validate_sweep_report",
    "validate_table_report",
    "validate_verify_report",
]
