"""JSON Schemas for every record the CLI emits, keyed by the record's ``kind``."""
from __future__ import annotations

from .report import SCHEMA_VERSION

_HEADER = {"schema": {"const": SCHEMA_VERSION}}
_BOOL_MAP = {"type": "object", "additionalProperties": {"type": "boolean"}}
_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_STATUS = {"enum": ["holds", "vacuous", "VIOLATION"]}


def _record(kind: str, required: list, props: dict) -> dict:
    return {"type": "object", "required": ["schema", "kind"] + required,
            "properties": {**_HEADER, "kind": {"const": kind}, **props}}


_FACTORIZATION = {"type": "object", "required": ["target", "scalars", "tail", "kind"],
                  "properties": {"scalars": {"type": "array"},
                                 "kind": {"enum": ["all", "atomic", "compact", "zq"]}}}

SCHEMAS = {
    "parse": _record("parse", ["input", "rendered", "type", "ast"],
                     {"input": {"type": "string"}, "rendered": {"type": "string"},
                      "type": {"enum": ["ring", "module", "set"]}, "ast": {"type": "object"}}),
    "error": _record("error", ["error", "message", "exit_code"],
                     {"error": {"type": "string"}, "message": {"type": "string"},
                      "span": {"type": "array", "items": {"type": "integer"},
                               "minItems": 2, "maxItems": 2},
                      "expected": {"type": "array", "items": {"type": "string"}},
                      "exit_code": {"enum": [1, 2, 3]}}),
    "describe": _record("describe", ["expr", "type"],
                        {"expr": {"type": "string"}, "type": {"enum": ["ring", "module", "set"]},
                         "size": {"type": ["integer", "null"]}, "construction": {"type": "object"},
                         "summary": {"type": "string"}}),
    "classify": _record("classify", ["ring", "module", "S", "flags", "witnesses", "split"],
                        {"flags": _BOOL_MAP, "witnesses": {"type": "object"},
                         "split": {"type": "object", "required": ["flags"],
                                   "properties": {"flags": _BOOL_MAP}},
                         "S": _INT_LIST}),
    "factor": _record("factor", ["element", "mode", "status", "factorizations", "iso_classes"],
                      {"element": {"type": ["integer", "array"]},
                       "mode": {"enum": ["all", "atomic", "compact"]},
                       "status": {"enum": ["complete", "unbounded", "truncated"]},
                       "factorizations": {"type": "array", "items": _FACTORIZATION},
                       "iso_classes": {"type": ["integer", "null"]}}),
    "assoc": _record("assoc", ["m", "n", "relations"],
                     {"m": {"type": "integer"}, "n": {"type": "integer"}, "relations": _BOOL_MAP}),
    "localize": _record("localize", ["S", "ring", "injective"],
                        {"S": _INT_LIST, "ring": {"type": "object"}, "injective": {"type": "boolean"},
                         "module": {"type": "object"}, "T": _INT_LIST,
                         "T_is_satset": {"type": "boolean"}}),
    "split_check": _record("split_check", ["checks"],
                           {"verdict": {"type": "object"},
                            "checks": {"type": "array", "items": {"$ref": "#/$defs/check"}}}),
    "instance": _record("instance", ["id", "desc"],
                        {"id": {"type": "string"}, "desc": {"type": "object"}}),
    "check": _record("check", ["theorem", "part", "instance", "hypothesis_flags",
                               "conclusion_flags", "witnesses", "status"],
                     {"theorem": {"type": "string"}, "part": {"type": "string"},
                      "instance": {"type": "string"}, "hypothesis_flags": _BOOL_MAP,
                      "conclusion_flags": _BOOL_MAP, "witnesses": {"type": "array"},
                      "status": _STATUS}),
    "summary": _record("summary", ["instances", "theorems", "violations", "warnings"],
                       {"instances": {"type": "integer"},
                        "theorems": {"type": "object", "additionalProperties": {
                            "type": "object", "required": ["holds", "vacuous", "VIOLATION"]}},
                        "violations": {"type": "integer"},
                        "warnings": {"type": "array", "items": {"type": "string"}}}),
    "witness": _record("witness", ["id", "desc", "atoms"],
                       {"id": {"type": "string"}, "desc": {"type": "object"}, "atoms": _BOOL_MAP}),
    "hunt_summary": _record("hunt_summary", ["predicate", "bounds", "searched", "found",
                                             "exhaustive", "statement"],
                            {"predicate": {"type": "string"}, "searched": {"type": "integer"},
                             "found": {"type": "integer"}, "exhaustive": {"type": "boolean"},
                             "statement": {"type": "string"}}),
}


def schema_for(kind: str) -> dict:
    """Standalone schema for one record kind (references resolved locally)."""
    s = dict(SCHEMAS[kind])
    s["$schema"] = "https://json-schema.org/draft/2020-12/schema"
    s["$defs"] = {"check": SCHEMAS["check"]}
    return s
