"""JSON Schema (draft 2020-12) for ``--json`` output, version 1."""

_cuts = {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}
_ints = {"type": "array", "items": {"type": "integer"}}
_nullable_ints = {"type": ["array", "null"], "items": {"type": "integer"}}

BOUND = {
    "type": "object",
    "required": ["kind", "value", "unbounded", "exact", "witness_cut", "optimal_cuts"],
    "properties": {
        "kind": {"type": "string"},
        "value": {"type": ["number", "null"]},
        "unbounded": {"type": "boolean"},
        "exact": {
            "type": ["object", "null"],
            "required": ["cut_size", "count", "log_base", "fraction"],
            "properties": {
                "cut_size": {"type": "integer", "minimum": 1},
                "count": {"type": "integer", "minimum": 2},
                "log_base": {"type": "integer", "minimum": 2},
                "fraction": {"type": ["array", "null"], "items": {"type": "integer"}},
            },
        },
        "witness_cut": {"type": ["array", "null"], "items": {"type": "string"}},
        "witness_count": {"type": ["integer", "null"]},
        "witness_context": _nullable_ints,
        "optimal_cuts": _cuts,
        "per_cut": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cut", "size", "count", "ratio", "separated"],
            },
        },
    },
}

_COMMANDS = {
    "bound": {"required": ["network"], "properties": BOUND["properties"]},
    "compare": {
        "required": ["bounds", "code"],
        "properties": {"bounds": {"type": "array", "items": BOUND}},
    },
    "classes": {
        "required": ["I", "J", "context", "class_count", "class_of", "classes"],
        "properties": {
            "I": _ints,
            "J": _ints,
            "context": _ints,
            "class_count": {"type": "integer", "minimum": 1},
            "class_of": _ints,
        },
    },
    "verify": {
        "required": ["ok", "checked", "total", "counterexample"],
        "properties": {"ok": {"type": "boolean"}, "checked": {"type": "integer"}},
    },
    "simulate": {
        "required": ["blocks", "output"],
        "properties": {"blocks": {"type": "object"}, "output": _nullable_ints},
    },
    "search": {
        "required": ["n", "k", "found", "method", "explored", "code"],
        "properties": {"found": {"type": "boolean"}, "code": {"type": ["string", "null"]}},
    },
    "tree": {
        "required": ["bound", "n", "k", "feasible", "verified"],
        "properties": {"bound": BOUND},
    },
    "split-sources": {"required": ["network", "valid"]},
    "instance": {"required": ["name", "files", "valid"]},
}


def _branch(command: str, body: dict) -> dict:
    return {
        "if": {"properties": {"command": {"const": command}}},
        "then": {
            "anyOf": [
                {"required": ["error"]},
                {"type": "object", **body},
            ]
        },
    }


SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "command", "exit_code"],
    "properties": {
        "schema": {"const": 1},
        "command": {"enum": list(_COMMANDS)},
        "exit_code": {"enum": [0, 1, 2, 3]},
        "error": {"type": "string"},
    },
    "allOf": [_branch(c, body) for c, body in _COMMANDS.items()],
}
