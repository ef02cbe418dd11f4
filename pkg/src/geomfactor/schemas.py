"""JSON Schemas for every document the command line prints."""

RATIONAL = {"type": "string", "pattern": r"^(0|[1-9][0-9]*)/[1-9][0-9]*$"}
EXTENDED = {"anyOf": [RATIONAL, {"const": "inf"}]}
COUNT = {"anyOf": [{"type": "integer", "minimum": 1}, {"const": "inf"}]}
INT_OR_INF = {"anyOf": [{"type": "integer", "minimum": 0}, {"const": "inf"}]}

FACTORIZATION = {
    "type": "object",
    "patternProperties": {r"^(0|[1-9][0-9]*)$": {"type": "string", "pattern": r"^[1-9][0-9]*$"}},
    "additionalProperties": False,
}

LENGTH_SET = {
    "type": "object",
    "properties": {
        "start": {"type": "integer", "minimum": 0},
        "difference": {"type": "integer", "minimum": 0},
        "count": COUNT,
    },
    "required": ["start", "difference", "count"],
    "additionalProperties": False,
}

BUDGET = {
    "type": "object",
    "properties": {
        "max_exponent": {"type": "integer", "minimum": 0},
        "max_length": {"type": "integer", "minimum": 1},
        "max_bundle": {"type": "integer", "minimum": 1},
    },
    "required": ["max_exponent", "max_length", "max_bundle"],
    "additionalProperties": False,
}

CLASSIFY = {
    "type": "object",
    "properties": {
        "r": RATIONAL,
        "class": {"enum": ["factorial", "atomic", "antimatter"]},
        "atomic": {"type": "boolean"},
        "atoms": {"type": "string"},
        "bf": {"type": "boolean"},
    },
    "required": ["r", "class", "atomic", "atoms", "bf"],
    "additionalProperties": False,
}

FACTOR = {
    "type": "object",
    "properties": {
        "r": RATIONAL,
        "x": RATIONAL,
        "form": {"enum": ["min", "max", "all"]},
        "factorization": FACTORIZATION,
        "length": {"type": "integer", "minimum": 0},
        "factorizations": {"type": "array", "items": FACTORIZATION},
        "lengths": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "length_set": LENGTH_SET,
        "truncated": {"type": "boolean"},
        "budget": BUDGET,
    },
    "required": ["r", "x", "form"],
    "additionalProperties": False,
}

INVARIANTS = {
    "type": "object",
    "properties": {
        "r": RATIONAL,
        "delta": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "catenary": {"type": "integer", "minimum": 0},
        "elasticity": EXTENDED,
        "accepted": {"type": "boolean"},
        "omega_one": INT_OR_INF,
        "locally_tame": {"type": "boolean"},
        "globally_tame": {"type": "boolean"},
        "bf": {"type": "boolean"},
    },
    "required": [
        "r", "delta", "catenary", "elasticity", "accepted",
        "omega_one", "locally_tame", "globally_tame", "bf",
    ],
    "additionalProperties": False,
}

VERIFY = {
    "type": "object",
    "properties": {
        "passed": {"type": "boolean"},
        "seed": {"type": "integer"},
        "budget": BUDGET,
        "fault": {"type": ["string", "null"]},
        "suites": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "suite": {"enum": ["lengths", "catenary", "unions", "omega"]},
                    "passed": {"type": "boolean"},
                    "checks": {"type": "integer", "minimum": 0},
                    "violations": {"type": "array", "items": {"type": "object"}},
                    "details": {"type": "object"},
                },
                "required": ["suite", "passed", "checks", "violations", "details"],
            },
        },
    },
    "required": ["passed", "seed", "budget", "fault", "suites"],
    "additionalProperties": False,
}

EXPLORE = {
    "type": "object",
    "properties": {
        "r": RATIONAL,
        "q": RATIONAL,
        "found": {"type": "boolean"},
        "witness": {"anyOf": [RATIONAL, {"type": "null"}]},
        "base": {"anyOf": [RATIONAL, {"type": "null"}]},
        "padding": {"type": ["integer", "null"]},
        "candidates_searched": {"type": "integer", "minimum": 0},
        "status": {"enum": ["witness found", "none found within budget"]},
        "experimental": {"const": True},
        "budget": BUDGET,
    },
    "required": ["r", "q", "found", "witness", "status", "experimental", "budget"],
    "additionalProperties": False,
}

ERROR = {
    "type": "object",
    "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
    "required": ["error", "message"],
}

SCHEMAS = {
    "classify": CLASSIFY,
    "factor": FACTOR,
    "invariants": INVARIANTS,
    "verify": VERIFY,
    "explore": EXPLORE,
    "error": ERROR,
}
