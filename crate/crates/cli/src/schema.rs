use serde_json::{json, Value};

/// JSON Schema (draft 2020-12) of the object printed by `eval --json`.
pub fn eval_schema() -> Value {
    // non-finite floats serialize as null
    let number = json!({ "type": ["number", "null"] });
    let class = json!({ "enum": ["3", "2.8", "2.1", "1"] });
    let point = json!({
        "type": "object",
        "required": ["g", "w"],
        "properties": {
            "g": { "type": "number", "minimum": 0, "maximum": 1 },
            "w": { "type": "number", "minimum": 0, "maximum": 1 }
        },
        "additionalProperties": false
    });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "qsep eval report",
        "type": "object",
        "required": ["point", "d", "psd_tol", "verdicts", "witnesses", "concurrence_23", "report"],
        "properties": {
            "point": point,
            "d": { "type": "number" },
            "psd_tol": { "type": "number", "exclusiveMinimum": 0 },
            "verdicts": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "status", "margin"],
                    "properties": {
                        "id": { "type": "string" },
                        "status": { "enum": ["holds", "violated", "marginal"] },
                        "margin": number,
                        "components": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["label", "margin"],
                                "properties": {
                                    "label": { "type": "string" },
                                    "margin": number
                                },
                                "additionalProperties": false
                            }
                        }
                    },
                    "additionalProperties": false
                }
            },
            "witnesses": {
                "type": "object",
                "required": ["w_ghz", "w_w1", "w_w2"],
                "properties": {
                    "w_ghz": { "type": "number" },
                    "w_w1": { "type": "number" },
                    "w_w2": { "type": "number" }
                },
                "additionalProperties": false
            },
            "concurrence_23": { "type": "number", "minimum": 0, "maximum": 1 },
            "report": {
                "type": "object",
                "required": [
                    "point", "possible_classes", "slocc", "exclusions", "exact",
                    "pptes_certified", "marginal"
                ],
                "properties": {
                    "point": point,
                    "possible_classes": {
                        "type": "array",
                        "items": class,
                        "minItems": 1,
                        "uniqueItems": true
                    },
                    "slocc": { "enum": ["ghz_type", "not_ghz_type", "undetermined"] },
                    "exclusions": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["class", "criterion"],
                            "properties": {
                                "class": class,
                                "criterion": { "type": "string" }
                            },
                            "additionalProperties": false
                        }
                    },
                    "exact": { "type": "boolean" },
                    "pptes_certified": { "type": "boolean" },
                    "marginal": { "type": "array", "items": { "type": "string" } }
                },
                "additionalProperties": false
            }
        },
        "additionalProperties": false
    })
}
