#include "skew/cli.hpp"

namespace skew {

const char* json_schema_text() {
  return R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "skew exchange formats",
  "$defs": {
    "scalar": {
      "description": "exact backend: \"num/den\" string in lowest terms (integers also accepted on input); float backend: JSON number",
      "oneOf": [{"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"}, {"type": "number"}]
    },
    "quaternion": {"description": "a + b i + c j + d k", "type": "array", "items": {"$ref": "#/$defs/scalar"}, "minItems": 4, "maxItems": 4},
    "qmat": {
      "type": "object", "required": ["n", "m", "e"],
      "properties": {
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "e": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/quaternion"}}}
      }
    },
    "cpoly": {
      "type": "object", "required": ["nvars", "terms"],
      "properties": {
        "nvars": {"type": "integer", "minimum": 0},
        "terms": {"type": "array", "items": {"type": "object", "required": ["e", "c"],
          "properties": {"e": {"type": "array", "items": {"type": "integer", "minimum": 0}}, "c": {"$ref": "#/$defs/scalar"}}}}
      }
    },
    "ncpoly": {
      "description": "variables are 1-based: {\"x\": 1} is X_1",
      "type": "object", "required": ["m", "terms"],
      "properties": {
        "m": {"type": "integer", "minimum": 0},
        "terms": {"type": "array", "items": {"type": "object", "required": ["c", "w"],
          "properties": {
            "c": {"$ref": "#/$defs/scalar"},
            "w": {"type": "array", "items": {"oneOf": [
              {"type": "object", "required": ["x"], "properties": {"x": {"type": "integer", "minimum": 1}}, "additionalProperties": false},
              {"type": "object", "required": ["u"], "properties": {"u": {"enum": ["i", "j", "k"]}}, "additionalProperties": false}
            ]}}
          }}}
      }
    },
    "unipoly": {"description": "left coefficients, index = power", "type": "object", "required": ["coeffs"],
      "properties": {"coeffs": {"type": "array", "items": {"$ref": "#/$defs/quaternion"}}}},
    "poly": {"oneOf": [{"$ref": "#/$defs/ncpoly"}, {"$ref": "#/$defs/unipoly"}]},
    "realmap": {"type": "object", "required": ["m", "components"],
      "properties": {"m": {"type": "integer"}, "components": {"type": "array", "items": {"$ref": "#/$defs/cpoly"}},
        "jacobian": {"type": "array", "items": {"type": "array", "items": {"$ref": "#/$defs/cpoly"}}}}},
    "rootset": {"type": "object", "required": ["isolated", "spherical", "central", "approx"],
      "properties": {
        "isolated": {"type": "array", "items": {"$ref": "#/$defs/quaternion"}},
        "spherical": {"type": "array", "items": {"type": "object", "required": ["s", "n"],
          "properties": {"s": {"$ref": "#/$defs/scalar"}, "n": {"$ref": "#/$defs/scalar"}}}},
        "central": {"type": "array", "items": {"$ref": "#/$defs/scalar"}},
        "approx": {"type": "boolean"}
      }},
    "jordan": {"type": "object", "required": ["P", "blocks"],
      "properties": {"P": {"$ref": "#/$defs/qmat"},
        "blocks": {"type": "array", "items": {"type": "object", "required": ["size", "alpha"],
          "properties": {"size": {"type": "integer", "minimum": 1},
            "alpha": {"type": "array", "items": {"$ref": "#/$defs/scalar"}, "minItems": 2, "maxItems": 2}}}}}},
    "certificate": {
      "description": "IDEM_COMM: idem[0]; SUM/DIFF/PROD_TWO_IDEM_COMM: idem[0..1]; MULT_COMM_PRODUCT: comm[0..1]; SL_DIFF_OF_COMM_PRODUCTS: mats {B, C}, comm[0..3]; DIAG_PRODUCT: mats {D1, D2, W1, W2}; SL_DIFF: mats {B, C}. Witness tuples w1, w2 are checked against p when present.",
      "type": "object", "required": ["kind", "target"],
      "properties": {
        "kind": {"enum": ["IDEM_COMM", "SUM_TWO_IDEM_COMM", "DIFF_TWO_IDEM_COMM", "PROD_TWO_IDEM_COMM", "MULT_COMM_PRODUCT", "SL_DIFF_OF_COMM_PRODUCTS", "DIAG_PRODUCT", "SL_DIFF"]},
        "backend": {"enum": ["exact", "float"]},
        "target": {"$ref": "#/$defs/qmat"},
        "idem": {"type": "array", "items": {"type": "object", "required": ["E", "F"],
          "properties": {"E": {"$ref": "#/$defs/qmat"}, "F": {"$ref": "#/$defs/qmat"}}}},
        "comm": {"type": "array", "items": {"type": "object", "required": ["G1", "G2"],
          "properties": {"G1": {"$ref": "#/$defs/qmat"}, "G2": {"$ref": "#/$defs/qmat"},
            "w1": {"type": "array", "items": {"$ref": "#/$defs/qmat"}}, "w2": {"type": "array", "items": {"$ref": "#/$defs/qmat"}}}}},
        "mats": {"type": "array", "items": {"$ref": "#/$defs/qmat"}},
        "p": {"$ref": "#/$defs/poly"}
      }
    },
    "suite_report": {"type": "object", "required": ["suite", "seed", "trials", "failures", "verdict"],
      "properties": {
        "suite": {"type": "string"}, "seed": {"type": "integer"}, "trials": {"type": "integer"},
        "failures": {"type": "array", "items": {"type": "object", "required": ["inputs", "value"],
          "properties": {"inputs": {}, "value": {}, "claim": {"type": "string"}}}},
        "verdict": {"enum": ["pass", "counterexamples", "informational"]},
        "notes": {"type": "object"}
      }},
    "error": {"type": "object", "required": ["error"], "properties": {"error": {"type": "string"}, "message": {"type": "string"}}}
  },
  "commands": {
    "realify": {"input": {"oneOf": [{"$ref": "#/$defs/ncpoly"}, {"type": "array", "items": {"$ref": "#/$defs/ncpoly"}}]},
      "output": "components of one NCPoly as {\"nvars\", \"components\"}, or a realmap for an array"},
    "roots": {"input": {"$ref": "#/$defs/unipoly"}, "output": {"$ref": "#/$defs/rootset"}},
    "preimage": {"input": {"f": {"$ref": "#/$defs/unipoly"}, "c": {"$ref": "#/$defs/quaternion"}}, "output": {"b": "quaternion", "residual": "number"}},
    "image-oracle": {"input": {"p": {"$ref": "#/$defs/ncpoly"}, "target": {"$ref": "#/$defs/quaternion"}}, "output": {"point": "quaternion array", "value": "quaternion", "residual": "number"}},
    "ord": {"input": {"$ref": "#/$defs/ncpoly"}, "output": {"ord": "integer"}},
    "factor diag2": {"input": {"$ref": "#/$defs/qmat"}, "output": {"$ref": "#/$defs/certificate"}},
    "factor p-product": {"input": {"A": "exact qmat", "p": {"$ref": "#/$defs/poly"}}, "output": {"certificate": "certificate", "p": "poly", "first": "qmat array", "second": "qmat array", "residual": "number"}},
    "decompose sl-diff": {"input": {"$ref": "#/$defs/qmat"}, "output": {"$ref": "#/$defs/certificate"}},
    "decompose idem-comm": {"input": {"$ref": "#/$defs/qmat"}, "output": {"$ref": "#/$defs/certificate"}},
    "decompose the": {"input": {"A": "qmat", "p": "optional poly"}, "output": {"$ref": "#/$defs/certificate"}},
    "verify cert": {"input": {"$ref": "#/$defs/certificate"}, "output": {"verdict": "pass | fail", "violation": "string"}},
    "suite": {"input": "none (--poly for des and panja-prasad)", "output": {"$ref": "#/$defs/suite_report"}}
  }
}
)schema";
}

}  // namespace skew
