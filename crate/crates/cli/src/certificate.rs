//! Certificates: the operation, what it was run on, the result and every
//! invariant re-checked against that result.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// One re-checked invariant.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// What a command hands back before it is wrapped into a certificate.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub checks: Vec<Check>,
    /// A verified mathematical negative ("not thin", "not Sidon", ...).
    pub negative: bool,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Outcome {
            result,
            checks: Vec::new(),
            negative: false,
        }
    }

    pub fn check(mut self, name: impl Into<String>, passed: bool) -> Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: None,
        });
        self
    }

    pub fn check_detail(mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: Some(detail.into()),
        });
        self
    }

    pub fn negative(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }

    pub fn status(&self) -> &'static str {
        if self.checks.iter().any(|c| !c.passed) {
            "check-failed"
        } else if self.negative {
            "negative"
        } else {
            "ok"
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.status() == "ok" {
            0
        } else {
            1
        }
    }
}

pub fn digest(input: &Value) -> String {
    // serde_json keeps object keys sorted, so this serialization is canonical
    let bytes = serde_json::to_vec(input).expect("JSON values serialize");
    format!("sha256:{:x}", Sha256::digest(bytes))
}

pub struct Provenance<'a> {
    pub operation: &'a str,
    pub invocation: &'a [String],
    pub input: &'a Value,
    pub seed: Option<u64>,
    pub thin_floor: u64,
}

pub fn conventions(thin_floor: u64) -> Value {
    json!({
        "rationals": "integers or \"p/q\" strings in lowest terms",
        "points": "0-based indices in input order; colorings and families also accept labels",
        "colors": "0 and 1",
        "tie_breaking": {
            "max_monochrome": "largest, then color 0, then lexicographically least points",
            "equidistance": "largest, then smaller distance, then lexicographically least points",
            "canonical_sequence": "longest, then increasing, decreasing, constant-tail, then lexicographically least",
        },
        "thinness": {
            "policy": "consecutive gaps nondecreasing and the final gap above the floor; sets of at most two elements are thin",
            "floor": thin_floor,
        },
        "boolean_group": "bit strings list coordinate 0 first; d(x, y) is one plus the top coordinate where x and y differ",
        "scale_zero": "distance 0 is never part of a scale",
    })
}

pub fn build(p: &Provenance<'_>, outcome: &Outcome) -> Value {
    let verification: Vec<Value> = outcome
        .checks
        .iter()
        .map(|c| {
            let mut v = json!({ "check": c.name, "passed": c.passed });
            if let Some(d) = &c.detail {
                v["detail"] = json!(d);
            }
            v
        })
        .collect();
    json!({
        "operation": p.operation,
        "invocation": p.invocation,
        "input": p.input,
        "input_digest": digest(p.input),
        "seed": p.seed,
        "status": outcome.status(),
        "result": outcome.result,
        "verification": verification,
        "version": env!("CARGO_PKG_VERSION"),
        "conventions": conventions(p.thin_floor),
    })
}

/// Fields a recheck must reproduce exactly.
pub const RECHECKED: [&str; 6] = ["operation", "input_digest", "seed", "status", "result", "verification"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_key_order() {
        let a: Value = serde_json::from_str(r#"{"a": 1, "b": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"b": [1, 2], "a": 1}"#).unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_ne!(digest(&a), digest(&json!(null)));
    }

    #[test]
    fn status_order() {
        let o = Outcome::new(json!(1)).check("x", true);
        assert_eq!((o.status(), o.exit_code()), ("ok", 0));
        let o = o.negative(true);
        assert_eq!((o.status(), o.exit_code()), ("negative", 1));
        let o = o.check("y", false);
        assert_eq!(o.status(), "check-failed");
    }
}
