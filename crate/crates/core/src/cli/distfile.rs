//! JSON distribution files:
//!
//! ```json
//! { "n": 3, "weights": { "": "4/22", "1": "3/22", "1,2": "3/22", "mask:6": "3/22" } }
//! ```
//!
//! Keys are strictly increasing 1-based index lists (`""` is the empty set),
//! or `mask:<bits>` with a decimal or `0b` bitmask. Values are exact
//! rationals (`"num/den"`, integers or decimals); unlisted subsets are zero.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{members, Subset, SubsetPoly, MAX_VARS};
use crate::scalar::{format_exact, parse_exact, ExactScalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub n: usize,
    pub weights: BTreeMap<String, Value>,
}

fn parse_key(key: &str, n: usize) -> Result<Subset> {
    let bad = |why: &str| Error::Parse(format!("subset key {key:?}: {why}"));
    if let Some(bits) = key.strip_prefix("mask:") {
        let bits = bits.trim();
        let mask = match bits.strip_prefix("0b") {
            Some(b) => u32::from_str_radix(b, 2),
            None => bits.parse(),
        }
        .map_err(|_| bad("bad bitmask"))?;
        if n < 32 && mask >> n != 0 {
            return Err(bad("bitmask outside the ground set"));
        }
        return Ok(mask);
    }
    if key.trim().is_empty() {
        return Ok(0);
    }
    let mut mask = 0;
    let mut last = 0;
    for part in key.split(',') {
        let i: usize = part.trim().parse().map_err(|_| bad("indices must be integers"))?;
        if i == 0 || i > n {
            return Err(bad("index outside 1..=n"));
        }
        if i <= last {
            return Err(bad("indices must be strictly increasing"));
        }
        last = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn parse_value(v: &Value) -> Result<ExactScalar> {
    match v {
        Value::String(s) => parse_exact(s),
        Value::Number(num) if num.is_i64() || num.is_u64() => parse_exact(&num.to_string()),
        other => Err(Error::Parse(format!(
            "weight {other} must be a rational string such as \"3/22\" or an integer"
        ))),
    }
}

impl DistributionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("string map serialises")
    }

    /// Validated polynomial; with `normalize`, weights are divided by their
    /// sum.
    pub fn to_poly(&self, normalize: bool) -> Result<SubsetPoly> {
        if self.n == 0 || self.n > MAX_VARS {
            return Err(Error::UnsupportedDimension(self.n));
        }
        let mut seen = BTreeMap::new();
        for (key, value) in &self.weights {
            let s = parse_key(key, self.n)?;
            let c = parse_value(value)?;
            if c.is_negative() {
                return Err(Error::NegativeCoefficient {
                    subset: key.clone(),
                    value: format_exact(&c),
                });
            }
            if let Some(prev) = seen.insert(s, (key.clone(), c)) {
                return Err(Error::Parse(format!(
                    "keys {:?} and {key:?} name the same subset",
                    prev.0
                )));
            }
        }
        let p = SubsetPoly::from_terms(self.n, seen.into_iter().map(|(s, (_, c))| (s, c)))?;
        if normalize {
            p.normalize()
        } else {
            Ok(p)
        }
    }

    /// Nonzero coefficients with 1-based index-list keys.
    pub fn from_poly(p: &SubsetPoly) -> Self {
        let weights = p
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| {
                let key: Vec<String> = members(s).map(|i| (i + 1).to_string()).collect();
                (key.join(","), Value::String(format_exact(c)))
            })
            .collect();
        Self { n: p.n(), weights }
    }
}
