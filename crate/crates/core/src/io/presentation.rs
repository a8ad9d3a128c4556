//! JSON description of a Lie algebra by structure constants.
//!
//! ```json
//! {
//!   "basis": ["e", "h", "f"],
//!   "weight": "1",
//!   "brackets": [
//!     { "left": "e", "right": "f", "result": { "h": "1" } }
//!   ]
//! }
//! ```
//!
//! The basis is listed greatest first; each bracket must have `left`
//! greater than `right`. Coefficients are exact rationals written `"p/q"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::envelope::{EnvelopeError, LiePresentation, Weight};
use crate::lie::{LiePoly, Scalar};
use crate::words::{Alphabet, Letter, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub basis: Vec<String>,
    #[serde(default = "zero_weight")]
    pub weight: String,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, String>,
}

fn zero_weight() -> String {
    "0".into()
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("malformed presentation: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Alphabet(#[from] WordError),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}

/// Parses `p`, `-p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Scalar, PresentationError> {
    let bad = || PresentationError::BadRational(s.to_string());
    let int = |t: &str| -> Result<BigInt, PresentationError> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(int(s)?)),
        Some((n, d)) => {
            if d.starts_with('-') {
                return Err(bad());
            }
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(int(n)?, d))
        }
    }
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_presentation(p: &LiePresentation, weight: &Weight) -> Self {
        let a = p.alphabet();
        PresentationFile {
            basis: a.generators().iter().map(|g| g.name.clone()).collect(),
            weight: weight.0.to_string(),
            brackets: p
                .entries()
                .map(|(l, r, v)| BracketEntry {
                    left: a.name(l).to_string(),
                    right: a.name(r).to_string(),
                    result: v
                        .terms()
                        .map(|(w, c)| match w.as_letter() {
                            Some(Letter::Gen(g)) => (a.name(*g).to_string(), c.to_string()),
                            _ => unreachable!("table values are linear"),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Resolves names and builds the presentation. The Jacobi identity is not
    /// checked here; building an envelope checks it.
    pub fn to_presentation(&self) -> Result<(LiePresentation, Weight), PresentationError> {
        let alphabet = Alphabet::new(self.basis.iter().map(String::as_str))?;
        let rank = |name: &str| {
            alphabet
                .rank(name)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
        };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut value = LiePoly::zero();
            for (name, c) in &b.result {
                value.add_term(
                    crate::words::RlsWord::generator(rank(name)?),
                    parse_rational(c)?,
                );
            }
            entries.push((rank(&b.left)?, rank(&b.right)?, value));
        }
        let weight = Weight(parse_rational(&self.weight)?);
        Ok((LiePresentation::new(alphabet, entries)?, weight))
    }
}

pub fn load_presentation(text: &str) -> Result<(LiePresentation, Weight), PresentationError> {
    PresentationFile::from_json(text)?.to_presentation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::scalar;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), scalar(3));
        assert_eq!(parse_rational("-2/4").unwrap(), scalar(-1) / scalar(2));
        for bad in ["", "1/0", "1/-2", "x", "1.5", "+1", "1/", "--1", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn loads_and_round_trips() {
        let text = r#"{
            "basis": ["e", "h", "f"],
            "weight": "1/2",
            "brackets": [
                { "left": "e", "right": "h", "result": { "e": "-2" } },
                { "left": "e", "right": "f", "result": { "h": "1" } },
                { "left": "h", "right": "f", "result": { "f": "-2" } }
            ]
        }"#;
        let (p, w) = load_presentation(text).unwrap();
        assert_eq!(w, Weight(scalar(1) / scalar(2)));
        assert_eq!(p.bracket(2, 0), -LiePoly::generator(1));
        let file = PresentationFile::from_presentation(&p, &w);
        assert_eq!(load_presentation(&file.to_json()).unwrap(), (p, w));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(load_presentation(r#"{"basis": ["x"], "extra": 1}"#).is_err());
        assert!(matches!(
            load_presentation(r#"{"basis": ["x","y"], "brackets": [{"left":"x","right":"z","result":{}}]}"#),
            Err(PresentationError::UnknownGenerator(_))
        ));
        assert!(load_presentation(r#"{"basis": ["x","y"], "brackets": [{"left":"y","right":"x","result":{}}]}"#).is_err());
        assert!(load_presentation(r#"{"basis": ["x","x"]}"#).is_err());
        assert!(load_presentation(r#"{"basis": ["R"]}"#).is_err());
    }
}
