use serde::{Deserialize, Serialize};

use super::instance::{GenusInstance, PrimeSpec};
use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::poly::Poly;

/// An instance as written by a user.
///
/// ```
/// use kummer_genus::genus::InstanceFile;
/// let f = InstanceFile::from_json(r#"{
///     "q": 13, "ell": 3, "n": 1, "gamma": 2,
///     "D": { "factors": [ { "prime": "1,1", "exponent": 1 }, { "prime": { "degree": 2 }, "exponent": 1 } ] }
/// }"#).unwrap();
/// let inst = f.build(0).unwrap();
/// assert_eq!(inst.r(), 2);
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub q: u64,
    pub ell: u64,
    pub n: u32,
    /// May be negative; reduced mod `q`.
    pub gamma: i64,
    #[serde(rename = "D")]
    pub d: DSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DSpec {
    Coeffs(CoeffsSpec),
    Factors(FactorsSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsSpec {
    pub coeffs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorsSpec {
    pub factors: Vec<FactorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub prime: PrimeEntry,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrimeEntry {
    Coeffs(String),
    Abstract { degree: u64 },
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validates and builds the instance; `seed` drives polynomial factoring.
    pub fn build(&self, seed: u64) -> Result<GenusInstance> {
        let field = PrimeField::new(self.q, self.ell, self.n)?;
        let gamma = field.fp().elem_i64(self.gamma);
        match &self.d {
            DSpec::Coeffs(c) => {
                let d = Poly::parse(field.fp(), &c.coeffs)?;
                GenusInstance::from_polynomial(field, gamma, &d, seed)
            }
            DSpec::Factors(f) => {
                let factors = f
                    .factors
                    .iter()
                    .map(|e| {
                        let spec = match &e.prime {
                            PrimeEntry::Coeffs(text) => {
                                PrimeSpec::Concrete(Poly::parse(field.fp(), text)?)
                            }
                            PrimeEntry::Abstract { degree } => {
                                PrimeSpec::Abstract { degree: *degree }
                            }
                        };
                        Ok((spec, e.exponent))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GenusInstance::from_factors(field, gamma, factors)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unfactored_input() {
        let f = InstanceFile::from_json(
            r#"{"q": 13, "ell": 3, "n": 1, "gamma": -1, "D": {"coeffs": "2,3,1"}}"#,
        )
        .unwrap();
        let inst = f.build(7).unwrap();
        assert_eq!(inst.r(), 2);
        assert_eq!(inst.gamma().value(), 12);
    }

    #[test]
    fn both_forms_rejected() {
        let text = r#"{"q": 13, "ell": 3, "n": 1, "gamma": 1,
            "D": {"coeffs": "1,1", "factors": []}}"#;
        assert!(InstanceFile::from_json(text).is_err());
    }

    #[test]
    fn abstract_only_under_factors() {
        let text = r#"{"q": 13, "ell": 3, "n": 1, "gamma": 1, "D": {"degree": 2}}"#;
        assert!(InstanceFile::from_json(text).is_err());
    }

    #[test]
    fn bad_field() {
        let f = InstanceFile::from_json(
            r#"{"q": 13, "ell": 3, "n": 2, "gamma": 1, "D": {"coeffs": "1,1"}}"#,
        )
        .unwrap();
        assert!(matches!(f.build(0), Err(Error::PowerDoesNotDivide { .. })));
    }
}
