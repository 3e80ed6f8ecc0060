use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::FieldElement;

/// The field `k(ℓ^s-th root of c · ∏ P_j^{e_j})`.
///
/// Exponents are raw integers and may be negative or exceed `ℓ^s`; `s = 0`
/// denotes `k` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalField {
    pub ell: u64,
    pub root_exp: u32,
    pub const_part: FieldElement,
    /// Prime index (1-based) to exponent; zero exponents are not stored.
    pub exponents: BTreeMap<usize, BigInt>,
}

impl RadicalField {
    pub fn new(
        ell: u64,
        root_exp: u32,
        const_part: FieldElement,
        exponents: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Self {
        RadicalField {
            ell,
            root_exp,
            const_part,
            exponents: exponents
                .into_iter()
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }

    pub fn root_order(&self) -> u64 {
        self.ell.pow(self.root_exp)
    }

    pub fn is_trivial(&self) -> bool {
        self.root_exp == 0
    }

    pub fn exponent(&self, index: usize) -> BigInt {
        self.exponents.get(&index).cloned().unwrap_or_default()
    }
}

impl fmt::Display for RadicalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "k");
        }
        let mut parts = Vec::new();
        if self.const_part.value() != 1 || self.exponents.is_empty() {
            parts.push(self.const_part.to_string());
        }
        for (j, e) in &self.exponents {
            if *e == BigInt::from(1) {
                parts.push(format!("P{j}"));
            } else {
                parts.push(format!("P{j}^{e}"));
            }
        }
        write!(
            f,
            "k(({})^(1/{}^{}))",
            parts.join("·"),
            self.ell,
            self.root_exp
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    root_order: String,
    const_part: u64,
    exponents: Vec<(usize, String)>,
}

impl Serialize for RadicalField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            root_order: format!("{}^{}", self.ell, self.root_exp),
            const_part: self.const_part.value(),
            exponents: self
                .exponents
                .iter()
                .map(|(j, e)| (*j, e.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        parse_repr(repr).map_err(serde::de::Error::custom)
    }
}

fn parse_repr(repr: Repr) -> Result<RadicalField> {
    let bad = || {
        Error::Parse(format!(
            "root_order {:?} is not of the form ℓ^s",
            repr.root_order
        ))
    };
    let (ell, s) = repr.root_order.split_once('^').ok_or_else(bad)?;
    let ell: u64 = ell.trim().parse().map_err(|_| bad())?;
    let root_exp: u32 = s.trim().parse().map_err(|_| bad())?;
    let exponents = repr
        .exponents
        .into_iter()
        .map(|(j, e)| {
            e.parse::<BigInt>()
                .map(|e| (j, e))
                .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    // const_part is not reduced here; ClassSpace::check does that against q
    Ok(RadicalField::new(
        ell,
        root_exp,
        FieldElement::raw(repr.const_part),
        exponents,
    ))
}
