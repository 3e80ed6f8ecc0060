use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};
use crate::kummer::{decompose, nu_capped, ClassSpace, PrimeLabel};
use crate::poly::Poly;

/// How a prime is given: a concrete monic irreducible polynomial, or only its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSpec {
    Abstract { degree: u64 },
    Concrete(Poly),
}

/// One factor `P_j^{α_j}` of `D` together with the data read off `α_j` and `deg P_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: PrimeLabel,
    /// `α_j`, reduced into `[1, ℓ^n)`.
    pub exponent: u64,
    /// `α_j = b ℓ^a`.
    pub a: u32,
    pub b: u64,
    /// `deg P_j = c ℓ^d`.
    pub c: u64,
    pub d: u32,
    /// Position in the caller's factor list, before sorting.
    pub input_position: usize,
}

/// A validated instance `K = k(ℓ^n-th root of γD)`.
///
/// Primes are sorted by `a_j` (stably) and indexed `1..=r` in that order.
#[derive(Clone, Debug)]
pub struct GenusInstance {
    field: PrimeField,
    gamma: FieldElement,
    primes: Vec<PrimePower>,
    space: ClassSpace,
    warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub index: usize,
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    pub exponent: u64,
    pub a: u32,
    pub b: u64,
    pub c: u64,
    pub d: u32,
}

/// Serialized form of an instance, as embedded in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub q: u64,
    pub ell: u64,
    pub n: u32,
    pub gamma: u64,
    pub primes: Vec<PrimeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl GenusInstance {
    /// Builds an instance from a factored `D`.
    ///
    /// Multiplicities are reduced mod `ℓ^n` and primes whose multiplicity
    /// vanishes are dropped with a warning.
    pub fn from_factors(
        field: PrimeField,
        gamma: FieldElement,
        factors: Vec<(PrimeSpec, u64)>,
    ) -> Result<Self> {
        if gamma.is_zero() || gamma.value() >= field.q() {
            return Err(Error::InvalidInstance(
                "γ must be a nonzero element of F_q".into(),
            ));
        }
        let ell = field.ell();
        let ell_n = field.ell_n();
        let mut warnings = Vec::new();
        let mut seen: Vec<&Poly> = Vec::new();
        for (spec, _) in &factors {
            if let PrimeSpec::Concrete(p) = spec {
                if p.field() != field.fp() {
                    return Err(Error::InvalidInstance(format!(
                        "{p} is not a polynomial over F_{}",
                        field.q()
                    )));
                }
                if seen.contains(&p) {
                    return Err(Error::InvalidInstance(format!("prime {p} listed twice")));
                }
                seen.push(p);
            }
        }
        let mut primes = Vec::new();
        for (pos, (spec, mult)) in factors.into_iter().enumerate() {
            let label = match spec {
                PrimeSpec::Abstract { degree } => PrimeLabel::abstract_prime(pos + 1, degree)?,
                PrimeSpec::Concrete(p) => PrimeLabel::concrete(pos + 1, p)?,
            };
            let exponent = mult % ell_n;
            if exponent == 0 {
                warnings.push(format!(
                    "factor {} has multiplicity {mult} ≡ 0 mod {ell_n} and was dropped",
                    pos + 1
                ));
                continue;
            }
            let (b, a) = decompose(exponent, ell)?;
            let (c, d) = decompose(label.degree, ell)?;
            primes.push(PrimePower {
                prime: label,
                exponent,
                a,
                b,
                c,
                d,
                input_position: pos,
            });
        }
        if primes.is_empty() {
            return Err(Error::InvalidInstance(
                "D is constant up to ℓ^n-th powers".into(),
            ));
        }
        primes.sort_by_key(|p| p.a);
        if primes[0].a != 0 {
            return Err(Error::InvalidInstance(format!(
                "every multiplicity is divisible by {ell}; K/k would not be of degree {ell_n}"
            )));
        }
        for (i, p) in primes.iter_mut().enumerate() {
            p.prime.index = i + 1;
        }
        let space = ClassSpace::new(field, primes.iter().map(|p| p.prime.degree).collect())?;
        Ok(GenusInstance {
            field,
            gamma,
            primes,
            space,
            warnings,
        })
    }

    /// Builds an instance from an unfactored `D`; its leading coefficient is
    /// absorbed into `γ`.
    pub fn from_polynomial(
        field: PrimeField,
        gamma: FieldElement,
        d: &Poly,
        seed: u64,
    ) -> Result<Self> {
        if d.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInstance(
                "D must be a nonconstant polynomial".into(),
            ));
        }
        let fac = d.factor_seeded(seed)?;
        let gamma = field.fp().mul(gamma, fac.unit);
        let factors = fac
            .factors
            .into_iter()
            .map(|(p, m)| (PrimeSpec::Concrete(p), m))
            .collect();
        Self::from_factors(field, gamma, factors)
    }

    /// Rebuilds an instance from its certificate record.
    pub fn from_record(rec: &InstanceRecord) -> Result<Self> {
        let field = PrimeField::new(rec.q, rec.ell, rec.n)?;
        let mut primes = rec.primes.clone();
        primes.sort_by_key(|p| p.index);
        let factors = primes
            .iter()
            .map(|p| {
                let spec = match &p.poly {
                    Some(text) => PrimeSpec::Concrete(Poly::parse(field.fp(), text)?),
                    None => PrimeSpec::Abstract { degree: p.degree },
                };
                Ok((spec, p.exponent))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inst = Self::from_factors(field, field.elem(rec.gamma), factors)?;
        inst.warnings = rec.warnings.clone();
        for (got, want) in inst.primes.iter().zip(&primes) {
            if got.prime.degree != want.degree
                || got.exponent != want.exponent
                || (got.a, got.b, got.c, got.d) != (want.a, want.b, want.c, want.d)
            {
                return Err(Error::Parse(format!(
                    "prime record P{} does not match its degree and exponent",
                    want.index
                )));
            }
        }
        Ok(inst)
    }

    pub fn record(&self) -> InstanceRecord {
        InstanceRecord {
            q: self.field.q(),
            ell: self.field.ell(),
            n: self.field.n(),
            gamma: self.gamma.value(),
            primes: self
                .primes
                .iter()
                .map(|p| PrimeRecord {
                    index: p.prime.index,
                    degree: p.prime.degree,
                    poly: p.prime.concrete.as_ref().map(Poly::to_text),
                    exponent: p.exponent,
                    a: p.a,
                    b: p.b,
                    c: p.c,
                    d: p.d,
                })
                .collect(),
            warnings: self.warnings.clone(),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn space(&self) -> &ClassSpace {
        &self.space
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn primes(&self) -> &[PrimePower] {
        &self.primes
    }

    /// `P_j` for 1-based `j`.
    pub fn prime(&self, j: usize) -> &PrimePower {
        &self.primes[j - 1]
    }

    pub fn r(&self) -> usize {
        self.primes.len()
    }

    pub fn ell(&self) -> u64 {
        self.field.ell()
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `deg D = Σ α_j deg P_j`.
    pub fn deg_d(&self) -> BigInt {
        self.primes
            .iter()
            .map(|p| BigInt::from(p.exponent) * BigInt::from(p.prime.degree))
            .sum()
    }

    /// `ν_ℓ(deg D)`.
    pub fn nu(&self) -> u32 {
        nu_capped(&self.deg_d(), self.ell(), u32::MAX)
    }

    /// `d = min(n, ν_ℓ(deg D))`.
    pub fn d(&self) -> u32 {
        self.nu().min(self.n())
    }

    /// `t = n - d`; `e_∞(K/k) = ℓ^t`.
    pub fn t(&self) -> u32 {
        self.n() - self.d()
    }

    /// `ε = (-1)^{deg D} γ`.
    pub fn epsilon(&self) -> FieldElement {
        let fp = self.field.fp();
        let odd = (self.deg_d() % 2u32) != BigInt::from(0);
        fp.mul(fp.sign(odd), self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64, ell: u64, n: u32) -> PrimeField {
        PrimeField::new(q, ell, n).unwrap()
    }

    #[test]
    fn single_prime() {
        let field = f(13, 3, 1);
        let inst = GenusInstance::from_factors(
            field,
            field.elem(2),
            vec![(PrimeSpec::Abstract { degree: 2 }, 1)],
        )
        .unwrap();
        assert_eq!(inst.r(), 1);
        assert_eq!(inst.deg_d(), BigInt::from(2));
    }

    #[test]
    fn unfactored_input_is_factored() {
        let field = f(13, 3, 1);
        // (T+1)^2 (T+2) = T^3 + 4T^2 + 5T + 2
        let d = Poly::from_coeffs(field.fp(), &[2, 5, 4, 1]);
        let inst = GenusInstance::from_polynomial(field, field.elem(1), &d, 7).unwrap();
        let got: Vec<(String, u64)> = inst
            .primes()
            .iter()
            .map(|p| (p.prime.concrete.as_ref().unwrap().to_text(), p.exponent))
            .collect();
        assert_eq!(got, vec![("1,1".to_string(), 2), ("2,1".to_string(), 1)]);
    }

    #[test]
    fn leading_coefficient_moves_into_gamma() {
        let field = f(13, 3, 1);
        let d = Poly::from_coeffs(field.fp(), &[3, 3]); // 3(T+1)
        let inst = GenusInstance::from_polynomial(field, field.elem(2), &d, 0).unwrap();
        assert_eq!(inst.gamma().value(), 6);
    }

    #[test]
    fn multiplicities_reduce_and_sort() {
        let field = f(19, 3, 2);
        let inst = GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![
                (PrimeSpec::Abstract { degree: 1 }, 3),
                (PrimeSpec::Abstract { degree: 2 }, 9),
                (PrimeSpec::Abstract { degree: 4 }, 10),
                (PrimeSpec::Abstract { degree: 5 }, 6),
            ],
        )
        .unwrap();
        assert_eq!(inst.warnings().len(), 1);
        let order: Vec<(usize, u64, u32)> = inst
            .primes()
            .iter()
            .map(|p| (p.input_position, p.exponent, p.a))
            .collect();
        assert_eq!(order, vec![(2, 1, 0), (0, 3, 1), (3, 6, 1)]);
        assert_eq!(inst.prime(1).prime.index, 1);
    }

    #[test]
    fn rejects_bad_input() {
        let field = f(13, 3, 1);
        let one = |deg| (PrimeSpec::Abstract { degree: deg }, 1);
        assert!(GenusInstance::from_factors(field, field.elem(0), vec![one(1)]).is_err());
        assert!(GenusInstance::from_factors(field, field.elem(1), vec![]).is_err());
        assert!(GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![(PrimeSpec::Abstract { degree: 1 }, 3)]
        )
        .is_err());
        let fp = field.fp();
        let t1 = Poly::from_coeffs(fp, &[1, 1]);
        assert!(GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![
                (PrimeSpec::Concrete(t1.clone()), 1),
                (PrimeSpec::Concrete(t1), 2)
            ]
        )
        .is_err());
        // reducible over F_13
        let t2p1 = Poly::from_coeffs(fp, &[1, 0, 1]);
        assert!(GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![(PrimeSpec::Concrete(t2p1), 1)]
        )
        .is_err());
        let nonmonic = Poly::from_coeffs(fp, &[1, 2]);
        assert!(GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![(PrimeSpec::Concrete(nonmonic), 1)]
        )
        .is_err());
        assert!(GenusInstance::from_polynomial(field, field.elem(1), &Poly::one(fp), 0).is_err());
    }

    #[test]
    fn record_round_trip() {
        let field = f(13, 2, 2);
        let fp = field.fp();
        let inst = GenusInstance::from_factors(
            field,
            field.elem(5),
            vec![
                (PrimeSpec::Concrete(Poly::from_coeffs(fp, &[2, 0, 1])), 2),
                (PrimeSpec::Abstract { degree: 3 }, 1),
            ],
        )
        .unwrap();
        let rec = inst.record();
        let back = GenusInstance::from_record(&rec).unwrap();
        assert_eq!(back.record(), rec);
    }
}
