use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::checks::{check_certificate, generator_subgroup, is_semantic};
use crate::error::Result;
use crate::genus::{Generator, GenusCertificate, GenusInstance};
use crate::kummer::RadicalField;

/// One perturbation: exponent of `P_prime` in a generator, shifted by `delta`
/// modulo the root order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub list: &'static str,
    pub generator: String,
    pub prime: usize,
    pub delta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationOutcome {
    pub mutation: Mutation,
    /// Some check failed.
    pub detected: bool,
    /// Some check outside the formula group failed.
    pub semantic_detected: bool,
    /// The mutated list generates the same subgroup as the original.
    pub same_subgroup: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MutationSummary {
    pub certificates: usize,
    pub mutations: usize,
    pub detected: usize,
    pub semantic_detected: usize,
    /// Undetected mutations whose subgroup changed; must be zero.
    pub undetected_changed: usize,
    /// Mutations missed by the semantic checks whose subgroup changed.
    pub semantic_undetected_changed: usize,
}

impl MutationSummary {
    pub fn detection_rate(&self) -> f64 {
        if self.mutations == 0 {
            1.0
        } else {
            self.detected as f64 / self.mutations as f64
        }
    }

    pub fn semantic_rate(&self) -> f64 {
        if self.mutations == 0 {
            1.0
        } else {
            self.semantic_detected as f64 / self.mutations as f64
        }
    }

    pub fn add(&mut self, outcomes: &[MutationOutcome]) {
        self.certificates += 1;
        for o in outcomes {
            self.mutations += 1;
            self.detected += o.detected as usize;
            self.semantic_detected += o.semantic_detected as usize;
            self.undetected_changed += (!o.detected && !o.same_subgroup) as usize;
            self.semantic_undetected_changed += (!o.semantic_detected && !o.same_subgroup) as usize;
        }
    }
}

fn perturb(inst: &GenusInstance, g: &Generator, prime: usize, delta: i64) -> Result<Generator> {
    let modulus = num_traits::pow(BigInt::from(g.raw.ell), g.raw.root_exp as usize);
    let e = (g.raw.exponent(prime) + delta).mod_floor(&modulus);
    let mut exps = g.raw.exponents.clone();
    exps.insert(prime, e);
    let raw = RadicalField::new(g.raw.ell, g.raw.root_exp, g.raw.const_part, exps);
    let canonical = inst.space().canonicalize(&raw)?;
    Ok(Generator {
        raw,
        canonical,
        ..g.clone()
    })
}

/// Applies every `±1` perturbation to every prime exponent of every generator
/// and runs the full check suite on each mutated certificate.
pub fn mutation_outcomes(cert: &GenusCertificate) -> Result<Vec<MutationOutcome>> {
    let inst = GenusInstance::from_record(&cert.instance)?;
    let mut out = Vec::new();
    for list in ["E_gex", "E_ge", "K_ge"] {
        let gens = list_of(cert, list);
        let original = generator_subgroup(&inst, gens)?;
        for (gi, g) in gens.iter().enumerate() {
            if g.raw.is_trivial() {
                continue;
            }
            for prime in 1..=inst.r() {
                for delta in [1i64, -1] {
                    let mut mutated = cert.clone();
                    let target = list_of_mut(&mut mutated, list);
                    target[gi] = perturb(&inst, g, prime, delta)?;
                    let same_subgroup = generator_subgroup(&inst, target)? == original;
                    let reports = check_certificate(&mutated);
                    let failed: Vec<&str> = reports
                        .iter()
                        .filter(|r| !r.passed())
                        .map(|r| r.name.as_str())
                        .collect();
                    out.push(MutationOutcome {
                        mutation: Mutation {
                            list,
                            generator: g.label.clone(),
                            prime,
                            delta,
                        },
                        detected: !failed.is_empty(),
                        semantic_detected: failed.iter().any(|n| is_semantic(n)),
                        same_subgroup,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn list_of<'a>(cert: &'a GenusCertificate, list: &str) -> &'a [Generator] {
    match list {
        "E_gex" => &cert.e_gex,
        "E_ge" => &cert.e_ge,
        _ => &cert.k_ge,
    }
}

fn list_of_mut<'a>(cert: &'a mut GenusCertificate, list: &str) -> &'a mut Vec<Generator> {
    match list {
        "E_gex" => &mut cert.e_gex,
        "E_ge" => &mut cert.e_ge,
        _ => &mut cert.k_ge,
    }
}
