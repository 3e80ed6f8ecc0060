use rand::Rng;

use crate::error::Result;
use crate::ff::PrimeField;
use crate::genus::{GenusInstance, PrimeSpec};

/// Parameters for random abstract instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub q: u64,
    pub ell: u64,
    pub n: u32,
    pub max_r: usize,
    pub max_deg: u64,
}

/// A random instance with `1..=max_r` abstract primes of degree `1..=max_deg`.
/// The first exponent is kept prime to `ℓ`.
pub fn random_instance<R: Rng>(p: &RandomParams, rng: &mut R) -> Result<GenusInstance> {
    let field = PrimeField::new(p.q, p.ell, p.n)?;
    let ell_n = field.ell_n();
    let r = rng.gen_range(1..=p.max_r.max(1));
    let mut factors = Vec::with_capacity(r);
    for k in 0..r {
        let degree = rng.gen_range(1..=p.max_deg.max(1));
        let mut e = rng.gen_range(1..ell_n);
        if k == 0 && e % p.ell == 0 {
            e += 1;
        }
        factors.push((PrimeSpec::Abstract { degree }, e));
    }
    let gamma = field.elem(rng.gen_range(1..p.q));
    GenusInstance::from_factors(field, gamma, factors)
}

/// The first prime in `candidates` admitting `ℓ^n | q - 1`.
pub fn field_for(ell: u64, n: u32, candidates: &[u64]) -> Option<u64> {
    candidates
        .iter()
        .copied()
        .find(|&q| PrimeField::new(q, ell, n).is_ok())
}
