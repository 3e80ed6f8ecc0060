//! The `n = 1` case, computed directly from the degrees without the general
//! pivot machinery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::instance::GenusInstance;
use crate::error::{Error, Result};
use crate::kummer::RadicalField;

/// Which of the two shapes the answer takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PengCase {
    /// `K_ge = E_1 ⋯ E_r K`.
    Narrow,
    /// `K_ge = F_1 ⋯ F_{r-1} K` with `P_r` moved last.
    Twisted,
}

#[derive(Clone, Debug)]
pub struct PengGenus {
    pub case: PengCase,
    /// Instance index placed last (the prime realizing `m`).
    pub last: usize,
    pub a: BigInt,
    /// Generators of `K_ge`, ending with `K`.
    pub generators: Vec<RadicalField>,
}

/// Genus field of `k(ℓ-th root of γD)`.
pub fn peng_n1(inst: &GenusInstance) -> Result<PengGenus> {
    if inst.n() != 1 {
        return Err(Error::Domain(format!(
            "n = {} but this case needs n = 1",
            inst.n()
        )));
    }
    let ell = inst.ell();
    let q = inst.field().q();
    let fp = inst.field().fp();
    let degs: Vec<u64> = inst.primes().iter().map(|p| p.prime.degree).collect();
    let deg_d: u128 = inst
        .primes()
        .iter()
        .map(|p| p.exponent as u128 * p.prime.degree as u128)
        .sum();
    let d = u32::from(deg_d % ell as u128 == 0);
    // with n = 1 every α_j is a unit, so m_j = 1 exactly when ℓ ∤ deg P_j
    let m = u32::from(degs.iter().any(|g| g % ell != 0));
    let last = degs
        .iter()
        .rposition(|g| if m == 1 { g % ell != 0 } else { true })
        .expect("r ≥ 1")
        + 1;

    let eps = fp.mul(fp.sign(deg_d % 2 == 1), inst.gamma());
    let eps_is_power = fp.modpow(eps, (q - 1) / ell).value() == 1;

    let base = RadicalField::new(
        ell,
        1,
        inst.gamma(),
        inst.primes()
            .iter()
            .map(|p| (p.prime.index, BigInt::from(p.exponent))),
    );

    let narrow = m == 1 - d && (eps_is_power || d == 1);
    if narrow {
        let mut generators: Vec<RadicalField> = inst
            .primes()
            .iter()
            .map(|p| {
                RadicalField::new(
                    ell,
                    1,
                    fp.sign(p.prime.degree % 2 == 1),
                    [(p.prime.index, BigInt::one())],
                )
            })
            .collect();
        generators.push(base);
        return Ok(PengGenus {
            case: PengCase::Narrow,
            last,
            a: BigInt::one(),
            generators,
        });
    }

    // a deg P_r + b ℓ = 1, a in [0, ℓ)
    let deg_r = BigInt::from(degs[last - 1]);
    let l = BigInt::from(ell);
    let eg = deg_r.extended_gcd(&l);
    if !eg.gcd.is_one() {
        return Err(Error::Inconsistent(format!(
            "ℓ divides deg P{last} although it realizes m = 1"
        )));
    }
    let a = eg.x.mod_floor(&l);
    let mut generators: Vec<RadicalField> = inst
        .primes()
        .iter()
        .filter(|p| p.prime.index != last)
        .map(|p| {
            let z = -&a * BigInt::from(p.prime.degree);
            RadicalField::new(
                ell,
                1,
                fp.one(),
                [(p.prime.index, BigInt::one()), (last, z)],
            )
        })
        .collect();
    generators.push(base);
    Ok(PengGenus {
        case: PengCase::Twisted,
        last,
        a,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::super::instance::PrimeSpec;
    use super::*;
    use crate::ff::PrimeField;

    fn inst(q: u64, ell: u64, gamma: u64, data: &[(u64, u64)]) -> GenusInstance {
        let field = PrimeField::new(q, ell, 1).unwrap();
        GenusInstance::from_factors(
            field,
            field.elem(gamma),
            data.iter()
                .map(|&(deg, e)| (PrimeSpec::Abstract { degree: deg }, e))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn q13_two_primes() {
        // 2 is not a cube mod 13; deg D = 3, so ε = -2, also a non-cube
        let i = inst(13, 3, 2, &[(1, 1), (2, 1)]);
        let out = peng_n1(&i).unwrap();
        assert_eq!(out.case, PengCase::Twisted);
        assert_eq!(out.last, 2);
        assert_eq!(out.a, BigInt::from(2));
        assert_eq!(out.generators.len(), 2);
        let f1 = &out.generators[0];
        assert_eq!(f1.exponent(1), BigInt::one());
        assert_eq!(f1.exponent(2).mod_floor(&BigInt::from(3)), BigInt::one());
    }

    #[test]
    fn single_prime_divisible_degree() {
        // 8 = 2^3 is a cube mod 13
        let i = inst(13, 3, 8, &[(3, 1)]);
        let out = peng_n1(&i).unwrap();
        assert_eq!(out.case, PengCase::Narrow);
        assert_eq!(out.generators.len(), 2);
    }

    #[test]
    fn rejects_n2() {
        let field = PrimeField::new(19, 3, 2).unwrap();
        let i = GenusInstance::from_factors(
            field,
            field.elem(1),
            vec![(PrimeSpec::Abstract { degree: 1 }, 1)],
        )
        .unwrap();
        assert!(peng_n1(&i).is_err());
    }
}
