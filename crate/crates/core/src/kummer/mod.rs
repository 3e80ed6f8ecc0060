//! Kummer radical fields over `k = F_q(T)` and their classes modulo `ℓ^n`-th powers.
//!
//! A radical field `k(ℓ^s-th root of c·∏ P_j^{e_j})` is handled symbolically:
//! ramification indices come from the exponents and prime degrees, and the
//! field itself is identified with the cyclic subgroup its radicand generates
//! in `k^*/(k^*)^{ℓ^n}`. Restricted to the primes of an instance that group is
//! `Z/ℓ^n` (constants) times `(Z/ℓ^n)^r` (exponents), so composita become row
//! spans over `Z/ℓ^n` and are compared through their Howell normal forms.
//!
//! For a radicand supported on several primes the ramification index at a
//! place is the order of the radicand's valuation there, read in `Z/ℓ^s`.
//! This is the tame Kummer-theoretic generalization of the single-prime
//! formula `ℓ^n / gcd(α, ℓ^n)`.

mod howell;
mod radical;
mod space;

pub use howell::HowellForm;
pub use radical::RadicalField;
pub use space::{ClassSpace, KummerClass, KummerSubgroup, LocalImage};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Writes `x = b·ℓ^a` with `gcd(b, ℓ) = 1`; `a` is `ν_ℓ(x)`.
///
/// ```
/// use kummer_genus::kummer::decompose;
/// assert_eq!(decompose(54, 3).unwrap(), (2, 3));
/// assert!(decompose(0, 3).is_err());
/// ```
pub fn decompose(x: u64, ell: u64) -> Result<(u64, u32)> {
    if x == 0 {
        return Err(Error::Domain("ν_ℓ(0) is undefined".into()));
    }
    let (mut b, mut a) = (x, 0);
    while b % ell == 0 {
        b /= ell;
        a += 1;
    }
    Ok((b, a))
}

/// [`decompose`] for arbitrary-precision integers; the sign stays with `b`.
pub fn decompose_big(x: &BigInt, ell: u64) -> Result<(BigInt, u32)> {
    if x.is_zero() {
        return Err(Error::Domain("ν_ℓ(0) is undefined".into()));
    }
    let l = BigInt::from(ell);
    let (mut b, mut a) = (x.clone(), 0);
    loop {
        let (q, r) = b.div_rem(&l);
        if !r.is_zero() {
            break;
        }
        b = q;
        a += 1;
    }
    Ok((b, a))
}

/// `ν_ℓ(x)` capped at `cap`, with `ν_ℓ(0) = cap`.
pub fn nu_capped(x: &BigInt, ell: u64, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    decompose_big(x, ell)
        .map(|(_, a)| a.min(cap))
        .unwrap_or(cap)
}

/// A finite prime `P_j` of `k`, possibly known only by its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLabel {
    /// 1-based position in the instance.
    pub index: usize,
    pub degree: u64,
    pub concrete: Option<Poly>,
}

impl PrimeLabel {
    pub fn abstract_prime(index: usize, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInstance(format!(
                "prime P{index} must have positive degree"
            )));
        }
        Ok(PrimeLabel {
            index,
            degree,
            concrete: None,
        })
    }

    /// Validates that `p` is monic and irreducible.
    pub fn concrete(index: usize, p: Poly) -> Result<Self> {
        let degree = p
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidInstance(format!("P{index} = {p} is constant")))?;
        if !p.is_monic() {
            return Err(Error::InvalidInstance(format!(
                "P{index} = {p} is not monic"
            )));
        }
        if !p.is_irreducible()? {
            return Err(Error::InvalidInstance(format!(
                "P{index} = {p} is reducible"
            )));
        }
        Ok(PrimeLabel {
            index,
            degree: degree as u64,
            concrete: Some(p),
        })
    }
}

pub(crate) fn big_pow(ell: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(ell), e as usize)
}

pub(crate) fn big_gcd_order(value: &BigInt, ell: u64, s: u32) -> u64 {
    // ℓ^s / gcd(value, ℓ^s)
    let ls = big_pow(ell, s);
    let g = value.gcd(&ls);
    let out = &ls / &g;
    debug_assert!(out >= BigInt::one());
    u64::try_from(out).expect("ℓ^s fits in u64")
}
