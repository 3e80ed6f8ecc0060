//! Prime field arithmetic and the ℓ-power structure of `F_q^*`.
//!
//! [`Fp`] is plain arithmetic modulo a 64-bit prime. [`PrimeField`] adds the
//! Kummer data `(ℓ, n)` with `ℓ^n | q - 1`, which gives `F_q` all `ℓ^n`-th
//! roots of unity. Because `F_q^*` is cyclic, the quotient
//! `F_q^* / (F_q^*)^{ℓ^n}` is cyclic of order `ℓ^n`; an element is an
//! `ℓ^j`-th power exactly when `x^{(q-1)/ℓ^j} = 1`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// Checked `base^exp` over `u64`.
pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// An element of `F_q`, stored as its least nonnegative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Unreduced wrapper; callers reduce against a modulus later.
    pub(crate) fn raw(v: u64) -> Self {
        FieldElement(v)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic modulo a prime `q < 2^64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    q: u64,
}

impl Fp {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Fp { q })
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement(v % self.q)
    }

    pub fn elem_i64(self, v: i64) -> FieldElement {
        FieldElement((v as i128).rem_euclid(self.q as i128) as u64)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(self) -> FieldElement {
        FieldElement(1 % self.q)
    }

    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u128 + b.0 as u128;
        FieldElement((s % self.q as u128) as u64)
    }

    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 >= b.0 {
            FieldElement(a.0 - b.0)
        } else {
            FieldElement(self.q - (b.0 - a.0))
        }
    }

    pub fn neg(self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.q - a.0)
        }
    }

    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(mul_mod_u64(a.0, b.0, self.q))
    }

    /// `x^e` by square-and-multiply.
    pub fn modpow(self, x: FieldElement, e: u64) -> FieldElement {
        FieldElement(pow_mod_u64(x.0, e, self.q))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            None
        } else {
            Some(self.modpow(a, self.q - 2))
        }
    }

    /// `(-1)^e`.
    pub fn sign(self, odd: bool) -> FieldElement {
        if odd {
            self.neg(self.one())
        } else {
            self.one()
        }
    }
}

/// `F_q` together with a prime `ℓ` and exponent `n ≥ 1` such that `ℓ^n | q - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    fp: Fp,
    ell: u64,
    n: u32,
    ell_n: u64,
    /// Smallest element that is not an ℓ-th power; it generates `F_q^*/(F_q^*)^{ℓ^n}`.
    quotient_gen: FieldElement,
}

impl PrimeField {
    pub fn new(q: u64, ell: u64, n: u32) -> Result<Self> {
        let fp = Fp::new(q)?;
        if !is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        if n == 0 {
            return Err(Error::Domain("the exponent n must be at least 1".into()));
        }
        let ell_n =
            checked_pow(ell, n)
                .filter(|v| (q - 1) % v == 0)
                .ok_or(Error::PowerDoesNotDivide {
                    ell,
                    n,
                    q_minus_one: q - 1,
                })?;
        let cofactor = (q - 1) / ell;
        let quotient_gen = (2..q)
            .map(|g| fp.elem(g))
            .find(|&g| fp.modpow(g, cofactor).value() != 1)
            // q = 2 cannot occur: ℓ^n | 1 is impossible for n ≥ 1.
            .ok_or_else(|| Error::Domain(format!("F_{q} has no non-{ell}-th power")))?;
        Ok(PrimeField {
            fp,
            ell,
            n,
            ell_n,
            quotient_gen,
        })
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn q(&self) -> u64 {
        self.fp.q
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `ℓ^n`.
    pub fn ell_n(&self) -> u64 {
        self.ell_n
    }

    pub fn elem(&self, v: u64) -> FieldElement {
        self.fp.elem(v)
    }

    pub fn modpow(&self, x: FieldElement, e: u64) -> FieldElement {
        self.fp.modpow(x, e)
    }

    /// Canonical generator of the cyclic group `F_q^*/(F_q^*)^{ℓ^n}`.
    pub fn quotient_generator(&self) -> FieldElement {
        self.quotient_gen
    }

    /// Largest `w ≤ n` such that `eps` is an `ℓ^w`-th power in `F_q^*`.
    pub fn lpower_level(&self, eps: FieldElement) -> Result<u32> {
        if eps.is_zero() {
            return Err(Error::Domain("lpower_level of zero".into()));
        }
        let mut w = 0;
        let mut power = 1u64;
        for j in 1..=self.n {
            power *= self.ell;
            let is_power = self.modpow(eps, (self.q() - 1) / power).value() == 1;
            if is_power {
                if w != j - 1 {
                    return Err(Error::Inconsistent(format!(
                        "power criterion not monotone at j = {j}"
                    )));
                }
                w = j;
            }
        }
        Ok(w)
    }

    /// `ν_ℓ(|H|)` for the constant-field tower of `eps`:
    /// `[F_q(ℓ^n-th root of eps) : F_q(ℓ^d-th root of eps)]`.
    pub fn alpha(&self, eps: FieldElement, d: u32) -> Result<u32> {
        if d > self.n {
            return Err(Error::Domain(format!("d = {d} exceeds n = {}", self.n)));
        }
        let w = self.lpower_level(eps)?;
        Ok(self.radical_constant_degree_exp(w, self.n) - self.radical_constant_degree_exp(w, d))
    }

    /// `ν_ℓ [F_q(ℓ^s-th root of ε) : F_q]` for an `ε` of level `w`.
    pub fn radical_constant_degree_exp(&self, w: u32, s: u32) -> u32 {
        s.saturating_sub(w)
    }

    /// Discrete logarithm of the class of `c` in `F_q^*/(F_q^*)^{ℓ^n}`,
    /// relative to [`quotient_generator`](Self::quotient_generator).
    ///
    /// The class is read off in the group of `ℓ^n`-th roots of unity
    /// (`c ↦ c^{(q-1)/ℓ^n}`) and solved one base-ℓ digit at a time.
    pub fn class_log(&self, c: FieldElement) -> Result<u64> {
        if c.is_zero() {
            return Err(Error::Domain("class_log of zero".into()));
        }
        let cof = (self.q() - 1) / self.ell_n;
        let target = self.modpow(c, cof);
        if target.value() == 1 {
            return Ok(0);
        }
        if self.ell > (1u64 << 40) {
            return Err(Error::Unsupported(format!(
                "constant classes for ℓ = {} (baby-step table too large)",
                self.ell
            )));
        }
        let h = self.modpow(self.quotient_gen, cof);
        let fp = self.fp;
        // zeta has order exactly ℓ.
        let zeta = fp.modpow(h, self.ell_n / self.ell);
        let h_inv = fp.inv(h).expect("root of unity is nonzero");
        let mut x = 0u64;
        let mut ell_i = 1u64;
        for i in 0..self.n {
            // strip the digits found so far, then project onto the order-ℓ subgroup
            let shifted = fp.mul(target, fp.modpow(h_inv, x));
            let proj = fp.modpow(shifted, self.ell_n / (ell_i * self.ell));
            let digit = bsgs(fp, zeta, proj, self.ell)
                .ok_or_else(|| Error::Inconsistent(format!("no base-ℓ digit at position {i}")))?;
            x += digit * ell_i;
            ell_i *= self.ell;
        }
        Ok(x % self.ell_n)
    }
}

/// Solves `base^x = target` for `0 ≤ x < order`.
fn bsgs(fp: Fp, base: FieldElement, target: FieldElement, order: u64) -> Option<u64> {
    let m = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = fp.one();
    for j in 0..m {
        table.entry(cur.value()).or_insert(j);
        cur = fp.mul(cur, base);
    }
    let giant = fp.inv(fp.modpow(base, m))?;
    let mut gamma = target;
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma.value()) {
            let x = i * m + j;
            if x < order {
                return Some(x);
            }
        }
        gamma = fp.mul(gamma, giant);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_pow(fp: Fp, x: FieldElement, e: u64) -> FieldElement {
        (0..e).fold(fp.one(), |acc, _| fp.mul(acc, x))
    }

    /// Set of `x^{ℓ^j}` over all of `F_q^*`.
    fn power_set(q: u64, k: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (1..q).map(|x| pow_mod_u64(x, k, q)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn modpow_examples() {
        let f13 = Fp::new(13).unwrap();
        assert_eq!(f13.modpow(f13.elem(7), 0).value(), 1);
        let f19 = Fp::new(19).unwrap();
        assert_eq!(f19.modpow(f19.elem(2), 18).value(), 1);
        assert_eq!(f19.modpow(f19.elem(2), 6), naive_pow(f19, f19.elem(2), 6));
        assert_eq!(f19.modpow(f19.elem(2), 6).value(), 7);
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        assert!(is_prime_u64(472393));
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn field_construction_errors() {
        assert_eq!(PrimeField::new(15, 3, 1), Err(Error::NotPrime(15)));
        assert_eq!(PrimeField::new(13, 4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(
            PrimeField::new(13, 3, 2),
            Err(Error::PowerDoesNotDivide { .. })
        ));
        assert!(PrimeField::new(472393, 3, 10).is_ok());
    }

    #[test]
    fn lpower_level_one_is_everything() {
        for (q, ell, n) in [(13, 2, 2), (19, 3, 2), (37, 3, 2), (472393, 3, 10)] {
            let f = PrimeField::new(q, ell, n).unwrap();
            assert_eq!(f.lpower_level(f.elem(1)).unwrap(), n);
            assert_eq!(f.alpha(f.elem(1), 0).unwrap(), 0);
        }
    }

    #[test]
    fn lpower_level_against_power_tables() {
        let f = PrimeField::new(19, 3, 2).unwrap();
        let cubes = power_set(19, 3);
        let ninths = power_set(19, 9);
        for x in 1..19u64 {
            let expect = if ninths.binary_search(&x).is_ok() {
                2
            } else if cubes.binary_search(&x).is_ok() {
                1
            } else {
                0
            };
            assert_eq!(f.lpower_level(f.elem(x)).unwrap(), expect, "x = {x}");
        }
        // 7 = 4^3 is a cube but not a ninth power
        assert_eq!(f.lpower_level(f.elem(7)).unwrap(), 1);
        assert!(f.lpower_level(f.elem(0)).is_err());
    }

    #[test]
    fn alpha_against_tables() {
        let f = PrimeField::new(19, 3, 2).unwrap();
        // 2 is not a cube mod 19, so [F(9th root of 2) : F] = 9 and d = 0 gives α = 2.
        assert!(power_set(19, 3).binary_search(&2).is_err());
        assert_eq!(f.alpha(f.elem(2), 0).unwrap(), 2);
        assert_eq!(f.alpha(f.elem(2), 1).unwrap(), 1);
        assert_eq!(f.alpha(f.elem(7), 1).unwrap(), 1);
        assert_eq!(f.alpha(f.elem(7), 2).unwrap(), 0);
        assert!(f.alpha(f.elem(2), 3).is_err());
    }

    #[test]
    fn alpha_worked_example() {
        let f = PrimeField::new(472393, 3, 10).unwrap();
        let eps = f.fp().neg(f.elem(5));
        assert_eq!(f.alpha(eps, 8).unwrap(), 2);
    }

    #[test]
    fn class_log_is_a_homomorphism() {
        for (q, ell, n) in [(13, 2, 2), (17, 2, 4), (19, 3, 2), (37, 3, 2), (31, 5, 1)] {
            let f = PrimeField::new(q, ell, n).unwrap();
            let fp = f.fp();
            let m = f.ell_n();
            assert_eq!(f.class_log(f.quotient_generator()).unwrap(), 1 % m);
            for a in 1..q {
                for b in 1..q {
                    let la = f.class_log(fp.elem(a)).unwrap();
                    let lb = f.class_log(fp.elem(b)).unwrap();
                    let lab = f.class_log(fp.mul(fp.elem(a), fp.elem(b))).unwrap();
                    assert_eq!((la + lb) % m, lab);
                }
                // log is zero exactly on ℓ^n-th powers
                let is_pow = f.lpower_level(fp.elem(a)).unwrap() == n;
                assert_eq!(f.class_log(fp.elem(a)).unwrap() == 0, is_pow);
            }
        }
    }
}
