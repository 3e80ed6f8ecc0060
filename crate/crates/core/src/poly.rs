//! Dense polynomials over a prime field `F_q[T]`.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector. Factorization follows the
//! usual pipeline: square-free decomposition, distinct-degree splitting, then
//! randomized equal-degree splitting driven by a seeded ChaCha stream.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, Fp};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    fp: Fp,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.fp.modulus(), self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, c) => write!(f, "{c}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, c) => write!(f, "{c}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero(fp: Fp) -> Self {
        Poly { fp, coeffs: vec![] }
    }

    pub fn one(fp: Fp) -> Self {
        Poly::constant(fp, fp.one())
    }

    /// The indeterminate `T`.
    pub fn t(fp: Fp) -> Self {
        Poly {
            fp,
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(fp: Fp, c: FieldElement) -> Self {
        Poly {
            fp,
            coeffs: vec![c.value()],
        }
        .trim()
    }

    /// From coefficients in ascending degree order; values are reduced mod `q`.
    pub fn from_coeffs(fp: Fp, coeffs: &[u64]) -> Self {
        Poly {
            fp,
            coeffs: coeffs.iter().map(|&c| fp.elem(c).value()).collect(),
        }
        .trim()
    }

    pub fn from_i64(fp: Fp, coeffs: &[i64]) -> Self {
        Poly {
            fp,
            coeffs: coeffs.iter().map(|&c| fp.elem_i64(c).value()).collect(),
        }
        .trim()
    }

    /// Parses the comma-separated text format, ascending degree (`"1,0,1"` is `1 + T^2`).
    pub fn parse(fp: Fp, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Poly::zero(fp));
        }
        let coeffs = text
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<i128>()
                    .map(|v| v.rem_euclid(fp.modulus() as i128) as u64)
                    .map_err(|_| Error::Parse(format!("bad polynomial coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { fp, coeffs }.trim())
    }

    /// Inverse of [`parse`](Self::parse); the zero polynomial prints as `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.fp.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.fp.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.fp.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let fp = self.fp;
        Poly {
            fp,
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| fp.mul(fp.elem(a), c).value())
                .collect(),
        }
        .trim()
    }

    fn check_same_field(&self, other: &Poly) {
        assert_eq!(self.fp, other.fp, "polynomials over different prime fields");
    }

    pub fn derivative(&self) -> Poly {
        let fp = self.fp;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(fp.elem(i as u64), fp.elem(c)).value())
            .collect();
        Poly { fp, coeffs }.trim()
    }

    /// Quotient and remainder with `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor);
        let fp = self.fp;
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead_inv = fp
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem: Vec<u64> = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(fp), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = fp.mul(fp.elem(rem[i + dd]), lead_inv);
            quot[i] = c.value();
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let r = fp.sub(fp.elem(rem[i + j]), fp.mul(c, fp.elem(dc)));
                rem[i + j] = r.value();
            }
        }
        rem.truncate(dd);
        Ok((
            Poly { fp, coeffs: quot }.trim(),
            Poly { fp, coeffs: rem }.trim(),
        ))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Exact division; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.fp).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            base = (&base * &base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(self.fp);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Irreducibility over `F_q` (Ben-Or): no factor of degree `i ≤ deg/2`
    /// divides `T^{q^i} - T`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::Domain(
                    "irreducibility of a constant polynomial".into(),
                ))
            }
        };
        let f = self.monic();
        let t = Poly::t(self.fp);
        let q = self.fp.modulus();
        let mut h = t.rem(&f)?;
        for _ in 1..=deg / 2 {
            h = h.pow_mod(q, &f)?;
            if !f.gcd(&(&h - &t)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full factorization with the default splitting seed.
    pub fn factor(&self) -> Result<Factorization> {
        self.factor_seeded(0)
    }

    /// Full factorization; the seed drives equal-degree splitting only, so
    /// the result does not depend on it.
    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::Domain("factorization of the zero polynomial".into()));
        }
        let unit = self.leading();
        let f = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (part, mult) in squarefree(&f) {
            for (g, d) in distinct_degree(&part) {
                for h in equal_degree(&g, d, &mut rng) {
                    factors.push((h, mult));
                }
            }
        }
        factors.sort_by(|(a, _), (b, _)| poly_order(a, b));
        Ok(Factorization { unit, factors })
    }
}

/// Degree first, then coefficient vectors lexicographically.
fn poly_order(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same_field(rhs);
        let fp = self.fp;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| fp.add(self.coeff(i), rhs.coeff(i)).value())
            .collect();
        Poly { fp, coeffs }.trim()
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let fp = self.fp;
        Poly {
            fp,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| fp.neg(fp.elem(c)).value())
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same_field(rhs);
        let fp = self.fp;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(fp);
        }
        let q = fp.modulus() as u128;
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % q;
            }
        }
        Poly {
            fp,
            coeffs: out.into_iter().map(|c| c as u64).collect(),
        }
        .trim()
    }
}

/// `unit · ∏ factor^mult`, factors monic irreducible and pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u64)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, fp: Fp) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(fp, self.unit), |acc, (p, m)| {
                &acc * &p.pow(*m)
            })
    }
}

/// `g(T)` with `g(T^p) = f(T)`; valid because Frobenius fixes `F_p`.
fn pth_root(f: &Poly) -> Poly {
    let p = f.fp.modulus() as usize;
    let coeffs = f.coeffs.iter().step_by(p).copied().collect();
    Poly { fp: f.fp, coeffs }.trim()
}

/// Square-free decomposition of a monic polynomial: pairs `(part, multiplicity)`
/// whose parts are square-free, pairwise coprime and multiply back to `f`.
fn squarefree(f: &Poly) -> Vec<(Poly, u64)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.fp.modulus();
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides f");
    let mut i = 1u64;
    while !w.is_one() {
        let y = w.gcd(&c);
        let part = w.div_exact(&y).expect("gcd divides w");
        if part.degree().unwrap_or(0) > 0 {
            out.push((part, i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides c");
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let fp = f.fp;
    let q = fp.modulus();
    let t = Poly::t(fp);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut h = t.rem(&rest).expect("nonzero modulus");
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(q, &rest).expect("nonzero modulus");
        let g = rest.gcd(&(&h - &t));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero modulus");
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return vec![f.clone()];
    }
    let fp = f.fp;
    let q = fp.modulus();
    loop {
        let a = Poly::from_coeffs(
            fp,
            &(0..deg).map(|_| rng.gen_range(0..q)).collect::<Vec<_>>(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q == 2 {
            // absolute trace F_{2^d} -> F_2
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = (&cur * &cur).rem(f).expect("nonzero modulus");
                acc = &acc + &cur;
            }
            acc
        } else {
            // norm to F_q, then the quadratic character
            let mut norm = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.pow_mod(q, f).expect("nonzero modulus");
                norm = (&norm * &cur).rem(f).expect("nonzero modulus");
            }
            &norm.pow_mod((q - 1) / 2, f).expect("nonzero modulus") - &Poly::one(fp)
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let other = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}
