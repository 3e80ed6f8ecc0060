use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::howell::HowellForm;
use super::radical::RadicalField;
use super::{big_gcd_order, big_pow};
use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};

/// The ambient Kummer group of an instance: constants and the primes `P_1 … P_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpace {
    field: PrimeField,
    degrees: Vec<u64>,
    /// Class of `-1` in `F_q^*/(F_q^*)^{ℓ^n}`.
    minus_one: u64,
}

/// Coordinates of a class in `Z/ℓ^n × (Z/ℓ^n)^r`: entry 0 is the constant
/// (as a log to the canonical quotient generator), entry `j` the exponent of `P_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KummerClass(pub Vec<u64>);

impl KummerClass {
    pub fn const_log(&self) -> u64 {
        self.0[0]
    }

    pub fn exponent(&self, index: usize) -> u64 {
        self.0[index]
    }
}

/// Image of a class in the local Kummer group at infinity, `Z/ℓ^n × Z/ℓ^n`:
/// the degree valuation and the class of the leading unit for the uniformizer `-1/T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalImage {
    pub valuation: u64,
    pub unit: u64,
}

fn order_in(x: u64, ell: u64, n: u32) -> u64 {
    let m = ell.pow(n);
    m / x.gcd(&m)
}

impl ClassSpace {
    pub fn new(field: PrimeField, degrees: Vec<u64>) -> Result<Self> {
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::InvalidInstance("prime of degree 0".into()));
        }
        let minus_one = field.class_log(field.fp().neg(field.fp().one()))?;
        Ok(ClassSpace {
            field,
            degrees,
            minus_one,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ell(&self) -> u64 {
        self.field.ell()
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn ell_n(&self) -> u64 {
        self.field.ell_n()
    }

    /// Number of primes `r`.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Length of a class vector, `r + 1`.
    pub fn dim(&self) -> usize {
        self.degrees.len() + 1
    }

    pub fn degree(&self, index: usize) -> u64 {
        self.degrees[index - 1]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Rejects fields that do not live over this space.
    pub fn check(&self, f: &RadicalField) -> Result<()> {
        if f.ell != self.ell() {
            return Err(Error::Domain(format!(
                "radical field over ℓ = {} used with ℓ = {}",
                f.ell,
                self.ell()
            )));
        }
        if f.root_exp > self.n() {
            return Err(Error::Domain(format!(
                "root order {}^{} exceeds ℓ^n",
                f.ell, f.root_exp
            )));
        }
        if f.const_part.is_zero() || f.const_part.value() >= self.field.q() {
            return Err(Error::Domain(format!(
                "constant {} is not a unit of F_{}",
                f.const_part,
                self.field.q()
            )));
        }
        if let Some(j) = f.exponents.keys().find(|&&j| j == 0 || j > self.rank()) {
            return Err(Error::Domain(format!("no prime P{j} in this instance")));
        }
        Ok(())
    }

    /// `deg` of the radicand, `Σ e_j deg P_j` (the constant has degree 0).
    pub fn radicand_degree(&self, f: &RadicalField) -> BigInt {
        f.exponents
            .iter()
            .map(|(&j, e)| e * BigInt::from(self.degree(j)))
            .sum()
    }

    /// `e_P(f/k) = ℓ^s / gcd(e_P, ℓ^s)`.
    pub fn ram_index_finite(&self, f: &RadicalField, index: usize) -> u64 {
        big_gcd_order(&f.exponent(index), f.ell, f.root_exp)
    }

    /// `e_∞(f/k) = ℓ^s / gcd(deg radicand, ℓ^s)`.
    pub fn ram_index_infinity(&self, f: &RadicalField) -> u64 {
        big_gcd_order(&self.radicand_degree(f), f.ell, f.root_exp)
    }

    /// Class of `f`, rescaled to root order `ℓ^n`.
    pub fn to_class(&self, f: &RadicalField) -> Result<KummerClass> {
        self.check(f)?;
        let m = self.ell_n();
        let scale = self.ell().pow(self.n() - f.root_exp);
        let mut v = vec![0u64; self.dim()];
        if f.is_trivial() {
            return Ok(KummerClass(v));
        }
        let c = self.field.class_log(f.const_part)?;
        v[0] = ((c as u128 * scale as u128) % m as u128) as u64;
        let ls = big_pow(self.ell(), f.root_exp);
        for (&j, e) in &f.exponents {
            let red = e.mod_floor(&ls).to_u64().expect("reduced below ℓ^s");
            v[j] = ((red as u128 * scale as u128) % m as u128) as u64;
        }
        Ok(KummerClass(v))
    }

    /// Same field with exponents reduced into `[0, ℓ^s)` and the constant
    /// replaced by the canonical representative `g^{log mod ℓ^s}`.
    pub fn canonicalize(&self, f: &RadicalField) -> Result<RadicalField> {
        self.check(f)?;
        let fp = self.field.fp();
        if f.is_trivial() {
            return Ok(RadicalField::new(f.ell, 0, fp.one(), []));
        }
        let ls = big_pow(self.ell(), f.root_exp);
        let log = self.field.class_log(f.const_part)? % self.ell().pow(f.root_exp);
        let c = fp.modpow(self.field.quotient_generator(), log);
        Ok(RadicalField::new(
            f.ell,
            f.root_exp,
            c,
            f.exponents.iter().map(|(&j, e)| (j, e.mod_floor(&ls))),
        ))
    }

    /// Field `k(ℓ^n-th root of x)` for a class `x`, in canonical form.
    pub fn class_to_field(&self, c: &KummerClass) -> RadicalField {
        let fp = self.field.fp();
        RadicalField::new(
            self.ell(),
            self.n(),
            fp.modpow(self.field.quotient_generator(), c.const_log()),
            c.0.iter()
                .enumerate()
                .skip(1)
                .map(|(j, &e)| (j, BigInt::from(e))),
        )
    }

    /// Class of `c · ∏ P_j^{e_j}` at root order `ℓ^n`.
    pub fn radicand_class(&self, c: FieldElement, exps: &[(usize, BigInt)]) -> Result<KummerClass> {
        self.to_class(&RadicalField::new(
            self.ell(),
            self.n(),
            c,
            exps.iter().cloned(),
        ))
    }

    /// `e_P` of the cyclic field generated by a class.
    pub fn class_ram_finite(&self, c: &KummerClass, index: usize) -> u64 {
        order_in(c.exponent(index), self.ell(), self.n())
    }

    pub fn class_valuation(&self, c: &KummerClass) -> u64 {
        let m = self.ell_n() as u128;
        c.0.iter()
            .skip(1)
            .zip(&self.degrees)
            .fold(0u128, |acc, (&e, &d)| {
                (acc + e as u128 * (d as u128 % m)) % m
            }) as u64
    }

    /// `e_∞` of the cyclic field generated by a class.
    pub fn class_ram_infinity(&self, c: &KummerClass) -> u64 {
        order_in(self.class_valuation(c), self.ell(), self.n())
    }

    /// Local class at infinity: `x = lc(x) T^{deg x} (1 + O(1/T))`, and with the
    /// uniformizer `π = -1/T` the unit part is `lc(x) · (-1)^{deg x}`.
    pub fn local_image(&self, c: &KummerClass) -> LocalImage {
        let m = self.ell_n() as u128;
        let v = self.class_valuation(c);
        let unit = (c.const_log() as u128 + self.minus_one as u128 * v as u128) % m;
        LocalImage {
            valuation: v,
            unit: unit as u64,
        }
    }

    pub fn subgroup(&self, gens: &[RadicalField]) -> Result<KummerSubgroup> {
        let classes = gens
            .iter()
            .map(|f| self.to_class(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup_of_classes(classes))
    }

    pub fn subgroup_of_classes(&self, generators: Vec<KummerClass>) -> KummerSubgroup {
        for g in &generators {
            assert_eq!(g.0.len(), self.dim(), "class from a different instance");
        }
        let rows: Vec<Vec<u64>> = generators.iter().map(|g| g.0.clone()).collect();
        KummerSubgroup {
            howell: HowellForm::new(self.ell(), self.n(), self.dim(), &rows),
            generators,
            space: self.clone(),
        }
    }
}

/// A subgroup of the instance's Kummer group, i.e. a compositum of radical fields.
#[derive(Clone, Debug)]
pub struct KummerSubgroup {
    generators: Vec<KummerClass>,
    howell: HowellForm,
    space: ClassSpace,
}

/// Equality of subgroups, i.e. of the fields they cut out; generators are ignored.
impl PartialEq for KummerSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.howell == other.howell
    }
}

impl Eq for KummerSubgroup {}

impl KummerSubgroup {
    pub fn generators(&self) -> &[KummerClass] {
        &self.generators
    }

    pub fn howell(&self) -> &HowellForm {
        &self.howell
    }

    pub fn space(&self) -> &ClassSpace {
        &self.space
    }

    /// Basis rows of the normal form as classes.
    pub fn basis(&self) -> Vec<KummerClass> {
        self.howell
            .rows()
            .iter()
            .cloned()
            .map(KummerClass)
            .collect()
    }

    pub fn member(&self, c: &KummerClass) -> bool {
        self.howell.contains(&c.0)
    }

    pub fn contains(&self, other: &KummerSubgroup) -> bool {
        other.howell.rows().iter().all(|r| self.howell.contains(r))
    }

    /// `log_ℓ` of the order, i.e. of `[compositum : k]` on this Kummer data.
    pub fn order_log(&self) -> u32 {
        self.howell.log_order()
    }

    pub fn order(&self) -> BigInt {
        big_pow(self.space.ell(), self.order_log())
    }

    pub fn join(&self, other: &KummerSubgroup) -> Result<KummerSubgroup> {
        if self.space != other.space {
            return Err(Error::Domain("subgroups over different instances".into()));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(self.space.subgroup_of_classes(gens))
    }

    fn projection_order(&self, f: impl Fn(&[u64]) -> u64) -> u64 {
        let s = &self.space;
        let col: Vec<Vec<u64>> = self.howell.rows().iter().map(|r| vec![f(r)]).collect();
        s.ell()
            .pow(HowellForm::new(s.ell(), s.n(), 1, &col).log_order())
    }

    /// `e_P` of the compositum at `P_index`, as the lcm over generators and as the
    /// order of the valuation image; the two must agree.
    pub fn ram_finite(&self, index: usize) -> Result<u64> {
        let s = &self.space;
        let lcm = self
            .generators
            .iter()
            .map(|g| s.class_ram_finite(g, index))
            .fold(1u64, |a, b| a.lcm(&b));
        let image = self.projection_order(|r| r[index]);
        if lcm != image {
            return Err(Error::Inconsistent(format!(
                "e_P{index}: lcm path {lcm} vs valuation path {image}"
            )));
        }
        Ok(lcm)
    }

    /// `e_∞` of the compositum, by both paths.
    pub fn ram_infinity(&self) -> Result<u64> {
        let s = &self.space;
        let lcm = self
            .generators
            .iter()
            .map(|g| s.class_ram_infinity(g))
            .fold(1u64, |a, b| a.lcm(&b));
        let image = self.projection_order(|r| s.class_valuation(&KummerClass(r.to_vec())));
        if lcm != image {
            return Err(Error::Inconsistent(format!(
                "e_∞: lcm path {lcm} vs valuation path {image}"
            )));
        }
        Ok(lcm)
    }

    /// Normal form of the local image at infinity. Its order is the size of the
    /// decomposition group of the infinite place in the compositum.
    pub fn local_image(&self) -> HowellForm {
        let s = &self.space;
        let rows: Vec<Vec<u64>> = self
            .howell
            .rows()
            .iter()
            .map(|r| {
                let li = s.local_image(&KummerClass(r.clone()));
                vec![li.valuation, li.unit]
            })
            .collect();
        HowellForm::new(s.ell(), s.n(), 2, &rows)
    }

    /// `log_ℓ` of the inertia degree `f_∞` of the compositum over `k`.
    pub fn residue_degree_log(&self) -> Result<u32> {
        let e = self.ram_infinity()?;
        Ok(self.local_image().log_order() - val_ell(e, self.space.ell()))
    }

    /// Elements with `e_∞ ≤ ℓ^j`.
    pub fn with_infinity_ram_at_most(&self, j: u32) -> KummerSubgroup {
        let s = &self.space;
        let n = s.n();
        if j >= n {
            return self.clone();
        }
        // kernel of x ↦ v(x) mod ℓ^{n-j}: solve over the normal-form basis by
        // enumerating the cyclic image
        let basis = self.basis();
        let modulus = s.ell().pow(n - j);
        let vals: Vec<u64> = basis
            .iter()
            .map(|b| s.class_valuation(b) % modulus)
            .collect();
        // Pick the basis element whose valuation has the smallest ℓ-adic valuation,
        // then correct every other element by a multiple of it.
        let m = s.ell_n();
        let mut gens = Vec::new();
        let pivot = vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .min_by_key(|(_, &v)| val_ell(v, s.ell()))
            .map(|(i, _)| i);
        match pivot {
            None => return self.clone(),
            Some(p) => {
                let vp = vals[p];
                let kp = val_ell(vp, s.ell());
                let lk = s.ell().pow(kp);
                let unit_inv = inv_mod(vp / lk, modulus);
                for (i, b) in basis.iter().enumerate() {
                    if i == p {
                        continue;
                    }
                    // vals[i] = c · vp (mod ℓ^{n-j}) with c = (vals[i]/ℓ^kp)·unit^{-1}
                    let c = ((vals[i] / lk) as u128 * unit_inv as u128 % modulus as u128) as u64;
                    gens.push(KummerClass(
                        b.0.iter()
                            .zip(&basis[p].0)
                            .map(|(&x, &y)| {
                                ((x as u128 + (m - c % m) as u128 * y as u128) % m as u128) as u64
                            })
                            .collect(),
                    ));
                }
                // ℓ^{n-j-kp} · basis[p] has valuation ≡ 0 mod ℓ^{n-j}
                let mult = s.ell().pow((n - j).saturating_sub(kp));
                gens.push(KummerClass(
                    basis[p]
                        .0
                        .iter()
                        .map(|&y| ((y as u128 * mult as u128) % m as u128) as u64)
                        .collect(),
                ));
            }
        }
        s.subgroup_of_classes(gens)
    }
}

/// `ν_ℓ(x)` for `x ≠ 0`.
fn val_ell(mut x: u64, ell: u64) -> u32 {
    let mut k = 0;
    while x != 0 && x % ell == 0 {
        x /= ell;
        k += 1;
    }
    k
}

fn inv_mod(x: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let eg = (x as i128).extended_gcd(&(m as i128));
    eg.x.rem_euclid(m as i128) as u64
}
