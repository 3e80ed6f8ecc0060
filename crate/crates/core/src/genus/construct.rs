use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::instance::GenusInstance;
use crate::error::{Error, Result};
use crate::kummer::RadicalField;

/// Which row of the generator table produced a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorCase {
    /// `E_j = k(ℓ^{n-a_j}-th root of P_j^*)`.
    Narrow,
    /// `j < i0`: `P_j P_{i0}^{z_j}` under an `ℓ^{n-a_j}`-th root.
    BelowPivot,
    /// `j = i0`: `P_{i0}^*` under an `ℓ^{d_{i0}+t}`-th root.
    Pivot,
    /// `j > i0`, `d_j ≥ d_{i0}`: `P_j P_{i0}^{y_j ℓ^{d_j - d_{i0}}}` under an `ℓ^{n-a_j}`-th root.
    AbovePivot,
    /// `j > i0`, `d_j < d_{i0}`: `P_j^{ℓ^{d_{i0}-d_j}} P_{i0}^{y_j}` under an
    /// `ℓ^{n-a_j+d_{i0}-d_j}`-th root.
    AbovePivotLifted,
    /// `K` itself.
    Base,
}

/// A generator in raw form (exponents exactly as the formulas produce them)
/// and in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    /// The prime `j` of `E_j` or `F_j`; `None` for `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub case: GeneratorCase,
    pub raw: RadicalField,
    pub canonical: RadicalField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub m: u32,
    pub t: u32,
    pub i0: usize,
}

/// Choice of the representative `a` in `a deg P_{i0} + b ℓ^n = ℓ^{d_{i0}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum BezoutMode {
    /// `a` in `(-M/2, M/2]` with `M = ℓ^{n-d_{i0}}`.
    #[default]
    Balanced,
    /// `a` in `[0, M)`.
    LeastNonnegative,
    /// A caller-supplied pair; it must satisfy the identity.
    Explicit { a: BigInt, b: BigInt },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenusOptions {
    pub bezout: BezoutMode,
    /// Use this index as `i0` instead of the largest one attaining `m`.
    pub i0: Option<usize>,
}

/// Data shared by all generators of the pivot construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotData {
    pub i0: usize,
    pub a: BigInt,
    pub b: BigInt,
    /// `z_j = -a c_j ℓ^{d_j - d_{i0}}` for `j < i0`, unreduced.
    pub z: BTreeMap<usize, BigInt>,
    /// `y_j ≡ -c_j c_{i0}^{-1} (mod ℓ^n)` in `[0, ℓ^n)` for `j > i0`.
    pub y: BTreeMap<usize, BigInt>,
}

fn pow(ell: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(ell), e as usize)
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let eg = x.extended_gcd(m);
    eg.gcd.is_one().then(|| eg.x.mod_floor(m))
}

/// `m_j = n - a_j - min(n - a_j, d_j)` for each prime.
pub fn pivot_levels(inst: &GenusInstance) -> Vec<u32> {
    let n = inst.n();
    inst.primes()
        .iter()
        .map(|p| {
            let top = n - p.a;
            top - top.min(p.d)
        })
        .collect()
}

/// The narrow genus field `M = E_1 ⋯ E_r`.
pub fn narrow_genus(inst: &GenusInstance) -> Vec<RadicalField> {
    let fp = inst.field().fp();
    inst.primes()
        .iter()
        .map(|p| {
            RadicalField::new(
                inst.ell(),
                inst.n() - p.a,
                fp.sign(p.prime.degree % 2 == 1),
                [(p.prime.index, BigInt::one())],
            )
        })
        .collect()
}

/// `(m, t, i0)` with `i0` the largest index attaining `m`.
pub fn select_i0(inst: &GenusInstance) -> Selection {
    let levels = pivot_levels(inst);
    let m = levels.iter().copied().max().unwrap_or(0);
    let i0 = levels.iter().rposition(|&l| l == m).map_or(1, |i| i + 1);
    Selection { m, t: inst.t(), i0 }
}

fn select_with(inst: &GenusInstance, forced: Option<usize>) -> Result<Selection> {
    let mut sel = select_i0(inst);
    if let Some(i0) = forced {
        let levels = pivot_levels(inst);
        if i0 == 0 || i0 > inst.r() || levels[i0 - 1] != sel.m {
            return Err(Error::Domain(format!(
                "index {i0} does not attain m = {}",
                sel.m
            )));
        }
        sel.i0 = i0;
    }
    Ok(sel)
}

/// Solves `a deg P_{i0} + b ℓ^n = ℓ^{d_{i0}}`.
///
/// Needs `d_{i0} < n - a_{i0}`, which holds whenever `i0` attains `m > 0`.
pub fn bezout_l(inst: &GenusInstance, i0: usize, mode: &BezoutMode) -> Result<(BigInt, BigInt)> {
    let p = inst.prime(i0);
    let (ell, n) = (inst.ell(), inst.n());
    if p.d + p.a >= n {
        return Err(Error::Inconsistent(format!(
            "Bézout step needs d_i0 < n - a_i0 (i0 = {i0}, d = {}, a = {})",
            p.d, p.a
        )));
    }
    let deg = BigInt::from(p.prime.degree);
    let ell_n = pow(ell, n);
    let target = pow(ell, p.d);
    let modulus = pow(ell, n - p.d);
    let (a, b) = match mode {
        BezoutMode::Explicit { a, b } => (a.clone(), b.clone()),
        _ => {
            let inv = mod_inverse(&BigInt::from(p.c), &modulus)
                .ok_or_else(|| Error::Inconsistent("c_i0 is not a unit".into()))?;
            let a = if *mode == BezoutMode::Balanced && &inv * 2 > modulus {
                inv - &modulus
            } else {
                inv
            };
            let b = (&target - &a * &deg) / &ell_n;
            (a, b)
        }
    };
    if &a * &deg + &b * &ell_n != target {
        return Err(Error::InvalidInstance(format!(
            "({a}, {b}) does not solve a·{deg} + b·{ell_n} = {target}"
        )));
    }
    if (&a % BigInt::from(ell)).is_zero() {
        return Err(Error::Inconsistent(format!("a = {a} is divisible by ℓ")));
    }
    Ok((a, b))
}

/// `i0`, the Bézout pair and the `z_j`, `y_j`; `None` when `m = 0`.
pub fn pivot_data(inst: &GenusInstance, opts: &GenusOptions) -> Result<Option<PivotData>> {
    let sel = select_with(inst, opts.i0)?;
    if sel.m == 0 {
        return Ok(None);
    }
    let i0 = sel.i0;
    let (a, b) = bezout_l(inst, i0, &opts.bezout)?;
    let (ell, n) = (inst.ell(), inst.n());
    let piv = inst.prime(i0);
    let ell_n = pow(ell, n);
    let c0_inv = mod_inverse(&BigInt::from(piv.c), &ell_n)
        .ok_or_else(|| Error::Inconsistent("c_i0 is not a unit".into()))?;
    let mut z = BTreeMap::new();
    let mut y = BTreeMap::new();
    for p in inst.primes() {
        let j = p.prime.index;
        let c = BigInt::from(p.c);
        if j < i0 {
            if p.d < piv.d {
                return Err(Error::Inconsistent(format!(
                    "d_{j} = {} < d_i0 = {} for j < i0",
                    p.d, piv.d
                )));
            }
            z.insert(j, -&a * &c * pow(ell, p.d - piv.d));
        } else if j > i0 {
            y.insert(j, (-&c * &c0_inv).mod_floor(&ell_n));
        }
    }
    Ok(Some(PivotData { i0, a, b, z, y }))
}

fn sign_of_degree(inst: &GenusInstance, exps: &[(usize, BigInt)]) -> crate::ff::FieldElement {
    let deg: BigInt = exps
        .iter()
        .map(|(j, e)| e * BigInt::from(inst.prime(*j).prime.degree))
        .sum();
    inst.field().fp().sign(deg.is_odd())
}

fn generator(
    inst: &GenusInstance,
    label: String,
    index: Option<usize>,
    case: GeneratorCase,
    raw: RadicalField,
) -> Result<Generator> {
    let canonical = inst.space().canonicalize(&raw)?;
    Ok(Generator {
        label,
        index,
        case,
        raw,
        canonical,
    })
}

/// `E_1, …, E_r` as generators.
pub fn narrow_generators(inst: &GenusInstance) -> Result<Vec<Generator>> {
    narrow_genus(inst)
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            generator(
                inst,
                format!("E{}", i + 1),
                Some(i + 1),
                GeneratorCase::Narrow,
                f,
            )
        })
        .collect()
}

fn lookup(map: &BTreeMap<usize, BigInt>, name: char, j: usize) -> Result<BigInt> {
    map.get(&j)
        .cloned()
        .ok_or_else(|| Error::Inconsistent(format!("{name}_{j} missing")))
}

/// The pivot table: `F_j` for `j ≠ i0` and the pivot field with root order
/// `ℓ^{pivot_root_exp}` (left out when that is `ℓ^0`).
pub fn pivot_generators(
    inst: &GenusInstance,
    piv: &PivotData,
    pivot_root_exp: u32,
) -> Result<Vec<Generator>> {
    let (ell, n) = (inst.ell(), inst.n());
    let i0 = piv.i0;
    let p0 = inst.prime(i0);
    let mut out = Vec::new();
    for p in inst.primes() {
        let j = p.prime.index;
        let (case, root_exp, exps) = if j < i0 {
            (
                GeneratorCase::BelowPivot,
                n - p.a,
                vec![(j, BigInt::one()), (i0, lookup(&piv.z, 'z', j)?)],
            )
        } else if j == i0 {
            if pivot_root_exp == 0 {
                continue;
            }
            (
                GeneratorCase::Pivot,
                pivot_root_exp,
                vec![(i0, BigInt::one())],
            )
        } else if p.d >= p0.d {
            (
                GeneratorCase::AbovePivot,
                n - p.a,
                vec![
                    (j, BigInt::one()),
                    (i0, lookup(&piv.y, 'y', j)? * pow(ell, p.d - p0.d)),
                ],
            )
        } else {
            let lift = p0.d - p.d;
            let root_exp = (n - p.a) + lift;
            if root_exp > n {
                return Err(Error::Inconsistent(format!(
                    "root order ℓ^{root_exp} for F_{j} exceeds ℓ^n"
                )));
            }
            (
                GeneratorCase::AbovePivotLifted,
                root_exp,
                vec![(j, pow(ell, lift)), (i0, lookup(&piv.y, 'y', j)?)],
            )
        };
        let raw = RadicalField::new(ell, root_exp, sign_of_degree(inst, &exps), exps);
        out.push(generator(inst, format!("F{j}"), Some(j), case, raw)?);
    }
    Ok(out)
}

/// `K = k(ℓ^n-th root of γD)`.
pub fn base_field(inst: &GenusInstance) -> RadicalField {
    RadicalField::new(
        inst.ell(),
        inst.n(),
        inst.gamma(),
        inst.primes()
            .iter()
            .map(|p| (p.prime.index, BigInt::from(p.exponent))),
    )
}

pub fn base_generator(inst: &GenusInstance) -> Result<Generator> {
    generator(
        inst,
        "K".into(),
        None,
        GeneratorCase::Base,
        base_field(inst),
    )
}

/// Class-level stand-in for `E = K_u ∩ k(Λ_D)`: the field of `D^*`.
pub fn cyclotomic_part(inst: &GenusInstance) -> RadicalField {
    let exps: Vec<(usize, BigInt)> = inst
        .primes()
        .iter()
        .map(|p| (p.prime.index, BigInt::from(p.exponent)))
        .collect();
    RadicalField::new(inst.ell(), inst.n(), sign_of_degree(inst, &exps), exps)
}

/// Generators of the cyclotomic genus field `E_ge` together with the pivot data used.
#[derive(Clone, Debug)]
pub struct CyclotomicGenus {
    pub selection: Selection,
    pub pivot: Option<PivotData>,
    pub generators: Vec<Generator>,
}

/// `E_ge`: equal to `M` when `m = t`, otherwise the pivot table with
/// `e_∞ = ℓ^t`.
pub fn cyclotomic_genus(inst: &GenusInstance, opts: &GenusOptions) -> Result<CyclotomicGenus> {
    let selection = select_with(inst, opts.i0)?;
    let pivot = pivot_data(inst, opts)?;
    let generators = if selection.m == selection.t {
        narrow_generators(inst)?
    } else {
        let piv = pivot.as_ref().expect("m > t ≥ 0");
        let root = inst.prime(piv.i0).d + selection.t;
        pivot_generators(inst, piv, root)?
    };
    Ok(CyclotomicGenus {
        selection,
        pivot,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::super::instance::PrimeSpec;
    use super::*;
    use crate::ff::PrimeField;
    use proptest::prelude::*;

    fn inst(q: u64, ell: u64, n: u32, gamma: u64, data: &[(u64, u64)]) -> GenusInstance {
        let field = PrimeField::new(q, ell, n).unwrap();
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
    fn narrow_root_orders() {
        let i = inst(19, 3, 2, 1, &[(1, 1), (2, 3)]);
        let m = narrow_genus(&i);
        assert_eq!(m[0].root_exp, 2);
        assert_eq!(m[1].root_exp, 1);
        assert_eq!(m[1].const_part.value(), 1);
        let single = inst(13, 3, 1, 1, &[(5, 1)]);
        let e = narrow_genus(&single);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].root_exp, 1);
        assert_eq!(e[0].const_part.value(), 12);
    }

    #[test]
    fn single_prime_has_m_equal_t() {
        for (deg, e) in [(1, 1), (3, 1), (9, 2), (6, 4), (2, 8)] {
            let i = inst(19, 3, 2, 1, &[(deg, e)]);
            let sel = select_i0(&i);
            assert_eq!(sel.m, sel.t, "deg {deg}, α {e}");
            assert_eq!(sel.i0, 1);
            let cg = cyclotomic_genus(&i, &GenusOptions::default()).unwrap();
            assert_eq!(cg.generators.len(), 1);
            assert_eq!(cg.generators[0].case, GeneratorCase::Narrow);
        }
    }

    #[test]
    fn bezout_degree_one() {
        let i = inst(37, 3, 2, 1, &[(1, 1), (3, 1)]);
        let piv = pivot_data(&i, &GenusOptions::default()).unwrap().unwrap();
        assert_eq!(piv.i0, 1);
        assert_eq!((piv.a, piv.b), (BigInt::one(), BigInt::zero()));
    }

    #[test]
    fn bezout_rejects_wrong_pair() {
        let i = inst(37, 3, 2, 1, &[(1, 1), (3, 1)]);
        let mode = BezoutMode::Explicit {
            a: BigInt::from(2),
            b: BigInt::zero(),
        };
        assert!(bezout_l(&i, 1, &mode).is_err());
    }

    #[test]
    fn forced_pivot_must_attain_m() {
        let i = inst(37, 3, 2, 1, &[(1, 1), (3, 1)]);
        let opts = GenusOptions {
            i0: Some(2),
            ..Default::default()
        };
        assert!(cyclotomic_genus(&i, &opts).is_err());
    }

    proptest! {
        #[test]
        fn bezout_identity(c in 1u64..200, d in 0u32..4, n_extra in 1u32..4, balanced in any::<bool>()) {
            prop_assume!(c % 3 != 0);
            let n = d + n_extra;
            // ℓ^n | q - 1 is needed for the field; pick q = 2·3^n·k + 1 prime
            let q = (1..).map(|k| 2 * 3u64.pow(n) * k + 1).find(|&q| crate::ff::is_prime_u64(q)).unwrap();
            let i = inst(q, 3, n, 1, &[(c * 3u64.pow(d), 1)]);
            let mode = if balanced { BezoutMode::Balanced } else { BezoutMode::LeastNonnegative };
            let (a, b) = bezout_l(&i, 1, &mode).unwrap();
            let lhs = &a * BigInt::from(c * 3u64.pow(d)) + &b * pow(3, n);
            prop_assert_eq!(lhs, pow(3, d));
            let m = pow(3, n - d);
            if balanced {
                prop_assert!(&a * 2 > -m.clone() && &a * 2 <= m);
            } else {
                prop_assert!(a >= BigInt::zero() && a < m);
            }
        }

        #[test]
        fn i0_condition(data in prop::collection::vec((1u64..30, 1u64..9), 1..5)) {
            let mut data = data;
            data[0].1 = 1;
            let i = inst(19, 3, 2, 1, &data);
            let sel = select_i0(&i);
            let levels = pivot_levels(&i);
            prop_assert_eq!(levels[sel.i0 - 1], sel.m);
            prop_assert!(sel.t <= sel.m);
            if sel.m > sel.t {
                for p in &i.primes()[sel.i0..] {
                    prop_assert!((2 - p.a) as i64 - (p.d as i64) < sel.m as i64);
                }
            }
        }
    }
}
