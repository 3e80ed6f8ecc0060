//! Brute-force recomputation of `E_ge` and `K_ge` for small instances.

use crate::error::{Error, Result};
use crate::genus::{base_field, cyclotomic_part, narrow_genus, GenusInstance};
use crate::kummer::{ClassSpace, HowellForm, KummerClass, KummerSubgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_ell_n: u64,
    pub max_r: usize,
    /// Cap on the number of group elements scanned.
    pub max_elements: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_ell_n: 9,
            max_r: 3,
            max_elements: 1 << 16,
        }
    }
}

fn check_limits(inst: &GenusInstance, limits: &OracleLimits) -> Result<()> {
    if inst.field().ell_n() > limits.max_ell_n || inst.r() > limits.max_r {
        return Err(Error::OracleLimit(format!(
            "ℓ^n = {}, r = {} (limits {}, {})",
            inst.field().ell_n(),
            inst.r(),
            limits.max_ell_n,
            limits.max_r
        )));
    }
    Ok(())
}

fn add_scaled(space: &ClassSpace, acc: &mut [u64], x: &KummerClass, c: u64) {
    let m = space.ell_n() as u128;
    for (a, &v) in acc.iter_mut().zip(&x.0) {
        *a = ((*a as u128 + c as u128 * v as u128) % m) as u64;
    }
}

/// All elements of the span of `gens`, with repetitions removed.
fn elements(
    space: &ClassSpace,
    gens: &[KummerClass],
    limits: &OracleLimits,
) -> Result<Vec<KummerClass>> {
    let m = space.ell_n();
    let total = (m as u128).pow(gens.len() as u32);
    if total > limits.max_elements as u128 {
        return Err(Error::OracleLimit(format!("{total} combinations")));
    }
    let mut out = std::collections::BTreeSet::new();
    let mut coeffs = vec![0u64; gens.len()];
    loop {
        let mut v = vec![0u64; space.dim()];
        for (g, &c) in gens.iter().zip(&coeffs) {
            add_scaled(space, &mut v, g, c);
        }
        out.insert(KummerClass(v));
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return Ok(out.into_iter().collect());
            }
            coeffs[i] += 1;
            if coeffs[i] < m {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn ram_profile(space: &ClassSpace, c: &KummerClass) -> Vec<u64> {
    let mut v = vec![space.class_ram_infinity(c)];
    v.extend((1..=space.rank()).map(|j| space.class_ram_finite(c, j)));
    v
}

fn narrow_classes(inst: &GenusInstance) -> Result<Vec<KummerClass>> {
    narrow_genus(inst)
        .iter()
        .map(|f| inst.space().to_class(f))
        .collect()
}

/// The largest subgroup of `M = E_1 ⋯ E_r` containing the class of `D^*` and
/// ramified nowhere more than that class, found by scanning every element of `M`.
pub fn oracle_genus(inst: &GenusInstance, limits: &OracleLimits) -> Result<KummerSubgroup> {
    check_limits(inst, limits)?;
    let space = inst.space();
    let e = space.to_class(&cyclotomic_part(inst))?;
    let bound = ram_profile(space, &e);
    let mut s = space.subgroup_of_classes(vec![e]);
    for x in elements(space, &narrow_classes(inst)?, limits)? {
        if s.member(&x) {
            continue;
        }
        let ok = ram_profile(space, &x)
            .iter()
            .zip(&bound)
            .all(|(a, b)| a <= b);
        if ok {
            s = s.join(&space.subgroup_of_classes(vec![x]))?;
        }
    }
    let m = space.subgroup_of_classes(narrow_classes(inst)?);
    let e_grp = space.subgroup_of_classes(vec![space.to_class(&cyclotomic_part(inst))?]);
    for j in 1..=space.rank() {
        if s.ram_finite(j)? != e_grp.ram_finite(j)? {
            return Err(Error::Inconsistent(format!(
                "oracle subgroup ramifies at P{j}"
            )));
        }
    }
    if s.ram_infinity()? != e_grp.ram_infinity()? || !m.contains(&s) {
        return Err(Error::Inconsistent(
            "oracle subgroup is not admissible".into(),
        ));
    }
    Ok(s)
}

/// The largest subgroup of `M K` containing `K`, unramified over `K` at every
/// finite prime and with the same local image at infinity as `K` (so the
/// infinite places of `K` split completely).
pub fn oracle_k_genus(inst: &GenusInstance, limits: &OracleLimits) -> Result<KummerSubgroup> {
    check_limits(inst, limits)?;
    let space = inst.space();
    let kappa = space.to_class(&base_field(inst))?;
    let k_grp = space.subgroup_of_classes(vec![kappa.clone()]);
    let li = space.local_image(&kappa);
    let phi_k = HowellForm::new(space.ell(), space.n(), 2, &[vec![li.valuation, li.unit]]);
    let fin: Vec<u64> = (1..=space.rank())
        .map(|j| space.class_ram_finite(&kappa, j))
        .collect();
    let mut gens = narrow_classes(inst)?;
    gens.push(kappa);
    let mut s = k_grp.clone();
    for x in elements(space, &gens, limits)? {
        if s.member(&x) {
            continue;
        }
        let lx = space.local_image(&x);
        let ok = phi_k.contains(&[lx.valuation, lx.unit])
            && (1..=space.rank()).all(|j| space.class_ram_finite(&x, j) <= fin[j - 1]);
        if ok {
            s = s.join(&space.subgroup_of_classes(vec![x]))?;
        }
    }
    if s.local_image() != k_grp.local_image() {
        return Err(Error::Inconsistent(
            "oracle K_ge changes the local image".into(),
        ));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use crate::genus::{cyclotomic_genus, genus_field, GenusOptions, PrimeSpec};
    use crate::verify::checks::generator_subgroup;

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
    fn single_prime_gives_full_narrow_field() {
        let i = inst(19, 3, 2, 2, &[(4, 1)]);
        let s = oracle_genus(&i, &OracleLimits::default()).unwrap();
        let m = i.space().subgroup(&narrow_genus(&i)).unwrap();
        assert_eq!(s, m);
    }

    #[test]
    fn q13_degrees_1_2() {
        let i = inst(13, 3, 1, 2, &[(1, 1), (2, 1)]);
        let o = oracle_genus(&i, &OracleLimits::default()).unwrap();
        let cg = cyclotomic_genus(&i, &GenusOptions::default()).unwrap();
        assert_eq!(o, generator_subgroup(&i, &cg.generators).unwrap());
        let ok = oracle_k_genus(&i, &OracleLimits::default()).unwrap();
        let cert = genus_field(&i, &GenusOptions::default()).unwrap();
        assert_eq!(ok, generator_subgroup(&i, &cert.k_ge).unwrap());
    }

    #[test]
    fn ell2_n2_degrees_1_2() {
        let i = inst(13, 2, 2, 1, &[(1, 1), (2, 3)]);
        let o = oracle_genus(&i, &OracleLimits::default()).unwrap();
        let cg = cyclotomic_genus(&i, &GenusOptions::default()).unwrap();
        assert_eq!(o, generator_subgroup(&i, &cg.generators).unwrap());
    }

    #[test]
    fn refuses_large() {
        let i = inst(37, 3, 2, 1, &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        assert!(matches!(
            oracle_genus(&i, &OracleLimits::default()),
            Err(Error::OracleLimit(_))
        ));
    }
}
