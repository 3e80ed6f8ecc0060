//! The worked 8-prime example over `F_472393` with `ℓ = 3`, `n = 10`, `γ = 5`.

use num_bigint::BigInt;

use super::checks::generator_subgroup;
use super::report::CheckReport;
use crate::error::Result;
use crate::ff::PrimeField;
use crate::genus::{
    genus_field, BezoutMode, GeneratorCase, GenusCertificate, GenusInstance, GenusOptions,
    PrimeSpec,
};

/// Instance data and the expected certificate values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenExample {
    pub q: u64,
    pub ell: u64,
    pub n: u32,
    pub gamma: u64,
    /// `(deg P_j, α_j)` for `j = 1..=8`.
    pub primes: Vec<(u64, u64)>,
    pub deg_d: u64,
    pub nu: u32,
    pub t: u32,
    pub m: u32,
    pub i0: usize,
    pub a: i64,
    pub b: i64,
    pub y: Vec<(usize, u64)>,
    /// Raw exponent of `P_{i0}` in `F_j`, `j ≠ i0`.
    pub pivot_exponents: Vec<(usize, u64)>,
    /// Exponent of `P_j` in `F_j` where it is not 1.
    pub own_exponents: Vec<(usize, u64)>,
    /// `log_3` of the root orders of `F_1, …, F_8` in `E_ge`.
    pub root_exps: Vec<u32>,
    pub d: u32,
    pub alpha: u32,
    /// `log_3` of the root order of the last pivot generator of `K_ge`.
    pub final_root_exp: u32,
}

impl GoldenExample {
    fn base() -> Self {
        // deg P_j = c_j 3^{d_j}, α_j = b_j 3^{a_j}
        let degs = [486, 2187, 45, 27, 45, 1, 59049, 1];
        let alphas = [1, 3, 135, 27, 81, 2187, 6561, 19683];
        GoldenExample {
            q: 472393,
            ell: 3,
            n: 10,
            gamma: 5,
            primes: degs.into_iter().zip(alphas).collect(),
            deg_d: 387459855,
            nu: 8,
            t: 2,
            m: 5,
            i0: 3,
            a: -1312,
            b: 1,
            y: vec![(4, 47239), (5, 59048), (6, 47239), (7, 47239), (8, 47239)],
            pivot_exponents: vec![
                (1, 70848),
                (2, 318816),
                (4, 141717),
                (5, 59048),
                (6, 47239),
                (7, 309935079),
                (8, 47239),
            ],
            own_exponents: vec![(6, 9), (8, 9)],
            root_exps: vec![10, 9, 4, 7, 6, 5, 2, 3],
            d: 8,
            alpha: 2,
            final_root_exp: 2,
        }
    }

    /// The values exactly as published.
    pub fn as_published() -> Self {
        Self::base()
    }

    /// The published values with `ν_3(deg D)` recomputed:
    /// `387459855 = 2·3^9 + 3^18`, so `ν = d = 9`, `t = 1`, `α = 1` and `F_3`
    /// has root order `3^3`. The final generator is unchanged.
    pub fn corrected() -> Self {
        let mut g = Self::base();
        g.nu = 9;
        g.d = 9;
        g.t = 1;
        g.alpha = 1;
        g.root_exps[2] = 3;
        g
    }

    pub fn instance(&self) -> Result<GenusInstance> {
        let field = PrimeField::new(self.q, self.ell, self.n)?;
        GenusInstance::from_factors(
            field,
            field.elem(self.gamma),
            self.primes
                .iter()
                .map(|&(degree, e)| (PrimeSpec::Abstract { degree }, e))
                .collect(),
        )
    }

    pub fn certificate(&self, opts: &GenusOptions) -> Result<GenusCertificate> {
        genus_field(&self.instance()?, opts)
    }

    /// Field-by-field comparison: `(name, expected, actual)` for every compared value.
    pub fn compare(&self, cert: &GenusCertificate) -> Vec<(String, String, String)> {
        let mut rows = Vec::new();
        let mut put = |name: String, want: String, got: String| rows.push((name, want, got));
        put(
            "degD".into(),
            self.deg_d.to_string(),
            cert.deg_d.to_string(),
        );
        put("nu".into(), self.nu.to_string(), cert.nu.to_string());
        put("t".into(), self.t.to_string(), cert.t.to_string());
        put("m".into(), self.m.to_string(), cert.m.to_string());
        put("i0".into(), self.i0.to_string(), cert.i0.to_string());
        let (a, b) = cert.bezout.as_ref().map_or(("-".into(), "-".into()), |bz| {
            (bz.a.to_string(), bz.b.to_string())
        });
        put("a".into(), self.a.to_string(), a);
        put("b".into(), self.b.to_string(), b);
        for (j, v) in &self.y {
            let got = cert.y.get(j).map_or("-".into(), |x| x.to_string());
            put(format!("y{j}"), v.to_string(), got);
        }
        let ge = |j: usize| cert.e_ge.iter().find(|g| g.index == Some(j));
        for (j, v) in &self.pivot_exponents {
            let got = ge(*j).map_or("-".into(), |g| g.raw.exponent(self.i0).to_string());
            put(format!("F{j}.P{}", self.i0), v.to_string(), got);
        }
        for (j, v) in &self.own_exponents {
            let got = ge(*j).map_or("-".into(), |g| g.raw.exponent(*j).to_string());
            put(format!("F{j}.P{j}"), v.to_string(), got);
        }
        for (k, v) in self.root_exps.iter().enumerate() {
            let j = k + 1;
            let got = ge(j).map_or("-".into(), |g| format!("3^{}", g.raw.root_exp));
            put(format!("F{j}.root"), format!("3^{v}"), got);
        }
        put("d".into(), self.d.to_string(), cert.d.to_string());
        put(
            "alpha".into(),
            self.alpha.to_string(),
            cert.alpha.to_string(),
        );
        let last = cert
            .k_ge
            .iter()
            .find(|g| g.case == GeneratorCase::Pivot)
            .map_or("-".into(), |g| {
                format!("3^{} on P{}", g.raw.root_exp, g.index.unwrap_or(0))
            });
        put(
            "final".into(),
            format!("3^{} on P{}", self.final_root_exp, self.i0),
            last,
        );
        rows
    }
}

/// Rebuilds the example and compares every listed value.
pub fn reproduce_example(golden: &GoldenExample) -> CheckReport {
    let cert = match golden.certificate(&GenusOptions::default()) {
        Ok(c) => c,
        Err(e) => return CheckReport::fail("golden.reproduce", e.to_string()),
    };
    let rows = golden.compare(&cert);
    let diff: Vec<String> = rows
        .iter()
        .filter(|(_, want, got)| want != got)
        .map(|(name, want, got)| format!("{name}: expected {want}, got {got}"))
        .collect();
    if diff.is_empty() {
        CheckReport::pass("golden.reproduce", format!("{} values match", rows.len()))
    } else {
        CheckReport::fail("golden.reproduce", diff.join("; "))
    }
}

/// The two alternative constructions of the example: least nonnegative
/// Bézout representative and `i0` forced to 1. Both must give the same fields.
pub fn reproduce_example_variants(golden: &GoldenExample) -> Vec<CheckReport> {
    let run = || -> Result<Vec<CheckReport>> {
        let inst = golden.instance()?;
        let base = genus_field(&inst, &GenusOptions::default())?;
        let same = |other: &GenusCertificate| -> Result<bool> {
            Ok(
                generator_subgroup(&inst, &base.e_ge)? == generator_subgroup(&inst, &other.e_ge)?
                    && generator_subgroup(&inst, &base.k_ge)?
                        == generator_subgroup(&inst, &other.k_ge)?,
            )
        };
        let mut out = Vec::new();

        let lnn = genus_field(
            &inst,
            &GenusOptions {
                bezout: BezoutMode::LeastNonnegative,
                i0: None,
            },
        )?;
        let a = lnn.bezout.as_ref().map(|b| b.a.0.clone());
        let z_differ = lnn.z != base.z;
        let ok = a == Some(BigInt::from(5249)) && z_differ && same(&lnn)?;
        out.push(CheckReport::new(
            "golden.bezout_least_nonnegative",
            ok,
            format!(
                "a = {}, z differ: {z_differ}, same subgroups: {}",
                a.map_or("-".into(), |a| a.to_string()),
                same(&lnn)?
            ),
        ));

        let forced = genus_field(
            &inst,
            &GenusOptions {
                bezout: BezoutMode::Balanced,
                i0: Some(1),
            },
        )?;
        out.push(CheckReport::new(
            "golden.i0_forced_to_1",
            same(&forced)?,
            format!("i0 = {}, same subgroups: {}", forced.i0, same(&forced)?),
        ));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![CheckReport::fail("golden.variants", e.to_string())])
}
