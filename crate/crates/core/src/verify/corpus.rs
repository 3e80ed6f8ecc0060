//! Fixed instance corpora and the suites run over them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::checks::{check_certificate, generator_subgroup};
use super::degree_order::check_prop31;
use super::golden::{reproduce_example, reproduce_example_variants, GoldenExample};
use super::mutation::{mutation_outcomes, MutationSummary};
use super::oracle::{oracle_genus, oracle_k_genus, OracleLimits};
use super::random::{field_for, random_instance, RandomParams};
use super::report::CheckReport;
use crate::error::Result;
use crate::ff::{Fp, PrimeField};
use crate::genus::{
    cyclotomic_genus, genus_field, peng_n1, GenusInstance, GenusOptions, PrimeSpec,
};
use crate::poly::Poly;

/// Outcome of running one suite over a corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn report(&self) -> CheckReport {
        let mut details = format!(
            "{} instances, {} failures",
            self.instances,
            self.failures.len()
        );
        for f in self.failures.iter().take(5) {
            details.push_str("; ");
            details.push_str(f);
        }
        CheckReport::new(self.name.clone(), self.passed(), details)
    }
}

fn describe(inst: &GenusInstance) -> String {
    let primes: Vec<String> = inst
        .primes()
        .iter()
        .map(|p| format!("{}^{}", p.prime.degree, p.exponent))
        .collect();
    format!(
        "q={} ℓ={} n={} γ={} [{}]",
        inst.field().q(),
        inst.ell(),
        inst.n(),
        inst.gamma().value(),
        primes.join(" ")
    )
}

fn abstract_instance(
    q: u64,
    ell: u64,
    n: u32,
    gamma: u64,
    data: &[(u64, u64)],
) -> Result<GenusInstance> {
    let field = PrimeField::new(q, ell, n)?;
    GenusInstance::from_factors(
        field,
        field.elem(gamma),
        data.iter()
            .map(|&(degree, e)| (PrimeSpec::Abstract { degree }, e))
            .collect(),
    )
}

/// Instances with `ℓ^n ∈ {2, 3, 4, 9}`, degrees `≤ 6` over `q ∈ {13, 19, 37}`:
/// every instance with `r ≤ 2`, plus seeded draws with `r = 3`.
pub fn oracle_corpus(seed: u64, per_config_r3: usize) -> Vec<GenusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut counter = 0u64;
    for (ell, n) in [(2u64, 1u32), (3, 1), (2, 2), (3, 2)] {
        for q in [13u64, 19, 37] {
            if PrimeField::new(q, ell, n).is_err() {
                continue;
            }
            let ell_n = ell.pow(n);
            let mut gamma = || {
                counter += 1;
                1 + (counter * 7) % (q - 1)
            };
            let pairs: Vec<(u64, u64)> = (1..=6u64)
                .flat_map(|deg| (1..ell_n).map(move |e| (deg, e)))
                .collect();
            for &p in &pairs {
                if p.1 % ell != 0 {
                    out.extend(abstract_instance(q, ell, n, gamma(), &[p]));
                }
            }
            for (i, &p1) in pairs.iter().enumerate() {
                for &p2 in &pairs[i..] {
                    if p1.1 % ell != 0 || p2.1 % ell != 0 {
                        out.extend(abstract_instance(q, ell, n, gamma(), &[p1, p2]));
                    }
                }
            }
            let params = RandomParams {
                q,
                ell,
                n,
                max_r: 3,
                max_deg: 6,
            };
            let mut drawn = 0;
            while drawn < per_config_r3 {
                if let Ok(inst) = random_instance(&params, &mut rng) {
                    if inst.r() == 3 {
                        out.push(inst);
                        drawn += 1;
                    }
                }
            }
        }
    }
    out
}

/// Seeded `n = 1` instances over `q ∈ {13, 19, 31}`.
pub fn peng_corpus(seed: u64, count: usize) -> Vec<GenusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs = [
        (13u64, 2u64),
        (13, 3),
        (19, 2),
        (19, 3),
        (31, 2),
        (31, 3),
        (31, 5),
    ];
    (0..count)
        .map(|_| {
            let (q, ell) = configs[rng.gen_range(0..configs.len())];
            let params = RandomParams {
                q,
                ell,
                n: 1,
                max_r: 4,
                max_deg: 12,
            };
            random_instance(&params, &mut rng).expect("valid parameters")
        })
        .collect()
}

/// Seeded instances with `ℓ ∈ {2, 3}`, `n ≤ 3`, `r ≤ 4`.
pub fn invariant_corpus(seed: u64, count: usize) -> Vec<GenusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [17u64, 41, 73, 97, 19, 37, 109, 163];
    (0..count)
        .map(|_| {
            let ell = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = rng.gen_range(1..=3);
            let q = field_for(ell, n, &primes).expect("a listed prime fits");
            let params = RandomParams {
                q,
                ell,
                n,
                max_r: 4,
                max_deg: 2 * ell.pow(n + 1),
            };
            random_instance(&params, &mut rng).expect("valid parameters")
        })
        .collect()
}

/// `cyclotomic_genus` against `oracle_genus`, and `genus_field` against `oracle_k_genus`.
pub fn run_oracle_suite(instances: &[GenusInstance]) -> SuiteResult {
    let mut res = SuiteResult::new("oracle");
    let limits = OracleLimits::default();
    for inst in instances {
        res.instances += 1;
        let outcome = (|| -> Result<Option<String>> {
            let cg = cyclotomic_genus(inst, &GenusOptions::default())?;
            let ours = generator_subgroup(inst, &cg.generators)?;
            if ours != oracle_genus(inst, &limits)? {
                return Ok(Some("E_ge differs from the oracle".into()));
            }
            let cert = genus_field(inst, &GenusOptions::default())?;
            if generator_subgroup(inst, &cert.k_ge)? != oracle_k_genus(inst, &limits)? {
                return Ok(Some("K_ge differs from the oracle".into()));
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => res.failures.push(format!("{}: {msg}", describe(inst))),
            Err(e) => res.failures.push(format!("{}: {e}", describe(inst))),
        }
    }
    res
}

/// `genus_field` against `peng_n1` as subgroups.
pub fn run_peng_suite(instances: &[GenusInstance]) -> SuiteResult {
    let mut res = SuiteResult::new("peng");
    for inst in instances {
        res.instances += 1;
        let outcome = (|| -> Result<bool> {
            let cert = genus_field(inst, &GenusOptions::default())?;
            let peng = peng_n1(inst)?;
            Ok(generator_subgroup(inst, &cert.k_ge)? == inst.space().subgroup(&peng.generators)?)
        })();
        match outcome {
            Ok(true) => {}
            Ok(false) => res
                .failures
                .push(format!("{}: subgroups differ", describe(inst))),
            Err(e) => res.failures.push(format!("{}: {e}", describe(inst))),
        }
    }
    res
}

/// `check_certificate` over a corpus, keeping the checks selected by `filter`.
pub fn run_check_suite(
    name: &str,
    instances: &[GenusInstance],
    filter: impl Fn(&str) -> bool,
) -> SuiteResult {
    let mut res = SuiteResult::new(name);
    for inst in instances {
        res.instances += 1;
        match genus_field(inst, &GenusOptions::default()) {
            Ok(cert) => {
                for r in check_certificate(&cert) {
                    if filter(&r.name) && !r.passed() {
                        res.failures.push(format!(
                            "{}: {} ({})",
                            describe(inst),
                            r.name,
                            r.details
                        ));
                    }
                }
            }
            Err(e) => res.failures.push(format!("{}: {e}", describe(inst))),
        }
    }
    res
}

pub fn run_degree_order_suite(instances: &[GenusInstance]) -> SuiteResult {
    let mut res = SuiteResult::new("degree_order");
    for inst in instances {
        res.instances += 1;
        let r = check_prop31(inst);
        if !r.passed() {
            res.failures
                .push(format!("{}: {}", describe(inst), r.details));
        }
    }
    res
}

pub fn run_mutation_suite(instances: &[GenusInstance]) -> Result<MutationSummary> {
    let mut summary = MutationSummary::default();
    for inst in instances {
        let cert = genus_field(inst, &GenusOptions::default())?;
        summary.add(&mutation_outcomes(&cert)?);
    }
    Ok(summary)
}

/// Random monic products over `F_13` and `F_19` of degree `≤ 12`, factored
/// and multiplied back.
pub fn run_factor_suite(seed: u64, count: usize) -> SuiteResult {
    let mut res = SuiteResult::new("factor_round_trip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let q = if k % 2 == 0 { 13 } else { 19 };
        let fp = Fp::new(q).expect("prime");
        let mut p = Poly::one(fp);
        let target = rng.gen_range(1..=12usize);
        while p.degree().unwrap_or(0) < target {
            let room = target - p.degree().unwrap_or(0);
            let deg = rng.gen_range(1..=room.min(4));
            let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
            c.push(1);
            p = &p * &Poly::from_coeffs(fp, &c);
        }
        res.instances += 1;
        match p.factor_seeded(seed.wrapping_add(k as u64)) {
            Ok(f) => {
                let ok = f.expand(fp) == p
                    && f.factors.iter().all(|(g, e)| {
                        *e >= 1 && g.is_monic() && g.is_irreducible().unwrap_or(false)
                    });
                if !ok {
                    res.failures.push(format!("bad factorization of {p}"));
                }
            }
            Err(e) => res.failures.push(format!("{p}: {e}")),
        }
    }
    res
}

/// Sizes of the corpora used by [`selftest`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestSizes {
    pub oracle_r3_per_config: usize,
    pub peng: usize,
    pub invariants: usize,
    pub factor: usize,
    pub mutation: usize,
}

impl Default for SelftestSizes {
    fn default() -> Self {
        SelftestSizes {
            oracle_r3_per_config: 30,
            peng: 500,
            invariants: 1000,
            factor: 500,
            mutation: 100,
        }
    }
}

/// The worked example plus every corpus suite.
pub fn selftest(seed: u64, sizes: &SelftestSizes) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let golden = GoldenExample::corrected();
    out.push(reproduce_example(&golden));
    match golden.certificate(&GenusOptions::default()) {
        Ok(cert) => {
            let checks = check_certificate(&cert);
            let failed: Vec<String> = checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| format!("{}: {}", c.name, c.details))
                .collect();
            out.push(CheckReport::new(
                "golden.checks",
                failed.is_empty(),
                if failed.is_empty() {
                    format!("{} checks pass", checks.len())
                } else {
                    failed.join("; ")
                },
            ));
        }
        Err(e) => out.push(CheckReport::fail("golden.checks", e.to_string())),
    }
    out.extend(reproduce_example_variants(&golden));

    out.push(run_oracle_suite(&oracle_corpus(seed, sizes.oracle_r3_per_config)).report());
    out.push(run_peng_suite(&peng_corpus(seed, sizes.peng)).report());
    let inv = invariant_corpus(seed, sizes.invariants);
    out.push(run_check_suite("invariants", &inv, |_| true).report());
    out.push(run_degree_order_suite(&inv).report());
    out.push(run_factor_suite(seed, sizes.factor).report());
    let mutation_corpus = invariant_corpus(seed ^ 0x5eed, sizes.mutation);
    match run_mutation_suite(&mutation_corpus) {
        Ok(s) => out.push(CheckReport::new(
            "mutation",
            s.detection_rate() >= 0.95 && s.undetected_changed == 0,
            format!(
                "{} mutations over {} certificates: {:.1}% detected ({:.1}% by semantic checks), {} undetected with a changed subgroup",
                s.mutations,
                s.certificates,
                100.0 * s.detection_rate(),
                100.0 * s.semantic_rate(),
                s.undetected_changed
            ),
        )),
        Err(e) => out.push(CheckReport::fail("mutation", e.to_string())),
    }
    out
}
