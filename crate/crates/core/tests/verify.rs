use kummer_genus::ff::PrimeField;
use kummer_genus::genus::*;
use kummer_genus::verify::*;

fn inst(q: u64, ell: u64, n: u32, gamma: u64, data: &[(u64, u64)]) -> GenusInstance {
    let field = PrimeField::new(q, ell, n).unwrap();
    GenusInstance::from_factors(
        field,
        field.elem(gamma),
        data.iter()
            .map(|&(degree, e)| (PrimeSpec::Abstract { degree }, e))
            .collect(),
    )
    .unwrap()
}

fn failures(reports: &[CheckReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}: {}", r.name, r.details))
        .collect()
}

#[test]
fn golden_certificate_passes_every_check() {
    let cert = GoldenExample::corrected()
        .certificate(&GenusOptions::default())
        .unwrap();
    let reports = check_certificate(&cert);
    assert!(reports.len() > 20);
    assert_eq!(failures(&reports), Vec::<String>::new());
}

#[test]
fn corrected_table_reproduces() {
    let r = reproduce_example(&GoldenExample::corrected());
    assert!(r.passed(), "{}", r.details);
}

#[test]
fn published_table_differs_exactly_in_the_valuation_chain() {
    let g = GoldenExample::as_published();
    let cert = g.certificate(&GenusOptions::default()).unwrap();
    let wrong: Vec<String> = g
        .compare(&cert)
        .into_iter()
        .filter(|(_, want, got)| want != got)
        .map(|(name, _, _)| name)
        .collect();
    assert_eq!(wrong, ["nu", "t", "F3.root", "d", "alpha"]);
}

#[test]
fn golden_variants() {
    let reports = reproduce_example_variants(&GoldenExample::corrected());
    assert_eq!(reports.len(), 2);
    assert_eq!(failures(&reports), Vec::<String>::new());
}

#[test]
fn golden_degree_order() {
    let g = GoldenExample::corrected().instance().unwrap();
    assert!(check_prop31(&g).passed());
}

#[test]
fn degree_order_vacuous_when_unramified_at_infinity() {
    // ℓ^n | deg P for every prime: e_∞(E_j) = 1, no pair qualifies
    let i = inst(37, 3, 2, 1, &[(9, 1), (18, 2)]);
    let r = check_prop31(&i);
    assert!(r.passed());
    assert!(r.details.starts_with("0 pairs"));
}

#[test]
fn corrupted_exponent_is_caught() {
    let i = inst(37, 3, 2, 2, &[(1, 1), (3, 1), (2, 4)]);
    let mut cert = genus_field(&i, &GenusOptions::default()).unwrap();
    assert_eq!(failures(&check_certificate(&cert)), Vec::<String>::new());
    let g = &mut cert.e_ge[0];
    let e = g.raw.exponent(3) + 1;
    g.raw.exponents.insert(3, e);
    let failed = failures(&check_certificate(&cert));
    assert!(!failed.is_empty());
}

#[test]
fn oracle_examples() {
    let limits = OracleLimits::default();
    for i in [
        inst(13, 3, 1, 2, &[(1, 1), (2, 1)]),
        inst(13, 2, 2, 1, &[(1, 1), (2, 3)]),
        inst(19, 3, 2, 5, &[(1, 1)]),
        inst(37, 3, 2, 5, &[(3, 2), (6, 1), (2, 3)]),
    ] {
        let cg = cyclotomic_genus(&i, &GenusOptions::default()).unwrap();
        assert_eq!(
            oracle_genus(&i, &limits).unwrap(),
            generator_subgroup(&i, &cg.generators).unwrap()
        );
        let cert = genus_field(&i, &GenusOptions::default()).unwrap();
        assert_eq!(
            oracle_k_genus(&i, &limits).unwrap(),
            generator_subgroup(&i, &cert.k_ge).unwrap()
        );
    }
}

#[test]
fn small_suites() {
    assert!(run_oracle_suite(&oracle_corpus(3, 2)[..200]).passed());
    assert!(run_peng_suite(&peng_corpus(3, 50)).passed());
    let inv = invariant_corpus(3, 50);
    let r = run_check_suite("invariants", &inv, |_| true);
    assert!(r.passed(), "{:?}", r.failures);
    assert!(run_degree_order_suite(&inv).passed());
    assert!(run_factor_suite(3, 40).passed());
}

#[test]
fn mutations_on_a_few_certificates() {
    let s = run_mutation_suite(&invariant_corpus(4, 5)).unwrap();
    assert!(s.mutations > 0);
    assert_eq!(s.undetected_changed, 0);
    assert_eq!(s.semantic_undetected_changed, 0);
}

#[test]
fn corpora_are_deterministic() {
    let a: Vec<_> = invariant_corpus(9, 20).iter().map(|i| i.record()).collect();
    let b: Vec<_> = invariant_corpus(9, 20).iter().map(|i| i.record()).collect();
    assert_eq!(a, b);
}
