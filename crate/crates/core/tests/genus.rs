use kummer_genus::ff::PrimeField;
use kummer_genus::genus::*;
use kummer_genus::poly::Poly;
use kummer_genus::verify::{generator_subgroup, GoldenExample};
use num_bigint::BigInt;
use proptest::prelude::*;

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

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn golden_instance_data() {
    let g = GoldenExample::corrected().instance().unwrap();
    assert_eq!(g.deg_d(), big(387459855));
    let a: Vec<u32> = g.primes().iter().map(|p| p.a).collect();
    let d: Vec<u32> = g.primes().iter().map(|p| p.d).collect();
    let b: Vec<u64> = g.primes().iter().map(|p| p.b).collect();
    let c: Vec<u64> = g.primes().iter().map(|p| p.c).collect();
    assert_eq!(a, [0, 1, 3, 3, 4, 7, 8, 9]);
    assert_eq!(d, [5, 7, 2, 3, 2, 0, 10, 0]);
    assert_eq!(b, [1, 1, 5, 1, 1, 1, 1, 1]);
    assert_eq!(c, [2, 1, 5, 1, 5, 1, 1, 1]);
}

#[test]
fn golden_selection_and_bezout() {
    let g = GoldenExample::corrected().instance().unwrap();
    assert_eq!(pivot_levels(&g), [5, 2, 5, 4, 4, 3, 0, 1]);
    let sel = select_i0(&g);
    assert_eq!((sel.m, sel.i0), (5, 3));
    let (a, b) = bezout_l(&g, 3, &BezoutMode::Balanced).unwrap();
    assert_eq!((a, b), (big(-1312), big(1)));
    let (a, _) = bezout_l(&g, 3, &BezoutMode::LeastNonnegative).unwrap();
    assert_eq!(a, big(5249));
}

#[test]
fn golden_generator_table() {
    let g = GoldenExample::corrected().instance().unwrap();
    let cg = cyclotomic_genus(&g, &GenusOptions::default()).unwrap();
    let piv = cg.pivot.as_ref().unwrap();
    assert_eq!(piv.z[&1], big(70848));
    assert_eq!(piv.z[&2], big(318816));
    for j in [4, 6, 7, 8] {
        assert_eq!(piv.y[&j], big(47239));
    }
    assert_eq!(piv.y[&5], big(59048));
    let cases: Vec<GeneratorCase> = cg.generators.iter().map(|g| g.case).collect();
    use GeneratorCase::*;
    assert_eq!(
        cases,
        [
            BelowPivot,
            BelowPivot,
            Pivot,
            AbovePivot,
            AbovePivot,
            AbovePivotLifted,
            AbovePivot,
            AbovePivotLifted
        ]
    );
    let f7 = &cg.generators[6];
    assert_eq!(f7.raw.exponent(3), big(309935079));
    assert_eq!(f7.canonical.exponent(3), big(0));
    let f1 = &cg.generators[0];
    assert_eq!(f1.canonical.exponent(3), big(11799));
}

#[test]
fn single_prime_is_narrow() {
    for (deg, e) in [(1, 1), (5, 2), (9, 4), (3, 8)] {
        let i = inst(19, 3, 2, 2, &[(deg, e)]);
        let sel = select_i0(&i);
        assert_eq!((sel.m, sel.i0), (sel.t, 1));
        let cg = cyclotomic_genus(&i, &GenusOptions::default()).unwrap();
        assert_eq!(cg.generators.len(), 1);
        assert_eq!(cg.generators[0].raw, narrow_genus(&i)[0]);
    }
}

#[test]
fn trivial_epsilon_keeps_narrow_field() {
    // γ = 1 and ℓ^n | deg D: ε = -1 is a 9th power, α = 0, m = t = 0
    let i = inst(37, 3, 2, 1, &[(9, 1), (18, 1)]);
    let cert = genus_field(&i, &GenusOptions::default()).unwrap();
    assert_eq!((cert.alpha, cert.m, cert.t), (0, 0, 0));
    assert_eq!(cert.k_ge.len(), 3);
    assert_eq!(cert.k_ge[..2], cert.e_gex[..]);
}

#[test]
fn q13_example() {
    let i = inst(13, 3, 1, 2, &[(1, 1), (2, 1)]);
    let cert = genus_field(&i, &GenusOptions::default()).unwrap();
    let peng = peng_n1(&i).unwrap();
    assert_eq!(peng.a, big(2));
    assert_eq!(
        generator_subgroup(&i, &cert.k_ge).unwrap(),
        i.space().subgroup(&peng.generators).unwrap()
    );
}

#[test]
fn unfactored_over_f13() {
    let field = PrimeField::new(13, 3, 1).unwrap();
    // (T+1)^2 (T+2) = 2 + 5T + 4T^2 + T^3
    let d = Poly::parse(field.fp(), "2,5,4,1").unwrap();
    let i = GenusInstance::from_polynomial(field, field.elem(1), &d, 3).unwrap();
    let rec = i.record();
    let got: Vec<(Option<String>, u64)> = rec
        .primes
        .iter()
        .map(|p| (p.poly.clone(), p.exponent))
        .collect();
    assert_eq!(
        got,
        [(Some("1,1".to_string()), 2), (Some("2,1".to_string()), 1)]
    );
}

#[test]
fn certificate_json_round_trip() {
    let cert = GoldenExample::corrected()
        .certificate(&GenusOptions::default())
        .unwrap();
    let text = cert.to_json();
    assert!(text.contains("\"degD\": \"387459855\""));
    assert!(text.contains("\"70848\""));
    let back = GenusCertificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
}

#[test]
fn forced_i0_matches_default_on_ties() {
    let i = inst(37, 3, 2, 5, &[(1, 1), (2, 1), (4, 2)]);
    let base = genus_field(&i, &GenusOptions::default()).unwrap();
    for j in 1..=3 {
        let opts = GenusOptions {
            i0: Some(j),
            ..Default::default()
        };
        if let Ok(c) = genus_field(&i, &opts) {
            assert_eq!(
                generator_subgroup(&i, &c.k_ge).unwrap(),
                generator_subgroup(&i, &base.k_ge).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_never_exceeds_t(
        data in prop::collection::vec((1u64..40, 1u64..27), 1..5),
        gamma in 1u64..109,
    ) {
        let mut data = data;
        if data[0].1 % 3 == 0 { data[0].1 += 1; }
        let i = inst(109, 3, 3, gamma, &data);
        let cert = genus_field(&i, &GenusOptions::default()).unwrap();
        prop_assert!(cert.alpha <= cert.t);
        prop_assert!(cert.t <= cert.m);
    }

    #[test]
    fn permuting_input_primes(
        degs in prop::collection::vec(1u64..20, 3),
        gamma in 1u64..37,
        rot in 0usize..3,
    ) {
        // distinct a_j, so the sorted order is unique
        let data = [(degs[0], 1u64), (degs[1], 3), (degs[2], 9)];
        let field = PrimeField::new(109, 3, 3).unwrap();
        let mut rotated = data.to_vec();
        rotated.rotate_left(rot);
        let build = |d: &[(u64, u64)]| GenusInstance::from_factors(
            field,
            field.elem(gamma),
            d.iter().map(|&(degree, e)| (PrimeSpec::Abstract { degree }, e)).collect(),
        ).unwrap();
        let a = build(&data);
        let b = build(&rotated);
        let ca = genus_field(&a, &GenusOptions::default()).unwrap();
        let cb = genus_field(&b, &GenusOptions::default()).unwrap();
        prop_assert_eq!(
            generator_subgroup(&a, &ca.k_ge).unwrap(),
            generator_subgroup(&b, &cb.k_ge).unwrap()
        );
    }
}
