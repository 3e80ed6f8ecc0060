use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::report::CheckReport;
use crate::genus::{
    base_field, cyclotomic_part, narrow_genus, pivot_generators, pivot_levels, BigDec, Generator,
    GeneratorCase, GenusCertificate, GenusInstance, PivotData,
};
use crate::kummer::{ClassSpace, KummerSubgroup, RadicalField};

/// Runs every check on a certificate. Checks whose name starts with
/// `formula.` recompute values from the certificate's own data; the others
/// test properties of the fields it lists.
pub fn check_certificate(cert: &GenusCertificate) -> Vec<CheckReport> {
    let inst = match GenusInstance::from_record(&cert.instance) {
        Ok(i) => i,
        Err(e) => return vec![CheckReport::fail("instance", e.to_string())],
    };
    let mut out = Vec::new();
    formula_checks(&inst, cert, &mut out);
    semantic_checks(&inst, cert, &mut out);
    out
}

/// Whether a check belongs to the semantic part of the suite.
pub fn is_semantic(name: &str) -> bool {
    !name.starts_with("formula.")
}

fn pow(ell: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(ell), e as usize)
}

fn expect<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<CheckReport>,
    name: &str,
    expected: T,
    actual: T,
) {
    let ok = expected == actual;
    out.push(CheckReport::new(
        name,
        ok,
        format!("expected {expected:?}, got {actual:?}"),
    ));
}

fn collect(out: &mut Vec<CheckReport>, name: &str, problems: Vec<String>, what: &str) {
    if problems.is_empty() {
        out.push(CheckReport::pass(name, what));
    } else {
        out.push(CheckReport::fail(name, problems.join("; ")));
    }
}

fn formula_checks(inst: &GenusInstance, cert: &GenusCertificate, out: &mut Vec<CheckReport>) {
    let (ell, n) = (inst.ell(), inst.n());
    let field = inst.field();
    let levels = pivot_levels(inst);
    let m = levels.iter().copied().max().unwrap_or(0);

    expect(
        out,
        "formula.degD",
        BigDec(inst.deg_d()),
        cert.deg_d.clone(),
    );
    expect(
        out,
        "formula.nu_d_t",
        (inst.nu(), inst.d(), inst.t()),
        (cert.nu, cert.d, cert.t),
    );
    expect(out, "formula.m", m, cert.m);

    let i0 = cert.i0;
    let mut bad = Vec::new();
    if i0 == 0 || i0 > inst.r() {
        out.push(CheckReport::fail(
            "formula.i0",
            format!("i0 = {i0} out of range"),
        ));
        return;
    }
    if levels[i0 - 1] != m {
        bad.push(format!("m_{i0} = {} ≠ m = {m}", levels[i0 - 1]));
    }
    for p in &inst.primes()[i0..] {
        let j = p.prime.index;
        let lhs = (n - p.a) as i64 - p.d as i64;
        if levels[j - 1] != m && lhs >= m as i64 {
            bad.push(format!("n - a_{j} - d_{j} = {lhs} ≥ m"));
        }
    }
    collect(
        out,
        "formula.i0",
        bad,
        "i0 attains m; later indices below m",
    );

    let eps = inst.epsilon();
    let w = field.lpower_level(eps);
    let alpha = field.alpha(eps, inst.d());
    match (w, alpha) {
        (Ok(w), Ok(alpha)) => expect(
            out,
            "formula.epsilon_w_alpha",
            (
                eps.value(),
                w,
                alpha,
                field.radical_constant_degree_exp(w, inst.d()),
            ),
            (cert.epsilon, cert.w, cert.alpha, cert.f_inf_exp),
        ),
        (Err(e), _) | (_, Err(e)) => {
            out.push(CheckReport::fail("formula.epsilon_w_alpha", e.to_string()))
        }
    }

    let piv = inst.prime(i0);
    let ell_n = pow(ell, n);
    let mut bad = Vec::new();
    let mut pivot = None;
    match (&cert.bezout, m) {
        (None, 0) => {}
        (None, _) => bad.push("missing Bézout pair".into()),
        (Some(_), 0) => bad.push("Bézout pair present although m = 0".into()),
        (Some(bz), _) => {
            let (a, b) = (&bz.a.0, &bz.b.0);
            let lhs = a * BigInt::from(piv.prime.degree) + b * &ell_n;
            if lhs != pow(ell, piv.d) {
                bad.push(format!("a·deg P_i0 + b·ℓ^n = {lhs} ≠ ℓ^{}", piv.d));
            }
            if (a % BigInt::from(ell)).is_zero() {
                bad.push(format!("ℓ divides a = {a}"));
            }
            pivot = Some(PivotData {
                i0,
                a: a.clone(),
                b: b.clone(),
                z: cert.z.iter().map(|(j, v)| (*j, v.0.clone())).collect(),
                y: cert.y.iter().map(|(j, v)| (*j, v.0.clone())).collect(),
            });
        }
    }
    collect(out, "formula.bezout", bad, "a deg P_i0 + b ℓ^n = ℓ^{d_i0}");

    let mut bad = Vec::new();
    if let Some(p) = &pivot {
        let c0 = BigInt::from(piv.c);
        let want_z: Vec<usize> = (1..i0).collect();
        let want_y: Vec<usize> = (i0 + 1..=inst.r()).collect();
        if p.z.keys().copied().collect::<Vec<_>>() != want_z {
            bad.push(format!("z indices {:?}", p.z.keys().collect::<Vec<_>>()));
        }
        if p.y.keys().copied().collect::<Vec<_>>() != want_y {
            bad.push(format!("y indices {:?}", p.y.keys().collect::<Vec<_>>()));
        }
        for (j, z) in &p.z {
            let pj = inst.prime(*j);
            if pj.d < piv.d {
                bad.push(format!("d_{j} < d_i0"));
                continue;
            }
            let want = -&p.a * BigInt::from(pj.c) * pow(ell, pj.d - piv.d);
            if *z != want {
                bad.push(format!("z_{j} = {z}, formula gives {want}"));
            }
        }
        for (j, y) in &p.y {
            let pj = inst.prime(*j);
            let residue = (y * &c0 + BigInt::from(pj.c)).mod_floor(&ell_n);
            if !residue.is_zero() || *y < BigInt::zero() || *y >= ell_n {
                bad.push(format!("y_{j} = {y} is not -c_j/c_i0 in [0, ℓ^n)"));
            }
        }
    } else if !cert.z.is_empty() || !cert.y.is_empty() {
        bad.push("z or y present without a pivot".into());
    }
    collect(
        out,
        "formula.z_y",
        bad,
        "z_j and y_j follow from a, c_j, d_j",
    );

    // generator lists rebuilt from the certificate's own a, z, y
    let rebuild = |root: Option<u32>| -> Result<Vec<RadicalField>, String> {
        match root {
            None => Ok(narrow_genus(inst)),
            Some(r) => {
                let p = pivot.as_ref().ok_or("pivot generators without a pivot")?;
                pivot_generators(inst, p, r)
                    .map(|g| g.into_iter().map(|g| g.raw).collect())
                    .map_err(|e| e.to_string())
            }
        }
    };
    let t_prime = cert.t.checked_sub(cert.alpha);
    let e_ge_root = (cert.m != cert.t).then(|| piv.d + cert.t);
    compare_list(out, "formula.E_gex", Ok(narrow_genus(inst)), &cert.e_gex);
    compare_list(out, "formula.E_ge", rebuild(e_ge_root), &cert.e_ge);
    let k_root_ok = match (cert.pivot_root_exp, t_prime) {
        (None, Some(tp)) => cert.m == tp,
        (Some(r), Some(tp)) => cert.m > tp && r == piv.d + tp,
        _ => false,
    };
    if !k_root_ok {
        out.push(CheckReport::fail(
            "formula.K_ge",
            format!(
                "pivot root exponent {:?} inconsistent with m = {}, t = {}, α = {}",
                cert.pivot_root_exp, cert.m, cert.t, cert.alpha
            ),
        ));
    } else {
        let mut want = rebuild(cert.pivot_root_exp);
        if let Ok(w) = &mut want {
            w.push(base_field(inst));
        }
        compare_list(out, "formula.K_ge", want, &cert.k_ge);
    }

    let space = inst.space();
    let mut bad = Vec::new();
    for g in all_generators(cert) {
        match space.canonicalize(&g.raw) {
            Ok(c) if c == g.canonical => {}
            Ok(c) => bad.push(format!("{}: canonical form should be {c}", g.label)),
            Err(e) => bad.push(format!("{}: {e}", g.label)),
        }
    }
    collect(out, "formula.canonical", bad, "canonical forms recomputed");
}

fn compare_list(
    out: &mut Vec<CheckReport>,
    name: &str,
    want: Result<Vec<RadicalField>, String>,
    got: &[Generator],
) {
    let want = match want {
        Ok(w) => w,
        Err(e) => {
            out.push(CheckReport::fail(name, e));
            return;
        }
    };
    let mut bad = Vec::new();
    if want.len() != got.len() {
        bad.push(format!("{} generators, expected {}", got.len(), want.len()));
    }
    for (w, g) in want.iter().zip(got) {
        if *w != g.raw {
            bad.push(format!("{}: {} but formula gives {w}", g.label, g.raw));
        }
    }
    collect(out, name, bad, "raw generators match the formulas");
}

fn all_generators(cert: &GenusCertificate) -> impl Iterator<Item = &Generator> {
    cert.e_gex.iter().chain(&cert.e_ge).chain(&cert.k_ge)
}

fn subgroup(space: &ClassSpace, gens: &[Generator], raw: bool) -> Result<KummerSubgroup, String> {
    let fields: Vec<RadicalField> = gens
        .iter()
        .map(|g| {
            if raw {
                g.raw.clone()
            } else {
                g.canonical.clone()
            }
        })
        .collect();
    space.subgroup(&fields).map_err(|e| e.to_string())
}

fn ram_profile(s: &KummerSubgroup) -> Result<Vec<u64>, String> {
    let mut v = vec![s.ram_infinity().map_err(|e| e.to_string())?];
    for j in 1..=s.space().rank() {
        v.push(s.ram_finite(j).map_err(|e| e.to_string())?);
    }
    Ok(v)
}

fn semantic_checks(inst: &GenusInstance, cert: &GenusCertificate, out: &mut Vec<CheckReport>) {
    let space = inst.space();
    let (ell, n) = (inst.ell(), inst.n());

    let mut bad = Vec::new();
    for g in all_generators(cert) {
        if let Err(e) = space.check(&g.raw).and_then(|_| space.check(&g.canonical)) {
            bad.push(format!("{}: {e}", g.label));
        }
    }
    let valid = bad.is_empty();
    collect(
        out,
        "generators.valid",
        bad,
        "all generators live in the instance",
    );
    if !valid {
        return;
    }

    let i0 = cert.i0.clamp(1, inst.r());
    let a_i0 = inst.prime(i0).a;
    let mut inf = Vec::new();
    let mut own = Vec::new();
    let mut piv = Vec::new();
    let mut other = Vec::new();
    for g in cert.e_ge.iter().chain(&cert.k_ge).chain(&cert.e_gex) {
        let Some(j) = g.index else { continue };
        if j == 0 || j > inst.r() {
            own.push(format!("{}: index {j} out of range", g.label));
            continue;
        }
        let twisted = matches!(
            g.case,
            GeneratorCase::BelowPivot | GeneratorCase::AbovePivot | GeneratorCase::AbovePivotLifted
        );
        if twisted && space.ram_index_infinity(&g.raw) != 1 {
            inf.push(format!(
                "{}: e_∞ = {}",
                g.label,
                space.ram_index_infinity(&g.raw)
            ));
        }
        if g.case == GeneratorCase::Pivot {
            continue;
        }
        let want = ell.pow(n - inst.prime(j).a);
        let got = space.ram_index_finite(&g.raw, j);
        if got != want {
            own.push(format!("{}: e_P{j} = {got}, expected {want}", g.label));
        }
        let bound = ell.pow(n - a_i0);
        let got = space.ram_index_finite(&g.raw, i0);
        if twisted && got > bound {
            piv.push(format!("{}: e_P{i0} = {got} > {bound}", g.label));
        }
        for k in 1..=inst.r() {
            let pivot_prime = twisted && k == i0;
            if k != j && !pivot_prime && space.ram_index_finite(&g.raw, k) != 1 {
                other.push(format!("{}: ramified at P{k}", g.label));
            }
        }
    }
    collect(out, "ram.F_infinity", inf, "e_∞(F_j) = 1 for j ≠ i0");
    collect(out, "ram.F_own", own, "e_{P_j}(F_j) = ℓ^{n-a_j}");
    collect(out, "ram.F_pivot", piv, "e_{P_i0}(F_j) ≤ ℓ^{n-a_i0}");
    collect(
        out,
        "ram.F_other",
        other,
        "F_j unramified outside P_j, P_i0",
    );

    let groups = (
        subgroup(space, &cert.e_gex, true),
        subgroup(space, &cert.e_ge, true),
        subgroup(space, &cert.k_ge, true),
    );
    let (m_grp, e_ge, k_ge) = match groups {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            out.push(CheckReport::fail("subgroups", e));
            return;
        }
    };
    let e_field = cyclotomic_part(inst);
    let e_grp = space
        .subgroup(std::slice::from_ref(&e_field))
        .expect("valid field");
    let k_grp = space.subgroup(&[base_field(inst)]).expect("valid field");

    let ratio = m_grp.order_log() as i64 - e_ge.order_log() as i64;
    expect(out, "order.ratio", cert.m as i64 - cert.t as i64, ratio);
    out.push(CheckReport::new(
        "containment.E_ge_in_M",
        m_grp.contains(&e_ge),
        "E_ge ⊆ M",
    ));
    out.push(CheckReport::new(
        "containment.E",
        e_ge.contains(&e_grp),
        "class of D* lies in E_ge",
    ));
    match (ram_profile(&e_ge), ram_profile(&e_grp)) {
        (Ok(a), Ok(b)) => {
            let t_ok = a[0] == ell.pow(cert.t) && b[0] == ell.pow(cert.t);
            out.push(CheckReport::new(
                "ram.E_ge",
                a == b && t_ok,
                format!(
                    "E_ge (∞, P_1, …) = {a:?}, E = {b:?}, ℓ^t = {}",
                    ell.pow(cert.t)
                ),
            ))
        }
        (Err(e), _) | (_, Err(e)) => out.push(CheckReport::fail("ram.E_ge", e)),
    }

    let bound = (n - inst.d()).min(inst.prime(i0).d + cert.t);
    out.push(CheckReport::new(
        "alpha.bounds",
        cert.alpha <= bound,
        format!("α = {} ≤ min(n - d, d_i0 + t) = {bound}", cert.alpha),
    ));

    out.push(CheckReport::new(
        "containment.K",
        k_ge.contains(&k_grp),
        "K ⊆ K_ge",
    ));
    let e_ge_k = e_ge.join(&k_grp).expect("same space");
    out.push(CheckReport::new(
        "containment.K_ge_in_E_ge_K",
        e_ge_k.contains(&k_ge),
        "K_ge ⊆ E_ge K",
    ));
    let gap = e_ge_k.order_log() as i64 - k_ge.order_log() as i64;
    out.push(CheckReport::new(
        "order.K_ge",
        gap == cert.alpha as i64,
        format!("[E_ge K : K_ge] = ℓ^{gap}, α = {}", cert.alpha),
    ));
    match (ram_profile(&k_ge), ram_profile(&k_grp)) {
        (Ok(a), Ok(b)) => out.push(CheckReport::new(
            "ram.K_ge",
            a == b,
            format!("K_ge (∞, P_1, …) = {a:?}, K = {b:?}"),
        )),
        (Err(e), _) | (_, Err(e)) => out.push(CheckReport::fail("ram.K_ge", e)),
    }
    out.push(CheckReport::new(
        "infinity.decomposition",
        k_ge.local_image() == k_grp.local_image(),
        format!(
            "decomposition group at ∞: K_ge ℓ^{}, K ℓ^{}",
            k_ge.local_image().log_order(),
            k_grp.local_image().log_order()
        ),
    ));
    match k_grp.residue_degree_log() {
        Ok(f) => expect(out, "infinity.residue_degree", cert.f_inf_exp, f),
        Err(e) => out.push(CheckReport::fail("infinity.residue_degree", e.to_string())),
    }

    canonical_checks(space, cert, out);
}

/// Raw and canonical forms give the same ramification at every place and
/// the same subgroups.
pub fn canonical_checks(space: &ClassSpace, cert: &GenusCertificate, out: &mut Vec<CheckReport>) {
    let mut bad = Vec::new();
    for g in all_generators(cert) {
        let raw_inf = space.ram_index_infinity(&g.raw);
        let can_inf = space.ram_index_infinity(&g.canonical);
        if raw_inf != can_inf {
            bad.push(format!("{}: e_∞ {raw_inf} vs {can_inf}", g.label));
        }
        for j in 1..=space.rank() {
            let (a, b) = (
                space.ram_index_finite(&g.raw, j),
                space.ram_index_finite(&g.canonical, j),
            );
            if a != b {
                bad.push(format!("{}: e_P{j} {a} vs {b}", g.label));
            }
        }
        match (space.to_class(&g.raw), space.to_class(&g.canonical)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => bad.push(format!("{}: classes differ", g.label)),
        }
    }
    collect(
        out,
        "canonical.ram",
        bad,
        "raw and canonical ramification agree",
    );

    let mut bad = Vec::new();
    for (name, list) in [
        ("E_gex", &cert.e_gex),
        ("E_ge", &cert.e_ge),
        ("K_ge", &cert.k_ge),
    ] {
        match (subgroup(space, list, true), subgroup(space, list, false)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => bad.push(format!("{name}: subgroups differ")),
            (Err(e), _) | (_, Err(e)) => bad.push(format!("{name}: {e}")),
        }
    }
    collect(
        out,
        "canonical.subgroup",
        bad,
        "raw and canonical subgroups agree",
    );
}

/// The canonical subgroup generated by a generator list.
pub fn generator_subgroup(
    inst: &GenusInstance,
    gens: &[Generator],
) -> crate::Result<KummerSubgroup> {
    let fields: Vec<RadicalField> = gens.iter().map(|g| g.raw.clone()).collect();
    inst.space().subgroup(&fields)
}

/// `ν_ℓ` of a generator list's degree over `k`, for reporting.
pub fn degree_log(inst: &GenusInstance, gens: &[Generator]) -> crate::Result<u32> {
    Ok(generator_subgroup(inst, gens)?.order_log())
}
