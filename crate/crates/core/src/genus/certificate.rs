use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::construct::{
    base_generator, cyclotomic_genus, narrow_generators, pivot_generators, Generator, GenusOptions,
};
use super::instance::{GenusInstance, InstanceRecord};
use crate::error::{Error, Result};
use crate::verify::CheckReport;

/// An integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigDec(pub BigInt);

impl From<BigInt> for BigDec {
    fn from(v: BigInt) -> Self {
        BigDec(v)
    }
}

impl fmt::Display for BigDec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigDec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigDec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(s.trim())
            .map(BigDec)
            .map_err(|_| serde::de::Error::custom(format!("not a decimal integer: {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bezout {
    pub a: BigDec,
    pub b: BigDec,
}

/// Everything computed for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCertificate {
    pub instance: InstanceRecord,
    #[serde(rename = "degD")]
    pub deg_d: BigDec,
    pub nu: u32,
    pub t: u32,
    pub m: u32,
    pub i0: usize,
    pub d: u32,
    /// Absent when `m = 0`.
    pub bezout: Option<Bezout>,
    pub z: BTreeMap<usize, BigDec>,
    pub y: BTreeMap<usize, BigDec>,
    /// `ε = (-1)^{deg D} γ`.
    pub epsilon: u64,
    /// `ε` is an `ℓ^w`-th power and no higher (capped at `n`).
    pub w: u32,
    pub alpha: u32,
    /// `f_∞(K/k) = ℓ^{f_inf_exp}`.
    pub f_inf_exp: u32,
    /// Root order exponent of the `i0` generator of `K_ge`: `d_{i0} + t - α`.
    /// `None` when `K_ge` is built from `E_1 … E_r`.
    pub pivot_root_exp: Option<u32>,
    #[serde(rename = "E_gex")]
    pub e_gex: Vec<Generator>,
    #[serde(rename = "E_ge")]
    pub e_ge: Vec<Generator>,
    #[serde(rename = "K_ge")]
    pub k_ge: Vec<Generator>,
    #[serde(default)]
    pub checks: Vec<CheckReport>,
}

/// Builds the certificate for `K_ge`.
pub fn genus_field(inst: &GenusInstance, opts: &GenusOptions) -> Result<GenusCertificate> {
    let field = inst.field();
    let eps = inst.epsilon();
    let w = field.lpower_level(eps)?;
    let d = inst.d();
    let alpha = field.alpha(eps, d)?;
    let cyc = cyclotomic_genus(inst, opts)?;
    let sel = cyc.selection;
    if alpha > sel.t {
        return Err(Error::Inconsistent(format!(
            "α = {alpha} exceeds t = {}",
            sel.t
        )));
    }
    let t_prime = sel.t - alpha;
    let (mut k_ge, pivot_root_exp) = if sel.m == t_prime {
        (narrow_generators(inst)?, None)
    } else {
        let piv = cyc
            .pivot
            .as_ref()
            .ok_or_else(|| Error::Inconsistent("m > t - α but no pivot data".into()))?;
        let root = inst.prime(piv.i0).d + t_prime;
        (pivot_generators(inst, piv, root)?, Some(root))
    };
    k_ge.push(base_generator(inst)?);

    let dec = |m: &BTreeMap<usize, BigInt>| {
        m.iter()
            .map(|(j, v)| (*j, BigDec(v.clone())))
            .collect::<BTreeMap<_, _>>()
    };
    let (bezout, z, y) = match &cyc.pivot {
        Some(p) => (
            Some(Bezout {
                a: BigDec(p.a.clone()),
                b: BigDec(p.b.clone()),
            }),
            dec(&p.z),
            dec(&p.y),
        ),
        None => (None, BTreeMap::new(), BTreeMap::new()),
    };
    Ok(GenusCertificate {
        instance: inst.record(),
        deg_d: BigDec(inst.deg_d()),
        nu: inst.nu(),
        t: sel.t,
        m: sel.m,
        i0: sel.i0,
        d,
        bezout,
        z,
        y,
        epsilon: eps.value(),
        w,
        alpha,
        f_inf_exp: field.radical_constant_degree_exp(w, d),
        pivot_root_exp,
        e_gex: narrow_generators(inst)?,
        e_ge: cyc.generators,
        k_ge,
        checks: Vec::new(),
    })
}

impl GenusCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    /// Human-readable summary.
    pub fn render_text(&self) -> String {
        let inst = &self.instance;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "q = {}, ℓ = {}, n = {}, γ = {}",
            inst.q, inst.ell, inst.n, inst.gamma
        );
        for p in &inst.primes {
            let name = match &p.poly {
                Some(text) => format!("P{} = [{}]", p.index, text),
                None => format!("P{}", p.index),
            };
            let _ = writeln!(
                s,
                "  {name}: deg {} = {}·{}^{}, α = {} = {}·{}^{}",
                p.degree, p.c, inst.ell, p.d, p.exponent, p.b, inst.ell, p.a
            );
        }
        for w in &inst.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        let _ = writeln!(
            s,
            "deg D = {}, ν = {}, d = {}, t = {}, m = {}, i0 = {}",
            self.deg_d, self.nu, self.d, self.t, self.m, self.i0
        );
        if let Some(bz) = &self.bezout {
            let _ = writeln!(s, "a = {}, b = {}", bz.a, bz.b);
        }
        for (j, v) in &self.z {
            let _ = writeln!(s, "z{j} = {v}");
        }
        for (j, v) in &self.y {
            let _ = writeln!(s, "y{j} = {v}");
        }
        let _ = writeln!(
            s,
            "ε = {}, w = {}, α = {}, f_∞(K/k) = {}^{}",
            self.epsilon, self.w, self.alpha, inst.ell, self.f_inf_exp
        );
        for (name, list) in [
            ("E_gex", &self.e_gex),
            ("E_ge", &self.e_ge),
            ("K_ge", &self.k_ge),
        ] {
            let _ = writeln!(s, "{name}:");
            for g in list {
                let _ = write!(s, "  {:<4} {}", g.label, g.raw);
                if g.canonical != g.raw {
                    let _ = write!(s, "  =  {}", g.canonical);
                }
                let _ = writeln!(s);
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed()).count();
            let _ = writeln!(s, "checks: {} run, {failed} failed", self.checks.len());
            for c in self.checks.iter().filter(|c| !c.passed()) {
                let _ = writeln!(s, "  FAIL {}: {}", c.name, c.details);
            }
        }
        s
    }
}
