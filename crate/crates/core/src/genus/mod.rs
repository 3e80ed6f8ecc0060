//! Genus fields of `K = k(ℓ^n-th root of γD)`.
//!
//! With `D = P_1^{α_1} ⋯ P_r^{α_r}`, `α_j = b_j ℓ^{a_j}` and
//! `deg P_j = c_j ℓ^{d_j}`, the narrow genus field is `M = E_1 ⋯ E_r` where
//! `E_j = k(ℓ^{n-a_j}-th root of P_j^*)`. The cyclotomic genus field `E_ge`
//! is the largest subfield of `M` in which infinity ramifies no more than
//! in `K` (index `ℓ^t`), and `K_ge` is obtained from it by lowering the
//! pivot generator by `α`, the constant-field contribution of `ε = (-1)^{deg D} γ`.
//!
//! ```
//! use kummer_genus::ff::PrimeField;
//! use kummer_genus::genus::{genus_field, GenusInstance, GenusOptions, PrimeSpec};
//!
//! let field = PrimeField::new(13, 3, 1).unwrap();
//! let inst = GenusInstance::from_factors(
//!     field,
//!     field.elem(2),
//!     vec![
//!         (PrimeSpec::Abstract { degree: 1 }, 1),
//!         (PrimeSpec::Abstract { degree: 2 }, 1),
//!     ],
//! )
//! .unwrap();
//! let cert = genus_field(&inst, &GenusOptions::default()).unwrap();
//! assert_eq!((cert.m, cert.t, cert.i0), (1, 0, 2));
//! assert_eq!(cert.k_ge.len(), 2); // F_1 and K
//! ```

mod certificate;
mod construct;
mod input;
mod instance;
mod peng;

pub use certificate::{genus_field, Bezout, BigDec, GenusCertificate};
pub use construct::{
    base_field, base_generator, bezout_l, cyclotomic_genus, cyclotomic_part, narrow_generators,
    narrow_genus, pivot_data, pivot_generators, pivot_levels, select_i0, BezoutMode,
    CyclotomicGenus, Generator, GeneratorCase, GenusOptions, PivotData, Selection,
};
pub use input::{CoeffsSpec, DSpec, FactorEntry, FactorsSpec, InstanceFile, PrimeEntry};
pub use instance::{GenusInstance, InstanceRecord, PrimePower, PrimeRecord, PrimeSpec};
pub use peng::{peng_n1, PengCase, PengGenus};
