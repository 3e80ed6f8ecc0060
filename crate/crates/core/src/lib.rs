pub mod error;
pub mod ff;
pub mod genus;
pub mod kummer;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/radicals.md")]
    mod radicals {}
    #[doc = include_str!("../../../book/src/genus.md")]
    mod genus {}
    #[doc = include_str!("../../../book/src/checking.md")]
    mod checking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
