//! Exact computations with U-invariants of binary forms: bases of the spaces
//! `S_{n,g}`, perpetuant bases selected by a threshold on indices, and
//! certificates that they complement the decomposable invariants with the
//! dimensions given by Stroh's series.
//!
//! ```
//! use perpetuants::perpetua::{perpetuant_basis, stroh_series};
//!
//! let p = perpetuant_basis(4, 9).unwrap();
//! assert_eq!(p.len() as u64, stroh_series(4, 9).unwrap().at(9));
//! ```

pub mod basis;
pub mod binforms;
pub mod error;
pub mod linalg;
pub mod perpetua;
pub mod poly;
pub mod symfunc;
pub mod umbral;

pub use error::{Error, Result};
pub use poly::{BiDegree, ExponentVector, Family, Poly};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    mod symmetric_functions {}
    #[doc = include_str!("../../../book/src/umbral.md")]
    mod umbral {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/perpetuants.md")]
    mod perpetuants {}
    #[doc = include_str!("../../../book/src/binary-forms.md")]
    mod binary_forms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
