//! Minimum-area circumscribed polygons, Dowker-type convexity checks and
//! honeycomb certificates for polygonal normed planes.

pub mod error;
pub mod geom;
pub mod norms;
pub mod circumscribe;
pub mod dowker;
pub mod tilings;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/norms.md")]
    mod norms {}
    #[doc = include_str!("../../../book/src/circumscribe.md")]
    mod circumscribe {}
    #[doc = include_str!("../../../book/src/dowker.md")]
    mod dowker {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/tilings.md")]
    mod tilings {}
}
