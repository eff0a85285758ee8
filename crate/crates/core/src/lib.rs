//! Exact cohomology rings of regular nilpotent Hessenberg varieties in
//! types A, B, C, D and G2.

pub mod error;
pub mod basisgen;
pub mod groebner;
pub mod hessfn;
pub mod idealgen;
pub mod linalg;
pub mod pdual;
pub mod poly;
pub mod quotient;
pub mod rootsystem;
pub mod suite;

pub use error::{HbError, Result};
pub use hessfn::{HessFn, LowerIdeal};
pub use idealgen::{generators, GeneratorSet};
pub use poly::{Monomial, Poly, Q};
pub use quotient::{build_quotient, QuotientRing};
pub use rootsystem::{build_root_table, Family, LieType, RootTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
