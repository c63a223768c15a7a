//! Exact-arithmetic graded Betti numbers of finite point sets in projective
//! space over prime fields, and detection of two-plane linear covers.
//!
//! The library computes, for a finite set of reduced points X in P^n over
//! F_p:
//!
//! * graded Betti numbers of the coordinate ring via Koszul homology
//!   ([`betti`]),
//! * the initial socle degree of the Artinian reduction ([`graded`]),
//! * linear-cover certificates on the associated matroid ([`matroid`]),
//! * Stanley-Reisner Betti tables through two independent routes
//!   ([`simplicial`]),
//!
//! all with exact arithmetic ([`field`], [`linalg`]) so that every equality
//! is an integer identity, not an approximation.

pub mod betti;
pub mod error;
pub mod field;
pub mod graded;
pub mod linalg;
pub mod matroid;
pub mod points;
pub mod simplicial;

// pub use betti::{betti_table, main_predicate, BettiTable};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use linalg::{rank_of_vectors, Matrix};
// pub use matroid::{CoverCertificate, Matroid};
pub use points::{PointConfig, ProjPoint};
// pub use simplicial::SimplicialComplex;
