//! Exact verification, cohomology and search for Hom-Lie-Yamaguti algebras,
//! their representations, twisted O-operators and NS-algebras.
//!
//! Every structure is stored as structure constants over an exact field
//! (rationals or GF(p)); every check is evaluated on basis tuples and
//! reported per identity with witnesses.

pub mod cohomology;
pub mod config;
pub mod deformations;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod ns;
pub mod operators;
pub mod report;
pub mod representations;
pub mod structures;

pub use config::{Config, Reading};
pub use error::{Error, Result};
pub use exact::{Field, Matrix, Scalar, Tensor, Vector};
pub use report::{Failure, IdentityReport};
