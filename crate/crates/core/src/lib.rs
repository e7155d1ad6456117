//! Root systems, Weyl groups, characters of standard-type modules and the
//! incidence algebra of the subset lattice.

pub mod charcalc;
pub mod error;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rootsystem;
pub mod scalar;
pub mod subset;
pub mod weyl;

pub use charcalc::{CharCalc, FormalCharacter, ModuleCharacter, NablaConvention, TwistedCharacter, Weight};
pub use error::{Error, Result};
pub use incidence::{HeredityReport, IncidenceAlgebra, Summand};
pub use rootsystem::{CartanType, Family, Guard, Root, RootSet, RootSystem};
pub use scalar::Field;
pub use subset::Subset;
pub use weyl::{BiclosedSet, WeylElement, WeylGroup};

/// Exact rationals with arbitrary precision.
pub type Rational = num_rational::BigRational;

pub type Matrix = linalg::Matrix<Rational>;

pub type AlgebraModule = incidence::AlgebraModule<Rational>;
