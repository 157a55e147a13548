//! Exact homological algebra over polynomial rings: Gröbner bases, finitely presented
//! graded modules, Koszul and telescope complexes, torsion, adic completion, local
//! cohomology, weak proregularity and Hochschild cohomology.

pub mod error;
pub mod groebner;
pub mod hochschild;
pub mod homalg;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod serial;
pub mod torcomp;
pub mod wpr;

pub use error::{Error, Result};
pub use groebner::GroebnerBasis;
pub use hochschild::{Bimodule, EnvelopingRing};
pub use homalg::{ChainComplex, ChainMap, FPModule, Matrix};
pub use koszul::KoszulComplex;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use report::{Cell, DimTable, Verdict, VerificationReport};
pub use ring::{Ideal, Ring, RingMap};
pub use scalar::{Field, Scalar};
pub use torcomp::{CompletedModule, PrecisionLevel, StabilizedResult};
pub use wpr::ProZeroCertificate;
