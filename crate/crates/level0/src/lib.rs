//! Combinatorics of level-zero Langlands parameters for odd orthogonal
//! p-adic groups.
//!
//! The crate enumerates discrete and elliptic parameters, computes their
//! Springer–Lusztig data and cuspidal bookkeeping, implements the ρ∘ι and
//! localization operators on class functions of products of symmetric and
//! type C Weyl groups, classifies stability and builds stable packets
//! through a Fourier-type transform. All arithmetic is exact.

pub mod error;
pub mod fourier;
pub mod graded;
pub mod localization;
pub mod orbits;
pub mod params;
pub mod rho_iota;
pub mod scalars;
pub mod sign;
pub mod stability;
pub mod sweeps;
pub mod symbols;
pub mod tame;
pub mod weylrep;

pub use error::{Error, Result};
pub use fourier::{EllElement, FourierConfig, Sharp, SigmaEps, UComponent};
pub use graded::{ClassTag, GradedElement, Layout};
pub use localization::{SemisimpleClass, SemisimpleSpec};
pub use orbits::{Mode, Orbit, OrbitKind};
pub use params::{DiscreteParameter, SignCharacter, SpLData};
pub use scalars::{CycloScalar, Rational};
pub use sign::Sign;
pub use stability::StabilityClass;
pub use symbols::{cusp_datum, CuspidalDatum, Symbol};
pub use tame::{EigenClass, TameCharacter, TameSpec};
pub use weylrep::{ClassFunction, ClassLabel, ClassMap, CycleTransform, Factor, FactorClass, FactorKind, GroupShape};
