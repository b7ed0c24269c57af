//! Element-order spectra and Gruenberg–Kegel prime graphs of finite groups,
//! structural data for simple groups of Lie type, and executable checks of
//! the recognition lemmas built on them.

pub mod ffield;
pub mod gkgraph;
pub mod groups;
pub mod liedata;
pub mod numtheory;
pub mod spectra;
pub mod theorems;

pub use ffield::{Field, FieldElement, FieldError};
pub use gkgraph::{gk, GraphError, PrimeGraph};
pub use groups::{ConcreteGroup, ExtensionSeries, GroupDescriptor, GroupError, Subgroup};
pub use liedata::{GroupSpec, LieError, OutStructure};
pub use numtheory::{Factorization, NumError};
pub use spectra::{isospectral, scaled_subset, spectrum_bruteforce, Spectrum, SpectrumError};
pub use theorems::{Claim, TheoremError, Verdict, VerificationReport};
