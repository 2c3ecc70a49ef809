//! Exact invariant exterior calculus on almost Hermitian Lie groups and
//! nilmanifolds.
//!
//! The engine works over the invariant coframe `{phi^a, phib^a}` of a
//! left-invariant almost complex structure. Coefficients are exact
//! ([`scalars`]), forms are canonical ([`forms`]), the exterior differential
//! and its bidegree components come from structure equations
//! ([`structure`]), and the metric layer ([`hermitian`]) supplies the Hodge
//! star, Lefschetz operators and primitive decompositions. [`harmonic`]
//! computes invariant harmonic spaces for the Hodge, Dolbeault, Bott-Chern
//! and Aeppli Laplacians, and [`theorems`] turns decomposition and
//! inclusion statements into checkable reports.

pub mod error;
pub mod forms;
pub mod harmonic;
pub mod hermitian;
pub mod library;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod structure;
pub mod theorems;

pub use error::{Error, Result};
pub use forms::{parse_form, Form, FormPrinter, MultiIndex};
pub use harmonic::{LaplacianKind, MembershipCertificate, SubspaceBasis};
pub use hermitian::PrimitiveComponents;
pub use library::{catalog, load_spec, serialize_spec, CATALOG_NAMES};
pub use report::{Status, VerificationReport};
pub use scalars::{Coefficient, Direction, GaussianRational};
pub use structure::{ManifoldSpec, OperatorKind};
