//! Compression bases, projection covers, the Rickart mapping and spectral
//! resolutions in finite-dimensional order unit spaces.
//!
//! Three model families are built in: finite function spaces, the Jordan
//! algebra of real symmetric matrices, and centrally symmetric state spaces
//! over a normed space (`ℓ_p` and a smooth, non-strictly-convex "stadium" norm).
//! The generic machinery in [`compression`] and [`spectral`] works against the
//! [`CompressionBase`] each model provides; [`harness`] turns the theory into
//! seeded property suites with JSON reports.

pub mod compression;
pub mod error;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod models;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod space;
pub mod spectral;
pub mod tol;

pub use compression::{CompMap, CompressionBase, FCheck, MapAction};
pub use error::{Error, Result};
pub use models::norms::{DualityFace, NormFamily, NormKind};
pub use report::Report;
pub use space::{AElem, ModelKind, ModelSpace, VElem};
pub use spectral::SpectralData;
pub use tol::Tol;
