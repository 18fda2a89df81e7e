//! The three concrete model families.

pub mod censym;
pub mod fnspace;
pub mod jordan;
pub mod norms;

use crate::error::Result;
use crate::space::{ModelKind, ModelSpace};
use censym::BaseAvailability;

/// The spectral compression base of any model: all projections for function
/// spaces and Jordan algebras, all sharp elements for smooth centrally
/// symmetric spaces, and a failing-focus certificate otherwise.
pub fn spectral_base(space: &ModelSpace, trials: usize, seed: u64) -> Result<BaseAvailability> {
    match space.kind() {
        ModelKind::Fn { n } => Ok(BaseAvailability::Available(fnspace::build_fn_in(space.clone(), *n)?.base)),
        ModelKind::Jb { .. } => Ok(BaseAvailability::Available(jordan::build_jb_in(space.clone())?.base)),
        ModelKind::CenSym { .. } => censym::build_spectral_base(space, trials, seed),
    }
}
