use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every predicate in a model space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    /// Equality tolerance for elements, maps and norms.
    pub eq_tol: f64,
    /// Slack allowed below zero in cone-membership tests.
    pub psd_tol: f64,
    /// Relative threshold separating support eigenvalues from numerical zero.
    pub eig_cut: f64,
    /// Sweep budget of the Jacobi eigensolver.
    pub max_sweeps: usize,
}

impl Default for Tol {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            psd_tol: 1e-10,
            eig_cut: 1e-8,
            max_sweeps: 100,
        }
    }
}

impl Tol {
    pub fn with_eq_tol(mut self, eq_tol: f64) -> Self {
        self.eq_tol = eq_tol;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.eq_tol > 0.0 && self.psd_tol > 0.0 && self.eig_cut > 0.0 && self.max_sweeps > 0
    }
}
