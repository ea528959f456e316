//! Numeric contracts shared by every module.

use serde::{Deserialize, Serialize};

/// Grid reconstruction residual for factorizations and block diagonalization.
pub const RECONSTRUCTION: f64 = 1e-10;
/// Residual for unitarity and orthogonality relations of constant matrices.
pub const UNITARY: f64 = 1e-12;
/// Zeros or poles closer than this to the unit circle make a symbol ill-posed.
pub const ROOT_ON_CIRCLE: f64 = 1e-8;
/// Maximum distance of an accumulated phase from an integer before it is rejected.
pub const PHASE_GUARD: f64 = 0.1;
/// Validation tolerance for representation sets.
pub const REP_VALIDATION: f64 = 1e-10;
/// Roots closer than this are reported as one root with multiplicity.
pub const ROOT_CLUSTER: f64 = 1e-8;

/// Overridable tolerance set. Defaults are the values above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub reconstruction: f64,
    pub unitary: f64,
    pub root_on_circle: f64,
    pub phase_guard: f64,
    /// Grid used for reconstruction checks of factorizations.
    pub verify_grid: usize,
    /// Grid used by the determinant index oracle.
    pub index_grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            reconstruction: RECONSTRUCTION,
            unitary: UNITARY,
            root_on_circle: ROOT_ON_CIRCLE,
            phase_guard: PHASE_GUARD,
            verify_grid: 512,
            index_grid: 1024,
        }
    }
}
