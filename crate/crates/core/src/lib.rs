//! Wiener–Hopf factorization of matrix functions with finite-group symmetry.

pub mod block;
pub mod center;
pub mod error;
pub mod factorization;
pub mod group;
pub mod io;
pub mod random;
pub mod reps;
pub mod scalar;
pub mod symbol;
pub mod tolerance;
pub mod verify;

pub use error::{DocError, FactorError, GroupError, RepError, SymbolError};
pub use factorization::MatrixFactorization;
pub use symbol::{C64, LaurentPoly, RationalSymbol, SymMatrix};
pub use tolerance::Tolerances;
