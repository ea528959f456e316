//! Scalar symbols on the unit circle: Laurent polynomials, rational
//! functions, root finding, sampling and winding numbers.

pub mod grid;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod roots;
pub mod split;
pub mod winding;

pub type C64 = num_complex::Complex64;

pub use grid::{eval_on_grid, CircleGrid};
pub use laurent::LaurentPoly;
pub use matrix::{DetRational, SymMatrix};
pub use rational::{RationalSymbol, ZeroPoleData};
pub use roots::{poly_roots, RootSet};
pub use winding::{phase_index, winding_index};
