//! Winding numbers: exact root counting and argument-principle sampling.

use super::grid::{eval_on_grid, CircleGrid};
use super::rational::RationalSymbol;
use super::C64;
use crate::error::SymbolError;
use crate::tolerance::PHASE_GUARD;

/// Total phase increment of a closed sample sequence divided by `2π`.
pub fn phase_total(samples: &[C64]) -> Result<f64, SymbolError> {
    if let Some(j) = samples.iter().position(|z| z.norm() == 0.0) {
        return Err(SymbolError::ZeroSample(j));
    }
    let n = samples.len();
    let total: f64 = (0..n).map(|j| (samples[(j + 1) % n] / samples[j]).arg()).sum();
    Ok(total / std::f64::consts::TAU)
}

/// Largest phase step between consecutive samples (cyclically).
fn max_step(samples: &[C64]) -> f64 {
    let n = samples.len();
    (0..n).map(|j| (samples[(j + 1) % n] / samples[j]).arg().abs()).fold(0.0, f64::max)
}

/// Winding number of a closed sample sequence. Sampled phases of a closed
/// curve always sum to a multiple of `2π` up to rounding, so undersampling
/// shows up as individual steps near `±π`; any step above `π/2` or a total
/// farther than `guard` from an integer is rejected as ambiguous.
pub fn phase_index(samples: &[C64], guard: f64) -> Result<i32, SymbolError> {
    let total = phase_total(samples)?;
    let rounded = total.round();
    if (total - rounded).abs() > guard || max_step(samples) > std::f64::consts::FRAC_PI_2 {
        return Err(SymbolError::AmbiguousPhase(total));
    }
    Ok(rounded as i32)
}

/// Grid size fine enough to resolve the phase of a function whose nearest
/// zero or pole sits `distance` away from the circle, or `None` when that
/// would exceed 2^16 points.
pub fn resolving_grid(distance: f64) -> Option<usize> {
    let needed = (16.0 / distance.max(1e-300)).ceil();
    if needed > 65536.0 {
        return None;
    }
    Some((needed as usize).next_power_of_two().max(256))
}

/// Index of `s` on the unit circle from its zero/pole locations, checked
/// against the argument principle on a grid that resolves the closest root.
pub fn winding_index(s: &RationalSymbol, tol: f64) -> Result<i32, SymbolError> {
    let zp = s.zeros_poles()?;
    let closest = zp.closest_to_circle();
    if let Some((z, d)) = closest {
        if d < tol {
            return Err(SymbolError::NotInvertibleOnContour { point: format!("{z}"), distance: d });
        }
    }
    let exact = zp.order_at_origin + zp.zeros_inside() as i32 - zp.poles_inside() as i32;
    let distance = closest.map_or(1.0, |(_, d)| d);
    if let Some(n) = resolving_grid(distance) {
        let grid = CircleGrid::new(n)?;
        let sampled = phase_index(&eval_on_grid(s, &grid)?, PHASE_GUARD)?;
        if sampled != exact {
            return Err(SymbolError::IndexMismatch { exact: exact as i64, sampled: sampled as i64 });
        }
    }
    Ok(exact)
}
