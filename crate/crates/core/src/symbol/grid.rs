use super::rational::RationalSymbol;
use super::C64;
use crate::error::SymbolError;

/// Points `t_j = exp(2πi j / N)`, counterclockwise from `t_0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGrid {
    n: usize,
}

impl CircleGrid {
    pub fn new(n: usize) -> Result<Self, SymbolError> {
        if n < 8 || !n.is_power_of_two() {
            return Err(SymbolError::BadGrid(n));
        }
        Ok(CircleGrid { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, j: usize) -> C64 {
        // Exact values at the quarter points keep t = ±1, ±i free of rounding.
        let n = self.n;
        match (4 * j) % (4 * n) {
            0 => return C64::new(1.0, 0.0),
            x if x == n => return C64::new(0.0, 1.0),
            x if x == 2 * n => return C64::new(-1.0, 0.0),
            x if x == 3 * n => return C64::new(0.0, -1.0),
            _ => {}
        }
        C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64)
    }

    pub fn points(&self) -> Vec<C64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }
}

/// Samples `s` at every grid point.
pub fn eval_on_grid(s: &RationalSymbol, grid: &CircleGrid) -> Result<Vec<C64>, SymbolError> {
    grid.points()
        .into_iter()
        .enumerate()
        .map(|(j, t)| {
            let den = s.den().eval(t);
            if den.norm() <= 1e-12 * s.den().eval_abs_scale(t).max(1.0) {
                return Err(SymbolError::PoleOnGrid(j));
            }
            Ok(s.num().eval(t) / den)
        })
        .collect()
}
