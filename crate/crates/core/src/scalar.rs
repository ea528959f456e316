//! Scalar Wiener–Hopf factorization `λ = λ⁻ · t^ρ · λ⁺`.
//!
//! The exact engine reads the factors off the zero/pole locations of a
//! rational symbol. The grid engine splits `log λ` by FFT and serves as an
//! independent numerical oracle; the two never share code beyond sampling.

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::SymbolError;
use crate::symbol::winding::phase_index;
use crate::symbol::{eval_on_grid, winding_index, CircleGrid, LaurentPoly, RationalSymbol, C64};
use crate::tolerance::Tolerances;
use crate::verify::VerificationReport;

/// `s = minus · t^index · plus`, normalized by `minus(∞) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFactorization {
    pub minus: RationalSymbol,
    pub index: i32,
    pub plus: RationalSymbol,
}

impl ScalarFactorization {
    pub fn eval(&self, t: C64) -> C64 {
        self.minus.eval(t) * t.powi(self.index) * self.plus.eval(t)
    }

    pub fn trivial() -> Self {
        ScalarFactorization { minus: RationalSymbol::one(), index: 0, plus: RationalSymbol::one() }
    }
}

/// Sampled factorization produced by [`factor_grid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFactorization {
    pub minus: Vec<C64>,
    pub index: i32,
    pub plus: Vec<C64>,
}

/// Exact factorization of a rational symbol. Zeros and poles inside the disk
/// go to `minus` as factors `(1 - z/t)^{±1}`, those outside go to `plus` as
/// `(t - z)^{±1}`, and the leading constant goes to `plus`.
pub fn factor_rational(s: &RationalSymbol, root_tol: f64) -> Result<ScalarFactorization, SymbolError> {
    let index = winding_index(s, root_tol)?;
    let zp = s.zeros_poles()?;
    let inside = |z: &&C64| z.norm() < 1.0;
    let outside = |z: &&C64| z.norm() > 1.0;
    let one = C64::new(1.0, 0.0);
    let z_in: Vec<C64> = zp.zeros.iter().filter(inside).copied().collect();
    let p_in: Vec<C64> = zp.poles.iter().filter(inside).copied().collect();
    let z_out: Vec<C64> = zp.zeros.iter().filter(outside).copied().collect();
    let p_out: Vec<C64> = zp.poles.iter().filter(outside).copied().collect();

    // Π (t - z) / Π (t - p) · t^{#p - #z} = Π (1 - z/t) / Π (1 - p/t)
    let minus = RationalSymbol::new(
        LaurentPoly::from_roots(&z_in, one).shift(p_in.len() as i32 - z_in.len() as i32),
        LaurentPoly::from_roots(&p_in, one),
    )?;
    let plus = RationalSymbol::new(
        LaurentPoly::from_roots(&z_out, s.num().leading()),
        LaurentPoly::from_roots(&p_out, one),
    )?;
    debug_assert_eq!(index, zp.order_at_origin + z_in.len() as i32 - p_in.len() as i32);
    Ok(ScalarFactorization { minus, index, plus })
}

/// Log-split factorization of samples on a circle grid. Fourier modes of
/// `log(λ t^{-ρ})` with negative index (including `N/2`) form `log λ⁻`; the
/// remaining modes, including the constant, form `log λ⁺`.
pub fn factor_grid(samples: &[C64], phase_guard: f64) -> Result<GridFactorization, SymbolError> {
    let n = samples.len();
    if n < 64 || !n.is_power_of_two() {
        return Err(SymbolError::BadGrid(n));
    }
    let grid = CircleGrid::new(n)?;
    let index = phase_index(samples, phase_guard)?;
    let mu: Vec<C64> = samples.iter().zip(grid.points()).map(|(s, t)| s * t.powi(-index)).collect();
    let mut theta = mu[0].arg();
    let mut logs = Vec::with_capacity(n);
    for j in 0..n {
        if j > 0 {
            theta += (mu[j] / mu[j - 1]).arg();
        }
        logs.push(C64::new(mu[j].norm().ln(), theta));
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut logs);
    let scale = 1.0 / n as f64;
    let mut neg = vec![C64::new(0.0, 0.0); n];
    let mut pos = vec![C64::new(0.0, 0.0); n];
    for (k, c) in logs.iter().enumerate() {
        if k < n / 2 {
            pos[k] = c * scale;
        } else {
            neg[k] = c * scale;
        }
    }
    let inverse = planner.plan_fft_inverse(n);
    inverse.process(&mut neg);
    inverse.process(&mut pos);
    Ok(GridFactorization {
        minus: neg.into_iter().map(|x| x.exp()).collect(),
        index,
        plus: pos.into_iter().map(|x| x.exp()).collect(),
    })
}

/// Certifies a scalar factorization against its target.
pub fn verify_scalar(s: &RationalSymbol, f: &ScalarFactorization, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport::new();
    match scalar_residual(s, f, tol.verify_grid) {
        Ok(r) => report.residual("reconstruction", r, tol.reconstruction),
        Err(e) => report.failure("reconstruction", e.to_string()),
    };
    let boundary = 1.0 - tol.root_on_circle;
    match f.minus.zeros_poles() {
        Ok(zp) => {
            let bad: Vec<String> = zp
                .zeros
                .iter()
                .chain(&zp.poles)
                .filter(|z| z.norm() >= boundary)
                .map(|z| format!("{z}"))
                .collect();
            let detail = (!bad.is_empty()).then(|| format!("outside the disk: {}", bad.join(", ")));
            report.violations("minus.roots_inside", bad.len(), detail);
            let at_infinity = match zp.growth {
                0 => (f.minus.num().leading() - 1.0).norm(),
                _ => f64::INFINITY,
            };
            report.residual("minus.normalized_at_infinity", at_infinity, 1e-12);
        }
        Err(e) => {
            report.failure("minus.roots_inside", e.to_string());
        }
    }
    match f.plus.zeros_poles() {
        Ok(zp) => {
            let mut bad: Vec<String> = zp
                .zeros
                .iter()
                .chain(&zp.poles)
                .filter(|z| z.norm() * boundary <= 1.0)
                .map(|z| format!("{z}"))
                .collect();
            if zp.order_at_origin != 0 {
                bad.push(format!("t^{} at the origin", zp.order_at_origin));
            }
            let detail = (!bad.is_empty()).then(|| format!("inside the disk: {}", bad.join(", ")));
            report.violations("plus.roots_outside", bad.len(), detail);
        }
        Err(e) => {
            report.failure("plus.roots_outside", e.to_string());
        }
    }
    match winding_index(s, tol.root_on_circle) {
        Ok(rho) => report.residual("index", (rho - f.index).abs() as f64, 0.0),
        Err(e) => report.failure("index", e.to_string()),
    };
    report
}

/// `max |s - minus t^ρ plus| / max(1, max |s|)` on an `n`-point grid.
pub fn scalar_residual(s: &RationalSymbol, f: &ScalarFactorization, n: usize) -> Result<f64, SymbolError> {
    let grid = CircleGrid::new(n)?;
    let target = eval_on_grid(s, &grid)?;
    let minus = eval_on_grid(&f.minus, &grid)?;
    let plus = eval_on_grid(&f.plus, &grid)?;
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (j, t) in grid.points().into_iter().enumerate() {
        scale = scale.max(target[j].norm());
        diff = diff.max((target[j] - minus[j] * t.powi(f.index) * plus[j]).norm());
    }
    Ok(diff / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::ROOT_ON_CIRCLE;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn lin(root: f64) -> LaurentPoly {
        LaurentPoly::new(0, vec![c(-root), c(1.0)])
    }

    fn close(a: &RationalSymbol, b: &RationalSymbol) -> bool {
        let g = CircleGrid::new(64).unwrap();
        let (x, y) = (eval_on_grid(a, &g).unwrap(), eval_on_grid(b, &g).unwrap());
        x.iter().zip(&y).all(|(p, q)| (p - q).norm() < 1e-13)
    }

    #[test]
    fn pure_monomial() {
        let f = factor_rational(&RationalSymbol::t_power(1), ROOT_ON_CIRCLE).unwrap();
        assert_eq!(f.index, 1);
        assert_eq!(f.minus, RationalSymbol::one());
        assert_eq!(f.plus, RationalSymbol::one());
    }

    #[test]
    fn t_plus_half() {
        let f = factor_rational(&RationalSymbol::from_poly(lin(-0.5)), ROOT_ON_CIRCLE).unwrap();
        assert_eq!(f.index, 1);
        // 1 + 1/(2t)
        let expected = RationalSymbol::from_poly(LaurentPoly::new(-1, vec![c(0.5), c(1.0)]));
        assert!(close(&f.minus, &expected));
        assert!(close(&f.plus, &RationalSymbol::one()));
    }

    #[test]
    fn t_minus_two() {
        let s = RationalSymbol::from_poly(lin(2.0));
        let f = factor_rational(&s, ROOT_ON_CIRCLE).unwrap();
        assert_eq!(f.index, 0);
        assert!(close(&f.minus, &RationalSymbol::one()));
        assert!(close(&f.plus, &s));
    }

    #[test]
    fn verifier_catches_swaps_and_index_shifts() {
        let s = RationalSymbol::new(lin(0.5), lin(-3.0)).unwrap().scale(c(2.0));
        let f = factor_rational(&s, ROOT_ON_CIRCLE).unwrap();
        let tol = Tolerances::default();
        assert!(verify_scalar(&s, &f, &tol).passed());
        let swapped = ScalarFactorization { minus: f.plus.clone(), index: f.index, plus: f.minus.clone() };
        let r = verify_scalar(&s, &swapped, &tol);
        assert!(!r.get("minus.roots_inside").unwrap().passed);
        assert!(!r.get("plus.roots_outside").unwrap().passed);
        let shifted = ScalarFactorization { index: f.index + 1, ..f };
        let r = verify_scalar(&s, &shifted, &tol);
        assert!(!r.get("reconstruction").unwrap().passed);
        assert!(!r.get("index").unwrap().passed);
    }

    #[test]
    fn grid_engine_matches_exact() {
        let s = RationalSymbol::new(lin(0.5), lin(2.0)).unwrap();
        let f = factor_rational(&s, ROOT_ON_CIRCLE).unwrap();
        let g = CircleGrid::new(512).unwrap();
        let gf = factor_grid(&eval_on_grid(&s, &g).unwrap(), 0.1).unwrap();
        assert_eq!(gf.index, 1);
        for (j, t) in g.points().into_iter().enumerate() {
            assert!((gf.minus[j] - f.minus.eval(t)).norm() < 1e-8);
            assert!((gf.plus[j] - f.plus.eval(t)).norm() < 1e-8);
        }
    }

    #[test]
    fn grid_engine_constant_samples() {
        let gf = factor_grid(&vec![c(1.0); 64], 0.1).unwrap();
        assert_eq!(gf.index, 0);
        assert!(gf.minus.iter().chain(&gf.plus).all(|x| (x - c(1.0)).norm() < 1e-15));
        assert_eq!(factor_grid(&vec![c(1.0); 32], 0.1), Err(SymbolError::BadGrid(32)));
    }
}
