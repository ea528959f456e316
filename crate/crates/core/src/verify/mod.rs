//! Black-box certification of factorizations: the checks see only the target
//! and the candidate factors, never how the factors were built.

mod report;

pub use report::{Check, VerificationReport};

use nalgebra::DMatrix;

use crate::error::SymbolError;
use crate::factorization::MatrixFactorization;
use crate::symbol::winding::phase_index;
use crate::symbol::{eval_on_grid, CircleGrid, SymMatrix, ZeroPoleData, C64};
use crate::tolerance::Tolerances;

const MAX_ORACLE_GRID: usize = 1 << 16;

/// Samples every entry of `m` on the grid, one matrix per grid point.
pub fn sample_matrix(m: &SymMatrix, grid: &CircleGrid) -> Result<Vec<DMatrix<C64>>, SymbolError> {
    let columns: Vec<Vec<C64>> = m.entries().iter().map(|e| eval_on_grid(e, grid)).collect::<Result<_, _>>()?;
    Ok((0..grid.len())
        .map(|j| DMatrix::from_fn(m.rows(), m.cols(), |r, c| columns[r * m.cols() + c][j]))
        .collect())
}

/// LU pivots smaller than this fraction of a sample's largest entry mark the
/// sample as numerically singular: the phase of its determinant is noise.
const PIVOT_FLOOR: f64 = 1e-13;

/// Winding number of `det m` by phase accumulation on an `n`-point grid.
pub fn det_index_oracle(m: &SymMatrix, n: usize, phase_guard: f64) -> Result<i32, SymbolError> {
    if !m.is_square() {
        return Err(SymbolError::Dimension(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let grid = CircleGrid::new(n)?;
    let samples = sample_matrix(m, &grid)?;
    let mut dets = Vec::with_capacity(n);
    for (j, a) in samples.into_iter().enumerate() {
        let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let lu = a.lu();
        let pivot = lu.u().diagonal().iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min);
        if pivot <= PIVOT_FLOOR * scale {
            return Err(SymbolError::ZeroSample(j));
        }
        dets.push(lu.determinant());
    }
    phase_index(&dets, phase_guard)
}

/// [`det_index_oracle`] starting at `n` and doubling the grid while the
/// phase sum is ambiguous.
pub fn det_index_adaptive(m: &SymMatrix, n: usize, phase_guard: f64) -> Result<i32, SymbolError> {
    let mut n = n;
    loop {
        match det_index_oracle(m, n, phase_guard) {
            Err(SymbolError::AmbiguousPhase(_)) if n < MAX_ORACLE_GRID => n *= 2,
            other => return other,
        }
    }
}

/// Residual of `m m* - I`.
pub fn unitarity_check(m: &DMatrix<C64>, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    if m.nrows() != m.ncols() {
        report.failure("unitarity", format!("{}x{} matrix is not square", m.nrows(), m.ncols()));
        return report;
    }
    let n = m.nrows();
    let residual = (m * m.adjoint() - DMatrix::<C64>::identity(n, n)).iter().map(|x| x.norm()).fold(0.0, f64::max);
    report.residual("unitarity", residual, tol);
    report
}

/// Scaled grid residual `max |A - A_- d A_+| / max(1, max |A|)`.
pub fn reconstruction_residual(target: &SymMatrix, f: &MatrixFactorization, n: usize) -> Result<f64, SymbolError> {
    let grid = CircleGrid::new(n)?;
    let a = sample_matrix(target, &grid)?;
    let minus = sample_matrix(&f.minus, &grid)?;
    let plus = sample_matrix(&f.plus, &grid)?;
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (j, t) in grid.points().into_iter().enumerate() {
        let mut m = minus[j].clone();
        for (c, &k) in f.d.iter().enumerate() {
            let s = t.powi(k);
            m.column_mut(c).iter_mut().for_each(|x| *x *= s);
        }
        let r = m * &plus[j];
        scale = scale.max(a[j].iter().map(|x| x.norm()).fold(0.0, f64::max));
        diff = diff.max((&a[j] - r).iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    Ok(diff / scale)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    /// Analytic in `|t| >= 1` including infinity.
    Minus,
    /// Analytic in `|t| <= 1`.
    Plus,
}

fn entry_violations(zp: &ZeroPoleData, side: Side, tol: f64) -> Vec<String> {
    let mut bad = Vec::new();
    match side {
        Side::Minus => {
            bad.extend(zp.poles.iter().filter(|p| p.norm() >= 1.0 - tol).map(|p| format!("pole {p}")));
            if zp.growth > 0 {
                bad.push(format!("grows like t^{} at infinity", zp.growth));
            }
        }
        Side::Plus => {
            bad.extend(zp.poles.iter().filter(|p| p.norm() * (1.0 - tol) <= 1.0).map(|p| format!("pole {p}")));
            if zp.order_at_origin < 0 {
                bad.push(format!("pole of order {} at the origin", -zp.order_at_origin));
            }
        }
    }
    bad
}

fn det_violations(zp: &ZeroPoleData, side: Side, tol: f64) -> Vec<String> {
    let mut bad = Vec::new();
    match side {
        Side::Minus => {
            bad.extend(zp.zeros.iter().filter(|z| z.norm() >= 1.0 - tol).map(|z| format!("zero {z}")));
            bad.extend(zp.poles.iter().filter(|p| p.norm() >= 1.0 - tol).map(|p| format!("pole {p}")));
            if zp.growth != 0 {
                bad.push(format!("behaves like t^{} at infinity", zp.growth));
            }
        }
        Side::Plus => {
            bad.extend(zp.zeros.iter().filter(|z| z.norm() * (1.0 - tol) <= 1.0).map(|z| format!("zero {z}")));
            bad.extend(zp.poles.iter().filter(|p| p.norm() * (1.0 - tol) <= 1.0).map(|p| format!("pole {p}")));
            if zp.order_at_origin != 0 {
                bad.push(format!("t^{} at the origin", zp.order_at_origin));
            }
        }
    }
    bad
}

fn audit_factor(report: &mut VerificationReport, name: &str, m: &SymMatrix, side: Side, tol: f64) {
    let mut bad = Vec::new();
    for (k, e) in m.entries().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        match e.zeros_poles() {
            Ok(zp) => bad.extend(
                entry_violations(&zp, side, tol)
                    .into_iter()
                    .map(|v| format!("({}, {}): {v}", k / m.cols(), k % m.cols())),
            ),
            Err(err) => bad.push(format!("({}, {}): {err}", k / m.cols(), k % m.cols())),
        }
    }
    let detail = (!bad.is_empty()).then(|| bad.join("; "));
    report.violations(&format!("{name}.entries_analytic"), bad.len(), detail);
    let det = m.det_exact().and_then(|d| d.zeros_poles());
    match det {
        Ok(zp) => {
            let bad = det_violations(&zp, side, tol);
            let detail = (!bad.is_empty()).then(|| bad.join("; "));
            report.violations(&format!("{name}.det_invertible"), bad.len(), detail);
        }
        Err(err) => {
            report.failure(&format!("{name}.det_invertible"), err.to_string());
        }
    }
}

/// Full certification of `target = minus · diag(t^d) · plus`:
/// grid reconstruction, structural analyticity of the factor entries,
/// invertibility of the factor determinants in their regions, and the index
/// sum against the argument principle applied to `det target`.
pub fn verify_matrix_factorization(
    target: &SymMatrix,
    f: &MatrixFactorization,
    tol: &Tolerances,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = f.d.len();
    let shapes = [target.rows(), target.cols(), f.minus.rows(), f.minus.cols(), f.plus.rows(), f.plus.cols()];
    if shapes.iter().any(|&s| s != n) {
        report.failure("dimensions", format!("target/minus/plus/d shapes {shapes:?} vs {n} indices"));
        return report;
    }
    match reconstruction_residual(target, f, tol.verify_grid) {
        Ok(r) => report.residual("reconstruction", r, tol.reconstruction),
        Err(e) => report.failure("reconstruction", e.to_string()),
    };
    audit_factor(&mut report, "minus", &f.minus, Side::Minus, tol.root_on_circle);
    audit_factor(&mut report, "plus", &f.plus, Side::Plus, tol.root_on_circle);
    let sum: i32 = f.d.iter().sum();
    match det_index_adaptive(target, tol.index_grid, tol.phase_guard) {
        Ok(ind) => {
            report.residual("index_sum", (ind - sum).abs() as f64, 0.0);
            if let Some(c) = report.checks.last_mut() {
                c.detail = Some(format!("sum d = {sum}, ind det = {ind}"));
            }
        }
        Err(e) => {
            report.failure("index_sum", e.to_string());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::RationalSymbol;

    #[test]
    fn identity_with_trivial_factors() {
        let id = SymMatrix::identity(3);
        let f = MatrixFactorization { minus: id.clone(), d: vec![0; 3], plus: id.clone() };
        let r = verify_matrix_factorization(&id, &f, &Tolerances::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("reconstruction").unwrap().residual, 0.0);
    }

    #[test]
    fn oracle_on_diagonal_powers() {
        assert_eq!(det_index_oracle(&SymMatrix::identity(2), 1024, 0.1).unwrap(), 0);
        assert_eq!(det_index_oracle(&SymMatrix::diag_powers(&[1, 2]), 1024, 0.1).unwrap(), 3);
    }

    #[test]
    fn diagonal_factorization_and_mutations() {
        let target = SymMatrix::diag_powers(&[1, 2]);
        let f = MatrixFactorization { minus: SymMatrix::identity(2), d: vec![1, 2], plus: SymMatrix::identity(2) };
        let tol = Tolerances::default();
        assert!(verify_matrix_factorization(&target, &f, &tol).passed());
        let flipped = MatrixFactorization { d: vec![2, -1], ..f.clone() };
        let r = verify_matrix_factorization(&target, &flipped, &tol);
        assert!(!r.get("reconstruction").unwrap().passed);
        assert!(!r.get("index_sum").unwrap().passed);
        // moving t into plus breaks the plus determinant audit
        let bad = MatrixFactorization {
            minus: SymMatrix::identity(2),
            d: vec![0, 2],
            plus: SymMatrix::diagonal(&[RationalSymbol::t_power(1), RationalSymbol::one()]),
        };
        let r = verify_matrix_factorization(&target, &bad, &tol);
        assert!(r.get("reconstruction").unwrap().passed);
        assert!(!r.get("plus.det_invertible").unwrap().passed);
    }

    #[test]
    fn duplicated_row_is_not_unitary() {
        let m = DMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(!unitarity_check(&m, 1e-12).passed());
        assert!(unitarity_check(&DMatrix::identity(3, 3), 1e-12).passed());
    }
}
