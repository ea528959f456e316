//! Explicit factorization of upper-triangular 2×2 blocks.
//!
//! With `λ11 = m1 t^a p1` and `λ22 = m2 t^b p2` factored by the scalar
//! engine, the block equals `diag(m1, m2) · [[t^a, c], [0, t^b]] · diag(p1, p2)`
//! with `c = λ12 / (m1 p2)`. Unipotent corrections built from the additive
//! projections of `c` leave only a polynomial band between `t^{b+1}` and
//! `t^{a-1}` in the corner; the remaining polynomial matrix is column-reduced.

use nalgebra::DMatrix;

use crate::error::{FactorError, SymbolError};
use crate::factorization::MatrixFactorization;
use crate::scalar::factor_rational;
use crate::symbol::split::{project, taylor_coeffs};
use crate::symbol::{CircleGrid, LaurentPoly, RationalSymbol, SymMatrix, C64};
use crate::verify::sample_matrix;

/// Entries below this fraction of the block scale on a 256-point grid count
/// as identically zero.
const ZERO_ENTRY: f64 = 1e-10;

/// Constant conjugations tried to bring a 2×2 block to upper-triangular form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Similarity {
    Identity,
    /// `J = [[0, 1], [1, 0]]`: a vanishing (1, 2) entry becomes (2, 1).
    Swap,
}

impl Similarity {
    pub fn matrix(self) -> DMatrix<C64> {
        let (z, o) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        match self {
            Similarity::Identity => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
            Similarity::Swap => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        }
    }
}

/// Finds `S` in the catalog with `S λ S⁻¹` upper triangular (`S = S⁻¹` for
/// every catalog entry). The vanishing corner is replaced by an exact zero.
pub fn triangularize_2x2(block: &SymMatrix) -> Result<Option<(Similarity, SymMatrix)>, SymbolError> {
    if block.rows() != 2 || block.cols() != 2 {
        return Ok(None);
    }
    let grid = CircleGrid::new(256)?;
    let samples = sample_matrix(block, &grid)?;
    let entry_max = |i: usize, j: usize| samples.iter().map(|m| m[(i, j)].norm()).fold(0.0, f64::max);
    let scale = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| entry_max(i, j)).fold(0.0, f64::max);
    let vanishes = |i, j| entry_max(i, j) <= ZERO_ENTRY * scale;
    if vanishes(1, 0) {
        let mut m = block.clone();
        m.set(1, 0, RationalSymbol::zero());
        return Ok(Some((Similarity::Identity, m)));
    }
    if vanishes(0, 1) {
        let m = SymMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (1, 0) => RationalSymbol::zero(),
            _ => block.get(1 - i, 1 - j).clone(),
        });
        return Ok(Some((Similarity::Swap, m)));
    }
    Ok(None)
}

type PolyMatrix = [[LaurentPoly; 2]; 2];

fn column_degree(m: &PolyMatrix, j: usize) -> i32 {
    (0..2).filter(|&i| !m[i][j].is_zero()).map(|i| m[i][j].max_deg()).max().unwrap_or(i32::MIN)
}

fn leading(m: &PolyMatrix, j: usize, deg: i32) -> [C64; 2] {
    [m[0][j].coeff(deg), m[1][j].coeff(deg)]
}

/// `col_hi -= alpha t^k col_lo`.
fn column_op(m: &mut PolyMatrix, hi: usize, lo: usize, alpha: C64, k: i32) {
    for row in m.iter_mut() {
        let term = row[lo].scale(alpha).shift(k);
        row[hi] = &row[hi] - &term;
    }
}

/// Drops coefficients of degree `>= deg` (cancelled by construction) and
/// rounding-level ones elsewhere.
fn truncate_column(m: &mut PolyMatrix, j: usize, deg: i32) {
    let scale = (0..2).map(|i| m[i][j].max_abs()).fold(0.0, f64::max);
    for row in m.iter_mut() {
        let p = &row[j];
        if p.is_zero() {
            continue;
        }
        let keep: Vec<C64> = (p.min_deg()..deg.min(p.max_deg() + 1)).map(|k| p.coeff(k)).collect();
        row[j] = LaurentPoly::trimmed(p.min_deg(), keep, 64.0 * f64::EPSILON * scale);
    }
}

/// Column reduction of a nonsingular polynomial matrix: returns `P V` with a
/// nonsingular leading column coefficient matrix and the unimodular `V`.
fn column_reduce(mut p: PolyMatrix) -> Result<(PolyMatrix, PolyMatrix), FactorError> {
    let one = LaurentPoly::one();
    let zero = LaurentPoly::zero();
    let mut v: PolyMatrix = [[one.clone(), zero.clone()], [zero, one]];
    let budget = 4 * (column_degree(&p, 0).max(0) + column_degree(&p, 1).max(0)) as usize + 8;
    for _ in 0..budget {
        let d = [column_degree(&p, 0), column_degree(&p, 1)];
        if d.contains(&i32::MIN) {
            return Err(FactorError::Construction("column reduction produced a zero column".into()));
        }
        let l = [leading(&p, 0, d[0]), leading(&p, 1, d[1])];
        let det = l[0][0] * l[1][1] - l[0][1] * l[1][0];
        let norm = |x: &[C64; 2]| x[0].norm().max(x[1].norm());
        if det.norm() > 1e-9 * norm(&l[0]) * norm(&l[1]) {
            return Ok((p, v));
        }
        let (hi, lo) = if d[0] >= d[1] { (0, 1) } else { (1, 0) };
        let r = if l[lo][0].norm() >= l[lo][1].norm() { 0 } else { 1 };
        let alpha = l[hi][r] / l[lo][r];
        let k = d[hi] - d[lo];
        column_op(&mut p, hi, lo, alpha, k);
        column_op(&mut v, hi, lo, alpha, k);
        truncate_column(&mut p, hi, d[hi]);
    }
    Err(FactorError::Construction("column reduction did not terminate".into()))
}

fn unipotent(corner: RationalSymbol) -> SymMatrix {
    SymMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => corner.clone(),
        (1, 0) => RationalSymbol::zero(),
        _ => RationalSymbol::one(),
    })
}

fn from_poly(m: &PolyMatrix) -> SymMatrix {
    SymMatrix::from_fn(2, 2, |i, j| RationalSymbol::from_poly(m[i][j].clone()))
}

/// Factors an upper-triangular 2×2 block. The result is meant to be
/// certified by the verifier, not trusted.
pub fn factor_triangular_2x2(block: &SymMatrix, root_tol: f64) -> Result<MatrixFactorization, FactorError> {
    if block.rows() != 2 || block.cols() != 2 {
        return Err(FactorError::Size(format!("expected a 2x2 block, got {}x{}", block.rows(), block.cols())));
    }
    if !block.get(1, 0).is_zero() {
        return Err(FactorError::NotTriangular);
    }
    let diag = |k: usize| {
        factor_rational(block.get(k, k), root_tol)
            .map_err(|source| FactorError::IllPosed { what: format!("diagonal entry {}", k + 1), source })
    };
    let (f1, f2) = (diag(0)?, diag(1)?);
    let (a, b) = (f1.index, f2.index);
    let c = block.get(0, 1).checked_div(&f1.minus)?.checked_div(&f2.plus)?;

    let (mut x, mut y) = (RationalSymbol::zero(), RationalSymbol::zero());
    let mut band = LaurentPoly::zero();
    if !c.is_zero() {
        let low = project(&c.shift(-(b + 1)))?;
        x = -&low.neg.shift(1);
        let h = a.max(b + 1);
        y = -&project(&c.shift(-h))?.pos.shift(h - a);
        if a - b >= 2 {
            band = LaurentPoly::new(1, taylor_coeffs(&low.pos, (a - b - 1) as usize)?);
        }
    }

    // middle factor t^b [[t^n, u], [0, 1]] = q diag(t^d) w
    let (q, d, w) = if band.is_zero() {
        (SymMatrix::identity(2), vec![a, b], SymMatrix::identity(2))
    } else {
        let p: PolyMatrix = [[LaurentPoly::monomial(C64::new(1.0, 0.0), a - b), band], [LaurentPoly::zero(), LaurentPoly::one()]];
        let (pf, v) = column_reduce(p)?;
        let delta = [column_degree(&pf, 0), column_degree(&pf, 1)];
        if delta[0] + delta[1] != a - b {
            return Err(FactorError::Construction(format!(
                "column degrees {delta:?} do not add up to {}",
                a - b
            )));
        }
        let q = SymMatrix::from_fn(2, 2, |i, j| RationalSymbol::from_poly(pf[i][j].shift(-delta[j])));
        let adj: PolyMatrix = [[v[1][1].clone(), -&v[0][1]], [-&v[1][0], v[0][0].clone()]];
        (q, vec![b + delta[0], b + delta[1]], from_poly(&adj))
    };

    let left = SymMatrix::diagonal(&[f1.minus.clone(), f2.minus.clone()]);
    let right = SymMatrix::diagonal(&[f1.plus.clone(), f2.plus.clone()]);
    let minus = left.mul(&unipotent(-&x))?.mul(&q)?;
    let plus = w.mul(&unipotent(-&y))?.mul(&right)?;
    Ok(MatrixFactorization { minus, d, plus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::{Tolerances, ROOT_ON_CIRCLE};
    use crate::verify::verify_matrix_factorization;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn poly(min_deg: i32, coeffs: &[f64]) -> RationalSymbol {
        RationalSymbol::from_poly(LaurentPoly::new(min_deg, coeffs.iter().map(|&x| c(x)).collect()))
    }

    fn upper(a: RationalSymbol, b: RationalSymbol, d: RationalSymbol) -> SymMatrix {
        SymMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => a.clone(),
            (0, 1) => b.clone(),
            (1, 0) => RationalSymbol::zero(),
            _ => d.clone(),
        })
    }

    fn certify(m: &SymMatrix) -> MatrixFactorization {
        let f = factor_triangular_2x2(m, ROOT_ON_CIRCLE).unwrap();
        let report = verify_matrix_factorization(m, &f, &Tolerances::default());
        assert!(report.passed(), "{report}\n{m}");
        f
    }

    #[test]
    fn diagonal_powers() {
        let f = certify(&upper(RationalSymbol::t_power(1), RationalSymbol::zero(), RationalSymbol::one()));
        assert_eq!(f.d, vec![1, 0]);
        assert_eq!(f.minus, SymMatrix::identity(2));
        assert_eq!(f.plus, SymMatrix::identity(2));
    }

    #[test]
    fn jordan_block() {
        let t = RationalSymbol::t_power(1);
        let f = certify(&upper(t.clone(), RationalSymbol::one(), t));
        assert_eq!(f.d.iter().sum::<i32>(), 2);
    }

    #[test]
    fn diagonal_scalar_entries() {
        let f = certify(&upper(poly(0, &[0.5, 1.0]), RationalSymbol::zero(), poly(0, &[-2.0, 1.0])));
        assert_eq!(f.d, vec![1, 0]);
    }

    #[test]
    fn band_needs_column_reduction() {
        // [[t^4, t^3], [0, 1]]: col1 - t col2 = (0, -t), so the indices are 1 and 3
        let f = certify(&upper(RationalSymbol::t_power(4), RationalSymbol::t_power(3), RationalSymbol::one()));
        assert_eq!(f.sorted_indices(), vec![1, 3]);
        // after the corrections the band is u = t + t^2/2 + 2t^3; a column of
        // degree <= 1 would need 0.5 b0 + b1 = 2 b0 + 0.5 b1 = 0, which forces
        // b = 0, so the indices balance to 2 and 2
        let f = certify(&upper(RationalSymbol::t_power(4), poly(0, &[0.3, 1.0, 0.5, 2.0, 0.7, 0.1]), RationalSymbol::one()));
        assert_eq!(f.d, vec![2, 2]);
        let f = certify(&upper(RationalSymbol::t_power(3), poly(2, &[1.0]), RationalSymbol::t_power(-1)));
        assert_eq!(f.d.iter().sum::<i32>(), 2);
    }

    #[test]
    fn rational_entries() {
        let den = LaurentPoly::new(0, vec![c(-0.4), c(1.0)]);
        let corner = RationalSymbol::new(LaurentPoly::new(-1, vec![c(1.0), c(2.0), c(-1.0)]), den).unwrap();
        let a = RationalSymbol::new(LaurentPoly::new(0, vec![c(0.1), c(0.0), c(0.0), c(1.0)]), LaurentPoly::new(0, vec![c(3.0), c(1.0)])).unwrap();
        let d = poly(-1, &[0.25, 1.0, 0.0, 0.2]);
        certify(&upper(a, corner, d));
    }

    #[test]
    fn rejects_non_triangular_and_circle_zeros() {
        let m = SymMatrix::from_fn(2, 2, |_, _| RationalSymbol::one());
        assert_eq!(factor_triangular_2x2(&m, ROOT_ON_CIRCLE), Err(FactorError::NotTriangular));
        let m = upper(poly(0, &[-1.0, 1.0]), RationalSymbol::zero(), RationalSymbol::one());
        assert!(matches!(factor_triangular_2x2(&m, ROOT_ON_CIRCLE), Err(FactorError::IllPosed { .. })));
    }

    #[test]
    fn catalog_similarities() {
        let lower = SymMatrix::from_fn(2, 2, |i, j| if i < j { RationalSymbol::zero() } else { poly(0, &[1.0, i as f64 + j as f64]) });
        let (s, m) = triangularize_2x2(&lower).unwrap().unwrap();
        assert_eq!(s, Similarity::Swap);
        assert_eq!(m.get(0, 0), lower.get(1, 1));
        assert_eq!(m.get(0, 1), lower.get(1, 0));
        let full = SymMatrix::from_fn(2, 2, |_, _| RationalSymbol::one());
        assert_eq!(triangularize_2x2(&full).unwrap(), None);
    }
}
