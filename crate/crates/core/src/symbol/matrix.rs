//! Matrices of rational symbols and their exact determinants.

use std::fmt;

use nalgebra::DMatrix;
use rustfft::FftPlanner;

use super::laurent::LaurentPoly;
use super::rational::{cancel_pairs, RationalSymbol, ZeroPoleData, CANCEL_TOL};
use super::roots::raw_roots;
use super::C64;
use crate::error::SymbolError;

/// Dense row-major matrix with rational-symbol entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalSymbol>,
}

impl SymMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RationalSymbol>) -> Result<Self, SymbolError> {
        if data.len() != rows * cols {
            return Err(SymbolError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(SymMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RationalSymbol) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        SymMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RationalSymbol::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RationalSymbol::one() } else { RationalSymbol::zero() })
    }

    /// `diag(t^{d_1}, ..., t^{d_n})`.
    pub fn diag_powers(d: &[i32]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { RationalSymbol::t_power(d[i]) } else { RationalSymbol::zero() })
    }

    pub fn diagonal(entries: &[RationalSymbol]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { RationalSymbol::zero() })
    }

    pub fn from_constant(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| RationalSymbol::constant(m[(i, j)]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalSymbol {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalSymbol) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RationalSymbol] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&RationalSymbol) -> RationalSymbol) -> Self {
        SymMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &SymMatrix) -> Result<SymMatrix, SymbolError> {
        if self.cols != rhs.rows {
            return Err(SymbolError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let products: Vec<RationalSymbol> = (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).collect();
            RationalSymbol::sum(products.iter())
        }))
    }

    /// `M · self` for a constant matrix `M`.
    pub fn left_mul_const(&self, m: &DMatrix<C64>) -> Result<SymMatrix, SymbolError> {
        if m.ncols() != self.rows {
            return Err(SymbolError::Dimension(format!(
                "cannot multiply constant {}x{} by {}x{}",
                m.nrows(),
                m.ncols(),
                self.rows,
                self.cols
            )));
        }
        Ok(Self::from_fn(m.nrows(), self.cols, |i, j| {
            RationalSymbol::linear_combination((0..self.rows).map(|k| (m[(i, k)], self.get(k, j))))
        }))
    }

    /// `self · M` for a constant matrix `M`.
    pub fn right_mul_const(&self, m: &DMatrix<C64>) -> Result<SymMatrix, SymbolError> {
        if m.nrows() != self.cols {
            return Err(SymbolError::Dimension(format!(
                "cannot multiply {}x{} by constant {}x{}",
                self.rows,
                self.cols,
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self::from_fn(self.rows, m.ncols(), |i, j| {
            RationalSymbol::linear_combination((0..self.cols).map(|k| (m[(k, j)], self.get(i, k))))
        }))
    }

    pub fn eval_at(&self, t: C64) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(t))
    }

    /// Exact determinant: denominators are cleared by row or by column
    /// (whichever gives the smaller degree bound), the resulting polynomial
    /// determinant is recovered by evaluation at roots of unity and inverse
    /// DFT, and cleared denominator roots that are also roots of the result
    /// are deflated.
    pub fn det_exact(&self) -> Result<DetRational, SymbolError> {
        if !self.is_square() {
            return Err(SymbolError::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(DetRational { num: LaurentPoly::one(), den_roots: Vec::new() });
        }
        let den_roots: Vec<Vec<C64>> = self
            .data
            .iter()
            .map(|e| if e.is_polynomial() { Ok(Vec::new()) } else { raw_roots(e.den().coeffs()) })
            .collect::<Result<_, _>>()?;
        let by_rows = clear_lines(self, &den_roots, false);
        let by_cols = clear_lines(self, &den_roots, true);
        let cleared = if by_rows.degree_bound() <= by_cols.degree_bound() { by_rows } else { by_cols };
        let bound = cleared.degree_bound();
        let m = (bound + 1).next_power_of_two().max(2);
        let mut values: Vec<C64> = (0..m)
            .map(|j| {
                let w = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64);
                let mat = DMatrix::from_fn(n, n, |i, k| cleared.polys[i * n + k].eval(w));
                mat.determinant()
            })
            .collect();
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(SymbolError::ZeroSymbol);
        }
        FftPlanner::new().plan_fft_forward(m).process(&mut values);
        let coeffs: Vec<C64> = values.iter().take(bound + 1).map(|v| v / m as f64).collect();
        let mut num = LaurentPoly::trimmed(0, coeffs, 64.0 * f64::EPSILON * scale);
        if num.is_zero() {
            return Err(SymbolError::ZeroSymbol);
        }
        let mut poles = Vec::new();
        for r in cleared.lcm_roots.into_iter().flatten() {
            let value = num.eval_poly(r).norm();
            if value <= 1e-8 * num.eval_abs_scale(r) / r.norm().powi(num.min_deg()).max(1e-300) {
                num = deflate(&num, r);
            } else {
                poles.push(r);
            }
        }
        Ok(DetRational { num: num.shift(cleared.shift), den_roots: poles })
    }
}

struct Cleared {
    /// Entry polynomials after clearing, row-major, all with `min_deg >= 0`.
    polys: Vec<LaurentPoly>,
    /// Per-line denominator roots that were multiplied in.
    lcm_roots: Vec<Vec<C64>>,
    /// Power of `t` to multiply the polynomial determinant by.
    shift: i32,
    line_degrees: Vec<usize>,
}

impl Cleared {
    fn degree_bound(&self) -> usize {
        self.line_degrees.iter().sum()
    }
}

fn clear_lines(m: &SymMatrix, den_roots: &[Vec<C64>], by_cols: bool) -> Cleared {
    let n = m.rows;
    let idx = |line: usize, k: usize| if by_cols { k * n + line } else { line * n + k };
    let mut polys = vec![LaurentPoly::zero(); n * n];
    let mut lcm_roots = Vec::with_capacity(n);
    let mut line_degrees = Vec::with_capacity(n);
    let mut shift = 0;
    for line in 0..n {
        let entries: Vec<usize> = (0..n).map(|k| idx(line, k)).collect();
        let mut lcm: Vec<C64> = Vec::new();
        for &e in &entries {
            if m.data[e].is_zero() {
                continue;
            }
            let mut used = vec![false; lcm.len()];
            for &r in &den_roots[e] {
                match match_root(&lcm, &used, r) {
                    Some(i) => used[i] = true,
                    None => {
                        lcm.push(r);
                        used.push(true);
                    }
                }
            }
        }
        let low = entries
            .iter()
            .filter(|&&e| !m.data[e].is_zero())
            .map(|&e| m.data[e].num().min_deg())
            .min()
            .unwrap_or(0);
        shift += low;
        let mut degree = 0;
        for &e in &entries {
            let s = &m.data[e];
            if s.is_zero() {
                continue;
            }
            let mut used = vec![false; lcm.len()];
            for &r in &den_roots[e] {
                if let Some(i) = match_root(&lcm, &used, r) {
                    used[i] = true;
                }
            }
            let complement: Vec<C64> = lcm.iter().zip(&used).filter(|(_, u)| !**u).map(|(r, _)| *r).collect();
            let p = &s.num().shift(-low) * &LaurentPoly::from_roots(&complement, C64::new(1.0, 0.0));
            degree = degree.max(p.max_deg().max(0) as usize);
            polys[e] = p;
        }
        lcm_roots.push(lcm);
        line_degrees.push(degree);
    }
    Cleared { polys, lcm_roots, shift, line_degrees }
}

fn match_root(lcm: &[C64], used: &[bool], r: C64) -> Option<usize> {
    let scale = r.norm().max(1.0);
    lcm.iter()
        .enumerate()
        .filter(|(i, z)| !used[*i] && (**z - r).norm() <= CANCEL_TOL * scale)
        .min_by(|a, b| (a.1 - r).norm().total_cmp(&(b.1 - r).norm()))
        .map(|(i, _)| i)
}

/// Divides the polynomial part of `p` by `(t - r)`, discarding the remainder.
/// Runs forward for `|r| <= 1` and backward otherwise, which keeps the
/// recurrence stable.
fn deflate(p: &LaurentPoly, r: C64) -> LaurentPoly {
    let a = p.coeffs();
    let n = a.len() - 1;
    let mut b = vec![C64::new(0.0, 0.0); n];
    if r.norm() <= 1.0 {
        let mut acc = C64::new(0.0, 0.0);
        for k in (1..=n).rev() {
            acc = a[k] + r * acc;
            b[k - 1] = acc;
        }
    } else {
        let mut prev = C64::new(0.0, 0.0);
        for k in 0..n {
            prev = (prev - a[k]) / r;
            b[k] = prev;
        }
    }
    LaurentPoly::new(p.min_deg(), b)
}

/// Determinant of a symbol matrix: `num / Π (t - r)` over `den_roots`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetRational {
    pub num: LaurentPoly,
    pub den_roots: Vec<C64>,
}

impl DetRational {
    pub fn eval(&self, t: C64) -> C64 {
        self.den_roots.iter().fold(self.num.eval(t), |acc, r| acc / (t - r))
    }

    pub fn zeros_poles(&self) -> Result<ZeroPoleData, SymbolError> {
        let zeros = raw_roots(self.num.coeffs())?;
        let (zeros, poles) = cancel_pairs(zeros, self.den_roots.clone());
        let growth = self.num.max_deg() - self.den_roots.len() as i32;
        Ok(ZeroPoleData { order_at_origin: self.num.min_deg(), zeros, poles, growth })
    }

    pub fn to_symbol(&self) -> RationalSymbol {
        RationalSymbol::new(self.num.clone(), LaurentPoly::from_roots(&self.den_roots, C64::new(1.0, 0.0)))
            .expect("monic denominator is nonzero")
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
