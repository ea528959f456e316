//! Additive splitting of rational symbols into the part analytic outside the
//! disk and vanishing at infinity (`neg`) and the part analytic inside the
//! disk (`pos`), i.e. the Laurent projections onto negative and nonnegative
//! powers on the circle.

use nalgebra::{DMatrix, DVector};

use super::laurent::LaurentPoly;
use super::rational::RationalSymbol;
use super::roots::raw_roots;
use super::C64;
use crate::error::SymbolError;
use crate::tolerance::ROOT_ON_CIRCLE;

/// `s = neg + pos` with `neg` analytic in `|t| >= 1` including infinity,
/// where it vanishes, and `pos` analytic in `|t| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub neg: RationalSymbol,
    pub pos: RationalSymbol,
}

/// Partial-fraction projection. Writes `s = P / (Q_in Q_out)` with every
/// negative power of `t` folded into `Q_in` and solves
/// `P = R_in Q_out + R_out Q_in`, `deg R_in < deg Q_in`, as a square linear
/// system.
pub fn project(s: &RationalSymbol) -> Result<Projection, SymbolError> {
    if s.is_zero() {
        return Ok(Projection { neg: RationalSymbol::zero(), pos: RationalSymbol::zero() });
    }
    let poles = raw_roots(s.den().coeffs())?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for p in poles {
        let d = (p.norm() - 1.0).abs();
        if d < ROOT_ON_CIRCLE {
            return Err(SymbolError::NotInvertibleOnContour { point: format!("{p}"), distance: d });
        }
        if p.norm() < 1.0 {
            inside.push(p);
        } else {
            outside.push(p);
        }
    }
    let one = C64::new(1.0, 0.0);
    let m = s.num().min_deg();
    let mut q_in = LaurentPoly::from_roots(&inside, one);
    let mut p = s.num().clone();
    if m < 0 {
        q_in = q_in.shift(-m);
        p = p.shift(-m);
    }
    let q_out = LaurentPoly::from_roots(&outside, one);
    let (p, q_in, q_out) = (dense(&p), dense(&q_in), dense(&q_out));
    let dp = p.len() - 1;
    let di = q_in.len() - 1;
    let d_o = q_out.len() - 1;
    if di == 0 {
        return Ok(Projection { neg: RationalSymbol::zero(), pos: s.clone() });
    }
    let n_in = di;
    let n_out = if dp >= di + d_o { dp - di + 1 } else { d_o };
    let rows = n_in + n_out;
    let mut a = DMatrix::<C64>::zeros(rows, rows);
    for k in 0..n_in {
        for (j, &q) in q_out.iter().enumerate() {
            a[(k + j, k)] += q;
        }
    }
    for k in 0..n_out {
        for (j, &q) in q_in.iter().enumerate() {
            a[(k + j, n_in + k)] += q;
        }
    }
    let mut b = DVector::<C64>::zeros(rows);
    for (i, &x) in p.iter().enumerate() {
        b[i] = x;
    }
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| SymbolError::Singular("partial-fraction system".into()))?;
    let r_in = LaurentPoly::new(0, x.iter().take(n_in).copied().collect());
    let r_out = LaurentPoly::new(0, x.iter().skip(n_in).copied().collect());
    Ok(Projection {
        neg: RationalSymbol::new(r_in, LaurentPoly::new(0, q_in))?,
        pos: RationalSymbol::new(r_out, LaurentPoly::new(0, q_out))?,
    })
}

fn dense(p: &LaurentPoly) -> Vec<C64> {
    debug_assert!(p.min_deg() >= 0);
    let mut v = vec![C64::new(0.0, 0.0); p.min_deg().max(0) as usize];
    v.extend_from_slice(p.coeffs());
    v
}

/// First `count` Taylor coefficients at `t = 0` of a symbol analytic there.
pub fn taylor_coeffs(s: &RationalSymbol, count: usize) -> Result<Vec<C64>, SymbolError> {
    let mut out = vec![C64::new(0.0, 0.0); count];
    if s.is_zero() || count == 0 {
        return Ok(out);
    }
    if s.num().min_deg() < 0 {
        return Err(SymbolError::Singular("series at a pole".into()));
    }
    let den = s.den().coeffs();
    if den[0].norm() == 0.0 {
        return Err(SymbolError::Singular("series at a pole".into()));
    }
    let num = dense(s.num());
    for k in 0..count {
        let mut acc = num.get(k).copied().unwrap_or_default();
        for j in 1..den.len().min(k + 1) {
            acc -= den[j] * out[k - j];
        }
        out[k] = acc / den[0];
    }
    Ok(out)
}
