//! Laurent polynomials with complex coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::C64;

/// `t^min_deg * (c_0 + c_1 t + ... + c_{k} t^k)`, kept trimmed so that the
/// first and last stored coefficients are nonzero. The zero polynomial has no
/// coefficients and `min_deg == 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    min_deg: i32,
    coeffs: Vec<C64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_deg: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: C64, power: i32) -> Self {
        Self::new(power, vec![c])
    }

    pub fn new(min_deg: i32, coeffs: Vec<C64>) -> Self {
        Self::trimmed(min_deg, coeffs, 0.0)
    }

    /// Builds the polynomial and drops leading/trailing coefficients whose
    /// modulus does not exceed `threshold`.
    pub fn trimmed(mut min_deg: i32, mut coeffs: Vec<C64>, threshold: f64) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() <= threshold) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.norm() <= threshold).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            min_deg += lead_zeros as i32;
        }
        LaurentPoly { min_deg, coeffs }
    }

    /// Monic polynomial `prod (t - r)` scaled by `lead`.
    pub fn from_roots(roots: &[C64], lead: C64) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        Self::new(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_deg(&self) -> i32 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i32 {
        self.min_deg + self.coeffs.len() as i32 - 1
    }

    /// Degree of the polynomial part, i.e. `max_deg - min_deg`.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients of the polynomial part, lowest power first.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, power: i32) -> C64 {
        let k = power - self.min_deg;
        if k < 0 || k as usize >= self.coeffs.len() {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_deg: self.min_deg + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Horner evaluation of the polynomial part only.
    pub fn eval_poly(&self, t: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn eval(&self, t: C64) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        self.eval_poly(t) * t.powi(self.min_deg)
    }

    /// Sum of `|c_k| |t|^k`, the natural scale for judging an evaluation
    /// against rounding error.
    pub fn eval_abs_scale(&self, t: C64) -> f64 {
        let r = t.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm()) * r.powi(self.min_deg)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.scale(C64::new(sign, 0.0));
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().max(other.max_deg());
        let mut c = vec![C64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[(self.min_deg - lo) as usize + i] += x;
        }
        for (i, &x) in other.coeffs.iter().enumerate() {
            c[(other.min_deg - lo) as usize + i] += x * sign;
        }
        // Cancellation at the ends leaves rounding residue; anything below the
        // operands' rounding level is treated as an exact zero.
        let noise = 4.0 * f64::EPSILON * self.max_abs().max(other.max_abs());
        Self::trimmed(lo, c, noise)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        LaurentPoly::new(self.min_deg + rhs.min_deg, c)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let p = self.min_deg + i as i32;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match p {
                0 => {}
                1 => write!(f, "·t")?,
                _ => write!(f, "·t^{p}")?,
            }
        }
        Ok(())
    }
}
