//! Rational functions on the unit circle, stored as a ratio of Laurent
//! polynomials in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::LaurentPoly;
use super::roots::raw_roots;
use super::C64;
use crate::error::SymbolError;

/// Roots closer than this (relative) across numerator and denominator are
/// treated as cancelling.
pub const CANCEL_TOL: f64 = 1e-7;

/// `num / den` with `den` a monic polynomial (`min_deg == 0`). Any power of
/// `t` is carried by `num`. The zero symbol is `0 / 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymbol {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Zeros and poles of a symbol after cancelling coincident pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPoleData {
    /// Order of the symbol at `t = 0` (positive: zero, negative: pole).
    pub order_at_origin: i32,
    pub zeros: Vec<C64>,
    pub poles: Vec<C64>,
    /// Behaviour at infinity: the symbol grows like `t^growth`.
    pub growth: i32,
}

impl ZeroPoleData {
    pub fn zeros_inside(&self) -> usize {
        self.zeros.iter().filter(|z| z.norm() < 1.0).count()
    }

    pub fn poles_inside(&self) -> usize {
        self.poles.iter().filter(|z| z.norm() < 1.0).count()
    }

    /// Closest distance from any finite zero or pole to the unit circle.
    pub fn closest_to_circle(&self) -> Option<(C64, f64)> {
        self.zeros
            .iter()
            .chain(self.poles.iter())
            .map(|z| (*z, (z.norm() - 1.0).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

fn dens_match(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    a.min_deg() == b.min_deg()
        && a.coeffs().len() == b.coeffs().len()
        && a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .all(|(x, y)| (x - y).norm() <= 4.0 * f64::EPSILON * (1.0 + x.norm()))
}

impl RationalSymbol {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, SymbolError> {
        if den.is_zero() {
            return Err(SymbolError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading();
        let shift = den.min_deg();
        let inv = C64::new(1.0, 0.0) / lead;
        let den = LaurentPoly::new(0, den.coeffs().iter().map(|&c| c * inv).collect());
        let num = num.shift(-shift).scale(inv);
        RationalSymbol { num, den }
    }

    pub fn zero() -> Self {
        RationalSymbol { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn real(c: f64) -> Self {
        Self::constant(C64::new(c, 0.0))
    }

    /// `c * t^k`.
    pub fn monomial(c: C64, k: i32) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, k))
    }

    pub fn t_power(k: i32) -> Self {
        Self::monomial(C64::new(1.0, 0.0), k)
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalSymbol { num, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.coeffs().len() == 1
    }

    pub fn eval(&self, t: C64) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        self.num.eval(t) / self.den.eval(t)
    }

    pub fn scale(&self, c: C64) -> Self {
        if c.norm() == 0.0 {
            return Self::zero();
        }
        RationalSymbol { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        RationalSymbol { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, SymbolError> {
        if self.is_zero() {
            return Err(SymbolError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SymbolError> {
        Ok(self * &rhs.recip()?)
    }

    /// Sum of many symbols; terms with matching denominators are combined
    /// before cross-multiplying, which keeps degrees small.
    pub fn sum<'a, I: IntoIterator<Item = &'a RationalSymbol>>(terms: I) -> Self {
        let mut groups: Vec<(LaurentPoly, LaurentPoly)> = Vec::new();
        for term in terms {
            if term.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(den, _)| dens_match(den, &term.den)) {
                Some((_, num)) => *num = &*num + &term.num,
                None => groups.push((term.den.clone(), term.num.clone())),
            }
        }
        groups
            .into_iter()
            .map(|(den, num)| Self::canonical(num, den))
            .fold(Self::zero(), |acc, x| &acc + &x)
    }

    /// Sum of `coefficient * symbol` pairs, skipping zero coefficients.
    pub fn linear_combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C64, &'a RationalSymbol)>,
    {
        let scaled: Vec<RationalSymbol> = terms
            .into_iter()
            .filter(|(c, s)| c.norm() != 0.0 && !s.is_zero())
            .map(|(c, s)| s.scale(c))
            .collect();
        Self::sum(scaled.iter())
    }

    /// Zeros and poles with coincident numerator/denominator roots cancelled.
    pub fn zeros_poles(&self) -> Result<ZeroPoleData, SymbolError> {
        if self.is_zero() {
            return Err(SymbolError::ZeroSymbol);
        }
        let zeros = raw_roots(self.num.coeffs())?;
        let poles = raw_roots(self.den.coeffs())?;
        let (zeros, poles) = cancel_pairs(zeros, poles);
        let growth = self.num.max_deg() - self.den.span() as i32;
        Ok(ZeroPoleData { order_at_origin: self.num.min_deg(), zeros, poles, growth })
    }

    /// Cancels numerator/denominator root pairs that coincide within
    /// [`CANCEL_TOL`] and rebuilds both polynomials from the surviving roots.
    /// Symbols without such pairs are returned unchanged.
    pub fn reduced(&self) -> Self {
        if self.is_zero() || self.is_polynomial() {
            return self.clone();
        }
        let (Ok(zeros), Ok(poles)) = (raw_roots(self.num.coeffs()), raw_roots(self.den.coeffs())) else {
            return self.clone();
        };
        let (nz, np) = (zeros.len(), poles.len());
        let (zeros, poles) = cancel_pairs(zeros, poles);
        if zeros.len() == nz && poles.len() == np {
            return self.clone();
        }
        let num = LaurentPoly::from_roots(&zeros, self.num.leading()).shift(self.num.min_deg());
        let den = LaurentPoly::from_roots(&poles, C64::new(1.0, 0.0));
        Self::canonical(num, den)
    }
}

pub(crate) fn cancel_pairs(mut zeros: Vec<C64>, poles: Vec<C64>) -> (Vec<C64>, Vec<C64>) {
    let mut kept_poles = Vec::with_capacity(poles.len());
    for p in poles {
        let scale = p.norm().max(1.0);
        let best = zeros
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - p).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= CANCEL_TOL * scale => {
                zeros.swap_remove(i);
            }
            _ => kept_poles.push(p),
        }
    }
    (zeros, kept_poles)
}

impl Add for &RationalSymbol {
    type Output = RationalSymbol;
    fn add(self, rhs: &RationalSymbol) -> RationalSymbol {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if dens_match(&self.den, &rhs.den) {
            return RationalSymbol::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalSymbol::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalSymbol {
    type Output = RationalSymbol;
    fn sub(self, rhs: &RationalSymbol) -> RationalSymbol {
        self + &(-rhs)
    }
}

impl Mul for &RationalSymbol {
    type Output = RationalSymbol;
    fn mul(self, rhs: &RationalSymbol) -> RationalSymbol {
        if self.is_zero() || rhs.is_zero() {
            return RationalSymbol::zero();
        }
        let den = if rhs.is_polynomial() {
            self.den.clone()
        } else if self.is_polynomial() {
            rhs.den.clone()
        } else {
            &self.den * &rhs.den
        };
        RationalSymbol::canonical(&self.num * &rhs.num, den)
    }
}

impl Neg for &RationalSymbol {
    type Output = RationalSymbol;
    fn neg(self) -> RationalSymbol {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl fmt::Display for RationalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
