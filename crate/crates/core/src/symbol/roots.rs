//! Polynomial roots from companion-matrix eigenvalues.
//!
//! The companion matrix is already upper Hessenberg, so after balancing we run
//! a complex single-shift QR iteration (Wilkinson shifts, Givens rotations)
//! directly on it and polish every eigenvalue with a few Newton steps on the
//! original coefficients.

use super::laurent::LaurentPoly;
use super::C64;
use crate::error::SymbolError;
use crate::tolerance::ROOT_CLUSTER;

pub const MAX_DEGREE: usize = 64;

/// Roots of the polynomial part of a Laurent polynomial. The `t^offset`
/// factor carries no roots and is reported separately.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub offset: i32,
    /// Clustered roots with multiplicities.
    pub roots: Vec<(C64, usize)>,
}

impl RootSet {
    pub fn count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// All roots of `p` (clustered within [`ROOT_CLUSTER`]).
pub fn poly_roots(p: &LaurentPoly) -> Result<RootSet, SymbolError> {
    if p.is_zero() {
        return Err(SymbolError::ZeroSymbol);
    }
    let raw = raw_roots(p.coeffs())?;
    Ok(RootSet { offset: p.min_deg(), roots: cluster(&raw, ROOT_CLUSTER) })
}

/// Unclustered roots of `c_0 + c_1 t + ... + c_k t^k` (lowest power first).
/// Repeated roots come back as separate nearby values.
pub fn raw_roots(coeffs: &[C64]) -> Result<Vec<C64>, SymbolError> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let zeros_at_origin = c.iter().take_while(|x| x.norm() == 0.0).count();
    if zeros_at_origin == c.len() {
        return Err(SymbolError::ZeroSymbol);
    }
    let mut roots = vec![C64::new(0.0, 0.0); zeros_at_origin];
    let c = &c[zeros_at_origin..];
    let degree = c.len() - 1;
    if degree > MAX_DEGREE {
        return Err(SymbolError::DegreeTooLarge(degree));
    }
    match degree {
        0 => {}
        1 => roots.push(-c[0] / c[1]),
        _ => {
            let mut h = companion(c);
            balance(&mut h);
            let eig = hessenberg_eigenvalues(h)?;
            roots.extend(eig.into_iter().map(|z| polish(c, z)));
        }
    }
    Ok(roots)
}

/// Groups values closer than `tol * max(1, |z|)` and returns the mean of each
/// group with its size.
pub fn cluster(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, Vec<C64>)> = Vec::new();
    for &z in values {
        let scale = z.norm().max(1.0);
        match groups.iter_mut().find(|(center, _)| (*center - z).norm() <= tol * scale) {
            Some((center, members)) => {
                members.push(z);
                *center = members.iter().sum::<C64>() / members.len() as f64;
            }
            None => groups.push((z, vec![z])),
        }
    }
    groups.into_iter().map(|(c, m)| (c, m.len())).collect()
}

type Dense = Vec<Vec<C64>>;

fn companion(c: &[C64]) -> Dense {
    let n = c.len() - 1;
    let lead = c[n];
    let mut h = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 1..n {
        h[i][i - 1] = C64::new(1.0, 0.0);
    }
    for (i, row) in h.iter_mut().enumerate() {
        row[n - 1] = -c[i] / lead;
    }
    h
}

// Parlett-Reinsch balancing with powers of two, which keeps the matrix
// Hessenberg and introduces no rounding.
fn balance(h: &mut Dense) {
    let n = h.len();
    let radix = 2.0_f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += h[j][i].norm();
                    row += h[i][j].norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let s = col + row;
            let mut f = 1.0;
            let mut g = row / radix;
            while col < g {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while col > g {
                f /= radix;
                col /= radix * radix;
            }
            if (col + row) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    h[i][j] /= f;
                    h[j][i] *= f;
                }
            }
        }
    }
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn hessenberg_eigenvalues(mut h: Dense) -> Result<Vec<C64>, SymbolError> {
    let n = h.len();
    let mut out = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut since_deflation = 0usize;
    loop {
        if hi == 0 {
            out.push(h[0][0]);
            break;
        }
        // Locate the active unreduced block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[lo][lo - 1].norm() <= f64::EPSILON * s {
                h[lo][lo - 1] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[hi][hi]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > 200 * n {
            return Err(SymbolError::NoConvergence);
        }
        let mu = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[hi][hi] + C64::new(0.75 * h[hi][hi - 1].norm(), 0.5 * h[hi][hi - 1].norm())
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in lo..=hi {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            rots.push((k, c, s));
        }
        for &(k, c, s) in &rots {
            let top = (k + 2).min(hi);
            for row in h.iter_mut().take(top + 1).skip(lo) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s.conj();
                row[k + 1] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[k][k] += mu;
        }
    }
    Ok(out)
}

fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn eval_with_derivative(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

fn polish(c: &[C64], mut z: C64) -> C64 {
    let (mut p, mut dp) = eval_with_derivative(c, z);
    for _ in 0..8 {
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let (pn, dpn) = eval_with_derivative(c, next);
        if pn.norm() >= p.norm() {
            break;
        }
        z = next;
        p = pn;
        dp = dpn;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn sorted_re(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn t_squared_minus_one() {
        let r = sorted_re(raw_roots(&[c(-1.0), c(0.0), c(1.0)]).unwrap());
        assert!((r[0] - c(-1.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn quadratic_formula() {
        // t^2 - 5/2 t + 1 = (t - 2)(t - 1/2)
        let r = sorted_re(raw_roots(&[c(1.0), c(-2.5), c(1.0)]).unwrap());
        assert!((r[0] - c(0.5)).norm() < 1e-14);
        assert!((r[1] - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_has_no_roots() {
        let rs = poly_roots(&LaurentPoly::constant(c(3.0))).unwrap();
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn laurent_offset_is_separate() {
        let p = LaurentPoly::new(-3, vec![c(-1.0), c(0.0), c(1.0)]);
        let rs = poly_roots(&p).unwrap();
        assert_eq!(rs.offset, -3);
        assert_eq!(rs.count(), 2);
    }

    #[test]
    fn double_root_clusters() {
        let p = LaurentPoly::from_roots(&[c(0.5), c(0.5), C64::new(0.0, 2.0)], c(1.0));
        let rs = poly_roots(&p).unwrap();
        let total: usize = rs.roots.iter().map(|r| r.1).sum();
        assert_eq!(total, 3);
        assert!(rs.roots.iter().all(|(z, _)| (z - c(0.5)).norm() < 1e-6 || (z - C64::new(0.0, 2.0)).norm() < 1e-10));
    }

    #[test]
    fn degree_cap() {
        let coeffs = vec![c(1.0); 66];
        assert_eq!(raw_roots(&coeffs), Err(SymbolError::DegreeTooLarge(65)));
    }

    #[test]
    fn roots_of_unity_degree_40() {
        let mut coeffs = vec![c(0.0); 41];
        coeffs[0] = c(-1.0);
        coeffs[40] = c(1.0);
        let r = raw_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 40);
        for z in r {
            assert!((z.powi(40) - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn recovers_random_like_roots() {
        let truth: Vec<C64> = (0..30)
            .map(|k| {
                let k = k as f64;
                C64::from_polar(0.3 + 0.08 * k, 2.4 * k)
            })
            .collect();
        let p = LaurentPoly::from_roots(&truth, C64::new(0.7, -0.2));
        let r = raw_roots(p.coeffs()).unwrap();
        for z in &truth {
            let best = r.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9 * z.norm().max(1.0), "{z}: {best}");
        }
    }
}
