//! Seeded generators of random rational symbols whose zeros and poles stay
//! at least 0.1 away from the unit circle. Used by self-tests and the
//! property suites.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::GroupSymbol;
use crate::center::CenterSymbol;
use crate::group::FiniteGroup;
use crate::reps::RepSet;
use crate::symbol::{LaurentPoly, RationalSymbol, SymMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A point with modulus in `[0.2, 0.9] ∪ [1.1, 2.5]`.
pub fn random_root(rng: &mut impl Rng) -> C64 {
    let modulus = if rng.gen_bool(0.5) { rng.gen_range(0.2..0.9) } else { rng.gen_range(1.1..2.5) };
    C64::from_polar(modulus, rng.gen_range(0.0..TAU))
}

/// Monic denominator of degree 1 or 2.
pub fn random_den(rng: &mut impl Rng) -> LaurentPoly {
    let k = rng.gen_range(1..=2);
    let roots: Vec<C64> = (0..k).map(|_| random_root(rng)).collect();
    LaurentPoly::from_roots(&roots, C64::new(1.0, 0.0))
}

/// One or two denominators shared by the entries of one symbol, which
/// keeps combined denominators small.
pub fn random_pool(rng: &mut impl Rng) -> Vec<LaurentPoly> {
    (0..rng.gen_range(1..=2)).map(|_| random_den(rng)).collect()
}

/// Numerator with up to four roots and lowest power in `[-2, 0]`, over a
/// denominator from `pool` (or 1).
pub fn random_symbol(rng: &mut impl Rng, pool: &[LaurentPoly]) -> RationalSymbol {
    let k = rng.gen_range(0..=4);
    let roots: Vec<C64> = (0..k).map(|_| random_root(rng)).collect();
    let lead = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
    let num = LaurentPoly::from_roots(&roots, lead).shift(rng.gen_range(-2..=0));
    let den = if pool.is_empty() || rng.gen_bool(0.3) {
        LaurentPoly::one()
    } else {
        pool[rng.gen_range(0..pool.len())].clone()
    };
    RationalSymbol::new(num, den).expect("monic denominator")
}

pub fn random_group_symbol(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> GroupSymbol {
    let pool = random_pool(rng);
    let a = (0..group.order()).map(|_| random_symbol(rng, &pool)).collect();
    GroupSymbol { group: group.clone(), a }
}

pub fn random_center_symbol(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> CenterSymbol {
    let classes = crate::group::conjugacy_classes(group).len();
    let pool = random_pool(rng);
    let coeffs = (0..classes).map(|_| random_symbol(rng, &pool)).collect();
    CenterSymbol::new(group.clone(), coeffs).expect("one coefficient per class")
}

pub fn random_blocks(rng: &mut impl Rng, r: &RepSet) -> Vec<SymMatrix> {
    let pool = random_pool(rng);
    r.degrees().iter().map(|&d| SymMatrix::from_fn(d, d, |_, _| random_symbol(rng, &pool))).collect()
}

/// A random `S_3` symbol with `a_4 = -ε a_2 - ε⁻¹ a_3`, which makes the
/// two-dimensional block triangular. Requires the built-in `S_3`.
pub fn s3_triangular_symbol(rng: &mut impl Rng, group: &Arc<FiniteGroup>) -> GroupSymbol {
    let eps = C64::from_polar(1.0, TAU / 3.0);
    let mut gs = random_group_symbol(rng, group);
    gs.a[3] = RationalSymbol::linear_combination([(-eps, &gs.a[1]), (-eps.conj(), &gs.a[2])]);
    gs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_avoid_the_circle() {
        let mut r = rng(1);
        for _ in 0..1000 {
            let m = random_root(&mut r).norm();
            assert!((0.2..=0.9).contains(&m) || (1.1..=2.5).contains(&m));
        }
    }

    #[test]
    fn seeded_and_reproducible() {
        let pool = random_pool(&mut rng(3));
        assert_eq!(random_symbol(&mut rng(9), &pool), random_symbol(&mut rng(9), &pool));
        let s = random_symbol(&mut rng(9), &pool);
        assert!(s.num().span() <= 4 && (-2..=0).contains(&s.num().min_deg()) && s.den().span() <= 2);
    }
}
