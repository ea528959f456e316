//! Shared helpers for the integration suites.
#![allow(dead_code)]

pub mod golden;

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use whfact::block::{block_diagonalize, partial_indices, GroupSymbol};
use whfact::group::{build_group, FiniteGroup, GroupSpec};
use whfact::reps::{irreps_for, RepSet};
use whfact::Tolerances;

pub const MARGIN: f64 = 0.05;

pub fn catalog_specs() -> Vec<GroupSpec> {
    let c = |n| GroupSpec::Cyclic { n };
    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        c(5),
        c(8),
        GroupSpec::Klein4,
        GroupSpec::Product { factors: vec![c(2), c(3)] },
        GroupSpec::Product { factors: vec![c(2), c(2), c(2)] },
        GroupSpec::S3,
        GroupSpec::Q8,
        GroupSpec::A4,
        GroupSpec::Product { factors: vec![GroupSpec::S3, c(2)] },
    ]
}

pub fn load(spec: &GroupSpec) -> (Arc<FiniteGroup>, RepSet) {
    let g = build_group(spec).unwrap();
    let r = irreps_for(&g).unwrap();
    (Arc::new(g), r)
}

/// True when every block determinant keeps its zeros and poles at least
/// `margin` away from the circle.
pub fn well_posed(gs: &GroupSymbol, r: &RepSet, margin: f64) -> bool {
    let bd = block_diagonalize(gs, r);
    if partial_indices(&bd, &Tolerances::default()).is_err() {
        return false;
    }
    bd.blocks.iter().all(|b| {
        let zp = if b.rows() == 1 { b.get(0, 0).zeros_poles() } else { b.det_exact().and_then(|d| d.zeros_poles()) };
        zp.is_ok_and(|zp| zp.closest_to_circle().is_none_or(|(_, d)| d >= margin))
    })
}

/// Draws until `accept` holds.
pub fn draw<T>(rng: &mut ChaCha8Rng, mut make: impl FnMut(&mut ChaCha8Rng) -> T, accept: impl Fn(&T) -> bool) -> T {
    loop {
        let x = make(rng);
        if accept(&x) {
            return x;
        }
    }
}
