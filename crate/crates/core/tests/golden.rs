//! Closed-form tables and formulas for V4, S3 and Q8.

mod common;

use common::golden::*;
use common::load;
use whfact::group::{center_structure, conjugacy_classes, GroupSpec};
use whfact::reps::{center_fourier, character_relations, character_table, fourier_matrix};

const EXACT: f64 = 1e-15;

fn class_characters(spec: &GroupSpec) -> Vec<Vec<whfact::C64>> {
    let (g, r) = load(spec);
    character_table(&r, &conjugacy_classes(&g)).values
}

#[test]
fn v4_characters_and_fourier() {
    let (g, r) = load(&GroupSpec::Klein4);
    let got: Vec<Vec<_>> = irrep_tables(&g, &r).iter().map(|k| k.iter().map(|m| m[(0, 0)]).collect()).collect();
    assert!(max_diff(&got, &v4_characters()) <= EXACT);
    assert!(matrix_diff(&fourier_matrix(&r), &v4_fourier()) <= EXACT);
}

#[test]
fn s3_representation_table() {
    let (g, r) = load(&GroupSpec::S3);
    assert!(tables_diff(&irrep_tables(&g, &r), &s3_irreps()) <= EXACT);
    assert!(max_diff(&class_characters(&GroupSpec::S3), &s3_class_characters()) <= EXACT);
}

#[test]
fn q8_representation_table() {
    let (g, r) = load(&GroupSpec::Q8);
    assert!(tables_diff(&irrep_tables(&g, &r), &q8_irreps()) <= EXACT);
    assert!(max_diff(&class_characters(&GroupSpec::Q8), &q8_class_characters()) <= EXACT);
    assert_eq!(conjugacy_classes(&g).sizes(), vec![1, 1, 2, 2, 2]);
}

#[test]
fn s3_fourier_entries() {
    let (_, r) = load(&GroupSpec::S3);
    assert!(matrix_diff(&fourier_matrix(&r), &s3_fourier()) <= EXACT);
}

#[test]
fn q8_fourier_entries() {
    let (_, r) = load(&GroupSpec::Q8);
    assert!(matrix_diff(&fourier_matrix(&r), &q8_fourier()) <= EXACT);
}

#[test]
fn center_fourier_matrices() {
    for (spec, expected) in [(GroupSpec::S3, s3_center_fourier()), (GroupSpec::Q8, q8_center_fourier())] {
        let (g, r) = load(&spec);
        let p = conjugacy_classes(&g);
        let ct = character_table(&r, &p);
        let cf = center_fourier(&ct);
        assert!(matrix_diff(&cf.f, &expected) <= EXACT, "{spec:?}");
        assert!(character_relations(&ct, &center_structure(&g, &p), 1e-12).passed());
    }
}

#[test]
fn group_matrix_layouts() {
    for (spec, expected) in
        [(GroupSpec::Klein4, v4_group_matrix()), (GroupSpec::S3, s3_group_matrix()), (GroupSpec::Q8, q8_group_matrix())]
    {
        let (g, _) = load(&spec);
        assert_eq!(probe_group_matrix(&g), expected, "{spec:?}");
    }
}

#[test]
fn block_formulas() {
    for (spec, expected) in [(GroupSpec::Klein4, v4_lambdas()), (GroupSpec::S3, s3_lambdas()), (GroupSpec::Q8, q8_lambdas())] {
        let (g, r) = load(&spec);
        let d = forms_diff(&probe_blocks(&g, &r), &expected);
        assert!(d <= EXACT, "{spec:?}: {d:e}");
    }
}

#[test]
fn center_formulas() {
    for (spec, lambdas, matrix) in [
        (GroupSpec::S3, s3_center_lambdas(), s3_center_matrix()),
        (GroupSpec::Q8, q8_center_lambdas(), q8_center_matrix()),
    ] {
        let (g, r) = load(&spec);
        assert!(max_diff(&probe_center_lambdas(&g, &r), &lambdas) <= EXACT, "{spec:?}");
        assert!(max_diff(&probe_center_matrix(&g), &matrix) <= EXACT, "{spec:?}");
    }
}

#[test]
fn s3_condition_makes_the_block_lower_triangular() {
    let (g, r) = load(&GroupSpec::S3);
    let blocks = probe_blocks(&g, &r);
    // coefficients of a2, a3 after substituting a4 = -ε a2 - ε⁻¹ a3
    let substitute = |f: &Vec<whfact::C64>| [f[1] - f[3] * eps(), f[2] - f[3] * eps_inv()];
    let upper = substitute(&blocks[2][1]);
    let lower = substitute(&blocks[2][2]);
    assert!(upper.iter().all(|x| x.norm() <= EXACT), "Λ3(1,2) = {upper:?}");
    assert!(lower.iter().any(|x| x.norm() > 0.5), "Λ3(2,1) = {lower:?}");
}
