//! Closed-form tables for V4, S3 and Q8 in the built-in enumerations:
//! V4 = {e, (12)(34), (13)(24), (14)(23)}, S3 = {e, (12), (13), (23), (123), (132)},
//! Q8 = {1, -1, i, -i, j, -j, k, -k}.
#![allow(dead_code)]

use nalgebra::DMatrix;
use whfact::block::{assemble_matrix, block_diagonalize, GroupSymbol};
use whfact::center::{assemble_center_matrix, center_diagonalize, CenterSymbol};
use whfact::group::{center_structure, FiniteGroup};
use whfact::reps::{character_table, RepSet};
use whfact::{RationalSymbol, C64};

use std::sync::Arc;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn eps() -> C64 {
    c(-0.5, 3f64.sqrt() / 2.0)
}

pub fn eps_inv() -> C64 {
    eps().conj()
}

fn real_rows(rows: &[&[f64]]) -> Vec<Vec<C64>> {
    rows.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect()
}

fn m2(a: C64, b: C64, cc: C64, d: C64) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

fn scaled(rows: Vec<Vec<C64>>, s: f64) -> DMatrix<C64> {
    let n = rows.len();
    DMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j] * s)
}

/// Rows χ_k over the four elements.
pub fn v4_characters() -> Vec<Vec<C64>> {
    real_rows(&[&[1., 1., 1., 1.], &[1., -1., 1., -1.], &[1., 1., -1., -1.], &[1., -1., -1., 1.]])
}

/// Φ_k(g) for every irrep and element.
pub fn s3_irreps() -> Vec<Vec<DMatrix<C64>>> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let scalar = |v: [f64; 6]| v.iter().map(|&x| DMatrix::from_element(1, 1, c(x, 0.0))).collect();
    vec![
        scalar([1., 1., 1., 1., 1., 1.]),
        scalar([1., -1., -1., -1., 1., 1.]),
        vec![
            m2(one, zero, zero, one),
            m2(zero, one, one, zero),
            m2(zero, eps(), eps_inv(), zero),
            m2(zero, eps_inv(), eps(), zero),
            m2(eps(), zero, zero, eps_inv()),
            m2(eps_inv(), zero, zero, eps()),
        ],
    ]
}

pub fn q8_irreps() -> Vec<Vec<DMatrix<C64>>> {
    let zero = c(0.0, 0.0);
    let pm = |x: [f64; 4]| {
        x.iter()
            .flat_map(|&v| [DMatrix::from_element(1, 1, c(v, 0.0)), DMatrix::from_element(1, 1, c(v, 0.0))])
            .collect::<Vec<_>>()
    };
    let units = [
        m2(c(1.0, 0.0), zero, zero, c(1.0, 0.0)),
        m2(c(0.0, 1.0), zero, zero, c(0.0, -1.0)),
        m2(zero, c(1.0, 0.0), c(-1.0, 0.0), zero),
        m2(zero, c(0.0, 1.0), c(0.0, 1.0), zero),
    ];
    vec![
        pm([1., 1., 1., 1.]),
        pm([1., 1., -1., -1.]),
        pm([1., -1., 1., -1.]),
        pm([1., -1., -1., 1.]),
        units.iter().flat_map(|u| [u.clone(), -u.clone()]).collect(),
    ]
}

pub fn v4_fourier() -> DMatrix<C64> {
    scaled(v4_characters(), 0.5)
}

pub fn s3_fourier() -> DMatrix<C64> {
    let r2 = 2f64.sqrt();
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let (e, ei) = (eps() * r2, eps_inv() * r2);
    let s = c(r2, 0.0);
    let rows = vec![
        vec![o, o, o, o, o, o],
        vec![o, -o, -o, -o, o, o],
        vec![s, z, z, z, e, ei],
        vec![z, s, ei, e, z, z],
        vec![z, s, e, ei, z, z],
        vec![s, z, z, z, ei, e],
    ];
    scaled(rows, 1.0 / 6f64.sqrt())
}

/// The Q8 group Fourier matrix with `√2` on every entry of the
/// two-dimensional rows (the unitary normalization).
pub fn q8_fourier() -> DMatrix<C64> {
    let r2 = 2f64.sqrt();
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let (s, si) = (c(r2, 0.0), c(0.0, r2));
    let rows = vec![
        vec![o, o, o, o, o, o, o, o],
        vec![o, o, o, o, -o, -o, -o, -o],
        vec![o, o, -o, -o, o, o, -o, -o],
        vec![o, o, -o, -o, -o, -o, o, o],
        vec![s, -s, si, -si, z, z, z, z],
        vec![z, z, z, z, -s, s, si, -si],
        vec![z, z, z, z, s, -s, si, -si],
        vec![s, -s, -si, si, z, z, z, z],
    ];
    scaled(rows, 1.0 / 8f64.sqrt())
}

/// χ_k(K_j) with classes {e}, {(12),(13),(23)}, {(123),(132)}.
pub fn s3_class_characters() -> Vec<Vec<C64>> {
    real_rows(&[&[1., 1., 1.], &[1., -1., 1.], &[2., 0., -1.]])
}

/// χ_k(K_j) with classes {1}, {-1}, {±i}, {±j}, {±k}.
pub fn q8_class_characters() -> Vec<Vec<C64>> {
    real_rows(&[
        &[1., 1., 1., 1., 1.],
        &[1., 1., 1., -1., -1.],
        &[1., 1., -1., 1., -1.],
        &[1., 1., -1., -1., 1.],
        &[2., -2., 0., 0., 0.],
    ])
}

pub fn s3_center_fourier() -> DMatrix<C64> {
    scaled(real_rows(&[&[1., 3., 2.], &[1., -3., 2.], &[2., 0., -2.]]), 1.0 / 6f64.sqrt())
}

pub fn q8_center_fourier() -> DMatrix<C64> {
    let rows = real_rows(&[
        &[1., 1., 2., 2., 2.],
        &[1., 1., 2., -2., -2.],
        &[1., 1., -2., 2., -2.],
        &[1., 1., -2., -2., 2.],
        &[2., -2., 0., 0., 0.],
    ]);
    scaled(rows, 1.0 / 8f64.sqrt())
}

/// Linear form `Σ c_j a_j` over `n` coefficients, from 1-based `(j, c_j)` pairs.
pub fn form(n: usize, terms: &[(usize, C64)]) -> Vec<C64> {
    let mut v = vec![c(0.0, 0.0); n];
    for &(j, x) in terms {
        v[j - 1] += x;
    }
    v
}

fn real_form(coeffs: &[f64]) -> Vec<C64> {
    coeffs.iter().map(|&x| c(x, 0.0)).collect()
}

/// Each block as row-major entries, each entry a linear form in `a_1..a_n`.
pub type BlockForms = Vec<Vec<Vec<C64>>>;

pub fn v4_lambdas() -> BlockForms {
    v4_characters().into_iter().map(|row| vec![row]).collect()
}

pub fn s3_lambdas() -> BlockForms {
    let one = c(1.0, 0.0);
    let (e, ei) = (eps(), eps_inv());
    vec![
        vec![real_form(&[1., 1., 1., 1., 1., 1.])],
        vec![real_form(&[1., -1., -1., -1., 1., 1.])],
        vec![
            form(6, &[(1, one), (5, e), (6, ei)]),
            form(6, &[(2, one), (3, e), (4, ei)]),
            form(6, &[(2, one), (3, ei), (4, e)]),
            form(6, &[(1, one), (5, ei), (6, e)]),
        ],
    ]
}

/// Q8 blocks as determined by the representation table. Λ4 has `+a7+a8`
/// and Λ5(2,2) has `+i a4`, as Φ4(±k) = 1 and Φ5(-i) = diag(-i, i) require.
pub fn q8_lambdas() -> BlockForms {
    let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
    vec![
        vec![real_form(&[1., 1., 1., 1., 1., 1., 1., 1.])],
        vec![real_form(&[1., 1., 1., 1., -1., -1., -1., -1.])],
        vec![real_form(&[1., 1., -1., -1., 1., 1., -1., -1.])],
        vec![real_form(&[1., 1., -1., -1., -1., -1., 1., 1.])],
        vec![
            form(8, &[(1, o), (2, -o), (3, i), (4, -i)]),
            form(8, &[(5, o), (6, -o), (7, i), (8, -i)]),
            form(8, &[(5, -o), (6, o), (7, i), (8, -i)]),
            form(8, &[(1, o), (2, -o), (3, -i), (4, i)]),
        ],
    ]
}

pub fn s3_center_lambdas() -> Vec<Vec<C64>> {
    vec![real_form(&[1., 3., 2.]), real_form(&[1., -3., 2.]), real_form(&[1., 0., -1.])]
}

pub fn q8_center_lambdas() -> Vec<Vec<C64>> {
    vec![
        real_form(&[1., 1., 2., 2., 2.]),
        real_form(&[1., 1., 2., -2., -2.]),
        real_form(&[1., 1., -2., 2., -2.]),
        real_form(&[1., 1., -2., -2., 2.]),
        real_form(&[1., -1., 0., 0., 0.]),
    ]
}

/// Center matrices `(A)_{mj} = Σ_i a_i c_{ij}^m`, row-major.
pub fn s3_center_matrix() -> Vec<Vec<C64>> {
    let f = |t: &[(usize, f64)]| form(3, &t.iter().map(|&(j, x)| (j, c(x, 0.0))).collect::<Vec<_>>());
    vec![
        f(&[(1, 1.)]),
        f(&[(2, 3.)]),
        f(&[(3, 2.)]),
        f(&[(2, 1.)]),
        f(&[(1, 1.), (3, 2.)]),
        f(&[(2, 2.)]),
        f(&[(3, 1.)]),
        f(&[(2, 3.)]),
        f(&[(1, 1.), (3, 1.)]),
    ]
}

/// Entry (3,4) is `2a5` because C5·C4 = 2C3.
pub fn q8_center_matrix() -> Vec<Vec<C64>> {
    let f = |t: &[(usize, f64)]| form(5, &t.iter().map(|&(j, x)| (j, c(x, 0.0))).collect::<Vec<_>>());
    vec![
        f(&[(1, 1.)]), f(&[(2, 1.)]), f(&[(3, 2.)]), f(&[(4, 2.)]), f(&[(5, 2.)]),
        f(&[(2, 1.)]), f(&[(1, 1.)]), f(&[(3, 2.)]), f(&[(4, 2.)]), f(&[(5, 2.)]),
        f(&[(3, 1.)]), f(&[(3, 1.)]), f(&[(1, 1.), (2, 1.)]), f(&[(5, 2.)]), f(&[(4, 2.)]),
        f(&[(4, 1.)]), f(&[(4, 1.)]), f(&[(5, 2.)]), f(&[(1, 1.), (2, 1.)]), f(&[(3, 2.)]),
        f(&[(5, 1.)]), f(&[(5, 1.)]), f(&[(4, 2.)]), f(&[(3, 2.)]), f(&[(1, 1.), (2, 1.)]),
    ]
}

/// 1-based element index `a(g_i g_j⁻¹)` of each group-matrix entry.
pub fn s3_group_matrix() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 3, 4, 6, 5],
        vec![2, 1, 6, 5, 3, 4],
        vec![3, 5, 1, 6, 4, 2],
        vec![4, 6, 5, 1, 2, 3],
        vec![5, 3, 4, 2, 1, 6],
        vec![6, 4, 2, 3, 5, 1],
    ]
}

pub fn q8_group_matrix() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 4, 3, 6, 5, 8, 7],
        vec![2, 1, 3, 4, 5, 6, 7, 8],
        vec![3, 4, 1, 2, 8, 7, 5, 6],
        vec![4, 3, 2, 1, 7, 8, 6, 5],
        vec![5, 6, 7, 8, 1, 2, 4, 3],
        vec![6, 5, 8, 7, 2, 1, 3, 4],
        vec![7, 8, 6, 5, 3, 4, 1, 2],
        vec![8, 7, 5, 6, 4, 3, 2, 1],
    ]
}

pub fn v4_group_matrix() -> Vec<Vec<usize>> {
    vec![vec![1, 2, 3, 4], vec![2, 1, 4, 3], vec![3, 4, 1, 2], vec![4, 3, 2, 1]]
}

fn indicator(n: usize, j: usize) -> Vec<RationalSymbol> {
    (0..n).map(|i| if i == j { RationalSymbol::one() } else { RationalSymbol::zero() }).collect()
}

fn coefficient(s: &RationalSymbol) -> C64 {
    s.eval(c(1.0, 0.0))
}

/// Reads every block entry as a linear form by setting `a_j = 1` one at a time.
pub fn probe_blocks(g: &Arc<FiniteGroup>, r: &RepSet) -> BlockForms {
    let n = g.order();
    let mut out: BlockForms = r.degrees().iter().map(|&d| vec![vec![c(0.0, 0.0); n]; d * d]).collect();
    for j in 0..n {
        let gs = GroupSymbol::new(g.clone(), indicator(n, j)).unwrap();
        for (k, b) in block_diagonalize(&gs, r).blocks.iter().enumerate() {
            for (e, s) in b.entries().iter().enumerate() {
                out[k][e][j] = coefficient(s);
            }
        }
    }
    out
}

pub fn probe_center_lambdas(g: &Arc<FiniteGroup>, r: &RepSet) -> Vec<Vec<C64>> {
    let s = whfact::group::conjugacy_classes(g).len();
    let mut out = vec![vec![c(0.0, 0.0); s]; s];
    for j in 0..s {
        let cs = CenterSymbol::new(g.clone(), indicator(s, j)).unwrap();
        let ct = character_table(r, &cs.partition);
        for (k, l) in center_diagonalize(&cs, &ct).iter().enumerate() {
            out[k][j] = coefficient(l);
        }
    }
    out
}

pub fn probe_center_matrix(g: &Arc<FiniteGroup>) -> Vec<Vec<C64>> {
    let s = whfact::group::conjugacy_classes(g).len();
    let mut out = vec![vec![c(0.0, 0.0); s]; s * s];
    for j in 0..s {
        let cs = CenterSymbol::new(g.clone(), indicator(s, j)).unwrap();
        let m = assemble_center_matrix(&cs, &center_structure(g, &cs.partition));
        for (e, x) in m.entries().iter().enumerate() {
            out[e][j] = coefficient(x);
        }
    }
    out
}

/// Element indices of the group matrix, read with `a_j = t^j`.
pub fn probe_group_matrix(g: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    let n = g.order();
    let a = (0..n).map(|j| RationalSymbol::t_power(j as i32 + 1)).collect();
    let m = assemble_matrix(&GroupSymbol::new(g.clone(), a).unwrap());
    (0..n).map(|i| (0..n).map(|j| m.get(i, j).num().min_deg() as usize).collect()).collect()
}

pub fn max_diff(x: &[Vec<C64>], y: &[Vec<C64>]) -> f64 {
    assert_eq!(x.len(), y.len(), "row count");
    x.iter()
        .zip(y)
        .flat_map(|(a, b)| {
            assert_eq!(a.len(), b.len(), "row length");
            a.iter().zip(b).map(|(p, q)| (p - q).norm())
        })
        .fold(0.0, f64::max)
}

pub fn forms_diff(x: &BlockForms, y: &BlockForms) -> f64 {
    assert_eq!(x.len(), y.len(), "block count");
    x.iter().zip(y).map(|(a, b)| max_diff(a, b)).fold(0.0, f64::max)
}

pub fn matrix_diff(x: &DMatrix<C64>, y: &DMatrix<C64>) -> f64 {
    assert_eq!(x.shape(), y.shape(), "shape");
    (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Φ_k(g) from a representation set.
pub fn irrep_tables(g: &FiniteGroup, r: &RepSet) -> Vec<Vec<DMatrix<C64>>> {
    r.irreps
        .iter()
        .map(|p| {
            assert_eq!(p.matrices.len(), g.order());
            p.matrices.clone()
        })
        .collect()
}

pub fn tables_diff(x: &[Vec<DMatrix<C64>>], y: &[Vec<DMatrix<C64>>]) -> f64 {
    assert_eq!(x.len(), y.len(), "irrep count");
    x.iter().zip(y).flat_map(|(a, b)| a.iter().zip(b).map(|(p, q)| matrix_diff(p, q))).fold(0.0, f64::max)
}
