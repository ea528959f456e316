//! Group-algebra pipeline: matrices `A(i, j) = a(g_i g_j⁻¹)`, their block
//! diagonalization by the group Fourier matrix, the inverse transform, index
//! accounting, and full factorization when every block is solvable.

mod driver;
mod indices;
mod triangular;

pub use driver::{assemble_full_factorization, factorize, factor_block, BlockFactor, GroupFactorization};
pub use indices::{partial_indices, BlockIndex, IndexReport, Relation};
pub use triangular::{factor_triangular_2x2, triangularize_2x2, Similarity};

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::FactorError;
use crate::group::FiniteGroup;
use crate::reps::RepSet;
use crate::symbol::{eval_on_grid, CircleGrid, RationalSymbol, SymMatrix, C64};
use crate::verify::sample_matrix;

/// A map `G → 𝔄`, stored in the group's element order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSymbol {
    pub group: Arc<FiniteGroup>,
    pub a: Vec<RationalSymbol>,
}

impl GroupSymbol {
    pub fn new(group: Arc<FiniteGroup>, a: Vec<RationalSymbol>) -> Result<Self, FactorError> {
        if a.len() != group.order() {
            return Err(FactorError::Size(format!("{} values for a group of order {}", a.len(), group.order())));
        }
        Ok(GroupSymbol { group, a })
    }

    /// The identity element of the group algebra.
    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let a = (0..group.order()).map(|g| if g == 0 { RationalSymbol::one() } else { RationalSymbol::zero() }).collect();
        GroupSymbol { group, a }
    }
}

/// Blocks `λ_k = Σ_g a(g) φ_k(g)`; block `k` occurs `n_k` times in `Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonal {
    pub blocks: Vec<SymMatrix>,
}

impl BlockDiagonal {
    pub fn degrees(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rows()).collect()
    }

    /// The full matrix `Λ`, block `k` repeated `n_k` times.
    pub fn expanded(&self) -> SymMatrix {
        let n: usize = self.blocks.iter().map(|b| b.rows() * b.rows()).sum();
        let mut out = SymMatrix::zeros(n, n);
        let mut at = 0;
        for b in &self.blocks {
            let d = b.rows();
            for _ in 0..d {
                for i in 0..d {
                    for j in 0..d {
                        out.set(at + i, at + j, b.get(i, j).clone());
                    }
                }
                at += d;
            }
        }
        out
    }
}

/// `A(i, j) = a(g_i g_j⁻¹)`.
pub fn assemble_matrix(gs: &GroupSymbol) -> SymMatrix {
    let g = &gs.group;
    SymMatrix::from_fn(g.order(), g.order(), |i, j| gs.a[g.mul(i, g.inv(j))].clone())
}

pub fn block_diagonalize(gs: &GroupSymbol, r: &RepSet) -> BlockDiagonal {
    let blocks = r
        .irreps
        .iter()
        .map(|irrep| {
            SymMatrix::from_fn(irrep.degree, irrep.degree, |i, j| {
                RationalSymbol::linear_combination(gs.a.iter().enumerate().map(|(g, a)| (irrep.entry(g, i, j), a)))
            })
        })
        .collect();
    BlockDiagonal { blocks }
}

/// Inverse transform: `a(g) = (1/|G|) Σ_k n_k Σ_{ij} m^k_{ij} conj(φ^k_{ij}(g))`.
pub fn symbol_from_blocks(
    group: Arc<FiniteGroup>,
    blocks: &[SymMatrix],
    r: &RepSet,
) -> Result<GroupSymbol, FactorError> {
    if blocks.len() != r.len() {
        return Err(FactorError::Size(format!("{} blocks for {} irreducible representations", blocks.len(), r.len())));
    }
    for (k, (b, irrep)) in blocks.iter().zip(&r.irreps).enumerate() {
        if b.rows() != irrep.degree || b.cols() != irrep.degree {
            return Err(FactorError::Size(format!(
                "block {} is {}x{}, expected {d}x{d}",
                k + 1,
                b.rows(),
                b.cols(),
                d = irrep.degree
            )));
        }
    }
    let n = group.order() as f64;
    let a = (0..group.order())
        .map(|g| {
            let mut terms = Vec::new();
            for (b, irrep) in blocks.iter().zip(&r.irreps) {
                let w = irrep.degree as f64 / n;
                for i in 0..irrep.degree {
                    for j in 0..irrep.degree {
                        terms.push((irrep.entry(g, i, j).conj() * w, b.get(i, j)));
                    }
                }
            }
            RationalSymbol::linear_combination(terms)
        })
        .collect();
    GroupSymbol::new(group, a)
}

/// Convolution `(a ∗ b)(g) = Σ_h a(h) b(h⁻¹ g)`, so that the assembled
/// matrix of `a ∗ b` is the product of the assembled matrices.
pub fn convolve(x: &GroupSymbol, y: &GroupSymbol) -> Result<GroupSymbol, FactorError> {
    if x.group != y.group {
        return Err(FactorError::Size("convolution of symbols on different groups".into()));
    }
    let g = &x.group;
    let a = (0..g.order())
        .map(|e| {
            let products: Vec<RationalSymbol> =
                (0..g.order()).map(|h| &x.a[h] * &y.a[g.mul(g.inv(h), e)]).collect();
            RationalSymbol::sum(products.iter())
        })
        .collect();
    GroupSymbol::new(x.group.clone(), a)
}

/// Sizes of the independent problems after block diagonalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub order: usize,
    pub degrees: Vec<usize>,
}

impl BlockStructure {
    /// `(n_k, multiplicity)` pairs; the multiplicity equals the degree.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.degrees.iter().map(|&d| (d, d)).collect()
    }

    pub fn scalar_problems(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    pub fn summary(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let scalars = self.scalar_problems();
        if scalars > 0 {
            parts.push(format!("{scalars} scalar problem{}", if scalars == 1 { "" } else { "s" }));
        }
        for &d in self.degrees.iter().filter(|&&d| d > 1) {
            parts.push(format!("a {d}-dimensional problem of multiplicity {d}"));
        }
        format!("the {}-dimensional problem splits into {}", self.order, parts.join(" and "))
    }
}

pub fn block_structure(group: &FiniteGroup, r: &RepSet) -> BlockStructure {
    BlockStructure { order: group.order(), degrees: r.degrees() }
}

fn symbol_sets_distance<'a>(
    x: impl IntoIterator<Item = &'a RationalSymbol>,
    y: impl IntoIterator<Item = &'a RationalSymbol>,
    n: usize,
) -> Result<f64, FactorError> {
    let grid = CircleGrid::new(n)?;
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (p, q) in x.into_iter().zip(y) {
        let (vp, vq) = (eval_on_grid(p, &grid)?, eval_on_grid(q, &grid)?);
        for (a, b) in vp.iter().zip(&vq) {
            scale = scale.max(a.norm());
            diff = diff.max((a - b).norm());
        }
    }
    Ok(diff / scale)
}

/// `max_g |x(g) - y(g)| / max(1, max |x|)` on an `n`-point grid.
pub fn symbol_distance(x: &GroupSymbol, y: &GroupSymbol, n: usize) -> Result<f64, FactorError> {
    if x.a.len() != y.a.len() {
        return Err(FactorError::Size("symbols on groups of different order".into()));
    }
    symbol_sets_distance(&x.a, &y.a, n)
}

/// Entrywise grid distance between block lists, scaled like [`symbol_distance`].
pub fn blocks_distance(x: &[SymMatrix], y: &[SymMatrix], n: usize) -> Result<f64, FactorError> {
    if x.len() != y.len() || x.iter().zip(y).any(|(p, q)| p.rows() != q.rows() || p.cols() != q.cols()) {
        return Err(FactorError::Size("block lists of different shapes".into()));
    }
    symbol_sets_distance(x.iter().flat_map(|m| m.entries()), y.iter().flat_map(|m| m.entries()), n)
}

/// `max |A - F* Λ F| / max(1, max |A|)` on an `n`-point grid.
pub fn reconstruction_residual(gs: &GroupSymbol, bd: &BlockDiagonal, f: &DMatrix<C64>, n: usize) -> Result<f64, FactorError> {
    let grid = CircleGrid::new(n)?;
    let a = sample_matrix(&assemble_matrix(gs), &grid)?;
    let lambda = sample_matrix(&bd.expanded(), &grid)?;
    let fh = f.adjoint();
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for (aj, lj) in a.iter().zip(&lambda) {
        scale = scale.max(aj.iter().map(|x| x.norm()).fold(0.0, f64::max));
        let r = &fh * lj * f;
        diff = diff.max((aj - r).iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    Ok(diff / scale)
}
