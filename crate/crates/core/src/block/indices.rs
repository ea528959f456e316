use std::fmt;

use serde::Serialize;

use super::BlockDiagonal;
use crate::error::{FactorError, SymbolError};
use crate::symbol::winding::resolving_grid;
use crate::symbol::{winding_index, CircleGrid, SymMatrix};
use crate::tolerance::Tolerances;
use crate::verify::{det_index_oracle, sample_matrix};

/// A block with `det ≡ 0` up to this factor of its entry scale is singular.
const SINGULAR_DET: f64 = 1e-12;

/// Index data for one block `λ_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockIndex {
    /// 1-based block number.
    pub block: usize,
    pub degree: usize,
    /// `ind det λ_k`; for a scalar block this is its only partial index.
    pub det_index: i32,
    /// 0-based position of the block's first index in `d`.
    pub offset: usize,
}

/// One line of partial-index bookkeeping. Positions are 1-based, matching
/// the usual `ρ_1, …, ρ_n` numbering.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `ρ_p = ind Λ_k`, known explicitly.
    Explicit { position: usize, block: usize, value: i32 },
    /// `Σ ρ_p = ind det Λ_k` over the first copy of a block.
    DetSum { positions: Vec<usize>, block: usize, value: i32 },
    /// `ρ_a = ρ_b` between copies of the same block.
    Equal { a: usize, b: usize },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Explicit { position, block, value } => write!(f, "ρ{position} = ind Λ{block} = {value}"),
            Relation::DetSum { positions, block, value } => {
                let lhs: Vec<String> = positions.iter().map(|p| format!("ρ{p}")).collect();
                write!(f, "{} = ind det Λ{block} = {value}", lhs.join("+"))
            }
            Relation::Equal { a, b } => write!(f, "ρ{a} = ρ{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    pub blocks: Vec<BlockIndex>,
    pub relations: Vec<Relation>,
    /// Multiplicity-expanded partial indices in block order; `None` where
    /// only the block's determinant index is known.
    pub expanded: Vec<Option<i32>>,
    /// `ind det A = Σ_k n_k · ind det λ_k`.
    pub total: i32,
    /// Number of explicitly computed indices, equal to `[G : G′]`.
    pub explicit: usize,
}

impl IndexReport {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.to_string()).collect()
    }

    /// Fills in the partial indices of a block, e.g. once it has been
    /// factored; every copy receives the same values.
    pub fn resolve_block(&mut self, k: usize, indices: &[i32]) -> Result<(), FactorError> {
        let b = &self.blocks[k];
        if indices.len() != b.degree || indices.iter().sum::<i32>() != b.det_index {
            return Err(FactorError::Construction(format!(
                "indices {indices:?} are inconsistent with block {} (degree {}, det index {})",
                b.block, b.degree, b.det_index
            )));
        }
        for copy in 0..b.degree {
            for (i, &v) in indices.iter().enumerate() {
                self.expanded[b.offset + copy * b.degree + i] = Some(v);
            }
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.expanded.iter().all(Option::is_some)
    }
}

impl fmt::Display for IndexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "ind det A = {}", self.total)?;
        write!(f, "explicit indices: {}", self.explicit)
    }
}

fn ill_posed(k: usize, source: SymbolError) -> FactorError {
    match source {
        SymbolError::ZeroSymbol => FactorError::Singular(format!("det Λ{} vanishes identically", k + 1)),
        source => FactorError::IllPosed { what: format!("block {}", k + 1), source },
    }
}

/// True when `det m` vanishes on the whole circle, judged on a 256-point
/// grid relative to the entry scale.
pub(crate) fn numerically_singular(m: &SymMatrix) -> Result<bool, SymbolError> {
    let grid = CircleGrid::new(256)?;
    let samples = sample_matrix(m, &grid)?;
    let scale = samples.iter().flat_map(|a| a.iter().map(|x| x.norm())).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(true);
    }
    let det = samples.into_iter().map(|a| a.determinant().norm()).fold(0.0, f64::max);
    Ok(det <= SINGULAR_DET * scale.powi(m.rows() as i32))
}

/// Winding index of `det m` from the located zeros and poles of the exact
/// determinant, cross-checked by phase accumulation.
pub(crate) fn det_winding(m: &SymMatrix, tol: &Tolerances) -> Result<i32, SymbolError> {
    if m.rows() == 1 {
        return winding_index(m.get(0, 0), tol.root_on_circle);
    }
    if numerically_singular(m)? {
        return Err(SymbolError::ZeroSymbol);
    }
    let zp = m.det_exact()?.zeros_poles()?;
    let closest = zp.closest_to_circle();
    if let Some((z, d)) = closest {
        if d < tol.root_on_circle {
            return Err(SymbolError::NotInvertibleOnContour { point: format!("{z}"), distance: d });
        }
    }
    let exact = zp.order_at_origin + zp.zeros_inside() as i32 - zp.poles_inside() as i32;
    if let Some(n) = resolving_grid(closest.map_or(1.0, |(_, d)| d)) {
        let sampled = det_index_oracle(m, n.max(tol.index_grid), tol.phase_guard)?;
        if sampled != exact {
            return Err(SymbolError::IndexMismatch { exact: exact as i64, sampled: sampled as i64 });
        }
    }
    Ok(exact)
}

/// Partial-index information of `A = F* Λ F` from its blocks: exact indices
/// for scalar blocks, determinant indices and the resulting relations for
/// larger ones.
pub fn partial_indices(bd: &BlockDiagonal, tol: &Tolerances) -> Result<IndexReport, FactorError> {
    let mut blocks = Vec::with_capacity(bd.blocks.len());
    let mut relations = Vec::new();
    let mut expanded = Vec::new();
    let mut total = 0;
    let mut explicit = 0;
    for (k, m) in bd.blocks.iter().enumerate() {
        let degree = m.rows();
        if degree == 1 && m.get(0, 0).is_zero() {
            return Err(ill_posed(k, SymbolError::ZeroSymbol));
        }
        let det_index = det_winding(m, tol).map_err(|e| ill_posed(k, e))?;
        let offset = expanded.len();
        let pos = |copy: usize, i: usize| offset + copy * degree + i + 1;
        if degree == 1 {
            relations.push(Relation::Explicit { position: pos(0, 0), block: k + 1, value: det_index });
            expanded.push(Some(det_index));
            explicit += 1;
        } else {
            relations.push(Relation::DetSum {
                positions: (0..degree).map(|i| pos(0, i)).collect(),
                block: k + 1,
                value: det_index,
            });
            for copy in 1..degree {
                for i in 0..degree {
                    relations.push(Relation::Equal { a: pos(0, i), b: pos(copy, i) });
                }
            }
            expanded.extend(std::iter::repeat(None).take(degree * degree));
        }
        total += degree as i32 * det_index;
        blocks.push(BlockIndex { block: k + 1, degree, det_index, offset });
    }
    Ok(IndexReport { blocks, relations, expanded, total, explicit })
}
