use nalgebra::DMatrix;

use super::indices::numerically_singular;
use super::{block_diagonalize, partial_indices, triangularize_2x2, BlockDiagonal, GroupSymbol, IndexReport, Similarity};
use crate::error::FactorError;
use crate::factorization::MatrixFactorization;
use crate::reps::{fourier_matrix, RepSet};
use crate::scalar::factor_rational;
use crate::symbol::{SymMatrix, C64};
use crate::tolerance::Tolerances;

use super::triangular::factor_triangular_2x2;

/// Factorization of one block, together with the constant similarity used
/// to reach triangular form (if any).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockFactor {
    pub similarity: Option<Similarity>,
    pub factorization: MatrixFactorization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupFactorization {
    pub factorization: MatrixFactorization,
    pub blocks: Vec<BlockFactor>,
    pub report: IndexReport,
}

/// Factors block `k` (0-based): scalar blocks by the exact engine, 2×2
/// blocks when a catalog similarity makes them triangular.
pub fn factor_block(block: &SymMatrix, k: usize, tol: &Tolerances) -> Result<BlockFactor, FactorError> {
    let degree = block.rows();
    match degree {
        1 => {
            let f = factor_rational(block.get(0, 0), tol.root_on_circle)
                .map_err(|source| FactorError::IllPosed { what: format!("block {}", k + 1), source })?;
            Ok(BlockFactor {
                similarity: None,
                factorization: MatrixFactorization {
                    minus: SymMatrix::diagonal(&[f.minus]),
                    d: vec![f.index],
                    plus: SymMatrix::diagonal(&[f.plus]),
                },
            })
        }
        2 => {
            let Some((s, tri)) = triangularize_2x2(block)? else {
                return Err(FactorError::Unfactored { block: k + 1, degree });
            };
            let f = factor_triangular_2x2(&tri, tol.root_on_circle).map_err(|e| match e {
                FactorError::IllPosed { what, source } => {
                    FactorError::IllPosed { what: format!("block {}, {what}", k + 1), source }
                }
                e => e,
            })?;
            let factorization = match s {
                Similarity::Identity => f,
                Similarity::Swap => {
                    let j = s.matrix();
                    MatrixFactorization { minus: f.minus.left_mul_const(&j)?, d: f.d, plus: f.plus.right_mul_const(&j)? }
                }
            };
            Ok(BlockFactor { similarity: Some(s), factorization })
        }
        _ => Err(FactorError::Unfactored { block: k + 1, degree }),
    }
}

/// `A_- = F* Λ_-`, `A_+ = Λ_+ F`, `d` the multiplicity-expanded block indices.
pub fn assemble_full_factorization(
    bd: &BlockDiagonal,
    factors: &[MatrixFactorization],
    f: &DMatrix<C64>,
) -> Result<MatrixFactorization, FactorError> {
    if factors.len() != bd.blocks.len() {
        return Err(FactorError::Size(format!("{} block factorizations for {} blocks", factors.len(), bd.blocks.len())));
    }
    let n: usize = bd.degrees().iter().map(|d| d * d).sum();
    if f.nrows() != n || f.ncols() != n {
        return Err(FactorError::Size(format!("Fourier matrix is {}x{}, expected {n}x{n}", f.nrows(), f.ncols())));
    }
    let mut minus = SymMatrix::zeros(n, n);
    let mut plus = SymMatrix::zeros(n, n);
    let mut d = Vec::with_capacity(n);
    let mut at = 0;
    for (k, (block, fk)) in bd.blocks.iter().zip(factors).enumerate() {
        let m = block.rows();
        if fk.size() != m {
            return Err(FactorError::Size(format!("factorization of block {} has size {}, expected {m}", k + 1, fk.size())));
        }
        for _ in 0..m {
            for i in 0..m {
                for j in 0..m {
                    minus.set(at + i, at + j, fk.minus.get(i, j).clone());
                    plus.set(at + i, at + j, fk.plus.get(i, j).clone());
                }
            }
            d.extend_from_slice(&fk.d);
            at += m;
        }
    }
    Ok(MatrixFactorization { minus: minus.left_mul_const(&f.adjoint())?, d, plus: plus.right_mul_const(f)? })
}

/// Full factorization of the group matrix of `gs`, or the first obstacle:
/// a singular symbol, an ill-posed block, or a block without an explicit
/// construction.
pub fn factorize(gs: &GroupSymbol, r: &RepSet, tol: &Tolerances) -> Result<GroupFactorization, FactorError> {
    if gs.a.iter().all(|a| a.is_zero()) {
        return Err(FactorError::Singular("the symbol vanishes identically".into()));
    }
    let bd = block_diagonalize(gs, r);
    for (k, b) in bd.blocks.iter().enumerate() {
        if numerically_singular(b)? {
            return Err(FactorError::Singular(format!("det Λ{} vanishes identically", k + 1)));
        }
    }
    let mut report = partial_indices(&bd, tol)?;
    let mut blocks = Vec::with_capacity(bd.blocks.len());
    for (k, b) in bd.blocks.iter().enumerate() {
        let bf = factor_block(b, k, tol)?;
        report.resolve_block(k, &bf.factorization.d)?;
        blocks.push(bf);
    }
    let factors: Vec<MatrixFactorization> = blocks.iter().map(|b| b.factorization.clone()).collect();
    let factorization = assemble_full_factorization(&bd, &factors, &fourier_matrix(r))?;
    Ok(GroupFactorization { factorization, blocks, report })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::block::assemble_matrix;
    use crate::group::{build_group, GroupSpec};
    use crate::reps::irreps_for;
    use crate::symbol::{LaurentPoly, RationalSymbol};
    use crate::verify::verify_matrix_factorization;

    fn setup(spec: GroupSpec) -> (Arc<crate::group::FiniteGroup>, RepSet) {
        let g = build_group(&spec).unwrap();
        let r = irreps_for(&g).unwrap();
        (Arc::new(g), r)
    }

    fn lin(c0: C64, c1: f64) -> RationalSymbol {
        RationalSymbol::from_poly(LaurentPoly::new(0, vec![c0, C64::new(c1, 0.0)]))
    }

    #[test]
    fn identity_symbol() {
        let (g, r) = setup(GroupSpec::S3);
        let gf = factorize(&GroupSymbol::identity(g), &r, &Tolerances::default()).unwrap();
        assert_eq!(gf.factorization.d, vec![0; 6]);
        let f = fourier_matrix(&r);
        let a = gf.factorization.minus.eval_at(C64::new(0.3, 0.2));
        assert!((a - f.adjoint()).iter().all(|x| x.norm() < 1e-15));
    }

    #[test]
    fn abelian_group_fully_factored() {
        let (g, r) = setup(GroupSpec::Klein4);
        let a = vec![
            RationalSymbol::t_power(1),
            lin(C64::new(0.1, 0.0), 0.0),
            RationalSymbol::new(LaurentPoly::constant(C64::new(0.2, 0.0)), LaurentPoly::new(0, vec![C64::new(-3.0, 0.0), C64::new(1.0, 0.0)])).unwrap(),
            RationalSymbol::t_power(-1).scale(C64::new(0.05, 0.0)),
        ];
        let gs = GroupSymbol::new(g, a).unwrap();
        let tol = Tolerances::default();
        let gf = factorize(&gs, &r, &tol).unwrap();
        let report = verify_matrix_factorization(&assemble_matrix(&gs), &gf.factorization, &tol);
        assert!(report.passed(), "{report}");
        assert!(gf.report.is_complete());
        assert_eq!(gf.factorization.d.iter().sum::<i32>(), gf.report.total);
    }

    #[test]
    fn s3_under_the_triangular_condition() {
        let (g, r) = setup(GroupSpec::S3);
        let eps = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let mut a: Vec<RationalSymbol> = (0..6).map(|k| lin(C64::new(0.1 * k as f64, 0.05), if k == 0 { 1.0 } else { 0.0 })).collect();
        a[3] = RationalSymbol::linear_combination([(-eps, &a[1]), (-eps.conj(), &a[2])]);
        let gs = GroupSymbol::new(g, a).unwrap();
        let tol = Tolerances::default();
        let gf = factorize(&gs, &r, &tol).unwrap();
        assert_eq!(gf.blocks[2].similarity, Some(Similarity::Swap));
        let report = verify_matrix_factorization(&assemble_matrix(&gs), &gf.factorization, &tol);
        assert!(report.passed(), "{report}");
        let d = &gf.factorization.d;
        assert_eq!((d[2], d[3]), (d[4], d[5]));
    }

    #[test]
    fn generic_s3_is_unfactored_but_indexed() {
        let (g, r) = setup(GroupSpec::S3);
        let a: Vec<RationalSymbol> = (0..6).map(|k| lin(C64::new(0.1 * k as f64, 0.3), if k == 0 { 1.0 } else { 0.2 })).collect();
        let gs = GroupSymbol::new(g, a).unwrap();
        assert_eq!(factorize(&gs, &r, &Tolerances::default()).unwrap_err(), FactorError::Unfactored { block: 3, degree: 2 });
    }

    #[test]
    fn zero_symbol_is_singular() {
        let (g, r) = setup(GroupSpec::Cyclic { n: 3 });
        let gs = GroupSymbol::new(g.clone(), vec![RationalSymbol::zero(); 3]).unwrap();
        assert!(matches!(factorize(&gs, &r, &Tolerances::default()), Err(FactorError::Singular(_))));
        // the trivial-character block vanishes: a = (1, -1, 0) on C3 sums to zero
        let gs = GroupSymbol::new(g, vec![RationalSymbol::one(), RationalSymbol::real(-1.0), RationalSymbol::zero()]).unwrap();
        assert!(matches!(factorize(&gs, &r, &Tolerances::default()), Err(FactorError::Singular(_))));
    }
}
