//! Center-algebra pipeline: class functions `a = Σ a_i C_i`, their
//! functionally commutative matrices, diagonalization by the character
//! table and the resulting explicit factorization.

use std::sync::Arc;

use crate::block::GroupSymbol;
use crate::error::{FactorError, SymbolError};
use crate::factorization::MatrixFactorization;
use crate::group::{conjugacy_classes, CenterStructure, ConjugacyPartition, FiniteGroup};
use crate::reps::{center_fourier, CharacterTable};
use crate::scalar::{factor_rational, ScalarFactorization};
use crate::symbol::{eval_on_grid, CircleGrid, RationalSymbol, SymMatrix, C64};
use crate::tolerance::Tolerances;

/// A class function with coefficient `coeffs[i]` on class `K_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSymbol {
    pub group: Arc<FiniteGroup>,
    pub partition: ConjugacyPartition,
    pub coeffs: Vec<RationalSymbol>,
}

impl CenterSymbol {
    pub fn new(group: Arc<FiniteGroup>, coeffs: Vec<RationalSymbol>) -> Result<Self, FactorError> {
        let partition = conjugacy_classes(&group);
        if coeffs.len() != partition.len() {
            return Err(FactorError::Size(format!(
                "{} class coefficients for {} conjugacy classes",
                coeffs.len(),
                partition.len()
            )));
        }
        Ok(CenterSymbol { group, partition, coeffs })
    }

    /// The same element viewed in the full group algebra.
    pub fn to_group_symbol(&self) -> GroupSymbol {
        let a = self.partition.class_of.iter().map(|&c| self.coeffs[c].clone()).collect();
        GroupSymbol { group: self.group.clone(), a }
    }
}

/// `(A)_{mj} = Σ_i a_i c_{ij}^m`.
pub fn assemble_center_matrix(cs: &CenterSymbol, structure: &CenterStructure) -> SymMatrix {
    let s = cs.coeffs.len();
    SymMatrix::from_fn(s, s, |m, j| {
        let terms: Vec<RationalSymbol> = (0..s)
            .filter(|&i| structure.get(i, j, m) != 0)
            .map(|i| cs.coeffs[i].scale(C64::new(structure.get(i, j, m) as f64, 0.0)))
            .collect();
        RationalSymbol::sum(terms.iter())
    })
}

/// `Λ_j = (1/n_j) Σ_i a_i h_i χ_j(K_i)`.
pub fn center_diagonalize(cs: &CenterSymbol, ct: &CharacterTable) -> Vec<RationalSymbol> {
    (0..ct.len())
        .map(|j| {
            let n = ct.degrees[j] as f64;
            RationalSymbol::linear_combination(
                cs.coeffs.iter().enumerate().map(|(i, a)| (ct.get(j, i) * ct.class_sizes[i] as f64 / n, a)),
            )
        })
        .collect()
}

/// `A = A_- diag(t^{ρ_j}) A_+` with `A_- = F⁻¹ diag(Λ_j⁻)` and
/// `A_+ = diag(Λ_j⁺) F`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterFactorization {
    pub minus: SymMatrix,
    pub indices: Vec<i32>,
    pub plus: SymMatrix,
    pub scalars: Vec<ScalarFactorization>,
}

impl CenterFactorization {
    pub fn to_matrix_factorization(&self) -> MatrixFactorization {
        MatrixFactorization { minus: self.minus.clone(), d: self.indices.clone(), plus: self.plus.clone() }
    }
}

/// True when `s` is zero on the circle relative to `scale`.
fn vanishes(s: &RationalSymbol, scale: f64) -> Result<bool, SymbolError> {
    if s.is_zero() {
        return Ok(true);
    }
    let values = eval_on_grid(s, &CircleGrid::new(256)?)?;
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max) <= 1e-12 * scale)
}

pub fn center_factorize(cs: &CenterSymbol, ct: &CharacterTable, tol: &Tolerances) -> Result<CenterFactorization, FactorError> {
    if ct.len() != cs.coeffs.len() {
        return Err(FactorError::Size(format!("{} characters for {} classes", ct.len(), cs.coeffs.len())));
    }
    let grid = CircleGrid::new(256)?;
    let mut scale: f64 = 0.0;
    for a in cs.coeffs.iter().filter(|a| !a.is_zero()) {
        scale = scale.max(eval_on_grid(a, &grid)?.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    if scale == 0.0 {
        return Err(FactorError::Singular("the symbol vanishes identically".into()));
    }
    let lambdas = center_diagonalize(cs, ct);
    let mut scalars = Vec::with_capacity(lambdas.len());
    for (j, l) in lambdas.iter().enumerate() {
        if vanishes(l, scale)? {
            return Err(FactorError::Singular(format!("Λ{} vanishes identically", j + 1)));
        }
        let f = factor_rational(l, tol.root_on_circle)
            .map_err(|source| FactorError::IllPosed { what: format!("Λ{}", j + 1), source })?;
        scalars.push(f);
    }
    let cf = center_fourier(ct);
    let s = lambdas.len();
    let minus = SymMatrix::from_fn(s, s, |i, j| scalars[j].minus.scale(cf.f_inv[(i, j)]));
    let plus = SymMatrix::from_fn(s, s, |i, j| scalars[i].plus.scale(cf.f[(i, j)]));
    let indices = scalars.iter().map(|f| f.index).collect();
    Ok(CenterFactorization { minus, indices, plus, scalars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::assemble_matrix;
    use crate::group::{build_group, center_structure, GroupSpec};
    use crate::reps::{character_table, irreps_for};
    use crate::symbol::LaurentPoly;
    use crate::verify::verify_matrix_factorization;

    struct Setup {
        group: Arc<FiniteGroup>,
        structure: CenterStructure,
        table: CharacterTable,
    }

    fn setup(spec: GroupSpec) -> Setup {
        let g = build_group(&spec).unwrap();
        let p = conjugacy_classes(&g);
        let r = irreps_for(&g).unwrap();
        Setup { structure: center_structure(&g, &p), table: character_table(&r, &p), group: Arc::new(g) }
    }

    fn lin(root: f64) -> RationalSymbol {
        RationalSymbol::from_poly(LaurentPoly::new(0, vec![C64::new(-root, 0.0), C64::new(1.0, 0.0)]))
    }

    #[test]
    fn abelian_center_matrix_is_group_matrix() {
        let s = setup(GroupSpec::Cyclic { n: 4 });
        let cs = CenterSymbol::new(s.group.clone(), (0..4).map(|k| lin(k as f64 + 2.0)).collect()).unwrap();
        assert_eq!(assemble_center_matrix(&cs, &s.structure), assemble_matrix(&cs.to_group_symbol()));
    }

    #[test]
    fn s3_shift_symbol() {
        let s = setup(GroupSpec::S3);
        let cs = CenterSymbol::new(s.group.clone(), vec![RationalSymbol::t_power(1), RationalSymbol::zero(), RationalSymbol::zero()]).unwrap();
        let tol = Tolerances::default();
        let f = center_factorize(&cs, &s.table, &tol).unwrap();
        assert_eq!(f.indices, vec![1, 1, 1]);
        let target = assemble_center_matrix(&cs, &s.structure);
        let report = verify_matrix_factorization(&target, &f.to_matrix_factorization(), &tol);
        assert!(report.passed(), "{report}");
        assert!(report.get("reconstruction").unwrap().residual <= 1e-12);
    }

    #[test]
    fn q8_half_shift() {
        let s = setup(GroupSpec::Q8);
        let mut coeffs = vec![RationalSymbol::zero(); 5];
        coeffs[0] = RationalSymbol::t_power(1);
        coeffs[1] = RationalSymbol::real(0.5);
        let cs = CenterSymbol::new(s.group.clone(), coeffs).unwrap();
        let tol = Tolerances::default();
        let f = center_factorize(&cs, &s.table, &tol).unwrap();
        assert_eq!(f.indices, vec![1; 5]);
        let lambdas = center_diagonalize(&cs, &s.table);
        let t = C64::new(0.0, 1.0);
        for l in &lambdas[..4] {
            assert!((l.eval(t) - (t + 0.5)).norm() < 1e-15);
        }
        assert!((lambdas[4].eval(t) - (t - 0.5)).norm() < 1e-15);
        let report = verify_matrix_factorization(&assemble_center_matrix(&cs, &s.structure), &f.to_matrix_factorization(), &tol);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn errors_name_the_class() {
        let s = setup(GroupSpec::S3);
        // Λ3 = a1 - a3 = 1 - t vanishes at t = 1
        let cs = CenterSymbol::new(s.group.clone(), vec![RationalSymbol::one(), RationalSymbol::zero(), RationalSymbol::t_power(1)]).unwrap();
        match center_factorize(&cs, &s.table, &Tolerances::default()) {
            Err(FactorError::IllPosed { what, .. }) => assert_eq!(what, "Λ3"),
            other => panic!("{other:?}"),
        }
        let cs = CenterSymbol::new(s.group.clone(), vec![RationalSymbol::one(), RationalSymbol::zero(), RationalSymbol::one()]).unwrap();
        assert!(matches!(center_factorize(&cs, &s.table, &Tolerances::default()), Err(FactorError::Singular(_))));
        assert!(CenterSymbol::new(s.group.clone(), vec![RationalSymbol::one()]).is_err());
    }
}
