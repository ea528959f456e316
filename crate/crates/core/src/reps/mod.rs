//! Irreducible unitary representations, character tables and the Fourier
//! matrices that diagonalize group and class-function matrices.

mod catalog;

pub use catalog::{irreps_for, root_of_unity};

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::RepError;
use crate::group::{CenterStructure, ConjugacyPartition, FiniteGroup};
use crate::symbol::C64;
use crate::tolerance::REP_VALIDATION;
use crate::verify::VerificationReport;

/// One irreducible representation, `matrices[g]` = `φ(g_g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub degree: usize,
    pub matrices: Vec<DMatrix<C64>>,
}

impl Irrep {
    pub fn entry(&self, g: usize, i: usize, j: usize) -> C64 {
        self.matrices[g][(i, j)]
    }

    /// Characters `trace φ(g)` for every element.
    pub fn character(&self) -> Vec<C64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }
}

/// A complete set of inequivalent irreducible unitary representations.
#[derive(Debug, Clone, PartialEq)]
pub struct RepSet {
    pub irreps: Vec<Irrep>,
}

impl RepSet {
    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.degree).collect()
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Row offset of block `k` in the Fourier matrix: `Σ_{l<k} n_l²`.
    pub fn offset(&self, k: usize) -> usize {
        self.irreps[..k].iter().map(|r| r.degree * r.degree).sum()
    }
}

/// Document form of an irrep: `{"degree": k, "matrices": {label: [[[re, im], ...], ...]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrepDoc {
    pub degree: usize,
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

impl IrrepDoc {
    pub fn from_irrep(g: &FiniteGroup, r: &Irrep) -> Self {
        let matrices = (0..g.order())
            .map(|e| {
                let m = &r.matrices[e];
                let rows = (0..r.degree).map(|i| (0..r.degree).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
                (g.label(e).to_string(), rows)
            })
            .collect();
        IrrepDoc { degree: r.degree, matrices }
    }
}

/// Builds a representation set from documents. Structural problems are
/// errors; numeric validity is left to [`validate_repset`].
pub fn repset_from_docs(g: &FiniteGroup, docs: &[IrrepDoc]) -> Result<RepSet, RepError> {
    let mut irreps = Vec::with_capacity(docs.len());
    for (k, doc) in docs.iter().enumerate() {
        if doc.degree == 0 {
            return Err(RepError::Structure(format!("irrep {} has degree 0", k + 1)));
        }
        if let Some(extra) = doc.matrices.keys().find(|l| g.index_of(l).is_none()) {
            return Err(RepError::Structure(format!("irrep {}: unknown element label {extra:?}", k + 1)));
        }
        let mut matrices = Vec::with_capacity(g.order());
        for label in g.labels() {
            let rows = doc
                .matrices
                .get(label)
                .ok_or_else(|| RepError::Structure(format!("irrep {}: no matrix for element {label:?}", k + 1)))?;
            if rows.len() != doc.degree || rows.iter().any(|r| r.len() != doc.degree) {
                return Err(RepError::Structure(format!(
                    "irrep {}: matrix for {label:?} is not {d}x{d}",
                    k + 1,
                    d = doc.degree
                )));
            }
            matrices.push(DMatrix::from_fn(doc.degree, doc.degree, |i, j| C64::new(rows[i][j][0], rows[i][j][1])));
        }
        irreps.push(Irrep { degree: doc.degree, matrices });
    }
    Ok(RepSet { irreps })
}

fn max_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Checks homomorphism, unitarity, `φ(e) = I`, Schur orthogonality,
/// `Σ n_k² = |G|` and that the number of irreps equals the number of classes.
pub fn validate_repset(g: &FiniteGroup, r: &RepSet) -> Result<VerificationReport, RepError> {
    let n = g.order();
    for (k, irrep) in r.irreps.iter().enumerate() {
        if irrep.matrices.len() != n {
            return Err(RepError::Structure(format!(
                "irrep {} has {} matrices for a group of order {n}",
                k + 1,
                irrep.matrices.len()
            )));
        }
        if let Some(m) = irrep.matrices.iter().find(|m| m.nrows() != irrep.degree || m.ncols() != irrep.degree) {
            return Err(RepError::Structure(format!(
                "irrep {} of degree {} has a {}x{} matrix",
                k + 1,
                irrep.degree,
                m.nrows(),
                m.ncols()
            )));
        }
    }
    let mut report = VerificationReport::new();
    let squares: usize = r.irreps.iter().map(|i| i.degree * i.degree).sum();
    report.residual("degree_squares", (squares as f64 - n as f64).abs(), 0.0);
    let classes = crate::group::conjugacy_classes(g).len();
    report.residual("irrep_count", (r.len() as f64 - classes as f64).abs(), 0.0);
    let mut hom: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut ident: f64 = 0.0;
    for irrep in &r.irreps {
        let id = DMatrix::<C64>::identity(irrep.degree, irrep.degree);
        ident = ident.max(max_norm(&(&irrep.matrices[0] - &id)));
        for a in 0..n {
            let ma = &irrep.matrices[a];
            unit = unit.max(max_norm(&(ma * ma.adjoint() - &id)));
            for b in 0..n {
                hom = hom.max(max_norm(&(ma * &irrep.matrices[b] - &irrep.matrices[g.mul(a, b)])));
            }
        }
    }
    report.residual("homomorphism", hom, REP_VALIDATION);
    report.residual("unitarity", unit, REP_VALIDATION);
    report.residual("identity", ident, REP_VALIDATION);
    if squares == n {
        let f = fourier_matrix(r);
        let orth = max_norm(&(&f * f.adjoint() - DMatrix::<C64>::identity(n, n)));
        report.residual("orthogonality", orth, REP_VALIDATION);
    } else {
        report.failure("orthogonality", "degree squares do not sum to the group order".into());
    }
    Ok(report)
}

/// The group Fourier matrix: row `Σ_{l<k} n_l² + j n_k + i`, column `g`
/// holds `√n_k φ^k_{ij}(g) / √|G|` (entries of each `φ_k` stacked
/// column-major).
pub fn fourier_matrix(r: &RepSet) -> DMatrix<C64> {
    let n: usize = r.irreps.iter().map(|i| i.degree * i.degree).sum();
    let order = r.irreps.first().map_or(0, |i| i.matrices.len());
    let mut f = DMatrix::<C64>::zeros(n, order);
    let mut row = 0;
    for irrep in &r.irreps {
        let d = irrep.degree;
        let scale = (d as f64).sqrt() / (order as f64).sqrt();
        for j in 0..d {
            for i in 0..d {
                for g in 0..order {
                    f[(row, g)] = irrep.entry(g, i, j) * scale;
                }
                row += 1;
            }
        }
    }
    f
}

/// `χ_k(K_j)` with degrees `n_k` and class sizes `h_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    /// `values[k][j] = χ_k(K_j)`.
    pub values: Vec<Vec<C64>>,
    pub degrees: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl CharacterTable {
    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.values[k][j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Characters read off class representatives.
///
/// # Panics
///
/// If two members of a class have different traces (beyond rounding), i.e.
/// the representation set or the partition is inconsistent.
pub fn character_table(r: &RepSet, p: &ConjugacyPartition) -> CharacterTable {
    let values = r
        .irreps
        .iter()
        .map(|irrep| {
            let chi = irrep.character();
            p.classes
                .iter()
                .map(|class| {
                    let v = chi[class[0]];
                    assert!(
                        class.iter().all(|&g| (chi[g] - v).norm() <= REP_VALIDATION),
                        "character is not constant on a conjugacy class"
                    );
                    v
                })
                .collect()
        })
        .collect();
    CharacterTable { values, degrees: r.degrees(), class_sizes: p.sizes() }
}

/// Residuals of the orthogonality relation `Σ_g χ_i(g) conj(χ_j(g)) = |G| δ_ij`
/// and of `Σ_m h_m c_{kl}^m χ_i(K_m) = (h_k h_l / n_i) χ_i(K_k) χ_i(K_l)`.
pub fn character_relations(ct: &CharacterTable, cs: &CenterStructure, tol: f64) -> VerificationReport {
    let s = ct.len();
    let h = &ct.class_sizes;
    let order: usize = h.iter().sum();
    let mut orth: f64 = 0.0;
    for i in 0..s {
        for j in 0..s {
            let sum: C64 = (0..s).map(|m| ct.get(i, m) * ct.get(j, m).conj() * h[m] as f64).sum();
            let expected = if i == j { order as f64 } else { 0.0 };
            orth = orth.max((sum - expected).norm());
        }
    }
    let mut product: f64 = 0.0;
    for i in 0..s {
        for k in 0..s {
            for l in 0..s {
                let lhs: C64 = (0..s).map(|m| ct.get(i, m) * (h[m] as f64 * cs.get(k, l, m) as f64)).sum();
                let rhs = ct.get(i, k) * ct.get(i, l) * (h[k] * h[l]) as f64 / ct.degrees[i] as f64;
                product = product.max((lhs - rhs).norm());
            }
        }
    }
    let mut report = VerificationReport::new();
    report.residual("character_orthogonality", orth, tol);
    report.residual("class_product", product, tol);
    report
}

/// `F_{ij} = h_j χ_i(K_j) / √|G|` and its inverse `conj(χ_j(K_i)) / √|G|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterFourier {
    pub f: DMatrix<C64>,
    pub f_inv: DMatrix<C64>,
}

pub fn center_fourier(ct: &CharacterTable) -> CenterFourier {
    let s = ct.len();
    let order: usize = ct.class_sizes.iter().sum();
    let root = (order as f64).sqrt();
    let f = DMatrix::from_fn(s, s, |i, j| ct.get(i, j) * ct.class_sizes[j] as f64 / root);
    let f_inv = DMatrix::from_fn(s, s, |i, j| ct.get(j, i).conj() / root);
    CenterFourier { f, f_inv }
}

/// `(1/|G|) Σ_g a(g) conj(b(g))`.
pub fn inner_product(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len(), "group functions on different groups");
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<C64>() / a.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, center_structure, conjugacy_classes, GroupSpec};

    fn setup(spec: GroupSpec) -> (FiniteGroup, RepSet, ConjugacyPartition) {
        let g = build_group(&spec).unwrap();
        let r = irreps_for(&g).unwrap();
        let p = conjugacy_classes(&g);
        (g, r, p)
    }

    #[test]
    fn s3_character_inner_products() {
        let (_, r, _) = setup(GroupSpec::S3);
        let chi: Vec<Vec<C64>> = r.irreps.iter().map(|i| i.character()).collect();
        assert!(inner_product(&chi[1], &chi[2]).norm() < 1e-15);
        assert!((inner_product(&chi[2], &chi[2]) - 1.0).norm() < 1e-15);
        let ones = vec![C64::new(1.0, 0.0); 6];
        assert_eq!(inner_product(&ones, &ones), C64::new(1.0, 0.0));
    }

    #[test]
    fn mutated_repset_fails_homomorphism() {
        let (g, mut r, _) = setup(GroupSpec::S3);
        let k = g.index_of("(13)").unwrap();
        r.irreps[2].matrices[k] = r.irreps[2].matrices[k].map(|x| x.conj());
        let report = validate_repset(&g, &r).unwrap();
        assert!(!report.get("homomorphism").unwrap().passed);
    }

    #[test]
    fn structural_mismatch_is_an_error() {
        let (g, mut r, _) = setup(GroupSpec::S3);
        r.irreps[2].matrices.pop();
        assert!(matches!(validate_repset(&g, &r), Err(RepError::Structure(_))));
    }

    #[test]
    fn trivial_group() {
        let (g, r, p) = setup(GroupSpec::Cyclic { n: 1 });
        let report = validate_repset(&g, &r).unwrap();
        assert!(report.passed());
        assert!(report.checks.iter().all(|c| c.residual == 0.0));
        assert_eq!(fourier_matrix(&r), DMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
        let cf = center_fourier(&character_table(&r, &p));
        assert_eq!(cf.f[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(cf.f_inv[(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn docs_round_trip() {
        let (g, r, _) = setup(GroupSpec::Q8);
        let docs: Vec<IrrepDoc> = r.irreps.iter().map(|i| IrrepDoc::from_irrep(&g, i)).collect();
        assert_eq!(repset_from_docs(&g, &docs).unwrap(), r);
        let mut broken = docs.clone();
        broken[4].matrices.remove("-k");
        assert!(matches!(repset_from_docs(&g, &broken), Err(RepError::Structure(_))));
    }

    #[test]
    fn relations_hold_for_catalog() {
        for spec in [GroupSpec::S3, GroupSpec::Q8, GroupSpec::Klein4, GroupSpec::A4, GroupSpec::Cyclic { n: 5 }] {
            let (g, r, p) = setup(spec);
            let ct = character_table(&r, &p);
            let cs = center_structure(&g, &p);
            let rep = character_relations(&ct, &cs, 1e-12);
            assert!(rep.passed(), "{}: {rep}", g.name());
            let cf = center_fourier(&ct);
            let s = ct.len();
            assert!(max_norm(&(&cf.f * &cf.f_inv - DMatrix::<C64>::identity(s, s))) < 1e-12);
        }
    }
}
