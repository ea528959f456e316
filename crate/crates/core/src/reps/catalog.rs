//! Built-in representation sets.

use nalgebra::DMatrix;

use super::{validate_repset, Irrep, RepSet};
use crate::error::RepError;
use crate::group::builtin::{self, a4_permutations};
use crate::group::{FiniteGroup, Origin};
use crate::symbol::C64;

/// `exp(2πi k / n)` with exact values at multiples of a quarter turn.
pub fn root_of_unity(k: usize, n: usize) -> C64 {
    let k = k % n;
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

fn scalar(v: Vec<C64>) -> Irrep {
    Irrep { degree: 1, matrices: v.into_iter().map(|x| DMatrix::from_element(1, 1, x)).collect() }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mat2(a: C64, b: C64, cc: C64, d: C64) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

fn cyclic_irreps(n: usize) -> RepSet {
    RepSet { irreps: (0..n).map(|k| scalar((0..n).map(|j| root_of_unity(j * k, n)).collect())).collect() }
}

fn s3_irreps() -> RepSet {
    let eps = c(-0.5, 3f64.sqrt() / 2.0);
    let inv = eps.conj();
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let ones = vec![o; 6];
    let sign = vec![o, -o, -o, -o, o, o];
    let phi3 = vec![
        mat2(o, z, z, o),
        mat2(z, o, o, z),
        mat2(z, eps, inv, z),
        mat2(z, inv, eps, z),
        mat2(eps, z, z, inv),
        mat2(inv, z, z, eps),
    ];
    RepSet { irreps: vec![scalar(ones), scalar(sign), Irrep { degree: 2, matrices: phi3 }] }
}

fn q8_irreps() -> RepSet {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    // values on ±1, ±i, ±j, ±k
    let one_dim = |vi: f64, vj: f64, vk: f64| {
        let v = [1.0, vi, vj, vk];
        scalar((0..8).map(|e| c(v[e / 2], 0.0)).collect())
    };
    let units = [mat2(o, z, z, o), mat2(i, z, z, -i), mat2(z, o, -o, z), mat2(z, i, i, z)];
    let phi5 = (0..8).map(|e| if e % 2 == 0 { units[e / 2].clone() } else { -units[e / 2].clone() }).collect();
    RepSet {
        irreps: vec![
            one_dim(1.0, 1.0, 1.0),
            one_dim(1.0, -1.0, -1.0),
            one_dim(-1.0, 1.0, -1.0),
            one_dim(-1.0, -1.0, 1.0),
            Irrep { degree: 2, matrices: phi5 },
        ],
    }
}

/// Three characters of `A_4 / V_4 ≅ C_3` and the 3-dimensional constituent
/// of the permutation representation in an orthonormal (Helmert) basis of
/// the sum-zero subspace.
fn a4_irreps(g: &FiniteGroup) -> RepSet {
    let perms = a4_permutations();
    // coset index of each element in A_4 / V_4, generated by (123)
    let x = 4;
    let mut coset = vec![usize::MAX; 12];
    let mut rep = 0;
    for k in 0..3 {
        for v in 0..4 {
            coset[g.mul(rep, v)] = k;
        }
        rep = g.mul(rep, x);
    }
    let mut irreps: Vec<Irrep> =
        (0..3).map(|m| scalar((0..12).map(|e| root_of_unity(m * coset[e], 3)).collect())).collect();
    let h = DMatrix::<f64>::from_row_slice(
        3,
        4,
        &[
            1.0 / 2f64.sqrt(),
            -1.0 / 2f64.sqrt(),
            0.0,
            0.0,
            1.0 / 6f64.sqrt(),
            1.0 / 6f64.sqrt(),
            -2.0 / 6f64.sqrt(),
            0.0,
            1.0 / 12f64.sqrt(),
            1.0 / 12f64.sqrt(),
            1.0 / 12f64.sqrt(),
            -3.0 / 12f64.sqrt(),
        ],
    );
    let matrices = perms
        .iter()
        .map(|p| {
            let mut pm = DMatrix::<f64>::zeros(4, 4);
            for (from, &to) in p.iter().enumerate() {
                pm[(to, from)] = 1.0;
            }
            (&h * pm * h.transpose()).map(|v| c(v, 0.0))
        })
        .collect();
    irreps.push(Irrep { degree: 3, matrices });
    RepSet { irreps }
}

/// Irreps of a direct product: Kronecker products of factor irreps, in
/// lexicographic order with the last factor fastest.
fn product_irreps(factors: &[(FiniteGroup, RepSet)]) -> RepSet {
    let mut acc: Vec<Irrep> = vec![Irrep { degree: 1, matrices: vec![DMatrix::from_element(1, 1, c(1.0, 0.0))] }];
    for (group, reps) in factors {
        let mut next = Vec::new();
        for a in &acc {
            for b in &reps.irreps {
                let matrices = a
                    .matrices
                    .iter()
                    .flat_map(|ma| b.matrices.iter().map(move |mb| ma.kronecker(mb)))
                    .collect();
                next.push(Irrep { degree: a.degree * b.degree, matrices });
            }
        }
        debug_assert!(next.iter().all(|r| r.matrices.len() % group.order() == 0));
        acc = next;
    }
    RepSet { irreps: acc }
}

fn group_for(origin: &Origin) -> Result<FiniteGroup, RepError> {
    let built = match origin {
        Origin::Cyclic(n) => builtin::cyclic(*n),
        Origin::S3 => builtin::s3(),
        Origin::Q8 => builtin::q8(),
        Origin::Klein4 => builtin::klein4(),
        Origin::A4 => builtin::a4(),
        Origin::Product(parts) => {
            let groups: Vec<FiniteGroup> = parts.iter().map(group_for).collect::<Result<_, _>>()?;
            builtin::product(&groups)
        }
        Origin::Custom => return Err(RepError::NotInCatalog("custom group".into())),
    };
    built.map_err(|e| RepError::Invalid(e.to_string()))
}

fn raw_irreps(g: &FiniteGroup) -> Result<RepSet, RepError> {
    Ok(match g.origin() {
        Origin::Cyclic(n) => cyclic_irreps(*n),
        Origin::Klein4 => {
            let c2 = (group_for(&Origin::Cyclic(2))?, cyclic_irreps(2));
            product_irreps(&[c2.clone(), c2])
        }
        Origin::S3 => s3_irreps(),
        Origin::Q8 => q8_irreps(),
        Origin::A4 => a4_irreps(g),
        Origin::Product(parts) => {
            let factors: Vec<(FiniteGroup, RepSet)> = parts
                .iter()
                .map(|o| {
                    let fg = group_for(o)?;
                    let r = raw_irreps(&fg)?;
                    Ok((fg, r))
                })
                .collect::<Result<_, RepError>>()?;
            product_irreps(&factors)
        }
        Origin::Custom => {
            return Err(RepError::NotInCatalog(format!(
                "{}; supply \"irreps\" in the custom group spec",
                g.name()
            )))
        }
    })
}

/// Catalog representations, validated before they are returned.
pub fn irreps_for(g: &FiniteGroup) -> Result<RepSet, RepError> {
    let r = raw_irreps(g)?;
    let report = validate_repset(g, &r)?;
    if !report.passed() {
        return Err(RepError::Invalid(format!("catalog entry for {} failed validation: {:?}", g.name(), report.failed_checks())));
    }
    Ok(r)
}
