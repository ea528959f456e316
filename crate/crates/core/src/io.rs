//! JSON documents for symbols, matrices and factorizations, and a
//! deterministic writer that prints every float with 17 significant digits.

use std::collections::BTreeMap;
use std::io;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::block::GroupSymbol;
use crate::center::CenterSymbol;
use crate::error::{DocError, RepError};
use crate::factorization::MatrixFactorization;
use crate::group::{build_group, FiniteGroup, GroupSpec};
use crate::reps::{irreps_for, repset_from_docs, validate_repset, RepSet};
use crate::symbol::{LaurentPoly, RationalSymbol, SymMatrix, C64};

/// `{"min_deg": k, "coeffs": [[re, im], ...]}`, lowest power first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyDoc {
    #[serde(default)]
    pub min_deg: i32,
    pub coeffs: Vec<[f64; 2]>,
}

impl PolyDoc {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        PolyDoc { min_deg: p.min_deg(), coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect() }
    }

    pub fn to_poly(&self) -> Result<LaurentPoly, DocError> {
        if self.coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(DocError::Shape("non-finite coefficient".into()));
        }
        Ok(LaurentPoly::new(self.min_deg, self.coeffs.iter().map(|c| C64::new(c[0], c[1])).collect()))
    }
}

/// `{"num": <poly>, "den": <poly>}`; a missing denominator means 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolDoc {
    pub num: PolyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<PolyDoc>,
}

impl SymbolDoc {
    pub fn from_symbol(s: &RationalSymbol) -> Self {
        SymbolDoc { num: PolyDoc::from_poly(s.num()), den: Some(PolyDoc::from_poly(s.den())) }
    }

    pub fn to_symbol(&self) -> Result<RationalSymbol, DocError> {
        let den = match &self.den {
            Some(d) => d.to_poly()?,
            None => LaurentPoly::one(),
        };
        Ok(RationalSymbol::new(self.num.to_poly()?, den)?)
    }
}

pub type MatrixDoc = Vec<Vec<SymbolDoc>>;

pub fn matrix_doc(m: &SymMatrix) -> MatrixDoc {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| SymbolDoc::from_symbol(m.get(i, j))).collect()).collect()
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<SymMatrix, DocError> {
    let rows = doc.len();
    let cols = doc.first().map_or(0, Vec::len);
    if doc.iter().any(|r| r.len() != cols) {
        return Err(DocError::Shape("matrix rows have different lengths".into()));
    }
    let data = doc.iter().flatten().map(SymbolDoc::to_symbol).collect::<Result<Vec<_>, _>>()?;
    Ok(SymMatrix::new(rows, cols, data)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub minus: MatrixDoc,
    pub d: Vec<i32>,
    pub plus: MatrixDoc,
}

impl FactorizationDoc {
    pub fn from_factorization(f: &MatrixFactorization) -> Self {
        FactorizationDoc { minus: matrix_doc(&f.minus), d: f.d.clone(), plus: matrix_doc(&f.plus) }
    }

    pub fn to_factorization(&self) -> Result<MatrixFactorization, DocError> {
        let f = MatrixFactorization { minus: matrix_from_doc(&self.minus)?, d: self.d.clone(), plus: matrix_from_doc(&self.plus)? };
        let n = f.d.len();
        for (name, m) in [("minus", &f.minus), ("plus", &f.plus)] {
            if m.rows() != n || m.cols() != n {
                return Err(DocError::Shape(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
        }
        Ok(f)
    }
}

/// `{"group": <GroupSpec>, "symbol": {label: <symbol>}}`; absent labels are 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSymbolDoc {
    pub group: GroupSpec,
    pub symbol: BTreeMap<String, SymbolDoc>,
}

/// `{"group": <GroupSpec>, "class_coeffs": [<symbol>, ...]}` in canonical
/// class order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterSymbolDoc {
    pub group: GroupSpec,
    pub class_coeffs: Vec<SymbolDoc>,
}

/// A group together with its validated irreducible representations.
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub group: Arc<FiniteGroup>,
    pub reps: RepSet,
}

/// Builds the group and its representations: the catalog for built-in
/// groups, the supplied (and validated) set for custom ones.
pub fn load_group(spec: &GroupSpec) -> Result<LoadedGroup, DocError> {
    let group = build_group(spec)?;
    let reps = match spec {
        GroupSpec::Custom { irreps: Some(docs), .. } => {
            let r = repset_from_docs(&group, docs)?;
            let report = validate_repset(&group, &r)?;
            if !report.passed() {
                return Err(RepError::Invalid(report.failed_checks().join(", ")).into());
            }
            r
        }
        _ => irreps_for(&group)?,
    };
    Ok(LoadedGroup { group: Arc::new(group), reps })
}

pub fn group_symbol_from_doc(doc: &GroupSymbolDoc, group: Arc<FiniteGroup>) -> Result<GroupSymbol, DocError> {
    let mut a = vec![RationalSymbol::zero(); group.order()];
    for (label, s) in &doc.symbol {
        let g = group.index_of(label).ok_or_else(|| DocError::UnknownLabel(label.clone()))?;
        a[g] = s.to_symbol()?;
    }
    Ok(GroupSymbol { group, a })
}

pub fn group_symbol_doc(spec: &GroupSpec, gs: &GroupSymbol) -> GroupSymbolDoc {
    let symbol = gs
        .a
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(g, s)| (gs.group.label(g).to_string(), SymbolDoc::from_symbol(s)))
        .collect();
    GroupSymbolDoc { group: spec.clone(), symbol }
}

pub fn center_symbol_from_doc(doc: &CenterSymbolDoc, group: Arc<FiniteGroup>) -> Result<CenterSymbol, DocError> {
    let coeffs = doc.class_coeffs.iter().map(SymbolDoc::to_symbol).collect::<Result<Vec<_>, _>>()?;
    CenterSymbol::new(group, coeffs).map_err(|e| DocError::Shape(e.to_string()))
}

/// Compact JSON with every float printed as `d.ddddddddddddddddde±x`.
struct FixedPrecision;

impl Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` deterministically: struct fields in declaration
/// order, maps sorted by key, floats with 17 significant digits. Non-finite
/// floats become `null`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, DocError> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedPrecision);
    value.serialize(&mut ser)?;
    String::from_utf8(out).map_err(|e| DocError::Json(e.to_string()))
}
