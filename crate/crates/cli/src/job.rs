//! Job documents and command-line shorthands.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use whfact::group::GroupSpec;
use whfact::io::{FactorizationDoc, MatrixDoc, SymbolDoc};
use whfact::tolerance::Tolerances;
use whfact::DocError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Reduce,
    Indices,
    Factorize,
    CenterFactorize,
    Verify,
    Catalog,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Exact,
    Grid,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub grid: Option<usize>,
    pub tol_recon: Option<f64>,
    pub tol_unitary: Option<f64>,
    pub engine: Option<Engine>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub count: Option<usize>,
}

/// Everything a mode may need. Group symbols use `symbol` as a label map,
/// center symbols use `class_coeffs`, scalar jobs use `scalar`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub mode: Mode,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub symbol: Option<BTreeMap<String, SymbolDoc>>,
    #[serde(default)]
    pub class_coeffs: Option<Vec<SymbolDoc>>,
    #[serde(default)]
    pub scalar: Option<SymbolDoc>,
    #[serde(default)]
    pub target: Option<MatrixDoc>,
    #[serde(default)]
    pub factorization: Option<FactorizationDoc>,
    #[serde(default)]
    pub options: Options,
}

impl JobDocument {
    pub fn empty(mode: Mode) -> Self {
        JobDocument {
            mode,
            group: None,
            symbol: None,
            class_coeffs: None,
            scalar: None,
            target: None,
            factorization: None,
            options: Options::default(),
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(n) = self.options.grid {
            tol.verify_grid = n;
        }
        if let Some(t) = self.options.tol_recon {
            tol.reconstruction = t;
        }
        if let Some(t) = self.options.tol_unitary {
            tol.unitary = t;
        }
        tol
    }

    /// Checks that the payload needed by the mode is present.
    pub fn validate(&self) -> Result<(), DocError> {
        let missing = |what: &str| Err(DocError::Shape(format!("mode {:?} needs {what}", self.mode)));
        let has_symbol = self.symbol.is_some() || self.class_coeffs.is_some() || self.scalar.is_some();
        match self.mode {
            Mode::Reduce | Mode::Indices | Mode::Factorize | Mode::CenterFactorize | Mode::Roundtrip
                if self.group.is_none() && self.scalar.is_none() =>
            {
                missing("a group")
            }
            Mode::Reduce | Mode::Indices if self.symbol.is_none() => missing("a group symbol"),
            Mode::Factorize if self.symbol.is_none() && self.scalar.is_none() => missing("a group or scalar symbol"),
            Mode::CenterFactorize if self.class_coeffs.is_none() => missing("class coefficients"),
            Mode::Verify if self.factorization.is_none() => missing("a factorization"),
            Mode::Verify if !has_symbol && self.target.is_none() => missing("a target symbol or matrix"),
            Mode::Verify if self.group.is_none() && (self.symbol.is_some() || self.class_coeffs.is_some()) => {
                missing("a group")
            }
            _ => Ok(()),
        }
    }
}

pub fn read_json(path: &Path) -> Result<Value, DocError> {
    let text = fs::read_to_string(path).map_err(|e| DocError::Json(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| DocError::Json(format!("{}: {e}", path.display())))
}

/// `s3`, `q8`, `klein4`/`v4`, `a4`, `c<n>`, products like `c2xc3` or `s3xc2`,
/// a JSON group spec, or a path to one.
pub fn parse_group(arg: &str) -> Result<GroupSpec, DocError> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(trimmed)?);
    }
    let path = Path::new(trimmed);
    if path.exists() {
        return Ok(serde_json::from_value(read_json(path)?)?);
    }
    let factors: Vec<GroupSpec> = trimmed.to_lowercase().split('x').map(named_group).collect::<Result<_, _>>()?;
    Ok(match factors.len() {
        1 => factors.into_iter().next().expect("one factor"),
        _ => GroupSpec::Product { factors },
    })
}

fn named_group(name: &str) -> Result<GroupSpec, DocError> {
    match name {
        "s3" => Ok(GroupSpec::S3),
        "q8" => Ok(GroupSpec::Q8),
        "klein4" | "v4" => Ok(GroupSpec::Klein4),
        "a4" => Ok(GroupSpec::A4),
        _ => match name.strip_prefix('c').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Ok(GroupSpec::Cyclic { n }),
            None => Err(DocError::Json(format!("unknown group {name:?}"))),
        },
    }
}

/// Merges a symbol file into the job: `{"group", "symbol"}`,
/// `{"group", "class_coeffs"}`, or a bare scalar symbol `{"num", "den"}`.
pub fn merge_symbol_file(job: &mut JobDocument, value: Value) -> Result<(), DocError> {
    let Value::Object(mut map) = value else {
        return Err(DocError::Json("symbol document must be an object".into()));
    };
    if map.contains_key("num") {
        job.scalar = Some(serde_json::from_value(Value::Object(map))?);
        return Ok(());
    }
    if let Some(g) = map.remove("group") {
        job.group = Some(serde_json::from_value(g)?);
    }
    if let Some(s) = map.remove("symbol") {
        job.symbol = Some(serde_json::from_value(s)?);
    }
    if let Some(c) = map.remove("class_coeffs") {
        job.class_coeffs = Some(serde_json::from_value(c)?);
    }
    if let Some(key) = map.keys().next() {
        return Err(DocError::Json(format!("unexpected field {key:?} in symbol document")));
    }
    Ok(())
}
