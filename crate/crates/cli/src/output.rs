//! Mode results, error classification and exit codes.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;
use whfact::io::to_json;
use whfact::verify::VerificationReport;
use whfact::{DocError, FactorError, GroupError, RepError, SymbolError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_ILL_POSED: u8 = 3;
pub const EXIT_UNSUPPORTED: u8 = 4;
pub const EXIT_PARTIAL: u8 = 5;

/// Documents produced by a mode together with the checks that back them.
#[derive(Debug)]
pub struct Outcome {
    pub report: VerificationReport,
    pub documents: Vec<(String, String)>,
    pub summary: Option<String>,
    /// Certified documents are withheld when the report fails.
    pub certified: bool,
}

impl Outcome {
    pub fn new(report: VerificationReport) -> Self {
        Outcome { report, documents: Vec::new(), summary: None, certified: false }
    }

    pub fn with_json<T: Serialize>(mut self, name: &str, value: &T) -> Result<Self, Failure> {
        self.documents.push((name.to_string(), to_json(value)?));
        Ok(self)
    }

    pub fn with_stdout(mut self, text: String) -> Self {
        self.summary = Some(text);
        self
    }

    pub fn certified(mut self) -> Self {
        self.certified = true;
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }

    fn report_text(&self) -> String {
        let mut text = String::new();
        if let Some(s) = &self.summary {
            text.push_str(s);
            text.push('\n');
        }
        if !self.report.checks.is_empty() {
            text.push_str(&self.report.to_string());
            text.push('\n');
        }
        text
    }

    fn withheld(&self) -> bool {
        self.certified && !self.report.passed()
    }

    /// Writes every document plus `report.txt` into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        if !self.withheld() {
            for (name, body) in &self.documents {
                fs::write(dir.join(name), format!("{body}\n"))?;
            }
        }
        fs::write(dir.join("report.txt"), self.report_text())
    }

    /// Documents to stdout, summary and report to stderr.
    pub fn print(&self) {
        if !self.withheld() {
            for (_, body) in &self.documents {
                println!("{body}");
            }
        }
        eprint!("{}", self.report_text());
    }
}

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Doc(DocError),
    Factor(FactorError),
    Symbol(SymbolError),
    Rep(RepError),
    IllPosed(String),
    Io(String),
    /// Some output is available but the requested result is incomplete.
    Partial { message: String, outcome: Box<Outcome> },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        let rep = |e: &RepError| match e {
            RepError::NotInCatalog(_) => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        };
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Doc(DocError::Group(GroupError::UnsupportedOrder(_))) => EXIT_UNSUPPORTED,
            Failure::Doc(DocError::Rep(e)) => rep(e),
            Failure::Doc(_) => EXIT_PARSE,
            Failure::Rep(e) => rep(e),
            Failure::Factor(FactorError::Rep(e)) => rep(e),
            Failure::Factor(FactorError::Singular(_) | FactorError::IllPosed { .. }) => EXIT_ILL_POSED,
            Failure::Factor(FactorError::Symbol(SymbolError::NotInvertibleOnContour { .. })) => EXIT_ILL_POSED,
            Failure::Factor(FactorError::Unfactored { .. }) => EXIT_PARTIAL,
            Failure::Factor(_) => EXIT_FAILED,
            Failure::Symbol(SymbolError::NotInvertibleOnContour { .. }) => EXIT_ILL_POSED,
            Failure::Symbol(_) => EXIT_FAILED,
            Failure::IllPosed(_) => EXIT_ILL_POSED,
            Failure::Io(_) => EXIT_FAILED,
            Failure::Partial { .. } => EXIT_PARTIAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Doc(e) => write!(f, "{e}"),
            Failure::Factor(e) => write!(f, "{e}"),
            Failure::Symbol(e) => write!(f, "{e}"),
            Failure::Rep(e) => write!(f, "{e}"),
            Failure::IllPosed(m) => write!(f, "ill-posed: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
            Failure::Partial { message, .. } => write!(f, "partial result: {message}"),
        }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Doc(e)
    }
}

impl From<FactorError> for Failure {
    fn from(e: FactorError) -> Self {
        Failure::Factor(e)
    }
}

impl From<SymbolError> for Failure {
    fn from(e: SymbolError) -> Self {
        Failure::Symbol(e)
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::Rep(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
