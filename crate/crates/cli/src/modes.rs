//! One function per mode. Each returns the documents to write and the
//! verification report that decides the exit status.

use serde::Serialize;
use whfact::block::{
    assemble_matrix, block_diagonalize, block_structure, blocks_distance, factorize, partial_indices,
    reconstruction_residual, symbol_distance, symbol_from_blocks, GroupSymbol, IndexReport,
};
use whfact::center::{assemble_center_matrix, center_diagonalize, center_factorize};
use whfact::group::{center_structure, commutator_subgroup, conjugacy_classes, FiniteGroup, GroupSpec};
use whfact::io::{
    center_symbol_from_doc, group_symbol_from_doc, load_group, matrix_doc, matrix_from_doc, CenterSymbolDoc,
    FactorizationDoc, GroupSymbolDoc, LoadedGroup, MatrixDoc, SymbolDoc,
};
use whfact::random::{random_blocks, rng};
use whfact::reps::{center_fourier, character_relations, character_table, fourier_matrix, validate_repset, CharacterTable};
use whfact::scalar::{factor_grid, factor_rational, verify_scalar};
use whfact::symbol::{eval_on_grid, winding_index, CircleGrid};
use whfact::verify::{det_index_adaptive, unitarity_check, verify_matrix_factorization, VerificationReport};
use whfact::{FactorError, SymMatrix, C64};

use crate::job::{Engine, JobDocument, Mode};
use crate::output::{Failure, Outcome};

pub fn run(job: &JobDocument) -> Result<Outcome, Failure> {
    job.validate()?;
    match job.mode {
        Mode::Reduce => reduce(job),
        Mode::Indices => indices(job),
        Mode::Factorize if job.symbol.is_none() => factorize_scalar(job),
        Mode::Factorize => factorize_group(job),
        Mode::CenterFactorize => factorize_center(job),
        Mode::Verify => verify(job),
        Mode::Catalog => catalog(job),
        Mode::Roundtrip => roundtrip(job),
    }
}

fn group_of(job: &JobDocument) -> Result<(GroupSpec, LoadedGroup), Failure> {
    let spec = job.group.clone().ok_or_else(|| Failure::Parse("no group given".into()))?;
    let lg = load_group(&spec)?;
    Ok((spec, lg))
}

fn group_symbol(job: &JobDocument) -> Result<(GroupSpec, LoadedGroup, GroupSymbol), Failure> {
    let (spec, lg) = group_of(job)?;
    let doc = GroupSymbolDoc { group: spec.clone(), symbol: job.symbol.clone().unwrap_or_default() };
    let gs = group_symbol_from_doc(&doc, lg.group.clone())?;
    Ok((spec, lg, gs))
}

#[derive(Serialize)]
struct BlocksDocument {
    group: String,
    degrees: Vec<usize>,
    structure: String,
    blocks: Vec<MatrixDoc>,
}

fn reduce(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let (_, lg, gs) = group_symbol(job)?;
    let bd = block_diagonalize(&gs, &lg.reps);
    let f = fourier_matrix(&lg.reps);
    let mut report = VerificationReport::new();
    report.extend_prefixed("fourier", unitarity_check(&f, tol.unitary));
    match reconstruction_residual(&gs, &bd, &f, job.options.grid.unwrap_or(256)) {
        Ok(r) => report.residual("reconstruction", r, tol.reconstruction),
        Err(e) => report.failure("reconstruction", e.to_string()),
    };
    let doc = BlocksDocument {
        group: lg.group.name(),
        degrees: bd.degrees(),
        structure: block_structure(&lg.group, &lg.reps).summary(),
        blocks: bd.blocks.iter().map(matrix_doc).collect(),
    };
    Outcome::new(report).with_json("blocks.json", &doc)
}

#[derive(Serialize)]
struct IndexDocument {
    group: String,
    relation_text: Vec<String>,
    #[serde(flatten)]
    report: IndexReport,
    commutator_index: usize,
}

fn index_document(group: &FiniteGroup, report: IndexReport) -> IndexDocument {
    IndexDocument {
        group: group.name(),
        relation_text: report.relation_strings(),
        report,
        commutator_index: commutator_subgroup(group).1,
    }
}

fn indices(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let (_, lg, gs) = group_symbol(job)?;
    let bd = block_diagonalize(&gs, &lg.reps);
    let ir = partial_indices(&bd, &tol)?;
    let mut report = VerificationReport::new();
    match det_index_adaptive(&assemble_matrix(&gs), tol.index_grid, tol.phase_guard) {
        Ok(ind) => report.residual("index_total", (ind - ir.total).abs() as f64, 0.0),
        Err(e) => report.failure("index_total", e.to_string()),
    };
    let commutator_index = commutator_subgroup(&lg.group).1;
    report.residual("explicit_count", (ir.explicit as f64 - commutator_index as f64).abs(), 0.0);
    let text = ir.to_string();
    Outcome::new(report).with_json("indices.json", &index_document(&lg.group, ir)).map(|o| o.with_stdout(text))
}

#[derive(Serialize)]
struct FactorizeDocument {
    group: String,
    #[serde(flatten)]
    factorization: FactorizationDoc,
    sorted_d: Vec<i32>,
    relations: Vec<String>,
}

fn factorize_group(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let (_, lg, gs) = group_symbol(job)?;
    let gf = match factorize(&gs, &lg.reps, &tol) {
        Ok(gf) => gf,
        Err(FactorError::Unfactored { block, degree }) => {
            let ir = partial_indices(&block_diagonalize(&gs, &lg.reps), &tol)?;
            let text = ir.to_string();
            let outcome = Outcome::new(VerificationReport::new())
                .with_json("indices.json", &index_document(&lg.group, ir))?
                .with_stdout(text);
            return Err(Failure::Partial {
                message: format!("block {block} (degree {degree}) has no explicit factorization; wrote index relations"),
                outcome: Box::new(outcome),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify_matrix_factorization(&assemble_matrix(&gs), &gf.factorization, &tol);
    let doc = FactorizeDocument {
        group: lg.group.name(),
        factorization: FactorizationDoc::from_factorization(&gf.factorization),
        sorted_d: gf.factorization.sorted_indices(),
        relations: gf.report.relation_strings(),
    };
    let text = format!("d = {:?}", gf.factorization.d);
    Outcome::new(report).with_json("factorization.json", &doc).map(|o| o.with_stdout(text).certified())
}

#[derive(Serialize)]
struct ScalarDocument {
    minus: SymbolDoc,
    index: i32,
    plus: SymbolDoc,
}

#[derive(Serialize)]
struct GridDocument {
    grid: usize,
    index: i32,
    minus: Vec<[f64; 2]>,
    plus: Vec<[f64; 2]>,
}

fn factorize_scalar(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let s = job.scalar.as_ref().ok_or_else(|| Failure::Parse("no scalar symbol".into()))?.to_symbol()?;
    if s.is_zero() {
        return Err(Failure::IllPosed("the symbol vanishes identically".into()));
    }
    let ill = |e: whfact::SymbolError| Failure::IllPosed(format!("the symbol is not invertible on the circle ({e})"));
    match job.options.engine.unwrap_or_default() {
        Engine::Exact => {
            let f = factor_rational(&s, tol.root_on_circle).map_err(ill)?;
            let report = verify_scalar(&s, &f, &tol);
            let doc = ScalarDocument { minus: SymbolDoc::from_symbol(&f.minus), index: f.index, plus: SymbolDoc::from_symbol(&f.plus) };
            let text = format!("index = {}", f.index);
            Outcome::new(report).with_json("scalar_factorization.json", &doc).map(|o| o.with_stdout(text).certified())
        }
        Engine::Grid => {
            let n = job.options.grid.unwrap_or(1024);
            let grid = CircleGrid::new(n)?;
            let samples = eval_on_grid(&s, &grid)?;
            let f = factor_grid(&samples, tol.phase_guard).map_err(ill)?;
            let mut report = VerificationReport::new();
            let scale = samples.iter().map(|x| x.norm()).fold(1.0, f64::max);
            let residual = grid
                .points()
                .into_iter()
                .enumerate()
                .map(|(j, t)| (samples[j] - f.minus[j] * t.powi(f.index) * f.plus[j]).norm())
                .fold(0.0, f64::max)
                / scale;
            report.residual("reconstruction", residual, tol.reconstruction);
            match winding_index(&s, tol.root_on_circle) {
                Ok(rho) => report.residual("index", (rho - f.index).abs() as f64, 0.0),
                Err(e) => report.failure("index", e.to_string()),
            };
            let pairs = |v: &[C64]| v.iter().map(|z| [z.re, z.im]).collect();
            let doc = GridDocument { grid: n, index: f.index, minus: pairs(&f.minus), plus: pairs(&f.plus) };
            let text = format!("index = {}", f.index);
            Outcome::new(report).with_json("grid_factorization.json", &doc).map(|o| o.with_stdout(text).certified())
        }
    }
}

#[derive(Serialize)]
struct CenterDocument {
    group: String,
    #[serde(flatten)]
    factorization: FactorizationDoc,
    lambdas: Vec<SymbolDoc>,
    scalar: Vec<ScalarDocument>,
}

fn factorize_center(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let (spec, lg) = group_of(job)?;
    let doc = CenterSymbolDoc { group: spec, class_coeffs: job.class_coeffs.clone().unwrap_or_default() };
    let cs = center_symbol_from_doc(&doc, lg.group.clone())?;
    let ct = character_table(&lg.reps, &cs.partition);
    let cf = center_factorize(&cs, &ct, &tol)?;
    let target = assemble_center_matrix(&cs, &center_structure(&lg.group, &cs.partition));
    let mf = cf.to_matrix_factorization();
    let report = verify_matrix_factorization(&target, &mf, &tol);
    let out = CenterDocument {
        group: lg.group.name(),
        factorization: FactorizationDoc::from_factorization(&mf),
        lambdas: center_diagonalize(&cs, &ct).iter().map(SymbolDoc::from_symbol).collect(),
        scalar: cf
            .scalars
            .iter()
            .map(|f| ScalarDocument { minus: SymbolDoc::from_symbol(&f.minus), index: f.index, plus: SymbolDoc::from_symbol(&f.plus) })
            .collect(),
    };
    let text = format!("indices = {:?}", cf.indices);
    Outcome::new(report).with_json("center_factorization.json", &out).map(|o| o.with_stdout(text).certified())
}

fn verify(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let f = job.factorization.as_ref().ok_or_else(|| Failure::Parse("no factorization".into()))?.to_factorization()?;
    let target = if let Some(t) = &job.target {
        matrix_from_doc(t)?
    } else if job.symbol.is_some() {
        assemble_matrix(&group_symbol(job)?.2)
    } else if let Some(coeffs) = &job.class_coeffs {
        let (spec, lg) = group_of(job)?;
        let cs = center_symbol_from_doc(&CenterSymbolDoc { group: spec, class_coeffs: coeffs.clone() }, lg.group.clone())?;
        assemble_center_matrix(&cs, &center_structure(&lg.group, &cs.partition))
    } else {
        let s = job.scalar.as_ref().ok_or_else(|| Failure::Parse("no target".into()))?.to_symbol()?;
        SymMatrix::diagonal(&[s])
    };
    Ok(Outcome::new(verify_matrix_factorization(&target, &f, &tol)))
}

#[derive(Serialize)]
struct ClassEntry {
    members: Vec<String>,
    size: usize,
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    spec: GroupSpec,
    order: usize,
    labels: Vec<String>,
    abelian: bool,
    degrees: Vec<usize>,
    commutator_index: usize,
    classes: Vec<ClassEntry>,
    character_table: Vec<Vec<[f64; 2]>>,
    character_table_text: Vec<Vec<String>>,
    center_fourier: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct CatalogDocument {
    groups: Vec<CatalogEntry>,
    families: Vec<String>,
}

/// Renders values of the form `(a + b√3 i)/2` with small integers exactly:
/// integers, `±i`, and `ε = e^{2πi/3}`, `ε⁻¹`.
pub fn exact_text(z: C64) -> String {
    let near = |x: f64, y: f64| (x - y).abs() < 1e-12;
    let round = |x: f64| x.round();
    let eps = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    if near(z.im, 0.0) && near(z.re, round(z.re)) {
        return format!("{}", round(z.re) as i64);
    }
    if near(z.re, 0.0) && near(z.im, round(z.im)) {
        return match round(z.im) as i64 {
            1 => "i".into(),
            -1 => "-i".into(),
            k => format!("{k}i"),
        };
    }
    for (w, name) in [(eps, "ε"), (eps.conj(), "ε⁻¹"), (-eps, "-ε"), (-eps.conj(), "-ε⁻¹")] {
        if (z - w).norm() < 1e-12 {
            return name.into();
        }
    }
    format!("{:.6}{:+.6}i", z.re, z.im)
}

fn catalog_entry(spec: GroupSpec, report: &mut VerificationReport, tol_unitary: f64) -> Result<CatalogEntry, Failure> {
    let lg = load_group(&spec)?;
    let g = &lg.group;
    let p = conjugacy_classes(g);
    let ct: CharacterTable = character_table(&lg.reps, &p);
    let name = g.name();
    report.extend_prefixed(&name, validate_repset(g, &lg.reps)?);
    report.extend_prefixed(&format!("{name}.fourier"), unitarity_check(&fourier_matrix(&lg.reps), tol_unitary));
    report.extend_prefixed(&name, character_relations(&ct, &center_structure(g, &p), tol_unitary));
    let cf = center_fourier(&ct);
    let pairs = |v: &[C64]| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
    Ok(CatalogEntry {
        name,
        spec,
        order: g.order(),
        labels: g.labels().to_vec(),
        abelian: g.is_abelian(),
        degrees: lg.reps.degrees(),
        commutator_index: commutator_subgroup(g).1,
        classes: p
            .classes
            .iter()
            .map(|c| ClassEntry { members: c.iter().map(|&e| g.label(e).to_string()).collect(), size: c.len() })
            .collect(),
        character_table: ct.values.iter().map(|row| pairs(row)).collect(),
        character_table_text: ct.values.iter().map(|row| row.iter().map(|&z| exact_text(z)).collect()).collect(),
        center_fourier: (0..cf.f.nrows()).map(|i| (0..cf.f.ncols()).map(|j| [cf.f[(i, j)].re, cf.f[(i, j)].im]).collect()).collect(),
    })
}

fn catalog(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let specs = match &job.group {
        Some(spec) => vec![spec.clone()],
        None => vec![
            GroupSpec::Cyclic { n: 2 },
            GroupSpec::Cyclic { n: 3 },
            GroupSpec::Cyclic { n: 4 },
            GroupSpec::Klein4,
            GroupSpec::S3,
            GroupSpec::Q8,
            GroupSpec::A4,
        ],
    };
    let mut report = VerificationReport::new();
    let mut groups = Vec::with_capacity(specs.len());
    let mut text = Vec::new();
    for spec in specs {
        let entry = catalog_entry(spec, &mut report, tol.unitary)?;
        text.push(format!(
            "{}: order {}, degrees {:?}, class sizes {:?}",
            entry.name,
            entry.order,
            entry.degrees,
            entry.classes.iter().map(|c| c.size).collect::<Vec<_>>()
        ));
        for row in &entry.character_table_text {
            text.push(format!("  {}", row.join("\t")));
        }
        groups.push(entry);
    }
    let doc = CatalogDocument {
        groups,
        families: vec![
            "cyclic {n}: C_n, 1 <= n <= 256".into(),
            "product {factors}: direct products of catalog groups, order <= 256".into(),
            "custom {cayley, labels?, irreps?}: user tables; group-algebra modes need irreps".into(),
        ],
    };
    Outcome::new(report).with_json("catalog.json", &doc).map(|o| o.with_stdout(text.join("\n")))
}

fn roundtrip(job: &JobDocument) -> Result<Outcome, Failure> {
    let tol = job.tolerances();
    let n = job.options.grid.unwrap_or(256);
    let mut report = VerificationReport::new();
    if job.symbol.is_some() {
        let (_, lg, gs) = group_symbol(job)?;
        let bd = block_diagonalize(&gs, &lg.reps);
        let back = symbol_from_blocks(lg.group.clone(), &bd.blocks, &lg.reps)?;
        report.residual("symbol_roundtrip", symbol_distance(&gs, &back, n)?, tol.reconstruction);
        let again = block_diagonalize(&back, &lg.reps);
        report.residual("blocks_roundtrip", blocks_distance(&bd.blocks, &again.blocks, n)?, tol.reconstruction);
        return Ok(Outcome::new(report));
    }
    let (_, lg) = group_of(job)?;
    let mut r = rng(job.options.seed.unwrap_or(0));
    let mut worst: f64 = 0.0;
    for _ in 0..job.options.count.unwrap_or(50) {
        let blocks = random_blocks(&mut r, &lg.reps);
        let gs = symbol_from_blocks(lg.group.clone(), &blocks, &lg.reps)?;
        worst = worst.max(blocks_distance(&blocks, &block_diagonalize(&gs, &lg.reps).blocks, n)?);
    }
    report.residual("blocks_roundtrip", worst, tol.reconstruction);
    Ok(Outcome::new(report))
}

