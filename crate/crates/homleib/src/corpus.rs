//! The bundled example corpus: presentation files, declared checks and golden reports.
//!
//! Each entry is a directory `corpus/<id>/` holding `*.alg`, `*.act` and
//! `*.mat` documents, a `checks` manifest, a `golden.report` and a
//! `provenance.txt`. A manifest line names one check and its files:
//!
//! ```text
//! load        X.alg
//! variety     X.alg
//! multiplicative X.alg
//! identity    X.alg NAME
//! bimodule    X.alg Y.act
//! matched     A.alg B.alg A_ON_B.act B_ON_A.act
//! coupling    A.alg B.alg A_ON_B.act B_ON_A.act
//! ooperator   X.alg Y.act T.mat
//! rota-baxter X.alg K.mat
//! ```
//!
//! optionally followed by `at p=2,q=3` to run at a rational specialization
//! (every parameter of the field must be given). Blank lines and `#` comments
//! are ignored. The rendered report of an entry is the concatenation, per
//! check, of a `## <line>` header and the report lines.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use thiserror::Error;

use crate::duality::{check_ooperator, check_rota_baxter, OOperatorData};
use crate::identities::{
    check_bimodule, check_identity, check_matched_pair, check_multiplicative, check_named, check_variety, identity,
    matched_identities, CheckError, CheckOptions, Context, Report,
};
use crate::linalg::LinearMap;
use crate::model::{load_action, load_matrix, load_presentation, ActionFamily, AlgebraPresentation, ModelError};
use crate::scalar::{parse_scalar, FieldSpec, Scalar};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {msg}")]
    Manifest { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: ModelError },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("unknown corpus entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, CorpusError>;

/// The corpus directory: `$HOMLEIB_CORPUS` if set, else the bundled one.
pub fn corpus_root() -> PathBuf {
    match std::env::var_os("HOMLEIB_CORPUS") {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

/// One declared check.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckKind {
    Load { alg: String },
    Variety { alg: String },
    Multiplicative { alg: String },
    Identity { alg: String, name: String },
    Bimodule { alg: String, act: String },
    Matched { a: String, b: String, a_on_b: String, b_on_a: String },
    /// The coupling conditions of a matched pair alone, without the bimodule preconditions.
    Coupling { a: String, b: String, a_on_b: String, b_on_a: String },
    OOperator { alg: String, act: String, t: String },
    RotaBaxter { alg: String, k: String },
}

/// A manifest line: the check, an optional specialization, and the line text used as header.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    pub line: String,
    pub kind: CheckKind,
    pub at: Option<Vec<(String, BigRational)>>,
}

/// A corpus entry as found on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub dir: PathBuf,
    pub checks: Vec<CheckSpec>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

/// Parse `name=value,...` rational parameter assignments.
pub fn parse_point(text: &str) -> std::result::Result<Vec<(String, BigRational)>, String> {
    text.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected name=value, found `{kv}`"))?;
            let s = parse_scalar(v.trim(), &FieldSpec::Rationals).map_err(|e| e.to_string())?;
            let r = s.as_rational().cloned().ok_or_else(|| format!("`{v}` is not rational"))?;
            Ok((k.trim().to_string(), r))
        })
        .collect()
}

/// Parse a `checks` manifest.
pub fn parse_manifest(text: &str, path: &Path) -> Result<Vec<CheckSpec>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CorpusError::Manifest { path: path.to_path_buf(), line: n + 1, msg };
        let (body, at) = match line.split_once(" at ") {
            Some((b, p)) => (b.trim(), Some(parse_point(p.trim()).map_err(err)?)),
            None => (line, None),
        };
        let words: Vec<String> = body.split_whitespace().map(str::to_string).collect();
        let args = &words[1..];
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(CorpusError::Manifest {
                    path: path.to_path_buf(),
                    line: n + 1,
                    msg: format!("`{}` takes {k} arguments, found {}", words[0], args.len()),
                })
            }
        };
        let a = |i: usize| args[i].clone();
        let kind = match words[0].as_str() {
            "load" => want(1).map(|_| CheckKind::Load { alg: a(0) })?,
            "variety" => want(1).map(|_| CheckKind::Variety { alg: a(0) })?,
            "multiplicative" => want(1).map(|_| CheckKind::Multiplicative { alg: a(0) })?,
            "identity" => want(2).map(|_| CheckKind::Identity { alg: a(0), name: a(1) })?,
            "bimodule" => want(2).map(|_| CheckKind::Bimodule { alg: a(0), act: a(1) })?,
            "matched" => want(4).map(|_| CheckKind::Matched { a: a(0), b: a(1), a_on_b: a(2), b_on_a: a(3) })?,
            "coupling" => want(4).map(|_| CheckKind::Coupling { a: a(0), b: a(1), a_on_b: a(2), b_on_a: a(3) })?,
            "ooperator" => want(3).map(|_| CheckKind::OOperator { alg: a(0), act: a(1), t: a(2) })?,
            "rota-baxter" => want(2).map(|_| CheckKind::RotaBaxter { alg: a(0), k: a(1) })?,
            other => return Err(err(format!("unknown check `{other}`"))),
        };
        out.push(CheckSpec { line: line.to_string(), kind, at });
    }
    Ok(out)
}

/// Every entry under `root`, sorted by id.
pub fn corpus_list(root: &Path) -> Result<Vec<CorpusEntry>> {
    let rd = std::fs::read_dir(root).map_err(|source| CorpusError::Io { path: root.to_path_buf(), source })?;
    let mut out = Vec::new();
    for e in rd {
        let e = e.map_err(|source| CorpusError::Io { path: root.to_path_buf(), source })?;
        let dir = e.path();
        let manifest = dir.join("checks");
        if !manifest.is_file() {
            continue;
        }
        let checks = parse_manifest(&read(&manifest)?, &manifest)?;
        out.push(CorpusEntry { id: e.file_name().to_string_lossy().into_owned(), dir, checks });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// Look up one entry by id.
pub fn corpus_entry(root: &Path, id: &str) -> Result<CorpusEntry> {
    corpus_list(root)?.into_iter().find(|e| e.id == id).ok_or_else(|| CorpusError::UnknownEntry(id.into()))
}

/// Rational values for the field's parameters, in field order.
pub fn point_for(field: &FieldSpec, at: &[(String, BigRational)]) -> std::result::Result<Vec<BigRational>, String> {
    field
        .params()
        .iter()
        .map(|p| {
            at.iter()
                .find(|(k, _)| k == p)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| format!("no value given for parameter `{p}`"))
        })
        .collect()
}

/// Loads corpus documents relative to an entry directory, specializing them when asked.
pub struct Loader<'a> {
    pub dir: &'a Path,
    pub at: Option<&'a [(String, BigRational)]>,
}

impl Loader<'_> {
    fn model_err(&self, name: &str, source: ModelError) -> CorpusError {
        CorpusError::Model { path: self.dir.join(name), source }
    }

    fn point(&self, name: &str, field: &FieldSpec) -> Result<Option<Vec<BigRational>>> {
        match self.at {
            None => Ok(None),
            Some(at) => point_for(field, at)
                .map(Some)
                .map_err(|m| self.model_err(name, ModelError::Mismatch(m))),
        }
    }

    pub fn presentation(&self, name: &str) -> Result<AlgebraPresentation> {
        let p = load_presentation(&read(&self.dir.join(name))?).map_err(|e| self.model_err(name, e))?;
        match self.point(name, &p.field)? {
            None => Ok(p),
            Some(pt) => p.specialize(&pt).map_err(|e| self.model_err(name, ModelError::Mismatch(e.to_string()))),
        }
    }

    pub fn action(&self, name: &str) -> Result<ActionFamily> {
        let a = load_action(&read(&self.dir.join(name))?).map_err(|e| self.model_err(name, e))?;
        match self.point(name, &a.field)? {
            None => Ok(a),
            Some(pt) => a.specialize(&pt).map_err(|e| self.model_err(name, ModelError::Mismatch(e.to_string()))),
        }
    }

    /// A matrix over the field of the given presentation document (before specialization).
    pub fn matrix(&self, name: &str, field: &FieldSpec) -> Result<LinearMap> {
        let m = load_matrix(&read(&self.dir.join(name))?, field).map_err(|e| self.model_err(name, e))?;
        match self.point(name, field)? {
            None => Ok(m),
            Some(pt) => m
                .try_map_entries(|s: &Scalar| s.specialize(&pt))
                .map_err(|e| self.model_err(name, ModelError::Mismatch(e.to_string()))),
        }
    }

    /// The field a presentation document declares, without specializing.
    pub fn declared_field(&self, name: &str) -> Result<FieldSpec> {
        let p = load_presentation(&read(&self.dir.join(name))?).map_err(|e| self.model_err(name, e))?;
        Ok(p.field)
    }
}

/// Run one check and render its lines (without the header).
pub fn run_check(dir: &Path, spec: &CheckSpec) -> Result<String> {
    let ld = Loader { dir, at: spec.at.as_deref() };
    let report: Report = match &spec.kind {
        CheckKind::Load { alg } => {
            return Ok(match load_presentation(&read(&dir.join(alg))?) {
                Ok(p) => format!("LOADED {} dim {}\n", p.variety, p.dim),
                Err(e) => format!("ERROR {e}\n"),
            });
        }
        CheckKind::Variety { alg } => check_variety(&ld.presentation(alg)?)?,
        CheckKind::Multiplicative { alg } => check_multiplicative(&ld.presentation(alg)?)?,
        CheckKind::Identity { alg, name } => {
            let p = ld.presentation(alg)?;
            let mut r = Report::new(p.field.clone());
            r.push(check_identity(identity(name), &Context::algebra(&p)).map_err(CheckError::from)?);
            r
        }
        CheckKind::Bimodule { alg, act } => check_bimodule(&ld.presentation(alg)?, &ld.action(act)?)?,
        CheckKind::Matched { a, b, a_on_b, b_on_a } => check_matched_pair(
            &ld.presentation(a)?,
            &ld.presentation(b)?,
            &ld.action(a_on_b)?,
            &ld.action(b_on_a)?,
        )?,
        CheckKind::Coupling { a, b, a_on_b, b_on_a } => {
            let (pa, pb) = (ld.presentation(a)?, ld.presentation(b)?);
            let (ab, ba) = (ld.action(a_on_b)?, ld.action(b_on_a)?);
            let ctx = Context::matched(&pa, &pb, &ab, &ba);
            check_named(&matched_identities(pa.variety), &ctx, CheckOptions::default())?
        }
        CheckKind::OOperator { alg, act, t } => {
            let field = ld.declared_field(alg)?;
            let op = OOperatorData::new(ld.matrix(t, &field)?);
            check_ooperator(&ld.presentation(alg)?, &ld.action(act)?, &op)?
        }
        CheckKind::RotaBaxter { alg, k } => {
            let field = ld.declared_field(alg)?;
            check_rota_baxter(&ld.presentation(alg)?, &ld.matrix(k, &field)?)?
        }
    };
    Ok(report.render_text())
}

/// Run every declared check of an entry and render the full report.
pub fn corpus_run(entry: &CorpusEntry) -> Result<String> {
    let mut out = String::new();
    for spec in &entry.checks {
        let _ = writeln!(out, "## {}", spec.line);
        out.push_str(&run_check(&entry.dir, spec)?);
    }
    Ok(out)
}

/// The stored golden report of an entry.
pub fn golden(entry: &CorpusEntry) -> Result<String> {
    read(&entry.dir.join("golden.report"))
}

/// Run an entry and compare with its golden; `Some(diff)` describes the first differing line.
pub fn corpus_diff(entry: &CorpusEntry) -> Result<Option<String>> {
    Ok(first_difference(&golden(entry)?, &corpus_run(entry)?))
}

/// The first line where two renderings differ, if any.
pub fn first_difference(want: &str, got: &str) -> Option<String> {
    if want == got {
        return None;
    }
    let (w, g): (Vec<&str>, Vec<&str>) = (want.lines().collect(), got.lines().collect());
    let n = w.len().max(g.len());
    (0..n).find(|&i| w.get(i) != g.get(i)).map(|i| {
        format!(
            "line {}: expected `{}`, got `{}`",
            i + 1,
            w.get(i).copied().unwrap_or("<end>"),
            g.get(i).copied().unwrap_or("<end>")
        )
    })
}
