//! `homleib check`: run identity checks and print a report.

use std::path::{Path, PathBuf};

use clap::Args;
use homleib::duality::{
    bialgebra_matchedpair_equiv, check_bialgebra, check_ooperator, check_rota_baxter, manin_check, BilinearFormData,
    OOperatorData,
};
use homleib::identities::{
    catalog, check_bimodule_with, check_matched_pair_with, check_named, check_variety_with, evaluate_vectors,
    CheckOptions, CheckReport, Context, Report,
};
use homleib::linalg::Vector;
use homleib::model::AlgebraPresentation;
use homleib::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::inputs::{emit, Inputs};
use crate::Global;

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Presentation file to check.
    pub file: Option<PathBuf>,
    /// Check the defining identities of the declared variety (the default).
    #[arg(long)]
    pub variety: bool,
    /// Check one catalog identity in the algebra context (repeatable).
    #[arg(long, value_name = "NAME")]
    pub identity: Vec<String>,
    /// Check that an action file is a bimodule of the algebra.
    #[arg(long, value_name = "ACTION")]
    pub bimodule: Option<PathBuf>,
    /// Check a matched pair: algebras A and B, actions of A on B and of B on A.
    #[arg(long, num_args = 4, value_names = ["A", "B", "A_ON_B", "B_ON_A"])]
    pub matched: Option<Vec<PathBuf>>,
    /// Check an O-operator T for a bimodule, given as `ACTION,T`.
    #[arg(long, value_name = "ACTION,T")]
    pub ooperator: Option<String>,
    /// Check a Rota-Baxter operator of weight zero given as a matrix file.
    #[arg(long, value_name = "K")]
    pub rota_baxter: Option<PathBuf>,
    /// Check the bialgebra conditions (cobracket from the file, or dual to `--dual`).
    #[arg(long)]
    pub bialgebra: bool,
    /// Dual algebra for `--bialgebra`; also runs the matched-pair side of the equivalence.
    #[arg(long, value_name = "FILE", requires = "bialgebra")]
    pub dual: Option<PathBuf>,
    /// Check a Manin triple split, 1-based, e.g. `1,2:3,4`.
    #[arg(long, value_name = "SPLIT")]
    pub manin: Option<String>,
    /// Bilinear form for `--manin` (defaults to the form in the presentation).
    #[arg(long, value_name = "MATRIX", requires = "manin")]
    pub form: Option<PathBuf>,
    /// Specialize parameters before checking, e.g. `p=2,q=3`.
    #[arg(long, value_name = "POINT")]
    pub at: Option<String>,
    /// Also evaluate each algebra and bimodule identity at N random vectors.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub fuzz: usize,
    /// Write the machine-readable report to this file as well.
    #[arg(long, value_name = "FILE")]
    pub save_report: Option<PathBuf>,
}

impl CheckArgs {
    fn nothing_requested(&self) -> bool {
        !self.variety
            && self.identity.is_empty()
            && self.bimodule.is_none()
            && self.matched.is_none()
            && self.ooperator.is_none()
            && self.rota_baxter.is_none()
            && !self.bialgebra
            && self.manin.is_none()
    }
}

/// Parse `1,2:3,4` into two 0-based index sets.
pub fn parse_split(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let bad = || CliError::usage(format!("--manin: expected two 1-based index lists like `1,2:3,4`, found `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let part = |t: &str| -> Result<Vec<usize>> {
        t.split(',')
            .map(|x| x.trim().parse::<usize>().ok().filter(|&i| i > 0).map(|i| i - 1).ok_or_else(bad))
            .collect()
    };
    Ok((part(a)?, part(b)?))
}

/// Evaluate catalog identities at random integer vectors in `[-3, 3]`.
fn fuzz(names: &[String], ctx: &Context, draws: usize, rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut out = Report::new(ctx.field.clone());
    for name in names {
        let id = catalog().get(name).ok_or_else(|| CliError::usage(format!("unknown identity `{name}`")))?;
        let mut entry = CheckReport::pass(&format!("fuzz_{name}"), draws);
        for k in 0..draws {
            let vectors: Vec<Vector> = id
                .vars
                .iter()
                .map(|(_, sort)| Vector((0..ctx.dim(*sort)).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect()))
                .collect();
            let residual = evaluate_vectors(id, ctx, &vectors).map_err(|e| CliError::usage(e.to_string()))?.flatten();
            if !residual.is_zero() {
                let coords: Vec<String> = vectors.iter().map(|v| v.render(&ctx.field)).collect();
                entry = CheckReport::failed(&entry.identity, format!("draw {} at ({})", k + 1, coords.join(", ")));
                entry.residual = Some(residual);
                break;
            }
        }
        out.push(entry);
    }
    Ok(out)
}

fn names_of(r: &Report) -> Vec<String> {
    r.entries.iter().map(|e| e.identity.clone()).filter(|n| catalog().get(n).is_some()).collect()
}

fn require_file(args: &CheckArgs, flag: &str) -> Result<PathBuf> {
    args.file.clone().ok_or_else(|| CliError::usage(format!("{flag} needs a presentation file")))
}

pub fn run(args: &CheckArgs, global: &Global) -> Result<Report> {
    let inputs = Inputs::new(args.at.as_deref())?;
    let opts = CheckOptions { jobs: global.jobs };
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let algebra: Option<(PathBuf, AlgebraPresentation)> = match &args.file {
        Some(f) => Some((f.clone(), inputs.presentation(f)?)),
        None => None,
    };
    let field = match (&algebra, &args.matched) {
        (Some((_, p)), _) => p.field.clone(),
        (None, Some(m)) => inputs.presentation(&m[0])?.field,
        (None, None) => return Err(CliError::usage("check needs a presentation file")),
    };
    let mut report = Report::new(field);
    let fuzzing = |report: &mut Report, r: &Report, ctx: &Context, rng: &mut ChaCha8Rng| -> Result<()> {
        if args.fuzz > 0 {
            report.extend(fuzz(&names_of(r), ctx, args.fuzz, rng)?);
        }
        Ok(())
    };

    if args.variety || args.nothing_requested() {
        let (_, p) = algebra.as_ref().ok_or_else(|| CliError::usage("--variety needs a presentation file"))?;
        let r = check_variety_with(p, opts)?;
        report.extend(r.clone());
        fuzzing(&mut report, &r, &Context::algebra(p), &mut rng)?;
    }
    if !args.identity.is_empty() {
        let (_, p) = algebra.as_ref().ok_or_else(|| CliError::usage("--identity needs a presentation file"))?;
        for name in &args.identity {
            if catalog().get(name).is_none() {
                return Err(CliError::usage(format!("unknown identity `{name}`")));
            }
        }
        p.validate().map_err(|e| CliError::usage(e.to_string()))?;
        let ctx = Context::algebra(p);
        let r = check_named(&args.identity, &ctx, opts)?;
        report.extend(r.clone());
        fuzzing(&mut report, &r, &ctx, &mut rng)?;
    }
    if let Some(act) = &args.bimodule {
        let (_, p) = algebra.as_ref().ok_or_else(|| CliError::usage("--bimodule needs a presentation file"))?;
        let a = inputs.action(act)?;
        let r = check_bimodule_with(p, &a, opts)?;
        report.extend(r.clone());
        fuzzing(&mut report, &r, &Context::bimodule(p, &a), &mut rng)?;
    }
    if let Some(m) = &args.matched {
        let (pa, pb) = (inputs.presentation(&m[0])?, inputs.presentation(&m[1])?);
        let (ab, ba) = (inputs.action(&m[2])?, inputs.action(&m[3])?);
        report.extend(check_matched_pair_with(&pa, &pb, &ab, &ba, opts)?);
    }
    if let Some(spec) = &args.ooperator {
        let file = require_file(args, "--ooperator")?;
        let (_, p) = algebra.as_ref().expect("file present");
        let (act, t) = spec
            .split_once(',')
            .ok_or_else(|| CliError::usage(format!("--ooperator: expected ACTION,T, found `{spec}`")))?;
        let a = inputs.action(Path::new(act))?;
        let t = inputs.matrix(Path::new(t), &inputs.declared_field(&file)?)?;
        report.extend(check_ooperator(p, &a, &OOperatorData::new(t))?);
    }
    if let Some(k) = &args.rota_baxter {
        let file = require_file(args, "--rota-baxter")?;
        let (_, p) = algebra.as_ref().expect("file present");
        let k = inputs.matrix(k, &inputs.declared_field(&file)?)?;
        report.extend(check_rota_baxter(p, &k)?);
    }
    if args.bialgebra {
        let (_, p) = algebra.as_ref().ok_or_else(|| CliError::usage("--bialgebra needs a presentation file"))?;
        match &args.dual {
            None => report.extend(check_bialgebra(p)?),
            Some(d) => {
                let dual = inputs.presentation(d)?;
                let eq = bialgebra_matchedpair_equiv(p, &dual)?;
                let agree = if eq.agree() {
                    CheckReport::pass("bialgebra_matchedpair_agree", 1)
                } else {
                    CheckReport::failed("bialgebra_matchedpair_agree", "the bialgebra and matched-pair verdicts differ")
                };
                report.extend(eq.preconditions);
                report.extend(eq.matched_pair);
                report.extend(eq.bialgebra);
                report.push(agree);
            }
        }
    }
    if let Some(split) = &args.manin {
        let file = require_file(args, "--manin")?;
        let (_, p) = algebra.as_ref().expect("file present");
        let (part1, part2) = parse_split(split)?;
        let matrix = match &args.form {
            Some(f) => inputs.matrix(f, &inputs.declared_field(&file)?)?,
            None => p.form.clone().ok_or_else(|| CliError::usage("--manin needs --form or a form in the presentation"))?,
        };
        report.extend(manin_check(p, &BilinearFormData::new(matrix), &part1, &part2)?);
    }

    if let Some(path) = &args.save_report {
        emit(Some(path), &report.render_machine())?;
    }
    Ok(report)
}
