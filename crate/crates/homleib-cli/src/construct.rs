//! `homleib construct`: build new presentations and action files.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use homleib::construct::{
    derived_algebra, matched_sum, omni_gl_example, semidirect_sum, sub_adjacent, yau_twist, Construction, Policy,
    TwistMode, TwistRecipe,
};
use homleib::duality::{dendriform_from_form, dual_actions, induce_dendriform, BilinearFormData, Convention, DualMode, OOperatorData};
use homleib::identities::Report;
use homleib::linalg::LinearMap;
use homleib::model::{save_action, save_presentation};
use homleib::scalar::FieldSpec;

use crate::error::{CliError, Result};
use crate::inputs::{emit, Inputs};

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: Kind,
    /// Output file (standard output when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Build the output even when a hypothesis or the re-verification fails (exit 1 still signals it).
    #[arg(long, global = true)]
    pub lenient: bool,
    /// Specialize parameters of every input first, e.g. `p=2`.
    #[arg(long, global = true, value_name = "POINT")]
    pub at: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "hom_paper")]
    HomPaper,
    Swapped,
}

#[derive(Debug, Subcommand)]
pub enum Kind {
    /// Twist by algebra morphisms (`--by` for al, plus `--by-be` for BiHom twists).
    Twist {
        input: PathBuf,
        #[arg(long, value_name = "MATRIX")]
        by: PathBuf,
        #[arg(long, value_name = "MATRIX")]
        by_be: Option<PathBuf>,
        /// Treat the input as untwisted: the morphisms become the twists.
        #[arg(long)]
        from_untwisted: bool,
    },
    /// The n-th derived algebra of type 1 or 2.
    Derive {
        input: PathBuf,
        #[arg(long = "type", value_name = "1|2")]
        kind: u8,
        #[arg(long)]
        n: u32,
    },
    /// The semidirect sum A ⋉ V of a bimodule.
    Semidirect { input: PathBuf, action: PathBuf },
    /// The bowtie sum A ⋈ B of a matched pair.
    MatchedSum { a: PathBuf, b: PathBuf, a_on_b: PathBuf, b_on_a: PathBuf },
    /// The sub-adjacent algebra of a dendriform presentation.
    Subadjacent { input: PathBuf },
    /// Dual bimodule on V* (writes an action file).
    Dualize {
        input: PathBuf,
        action: PathBuf,
        #[arg(long, value_name = "MODE")]
        mode: String,
    },
    /// Dendriform structure on V induced by an O-operator.
    Induce {
        input: PathBuf,
        action: PathBuf,
        t: PathBuf,
        #[arg(long, value_enum, default_value = "hom_paper")]
        convention: ConventionArg,
    },
    /// Dendriform structure from a symplectic form.
    FromForm {
        input: PathBuf,
        /// Form matrix (defaults to the form in the presentation).
        #[arg(long, value_name = "MATRIX")]
        form: Option<PathBuf>,
    },
    /// The dendriform structure on gl(V) ⊕ V; `--beta id` or a matrix file.
    Omni {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "id|MATRIX")]
        beta: String,
        #[arg(long, default_value = "rationals")]
        field: String,
    },
}

/// The constructed document and the evidence gathered while building it.
pub struct Built {
    pub document: String,
    pub preconditions: Report,
    pub verification: Report,
}

impl Built {
    fn from<T>(c: Construction<T>, render: impl FnOnce(&T) -> String) -> Self {
        Built { document: render(&c.value), preconditions: c.preconditions, verification: c.verification }
    }

    pub fn sound(&self) -> bool {
        self.preconditions.passed() && self.verification.passed()
    }
}

pub fn run(args: &ConstructArgs) -> Result<Built> {
    let inputs = Inputs::new(args.at.as_deref())?;
    let policy = if args.lenient { Policy::Lenient } else { Policy::Strict };
    let built = match &args.kind {
        Kind::Twist { input, by, by_be, from_untwisted } => {
            let p = inputs.presentation(input)?;
            let field = inputs.declared_field(input)?;
            let mode = if *from_untwisted { TwistMode::YauFromUntwisted } else { TwistMode::ComposeOntoTwisted };
            let al = inputs.matrix(by, &field)?;
            let recipe = match by_be {
                Some(be) => TwistRecipe::bihom(al, inputs.matrix(be, &field)?, mode),
                None => TwistRecipe::hom(al, mode),
            };
            Built::from(yau_twist(&p, &recipe, policy)?, save_presentation)
        }
        Kind::Derive { input, kind, n } => {
            Built::from(derived_algebra(&inputs.presentation(input)?, *kind, *n, policy)?, save_presentation)
        }
        Kind::Semidirect { input, action } => {
            let c = semidirect_sum(&inputs.presentation(input)?, &inputs.action(action)?, policy)?;
            Built::from(c, save_presentation)
        }
        Kind::MatchedSum { a, b, a_on_b, b_on_a } => {
            let (pa, pb) = (inputs.presentation(a)?, inputs.presentation(b)?);
            let c = matched_sum(&pa, &pb, &inputs.action(a_on_b)?, &inputs.action(b_on_a)?, policy)?;
            Built::from(c, save_presentation)
        }
        Kind::Subadjacent { input } => Built::from(sub_adjacent(&inputs.presentation(input)?, policy)?, save_presentation),
        Kind::Dualize { input, action, mode } => {
            let mode: DualMode = mode.parse().map_err(CliError::Usage)?;
            let c = dual_actions(&inputs.presentation(input)?, &inputs.action(action)?, mode, policy)?;
            Built::from(c, save_action)
        }
        Kind::Induce { input, action, t, convention } => {
            let p = inputs.presentation(input)?;
            let t = inputs.matrix(t, &inputs.declared_field(input)?)?;
            let convention = match convention {
                ConventionArg::HomPaper => Convention::HomPaper,
                ConventionArg::Swapped => Convention::Swapped,
            };
            let op = OOperatorData::new(t).with_convention(convention);
            Built::from(induce_dendriform(&p, &inputs.action(action)?, &op, policy)?, |i| save_presentation(&i.module))
        }
        Kind::FromForm { input, form } => {
            let p = inputs.presentation(input)?;
            let matrix = match form {
                Some(f) => inputs.matrix(f, &inputs.declared_field(input)?)?,
                None => p.form.clone().ok_or_else(|| CliError::usage("from-form needs --form or a form in the presentation"))?,
            };
            Built::from(dendriform_from_form(&p, &BilinearFormData::new(matrix), policy)?, save_presentation)
        }
        Kind::Omni { n, beta, field } => {
            let field = FieldSpec::parse(field).map_err(|e| CliError::usage(format!("--field: {e}")))?;
            let beta = if beta == "id" { LinearMap::identity(*n) } else { inputs.matrix(&PathBuf::from(beta), &field)? };
            Built::from(omni_gl_example(*n, &beta, &field, policy)?, save_presentation)
        }
    };
    emit(args.out.as_deref(), &built.document)?;
    Ok(built)
}
