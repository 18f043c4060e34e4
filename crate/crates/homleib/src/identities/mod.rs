//! The multilinear identity engine.
//!
//! Identities are written in a small language (see [`ast`]), collected in a
//! text catalog (see [`catalog`]) and checked exhaustively on basis
//! assignments against a [`Context`]: by multilinearity, vanishing on every
//! basis tuple is equivalent to vanishing identically.

pub mod ast;
pub mod catalog;
pub mod context;
pub mod eval;
pub mod report;

use thiserror::Error;

pub use ast::{parse_identities, parse_identity, Expr, Identity, OpExpr, ParseError, Sort, Symbol};
pub use catalog::{catalog, identity, Catalog, CatalogError};
pub use context::Context;
pub use eval::{check_identity, check_identity_with, evaluate_identity, evaluate_vectors, CheckOptions, EvalError, Value};
pub use report::{CheckReport, Report, Status};

use crate::linalg::LinearMap;
use crate::model::{validate_pair, ActionFamily, AlgebraPresentation, ModelError, VarietyTag};

/// Errors that stop a check before any verdict is produced.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type CheckResult<T> = std::result::Result<T, CheckError>;

/// Names of the multiplicativity identities of a variety (one per twist and product).
pub fn multiplicativity_identities(tag: VarietyTag) -> Vec<&'static str> {
    use VarietyTag::*;
    match tag {
        HomLeibniz | HomLie => vec!["multiplicativity_al"],
        Leibniz => vec![],
        HomLeibnizDendriform => vec!["multiplicativity_al_prec", "multiplicativity_al_succ"],
        BiHomLeibniz => vec!["multiplicativity_al", "multiplicativity_be"],
        BiHomLeibnizDendriform => vec![
            "multiplicativity_al_prec",
            "multiplicativity_al_succ",
            "multiplicativity_be_prec",
            "multiplicativity_be_succ",
        ],
    }
}

/// The defining identities of a variety, plus multiplicativity when requested.
pub fn variety_identities(tag: VarietyTag, multiplicative: bool) -> Vec<&'static str> {
    use VarietyTag::*;
    let mut v = match tag {
        HomLeibniz | Leibniz => vec!["hom_leibniz"],
        HomLie => vec!["skew_symmetry", "hom_jacobi"],
        HomLeibnizDendriform => vec!["dendr_1", "dendr_2", "dendr_3"],
        BiHomLeibniz => vec!["bihom_twist_commute", "bihom_leibniz"],
        BiHomLeibnizDendriform => vec!["bihom_twist_commute", "bihom_dendr_1", "bihom_dendr_2", "bihom_dendr_3"],
    };
    if multiplicative {
        v.extend(multiplicativity_identities(tag));
    }
    v
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}_{i}")).collect()
}

/// The bimodule conditions of a variety.
pub fn bimodule_identities(tag: VarietyTag) -> Vec<String> {
    use VarietyTag::*;
    match tag {
        HomLeibniz | Leibniz | HomLie => numbered("homleib_bimod", 5),
        HomLeibnizDendriform => numbered("dendr_bimod", 13),
        BiHomLeibniz => {
            let mut v = numbered("bihom_bimod", 7);
            v.push("bihom_module_twist_commute".into());
            v
        }
        BiHomLeibnizDendriform => {
            let mut v = numbered("bihom_dendr_bimod", 9);
            for n in [10, 12, 13, 14] {
                v.push(format!("bihom_dendr_bimod_{n}a"));
                v.push(format!("bihom_dendr_bimod_{n}b"));
            }
            v.push("bihom_dendr_module_twist_commute".into());
            v
        }
    }
}

/// The coupling conditions of a matched pair, in order.
pub fn matched_identities(tag: VarietyTag) -> Vec<String> {
    use VarietyTag::*;
    match tag {
        HomLeibniz | Leibniz | HomLie => numbered("matched_pair", 6),
        HomLeibnizDendriform => numbered("dendr_matched", 18),
        BiHomLeibniz => numbered("bihom_matched", 6),
        BiHomLeibnizDendriform => numbered("bihom_dendr_matched", 18),
    }
}

/// Run named catalog identities against a context, in order.
pub fn check_named<S: AsRef<str>>(names: &[S], ctx: &Context, opts: CheckOptions) -> CheckResult<Report> {
    let mut r = Report::new(ctx.field.clone());
    for n in names {
        r.push(check_identity_with(identity(n.as_ref()), ctx, opts)?);
    }
    Ok(r)
}

/// Check the defining identities of the presentation's variety (and multiplicativity if claimed).
pub fn check_variety(p: &AlgebraPresentation) -> CheckResult<Report> {
    check_variety_with(p, CheckOptions::default())
}

pub fn check_variety_with(p: &AlgebraPresentation, opts: CheckOptions) -> CheckResult<Report> {
    p.validate()?;
    check_named(&variety_identities(p.variety, p.multiplicative), &Context::algebra(p), opts)
}

/// Check multiplicativity of every twist, regardless of what the presentation claims.
pub fn check_multiplicative(p: &AlgebraPresentation) -> CheckResult<Report> {
    p.validate()?;
    let names = multiplicativity_identities(p.variety);
    check_named(&names, &Context::algebra(p), CheckOptions::default())
}

/// The named precondition "α² = id".
pub fn check_involutive(p: &AlgebraPresentation) -> CheckResult<CheckReport> {
    let a = p.alpha();
    let sq = a.compose(&a).map_err(|e| EvalError::Dimension(e.to_string()))?;
    Ok(if sq.is_identity() {
        CheckReport::pass("involutive_al", 1)
    } else {
        CheckReport::failed("involutive_al", "al composed with itself is not the identity")
    })
}

/// Check the bimodule conditions of `a` over `p`.
///
/// For Hom-Leibniz-type bimodules the derived consequence is appended once
/// the defining conditions pass.
pub fn check_bimodule(p: &AlgebraPresentation, a: &ActionFamily) -> CheckResult<Report> {
    check_bimodule_with(p, a, CheckOptions::default())
}

pub fn check_bimodule_with(p: &AlgebraPresentation, a: &ActionFamily, opts: CheckOptions) -> CheckResult<Report> {
    p.validate()?;
    a.validate()?;
    validate_pair(p, a)?;
    let ctx = Context::bimodule(p, a);
    let mut r = check_named(&bimodule_identities(p.variety), &ctx, opts)?;
    if r.passed() && matches!(p.variety, VarietyTag::HomLeibniz | VarietyTag::Leibniz | VarietyTag::HomLie) {
        r.push(check_identity_with(identity("homleib_bimod_consequence"), &ctx, opts)?);
    }
    Ok(r)
}

fn twists_agree(a: &ActionFamily, p: &AlgebraPresentation) -> Option<String> {
    let want = |tw: &str| match tw {
        "beV" => p.twist("al"),
        _ => p.twist("be"),
    };
    for (name, m) in &a.module_twists {
        if want(name).as_ref() != Some(m) {
            return Some(format!("module twist `{name}` differs from the acting-on algebra's twist"));
        }
    }
    None
}

/// Check a matched pair: both bimodules first (short-circuiting with a
/// precondition entry), then every coupling condition.
pub fn check_matched_pair(
    pa: &AlgebraPresentation,
    pb: &AlgebraPresentation,
    a_on_b: &ActionFamily,
    b_on_a: &ActionFamily,
) -> CheckResult<Report> {
    check_matched_pair_with(pa, pb, a_on_b, b_on_a, CheckOptions::default())
}

pub fn check_matched_pair_with(
    pa: &AlgebraPresentation,
    pb: &AlgebraPresentation,
    a_on_b: &ActionFamily,
    b_on_a: &ActionFamily,
    opts: CheckOptions,
) -> CheckResult<Report> {
    if pa.variety != pb.variety {
        return Err(ModelError::Mismatch(format!("matched pair of {} and {}", pa.variety, pb.variety)).into());
    }
    if pa.field != pb.field {
        return Err(ModelError::Mismatch("the two algebras have different fields".into()).into());
    }
    if a_on_b.module_dim != pb.dim || b_on_a.module_dim != pa.dim {
        return Err(ModelError::Mismatch("each action family must act on the other algebra".into()).into());
    }
    let mut out = Report::new(pa.field.clone());
    for (label, p, a, other) in [("A on B", pa, a_on_b, pb), ("B on A", pb, b_on_a, pa)] {
        if let Some(msg) = twists_agree(a, other) {
            out.push(CheckReport::precondition("matched_pair_bimodules", format!("{label}: {msg}")));
            return Ok(out);
        }
        let r = check_bimodule_with(p, a, opts)?;
        let failed = r.first_failure().map(|f| f.identity.clone());
        for e in r.entries {
            let note = match &e.note {
                Some(n) => format!("{label}; {n}"),
                None => label.to_string(),
            };
            out.push(e.with_note(note));
        }
        if let Some(f) = failed {
            out.push(CheckReport::precondition("matched_pair_bimodules", format!("bimodule {label} fails {f}")));
            return Ok(out);
        }
    }
    let ctx = Context::matched(pa, pb, a_on_b, b_on_a);
    out.extend(check_named(&matched_identities(pa.variety), &ctx, opts)?);
    Ok(out)
}

/// Check that a map between presentations preserves every product and intertwines the twists.
pub fn check_morphism(f: &LinearMap, source: &AlgebraPresentation, target: &AlgebraPresentation) -> CheckResult<Report> {
    let mut out = Report::new(source.field.clone());
    if f.rows() != target.dim || f.cols() != source.dim {
        return Err(ModelError::Mismatch("morphism shape does not match the presentations".into()).into());
    }
    let dim_err = |e: crate::linalg::LinalgError| CheckError::Eval(EvalError::from(e));
    for (name, p) in &source.products {
        let Some(q) = target.products.get(name) else {
            out.push(CheckReport::failed(&format!("morphism_{name}"), "target lacks this product"));
            continue;
        };
        let mut bad = None;
        'outer: for i in 0..source.dim {
            for j in 0..source.dim {
                let lhs = f.apply(&p.basis_product(i, j)).map_err(dim_err)?;
                let rhs = q.apply(&f.column(i), &f.column(j)).map_err(dim_err)?;
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    bad = Some((vec![i + 1, j + 1], d));
                    break 'outer;
                }
            }
        }
        out.push(match bad {
            None => CheckReport::pass(&format!("morphism_{name}"), source.dim * source.dim),
            Some((a, d)) => CheckReport {
                identity: format!("morphism_{name}"),
                status: Status::Fail,
                assignment: Some(a),
                residual: Some(d),
                assignments: 0,
                variables: vec![Sort::A, Sort::A],
                note: None,
            },
        });
    }
    for name in source.variety.twist_names() {
        let (Some(s), Some(t)) = (source.twist(name), target.twist(name)) else { continue };
        let lhs = f.compose(&s).map_err(dim_err)?;
        let rhs = t.compose(f).map_err(dim_err)?;
        out.push(if lhs == rhs {
            CheckReport::pass(&format!("morphism_twist_{name}"), source.dim)
        } else {
            CheckReport::failed(&format!("morphism_twist_{name}"), format!("f composed with {name} differs from {name} composed with f"))
        });
    }
    Ok(out)
}
