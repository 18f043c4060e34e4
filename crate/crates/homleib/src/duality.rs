//! Dual modules, bilinear forms, Manin triples, bialgebras and O-operators.
//!
//! The dual space A* is modelled concretely: a second presentation of the
//! same dimension, paired with A by the dot product of coordinates. The dual
//! of a linear map is the signed transpose `φ* = −φᵀ` (see [`dual_map`]); the
//! twist of an algebra structure on A* is the plain transpose `αᵀ`, the
//! adjoint of α for the pairing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::construct::{pass_or, renamed, sub_adjacent_raw, Builder, ConstructError, Construction, Policy, Result};
use crate::construct::matched_sum;
use crate::identities::{
    check_involutive, check_morphism, check_multiplicative, check_named, check_variety, CheckError, CheckOptions,
    CheckReport, CheckResult, Context, Report, Status,
};
use crate::linalg::{dual_map, LinearMap, Product, Vector};
use crate::model::{validate_pair, ActionFamily, ActionKind, AlgebraPresentation, ModelError, VarietyTag};
use crate::scalar::Scalar;

/// The plain transpose of a matrix.
pub fn transpose(m: &LinearMap) -> LinearMap {
    dual_map(m).neg()
}

fn mismatch(msg: impl Into<String>) -> CheckError {
    CheckError::Model(ModelError::Mismatch(msg.into()))
}

fn add_families(a: &[LinearMap], b: &[LinearMap]) -> Result<Vec<LinearMap>> {
    a.iter().zip(b).map(|(x, y)| Ok(x.add(y)?)).collect()
}

fn neg_family(a: &[LinearMap]) -> Vec<LinearMap> {
    a.iter().map(LinearMap::neg).collect()
}

fn star_family(a: &[LinearMap]) -> Vec<LinearMap> {
    a.iter().map(dual_map).collect()
}

// ---------------------------------------------------------------------------
// Dual modules
// ---------------------------------------------------------------------------

/// Which combination of dual actions to build on V*.
///
/// The first four take a bimodule `(l, r, β, V)` of a Hom-Leibniz algebra;
/// the others take a bimodule `(l≺, r≺, l≻, r≻, β, V)` of a Hom-Leibniz
/// dendriform algebra. The `Dendriform*` modes give dendriform bimodules
/// `(0, X, Y, 0)` (in the order `l≺, r≺, l≻, r≻`), the `Leibniz*` modes give
/// bimodules `(X, Y)` of the sub-adjacent Hom-Leibniz algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualMode {
    /// `(l*, r*)`.
    Coadjoint,
    /// `(l*, −l*−r*)`.
    CoadjointSkew,
    /// `(l*, 0)`.
    LeftOnly,
    /// `(0, r*)`.
    RightOnly,
    /// `(0, l≺*+l≻*, r≺*+r≻*, 0)`.
    DendriformTotal,
    /// `(0, l≻*, −l≻*−r≺*, 0)`.
    DendriformSkew,
    /// `(0, l≻*, r≺*, 0)`.
    DendriformCross,
    /// `(l≺*+l≻*, r≺*+r≻*)`.
    LeibnizTotal,
    /// `(l≻*, −l≻*−r≺*)`.
    LeibnizSkew,
    /// `(l≻*, r≺*)`.
    LeibnizCross,
}

impl DualMode {
    pub const ALL: [DualMode; 10] = [
        DualMode::Coadjoint,
        DualMode::CoadjointSkew,
        DualMode::LeftOnly,
        DualMode::RightOnly,
        DualMode::DendriformTotal,
        DualMode::DendriformSkew,
        DualMode::DendriformCross,
        DualMode::LeibnizTotal,
        DualMode::LeibnizSkew,
        DualMode::LeibnizCross,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualMode::Coadjoint => "coadjoint",
            DualMode::CoadjointSkew => "coadjoint-skew",
            DualMode::LeftOnly => "left-only",
            DualMode::RightOnly => "right-only",
            DualMode::DendriformTotal => "dendriform-total",
            DualMode::DendriformSkew => "dendriform-skew",
            DualMode::DendriformCross => "dendriform-cross",
            DualMode::LeibnizTotal => "leibniz-total",
            DualMode::LeibnizSkew => "leibniz-skew",
            DualMode::LeibnizCross => "leibniz-cross",
        }
    }

    /// Whether the mode takes a dendriform bimodule.
    pub fn takes_dendriform(self) -> bool {
        !matches!(self, DualMode::Coadjoint | DualMode::CoadjointSkew | DualMode::LeftOnly | DualMode::RightOnly)
    }

    /// Whether the result is a bimodule of the sub-adjacent algebra rather than of the input.
    pub fn over_sub_adjacent(self) -> bool {
        matches!(self, DualMode::LeibnizTotal | DualMode::LeibnizSkew | DualMode::LeibnizCross)
    }
}

impl fmt::Display for DualMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        DualMode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown dual mode `{s}`"))
    }
}

/// The algebra a dual module built with `mode` is a bimodule of.
pub fn dual_target(p: &AlgebraPresentation, mode: DualMode) -> AlgebraPresentation {
    if mode.over_sub_adjacent() {
        sub_adjacent_raw(p)
    } else {
        p.clone()
    }
}

/// Dual actions on V* combined according to `mode`; module twists become their signed duals.
///
/// Requires a multiplicative presentation with involutive twist (both checked).
/// The result is verified against [`dual_target`]`(p, mode)`.
pub fn dual_actions(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    mode: DualMode,
    policy: Policy,
) -> Result<Construction<ActionFamily>> {
    p.validate()?;
    validate_pair(p, a)?;
    if p.variety.is_bihom() {
        return Err(ConstructError::Unsupported("dual modules are defined for Hom varieties".into()));
    }
    let want = if mode.takes_dendriform() { ActionKind::Dendriform } else { ActionKind::Leibniz };
    if a.kind() != Some(want) || p.variety.is_dendriform() != mode.takes_dendriform() {
        return Err(ConstructError::Unsupported(format!("mode {mode} does not apply to a {} bimodule", p.variety)));
    }
    let mut b = Builder::new(policy, p);
    b.require("multiplicativity", check_multiplicative(p)?)?;
    b.require_one("involutive_al", check_involutive(p)?)?;
    let s = |name: &str| star_family(&a.actions[name]);
    let zero = vec![LinearMap::zero(a.module_dim, a.module_dim); a.algebra_dim];
    let lr = |l: Vec<LinearMap>, r: Vec<LinearMap>| -> BTreeMap<String, Vec<LinearMap>> {
        [("l".to_string(), l), ("r".to_string(), r)].into_iter().collect()
    };
    let dendr = |rprec: Vec<LinearMap>, lsucc: Vec<LinearMap>| -> BTreeMap<String, Vec<LinearMap>> {
        [
            ("lprec".to_string(), zero.clone()),
            ("rprec".to_string(), rprec),
            ("lsucc".to_string(), lsucc),
            ("rsucc".to_string(), zero.clone()),
        ]
        .into_iter()
        .collect()
    };
    let actions = match mode {
        DualMode::Coadjoint => lr(s("l"), s("r")),
        DualMode::CoadjointSkew => lr(s("l"), neg_family(&add_families(&s("l"), &s("r"))?)),
        DualMode::LeftOnly => lr(s("l"), zero.clone()),
        DualMode::RightOnly => lr(zero.clone(), s("r")),
        DualMode::DendriformTotal => dendr(add_families(&s("lprec"), &s("lsucc"))?, add_families(&s("rprec"), &s("rsucc"))?),
        DualMode::DendriformSkew => dendr(s("lsucc"), neg_family(&add_families(&s("lsucc"), &s("rprec"))?)),
        DualMode::DendriformCross => dendr(s("lsucc"), s("rprec")),
        DualMode::LeibnizTotal => lr(add_families(&s("lprec"), &s("lsucc"))?, add_families(&s("rprec"), &s("rsucc"))?),
        DualMode::LeibnizSkew => lr(s("lsucc"), neg_family(&add_families(&s("lsucc"), &s("rprec"))?)),
        DualMode::LeibnizCross => lr(s("lsucc"), s("rprec")),
    };
    let module_twists = a.module_twists.iter().map(|(n, m)| (n.clone(), dual_map(m))).collect();
    let fam = ActionFamily { actions, module_twists, ..a.clone() };
    let verification = crate::identities::check_bimodule(&dual_target(p, mode), &fam)?;
    b.finish("dual bimodule", fam, verification)
}

/// The bimodule `(L*, −L*−R*)` of a bracket on the dual space, with the given module twist.
pub fn coadjoint_skew(br: &Product, field: &crate::scalar::FieldSpec, twist: LinearMap) -> ActionFamily {
    let n = br.dim();
    let l: Vec<LinearMap> = (0..n).map(|i| dual_map(&br.left_mult(i))).collect();
    let r: Vec<LinearMap> = (0..n).map(|i| dual_map(&br.right_mult(i)).add(&l[i]).expect("square").neg()).collect();
    ActionFamily {
        algebra_dim: n,
        module_dim: n,
        field: field.clone(),
        actions: [("l".to_string(), l), ("r".to_string(), r)].into_iter().collect(),
        module_twists: [("beV".to_string(), twist)].into_iter().collect(),
    }
}

// ---------------------------------------------------------------------------
// Bilinear forms and Manin triples
// ---------------------------------------------------------------------------

/// Properties a bilinear form may be claimed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormProperty {
    Nondegenerate,
    Skew,
    AlphaInvariant,
    CyclicInvariant,
}

impl FormProperty {
    pub const ALL: [FormProperty; 4] =
        [FormProperty::Nondegenerate, FormProperty::Skew, FormProperty::AlphaInvariant, FormProperty::CyclicInvariant];

    /// The report entry that checks this property.
    pub fn check_name(self) -> &'static str {
        match self {
            FormProperty::Nondegenerate => "form_nondegenerate",
            FormProperty::Skew => "form_skew",
            FormProperty::AlphaInvariant => "form_alpha_invariant",
            FormProperty::CyclicInvariant => "form_cyclic_invariant",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormProperty::Nondegenerate => "nondegenerate",
            FormProperty::Skew => "skew",
            FormProperty::AlphaInvariant => "alpha_invariant",
            FormProperty::CyclicInvariant => "cyclic_invariant",
        }
    }
}

impl FromStr for FormProperty {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FormProperty::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown form property `{s}`"))
    }
}

/// A bilinear form given by its Gram matrix `G[i][j] = B(eᵢ, eⱼ)`.
///
/// Claimed properties are informational: [`check_form`] evaluates all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearFormData {
    pub matrix: LinearMap,
    pub claims: BTreeSet<FormProperty>,
}

impl BilinearFormData {
    pub fn new(matrix: LinearMap) -> Self {
        BilinearFormData { matrix, claims: BTreeSet::new() }
    }

    pub fn claiming(mut self, props: impl IntoIterator<Item = FormProperty>) -> Self {
        self.claims.extend(props);
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `B(x, y) = xᵀ G y`.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        x.dot(&self.matrix.apply(y).expect("validated shape"))
    }
}

/// The standard form on A ⊕ A* (dimension 2n):
/// `B(x + a*, y + b*) = ⟨a*, y⟩ − ⟨b*, x⟩`, i.e. the block matrix `[[0, −I], [I, 0]]`.
pub fn standard_form(n: usize) -> BilinearFormData {
    let mut g = LinearMap::zero(2 * n, 2 * n);
    for i in 0..n {
        g.set(i, n + i, Scalar::from_int(-1));
        g.set(n + i, i, Scalar::one());
    }
    BilinearFormData::new(g).claiming([FormProperty::Nondegenerate, FormProperty::Skew])
}

fn nondegeneracy(p: &AlgebraPresentation, f: &BilinearFormData) -> CheckResult<CheckReport> {
    let det = f.matrix.determinant().map_err(|e| mismatch(e.to_string()))?;
    let parametric = det.as_rational().is_none();
    Ok(if det.is_zero() {
        let why = if p.field.is_parametric() { "degenerate for all parameter values" } else { "determinant is zero" };
        CheckReport::failed("form_nondegenerate", why)
    } else if parametric {
        CheckReport::pass("form_nondegenerate", 1)
            .with_note(format!("generically nondegenerate: determinant {}", det.render(&p.field)))
    } else {
        CheckReport::pass("form_nondegenerate", 1)
    })
}

/// Evaluate nondegeneracy (exact determinant), skewness, α-invariance and cyclic invariance.
pub fn check_form(p: &AlgebraPresentation, f: &BilinearFormData) -> CheckResult<Report> {
    check_form_props(p, f, &FormProperty::ALL)
}

fn check_form_props(p: &AlgebraPresentation, f: &BilinearFormData, props: &[FormProperty]) -> CheckResult<Report> {
    p.validate()?;
    if f.matrix.rows() != p.dim || f.matrix.cols() != p.dim {
        return Err(mismatch(format!("form must be {0}×{0}", p.dim)));
    }
    if !f.matrix.entries().all(|s| p.field.admits(s)) {
        return Err(mismatch(format!("form entries must lie in {}", p.field)));
    }
    let mut ctx = Context::algebra(p);
    ctx.form = Some(f.matrix.clone());
    let mut out = Report::new(p.field.clone());
    for &prop in props {
        let mut e = match prop {
            FormProperty::Nondegenerate => nondegeneracy(p, f)?,
            other => check_named(&[other.check_name()], &ctx, CheckOptions::default())?.entries.remove(0),
        };
        if f.claims.contains(&prop) && !e.passed() {
            let note = match &e.note {
                Some(n) => format!("claimed; {n}"),
                None => "claimed".to_string(),
            };
            e = e.with_note(note);
        }
        out.push(e);
    }
    Ok(out)
}

fn subspace_report(label: &str, bad: Option<String>, n: usize) -> CheckReport {
    match bad {
        None => CheckReport::pass(label, n),
        Some(why) => CheckReport::failed(label, why),
    }
}

/// Check that `(p, f)` with the basis split `(part1, part2)` is a Manin triple:
/// the form is nondegenerate, skew and α-invariant, and each part spans an
/// isotropic subalgebra stable under α. Indices are 0-based.
pub fn manin_check(p: &AlgebraPresentation, f: &BilinearFormData, part1: &[usize], part2: &[usize]) -> CheckResult<Report> {
    let mut out = Report::new(p.field.clone());
    let mut seen = vec![0usize; p.dim];
    let mut out_of_range = false;
    for &i in part1.iter().chain(part2) {
        match seen.get_mut(i) {
            Some(c) => *c += 1,
            None => out_of_range = true,
        }
    }
    if out_of_range || seen.iter().any(|&c| c != 1) {
        out.push(CheckReport::precondition("split_partition", "the two index sets must partition the basis"));
        return Ok(out);
    }
    out.extend(check_form_props(p, f, &[FormProperty::Nondegenerate, FormProperty::Skew, FormProperty::AlphaInvariant])?);
    let br = p.bracket();
    let alpha = p.alpha();
    for (k, part) in [part1, part2].into_iter().enumerate() {
        let inside: BTreeSet<usize> = part.iter().copied().collect();
        let leaves = |v: &Vector| v.coords().iter().enumerate().any(|(i, c)| !c.is_zero() && !inside.contains(&i));
        let mut bad = None;
        'sub: for &i in part {
            if leaves(&alpha.column(i)) {
                bad = Some(format!("al(e{}) leaves the span", i + 1));
                break;
            }
            for &j in part {
                if leaves(&br.basis_product(i, j)) {
                    bad = Some(format!("br(e{}, e{}) leaves the span", i + 1, j + 1));
                    break 'sub;
                }
            }
        }
        out.push(subspace_report(&format!("subalgebra_{}", k + 1), bad, part.len() * part.len()));
        let mut bad = None;
        'iso: for &i in part {
            for &j in part {
                if !f.matrix.get(i, j).is_zero() {
                    bad = Some(format!("form(e{}, e{}) is nonzero", i + 1, j + 1));
                    break 'iso;
                }
            }
        }
        out.push(subspace_report(&format!("isotropic_{}", k + 1), bad, part.len() * part.len()));
    }
    Ok(out)
}

/// The standard Manin triple data of A and A*: the bowtie algebra A ⋈ A*,
/// the standard form and the split into the two summands.
#[derive(Debug, Clone, PartialEq)]
pub struct ManinTriple {
    pub algebra: AlgebraPresentation,
    pub form: BilinearFormData,
    pub split: (Vec<usize>, Vec<usize>),
}

/// The coupling actions `(L*, −L*−R*)` of A on A* and of A* on A.
pub fn dual_pair_actions(p: &AlgebraPresentation, dual: &AlgebraPresentation) -> (ActionFamily, ActionFamily) {
    (coadjoint_skew(&p.bracket(), &p.field, dual.alpha()), coadjoint_skew(&dual.bracket(), &p.field, p.alpha()))
}

/// Build A ⋈ A* from the actions `(L*, −L*−R*)` both ways, with the standard
/// form; the verification report is the Manin triple check.
pub fn standard_manin(p: &AlgebraPresentation, dual: &AlgebraPresentation, policy: Policy) -> Result<Construction<ManinTriple>> {
    let (a_on_b, b_on_a) = dual_pair_actions(p, dual);
    let sum = matched_sum(p, dual, &a_on_b, &b_on_a, policy)?;
    let n = p.dim;
    let form = standard_form(n);
    let split = ((0..n).collect::<Vec<_>>(), (n..2 * n).collect::<Vec<_>>());
    let mut verification = sum.verification;
    verification.extend(manin_check(&sum.value, &form, &split.0, &split.1)?);
    let b = Builder::from_report(policy, sum.preconditions);
    b.finish("standard Manin triple", ManinTriple { algebra: sum.value, form, split }, verification)
}

// ---------------------------------------------------------------------------
// Bialgebras
// ---------------------------------------------------------------------------

/// The cobracket Δ : A → A ⊗ A dual to a product on A*:
/// `⟨Δeₖ, eᵢ* ⊗ eⱼ*⟩ = ⟨eₖ, {eᵢ*, eⱼ*}⟩`, so row `i·n + j`, column `k` is `cᵢⱼᵏ`.
pub fn cobracket_from_dual(dual: &Product) -> LinearMap {
    let n = dual.dim();
    let mut m = LinearMap::zero(n * n, n);
    for (i, j, k, c) in dual.nonzero_entries() {
        m.set(i * n + j, k, c.clone());
    }
    m
}

/// Check the two bialgebra compatibility conditions against the presentation's cobracket.
pub fn check_bialgebra(p: &AlgebraPresentation) -> CheckResult<Report> {
    p.validate()?;
    if p.cobracket.is_none() {
        let mut r = Report::new(p.field.clone());
        r.push(CheckReport::precondition("cobracket", "the presentation has no cobracket"));
        return Ok(r);
    }
    check_named(&["bialg_1", "bialg_2"], &Context::algebra(p), CheckOptions::default())
}

/// The outcome of checking the bialgebra / matched-pair equivalence on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Equivalence {
    pub preconditions: Report,
    /// Matched-pair check with `(L*, −L*−R*)` both ways.
    pub matched_pair: Report,
    /// Bialgebra check with the cobracket dual to A*'s bracket.
    pub bialgebra: Report,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.matched_pair.passed() == self.bialgebra.passed()
    }
}

fn require_dual_pair(b: &mut Builder, p: &AlgebraPresentation, dual: &AlgebraPresentation) -> Result<()> {
    p.validate()?;
    dual.validate()?;
    if p.variety.is_bihom() || p.variety.is_dendriform() || p.variety == VarietyTag::HomLie {
        return Err(ConstructError::Unsupported(format!("dual pairs are defined for Hom-Leibniz algebras, not {}", p.variety)));
    }
    if dual.variety != p.variety || dual.dim != p.dim || dual.field != p.field {
        return Err(ConstructError::Unsupported("the dual algebra must have the same variety, dimension and field".into()));
    }
    b.require_one("involutive_al", check_involutive(p)?)?;
    b.require_one("dual_involutive_al", renamed_one(check_involutive(dual)?, "dual"))?;
    b.require("multiplicativity", check_multiplicative(p)?)?;
    b.require("dual_multiplicativity", renamed(check_multiplicative(dual)?, "dual"))?;
    b.require_one(
        "dual_twist",
        pass_or("dual_twist", dual.alpha() == transpose(&p.alpha()), "the twist of A* is not the transpose of al"),
    )?;
    Ok(())
}

fn renamed_one(mut e: CheckReport, prefix: &str) -> CheckReport {
    e.identity = format!("{prefix}_{}", e.identity);
    e
}

/// Run the matched-pair check and the bialgebra check independently on `(A, A*)`.
pub fn bialgebra_matchedpair_equiv(p: &AlgebraPresentation, dual: &AlgebraPresentation) -> Result<Equivalence> {
    let mut b = Builder::new(Policy::Strict, p);
    require_dual_pair(&mut b, p, dual)?;
    let (a_on_b, b_on_a) = dual_pair_actions(p, dual);
    let matched_pair = crate::identities::check_matched_pair(p, dual, &a_on_b, &b_on_a)?;
    let mut with_delta = p.clone();
    with_delta.cobracket = Some(cobracket_from_dual(&dual.bracket()));
    let bialgebra = check_bialgebra(&with_delta)?;
    Ok(Equivalence { preconditions: b.into_report(), matched_pair, bialgebra })
}

// ---------------------------------------------------------------------------
// O-operators
// ---------------------------------------------------------------------------

/// Which assignment turns an O-operator into dendriform products on V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `u ≺ v = r(T(v))u`, `u ≻ v = l(T(u))v`.
    #[default]
    HomPaper,
    /// `u ≺ v = r(T(u))v`, `u ≻ v = l(T(v))u`.
    Swapped,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::HomPaper => "hom_paper",
            Convention::Swapped => "swapped",
        }
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hom_paper" => Ok(Convention::HomPaper),
            "swapped" => Ok(Convention::Swapped),
            _ => Err(format!("unknown convention `{s}`")),
        }
    }
}

/// An operator `T : V → A` together with the induction convention.
///
/// The intertwining relations are `αT = Tβ` (Hom) and `α₁T = Tβ₂`,
/// `α₂T = Tβ₁` (BiHom); they are checked by [`check_ooperator`].
#[derive(Debug, Clone, PartialEq)]
pub struct OOperatorData {
    pub t: LinearMap,
    pub convention: Convention,
}

impl OOperatorData {
    pub fn new(t: LinearMap) -> Self {
        OOperatorData { t, convention: Convention::HomPaper }
    }

    pub fn with_convention(mut self, c: Convention) -> Self {
        self.convention = c;
        self
    }
}

fn ensure_leibniz_pair(p: &AlgebraPresentation, a: &ActionFamily, t: &LinearMap) -> CheckResult<()> {
    p.validate()?;
    validate_pair(p, a)?;
    if p.variety.is_dendriform() || a.kind() != Some(ActionKind::Leibniz) {
        return Err(mismatch("O-operators are defined for bimodules (l, r) of Hom-Leibniz and BiHom-Leibniz algebras"));
    }
    if t.rows() != p.dim || t.cols() != a.module_dim {
        return Err(mismatch(format!("T must be a {}×{} matrix (module to algebra)", p.dim, a.module_dim)));
    }
    Ok(())
}

/// Check the intertwining relations and the O-operator identity
/// `[T(u), T(v)] = T(l(T(u))v + r(T(v))u)` on all basis pairs.
pub fn check_ooperator(p: &AlgebraPresentation, a: &ActionFamily, op: &OOperatorData) -> CheckResult<Report> {
    ensure_leibniz_pair(p, a, &op.t)?;
    let names: &[&str] = if p.variety.is_bihom() {
        &["ooperator_bihom_twist_al", "ooperator_bihom_twist_be", "ooperator_bihom"]
    } else {
        &["ooperator_hom_twist", "ooperator_hom"]
    };
    check_named(names, &Context::ooperator(p, a, &op.t), CheckOptions::default())
}

/// Check that `K : A → A` is a Rota-Baxter operator of weight zero commuting with every twist.
pub fn check_rota_baxter(p: &AlgebraPresentation, k: &LinearMap) -> CheckResult<Report> {
    p.validate()?;
    if p.variety.is_dendriform() {
        return Err(mismatch("Rota-Baxter operators are checked on Hom-Leibniz and BiHom-Leibniz algebras"));
    }
    if k.rows() != p.dim || k.cols() != p.dim {
        return Err(mismatch(format!("K must be {0}×{0}", p.dim)));
    }
    let names: &[&str] = if p.variety.is_bihom() {
        &["rota_baxter_bihom_twist_al", "rota_baxter_bihom_twist_be", "rota_baxter_bihom"]
    } else {
        &["rota_baxter_hom_twist", "rota_baxter_hom"]
    };
    check_named(names, &Context::rota_baxter(p, k), CheckOptions::default())
}

/// The operator-weighted action `X(T(w))` as a module map.
fn action_at(mats: &[LinearMap], t: &LinearMap, w: usize) -> Result<LinearMap> {
    let col = t.column(w);
    let n = mats.first().map_or(0, LinearMap::rows);
    let mut acc = LinearMap::zero(n, n);
    for (c, m) in col.coords().iter().zip(mats) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c))?;
        }
    }
    Ok(acc)
}

/// Dendriform products on V induced by T, without any checks.
fn induced_raw(p: &AlgebraPresentation, a: &ActionFamily, op: &OOperatorData) -> Result<AlgebraPresentation> {
    let variety = p
        .variety
        .dendriform()
        .ok_or_else(|| ConstructError::Unsupported(format!("{} has no dendriform counterpart", p.variety)))?;
    let m = a.module_dim;
    let (l, r) = (&a.actions["l"], &a.actions["r"]);
    let lt: Vec<LinearMap> = (0..m).map(|w| action_at(l, &op.t, w)).collect::<Result<_>>()?;
    let rt: Vec<LinearMap> = (0..m).map(|w| action_at(r, &op.t, w)).collect::<Result<_>>()?;
    let mut prec = Product::zero(m);
    let mut succ = Product::zero(m);
    for i in 0..m {
        for j in 0..m {
            let (pv, sv) = match op.convention {
                Convention::HomPaper => (rt[j].column(i), lt[i].column(j)),
                Convention::Swapped => (rt[i].column(j), lt[j].column(i)),
            };
            prec.set_basis_product(i, j, &pv);
            succ.set_basis_product(i, j, &sv);
        }
    }
    let mut twists = BTreeMap::new();
    for name in variety.twist_names() {
        let mt = if *name == "al" { "beV" } else { "beV2" };
        let t = a.module_twists.get(mt).cloned().unwrap_or_else(|| LinearMap::identity(m));
        twists.insert(name.to_string(), t);
    }
    Ok(AlgebraPresentation {
        dim: m,
        field: p.field.clone(),
        variety,
        multiplicative: false,
        products: [("prec".to_string(), prec), ("succ".to_string(), succ)].into_iter().collect(),
        twists,
        form: None,
        cobracket: None,
    })
}

/// The dendriform structure induced by an O-operator, on V and (for injective T) on T(V).
#[derive(Debug, Clone, PartialEq)]
pub struct Induced {
    /// Products on V; twists are the module twists.
    pub module: AlgebraPresentation,
    /// For injective T: the embedding T and the structure on T(V) in the basis `T(vᵢ)`,
    /// defined by `T(u) ∘ T(v) = T(u ∘ v)`.
    pub image: Option<(LinearMap, AlgebraPresentation)>,
}

/// `T(u ∘ v) = [T(u), T(v)]` for the sub-adjacent bracket of the induced structure.
fn pushforward_report(p: &AlgebraPresentation, induced: &AlgebraPresentation, t: &LinearMap) -> CheckResult<Report> {
    let r = check_morphism(t, &sub_adjacent_raw(induced), p)?;
    Ok(Report {
        field: r.field,
        entries: r
            .entries
            .into_iter()
            .filter(|e| !e.identity.starts_with("morphism_twist"))
            .map(|mut e| {
                e.identity = "pushforward_br".into();
                e
            })
            .collect(),
    })
}

/// Induce dendriform products on V from an O-operator; the output is verified
/// against the dendriform axioms and the pushforward property.
pub fn induce_dendriform(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    op: &OOperatorData,
    policy: Policy,
) -> Result<Construction<Induced>> {
    ensure_leibniz_pair(p, a, &op.t)?;
    let mut b = Builder::new(policy, p);
    b.require("ooperator", check_ooperator(p, a, op)?)?;
    let module = induced_raw(p, a, op)?;
    let mut verification = check_variety(&module)?;
    verification.extend(pushforward_report(p, &module, &op.t)?);
    let image = (op.t.rank()? == a.module_dim).then(|| (op.t.clone(), module.clone()));
    b.finish("induced dendriform structure", Induced { module, image }, verification)
}

/// The induced structure on T(V); fails unless T is injective.
pub fn image_dendriform(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    op: &OOperatorData,
    policy: Policy,
) -> Result<Construction<(LinearMap, AlgebraPresentation)>> {
    ensure_leibniz_pair(p, a, &op.t)?;
    if op.t.rank()? != a.module_dim {
        return Err(ConstructError::Precondition {
            label: "injective".into(),
            detail: "T is not injective, so T(V) does not carry the induced structure".into(),
        });
    }
    let c = induce_dendriform(p, a, op, policy)?;
    Ok(c.map(|i| i.image.expect("T is injective")))
}

fn compatibility(p: &AlgebraPresentation, out: &AlgebraPresentation) -> CheckReport {
    pass_or("compatible_bracket", out.bracket() == p.bracket(), "prec + succ differs from the bracket of A")
}

/// Dendriform products on A from an invertible O-operator, transported along T:
/// `x ∘ y = T(T⁻¹x ∘_V T⁻¹y)`. With the default convention this is
/// `x ≻ y = T(l(x)T⁻¹y)`, `x ≺ y = T(r(y)T⁻¹x)`.
pub fn dendriform_from_invertible(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    op: &OOperatorData,
    policy: Policy,
) -> Result<Construction<AlgebraPresentation>> {
    ensure_leibniz_pair(p, a, &op.t)?;
    if !op.t.is_square() || op.t.determinant()?.is_zero() {
        return Err(ConstructError::Precondition { label: "invertible".into(), detail: "T is singular".into() });
    }
    let mut b = Builder::new(policy, p);
    b.require("ooperator", check_ooperator(p, a, op)?)?;
    let v = induced_raw(p, a, op)?;
    let inv = op.t.inverse()?;
    let mut out = v.clone();
    for (name, prod) in &v.products {
        out.products.insert(name.clone(), prod.pre_compose(&inv, &inv)?.post_compose(&op.t)?);
    }
    out.twists = p
        .variety
        .dendriform()
        .expect("checked by induced_raw")
        .twist_names()
        .iter()
        .map(|n| (n.to_string(), p.twist(n).unwrap_or_else(|| LinearMap::identity(p.dim))))
        .collect();
    let mut verification = check_variety(&out)?;
    verification.push(compatibility(p, &out));
    b.finish("dendriform structure from an invertible O-operator", out, verification)
}

/// The sub-adjacent algebra of a dendriform presentation with the bimodule
/// `(L≻, R≺, α)` and the identity map, which is an O-operator for it.
pub fn identity_ooperator(p: &AlgebraPresentation) -> Result<(AlgebraPresentation, ActionFamily, OOperatorData)> {
    p.validate()?;
    if !p.variety.is_dendriform() {
        return Err(ConstructError::Unsupported(format!("{} is not a dendriform variety", p.variety)));
    }
    let sub = sub_adjacent_raw(p);
    let (prec, succ) = (&p.products["prec"], &p.products["succ"]);
    let l = (0..p.dim).map(|i| succ.left_mult(i)).collect();
    let r = (0..p.dim).map(|i| prec.right_mult(i)).collect();
    let fam = ActionFamily {
        algebra_dim: p.dim,
        module_dim: p.dim,
        field: p.field.clone(),
        actions: [("l".to_string(), l), ("r".to_string(), r)].into_iter().collect(),
        module_twists: crate::construct::adjoint_twists(&sub),
    };
    Ok((sub, fam, OOperatorData::new(LinearMap::identity(p.dim))))
}

/// Gram-matrix residuals of `ω(x ≺ y, z) = ω(y, [z, x])` and `ω(x ≻ y, z) = ω(x, [y, z])`.
fn symplectic_reports(p: &AlgebraPresentation, omega: &BilinearFormData, out: &AlgebraPresentation) -> Report {
    let n = p.dim;
    let br = p.bracket();
    let e = |i: usize| Vector::basis(n, i);
    let mut rep = Report::new(p.field.clone());
    for (label, name) in [("symplectic_prec", "prec"), ("symplectic_succ", "succ")] {
        let prod = &out.products[name];
        let mut bad = None;
        'all: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = omega.eval(&prod.basis_product(x, y), &e(z));
                    let rhs = if name == "prec" {
                        omega.eval(&e(y), &br.basis_product(z, x))
                    } else {
                        omega.eval(&e(x), &br.basis_product(y, z))
                    };
                    let d = &lhs - &rhs;
                    if !d.is_zero() {
                        bad = Some((vec![x + 1, y + 1, z + 1], d));
                        break 'all;
                    }
                }
            }
        }
        rep.push(match bad {
            None => CheckReport::pass(label, n * n * n),
            Some((a, d)) => CheckReport {
                identity: label.into(),
                status: Status::Fail,
                assignment: Some(a),
                residual: Some(Vector(vec![d])),
                assignments: 0,
                variables: vec![crate::identities::Sort::A; 3],
                note: None,
            },
        });
    }
    rep
}

/// Dendriform products on A from a nondegenerate skew cyclic-invariant form ω,
/// solved exactly from `ω(x ≺ y, z) = ω(y, [z, x])`, `ω(x ≻ y, z) = ω(x, [y, z])`.
pub fn dendriform_from_form(
    p: &AlgebraPresentation,
    omega: &BilinearFormData,
    policy: Policy,
) -> Result<Construction<AlgebraPresentation>> {
    p.validate()?;
    if p.variety.is_dendriform() || p.variety.is_bihom() {
        return Err(ConstructError::Unsupported(format!("symplectic forms are handled on Hom-Leibniz algebras, not {}", p.variety)));
    }
    let mut b = Builder::new(policy, p);
    b.require(
        "form",
        check_form_props(p, omega, &[FormProperty::Nondegenerate, FormProperty::Skew, FormProperty::CyclicInvariant])?,
    )?;
    b.require_one("involutive_al", check_involutive(p)?)?;
    if omega.matrix.determinant()?.is_zero() {
        return Err(ConstructError::Precondition { label: "form_nondegenerate".into(), detail: "the Gram matrix is singular".into() });
    }
    let n = p.dim;
    let gt = transpose(&omega.matrix);
    let br = p.bracket();
    let e = |i: usize| Vector::basis(n, i);
    let mut prec = Product::zero(n);
    let mut succ = Product::zero(n);
    for x in 0..n {
        for y in 0..n {
            let bp = Vector((0..n).map(|z| omega.eval(&e(y), &br.basis_product(z, x))).collect());
            let bs = Vector((0..n).map(|z| omega.eval(&e(x), &br.basis_product(y, z))).collect());
            prec.set_basis_product(x, y, &gt.solve(&bp)?);
            succ.set_basis_product(x, y, &gt.solve(&bs)?);
        }
    }
    let variety = p.variety.dendriform().expect("Hom-Leibniz varieties have a dendriform counterpart");
    let out = AlgebraPresentation {
        dim: n,
        field: p.field.clone(),
        variety,
        multiplicative: false,
        products: [("prec".to_string(), prec), ("succ".to_string(), succ)].into_iter().collect(),
        twists: [("al".to_string(), p.alpha())].into_iter().collect(),
        form: None,
        cobracket: None,
    };
    let mut verification = check_variety(&out)?;
    verification.push(compatibility(p, &out));
    verification.extend(symplectic_reports(p, omega, &out));
    b.finish("dendriform structure from a symplectic form", out, verification)
}
