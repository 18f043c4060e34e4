//! Constructions producing new presentations and action families from given ones.
//!
//! Every constructor checks its hypotheses first and re-verifies its output
//! against the variety (or bimodule) axioms afterwards. Under
//! [`Policy::Strict`] a failing hypothesis is a [`ConstructError::Precondition`]
//! and a failing output is a [`ConstructError::Verification`]; under
//! [`Policy::Lenient`] both are recorded in the returned [`Construction`] and
//! the construction is carried out anyway.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::identities::{
    check_bimodule, check_matched_pair, check_morphism, check_multiplicative, check_variety, CheckError, CheckReport,
    Report,
};
use crate::linalg::{LinalgError, LinearMap, Product};
use crate::model::{ActionFamily, ActionKind, AlgebraPresentation, ModelError, VarietyTag};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    /// A hypothesis of the construction does not hold.
    #[error("precondition {label} failed: {detail}")]
    Precondition { label: String, detail: String },
    /// The constructed object does not satisfy the axioms it should.
    #[error("constructed {what} fails {label}: {detail}")]
    Verification { what: String, label: String, detail: String },
    /// The inputs do not fit the construction at all (wrong variety, shapes).
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<ModelError> for ConstructError {
    fn from(e: ModelError) -> Self {
        ConstructError::Check(CheckError::Model(e))
    }
}

pub type Result<T> = std::result::Result<T, ConstructError>;

/// How failing hypotheses and failing outputs are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Fail on the first unmet hypothesis or unverified output.
    #[default]
    Strict,
    /// Record failures and construct anyway.
    Lenient,
}

/// A constructed value together with the evidence gathered while building it.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction<T> {
    pub value: T,
    /// Hypothesis checks, in the order they ran.
    pub preconditions: Report,
    /// Re-verification of the output.
    pub verification: Report,
}

impl<T> Construction<T> {
    /// Whether every hypothesis held and the output verified.
    pub fn sound(&self) -> bool {
        self.preconditions.passed() && self.verification.passed()
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Construction<U> {
        Construction { value: f(self.value), preconditions: self.preconditions, verification: self.verification }
    }
}

pub(crate) struct Builder {
    policy: Policy,
    pre: Report,
}

impl Builder {
    pub(crate) fn new(policy: Policy, p: &AlgebraPresentation) -> Self {
        Builder { policy, pre: Report::new(p.field.clone()) }
    }

    /// Continue from hypotheses already recorded by another construction.
    pub(crate) fn from_report(policy: Policy, pre: Report) -> Self {
        Builder { policy, pre }
    }

    pub(crate) fn into_report(self) -> Report {
        self.pre
    }

    /// Record hypothesis verdicts; under the strict policy the first failure aborts.
    pub(crate) fn require(&mut self, label: &str, r: Report) -> Result<()> {
        for e in r.entries {
            let failed = !e.passed();
            let line = e.render_text(&r.field);
            self.pre.push(e);
            if failed && self.policy == Policy::Strict {
                return Err(ConstructError::Precondition { label: label.into(), detail: line });
            }
        }
        Ok(())
    }

    pub(crate) fn require_one(&mut self, label: &str, e: CheckReport) -> Result<()> {
        let mut r = Report::new(self.pre.field.clone());
        r.push(e);
        self.require(label, r)
    }

    pub(crate) fn finish<T>(self, what: &str, value: T, verification: Report) -> Result<Construction<T>> {
        if self.policy == Policy::Strict {
            if let Some(f) = verification.first_failure() {
                return Err(ConstructError::Verification {
                    what: what.into(),
                    label: f.identity.clone(),
                    detail: f.render_text(&verification.field),
                });
            }
        }
        Ok(Construction { value, preconditions: self.pre, verification })
    }
}

pub(crate) fn renamed(r: Report, prefix: &str) -> Report {
    Report {
        field: r.field,
        entries: r
            .entries
            .into_iter()
            .map(|mut e| {
                e.identity = format!("{prefix}_{}", e.identity);
                e
            })
            .collect(),
    }
}

fn ensure_valid(p: &AlgebraPresentation) -> Result<()> {
    p.validate()?;
    Ok(())
}

/// The Hom (or BiHom) counterpart of a variety, used when twisting an untwisted algebra.
fn twisted_variety(tag: VarietyTag, bihom: bool) -> VarietyTag {
    use VarietyTag::*;
    match (tag, bihom) {
        (Leibniz, false) => HomLeibniz,
        (Leibniz | HomLeibniz | BiHomLeibniz, true) => BiHomLeibniz,
        (HomLeibnizDendriform | BiHomLeibnizDendriform, true) => BiHomLeibnizDendriform,
        (t, _) => t,
    }
}

// ---------------------------------------------------------------------------
// Yau twists and derived algebras
// ---------------------------------------------------------------------------

/// How a twist recipe combines with the existing twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistMode {
    /// The input is untwisted (all twists are the identity); the morphisms become the new twists.
    YauFromUntwisted,
    /// The morphisms are composed onto the existing twists.
    ComposeOntoTwisted,
}

/// Algebra morphisms used to twist a presentation: `al` for Hom varieties, `al` and `be` for BiHom ones.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistRecipe {
    pub morphisms: BTreeMap<String, LinearMap>,
    pub mode: TwistMode,
}

impl TwistRecipe {
    pub fn hom(alpha: LinearMap, mode: TwistMode) -> Self {
        TwistRecipe { morphisms: [("al".to_string(), alpha)].into_iter().collect(), mode }
    }

    pub fn bihom(alpha: LinearMap, beta: LinearMap, mode: TwistMode) -> Self {
        TwistRecipe { morphisms: [("al".to_string(), alpha), ("be".to_string(), beta)].into_iter().collect(), mode }
    }

    fn is_bihom(&self) -> bool {
        self.morphisms.contains_key("be")
    }
}

/// Twisted products and twists, without any checking.
///
/// Hom varieties post-compose (`x ∘′ y = α′(x ∘ y)`); BiHom varieties
/// pre-compose (`x ∘′ y = α′₁(x) ∘ α′₂(y)`).
fn twist_raw(p: &AlgebraPresentation, recipe: &TwistRecipe, variety: VarietyTag) -> Result<AlgebraPresentation> {
    let mut out = p.clone();
    out.variety = variety;
    out.cobracket = None;
    out.form = None;
    out.products.clear();
    for (name, prod) in &p.products {
        let q = if variety.is_bihom() {
            prod.pre_compose(&recipe.morphisms["al"], &recipe.morphisms["be"])?
        } else {
            prod.post_compose(&recipe.morphisms["al"])?
        };
        out.products.insert(name.clone(), q);
    }
    out.twists.clear();
    for name in variety.twist_names() {
        let m = &recipe.morphisms[*name];
        let t = match recipe.mode {
            TwistMode::YauFromUntwisted => m.clone(),
            TwistMode::ComposeOntoTwisted => p.twist(name).unwrap_or_else(|| LinearMap::identity(p.dim)).compose(m)?,
        };
        out.twists.insert(name.to_string(), t);
    }
    Ok(out)
}

/// Twist a presentation by algebra morphisms.
pub fn yau_twist(p: &AlgebraPresentation, recipe: &TwistRecipe, policy: Policy) -> Result<Construction<AlgebraPresentation>> {
    ensure_valid(p)?;
    let variety = twisted_variety(p.variety, recipe.is_bihom());
    let wanted: Vec<&str> = variety.twist_names().to_vec();
    let given: Vec<&str> = recipe.morphisms.keys().map(String::as_str).collect();
    if wanted != given {
        return Err(ConstructError::Unsupported(format!(
            "a {} twist needs morphisms {:?}, got {:?}",
            variety, wanted, given
        )));
    }
    for (name, m) in &recipe.morphisms {
        if m.rows() != p.dim || m.cols() != p.dim {
            return Err(ConstructError::Unsupported(format!("twist morphism `{name}` must be {0}×{0}", p.dim)));
        }
    }
    if variety != p.variety && recipe.mode != TwistMode::YauFromUntwisted {
        return Err(ConstructError::Unsupported(format!(
            "composing onto a {} presentation cannot produce a {} one",
            p.variety, variety
        )));
    }
    let mut b = Builder::new(policy, p);
    if recipe.mode == TwistMode::YauFromUntwisted {
        let untwisted = p.variety.twist_names().iter().all(|n| p.twist(n).is_none_or(|m| m.is_identity()));
        b.require_one(
            "untwisted_input",
            if untwisted {
                CheckReport::pass("untwisted_input", 1)
            } else {
                CheckReport::failed("untwisted_input", "the input presentation has a non-identity twist")
            },
        )?;
    }
    for (name, m) in &recipe.morphisms {
        let label = format!("{name}_prime");
        b.require(&label, renamed(check_morphism(m, p, p)?, &label))?;
    }
    if let (Some(a), Some(c)) = (recipe.morphisms.get("al"), recipe.morphisms.get("be")) {
        let ok = a.commutes_with(c)?;
        b.require_one(
            "twist_morphisms_commute",
            if ok {
                CheckReport::pass("twist_morphisms_commute", 1)
            } else {
                CheckReport::failed("twist_morphisms_commute", "the two twisting morphisms do not commute")
            },
        )?;
    }
    let mut out = twist_raw(p, recipe, variety)?;
    out.multiplicative = p.multiplicative || recipe.mode == TwistMode::YauFromUntwisted;
    let verification = check_variety(&out)?;
    b.finish("twisted presentation", out, verification)
}

/// The exponent applied to the products of the n-th derived algebra of the given type.
pub fn derived_exponent(kind: u8, n: u32) -> Result<u64> {
    match kind {
        1 => Ok(n as u64),
        2 => 1u64
            .checked_shl(n)
            .map(|e| e - 1)
            .ok_or_else(|| ConstructError::Unsupported(format!("2^{n} is too large"))),
        _ => Err(ConstructError::Unsupported(format!("derived algebras have type 1 or 2, not {kind}"))),
    }
}

/// The n-th derived algebra of type 1 (products twisted by αⁿ, twists α^{n+1})
/// or type 2 (exponents 2ⁿ − 1 and 2ⁿ).
pub fn derived_algebra(p: &AlgebraPresentation, kind: u8, n: u32, policy: Policy) -> Result<Construction<AlgebraPresentation>> {
    ensure_valid(p)?;
    if n == 0 {
        return Err(ConstructError::Unsupported("derived algebras are indexed by a positive integer".into()));
    }
    let k = derived_exponent(kind, n)?;
    let mut b = Builder::new(policy, p);
    b.require("multiplicativity", check_multiplicative(p)?)?;
    let mut morphisms = BTreeMap::new();
    for name in p.variety.twist_names() {
        let t = p.twist(name).unwrap_or_else(|| LinearMap::identity(p.dim));
        morphisms.insert(name.to_string(), t.power(k)?);
    }
    if p.variety == VarietyTag::Leibniz {
        morphisms.insert("al".into(), LinearMap::identity(p.dim));
    }
    let recipe = TwistRecipe { morphisms, mode: TwistMode::ComposeOntoTwisted };
    let mut out = twist_raw(p, &recipe, p.variety)?;
    if p.variety == VarietyTag::Leibniz {
        out.twists.clear();
    }
    out.multiplicative = p.multiplicative;
    let verification = check_variety(&out)?;
    b.finish("derived presentation", out, verification)
}

// ---------------------------------------------------------------------------
// Sub-adjacent algebras, semidirect and matched sums
// ---------------------------------------------------------------------------

/// The Leibniz-type algebra with bracket `x ≺ y + x ≻ y`.
pub fn sub_adjacent(p: &AlgebraPresentation, policy: Policy) -> Result<Construction<AlgebraPresentation>> {
    ensure_valid(p)?;
    if !p.variety.is_dendriform() {
        return Err(ConstructError::Unsupported(format!("{} is not a dendriform variety", p.variety)));
    }
    let mut b = Builder::new(policy, p);
    b.require("dendriform_axioms", check_variety(p)?)?;
    let out = sub_adjacent_raw(p);
    let verification = check_variety(&out)?;
    b.finish("sub-adjacent presentation", out, verification)
}

pub(crate) fn sub_adjacent_raw(p: &AlgebraPresentation) -> AlgebraPresentation {
    let mut out = p.clone();
    out.variety = p.variety.sub_adjacent();
    out.products = [("br".to_string(), p.bracket())].into_iter().collect();
    out
}

/// The action names paired with a product in the block formulas.
fn action_names(product: &str) -> (&'static str, &'static str) {
    match product {
        "prec" => ("lprec", "rprec"),
        "succ" => ("lsucc", "rsucc"),
        _ => ("l", "r"),
    }
}

/// Left and right actions of one product on another space.
type Actions<'a> = (&'a [LinearMap], &'a [LinearMap]);

/// The product on A ⊕ B:
/// `(x + a) ∘ (y + b) = x∘y + l_B(a)y + r_B(b)x + a∘b + l_A(x)b + r_A(y)a`,
/// where `a_on_b = (l_A, r_A)` and `b_on_a = (l_B, r_B)`.
fn block_product(pa: &Product, pb: &Product, a_on_b: Option<Actions>, b_on_a: Option<Actions>) -> Product {
    let (n, m) = (pa.dim(), pb.dim());
    let mut out = Product::zero(n + m);
    for (i, j, k, c) in pa.nonzero_entries() {
        out.set(i, j, k, c.clone());
    }
    for (i, j, k, c) in pb.nonzero_entries() {
        out.set(n + i, n + j, n + k, c.clone());
    }
    let mut add = |i: usize, j: usize, k: usize, c: &Scalar| {
        if !c.is_zero() {
            let v = out.get(i, j, k) + c;
            out.set(i, j, k, v);
        }
    };
    if let Some((l, r)) = a_on_b {
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    // e_i ∘ f_j ∋ l_A(e_i) f_j, f_j ∘ e_i ∋ r_A(e_i) f_j
                    add(i, n + j, n + k, l[i].get(k, j));
                    add(n + j, i, n + k, r[i].get(k, j));
                }
            }
        }
    }
    if let Some((l, r)) = b_on_a {
        for i in 0..m {
            for j in 0..n {
                for k in 0..n {
                    add(n + i, j, k, l[i].get(k, j));
                    add(j, n + i, k, r[i].get(k, j));
                }
            }
        }
    }
    out
}

/// Module twist names matching the algebra twists `al`, `be`.
pub(crate) fn module_twist_name(twist: &str) -> &'static str {
    if twist == "al" {
        "beV"
    } else {
        "beV2"
    }
}

pub(crate) fn semidirect_raw(p: &AlgebraPresentation, a: &ActionFamily) -> Result<AlgebraPresentation> {
    let zero = Product::zero(a.module_dim);
    let mut products = BTreeMap::new();
    for (name, prod) in &p.products {
        let (ln, rn) = action_names(name);
        let (l, r) = (a.action(ln), a.action(rn));
        let (Some(l), Some(r)) = (l, r) else {
            return Err(ConstructError::Unsupported(format!("action family lacks `{ln}`/`{rn}` for product `{name}`")));
        };
        products.insert(name.clone(), block_product(prod, &zero, Some((l, r)), None));
    }
    let mut twists = BTreeMap::new();
    let mut variety = match p.variety {
        VarietyTag::HomLie => VarietyTag::HomLeibniz,
        t => t,
    };
    let names: &[&str] = if p.variety == VarietyTag::Leibniz { &["al"] } else { p.variety.twist_names() };
    for name in names {
        let t = p.twist(name).unwrap_or_else(|| LinearMap::identity(p.dim));
        let mt = a.module_twists.get(module_twist_name(name)).cloned().unwrap_or_else(|| LinearMap::identity(a.module_dim));
        twists.insert(name.to_string(), t.direct_sum(&mt));
    }
    if p.variety == VarietyTag::Leibniz {
        if twists["al"].is_identity() {
            twists.clear();
        } else {
            variety = VarietyTag::HomLeibniz;
        }
    }
    Ok(AlgebraPresentation {
        dim: p.dim + a.module_dim,
        field: p.field.clone(),
        variety,
        multiplicative: p.multiplicative,
        products,
        twists,
        form: None,
        cobracket: None,
    })
}

/// The semidirect sum A ⊕ V of an algebra and a bimodule.
pub fn semidirect_sum(p: &AlgebraPresentation, a: &ActionFamily, policy: Policy) -> Result<Construction<AlgebraPresentation>> {
    ensure_valid(p)?;
    let mut b = Builder::new(policy, p);
    b.require("bimodule", check_bimodule(p, a)?)?;
    let out = semidirect_raw(p, a)?;
    let verification = check_variety(&out)?;
    b.finish("semidirect sum", out, verification)
}

/// The bowtie sum A ⋈ B of a matched pair.
pub fn matched_sum(
    pa: &AlgebraPresentation,
    pb: &AlgebraPresentation,
    a_on_b: &ActionFamily,
    b_on_a: &ActionFamily,
    policy: Policy,
) -> Result<Construction<AlgebraPresentation>> {
    ensure_valid(pa)?;
    ensure_valid(pb)?;
    let mut b = Builder::new(policy, pa);
    let report = check_matched_pair(pa, pb, a_on_b, b_on_a)?;
    let label = report.first_failure().map_or("matched_pair".to_string(), |f| f.identity.clone());
    b.require(&label, report)?;
    let mut products = BTreeMap::new();
    for (name, prod) in &pa.products {
        let (ln, rn) = action_names(name);
        let q = pb
            .products
            .get(name)
            .ok_or_else(|| ConstructError::Unsupported(format!("second algebra lacks product `{name}`")))?;
        let acts = |f: &ActionFamily| -> Result<(Vec<LinearMap>, Vec<LinearMap>)> {
            match (f.action(ln), f.action(rn)) {
                (Some(l), Some(r)) => Ok((l.to_vec(), r.to_vec())),
                _ => Err(ConstructError::Unsupported(format!("action family lacks `{ln}`/`{rn}`"))),
            }
        };
        let (la, ra) = acts(a_on_b)?;
        let (lb, rb) = acts(b_on_a)?;
        products.insert(name.clone(), block_product(prod, q, Some((&la, &ra)), Some((&lb, &rb))));
    }
    let mut twists = BTreeMap::new();
    for name in pa.variety.twist_names() {
        let ta = pa.twist(name).unwrap_or_else(|| LinearMap::identity(pa.dim));
        let tb = pb.twist(name).unwrap_or_else(|| LinearMap::identity(pb.dim));
        twists.insert(name.to_string(), ta.direct_sum(&tb));
    }
    let out = AlgebraPresentation {
        dim: pa.dim + pb.dim,
        field: pa.field.clone(),
        variety: match pa.variety {
            VarietyTag::HomLie => VarietyTag::HomLeibniz,
            t => t,
        },
        multiplicative: pa.multiplicative && pb.multiplicative,
        products,
        twists,
        form: None,
        cobracket: None,
    };
    let verification = check_variety(&out)?;
    b.finish("matched sum", out, verification)
}

// ---------------------------------------------------------------------------
// Action families
// ---------------------------------------------------------------------------

/// Which regular actions to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regular {
    /// Left and right multiplications (L, R).
    Full,
    /// Left multiplications only, right actions zero (L, 0).
    LeftOnly,
}

/// Module twists of the adjoint module: the algebra's own twists.
pub(crate) fn adjoint_twists(p: &AlgebraPresentation) -> BTreeMap<String, LinearMap> {
    let names: &[&str] = if p.variety == VarietyTag::Leibniz { &["al"] } else { p.variety.twist_names() };
    names
        .iter()
        .map(|n| (module_twist_name(n).to_string(), p.twist(n).unwrap_or_else(|| LinearMap::identity(p.dim))))
        .collect()
}

pub(crate) fn kind_of(p: &AlgebraPresentation) -> ActionKind {
    if p.variety.is_dendriform() {
        ActionKind::Dendriform
    } else {
        ActionKind::Leibniz
    }
}

/// Left/right multiplication families of a product, each acted on by `f` first.
pub(crate) fn mult_families(prod: &Product, f: &LinearMap) -> (Vec<LinearMap>, Vec<LinearMap>) {
    let n = prod.dim();
    let combine = |left: bool| -> Vec<LinearMap> {
        (0..f.cols())
            .map(|i| {
                let mut acc = LinearMap::zero(n, n);
                for k in 0..n {
                    let c = f.get(k, i);
                    if !c.is_zero() {
                        let m = if left { prod.left_mult(k) } else { prod.right_mult(k) };
                        acc = acc.add(&m.scale(c)).expect("square maps of equal size");
                    }
                }
                acc
            })
            .collect()
    };
    (combine(true), combine(false))
}

pub(crate) fn regular_raw(p: &AlgebraPresentation, which: Regular) -> ActionFamily {
    let id = LinearMap::identity(p.dim);
    let mut fam = ActionFamily::zero(p.dim, p.dim, p.field.clone(), kind_of(p), adjoint_twists(p));
    for (name, prod) in &p.products {
        let (ln, rn) = action_names(name);
        let (l, r) = mult_families(prod, &id);
        fam.actions.insert(ln.into(), l);
        if which == Regular::Full {
            fam.actions.insert(rn.into(), r);
        }
    }
    fam
}

/// The regular bimodule (L, R) or (L, 0) of an algebra on itself; dendriform
/// algebras give (L≺, R≺, L≻, R≻). Module twists are the algebra twists.
pub fn regular_actions(p: &AlgebraPresentation, which: Regular, policy: Policy) -> Result<Construction<ActionFamily>> {
    ensure_valid(p)?;
    let mut b = Builder::new(policy, p);
    b.require("multiplicativity", check_multiplicative(p)?)?;
    let fam = regular_raw(p, which);
    let verification = check_bimodule(p, &fam)?;
    b.finish("regular bimodule", fam, verification)
}

/// The bimodule (α⊗L, α⊗R) on A ⊗ A with module twist α⊗α.
pub fn tensor_bimodule(p: &AlgebraPresentation, policy: Policy) -> Result<Construction<ActionFamily>> {
    ensure_valid(p)?;
    if p.variety.is_dendriform() || p.variety.is_bihom() {
        return Err(ConstructError::Unsupported(format!("the tensor bimodule is defined for Hom-Leibniz algebras, not {}", p.variety)));
    }
    let mut b = Builder::new(policy, p);
    b.require("multiplicativity", check_multiplicative(p)?)?;
    let alpha = p.alpha();
    let br = p.bracket();
    let l = (0..p.dim).map(|i| alpha.kronecker(&br.left_mult(i))).collect();
    let r = (0..p.dim).map(|i| alpha.kronecker(&br.right_mult(i))).collect();
    let fam = ActionFamily {
        algebra_dim: p.dim,
        module_dim: p.dim * p.dim,
        field: p.field.clone(),
        actions: [("l".to_string(), l), ("r".to_string(), r)].into_iter().collect(),
        module_twists: [("beV".to_string(), alpha.kronecker(&alpha))].into_iter().collect(),
    };
    let verification = check_bimodule(p, &fam)?;
    b.finish("tensor bimodule", fam, verification)
}

/// The target algebra as a bimodule of the source via a morphism `f`:
/// `l(x)y = f(x) ∘ y`, `r(x)y = y ∘ f(x)` for each product.
pub fn pullback_actions(
    f: &LinearMap,
    source: &AlgebraPresentation,
    target: &AlgebraPresentation,
    policy: Policy,
) -> Result<Construction<ActionFamily>> {
    ensure_valid(source)?;
    ensure_valid(target)?;
    if source.variety != target.variety {
        return Err(ConstructError::Unsupported(format!("morphism from {} to {}", source.variety, target.variety)));
    }
    let mut b = Builder::new(policy, source);
    b.require("morphism", check_morphism(f, source, target)?)?;
    let mut fam = ActionFamily::zero(source.dim, target.dim, source.field.clone(), kind_of(source), adjoint_twists(target));
    for (name, prod) in &target.products {
        let (ln, rn) = action_names(name);
        let (l, r) = mult_families(prod, f);
        fam.actions.insert(ln.into(), l);
        fam.actions.insert(rn.into(), r);
    }
    let verification = check_bimodule(source, &fam)?;
    b.finish("pulled-back bimodule", fam, verification)
}

/// Re-index an action family through an algebra map: x ↦ X(g(x)).
fn precompose_family(mats: &[LinearMap], g: &LinearMap) -> Result<Vec<LinearMap>> {
    let module_dim = mats.first().map_or(0, LinearMap::rows);
    (0..g.cols())
        .map(|i| {
            let mut acc = LinearMap::zero(module_dim, module_dim);
            for (k, m) in mats.iter().enumerate() {
                let c = g.get(k, i);
                if !c.is_zero() {
                    acc = acc.add(&m.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

pub(crate) fn pass_or(label: &str, ok: bool, why: &str) -> CheckReport {
    if ok {
        CheckReport::pass(label, 1)
    } else {
        CheckReport::failed(label, why)
    }
}

/// Twist a bimodule along an algebra morphism `α′` and a module map `β′`:
/// every action X becomes `(X∘α′)β′` and the module twist becomes `ββ′`;
/// the result is a bimodule of the twisted algebra `A_{α′}`, which is returned alongside.
pub fn twisted_bimodule(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    beta_prime: &LinearMap,
    alpha_prime: &LinearMap,
    policy: Policy,
) -> Result<Construction<(AlgebraPresentation, ActionFamily)>> {
    ensure_valid(p)?;
    if p.variety.is_bihom() {
        return Err(ConstructError::Unsupported("bimodule twisting is defined for Hom varieties".into()));
    }
    if beta_prime.rows() != a.module_dim || beta_prime.cols() != a.module_dim {
        return Err(ConstructError::Unsupported("β′ must be an endomorphism of the module".into()));
    }
    let mut b = Builder::new(policy, p);
    b.require("alpha_prime", renamed(check_morphism(alpha_prime, p, p)?, "alpha_prime"))?;
    let beta = a.module_twists.get("beV").cloned().unwrap_or_else(|| LinearMap::identity(a.module_dim));
    b.require_one(
        "beta_prime_commutes",
        pass_or("beta_prime_commutes", beta.commutes_with(beta_prime)?, "β′ does not commute with the module twist"),
    )?;
    let mut actions = BTreeMap::new();
    for (name, mats) in &a.actions {
        let shifted = precompose_family(mats, alpha_prime)?;
        let mut ok = true;
        let mut twisted = Vec::with_capacity(shifted.len());
        for (m, s) in mats.iter().zip(&shifted) {
            let t = s.compose(beta_prime)?;
            ok &= beta_prime.compose(m)? == t;
            twisted.push(t);
        }
        let label = format!("beta_prime_intertwines_{name}");
        b.require_one(&label, pass_or(&label, ok, "β′∘X differs from (X∘α′)β′"))?;
        actions.insert(name.clone(), twisted);
    }
    let algebra = twist_raw(p, &TwistRecipe::hom(alpha_prime.clone(), TwistMode::ComposeOntoTwisted), twisted_variety(p.variety, false))?;
    let mut module_twists = a.module_twists.clone();
    module_twists.insert("beV".into(), beta.compose(beta_prime)?);
    let fam = ActionFamily { actions, module_twists, ..a.clone() };
    let verification = check_bimodule(&algebra, &fam)?;
    b.finish("twisted bimodule", (algebra, fam), verification)
}

/// The bimodule with every action composed with a power of one algebra twist:
/// `(l∘α₁ⁿ, r∘α₁ⁿ)` (`which = "al"`) or `(l∘α₂ⁿ, r∘α₂ⁿ)` (`which = "be"`); module twists unchanged.
pub fn power_bimodule(
    p: &AlgebraPresentation,
    a: &ActionFamily,
    which: &str,
    n: u64,
    policy: Policy,
) -> Result<Construction<ActionFamily>> {
    ensure_valid(p)?;
    let twist = p
        .twist(which)
        .ok_or_else(|| ConstructError::Unsupported(format!("{} has no twist `{which}`", p.variety)))?;
    let mut b = Builder::new(policy, p);
    b.require("multiplicativity", check_multiplicative(p)?)?;
    b.require("bimodule", check_bimodule(p, a)?)?;
    let g = twist.power(n)?;
    let mut fam = a.clone();
    for mats in fam.actions.values_mut() {
        *mats = precompose_family(mats, &g)?;
    }
    let verification = check_bimodule(p, &fam)?;
    b.finish("power bimodule", fam, verification)
}

// ---------------------------------------------------------------------------
// gl(V) ⊕ V
// ---------------------------------------------------------------------------

/// The dendriform structure on gl(V) ⊕ V (V of dimension n):
/// `(A+u) ≺ (B+v) = AB + Av`, `(A+u) ≻ (B+v) = −BA`, twist `A+u ↦ βAβ⁻¹ + βu`.
///
/// Basis: the matrix units E_ab (index `a·n + b`) followed by the basis of V.
pub fn omni_gl_example(n: usize, beta: &LinearMap, field: &FieldSpec, policy: Policy) -> Result<Construction<AlgebraPresentation>> {
    if n == 0 || beta.rows() != n || beta.cols() != n {
        return Err(ConstructError::Unsupported(format!("β must be an invertible {n}×{n} matrix")));
    }
    if let Some(s) = beta.entries().find(|s| !field.admits(s)) {
        return Err(ConstructError::Unsupported(format!("entry {} of β is not in {field}", s.render(field))));
    }
    let field = field.clone();
    let det = beta.determinant()?;
    if det.is_zero() {
        return Err(ConstructError::Precondition { label: "beta_invertible".into(), detail: "β is singular".into() });
    }
    let inv = beta.inverse()?;
    let dim = n * n + n;
    let e = |a: usize, b: usize| a * n + b;
    let u = |c: usize| n * n + c;
    let one = Scalar::one();
    let mut prec = Product::zero(dim);
    let mut succ = Product::zero(dim);
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                // E_ab E_bd = E_ad
                prec.set(e(a, b), e(b, d), e(a, d), one.clone());
                // E_ab ≻ E_cd = −E_cd E_ab = −δ_da E_cb
                for c in 0..n {
                    if d == a {
                        succ.set(e(a, b), e(c, d), e(c, b), -&one);
                    }
                }
            }
            // E_ab u_b = u_a
            prec.set(e(a, b), u(b), u(a), one.clone());
        }
    }
    let mut delta = LinearMap::zero(dim, dim);
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                for j in 0..n {
                    // β E_ab β⁻¹ = Σ β_ia (β⁻¹)_bj E_ij
                    let c = beta.get(i, a) * inv.get(b, j);
                    if !c.is_zero() {
                        delta.set(e(i, j), e(a, b), c);
                    }
                }
            }
        }
        for c in 0..n {
            delta.set(u(c), u(a), beta.get(c, a).clone());
        }
    }
    let out = AlgebraPresentation {
        dim,
        field,
        variety: VarietyTag::HomLeibnizDendriform,
        multiplicative: true,
        products: [("prec".to_string(), prec), ("succ".to_string(), succ)].into_iter().collect(),
        twists: [("al".to_string(), delta)].into_iter().collect(),
        form: None,
        cobracket: None,
    };
    let b = Builder::new(policy, &out);
    let verification = check_variety(&out)?;
    b.finish("gl(V) ⊕ V presentation", out, verification)
}
