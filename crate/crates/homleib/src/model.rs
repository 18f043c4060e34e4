//! Presentations of algebras and bimodules, their validation, and their
//! canonical JSON encoding.
//!
//! A presentation document looks like
//!
//! ```json
//! {
//!   "dim": 2,
//!   "field": "rationals",
//!   "variety": "HomLeibniz",
//!   "multiplicative": true,
//!   "products": {
//!     "br": [
//!       [2, 2, 1, "1"]
//!     ]
//!   },
//!   "twists": {
//!     "al": [
//!       ["1", "1"],
//!       ["0", "1"]
//!     ]
//!   }
//! }
//! ```
//!
//! Product entries are `[i, j, k, c]` meaning that e_k has coefficient `c`
//! in e_i ∘ e_j (1-based). Twists are dense row-major matrices whose column
//! j is the image of e_j. The optional `form` is a dim × dim Gram matrix and
//! the optional `cobracket` is a dim² × dim matrix whose column j holds the
//! coefficients of Δ(e_j) on e_a ⊗ e_b at row (a-1)·dim + (b-1).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde_json::Value;
use thiserror::Error;

use crate::linalg::{LinearMap, Product, Vector};
use crate::scalar::{parse_scalar, FieldSpec, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("at {path}: {msg}")]
    Shape { path: String, msg: String },
    #[error("at {path}: {source}")]
    Coefficient { path: String, source: ScalarError },
    #[error("the twists al and be do not commute")]
    NonCommutingTwists,
    #[error("presentation and action family do not match: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

fn shape<T>(path: &str, msg: impl Into<String>) -> Result<T> {
    Err(ModelError::Shape { path: path.to_string(), msg: msg.into() })
}

/// The kind of structure a presentation claims to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyTag {
    HomLeibniz,
    HomLie,
    Leibniz,
    HomLeibnizDendriform,
    BiHomLeibniz,
    BiHomLeibnizDendriform,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 6] = [
        VarietyTag::HomLeibniz,
        VarietyTag::HomLie,
        VarietyTag::Leibniz,
        VarietyTag::HomLeibnizDendriform,
        VarietyTag::BiHomLeibniz,
        VarietyTag::BiHomLeibnizDendriform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VarietyTag::HomLeibniz => "HomLeibniz",
            VarietyTag::HomLie => "HomLie",
            VarietyTag::Leibniz => "Leibniz",
            VarietyTag::HomLeibnizDendriform => "HomLeibnizDendriform",
            VarietyTag::BiHomLeibniz => "BiHomLeibniz",
            VarietyTag::BiHomLeibnizDendriform => "BiHomLeibnizDendriform",
        }
    }

    pub fn is_dendriform(self) -> bool {
        matches!(self, VarietyTag::HomLeibnizDendriform | VarietyTag::BiHomLeibnizDendriform)
    }

    pub fn is_bihom(self) -> bool {
        matches!(self, VarietyTag::BiHomLeibniz | VarietyTag::BiHomLeibnizDendriform)
    }

    pub fn product_names(self) -> &'static [&'static str] {
        if self.is_dendriform() {
            &["prec", "succ"]
        } else {
            &["br"]
        }
    }

    pub fn twist_names(self) -> &'static [&'static str] {
        if self.is_bihom() {
            &["al", "be"]
        } else {
            &["al"]
        }
    }

    /// The Leibniz-type tag of the sub-adjacent algebra.
    pub fn sub_adjacent(self) -> VarietyTag {
        match self {
            VarietyTag::HomLeibnizDendriform => VarietyTag::HomLeibniz,
            VarietyTag::BiHomLeibnizDendriform => VarietyTag::BiHomLeibniz,
            other => other,
        }
    }

    /// The dendriform tag whose sub-adjacent algebra has this tag.
    pub fn dendriform(self) -> Option<VarietyTag> {
        match self {
            VarietyTag::HomLeibniz | VarietyTag::Leibniz | VarietyTag::HomLeibnizDendriform => {
                Some(VarietyTag::HomLeibnizDendriform)
            }
            VarietyTag::BiHomLeibniz | VarietyTag::BiHomLeibnizDendriform => Some(VarietyTag::BiHomLeibnizDendriform),
            VarietyTag::HomLie => None,
        }
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VarietyTag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        VarietyTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown variety `{s}`"))
    }
}

/// A finite-dimensional algebra given by structure constants and twist maps.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation {
    pub dim: usize,
    pub field: FieldSpec,
    pub variety: VarietyTag,
    /// Whether the document claims the twists are multiplicative. Checked, never trusted.
    pub multiplicative: bool,
    pub products: BTreeMap<String, Product>,
    pub twists: BTreeMap<String, LinearMap>,
    pub form: Option<LinearMap>,
    pub cobracket: Option<LinearMap>,
}

impl AlgebraPresentation {
    /// A presentation with zero products and identity twists.
    pub fn abelian(dim: usize, field: FieldSpec, variety: VarietyTag) -> Self {
        let products = variety.product_names().iter().map(|n| (n.to_string(), Product::zero(dim))).collect();
        let twists = variety.twist_names().iter().map(|n| (n.to_string(), LinearMap::identity(dim))).collect();
        AlgebraPresentation { dim, field, variety, multiplicative: true, products, twists, form: None, cobracket: None }
    }

    pub fn product(&self, name: &str) -> Option<&Product> {
        self.products.get(name)
    }

    /// The named twist; a Leibniz presentation without `al` uses the identity.
    pub fn twist(&self, name: &str) -> Option<LinearMap> {
        match self.twists.get(name) {
            Some(m) => Some(m.clone()),
            None if name == "al" && self.variety == VarietyTag::Leibniz => Some(LinearMap::identity(self.dim)),
            None => None,
        }
    }

    pub fn alpha(&self) -> LinearMap {
        self.twist("al").expect("validated presentation has al")
    }

    /// The Leibniz bracket: `br`, or `prec + succ` for dendriform presentations.
    pub fn bracket(&self) -> Product {
        if let Some(b) = self.products.get("br") {
            return b.clone();
        }
        match (self.products.get("prec"), self.products.get("succ")) {
            (Some(a), Some(b)) => a.add(b).expect("validated dimensions"),
            _ => Product::zero(self.dim),
        }
    }

    /// Full structural validation.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return shape("dim", "dimension must be positive");
        }
        self.field.validate().map_err(|e| ModelError::Coefficient { path: "field".into(), source: e })?;
        let required = self.variety.product_names();
        for name in required {
            if !self.products.contains_key(*name) {
                return shape("products", format!("{} requires product `{name}`", self.variety));
            }
        }
        for name in self.products.keys() {
            if !required.contains(&name.as_str()) {
                return shape(&format!("products.{name}"), format!("unexpected product for {}", self.variety));
            }
        }
        for (name, p) in &self.products {
            if p.dim() != self.dim {
                return shape(&format!("products.{name}"), "product dimension differs from dim");
            }
            self.check_field(&format!("products.{name}"), p.entries())?;
        }
        let twist_names = self.variety.twist_names();
        for name in twist_names {
            let optional = self.variety == VarietyTag::Leibniz;
            if !optional && !self.twists.contains_key(*name) {
                return shape("twists", format!("{} requires twist `{name}`", self.variety));
            }
        }
        for (name, t) in &self.twists {
            let path = format!("twists.{name}");
            if !twist_names.contains(&name.as_str()) {
                return shape(&path, format!("unexpected twist for {}", self.variety));
            }
            if t.rows() != self.dim || t.cols() != self.dim {
                return shape(&path, format!("expected {0}x{0}, found {1}x{2}", self.dim, t.rows(), t.cols()));
            }
            self.check_field(&path, t.entries())?;
        }
        if self.variety == VarietyTag::Leibniz {
            if let Some(a) = self.twists.get("al") {
                if !a.is_identity() {
                    return shape("twists.al", "a Leibniz presentation has the identity twist");
                }
            }
        }
        if let Some(f) = &self.form {
            if f.rows() != self.dim || f.cols() != self.dim {
                return shape("form", "form must be dim x dim");
            }
            self.check_field("form", f.entries())?;
        }
        if let Some(c) = &self.cobracket {
            if c.rows() != self.dim * self.dim || c.cols() != self.dim {
                return shape("cobracket", "cobracket must be dim^2 x dim");
            }
            self.check_field("cobracket", c.entries())?;
        }
        if self.variety.is_bihom() {
            let a = &self.twists["al"];
            let b = &self.twists["be"];
            if !a.commutes_with(b).expect("validated shapes") {
                return Err(ModelError::NonCommutingTwists);
            }
        }
        Ok(())
    }

    fn check_field<'a>(&self, path: &str, mut entries: impl Iterator<Item = &'a Scalar>) -> Result<()> {
        if entries.all(|s| self.field.admits(s)) {
            Ok(())
        } else {
            shape(path, format!("coefficient outside {}", self.field))
        }
    }

    /// Substitute rational values for every parameter.
    pub fn specialize(&self, point: &[num_rational::BigRational]) -> std::result::Result<AlgebraPresentation, ScalarError> {
        let f = |s: &Scalar| s.specialize(point);
        let prods = self
            .products
            .iter()
            .map(|(n, p)| Ok((n.clone(), p.try_map_entries(f)?)))
            .collect::<std::result::Result<_, ScalarError>>()?;
        let twists = self
            .twists
            .iter()
            .map(|(n, m)| Ok((n.clone(), m.try_map_entries(f)?)))
            .collect::<std::result::Result<_, ScalarError>>()?;
        Ok(AlgebraPresentation {
            dim: self.dim,
            field: FieldSpec::Rationals,
            variety: self.variety,
            multiplicative: self.multiplicative,
            products: prods,
            twists,
            form: self.form.as_ref().map(|m| m.try_map_entries(f)).transpose()?,
            cobracket: self.cobracket.as_ref().map(|m| m.try_map_entries(f)).transpose()?,
        })
    }
}

/// Which action names a family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// `l`, `r`.
    Leibniz,
    /// `lprec`, `rprec`, `lsucc`, `rsucc`.
    Dendriform,
}

impl ActionKind {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            ActionKind::Leibniz => &["l", "r"],
            ActionKind::Dendriform => &["lprec", "rprec", "lsucc", "rsucc"],
        }
    }
}

/// A bimodule presentation: one module matrix per algebra basis element and action name.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionFamily {
    pub algebra_dim: usize,
    pub module_dim: usize,
    pub field: FieldSpec,
    pub actions: BTreeMap<String, Vec<LinearMap>>,
    pub module_twists: BTreeMap<String, LinearMap>,
}

impl ActionFamily {
    /// Zero actions of the given kind with the given module twists.
    pub fn zero(
        algebra_dim: usize,
        module_dim: usize,
        field: FieldSpec,
        kind: ActionKind,
        module_twists: BTreeMap<String, LinearMap>,
    ) -> Self {
        let actions = kind
            .names()
            .iter()
            .map(|n| (n.to_string(), vec![LinearMap::zero(module_dim, module_dim); algebra_dim]))
            .collect();
        ActionFamily { algebra_dim, module_dim, field, actions, module_twists }
    }

    pub fn kind(&self) -> Option<ActionKind> {
        [ActionKind::Leibniz, ActionKind::Dendriform].into_iter().find(|k| {
            k.names().len() == self.actions.len() && k.names().iter().all(|n| self.actions.contains_key(*n))
        })
    }

    pub fn action(&self, name: &str) -> Option<&[LinearMap]> {
        self.actions.get(name).map(Vec::as_slice)
    }

    /// The module map of an arbitrary algebra element x = Σ xᵢeᵢ.
    pub fn action_of(&self, name: &str, x: &Vector) -> Option<LinearMap> {
        let mats = self.actions.get(name)?;
        let mut acc = LinearMap::zero(self.module_dim, self.module_dim);
        for (xi, m) in x.0.iter().zip(mats) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi)).expect("validated shapes");
            }
        }
        Some(acc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algebra_dim == 0 || self.module_dim == 0 {
            return shape("algebra_dim", "dimensions must be positive");
        }
        if self.kind().is_none() {
            let names: Vec<&str> = self.actions.keys().map(String::as_str).collect();
            return shape("actions", format!("expected exactly {{l, r}} or {{lprec, rprec, lsucc, rsucc}}, found {names:?}"));
        }
        for (name, mats) in &self.actions {
            if mats.len() != self.algebra_dim {
                return shape(&format!("actions.{name}"), format!("expected {} matrices, found {}", self.algebra_dim, mats.len()));
            }
            for (i, m) in mats.iter().enumerate() {
                let path = format!("actions.{name}[{i}]");
                if m.rows() != self.module_dim || m.cols() != self.module_dim {
                    return shape(&path, format!("expected {0}x{0}, found {1}x{2}", self.module_dim, m.rows(), m.cols()));
                }
                if !m.entries().all(|s| self.field.admits(s)) {
                    return shape(&path, format!("coefficient outside {}", self.field));
                }
            }
        }
        if !self.module_twists.contains_key("beV") {
            return shape("module_twists", "module twist `beV` is required");
        }
        for (name, m) in &self.module_twists {
            let path = format!("module_twists.{name}");
            if name != "beV" && name != "beV2" {
                return shape(&path, "unexpected module twist");
            }
            if m.rows() != self.module_dim || m.cols() != self.module_dim {
                return shape(&path, format!("expected {0}x{0}, found {1}x{2}", self.module_dim, m.rows(), m.cols()));
            }
            if !m.entries().all(|s| self.field.admits(s)) {
                return shape(&path, format!("coefficient outside {}", self.field));
            }
        }
        Ok(())
    }

    pub fn specialize(&self, point: &[num_rational::BigRational]) -> std::result::Result<ActionFamily, ScalarError> {
        let f = |s: &Scalar| s.specialize(point);
        Ok(ActionFamily {
            algebra_dim: self.algebra_dim,
            module_dim: self.module_dim,
            field: FieldSpec::Rationals,
            actions: self
                .actions
                .iter()
                .map(|(n, ms)| Ok((n.clone(), ms.iter().map(|m| m.try_map_entries(f)).collect::<std::result::Result<_, _>>()?)))
                .collect::<std::result::Result<_, ScalarError>>()?,
            module_twists: self
                .module_twists
                .iter()
                .map(|(n, m)| Ok((n.clone(), m.try_map_entries(f)?)))
                .collect::<std::result::Result<_, ScalarError>>()?,
        })
    }
}

/// Check that an action family has the names and dimensions required by a presentation.
pub fn validate_pair(p: &AlgebraPresentation, a: &ActionFamily) -> Result<()> {
    a.validate()?;
    if p.field != a.field {
        return Err(ModelError::Mismatch(format!("fields differ: {} vs {}", p.field, a.field)));
    }
    if a.algebra_dim != p.dim {
        return Err(ModelError::Mismatch(format!("algebra has dimension {}, actions expect {}", p.dim, a.algebra_dim)));
    }
    let want = if p.variety.is_dendriform() { ActionKind::Dendriform } else { ActionKind::Leibniz };
    if a.kind() != Some(want) {
        return Err(ModelError::Mismatch(format!(
            "{} needs actions {:?}, found {:?}",
            p.variety,
            want.names(),
            a.actions.keys().collect::<Vec<_>>()
        )));
    }
    let needs_second = p.variety.is_bihom();
    if needs_second != a.module_twists.contains_key("beV2") {
        return Err(ModelError::Mismatch(if needs_second {
            format!("{} needs module twists beV and beV2", p.variety)
        } else {
            format!("{} takes a single module twist beV", p.variety)
        }));
    }
    Ok(())
}

// ----------------------------------------------------------------------------
// Decoding
// ----------------------------------------------------------------------------

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| ModelError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() })
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object().ok_or_else(|| ModelError::Shape { path: path.into(), msg: "expected an object".into() })
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| ModelError::Shape { path: path.into(), msg: "expected an array".into() })
}

fn uint(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| ModelError::Shape { path: path.into(), msg: "expected a nonnegative integer".into() })
}

fn coeff(v: &Value, path: &str, field: &FieldSpec) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return shape(path, "expected a coefficient string"),
    };
    parse_scalar(&text, field).map_err(|e| ModelError::Coefficient { path: path.into(), source: e })
}

fn matrix(v: &Value, path: &str, field: &FieldSpec) -> Result<LinearMap> {
    let rows = arr(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    let mut width = None;
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let cells = arr(r, &rp)?;
        if *width.get_or_insert(cells.len()) != cells.len() {
            return shape(&rp, "ragged matrix row");
        }
        out.push(cells.iter().enumerate().map(|(j, c)| coeff(c, &format!("{rp}[{j}]"), field)).collect::<Result<Vec<_>>>()?);
    }
    if out.is_empty() {
        return shape(path, "empty matrix");
    }
    Ok(LinearMap::from_rows(out).expect("checked rows"))
}

fn check_keys(o: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    for k in o.keys() {
        if !allowed.contains(&k.as_str()) {
            let at = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
            return shape(&at, "unknown key");
        }
    }
    Ok(())
}

fn field_of(o: &serde_json::Map<String, Value>) -> Result<FieldSpec> {
    let f = o.get("field").ok_or_else(|| ModelError::Shape { path: "field".into(), msg: "missing".into() })?;
    let s = f.as_str().ok_or_else(|| ModelError::Shape { path: "field".into(), msg: "expected a string".into() })?;
    FieldSpec::parse(s).map_err(|e| ModelError::Coefficient { path: "field".into(), source: e })
}

fn required<'a>(o: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| ModelError::Shape { path: key.into(), msg: "missing".into() })
}

/// Parse and validate a presentation document.
pub fn load_presentation(text: &str) -> Result<AlgebraPresentation> {
    let root = parse_json(text)?;
    let o = obj(&root, "$")?;
    check_keys(o, &["dim", "field", "variety", "multiplicative", "products", "twists", "form", "cobracket"], "")?;
    let dim = uint(required(o, "dim")?, "dim")?;
    let field = field_of(o)?;
    let variety: VarietyTag = required(o, "variety")?
        .as_str()
        .ok_or_else(|| ModelError::Shape { path: "variety".into(), msg: "expected a string".into() })?
        .parse()
        .map_err(|m| ModelError::Shape { path: "variety".into(), msg: m })?;
    let multiplicative = match o.get("multiplicative") {
        None => false,
        Some(v) => v.as_bool().ok_or_else(|| ModelError::Shape { path: "multiplicative".into(), msg: "expected a boolean".into() })?,
    };
    let mut products = BTreeMap::new();
    for (name, entries) in obj(required(o, "products")?, "products")? {
        let path = format!("products.{name}");
        let mut p = Product::zero(dim);
        let mut seen = std::collections::BTreeSet::new();
        for (n, e) in arr(entries, &path)?.iter().enumerate() {
            let ep = format!("{path}[{n}]");
            let quad = arr(e, &ep)?;
            if quad.len() != 4 {
                return shape(&ep, "expected [i, j, k, coeff]");
            }
            let mut idx = [0usize; 3];
            for t in 0..3 {
                let v = uint(&quad[t], &format!("{ep}[{t}]"))?;
                if v == 0 || v > dim {
                    return shape(&format!("{ep}[{t}]"), format!("index {v} outside 1..{dim}"));
                }
                idx[t] = v - 1;
            }
            if !seen.insert(idx) {
                return shape(&ep, "duplicate structure constant");
            }
            let c = coeff(&quad[3], &format!("{ep}[3]"), &field)?;
            p.set(idx[0], idx[1], idx[2], c);
        }
        products.insert(name.clone(), p);
    }
    let mut twists = BTreeMap::new();
    if let Some(t) = o.get("twists") {
        for (name, m) in obj(t, "twists")? {
            twists.insert(name.clone(), matrix(m, &format!("twists.{name}"), &field)?);
        }
    }
    let form = o.get("form").map(|v| matrix(v, "form", &field)).transpose()?;
    let cobracket = o.get("cobracket").map(|v| matrix(v, "cobracket", &field)).transpose()?;
    let p = AlgebraPresentation { dim, field, variety, multiplicative, products, twists, form, cobracket };
    p.validate()?;
    Ok(p)
}

/// Parse and validate an action-family document.
pub fn load_action(text: &str) -> Result<ActionFamily> {
    let root = parse_json(text)?;
    let o = obj(&root, "$")?;
    check_keys(o, &["algebra_dim", "module_dim", "field", "actions", "module_twists"], "")?;
    let algebra_dim = uint(required(o, "algebra_dim")?, "algebra_dim")?;
    let module_dim = uint(required(o, "module_dim")?, "module_dim")?;
    let field = field_of(o)?;
    let mut actions = BTreeMap::new();
    for (name, list) in obj(required(o, "actions")?, "actions")? {
        let path = format!("actions.{name}");
        let mats = arr(list, &path)?
            .iter()
            .enumerate()
            .map(|(i, m)| matrix(m, &format!("{path}[{i}]"), &field))
            .collect::<Result<Vec<_>>>()?;
        actions.insert(name.clone(), mats);
    }
    let mut module_twists = BTreeMap::new();
    for (name, m) in obj(required(o, "module_twists")?, "module_twists")? {
        module_twists.insert(name.clone(), matrix(m, &format!("module_twists.{name}"), &field)?);
    }
    let a = ActionFamily { algebra_dim, module_dim, field, actions, module_twists };
    a.validate()?;
    Ok(a)
}

/// Parse a standalone matrix document (a JSON array of rows).
pub fn load_matrix(text: &str, field: &FieldSpec) -> Result<LinearMap> {
    let v = parse_json(text)?;
    matrix(&v, "$", field)
}

// ----------------------------------------------------------------------------
// Encoding
// ----------------------------------------------------------------------------

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn write_matrix(out: &mut String, m: &LinearMap, field: &FieldSpec, indent: &str) {
    out.push_str("[\n");
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|s| quote(&s.render(field))).collect();
        let _ = write!(out, "{indent}  [{}]", cells.join(", "));
        out.push_str(if i + 1 < m.rows() { ",\n" } else { "\n" });
    }
    let _ = write!(out, "{indent}]");
}

fn write_named<T>(
    out: &mut String,
    key: &str,
    items: &BTreeMap<String, T>,
    last: bool,
    mut body: impl FnMut(&mut String, &T),
) {
    if items.is_empty() {
        let _ = write!(out, "  {}: {{}}", quote(key));
    } else {
        let _ = writeln!(out, "  {}: {{", quote(key));
        for (n, (name, item)) in items.iter().enumerate() {
            let _ = write!(out, "    {}: ", quote(name));
            body(out, item);
            out.push_str(if n + 1 < items.len() { ",\n" } else { "\n" });
        }
        out.push_str("  }");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical text of a presentation; `load_presentation` inverts it exactly.
pub fn save_presentation(p: &AlgebraPresentation) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"dim\": {},", p.dim);
    let _ = writeln!(out, "  \"field\": {},", quote(&p.field.to_string()));
    let _ = writeln!(out, "  \"variety\": {},", quote(p.variety.name()));
    let _ = writeln!(out, "  \"multiplicative\": {},", p.multiplicative);
    write_named(&mut out, "products", &p.products, false, |out, prod| {
        let entries: Vec<String> = prod
            .nonzero_entries()
            .map(|(i, j, k, c)| format!("[{}, {}, {}, {}]", i + 1, j + 1, k + 1, quote(&c.render(&p.field))))
            .collect();
        if entries.is_empty() {
            out.push_str("[]");
        } else {
            out.push_str("[\n");
            for (n, e) in entries.iter().enumerate() {
                let _ = write!(out, "      {e}");
                out.push_str(if n + 1 < entries.len() { ",\n" } else { "\n" });
            }
            out.push_str("    ]");
        }
    });
    write_named(&mut out, "twists", &p.twists, p.form.is_none() && p.cobracket.is_none(), |out, m| {
        write_matrix(out, m, &p.field, "    ")
    });
    if let Some(f) = &p.form {
        out.push_str("  \"form\": ");
        write_matrix(&mut out, f, &p.field, "  ");
        out.push_str(if p.cobracket.is_none() { "\n" } else { ",\n" });
    }
    if let Some(c) = &p.cobracket {
        out.push_str("  \"cobracket\": ");
        write_matrix(&mut out, c, &p.field, "  ");
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// Canonical text of an action family.
pub fn save_action(a: &ActionFamily) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"algebra_dim\": {},", a.algebra_dim);
    let _ = writeln!(out, "  \"module_dim\": {},", a.module_dim);
    let _ = writeln!(out, "  \"field\": {},", quote(&a.field.to_string()));
    write_named(&mut out, "actions", &a.actions, false, |out, mats| {
        out.push_str("[\n");
        for (n, m) in mats.iter().enumerate() {
            out.push_str("      ");
            write_matrix(out, m, &a.field, "      ");
            out.push_str(if n + 1 < mats.len() { ",\n" } else { "\n" });
        }
        out.push_str("    ]");
    });
    write_named(&mut out, "module_twists", &a.module_twists, true, |out, m| write_matrix(out, m, &a.field, "    "));
    out.push_str("}\n");
    out
}

/// Canonical text of a single matrix.
pub fn save_matrix(m: &LinearMap, field: &FieldSpec) -> String {
    let mut out = String::new();
    write_matrix(&mut out, m, field, "");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_DIM: &str = r#"{
  "dim": 2,
  "field": "rationals",
  "variety": "HomLeibniz",
  "multiplicative": true,
  "products": {
    "br": [
      [2, 2, 1, "1"]
    ]
  },
  "twists": {
    "al": [
      ["1", "1"],
      ["0", "1"]
    ]
  }
}
"#;

    #[test]
    fn round_trip_is_bit_exact() {
        let p = load_presentation(TWO_DIM).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(save_presentation(&p), TWO_DIM);
    }

    #[test]
    fn shape_errors_are_positioned() {
        let bad = TWO_DIM.replace(r#"["0", "1"]"#, r#"["0", "1", "0"]"#);
        match load_presentation(&bad) {
            Err(ModelError::Shape { path, .. }) => assert_eq!(path, "twists.al[1]"),
            other => panic!("unexpected {other:?}"),
        }
        match load_presentation("{\n  \"dim\": 2,\n  oops\n}") {
            Err(ModelError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn leibniz_without_twist_uses_identity() {
        let doc = r#"{"dim": 2, "field": "rationals", "variety": "Leibniz", "products": {"br": [[2,2,1,"1"]]}}"#;
        let p = load_presentation(doc).unwrap();
        assert!(p.alpha().is_identity());
    }
}
