//! An independent straight-line evaluator for the corpus checks.
//!
//! It decodes the documents itself into dense tensors, restates every axiom
//! as a direct formula on vectors, and obtains bimodule and matched-pair
//! conditions as components of the axioms evaluated on the semidirect and
//! matched sums. Only scalar arithmetic (and, for `load` lines, the loader's
//! error message) is shared with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;

use homleib::corpus::{CheckKind, CheckSpec, CorpusEntry};
use homleib::scalar::{parse_scalar, FieldSpec, Scalar};
use num_rational::BigRational;
use serde_json::Value;

pub type Vect = Vec<Scalar>;
/// Row-major matrix; column `j` is the image of `e_j`.
pub type Mat = Vec<Vec<Scalar>>;

fn zeros(n: usize) -> Vect {
    vec![Scalar::zero(); n]
}

fn basis(n: usize, i: usize) -> Vect {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

fn add(a: &Vect, b: &Vect) -> Vect {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &Vect, b: &Vect) -> Vect {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn apply(m: &Mat, v: &Vect) -> Vect {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| if b.is_zero() { acc } else { &acc + &(a * b) }))
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| basis(n, i)).collect()
}

fn zero_mat(r: usize, c: usize) -> Mat {
    vec![zeros(c); r]
}

fn is_zero(v: &Vect) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Dense bilinear product: `table[i][j]` is the vector `e_i * e_j`.
#[derive(Clone, Debug)]
pub struct Table(pub Vec<Vec<Vect>>);

impl Table {
    fn zero(n: usize) -> Self {
        Table(vec![vec![zeros(n); n]; n])
    }

    fn mul(&self, u: &Vect, v: &Vect) -> Vect {
        let n = u.len();
        let mut out = zeros(n);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, t) in self.0[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Alg {
    pub dim: usize,
    pub field: FieldSpec,
    pub variety: String,
    pub multiplicative: bool,
    pub prods: BTreeMap<String, Table>,
    pub twists: BTreeMap<String, Mat>,
}

#[derive(Clone, Debug)]
pub struct Module {
    pub adim: usize,
    pub mdim: usize,
    pub acts: BTreeMap<String, Vec<Mat>>,
    pub twists: BTreeMap<String, Mat>,
}

fn dendriform(variety: &str) -> bool {
    variety.ends_with("Dendriform")
}

fn bihom(variety: &str) -> bool {
    variety.starts_with("BiHom")
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

fn coef(v: &Value, field: &FieldSpec, point: Option<&[BigRational]>) -> Scalar {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => panic!("coefficient expected, found {other}"),
    };
    let s = parse_scalar(&text, field).unwrap_or_else(|e| panic!("coefficient `{text}`: {e}"));
    match point {
        Some(p) => s.specialize(p).expect("specialization"),
        None => s,
    }
}

fn mat(v: &Value, field: &FieldSpec, point: Option<&[BigRational]>) -> Mat {
    v.as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|c| coef(c, field, point)).collect()).collect()
}

fn point_of(field: &FieldSpec, at: Option<&[(String, BigRational)]>) -> Option<Vec<BigRational>> {
    at.map(|at| {
        field.params().iter().map(|p| at.iter().find(|(k, _)| k == p).expect("parameter value").1.clone()).collect()
    })
}

fn field_after(field: &FieldSpec, at: Option<&[(String, BigRational)]>) -> FieldSpec {
    if at.is_some() {
        FieldSpec::Rationals
    } else {
        field.clone()
    }
}

pub fn decode_alg(text: &str, at: Option<&[(String, BigRational)]>) -> Alg {
    let v: Value = serde_json::from_str(text).unwrap();
    let field = FieldSpec::parse(v["field"].as_str().unwrap()).unwrap();
    let point = point_of(&field, at);
    let pt = point.as_deref();
    let dim = v["dim"].as_u64().unwrap() as usize;
    let variety = v["variety"].as_str().unwrap().to_string();
    let mut prods = BTreeMap::new();
    for (name, entries) in v["products"].as_object().unwrap() {
        let mut t = Table::zero(dim);
        for e in entries.as_array().unwrap() {
            let e = e.as_array().unwrap();
            let idx = |k: usize| e[k].as_u64().unwrap() as usize - 1;
            t.0[idx(0)][idx(1)][idx(2)] = coef(&e[3], &field, pt);
        }
        prods.insert(name.clone(), t);
    }
    let mut twists = BTreeMap::new();
    if let Some(o) = v.get("twists").and_then(Value::as_object) {
        for (name, m) in o {
            twists.insert(name.clone(), mat(m, &field, pt));
        }
    }
    twists.entry("al".to_string()).or_insert_with(|| identity(dim));
    Alg {
        dim,
        field: field_after(&field, at),
        variety,
        multiplicative: v.get("multiplicative").and_then(Value::as_bool).unwrap_or(false),
        prods,
        twists,
    }
}

pub fn decode_module(text: &str, at: Option<&[(String, BigRational)]>) -> Module {
    let v: Value = serde_json::from_str(text).unwrap();
    let field = FieldSpec::parse(v["field"].as_str().unwrap()).unwrap();
    let point = point_of(&field, at);
    let pt = point.as_deref();
    let acts = v["actions"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, list)| (k.clone(), list.as_array().unwrap().iter().map(|m| mat(m, &field, pt)).collect()))
        .collect();
    let twists = v["module_twists"].as_object().unwrap().iter().map(|(k, m)| (k.clone(), mat(m, &field, pt))).collect();
    Module {
        adim: v["algebra_dim"].as_u64().unwrap() as usize,
        mdim: v["module_dim"].as_u64().unwrap() as usize,
        acts,
        twists,
    }
}

pub fn decode_matrix(text: &str, field: &FieldSpec, at: Option<&[(String, BigRational)]>) -> Mat {
    let v: Value = serde_json::from_str(text).unwrap();
    let point = point_of(field, at);
    mat(&v, field, point.as_deref())
}

// ---------------------------------------------------------------------------
// Operations on a (possibly enlarged) algebra
// ---------------------------------------------------------------------------

/// Products and twists of an algebra, with `br = prec + succ` for dendriform ones.
struct Ops<'a> {
    prods: &'a BTreeMap<String, Table>,
    twists: &'a BTreeMap<String, Mat>,
}

impl Ops<'_> {
    fn p(&self, name: &str, u: &Vect, v: &Vect) -> Vect {
        match self.prods.get(name) {
            Some(t) => t.mul(u, v),
            None if name == "br" => add(&self.p("prec", u, v), &self.p("succ", u, v)),
            None => panic!("no product {name}"),
        }
    }
    fn br(&self, u: &Vect, v: &Vect) -> Vect {
        self.p("br", u, v)
    }
    fn prec(&self, u: &Vect, v: &Vect) -> Vect {
        self.p("prec", u, v)
    }
    fn succ(&self, u: &Vect, v: &Vect) -> Vect {
        self.p("succ", u, v)
    }
    fn t(&self, name: &str, v: &Vect) -> Vect {
        apply(&self.twists[name], v)
    }
    fn al(&self, v: &Vect) -> Vect {
        self.t("al", v)
    }
    fn be(&self, v: &Vect) -> Vect {
        self.t("be", v)
    }
}

/// The defining axioms, stated directly.
fn axiom(name: &str, o: &Ops, x: &Vect, y: &Vect, z: &Vect) -> Vect {
    match name {
        "hom_leibniz" => {
            let a = o.br(&o.al(x), &o.br(y, z));
            let b = o.br(&o.br(x, y), &o.al(z));
            let c = o.br(&o.al(y), &o.br(x, z));
            sub(&sub(&a, &b), &c)
        }
        "hom_jacobi" => {
            let a = o.br(&o.al(x), &o.br(y, z));
            let b = o.br(&o.al(y), &o.br(z, x));
            let c = o.br(&o.al(z), &o.br(x, y));
            add(&add(&a, &b), &c)
        }
        "dendr_1" => {
            let a = o.succ(&o.br(x, y), &o.al(z));
            let b = o.succ(&o.al(x), &o.succ(y, z));
            let c = o.succ(&o.al(y), &o.succ(x, z));
            add(&sub(&a, &b), &c)
        }
        "dendr_2" => {
            let a = o.succ(&o.al(x), &o.prec(y, z));
            let b = o.prec(&o.succ(x, y), &o.al(z));
            let c = o.prec(&o.al(y), &o.br(x, z));
            sub(&sub(&a, &b), &c)
        }
        "dendr_3" => {
            let a = o.prec(&o.al(x), &o.br(y, z));
            let b = o.prec(&o.prec(x, y), &o.al(z));
            let c = o.succ(&o.al(y), &o.prec(x, z));
            sub(&sub(&a, &b), &c)
        }
        "bihom_leibniz" => {
            let a = o.br(&o.al(&o.be(x)), &o.br(y, z));
            let b = o.br(&o.br(&o.be(x), y), &o.be(z));
            let c = o.br(&o.be(y), &o.br(&o.al(x), z));
            sub(&sub(&a, &b), &c)
        }
        "bihom_dendr_1" => {
            let a = o.succ(&o.br(&o.be(x), y), &o.be(z));
            let b = o.succ(&o.al(&o.be(x)), &o.succ(y, z));
            let c = o.succ(&o.be(y), &o.succ(&o.al(x), z));
            add(&sub(&a, &b), &c)
        }
        "bihom_dendr_2" => {
            let a = o.succ(&o.al(&o.be(x)), &o.prec(y, z));
            let b = o.prec(&o.succ(&o.be(x), y), &o.be(z));
            let c = o.prec(&o.be(y), &o.br(&o.al(x), z));
            sub(&sub(&a, &b), &c)
        }
        "bihom_dendr_3" => {
            let a = o.prec(&o.al(&o.be(x)), &o.br(y, z));
            let b = o.prec(&o.prec(&o.be(x), y), &o.be(z));
            let c = o.succ(&o.be(y), &o.prec(&o.al(x), z));
            sub(&sub(&a, &b), &c)
        }
        other => panic!("not a ternary axiom: {other}"),
    }
}

fn ternary_axioms(variety: &str) -> &'static [&'static str] {
    match variety {
        "HomLeibniz" | "Leibniz" | "HomLie" => &["hom_leibniz"],
        "HomLeibnizDendriform" => &["dendr_1", "dendr_2", "dendr_3"],
        "BiHomLeibniz" => &["bihom_leibniz"],
        "BiHomLeibnizDendriform" => &["bihom_dendr_1", "bihom_dendr_2", "bihom_dendr_3"],
        other => panic!("unknown variety {other}"),
    }
}

// ---------------------------------------------------------------------------
// Verdict lines
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Debug)]
enum S {
    A,
    V,
}

/// One verdict line: enumerate assignments (first variable most significant)
/// and stop at the first nonzero value.
fn verdict(name: &str, field: &FieldSpec, sorts: &[(S, usize)], f: impl Fn(&[usize]) -> Vect) -> Line {
    let total: usize = sorts.iter().map(|s| s.1).product();
    let mut idx = vec![0usize; sorts.len()];
    for n in 0..total {
        let mut rem = n;
        for k in (0..sorts.len()).rev() {
            idx[k] = rem % sorts[k].1;
            rem /= sorts[k].1;
        }
        let r = f(&idx);
        if !is_zero(&r) {
            let label: Vec<String> = idx
                .iter()
                .zip(sorts)
                .map(|(i, (s, _))| match s {
                    S::A => format!("e{}", i + 1),
                    S::V => format!("v{}", i + 1),
                })
                .collect();
            let res: Vec<String> = r.iter().map(|s| s.render(field)).collect();
            return Line {
                pass: false,
                text: format!("FAIL {name} at ({}) residual [{}] ({})", label.join(", "), res.join(", "), count(n + 1)),
            };
        }
    }
    Line { pass: true, text: format!("PASS {name} ({})", count(total)) }
}

fn count(n: usize) -> String {
    if n == 1 {
        "1 assignment".into()
    } else {
        format!("{n} assignments")
    }
}

#[derive(Clone, Debug)]
struct Line {
    pass: bool,
    text: String,
}

fn failed_name(l: &Line) -> String {
    l.text.split_whitespace().nth(1).unwrap().to_string()
}

// ---------------------------------------------------------------------------
// Single-algebra checks
// ---------------------------------------------------------------------------

fn multiplicativity_names(variety: &str) -> Vec<String> {
    let tw: &[&str] = if bihom(variety) { &["al", "be"] } else { &["al"] };
    if variety == "Leibniz" {
        return vec![];
    }
    let mut out = vec![];
    for t in tw {
        if dendriform(variety) {
            out.push(format!("multiplicativity_{t}_prec"));
            out.push(format!("multiplicativity_{t}_succ"));
        } else {
            out.push(format!("multiplicativity_{t}"));
        }
    }
    out
}

fn variety_names(a: &Alg) -> Vec<String> {
    let mut v: Vec<String> = match a.variety.as_str() {
        "HomLie" => vec!["skew_symmetry".into(), "hom_jacobi".into()],
        other => {
            let mut v = vec![];
            if bihom(other) {
                v.push("bihom_twist_commute".to_string());
            }
            v.extend(ternary_axioms(other).iter().map(|s| s.to_string()));
            v
        }
    };
    if a.multiplicative {
        v.extend(multiplicativity_names(&a.variety));
    }
    v
}

fn algebra_identity(a: &Alg, name: &str) -> Line {
    let o = Ops { prods: &a.prods, twists: &a.twists };
    let n = a.dim;
    let e = |i: usize| basis(n, i);
    let two = [(S::A, n), (S::A, n)];
    let three = [(S::A, n), (S::A, n), (S::A, n)];
    if let Some(rest) = name.strip_prefix("multiplicativity_") {
        let (tw, prod) = match rest.split_once('_') {
            Some((t, p)) => (t.to_string(), p.to_string()),
            None => (rest.to_string(), "br".to_string()),
        };
        return verdict(name, &a.field, &two, |i| {
            let (x, y) = (e(i[0]), e(i[1]));
            sub(&o.t(&tw, &o.p(&prod, &x, &y)), &o.p(&prod, &o.t(&tw, &x), &o.t(&tw, &y)))
        });
    }
    match name {
        "skew_symmetry" => verdict(name, &a.field, &two, |i| {
            let (x, y) = (e(i[0]), e(i[1]));
            add(&o.br(&x, &y), &o.br(&y, &x))
        }),
        "bihom_twist_commute" => verdict(name, &a.field, &[(S::A, n)], |i| {
            let x = e(i[0]);
            sub(&o.al(&o.be(&x)), &o.be(&o.al(&x)))
        }),
        _ => verdict(name, &a.field, &three, |i| axiom(name, &o, &e(i[0]), &e(i[1]), &e(i[2]))),
    }
}

// ---------------------------------------------------------------------------
// Enlarged algebras
// ---------------------------------------------------------------------------

fn embed(v: &Vect, offset: usize, total: usize) -> Vect {
    let mut out = zeros(total);
    for (i, s) in v.iter().enumerate() {
        out[offset + i] = s.clone();
    }
    out
}

fn block(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zero_mat(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

fn column(m: &Mat, j: usize) -> Vect {
    m.iter().map(|r| r[j].clone()).collect()
}

fn product_names(variety: &str) -> &'static [&'static str] {
    if dendriform(variety) {
        &["prec", "succ"]
    } else {
        &["br"]
    }
}

fn action_names(prod: &str) -> (&'static str, &'static str) {
    match prod {
        "br" => ("l", "r"),
        "prec" => ("lprec", "rprec"),
        _ => ("lsucc", "rsucc"),
    }
}

/// A ⊕ V with `x·v = l(x)v`, `v·x = r(x)v` and zero on V × V.
fn semidirect(a: &Alg, m: &Module) -> (BTreeMap<String, Table>, BTreeMap<String, Mat>) {
    matched_sum_tables(a, m, None)
}

/// A ⊕ B with the actions both ways (`b_side = Some((B, B on A))`), or the semidirect sum.
fn matched_sum_tables(a: &Alg, ab: &Module, b_side: Option<(&Alg, &Module)>) -> (BTreeMap<String, Table>, BTreeMap<String, Mat>) {
    let (n, m) = (a.dim, ab.mdim);
    let t = n + m;
    let mut prods = BTreeMap::new();
    for &p in product_names(&a.variety) {
        let (ln, rn) = action_names(p);
        let mut tab = Table::zero(t);
        for i in 0..n {
            for j in 0..n {
                tab.0[i][j] = embed(&a.prods[p].0[i][j], 0, t);
            }
        }
        for i in 0..n {
            for j in 0..m {
                // e_i · f_j and f_j · e_i on the module side
                tab.0[i][n + j] = embed(&column(&ab.acts[ln][i], j), n, t);
                tab.0[n + j][i] = embed(&column(&ab.acts[rn][i], j), n, t);
            }
        }
        if let Some((b, ba)) = b_side {
            for i in 0..m {
                for j in 0..m {
                    tab.0[n + i][n + j] = embed(&b.prods[p].0[i][j], n, t);
                }
            }
            for i in 0..m {
                for j in 0..n {
                    // f_i · e_j gains l_B(f_i)e_j, e_j · f_i gains r_B(f_i)e_j
                    let l = embed(&column(&ba.acts[ln][i], j), 0, t);
                    let r = embed(&column(&ba.acts[rn][i], j), 0, t);
                    tab.0[n + i][j] = add(&tab.0[n + i][j], &l);
                    tab.0[j][n + i] = add(&tab.0[j][n + i], &r);
                }
            }
        }
        prods.insert(p.to_string(), tab);
    }
    let mut twists = BTreeMap::new();
    let module_twist = |tw: &str| -> Mat {
        match b_side {
            Some((b, _)) => b.twists[tw].clone(),
            None => ab.twists[if tw == "al" { "beV" } else { "beV2" }].clone(),
        }
    };
    twists.insert("al".to_string(), block(&a.twists["al"], &module_twist("al")));
    if bihom(&a.variety) {
        twists.insert("be".to_string(), block(&a.twists["be"], &module_twist("be")));
    }
    (prods, twists)
}

fn slice(v: &Vect, from: usize, len: usize) -> Vect {
    v[from..from + len].to_vec()
}

// ---------------------------------------------------------------------------
// Bimodules
// ---------------------------------------------------------------------------

/// (name, twist, product, left side) of the twist-compatibility conditions.
fn twist_conditions(variety: &str) -> Vec<(String, &'static str, &'static str, bool)> {
    let v = |s: &str, t, p, l| (s.to_string(), t, p, l);
    match variety {
        "HomLeibniz" | "Leibniz" | "HomLie" => vec![v("homleib_bimod_4", "al", "br", true), v("homleib_bimod_5", "al", "br", false)],
        "HomLeibnizDendriform" => vec![
            v("dendr_bimod_10", "al", "prec", true),
            v("dendr_bimod_11", "al", "prec", false),
            v("dendr_bimod_12", "al", "succ", true),
            v("dendr_bimod_13", "al", "succ", false),
        ],
        "BiHomLeibniz" => vec![
            v("bihom_bimod_4", "al", "br", true),
            v("bihom_bimod_5", "al", "br", false),
            v("bihom_bimod_6", "be", "br", true),
            v("bihom_bimod_7", "be", "br", false),
        ],
        _ => vec![
            v("bihom_dendr_bimod_10a", "al", "prec", true),
            v("bihom_dendr_bimod_10b", "al", "prec", false),
            v("bihom_dendr_bimod_12a", "al", "succ", true),
            v("bihom_dendr_bimod_12b", "al", "succ", false),
            v("bihom_dendr_bimod_13a", "be", "prec", true),
            v("bihom_dendr_bimod_13b", "be", "prec", false),
            v("bihom_dendr_bimod_14a", "be", "succ", true),
            v("bihom_dendr_bimod_14b", "be", "succ", false),
        ],
    }
}

fn bimodule_prefix(variety: &str) -> &'static str {
    match variety {
        "HomLeibnizDendriform" => "dendr_bimod",
        "BiHomLeibniz" => "bihom_bimod",
        "BiHomLeibnizDendriform" => "bihom_dendr_bimod",
        _ => "homleib_bimod",
    }
}

fn bimodule_lines(a: &Alg, m: &Module) -> Vec<Line> {
    let (n, d) = (a.dim, m.mdim);
    let t = n + d;
    let (prods, twists) = semidirect(a, m);
    let o = Ops { prods: &prods, twists: &twists };
    let x = |i: usize| basis(t, i);
    let v = |i: usize| basis(t, n + i);
    let mut out = vec![];
    let prefix = bimodule_prefix(&a.variety);
    let mut k = 1;
    for ax in ternary_axioms(&a.variety) {
        // argument patterns (x, y, v), (x, v, y), (v, x, y); variables ordered (x, y, v)
        for pat in 0..3 {
            let name = format!("{prefix}_{k}");
            out.push(verdict(&name, &a.field, &[(S::A, n), (S::A, n), (S::V, d)], |i| {
                let (ex, ey, ev) = (x(i[0]), x(i[1]), v(i[2]));
                let r = match pat {
                    0 => axiom(ax, &o, &ex, &ey, &ev),
                    1 => axiom(ax, &o, &ex, &ev, &ey),
                    _ => axiom(ax, &o, &ev, &ex, &ey),
                };
                slice(&r, n, d)
            }));
            k += 1;
        }
    }
    for (name, tw, p, left) in twist_conditions(&a.variety) {
        out.push(verdict(&name, &a.field, &[(S::A, n), (S::V, d)], |i| {
            let (ex, ev) = (x(i[0]), v(i[1]));
            let (u, w) = if left { (ex, ev) } else { (ev, ex) };
            slice(&sub(&o.t(tw, &o.p(p, &u, &w)), &o.p(p, &o.t(tw, &u), &o.t(tw, &w))), n, d)
        }));
    }
    if bihom(&a.variety) {
        let name = if dendriform(&a.variety) { "bihom_dendr_module_twist_commute" } else { "bihom_module_twist_commute" };
        out.push(verdict(name, &a.field, &[(S::V, d)], |i| {
            let ev = v(i[0]);
            slice(&sub(&o.al(&o.be(&ev)), &o.be(&o.al(&ev))), n, d)
        }));
    }
    if !dendriform(&a.variety) && !bihom(&a.variety) && out.iter().all(|l| l.pass) {
        out.push(verdict("homleib_bimod_consequence", &a.field, &[(S::A, n), (S::A, n), (S::V, d)], |i| {
            let (ex, ey, ev) = (x(i[0]), x(i[1]), v(i[2]));
            let s = add(&o.br(&ex, &ev), &o.br(&ev, &ex));
            slice(&o.br(&s, &o.al(&ey)), n, d)
        }));
    }
    out
}

// ---------------------------------------------------------------------------
// Matched pairs
// ---------------------------------------------------------------------------

fn matched_prefix(variety: &str) -> &'static str {
    match variety {
        "HomLeibnizDendriform" => "dendr_matched",
        "BiHomLeibniz" => "bihom_matched",
        "BiHomLeibnizDendriform" => "bihom_dendr_matched",
        _ => "matched_pair",
    }
}

fn coupling_lines(a: &Alg, b: &Alg, ab: &Module, ba: &Module) -> Vec<Line> {
    let (n, m) = (a.dim, b.dim);
    let t = n + m;
    let (prods, twists) = matched_sum_tables(a, ab, Some((b, ba)));
    let o = Ops { prods: &prods, twists: &twists };
    let x = |i: usize| basis(t, i);
    let f = |i: usize| basis(t, n + i);
    let prefix = matched_prefix(&a.variety);
    let mut out = vec![];
    let mut k = 1;
    // B-components at (x, a, b), (a, x, b), (a, b, x); variables (x, a, b)
    for ax in ternary_axioms(&a.variety) {
        for pat in 0..3 {
            out.push(verdict(&format!("{prefix}_{k}"), &a.field, &[(S::A, n), (S::V, m), (S::V, m)], |i| {
                let (ex, fa, fb) = (x(i[0]), f(i[1]), f(i[2]));
                let r = match pat {
                    0 => axiom(ax, &o, &ex, &fa, &fb),
                    1 => axiom(ax, &o, &fa, &ex, &fb),
                    _ => axiom(ax, &o, &fa, &fb, &ex),
                };
                slice(&r, n, m)
            }));
            k += 1;
        }
    }
    // A-components at (a, x, y), (x, a, y), (x, y, a); variables (x, y, a)
    for ax in ternary_axioms(&a.variety) {
        for pat in 0..3 {
            out.push(verdict(&format!("{prefix}_{k}"), &a.field, &[(S::A, n), (S::A, n), (S::V, m)], |i| {
                let (ex, ey, fa) = (x(i[0]), x(i[1]), f(i[2]));
                let r = match pat {
                    0 => axiom(ax, &o, &fa, &ex, &ey),
                    1 => axiom(ax, &o, &ex, &fa, &ey),
                    _ => axiom(ax, &o, &ex, &ey, &fa),
                };
                slice(&r, 0, n)
            }));
            k += 1;
        }
    }
    out
}

fn matched_lines(a: &Alg, b: &Alg, ab: &Module, ba: &Module) -> Vec<String> {
    let mut out = vec![];
    for (label, p, act, other) in [("A on B", a, ab, b), ("B on A", b, ba, a)] {
        for (name, m) in &act.twists {
            let want = if name == "beV" { other.twists.get("al") } else { other.twists.get("be") };
            if want != Some(m) {
                out.push(format!(
                    "PRECONDITION matched_pair_bimodules: {label}: module twist `{name}` differs from the acting-on algebra's twist"
                ));
                return out;
            }
        }
        let lines = bimodule_lines(p, act);
        let failed = lines.iter().find(|l| !l.pass).map(failed_name);
        out.extend(lines.iter().map(|l| format!("{}: {label}", l.text)));
        if let Some(f) = failed {
            out.push(format!("PRECONDITION matched_pair_bimodules: bimodule {label} fails {f}"));
            return out;
        }
    }
    out.extend(coupling_lines(a, b, ab, ba).into_iter().map(|l| l.text));
    out
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

fn ooperator_lines(a: &Alg, m: &Module, t: &Mat) -> Vec<Line> {
    let (n, d) = (a.dim, m.mdim);
    let o = Ops { prods: &a.prods, twists: &a.twists };
    let v = |i: usize| basis(d, i);
    let act = |name: &str, x: &Vect, w: &Vect| -> Vect {
        // action of the algebra element x on the module vector w
        let mut out = zeros(d);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let img = apply(&m.acts[name][i], w);
                out = add(&out, &img.iter().map(|s| c * s).collect());
            }
        }
        out
    };
    let tw = |name: &str, w: &Vect| apply(&m.twists[name], w);
    let mut out = vec![];
    let twists: Vec<(&str, &str, &str)> = if bihom(&a.variety) {
        vec![("ooperator_bihom_twist_al", "al", "beV2"), ("ooperator_bihom_twist_be", "be", "beV")]
    } else {
        vec![("ooperator_hom_twist", "al", "beV")]
    };
    for (name, at, mt) in twists {
        out.push(verdict(name, &a.field, &[(S::V, d)], |i| {
            let w = v(i[0]);
            sub(&o.t(at, &apply(t, &w)), &apply(t, &tw(mt, &w)))
        }));
    }
    let name = if bihom(&a.variety) { "ooperator_bihom" } else { "ooperator_hom" };
    out.push(verdict(name, &a.field, &[(S::V, d), (S::V, d)], |i| {
        let (u, w) = (v(i[0]), v(i[1]));
        let (tu, tw_) = (apply(t, &u), apply(t, &w));
        let inner = add(&act("l", &tu, &w), &act("r", &tw_, &u));
        sub(&o.br(&tu, &tw_), &apply(t, &inner))
    }));
    let _ = n;
    out
}

fn rota_baxter_lines(a: &Alg, k: &Mat) -> Vec<Line> {
    let n = a.dim;
    let o = Ops { prods: &a.prods, twists: &a.twists };
    let e = |i: usize| basis(n, i);
    let mut out = vec![];
    let (twists, name): (Vec<(&str, &str)>, &str) = if bihom(&a.variety) {
        (vec![("rota_baxter_bihom_twist_al", "al"), ("rota_baxter_bihom_twist_be", "be")], "rota_baxter_bihom")
    } else {
        (vec![("rota_baxter_hom_twist", "al")], "rota_baxter_hom")
    };
    for (label, tw) in twists {
        out.push(verdict(label, &a.field, &[(S::A, n)], |i| {
            let x = e(i[0]);
            sub(&o.t(tw, &apply(k, &x)), &apply(k, &o.t(tw, &x)))
        }));
    }
    out.push(verdict(name, &a.field, &[(S::A, n), (S::A, n)], |i| {
        let (x, y) = (e(i[0]), e(i[1]));
        let (kx, ky) = (apply(k, &x), apply(k, &y));
        let inner = add(&o.br(&kx, &y), &o.br(&x, &ky));
        sub(&o.br(&kx, &ky), &apply(k, &inner))
    }));
    out
}

// ---------------------------------------------------------------------------
// Entry rendering
// ---------------------------------------------------------------------------

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{}: {e}", dir.join(name).display()))
}

fn declared_field(dir: &Path, alg: &str) -> FieldSpec {
    let v: Value = serde_json::from_str(&read(dir, alg)).unwrap();
    FieldSpec::parse(v["field"].as_str().unwrap()).unwrap()
}

fn texts(lines: Vec<Line>) -> Vec<String> {
    lines.into_iter().map(|l| l.text).collect()
}

/// The oracle's rendering of one check (without the header).
pub fn render_check(dir: &Path, spec: &CheckSpec) -> String {
    let at = spec.at.as_deref();
    let alg = |name: &str| decode_alg(&read(dir, name), at);
    let module = |name: &str| decode_module(&read(dir, name), at);
    let lines: Vec<String> = match &spec.kind {
        CheckKind::Load { alg } => {
            // Document validation is the loader's job; its message is quoted verbatim.
            match homleib::model::load_presentation(&read(dir, alg)) {
                Ok(p) => vec![format!("LOADED {} dim {}", p.variety, p.dim)],
                Err(e) => vec![format!("ERROR {e}")],
            }
        }
        CheckKind::Variety { alg: f } => {
            let a = alg(f);
            variety_names(&a).iter().map(|n| algebra_identity(&a, n).text).collect()
        }
        CheckKind::Multiplicative { alg: f } => {
            let a = alg(f);
            multiplicativity_names(&a.variety).iter().map(|n| algebra_identity(&a, n).text).collect()
        }
        CheckKind::Identity { alg: f, name } => vec![algebra_identity(&alg(f), name).text],
        CheckKind::Bimodule { alg: f, act } => texts(bimodule_lines(&alg(f), &module(act))),
        CheckKind::Matched { a, b, a_on_b, b_on_a } => matched_lines(&alg(a), &alg(b), &module(a_on_b), &module(b_on_a)),
        CheckKind::Coupling { a, b, a_on_b, b_on_a } => texts(coupling_lines(&alg(a), &alg(b), &module(a_on_b), &module(b_on_a))),
        CheckKind::OOperator { alg: f, act, t } => {
            let field = declared_field(dir, f);
            texts(ooperator_lines(&alg(f), &module(act), &decode_matrix(&read(dir, t), &field, at)))
        }
        CheckKind::RotaBaxter { alg: f, k } => {
            let field = declared_field(dir, f);
            texts(rota_baxter_lines(&alg(f), &decode_matrix(&read(dir, k), &field, at)))
        }
    };
    let mut s = String::new();
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    s
}

/// The oracle's rendering of a whole entry, in golden-report form.
pub fn render_entry(entry: &CorpusEntry) -> String {
    let mut out = String::new();
    for spec in &entry.checks {
        out.push_str(&format!("## {}\n", spec.line));
        out.push_str(&render_check(&entry.dir, spec));
    }
    out
}
