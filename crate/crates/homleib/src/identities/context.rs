//! Evaluation contexts: the symbol tables identities are evaluated against.

use std::collections::BTreeMap;

use crate::linalg::{dual_map, LinearMap, Product};
use crate::model::{ActionFamily, AlgebraPresentation};
use crate::scalar::FieldSpec;

use super::ast::{Sort, Symbol};

/// Concrete meanings for the symbols of the identity language.
///
/// Sort `A` is the carrier of the primary algebra; sort `V` is the module,
/// the second algebra of a matched pair, or the dual space.
#[derive(Debug, Clone)]
pub struct Context {
    pub field: FieldSpec,
    pub dim_a: usize,
    pub dim_v: usize,
    pub(crate) maps: BTreeMap<String, LinearMap>,
    pub(crate) products: BTreeMap<(String, Sort), Product>,
    /// One target-space matrix per actor basis element.
    pub(crate) actions: BTreeMap<(String, Sort), Vec<LinearMap>>,
    pub(crate) cobracket: Option<LinearMap>,
    pub(crate) form: Option<LinearMap>,
}

impl Context {
    fn empty(field: FieldSpec, dim_a: usize, dim_v: usize) -> Self {
        Context {
            field,
            dim_a,
            dim_v,
            maps: BTreeMap::new(),
            products: BTreeMap::new(),
            actions: BTreeMap::new(),
            cobracket: None,
            form: None,
        }
    }

    /// Products, twists, form and cobracket of a single presentation, on sort `A`.
    pub fn algebra(p: &AlgebraPresentation) -> Self {
        let mut c = Context::empty(p.field.clone(), p.dim, 0);
        c.add_algebra(p, Sort::A);
        c.cobracket = p.cobracket.clone();
        c.form = p.form.clone();
        c
    }

    fn add_algebra(&mut self, p: &AlgebraPresentation, sort: Sort) {
        for (name, prod) in &p.products {
            self.products.insert((name.clone(), sort), prod.clone());
        }
        if p.variety.is_dendriform() {
            self.products.insert(("br".into(), sort), p.bracket());
        }
        for name in ["al", "be"] {
            if let Some(m) = p.twist(name) {
                let key = match (sort, name) {
                    (Sort::A, n) => n.to_string(),
                    (_, "al") => "beV".to_string(),
                    _ => "beV2".to_string(),
                };
                self.maps.insert(key, m);
            }
        }
    }

    fn add_actions(&mut self, a: &ActionFamily, actor: Sort) {
        for (name, mats) in &a.actions {
            self.actions.insert((name.clone(), actor), mats.clone());
        }
        let sum = |x: &str, y: &str| -> Option<Vec<LinearMap>> {
            let (p, q) = (a.actions.get(x)?, a.actions.get(y)?);
            Some(p.iter().zip(q).map(|(m, n)| m.add(n).expect("validated shapes")).collect())
        };
        if let Some(l) = sum("lprec", "lsucc") {
            self.actions.insert(("l".into(), actor), l);
        }
        if let Some(r) = sum("rprec", "rsucc") {
            self.actions.insert(("r".into(), actor), r);
        }
    }

    /// An algebra together with a bimodule: module twists become `beV`/`beV2`.
    pub fn bimodule(p: &AlgebraPresentation, a: &ActionFamily) -> Self {
        let mut c = Context::algebra(p);
        c.dim_v = a.module_dim;
        for (name, m) in &a.module_twists {
            c.maps.insert(name.clone(), m.clone());
        }
        c.add_actions(a, Sort::A);
        c
    }

    /// Two algebras acting on each other: `a_on_b` has `A` actors, `b_on_a` has `V` actors.
    pub fn matched(pa: &AlgebraPresentation, pb: &AlgebraPresentation, a_on_b: &ActionFamily, b_on_a: &ActionFamily) -> Self {
        let mut c = Context::algebra(pa);
        c.dim_v = pb.dim;
        c.cobracket = None;
        c.form = None;
        c.add_algebra(pb, Sort::V);
        c.add_actions(a_on_b, Sort::A);
        c.add_actions(b_on_a, Sort::V);
        c
    }

    /// A bimodule plus an operator `T : V → A`.
    pub fn ooperator(p: &AlgebraPresentation, a: &ActionFamily, t: &LinearMap) -> Self {
        let mut c = Context::bimodule(p, a);
        c.maps.insert("T".into(), t.clone());
        c
    }

    /// An algebra plus an operator `K : A → A`.
    pub fn rota_baxter(p: &AlgebraPresentation, k: &LinearMap) -> Self {
        let mut c = Context::algebra(p);
        c.maps.insert("K".into(), k.clone());
        c
    }

    /// An algebra and an algebra structure on its dual space, with the
    /// coadjoint actions `ls = L*`, `rs = R*` in both directions.
    pub fn dual_pair(p: &AlgebraPresentation, dual: &AlgebraPresentation) -> Self {
        let mut c = Context::algebra(p);
        c.dim_v = dual.dim;
        c.add_algebra(dual, Sort::V);
        let (br, dbr) = (p.bracket(), dual.bracket());
        let star = |prod: &Product, left: bool| -> Vec<LinearMap> {
            (0..prod.dim())
                .map(|i| dual_map(&if left { prod.left_mult(i) } else { prod.right_mult(i) }))
                .collect()
        };
        c.actions.insert(("ls".into(), Sort::A), star(&br, true));
        c.actions.insert(("rs".into(), Sort::A), star(&br, false));
        c.actions.insert(("ls".into(), Sort::V), star(&dbr, true));
        c.actions.insert(("rs".into(), Sort::V), star(&dbr, false));
        c
    }

    /// Register or replace a named map.
    pub fn with_map(mut self, name: &str, m: LinearMap) -> Self {
        self.maps.insert(name.into(), m);
        self
    }

    pub fn dim(&self, s: Sort) -> usize {
        match s {
            Sort::A => self.dim_a,
            Sort::V => self.dim_v,
            Sort::T => self.dim_a * self.dim_a,
            Sort::S => 1,
        }
    }

    pub fn provides(&self, s: &Symbol) -> bool {
        match s {
            Symbol::Map(n) => self.maps.contains_key(n),
            Symbol::Product(n, sort) => self.products.contains_key(&(n.clone(), *sort)),
            Symbol::Action(n, sort) => self.actions.contains_key(&(n.clone(), *sort)),
            Symbol::Cobracket => self.cobracket.is_some(),
            Symbol::Form => self.form.is_some(),
        }
    }
}
