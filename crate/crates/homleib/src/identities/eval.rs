//! Multilinear evaluation of identities and exhaustive basis checking.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{tensor_ops, tensor_swap, LinalgError, LinearMap, Tensor2, Vector};
use crate::scalar::{Scalar, ScalarError};

use super::ast::{Expr, Identity, OpExpr, Sort, Symbol};
use super::context::Context;
use super::report::{CheckReport, Status};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("identity `{identity}` needs {symbol}, which the context does not provide")]
    MissingSymbol { identity: String, symbol: Symbol },
    #[error("assignment has {got} vectors, identity `{identity}` has {want} variables")]
    Arity { identity: String, want: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<LinalgError> for EvalError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Scalar(s) => EvalError::Scalar(s),
            other => EvalError::Dimension(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, EvalError>;

/// The value of a sub-expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Vector(Vector),
    Tensor(Tensor2),
    Scalar(Scalar),
}

impl Value {
    /// Flatten into coordinates: vectors as-is, tensors row-major, scalars as length 1.
    pub fn flatten(self) -> Vector {
        match self {
            Value::Vector(v) => v,
            Value::Tensor(t) => t.flatten(),
            Value::Scalar(s) => Vector(vec![s]),
        }
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Value) -> Result<()> {
        match (self, other) {
            (Value::Vector(a), Value::Vector(b)) => {
                if a.len() != b.len() {
                    return Err(EvalError::Dimension("vector lengths differ".into()));
                }
                a.add_scaled(c, b);
            }
            (Value::Tensor(a), Value::Tensor(b)) => *a = a.add(&b.scale(c)),
            (Value::Scalar(a), Value::Scalar(b)) => *a = a.try_add(&c.try_mul(b)?)?,
            _ => return Err(EvalError::Dimension("terms of different sorts".into())),
        }
        Ok(())
    }
}

struct Evaluator<'a> {
    ctx: &'a Context,
    env: &'a [Vector],
}

impl Evaluator<'_> {
    fn vector(&self, e: &Expr) -> Result<Vector> {
        match self.eval(e)? {
            Value::Vector(v) => Ok(v),
            _ => Err(EvalError::Dimension("expected a vector".into())),
        }
    }

    fn tensor(&self, e: &Expr) -> Result<Tensor2> {
        match self.eval(e)? {
            Value::Tensor(t) => Ok(t),
            _ => Err(EvalError::Dimension("expected a tensor".into())),
        }
    }

    fn map(&self, name: &str) -> &LinearMap {
        &self.ctx.maps[name]
    }

    fn op(&self, op: &OpExpr) -> Result<LinearMap> {
        let br = || &self.ctx.products[&("br".to_string(), Sort::A)];
        let weighted = |x: &Vector, left: bool| -> Result<LinearMap> {
            let mut acc = LinearMap::zero(self.ctx.dim_a, self.ctx.dim_a);
            for (i, c) in x.0.iter().enumerate() {
                if !c.is_zero() {
                    let m = if left { br().left_mult(i) } else { br().right_mult(i) };
                    acc = acc.add(&m.scale(c))?;
                }
            }
            Ok(acc)
        };
        Ok(match op {
            OpExpr::Id => LinearMap::identity(self.ctx.dim_a),
            OpExpr::Map(n) => self.map(n).clone(),
            OpExpr::L(e) => weighted(&self.vector(e)?, true)?,
            OpExpr::R(e) => weighted(&self.vector(e)?, false)?,
        })
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        Ok(match e {
            Expr::Var(i) => Value::Vector(self.env[*i].clone()),
            Expr::Sum(terms) => {
                let mut acc: Option<Value> = None;
                for (c, t) in terms {
                    let v = self.eval(t)?;
                    match &mut acc {
                        None => {
                            let mut z = match &v {
                                Value::Vector(x) => Value::Vector(Vector::zeros(x.len())),
                                Value::Tensor(x) => Value::Tensor(Tensor2::zero(x.dim())),
                                Value::Scalar(_) => Value::Scalar(Scalar::zero()),
                            };
                            z.add_scaled(c, &v)?;
                            acc = Some(z);
                        }
                        Some(a) => a.add_scaled(c, &v)?,
                    }
                }
                acc.expect("sums are nonempty")
            }
            Expr::Map { name, arg } => Value::Vector(self.map(name).apply(&self.vector(arg)?)?),
            Expr::Id(arg) => self.eval(arg)?,
            Expr::Prod { name, sort, lhs, rhs } => {
                let p = &self.ctx.products[&(name.clone(), *sort)];
                Value::Vector(p.apply(&self.vector(lhs)?, &self.vector(rhs)?)?)
            }
            Expr::Act { name, actor_sort, actor, target } => {
                let mats = &self.ctx.actions[&(name.clone(), *actor_sort)];
                let x = self.vector(actor)?;
                let t = self.vector(target)?;
                if x.len() != mats.len() {
                    return Err(EvalError::Dimension(format!("action `{name}` has {} matrices, actor has {} coordinates", mats.len(), x.len())));
                }
                let mut acc = Vector::zeros(mats.first().map_or(0, LinearMap::rows));
                for (c, m) in x.0.iter().zip(mats) {
                    if !c.is_zero() {
                        acc.add_scaled(c, &m.apply(&t)?);
                    }
                }
                Value::Vector(acc)
            }
            Expr::Delta(arg) => {
                let d = self.ctx.cobracket.as_ref().expect("checked before evaluation");
                let flat = d.apply(&self.vector(arg)?)?;
                Value::Tensor(Tensor2::from_flat(self.ctx.dim_a, &flat)?)
            }
            Expr::Sigma(arg) => Value::Tensor(tensor_swap(&self.tensor(arg)?)),
            Expr::Kron { f, g, arg } => Value::Tensor(tensor_ops(&self.tensor(arg)?, &self.op(f)?, &self.op(g)?)?),
            Expr::Form(a, b) => {
                let g = self.ctx.form.as_ref().expect("checked before evaluation");
                let (a, b) = (self.vector(a)?, self.vector(b)?);
                Value::Scalar(a.dot(&g.apply(&b)?))
            }
        })
    }
}

/// Fail early with a precise message when the context lacks a symbol.
pub fn ensure_symbols(id: &Identity, ctx: &Context) -> Result<()> {
    for s in id.symbols() {
        if !ctx.provides(&s) {
            return Err(EvalError::MissingSymbol { identity: id.name.clone(), symbol: s });
        }
    }
    if let Some(m) = ctx.cobracket.as_ref() {
        if m.rows() != ctx.dim_a * ctx.dim_a || m.cols() != ctx.dim_a {
            return Err(EvalError::Dimension("cobracket must map A to A ⊗ A".into()));
        }
    }
    Ok(())
}

/// Evaluate an identity at arbitrary vectors (one per variable).
pub fn evaluate_vectors(id: &Identity, ctx: &Context, vectors: &[Vector]) -> Result<Value> {
    ensure_symbols(id, ctx)?;
    if vectors.len() != id.vars.len() {
        return Err(EvalError::Arity { identity: id.name.clone(), want: id.vars.len(), got: vectors.len() });
    }
    for ((name, sort), v) in id.vars.iter().zip(vectors) {
        if v.len() != ctx.dim(*sort) {
            return Err(EvalError::Dimension(format!("variable `{name}` needs {} coordinates, got {}", ctx.dim(*sort), v.len())));
        }
    }
    Evaluator { ctx, env: vectors }.eval(&id.body)
}

/// Evaluate an identity at a basis assignment (0-based indices, one per variable).
pub fn evaluate_identity(id: &Identity, ctx: &Context, assignment: &[usize]) -> Result<Value> {
    if assignment.len() != id.vars.len() {
        return Err(EvalError::Arity { identity: id.name.clone(), want: id.vars.len(), got: assignment.len() });
    }
    let mut vs = Vec::with_capacity(assignment.len());
    for ((name, sort), &i) in id.vars.iter().zip(assignment) {
        let n = ctx.dim(*sort);
        if i >= n {
            return Err(EvalError::Dimension(format!("basis index {} out of range for `{name}` (dimension {n})", i + 1)));
        }
        vs.push(Vector::basis(n, i));
    }
    evaluate_vectors(id, ctx, &vs)
}

/// Options for exhaustive checking.
#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Worker threads; `None` uses the global pool, `Some(1)` runs sequentially.
    pub jobs: Option<usize>,
}

fn decode(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Check an identity on every basis assignment; the lexicographically first
/// failure (first variable most significant) is reported.
pub fn check_identity(id: &Identity, ctx: &Context) -> Result<CheckReport> {
    check_identity_with(id, ctx, CheckOptions::default())
}

pub fn check_identity_with(id: &Identity, ctx: &Context, opts: CheckOptions) -> Result<CheckReport> {
    ensure_symbols(id, ctx)?;
    let dims: Vec<usize> = id.vars.iter().map(|(_, s)| ctx.dim(*s)).collect();
    let total: usize = dims.iter().product();
    let probe = |k: usize| -> Option<Result<(Vec<usize>, Vector)>> {
        let a = decode(k, &dims);
        match evaluate_identity(id, ctx, &a) {
            Ok(v) => {
                let v = v.flatten();
                (!v.is_zero()).then_some(Ok((a, v)))
            }
            Err(e) => Some(Err(e)),
        }
    };
    let first = match opts.jobs {
        Some(1) => (0..total).find_map(|k| probe(k).map(|r| (k, r))),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| EvalError::Dimension(e.to_string()))?;
            pool.install(|| (0..total).into_par_iter().find_map_first(|k| probe(k).map(|r| (k, r))))
        }
        None => (0..total).into_par_iter().find_map_first(|k| probe(k).map(|r| (k, r))),
    };
    Ok(match first {
        None => CheckReport::pass(&id.name, total),
        Some((k, r)) => {
            let (a, v) = r?;
            CheckReport {
                identity: id.name.clone(),
                status: Status::Fail,
                assignment: Some(a.iter().map(|i| i + 1).collect()),
                residual: Some(v),
                assignments: k + 1,
                variables: id.vars.iter().map(|(_, s)| *s).collect(),
                note: None,
            }
        }
    })
}
