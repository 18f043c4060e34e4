//! Vectors, linear maps, bilinear products and tensor-square elements with
//! exact entries, plus fraction-free elimination.

use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular; kernel witness {0:?}")]
    Singular(Vector),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(LinalgError::Dimension(msg.into()))
}

/// Coordinates with respect to the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    /// The basis vector e_{index+1} (indices are 0-based in code).
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Vector::zeros(n);
        v.0[index] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    /// Concatenate coordinates (the direct sum V ⊕ W).
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut c = self.0.clone();
        c.extend(other.0.iter().cloned());
        Vector(c)
    }

    pub fn slice(&self, start: usize, len: usize) -> Vector {
        Vector(self.0[start..start + len].to_vec())
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        self.0.iter().zip(&other.0).fold(Scalar::zero(), |acc, (a, b)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                &acc + &(a * b)
            }
        })
    }

    pub fn render(&self, spec: &FieldSpec) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| s.render(spec)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// A `rows × cols` matrix; column j is the image of the basis vector e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinearMap::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<Scalar>) -> Self {
        let n = diag.len();
        let mut m = LinearMap::zero(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Build from row-major rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return dim_err("ragged matrix rows");
        }
        Ok(LinearMap { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Build from the images of the basis vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = LinearMap::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return dim_err("column length differs from row count");
            }
            for i in 0..rows {
                m.set(i, j, col.0[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == LinearMap::identity(self.rows)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> LinearMap {
        LinearMap { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map_entries<E>(&self, f: impl Fn(&Scalar) -> std::result::Result<Scalar, E>) -> std::result::Result<LinearMap, E> {
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return dim_err(format!("map expects length {}, got {}", self.cols, v.len()));
        }
        let mut out = Vector::zeros(self.rows);
        for (j, x) in v.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let m = self.get(i, j);
                if !m.is_zero() {
                    out.0[i] = &out.0[i] + &(m * x);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return dim_err(format!("cannot compose {}x{} after {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = LinearMap::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, n: u64) -> Result<LinearMap> {
        if !self.is_square() {
            return dim_err("power of a non-square map");
        }
        let mut acc = LinearMap::identity(self.rows);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim_err("adding maps of different shapes");
        }
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearMap {
        self.map_entries(|x| -x)
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        self.map_entries(|x| x * c)
    }

    /// The unsigned transpose. The public dual is [`dual_map`].
    pub(crate) fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal map `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product: the matrix of `self ⊗ other` on the basis e_i ⊗ f_j ordered i-major.
    pub fn kronecker(&self, other: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &LinearMap) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return dim_err("determinant of a non-square matrix");
        }
        let e = Echelon::new(self.to_rows(), self.cols)?;
        if e.pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let last = e.rows.last().map_or(Scalar::one(), |r| r[self.cols - 1].clone());
        Ok(if e.sign_flipped { -last } else { last })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(Echelon::new(self.to_rows(), self.cols)?.pivots.len())
    }

    /// A nonzero kernel vector, if one exists.
    pub fn kernel_witness(&self) -> Result<Option<Vector>> {
        let e = Echelon::new(self.to_rows(), self.cols)?;
        e.kernel_vector()
    }

    /// Solve `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if !self.is_square() {
            return dim_err("solve needs a square matrix");
        }
        if b.len() != self.rows {
            return dim_err("right-hand side length mismatch");
        }
        let mut rows = self.to_rows();
        for (row, x) in rows.iter_mut().zip(&b.0) {
            row.push(x.clone());
        }
        let e = Echelon::new(rows, self.cols)?;
        if e.pivots.len() < self.cols {
            return Err(LinalgError::Singular(e.kernel_vector()?.expect("rank deficient")));
        }
        let sols = e.back_substitute(self.cols, 1)?;
        Ok(sols.into_iter().next().unwrap())
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if !self.is_square() {
            return dim_err("inverse needs a square matrix");
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
        }
        let e = Echelon::new(rows, n)?;
        if e.pivots.len() < n {
            return Err(LinalgError::Singular(e.kernel_vector()?.expect("rank deficient")));
        }
        let cols = e.back_substitute(n, n)?;
        LinearMap::from_columns(n, &cols)
    }

    pub fn render(&self, spec: &FieldSpec) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|s| s.render(spec)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// The signed dual `φ* = −φᵀ`, defined by ⟨v, φ*(u*)⟩ = −⟨φ(v), u*⟩.
pub fn dual_map(m: &LinearMap) -> LinearMap {
    m.transpose().neg()
}

/// Fraction-free (Bareiss) row echelon form of an augmented matrix whose
/// first `elim_cols` columns are eliminated.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    /// Pivot column for each of the leading rows.
    pivots: Vec<usize>,
    sign_flipped: bool,
    elim_cols: usize,
}

impl Echelon {
    fn new(mut rows: Vec<Vec<Scalar>>, elim_cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut sign_flipped = false;
        let mut r = 0;
        for c in 0..elim_cols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                sign_flipped = !sign_flipped;
            }
            let pivot = rows[r][c].clone();
            for i in r + 1..nrows {
                let factor = rows[i][c].clone();
                for j in c + 1..width {
                    let v = (&(&pivot * &rows[i][j]) - &(&factor * &rows[r][j])).try_div(&prev)?;
                    rows[i][j] = v;
                }
                rows[i][c] = Scalar::zero();
            }
            // Rows above the current pivot row keep their values; rows with
            // no pivot yet are scaled consistently by the Bareiss step.
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon { rows, pivots, sign_flipped, elim_cols })
    }

    /// Solve for each augmented column; requires full column rank.
    fn back_substitute(&self, n: usize, rhs: usize) -> Result<Vec<Vector>> {
        let mut out = Vec::with_capacity(rhs);
        for k in 0..rhs {
            let mut x = vec![Scalar::zero(); n];
            for (r, &c) in self.pivots.iter().enumerate().rev() {
                let mut acc = self.rows[r][self.elim_cols + k].clone();
                for j in c + 1..n {
                    if !x[j].is_zero() && !self.rows[r][j].is_zero() {
                        acc = &acc - &(&self.rows[r][j] * &x[j]);
                    }
                }
                x[c] = acc.try_div(&self.rows[r][c])?;
            }
            out.push(Vector(x));
        }
        Ok(out)
    }

    fn kernel_vector(&self) -> Result<Option<Vector>> {
        let n = self.elim_cols;
        let Some(free) = (0..n).find(|c| !self.pivots.contains(c)) else {
            return Ok(None);
        };
        let mut x = vec![Scalar::zero(); n];
        x[free] = Scalar::one();
        for (r, &c) in self.pivots.iter().enumerate().rev() {
            let mut acc = Scalar::zero();
            for j in c + 1..n {
                if !x[j].is_zero() && !self.rows[r][j].is_zero() {
                    acc = &acc - &(&self.rows[r][j] * &x[j]);
                }
            }
            x[c] = acc.try_div(&self.rows[r][c])?;
        }
        Ok(Some(Vector(x)))
    }
}

/// A bilinear product by structure constants: e_i ∘ e_j = Σ_k c[i][j][k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    dim: usize,
    c: Vec<Scalar>,
}

impl Product {
    pub fn zero(dim: usize) -> Self {
        Product { dim, c: vec![Scalar::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let at = self.idx(i, j, k);
        self.c[at] = v;
    }

    /// e_i ∘ e_j as a vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let start = self.idx(i, j, 0);
        Vector(self.c[start..start + self.dim].to_vec())
    }

    pub fn set_basis_product(&mut self, i: usize, j: usize, v: &Vector) {
        for k in 0..self.dim {
            self.set(i, j, k, v.0[k].clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Nonzero constants as (i, j, k, c) with 0-based indices, in lexicographic order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let d = self.dim;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(move |(at, s)| (at / (d * d), (at / d) % d, at % d, s))
    }

    pub fn apply(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        if u.len() != self.dim || v.len() != self.dim {
            return dim_err(format!("product on dimension {} applied to lengths {}, {}", self.dim, u.len(), v.len()));
        }
        let mut out = Vector::zeros(self.dim);
        for (i, a) in u.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for k in 0..self.dim {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.0[k] = &out.0[k] + &(&ab * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Product) -> Result<Product> {
        if self.dim != other.dim {
            return dim_err("adding products of different dimensions");
        }
        Ok(Product { dim: self.dim, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: &Scalar) -> Product {
        Product { dim: self.dim, c: self.c.iter().map(|x| x * s).collect() }
    }

    /// The product `(x, y) ↦ f(x ∘ y)`.
    pub fn post_compose(&self, f: &LinearMap) -> Result<Product> {
        if f.rows() != self.dim || f.cols() != self.dim {
            return dim_err("post-composition map has the wrong shape");
        }
        let mut out = Product::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = f.apply(&self.basis_product(i, j))?;
                out.set_basis_product(i, j, &v);
            }
        }
        Ok(out)
    }

    /// The product `(x, y) ↦ f(x) ∘ g(y)`.
    pub fn pre_compose(&self, f: &LinearMap, g: &LinearMap) -> Result<Product> {
        if f.rows() != self.dim || g.rows() != self.dim || !f.is_square() || !g.is_square() {
            return dim_err("pre-composition maps have the wrong shape");
        }
        let mut out = Product::zero(self.dim);
        for i in 0..self.dim {
            let fi = f.column(i);
            for j in 0..self.dim {
                let v = self.apply(&fi, &g.column(j))?;
                out.set_basis_product(i, j, &v);
            }
        }
        Ok(out)
    }

    /// The opposite product `(x, y) ↦ y ∘ x`.
    pub fn opposite(&self) -> Product {
        let mut out = Product::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out.set(j, i, k, self.get(i, j, k).clone());
                }
            }
        }
        out
    }

    /// Left multiplication L(e_i): y ↦ e_i ∘ y.
    pub fn left_mult(&self, i: usize) -> LinearMap {
        let mut m = LinearMap::zero(self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m.set(k, j, self.get(i, j, k).clone());
            }
        }
        m
    }

    /// Right multiplication R(e_j): x ↦ x ∘ e_j.
    pub fn right_mult(&self, j: usize) -> LinearMap {
        let mut m = LinearMap::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                m.set(k, i, self.get(i, j, k).clone());
            }
        }
        m
    }

    pub fn try_map_entries<E>(&self, f: impl Fn(&Scalar) -> std::result::Result<Scalar, E>) -> std::result::Result<Product, E> {
        Ok(Product { dim: self.dim, c: self.c.iter().map(f).collect::<std::result::Result<_, _>>()? })
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.c.iter()
    }
}

/// An element of A ⊗ A: coefficient (i, j) multiplies e_i ⊗ e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor2 {
    dim: usize,
    coeffs: Vec<Scalar>,
}

/// The element type of the tensor square.
pub type Tensor2Element = Tensor2;

impl Tensor2 {
    pub fn zero(dim: usize) -> Self {
        Tensor2 { dim, coeffs: vec![Scalar::zero(); dim * dim] }
    }

    /// e_i ⊗ e_j.
    pub fn basis(dim: usize, i: usize, j: usize) -> Self {
        let mut t = Tensor2::zero(dim);
        t.set(i, j, Scalar::one());
        t
    }

    pub fn from_matrix(m: &LinearMap) -> Result<Self> {
        if !m.is_square() {
            return dim_err("tensor coefficients must be square");
        }
        Ok(Tensor2 { dim: m.rows(), coeffs: m.entries().cloned().collect() })
    }

    pub fn to_matrix(&self) -> LinearMap {
        let rows = (0..self.dim).map(|i| self.coeffs[i * self.dim..(i + 1) * self.dim].to_vec()).collect();
        LinearMap::from_rows(rows).expect("square")
    }

    /// Flatten to a vector of length dim², index i·dim + j.
    pub fn flatten(&self) -> Vector {
        Vector(self.coeffs.clone())
    }

    pub fn from_flat(dim: usize, v: &Vector) -> Result<Self> {
        if v.len() != dim * dim {
            return dim_err("flat tensor has the wrong length");
        }
        Ok(Tensor2 { dim, coeffs: v.0.clone() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.coeffs[i * self.dim + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        Tensor2 { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        Tensor2 { dim: self.dim, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor2 {
        Tensor2 { dim: self.dim, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn render(&self, spec: &FieldSpec) -> String {
        self.to_matrix().render(spec)
    }
}

/// `(lhs ⊗ rhs)(e)`, whose coefficient matrix is `lhs · e · rhsᵀ`.
pub fn tensor_ops(e: &Tensor2, lhs: &LinearMap, rhs: &LinearMap) -> Result<Tensor2> {
    let n = e.dim();
    if lhs.rows() != n || lhs.cols() != n || rhs.rows() != n || rhs.cols() != n {
        return dim_err("tensor operator shape mismatch");
    }
    let m = lhs.compose(&e.to_matrix())?.compose(&rhs.transpose())?;
    Tensor2::from_matrix(&m)
}

/// The exchange σ(x ⊗ y) = y ⊗ x.
pub fn tensor_swap(e: &Tensor2) -> Tensor2 {
    Tensor2::from_matrix(&e.to_matrix().transpose()).expect("square")
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&FieldSpec::Rationals))
    }
}
