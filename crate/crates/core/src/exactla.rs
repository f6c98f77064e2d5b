//! Exact rational scalars, dense matrices, coefficient tensors and the
//! elimination routines (rank, kernel, solve, inverse) everything else is
//! built on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub type Vector = Vec<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. A zero denominator is an error.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse {
        path: String::new(),
        message: format!("unparseable rational {text:?}"),
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse {
                    path: String::new(),
                    message: format!("zero denominator in {text:?}"),
                });
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn render_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(s: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`, skipping the work when `s` is zero.
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(render_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, value: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(s, &self.data),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exponent {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m[(pivot_row, col)].recip();
            for c in col..m.cols {
                let v = &m[(pivot_row, c)] * &inv;
                m[(pivot_row, c)] = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(pivot_row, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(pivot_row, c)];
                    m[(r, c)] -= delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (reduced, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse; `None` when the matrix is singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = reduced[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// True when the column spans of `self` and `other` coincide.
    pub fn same_column_span(&self, other: &Matrix) -> bool {
        if self.rows != other.rows {
            return false;
        }
        let r = self.rank();
        if r != other.rank() {
            return false;
        }
        let mut joined = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                joined[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                joined[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        joined.rank() == r
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Rational::one())
    }
}

pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn mat_kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

pub fn solve_linear(m: &Matrix, b: &[Rational]) -> Option<Vector> {
    m.solve(b)
}

/// Coefficients of a multilinear map `X^{⊗n} → Y` with respect to fixed
/// bases: entry `(i₁,…,iₙ,k)` is the `k`-th coordinate of the image of the
/// basis tuple `(e_{i₁},…,e_{iₙ})`.
///
/// Input and output dimensions may differ, which lets the same type carry
/// structure constants (`X = Y`) as well as cochains `M^{⊗n} → A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffTensor {
    arity: usize,
    in_dim: usize,
    out_dim: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for CoeffTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoeffTensor(arity {}, {} -> {}) {{",
            self.arity, self.in_dim, self.out_dim
        )?;
        let mut first = true;
        for (idx, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let tuple = self.unflatten(idx / self.out_dim.max(1));
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(
                f,
                "{:?}->{}:{}",
                tuple,
                idx % self.out_dim,
                render_rational(v)
            )?;
        }
        write!(f, "}}")
    }
}

impl CoeffTensor {
    pub fn zeros(arity: usize, in_dim: usize, out_dim: usize) -> Self {
        let len = in_dim.pow(arity as u32) * out_dim;
        Self {
            arity,
            in_dim,
            out_dim,
            data: vec![Rational::zero(); len],
        }
    }

    /// Square tensor with equal input and output dimension.
    pub fn square(arity: usize, dim: usize) -> Self {
        Self::zeros(arity, dim, dim)
    }

    pub fn from_vec(
        arity: usize,
        in_dim: usize,
        out_dim: usize,
        data: Vec<Rational>,
    ) -> Result<Self> {
        let expected = in_dim.pow(arity as u32) * out_dim;
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "tensor of arity {arity} ({in_dim} -> {out_dim}) needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(Self {
            arity,
            in_dim,
            out_dim,
            data,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    /// Number of basis input tuples, `in_dim^arity`.
    pub fn tuple_count(&self) -> usize {
        self.in_dim.pow(self.arity as u32)
    }

    pub fn flatten(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &i| acc * self.in_dim + i)
    }

    pub fn unflatten(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.arity];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.in_dim;
            index /= self.in_dim;
        }
        tuple
    }

    pub fn get(&self, tuple: &[usize], out: usize) -> &Rational {
        &self.data[self.flatten(tuple) * self.out_dim + out]
    }

    pub fn set(&mut self, tuple: &[usize], out: usize, value: Rational) {
        let idx = self.flatten(tuple) * self.out_dim + out;
        self.data[idx] = value;
    }

    /// Image of a basis tuple.
    pub fn image(&self, tuple: &[usize]) -> &[Rational] {
        let start = self.flatten(tuple) * self.out_dim;
        &self.data[start..start + self.out_dim]
    }

    pub fn image_at(&self, flat: usize) -> &[Rational] {
        &self.data[flat * self.out_dim..(flat + 1) * self.out_dim]
    }

    pub fn image_at_mut(&mut self, flat: usize) -> &mut [Rational] {
        let od = self.out_dim;
        &mut self.data[flat * od..(flat + 1) * od]
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = zero_vector(self.out_dim);
        for flat in 0..self.tuple_count() {
            let tuple = self.unflatten(flat);
            let mut coeff = Rational::one();
            for (slot, &i) in tuple.iter().enumerate() {
                let x = &args[slot][i];
                if x.is_zero() {
                    coeff = Rational::zero();
                    break;
                }
                coeff *= x;
            }
            axpy(&mut out, &coeff, self.image_at(flat));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            data: scale_vector(s, &self.data),
            ..self.clone()
        }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.arity == other.arity && self.in_dim == other.in_dim && self.out_dim == other.out_dim
    }

    /// First basis tuple where the image is nonzero, with that image.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vector)> {
        (0..self.tuple_count()).find_map(|flat| {
            let img = self.image_at(flat);
            (!is_zero_vector(img)).then(|| (self.unflatten(flat), img.to_vec()))
        })
    }
}

impl Add for &CoeffTensor {
    type Output = CoeffTensor;
    fn add(self, rhs: &CoeffTensor) -> CoeffTensor {
        assert!(self.same_shape(rhs), "tensor shape mismatch");
        CoeffTensor {
            data: add_vectors(&self.data, &rhs.data),
            ..self.clone()
        }
    }
}

impl Sub for &CoeffTensor {
    type Output = CoeffTensor;
    fn sub(self, rhs: &CoeffTensor) -> CoeffTensor {
        assert!(self.same_shape(rhs), "tensor shape mismatch");
        CoeffTensor {
            data: sub_vectors(&self.data, &rhs.data),
            ..self.clone()
        }
    }
}

/// Iterates all tuples in `[0, base)^len` in lexicographic order.
pub fn tuples(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % base;
            idx /= base;
        }
        t
    })
}

pub fn abs_max(values: &[Rational]) -> Rational {
    values
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 3).kernel_basis().len(), 3);
        let k = Matrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            Matrix::identity(2).solve(&[q(1), q(2)]),
            Some(vec![q(1), q(2)])
        );
        assert_eq!(Matrix::zeros(2, 2).solve(&[q(1), q(0)]), None);
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(&x[0] + q(2) * &x[1], q(1));
        assert_eq!(m.solve(&[q(1), q(3)]), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(render_rational(&frac(6, -4)), "-3/2");
        assert_eq!(render_rational(&q(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn tensor_eval_matches_basis_images() {
        let mut t = CoeffTensor::square(2, 2);
        t.set(&[0, 0], 1, q(1));
        t.set(&[0, 1], 0, q(3));
        let e0 = unit_vector(2, 0);
        let e1 = unit_vector(2, 1);
        assert_eq!(t.eval(&[&e0, &e0]), vec![q(0), q(1)]);
        let x = vec![q(2), q(1)];
        // (2e0+e1)(e1) = 2*e0e1 = 6 e0
        assert_eq!(t.eval(&[&x, &e1]), vec![q(6), q(0)]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c)
                .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(q).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(is_zero_vector(&m.apply(v)));
            }
        }

        #[test]
        fn rational_render_parse_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            let value = frac(n, d);
            prop_assert_eq!(parse_rational(&render_rational(&value)).unwrap(), value);
        }
    }
}
