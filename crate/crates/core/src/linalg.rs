//! Exact integer and rational matrix kernels.
//!
//! Everything here is arbitrary precision. Matrices are stored row-major.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> Int {
    it.into_iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

macro_rules! matrix_common {
    ($name:ident, $elem:ty) => {
        impl $name {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self { rows, cols, data: vec![<$elem>::zero(); rows * cols] }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m.data[i * n + i] = <$elem>::one();
                }
                m
            }

            pub fn from_vec(rows: usize, cols: usize, data: Vec<$elem>) -> Self {
                assert_eq!(data.len(), rows * cols, "matrix data length");
                Self { rows, cols, data }
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

            pub fn get(&self, i: usize, j: usize) -> &$elem {
                &self.data[i * self.cols + j]
            }

            pub fn get_mut(&mut self, i: usize, j: usize) -> &mut $elem {
                &mut self.data[i * self.cols + j]
            }

            pub fn set(&mut self, i: usize, j: usize, v: $elem) {
                self.data[i * self.cols + j] = v;
            }

            pub fn row(&self, i: usize) -> Vec<$elem> {
                self.data[i * self.cols..(i + 1) * self.cols].to_vec()
            }

            pub fn col(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self.get(i, j).clone()).collect()
            }

            pub fn columns(&self) -> Vec<Vec<$elem>> {
                (0..self.cols).map(|j| self.col(j)).collect()
            }

            pub fn from_columns(rows: usize, cols: &[Vec<$elem>]) -> Self {
                let mut m = Self::zeros(rows, cols.len());
                for (j, c) in cols.iter().enumerate() {
                    assert_eq!(c.len(), rows, "column length");
                    for (i, v) in c.iter().enumerate() {
                        m.set(i, j, v.clone());
                    }
                }
                m
            }

            pub fn from_rows_vec(rows: &[Vec<$elem>]) -> Self {
                let r = rows.len();
                let c = rows.first().map_or(0, |x| x.len());
                let mut data = Vec::with_capacity(r * c);
                for row in rows {
                    assert_eq!(row.len(), c, "ragged rows");
                    data.extend(row.iter().cloned());
                }
                Self { rows: r, cols: c, data }
            }

            pub fn to_rows(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i)).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t.set(j, i, self.get(i, j).clone());
                    }
                }
                t
            }

            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "matrix product dimensions");
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let b = other.get(k, j);
                            if !b.is_zero() {
                                let prod = a * b;
                                *out.get_mut(i, j) += prod;
                            }
                        }
                    }
                }
                out
            }

            pub fn mul_vec(&self, v: &[$elem]) -> Vec<$elem> {
                assert_eq!(self.cols, v.len(), "matrix-vector dimensions");
                (0..self.rows)
                    .map(|i| {
                        let mut acc = <$elem>::zero();
                        for (k, x) in v.iter().enumerate() {
                            let a = self.get(i, k);
                            if !a.is_zero() && !x.is_zero() {
                                acc += a * x;
                            }
                        }
                        acc
                    })
                    .collect()
            }

            pub fn is_symmetric(&self) -> bool {
                self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
            }

            pub fn hstack(&self, other: &Self) -> Self {
                assert_eq!(self.rows, other.rows, "hstack rows");
                let mut out = Self::zeros(self.rows, self.cols + other.cols);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        out.set(i, j, self.get(i, j).clone());
                    }
                    for j in 0..other.cols {
                        out.set(i, self.cols + j, other.get(i, j).clone());
                    }
                }
                out
            }

            pub fn select_columns(&self, idx: &[usize]) -> Self {
                let mut out = Self::zeros(self.rows, idx.len());
                for (jj, &j) in idx.iter().enumerate() {
                    for i in 0..self.rows {
                        out.set(i, jj, self.get(i, j).clone());
                    }
                }
                out
            }

            pub fn block_diagonal(blocks: &[Self]) -> Self {
                let r: usize = blocks.iter().map(|b| b.rows).sum();
                let c: usize = blocks.iter().map(|b| b.cols).sum();
                let mut out = Self::zeros(r, c);
                let (mut r0, mut c0) = (0, 0);
                for b in blocks {
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                    r0 += b.rows;
                    c0 += b.cols;
                }
                out
            }

            fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }

            fn swap_cols(&mut self, a: usize, b: usize) {
                if a != b {
                    for i in 0..self.rows {
                        self.data.swap(i * self.cols + a, i * self.cols + b);
                    }
                }
            }

            /// row[dst] += k * row[src]
            fn add_row_multiple(&mut self, dst: usize, src: usize, k: &$elem) {
                if k.is_zero() {
                    return;
                }
                for j in 0..self.cols {
                    let v = self.get(src, j);
                    if !v.is_zero() {
                        let d = k * v;
                        *self.get_mut(dst, j) += d;
                    }
                }
            }

            /// col[dst] += k * col[src]
            fn add_col_multiple(&mut self, dst: usize, src: usize, k: &$elem) {
                if k.is_zero() {
                    return;
                }
                for i in 0..self.rows {
                    let v = self.get(i, src);
                    if !v.is_zero() {
                        let d = k * v;
                        *self.get_mut(i, dst) += d;
                    }
                }
            }

            #[allow(dead_code)]
            fn negate_row(&mut self, r: usize) {
                for j in 0..self.cols {
                    let v = -self.get(r, j).clone();
                    self.set(r, j, v);
                }
            }

            #[allow(dead_code)]
            fn negate_col(&mut self, c: usize) {
                for i in 0..self.rows {
                    let v = -self.get(i, c).clone();
                    self.set(i, c, v);
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in 0..self.rows {
                    let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                    writeln!(f, "[{}]", row.join(", "))?;
                }
                Ok(())
            }
        }
    };
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Dense matrix of arbitrary-precision rationals in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

matrix_common!(IntMatrix, Int);
matrix_common!(RatMatrix, Rat);

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vec<Int>> = rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows_vec(&r)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(rat_int).collect() }
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }
}

impl RatMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_i64_rows(rows).to_rat()
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimensions");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference dimensions");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.to_integer()).collect() })
    }

    pub fn denominator(&self) -> Int {
        common_denominator(&self.data)
    }

    /// Multiply by the common denominator and return the integer matrix and that denominator.
    pub fn clear_denominators(&self) -> (IntMatrix, Int) {
        let d = self.denominator();
        let data = self.data.iter().map(|x| (x * rat_int(&d)).to_integer()).collect();
        (IntMatrix { rows: self.rows, cols: self.cols, data }, d)
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let k = -m.get(i, c).clone();
                    m.add_row_multiple(i, r, &k);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : self·x = 0}, one column per free variable.
    pub fn kernel(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Rat::one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(row, f).clone());
            }
        }
        out
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else { return Rat::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if !m.get(i, c).is_zero() {
                    let k = -(m.get(i, c) / &piv);
                    m.add_row_multiple(i, c, &k);
                }
            }
        }
        det
    }
}

/// Result of a Smith normal form computation: `u · m · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Positive elementary divisors, each dividing the next.
    pub divisors: Vec<Int>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Diagonal of `d` including trailing zeros.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let piv = a.get(t, t).clone();
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t) / &piv);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j) / &piv);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }
            let row_left = (t + 1..rows).find(|&i| !a.get(i, t).is_zero());
            let col_left = (t + 1..cols).find(|&j| !a.get(t, j).is_zero());
            if row_left.is_some() || col_left.is_some() {
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |i: usize, j: usize, a: &IntMatrix| {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                };
                for i in t + 1..rows {
                    consider(i, t, &a);
                }
                for j in t + 1..cols {
                    consider(t, j, &a);
                }
                let (bi, bj) = best.expect("nonzero remainder");
                if bj == t {
                    a.swap_rows(t, bi);
                    u.swap_rows(t, bi);
                } else {
                    a.swap_cols(t, bj);
                    v.swap_cols(t, bj);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&piv));
            match bad {
                Some((i, _)) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).filter(|x| !x.is_zero()).collect();
    SmithDecomposition { u, v, d: a, divisors }
}

fn min_abs_entry(a: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &ax < b) {
                let done = ax.is_one();
                best = Some((i, j, ax));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Hermite normal form of the row module: nonzero rows in echelon form,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..a.rows() {
                let x = a.get(i, c);
                if !x.is_zero() && best.is_none_or(|b| x.abs() < a.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let piv = a.get(r, c).clone();
            let mut clean = true;
            for i in r + 1..a.rows() {
                if !a.get(i, c).is_zero() {
                    let q = -a.get(i, c).div_floor(&piv);
                    a.add_row_multiple(i, r, &q);
                    if !a.get(i, c).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < a.rows() && !a.get(r, c).is_zero() {
            if a.get(r, c).is_negative() {
                a.negate_row(r);
            }
            let piv = a.get(r, c).clone();
            for i in 0..r {
                let q = -a.get(i, c).div_floor(&piv);
                a.add_row_multiple(i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }
    }
    let rows: Vec<Vec<Int>> = (0..r).map(|i| a.row(i)).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, a.cols());
    }
    IntMatrix::from_rows_vec(&rows)
}

/// Column-style Hermite basis of the integer module generated by the columns of `m`.
pub fn hermite_columns(m: &IntMatrix) -> IntMatrix {
    let h = hermite_rows(&m.transpose());
    if h.rows() == 0 {
        return IntMatrix::zeros(m.rows(), 0);
    }
    h.transpose()
}

/// Integer basis of the module generated by the rational columns of `m`,
/// in canonical (Hermite) form.
pub fn module_basis(m: &RatMatrix) -> RatMatrix {
    let (im, d) = m.clear_denominators();
    let h = hermite_columns(&im);
    h.to_rat().scale(&Rat::new(Int::one(), d))
}

/// Solve `a·x = b` exactly; `None` when inconsistent.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let bm = RatMatrix::from_columns(a.rows(), &[b.to_vec()]);
    solve_many(a, &bm).map(|x| x.col(0))
}

/// Solve `a·X = B` for all columns of `B` at once; `None` when any column is inconsistent.
pub fn solve_many(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve dimensions");
    let n = a.cols();
    let aug = a.hstack(b);
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = RatMatrix::zeros(n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(row, n + j).clone());
        }
    }
    Some(x)
}

pub fn rational_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let (r, pivots) = m.hstack(&RatMatrix::identity(n)).rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Ok(r.select_columns(&idx))
}

/// `(n_plus, n_zero, n_minus)` by exact symmetric reduction.
pub fn signature(g: &RatMatrix) -> Result<(usize, usize, usize)> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut a = g.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !a.get(i, i).is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero());
                let Some((i, j)) = off else { break };
                let one = Rat::one();
                a.add_row_multiple(i, j, &one);
                a.add_col_multiple(i, j, &one);
                i
            }
        };
        a.swap_rows(k, p);
        a.swap_cols(k, p);
        let piv = a.get(k, k).clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if !a.get(i, k).is_zero() {
                let q = -(a.get(i, k) / &piv);
                a.add_row_multiple(i, k, &q);
                a.add_col_multiple(i, k, &q);
            }
        }
        k += 1;
    }
    Ok((pos, n - pos - neg, neg))
}

/// Columns spanning the saturation of the column module of an integer matrix in `Z^rows`.
pub fn saturate_columns(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let uinv = rational_inverse(&snf.u.to_rat()).expect("unimodular").to_int().expect("unimodular inverse is integral");
    let idx: Vec<usize> = (0..r).collect();
    hermite_columns(&uinv.select_columns(&idx))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc + x * y })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> IntMatrix {
        IntMatrix::from_i64_rows(&[vec![-2, 1], vec![1, -2]])
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.divisors, vec![int(1), int(1), int(1)]);
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_a2_gram() {
        let m = a2();
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![int(1), int(3)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_rank_deficient_zero_trailing() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 0, 0], vec![0, 4, 6], vec![0, 2, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![int(1)]);
        assert_eq!(s.diagonal(), vec![int(1), int(0), int(0)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn solve_a2() {
        let x = solve_rational(&a2().to_rat(), &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(x, vec![rat(-2, 3), rat(-1, 3)]);
        assert_eq!(solve_rational(&RatMatrix::from_i64_rows(&[vec![2]]), &[rat(1, 1)]).unwrap(), vec![rat(1, 2)]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = RatMatrix::from_i64_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(solve_rational(&a, &[rat(1, 1), rat(3, 1)]).is_none());
    }

    #[test]
    fn inverse_examples() {
        let inv = rational_inverse(&a2().to_rat()).unwrap();
        let expected = RatMatrix::from_i64_rows(&[vec![-2, -1], vec![-1, -2]]).scale(&rat(1, 3));
        assert_eq!(inv, expected);
        let d = RatMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            rational_inverse(&d).unwrap(),
            RatMatrix::from_vec(2, 2, vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 3)])
        );
        assert_eq!(rational_inverse(&RatMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn module_basis_examples() {
        let m = RatMatrix::from_i64_rows(&[vec![1, 2], vec![0, 0]]);
        let b = module_basis(&m);
        assert_eq!(b, RatMatrix::from_i64_rows(&[vec![1], vec![0]]));
        let m = RatMatrix::from_vec(2, 2, vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 1)]);
        let b = module_basis(&m);
        assert_eq!(b.cols(), 2);
        assert_eq!(b.det().abs(), rat(1, 2));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&RatMatrix::from_i64_rows(&[vec![-2]])).unwrap(), (0, 0, 1));
        assert_eq!(signature(&RatMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])).unwrap(), (1, 0, 1));
        assert_eq!(signature(&RatMatrix::from_i64_rows(&[vec![0, 0], vec![0, -2]])).unwrap(), (0, 1, 1));
        assert_eq!(signature(&RatMatrix::from_i64_rows(&[vec![0, 1], vec![2, 0]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 2, 1], vec![3, -1, 4], vec![5, 9, -2]]);
        assert_eq!(rat_int(&m.det()), m.to_rat().det());
    }

    #[test]
    fn saturation_of_doubled_vector() {
        let m = IntMatrix::from_i64_rows(&[vec![2], vec![4], vec![0]]);
        let s = saturate_columns(&m);
        assert_eq!(s, IntMatrix::from_i64_rows(&[vec![1], vec![2], vec![0]]));
    }
}
