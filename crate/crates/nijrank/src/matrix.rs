//! Dense exact matrices over the Gaussian rationals.
//!
//! Inversion and determinants run ordinary Gauss-Jordan elimination in the
//! field; ranks go through fraction-free (Bareiss) elimination over the
//! Gaussian integers after clearing denominators row by row, which keeps
//! intermediate entries from exploding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use std::ops::Div;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_ref(b);
                    out[(r, c)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    /// Vertical stack `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Determinant and inverse. Returns `(det, Some(inverse))`, or
    /// `(0, None)` for singular input.
    pub fn det_inverse(&self) -> Result<(GaussianRational, Option<Matrix>)> {
        match self.det_inverse_scaled()? {
            (det, Some((adj, kappa))) => Ok((det, Some(adj.scale(&kappa)))),
            (det, None) => Ok((det, None)),
        }
    }

    /// Determinant plus the inverse in scaled form `M^{-1} = kappa * K`,
    /// where `K` has Gaussian-integer entries. Hot paths work with `K`
    /// directly and fold `kappa` in once at the end.
    ///
    /// Runs fraction-free (Bareiss) elimination over the Gaussian integers
    /// after clearing denominators, followed by all-integer back
    /// substitution for the adjugate columns. No rational reductions happen
    /// in the elimination loops.
    pub fn det_inverse_scaled(
        &self,
    ) -> Result<(GaussianRational, Option<(Matrix, GaussianRational)>)> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok((GaussianRational::one(), Some((Matrix::zero(0, 0), GaussianRational::one()))));
        }
        // N = L * M with Gaussian-integer entries
        let mut lcm = BigInt::one();
        for x in &self.data {
            lcm = lcm.lcm(x.re().denom());
            lcm = lcm.lcm(x.im().denom());
        }
        let to_int = |x: &GaussianRational| GaussInt {
            re: x.re().numer() * (&lcm / x.re().denom()),
            im: x.im().numer() * (&lcm / x.im().denom()),
        };
        // augmented [N | I]
        let mut a: Vec<Vec<GaussInt>> = (0..n)
            .map(|r| {
                let mut row: Vec<GaussInt> = self.row(r).iter().map(to_int).collect();
                row.extend((0..n).map(|c| {
                    if c == r {
                        GaussInt::one()
                    } else {
                        GaussInt::zero()
                    }
                }));
                row
            })
            .collect();

        let mut sign_flip = false;
        let mut prev = GaussInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok((GaussianRational::zero(), None));
            };
            if p != k {
                a.swap(p, k);
                sign_flip = !sign_flip;
            }
            for r in k + 1..n {
                for c in k + 1..2 * n {
                    let t = a[r][c].mul(&a[k][k]).sub(&a[r][k].mul(&a[k][c]));
                    a[r][c] = t.div_exact(&prev);
                }
                a[r][k] = GaussInt::zero();
            }
            prev = a[k][k].clone();
        }
        // det(N) with the swap sign folded in
        let det_n = if sign_flip { a[n - 1][n - 1].neg() } else { a[n - 1][n - 1].clone() };

        // Back-substitute U K = det(N) * B in integers; K is the adjugate
        // of N, so every division is exact.
        let mut adj = Matrix::zero(n, n);
        for col in 0..n {
            let mut x: Vec<GaussInt> = vec![GaussInt::zero(); n];
            for i in (0..n).rev() {
                let mut acc = det_n.mul(&a[i][n + col]);
                for j in i + 1..n {
                    acc = acc.sub(&a[i][j].mul(&x[j]));
                }
                x[i] = acc.div_exact(&a[i][i]);
            }
            for (i, v) in x.into_iter().enumerate() {
                adj[(i, col)] = v.to_scalar();
            }
        }

        // det(M) = det(N) / L^n; M^{-1} = L * N^{-1} = (L / det(N)) * adj
        let l_rat = GaussianRational::from_rational(Rational::from_integer(lcm));
        let mut l_pow = GaussianRational::one();
        for _ in 0..n {
            l_pow = l_pow.mul_ref(&l_rat);
        }
        let det_scalar = det_n.to_scalar();
        let det_m = det_scalar.clone().div(l_pow);
        let kappa = l_rat.div(det_scalar);
        Ok((det_m, Some((adj, kappa))))
    }

    pub fn determinant(&self) -> Result<GaussianRational> {
        Ok(self.det_inverse_scaled()?.0)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        match self.det_inverse()?.1 {
            Some(inv) => Ok(inv),
            None => Err(Error::SingularMatrix),
        }
    }

    /// Exact rank by fraction-free elimination over the Gaussian integers.
    pub fn rank(&self) -> usize {
        bareiss_rank(self)
    }

    /// Rows of canonical scalar strings, for JSON payloads and catalog data.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed: Vec<Vec<GaussianRational>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }

    /// Greedy row selection: returns the indices of the first maximal set
    /// of linearly independent rows, scanning top to bottom (a row is kept
    /// exactly when it raises the rank of the prefix).
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut picked: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for r in 0..self.rows {
            let mut rows = picked.clone();
            rows.push(r);
            let sub = Matrix::from_fn(rows.len(), self.cols, |i, c| self[(rows[i], c)].clone());
            if sub.rank() > rank {
                rank += 1;
                picked.push(r);
            }
        }
        picked
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gaussian integer, used inside fraction-free elimination.
#[derive(Clone, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn neg(&self) -> GaussInt {
        GaussInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn mul(&self, other: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn sub(&self, other: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    fn to_scalar(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }

    /// Exact division; the caller guarantees divisibility (Sylvester's
    /// identity in the elimination, adjugate integrality in the back
    /// substitution).
    fn div_exact(&self, other: &GaussInt) -> GaussInt {
        let norm = &other.re * &other.re + &other.im * &other.im;
        let conj = GaussInt {
            re: other.re.clone(),
            im: -other.im.clone(),
        };
        let num = self.mul(&conj);
        let (qr, rr) = num.re.div_rem(&norm);
        let (qi, ri) = num.im.div_rem(&norm);
        debug_assert!(rr.is_zero() && ri.is_zero(), "non-exact fraction-free division");
        GaussInt { re: qr, im: qi }
    }
}

fn bareiss_rank(m: &Matrix) -> usize {
    let rows = m.nrows();
    let cols = m.ncols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    // Clear denominators row by row (row scaling preserves rank).
    let mut a: Vec<Vec<GaussInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut lcm = BigInt::one();
        for x in m.row(r) {
            lcm = lcm.lcm(x.re().denom());
            lcm = lcm.lcm(x.im().denom());
        }
        let row: Vec<GaussInt> = m
            .row(r)
            .iter()
            .map(|x| GaussInt {
                re: x.re().numer() * (&lcm / x.re().denom()),
                im: x.im().numer() * (&lcm / x.im().denom()),
            })
            .collect();
        a.push(row);
    }

    let mut rank = 0usize;
    let mut prev = GaussInt {
        re: BigInt::one(),
        im: BigInt::zero(),
    };
    let mut pivot_cols: Vec<bool> = vec![false; cols];
    for _step in 0..rows.min(cols) {
        // Find any nonzero entry in the remaining submatrix.
        let mut found = None;
        'outer: for r in rank..rows {
            for c in 0..cols {
                if !pivot_cols[c] && !a[r][c].is_zero() {
                    found = Some((r, c));
                    break 'outer;
                }
            }
        }
        let Some((pr, pc)) = found else { break };
        a.swap(rank, pr);
        let pivot = a[rank][pc].clone();
        for r in rank + 1..rows {
            for c in 0..cols {
                if c == pc || pivot_cols[c] {
                    continue;
                }
                let t = a[r][c].mul(&pivot).sub(&a[r][pc].mul(&a[rank][c]));
                a[r][c] = t.div_exact(&prev);
            }
            a[r][pc] = GaussInt::zero();
        }
        pivot_cols[pc] = true;
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a matrix with rational entries, via the Gaussian-rational path.
pub fn rational_matrix_rank(rows: &[Vec<Rational>]) -> usize {
    let m = Matrix::from_fn(rows.len(), rows.first().map_or(0, Vec::len), |r, c| {
        GaussianRational::from_rational(rows[r][c].clone())
    });
    m.rank()
}
