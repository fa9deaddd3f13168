//! Almost complex structures on a Lie algebra, presented by co-frames of
//! (1,0)-forms, together with the deformation machinery, the mu-bar matrix
//! whose rank is the rank of the Nijenhuis tensor, and an independent
//! bracket-based oracle for that rank.
//!
//! A [`CoFrame`] is an `m x 2m` complex matrix `W`; row `j` is the (1,0)-form
//! `omega^j` in the `e`-basis. It is valid exactly when the stacked frame
//! `[W; conj(W)]` is invertible, which already forces the induced real
//! endomorphism to square to `-Id`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::Div;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::exterior::{change_frame, expand_in_frame, FrameMatrix, KForm, LieAlgebra};
use crate::matrix::Matrix;
use crate::scalar::{rat, GaussianRational, Rational};

/// Co-frame of (1,0)-forms defining an almost complex structure.
#[derive(Clone)]
pub struct CoFrame {
    half_dim: usize,
    rows: Matrix,
    frame: FrameMatrix,
}

impl PartialEq for CoFrame {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl std::fmt::Debug for CoFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoFrame(m={}, rows={:?})", self.half_dim, self.rows)
    }
}

impl CoFrame {
    /// Validates that `[W; conj(W)]` is invertible.
    pub fn new(rows: Matrix) -> Result<Self> {
        let m = rows.nrows();
        if rows.ncols() != 2 * m || m == 0 {
            return Err(Error::DimensionMismatch {
                expected: 2 * m,
                found: rows.ncols(),
            });
        }
        let stacked = rows.vstack(&rows.conj())?;
        let frame = FrameMatrix::new(stacked)?;
        Ok(CoFrame {
            half_dim: m,
            rows,
            frame,
        })
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        CoFrame::new(Matrix::from_string_rows(rows)?)
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    /// The cached invertible `2m x 2m` frame `[W; conj(W)]`.
    pub fn frame_matrix(&self) -> &FrameMatrix {
        &self.frame
    }

    /// Row `j` (1-based) as a 1-form in the `e`-basis.
    pub fn row_form(&self, j: usize) -> KForm {
        let dim = self.dim();
        let mut out = KForm::zero(dim, 1);
        for b in 0..dim {
            let c = self.rows[(j - 1, b)].clone();
            if !c.is_zero() {
                out = out
                    .add(&KForm::term(dim, &[(b + 1) as u8], c).expect("index in range"))
                    .expect("degree 1");
            }
        }
        out
    }

    /// Co-frame deformation `W + Phi * conj(W)`; fails with a singular-
    /// deformation error when `det P = 0`.
    pub fn deform(&self, params: &DeformationParams) -> Result<CoFrame> {
        if params.phi.nrows() != self.half_dim {
            return Err(Error::DimensionMismatch {
                expected: self.half_dim,
                found: params.phi.nrows(),
            });
        }
        let new_rows = self.rows.add(&params.phi.mul(&self.rows.conj())?)?;
        CoFrame::new(new_rows).map_err(|e| match e {
            Error::SingularFrame => Error::SingularDeformation {
                phi: format!("{:?}", params.phi),
            },
            other => other,
        })
    }

    /// Do these co-frames define the same almost complex structure?
    pub fn same_structure(&self, other: &CoFrame) -> bool {
        self.half_dim == other.half_dim
            && self
                .rows
                .vstack(&other.rows)
                .map(|s| s.rank() == self.half_dim)
                .unwrap_or(false)
    }
}

/// The `phi^j = e^{2j-1} + i e^{2j}` structure.
pub fn standard_acs(m: usize) -> CoFrame {
    let mut rows = Matrix::zero(m, 2 * m);
    for j in 0..m {
        rows[(j, 2 * j)] = GaussianRational::one();
        rows[(j, 2 * j + 1)] = GaussianRational::i();
    }
    CoFrame::new(rows).expect("standard frame is invertible")
}

/// The deformation matrix `Phi = (f^j_k)`.
#[derive(Clone, PartialEq, Debug)]
pub struct DeformationParams {
    phi: Matrix,
}

impl DeformationParams {
    pub fn new(phi: Matrix) -> Result<Self> {
        if phi.nrows() != phi.ncols() {
            return Err(Error::DimensionMismatch {
                expected: phi.nrows(),
                found: phi.ncols(),
            });
        }
        Ok(DeformationParams { phi })
    }

    pub fn zero(m: usize) -> Self {
        DeformationParams {
            phi: Matrix::zero(m, m),
        }
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        DeformationParams::new(Matrix::from_string_rows(rows)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.phi
    }

    pub fn half_dim(&self) -> usize {
        self.phi.nrows()
    }

    /// `s * Phi`, the direction scaled along a curve parameter.
    pub fn scaled(&self, s: &GaussianRational) -> Self {
        DeformationParams {
            phi: self.phi.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phi.is_zero()
    }
}

/// Column order of the mu-bar matrix: pairs `(k, l)`, `k < l`, lexicographic.
pub fn column_pairs(m: usize) -> Vec<(u8, u8)> {
    let mut v = Vec::with_capacity(m * (m.max(1) - 1) / 2);
    for k in 1..=m as u8 {
        for l in (k + 1)..=m as u8 {
            v.push((k, l));
        }
    }
    v
}

/// The matrix of `mu-bar`: entry `(j, (k,l))` is the coefficient of
/// `omega^{k-bar l-bar}` in the (0,2)-part of `d omega^j`, written in the
/// co-frame itself. Its rank is the rank of the Nijenhuis tensor.
#[derive(Clone, PartialEq, Debug)]
pub struct MuBarMatrix {
    half_dim: usize,
    mat: Matrix,
}

impl MuBarMatrix {
    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Coefficient of `omega^{k-bar l-bar}` in `mu-bar omega^j` (1-based).
    pub fn entry(&self, j: usize, k: usize, l: usize) -> &GaussianRational {
        let col = column_pairs(self.half_dim)
            .iter()
            .position(|&(a, b)| (a as usize, b as usize) == (k, l))
            .expect("column pair in range");
        &self.mat[(j - 1, col)]
    }

    /// Exact rank over the complex numbers (fraction-free elimination).
    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    /// Rank 0 exactly when every entry vanishes: integrability.
    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }
}

/// Computes the mu-bar matrix of `j` over `g`: differentiate each row form,
/// rewrite in the frame `[W; conj(W)]` by exact inversion, and keep the
/// coefficients on the conjugate-pair basis 2-forms.
pub fn mu_bar(g: &LieAlgebra, j: &CoFrame) -> Result<MuBarMatrix> {
    let m = j.half_dim();
    if g.dim() != 2 * m {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: 2 * m,
        });
    }
    let (adj, kappa) = j.frame_matrix().inverse_scaled();
    let kappa_sq = kappa.mul_ref(kappa);
    let pairs = column_pairs(m);
    // Integer complex arithmetic throughout the accumulation: the adjugate
    // is integral, and each differential row gets its denominators cleared
    // up front. One rational rescale per matrix entry at the end.
    let adj_int = |r: usize, c: usize| -> (BigInt, BigInt) {
        let v = &adj[(r, c)];
        (v.re().numer().clone(), v.im().numer().clone())
    };
    let cplx_mul = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| -> (BigInt, BigInt) {
        (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
    };
    let mut mat = Matrix::zero(m, pairs.len());
    for row in 1..=m {
        let d_omega = g.differential(&j.row_form(row))?;
        if d_omega.is_zero() {
            continue;
        }
        let mut denom = BigInt::one();
        for (_, c) in d_omega.terms() {
            denom = denom.lcm(c.re().denom());
            denom = denom.lcm(c.im().denom());
        }
        let terms: Vec<((usize, usize), (BigInt, BigInt))> = d_omega
            .terms()
            .map(|(key, c)| {
                let re = c.re().numer() * (&denom / c.re().denom());
                let im = c.im().numer() * (&denom / c.im().denom());
                ((key[0] as usize - 1, key[1] as usize - 1), (re, im))
            })
            .collect();
        let scale = kappa_sq.clone().div(GaussianRational::from_rational(
            Rational::from_integer(denom),
        ));
        for (col, &(k, l)) in pairs.iter().enumerate() {
            // 0-based columns of the inverse frame for omega^{k-bar},
            // omega^{l-bar}; entry = sum of 2x2 adjugate minors
            let ck = m + k as usize - 1;
            let cl = m + l as usize - 1;
            let mut acc = (BigInt::zero(), BigInt::zero());
            for ((a, b), c) in &terms {
                let minor_a = cplx_mul(&adj_int(*a, ck), &adj_int(*b, cl));
                let minor_b = cplx_mul(&adj_int(*a, cl), &adj_int(*b, ck));
                let minor = (minor_a.0 - minor_b.0, minor_a.1 - minor_b.1);
                let t = cplx_mul(c, &minor);
                acc.0 += t.0;
                acc.1 += t.1;
            }
            if !acc.0.is_zero() || !acc.1.is_zero() {
                let v = GaussianRational::new(
                    Rational::from_integer(acc.0),
                    Rational::from_integer(acc.1),
                );
                mat[(row - 1, col)] = v.mul_ref(&scale);
            }
        }
    }
    Ok(MuBarMatrix { half_dim: m, mat })
}

/// The real endomorphism `J` of the underlying vector space whose dual
/// `+i`-eigenspace is the row span of the co-frame. Entries are rational;
/// `J^2 = -Id` holds exactly.
#[derive(Clone, PartialEq, Debug)]
pub struct RealJ {
    mat: Matrix,
}

impl RealJ {
    /// Validates realness and `J^2 = -Id`.
    pub fn new(mat: Matrix) -> Result<Self> {
        let n = mat.nrows();
        if mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mat.ncols(),
            });
        }
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        if !mat.is_real() {
            return Err(Error::InvalidJ("matrix has non-real entries".into()));
        }
        let sq = mat.mul(&mat)?;
        if sq != Matrix::identity(n).neg() {
            return Err(Error::InvalidJ("J^2 != -Id".into()));
        }
        Ok(RealJ { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Entry `J^r_c` (1-based): the coefficient of `e^c` in `J* e^r`.
    pub fn entry(&self, r: usize, c: usize) -> Rational {
        self.mat[(r - 1, c - 1)].re().clone()
    }
}

/// Extracts the real endomorphism from a co-frame: `J = F^{-1} L F` with
/// `L = diag(i, .., i, -i, .., -i)`, which is automatically real.
pub fn real_j(j: &CoFrame) -> RealJ {
    let m = j.half_dim();
    let f = j.frame_matrix();
    let lam_f = Matrix::from_fn(2 * m, 2 * m, |r, c| {
        let v = f.matrix()[(r, c)].mul_ref(&GaussianRational::i());
        if r < m {
            v
        } else {
            -v
        }
    });
    let (adj, kappa) = f.inverse_scaled();
    let mat = adj.mul(&lam_f).expect("square matrices").scale(kappa);
    RealJ::new(mat).expect("frame-derived J is real with J^2 = -Id")
}

/// The real endomorphism of the standard structure: rotation blocks
/// `J e_{2j-1} = e_{2j}`, `J e_{2j} = -e_{2j-1}`.
fn standard_real_j(m: usize) -> RealJ {
    let mut mat = Matrix::zero(2 * m, 2 * m);
    for j in 0..m {
        mat[(2 * j + 1, 2 * j)] = GaussianRational::one();
        mat[(2 * j, 2 * j + 1)] = GaussianRational::from_int(-1);
    }
    RealJ { mat }
}

/// Rebuilds a co-frame from a real `J`: applies the (1,0)-projector to the
/// dual basis (rows of `Id - iJ`) and keeps the first `m` independent rows,
/// chosen by leftmost-pivot elimination.
pub fn acs_from_real_j(j: &RealJ) -> Result<CoFrame> {
    let n = j.dim();
    let m = n / 2;
    let candidates = Matrix::from_fn(n, n, |r, c| {
        let jc = j.matrix()[(r, c)].mul_ref(&GaussianRational::i());
        let id = if r == c {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        };
        id - jc
    });
    let picked = candidates.independent_rows();
    if picked.len() != m {
        return Err(Error::InvalidJ(format!(
            "projector rank {} != {m}",
            picked.len()
        )));
    }
    let rows = Matrix::from_fn(m, n, |r, c| candidates[(picked[r], c)].clone());
    CoFrame::new(rows)
}

/// Independent route to the rank: assembles the Nijenhuis tensor
/// `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]` from the structure
/// constants, evaluates it on the anti-holomorphic dual frame vectors, pairs
/// with the co-frame rows, and takes the exact rank of the resulting matrix.
pub fn nijenhuis_oracle(g: &LieAlgebra, j: &RealJ) -> Result<usize> {
    let n = g.dim();
    if n != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.dim(),
        });
    }
    let m = n / 2;
    let cf = acs_from_real_j(j)?;
    let finv = cf.frame_matrix().inverse();

    // bracket table for basis pairs a < b
    let mut table = Vec::new();
    for a in 1..=n as u8 {
        for b in (a + 1)..=n as u8 {
            let targets = g.bracket_basis(a, b);
            if targets.iter().any(|v| !v.is_zero()) {
                table.push(((a, b), targets));
            }
        }
    }
    let bracket = |x: &[GaussianRational], y: &[GaussianRational]| -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); n];
        for ((a, b), targets) in &table {
            let (ai, bi) = (*a as usize - 1, *b as usize - 1);
            let coef = x[ai].mul_ref(&y[bi]).sub_ref(&x[bi].mul_ref(&y[ai]));
            if coef.is_zero() {
                continue;
            }
            for (t, v) in targets.iter().enumerate() {
                if !v.is_zero() {
                    out[t] += coef.mul_ref(v);
                }
            }
        }
        out
    };
    let apply_j = |x: &[GaussianRational]| -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); n];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let e = &j.matrix()[(r, c)];
                if !e.is_zero() {
                    *slot += e.mul_ref(xc);
                }
            }
        }
        out
    };

    // anti-holomorphic dual frame vectors: columns m.. of F^{-1}
    let psi: Vec<Vec<GaussianRational>> = (m..n)
        .map(|col| (0..n).map(|r| finv[(r, col)].clone()).collect())
        .collect();

    let pairs = column_pairs(m);
    let mut t = Matrix::zero(m, pairs.len());
    for (colno, &(k, l)) in pairs.iter().enumerate() {
        let x = &psi[k as usize - 1];
        let y = &psi[l as usize - 1];
        let jx = apply_j(x);
        let jy = apply_j(y);
        let mut nval = bracket(&jx, &jy);
        let t1 = apply_j(&bracket(&jx, y));
        let t2 = apply_j(&bracket(x, &jy));
        let t3 = bracket(x, y);
        for a in 0..n {
            nval[a] = nval[a].sub_ref(&t1[a]).sub_ref(&t2[a]).sub_ref(&t3[a]);
        }
        for row in 0..m {
            let mut acc = GaussianRational::zero();
            for a in 0..n {
                if !nval[a].is_zero() {
                    acc += cf.rows()[(row, a)].mul_ref(&nval[a]);
                }
            }
            t[(row, colno)] = acc;
        }
    }
    Ok(t.rank())
}

/// The `(p,q)`-component of `a` in the bigrading induced by `j`, expressed
/// back in the `e`-basis. Summing over all `p+q = deg(a)` recovers `a`.
pub fn bidegree_project(a: &KForm, j: &CoFrame, p: usize, q: usize) -> Result<KForm> {
    if a.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: a.dim(),
        });
    }
    if p + q != a.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: p + q,
        });
    }
    let m = j.half_dim();
    let in_frame = change_frame(a, j.frame_matrix())?;
    let mut kept = KForm::zero(a.dim(), a.degree());
    for (key, c) in in_frame.terms() {
        let holo = key.iter().filter(|&&i| (i as usize) <= m).count();
        if holo == p {
            kept = kept.add(&KForm::term(a.dim(), key, c.clone())?)?;
        }
    }
    expand_in_frame(&kept, j.frame_matrix())
}

/// Builds the real Lie algebra presented by complex structure equations:
/// takes `phi^j = e^{2j-1} + i e^{2j}` and the given 2-forms `d phi^j`
/// (indices `1..=m` for `phi`, `m+1..=2m` for the conjugates), expands them
/// in the `e`-basis and splits into real and imaginary parts.
pub fn from_complex_frame(m: usize, dphi: &[KForm]) -> Result<(LieAlgebra, CoFrame)> {
    if dphi.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: dphi.len(),
        });
    }
    let dim = 2 * m;
    let standard = standard_acs(m);
    let mut diffs = vec![KForm::zero(dim, 2); dim];
    for (j, d) in dphi.iter().enumerate() {
        if d.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: d.dim(),
            });
        }
        if !d.is_zero() && d.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: d.degree(),
            });
        }
        let in_e = expand_in_frame(d, standard.frame_matrix())?;
        diffs[2 * j] = in_e.real_part();
        diffs[2 * j + 1] = in_e.imag_part();
    }
    let g = LieAlgebra::new(dim, diffs)?;
    Ok((g, standard))
}

/// How [`random_acs`] draws a structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SampleMode {
    /// Deform the standard structure by a random `Phi` with rational entries
    /// whose numerators and denominators are bounded by the magnitude.
    Deform,
    /// Conjugate the standard `J` by a random invertible integer matrix;
    /// this family reaches every almost complex structure on the space.
    Conjugate,
}

pub(crate) fn rand_below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

pub(crate) fn rand_int(rng: &mut ChaCha8Rng, magnitude: u32) -> i64 {
    rand_below(rng, 2 * magnitude as u64 + 1) as i64 - magnitude as i64
}

pub(crate) fn rand_rational(rng: &mut ChaCha8Rng, magnitude: u32) -> Rational {
    let num = rand_int(rng, magnitude);
    let den = 1 + rand_below(rng, magnitude as u64) as i64;
    rat(num, den)
}

pub(crate) fn rand_gaussian(rng: &mut ChaCha8Rng, magnitude: u32) -> GaussianRational {
    GaussianRational::new(rand_rational(rng, magnitude), rand_rational(rng, magnitude))
}

const MAX_SAMPLE_RETRIES: usize = 64;

/// Seeded, reproducible random almost complex structure on `R^{2m}`.
pub fn random_acs(m: usize, seed: u64, mode: SampleMode, magnitude: u32) -> Result<CoFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let magnitude = magnitude.max(1);
    for _ in 0..MAX_SAMPLE_RETRIES {
        match mode {
            SampleMode::Deform => {
                let phi = Matrix::from_fn(m, m, |_, _| rand_gaussian(&mut rng, magnitude));
                if let Ok(cf) = standard_acs(m).deform(&DeformationParams { phi }) {
                    return Ok(cf);
                }
            }
            SampleMode::Conjugate => {
                let q = Matrix::from_fn(2 * m, 2 * m, |_, _| {
                    GaussianRational::from_int(rand_int(&mut rng, magnitude))
                });
                if let Ok((det, Some(qinv))) = q.det_inverse() {
                    if !det.is_zero() {
                        let jstd = standard_real_j(m);
                        let conj = q.mul(jstd.matrix()).and_then(|t| t.mul(&qinv));
                        if let Ok(mat) = conj {
                            // conjugation preserves realness and J^2 = -Id
                            let jr = RealJ { mat };
                            if let Ok(cf) = acs_from_real_j(&jr) {
                                return Ok(cf);
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::SamplingExhausted(MAX_SAMPLE_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn gi(n: i64, d: i64) -> GaussianRational {
        GaussianRational::new(rat(0, 1), rat(n, d))
    }

    /// d phi^3 = -phi^{12} presented over the standard frame; the real
    /// algebra underlying the Iwasawa manifold.
    pub(crate) fn iwasawa() -> (LieAlgebra, CoFrame) {
        let dim = 6;
        let dphi3 = KForm::term(dim, &[1, 2], gr(-1, 1)).unwrap();
        from_complex_frame(3, &[KForm::zero(dim, 2), KForm::zero(dim, 2), dphi3]).unwrap()
    }

    /// d phi^2 = -phi^{12}, d phi^3 = phi^{13}: the Nakamura algebra.
    pub(crate) fn nakamura() -> (LieAlgebra, CoFrame) {
        let dim = 6;
        let dphi2 = KForm::term(dim, &[1, 2], gr(-1, 1)).unwrap();
        let dphi3 = KForm::basis(dim, &[1, 3]).unwrap();
        from_complex_frame(3, &[KForm::zero(dim, 2), dphi2, dphi3]).unwrap()
    }

    #[test]
    fn standard_rows() {
        let cf = standard_acs(2);
        assert_eq!(cf.rows().row(0), &[gr(1, 1), gi(1, 1), gr(0, 1), gr(0, 1)]);
        assert_eq!(cf.rows().row(1), &[gr(0, 1), gr(0, 1), gr(1, 1), gi(1, 1)]);
        let cf3 = standard_acs(3);
        assert_eq!(
            cf3.rows().row(2),
            &[gr(0, 1), gr(0, 1), gr(0, 1), gr(0, 1), gr(1, 1), gi(1, 1)]
        );
    }

    #[test]
    fn standard_real_j_is_rotation_blocks() {
        let j = real_j(&standard_acs(1));
        // J e_1 = e_2, J e_2 = -e_1
        assert_eq!(j.entry(1, 1), rat(0, 1));
        assert_eq!(j.entry(1, 2), rat(-1, 1));
        assert_eq!(j.entry(2, 1), rat(1, 1));
        assert_eq!(j.entry(2, 2), rat(0, 1));
        for m in 1..=3 {
            let j = real_j(&standard_acs(m));
            let sq = j.matrix().mul(j.matrix()).unwrap();
            assert_eq!(sq, Matrix::identity(2 * m).neg());
        }
    }

    #[test]
    fn deform_zero_is_identity() {
        let base = standard_acs(3);
        let same = base.deform(&DeformationParams::zero(3)).unwrap();
        assert_eq!(same, base);
    }

    #[test]
    fn deform_detects_singular_p() {
        // m = 1, Phi = [[1]]: det P = 1 - |1|^2 = 0
        let base = standard_acs(1);
        let phi = DeformationParams::new(Matrix::from_rows(vec![vec![gr(1, 1)]]).unwrap()).unwrap();
        match base.deform(&phi) {
            Err(Error::SingularDeformation { .. }) => {}
            other => panic!("expected singular deformation, got {other:?}"),
        }
    }

    #[test]
    fn from_complex_frame_iwasawa_structure_constants() {
        let (g, _) = iwasawa();
        // hand expansion of -phi^{12} = -(e1+ie2)^(e3+ie4)
        let de5 = KForm::term(6, &[1, 3], gr(-1, 1))
            .unwrap()
            .add(&KForm::basis(6, &[2, 4]).unwrap())
            .unwrap();
        let de6 = KForm::term(6, &[1, 4], gr(-1, 1))
            .unwrap()
            .add(&KForm::term(6, &[2, 3], gr(-1, 1)).unwrap())
            .unwrap();
        for a in 1..=4u8 {
            assert!(g.diff_of_basis(a).unwrap().is_zero());
        }
        assert_eq!(*g.diff_of_basis(5).unwrap(), de5);
        assert_eq!(*g.diff_of_basis(6).unwrap(), de6);
    }

    #[test]
    fn from_complex_frame_kt_single_relation() {
        // d phi^2 = -(i/2) phi^{1 1-bar} expands to de^3 = -e^{12}, de^4 = 0
        let dim = 4;
        let dphi2 =
            KForm::term(dim, &[1, 3], GaussianRational::new(rat(0, 1), rat(-1, 2))).unwrap();
        let (g, _) = from_complex_frame(2, &[KForm::zero(dim, 2), dphi2]).unwrap();
        assert_eq!(
            *g.diff_of_basis(3).unwrap(),
            KForm::term(4, &[1, 2], gr(-1, 1)).unwrap()
        );
        assert!(g.diff_of_basis(4).unwrap().is_zero());
        let zeros = (1..=4u8)
            .filter(|&a| g.diff_of_basis(a).unwrap().is_zero())
            .count();
        assert_eq!(zeros, 3);
    }

    #[test]
    fn from_complex_frame_all_zero_is_abelian() {
        let (g, cf) =
            from_complex_frame(3, &[KForm::zero(6, 2), KForm::zero(6, 2), KForm::zero(6, 2)])
                .unwrap();
        assert!(g == LieAlgebra::abelian(6));
        assert_eq!(cf, standard_acs(3));
    }

    #[test]
    fn mu_bar_standard_iwasawa_is_integrable() {
        let (g, cf) = iwasawa();
        let mu = mu_bar(&g, &cf).unwrap();
        assert!(mu.is_zero());
        assert_eq!(mu.rank(), 0);
    }

    #[test]
    fn mu_bar_iwasawa_rank2_exact_entries() {
        // omega^1 = phi^1 + phi^{3-bar}, omega^2 = phi^2 + 2 phi^{2-bar}.
        // Hand frame inversion gives
        //   mu omega^1 = (1/3) omega^{1-bar 2-bar},
        //   mu omega^2 = 0,
        //   mu omega^3 = -(2/3) omega^{2-bar 3-bar}.
        let (g, base) = iwasawa();
        let mut phi = Matrix::zero(3, 3);
        phi[(0, 2)] = gr(1, 1);
        phi[(1, 1)] = gr(2, 1);
        let cf = base.deform(&DeformationParams::new(phi).unwrap()).unwrap();
        let mu = mu_bar(&g, &cf).unwrap();
        assert_eq!(*mu.entry(1, 1, 2), gr(1, 3));
        assert_eq!(*mu.entry(1, 1, 3), gr(0, 1));
        assert_eq!(*mu.entry(1, 2, 3), gr(0, 1));
        assert!(mu.matrix().row(1).iter().all(GaussianRational::is_zero));
        assert_eq!(*mu.entry(3, 1, 2), gr(0, 1));
        assert_eq!(*mu.entry(3, 1, 3), gr(0, 1));
        assert_eq!(*mu.entry(3, 2, 3), gr(-2, 3));
        assert_eq!(mu.rank(), 2);
        // independent route
        assert_eq!(nijenhuis_oracle(&g, &real_j(&cf)).unwrap(), 2);
    }

    #[test]
    fn mu_bar_iwasawa_rank1() {
        // omega^2 = phi^2 + phi^{3-bar}: hand inversion gives
        // mu omega^2 = -omega^{1-bar 2-bar}, other rows zero.
        let (g, base) = iwasawa();
        let mut phi = Matrix::zero(3, 3);
        phi[(1, 2)] = gr(1, 1);
        let cf = base.deform(&DeformationParams::new(phi).unwrap()).unwrap();
        let mu = mu_bar(&g, &cf).unwrap();
        assert_eq!(*mu.entry(2, 1, 2), gr(-1, 1));
        assert_eq!(mu.rank(), 1);
    }

    #[test]
    fn real_j_round_trips_through_extraction() {
        let (_, base) = iwasawa();
        let mut phi = Matrix::zero(3, 3);
        phi[(0, 2)] = gr(1, 1);
        phi[(1, 1)] = gr(2, 1);
        let cf = base.deform(&DeformationParams::new(phi).unwrap()).unwrap();
        let j = real_j(&cf);
        let sq = j.matrix().mul(j.matrix()).unwrap();
        assert_eq!(sq, Matrix::identity(6).neg());
        let back = acs_from_real_j(&j).unwrap();
        assert!(back.same_structure(&cf));
        assert_eq!(real_j(&back), j);
    }

    #[test]
    fn acs_from_conjugated_j_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let jstd = real_j(&standard_acs(3));
        let mut done = 0;
        while done < 10 {
            let q = Matrix::from_fn(6, 6, |_, _| {
                GaussianRational::from_int(rand_int(&mut rng, 3))
            });
            let Ok((det, Some(qinv))) = q.det_inverse() else {
                continue;
            };
            if det.is_zero() {
                continue;
            }
            let mat = q.mul(jstd.matrix()).unwrap().mul(&qinv).unwrap();
            let j = RealJ::new(mat).unwrap();
            let cf = acs_from_real_j(&j).unwrap();
            assert_eq!(real_j(&cf), j);
            done += 1;
        }
    }

    #[test]
    fn oracle_vanishes_on_abelian() {
        let g = LieAlgebra::abelian(6);
        let j = real_j(&random_acs(3, 42, SampleMode::Conjugate, 3).unwrap());
        assert_eq!(nijenhuis_oracle(&g, &j).unwrap(), 0);
    }

    #[test]
    fn oracle_matches_mu_bar_on_random_structures() {
        let (g_iw, _) = iwasawa();
        let (g_nak, _) = nakamura();
        for (gi, g) in [LieAlgebra::abelian(6), g_iw, g_nak].iter().enumerate() {
            for trial in 0..8u64 {
                let mode = if trial % 2 == 0 {
                    SampleMode::Deform
                } else {
                    SampleMode::Conjugate
                };
                let cf = random_acs(3, 1000 * gi as u64 + trial, mode, 3).unwrap();
                let via_mu = mu_bar(g, &cf).unwrap().rank();
                let via_oracle = nijenhuis_oracle(g, &real_j(&cf)).unwrap();
                assert_eq!(via_mu, via_oracle);
            }
        }
    }

    #[test]
    fn random_acs_is_reproducible() {
        for mode in [SampleMode::Deform, SampleMode::Conjugate] {
            let a = random_acs(3, 12345, mode, 5).unwrap();
            let b = random_acs(3, 12345, mode, 5).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bidegree_pure_part_is_fixed() {
        let (_, base) = iwasawa();
        // omega^{1-bar 2-bar} written in the e-basis
        let w1b = base.row_form(1).conjugate();
        let w2b = base.row_form(2).conjugate();
        let a = w1b.wedge(&w2b).unwrap();
        let proj = bidegree_project(&a, &base, 0, 2).unwrap();
        assert_eq!(proj, a);
        assert!(bidegree_project(&a, &base, 2, 0).unwrap().is_zero());
        assert!(bidegree_project(&a, &base, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn bidegree_components_sum_back() {
        let (_, base) = iwasawa();
        let mut phi = Matrix::zero(3, 3);
        phi[(0, 1)] = GaussianRational::complex(1, 2, 1, 3);
        phi[(2, 0)] = gr(-1, 1);
        let j = base.deform(&DeformationParams::new(phi).unwrap()).unwrap();
        let a = KForm::basis(6, &[1, 4])
            .unwrap()
            .add(&KForm::term(6, &[2, 5], GaussianRational::complex(1, 1, 2, 1)).unwrap())
            .unwrap();
        let mut sum = KForm::zero(6, 2);
        for (p, q) in [(2, 0), (1, 1), (0, 2)] {
            let part = bidegree_project(&a, &j, p, q).unwrap();
            // idempotent and mutually annihilating
            assert_eq!(bidegree_project(&part, &j, p, q).unwrap(), part);
            for (p2, q2) in [(2, 0), (1, 1), (0, 2)] {
                if (p2, q2) != (p, q) {
                    assert!(bidegree_project(&part, &j, p2, q2).unwrap().is_zero());
                }
            }
            sum = sum.add(&part).unwrap();
        }
        assert_eq!(sum, a);
    }

    #[test]
    fn bidegree_real_form_conjugate_symmetry() {
        // the (0,2)-part of a real 2-form is the conjugate of its (2,0)-part
        let (_, base) = iwasawa();
        let a = KForm::basis(6, &[1, 4])
            .unwrap()
            .add(&KForm::term(6, &[3, 6], gr(-2, 1)).unwrap())
            .unwrap();
        let p20 = bidegree_project(&a, &base, 2, 0).unwrap();
        let p02 = bidegree_project(&a, &base, 0, 2).unwrap();
        assert_eq!(p20.conjugate(), p02);
    }

    #[test]
    fn kt_deformed_02_projection_coefficient() {
        // Deform the standard 4-dim structure by f on the off-diagonal
        // (e = g = h = 0, so det P = 1). The (0,2)-part of phi^{1 1-bar}
        // must be f * omega^{1-bar 2-bar}.
        let base = standard_acs(2);
        let f = gr(1, 2);
        let mut phi = Matrix::zero(2, 2);
        phi[(0, 1)] = f.clone();
        let j1 = base.deform(&DeformationParams::new(phi).unwrap()).unwrap();
        let phi1 = base.row_form(1);
        let a = phi1.wedge(&phi1.conjugate()).unwrap();
        let proj = bidegree_project(&a, &j1, 0, 2).unwrap();
        let in_frame = change_frame(&proj, j1.frame_matrix()).unwrap();
        assert_eq!(in_frame, KForm::term(4, &[3, 4], f).unwrap());
    }
}
