//! Exterior algebra over the complexified dual of a Lie algebra.
//!
//! Forms are sparse maps from strictly increasing multi-indices to exact
//! complex coefficients. The Chevalley-Eilenberg differential is determined
//! by the structure 2-forms `de^a` and extended by the graded Leibniz rule;
//! `d * d = 0` is exactly the Jacobi identity.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};

/// Multi-index: strictly increasing list of basis indices in `1..=dim`.
pub type MultiIndex = Vec<u8>;

/// A complex exterior form of fixed degree on an `dim`-dimensional space.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

/// Sorts `idx` and reports the sign of the permutation; `None` on repeats.
fn normalize_indices(idx: &[u8]) -> Option<(MultiIndex, bool)> {
    let mut v = idx.to_vec();
    let mut negate = false;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negate))
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form (a scalar).
    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        let mut f = KForm::zero(dim, 0);
        if !c.is_zero() {
            f.terms.insert(Vec::new(), c);
        }
        f
    }

    /// `c * e^{idx}` with sign normalization at insertion; repeated indices
    /// collapse to zero.
    pub fn term(dim: usize, idx: &[u8], c: GaussianRational) -> Result<Self> {
        for &i in idx {
            if i == 0 || i as usize > dim {
                return Err(Error::IndexOutOfRange {
                    index: i as usize,
                    dim,
                });
            }
        }
        let mut f = KForm::zero(dim, idx.len());
        let Some((key, negate)) = normalize_indices(idx) else {
            return Ok(f);
        };
        if !c.is_zero() {
            f.terms.insert(key, if negate { -c } else { c });
        }
        Ok(f)
    }

    pub fn basis(dim: usize, idx: &[u8]) -> Result<Self> {
        Self::term(dim, idx, GaussianRational::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> GaussianRational {
        match normalize_indices(idx) {
            Some((key, negate)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(GaussianRational::zero);
                if negate {
                    -c
                } else {
                    c
                }
            }
            None => GaussianRational::zero(),
        }
    }

    fn insert(&mut self, key: MultiIndex, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &KForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> KForm {
        if s.is_zero() {
            return KForm::zero(self.dim, self.degree);
        }
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul_ref(s)))
                .collect(),
        }
    }

    /// Exterior product; bilinear, associative, graded-anticommutative.
    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        self.check_compatible(other)?;
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut idx: MultiIndex = Vec::with_capacity(ka.len() + kb.len());
                idx.extend_from_slice(ka);
                idx.extend_from_slice(kb);
                if let Some((key, negate)) = normalize_indices(&idx) {
                    let c = ca.mul_ref(cb);
                    out.insert(key, if negate { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Conjugates every coefficient. Meaningful for forms expressed in a
    /// real frame (the `e`-basis), where conjugation fixes the basis forms.
    pub fn conjugate(&self) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
        }
    }

    pub fn real_part(&self) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.re().eq(&Rational::from_integer(0.into())))
                .map(|(k, c)| {
                    (
                        k.clone(),
                        GaussianRational::from_rational(c.re().clone()),
                    )
                })
                .collect(),
        }
    }

    pub fn imag_part(&self) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.im().eq(&Rational::from_integer(0.into())))
                .map(|(k, c)| {
                    (
                        k.clone(),
                        GaussianRational::from_rational(c.im().clone()),
                    )
                })
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// Rewrites the form under the substitution `e^a -> sum_b S[a][b] theta^b`.
    /// The result's indices refer to the `theta` frame.
    pub fn substitute(&self, s: &Matrix) -> Result<KForm> {
        if s.nrows() != self.dim || s.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.nrows(),
            });
        }
        let mut out = KForm::zero(self.dim, self.degree);
        let row_form = |a: u8| -> KForm {
            let mut f = KForm::zero(self.dim, 1);
            for b in 0..self.dim {
                let c = s[(a as usize - 1, b)].clone();
                if !c.is_zero() {
                    f.terms.insert(vec![(b + 1) as u8], c);
                }
            }
            f
        };
        for (key, c) in &self.terms {
            let mut acc = KForm::scalar(self.dim, c.clone());
            for &a in key {
                acc = acc.wedge(&row_form(a))?;
            }
            out = out.add(&acc)?;
        }
        out.degree = self.degree;
        Ok(out)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            let cs = c.to_string();
            let idx: String = if self.dim > 9 {
                key.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
            } else {
                key.iter().map(u8::to_string).collect()
            };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if key.is_empty() {
                write!(f, "{}", cs)?;
            } else if c.is_one() {
                write!(f, "e^{{{}}}", idx)?;
            } else {
                write!(f, "({})e^{{{}}}", cs, idx)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An invertible square matrix whose rows describe a complex co-frame
/// `theta^a = sum_b M[a][b] e^b`. The inverse is held in the scaled form
/// `kappa * adj` with Gaussian-integer `adj`, which is what the rank
/// pipeline consumes; the plain inverse is materialized on first use.
#[derive(Clone)]
pub struct FrameMatrix {
    mat: Matrix,
    adj: Matrix,
    kappa: GaussianRational,
    inv: std::sync::OnceLock<Matrix>,
}

impl FrameMatrix {
    pub fn new(mat: Matrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let (_, scaled) = mat.det_inverse_scaled()?;
        let (adj, kappa) = scaled.ok_or(Error::SingularFrame)?;
        Ok(FrameMatrix {
            mat,
            adj,
            kappa,
            inv: std::sync::OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn inverse(&self) -> &Matrix {
        self.inv.get_or_init(|| self.adj.scale(&self.kappa))
    }

    /// The inverse as `(K, kappa)` with `M^{-1} = kappa * K` and integer `K`.
    pub fn inverse_scaled(&self) -> (&Matrix, &GaussianRational) {
        (&self.adj, &self.kappa)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
}

/// Rewrites `a` (given in the `e`-basis) in the co-frame spanned by the rows
/// of `frame`; exact, and undone by [`expand_in_frame`].
pub fn change_frame(a: &KForm, frame: &FrameMatrix) -> Result<KForm> {
    a.substitute(frame.inverse())
}

/// Rewrites `a` (given in `frame` coordinates) back in the `e`-basis.
pub fn expand_in_frame(a: &KForm, frame: &FrameMatrix) -> Result<KForm> {
    a.substitute(frame.matrix())
}

/// A finite-dimensional real Lie algebra, presented dually by the 2-forms
/// `de^a`. Construction validates the Jacobi identity (`d * d = 0`) and that
/// all structure constants are real rationals.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    diffs: Vec<KForm>,
    name: Option<String>,
}

/// Equality of the presented structure; the name is only a label.
impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.diffs == other.diffs
    }
}

#[derive(Clone, Debug)]
pub struct JacobiViolation {
    /// 1-based index `a` of the first basis form with `d(d e^a) != 0`.
    pub basis_index: u8,
    /// The offending nonzero 3-form.
    pub dd: KForm,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d(d e^{}) = {} != 0", self.basis_index, self.dd)
    }
}

/// Checks `d(d e^a) = 0` for candidate structure forms, before any
/// `LieAlgebra` exists.
pub fn check_jacobi(dim: usize, diffs: &[KForm]) -> std::result::Result<(), JacobiViolation> {
    for a in 0..dim {
        let dd = differential_raw(dim, diffs, &diffs[a]);
        if !dd.is_zero() {
            return Err(JacobiViolation {
                basis_index: (a + 1) as u8,
                dd,
            });
        }
    }
    Ok(())
}

fn differential_raw(dim: usize, diffs: &[KForm], a: &KForm) -> KForm {
    let mut out = KForm::zero(dim, a.degree() + 1);
    for (key, c) in a.terms() {
        for (pos, &i) in key.iter().enumerate() {
            let d_of = &diffs[i as usize - 1];
            if d_of.is_zero() {
                continue;
            }
            let rest: Vec<u8> = key
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != pos)
                .map(|(_, &x)| x)
                .collect();
            let sign = if pos % 2 == 0 { c.clone() } else { -c.clone() };
            let rest_form = KForm::term(dim, &rest, sign).expect("indices already validated");
            let contrib = d_of.wedge(&rest_form).expect("same dimension");
            out = out.add(&contrib).expect("same degree");
        }
    }
    out
}

impl LieAlgebra {
    /// `diffs[a]` is `de^{a+1}`; must be real 2-forms satisfying Jacobi.
    pub fn new(dim: usize, diffs: Vec<KForm>) -> Result<Self> {
        if diffs.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: diffs.len(),
            });
        }
        for d in &diffs {
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
            if !d.is_real() {
                return Err(Error::InvalidInput(
                    "structure constants must be real rationals".into(),
                ));
            }
        }
        let diffs: Vec<KForm> = diffs
            .into_iter()
            .map(|mut d| {
                if d.is_zero() {
                    d = KForm::zero(dim, 2);
                }
                d
            })
            .collect();
        check_jacobi(dim, &diffs).map_err(Error::Jacobi)?;
        Ok(LieAlgebra {
            dim,
            diffs,
            name: None,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            diffs: vec![KForm::zero(dim, 2); dim],
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `de^a` for 1-based `a`.
    pub fn diff_of_basis(&self, a: u8) -> Result<&KForm> {
        if a == 0 || a as usize > self.dim {
            return Err(Error::IndexOutOfRange {
                index: a as usize,
                dim: self.dim,
            });
        }
        Ok(&self.diffs[a as usize - 1])
    }

    pub fn structure_forms(&self) -> &[KForm] {
        &self.diffs
    }

    /// Chevalley-Eilenberg differential, extended to complex forms by
    /// linearity and the graded Leibniz rule.
    pub fn differential(&self, a: &KForm) -> Result<KForm> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        Ok(differential_raw(self.dim, &self.diffs, a))
    }

    pub fn check_jacobi(&self) -> std::result::Result<(), JacobiViolation> {
        check_jacobi(self.dim, &self.diffs)
    }

    /// Lie bracket of basis vectors: `[e_j, e_k]` as a coefficient vector,
    /// read off from `de^a(e_j, e_k) = -e^a([e_j, e_k])`.
    pub fn bracket_basis(&self, j: u8, k: u8) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.dim];
        if j == k {
            return out;
        }
        for (a, d) in self.diffs.iter().enumerate() {
            let c = d.coeff(&[j, k]);
            if !c.is_zero() {
                out[a] = -c;
            }
        }
        out
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        if let Some(n) = &self.name {
            write!(f, ", name={n}")?;
        }
        write!(f, ")")
    }
}
