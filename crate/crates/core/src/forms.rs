//! Invariant alternating forms and the Chevalley–Eilenberg calculus on them.
//!
//! Forms use the determinant convention: `(e^1 ∧ e^2)(e_1, e_2) = 1`, with no
//! `1/k!` factors, and the differential of an invariant 1-form is
//! `dω(X, Y) = -ω([X, Y])`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{combinations, Matrix, Vector};
use crate::scalar::{parity_sign, Scalar};

/// Alternating `k`-form stored sparsely as `e^I ↦ coefficient` over strictly
/// increasing index tuples `I`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<Scalar> {
    let mut inversions = 0;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            match idx[i].cmp(&idx[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    idx.sort_unstable();
    Some(parity_sign(inversions))
}

impl AltForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AltForm { dim, degree, terms: BTreeMap::new() }
    }

    /// The constant 0-form `c`.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = Self::zero(dim, 0);
        if !c.is_zero() {
            f.terms.insert(Vec::new(), c);
        }
        f
    }

    /// The unit 0-form.
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Scalar::one())
    }

    /// The basis covector `e^i` (0-based).
    pub fn covector(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i])
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` for arbitrary (not necessarily sorted) indices.
    pub fn monomial(dim: usize, indices: &[usize]) -> Self {
        Self::from_terms(dim, indices.len(), [(indices.to_vec(), Scalar::one())])
            .expect("monomial indices in range")
    }

    /// 1-form with the given coefficients on `e^1, …, e^n`.
    pub fn from_covector(coeffs: &Vector) -> Self {
        let mut f = Self::zero(coeffs.dim(), 1);
        for (i, c) in coeffs.coords().iter().enumerate() {
            if !c.is_zero() {
                f.terms.insert(vec![i], c.clone());
            }
        }
        f
    }

    /// Builds a `degree`-form from `(indices, coefficient)` terms. Unsorted tuples
    /// are sorted with the permutation sign; tuples with a repeated index vanish.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut f = Self::zero(dim, degree);
        for (mut idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::InvalidForm(format!(
                    "index {} out of range for dimension {dim}",
                    bad + 1
                )));
            }
            let Some(sign) = sort_with_sign(&mut idx) else {
                continue;
            };
            f.add_term(idx, sign * c);
        }
        Ok(f)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Value on the basis tuple `(e_{i_1}, …, e_{i_k})`, indices in any order.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            Some(sign) => self.terms.get(&idx).map_or_else(Scalar::zero, |c| sign * c),
            None => Scalar::zero(),
        }
    }

    /// Coefficients of a 1-form as a vector (zero vector for other degrees' absence).
    pub fn as_covector(&self) -> Vector {
        let mut v = Vector::zeros(self.dim);
        if self.degree == 1 {
            for (idx, c) in &self.terms {
                v[idx[0]] = c.clone();
            }
        }
        v
    }

    /// Gram matrix `ω(e_i, e_j)` of a 2-form.
    pub fn gram(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        if self.degree == 2 {
            for (idx, c) in &self.terms {
                m.set(idx[0], idx[1], c.clone());
                m.set(idx[1], idx[0], -c.clone());
            }
        }
        m
    }

    /// Evaluation on `degree` vectors (alternating multilinear).
    pub fn eval(&self, args: &[&Vector]) -> Result<Scalar> {
        if args.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: args.len() });
        }
        for a in args {
            if a.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
            }
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[&Vector]) -> Scalar {
        let k = self.degree;
        let mut total = Scalar::zero();
        for (idx, c) in &self.terms {
            let mut m = Matrix::zeros(k, k);
            for (r, &i) in idx.iter().enumerate() {
                for (s, v) in args.iter().enumerate() {
                    m.set(r, s, v[i].clone());
                }
            }
            let det = m.determinant();
            if !det.is_zero() {
                total += c * det;
            }
        }
        total
    }

    /// `α(X)` for a 1-form.
    pub fn at(&self, x: &Vector) -> Scalar {
        debug_assert_eq!(self.degree, 1);
        self.terms.iter().map(|(idx, c)| c * &x[idx[0]]).sum()
    }

    /// `ω(X, Y)` for a 2-form.
    pub fn at2(&self, x: &Vector, y: &Vector) -> Scalar {
        debug_assert_eq!(self.degree, 2);
        self.terms
            .iter()
            .map(|(idx, c)| c * (&x[idx[0]] * &y[idx[1]] - &x[idx[1]] * &y[idx[0]]))
            .sum()
    }

    pub fn scale(&self, c: &Scalar) -> AltForm {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        AltForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &AltForm) -> Result<AltForm> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AltForm) -> Result<AltForm> {
        self.add(&other.scale(&-Scalar::one()))
    }

    fn check_same_space(&self, other: &AltForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// `self ∧ other` with shuffle signs and no normalisation factors.
    pub fn wedge(&self, other: &AltForm) -> Result<AltForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut inversions = 0;
                let mut disjoint = true;
                for x in i {
                    for y in j {
                        if x == y {
                            disjoint = false;
                        } else if x > y {
                            inversions += 1;
                        }
                    }
                }
                if !disjoint {
                    continue;
                }
                let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
                idx.sort_unstable();
                out.add_term(idx, parity_sign(inversions) * a * b);
            }
        }
        Ok(out)
    }

    /// `i_X` with `(i_X a)(Y_1, …) = a(X, Y_1, …)`. Rejects 0-forms.
    pub fn interior(&self, x: &Vector) -> Result<AltForm> {
        if self.degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(self.interior_unchecked(x))
    }

    pub(crate) fn interior_unchecked(&self, x: &Vector) -> AltForm {
        let mut out = Self::zero(self.dim, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (idx, c) in &self.terms {
            for (p, &i) in idx.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                out.add_term(rest, parity_sign(p) * c * &x[i]);
            }
        }
        out
    }

    /// The pulled-back form in the basis `f_j = Σ_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<AltForm> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.rows() });
        }
        let cols = p.columns();
        let mut out = Self::zero(self.dim, self.degree);
        for t in combinations(self.dim, self.degree) {
            let args: Vec<&Vector> = t.iter().map(|&i| &cols[i]).collect();
            out.add_term(t.clone(), self.eval_unchecked(&args));
        }
        Ok(out)
    }

    /// Restriction to the span of `basis`, expressed in that basis.
    pub fn restrict_to(&self, basis: &[Vector]) -> AltForm {
        let m = basis.len();
        let mut out = Self::zero(m, self.degree);
        for t in combinations(m, self.degree) {
            let args: Vec<&Vector> = t.iter().map(|&i| &basis[i]).collect();
            out.add_term(t.clone(), self.eval_unchecked(&args));
        }
        out
    }

    /// Extension by zero from a factor into a direct sum: this form lives on
    /// coordinates `offset..offset + self.dim` of a `total`-dimensional space.
    pub fn embed(&self, total: usize, offset: usize) -> AltForm {
        let mut out = Self::zero(total, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.iter().map(|i| i + offset).collect(), c.clone());
        }
        out
    }
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (p, i) in idx.iter().enumerate() {
                let sep = if p == 0 { "·" } else { "∧" };
                write!(f, "{sep}e{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// `a ∧ b`.
pub fn wedge(a: &AltForm, b: &AltForm) -> Result<AltForm> {
    a.wedge(b)
}

/// `i_X a`.
pub fn interior_product(x: &Vector, a: &AltForm) -> Result<AltForm> {
    a.interior(x)
}

/// `m`-fold wedge power; `m = 0` gives the unit 0-form.
pub fn form_power(a: &AltForm, m: usize) -> AltForm {
    let mut out = AltForm::one(a.dim);
    for _ in 0..m {
        if out.is_zero() {
            return AltForm::zero(a.dim, a.degree * m);
        }
        out = out.wedge(a).expect("same ambient dimension");
    }
    out
}

/// Chevalley–Eilenberg differential of an invariant form:
/// `dω(X_0, …, X_k) = Σ_{i<j} (-1)^{i+j} ω([X_i, X_j], X_0, …, X̂_i, …, X̂_j, …, X_k)`.
pub fn exterior_derivative(l: &LieAlgebra, a: &AltForm) -> Result<AltForm> {
    if a.dim != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: a.dim });
    }
    Ok(d_unchecked(l, a))
}

pub(crate) fn d_unchecked(l: &LieAlgebra, a: &AltForm) -> AltForm {
    let n = l.dim();
    let k = a.degree;
    let mut out = AltForm::zero(n, k + 1);
    if k == 0 || a.is_zero() || k + 1 > n {
        return out;
    }
    for t in combinations(n, k + 1) {
        let mut value = Scalar::zero();
        for p in 0..=k {
            for q in p + 1..=k {
                let br = l.bracket_basis(t[p], t[q]);
                if br.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != p && r != q)
                    .map(|(_, &i)| i)
                    .collect();
                // a(v, e_rest) = Σ_m v_m a(e_m, e_rest)
                let mut inner = Scalar::zero();
                for (m, vm) in br.coords().iter().enumerate() {
                    if vm.is_zero() {
                        continue;
                    }
                    let mut idx = Vec::with_capacity(k);
                    idx.push(m);
                    idx.extend_from_slice(&rest);
                    let c = a.coeff(&idx);
                    if !c.is_zero() {
                        inner += vm * c;
                    }
                }
                if !inner.is_zero() {
                    value += parity_sign(p + q) * inner;
                }
            }
        }
        out.add_term(t, value);
    }
    out
}

/// `L_X a = i_X da + d(i_X a)`.
pub fn lie_derivative_form(l: &LieAlgebra, x: &Vector, a: &AltForm) -> Result<AltForm> {
    l.check_vector(x)?;
    if a.dim != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: a.dim });
    }
    let first = d_unchecked(l, a).interior_unchecked(x);
    if a.degree == 0 {
        return Ok(AltForm::zero(a.dim, 0));
    }
    let second = d_unchecked(l, &a.interior_unchecked(x));
    Ok(first.add(&second).expect("same degree"))
}
