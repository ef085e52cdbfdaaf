//! Antisymmetric vector-valued 2-forms, Nijenhuis brackets and Lie derivatives
//! of endomorphisms.

use std::collections::BTreeMap;

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::report::{Residual, Witness};

/// Antisymmetric bilinear map `g × g → g`, stored by its nonzero values on
/// basis pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorValuedTwoForm {
    dim: usize,
    values: BTreeMap<(usize, usize), Vector>,
}

impl VectorValuedTwoForm {
    pub fn zero(dim: usize) -> Self {
        VectorValuedTwoForm { dim, values: BTreeMap::new() }
    }

    /// Tabulates `f(e_i, e_j)` for all `i < j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                if !v.is_zero() {
                    t.values.insert((i, j), v);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value on `(e_i, e_j)`.
    pub fn get(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vector::zeros(self.dim),
            Less => self.values.get(&(i, j)).cloned().unwrap_or_else(|| Vector::zeros(self.dim)),
            Greater => -self.get(j, i),
        }
    }

    /// Bilinear extension to arbitrary arguments.
    pub fn eval(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for ((i, j), v) in &self.values {
            let c = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            out.add_scaled(&c, v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values in lexicographic order of the basis pair.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.values.iter()
    }

    /// First nonzero basis pair in lexicographic order, as a witness.
    pub fn first_witness(&self) -> Option<Witness> {
        self.values
            .iter()
            .next()
            .map(|((i, j), v)| Witness::new(vec![*i, *j], Residual::Vector(v.clone())))
    }

    pub fn add(&self, other: &VectorValuedTwoForm) -> VectorValuedTwoForm {
        Self::from_fn(self.dim, |i, j| &self.get(i, j) + &other.get(i, j))
    }

    pub fn sub(&self, other: &VectorValuedTwoForm) -> VectorValuedTwoForm {
        Self::from_fn(self.dim, |i, j| &self.get(i, j) - &other.get(i, j))
    }
}

/// `[f, f](X, Y) = f²[X, Y] + [fX, fY] - f[fX, Y] - f[X, fY]` at a single pair.
pub fn nijenhuis_at(l: &LieAlgebra, f: &Endomorphism, x: &Vector, y: &Vector) -> Vector {
    let fx = f.apply(x);
    let fy = f.apply(y);
    let mut out = f.apply(&f.apply(&l.br(x, y)));
    out = &out + &l.br(&fx, &fy);
    out = &out - &f.apply(&l.br(&fx, y));
    &out - &f.apply(&l.br(x, &fy))
}

/// Nijenhuis tensor `[f, f]` on all basis pairs.
pub fn nijenhuis_endo(l: &LieAlgebra, f: &Endomorphism) -> Result<VectorValuedTwoForm> {
    check_endo(l, f)?;
    let n = l.dim();
    Ok(VectorValuedTwoForm::from_fn(n, |i, j| {
        nijenhuis_at(l, f, &Vector::basis(n, i), &Vector::basis(n, j))
    }))
}

/// `(L_X f)(Y) = [X, fY] - f[X, Y]`.
pub fn lie_derivative_endo(l: &LieAlgebra, x: &Vector, f: &Endomorphism) -> Result<Endomorphism> {
    l.check_vector(x)?;
    check_endo(l, f)?;
    let n = l.dim();
    let cols: Vec<Vector> = (0..n)
        .map(|j| {
            let e = Vector::basis(n, j);
            &l.br(x, &f.apply(&e)) - &f.apply(&l.br(x, &e))
        })
        .collect();
    Ok(Endomorphism::from_images(&cols))
}

pub(crate) fn check_endo(l: &LieAlgebra, f: &Endomorphism) -> Result<()> {
    if f.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: f.dim() });
    }
    Ok(())
}
