//! Lie algebras given by structure constants, and endomorphisms of them.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::AltForm;
use crate::linalg::{combinations, Matrix, Vector};
use crate::report::{Residual, VerificationReport, Witness};
use crate::scalar::Scalar;

/// Finite-dimensional real Lie algebra with rational structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, constants: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// Builds an algebra from `(i, j, k, c)` entries meaning `c[i][j][k] = c`;
    /// the antisymmetric partner `c[j][i][k] = -c` is filled in. Entries listed
    /// twice must agree (up to the antisymmetry).
    pub fn from_constants(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut l = Self::abelian(dim);
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidStructure(format!(
                    "index ({}, {}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InvalidStructure(format!(
                        "[e{0}, e{0}] must vanish but has e{1} component {c}",
                        i + 1,
                        k + 1
                    )));
                }
                continue;
            }
            let (a, b) = (l.index(i, j, k), l.index(j, i, k));
            if seen[a] && l.constants[a] != c {
                return Err(Error::InvalidStructure(format!(
                    "antisymmetry violated at c[{}][{}][{}]",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            seen[a] = true;
            seen[b] = true;
            l.constants[b] = -c.clone();
            l.constants[a] = c;
        }
        Ok(l)
    }

    /// Builds an algebra from a dense array `c[i][j][k]`, rejecting arrays that
    /// are not antisymmetric in `(i, j)`.
    pub fn from_dense(c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let dim = c.len();
        let mut l = Self::abelian(dim);
        for (i, plane) in c.iter().enumerate() {
            if plane.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: plane.len() });
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
                }
                for (k, v) in row.iter().enumerate() {
                    if *v != -c[j][i][k].clone() {
                        return Err(Error::InvalidStructure(format!(
                            "antisymmetry violated at c[{}][{}][{}]",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                    let idx = l.index(i, j, k);
                    l.constants[idx] = v.clone();
                }
            }
        }
        Ok(l)
    }

    /// Builds the algebra whose invariant coframe satisfies
    /// `dω^k = Σ coeff · ω^i ∧ ω^j` for every listed `(k, [(i, j, coeff)])`.
    ///
    /// With `dω(X, Y) = -ω([X, Y])` this sets `c[i][j][k] = -coeff`.
    pub fn from_structure_equations(
        dim: usize,
        equations: &[(usize, Vec<(usize, usize, Scalar)>)],
    ) -> Result<Self> {
        let mut acc = vec![Scalar::zero(); dim * dim * dim];
        let mut l = Self::abelian(dim);
        for (k, terms) in equations {
            for (i, j, coeff) in terms {
                let (i, j, k) = (*i, *j, *k);
                if i >= dim || j >= dim || k >= dim {
                    return Err(Error::InvalidStructure(format!(
                        "structure equation index out of range for dimension {dim}"
                    )));
                }
                if i == j {
                    return Err(Error::InvalidStructure(format!(
                        "term ω{0}∧ω{0} in dω{1} is identically zero",
                        i + 1,
                        k + 1
                    )));
                }
                let a = l.index(i, j, k);
                let b = l.index(j, i, k);
                acc[a] -= coeff;
                acc[b] += coeff;
            }
        }
        l.constants = acc;
        Ok(l)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[self.index(i, j, k)]
    }

    /// Copy with `c[i][j][k] = value` and `c[j][i][k] = -value`; everything
    /// else untouched. Used to perturb algebras.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Scalar) -> Self {
        let mut l = self.clone();
        let (a, b) = (l.index(i, j, k), l.index(j, i, k));
        l.constants[b] = -value.clone();
        l.constants[a] = value;
        l
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let start = self.index(i, j, 0);
        Vector::new(self.constants[start..start + self.dim].to_vec())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.br(x, y))
    }

    /// Unchecked bracket for vectors already known to have the right length.
    pub(crate) fn br(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                let start = self.index(i, j, 0);
                for k in 0..n {
                    let s = &self.constants[start + k];
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    pub(crate) fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(())
    }

    /// `ad(x) = [x, ·]`.
    pub fn ad(&self, x: &Vector) -> Endomorphism {
        let cols: Vec<Vector> =
            (0..self.dim).map(|j| self.br(x, &Vector::basis(self.dim, j))).collect();
        Endomorphism::from_images(&cols)
    }

    /// Checks the Jacobi identity on every basis triple `i < j < l`; a failure
    /// carries the (1-based) triple and the Jacobiator.
    pub fn jacobi_check(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let n = self.dim;
        let e = |i| Vector::basis(n, i);
        let mut witness = None;
        for t in combinations(n, 3) {
            let (a, b, c) = (e(t[0]), e(t[1]), e(t[2]));
            let jac = &(&self.br(&self.br(&a, &b), &c) + &self.br(&self.br(&b, &c), &a))
                + &self.br(&self.br(&c, &a), &b);
            if !jac.is_zero() {
                witness = Some(Witness::new(t.clone(), Residual::Vector(jac)));
                break;
            }
        }
        report.record("jacobi", witness);
        report
    }

    /// `d ω^k` for every basis covector: the structure equations of the algebra.
    pub fn structure_equations(&self) -> Vec<AltForm> {
        (0..self.dim)
            .map(|k| {
                crate::forms::exterior_derivative(self, &AltForm::covector(self.dim, k))
                    .expect("basis covector has matching dimension")
            })
            .collect()
    }

    /// Direct sum `self ⊕ other`; `other`'s basis follows `self`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, m) = (self.dim, other.dim);
        let mut l = LieAlgebra::abelian(n + m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let idx = l.index(i, j, k);
                    l.constants[idx] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let idx = l.index(n + i, n + j, n + k);
                    l.constants[idx] = other.constant(i, j, k).clone();
                }
            }
        }
        l
    }

    /// Re-expresses the algebra in the basis `f_j = Σ_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows() });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Precondition("change of basis matrix is singular".into()))?;
        let cols = p.columns();
        let mut l = LieAlgebra::abelian(n);
        for a in 0..n {
            for b in 0..n {
                let v = inv.mul_vec(&self.br(&cols[a], &cols[b]));
                for k in 0..n {
                    let idx = l.index(a, b, k);
                    l.constants[idx] = v[k].clone();
                }
            }
        }
        Ok(l)
    }

    /// Whether the span of `basis` is closed under the bracket.
    pub fn is_subalgebra(&self, basis: &[Vector]) -> bool {
        basis.iter().enumerate().all(|(i, x)| {
            basis[i + 1..]
                .iter()
                .all(|y| crate::linalg::in_span(self.dim, basis, &self.br(x, y)))
        })
    }

    /// Structure constants of the subalgebra spanned by `basis`, in that basis.
    pub fn restrict_to(&self, basis: &[Vector]) -> Result<LieAlgebra> {
        let m = basis.len();
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let v = self.br(&basis[a], &basis[b]);
                let coords = crate::linalg::coordinates_in(basis, &v).ok_or_else(|| {
                    Error::Precondition("span is not closed under the bracket".into())
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        LieAlgebra::from_constants(m, entries)
    }
}

/// Linear endomorphism of the algebra; column `j` of the matrix is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endomorphism(Matrix);

impl Endomorphism {
    pub fn identity(dim: usize) -> Self {
        Endomorphism(Matrix::identity(dim))
    }

    pub fn zero(dim: usize) -> Self {
        Endomorphism(Matrix::zeros(dim, dim))
    }

    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        Ok(Endomorphism(m))
    }

    /// The endomorphism sending `e_j` to `images[j]`.
    pub fn from_images(images: &[Vector]) -> Self {
        Endomorphism(Matrix::from_columns(images.len(), images))
    }

    /// `α ⊗ Z`, i.e. `X ↦ α(X) Z`, for a 1-form `α`.
    pub fn outer(alpha: &AltForm, z: &Vector) -> Self {
        let n = z.dim();
        let a = alpha.as_covector();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, &z[i] * &a[j]);
            }
        }
        Endomorphism(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.0.mul_vec(v)
    }

    /// Image of the `j`-th basis vector.
    pub fn image(&self, j: usize) -> Vector {
        self.0.column(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism(self.0.mul(&other.0))
    }

    pub fn square(&self) -> Endomorphism {
        self.compose(self)
    }

    pub fn scale(&self, c: &Scalar) -> Endomorphism {
        Endomorphism(self.0.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn inverse(&self) -> Option<Endomorphism> {
        self.0.inverse().map(Endomorphism)
    }

    /// `a ∘ self ∘ a⁻¹`.
    pub fn conjugate(&self, a: &Endomorphism) -> Result<Endomorphism> {
        let inv = a
            .inverse()
            .ok_or_else(|| Error::Precondition("conjugating map is singular".into()))?;
        Ok(a.compose(self).compose(&inv))
    }

    /// The same linear map expressed in the basis `f_j = Σ_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Endomorphism> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Precondition("change of basis matrix is singular".into()))?;
        Ok(Endomorphism(inv.mul(&self.0).mul(p)))
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Endomorphism) -> Endomorphism {
        let (n, m) = (self.dim(), other.dim());
        let mut out = Matrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.0.get(i, j).clone());
            }
        }
        for i in 0..m {
            for j in 0..m {
                out.set(n + i, n + j, other.0.get(i, j).clone());
            }
        }
        Endomorphism(out)
    }

    /// Matrix of the restriction to an invariant subspace, in the given basis.
    pub fn restrict_to(&self, basis: &[Vector]) -> Result<Endomorphism> {
        let cols = basis
            .iter()
            .map(|b| {
                crate::linalg::coordinates_in(basis, &self.apply(b))
                    .map(Vector::new)
                    .ok_or_else(|| Error::Precondition("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism::from_images(&cols))
    }
}

impl Add for &Endomorphism {
    type Output = Endomorphism;
    fn add(self, rhs: &Endomorphism) -> Endomorphism {
        Endomorphism(self.0.add(&rhs.0))
    }
}

impl Sub for &Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: &Endomorphism) -> Endomorphism {
        Endomorphism(self.0.sub(&rhs.0))
    }
}

impl Neg for &Endomorphism {
    type Output = Endomorphism;
    fn neg(self) -> Endomorphism {
        Endomorphism(self.0.scale(&crate::scalar::int(-1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_constants(3, [(0, 1, 2, int(1))]).unwrap()
    }

    #[test]
    fn heisenberg_bracket() {
        let h = heisenberg();
        let e = |i| Vector::basis(3, i);
        assert_eq!(h.bracket(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(h.bracket(&e(1), &e(0)).unwrap(), -e(2));
        let x = Vector::from_ints(&[2, -1, 7]);
        assert!(h.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let h = heisenberg();
        assert!(matches!(
            h.bracket(&Vector::zeros(2), &Vector::zeros(3)),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn jacobi_failure_reports_triple() {
        // [e1,e2] = e1, [e1,e3] = e2
        let bad = LieAlgebra::from_constants(3, [(0, 1, 0, int(1)), (0, 2, 1, int(1))]).unwrap();
        let report = bad.jacobi_check();
        assert!(!report.passed());
        let w = report.first_failure().unwrap().witness.clone().unwrap();
        assert_eq!(w.basis, vec![0, 1, 2]);
        assert_eq!(w.residual, Residual::Vector(Vector::basis(3, 1)));
        assert!(LieAlgebra::abelian(4).jacobi_check().passed());
    }

    #[test]
    fn antisymmetry_violations_rejected() {
        let err = LieAlgebra::from_constants(3, [(0, 1, 2, int(1)), (1, 0, 2, int(1))]);
        assert!(matches!(err, Err(Error::InvalidStructure(_))));
        let mut dense = vec![vec![vec![int(0); 2]; 2]; 2];
        dense[0][1][0] = int(1);
        assert!(LieAlgebra::from_dense(dense.clone()).is_err());
        dense[1][0][0] = int(-1);
        assert!(LieAlgebra::from_dense(dense).is_ok());
        assert!(LieAlgebra::from_constants(2, [(0, 0, 1, int(1))]).is_err());
    }

    #[test]
    fn basis_change_preserves_brackets() {
        let h = heisenberg();
        let p = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let h2 = h.change_basis(&p).unwrap();
        let cols = p.columns();
        for a in 0..3 {
            for b in 0..3 {
                let lhs = p.mul_vec(&h2.bracket_basis(a, b));
                assert_eq!(lhs, h.br(&cols[a], &cols[b]));
            }
        }
    }

    #[test]
    fn outer_product_and_restriction() {
        let z = Vector::from_ints(&[0, 0, 1]);
        let a = AltForm::covector(3, 2);
        let p = Endomorphism::outer(&a, &z);
        assert_eq!(p.apply(&Vector::from_ints(&[4, 5, 3])), Vector::from_ints(&[0, 0, 3]));
        let rot = Endomorphism::from_images(&[
            Vector::from_ints(&[0, 1, 0]),
            Vector::from_ints(&[-1, 0, 0]),
            Vector::zeros(3),
        ]);
        let sub = [Vector::basis(3, 0), Vector::basis(3, 1)];
        let r = rot.restrict_to(&sub).unwrap();
        assert_eq!(r.square(), -&Endomorphism::identity(2));
    }
}
