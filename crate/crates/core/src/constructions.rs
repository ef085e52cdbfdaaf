//! Products of almost contact structures and Boothby–Wang central extensions.

use num_traits::Zero;

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::{d_unchecked, AltForm};
use crate::linalg::Vector;
use crate::pairs::{
    classify_contact_symplectic, construct_decomposable_psi, AlmostContactStructure,
    AlmostContactSymplecticStructure, ContactPairStructure, ContactSymplecticPair,
};
use crate::report::{Residual, VerificationReport, Witness};
use crate::scalar::frac;
use crate::tensor::{lie_derivative_endo, nijenhuis_at};

/// Two almost contact factors of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub left: AlmostContactStructure,
    pub right: AlmostContactStructure,
}

/// Contact pair structure `(α1, α2, φ1 ⊕ φ2)` on `L1 ⊕ L2`, each form
/// extended by zero on the other factor.
pub fn direct_sum(spec: &ProductSpec) -> Result<ContactPairStructure> {
    let (a, b) = (&spec.left, &spec.right);
    let (n1, n2) = (a.algebra().dim(), b.algebra().dim());
    let l = a.algebra().direct_sum(b.algebra());
    let alpha1 = a.alpha().embed(n1 + n2, 0);
    let alpha2 = b.alpha().embed(n1 + n2, n1);
    ContactPairStructure::from_forms(&l, &alpha1, &alpha2, a.phi().direct_sum(b.phi()))
}

/// The algebra on `L ⊕ ℝ e_{n+1}` with `[X, Y] = [X, Y]_L - η(X, Y) e_{n+1}`
/// and `e_{n+1}` central. Jacobi holds iff `dη = 0`; this is not checked here.
pub fn central_extension(l: &LieAlgebra, eta: &AltForm) -> Result<LieAlgebra> {
    let n = l.dim();
    if eta.dim() != n || eta.degree() != 2 {
        return Err(Error::InvalidForm("expected a 2-form on the base".into()));
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = l.constant(i, j, k);
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
            let c = eta.coeff(&[i, j]);
            if !c.is_zero() {
                entries.push((i, j, n, -c));
            }
        }
    }
    LieAlgebra::from_constants(n + 1, entries)
}

/// Lifts `(β, η, ψ)` to the contact pair structure `(α1, α2, φ)` on the
/// central extension by `η`: `α1` is the new coordinate (so `dα1 = η`),
/// `α2 = β`, `φ = ψ` on the base and `φ(Z1) = 0`.
pub fn boothby_wang_extend(a: &AlmostContactSymplecticStructure) -> Result<ContactPairStructure> {
    let c = a.csp();
    let n = c.dim();
    if !d_unchecked(c.algebra(), c.eta()).is_zero() {
        return Err(Error::NotClosed);
    }
    let ext = central_extension(c.algebra(), c.eta())?;
    let alpha1 = AltForm::covector(n + 1, n);
    let alpha2 = c.beta().embed(n + 1, 0);
    debug_assert_eq!(d_unchecked(&ext, &alpha1), c.eta().embed(n + 1, 0));
    let phi = a.psi().direct_sum(&Endomorphism::zero(1));
    ContactPairStructure::from_forms(&ext, &alpha1, &alpha2, phi)
}

/// Contact-symplectic pair `(β, η)` on the central extension of a symplectic
/// pair `(ω1, ω2)` by `ω1`: `β` is the new coordinate and `η = ω2`.
pub fn symplectic_pair_extend(l: &LieAlgebra, w1: &AltForm, w2: &AltForm) -> Result<ContactSymplecticPair> {
    crate::pairs::classify_symplectic_pair(l, w1, w2)?;
    let n = l.dim();
    let ext = central_extension(l, w1)?;
    classify_contact_symplectic(&ext, &AltForm::covector(n + 1, n), &w2.embed(n + 1, 0))
}

/// Symplectic pair → contact-symplectic pair (with a Darboux `ψ`) → contact pair.
pub fn double_extension(l: &LieAlgebra, w1: &AltForm, w2: &AltForm) -> Result<ContactPairStructure> {
    let csp = symplectic_pair_extend(l, w1, w2)?;
    let psi = construct_decomposable_psi(&csp)?;
    boothby_wang_extend(&AlmostContactSymplecticStructure::new(csp, psi)?)
}

/// The base conditions equivalent to integrability of `J` on the extension,
/// evaluated both in the derived form and in the printed-coefficient form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwBaseConditions {
    /// `η(X,Y) - η(ψX,ψY) - dβ(ψX,Y) - dβ(X,ψY) = 0`,
    /// `[ψ,ψ] + dβ ⊗ W + (η(ψX,Y) + η(X,ψY)) W = 0`, `L_W ψ = 0`.
    pub derived: VerificationReport,
    /// As printed: doubled `η` terms in the first condition and a halved
    /// `η` term in the second, with scalar terms acting along `W`.
    pub printed: VerificationReport,
}

impl BwBaseConditions {
    pub fn derived_holds(&self) -> bool {
        self.derived.passed()
    }
    pub fn printed_holds(&self) -> bool {
        self.printed.passed()
    }
    /// The two readings give different verdicts.
    pub fn discrepancy(&self) -> bool {
        self.derived_holds() != self.printed_holds()
    }
}

fn first_pair<T>(n: usize, f: impl Fn(&Vector, &Vector) -> Option<T>) -> Option<(usize, usize, T)> {
    for i in 0..n {
        for j in i + 1..n {
            if let Some(v) = f(&Vector::basis(n, i), &Vector::basis(n, j)) {
                return Some((i, j, v));
            }
        }
    }
    None
}

fn scalar_condition(n: usize, f: impl Fn(&Vector, &Vector) -> crate::scalar::Scalar) -> Option<Witness> {
    first_pair(n, |x, y| Some(f(x, y)).filter(|v| !v.is_zero()))
        .map(|(i, j, v)| Witness::new(vec![i, j], Residual::Scalar(v)))
}

fn vector_condition(n: usize, f: impl Fn(&Vector, &Vector) -> Vector) -> Option<Witness> {
    first_pair(n, |x, y| Some(f(x, y)).filter(|v| !v.is_zero()))
        .map(|(i, j, v)| Witness::new(vec![i, j], Residual::Vector(v)))
}

pub fn bw_base_conditions(a: &AlmostContactSymplecticStructure) -> BwBaseConditions {
    let c = a.csp();
    let (l, psi, w) = (c.algebra(), a.psi(), c.reeb());
    let (eta, db) = (c.eta(), c.dbeta());
    let n = c.dim();
    let two = crate::scalar::int(2);
    let half = frac(1, 2);

    let first = |k: &crate::scalar::Scalar| {
        scalar_condition(n, |x, y| {
            let (px, py) = (psi.apply(x), psi.apply(y));
            k * (eta.at2(x, y) - eta.at2(&px, &py)) - db.at2(&px, y) - db.at2(x, &py)
        })
    };
    let second = |k: &crate::scalar::Scalar| {
        vector_condition(n, |x, y| {
            let mut v = nijenhuis_at(l, psi, x, y);
            let s = eta.at2(&psi.apply(x), y) + eta.at2(x, &psi.apply(y));
            v.add_scaled(&(db.at2(x, y) + k * s), w);
            v
        })
    };
    let lw = lie_derivative_endo(l, w, psi).expect("valid structure");
    let third = (0..n).find_map(|j| {
        let v = lw.image(j);
        (!v.is_zero()).then(|| Witness::new(vec![j], Residual::Vector(v)))
    });

    let one = crate::scalar::int(1);
    let mut derived = VerificationReport::new();
    derived.record("eta-compatibility", first(&one));
    derived.record("mixed-nijenhuis", second(&one));
    derived.record("reeb-invariance", third.clone());
    let mut printed = VerificationReport::new();
    printed.record("eta-compatibility", first(&two));
    printed.record("mixed-nijenhuis", second(&half));
    printed.record("reeb-invariance", third);
    BwBaseConditions { derived, printed }
}

/// `η(ψX, ψY) = η(X, Y)` on all basis pairs.
pub fn eta_invariance(a: &AlmostContactSymplecticStructure) -> VerificationReport {
    let (eta, psi) = (a.csp().eta(), a.psi());
    let mut r = VerificationReport::new();
    r.record(
        "eta-invariant",
        scalar_condition(a.csp().dim(), |x, y| eta.at2(&psi.apply(x), &psi.apply(y)) - eta.at2(x, y)),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normality::{build_j, nijenhuis_of_complex};
    use crate::scalar::int;

    fn flat3() -> AlmostContactSymplecticStructure {
        let l = LieAlgebra::abelian(3);
        let psi = Endomorphism::from_images(&[Vector::basis(3, 1), -Vector::basis(3, 0), Vector::zeros(3)]);
        AlmostContactSymplecticStructure::from_forms(
            &l,
            &AltForm::covector(3, 2),
            &AltForm::monomial(3, &[0, 1]),
            psi,
        )
        .unwrap()
    }

    #[test]
    fn flat_extension_is_heisenberg_times_line() {
        let s = boothby_wang_extend(&flat3()).unwrap();
        assert_eq!(s.pair().kind(), (1, 0));
        assert!(s.is_decomposable());
        assert_eq!(s.algebra().bracket_basis(0, 1), Vector::from_ints(&[0, 0, 0, -1]));
        assert!(s.algebra().jacobi_check().passed());
        let c = bw_base_conditions(&flat3());
        assert!(c.derived_holds() && c.printed_holds());
        assert!(nijenhuis_of_complex(s.algebra(), &build_j(&s).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn central_extension_by_non_closed_form_breaks_jacobi() {
        let h = LieAlgebra::from_constants(3, [(0, 1, 2, int(1))]).unwrap();
        let base = h.direct_sum(&LieAlgebra::abelian(2));
        let closed = AltForm::monomial(5, &[3, 4]);
        assert!(central_extension(&base, &closed).unwrap().jacobi_check().passed());
        let open = closed.add(&AltForm::monomial(5, &[2, 3])).unwrap();
        assert!(!d_unchecked(&base, &open).is_zero());
        assert!(!central_extension(&base, &open).unwrap().jacobi_check().passed());
    }

    #[test]
    fn double_extension_of_abelian_four_space() {
        let l = LieAlgebra::abelian(4);
        let s = double_extension(&l, &AltForm::monomial(4, &[0, 1]), &AltForm::monomial(4, &[2, 3])).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.pair().kind(), (1, 1));
        assert!(s.algebra().jacobi_check().passed());
    }
}
