//! Contact pairs, symplectic pairs and contact-symplectic pairs; their Reeb
//! fields, characteristic splittings, and structure tensors.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::{d_unchecked, form_power, AltForm};
use crate::linalg::{in_span, span_rank, Matrix, Vector};
use crate::report::{Residual, VerificationReport, Witness};
use crate::scalar::{int, Scalar};

/// Why a pair of forms failed to classify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairDefect {
    WrongDegree,
    WrongDimensionParity,
    /// The candidate volume form is zero.
    VolumeVanishes,
    /// A power of the given form that must vanish does not (1-based form index).
    PowerNotZero(usize),
    /// A type component that must be positive is zero.
    DegenerateType,
    ReebSystem(String),
    ReebFieldsDoNotCommute,
    SplittingDimension,
    NotInvolutive,
}

impl fmt::Display for PairDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairDefect::WrongDegree => write!(f, "forms have the wrong degree"),
            PairDefect::WrongDimensionParity => write!(f, "dimension has the wrong parity"),
            PairDefect::VolumeVanishes => write!(f, "volume form vanishes"),
            PairDefect::PowerNotZero(i) => write!(f, "nilpotency condition fails for form {i}"),
            PairDefect::DegenerateType => write!(f, "both type components must be positive"),
            PairDefect::ReebSystem(e) => write!(f, "Reeb system: {e}"),
            PairDefect::ReebFieldsDoNotCommute => write!(f, "Reeb fields do not commute"),
            PairDefect::SplittingDimension => write!(f, "splitting has unexpected dimensions"),
            PairDefect::NotInvolutive => write!(f, "characteristic distribution not involutive"),
        }
    }
}

fn not_pair(d: PairDefect) -> Error {
    Error::NotContactPair(d.to_string())
}

fn check_form(l: &LieAlgebra, a: &AltForm, degree: usize) -> Result<()> {
    if a.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), found: a.dim() });
    }
    if a.degree() != degree {
        return Err(Error::DegreeMismatch { expected: degree, found: a.degree() });
    }
    Ok(())
}

/// Largest `m ≤ max` with `base ∧ (omega)^m ≠ 0`.
fn top_power(base: &AltForm, omega: &AltForm, max: usize) -> Option<usize> {
    (0..=max).rev().find(|&m| !base.wedge(&form_power(omega, m)).expect("same dim").is_zero())
}

/// Type `(h, k)` of a contact pair `(a1, a2)` on an even-dimensional algebra.
pub fn classify_contact_pair(l: &LieAlgebra, a1: &AltForm, a2: &AltForm) -> Result<(usize, usize)> {
    check_form(l, a1, 1)?;
    check_form(l, a2, 1)?;
    let n = l.dim();
    if n < 2 || n % 2 != 0 {
        return Err(not_pair(PairDefect::WrongDimensionParity));
    }
    let half = (n - 2) / 2;
    let (da1, da2) = (d_unchecked(l, a1), d_unchecked(l, a2));
    let h = top_power(a1, &da1, half).ok_or_else(|| not_pair(PairDefect::VolumeVanishes))?;
    let k = half - h;
    let volume = a1
        .wedge(&form_power(&da1, h))?
        .wedge(a2)?
        .wedge(&form_power(&da2, k))?;
    if volume.is_zero() {
        return Err(not_pair(PairDefect::VolumeVanishes));
    }
    if !form_power(&da1, h + 1).is_zero() {
        return Err(not_pair(PairDefect::PowerNotZero(1)));
    }
    if !form_power(&da2, k + 1).is_zero() {
        return Err(not_pair(PairDefect::PowerNotZero(2)));
    }
    Ok((h, k))
}

/// Appends the rows `i_X ω = 0` (one per basis covector) for unknown `X`
/// occupying columns `offset..offset + n`.
fn push_contraction_rows(rows: &mut Vec<Vec<Scalar>>, rhs: &mut Vec<Scalar>, omega: &AltForm, offset: usize, width: usize) {
    let n = omega.dim();
    let g = omega.gram();
    for m in 0..n {
        let mut row = vec![Scalar::zero(); width];
        // (i_X ω)(e_m) = Σ_l X_l ω(e_l, e_m)
        for l in 0..n {
            row[offset + l] = g.get(l, m).clone();
        }
        rows.push(row);
        rhs.push(Scalar::zero());
    }
}

fn push_value_row(rows: &mut Vec<Vec<Scalar>>, rhs: &mut Vec<Scalar>, alpha: &AltForm, offset: usize, width: usize, value: Scalar) {
    let mut row = vec![Scalar::zero(); width];
    for (i, c) in alpha.as_covector().into_coords().into_iter().enumerate() {
        row[offset + i] = c;
    }
    rows.push(row);
    rhs.push(value);
}

/// Reeb fields `(Z1, Z2)` of a contact pair: the unique solution of
/// `α_i(Z_j) = δ_ij`, `i_{Z_j} dα_i = 0`, solved as one exact system in `2n` unknowns.
pub fn reeb_pair(l: &LieAlgebra, a1: &AltForm, a2: &AltForm) -> Result<(Vector, Vector)> {
    check_form(l, a1, 1)?;
    check_form(l, a2, 1)?;
    let n = l.dim();
    let (da1, da2) = (d_unchecked(l, a1), d_unchecked(l, a2));
    let width = 2 * n;
    let (mut rows, mut rhs) = (Vec::new(), Vec::new());
    for (slot, offset) in [(0usize, 0usize), (1, n)] {
        push_value_row(&mut rows, &mut rhs, a1, offset, width, if slot == 0 { int(1) } else { int(0) });
        push_value_row(&mut rows, &mut rhs, a2, offset, width, if slot == 1 { int(1) } else { int(0) });
        push_contraction_rows(&mut rows, &mut rhs, &da1, offset, width);
        push_contraction_rows(&mut rows, &mut rhs, &da2, offset, width);
    }
    let sol = Matrix::from_rows(rows)?
        .solve(&Vector::new(rhs))
        .map_err(|e| not_pair(PairDefect::ReebSystem(e.to_string())))?
        .into_coords();
    let z1 = Vector::new(sol[..n].to_vec());
    let z2 = Vector::new(sol[n..].to_vec());
    if !l.br(&z1, &z2).is_zero() {
        return Err(not_pair(PairDefect::ReebFieldsDoNotCommute));
    }
    Ok((z1, z2))
}

/// Reeb field of a contact form (or of `dt` on a line): `α(Z) = 1`, `i_Z dα = 0`.
pub fn reeb_field(l: &LieAlgebra, alpha: &AltForm) -> Result<Vector> {
    check_form(l, alpha, 1)?;
    let n = l.dim();
    let (mut rows, mut rhs) = (Vec::new(), Vec::new());
    push_value_row(&mut rows, &mut rhs, alpha, 0, n, int(1));
    push_contraction_rows(&mut rows, &mut rhs, &d_unchecked(l, alpha), 0, n);
    Matrix::from_rows(rows)?
        .solve(&Vector::new(rhs))
        .map_err(|e| Error::NotAlmostContact(format!("Reeb system: {e}")))
}

/// A classified contact pair with its Reeb fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactPair {
    algebra: LieAlgebra,
    alpha1: AltForm,
    alpha2: AltForm,
    dalpha1: AltForm,
    dalpha2: AltForm,
    h: usize,
    k: usize,
    z1: Vector,
    z2: Vector,
}

impl ContactPair {
    pub fn new(l: &LieAlgebra, a1: &AltForm, a2: &AltForm) -> Result<Self> {
        let (h, k) = classify_contact_pair(l, a1, a2)?;
        let (z1, z2) = reeb_pair(l, a1, a2)?;
        Ok(ContactPair {
            algebra: l.clone(),
            alpha1: a1.clone(),
            alpha2: a2.clone(),
            dalpha1: d_unchecked(l, a1),
            dalpha2: d_unchecked(l, a2),
            h,
            k,
            z1,
            z2,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn alpha1(&self) -> &AltForm {
        &self.alpha1
    }
    pub fn alpha2(&self) -> &AltForm {
        &self.alpha2
    }
    pub fn dalpha1(&self) -> &AltForm {
        &self.dalpha1
    }
    pub fn dalpha2(&self) -> &AltForm {
        &self.dalpha2
    }
    pub fn kind(&self) -> (usize, usize) {
        (self.h, self.k)
    }
    pub fn z1(&self) -> &Vector {
        &self.z1
    }
    pub fn z2(&self) -> &Vector {
        &self.z2
    }

    /// The pair `(α2, α1)`.
    pub fn swapped(&self) -> ContactPair {
        ContactPair {
            algebra: self.algebra.clone(),
            alpha1: self.alpha2.clone(),
            alpha2: self.alpha1.clone(),
            dalpha1: self.dalpha2.clone(),
            dalpha2: self.dalpha1.clone(),
            h: self.k,
            k: self.h,
            z1: self.z2.clone(),
            z2: self.z1.clone(),
        }
    }

    /// `-Id + α1 ⊗ Z1 + α2 ⊗ Z2`, the required value of `φ²`.
    pub fn phi_square_target(&self) -> Endomorphism {
        let n = self.dim();
        let t = &Endomorphism::outer(&self.alpha1, &self.z1) + &Endomorphism::outer(&self.alpha2, &self.z2);
        &t - &Endomorphism::identity(n)
    }
}

/// Bases of the pieces of `g = TG1 ⊕ TG2 ⊕ ℝZ1 ⊕ ℝZ2`, with
/// `TF1 = TG1 ⊕ ℝZ2` and `TF2 = TG2 ⊕ ℝZ1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingBases {
    pub tg1: Vec<Vector>,
    pub tg2: Vec<Vector>,
    pub tf1: Vec<Vector>,
    pub tf2: Vec<Vector>,
    pub z1: Vector,
    pub z2: Vector,
}

/// `ker ω ∩ ker a ∩ ker b` for a 2-form `ω` and 1-forms `a`, `b`.
fn joint_kernel(omega: &AltForm, ones: &[&AltForm]) -> Vec<Vector> {
    let n = omega.dim();
    let mut rows: Vec<Vec<Scalar>> = ones.iter().map(|a| a.as_covector().into_coords()).collect();
    let g = omega.gram();
    for m in 0..n {
        rows.push(g.row(m).into_coords());
    }
    Matrix::from_rows(rows).expect("rectangular").kernel()
}

pub fn splitting_bases(p: &ContactPair) -> Result<SplittingBases> {
    let n = p.dim();
    let (h, k) = p.kind();
    let tg1 = joint_kernel(&p.dalpha1, &[&p.alpha1, &p.alpha2]);
    let tg2 = joint_kernel(&p.dalpha2, &[&p.alpha1, &p.alpha2]);
    if tg1.len() != 2 * k || tg2.len() != 2 * h {
        return Err(not_pair(PairDefect::SplittingDimension));
    }
    let mut all = tg1.clone();
    all.extend(tg2.iter().cloned());
    all.push(p.z1.clone());
    all.push(p.z2.clone());
    if span_rank(n, &all) != n {
        return Err(not_pair(PairDefect::SplittingDimension));
    }
    let mut tf1 = tg1.clone();
    tf1.push(p.z2.clone());
    let mut tf2 = tg2.clone();
    tf2.push(p.z1.clone());
    if !p.algebra.is_subalgebra(&tf1) || !p.algebra.is_subalgebra(&tf2) {
        return Err(not_pair(PairDefect::NotInvolutive));
    }
    Ok(SplittingBases { tg1, tg2, tf1, tf2, z1: p.z1.clone(), z2: p.z2.clone() })
}

/// Type `(h, k)`, both positive, of a symplectic pair of closed 2-forms.
pub fn classify_symplectic_pair(l: &LieAlgebra, w1: &AltForm, w2: &AltForm) -> Result<(usize, usize)> {
    let fail = |d: PairDefect| Error::NotSymplecticPair(d.to_string());
    check_form(l, w1, 2)?;
    check_form(l, w2, 2)?;
    if !d_unchecked(l, w1).is_zero() || !d_unchecked(l, w2).is_zero() {
        return Err(Error::NotClosed);
    }
    let n = l.dim();
    if n % 2 != 0 {
        return Err(fail(PairDefect::WrongDimensionParity));
    }
    let unit = AltForm::one(n);
    let h = top_power(&unit, w1, n / 2).unwrap_or(0);
    let k = n / 2 - h;
    if h == 0 || k == 0 {
        return Err(fail(PairDefect::DegenerateType));
    }
    if !form_power(w2, k + 1).is_zero() {
        return Err(fail(PairDefect::PowerNotZero(2)));
    }
    if form_power(w1, h).wedge(&form_power(w2, k))?.is_zero() {
        return Err(fail(PairDefect::VolumeVanishes));
    }
    Ok((h, k))
}

/// A classified contact-symplectic pair `(β, η)` with Reeb field `W` and the
/// splitting `g = ℝW ⊕ TH ⊕ TF2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSymplecticPair {
    algebra: LieAlgebra,
    beta: AltForm,
    eta: AltForm,
    dbeta: AltForm,
    h: usize,
    k: usize,
    w: Vector,
    th: Vec<Vector>,
    tf2: Vec<Vector>,
}

impl ContactSymplecticPair {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn beta(&self) -> &AltForm {
        &self.beta
    }
    pub fn eta(&self) -> &AltForm {
        &self.eta
    }
    pub fn dbeta(&self) -> &AltForm {
        &self.dbeta
    }
    pub fn kind(&self) -> (usize, usize) {
        (self.h, self.k)
    }
    pub fn reeb(&self) -> &Vector {
        &self.w
    }
    /// `ker β ∩ ker η`, where `dβ` is nondegenerate.
    pub fn th(&self) -> &[Vector] {
        &self.th
    }
    /// `ker β ∩ ker dβ`, where `η` is nondegenerate.
    pub fn tf2(&self) -> &[Vector] {
        &self.tf2
    }
}

fn nondegenerate_on(omega: &AltForm, basis: &[Vector]) -> bool {
    let r = omega.restrict_to(basis);
    r.gram().rank() == basis.len()
}

pub fn classify_contact_symplectic(l: &LieAlgebra, b: &AltForm, e: &AltForm) -> Result<ContactSymplecticPair> {
    let fail = |d: PairDefect| Error::NotContactSymplectic(d.to_string());
    check_form(l, b, 1)?;
    check_form(l, e, 2)?;
    if !d_unchecked(l, e).is_zero() {
        return Err(Error::NotClosed);
    }
    let n = l.dim();
    if n % 2 != 1 {
        return Err(fail(PairDefect::WrongDimensionParity));
    }
    let half = (n - 1) / 2;
    let db = d_unchecked(l, b);
    let h = top_power(b, &db, half).ok_or_else(|| fail(PairDefect::VolumeVanishes))?;
    let k = half - h;
    if b.wedge(&form_power(&db, h))?.wedge(&form_power(e, k))?.is_zero() {
        return Err(fail(PairDefect::VolumeVanishes));
    }
    if !form_power(&db, h + 1).is_zero() {
        return Err(fail(PairDefect::PowerNotZero(1)));
    }
    if !form_power(e, k + 1).is_zero() {
        return Err(fail(PairDefect::PowerNotZero(2)));
    }
    let (mut rows, mut rhs) = (Vec::new(), Vec::new());
    push_value_row(&mut rows, &mut rhs, b, 0, n, int(1));
    push_contraction_rows(&mut rows, &mut rhs, &db, 0, n);
    push_contraction_rows(&mut rows, &mut rhs, e, 0, n);
    let w = Matrix::from_rows(rows)?
        .solve(&Vector::new(rhs))
        .map_err(|err| fail(PairDefect::ReebSystem(err.to_string())))?;
    let th = joint_kernel(e, &[b]);
    let tf2 = joint_kernel(&db, &[b]);
    if th.len() != 2 * h || tf2.len() != 2 * k {
        return Err(fail(PairDefect::SplittingDimension));
    }
    let mut all = th.clone();
    all.extend(tf2.iter().cloned());
    all.push(w.clone());
    if span_rank(n, &all) != n || !nondegenerate_on(&db, &th) || !nondegenerate_on(e, &tf2) {
        return Err(fail(PairDefect::SplittingDimension));
    }
    Ok(ContactSymplecticPair {
        algebra: l.clone(),
        beta: b.clone(),
        eta: e.clone(),
        dbeta: db,
        h,
        k,
        w,
        th,
        tf2,
    })
}

/// Checks `φ² = -Id + α1⊗Z1 + α2⊗Z2`, `φ(Z_i) = 0`, and the consequences
/// `α_i ∘ φ = 0`, `rank φ = dim - 2`.
pub fn verify_cps(p: &ContactPair, phi: &Endomorphism) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = p.dim();
    if phi.dim() != n {
        report.record_note("dimension", false, format!("expected {n}, found {}", phi.dim()));
        return report;
    }
    let diff = &phi.square() - &p.phi_square_target();
    report.record("phi-squared", first_nonzero_column(&diff));
    report.record("phi-z1", nonzero_witness(phi.apply(&p.z1)));
    report.record("phi-z2", nonzero_witness(phi.apply(&p.z2)));
    report.record("alpha1-phi", covector_witness(&p.alpha1, phi));
    report.record("alpha2-phi", covector_witness(&p.alpha2, phi));
    let rank = phi.rank();
    report.record(
        "rank",
        (rank != n - 2).then(|| Witness::new(vec![], Residual::Scalar(int(rank as i64)))),
    );
    report
}

pub(crate) fn first_nonzero_column(e: &Endomorphism) -> Option<Witness> {
    (0..e.dim()).find_map(|j| {
        let c = e.image(j);
        (!c.is_zero()).then(|| Witness::new(vec![j], Residual::Vector(c)))
    })
}

fn nonzero_witness(v: Vector) -> Option<Witness> {
    (!v.is_zero()).then(|| Witness::new(vec![], Residual::Vector(v)))
}

fn covector_witness(alpha: &AltForm, phi: &Endomorphism) -> Option<Witness> {
    (0..phi.dim()).find_map(|j| {
        let v = alpha.at(&phi.image(j));
        (!v.is_zero()).then(|| Witness::new(vec![j], Residual::Scalar(v)))
    })
}

/// Which basis vectors of `basis` are not mapped into its span.
fn preservation_witness(dim: usize, f: &Endomorphism, basis: &[Vector]) -> Option<Witness> {
    basis.iter().enumerate().find_map(|(i, b)| {
        let img = f.apply(b);
        (!in_span(dim, basis, &img)).then(|| Witness::new(vec![i], Residual::Vector(img)))
    })
}

/// `φ(TF_i) ⊂ TF_i` for `i = 1, 2`; witnesses index into the `TF_i` basis.
pub fn is_decomposable(p: &ContactPair, phi: &Endomorphism, s: &SplittingBases) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.record("preserves-tf1", preservation_witness(p.dim(), phi, &s.tf1));
    report.record("preserves-tf2", preservation_witness(p.dim(), phi, &s.tf2));
    report
}

/// Symplectic Gram–Schmidt: a basis `(v_i, w_i)` of `span(subspace)` with
/// `ω(v_i, w_j) = δ_ij` and `ω(v_i, v_j) = ω(w_i, w_j) = 0`.
pub fn darboux_basis(omega: &AltForm, subspace: &[Vector]) -> Result<Vec<(Vector, Vector)>> {
    let mut rest: Vec<Vector> = subspace.to_vec();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let v = rest.remove(0);
        let partner = rest
            .iter()
            .position(|w| !omega.at2(&v, w).is_zero())
            .ok_or(Error::Degenerate)?;
        let w = rest.remove(partner);
        let w = w.scaled(&omega.at2(&v, &w).recip());
        for u in rest.iter_mut() {
            let (uw, uv) = (omega.at2(u, &w), omega.at2(u, &v));
            u.add_scaled(&-uw, &v);
            u.add_scaled(&uv, &w);
        }
        out.push((v, w));
    }
    Ok(out)
}

/// The endomorphism taking `basis[i]` to `images[i]` (`basis` must be a basis).
pub fn endomorphism_from_basis(basis: &[Vector], images: &[Vector]) -> Result<Endomorphism> {
    let n = basis.len();
    let m = Matrix::from_columns(n, basis);
    let inv = m
        .inverse()
        .ok_or_else(|| Error::Precondition("vectors do not form a basis".into()))?;
    Endomorphism::from_matrix(Matrix::from_columns(n, images).mul(&inv))
}

/// Standard rotation `v ↦ w`, `w ↦ -v` on Darboux planes, zero on `kernel`.
fn rotation_on_planes(dim: usize, planes: &[(Vector, Vector)], kernel: &[Vector]) -> Result<Endomorphism> {
    let (mut basis, mut images) = (Vec::new(), Vec::new());
    for (v, w) in planes {
        basis.push(v.clone());
        images.push(w.clone());
        basis.push(w.clone());
        images.push(-v);
    }
    for z in kernel {
        basis.push(z.clone());
        images.push(Vector::zeros(dim));
    }
    endomorphism_from_basis(&basis, &images)
}

/// Decomposable `φ` built from Darboux bases of `dα1|TG2` and `dα2|TG1`.
pub fn construct_decomposable_phi(p: &ContactPair, s: &SplittingBases) -> Result<Endomorphism> {
    let mut planes = darboux_basis(&p.dalpha1, &s.tg2)?;
    planes.extend(darboux_basis(&p.dalpha2, &s.tg1)?);
    rotation_on_planes(p.dim(), &planes, &[p.z1.clone(), p.z2.clone()])
}

/// Contact pair together with a valid structure tensor `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactPairStructure {
    pair: ContactPair,
    phi: Endomorphism,
    splitting: SplittingBases,
}

impl ContactPairStructure {
    pub fn new(pair: ContactPair, phi: Endomorphism) -> Result<Self> {
        let report = verify_cps(&pair, &phi);
        if let Some(f) = report.first_failure() {
            return Err(Error::InvalidStructureTensor(f.name.clone()));
        }
        let splitting = splitting_bases(&pair)?;
        Ok(ContactPairStructure { pair, phi, splitting })
    }

    /// Builds the pair from forms and attaches `φ`.
    pub fn from_forms(l: &LieAlgebra, a1: &AltForm, a2: &AltForm, phi: Endomorphism) -> Result<Self> {
        Self::new(ContactPair::new(l, a1, a2)?, phi)
    }

    pub fn pair(&self) -> &ContactPair {
        &self.pair
    }
    pub fn phi(&self) -> &Endomorphism {
        &self.phi
    }
    pub fn splitting(&self) -> &SplittingBases {
        &self.splitting
    }
    pub fn algebra(&self) -> &LieAlgebra {
        self.pair.algebra()
    }
    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn is_decomposable(&self) -> bool {
        is_decomposable(&self.pair, &self.phi, &self.splitting).passed()
    }

    /// The same structure expressed in the basis `f_j = Σ_i p[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let l = self.algebra().change_basis(p)?;
        let a1 = self.pair.alpha1.change_basis(p)?;
        let a2 = self.pair.alpha2.change_basis(p)?;
        Self::from_forms(&l, &a1, &a2, self.phi.change_basis(p)?)
    }
}

/// Checks `ψ² = -Id + β ⊗ W` and `ψ(W) = 0`.
pub fn verify_acss(c: &ContactSymplecticPair, psi: &Endomorphism) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = c.dim();
    if psi.dim() != n {
        report.record_note("dimension", false, format!("expected {n}, found {}", psi.dim()));
        return report;
    }
    let target = &Endomorphism::outer(&c.beta, &c.w) - &Endomorphism::identity(n);
    report.record("psi-squared", first_nonzero_column(&(&psi.square() - &target)));
    report.record("psi-w", nonzero_witness(psi.apply(&c.w)));
    report
}

/// `ψ(TH) ⊂ TH` and `ψ(TF2) ⊂ TF2`.
pub fn acss_decomposable(c: &ContactSymplecticPair, psi: &Endomorphism) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.record("preserves-th", preservation_witness(c.dim(), psi, &c.th));
    report.record("preserves-tf2", preservation_witness(c.dim(), psi, &c.tf2));
    report
}

/// Decomposable `ψ` from Darboux bases of `dβ|TH` and `η|TF2`.
pub fn construct_decomposable_psi(c: &ContactSymplecticPair) -> Result<Endomorphism> {
    let mut planes = darboux_basis(&c.dbeta, &c.th)?;
    planes.extend(darboux_basis(&c.eta, &c.tf2)?);
    rotation_on_planes(c.dim(), &planes, std::slice::from_ref(&c.w))
}

/// Contact-symplectic pair with a valid `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactSymplecticStructure {
    csp: ContactSymplecticPair,
    psi: Endomorphism,
}

impl AlmostContactSymplecticStructure {
    pub fn new(csp: ContactSymplecticPair, psi: Endomorphism) -> Result<Self> {
        if let Some(f) = verify_acss(&csp, &psi).first_failure() {
            return Err(Error::InvalidStructureTensor(f.name.clone()));
        }
        Ok(AlmostContactSymplecticStructure { csp, psi })
    }

    pub fn from_forms(l: &LieAlgebra, beta: &AltForm, eta: &AltForm, psi: Endomorphism) -> Result<Self> {
        Self::new(classify_contact_symplectic(l, beta, eta)?, psi)
    }

    pub fn csp(&self) -> &ContactSymplecticPair {
        &self.csp
    }
    pub fn psi(&self) -> &Endomorphism {
        &self.psi
    }

    pub fn is_decomposable(&self) -> bool {
        acss_decomposable(&self.csp, &self.psi).passed()
    }

    /// The underlying almost contact structure `(β, W, ψ)`.
    pub fn as_almost_contact(&self) -> AlmostContactStructure {
        AlmostContactStructure {
            algebra: self.csp.algebra.clone(),
            alpha: self.csp.beta.clone(),
            reeb: self.csp.w.clone(),
            phi: self.psi.clone(),
        }
    }
}

/// Almost contact structure `(α, Z, φ)`: `α(Z) = 1`, `φ² = -Id + α⊗Z`, `φZ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactStructure {
    algebra: LieAlgebra,
    alpha: AltForm,
    reeb: Vector,
    phi: Endomorphism,
}

impl AlmostContactStructure {
    pub fn new(l: &LieAlgebra, alpha: &AltForm, reeb: &Vector, phi: &Endomorphism) -> Result<Self> {
        check_form(l, alpha, 1)?;
        l.check_vector(reeb)?;
        crate::tensor::check_endo(l, phi)?;
        let report = verify_almost_contact(alpha, reeb, phi);
        if let Some(f) = report.first_failure() {
            return Err(Error::NotAlmostContact(f.name.clone()));
        }
        Ok(AlmostContactStructure {
            algebra: l.clone(),
            alpha: alpha.clone(),
            reeb: reeb.clone(),
            phi: phi.clone(),
        })
    }

    /// Uses the Reeb field of `alpha` as `Z`.
    pub fn with_reeb_field(l: &LieAlgebra, alpha: &AltForm, phi: &Endomorphism) -> Result<Self> {
        let z = reeb_field(l, alpha)?;
        Self::new(l, alpha, &z, phi)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }
    pub fn alpha(&self) -> &AltForm {
        &self.alpha
    }
    pub fn reeb(&self) -> &Vector {
        &self.reeb
    }
    pub fn phi(&self) -> &Endomorphism {
        &self.phi
    }
}

/// The identities defining an almost contact structure.
pub fn verify_almost_contact(alpha: &AltForm, z: &Vector, phi: &Endomorphism) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = z.dim();
    let az = alpha.at(z);
    report.record(
        "alpha-z",
        (!az.is_one()).then(|| Witness::new(vec![], Residual::Scalar(az))),
    );
    let target = &Endomorphism::outer(alpha, z) - &Endomorphism::identity(n);
    report.record("phi-squared", first_nonzero_column(&(&phi.square() - &target)));
    report.record("phi-z", nonzero_witness(phi.apply(z)));
    report
}
