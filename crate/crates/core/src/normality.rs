//! Associated almost complex structures `J`, `T` and every normality
//! predicate of a contact pair structure.
//!
//! 2-forms use the determinant convention `dα(X, Y) = -α([X, Y])`, so the
//! normality tensor reads `[φ, φ] + dα1 ⊗ Z1 + dα2 ⊗ Z2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::{d_unchecked, lie_derivative_form, AltForm};
use crate::linalg::{coordinates_in, Vector};
use crate::pairs::{verify_almost_contact, ContactPairStructure};
use crate::report::{Residual, VerificationReport, Witness};
use crate::tensor::{lie_derivative_endo, nijenhuis_at, nijenhuis_endo, VectorValuedTwoForm};

fn is_minus_identity(j: &Endomorphism) -> bool {
    (&j.square() + &Endomorphism::identity(j.dim())).is_zero()
}

/// `J = φ - α2 ⊗ Z1 + α1 ⊗ Z2`.
pub fn build_j(s: &ContactPairStructure) -> Result<Endomorphism> {
    let p = s.pair();
    let j = &(s.phi() - &Endomorphism::outer(p.alpha2(), p.z1())) + &Endomorphism::outer(p.alpha1(), p.z2());
    if !is_minus_identity(&j) {
        return Err(Error::InvalidStructureTensor("J squared is not -Id".into()));
    }
    Ok(j)
}

/// `T = φ + α2 ⊗ Z1 - α1 ⊗ Z2`.
pub fn build_t(s: &ContactPairStructure) -> Result<Endomorphism> {
    let p = s.pair();
    let t = &(s.phi() + &Endomorphism::outer(p.alpha2(), p.z1())) - &Endomorphism::outer(p.alpha1(), p.z2());
    if !is_minus_identity(&t) {
        return Err(Error::InvalidStructureTensor("T squared is not -Id".into()));
    }
    let j = build_j(s)?;
    if j.compose(&t) != t.compose(&j) {
        return Err(Error::InvalidStructureTensor("J and T do not commute".into()));
    }
    Ok(t)
}

/// `N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]` for `J² = -Id`.
pub fn nijenhuis_of_complex(l: &LieAlgebra, j: &Endomorphism) -> Result<VectorValuedTwoForm> {
    crate::tensor::check_endo(l, j)?;
    if !is_minus_identity(j) {
        return Err(Error::Precondition("J squared is not -Id".into()));
    }
    let n = l.dim();
    Ok(VectorValuedTwoForm::from_fn(n, |a, b| {
        let (x, y) = (Vector::basis(n, a), Vector::basis(n, b));
        let (jx, jy) = (j.apply(&x), j.apply(&y));
        let mut out = l.br(&jx, &jy);
        out = &out - &j.apply(&l.br(&jx, &y));
        out = &out - &j.apply(&l.br(&x, &jy));
        &out - &l.br(&x, &y)
    }))
}

/// `[φ, φ](X, Y) + dα1(X, Y) Z1 + dα2(X, Y) Z2` on all basis pairs.
pub fn normality_tensor(s: &ContactPairStructure) -> VectorValuedTwoForm {
    let p = s.pair();
    let l = s.algebra();
    let n = s.dim();
    VectorValuedTwoForm::from_fn(n, |a, b| {
        let (x, y) = (Vector::basis(n, a), Vector::basis(n, b));
        let mut out = nijenhuis_at(l, s.phi(), &x, &y);
        out.add_scaled(&p.dalpha1().at2(&x, &y), p.z1());
        out.add_scaled(&p.dalpha2().at2(&x, &y), p.z2());
        out
    })
}

/// Shared body of the expanded formulas; `sign = 1` gives `N_J`, `sign = -1` gives `N_T`.
fn expanded(s: &ContactPairStructure, sign: i64) -> VectorValuedTwoForm {
    let p = s.pair();
    let l = s.algebra();
    let n = s.dim();
    let phi = s.phi();
    let lz1 = lie_derivative_endo(l, p.z1(), phi).expect("valid structure");
    let lz2 = lie_derivative_endo(l, p.z2(), phi).expect("valid structure");
    // L_{φ e_i} α_k for every basis vector.
    let l_alpha = |alpha: &AltForm| -> Vec<AltForm> {
        (0..n)
            .map(|i| lie_derivative_form(l, &phi.image(i), alpha).expect("valid structure"))
            .collect()
    };
    let (la1, la2) = (l_alpha(p.alpha1()), l_alpha(p.alpha2()));
    let s_ = crate::scalar::int(sign);
    VectorValuedTwoForm::from_fn(n, |a, b| {
        let (x, y) = (Vector::basis(n, a), Vector::basis(n, b));
        let mut out = nijenhuis_at(l, phi, &x, &y);
        out.add_scaled(&p.dalpha1().at2(&x, &y), p.z1());
        out.add_scaled(&p.dalpha2().at2(&x, &y), p.z2());

        let mut corr = Vector::zeros(n);
        corr.add_scaled(&p.alpha1().at(&x), &lz2.image(b));
        corr.add_scaled(&-p.alpha1().at(&y), &lz2.image(a));
        corr.add_scaled(&p.alpha2().at(&y), &lz1.image(a));
        corr.add_scaled(&-p.alpha2().at(&x), &lz1.image(b));
        corr.add_scaled(&(la1[a].at(&y) - la1[b].at(&x)), p.z2());
        corr.add_scaled(&(la2[b].at(&x) - la2[a].at(&y)), p.z1());
        out.add_scaled(&s_, &corr);
        out
    })
}

/// `N_J` assembled term by term from `[φ, φ]`, `dα_i`, `L_{Z_i} φ` and `L_{φX} α_i`.
pub fn nj_expanded(s: &ContactPairStructure) -> VectorValuedTwoForm {
    expanded(s, 1)
}

/// `N_T`: the expanded `N_J` with every Lie-derivative correction negated.
pub fn nt_expanded(s: &ContactPairStructure) -> VectorValuedTwoForm {
    expanded(s, -1)
}

/// `(L_{Z1} φ = 0, L_{Z2} φ = 0)`.
pub fn k_contact_flags(s: &ContactPairStructure) -> (bool, bool) {
    let p = s.pair();
    let l = s.algebra();
    (
        lie_derivative_endo(l, p.z1(), s.phi()).expect("valid structure").is_zero(),
        lie_derivative_endo(l, p.z2(), s.phi()).expect("valid structure").is_zero(),
    )
}

/// Normality `[φ, φ] + dα ⊗ Z = 0` of an almost contact structure, on all basis pairs.
pub fn almost_contact_normality(
    l: &LieAlgebra,
    alpha: &AltForm,
    z: &Vector,
    phi: &Endomorphism,
) -> Result<VerificationReport> {
    l.check_vector(z)?;
    crate::tensor::check_endo(l, phi)?;
    if alpha.dim() != l.dim() || alpha.degree() != 1 {
        return Err(Error::InvalidForm("expected a 1-form on the algebra".into()));
    }
    if let Some(f) = verify_almost_contact(alpha, z, phi).first_failure() {
        return Err(Error::Precondition(format!("not an almost contact structure: {}", f.name)));
    }
    let da = d_unchecked(l, alpha);
    let n = l.dim();
    let tensor = VectorValuedTwoForm::from_fn(n, |a, b| {
        let (x, y) = (Vector::basis(n, a), Vector::basis(n, b));
        let mut out = nijenhuis_at(l, phi, &x, &y);
        out.add_scaled(&da.at2(&x, &y), z);
        out
    });
    let mut report = VerificationReport::new();
    report.record("normal", tensor.first_witness());
    Ok(report)
}

/// Arguments and nonzero value at which a flag failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagWitness {
    pub args: Vec<Vector>,
    pub residual: Vector,
}

impl fmt::Display for FlagWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|v| v.to_string()).collect();
        write!(f, "({}) -> {}", args.join(", "), self.residual)
    }
}

/// Every normality flag of a contact pair structure.
///
/// The leaf and split flags are `None` when `φ` is not decomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub kind: (usize, usize),
    pub decomposable: bool,
    pub pair_normal: bool,
    pub j_integrable: bool,
    pub t_integrable: bool,
    pub tensor_zero: bool,
    pub eq9_holds: Option<bool>,
    pub eq10_holds: Option<bool>,
    pub eq11_holds: Option<bool>,
    pub lz1_phi_zero: bool,
    pub lz2_phi_zero: bool,
    pub induced1_normal: Option<bool>,
    pub induced2_normal: Option<bool>,
    /// First witness of each failed flag, keyed by flag name.
    pub witnesses: BTreeMap<String, FlagWitness>,
}

impl NormalityReport {
    /// `(name, value)` for every flag, in a fixed order.
    pub fn flags(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("decomposable", Some(self.decomposable)),
            ("pair_normal", Some(self.pair_normal)),
            ("J_integrable", Some(self.j_integrable)),
            ("T_integrable", Some(self.t_integrable)),
            ("normality_tensor_zero", Some(self.tensor_zero)),
            ("eq9_holds", self.eq9_holds),
            ("eq10_holds", self.eq10_holds),
            ("eq11_holds", self.eq11_holds),
            ("LZ1_phi_zero", Some(self.lz1_phi_zero)),
            ("LZ2_phi_zero", Some(self.lz2_phi_zero)),
            ("induced1_normal", self.induced1_normal),
            ("induced2_normal", self.induced2_normal),
        ]
    }
}

impl fmt::Display for NormalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type ({}, {})", self.kind.0, self.kind.1)?;
        for (name, value) in self.flags() {
            let v = match value {
                Some(true) => "true",
                Some(false) => "false",
                None => "n/a",
            };
            write!(f, "{name}: {v}")?;
            if let Some(w) = self.witnesses.get(name) {
                write!(f, "  witness {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn tensor_witness(t: &VectorValuedTwoForm) -> Option<FlagWitness> {
    let n = t.dim();
    t.nonzero().next().map(|((i, j), v)| FlagWitness {
        args: vec![Vector::basis(n, *i), Vector::basis(n, *j)],
        residual: v.clone(),
    })
}

/// First pair `(x, y)`, `x` from `left`, `y` from `right`, where `f` is nonzero.
/// When `left` and `right` are the same basis only pairs `i < j` are visited.
fn scan_pairs(
    left: &[Vector],
    right: &[Vector],
    same: bool,
    f: impl Fn(&Vector, &Vector) -> Vector,
) -> Option<FlagWitness> {
    for (i, x) in left.iter().enumerate() {
        for (j, y) in right.iter().enumerate() {
            if same && j <= i {
                continue;
            }
            let v = f(x, y);
            if !v.is_zero() {
                return Some(FlagWitness { args: vec![x.clone(), y.clone()], residual: v });
            }
        }
    }
    None
}

/// The three split equations on `TF2 × TF2`, `TF1 × TF1` and `TF1 × TF2`.
fn split_equations(s: &ContactPairStructure) -> [Option<FlagWitness>; 3] {
    let p = s.pair();
    let l = s.algebra();
    let sp = s.splitting();
    let phi = s.phi();
    let eq9 = scan_pairs(&sp.tf2, &sp.tf2, true, |x, y| {
        let mut v = nijenhuis_at(l, phi, x, y);
        v.add_scaled(&p.dalpha1().at2(x, y), p.z1());
        v
    });
    let eq10 = scan_pairs(&sp.tf1, &sp.tf1, true, |x, y| {
        let mut v = nijenhuis_at(l, phi, x, y);
        v.add_scaled(&p.dalpha2().at2(x, y), p.z2());
        v
    });
    let eq11 = scan_pairs(&sp.tf1, &sp.tf2, false, |x, y| nijenhuis_at(l, phi, x, y));
    [eq9, eq10, eq11]
}

/// Normality of the structure `(α_which, Z_which, φ)` induced on the leaves of
/// the other characteristic foliation: `which = 1` uses `TF2`, `which = 2` uses `TF1`.
///
/// Computed intrinsically on the leaf subalgebra; witnesses index the leaf basis.
pub fn induced_normality(s: &ContactPairStructure, which: u8) -> Result<VerificationReport> {
    let p = s.pair();
    let sp = s.splitting();
    let (alpha, z, basis) = match which {
        1 => (p.alpha1(), p.z1(), &sp.tf2),
        2 => (p.alpha2(), p.z2(), &sp.tf1),
        _ => return Err(Error::Precondition(format!("foliation index must be 1 or 2, got {which}"))),
    };
    if !s.is_decomposable() {
        return Err(Error::NotDecomposable);
    }
    let leaf = s.algebra().restrict_to(basis)?;
    let phi = s.phi().restrict_to(basis)?;
    let z = Vector::new(coordinates_in(basis, z).expect("Reeb field lies on its leaf"));
    almost_contact_normality(&leaf, &alpha.restrict_to(basis), &z, &phi)
}

fn leaf_witness(report: &VerificationReport, basis: &[Vector]) -> Option<FlagWitness> {
    let w = report.first_failure()?.witness.as_ref()?;
    let residual = match &w.residual {
        Residual::Vector(v) => Vector::combination(basis[0].dim(), v.coords(), basis),
        Residual::Scalar(_) => return None,
    };
    Some(FlagWitness { args: w.basis.iter().map(|&i| basis[i].clone()).collect(), residual })
}

fn lie_witness(l: &LieAlgebra, z: &Vector, phi: &Endomorphism) -> Option<FlagWitness> {
    let lz = lie_derivative_endo(l, z, phi).expect("valid structure");
    let n = l.dim();
    (0..n).find_map(|j| {
        let v = lz.image(j);
        (!v.is_zero()).then(|| FlagWitness { args: vec![Vector::basis(n, j)], residual: v })
    })
}

/// Computes every flag independently.
pub fn analyze(s: &ContactPairStructure) -> Result<NormalityReport> {
    let l = s.algebra();
    let p = s.pair();
    let mut witnesses = BTreeMap::new();
    let mut flag = |name: &str, w: Option<FlagWitness>| -> bool {
        match w {
            Some(w) => {
                witnesses.insert(name.to_string(), w);
                false
            }
            None => true,
        }
    };
    let nj = nijenhuis_of_complex(l, &build_j(s)?)?;
    let nt = nijenhuis_of_complex(l, &build_t(s)?)?;
    let j_integrable = flag("J_integrable", tensor_witness(&nj));
    let t_integrable = flag("T_integrable", tensor_witness(&nt));
    let tensor_zero = flag("normality_tensor_zero", tensor_witness(&normality_tensor(s)));
    let pair_normal = j_integrable && t_integrable;
    if !pair_normal {
        let w = if j_integrable { tensor_witness(&nt) } else { tensor_witness(&nj) };
        flag("pair_normal", w);
    }
    let lz1_phi_zero = flag("LZ1_phi_zero", lie_witness(l, p.z1(), s.phi()));
    let lz2_phi_zero = flag("LZ2_phi_zero", lie_witness(l, p.z2(), s.phi()));

    let decomposable = s.is_decomposable();
    let (mut eq9, mut eq10, mut eq11, mut ind1, mut ind2) = (None, None, None, None, None);
    if decomposable {
        let [w9, w10, w11] = split_equations(s);
        eq9 = Some(flag("eq9_holds", w9));
        eq10 = Some(flag("eq10_holds", w10));
        eq11 = Some(flag("eq11_holds", w11));
        let r1 = induced_normality(s, 1)?;
        let r2 = induced_normality(s, 2)?;
        ind1 = Some(flag("induced1_normal", leaf_witness(&r1, &s.splitting().tf2)));
        ind2 = Some(flag("induced2_normal", leaf_witness(&r2, &s.splitting().tf1)));
    }
    Ok(NormalityReport {
        kind: p.kind(),
        decomposable,
        pair_normal,
        j_integrable,
        t_integrable,
        tensor_zero,
        eq9_holds: eq9,
        eq10_holds: eq10,
        eq11_holds: eq11,
        lz1_phi_zero,
        lz2_phi_zero,
        induced1_normal: ind1,
        induced2_normal: ind2,
        witnesses,
    })
}

/// Full report for a decomposable `φ`.
///
/// # Panics
/// If the split equations disagree with the vanishing of the normality tensor,
/// which would indicate an arithmetic bug rather than bad input.
pub fn split_system_check(s: &ContactPairStructure) -> Result<NormalityReport> {
    if !s.is_decomposable() {
        return Err(Error::NotDecomposable);
    }
    let r = analyze(s)?;
    let split = r.eq9_holds == Some(true) && r.eq10_holds == Some(true) && r.eq11_holds == Some(true);
    assert_eq!(split, r.tensor_zero, "split system disagrees with the normality tensor");
    Ok(r)
}

/// Checks every structural theorem against independently computed flags.
/// A theorem whose hypotheses are not met passes vacuously with a note.
pub fn theorem_checks(r: &NormalityReport) -> VerificationReport {
    let mut out = VerificationReport::new();
    let mut check = |name: &str, hypothesis: bool, conclusion: bool| {
        if hypothesis {
            out.record_note(name, conclusion, if conclusion { "holds" } else { "violated" });
        } else {
            out.record_note(name, true, "hypothesis not met");
        }
    };
    let dec = r.decomposable;
    let t = |o: Option<bool>| o == Some(true);
    check("integrability-criterion", true, r.pair_normal == r.tensor_zero);
    check(
        "decomposable-split",
        dec,
        r.tensor_zero == (t(r.eq9_holds) && t(r.eq10_holds) && t(r.eq11_holds)),
    );
    check("induced-leaf-1", dec, r.induced1_normal == r.eq9_holds);
    check("induced-leaf-2", dec, r.induced2_normal == r.eq10_holds);
    check(
        "proposition-equivalences",
        dec && r.j_integrable,
        r.t_integrable == r.lz1_phi_zero && r.lz1_phi_zero == r.lz2_phi_zero,
    );
    let leaves = t(r.induced1_normal) && t(r.induced2_normal) && t(r.eq11_holds);
    check(
        "theorem-lz1",
        dec && r.lz1_phi_zero,
        r.j_integrable == r.t_integrable && r.t_integrable == leaves && (!r.j_integrable || r.lz2_phi_zero),
    );
    check(
        "theorem-lz2",
        dec && r.lz2_phi_zero,
        r.j_integrable == r.t_integrable && r.t_integrable == leaves && (!r.j_integrable || r.lz1_phi_zero),
    );
    check(
        "corollary-induced",
        dec && t(r.induced1_normal) && t(r.induced2_normal),
        r.j_integrable == r.t_integrable,
    );
    check("type-h0", r.kind.1 == 0 && r.lz2_phi_zero && dec, r.pair_normal == t(r.induced1_normal));
    check("type-0k", r.kind.0 == 0 && r.lz1_phi_zero && dec, r.pair_normal == t(r.induced2_normal));
    out
}

/// Whether two vector-valued 2-forms agree, with the first differing pair.
pub fn compare_tensors(a: &VectorValuedTwoForm, b: &VectorValuedTwoForm) -> Option<Witness> {
    a.sub(b).first_witness()
}

/// `true` iff `t` is antisymmetric and vanishes on equal arguments (on the basis).
pub fn is_alternating_on_basis(t: &VectorValuedTwoForm) -> bool {
    let n = t.dim();
    (0..n).all(|i| {
        t.get(i, i).is_zero() && (0..n).all(|j| (&t.get(i, j) + &t.get(j, i)).is_zero())
    })
}

/// Direct `[φ, φ]` of the structure tensor.
pub fn phi_nijenhuis(s: &ContactPairStructure) -> VectorValuedTwoForm {
    nijenhuis_endo(s.algebra(), s.phi()).expect("valid structure")
}
