//! Named example structures with their expected verdicts.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::constructions::{direct_sum, eta_invariance, ProductSpec};
use crate::error::{Error, Result};
use crate::forms::{d_unchecked, AltForm};
use crate::linalg::{combinations, Vector};
use crate::normality::{almost_contact_normality, analyze, normality_tensor};
use crate::pairs::{
    classify_contact_pair, classify_contact_symplectic, construct_decomposable_phi, is_decomposable,
    reeb_pair, splitting_bases, verify_acss, verify_cps, AlmostContactStructure,
    AlmostContactSymplecticStructure, ContactPair, ContactPairStructure,
};
use crate::report::VerificationReport;
use crate::scalar::{int, Scalar};

pub const FIXTURE_NAMES: [&str; 6] = ["solvable6", "nilpotent6", "nil4", "heisenberg3", "flat3", "heisHeis"];

/// Expected or computed value of a predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Kind(usize, usize),
    Vectors(Vec<Vector>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Kind(h, k) => write!(f, "({h}, {k})"),
            Value::Vectors(vs) => {
                let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", s.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub predicate: String,
    pub expected: Value,
}

/// A named algebra with forms, vectors, endomorphisms and golden expectations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub algebra: LieAlgebra,
    pub forms: BTreeMap<String, AltForm>,
    pub vectors: BTreeMap<String, Vector>,
    pub endomorphisms: BTreeMap<String, Endomorphism>,
    pub expectations: Vec<Expectation>,
}

impl Fixture {
    fn new(name: &str, algebra: LieAlgebra) -> Self {
        Fixture {
            name: name.to_string(),
            algebra,
            forms: BTreeMap::new(),
            vectors: BTreeMap::new(),
            endomorphisms: BTreeMap::new(),
            expectations: Vec::new(),
        }
    }

    fn form(mut self, name: &str, f: AltForm) -> Self {
        self.forms.insert(name.into(), f);
        self
    }

    fn vector(mut self, name: &str, v: Vector) -> Self {
        self.vectors.insert(name.into(), v);
        self
    }

    fn endo(mut self, name: &str, e: Endomorphism) -> Self {
        self.endomorphisms.insert(name.into(), e);
        self
    }

    fn expect(mut self, predicate: &str, expected: Value) -> Self {
        self.expectations.push(Expectation { predicate: predicate.into(), expected });
        self
    }

    pub fn get_form(&self, name: &str) -> Result<&AltForm> {
        self.forms
            .get(name)
            .ok_or_else(|| Error::Precondition(format!("fixture {} has no form {name}", self.name)))
    }

    pub fn get_endo(&self, name: &str) -> Result<&Endomorphism> {
        self.endomorphisms
            .get(name)
            .ok_or_else(|| Error::Precondition(format!("fixture {} has no endomorphism {name}", self.name)))
    }

    /// The contact pair `(alpha1, alpha2)` of this fixture.
    pub fn contact_pair(&self) -> Result<ContactPair> {
        ContactPair::new(&self.algebra, self.get_form("alpha1")?, self.get_form("alpha2")?)
    }

    /// The contact pair with structure tensor `phi`.
    pub fn structure(&self) -> Result<ContactPairStructure> {
        ContactPairStructure::new(self.contact_pair()?, self.get_endo("phi")?.clone())
    }

    /// The almost contact-symplectic structure `(beta, eta, psi)`.
    pub fn acss(&self) -> Result<AlmostContactSymplecticStructure> {
        AlmostContactSymplecticStructure::from_forms(
            &self.algebra,
            self.get_form("beta")?,
            self.get_form("eta")?,
            self.get_endo("psi")?.clone(),
        )
    }
}

fn e(n: usize, i: usize) -> Vector {
    Vector::basis(n, i)
}

fn equations(dim: usize, eqs: &[(usize, &[(usize, usize)])]) -> LieAlgebra {
    let eqs: Vec<(usize, Vec<(usize, usize, Scalar)>)> = eqs
        .iter()
        .map(|(k, terms)| (*k, terms.iter().map(|&(i, j)| (i, j, int(1))).collect()))
        .collect();
    LieAlgebra::from_structure_equations(dim, &eqs).expect("catalog equations are valid")
}

/// `dω2 = ω5∧ω6`, `dω3 = ω1∧ω4`, `dω4 = ω1∧ω5`, `dω5 = ω1∧ω6`.
pub fn solvable6_algebra() -> LieAlgebra {
    equations(6, &[(1, &[(4, 5)]), (2, &[(0, 3)]), (3, &[(0, 4)]), (4, &[(0, 5)])])
}

/// `dω4 = ω1∧ω2`, `dω5 = ω1∧ω3`, `dω6 = ω2∧ω4`.
pub fn nilpotent6_algebra() -> LieAlgebra {
    equations(6, &[(3, &[(0, 1)]), (4, &[(0, 2)]), (5, &[(1, 3)])])
}

/// `dω2 = ω1∧ω4`, `dω3 = ω2∧ω4`.
pub fn nil4_algebra() -> LieAlgebra {
    equations(4, &[(1, &[(0, 3)]), (2, &[(1, 3)])])
}

/// `[e1, e2] = e3`, so `dω3 = -ω1∧ω2`.
pub fn heisenberg_algebra() -> LieAlgebra {
    LieAlgebra::from_constants(3, [(0, 1, 2, int(1))]).expect("valid")
}

/// `[e1, e2] = e3`, `[e2, e3] = e1`, `[e3, e1] = e2`.
pub fn so3_algebra() -> LieAlgebra {
    LieAlgebra::from_constants(3, [(0, 1, 2, int(1)), (1, 2, 0, int(1)), (2, 0, 1, int(1))]).expect("valid")
}

/// `[e1, e2] = e3`, `[e3, e1] = 2e1`, `[e3, e2] = -2e2`.
pub fn sl2_algebra() -> LieAlgebra {
    LieAlgebra::from_constants(3, [(0, 1, 2, int(1)), (2, 0, 0, int(2)), (2, 1, 1, int(-2))]).expect("valid")
}

/// Heisenberg algebra extended by `e4` acting on `span(e1, e2)` through the
/// traceless matrix `d` (column `j` is the image of `e_{j+1}`), trivially on `e3`.
pub fn oscillator_algebra(d: [[i64; 2]; 2]) -> Result<LieAlgebra> {
    if d[0][0] + d[1][1] != 0 {
        return Err(Error::InvalidStructure("acting matrix must be traceless".into()));
    }
    let mut entries = vec![(0, 1, 2, int(1))];
    for j in 0..2 {
        for i in 0..2 {
            if d[i][j] != 0 {
                entries.push((3, j, i, int(d[i][j])));
            }
        }
    }
    LieAlgebra::from_constants(4, entries)
}

/// `φ(e_from[i]) = e_to[i]`, zero on the remaining basis vectors.
fn basis_map(n: usize, pairs: &[(usize, i64, usize)]) -> Endomorphism {
    let mut images = vec![Vector::zeros(n); n];
    for &(from, sign, to) in pairs {
        images[from] = e(n, to).scaled(&int(sign));
    }
    Endomorphism::from_images(&images)
}

/// `(ω3, e3, Φ)` with `Φ(e1) = -e2`, `Φ(e2) = e1`.
pub fn heisenberg_factor() -> AlmostContactStructure {
    let phi = basis_map(3, &[(0, -1, 1), (1, 1, 0)]);
    AlmostContactStructure::new(&heisenberg_algebra(), &AltForm::covector(3, 2), &e(3, 2), &phi).expect("valid")
}

/// `(ω3, e3, φ)` on so(3): the rotation `e1 ↦ e2 ↦ -e1` when `normal`,
/// otherwise the matrix `[[1, -2], [1, -1]]` on `span(e1, e2)`.
pub fn so3_factor(normal: bool) -> AlmostContactStructure {
    let phi = if normal {
        basis_map(3, &[(0, 1, 1), (1, -1, 0)])
    } else {
        Endomorphism::from_images(&[Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[-2, -1, 0]), Vector::zeros(3)])
    };
    AlmostContactStructure::new(&so3_algebra(), &AltForm::covector(3, 2), &e(3, 2), &phi).expect("valid")
}

/// `(ω3, e3, φ)` on sl(2) with `φ(e1) = e2`, `φ(e2) = -e1`.
pub fn sl2_factor() -> AlmostContactStructure {
    let phi = basis_map(3, &[(0, 1, 1), (1, -1, 0)]);
    AlmostContactStructure::new(&sl2_algebra(), &AltForm::covector(3, 2), &e(3, 2), &phi).expect("valid")
}

/// The line with `α = ω1`, `Z = e1`, `φ = 0`.
pub fn line_factor() -> AlmostContactStructure {
    AlmostContactStructure::new(&LieAlgebra::abelian(1), &AltForm::covector(1, 0), &e(1, 0), &Endomorphism::zero(1))
        .expect("valid")
}

/// Flat `ℝ³` with `β = ω3`, `η = ω1∧ω2`, `ψ(e1) = e2`, `ψ(e2) = -e1`.
pub fn flat3_acss() -> AlmostContactSymplecticStructure {
    let psi = basis_map(3, &[(0, 1, 1), (1, -1, 0)]);
    AlmostContactSymplecticStructure::from_forms(
        &LieAlgebra::abelian(3),
        &AltForm::covector(3, 2),
        &AltForm::monomial(3, &[0, 1]),
        psi,
    )
    .expect("valid")
}

pub fn load_fixture(name: &str) -> Result<Fixture> {
    use Value::*;
    let t = Bool(true);
    let f = Bool(false);
    let fixture = match name {
        "solvable6" => {
            let phi = basis_map(6, &[(4, 1, 5), (5, -1, 4), (0, 1, 3), (3, -1, 0)]);
            Fixture::new(name, solvable6_algebra())
                .form("alpha1", AltForm::covector(6, 1))
                .form("alpha2", AltForm::covector(6, 2))
                .endo("phi", phi)
                .expect("jacobi", t.clone())
                .expect("structure_round_trip", t.clone())
                .expect("d_squared_zero", t.clone())
                .expect("classify_contact_pair", Kind(1, 1))
                .expect("reeb_pair", Vectors(vec![e(6, 1), e(6, 2)]))
                .expect("verify_cps", t.clone())
                .expect("is_decomposable", t.clone())
                .expect("LZ1_phi_zero", t.clone())
                .expect("LZ2_phi_zero", t.clone())
                .expect("eq9_holds", t.clone())
                .expect("eq10_holds", t.clone())
                .expect("eq11_holds", f.clone())
                .expect("induced1_normal", t.clone())
                .expect("induced2_normal", t.clone())
                .expect("J_integrable", f.clone())
                .expect("T_integrable", f.clone())
                .expect("normality_tensor_zero", f.clone())
                .expect("normality_tensor_cross_only", t.clone())
                .expect("pair_normal", f)
        }
        "nilpotent6" => Fixture::new(name, nilpotent6_algebra())
            .form("alpha1", AltForm::covector(6, 4))
            .form("alpha2", AltForm::covector(6, 5))
            .expect("jacobi", t.clone())
            .expect("structure_round_trip", t.clone())
            .expect("d_squared_zero", t.clone())
            .expect("classify_contact_pair", Kind(1, 1))
            .expect("reeb_pair", Vectors(vec![e(6, 4), e(6, 5)]))
            .expect("sampled_eq11_fails", t),
        "nil4" => {
            let mut fx = Fixture::new(name, nil4_algebra())
                .form("alpha1", AltForm::covector(4, 2))
                .form("alpha2", AltForm::covector(4, 0));
            let pair = fx.contact_pair()?;
            let phi = construct_decomposable_phi(&pair, &splitting_bases(&pair)?)?;
            fx = fx
                .endo("phi", phi)
                .expect("jacobi", t.clone())
                .expect("structure_round_trip", t.clone())
                .expect("d_squared_zero", t.clone())
                .expect("classify_contact_pair", Kind(1, 0))
                .expect("reeb_pair", Vectors(vec![e(4, 2), e(4, 0)]))
                .expect("verify_cps", t.clone())
                .expect("is_decomposable", t.clone())
                .expect("LZ2_phi_zero", f.clone())
                .expect("pair_normal", f.clone())
                .expect("sampled_never_normal", t);
            fx
        }
        "heisenberg3" => {
            let h = heisenberg_factor();
            Fixture::new(name, h.algebra().clone())
                .form("alpha", h.alpha().clone())
                .vector("reeb", h.reeb().clone())
                .endo("phi", h.phi().clone())
                .expect("jacobi", t.clone())
                .expect("structure_round_trip", t.clone())
                .expect("d_squared_zero", t.clone())
                .expect("almost_contact_normal", t)
        }
        "flat3" => {
            let a = flat3_acss();
            Fixture::new(name, a.csp().algebra().clone())
                .form("beta", a.csp().beta().clone())
                .form("eta", a.csp().eta().clone())
                .endo("psi", a.psi().clone())
                .expect("jacobi", t.clone())
                .expect("d_squared_zero", t.clone())
                .expect("classify_contact_symplectic", Kind(0, 1))
                .expect("verify_acss", t.clone())
                .expect("acss_normal", t.clone())
                .expect("eta_invariant", t)
        }
        "heisHeis" => {
            let s = direct_sum(&ProductSpec { left: heisenberg_factor(), right: heisenberg_factor() })?;
            Fixture::new(name, s.algebra().clone())
                .form("alpha1", s.pair().alpha1().clone())
                .form("alpha2", s.pair().alpha2().clone())
                .endo("phi", s.phi().clone())
                .expect("jacobi", t.clone())
                .expect("structure_round_trip", t.clone())
                .expect("d_squared_zero", t.clone())
                .expect("classify_contact_pair", Kind(1, 1))
                .expect("reeb_pair", Vectors(vec![e(6, 2), e(6, 5)]))
                .expect("verify_cps", t.clone())
                .expect("is_decomposable", t.clone())
                .expect("eq9_holds", t.clone())
                .expect("eq10_holds", t.clone())
                .expect("eq11_holds", t.clone())
                .expect("pair_normal", t)
        }
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(fixture)
}

/// `d ∘ d = 0` on every basis monomial of every degree.
pub fn d_squared_zero(l: &LieAlgebra) -> bool {
    let n = l.dim();
    (0..n).all(|p| {
        combinations(n, p).into_iter().all(|idx| {
            let m = AltForm::monomial(n, &idx);
            d_unchecked(l, &d_unchecked(l, &m)).is_zero()
        })
    })
}

/// Rebuilding the algebra from its own structure equations gives it back.
pub fn structure_round_trip(l: &LieAlgebra) -> bool {
    let eqs: Vec<(usize, Vec<(usize, usize, Scalar)>)> = l
        .structure_equations()
        .into_iter()
        .enumerate()
        .map(|(k, form)| (k, form.terms().map(|(idx, c)| (idx[0], idx[1], c.clone())).collect()))
        .collect();
    LieAlgebra::from_structure_equations(l.dim(), &eqs).as_ref() == Ok(l)
}

/// The normality tensor vanishes on every basis pair lying in a single `TF_i`.
fn tensor_cross_only(s: &ContactPairStructure) -> bool {
    let sp = s.splitting();
    let n = s.dim();
    let in_tf = |basis: &[Vector], i: usize| crate::linalg::in_span(n, basis, &e(n, i));
    normality_tensor(s).nonzero().all(|((i, j), _)| {
        let same1 = in_tf(&sp.tf1, *i) && in_tf(&sp.tf1, *j);
        let same2 = in_tf(&sp.tf2, *i) && in_tf(&sp.tf2, *j);
        !same1 && !same2
    })
}

/// Computes the value of a named predicate on a fixture.
pub fn evaluate(fx: &Fixture, predicate: &str) -> Result<Value> {
    let l = &fx.algebra;
    let b = Value::Bool;
    let flag = |name: &str| -> Result<Value> {
        let r = analyze(&fx.structure()?)?;
        let v = r
            .flags()
            .into_iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| v)
            .ok_or_else(|| Error::Precondition(format!("flag {name} is undefined here")))?;
        Ok(b(v))
    };
    match predicate {
        "jacobi" => Ok(b(l.jacobi_check().passed())),
        "structure_round_trip" => Ok(b(structure_round_trip(l))),
        "d_squared_zero" => Ok(b(d_squared_zero(l))),
        "classify_contact_pair" => {
            let (h, k) = classify_contact_pair(l, fx.get_form("alpha1")?, fx.get_form("alpha2")?)?;
            Ok(Value::Kind(h, k))
        }
        "reeb_pair" => {
            let (z1, z2) = reeb_pair(l, fx.get_form("alpha1")?, fx.get_form("alpha2")?)?;
            Ok(Value::Vectors(vec![z1, z2]))
        }
        "verify_cps" => Ok(b(verify_cps(&fx.contact_pair()?, fx.get_endo("phi")?).passed())),
        "is_decomposable" => {
            let p = fx.contact_pair()?;
            let s = splitting_bases(&p)?;
            Ok(b(is_decomposable(&p, fx.get_endo("phi")?, &s).passed()))
        }
        "normality_tensor_cross_only" => Ok(b(tensor_cross_only(&fx.structure()?))),
        "almost_contact_normal" => {
            let z = fx
                .vectors
                .get("reeb")
                .ok_or_else(|| Error::Precondition("fixture has no reeb vector".into()))?;
            Ok(b(almost_contact_normality(l, fx.get_form("alpha")?, z, fx.get_endo("phi")?)?.passed()))
        }
        "classify_contact_symplectic" => {
            let c = classify_contact_symplectic(l, fx.get_form("beta")?, fx.get_form("eta")?)?;
            let (h, k) = c.kind();
            Ok(Value::Kind(h, k))
        }
        "verify_acss" => {
            let c = classify_contact_symplectic(l, fx.get_form("beta")?, fx.get_form("eta")?)?;
            Ok(b(verify_acss(&c, fx.get_endo("psi")?).passed()))
        }
        "acss_normal" => {
            let a = fx.acss()?.as_almost_contact();
            Ok(b(almost_contact_normality(a.algebra(), a.alpha(), a.reeb(), a.phi())?.passed()))
        }
        "eta_invariant" => Ok(b(eta_invariance(&fx.acss()?).passed())),
        "sampled_eq11_fails" => {
            let samples = crate::sampling::sample_decomposable(&fx.contact_pair()?, 0x5eed, 12)?;
            let ok = samples.len() >= 10
                && samples.iter().all(|s| {
                    let r = analyze(s).expect("valid sample");
                    r.eq9_holds == Some(true) && r.eq10_holds == Some(true) && r.eq11_holds == Some(false)
                });
            Ok(b(ok))
        }
        "sampled_never_normal" => {
            let samples = crate::sampling::sample_decomposable(&fx.contact_pair()?, 0x5eed, 12)?;
            Ok(b(samples.iter().all(|s| !analyze(s).expect("valid sample").pair_normal)))
        }
        other => flag(other),
    }
}

/// Checks every expectation; a check fails when the value differs or cannot be computed.
pub fn run_expectations(fx: &Fixture) -> VerificationReport {
    let mut report = VerificationReport::new();
    for ex in &fx.expectations {
        match evaluate(fx, &ex.predicate) {
            Ok(v) if v == ex.expected => report.record_note(&ex.predicate, true, format!("{v}")),
            Ok(v) => report.record_note(&ex.predicate, false, format!("expected {}, got {v}", ex.expected)),
            Err(err) => report.record_note(&ex.predicate, false, format!("error: {err}")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fixture() {
        assert_eq!(load_fixture("unknown"), Err(Error::UnknownFixture("unknown".into())));
    }

    #[test]
    fn catalog_algebras_satisfy_jacobi() {
        for l in [so3_algebra(), sl2_algebra(), oscillator_algebra([[1, 0], [0, -1]]).unwrap()] {
            assert!(l.jacobi_check().passed());
        }
        assert!(oscillator_algebra([[1, 0], [0, 1]]).is_err());
    }

    #[test]
    fn solvable6_equations_round_trip() {
        let l = solvable6_algebra();
        let eqs = l.structure_equations();
        assert_eq!(eqs[1], AltForm::monomial(6, &[4, 5]));
        assert_eq!(eqs[2], AltForm::monomial(6, &[0, 3]));
        assert!(eqs[0].is_zero() && eqs[5].is_zero());
    }
}
