use contact_pairs::constructions::{
    boothby_wang_extend, bw_base_conditions, central_extension, direct_sum, eta_invariance, ProductSpec,
};
use contact_pairs::fixtures::{flat3_acss, heisenberg_algebra, heisenberg_factor, line_factor, sl2_factor, so3_algebra, so3_factor};
use contact_pairs::normality::{almost_contact_normality, analyze, build_j, nijenhuis_of_complex};
use contact_pairs::pairs::{
    acss_decomposable, classify_contact_symplectic, construct_decomposable_psi, AlmostContactSymplecticStructure,
};
use contact_pairs::{exterior_derivative, k_contact_flags, AltForm, Endomorphism, Error, LieAlgebra, Vector};

fn base_normal(a: &AlmostContactSymplecticStructure) -> bool {
    let s = a.as_almost_contact();
    almost_contact_normality(s.algebra(), s.alpha(), s.reeb(), s.phi()).unwrap().passed()
}

fn j_integrable_upstairs(a: &AlmostContactSymplecticStructure) -> bool {
    let s = boothby_wang_extend(a).unwrap();
    nijenhuis_of_complex(s.algebra(), &build_j(&s).unwrap()).unwrap().is_zero()
}

/// `base ⊕ ℝ²` with `β = ω3` and `η = ω4∧ω5`.
fn plus_plane(base: &LieAlgebra, psi: Endomorphism) -> AlmostContactSymplecticStructure {
    let l = base.direct_sum(&LieAlgebra::abelian(2));
    AlmostContactSymplecticStructure::from_forms(&l, &AltForm::covector(5, 2), &AltForm::monomial(5, &[3, 4]), psi)
        .unwrap()
}

fn images(cols: &[[i64; 5]]) -> Endomorphism {
    Endomorphism::from_images(&cols.iter().map(|c| Vector::from_ints(c)).collect::<Vec<_>>())
}

fn heis_plane_darboux() -> AlmostContactSymplecticStructure {
    let l = heisenberg_algebra().direct_sum(&LieAlgebra::abelian(2));
    let csp = classify_contact_symplectic(&l, &AltForm::covector(5, 2), &AltForm::monomial(5, &[3, 4])).unwrap();
    let psi = construct_decomposable_psi(&csp).unwrap();
    AlmostContactSymplecticStructure::new(csp, psi).unwrap()
}

/// `ψ`: e1 ↦ e4 ↦ -e1, e2 ↦ e5 ↦ -e2; satisfies the `ψ²` identity but not η-invariance.
fn heis_plane_mixing() -> AlmostContactSymplecticStructure {
    plus_plane(
        &heisenberg_algebra(),
        images(&[[0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0; 5], [-1, 0, 0, 0, 0], [0, -1, 0, 0, 0]]),
    )
}

/// so(3) ⊕ ℝ² with `ψ` the factor's `φ` on `span(e1, e2)` and the rotation on `span(e4, e5)`.
fn so3_plane(normal: bool) -> AlmostContactSymplecticStructure {
    let f = so3_factor(normal);
    let rot = Endomorphism::from_images(&[Vector::basis(2, 1), -Vector::basis(2, 0)]);
    plus_plane(&so3_algebra(), f.phi().direct_sum(&rot))
}

#[test]
fn flat_extension() {
    let s = boothby_wang_extend(&flat3_acss()).unwrap();
    assert_eq!(s.pair().kind(), (1, 0));
    assert!(s.is_decomposable());
    assert!(analyze(&s).unwrap().pair_normal);
    let dalpha1 = exterior_derivative(s.algebra(), s.pair().alpha1()).unwrap();
    assert_eq!(dalpha1, flat3_acss().csp().eta().embed(4, 0));
    assert!(eta_invariance(&flat3_acss()).passed());
}

#[test]
fn zero_eta_is_not_a_contact_pair() {
    let l = LieAlgebra::abelian(3);
    assert!(classify_contact_symplectic(&l, &AltForm::covector(3, 2), &AltForm::zero(3, 2)).is_err());
    // the bare extension is abelian, and α1 = e4 is closed
    let ext = central_extension(&l, &AltForm::zero(3, 2)).unwrap();
    assert!(ext.is_abelian());
    let p = contact_pairs::ContactPair::new(&ext, &AltForm::covector(4, 3), &AltForm::covector(4, 2));
    assert!(matches!(p, Err(Error::NotContactPair(_))));
}

#[test]
fn lemma_conditions_match_integrability_upstairs() {
    let bases = [
        ("flat3", flat3_acss()),
        ("heis+R2 darboux", heis_plane_darboux()),
        ("heis+R2 mixing", heis_plane_mixing()),
        ("so3+R2 rotation", so3_plane(true)),
        ("so3+R2 skew", so3_plane(false)),
    ];
    let mut seen = (false, false);
    for (name, a) in &bases {
        let c = bw_base_conditions(a);
        let up = j_integrable_upstairs(a);
        assert_eq!(c.derived_holds(), up, "{name}:\n{}", c.derived);
        if eta_invariance(a).passed() {
            assert!(!c.discrepancy(), "{name}");
        }
        if up { seen.0 = true } else { seen.1 = true }
    }
    assert!(seen.0 && seen.1);

    let mixing = heis_plane_mixing();
    assert!(!eta_invariance(&mixing).passed());
    let c = bw_base_conditions(&mixing);
    assert!(!c.derived.check("eta-compatibility").unwrap().passed);
    assert!(!j_integrable_upstairs(&mixing));
}

#[test]
fn extension_normal_iff_base_normal() {
    let mut seen = (false, false);
    for a in [flat3_acss(), heis_plane_darboux(), so3_plane(true), so3_plane(false)] {
        assert!(eta_invariance(&a).passed());
        assert!(acss_decomposable(a.csp(), a.psi()).passed());
        let s = boothby_wang_extend(&a).unwrap();
        assert!(s.is_decomposable());
        assert!(k_contact_flags(&s).0);
        let normal = analyze(&s).unwrap().pair_normal;
        assert_eq!(normal, base_normal(&a));
        assert_eq!(j_integrable_upstairs(&a), base_normal(&a));
        if normal { seen.0 = true } else { seen.1 = true }
    }
    assert!(seen.0 && seen.1);
}

#[test]
fn extension_kind_swaps_base_kind() {
    let a = heis_plane_darboux();
    assert_eq!(a.csp().kind(), (1, 1));
    let s = boothby_wang_extend(&a).unwrap();
    assert_eq!(s.pair().kind(), (1, 1));
    assert_eq!(flat3_acss().csp().kind(), (0, 1));
}

#[test]
fn jacobi_on_extension_iff_eta_closed() {
    let l = heisenberg_algebra().direct_sum(&LieAlgebra::abelian(2));
    let closed = AltForm::monomial(5, &[3, 4]);
    let open = closed.add(&AltForm::monomial(5, &[2, 3])).unwrap();
    for eta in [closed, open] {
        let closed = exterior_derivative(&l, &eta).unwrap().is_zero();
        assert_eq!(central_extension(&l, &eta).unwrap().jacobi_check().passed(), closed);
    }
}

#[test]
fn products() {
    let s = direct_sum(&ProductSpec { left: heisenberg_factor(), right: heisenberg_factor() }).unwrap();
    assert_eq!(s.pair().kind(), (1, 1));
    assert!(s.is_decomposable());

    let s = direct_sum(&ProductSpec { left: sl2_factor(), right: heisenberg_factor() }).unwrap();
    assert_eq!(s.pair().kind(), (1, 1));
    assert!(s.is_decomposable());

    let s = direct_sum(&ProductSpec { left: heisenberg_factor(), right: line_factor() }).unwrap();
    assert_eq!(s.pair().kind(), (1, 0));
}

#[test]
fn morimoto_products() {
    let factors = |n: bool| if n { heisenberg_factor() } else { so3_factor(false) };
    for (left_normal, right_normal) in [(true, true), (true, false), (false, true), (false, false)] {
        let s = direct_sum(&ProductSpec { left: factors(left_normal), right: factors(right_normal) }).unwrap();
        let r = analyze(&s).unwrap();
        assert_eq!(r.pair_normal, left_normal && right_normal);
        assert_eq!(r.eq9_holds, Some(left_normal));
        assert_eq!(r.eq10_holds, Some(right_normal));
        assert_eq!(r.eq11_holds, Some(true));
    }
}
