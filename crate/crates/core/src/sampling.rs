//! Seeded random contact pair structures for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::algebra::{Endomorphism, LieAlgebra};
use crate::constructions::{boothby_wang_extend, direct_sum, ProductSpec};
use crate::error::Result;
use crate::fixtures::{
    heisenberg_algebra, heisenberg_factor, line_factor, load_fixture, nil4_algebra, nilpotent6_algebra,
    oscillator_algebra, sl2_factor, so3_factor, solvable6_algebra, flat3_acss,
};
use crate::forms::AltForm;
use crate::linalg::{Matrix, Vector};
use crate::pairs::{
    construct_decomposable_phi, construct_decomposable_psi, endomorphism_from_basis, splitting_bases,
    AlmostContactSymplecticStructure, ContactPair, ContactPairStructure, SplittingBases,
};
use crate::scalar::{int, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random invertible `n × n` integer matrix with entries in `-2..=2`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> =
            (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(rows).expect("square");
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Unimodular `LU` product with entries of each factor in `-1..=1`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, int(rng.gen_range(-1..=1)));
            upper.set(j, i, int(rng.gen_range(-1..=1)));
        }
    }
    lower.mul(&upper)
}

/// `x ↦ x + t ω(u, x) u`, which preserves the 2-form `ω`.
pub fn symplectic_transvection(omega: &AltForm, u: &Vector, t: &Scalar) -> Endomorphism {
    let n = omega.dim();
    let images: Vec<Vector> = (0..n)
        .map(|j| {
            let x = Vector::basis(n, j);
            let c = t * omega.at2(u, &x);
            let mut out = x;
            out.add_scaled(&c, u);
            out
        })
        .collect();
    Endomorphism::from_images(&images)
}

fn random_combination(rng: &mut impl Rng, basis: &[Vector]) -> Vector {
    let coeffs: Vec<Scalar> = basis.iter().map(|_| int(rng.gen_range(-2..=2))).collect();
    Vector::combination(basis[0].dim(), &coeffs, basis)
}

/// Composition of `steps` random transvections for `dα1` along `TG2` and for
/// `dα2` along `TG1`; fixes `Z1`, `Z2` and preserves both `TG_i`.
pub fn random_symplectic_change(rng: &mut impl Rng, p: &ContactPair, s: &SplittingBases, steps: usize) -> Endomorphism {
    let mut a = Endomorphism::identity(p.dim());
    for _ in 0..steps {
        for (omega, block) in [(p.dalpha1(), &s.tg2), (p.dalpha2(), &s.tg1)] {
            if block.is_empty() {
                continue;
            }
            let u = random_combination(rng, block);
            let t = int(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
            a = symplectic_transvection(omega, &u, &t).compose(&a);
        }
    }
    a
}

/// Random linear map fixing `Z1`, `Z2`. With `mix` it acts by one matrix on
/// `TG1 ⊕ TG2`; otherwise it preserves each `TG_i`.
pub fn random_block_change(rng: &mut impl Rng, s: &SplittingBases, mix: bool) -> Endomorphism {
    let mut basis = s.tg1.clone();
    basis.extend(s.tg2.iter().cloned());
    let n = basis.len() + 2;
    let blocks: Vec<Vec<Vector>> = if mix { vec![basis.clone()] } else { vec![s.tg1.clone(), s.tg2.clone()] };
    let mut images = Vec::new();
    for block in blocks.iter().filter(|b| !b.is_empty()) {
        let m = random_invertible(rng, block.len());
        for j in 0..block.len() {
            images.push(Vector::combination(n, m.column(j).coords(), block));
        }
    }
    basis.push(s.z1.clone());
    basis.push(s.z2.clone());
    images.push(s.z1.clone());
    images.push(s.z2.clone());
    endomorphism_from_basis(&basis, &images).expect("splitting is a basis")
}

/// At least `count` distinct decomposable structure tensors on `p`, from the
/// Darboux construction conjugated by random symplectic block changes.
pub fn sample_decomposable(p: &ContactPair, seed: u64, count: usize) -> Result<Vec<ContactPairStructure>> {
    let mut r = rng(seed);
    let s = splitting_bases(p)?;
    let phi0 = construct_decomposable_phi(p, &s)?;
    let mut out: Vec<ContactPairStructure> = vec![ContactPairStructure::new(p.clone(), phi0.clone())?];
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let a = random_symplectic_change(&mut r, p, &s, 2);
        let phi = phi0.conjugate(&a)?;
        if out.iter().all(|x| x.phi() != &phi) {
            out.push(ContactPairStructure::new(p.clone(), phi)?);
        }
    }
    Ok(out)
}

fn darboux(l: &LieAlgebra, a1: AltForm, a2: AltForm) -> Result<ContactPairStructure> {
    let p = ContactPair::new(l, &a1, &a2)?;
    let s = splitting_bases(&p)?;
    let phi = construct_decomposable_phi(&p, &s)?;
    ContactPairStructure::new(p, phi)
}

fn product(left: crate::pairs::AlmostContactStructure, right: crate::pairs::AlmostContactStructure) -> Result<ContactPairStructure> {
    direct_sum(&ProductSpec { left, right })
}

/// Named base structures in dimensions 4 and 6.
pub fn templates() -> Result<Vec<(String, ContactPairStructure)>> {
    let c = AltForm::covector;
    let heis_r2 = {
        let l = heisenberg_algebra().direct_sum(&LieAlgebra::abelian(2));
        let csp = crate::pairs::classify_contact_symplectic(&l, &c(5, 2), &AltForm::monomial(5, &[3, 4]))?;
        let psi = construct_decomposable_psi(&csp)?;
        boothby_wang_extend(&AlmostContactSymplecticStructure::new(csp, psi)?)?
    };
    let list = vec![
        ("heis+line", product(heisenberg_factor(), line_factor())?),
        ("so3+line", product(so3_factor(true), line_factor())?),
        ("sl2+line", product(sl2_factor(), line_factor())?),
        ("nil4", darboux(&nil4_algebra(), c(4, 2), c(4, 0))?),
        ("bw-flat3", boothby_wang_extend(&flat3_acss())?),
        ("oscillator-elliptic", darboux(&oscillator_algebra([[0, -1], [1, 0]])?, c(4, 2), c(4, 3))?),
        ("oscillator-hyperbolic", darboux(&oscillator_algebra([[1, 0], [0, -1]])?, c(4, 2), c(4, 3))?),
        ("solvable6", load_fixture("solvable6")?.structure()?),
        ("nilpotent6", darboux(&nilpotent6_algebra(), c(6, 4), c(6, 5))?),
        ("solvable6-darboux", darboux(&solvable6_algebra(), c(6, 1), c(6, 2))?),
        ("heisHeis", product(heisenberg_factor(), heisenberg_factor())?),
        ("so3+so3", product(so3_factor(true), so3_factor(true))?),
        ("heis+so3", product(heisenberg_factor(), so3_factor(true))?),
        ("bw-heis+R2", heis_r2),
    ];
    Ok(list.into_iter().map(|(n, s)| (n.to_string(), s)).collect())
}

/// `count` structures cycling through the templates. Each is conjugated by a
/// random block change (every third one mixing `TG1` with `TG2` when both
/// are nonzero, which makes `φ` non-decomposable) and then re-expressed in a
/// random unimodular basis.
pub fn random_instances(seed: u64, count: usize) -> Result<Vec<(String, ContactPairStructure)>> {
    let mut r = rng(seed);
    let base = templates()?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (name, s) = &base[i % base.len()];
        let sp = s.splitting();
        let (a, tag) = match i % 3 {
            0 => (random_block_change(&mut r, sp, false), "block"),
            1 if !sp.tg1.is_empty() && !sp.tg2.is_empty() => (random_block_change(&mut r, sp, true), "mixed"),
            1 => (random_block_change(&mut r, sp, false), "block"),
            _ => (random_symplectic_change(&mut r, s.pair(), sp, 2), "symplectic"),
        };
        let conj = ContactPairStructure::new(s.pair().clone(), s.phi().conjugate(&a)?)?;
        let moved = conj.change_basis(&random_unimodular(&mut r, s.dim()))?;
        out.push((format!("{name}/{tag}"), moved));
    }
    Ok(out)
}
