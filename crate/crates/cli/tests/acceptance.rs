//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p contact-pairs-cli --test acceptance`.

use std::panic;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use contact_pairs::constructions::{boothby_wang_extend, bw_base_conditions, direct_sum, eta_invariance, ProductSpec};
use contact_pairs::fixtures::{
    d_squared_zero, flat3_acss, heisenberg_algebra, heisenberg_factor, load_fixture, sl2_factor, so3_algebra,
    so3_factor, structure_round_trip, FIXTURE_NAMES,
};
use contact_pairs::normality::{
    almost_contact_normality, analyze, build_j, build_t, nijenhuis_of_complex, nj_expanded, normality_tensor,
    nt_expanded, theorem_checks,
};
use contact_pairs::pairs::{
    acss_decomposable, classify_contact_symplectic, construct_decomposable_phi, construct_decomposable_psi,
    is_decomposable, splitting_bases, verify_cps, AlmostContactStructure, AlmostContactSymplecticStructure,
};
use contact_pairs::sampling::{random_block_change, random_instances, random_unimodular, rng, sample_decomposable};
use contact_pairs::{exterior_derivative, int, nijenhuis_endo, run_expectations, AltForm, Endomorphism, LieAlgebra, Vector};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(n: usize, i: usize) -> Vector {
    Vector::basis(n, i)
}

fn solvable6_golden() -> Outcome {
    let fx = load_fixture("solvable6").map_err(|x| x.to_string())?;
    let expectations = run_expectations(&fx);
    ensure!(expectations.passed(), "fixture expectations:\n{expectations}");
    let s = fx.structure().map_err(|x| x.to_string())?;
    let p = s.pair();
    ensure!(p.kind() == (1, 1), "type {:?}", p.kind());
    ensure!(p.z1() == &e(6, 1) && p.z2() == &e(6, 2), "Reeb pair ({:?}, {:?})", p.z1(), p.z2());
    ensure!(verify_cps(p, s.phi()).passed(), "verify_cps");
    let r = analyze(&s).map_err(|x| x.to_string())?;
    ensure!(r.decomposable, "decomposable");
    ensure!(r.lz1_phi_zero && r.lz2_phi_zero, "Lie derivatives of phi along the Reeb fields");
    ensure!(r.induced1_normal == Some(true) && r.induced2_normal == Some(true), "induced structures");
    ensure!(r.eq9_holds == Some(true) && r.eq10_holds == Some(true), "leaf equations");
    ensure!(r.eq11_holds == Some(false), "cross equation should fail");
    let w = r.witnesses.get("eq11_holds").ok_or("no cross-equation witness")?;
    ensure!(w.args == vec![e(6, 0), e(6, 4)], "witness arguments {:?}", w.args);
    ensure!(w.residual == Vector::from_ints(&[0, 0, 0, 1, 0, 1]), "witness residual {:?}", w.residual);
    ensure!(!r.j_integrable && !r.t_integrable, "N_J and N_T must be nonzero");
    ensure!(!r.tensor_zero && !normality_tensor(&s).is_zero(), "normality tensor must be nonzero");
    Ok(())
}

fn heisenberg_golden() -> Outcome {
    let fx = load_fixture("heisenberg3").map_err(|x| x.to_string())?;
    let (alpha, phi) = (fx.get_form("alpha").map_err(|x| x.to_string())?, fx.get_endo("phi").map_err(|x| x.to_string())?);
    let z = fx.vectors.get("reeb").ok_or("no reeb vector")?;
    let r = almost_contact_normality(&fx.algebra, alpha, z, phi).map_err(|x| x.to_string())?;
    ensure!(r.passed(), "{r}");
    // the same tensor, basis pair by basis pair
    let dalpha = exterior_derivative(&fx.algebra, alpha).map_err(|x| x.to_string())?;
    let nphi = nijenhuis_endo(&fx.algebra, phi).map_err(|x| x.to_string())?;
    for i in 0..3 {
        for j in 0..3 {
            let mut v = nphi.eval(&e(3, i), &e(3, j));
            v.add_scaled(&dalpha.at2(&e(3, i), &e(3, j)), z);
            ensure!(v.is_zero(), "nonzero at ({}, {})", i + 1, j + 1);
        }
    }
    Ok(())
}

fn nil4_golden() -> Outcome {
    let fx = load_fixture("nil4").map_err(|x| x.to_string())?;
    let base = fx.structure().map_err(|x| x.to_string())?;
    ensure!(base.pair().kind() == (1, 0), "type {:?}", base.pair().kind());
    let mut r = rng(41);
    let mut checked = 0;
    for round in 0..8 {
        // the same pair seen in another basis, then the Darboux construction there
        let moved = if round == 0 { base.clone() } else { base.change_basis(&random_unimodular(&mut r, 4)).map_err(|x| x.to_string())? };
        let p = moved.pair();
        let sp = splitting_bases(p).map_err(|x| x.to_string())?;
        let phi0 = construct_decomposable_phi(p, &sp).map_err(|x| x.to_string())?;
        // all other structure tensors on this pair are conjugates of phi0 fixing the Reeb fields
        let mut phis = vec![phi0.clone()];
        for _ in 0..3 {
            let a = random_block_change(&mut r, &sp, false);
            phis.push(phi0.conjugate(&a).map_err(|x| x.to_string())?);
        }
        for phi in &phis {
            let v = verify_cps(p, phi);
            ensure!(v.passed(), "verify_cps:\n{v}");
            let d = is_decomposable(p, phi, &sp);
            ensure!(d.passed(), "not decomposable:\n{d}");
            checked += 1;
        }
    }
    ensure!(checked >= 32, "only {checked} tensors checked");
    Ok(())
}

fn nilpotent6_sampled() -> Outcome {
    let p = load_fixture("nilpotent6").and_then(|f| f.contact_pair()).map_err(|x| x.to_string())?;
    let samples = sample_decomposable(&p, 0x5eed, 12).map_err(|x| x.to_string())?;
    ensure!(samples.len() >= 10, "only {} samples", samples.len());
    for (i, a) in samples.iter().enumerate() {
        ensure!(samples[..i].iter().all(|b| b.phi() != a.phi()), "sample {i} repeats");
        ensure!(a.is_decomposable(), "sample {i} not decomposable");
        let r = analyze(a).map_err(|x| x.to_string())?;
        ensure!(
            r.eq9_holds == Some(true) && r.eq10_holds == Some(true) && r.eq11_holds == Some(false),
            "sample {i}: {:?} {:?} {:?}",
            r.eq9_holds,
            r.eq10_holds,
            r.eq11_holds
        );
    }
    Ok(())
}

const SEED: u64 = 2024;
const INSTANCES: usize = 20;

fn nijenhuis_cross_check() -> Outcome {
    let list = random_instances(SEED, INSTANCES).map_err(|x| x.to_string())?;
    ensure!(list.iter().any(|(_, s)| s.dim() == 4) && list.iter().any(|(_, s)| s.dim() == 6), "dimensions");
    for (name, s) in &list {
        let j = build_j(s).map_err(|x| x.to_string())?;
        let t = build_t(s).map_err(|x| x.to_string())?;
        let nj = nijenhuis_of_complex(s.algebra(), &j).map_err(|x| x.to_string())?;
        let nt = nijenhuis_of_complex(s.algebra(), &t).map_err(|x| x.to_string())?;
        let (ej, et) = (nj_expanded(s), nt_expanded(s));
        for a in 0..s.dim() {
            for b in 0..s.dim() {
                let (x, y) = (e(s.dim(), a), e(s.dim(), b));
                ensure!(ej.eval(&x, &y) == nj.eval(&x, &y), "{name}: N_J at ({}, {})", a + 1, b + 1);
                ensure!(et.eval(&x, &y) == nt.eval(&x, &y), "{name}: N_T at ({}, {})", a + 1, b + 1);
            }
        }
    }
    Ok(())
}

fn theorem_suite() -> Outcome {
    let (mut normal, mut not_normal, mut mixed) = (0, 0, 0);
    for (name, s) in random_instances(SEED, INSTANCES).map_err(|x| x.to_string())? {
        let r = analyze(&s).map_err(|x| x.to_string())?;
        let both = nj_expanded(&s).is_zero() && nt_expanded(&s).is_zero();
        ensure!(both == normality_tensor(&s).is_zero(), "{name}: integrability criterion");
        if r.decomposable {
            let split = r.eq9_holds == Some(true) && r.eq10_holds == Some(true) && r.eq11_holds == Some(true);
            ensure!(split == r.tensor_zero, "{name}: split system");
        } else {
            mixed += 1;
        }
        let checks = theorem_checks(&r);
        ensure!(checks.passed(), "{name}:\n{checks}");
        if r.pair_normal { normal += 1 } else { not_normal += 1 }
    }
    ensure!(normal > 0 && not_normal > 0 && mixed > 0, "coverage {normal}/{not_normal}/{mixed}");
    Ok(())
}

fn factor_normal(f: &AlmostContactStructure) -> bool {
    almost_contact_normality(f.algebra(), f.alpha(), f.reeb(), f.phi()).map(|r| r.passed()).unwrap_or(false)
}

fn morimoto_suite() -> Outcome {
    let run = |l: AlmostContactStructure, r: AlmostContactStructure| {
        direct_sum(&ProductSpec { left: l, right: r }).and_then(|s| analyze(&s)).map_err(|x| x.to_string())
    };
    let hh = run(heisenberg_factor(), heisenberg_factor())?;
    ensure!(hh.pair_normal, "heisHeis must be normal");
    let fx = load_fixture("heisHeis").map_err(|x| x.to_string())?;
    ensure!(analyze(&fx.structure().map_err(|x| x.to_string())?).map_err(|x| x.to_string())?.pair_normal, "heisHeis fixture");

    // Heisenberg admits no non-normal invariant structure tensor, so the swap happens on an so(3) factor
    let normal_left = run(so3_factor(true), heisenberg_factor())?;
    let skew_left = run(so3_factor(false), heisenberg_factor())?;
    ensure!(normal_left.pair_normal && !skew_left.pair_normal, "left swap verdict");
    ensure!(skew_left.eq9_holds == Some(false) && skew_left.eq10_holds == Some(true), "left swap flips only the first leaf");
    let normal_right = run(heisenberg_factor(), so3_factor(true))?;
    let skew_right = run(heisenberg_factor(), so3_factor(false))?;
    ensure!(normal_right.pair_normal && !skew_right.pair_normal, "right swap verdict");
    ensure!(skew_right.eq9_holds == Some(true) && skew_right.eq10_holds == Some(false), "right swap flips only the second leaf");

    let factors: Vec<(&str, fn() -> AlmostContactStructure)> = vec![
        ("heis", heisenberg_factor),
        ("sl2", sl2_factor),
        ("so3", || so3_factor(true)),
        ("so3-skew", || so3_factor(false)),
    ];
    let (mut yes, mut no) = (0, 0);
    for (ln, lf) in &factors {
        for (rn, rf) in &factors {
            let expect = factor_normal(&lf()) && factor_normal(&rf());
            let r = run(lf(), rf())?;
            ensure!(r.pair_normal == expect, "{ln} x {rn}: product {} factors {expect}", r.pair_normal);
            ensure!(r.eq11_holds == Some(true), "{ln} x {rn}: cross equation");
            if expect { yes += 1 } else { no += 1 }
        }
    }
    ensure!(yes >= 3 && no >= 3, "coverage {yes}/{no}");
    Ok(())
}

fn plus_plane(base: &LieAlgebra, psi: Endomorphism) -> Result<AlmostContactSymplecticStructure, String> {
    let l = base.direct_sum(&LieAlgebra::abelian(2));
    AlmostContactSymplecticStructure::from_forms(&l, &AltForm::covector(5, 2), &AltForm::monomial(5, &[3, 4]), psi)
        .map_err(|x| x.to_string())
}

fn bw_bases() -> Result<Vec<(&'static str, AlmostContactSymplecticStructure)>, String> {
    let heis = heisenberg_algebra().direct_sum(&LieAlgebra::abelian(2));
    let csp = classify_contact_symplectic(&heis, &AltForm::covector(5, 2), &AltForm::monomial(5, &[3, 4]))
        .map_err(|x| x.to_string())?;
    let psi = construct_decomposable_psi(&csp).map_err(|x| x.to_string())?;
    let darboux = AlmostContactSymplecticStructure::new(csp, psi).map_err(|x| x.to_string())?;
    // e1 -> e4 -> -e1, e2 -> e5 -> -e2: engineered to break eta compatibility
    let v = |c: [i64; 5]| Vector::from_ints(&c);
    let mixing = plus_plane(
        &heisenberg_algebra(),
        Endomorphism::from_images(&[v([0, 0, 0, 1, 0]), v([0, 0, 0, 0, 1]), v([0; 5]), v([-1, 0, 0, 0, 0]), v([0, -1, 0, 0, 0])]),
    )?;
    let rot = Endomorphism::from_images(&[e(2, 1), -e(2, 0)]);
    let so3 = |n: bool| plus_plane(&so3_algebra(), so3_factor(n).phi().direct_sum(&rot));
    Ok(vec![
        ("flat3", flat3_acss()),
        ("heis+R2 darboux", darboux),
        ("heis+R2 mixing", mixing),
        ("so3+R2", so3(true)?),
        ("so3+R2 skew", so3(false)?),
    ])
}

fn boothby_wang_suite() -> Outcome {
    let s = boothby_wang_extend(&flat3_acss()).map_err(|x| x.to_string())?;
    ensure!(s.pair().kind() == (1, 0), "flat3 extension type {:?}", s.pair().kind());
    ensure!(analyze(&s).map_err(|x| x.to_string())?.pair_normal, "flat3 extension must be normal");

    let (mut agree_true, mut agree_false) = (0, 0);
    let (mut normal, mut not_normal) = (0, 0);
    for (name, a) in bw_bases()? {
        let up = boothby_wang_extend(&a).map_err(|x| x.to_string())?;
        let j = build_j(&up).map_err(|x| x.to_string())?;
        let j_int = nijenhuis_of_complex(up.algebra(), &j).map_err(|x| x.to_string())?.is_zero();
        let c = bw_base_conditions(&a);
        ensure!(c.derived_holds() == j_int, "{name}: base conditions {} upstairs {j_int}", c.derived_holds());
        if j_int { agree_true += 1 } else { agree_false += 1 }

        if eta_invariance(&a).passed() && acss_decomposable(a.csp(), a.psi()).passed() {
            let base = a.as_almost_contact();
            let base_normal = almost_contact_normality(base.algebra(), base.alpha(), base.reeb(), base.phi())
                .map_err(|x| x.to_string())?
                .passed();
            let ext_normal = analyze(&up).map_err(|x| x.to_string())?.pair_normal;
            ensure!(ext_normal == base_normal, "{name}: extension {ext_normal} base {base_normal}");
            if base_normal { normal += 1 } else { not_normal += 1 }
        }
    }
    ensure!(agree_true >= 1 && agree_false >= 1, "conjunction coverage {agree_true}/{agree_false}");
    ensure!(normal >= 1 && not_normal >= 1, "normality coverage {normal}/{not_normal}");
    Ok(())
}

fn calculus_suite() -> Outcome {
    for name in FIXTURE_NAMES {
        let l = load_fixture(name).map_err(|x| x.to_string())?.algebra;
        ensure!(d_squared_zero(&l), "{name}: d^2");
        ensure!(structure_round_trip(&l), "{name}: round trip");
        ensure!(l.jacobi_check().passed(), "{name}: Jacobi");
    }
    let m = load_fixture("solvable6").map_err(|x| x.to_string())?.algebra.with_constant(0, 1, 2, int(1));
    ensure!(!m.jacobi_check().passed(), "mutated algebra satisfies Jacobi");
    ensure!(!d_squared_zero(&m), "mutated algebra has d^2 = 0");
    Ok(())
}

fn cli_determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../reference");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|x| x.to_string())?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    ensure!(files.len() >= FIXTURE_NAMES.len(), "only {} reference files", files.len());
    for f in &files {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_cpair"))
                .args(["--input", f.to_str().unwrap(), "--format", "machine"])
                .output()
                .map_err(|x| x.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure!(a.status.code() == Some(0), "{}: exit {:?}", f.display(), a.status.code());
        ensure!(a.stdout == b.stdout && a.status == b.status, "{}: outputs differ", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("solvable6 golden run", solvable6_golden),
        ("heisenberg3 golden run", heisenberg_golden),
        ("nil4 auto-decomposability", nil4_golden),
        ("nilpotent6 sampled run", nilpotent6_sampled),
        ("Nijenhuis cross-check", nijenhuis_cross_check),
        ("theorem suite", theorem_suite),
        ("product suite", morimoto_suite),
        ("Boothby-Wang suite", boothby_wang_suite),
        ("calculus suite", calculus_suite),
        ("CLI determinism", cli_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let within = secs < 10.0;
        match (&outcome, within) {
            (Ok(()), true) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            (Ok(()), false) => println!("criterion {:>2}: FAIL  {name} ({secs:.2}s, over the 10s budget)", i + 1),
            (Err(m), _) => println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {m}", i + 1),
        }
        if outcome.is_err() || !within {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.2}s", criteria.len() - failed, criteria.len(), total.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
