//! Dispatch from task names to the core operations.

use std::path::Path;

use contact_pairs::constructions::{
    boothby_wang_extend, bw_base_conditions, direct_sum, double_extension, eta_invariance, ProductSpec,
};
use contact_pairs::fixtures::{evaluate, load_fixture, Fixture, Value as FxValue, FIXTURE_NAMES};
use contact_pairs::normality::{almost_contact_normality, analyze, induced_normality, theorem_checks};
use contact_pairs::pairs::{
    acss_decomposable, classify_contact_pair, classify_contact_symplectic, classify_symplectic_pair,
    is_decomposable, reeb_field, splitting_bases, verify_acss, verify_almost_contact, verify_cps,
    AlmostContactStructure, AlmostContactSymplecticStructure, ContactPair, ContactPairStructure,
};
use contact_pairs::{Error, Vector};
use serde_json::{json, Value};

use crate::document::{parse, InputDocument, Parsed, TaskSpec};
use crate::report::{flag_witness_json, vector_json, Report};
use crate::CliError;

pub const TASKS: [&str; 11] = [
    "classify-pair",
    "classify-symplectic",
    "classify-cs",
    "reeb",
    "verify-structure",
    "decomposable",
    "normality",
    "induced",
    "extend",
    "product",
    "fixtures",
];

fn arg<'a>(t: &'a TaskSpec, key: &str, default: &'a str) -> Result<&'a str, CliError> {
    match t.args.get(key) {
        None => Ok(default),
        Some(Value::String(s)) => Ok(s),
        Some(other) => Err(CliError::Semantic(format!("task argument {key:?} must be a string, got {other}"))),
    }
}

fn kind_json((h, k): (usize, usize)) -> Value {
    json!([h, k])
}

fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(vector_json).collect())
}

/// Runs a task on a parsed document. `base` resolves relative file references.
pub fn run(p: &Parsed, task: &TaskSpec, base: &Path) -> Result<Report, CliError> {
    let mut r = Report::new(task);
    match task.op.as_str() {
        "classify-pair" => classify_pair(p, task, &mut r)?,
        "classify-symplectic" => classify_symplectic(p, task, &mut r)?,
        "classify-cs" => classify_cs(p, task, &mut r)?,
        "reeb" => reeb(p, task, &mut r)?,
        "verify-structure" => verify_structure(p, task, &mut r)?,
        "decomposable" => decomposable(p, task, &mut r)?,
        "normality" => normality(p, task, &mut r)?,
        "induced" => induced(p, task, &mut r)?,
        "extend" => extend(p, task, &mut r)?,
        "product" => product(task, base, &mut r)?,
        "fixtures" => return run_fixtures(task),
        other => return Err(CliError::Usage(format!("unknown task {other:?}; known tasks: {}", TASKS.join(", ")))),
    }
    r.check_expectations(&task.expect);
    Ok(r)
}

fn pair_forms(p: &Parsed, t: &TaskSpec) -> Result<ContactPair, CliError> {
    let a1 = p.form(arg(t, "alpha1", "alpha1")?)?;
    let a2 = p.form(arg(t, "alpha2", "alpha2")?)?;
    Ok(ContactPair::new(&p.algebra, a1, a2)?)
}

fn pair_structure(p: &Parsed, t: &TaskSpec) -> Result<ContactPairStructure, CliError> {
    let phi = p.endomorphism(arg(t, "phi", "phi")?)?;
    Ok(ContactPairStructure::new(pair_forms(p, t)?, phi.clone())?)
}

fn acss(p: &Parsed, t: &TaskSpec) -> Result<AlmostContactSymplecticStructure, CliError> {
    let beta = p.form(arg(t, "beta", "beta")?)?;
    let eta = p.form(arg(t, "eta", "eta")?)?;
    let psi = p.endomorphism(arg(t, "psi", "psi")?)?;
    Ok(AlmostContactSymplecticStructure::from_forms(&p.algebra, beta, eta, psi.clone())?)
}

/// `(alpha, reeb, phi)`; the Reeb field is solved for when no vector is named.
fn almost_contact(p: &Parsed, t: &TaskSpec) -> Result<AlmostContactStructure, CliError> {
    let alpha = p.form(arg(t, "alpha", "alpha")?)?;
    let phi = p.endomorphism(arg(t, "phi", "phi")?)?;
    let reeb_name = arg(t, "reeb", "reeb")?;
    let z = match p.vectors.get(reeb_name) {
        Some(z) => z.clone(),
        None => reeb_field(&p.algebra, alpha)?,
    };
    Ok(AlmostContactStructure::new(&p.algebra, alpha, &z, phi)?)
}

fn classify_pair(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let a1 = p.form(arg(t, "alpha1", "alpha1")?)?;
    let a2 = p.form(arg(t, "alpha2", "alpha2")?)?;
    match classify_contact_pair(&p.algebra, a1, a2) {
        Ok(kind) => {
            r.primary_verdict("is_contact_pair", true);
            r.value("kind", kind_json(kind));
        }
        Err(Error::NotContactPair(why)) => {
            r.primary_verdict("is_contact_pair", false);
            r.note("is_contact_pair", why);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn classify_symplectic(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let w1 = p.form(arg(t, "omega1", "omega1")?)?;
    let w2 = p.form(arg(t, "omega2", "omega2")?)?;
    match classify_symplectic_pair(&p.algebra, w1, w2) {
        Ok(kind) => {
            r.primary_verdict("is_symplectic_pair", true);
            r.value("kind", kind_json(kind));
        }
        Err(e @ (Error::NotSymplecticPair(_) | Error::NotClosed)) => {
            r.primary_verdict("is_symplectic_pair", false);
            r.note("is_symplectic_pair", e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn classify_cs(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let beta = p.form(arg(t, "beta", "beta")?)?;
    let eta = p.form(arg(t, "eta", "eta")?)?;
    match classify_contact_symplectic(&p.algebra, beta, eta) {
        Ok(c) => {
            r.primary_verdict("is_contact_symplectic", true);
            r.value("kind", kind_json(c.kind()));
            r.value("reeb", vector_json(c.reeb()));
            r.value("th", vectors_json(c.th()));
            r.value("tf2", vectors_json(c.tf2()));
        }
        Err(e @ (Error::NotContactSymplectic(_) | Error::NotClosed)) => {
            r.primary_verdict("is_contact_symplectic", false);
            r.note("is_contact_symplectic", e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn reeb(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    match pair_forms(p, t) {
        Ok(pair) => {
            r.primary_verdict("reeb_solved", true);
            r.value("z1", vector_json(pair.z1()));
            r.value("z2", vector_json(pair.z2()));
            r.value("kind", kind_json(pair.kind()));
        }
        Err(CliError::Core(e @ Error::NotContactPair(_))) => {
            r.primary_verdict("reeb_solved", false);
            r.note("reeb_solved", e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn verify_structure(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let report = match arg(t, "structure", "pair")? {
        "pair" => {
            let pair = pair_forms(p, t)?;
            verify_cps(&pair, p.endomorphism(arg(t, "phi", "phi")?)?)
        }
        "acss" => {
            let beta = p.form(arg(t, "beta", "beta")?)?;
            let eta = p.form(arg(t, "eta", "eta")?)?;
            let c = classify_contact_symplectic(&p.algebra, beta, eta)?;
            verify_acss(&c, p.endomorphism(arg(t, "psi", "psi")?)?)
        }
        "almost-contact" => {
            let alpha = p.form(arg(t, "alpha", "alpha")?)?;
            let phi = p.endomorphism(arg(t, "phi", "phi")?)?;
            let z = match p.vectors.get(arg(t, "reeb", "reeb")?) {
                Some(z) => z.clone(),
                None => reeb_field(&p.algebra, alpha)?,
            };
            verify_almost_contact(alpha, &z, phi)
        }
        other => return Err(structure_kind(other)),
    };
    r.absorb("", &report);
    r.primary_verdict("valid", report.passed());
    Ok(())
}

fn structure_kind(other: &str) -> CliError {
    CliError::Semantic(format!("structure must be pair, acss or almost-contact, got {other:?}"))
}

fn decomposable(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let report = match arg(t, "structure", "pair")? {
        "pair" => {
            let pair = pair_forms(p, t)?;
            let s = splitting_bases(&pair)?;
            r.value("tf1", vectors_json(&s.tf1));
            r.value("tf2", vectors_json(&s.tf2));
            is_decomposable(&pair, p.endomorphism(arg(t, "phi", "phi")?)?, &s)
        }
        "acss" => {
            let a = acss(p, t)?;
            acss_decomposable(a.csp(), a.psi())
        }
        other => return Err(structure_kind(other)),
    };
    r.absorb("", &report);
    r.primary_verdict("decomposable", report.passed());
    Ok(())
}

fn normality(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    match arg(t, "structure", "pair")? {
        "pair" => pair_normality(&pair_structure(p, t)?, r),
        "almost-contact" => {
            let a = almost_contact(p, t)?;
            let rep = almost_contact_normality(a.algebra(), a.alpha(), a.reeb(), a.phi())?;
            r.absorb("", &rep);
            r.primary.push("normal".into());
            Ok(())
        }
        "acss" => {
            let a = acss(p, t)?;
            let ac = a.as_almost_contact();
            let rep = almost_contact_normality(ac.algebra(), ac.alpha(), ac.reeb(), ac.phi())?;
            r.absorb("", &rep);
            r.primary.push("normal".into());
            r.value("kind", kind_json(a.csp().kind()));
            r.verdict("decomposable", a.is_decomposable());
            r.absorb("", &eta_invariance(&a));
            let bw = bw_base_conditions(&a);
            r.absorb("extension-derived:", &bw.derived);
            r.absorb("extension-printed:", &bw.printed);
            r.value("printed_discrepancy", Value::Bool(bw.discrepancy()));
            Ok(())
        }
        other => Err(structure_kind(other)),
    }
}

fn pair_normality(s: &ContactPairStructure, r: &mut Report) -> Result<(), CliError> {
    let rep = analyze(s)?;
    r.value("kind", kind_json(rep.kind));
    for (name, v) in rep.flags() {
        if let Some(v) = v {
            r.verdict(name, v);
        }
    }
    r.primary.push("pair_normal".into());
    for (name, w) in &rep.witnesses {
        r.witnesses.insert(name.clone(), flag_witness_json(w));
    }
    r.absorb("theorem:", &theorem_checks(&rep));
    Ok(())
}

fn induced(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let which = match t.args.get("which") {
        None => 1,
        Some(Value::Number(n)) if n.as_u64() == Some(1) || n.as_u64() == Some(2) => n.as_u64().unwrap() as u8,
        Some(other) => return Err(CliError::Semantic(format!("which must be 1 or 2, got {other}"))),
    };
    let s = pair_structure(p, t)?;
    let rep = induced_normality(&s, which)?;
    r.absorb(&format!("induced{which}:"), &rep);
    r.primary_verdict(&format!("induced{which}_normal"), rep.passed());
    Ok(())
}

/// Encodes a contact pair structure as a document whose task is `normality`.
pub fn structure_document(s: &ContactPairStructure) -> InputDocument {
    InputDocument::from_parts(
        s.algebra(),
        &[("alpha1", s.pair().alpha1()), ("alpha2", s.pair().alpha2())],
        &[],
        &[("phi", s.phi())],
        Some(TaskSpec::new("normality")),
    )
}

fn emit_structure(s: &ContactPairStructure, r: &mut Report) -> Result<(), CliError> {
    r.primary_verdict("is_contact_pair", true);
    r.value("kind", kind_json(s.pair().kind()));
    r.value("z1", vector_json(s.pair().z1()));
    r.value("z2", vector_json(s.pair().z2()));
    r.verdict("decomposable", s.is_decomposable());
    r.verdict("pair_normal", analyze(s)?.pair_normal);
    r.document = Some(structure_document(s));
    Ok(())
}

fn extend(p: &Parsed, t: &TaskSpec, r: &mut Report) -> Result<(), CliError> {
    let s = match arg(t, "mode", "boothby-wang")? {
        "boothby-wang" => boothby_wang_extend(&acss(p, t)?)?,
        "double" => {
            let w1 = p.form(arg(t, "omega1", "omega1")?)?;
            let w2 = p.form(arg(t, "omega2", "omega2")?)?;
            double_extension(&p.algebra, w1, w2)?
        }
        other => return Err(CliError::Semantic(format!("mode must be boothby-wang or double, got {other:?}"))),
    };
    emit_structure(&s, r)
}

fn load_factor(v: Option<&Value>, key: &str, base: &Path) -> Result<AlmostContactStructure, CliError> {
    let doc = match v {
        Some(Value::String(path)) => {
            let path = base.join(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            parse(&text)?
        }
        Some(obj @ Value::Object(_)) => serde_json::from_value(obj.clone())
            .map_err(|e| CliError::Semantic(format!("{key} factor: {e}")))?,
        _ => return Err(CliError::Semantic(format!("product needs a {key:?} document or path"))),
    };
    let parsed = doc.validate()?;
    almost_contact(&parsed, &TaskSpec::new("product"))
}

fn product(t: &TaskSpec, base: &Path, r: &mut Report) -> Result<(), CliError> {
    let left = load_factor(t.args.get("left"), "left", base)?;
    let right = load_factor(t.args.get("right"), "right", base)?;
    let normal = |a: &AlmostContactStructure| -> Result<bool, CliError> {
        Ok(almost_contact_normality(a.algebra(), a.alpha(), a.reeb(), a.phi())?.passed())
    };
    let (ln, rn) = (normal(&left)?, normal(&right)?);
    let s = direct_sum(&ProductSpec { left, right })?;
    emit_structure(&s, r)?;
    r.verdict("left_normal", ln);
    r.verdict("right_normal", rn);
    let pn = r.verdicts["pair_normal"];
    r.primary_verdict("product_criterion", pn == (ln && rn));
    Ok(())
}

/// `fixtures` with `action` = `list` or `run` (optionally restricted to `name`).
pub fn run_fixtures(t: &TaskSpec) -> Result<Report, CliError> {
    let mut r = Report::new(t);
    match arg(t, "action", "run")? {
        "list" => {
            r.value("fixtures", json!(FIXTURE_NAMES));
        }
        "run" => {
            let names: Vec<&str> = match t.args.get("name") {
                Some(Value::String(n)) => vec![n.as_str()],
                None => FIXTURE_NAMES.to_vec(),
                Some(other) => return Err(CliError::Semantic(format!("name must be a string, got {other}"))),
            };
            for name in names {
                let fx = load_fixture(name)?;
                for ex in &fx.expectations {
                    let key = format!("{name}:{}", ex.predicate);
                    let (ok, note) = match evaluate(&fx, &ex.predicate) {
                        Ok(v) => (v == ex.expected, format!("expected {}, got {v}", ex.expected)),
                        Err(e) => (false, format!("error: {e}")),
                    };
                    r.primary_verdict(&key, ok);
                    r.note(&key, note);
                }
            }
        }
        other => return Err(CliError::Semantic(format!("action must be list or run, got {other:?}"))),
    }
    r.check_expectations(&t.expect);
    Ok(r)
}

fn fx_value(v: &FxValue) -> Value {
    match v {
        FxValue::Bool(b) => json!(b),
        FxValue::Kind(h, k) => json!([h, k]),
        FxValue::Vectors(vs) => vectors_json(vs),
    }
}

/// The reference task, with expectations, shipped for each fixture.
fn reference_task(fx: &Fixture) -> TaskSpec {
    let expected = |pred: &str| {
        fx.expectations
            .iter()
            .find(|e| e.predicate == pred)
            .map(|e| fx_value(&e.expected))
            .expect("catalog expectation")
    };
    let copy = |mut t: TaskSpec, keys: &[&str]| {
        for k in keys {
            let key = if *k == "classify_contact_pair" { "kind" } else { k };
            t = t.expect(key, expected(k));
        }
        t
    };
    match fx.name.as_str() {
        "solvable6" => copy(
            TaskSpec::new("normality"),
            &[
                "classify_contact_pair",
                "eq9_holds",
                "eq10_holds",
                "eq11_holds",
                "induced1_normal",
                "induced2_normal",
                "LZ1_phi_zero",
                "LZ2_phi_zero",
                "J_integrable",
                "T_integrable",
                "pair_normal",
            ],
        )
        .expect("decomposable", true),
        "nilpotent6" => copy(TaskSpec::new("classify-pair"), &["classify_contact_pair"]).expect("is_contact_pair", true),
        "nil4" => copy(TaskSpec::new("normality"), &["classify_contact_pair", "pair_normal", "LZ2_phi_zero"])
            .expect("decomposable", true),
        "heisenberg3" => TaskSpec::new("normality").arg("structure", "almost-contact").expect("normal", true),
        "flat3" => TaskSpec::new("extend")
            .expect("kind", json!([1, 0]))
            .expect("pair_normal", true)
            .expect("decomposable", true),
        "heisHeis" => copy(TaskSpec::new("normality"), &["classify_contact_pair", "eq11_holds", "pair_normal"]),
        _ => TaskSpec::new("fixtures").arg("name", fx.name.clone()),
    }
}

/// A fixture as a document carrying its reference task.
pub fn fixture_document(name: &str) -> Result<InputDocument, CliError> {
    let fx = load_fixture(name)?;
    let forms: Vec<(&str, _)> = fx.forms.iter().map(|(k, v)| (k.as_str(), v)).collect();
    let vectors: Vec<(&str, _)> = fx.vectors.iter().map(|(k, v)| (k.as_str(), v)).collect();
    let endos: Vec<(&str, _)> = fx.endomorphisms.iter().map(|(k, v)| (k.as_str(), v)).collect();
    Ok(InputDocument::from_parts(&fx.algebra, &forms, &vectors, &endos, Some(reference_task(&fx))))
}
