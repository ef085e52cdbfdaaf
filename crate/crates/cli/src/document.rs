//! The JSON file format shared by inputs and constructed outputs.
//!
//! Indices are 1-based in files and 0-based everywhere else.

use std::collections::BTreeMap;

use contact_pairs::linalg::Matrix;
use contact_pairs::{parse_scalar, AltForm, Endomorphism, LieAlgebra, Scalar, Vector};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    /// `dω^target = Σ coeff · ω^i ∧ ω^j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<StructureEntry>,
    /// `[e_i, e_j] = Σ coeff · e_k`; the antisymmetric partner is implied.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<ConstantEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<String>>,
    /// Row-major matrices; column `j` is the image of `e_j`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub endomorphisms: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub target: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

/// Either a bare map `"i,j,..." -> coefficient`, or an explicit degree with
/// such a map (needed for the zero form).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Explicit(ExplicitForm),
    Terms(BTreeMap<String, String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitForm {
    pub degree: usize,
    pub terms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub op: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub args: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, Value>,
}

impl TaskSpec {
    pub fn new(op: &str) -> Self {
        TaskSpec { op: op.to_string(), args: BTreeMap::new(), expect: BTreeMap::new() }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.args.insert(key.to_string(), value.into());
        self
    }

    pub fn expect(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.expect.insert(key.to_string(), value.into());
        self
    }
}

/// A validated document.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub algebra: LieAlgebra,
    pub forms: BTreeMap<String, AltForm>,
    pub vectors: BTreeMap<String, Vector>,
    pub endomorphisms: BTreeMap<String, Endomorphism>,
    pub task: Option<TaskSpec>,
}

impl Parsed {
    pub fn form(&self, name: &str) -> Result<&AltForm, CliError> {
        self.forms.get(name).ok_or_else(|| CliError::Semantic(format!("no form named {name:?}")))
    }

    pub fn vector(&self, name: &str) -> Result<&Vector, CliError> {
        self.vectors.get(name).ok_or_else(|| CliError::Semantic(format!("no vector named {name:?}")))
    }

    pub fn endomorphism(&self, name: &str) -> Result<&Endomorphism, CliError> {
        self.endomorphisms
            .get(name)
            .ok_or_else(|| CliError::Semantic(format!("no endomorphism named {name:?}")))
    }
}

/// Reads a document; syntax errors carry line and column.
pub fn parse(text: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn scalar(text: &str, what: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).map_err(|e| CliError::Semantic(format!("{what}: {e}")))
}

fn index(i: usize, dim: usize, what: &str) -> Result<usize, CliError> {
    if i == 0 || i > dim {
        return Err(CliError::Semantic(format!("{what}: index {i} out of range 1..={dim}")));
    }
    Ok(i - 1)
}

fn parse_form(dim: usize, name: &str, spec: &FormSpec) -> Result<AltForm, CliError> {
    let (degree, terms) = match spec {
        FormSpec::Explicit(e) => (Some(e.degree), &e.terms),
        FormSpec::Terms(t) => (None, t),
    };
    let what = format!("form {name:?}");
    let mut parsed = Vec::new();
    for (key, coeff) in terms {
        let idx: Vec<usize> = if key.trim().is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|s| {
                    let i: usize = s
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Semantic(format!("{what}: bad index list {key:?}")))?;
                    index(i, dim, &what)
                })
                .collect::<Result<_, _>>()?
        };
        parsed.push((idx, scalar(coeff, &what)?));
    }
    let degree = match (degree, parsed.first()) {
        (Some(d), _) => d,
        (None, Some((idx, _))) => idx.len(),
        (None, None) => {
            return Err(CliError::Semantic(format!("{what}: an empty form needs an explicit degree")))
        }
    };
    if parsed.iter().any(|(idx, _)| idx.len() != degree) {
        return Err(CliError::Semantic(format!("{what}: terms of mixed degree")));
    }
    AltForm::from_terms(dim, degree, parsed).map_err(|e| CliError::Semantic(format!("{what}: {e}")))
}

fn parse_vector(dim: usize, name: &str, coords: &[String]) -> Result<Vector, CliError> {
    let what = format!("vector {name:?}");
    if coords.len() != dim {
        return Err(CliError::Semantic(format!("{what}: expected {dim} entries, found {}", coords.len())));
    }
    Ok(Vector::new(coords.iter().map(|c| scalar(c, &what)).collect::<Result<_, _>>()?))
}

fn parse_matrix(dim: usize, name: &str, rows: &[Vec<String>]) -> Result<Endomorphism, CliError> {
    let what = format!("endomorphism {name:?}");
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Semantic(format!("{what}: expected a {dim}x{dim} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|c| scalar(c, &what)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Endomorphism::from_matrix(Matrix::from_rows(rows)?)?)
}

impl InputDocument {
    /// Checks every invariant and builds the core types.
    pub fn validate(&self) -> Result<Parsed, CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(CliError::Semantic("dim must be positive".into()));
        }
        if !self.structure.is_empty() && !self.constants.is_empty() {
            return Err(CliError::Semantic("give either structure equations or constants, not both".into()));
        }
        let algebra = if !self.constants.is_empty() {
            let mut entries = Vec::new();
            for c in &self.constants {
                let what = format!("constant c[{}][{}][{}]", c.i, c.j, c.k);
                entries.push((index(c.i, n, &what)?, index(c.j, n, &what)?, index(c.k, n, &what)?, scalar(&c.coeff, &what)?));
            }
            LieAlgebra::from_constants(n, entries).map_err(|e| CliError::Semantic(e.to_string()))?
        } else {
            let mut eqs = Vec::new();
            for entry in &self.structure {
                let what = format!("structure equation for dω{}", entry.target);
                let k = index(entry.target, n, &what)?;
                let terms = entry
                    .terms
                    .iter()
                    .map(|t| Ok((index(t.i, n, &what)?, index(t.j, n, &what)?, scalar(&t.coeff, &what)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                eqs.push((k, terms));
            }
            let l = LieAlgebra::from_structure_equations(n, &eqs).map_err(|e| CliError::Semantic(e.to_string()))?;
            // every listed equation must be reproduced by the differential
            let derived = l.structure_equations();
            let mut expected = vec![AltForm::zero(n, 2); n];
            for (k, terms) in &eqs {
                for (i, j, c) in terms {
                    let t = AltForm::from_terms(n, 2, [(vec![*i, *j], c.clone())]).expect("checked");
                    expected[*k] = expected[*k].add(&t).expect("same degree");
                }
            }
            if derived != expected {
                return Err(CliError::Semantic("structure equations do not round-trip".into()));
            }
            l
        };
        let jacobi = algebra.jacobi_check();
        if let Some(f) = jacobi.first_failure() {
            let at = f
                .witness
                .as_ref()
                .map(|w| {
                    let idx: Vec<String> = w.basis.iter().map(|i| (i + 1).to_string()).collect();
                    format!(" at ({})", idx.join(", "))
                })
                .unwrap_or_default();
            return Err(CliError::Semantic(format!("Jacobi identity fails{at}")));
        }
        let forms = self
            .forms
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_form(n, k, v)?)))
            .collect::<Result<_, CliError>>()?;
        let vectors = self
            .vectors
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_vector(n, k, v)?)))
            .collect::<Result<_, CliError>>()?;
        let endomorphisms = self
            .endomorphisms
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_matrix(n, k, v)?)))
            .collect::<Result<_, CliError>>()?;
        Ok(Parsed { algebra, forms, vectors, endomorphisms, task: self.task.clone() })
    }

    /// Encodes core objects; the algebra is written as structure equations.
    pub fn from_parts(
        algebra: &LieAlgebra,
        forms: &[(&str, &AltForm)],
        vectors: &[(&str, &Vector)],
        endomorphisms: &[(&str, &Endomorphism)],
        task: Option<TaskSpec>,
    ) -> Self {
        let structure = algebra
            .structure_equations()
            .into_iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(k, f)| StructureEntry {
                target: k + 1,
                terms: f
                    .terms()
                    .map(|(idx, c)| Term { i: idx[0] + 1, j: idx[1] + 1, coeff: c.to_string() })
                    .collect(),
            })
            .collect();
        InputDocument {
            dim: algebra.dim(),
            structure,
            constants: Vec::new(),
            forms: forms.iter().map(|(k, f)| (k.to_string(), encode_form(f))).collect(),
            vectors: vectors.iter().map(|(k, v)| (k.to_string(), encode_vector(v))).collect(),
            endomorphisms: endomorphisms
                .iter()
                .map(|(k, e)| {
                    let m = e.matrix();
                    let rows = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect());
                    (k.to_string(), rows.collect())
                })
                .collect(),
            task,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }
}

pub fn encode_vector(v: &Vector) -> Vec<String> {
    v.coords().iter().map(|c| c.to_string()).collect()
}

pub fn encode_form(f: &AltForm) -> FormSpec {
    let terms: BTreeMap<String, String> = f
        .terms()
        .map(|(idx, c)| {
            let key: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            (key.join(","), c.to_string())
        })
        .collect();
    if terms.is_empty() {
        FormSpec::Explicit(ExplicitForm { degree: f.degree(), terms })
    } else {
        FormSpec::Terms(terms)
    }
}
