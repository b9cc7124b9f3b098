//! The JSON problem-file format and its conversion into library objects.
//!
//! Every conversion error carries the JSON path of the offending value.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use hodgekit::filtration::{DecreasingFiltration, Grading, IncreasingFiltration};
use hodgekit::ih::{AnfData, LocalSystemData};
use hodgekit::linalg::{IntegerLattice, MatPoly, Matrix, Scalar, Subspace, Vector};
use hodgekit::orbits::{LocalNormalForm, NilpotentOrbitData};
use hodgekit::HodgeError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, OperatorDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filtrations: BTreeMap<String, FiltrationDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattices: BTreeMap<String, LatticeDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anf: Option<AnfDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_system: Option<LocalSystemDef>,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
}

/// A square matrix, either as rows or by the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorDef {
    Rows(Vec<Vec<String>>),
    Maps { maps: BTreeMap<String, ImageDef> },
}

/// The image of `e_k`: a coordinate vector or a combination such as
/// `"2e1 - (1+i)e2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageDef {
    Vector(Vec<String>),
    Expr(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Increasing,
    Decreasing,
}

/// Steps keyed by index; each step lists a spanning set of the whole
/// subspace (not of a graded piece).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDef {
    pub kind: Kind,
    pub steps: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDef {
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaTerm {
    pub exponents: Vec<u32>,
    pub matrix: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDef {
    pub weight: String,
    pub hodge: String,
    pub logs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<GammaTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnfDef {
    pub h: Vec<Vec<String>>,
    pub e0: Vec<String>,
    pub logs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemDef {
    pub logs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDef {
    pub z: Vec<String>,
    pub s: Vec<String>,
}

/// Numeric arguments for individual commands.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slice: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ys: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pattern: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<SampleDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_inf: Option<String>,
}

impl Params {
    fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

/// A malformed or inconsistent input, located by JSON path or by line and
/// column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub at: String,
    pub message: String,
}

impl InputError {
    pub fn new(at: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { at: at.into(), message: message.into() }
    }

    fn hodge(at: impl Into<String>, e: HodgeError) -> Self {
        InputError::new(at, e.to_string())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

type Res<T> = Result<T, InputError>;

pub fn parse_problem(text: &str) -> Res<ProblemFile> {
    let pf: ProblemFile =
        serde_json::from_str(text).map_err(|e| InputError::new(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    if pf.schema_version != SCHEMA_VERSION {
        return Err(InputError::new("$.schema_version", format!("unsupported schema version {} (expected {SCHEMA_VERSION})", pf.schema_version)));
    }
    Ok(pf)
}

pub fn scalar(at: &str, s: &str) -> Res<Scalar> {
    s.parse().map_err(|e: HodgeError| InputError::hodge(at, e))
}

pub fn scalars(at: &str, xs: &[String]) -> Res<Vec<Scalar>> {
    xs.iter().enumerate().map(|(k, s)| scalar(&format!("{at}[{k}]"), s)).collect()
}

/// `"e<k>"` with `k < dim`.
fn basis_index(at: &str, key: &str, dim: usize) -> Res<usize> {
    let k = key
        .strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| InputError::new(at, format!("expected a basis name e0..e{}, found {key:?}", dim.saturating_sub(1))))?;
    if k >= dim {
        return Err(InputError::new(at, format!("basis vector {key} is out of range for dimension {dim}")));
    }
    Ok(k)
}

/// Parses `term (('+'|'-') term)*` with `term := coef? '*'? 'e' digits`,
/// where `coef` is a scalar literal without a top-level sign or a
/// parenthesized scalar.
pub fn linear_combination(at: &str, expr: &str, dim: usize) -> Res<Vector> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(vec![Scalar::zero(); dim]);
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for (k, c) in compact.chars().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if k > 0 {
                    if current.is_empty() {
                        return Err(InputError::new(at, format!("dangling sign in {expr:?}")));
                    }
                    terms.push((negative, std::mem::take(&mut current)));
                }
                negative = c == '-';
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if current.is_empty() {
        return Err(InputError::new(at, format!("empty term in {expr:?}")));
    }
    terms.push((negative, current));
    let mut out = vec![Scalar::zero(); dim];
    for (negative, term) in terms {
        let pos = term.rfind('e').ok_or_else(|| InputError::new(at, format!("term {term:?} names no basis vector")))?;
        let k = basis_index(at, &term[pos..], dim)?;
        let coef = term[..pos].trim_end_matches('*');
        let mut c = match coef {
            "" => Scalar::one(),
            _ => match coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
                Some(inner) => scalar(at, inner)?,
                None => scalar(at, coef)?,
            },
        };
        if negative {
            c = -c;
        }
        out[k] = &out[k] + &c;
    }
    Ok(out)
}

/// Resolves named objects of a problem file against its ambient dimension.
pub struct Resolver<'a> {
    pub pf: &'a ProblemFile,
}

impl<'a> Resolver<'a> {
    pub fn new(pf: &'a ProblemFile) -> Self {
        Resolver { pf }
    }

    pub fn dim(&self) -> usize {
        self.pf.dim
    }

    pub fn vector(&self, at: &str, xs: &[String]) -> Res<Vector> {
        if xs.len() != self.dim() {
            return Err(InputError::new(at, format!("expected {} entries, found {}", self.dim(), xs.len())));
        }
        scalars(at, xs)
    }

    fn vectors(&self, at: &str, xs: &[Vec<String>]) -> Res<Vec<Vector>> {
        xs.iter().enumerate().map(|(k, v)| self.vector(&format!("{at}[{k}]"), v)).collect()
    }

    pub fn has_matrix(&self, name: &str) -> bool {
        self.pf.matrices.contains_key(name)
    }

    pub fn matrix(&self, name: &str) -> Res<Matrix> {
        let at = format!("$.matrices.{name}");
        let def = self.pf.matrices.get(name).ok_or_else(|| InputError::new(&at, "no such matrix"))?;
        let n = self.dim();
        match def {
            OperatorDef::Rows(rows) => {
                if rows.len() != n {
                    return Err(InputError::new(&at, format!("expected {n} rows, found {}", rows.len())));
                }
                Ok(Matrix::from_rows(self.vectors(&at, rows)?))
            }
            OperatorDef::Maps { maps } => {
                let mut cols = vec![vec![Scalar::zero(); n]; n];
                for (key, image) in maps {
                    let here = format!("{at}.maps.{key}");
                    let k = basis_index(&here, key, n)?;
                    cols[k] = match image {
                        ImageDef::Vector(v) => self.vector(&here, v)?,
                        ImageDef::Expr(e) => linear_combination(&here, e, n)?,
                    };
                }
                Ok(Matrix::from_columns(n, &cols))
            }
        }
    }

    pub fn grading(&self, name: &str) -> Res<Grading> {
        Grading::new(self.matrix(name)?).map_err(|e| InputError::hodge(format!("$.matrices.{name}"), e))
    }

    fn steps(&self, name: &str, want: Kind) -> Res<BTreeMap<i32, Subspace>> {
        let at = format!("$.filtrations.{name}");
        let def = self.pf.filtrations.get(name).ok_or_else(|| InputError::new(&at, "no such filtration"))?;
        if def.kind != want {
            return Err(InputError::new(format!("{at}.kind"), format!("expected a {want:?} filtration").to_lowercase()));
        }
        let mut out = BTreeMap::new();
        for (key, basis) in &def.steps {
            let here = format!("{at}.steps.{key}");
            let k: i32 = key.parse().map_err(|_| InputError::new(&here, format!("step index {key:?} is not an integer")))?;
            out.insert(k, Subspace::span(self.dim(), &self.vectors(&here, basis)?));
        }
        Ok(out)
    }

    pub fn increasing(&self, name: &str) -> Res<IncreasingFiltration> {
        IncreasingFiltration::from_steps(self.dim(), self.steps(name, Kind::Increasing)?)
            .map_err(|e| InputError::hodge(format!("$.filtrations.{name}"), e))
    }

    pub fn decreasing(&self, name: &str) -> Res<DecreasingFiltration> {
        DecreasingFiltration::from_steps(self.dim(), self.steps(name, Kind::Decreasing)?)
            .map_err(|e| InputError::hodge(format!("$.filtrations.{name}"), e))
    }

    pub fn lattice(&self, name: &str) -> Res<IntegerLattice> {
        let at = format!("$.lattices.{name}");
        let def = self.pf.lattices.get(name).ok_or_else(|| InputError::new(&at, "no such lattice"))?;
        let basis = self.vectors(&format!("{at}.basis"), &def.basis)?;
        IntegerLattice::new(Matrix::from_columns(self.dim(), &basis)).map_err(|e| InputError::hodge(at, e))
    }

    fn optional_lattice(&self, name: &Option<String>) -> Res<Option<IntegerLattice>> {
        name.as_deref().map(|l| self.lattice(l)).transpose()
    }

    fn matrices(&self, names: &[String]) -> Res<Vec<Matrix>> {
        names.iter().map(|n| self.matrix(n)).collect()
    }

    pub fn orbit(&self) -> Res<LocalNormalForm> {
        let def = self.pf.orbit.as_ref().ok_or_else(|| InputError::new("$.orbit", "the file has no orbit"))?;
        let w = self.increasing(&def.weight)?;
        let f = self.decreasing(&def.hodge)?;
        let logs = self.matrices(&def.logs)?;
        let lattice = self.optional_lattice(&def.lattice)?;
        let r = logs.len();
        let orbit = NilpotentOrbitData::new(w, logs, f, lattice).map_err(|e| InputError::hodge("$.orbit", e))?;
        if def.gamma.is_empty() {
            return Ok(LocalNormalForm::untwisted(orbit));
        }
        let mut terms = Vec::new();
        for (k, t) in def.gamma.iter().enumerate() {
            if t.exponents.len() != r {
                return Err(InputError::new(format!("$.orbit.gamma[{k}].exponents"), format!("expected {r} exponents")));
            }
            terms.push((t.exponents.clone(), self.matrix(&t.matrix)?));
        }
        let gamma = MatPoly::from_terms(self.dim(), r, terms);
        LocalNormalForm::new(orbit, gamma).map_err(|e| InputError::hodge("$.orbit.gamma", e))
    }

    pub fn anf(&self) -> Res<AnfData> {
        let def = self.pf.anf.as_ref().ok_or_else(|| InputError::new("$.anf", "the file has no extension data"))?;
        let h = Subspace::span(self.dim(), &self.vectors("$.anf.h", &def.h)?);
        let e0 = self.vector("$.anf.e0", &def.e0)?;
        let logs = self.matrices(&def.logs)?;
        let lattice = self.optional_lattice(&def.lattice)?;
        AnfData::new(h, e0, logs, lattice).map_err(|e| InputError::hodge("$.anf", e))
    }

    pub fn local_system(&self) -> Res<LocalSystemData> {
        let def = self.pf.local_system.as_ref().ok_or_else(|| InputError::new("$.local_system", "the file has no local system"))?;
        let logs = self.matrices(&def.logs)?;
        let lattice = self.optional_lattice(&def.lattice)?;
        LocalSystemData::new(self.dim(), logs, lattice).map_err(|e| InputError::hodge("$.local_system", e))
    }

    pub fn param_scalars(&self, field: &str, xs: &[String]) -> Res<Vec<Scalar>> {
        scalars(&format!("$.params.{field}"), xs)
    }
}
