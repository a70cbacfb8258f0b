//! JSON problem, ideal and result files.

use invdef_core::action::{ActionError, GroupAction};
use invdef_core::algebra::linalg::QMatrix;
use invdef_core::algebra::{rational, MonomialOrder, ParseError, PolyMatrix, Polynomial, Ring};
use invdef_core::deform::{Options, Problem, UniversalDeformation};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Cap on the closure of finite generators.
const FINITE_CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("group: {0}")]
    Group(#[from] ActionError),
}

type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RingSpec {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gm_weights: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GroupSpec {
    /// Full list of elements of the finite part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_part: Option<Vec<Matrix>>,
    /// Generators whose closure is the finite part.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_generators: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_part: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_basis: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_dual_basis: Option<Vec<Matrix>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub multiplicity: usize,
    pub hilbert_value: usize,
    /// Dimension of the irreducible module, for the optional cross-check
    /// against the number of generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_covariant_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_weight_only: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub krylov_cap: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: Vec<String>,
    pub ring: RingSpec,
    #[serde(default)]
    pub group: GroupSpec,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub n1_decomposition: Vec<DecompositionEntry>,
    #[serde(default)]
    pub invariants: Vec<String>,
    #[serde(default)]
    pub options: OptionsSpec,
    /// For flat limits: `subgroup[v]` gives the weight of variable `v` as a
    /// linear form in the exponents `n` of the one-parameter subgroup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<Vec<i64>>>,
}

/// A bare ideal in named variables, optionally graded, with named companion
/// ideals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealFile {
    #[serde(default)]
    pub description: Vec<String>,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub companions: std::collections::BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub t_variables: Vec<String>,
    pub t_weights: Vec<i64>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<String>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<String>>,
    pub stop_order: usize,
    pub stopped: bool,
    #[serde(default)]
    pub log: Vec<String>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    let text = std::fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| FileError::Json {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_all(ring: &Ring, what: &str, items: &[String]) -> Result<Vec<Polynomial>, FileError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            ring.parse(s).map_err(|e| FileError::Parse {
                context: format!("{what} {}", i + 1),
                source: e,
            })
        })
        .collect()
}

fn matrix(m: &Matrix, n: usize, what: &str) -> Result<QMatrix, FileError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(FileError::Invalid(format!("{what}: expected a {n}x{n} matrix")));
    }
    let rows = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| rational::parse(s).ok_or_else(|| FileError::Invalid(format!("{what}: bad rational `{s}`"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_rows(rows))
}

fn matrices(ms: &Option<Vec<Matrix>>, n: usize, what: &str) -> Result<Vec<QMatrix>, FileError> {
    ms.iter()
        .flatten()
        .enumerate()
        .map(|(i, m)| matrix(m, n, &format!("{what} {}", i + 1)))
        .collect()
}

impl GroupSpec {
    pub fn build(&self, nvars: usize) -> Result<GroupAction, FileError> {
        let mut finite = matrices(&self.finite_part, nvars, "finite element")?;
        let gens = matrices(&self.finite_generators, nvars, "finite generator")?;
        if !gens.is_empty() {
            if !finite.is_empty() {
                return Err(FileError::Invalid("give either finite_part or finite_generators".into()));
            }
            finite = GroupAction::close_finite(&gens, nvars, FINITE_CLOSURE_CAP)?;
        }
        let basis = matrices(&self.lie_basis, nvars, "Lie basis element")?;
        let dual = matrices(&self.lie_dual_basis, nvars, "dual basis element")?;
        if basis.len() != dual.len() {
            return Err(FileError::Invalid("lie_basis and lie_dual_basis differ in length".into()));
        }
        let torus = self.torus_part.clone().unwrap_or_default();
        Ok(GroupAction::new(nvars, finite, torus, basis.into_iter().zip(dual).collect())?)
    }
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<ProblemFile, FileError> {
        read_json(path)
    }

    pub fn ring(&self) -> Result<Ring, FileError> {
        Ring::new(&self.ring.variables).map_err(|e| FileError::Parse {
            context: "variables".into(),
            source: e,
        })
    }

    /// The ideal alone, without group or grading.
    pub fn ideal_polys(&self) -> Result<(Ring, Vec<Polynomial>), FileError> {
        let ring = self.ring()?;
        let ideal = parse_all(&ring, "generator", &self.ideal)?;
        Ok((ring, ideal))
    }

    pub fn problem(&self) -> Result<Problem, FileError> {
        let (ring, ideal) = self.ideal_polys()?;
        let n = ring.nvars();
        let gm_weights = self
            .ring
            .gm_weights
            .clone()
            .ok_or_else(|| FileError::Invalid("ring.gm_weights is required".into()))?;
        let action = self.group.build(n)?;
        let invariants = parse_all(&ring, "invariant", &self.invariants)?;
        if self.n1_decomposition.iter().all(|e| e.dimension.is_some()) && !self.n1_decomposition.is_empty() {
            let total: usize = self
                .n1_decomposition
                .iter()
                .map(|e| e.multiplicity * e.dimension.unwrap())
                .sum();
            if total != ideal.len() {
                return Err(FileError::Invalid(format!(
                    "n1_decomposition accounts for {total} generators, the ideal lists {}",
                    ideal.len()
                )));
            }
        }
        let defaults = Options::default();
        let o = &self.options;
        let options = Options {
            max_order: o.max_order,
            max_covariant_degree: o.max_covariant_degree.unwrap_or(defaults.max_covariant_degree),
            positive_weight_only: o.positive_weight_only.unwrap_or(false),
            krylov_cap: o.krylov_cap.unwrap_or(defaults.krylov_cap),
        };
        Ok(Problem {
            ring,
            gm_weights,
            action,
            ideal,
            decomposition: self
                .n1_decomposition
                .iter()
                .map(|e| (e.multiplicity, e.hilbert_value))
                .collect(),
            invariants,
            options,
        })
    }
}

impl IdealFile {
    pub fn load(path: &Path) -> Result<IdealFile, FileError> {
        read_json(path)
    }

    pub fn ring(&self) -> Result<Ring, FileError> {
        Ring::new(&self.variables).map_err(|e| FileError::Parse {
            context: "variables".into(),
            source: e,
        })
    }

    pub fn polys(&self) -> Result<(Ring, Vec<Polynomial>), FileError> {
        let ring = self.ring()?;
        let ideal = parse_all(&ring, "generator", &self.ideal)?;
        Ok((ring, ideal))
    }

    pub fn companion(&self, name: &str) -> Result<Vec<Polynomial>, FileError> {
        let items = self
            .companions
            .get(name)
            .ok_or_else(|| FileError::Invalid(format!("no companion ideal `{name}`")))?;
        parse_all(&self.ring()?, name, items)
    }
}

fn format_matrix(ring: &Ring, m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| ring.format(m.get(i, j))).collect())
        .collect()
}

fn parse_matrix(ring: &Ring, rows: &[Vec<String>], what: &str) -> Result<PolyMatrix, FileError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    if rows.iter().any(|x| x.len() != c) {
        return Err(FileError::Invalid(format!("{what} is not rectangular")));
    }
    let mut m = PolyMatrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let p = ring.parse(s).map_err(|e| FileError::Parse {
                context: format!("{what}[{}][{}]", i + 1, j + 1),
                source: e,
            })?;
            m.set(i, j, p);
        }
    }
    Ok(m)
}

impl ResultFile {
    pub fn from_result(problem: &Problem, res: &UniversalDeformation) -> Result<ResultFile, FileError> {
        let full = problem.ring.extended(&res.t_names).map_err(|e| FileError::Parse {
            context: "t-variables".into(),
            source: e,
        })?;
        let t_ring = Ring::new(&res.t_names).expect("names are valid");
        let mut k: Vec<Polynomial> = res.k.iter().map(|p| p.primitive(&MonomialOrder::GrevLex)).collect();
        k.sort_by(|a, b| {
            let wa = a.weight(&res.t_weights);
            let wb = b.weight(&res.t_weights);
            wa.cmp(&wb).then_with(|| t_ring.format(a).cmp(&t_ring.format(b)))
        });
        Ok(ResultFile {
            t_variables: res.t_names.clone(),
            t_weights: res.t_weights.clone(),
            k: k.iter().map(|p| t_ring.format_generator(p)).collect(),
            u: format_matrix(&full, &res.u),
            v: format_matrix(&full, &res.v),
            stop_order: res.stop_order,
            stopped: res.stopped,
            log: res.log.clone(),
        })
    }

    pub fn load(path: &Path) -> Result<ResultFile, FileError> {
        read_json(path)
    }

    pub fn to_result(&self, problem: &Problem) -> Result<UniversalDeformation, FileError> {
        if self.t_variables.len() != self.t_weights.len() {
            return Err(FileError::Invalid("one weight per t-variable is required".into()));
        }
        let full = problem.ring.extended(&self.t_variables).map_err(|e| FileError::Parse {
            context: "t-variables".into(),
            source: e,
        })?;
        let t_ring = Ring::new(&self.t_variables).map_err(|e| FileError::Parse {
            context: "t-variables".into(),
            source: e,
        })?;
        Ok(UniversalDeformation {
            t_names: self.t_variables.clone(),
            t_weights: self.t_weights.clone(),
            k: parse_all(&t_ring, "K generator", &self.k)?,
            u: parse_matrix(&full, &self.u, "U")?,
            v: parse_matrix(&full, &self.v, "V")?,
            stop_order: self.stop_order,
            stopped: self.stopped,
            log: self.log.clone(),
        })
    }
}
