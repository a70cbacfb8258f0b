//! Subcommands as library functions returning an exit code and a report.

use crate::files::{FileError, IdealFile, ProblemFile, ResultFile};
use invdef_core::algebra::{MonomialOrder, Polynomial, Ring};
use invdef_core::deform::{
    build_presentation, covariant_basis, fiber_over_zero, run, tangent_space, verify, DeformError, Problem, Tangent,
};
use invdef_core::degeneration::{flat_limit, subgroup_weights};
use invdef_core::groebner::{groebner, ideal_equal, krull_dimension, GbError, HilbertSeries};
use invdef_core::action::ActionError;
use log::info;
use serde_json::{json, Value};
use std::path::Path;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    fn ok(report: Value, text: String) -> Self {
        Outcome {
            code: EXIT_OK,
            report,
            text,
        }
    }

    fn fail(code: i32, msg: String) -> Self {
        Outcome {
            code,
            report: json!({ "error": msg }),
            text: format!("error: {msg}"),
        }
    }
}

impl From<FileError> for Outcome {
    fn from(e: FileError) -> Self {
        let code = match &e {
            FileError::Group(ActionError::TooLarge(_)) => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Outcome::fail(code, e.to_string())
    }
}

impl From<DeformError> for Outcome {
    fn from(e: DeformError) -> Self {
        let code = match &e {
            DeformError::Validation(_) | DeformError::Hypothesis(_) => EXIT_INPUT,
            DeformError::Action(ActionError::TooLarge(_)) | DeformError::CovariantCap { .. } => EXIT_CAP,
            DeformError::Action(ActionError::NotStable(_) | ActionError::Dependent | ActionError::Shape(_)) => {
                EXIT_INPUT
            }
            DeformError::Gb(GbError::TooLarge(_)) => EXIT_CAP,
            _ => EXIT_INTERNAL,
        };
        Outcome::fail(code, e.to_string())
    }
}

impl From<GbError> for Outcome {
    fn from(e: GbError) -> Self {
        Outcome::from(DeformError::Gb(e))
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::from(e),
        }
    };
}

fn load_problem(path: &Path) -> Result<Problem, FileError> {
    ProblemFile::load(path)?.problem()
}

/// Presentation, covariants and tangent space.
pub fn compute_tangent(problem: &Problem) -> Result<(invdef_core::deform::Presentation, Tangent), DeformError> {
    let start = Instant::now();
    let pres = build_presentation(problem)?;
    info!(
        "presentation: n1 = {}, n2 = {} ({:.1?})",
        pres.n1(),
        pres.n2(),
        start.elapsed()
    );
    let covs = covariant_basis(problem, &pres)?;
    info!("covariants: {} ({:.1?})", covs.len(), start.elapsed());
    let tan = tangent_space(&pres, &covs);
    info!("tangent dimension {} ({:.1?})", tan.dim(), start.elapsed());
    Ok((pres, tan))
}

pub fn tangent(problem_path: &Path) -> Outcome {
    let problem = tri!(load_problem(problem_path));
    let (_, tan) = tri!(compute_tangent(&problem));
    let rows: Vec<Vec<String>> = tan
        .rows
        .iter()
        .map(|r| (0..r.cols).map(|j| problem.ring.format(r.get(0, j))).collect())
        .collect();
    let mut text = format!("d = {}\nt-weights = {:?}\n", tan.dim(), tan.weights);
    for (i, r) in rows.iter().enumerate() {
        text.push_str(&format!("s{} = [{}]\n", i + 1, r.join(", ")));
    }
    Outcome::ok(json!({ "d": tan.dim(), "t_weights": tan.weights, "rows": rows }), text)
}

pub struct DeformArgs<'a> {
    pub problem: &'a Path,
    pub max_order: Option<usize>,
    pub positive_only: bool,
    pub out: Option<&'a Path>,
}

/// Runs the full algorithm and returns the result file alongside.
pub fn deform_result(problem: &mut Problem, args: &DeformArgs) -> Result<ResultFile, Outcome> {
    if args.max_order.is_some() {
        problem.options.max_order = args.max_order;
    }
    if args.positive_only {
        problem.options.positive_weight_only = true;
    }
    let (pres, tan) = compute_tangent(problem)?;
    let start = Instant::now();
    let res = run(problem, &pres, &tan)?;
    info!("deformation computed in {:.1?}", start.elapsed());
    Ok(ResultFile::from_result(problem, &res)?)
}

pub fn deform(args: &DeformArgs) -> Outcome {
    let mut problem = tri!(load_problem(args.problem));
    let file = match deform_result(&mut problem, args) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let body = crate::files::to_json(&file);
    if let Some(out) = args.out {
        if let Err(e) = std::fs::write(out, &body) {
            return Outcome::fail(EXIT_INPUT, format!("{}: {e}", out.display()));
        }
    }
    let text = format!(
        "d = {}\nt-weights = {:?}\nstopped = {} at order {}\nK = [{}]\n",
        file.t_variables.len(),
        file.t_weights,
        file.stopped,
        file.stop_order,
        file.k.join(", ")
    );
    let report = serde_json::to_value(&file).expect("serializable");
    Outcome::ok(report, text)
}

pub fn verify_cmd(result_path: &Path, problem_path: &Path) -> Outcome {
    let problem = tri!(load_problem(problem_path));
    let file = tri!(ResultFile::load(result_path));
    let res = tri!(file.to_result(&problem));
    let rep = verify(&problem, &res);
    let mut text = String::new();
    let mut checks = Vec::new();
    for (name, ok, detail) in &rep.checks {
        text.push_str(&format!("{} {name}: {detail}\n", if *ok { "PASS" } else { "FAIL" }));
        checks.push(json!({ "check": name, "passed": ok, "detail": detail }));
    }
    Outcome {
        code: if rep.passed() { EXIT_OK } else { EXIT_VERIFY },
        report: json!({ "passed": rep.passed(), "checks": checks }),
        text,
    }
}

/// Flat limit of the problem's ideal along the subgroup with exponents `n`.
pub fn limit_ideal(file: &ProblemFile, n: &[i64]) -> Result<(Ring, Vec<i64>, Vec<Polynomial>), Outcome> {
    let (ring, l) = file.ideal_polys()?;
    let map = file
        .subgroup
        .as_ref()
        .ok_or_else(|| Outcome::fail(EXIT_INPUT, "the problem file has no `subgroup` map".into()))?;
    if map.len() != ring.nvars() || map.iter().any(|r| r.len() != n.len()) {
        return Err(Outcome::fail(
            EXIT_INPUT,
            format!("subgroup map must have {} rows of length {}", ring.nvars(), n.len()),
        ));
    }
    let a = subgroup_weights(map, n);
    info!("variable weights {:?}", a);
    let l0 = flat_limit(&l, &a, ring.nvars())?;
    Ok((ring, a, l0))
}

pub fn limit(problem_path: &Path, n: &[i64], expect: Option<&Path>) -> Outcome {
    let file = tri!(ProblemFile::load(problem_path));
    let (ring, a, l0) = match limit_ideal(&file, n) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let gens: Vec<String> = l0.iter().map(|p| ring.format_generator(p)).collect();
    let mut text = format!("variable weights = {a:?}\nL0 = [{}]\n", gens.join(", "));
    let mut report = json!({ "weights": a, "limit": gens });
    let mut code = EXIT_OK;
    if let Some(path) = expect {
        let other = tri!(ProblemFile::load(path));
        let (r2, target) = tri!(other.ideal_polys());
        if r2.names() != ring.names() {
            return Outcome::fail(EXIT_INPUT, "expected ideal lives in a different ring".into());
        }
        let equal = tri!(ideal_equal(&l0, &target, ring.nvars()));
        text.push_str(&format!(
            "{} limit equals the ideal of {}\n",
            if equal { "PASS" } else { "FAIL" },
            path.display()
        ));
        report["equals_expected"] = json!(equal);
        if !equal {
            code = EXIT_VERIFY;
        }
    }
    Outcome { code, report, text }
}

pub fn fiber(result_path: &Path, problem_path: &Path) -> Outcome {
    let problem = tri!(load_problem(problem_path));
    let file = tri!(ResultFile::load(result_path));
    let res = tri!(file.to_result(&problem));
    let k0 = tri!(fiber_over_zero(&problem, &res));
    let tr = Ring::new(&res.t_names).expect("valid names");
    let gb = tri!(groebner(&k0, &MonomialOrder::GrevLex, res.t_names.len()));
    let dim = krull_dimension(&gb.leading_monomials(), res.t_names.len());
    let gens: Vec<String> = k0.iter().map(|p| tr.format_generator(p)).collect();
    let text = format!(
        "K0 = [{}]\ndimension = {}\n",
        gens.join(", "),
        dim.map_or("empty".to_string(), |d| d.to_string())
    );
    Outcome::ok(json!({ "K0": gens, "dimension": dim }), text)
}

/// Dimension and, for a positive grading, the weighted Hilbert series.
pub fn describe(gens: &[Polynomial], nvars: usize, weights: Option<&[i64]>) -> Result<Value, Outcome> {
    let gb = groebner(gens, &MonomialOrder::GrevLex, nvars)?;
    let dim = krull_dimension(&gb.leading_monomials(), nvars);
    let mut v = json!({ "dimension": dim, "basis_size": gb.len() });
    if let Some(w) = weights {
        if w.len() != nvars || w.iter().any(|&x| x < 1) {
            return Err(Outcome::fail(EXIT_INPUT, "weights must be positive, one per variable".into()));
        }
        if let Some(i) = gens.iter().position(|p| !p.is_zero() && p.weight(w).is_none()) {
            return Err(Outcome::fail(
                EXIT_INPUT,
                format!("generator {} is not homogeneous for the weights", i + 1),
            ));
        }
        let hs = HilbertSeries::of_ideal(&gb, w)
            .map_err(|_| Outcome::fail(EXIT_CAP, "Hilbert series lattice too large".into()))?;
        v["hilbert_series"] = json!(hs.format());
    }
    Ok(v)
}

pub fn analyze(ideal_path: &Path, weights: Option<Vec<i64>>) -> Outcome {
    let file = tri!(IdealFile::load(ideal_path));
    let (ring, gens) = tri!(file.polys());
    let n = ring.nvars();
    let w = weights.or_else(|| file.weights.clone());
    let main = match describe(&gens, n, w.as_deref()) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let mut text = format!("dimension = {}\n", main["dimension"]);
    if let Some(h) = main.get("hilbert_series") {
        text.push_str(&format!("hilbert series = {}\n", h.as_str().unwrap_or_default()));
    }
    let mut companions = serde_json::Map::new();
    for name in file.companions.keys() {
        let c = tri!(file.companion(name));
        let d = match describe(&c, n, None) {
            Ok(v) => v,
            Err(o) => return o,
        };
        text.push_str(&format!("{name}: dimension = {}\n", d["dimension"]));
        companions.insert(name.clone(), d);
    }
    Outcome::ok(json!({ "ideal": main, "companions": companions }), text)
}
