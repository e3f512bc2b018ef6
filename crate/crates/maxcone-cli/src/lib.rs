//! Command-line front end for the `maxcone` library.
//!
//! Every verb reads JSON or CSV matrices (path or `-` for stdin) and
//! prints a single JSON document. Exit codes: 0 success, 1 domain
//! error, 2 usage or parse error; `solve` exits 0 Solved, 3 NoSolution,
//! 4 BudgetExceeded.

use std::fs;
use std::io::Read as _;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use maxcone::cones::{
    caratheodory_witness, enumerate_cells, extremals_and_basis, is_member, CellOptions, Membership,
};
use maxcone::io::{IoScalar, Raw, Semiring};
use maxcone::perm::{essential_span, permanent, pseudoinverse};
use maxcone::projectors::{
    distance_cones, distance_points, project, separate_cones, DistanceKind, DistanceMethod,
    DistanceReport, RadiusOptions, Separation,
};
use maxcone::scalar::{Cmp, MaxPlusF64, MaxPlusRat, MaxTimesRat};
use maxcone::solver::{iteration_bound, solve, BoundKind, Stop, SystemSpec};
use maxcone::spectral::{
    eigencone_bases, kleene_intersection, kleene_star, lambda, ConeBasis, Intersection,
};
use maxcone::{Error, Matrix, Vector};

#[derive(Debug, Parser)]
#[command(name = "maxcone", version, about = "Max-cone geometry toolkit", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemiringArg {
    Maxtimes,
    Maxplus,
}

impl From<SemiringArg> for Semiring {
    fn from(s: SemiringArg) -> Semiring {
        match s {
            SemiringArg::Maxtimes => Semiring::MaxTimes,
            SemiringArg::Maxplus => Semiring::MaxPlus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Cyclic,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Estimate1,
    Estimate2,
    Integer,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Semiring view; inferred from the inputs when omitted.
    #[arg(long, global = true, value_enum)]
    pub semiring: Option<SemiringArg>,
    /// Exact rational backend instead of float64.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Relative comparator tolerance (float backend).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sweep budget for iterative verbs.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Starting vector file for `solve`.
    #[arg(long, global = true)]
    pub y0: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Seed for randomized internals.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Kleene star I + A + ... + A^(n-1) of a definite matrix.
    Star { matrix: String },
    /// Maximum cycle geometric mean.
    Lambda { matrix: String },
    /// Eigencone and subeigencone bases of a definite matrix.
    Eig { matrix: String },
    /// Membership of a point in the column span.
    Member {
        #[arg(long)]
        y: String,
        matrix: String,
    },
    /// Scaled extremal basis of the column span.
    Basis {
        matrix: String,
        /// Also report a generating subset for this point.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Nonlinear projection onto the column span.
    Project {
        #[arg(long)]
        y: String,
        matrix: String,
    },
    /// Separate cones by halfspaces or exhibit a common point.
    Separate {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Cellular decomposition of the column span.
    Cells {
        matrix: String,
        /// Keep non-maximal feasible cells too.
        #[arg(long)]
        all: bool,
    },
    /// Max-algebraic permanent and a maximal permutation.
    Per { matrix: String },
    /// Pseudoadjugate and pseudoinverse.
    Pinv { matrix: String },
    /// Essential span basis and its dimension.
    Essential { matrix: String },
    /// Alternating method for A1 x = A2 x = ... .
    Solve {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Projective distance between points (or cones with --cones).
    Dist {
        #[arg(long, value_enum, default_value = "cyclic")]
        kind: KindArg,
        /// Inputs are matrices; measure between their column spans.
        #[arg(long)]
        cones: bool,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Iteration bound for the alternating method.
    Bound {
        #[arg(long, value_enum, default_value = "estimate1")]
        kind: BoundArg,
        /// Indices of the declared-positive matrices (estimate2).
        #[arg(long, value_delimiter = ',')]
        positive: Vec<usize>,
        /// Known total distance between the spans.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Intersection of Kleene cone spans.
    Intersect {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
}

impl Verb {
    fn input_paths(&self) -> Vec<&str> {
        match self {
            Verb::Star { matrix }
            | Verb::Lambda { matrix }
            | Verb::Eig { matrix }
            | Verb::Cells { matrix, .. }
            | Verb::Per { matrix }
            | Verb::Pinv { matrix }
            | Verb::Essential { matrix } => vec![matrix.as_str()],
            Verb::Basis { matrix, witness } => {
                let mut v = vec![matrix.as_str()];
                if let Some(w) = witness {
                    v.push(w.as_str());
                }
                v
            }
            Verb::Member { y, matrix } | Verb::Project { y, matrix } => {
                vec![y.as_str(), matrix.as_str()]
            }
            Verb::Separate { matrices }
            | Verb::Solve { matrices }
            | Verb::Intersect { matrices }
            | Verb::Bound { matrices, .. } => matrices.iter().map(String::as_str).collect(),
            Verb::Dist { inputs, .. } => inputs.iter().map(String::as_str).collect(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Verb::Star { .. } => "star",
            Verb::Lambda { .. } => "lambda",
            Verb::Eig { .. } => "eig",
            Verb::Member { .. } => "member",
            Verb::Basis { .. } => "basis",
            Verb::Project { .. } => "project",
            Verb::Separate { .. } => "separate",
            Verb::Cells { .. } => "cells",
            Verb::Per { .. } => "per",
            Verb::Pinv { .. } => "pinv",
            Verb::Essential { .. } => "essential",
            Verb::Solve { .. } => "solve",
            Verb::Dist { .. } => "dist",
            Verb::Bound { .. } => "bound",
            Verb::Intersect { .. } => "intersect",
        }
    }
}

pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome { code, output: e.to_string() };
        }
    };
    run_cli(&cli)
}

fn usage_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let started = Instant::now();
    match dispatch(cli) {
        Ok(Exec { mut doc, code, csv }) => {
            if cli.opts.format == FormatArg::Csv {
                if let Some(raw) = csv {
                    return Outcome { code, output: raw.to_csv_string() };
                }
            }
            let obj = doc.as_object_mut().expect("result document is an object");
            obj.insert("verb".into(), json!(cli.verb.name()));
            obj.insert(
                "diagnostics".into(),
                json!({
                    "backend": backend_name(&cli.opts),
                    "tol": comparator(&cli.opts).rel,
                    "seed": cli.opts.seed,
                }),
            );
            obj.insert(
                "elapsed_ms".into(),
                json!(started.elapsed().as_secs_f64() * 1e3),
            );
            Outcome { code, output: doc.to_string() }
        }
        Err(e) => Outcome {
            code: usage_code(&e),
            output: json!({ "error": e.to_string() }).to_string(),
        },
    }
}

fn backend_name(opts: &GlobalOpts) -> &'static str {
    if opts.exact {
        "exact"
    } else {
        "float64"
    }
}

fn comparator(opts: &GlobalOpts) -> Cmp {
    let rel = opts
        .tol
        .or_else(|| {
            std::env::var("MAXCONE_TOL")
                .ok()
                .and_then(|s| s.parse::<f64>().ok())
        })
        .unwrap_or(Cmp::default().rel);
    Cmp::with_rel(rel)
}

struct Exec {
    doc: Value,
    code: i32,
    /// Primary matrix or vector, for `--format csv`.
    csv: Option<Raw>,
}

fn read_source(path: &str) -> maxcone::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

fn load_raws(cli: &Cli) -> maxcone::Result<(Vec<Raw>, Option<Raw>)> {
    let mut raws = Vec::new();
    for p in cli.verb.input_paths() {
        raws.push(Raw::parse(&read_source(p)?)?);
    }
    let y0 = match &cli.opts.y0 {
        Some(p) => Some(Raw::parse(&read_source(p)?)?),
        None => None,
    };
    Ok((raws, y0))
}

fn common_view(raws: &[Raw], y0: &Option<Raw>, flag: Option<Semiring>) -> maxcone::Result<Semiring> {
    let mut declared: Option<Semiring> = None;
    for r in raws.iter().chain(y0.iter()) {
        match declared {
            None => declared = Some(r.semiring),
            Some(d) if d != r.semiring => {
                return Err(Error::Parse("mixed semiring declarations across inputs".into()))
            }
            _ => {}
        }
    }
    match (flag, declared) {
        (Some(f), Some(d)) if f != d => Err(Error::Parse(format!(
            "inputs declare semiring {d}, but --semiring {f} was requested"
        ))),
        (Some(f), _) => Ok(f),
        (None, Some(d)) => Ok(d),
        (None, None) => Ok(Semiring::MaxTimes),
    }
}

fn dispatch(cli: &Cli) -> maxcone::Result<Exec> {
    let (raws, y0) = load_raws(cli)?;
    let view = common_view(&raws, &y0, cli.opts.semiring.map(Into::into))?;
    match (view, cli.opts.exact) {
        (_, false) => exec::<MaxPlusF64>(cli, &raws, &y0, view),
        (Semiring::MaxTimes, true) => exec::<MaxTimesRat>(cli, &raws, &y0, view),
        (Semiring::MaxPlus, true) => exec::<MaxPlusRat>(cli, &raws, &y0, view),
    }
}

fn vec_json<S: IoScalar>(v: &Vector<S>, view: Semiring) -> Value {
    Value::Array(v.iter().map(|x| x.to_entry(view).to_json()).collect())
}

fn mat_json<S: IoScalar>(m: &Matrix<S>, view: Semiring) -> Value {
    Raw::from_matrix(m, view).to_json()
}

fn basis_json<S: IoScalar>(b: &ConeBasis<S>, view: Semiring) -> Value {
    json!({
        "kind": format!("{:?}", b.kind).to_lowercase(),
        "generators": b.generators.iter().map(|g| vec_json(g, view)).collect::<Vec<_>>(),
        "max_dimension": b.max_dimension,
        "linear_dimension": b.linear_dimension,
    })
}

fn method_json(m: &DistanceMethod) -> Value {
    match m {
        DistanceMethod::Exact => json!("exact"),
        DistanceMethod::PowerIteration { residual, sweeps } => {
            json!({"power_iteration": {"residual": residual, "sweeps": sweeps}})
        }
    }
}

fn dist_json<S: IoScalar>(d: &DistanceReport<S>, view: Semiring, kind: KindArg) -> Value {
    json!({
        "kind": match kind { KindArg::Cyclic => "cyclic", KindArg::Total => "total" },
        "value": d.value,
        "witnesses": d.witnesses.iter().map(|w| vec_json(w, view)).collect::<Vec<_>>(),
        "method": method_json(&d.method),
    })
}

fn radius_options(cli: &Cli, cmp: &Cmp) -> RadiusOptions {
    RadiusOptions {
        max_sweeps: cli.opts.max_iter,
        tol: cmp.rel,
    }
}

fn exec<S: IoScalar>(
    cli: &Cli,
    raws: &[Raw],
    y0: &Option<Raw>,
    view: Semiring,
) -> maxcone::Result<Exec> {
    let cmp = comparator(&cli.opts);
    let ok = |doc: Value, csv: Option<Raw>| Ok(Exec { doc, code: 0, csv });
    match &cli.verb {
        Verb::Star { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let star = kleene_star(&a, &cmp)?;
            let raw = Raw::from_matrix(&star, view);
            ok(json!({ "star": raw.to_json() }), Some(raw))
        }
        Verb::Lambda { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let l = lambda(&a)?;
            ok(
                json!({
                    "lambda": l.to_entry(view).to_json(),
                    "log_lambda": l.log_value(),
                }),
                None,
            )
        }
        Verb::Eig { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let (v, vstar) = eigencone_bases(&a, &cmp)?;
            let csv = Raw::from_matrix(&Matrix::from_cols(v.generators.clone()), view);
            ok(
                json!({
                    "eigencone": basis_json(&v, view),
                    "subeigencone": basis_json(&vstar, view),
                }),
                Some(csv),
            )
        }
        Verb::Member { .. } => {
            let y: Vector<S> = raws[0].to_vector()?;
            let a: Matrix<S> = raws[1].to_matrix()?;
            match is_member(&y, &a, &cmp)? {
                Membership::Member { x } => {
                    ok(json!({"member": true, "x": vec_json(&x, view)}), None)
                }
                Membership::NotMember { uncovered } => {
                    ok(json!({"member": false, "uncovered": uncovered}), None)
                }
            }
        }
        Verb::Basis { witness, .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let basis = extremals_and_basis(&a.columns(), &cmp)?;
            let mut doc = json!({ "basis": basis_json(&basis, view) });
            if witness.is_some() {
                let y: Vector<S> = raws[1].to_vector()?;
                let picks = caratheodory_witness(&y, &basis.generators, &cmp)?;
                doc["witness"] = Value::Array(
                    picks
                        .iter()
                        .map(|(i, c)| json!({"generator": i, "coefficient": c.to_entry(view).to_json()}))
                        .collect(),
                );
            }
            let csv = Raw::from_matrix(&Matrix::from_cols(basis.generators), view);
            ok(doc, Some(csv))
        }
        Verb::Project { .. } => {
            let y: Vector<S> = raws[0].to_vector()?;
            let a: Matrix<S> = raws[1].to_matrix()?;
            let (p, sleepers) = project(&a, &y, &cmp)?;
            let raw = Raw::from_vector(&p, view);
            ok(
                json!({"projection": vec_json(&p, view), "sleepers": sleepers}),
                Some(raw),
            )
        }
        Verb::Separate { .. } => {
            let mats = matrices::<S>(raws)?;
            let opts = radius_options(cli, &cmp);
            match separate_cones(&mats, &cmp, &opts)? {
                Separation::Halfspaces(hs) => ok(
                    json!({
                        "separated": true,
                        "halfspaces": hs.iter().map(|h| json!({
                            "u1": vec_json(&h.u1, view),
                            "u2": vec_json(&h.u2, view),
                            "apex": vec_json(&h.apex, view),
                            "sectors": h.sleeper_sectors,
                        })).collect::<Vec<_>>(),
                    }),
                    None,
                ),
                Separation::IntersectionWitness(w) => {
                    let raw = Raw::from_vector(&w, view);
                    ok(
                        json!({"separated": false, "witness": vec_json(&w, view)}),
                        Some(raw),
                    )
                }
            }
        }
        Verb::Cells { all, .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let opts = CellOptions { include_all: *all, ..CellOptions::default() };
            let cells = enumerate_cells(&a, &cmp, &opts)?;
            ok(
                json!({
                    "count": cells.len(),
                    "cells": cells.iter().map(|c| json!({
                        "row_type": c.row_type,
                        "dimension": c.dimension,
                        "feasible": c.feasible,
                        "region_matrix": mat_json(&c.region_matrix, view),
                        "region_star": c.region_star.as_ref().map(|s| mat_json(s, view)),
                        "gs_edges": c.gs_edges,
                    })).collect::<Vec<_>>(),
                }),
                None,
            )
        }
        Verb::Per { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let p = permanent(&a)?;
            ok(
                json!({
                    "permanent": p.value.to_entry(view).to_json(),
                    "sigma": p.sigma,
                }),
                None,
            )
        }
        Verb::Pinv { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let (adj, nabla) = pseudoinverse(&a)?;
            let raw = Raw::from_matrix(&nabla, view);
            ok(
                json!({
                    "adjugate": mat_json(&adj, view),
                    "pseudoinverse": raw.to_json(),
                }),
                Some(raw),
            )
        }
        Verb::Essential { .. } => {
            let a: Matrix<S> = raws[0].to_matrix()?;
            let (basis, dim) = essential_span(&a, &cmp)?;
            let csv = Raw::from_matrix(&Matrix::from_cols(basis.generators.clone()), view);
            ok(
                json!({"basis": basis_json(&basis, view), "dimension": dim}),
                Some(csv),
            )
        }
        Verb::Solve { .. } => {
            let sys = SystemSpec::new(matrices::<S>(raws)?)?;
            let start: Option<Vector<S>> = match y0 {
                Some(raw) => Some(raw.to_vector()?),
                None => None,
            };
            let trace = solve(&sys, start, cli.opts.max_iter, &cmp)?;
            let (stop, code) = match &trace.stop {
                Stop::Solved { xs, y } => (
                    json!({
                        "status": "solved",
                        "y": vec_json(y, view),
                        "xs": xs.iter().map(|x| vec_json(x, view)).collect::<Vec<_>>(),
                    }),
                    0,
                ),
                Stop::NoSolution { l } => (json!({"status": "no_solution", "l": l}), 3),
                Stop::BudgetExceeded => (json!({"status": "budget_exceeded"}), 4),
            };
            let csv = match &trace.stop {
                Stop::Solved { y, .. } => Some(Raw::from_vector(y, view)),
                _ => None,
            };
            Ok(Exec {
                doc: json!({
                    "stop": stop,
                    "sweeps": trace.sweeps(),
                    "iterations": trace.iterations.iter().map(|r| json!({
                        "l": r.l,
                        "x": r.xs.iter().map(|x| vec_json(x, view)).collect::<Vec<_>>(),
                        "y": r.ys.iter().map(|y| vec_json(y, view)).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "sleepers_y": trace.sleepers_y,
                    "sleepers_x": trace.sleepers_x,
                }),
                code,
                csv,
            })
        }
        Verb::Dist { kind, cones, .. } => {
            let dk = match kind {
                KindArg::Cyclic => DistanceKind::Cyclic,
                KindArg::Total => DistanceKind::Total,
            };
            let report = if *cones {
                let mats = matrices::<S>(raws)?;
                let opts = radius_options(cli, &cmp);
                distance_cones(&mats, dk, &cmp, &opts)?
            } else {
                let ys = vectors::<S>(raws)?;
                distance_points(&ys, dk)?
            };
            ok(dist_json(&report, view, *kind), None)
        }
        Verb::Bound { kind, positive, rho, .. } => {
            let sys = SystemSpec::new(matrices::<S>(raws)?)?;
            let bk = match kind {
                BoundArg::Estimate1 => BoundKind::Estimate1,
                BoundArg::Estimate2 => BoundKind::Estimate2 { positive: positive.clone() },
                BoundArg::Integer => BoundKind::Integer,
            };
            let b = iteration_bound(&sys, &bk, *rho, &cmp)?;
            ok(
                json!({
                    "bound": b,
                    "kind": match kind {
                        BoundArg::Estimate1 => "estimate1",
                        BoundArg::Estimate2 => "estimate2",
                        BoundArg::Integer => "integer",
                    },
                }),
                None,
            )
        }
        Verb::Intersect { .. } => {
            let mats = matrices::<S>(raws)?;
            match kleene_intersection(&mats, &cmp)? {
                Intersection::Star(star) => {
                    let raw = Raw::from_matrix(&star, view);
                    ok(json!({"trivial": false, "star": raw.to_json()}), Some(raw))
                }
                Intersection::Trivial { lambda } => {
                    ok(json!({"trivial": true, "lambda": lambda}), None)
                }
            }
        }
    }
}

fn matrices<S: IoScalar>(raws: &[Raw]) -> maxcone::Result<Vec<Matrix<S>>> {
    raws.iter().map(Raw::to_matrix).collect()
}

fn vectors<S: IoScalar>(raws: &[Raw]) -> maxcone::Result<Vec<Vector<S>>> {
    raws.iter().map(Raw::to_vector).collect()
}
