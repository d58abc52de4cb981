use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use hypertoric::algebra::{build_betti_algebra, build_derham_algebra, compare_dimensions, verify_presentation, CatOAlgebra, Orientation};
use hypertoric::arrangement::{ChamberClass, SignVector};
use hypertoric::bside::render_matrix;
use hypertoric::gale::{dual_data, dual_pair, exchange_between};
use hypertoric::instance::{selftest, Instance, ProblemInput};
use hypertoric::lattice::is_unimodular;
use hypertoric::linalg::Rat;
use hypertoric::repalg::{koszul_compare, ExtTable};
use hypertoric::ring::GbLimits;

mod text;

#[derive(Parser)]
#[command(name = "hypertoric", version, about = "Category O for hypertoric varieties: combinatorics, algebras and checks")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable summary.
    #[arg(long, global = true)]
    text: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, env = "HYPERTORIC_GB_MAX_PAIRS")]
    gb_max_pairs: Option<usize>,
    #[arg(long, global = true, env = "HYPERTORIC_GB_MAX_BASIS")]
    gb_max_basis: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArg {
    /// JSON problem file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Betti,
    Derham,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Basis,
    Presentation,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sign-vector classification, genericity diagnostics, faces and the skeleton graph.
    Classify(InputArg),
    /// Gale-dual data and the exchange check.
    Dual(InputArg),
    /// Build the category O algebra.
    Algebra {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value = "betti")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "basis")]
        route: RouteArg,
    },
    /// Compare Ext of simples with the Gale-dual algebra.
    Koszul {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        max_deg: Option<usize>,
        /// Only compare grand totals.
        #[arg(long)]
        totals_only: bool,
    },
    /// Matrix of B-side fiber products.
    BsideReport {
        #[command(flatten)]
        input: InputArg,
        /// Restrict to feasible-bounded sign vectors (requires valid parameters).
        #[arg(long)]
        vertices: bool,
    },
    /// Randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

/// A computed report; `ok = false` maps to exit code 5.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<hypertoric::Error>() {
        Some(hypertoric::Error::NonGenericParameter(_)) => 3,
        Some(hypertoric::Error::DimensionInfinite(_, _))
        | Some(hypertoric::Error::ResourceLimit(_))
        | Some(hypertoric::Error::DimensionBoundExceeded(_, _)) => 4,
        Some(hypertoric::Error::PresentationMismatch(_)) | Some(hypertoric::Error::NonBasicAlgebra { .. }) => 5,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.text {
                print!("{}", out.text);
            } else {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("report serializes"));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
        Err(e) => {
            let kind = e.downcast_ref::<hypertoric::Error>().map_or("InputError", |h| h.kind());
            let err = json!({ "error": { "kind": kind, "message": format!("{e:#}") } });
            println!("{}", serde_json::to_string_pretty(&err).expect("error serializes"));
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn limits(cli: &Cli) -> GbLimits {
    let d = GbLimits::default();
    GbLimits { max_pairs: cli.gb_max_pairs.unwrap_or(d.max_pairs), max_basis: cli.gb_max_basis.unwrap_or(d.max_basis) }
}

fn read_input(arg: &InputArg) -> Result<ProblemInput> {
    let text = std::fs::read_to_string(&arg.input).with_context(|| format!("reading {}", arg.input.display()))?;
    Ok(ProblemInput::from_json(&text)?)
}

fn load(cli: &Cli, arg: &InputArg) -> Result<Instance> {
    Ok(read_input(arg)?.validate(limits(cli))?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Classify(i) => classify(&load(cli, i)?),
        Cmd::Dual(i) => dual(&load(cli, i)?),
        Cmd::Algebra { input, side, route } => algebra(&load(cli, input)?, *side, *route),
        Cmd::Koszul { input, max_deg, totals_only } => koszul(&load(cli, input)?, *max_deg, !*totals_only),
        Cmd::BsideReport { input, vertices } => bside(cli, input, *vertices),
        Cmd::Selftest { seed, count, n_max } => {
            let r = selftest(*seed, *count, *n_max, limits(cli));
            Ok(Outcome { text: text::selftest(&r), ok: r.failed == 0, value: serde_json::to_value(&r)? })
        }
    }
}

fn class_name(c: ChamberClass) -> &'static str {
    match c {
        ChamberClass::Infeasible => "infeasible",
        ChamberClass::FeasibleBounded => "feasible-bounded",
        ChamberClass::FeasibleUnbounded => "feasible-unbounded",
    }
}

fn classify(inst: &Instance) -> Result<Outcome> {
    let arr = &inst.arrangement;
    let n = arr.n();
    let cls = arr.classification();
    let rows: Vec<(SignVector, &str)> = SignVector::all(n).map(|a| (a, class_name(cls.class(a)))).collect();
    let faces = arr.enumerate_faces();
    let vertices = arr.count_vertices()?;
    let skeleton = arr.skeleton_graph()?;
    let diagnostics = json!({
        "simple": arr.is_simple(),
        "polarization_generic": arr.is_polarization_generic()?,
        "unimodular": is_unimodular(arr.seq()),
    });
    let value = json!({
        "n": n,
        "classification": rows.iter().map(|(a, c)| json!({ "sign_vector": a, "class": c })).collect::<Vec<_>>(),
        "diagnostics": diagnostics,
        "face_count": faces.len(),
        "vertex_count": vertices,
        "feasible_count": cls.feasible().len(),
        "feasible_bounded_count": cls.with_class(ChamberClass::FeasibleBounded).len(),
        "skeleton": skeleton,
    });
    let text = text::classify(&rows, &diagnostics, faces.len(), vertices, &skeleton);
    Ok(Outcome { value, text, ok: true })
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
fn rat_json(r: &Rat) -> Value {
    match (r.is_integer(), r.numer().to_i64()) {
        (true, Some(v)) => json!(v),
        _ => json!(r.to_string()),
    }
}

fn dual(inst: &Instance) -> Result<Outcome> {
    let data = dual_data(&inst.seq, &inst.params)?;
    let (primal, dual) = dual_pair(&inst.seq, &inst.params)?;
    let report = exchange_between(&primal, &dual);
    let ds = &data.dual_seq;
    let value = json!({
        "dual": {
            "n": ds.n(),
            "g_basis": ds.inclusion().transpose().to_i64_rows(),
            "t": data.dual_params.t.iter().map(|x| rat_json(&Rat::from_integer(x.clone()))).collect::<Vec<_>>(),
            "m_lift": data.dual_params.m_lift.iter().map(rat_json).collect::<Vec<_>>(),
        },
        "exchange": report,
    });
    let text = text::dual(&value, &report);
    Ok(Outcome { value, text, ok: report.is_clean() })
}

fn algebra(inst: &Instance, side: SideArg, route: RouteArg) -> Result<Outcome> {
    let limits = inst.limits;
    let mut algs: Vec<CatOAlgebra> = Vec::new();
    if side != SideArg::Derham {
        algs.push(build_betti_algebra(&inst.arrangement, inst.orientation, limits)?);
    }
    if side != SideArg::Betti {
        algs.push(build_derham_algebra(&inst.arrangement, limits)?);
    }
    let mut value = json!({ "algebras": algs.iter().map(CatOAlgebra::summary).collect::<Vec<_>>() });
    let mut ok = true;
    let mut comparison = None;
    if let [b, d] = algs.as_slice() {
        let c = compare_dimensions(b, d);
        ok &= c.is_equal();
        value["comparison"] = serde_json::to_value(&c)?;
        comparison = Some(c);
    }
    let mut presentations = Vec::new();
    if route != RouteArg::Basis {
        for a in &algs {
            presentations.push(verify_presentation(a, limits)?);
        }
        value["presentation"] = serde_json::to_value(&presentations)?;
    }
    let text = text::algebra(&algs, comparison.as_ref(), &presentations);
    Ok(Outcome { value, text, ok })
}

fn koszul(inst: &Instance, max_deg: Option<usize>, refined: bool) -> Result<Outcome> {
    let max_deg = max_deg.unwrap_or(inst.max_deg);
    let (primal, dual) = dual_pair(&inst.seq, &inst.params)?;
    let a = build_betti_algebra(&primal, inst.orientation, inst.limits)?;
    let b = build_betti_algebra(&dual, Orientation::default(), inst.limits)?;
    let report = koszul_compare(&a, &b, max_deg)?;
    let ext: ExtTable = hypertoric::repalg::ext_table(&hypertoric::repalg::flatten(&a), max_deg)?;
    let ok = report.is_clean(refined);
    let value = json!({
        "refined": refined,
        "match": ok,
        "report": report,
        "ext_table": ext,
        "primal_cartan": a.cartan_and_total().0,
        "dual_cartan": b.cartan_and_total().0,
    });
    let text = text::koszul(&report, refined, ok);
    Ok(Outcome { value, text, ok })
}

fn bside(cli: &Cli, arg: &InputArg, vertices: bool) -> Result<Outcome> {
    let input = read_input(arg)?;
    let seq = input.sequence()?;
    let restriction = if vertices {
        let inst = input.validate(limits(cli))?;
        Some(inst.arrangement.classification().with_class(ChamberClass::FeasibleBounded))
    } else {
        None
    };
    let m = render_matrix(&seq, restriction.as_deref());
    Ok(Outcome { text: m.to_text(), value: serde_json::to_value(&m)?, ok: true })
}
