//! Human-readable renderings.

use std::fmt::Write;

use serde_json::Value;

use hypertoric::algebra::{CatOAlgebra, DimensionComparison, PresentationReport};
use hypertoric::arrangement::{SignVector, SkeletonGraph};
use hypertoric::gale::ExchangeReport;
use hypertoric::instance::SelftestReport;
use hypertoric::repalg::KoszulReport;

fn matrix<T: std::fmt::Display>(m: &[Vec<T>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn classify(rows: &[(SignVector, &str)], diag: &Value, faces: usize, vertices: usize, skel: &SkeletonGraph) -> String {
    let mut s = String::new();
    for (a, c) in rows {
        writeln!(s, "{a:<12} {c}").unwrap();
    }
    writeln!(
        s,
        "simple: {}  polarization-generic: {}  unimodular: {}",
        diag["simple"], diag["polarization_generic"], diag["unimodular"]
    )
    .unwrap();
    writeln!(s, "faces: {faces}  vertices: {vertices}").unwrap();
    for e in &skel.edges {
        writeln!(s, "edge {} -- {} (H{})", e.lower, e.upper, e.hyperplane).unwrap();
    }
    s
}

pub fn dual(value: &Value, report: &ExchangeReport) -> String {
    let d = &value["dual"];
    let mut s = format!("dual n = {}\ng_basis: {}\nt: {}\nm_lift: {}\n", d["n"], d["g_basis"], d["t"], d["m_lift"]);
    writeln!(s, "exchange: {} sign vectors checked, {} violations", report.checked, report.violations.len()).unwrap();
    for v in &report.violations {
        writeln!(s, "  {} {:?}", v.sign_vector, v.failure).unwrap();
    }
    s
}

pub fn algebra(algs: &[CatOAlgebra], cmp: Option<&DimensionComparison>, pres: &[PresentationReport]) -> String {
    let mut s = String::new();
    for a in algs {
        let (cartan, total) = a.cartan_and_total();
        let labels: Vec<String> = a.vertices().iter().map(ToString::to_string).collect();
        writeln!(s, "{:?}: vertices {}  total {}  cartan {}", a.side(), labels.join(" "), total, matrix(&cartan)).unwrap();
    }
    if let Some(c) = cmp {
        writeln!(s, "betti/derham: {} vs {}  {}", c.betti_total, c.derham_total, if c.is_equal() { "equal" } else { "DIFFER" }).unwrap();
    }
    for p in pres {
        writeln!(
            s,
            "presentation: {} relations, {} paths, generated {}/{}",
            p.relations_checked, p.paths_checked, p.generated_dim, p.total_dim
        )
        .unwrap();
    }
    s
}

pub fn koszul(r: &KoszulReport, refined: bool, ok: bool) -> String {
    let mut s = format!("ext total {} vs dual total {}\n", r.ext_grand_total, r.dual_total_dim);
    if refined {
        writeln!(s, "ext totals {}\ndual cartan {}", matrix(&r.ext_totals), matrix(&r.dual_cartan_reindexed)).unwrap();
    }
    writeln!(s, "{}", if ok { "match" } else { "MISMATCH" }).unwrap();
    s
}

pub fn selftest(r: &SelftestReport) -> String {
    let mut s = format!("seed {} count {} n<={}: {} passed, {} failed\n", r.seed, r.count, r.n_max, r.passed, r.failed);
    for c in r.cases.iter().filter(|c| !c.passed()) {
        writeln!(s, "case {}: {}\n  {}", c.index, c.input.to_json(), c.errors.join("\n  ")).unwrap();
    }
    s
}
