//! The `analyze` pipeline: every certificate is computed here and reported
//! with its outcome, never assumed.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use lrw::activity::{analyze, build_f_tree, reconstruct_adjacency, ROOT};
use lrw::cograph::{chi_bound_report, partition};
use lrw::encoding::{alphabet_bounds, decode, encode_with};
use lrw::interval::build_interval_graph;
use lrw::{Error, OrderedGraph};

#[derive(Serialize)]
pub struct Report {
    pub ok: bool,
    pub n: usize,
    pub m: usize,
    pub order: Vec<usize>,
    /// `exact` when the order came from the subset DP, `file` otherwise.
    pub order_source: &'static str,
    pub lrw_exact: Option<usize>,
    pub order_width: usize,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: Value,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: Value) -> Self {
        Check { name, ok, detail, witness: None }
    }

    fn failed(name: &'static str, e: &Error) -> Self {
        Check { name, ok: false, detail: Value::Null, witness: Some(e.to_string()) }
    }

    fn skipped(name: &'static str, after: &str) -> Self {
        Check { name, ok: false, detail: Value::Null, witness: Some(format!("not run: {after} failed")) }
    }
}

pub fn run(og: &OrderedGraph, lrw_exact: Option<usize>) -> Report {
    let ad = analyze(og);
    let r = ad.r();
    let pg = ad.position_graph();
    let n = ad.n();
    let mut checks = Vec::new();

    let max_basis = (0..n).map(|t| ad.basis(t).len()).max().unwrap_or(0);
    checks.push(match ad.check_invariants() {
        Ok(()) => Check::new(
            "activity",
            max_basis <= r,
            json!({"max_basis": max_basis, "width": r, "active": (0..n).filter(|&v| ad.is_active(v)).count()}),
        ),
        Err(e) => Check::failed("activity", &e),
    });

    let tree = match build_f_tree(&ad) {
        Ok(t) => t,
        Err(e) => {
            checks.push(Check::failed("f_tree", &e));
            for name in ["reconstruction", "encoding", "cograph"] {
                checks.push(Check::skipped(name, "f_tree"));
            }
            push_intervals(&mut checks, &ad);
            return finish(og, lrw_exact, r, checks);
        }
    };
    let vanished = (0..n).all(|v| tree.iterate(v, r + 1) == ROOT);
    checks.push(Check::new(
        "f_tree",
        vanished && tree.height() <= r + 2,
        json!({"nodes": tree.len(), "height": tree.height(), "bound": r + 2}),
    ));

    let mut mismatches = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match reconstruct_adjacency(&ad, &tree, u, v) {
                Ok(adj) if adj == pg.has_edge(u, v) => {}
                _ => mismatches.push((u, v)),
            }
        }
    }
    let mut rec = Check::new(
        "reconstruction",
        mismatches.is_empty(),
        json!({"pairs": n * n.saturating_sub(1) / 2, "mismatches": mismatches.len()}),
    );
    if let Some((u, v)) = mismatches.first() {
        rec.witness = Some(format!("positions {u} and {v}"));
    }
    checks.push(rec);

    match encode_with(&ad, &tree) {
        Ok(co) => {
            let bounds = alphabet_bounds(r);
            let roundtrip = decode(&co).map(|g| &g == pg);
            let within = BigUint::from(co.alphabet_size()) <= bounds.f_prime
                && BigUint::from(co.class_nc_count()) <= bounds.f;
            let mut check = Check::new(
                "encoding",
                within && matches!(roundtrip, Ok(true)),
                json!({
                    "labels": co.alphabet_size(),
                    "class_nc": co.class_nc_count(),
                    "f": bounds.f.to_string(),
                    "f_prime": bounds.f_prime.to_string(),
                    "bits_per_vertex": bounds.bits,
                    "decoded_equal": matches!(roundtrip, Ok(true)),
                }),
            );
            if let Err(e) = roundtrip {
                check.witness = Some(e.to_string());
            }
            checks.push(check);
            checks.push(match partition(&ad, &tree, &co) {
                Ok(p) => {
                    let chi = chi_bound_report(pg, &p);
                    Check::new(
                        "cograph",
                        chi.holds != Some(false) && chi.classes_within_f,
                        json!({
                            "classes": p.classes.len(),
                            "max_height": p.max_height(),
                            "height_bound": r + 2,
                            "chi": chi,
                        }),
                    )
                }
                Err(e) => Check::failed("cograph", &e),
            });
        }
        Err(e) => {
            checks.push(Check::failed("encoding", &e));
            checks.push(Check::skipped("cograph", "encoding"));
        }
    }
    push_intervals(&mut checks, &ad);
    finish(og, lrw_exact, r, checks)
}

fn push_intervals(checks: &mut Vec<Check>, ad: &lrw::activity::ActivityData) {
    checks.push(match build_interval_graph(ad) {
        Ok(f) => Check::new(
            "intervals",
            f.max_load() <= ad.r() + 2,
            json!({"max_load": f.max_load(), "pathwidth_certificate": f.certificate(), "load_bound": ad.r() + 2}),
        ),
        Err(e) => Check::failed("intervals", &e),
    });
}

fn finish(og: &OrderedGraph, lrw_exact: Option<usize>, r: usize, checks: Vec<Check>) -> Report {
    Report {
        ok: checks.iter().all(|c| c.ok),
        n: og.n(),
        m: og.graph().edge_count(),
        order: og.order().to_vec(),
        order_source: if lrw_exact.is_some() { "exact" } else { "file" },
        lrw_exact,
        order_width: r,
        checks,
    }
}

impl Report {
    pub fn summary(&self) -> String {
        let mut s = format!("n {} m {} order width {}", self.n, self.m, self.order_width);
        if let Some(w) = self.lrw_exact {
            let _ = write!(s, " (linear rankwidth {w})");
        }
        s.push('\n');
        for c in &self.checks {
            let _ = write!(s, "{:<15}{}", c.name, if c.ok { "ok" } else { "FAIL" });
            if let Some(w) = &c.witness {
                let _ = write!(s, "  {w}");
            }
            s.push('\n');
        }
        s
    }
}
