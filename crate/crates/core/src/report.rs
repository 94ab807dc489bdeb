//! JSON envelopes and plain-text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::BoundCertificate;
use crate::cyclotomic::SplittingData;
use crate::reproduce::{CheckStatus, FactorizationReport, Reproduction};
use crate::tower::{LayerCounts, TowerPlan};
use crate::warnings::Warning;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    kind: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with `"schema"` and `"kind"` first, newline-terminated.
pub fn to_json<T: Serialize>(kind: &str, body: &T) -> String {
    let doc = Envelope { schema: SCHEMA_VERSION, kind, body };
    let mut out = serde_json::to_string_pretty(&doc).expect("report types serialize");
    out.push('\n');
    out
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn layers_text(layers: &[LayerCounts]) -> String {
    let rows: Vec<Vec<String>> = layers
        .iter()
        .map(|l| vec![l.n.to_string(), l.ramified_lower.to_string(), l.degree_lower.to_string()])
        .collect();
    table(&["n", "T >=", "[L_n:Q] >="], &rows)
}

pub fn plan_text(plan: &TowerPlan, n_max: u32) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ℓ = {}, p = {}, N = {}, Γ = {}", plan.ell, plan.p, plan.n, plan.gamma.presentation());
    let _ = writeln!(out, "base: {}", plan.base);
    let _ = writeln!(out, "t = {}", plan.t);
    let primes: Vec<String> = plan.selected_primes.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "primes ({}): {}", primes.len(), primes.join(", "));
    if !plan.selected_ideals.is_empty() {
        let _ = writeln!(out, "split primes of the base: {}", plan.selected_ideals.len());
    }
    let _ = writeln!(out, "α ({} digits) = {}", plan.alpha.decimal_digits(), plan.alpha);
    if let Some(s) = &plan.selmer {
        let _ = writeln!(
            out,
            "S: s0 = {}, reserve {} (fine Selmer target N = {})",
            s.s0,
            if s.reserve_applied { "applied" } else { "not applied" },
            s.target_n
        );
    }
    out.push_str("field diagram:\n");
    for e in &plan.field_diagram.edges {
        let _ = writeln!(out, "  {} -> {}  [{}]", e.from, e.to, e.degree);
    }
    out.push_str(&layers_text(&plan.layers(n_max)));
    out
}

pub fn certificate_text(cert: &BoundCertificate) -> String {
    let rows: Vec<Vec<String>> = cert
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.t_lower.to_string(),
                r.degree_lower.to_string(),
                r.ambiguous_lower.to_string(),
                r.class_rank_lower.to_string(),
                opt(&r.fine_selmer_lower_paper),
                opt(&r.fine_selmer_lower_conservative),
            ]
        })
        .collect();
    let mut out = table(
        &["n", "T", "[L_n:Q]", "Am_st", "Cl", "Sel (paper)", "Sel (conservative)"],
        &rows,
    );
    out.push_str("trace:\n");
    for line in &cert.inequality_trace {
        let n = line.n.map_or_else(|| "  ".to_string(), |n| format!("n={n}"));
        let _ = write!(out, "  {n} {} {}", line.citation, line.claim);
        if let Some(code) = line.warning {
            let _ = write!(out, "  <{code}>");
        }
        out.push('\n');
    }
    out
}

pub fn warnings_text(warnings: &[Warning]) -> String {
    warnings.iter().map(|w| format!("{w}\n")).collect()
}

pub fn reproduction_text(r: &Reproduction) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.example.name());
    for c in &r.checks {
        let tag = match c.status {
            CheckStatus::Pass => "ok  ",
            CheckStatus::Warn => "warn",
            CheckStatus::Fail => "FAIL",
        };
        let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
    }
    out.push_str(&warnings_text(&r.warnings));
    out.push_str(&certificate_text(&r.certificate));
    let _ = writeln!(out, "{}", if r.passed() { "result: pass" } else { "result: FAIL" });
    out
}

pub fn factorization_text(r: &FactorizationReport) -> String {
    let mut out = String::new();
    for (i, f) in r.factors.iter().enumerate() {
        let _ = writeln!(out, "  factor {}: {f}", i + 1);
    }
    let _ = writeln!(out, "product mod Φ_{} = {}", r.conductor, r.product);
    if let Some(u) = &r.unit_discrepancy {
        let _ = writeln!(
            out,
            "note: product = {}{}·ζ_{}^{}, a unit multiple of {}",
            if u.sign < 0 { "-" } else { "" },
            r.prime,
            r.conductor,
            u.zeta_exponent,
            r.prime
        );
    }
    let _ = writeln!(out, "{}", if r.passed { "result: pass" } else { "result: FAIL" });
    out
}

pub fn splitting_text(s: &SplittingData) -> String {
    format!("{s}\n")
}
