//! JSON and TSV rendering of reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use linset_core::report::InstanceReport;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize, Default)]
struct CellSummary {
    p: u32,
    h: usize,
    n: usize,
    k: usize,
    r: usize,
    instances: usize,
    failed: usize,
    min_size: Option<usize>,
    max_size: Option<usize>,
    min_size_with_weight_one: Option<usize>,
}

fn summary(reports: &[InstanceReport]) -> Value {
    let mut cells: BTreeMap<(u32, usize, usize, usize, usize), CellSummary> = BTreeMap::new();
    let mut violations: BTreeMap<String, usize> = BTreeMap::new();
    let mut failed = 0;
    for rep in reports {
        let pr = &rep.params;
        let cell = cells
            .entry((pr.p, pr.h, pr.n, pr.r, pr.k))
            .or_insert_with(|| CellSummary {
                p: pr.p,
                h: pr.h,
                n: pr.n,
                k: pr.k,
                r: pr.r,
                ..Default::default()
            });
        cell.instances += 1;
        cell.min_size = Some(cell.min_size.map_or(rep.size, |m| m.min(rep.size)));
        cell.max_size = Some(cell.max_size.map_or(rep.size, |m| m.max(rep.size)));
        if rep.has_weight_one {
            cell.min_size_with_weight_one = Some(
                cell.min_size_with_weight_one
                    .map_or(rep.size, |m| m.min(rep.size)),
            );
        }
        let v = rep.violations();
        if !v.is_empty() {
            failed += 1;
            cell.failed += 1;
        }
        for name in v {
            *violations.entry(name).or_default() += 1;
        }
    }
    json!({
        "instances": reports.len(),
        "passed": reports.len() - failed,
        "failed": failed,
        "violations": violations,
        "cells": cells.into_values().collect::<Vec<_>>(),
    })
}

fn join_map<K: std::fmt::Display, V: std::fmt::Display>(m: &BTreeMap<K, V>) -> String {
    if m.is_empty() {
        return "-".into();
    }
    m.iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

const TSV_HEADER: &str =
    "index\tp\th\tn\tk\tr\tseed\tsize\tdirections\tweights\tbound\tbound_asserted\t\
                          congruence_ok\tbound_ok\tdegX_H\ti0\te_modulus\tspectrum\tviolations";

fn tsv_row(rep: &InstanceReport) -> String {
    let pr = &rep.params;
    let v = rep.violations();
    [
        rep.index.to_string(),
        pr.p.to_string(),
        pr.h.to_string(),
        pr.n.to_string(),
        pr.k.to_string(),
        pr.r.to_string(),
        opt(pr.seed),
        rep.size.to_string(),
        opt(rep.directions),
        join_map(&rep.weights),
        rep.bound.to_string(),
        rep.bound_asserted.to_string(),
        rep.congruence_ok.to_string(),
        rep.bound_ok.to_string(),
        opt(rep.deg_x_h),
        opt(rep.i0),
        opt(rep.e_modulus),
        rep.spectrum.as_ref().map_or("-".into(), join_map),
        if v.is_empty() {
            "-".into()
        } else {
            v.join(",")
        },
    ]
    .join("\t")
}

/// Prints a sweep. JSON carries everything plus `elapsed_ms`; TSV has one
/// row per instance and `#` summary lines, with no timing.
pub fn emit_sweep(
    format: Format,
    command: &str,
    mode: &str,
    reports: &[InstanceReport],
    skipped: &[String],
    elapsed_ms: u128,
) {
    match format {
        Format::Json => {
            let doc = json!({
                "command": command,
                "args": command_echo(),
                "mode": mode,
                "instances": reports,
                "summary": summary(reports),
                "skipped_cells": skipped,
                "elapsed_ms": elapsed_ms,
            });
            outln!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Tsv => {
            let mut out = String::new();
            writeln!(out, "{TSV_HEADER}").unwrap();
            for rep in reports {
                writeln!(out, "{}", tsv_row(rep)).unwrap();
            }
            let s = summary(reports);
            writeln!(out, "# command\t{command}\t{mode}").unwrap();
            writeln!(
                out,
                "# instances\t{}\tpassed\t{}\tfailed\t{}",
                s["instances"], s["passed"], s["failed"]
            )
            .unwrap();
            for name in skipped {
                writeln!(out, "# skipped\t{name}").unwrap();
            }
            outln!("{}", out.trim_end_matches('\n'));
        }
    }
}

/// Prints a single JSON document with `elapsed_ms` appended, or a TSV
/// rendering of its rows.
pub fn emit_document(format: Format, mut doc: Value, rows: &[InstanceReport], elapsed_ms: u128) {
    match format {
        Format::Json => {
            doc["elapsed_ms"] = json!(elapsed_ms);
            outln!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Format::Tsv => {
            outln!("{TSV_HEADER}");
            for rep in rows {
                outln!("{}", tsv_row(rep));
            }
        }
    }
}
