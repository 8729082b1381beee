use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use linset_core::explore::{explore_heavy_weights, explore_secants_without_q1};
use linset_core::fields::trace_kernel_subspace;
use linset_core::linset::LinearSetSpec;
use linset_core::redei::RedeiPoly;
use linset_core::report::{
    audit_graph, audit_line, audit_plane, audit_solid, AuditOptions, InstanceReport,
};
use linset_core::sample::{
    all_subspaces, gaussian_binomial, instance_rng, random_linpoly, random_subspace, LinearMaps,
};
use linset_core::spread::{
    construct_line_tight, construct_plane_tight, construct_rank6, construct_spread_example,
    construct_subplane,
};
use linset_core::{FieldCtx, LinPoly, Subspace};

use crate::grid::{self, Cell, Mode};
use crate::output::{command_echo, emit_document, emit_sweep};
use crate::{
    Common, ConstructArgs, Construction, ExploreArgs, Failure, Format, PlaneArgs, RedeiArgs, Search,
};

fn options(c: &Common, ctx: &FieldCtx, r: usize) -> AuditOptions {
    if c.fast {
        return AuditOptions::FAST;
    }
    // the spread scan visits every point of PG(r-1, q^n)
    let points = (ctx.order() as u64).saturating_pow(r as u32 - 1);
    AuditOptions {
        ore: true,
        multiplicities: true,
        spread_view: points <= 1 << 14,
        plane_extras: true,
    }
}

/// Runs `f` and flags the report when it took longer than the budget.
fn timed<F: FnOnce() -> linset_core::Result<InstanceReport>>(
    budget: f64,
    f: F,
) -> linset_core::Result<InstanceReport> {
    let t = Instant::now();
    let mut rep = f()?;
    if t.elapsed() > Duration::from_secs_f64(budget) {
        eprintln!(
            "warning: instance over the {budget}s budget ({:.1}s)",
            t.elapsed().as_secs_f64()
        );
        rep.flags.insert("over_budget".into(), true);
    }
    Ok(rep)
}

fn finish(
    c: &Common,
    command: &str,
    mode: &str,
    reports: linset_core::Result<Vec<InstanceReport>>,
    skipped: &[String],
    start: Instant,
) -> Result<bool, Failure> {
    let mut reports = reports?;
    for (i, rep) in reports.iter_mut().enumerate() {
        rep.index = i;
    }
    emit_sweep(
        c.format,
        command,
        mode,
        &reports,
        skipped,
        start.elapsed().as_millis(),
    );
    Ok(reports.iter().all(|r| r.ok()))
}

pub fn verify_line(c: &Common) -> Result<bool, Failure> {
    let start = Instant::now();
    if c.r.is_some_and(|r| r != 2) {
        return Err(Failure::Usage(
            "verify-line works on PG(1, q^n); use --r 2 or omit it".into(),
        ));
    }
    let (cells, skipped) = grid::cells(c, |n| (1..=n).collect(), |n, k| (1..=n).contains(&k))?;
    let total: u128 = cells
        .iter()
        .map(|cl| grid::graph_count(cl.q, cl.n, cl.k))
        .fold(0, u128::saturating_add);
    let mode = grid::mode(c, total)?;
    let mut reports = Vec::new();
    for cell in &cells {
        reports.extend(line_cell(c, cell, mode)?);
    }
    finish(
        c,
        "verify-line",
        &mode.label(),
        Ok(reports),
        &skipped,
        start,
    )
}

fn line_cell(c: &Common, cell: &Cell, mode: Mode) -> linset_core::Result<Vec<InstanceReport>> {
    let ctx = &cell.ctx;
    let opts = options(c, ctx, 2);
    match mode {
        Mode::Exhaustive => {
            let spaces: Vec<(Subspace, LinearMaps)> = all_subspaces(ctx, 1, cell.k)
                .into_iter()
                .map(|v| {
                    let maps = LinearMaps::new(ctx, &v);
                    (v, maps)
                })
                .collect();
            let jobs: Vec<(usize, u64)> = spaces
                .iter()
                .enumerate()
                .flat_map(|(i, (_, m))| (0..m.len()).map(move |j| (i, j)))
                .collect();
            jobs.par_iter()
                .map(|&(i, j)| {
                    let (v, maps) = &spaces[i];
                    timed(c.budget, || audit_graph(ctx, v, &maps.get(ctx, j), opts))
                })
                .collect()
        }
        Mode::Random { count, seed } => (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(cell.seed(seed), i);
                let v = random_subspace(ctx, 1, cell.k, &mut rng)?;
                let f = random_linpoly(ctx, &mut rng);
                let mut rep = timed(c.budget, || audit_graph(ctx, &v, &f, opts))?;
                rep.params.seed = Some(seed);
                Ok(rep)
            })
            .collect(),
    }
}

fn audit_any(
    ctx: &FieldCtx,
    u: &Subspace,
    opts: AuditOptions,
) -> linset_core::Result<InstanceReport> {
    match u.arity() {
        2 => audit_line(ctx, u, opts),
        3 => audit_plane(ctx, u, opts),
        _ => audit_solid(ctx, u, opts),
    }
}

pub fn verify_plane(a: &PlaneArgs) -> Result<bool, Failure> {
    if let Some(kind) = a.construct {
        return run_construction(&a.common, kind, "verify-plane");
    }
    let start = Instant::now();
    let c = &a.common;
    let r = c.r.unwrap_or(3);
    if !(3..=4).contains(&r) {
        return Err(Failure::Usage(format!(
            "verify-plane supports r = 3 or 4, got {r}"
        )));
    }
    let (cells, skipped) = grid::cells(c, |n| (1..=n).collect(), |n, k| (1..=r * n).contains(&k))?;
    let total: u128 = cells
        .iter()
        .map(|cl| gaussian_binomial(r * cl.n, cl.k, cl.q))
        .fold(0, u128::saturating_add);
    let mode = grid::mode(c, total)?;
    let mut reports = Vec::new();
    for cell in &cells {
        let ctx = &cell.ctx;
        let opts = options(c, ctx, r);
        let batch: linset_core::Result<Vec<InstanceReport>> = match mode {
            Mode::Exhaustive => all_subspaces(ctx, r, cell.k)
                .par_iter()
                .map(|u| timed(c.budget, || audit_any(ctx, u, opts)))
                .collect(),
            Mode::Random { count, seed } => (0..count)
                .into_par_iter()
                .map(|i| {
                    let u = random_subspace(ctx, r, cell.k, &mut instance_rng(cell.seed(seed), i))?;
                    let mut rep = timed(c.budget, || audit_any(ctx, &u, opts))?;
                    rep.params.seed = Some(seed);
                    Ok(rep)
                })
                .collect(),
        };
        reports.extend(batch?);
    }
    finish(
        c,
        "verify-plane",
        &mode.label(),
        Ok(reports),
        &skipped,
        start,
    )
}

pub fn construct(a: &ConstructArgs) -> Result<bool, Failure> {
    run_construction(&a.common, a.kind, "construct")
}

fn run_construction(c: &Common, kind: Construction, command: &str) -> Result<bool, Failure> {
    let start = Instant::now();
    let mut c = c.clone();
    let r = match kind {
        Construction::LineTight => 2,
        Construction::PlaneTight | Construction::Subplane | Construction::Rank6 => 3,
        Construction::SpreadExample => c.r.unwrap_or(3),
    };
    if c.n.is_empty() {
        match kind {
            Construction::Subplane => c.n = vec![4],
            Construction::Rank6 => c.n = vec![9],
            _ => {
                return Err(Failure::Usage(
                    "--n is required for this construction".into(),
                ))
            }
        }
    }
    let fixed_rank = match kind {
        Construction::Subplane => Some(5),
        Construction::Rank6 => Some(6),
        _ => None,
    };
    let min_k = if kind == Construction::LineTight {
        2
    } else {
        r
    };
    let (cells, skipped) = grid::cells(
        &c,
        |n| match fixed_rank {
            Some(k) => vec![k],
            None => (min_k..=n).collect(),
        },
        |n, k| match fixed_rank {
            Some(fk) => k == fk,
            None => (min_k..=n).contains(&k),
        },
    )?;
    let mut reports = Vec::new();
    for cell in &cells {
        let ctx = &cell.ctx;
        let u = match kind {
            Construction::LineTight => construct_line_tight(ctx, cell.k)?,
            Construction::PlaneTight => construct_plane_tight(ctx, cell.k)?,
            Construction::SpreadExample => {
                if !(2..=4).contains(&r) {
                    return Err(Failure::Usage(format!(
                        "spread-example supports r in 2..=4, got {r}"
                    )));
                }
                construct_spread_example(ctx, r, cell.k)?
            }
            Construction::Subplane => construct_subplane(ctx)?,
            Construction::Rank6 => construct_rank6(ctx)?,
        };
        let mut rep = timed(c.budget, || audit_any(ctx, &u, options(&c, ctx, r)))?;
        rep.input["text"] = json!(u.to_text());
        rep.input["construction"] = json!(format!("{kind:?}"));
        reports.push(rep);
    }
    finish(&c, command, "construction", Ok(reports), &skipped, start)
}

pub fn redei(a: &RedeiArgs) -> Result<bool, Failure> {
    let start = Instant::now();
    let c = &a.common;
    let q = grid::single(&c.q, "q")?;
    let n = grid::single(grid::n_list(c)?, "n")?;
    let ctx = grid::field(c, q, n)?;
    let k_arg = match c.k.as_slice() {
        [] => None,
        [k] => Some(*k),
        _ => return Err(Failure::Usage("--k takes a single value here".into())),
    };
    let v = match &a.basis {
        Some(b) => {
            let elems = b
                .iter()
                .map(|&x| ctx.elem(x))
                .collect::<linset_core::Result<Vec<_>>>()?;
            let v = Subspace::scalar_span(&ctx, &elems);
            if v.dim() != elems.len() {
                return Err(Failure::Usage("--basis is not F_q-independent".into()));
            }
            if k_arg.is_some_and(|k| k != v.dim()) {
                return Err(Failure::Usage(
                    "--k disagrees with the size of --basis".into(),
                ));
            }
            v
        }
        None => {
            let k = k_arg.unwrap_or(n);
            if !(1..=n).contains(&k) {
                return Err(Failure::Usage(format!("k must lie in 1..={n}")));
            }
            if a.trace {
                trace_kernel_subspace(&ctx, &ctx.fq_basis()[1..=n - k])?
            } else {
                Subspace::scalar_span(&ctx, &ctx.fq_basis()[..k])
            }
        }
    };
    let f = if a.trace {
        LinPoly::trace_poly(&ctx)
    } else {
        let coeffs = a
            .map
            .as_ref()
            .ok_or_else(|| Failure::Usage("give --trace or --map".into()))?;
        let coeffs = coeffs
            .iter()
            .map(|&x| ctx.elem(x))
            .collect::<linset_core::Result<Vec<_>>>()?;
        LinPoly::new(coeffs).reduce(&ctx)
    };
    let mut rep = audit_graph(&ctx, &v, &f, options(c, &ctx, 2))?;
    let r = RedeiPoly::from_graph(&ctx, &v, &f)?;
    let div = r.divide_xqn(&ctx)?;
    let points: Vec<Value> = LinearSetSpec::from_graph(&ctx, &v, &f)?
        .points(&ctx)
        .iter()
        .map(|w| json!({ "point": w.point.coords().iter().map(|e| e.value()).collect::<Vec<_>>(), "weight": w.weight }))
        .collect();
    rep.input["text"] = json!(v.to_text());
    let doc = json!({
        "command": "redei",
        "args": command_echo(),
        "params": rep.params,
        "V": v.basis().iter().map(|b| b[0].value()).collect::<Vec<_>>(),
        "f": f.to_text(),
        "points": points,
        "division": div.to_json(&r),
        "report": rep,
    });
    let ok = rep.ok();
    emit_document(
        c.format,
        doc,
        std::slice::from_ref(&rep),
        start.elapsed().as_millis(),
    );
    Ok(ok)
}

pub fn explore(a: &ExploreArgs) -> Result<bool, Failure> {
    let start = Instant::now();
    let c = &a.common;
    let cap = grid::cap()?;
    let mut reports = Vec::new();
    for &q in &c.q {
        for &n in grid::n_list(c)? {
            let ctx = grid::field(c, q, n)?;
            let ranks: Vec<usize> = if c.k.is_empty() {
                match a.search {
                    Search::HeavyWeights => (1..=n).collect(),
                    Search::Secants => (1..n).collect(),
                }
            } else {
                c.k.clone()
            };
            reports.push(match a.search {
                Search::HeavyWeights => explore_heavy_weights(&ctx, &ranks, cap)?,
                Search::Secants => explore_secants_without_q1(&ctx, &ranks, cap)?,
            });
        }
    }
    match c.format {
        Format::Json => {
            let doc = json!({ "command": "explore", "args": command_echo(), "reports": reports });
            emit_document(Format::Json, doc, &[], start.elapsed().as_millis());
        }
        Format::Tsv => {
            outln!("search\tp\th\tn\tranks\texamined\tmatched\tclasses\tcandidates\toutcome");
            for r in &reports {
                let ranks: Vec<String> = r.ranks.iter().map(|k| k.to_string()).collect();
                let classes: Vec<String> =
                    r.classes.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                outln!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.search,
                    r.p,
                    r.h,
                    r.n,
                    ranks.join(","),
                    r.examined,
                    r.matched,
                    if classes.is_empty() {
                        "-".into()
                    } else {
                        classes.join(";")
                    },
                    r.candidates.len(),
                    r.outcome
                );
            }
        }
    }
    Ok(true)
}

pub fn fields_info(c: &Common) -> Result<bool, Failure> {
    let mut fields = Vec::new();
    for &q in &c.q {
        for &n in grid::n_list(c)? {
            let ctx = grid::field(c, q, n)?;
            let values =
                |xs: &[linset_core::Elem]| xs.iter().map(|e| e.value()).collect::<Vec<_>>();
            fields.push(json!({
                "p": ctx.p(),
                "h": ctx.h(),
                "n": ctx.n(),
                "q": ctx.q(),
                "order": ctx.order(),
                "modulus": ctx.modulus(),
                "fq_basis": values(ctx.fq_basis()),
                "subfield": values(ctx.subfield()),
            }));
        }
    }
    match c.format {
        Format::Json => outln!(
            "{}",
            serde_json::to_string_pretty(&json!({ "fields": fields })).expect("json")
        ),
        Format::Tsv => {
            outln!("p\th\tn\tq\torder\tmodulus\tfq_basis");
            for f in &fields {
                let list = |v: &Value| {
                    v.as_array()
                        .unwrap()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                outln!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    f["p"],
                    f["h"],
                    f["n"],
                    f["q"],
                    f["order"],
                    list(&f["modulus"]),
                    list(&f["fq_basis"])
                );
            }
        }
    }
    Ok(true)
}
