//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use linset_core::fields::trace_kernel_subspace;
use linset_core::linset::{max_linearity_modulus, secant_spectrum, LinearSetSpec, ProjPoint};
use linset_core::report::{audit_graph, audit_line, audit_plane, AuditOptions, InstanceReport};
use linset_core::sample::{
    all_subspaces, instance_rng, random_linpoly, random_subspace, LinearMaps,
};
use linset_core::spread::{
    construct_line_tight, construct_plane_tight, construct_rank6, construct_subplane,
};
use linset_core::{Elem, FieldCtx, LinPoly, Subspace};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Source {
    Exhaustive,
    Random,
}

struct Instance {
    q: u32,
    n: usize,
    k: usize,
    source: Source,
    report: InstanceReport,
    /// Point count from the test's own brute-force oracle.
    oracle_size: usize,
}

fn ctx(q: u32, n: usize) -> FieldCtx {
    FieldCtx::for_q(q as u64, n, None).unwrap()
}

/// Points of L_U counted without the library's normalization: each vector
/// is keyed by the smallest encoding among all its F_{q^n}-multiples.
fn oracle_point_count(f: &FieldCtx, vectors: &[Vec<Elem>]) -> usize {
    let keys: BTreeSet<Vec<u32>> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| x.value() != 0))
        .map(|v| {
            f.nonzero_elements()
                .map(|l| v.iter().map(|&x| f.mul(l, x).value()).collect::<Vec<_>>())
                .min()
                .unwrap()
        })
        .collect();
    keys.len()
}

fn graph_vectors(f: &FieldCtx, v: &Subspace, map: &LinPoly) -> Vec<Vec<Elem>> {
    v.elements(f)
        .into_iter()
        .map(|x| vec![x, map.eval(f, x)])
        .collect()
}

fn options(n: usize, spread: bool) -> AuditOptions {
    AuditOptions {
        ore: true,
        multiplicities: n <= 3,
        spread_view: spread,
        plane_extras: false,
    }
}

fn run_instance(
    f: &FieldCtx,
    v: &Subspace,
    map: &LinPoly,
    opts: AuditOptions,
) -> (InstanceReport, usize) {
    let report = audit_graph(f, v, map, opts).unwrap();
    let oracle = oracle_point_count(f, &graph_vectors(f, v, map));
    (report, oracle)
}

/// Every (V, f) with dim V = k, for q ∈ {2, 3} and n ≤ 3.
fn exhaustive_sweep() -> Vec<Instance> {
    let mut out = Vec::new();
    for q in [2u32, 3] {
        for n in 1..=3 {
            let f = ctx(q, n);
            for k in 1..=n {
                let pairs: Vec<(Subspace, u64)> = all_subspaces(&f, 1, k)
                    .into_iter()
                    .flat_map(|v| {
                        let count = LinearMaps::new(&f, &v).len();
                        (0..count).map(move |i| (v.clone(), i))
                    })
                    .collect();
                let reports: Vec<(InstanceReport, usize)> = pairs
                    .par_iter()
                    .map(|(v, i)| {
                        let map = LinearMaps::new(&f, v).get(&f, *i);
                        run_instance(&f, v, &map, options(n, true))
                    })
                    .collect();
                out.extend(reports.into_iter().map(|(report, oracle_size)| Instance {
                    q,
                    n,
                    k,
                    source: Source::Exhaustive,
                    report,
                    oracle_size,
                }));
            }
        }
    }
    out
}

/// 500 random (V, f) per cell, q ∈ {2, 3}, k ≤ n ≤ 4.
fn random_sweep() -> Vec<Instance> {
    let mut out = Vec::new();
    for q in [2u32, 3] {
        for n in 1..=4 {
            let f = ctx(q, n);
            for k in 1..=n {
                let seed = 1000 * q as u64 + 10 * n as u64 + k as u64;
                let reports: Vec<(InstanceReport, usize)> = (0..500u64)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = instance_rng(seed, i);
                        let v = random_subspace(&f, 1, k, &mut rng).unwrap();
                        let map = random_linpoly(&f, &mut rng);
                        run_instance(&f, &v, &map, options(n, n <= 3))
                    })
                    .collect();
                out.extend(reports.into_iter().map(|(report, oracle_size)| Instance {
                    q,
                    n,
                    k,
                    source: Source::Random,
                    report,
                    oracle_size,
                }));
            }
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn count_failing(set: &[&Instance], checks: &[&str]) -> usize {
    set.iter()
        .filter(|i| checks.iter().any(|c| i.report.check(c) != Some(true)))
        .count()
}

fn criterion_1(sweep: &[&Instance]) -> Outcome {
    let with_one: Vec<&&Instance> = sweep.iter().filter(|i| i.report.has_weight_one).collect();
    let bad = with_one
        .iter()
        .filter(|i| {
            let q = i.q as u64;
            let bound = if i.k >= 2 {
                q.pow(i.k as u32 - 1) + 1
            } else {
                1
            };
            (i.oracle_size as u64) < bound || i.report.check("line_bound") != Some(true)
        })
        .count();
    let oracle_mismatch = sweep
        .iter()
        .filter(|i| i.oracle_size != i.report.size)
        .count();
    let min_q2n2k2 = sweep
        .iter()
        .filter(|i| i.q == 2 && i.n == 2 && i.k == 2 && i.report.has_weight_one)
        .map(|i| i.report.size)
        .min();
    outcome(
        bad == 0 && oracle_mismatch == 0 && min_q2n2k2 == Some(3),
        format!(
            "{} violations among {} sets with a weight-one point ({} instances), {} oracle size mismatches, \
             min size at q=2 n=2 k=2 is {:?} (expected 3)",
            bad,
            with_one.len(),
            sweep.len(),
            oracle_mismatch,
            min_q2n2k2
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0;
    for q in [2u32, 3] {
        for n in 2..=4 {
            let f = ctx(q, n);
            for k in 2..=n {
                cells += 1;
                let want = (q as usize).pow(k as u32 - 1) + 1;
                // spread-model construction
                let u = construct_line_tight(&f, k).unwrap();
                let rep = audit_line(&f, &u, AuditOptions::FAST).unwrap();
                let oracle = oracle_point_count(&f, &u.vectors(&f));
                // coordinate form: V = {x : Tr(α_i x) = 0}, map Tr
                let v = trace_kernel_subspace(&f, &f.fq_basis()[1..=n - k]).unwrap();
                let tr = LinPoly::trace_poly(&f);
                let grep = audit_graph(&f, &v, &tr, AuditOptions::FAST).unwrap();
                let goracle = oracle_point_count(&f, &graph_vectors(&f, &v, &tr));
                if rep.size != want
                    || oracle != want
                    || grep.size != want
                    || goracle != want
                    || !rep.ok()
                    || !grep.ok()
                {
                    failures.push(format!(
                        "q={q} n={n} k={k}: {} / {} / {} / {}",
                        rep.size, oracle, grep.size, goracle
                    ));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cells} cells, size q^(k-1)+1 in both forms; failures {failures:?}"),
    )
}

fn criterion_3(sweep: &[&Instance]) -> Outcome {
    let bad = count_failing(sweep, &["directions"]);
    let size_mismatch = sweep
        .iter()
        .filter(|i| i.report.directions != Some(i.oracle_size))
        .count();
    outcome(
        bad == 0 && size_mismatch == 0,
        format!(
            "{bad} direction-check failures, {size_mismatch} |L_U| != |D| over {} instances",
            sweep.len()
        ),
    )
}

fn criterion_4(line: &[&Instance], others: &[(String, usize, u32)]) -> Outcome {
    let bad_line = line
        .iter()
        .filter(|i| i.oracle_size as u64 % i.q as u64 != 1 % i.q as u64)
        .count();
    let bad_other: Vec<&String> = others
        .iter()
        .filter(|(_, size, q)| *size as u64 % *q as u64 != 1 % *q as u64)
        .map(|(l, _, _)| l)
        .collect();
    outcome(
        bad_line == 0 && bad_other.is_empty(),
        format!(
            "{} line instances, {} further sets (constructions, plane sweeps); failures: {} line, {:?}",
            line.len(),
            others.len(),
            bad_line,
            bad_other
        ),
    )
}

fn criterion_5(sweep: &[&Instance]) -> Outcome {
    let parts = [
        ("a", vec!["redei_shape"]),
        ("b", vec!["division_identity"]),
        ("c", vec!["degree_ledger", "h_degree_bounds"]),
        (
            "d",
            vec!["degH_q_power", "directions_at_least_degH", "h_i0_roots"],
        ),
        ("f", vec!["ore_cross_check"]),
    ];
    let mut detail = Vec::new();
    let mut pass = true;
    for (label, checks) in &parts {
        let bad = count_failing(sweep, checks);
        pass &= bad == 0;
        detail.push(format!("({label}) {bad}"));
    }
    let with_one: Vec<&Instance> = sweep
        .iter()
        .copied()
        .filter(|i| i.report.has_weight_one)
        .collect();
    let bad_e = with_one
        .iter()
        .filter(|i| {
            i.report.check("degH_weight_one") != Some(true)
                || i.report.deg_x_h != Some((i.q as usize).pow(i.k as u32 - 1))
        })
        .count();
    pass &= bad_e == 0;
    detail.push(format!("(e) {bad_e} of {}", with_one.len()));
    outcome(
        pass,
        format!(
            "failures per part over {} instances: {}",
            sweep.len(),
            detail.join(", ")
        ),
    )
}

fn criterion_6(all: &[Instance]) -> Outcome {
    let reduced: Vec<&Instance> = all.iter().filter(|i| i.n <= 3).collect();
    let bad = count_failing(&reduced, &["multiplicities"]);
    let points: usize = reduced.iter().map(|i| i.report.size).sum();
    outcome(
        bad == 0,
        format!(
            "{bad} failing instances of {} ({points} weighted points), q in {{2,3}}, n <= 3",
            reduced.len()
        ),
    )
}

fn criterion_7(sizes: &mut Vec<(String, usize, u32)>) -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0;
    for q in [2u32, 3] {
        for n in 3..=4 {
            let f = ctx(q, n);
            for k in 3..=n {
                cells += 1;
                let qq = q as usize;
                let want = qq.pow(k as u32 - 1) + qq.pow(k as u32 - 2) + 1;
                let u = construct_plane_tight(&f, k).unwrap();
                let opts = AuditOptions {
                    plane_extras: n == 3,
                    ..AuditOptions::FAST
                };
                let rep = audit_plane(&f, &u, opts).unwrap();
                let oracle = oracle_point_count(&f, &u.vectors(&f));
                sizes.push((format!("plane-tight q={q} n={n} k={k}"), rep.size, q));
                if rep.size != want || oracle != want || !rep.ok() || !rep.bound_asserted {
                    failures.push(format!(
                        "q={q} n={n} k={k}: {} / {oracle} (want {want})",
                        rep.size
                    ));
                }
            }
        }
    }
    // random rank-3 sets in PG(2, 8), kept when they have a 3-secant
    let f = ctx(2, 3);
    let mut attempts = 0u64;
    let mut kept: Vec<InstanceReport> = Vec::new();
    while kept.len() < 200 && attempts < 200_000 {
        let batch: Vec<InstanceReport> = (attempts..attempts + 1000)
            .into_par_iter()
            .map(|i| {
                let mut rng = instance_rng(77, i);
                let u = random_subspace(&f, 3, 3, &mut rng).unwrap();
                audit_plane(
                    &f,
                    &u,
                    AuditOptions {
                        plane_extras: true,
                        ..AuditOptions::FAST
                    },
                )
                .unwrap()
            })
            .collect();
        attempts += 1000;
        for rep in batch {
            sizes.push(("random plane".into(), rep.size, 2));
            if rep.flags.get("has_q1_secant") == Some(&true) && kept.len() < 200 {
                kept.push(rep);
            }
        }
    }
    let bad = kept
        .iter()
        .filter(|r| !r.bound_ok || !r.bound_asserted || r.size < 7 || !r.ok())
        .count();
    outcome(
        failures.is_empty() && kept.len() == 200 && bad == 0,
        format!(
            "{cells} construction cells exact (failures {failures:?}); {} random sets with a 3-secant \
             (from {attempts} draws), {bad} below q^2+q+1 or failing checks",
            kept.len()
        ),
    )
}

fn criterion_8(sizes: &mut Vec<(String, usize, u32)>) -> Outcome {
    let f = ctx(2, 4);
    let mu = construct_subplane(&f).unwrap();
    let pts = LinearSetSpec::from_subspace(mu.clone()).points(&f);
    let ones = pts.iter().filter(|w| w.weight == 1).count();
    let plain: Vec<ProjPoint> = pts.iter().map(|w| w.point.clone()).collect();
    let spec = secant_spectrum(&f, &plain);
    let support: BTreeSet<usize> = spec.counts.keys().copied().collect();
    let sub_ok = pts.len() == 21
        && oracle_point_count(&f, &mu.vectors(&f)) == 21
        && ones == 16
        && support.is_subset(&BTreeSet::from([1, 5]))
        && max_linearity_modulus(&f, &spec) == 2;
    sizes.push(("subplane".into(), pts.len(), 2));

    let g = ctx(2, 9);
    let pi = construct_rank6(&g).unwrap();
    let pts9 = LinearSetSpec::from_subspace(pi.clone()).points(&g);
    let plain9: Vec<ProjPoint> = pts9.iter().map(|w| w.point.clone()).collect();
    let spec9 = secant_spectrum(&g, &plain9);
    let e9 = max_linearity_modulus(&g, &spec9);
    let oracle9 = oracle_point_count(&g, &pi.vectors(&g));
    let rank6_ok = pi.dim() == 6
        && pts9.len() == 41
        && oracle9 == 41
        && e9 == 2
        && !spec9.has_secant_of_size(3);
    sizes.push(("rank6".into(), pts9.len(), 2));
    outcome(
        sub_ok && rank6_ok,
        format!(
            "subplane: {} points, {ones} of weight one, spectrum {:?}; rank-6 set: {} points (oracle {oracle9}), \
             e-modulus {e9}, secant sizes {:?}",
            pts.len(),
            spec.counts,
            pts9.len(),
            spec9.secant_sizes().collect::<Vec<_>>()
        ),
    )
}

fn criterion_9(all: &[Instance]) -> Outcome {
    let exhaustive: Vec<&Instance> = all
        .iter()
        .filter(|i| i.source == Source::Exhaustive)
        .collect();
    let bad = count_failing(&exhaustive, &["spread_view", "weights_agree"]);
    outcome(
        bad == 0,
        format!(
            "{bad} mismatches over {} exhaustive instances, q in {{2,3}}, n <= 3",
            exhaustive.len()
        ),
    )
}

/// (Q∘G)_m = Σ_{i+j=m} q_i g_j^{q^i}, without folding exponents.
fn oracle_compose(f: &FieldCtx, a: &LinPoly, b: &LinPoly) -> Vec<Elem> {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let mut out = vec![f.elem(0).unwrap(); ac.len() + bc.len()];
    for (i, &x) in ac.iter().enumerate() {
        for (j, &y) in bc.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, f.pow(y, (f.q() as u64).pow(i as u32))));
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for (p, h, n) in [(2u32, 1usize, 6usize), (3, 1, 3)] {
        let f = FieldCtx::new(p, h, n, None).unwrap();
        let bad: usize = (0..1000u64)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = instance_rng(10_000 + p as u64, i);
                let df = rng.gen_range(0..2 * n);
                let dg = rng.gen_range(0..n + 1);
                let mut fc: Vec<Elem> = (0..=df)
                    .map(|_| f.elem(rng.gen_range(0..f.order()) as u64).unwrap())
                    .collect();
                let mut gc: Vec<Elem> = (0..=dg)
                    .map(|_| f.elem(rng.gen_range(0..f.order()) as u64).unwrap())
                    .collect();
                if fc[df].is_zero() {
                    fc[df] = f.elem(1).unwrap();
                }
                if gc[dg].is_zero() {
                    gc[dg] = f.elem(1).unwrap();
                }
                let (big, g) = (LinPoly::new(fc), LinPoly::new(gc));
                let (quo, rem) = big.sym_divrem(&f, &g).unwrap();
                let mut sum = oracle_compose(&f, &quo, &g);
                for (i, &c) in rem.coeffs().iter().enumerate() {
                    sum[i] = f.add(sum[i], c);
                }
                let coeff_ok = LinPoly::new(sum) == big;
                let deg_ok = rem.degree().map_or(true, |d| Some(d) < g.degree());
                let point_ok = f.elements().all(|x| {
                    big.eval(&f, x) == f.add(quo.eval(&f, g.eval(&f, x)), rem.eval(&f, x))
                });
                !(coeff_ok && deg_ok && point_ok)
            })
            .count();
        pass &= bad == 0;
        detail.push(format!("F_{}^{}: {bad} of 1000 failing", p, h * n));
    }
    outcome(pass, detail.join("; "))
}

fn main() {
    let start = Instant::now();
    let exhaustive = exhaustive_sweep();
    let random = random_sweep();
    let sweep_time = start.elapsed();

    let all: Vec<Instance> = exhaustive.into_iter().chain(random).collect();
    // criterion 1's sweep: exhaustive at q = 2 (n = 2, 3) plus every random cell
    let c1: Vec<&Instance> = all
        .iter()
        .filter(|i| i.source == Source::Random || (i.q == 2 && (i.n == 2 || i.n == 3)))
        .collect();
    let every_line: Vec<&Instance> = all.iter().collect();

    let mut other_sizes: Vec<(String, usize, u32)> = Vec::new();
    for q in [2u32, 3] {
        for n in 2..=4 {
            let f = ctx(q, n);
            for k in 2..=n {
                let u = construct_line_tight(&f, k).unwrap();
                other_sizes.push((
                    format!("line-tight q={q} n={n} k={k}"),
                    oracle_point_count(&f, &u.vectors(&f)),
                    q,
                ));
            }
        }
    }

    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((
        1,
        "size >= q^(k-1)+1 with a weight-one point",
        criterion_1(&c1),
    ));
    results.push((2, "trace construction has q^(k-1)+1 points", criterion_2()));
    results.push((3, "|L_U| equals the number of directions", criterion_3(&c1)));
    results.push((
        5,
        "Redei shape, identity, ledger, deg H, Ore cross-check",
        criterion_5(&c1),
    ));
    results.push((
        6,
        "root multiplicities q^wt at weighted slopes",
        criterion_6(&all),
    ));
    results.push((
        7,
        "plane bound q^(k-1)+q^(k-2)+1",
        criterion_7(&mut other_sizes),
    ));
    results.push((
        8,
        "subplane and rank-6 example values",
        criterion_8(&mut other_sizes),
    ));
    results.push((9, "spread view equals linear-set view", criterion_9(&all)));
    results.push((10, "symbolic division F = Q o G + H", criterion_10()));
    results.push((
        4,
        "every set has size 1 mod q",
        criterion_4(&every_line, &other_sizes),
    ));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (id, name, o) in &results {
        println!(
            "{} C{id:<2} {name} [exact] :: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    let hist: BTreeMap<(u32, usize), usize> = all.iter().fold(BTreeMap::new(), |mut m, i| {
        *m.entry((i.q, i.n)).or_insert(0) += 1;
        m
    });
    println!(
        "acceptance: {} passed, {failed} failed; {} line instances {:?}; sweep {:.1}s, total {:.1}s",
        results.len() - failed,
        all.len(),
        hist,
        sweep_time.as_secs_f64(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
