//! Bounded exhaustive searches around questions the size bounds leave open.
//! An empty candidate list only means nothing turned up in the space that
//! was searched.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx, Subspace};
use crate::linset::{histogram, max_linearity_modulus, secant_spectrum, LinearSetSpec, ProjPoint};
use crate::sample::{for_each_subspace, gaussian_binomial};

pub const NONE_FOUND: &str = "none found in search space";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub basis: Value,
    pub size: usize,
    pub weights: BTreeMap<usize, usize>,
    pub spectrum: Option<BTreeMap<usize, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExploreReport {
    pub search: String,
    pub p: u32,
    pub h: usize,
    pub n: usize,
    pub r: usize,
    pub ranks: Vec<usize>,
    /// Subspaces examined.
    pub examined: u64,
    /// Sets meeting the hypothesis: all weights at least 2, or at least
    /// one secant and every secant of size 1 mod q.
    pub matched: u64,
    /// How the matched sets were explained, by label.
    pub classes: BTreeMap<String, u64>,
    pub candidates: Vec<Candidate>,
    pub outcome: String,
}

impl ExploreReport {
    fn finish(mut self) -> ExploreReport {
        self.outcome = if self.candidates.is_empty() {
            NONE_FOUND.to_string()
        } else {
            format!("{} candidate(s) found", self.candidates.len())
        };
        self
    }
}

/// Number of F_q-subspaces of F_{q^n}^r with the given dimensions.
pub fn search_size(ctx: &FieldCtx, r: usize, ranks: &[usize]) -> u128 {
    ranks
        .iter()
        .map(|&k| gaussian_binomial(r * ctx.n(), k, ctx.q() as u64))
        .sum()
}

fn check_cap(ctx: &FieldCtx, r: usize, ranks: &[usize], cap: u128) -> Result<()> {
    let count = search_size(ctx, r, ranks);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(())
}

fn bases(ctx: &FieldCtx, r: usize, k: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for_each_subspace(ctx, r, k, |b| out.push(b.to_vec()));
    out
}

fn basis_json(b: &[Vec<Elem>]) -> Value {
    json!(b
        .iter()
        .map(|v| v.iter().map(|e| e.value()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// Point sets of every F_{q^d}-linear set on PG(1, q^n), for each proper
/// d > 1 dividing n and for d = n.
fn linear_point_sets(ctx: &FieldCtx) -> Result<Vec<(usize, HashSet<Vec<ProjPoint>>)>> {
    let n = ctx.n();
    let mut out = Vec::new();
    for d in (2..=n).filter(|d| n % d == 0) {
        let big = FieldCtx::new(ctx.p(), ctx.h() * d, n / d, Some(ctx.modulus()))?;
        let mut sets = HashSet::new();
        for j in 1..=2 * (n / d) {
            for_each_subspace(&big, 2, j, |b| {
                let u = Subspace::span(&big, 2, b).expect("arity 2");
                let pts: Vec<ProjPoint> = LinearSetSpec::from_subspace(u)
                    .points(&big)
                    .into_iter()
                    .map(|w| w.point)
                    .collect();
                sets.insert(pts);
            });
        }
        out.push((d, sets));
    }
    Ok(out)
}

/// Linear sets on PG(1, q^n) all of whose points have weight at least 2.
/// Each one is labelled by the largest F_{q^d} over which its point set is
/// also linear; sets linear over no larger subfield are candidates.
pub fn explore_heavy_weights(ctx: &FieldCtx, ranks: &[usize], cap: u128) -> Result<ExploreReport> {
    check_cap(ctx, 2, ranks, cap)?;
    let linear = linear_point_sets(ctx)?;
    let q = ctx.q();
    let mut report = ExploreReport {
        search: "all weights at least 2".into(),
        p: ctx.p(),
        h: ctx.h(),
        n: ctx.n(),
        r: 2,
        ranks: ranks.to_vec(),
        examined: 0,
        matched: 0,
        classes: BTreeMap::new(),
        candidates: Vec::new(),
        outcome: String::new(),
    };
    for &k in ranks {
        let all = bases(ctx, 2, k);
        report.examined += all.len() as u64;
        let found: Vec<Option<(Option<usize>, Candidate)>> = all
            .par_iter()
            .map(|b| {
                let u = Subspace::span(ctx, 2, b).expect("arity 2");
                let pts = LinearSetSpec::from_subspace(u).points(ctx);
                if pts.iter().any(|w| w.weight < 2) {
                    return None;
                }
                let plain: Vec<ProjPoint> = pts.iter().map(|w| w.point.clone()).collect();
                let d = linear
                    .iter()
                    .rev()
                    .find(|(_, sets)| sets.contains(&plain))
                    .map(|(d, _)| *d);
                let cand = Candidate {
                    basis: basis_json(b),
                    size: pts.len(),
                    weights: histogram(&pts),
                    spectrum: None,
                };
                Some((d, cand))
            })
            .collect();
        for (d, cand) in found.into_iter().flatten() {
            report.matched += 1;
            match d {
                Some(d) => {
                    *report
                        .classes
                        .entry(format!("F_{}-linear", (q as u64).pow(d as u32)))
                        .or_default() += 1
                }
                None => report.candidates.push(cand),
            }
        }
    }
    Ok(report.finish())
}

/// Linear sets in PG(2, q^n) with at least one secant, every secant of
/// size 1 mod q, and no secant of size q + 1.
pub fn explore_secants_without_q1(
    ctx: &FieldCtx,
    ranks: &[usize],
    cap: u128,
) -> Result<ExploreReport> {
    check_cap(ctx, 3, ranks, cap)?;
    let q = ctx.q() as usize;
    let mut report = ExploreReport {
        search: "secants 1 mod q without a (q+1)-secant".into(),
        p: ctx.p(),
        h: ctx.h(),
        n: ctx.n(),
        r: 3,
        ranks: ranks.to_vec(),
        examined: 0,
        matched: 0,
        classes: BTreeMap::new(),
        candidates: Vec::new(),
        outcome: String::new(),
    };
    for &k in ranks {
        let all = bases(ctx, 3, k);
        report.examined += all.len() as u64;
        let found: Vec<(&'static str, Option<Candidate>)> = all
            .par_iter()
            .map(|b| {
                let u = Subspace::span(ctx, 3, b).expect("arity 3");
                let pts = LinearSetSpec::from_subspace(u).points(ctx);
                let plain: Vec<ProjPoint> = pts.iter().map(|w| w.point.clone()).collect();
                let spectrum = secant_spectrum(ctx, &plain);
                let sizes: BTreeSet<usize> = spectrum.secant_sizes().collect();
                if sizes.is_empty() {
                    return ("no secants", None);
                }
                if sizes.iter().any(|m| (m - 1) % q != 0) {
                    return ("some secant not 1 mod q", None);
                }
                if sizes.contains(&(q + 1)) {
                    return ("has (q+1)-secant", None);
                }
                let e = max_linearity_modulus(ctx, &spectrum);
                let cand = Candidate {
                    basis: basis_json(b),
                    size: pts.len(),
                    weights: histogram(&pts),
                    spectrum: Some(spectrum.counts),
                };
                if e > ctx.h() {
                    // secants are 1 mod a larger power of p: the field of
                    // linearity is bigger than F_q, so no (q+1)-secant is expected
                    ("linear over a larger field", None)
                } else {
                    ("candidate", Some(cand))
                }
            })
            .collect();
        for (label, cand) in found {
            *report.classes.entry(label.to_string()).or_default() += 1;
            if label != "no secants" && label != "some secant not 1 mod q" {
                report.matched += 1;
            }
            report.candidates.extend(cand);
        }
    }
    Ok(report.finish())
}
