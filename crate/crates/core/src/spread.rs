//! Field reduction: points of PG(r-1, q^n) as n-dimensional F_q-subspaces
//! of F_{q^n}^r (the Desarguesian spread), the B(·) operator, and the
//! explicit constructions built from it.
//!
//! Vectors of F_{q^n}^r stand in for points of PG(rn-1, q) directly, so
//! spread elements and B(μ) are ordinary span computations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{matrix, Elem, FieldCtx, Subspace};
use crate::linearized::LinPoly;
use crate::linset::{all_points, line_through, LinearSetSpec, ProjPoint, WeightedPoint};

/// {λv : λ ∈ F_{q^n}}, an F_q-subspace of dimension n.
pub fn spread_element(ctx: &FieldCtx, p: &ProjPoint) -> Subspace {
    Subspace::fqn_span(ctx, p.coords())
}

/// B(μ), read off by normalizing every nonzero vector of μ.
pub fn b_operator(ctx: &FieldCtx, mu: &Subspace) -> BTreeSet<ProjPoint> {
    mu.nonzero_vectors(ctx)
        .iter()
        .map(|v| ProjPoint::normalize(ctx, v).expect("nonzero"))
        .collect()
}

/// B(μ) straight from the definition: every spread element meeting μ.
/// Scans all of PG(r-1, q^n), so it is meant for small ambient spaces.
pub fn b_operator_by_scan(ctx: &FieldCtx, mu: &Subspace) -> BTreeSet<ProjPoint> {
    all_points(ctx, mu.arity())
        .into_iter()
        .filter(|p| weight_via_spread(ctx, mu, p) > 0)
        .collect()
}

/// dim_q(μ ∩ spread_element(P)).
pub fn weight_via_spread(ctx: &FieldCtx, mu: &Subspace, p: &ProjPoint) -> usize {
    spread_element(ctx, p)
        .intersect(ctx, mu)
        .expect("same arity")
        .dim()
}

fn unit(r: usize, i: usize, c: Elem) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; r];
    v[i] = c;
    v
}

fn check_rank(ctx: &FieldCtx, k: usize, min: usize) -> Result<()> {
    if k < min || k > ctx.n() {
        return Err(Error::RankOutOfRange {
            k,
            min,
            max: ctx.n(),
        });
    }
    Ok(())
}

/// A rank-k set on PG(1, q^n) with q^{k-1} + 1 points: a (k-1)-dimensional
/// piece of the spread element of ⟨(1,0)⟩ plus the vector (0,1).
pub fn construct_line_tight(ctx: &FieldCtx, k: usize) -> Result<Subspace> {
    check_rank(ctx, k, 2)?;
    let mut gens: Vec<Vec<Elem>> = ctx.fq_basis()[..k - 1]
        .iter()
        .map(|&b| unit(2, 0, b))
        .collect();
    gens.push(unit(2, 1, Elem::ONE));
    Subspace::span(ctx, 2, &gens)
}

/// A rank-k set spanning PG(2, q^n) with q^{k-1} + q^{k-2} + 1 points.
pub fn construct_plane_tight(ctx: &FieldCtx, k: usize) -> Result<Subspace> {
    construct_spread_example(ctx, 3, k)
}

/// A (k-r+1)-dimensional piece of the spread element of ⟨e_1⟩ together
/// with the F_q-span of e_2, ..., e_r. The second part meets every spread
/// element in at most one F_q-point and spans the hyperplane X_0 = 0, which
/// it meets in a copy of PG(r-2, q). For r = 3 that part is an F_q-line
/// skew to the spread element of ⟨e_1⟩.
pub fn construct_spread_example(ctx: &FieldCtx, r: usize, k: usize) -> Result<Subspace> {
    if r < 2 {
        return Err(Error::Unsupported(format!("r = {r}")));
    }
    check_rank(ctx, k, r)?;
    let mut gens: Vec<Vec<Elem>> = ctx.fq_basis()[..k + 1 - r]
        .iter()
        .map(|&b| unit(r, 0, b))
        .collect();
    gens.extend((1..r).map(|i| unit(r, i, Elem::ONE)));
    Subspace::span(ctx, r, &gens)
}

/// F_{q^d} inside F_{q^n}, as the kernel of X^{q^d} - X.
pub fn subfield_of_degree(ctx: &FieldCtx, d: usize) -> Subspace {
    LinPoly::monomial(Elem::ONE, d)
        .sub(ctx, &LinPoly::identity())
        .kernel(ctx)
}

fn require(ctx: &FieldCtx, n: usize, max_q: u32) -> Result<()> {
    if ctx.n() != n || ctx.q() > max_q {
        return Err(Error::Unsupported(format!(
            "needs n = {n} and q <= {max_q}, got n = {}, q = {}",
            ctx.n(),
            ctx.q()
        )));
    }
    Ok(())
}

/// The subplane PG(2, q^2) of PG(2, q^4) given by a 5-dimensional μ: the
/// F_q-span of F_{q^2}^3 with its last generator dropped. Every point of
/// the subplane survives, q^4 of them with weight one.
pub fn construct_subplane(ctx: &FieldCtx) -> Result<Subspace> {
    require(ctx, 4, 3)?;
    let sub = subfield_of_degree(ctx, 2);
    let mut gens: Vec<Vec<Elem>> = (0..3)
        .flat_map(|i| sub.basis().iter().map(move |b| unit(3, i, b[0])))
        .collect();
    gens.pop();
    Subspace::span(ctx, 3, &gens)
}

/// μ' for the rank-6 example in PG(2, q^9): μ = {(0, y, z) : y, z ∈ F_{q^3}}
/// meets q^3 + 1 spread elements in planes; μ' drops the last generator.
pub fn rank6_base(ctx: &FieldCtx) -> Result<Subspace> {
    if ctx.q() != 2 {
        return Err(Error::Unsupported(format!("q = {} (only q = 2)", ctx.q())));
    }
    require(ctx, 9, 2)?;
    let sub = subfield_of_degree(ctx, 3);
    let mut gens: Vec<Vec<Elem>> = (1..3)
        .flat_map(|i| sub.basis().iter().map(move |b| unit(3, i, b[0])))
        .collect();
    gens.pop();
    Subspace::span(ctx, 3, &gens)
}

/// π = μ' + ⟨(1,0,0)⟩, a rank-6 set of size q^5 + q^3 + 1.
pub fn construct_rank6(ctx: &FieldCtx) -> Result<Subspace> {
    let mu = rank6_base(ctx)?;
    mu.sum(ctx, &Subspace::span(ctx, 3, &[unit(3, 0, Elem::ONE)])?)
}

/// Projects π from the spread element through p1 onto `target`, a
/// complement of that spread element: the result is (π + S(p1)) ∩ target.
pub fn project_from_point(
    ctx: &FieldCtx,
    pi: &Subspace,
    p1: &[Elem],
    target: &Subspace,
) -> Result<Subspace> {
    if !pi.contains(ctx, p1) || p1.iter().all(|c| c.is_zero()) {
        return Err(Error::PointNotInSubspace);
    }
    let s = Subspace::fqn_span(ctx, p1);
    let meet = s.intersect(ctx, target)?;
    if !meet.is_zero() || s.dim() + target.dim() != pi.arity() * ctx.n() {
        return Err(Error::NotComplementary);
    }
    pi.sum(ctx, &s)?.intersect(ctx, target)
}

/// The counting steps of the plane bound's proof, replayed on one set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReplay {
    pub rank: usize,
    pub size_pi: usize,
    pub size_pi_prime: usize,
    pub size_mu: usize,
    pub mu_dim: usize,
    pub p2_weight_in_mu: usize,
    /// |B(π')| = q^{k-1} + |B(μ)|.
    pub pi_prime_count_ok: bool,
    /// |B(π)| ≥ |B(π')| ≥ q^{k-1} + q^{k-2} + 1.
    pub inequality_ok: bool,
}

/// Picks a (q+1)-secant through two weight-one points P1, P2 of B(π), a line
/// M through P2 avoiding P1, projects and compares sizes. `None` when the
/// set has no such secant.
pub fn replay_plane_projection(ctx: &FieldCtx, pi: &Subspace) -> Result<Option<ProjectionReplay>> {
    if pi.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: pi.arity(),
        });
    }
    let q = ctx.q() as u64;
    let k = pi.dim();
    let pts = LinearSetSpec::from_subspace(pi.clone()).points(ctx);
    let ones: Vec<&WeightedPoint> = pts.iter().filter(|w| w.weight == 1).collect();
    let mut pair = None;
    'search: for (i, a) in ones.iter().enumerate() {
        for b in &ones[i + 1..] {
            let l = line_through(ctx, &a.point, &b.point).expect("distinct");
            let on = pts
                .iter()
                .filter(|w| dot(ctx, &l, &w.point).is_zero())
                .count();
            if on as u64 == q + 1 {
                pair = Some((a.point.clone(), b.point.clone()));
                break 'search;
            }
        }
    }
    let Some((pt1, pt2)) = pair else {
        return Ok(None);
    };
    let rep = |p: &ProjPoint| {
        spread_element(ctx, p)
            .intersect(ctx, pi)
            .map(|s| s.basis()[0].clone())
    };
    let p1 = rep(&pt1)?;
    let third = (0..3)
        .map(|i| unit(3, i, Elem::ONE))
        .find(|e| {
            matrix::rank(
                ctx,
                &[pt1.coords().to_vec(), pt2.coords().to_vec(), e.clone()],
            ) == 3
        })
        .expect("some unit vector completes a basis");
    let target =
        Subspace::fqn_span(ctx, pt2.coords()).sum(ctx, &Subspace::fqn_span(ctx, &third))?;
    let mu = project_from_point(ctx, pi, &p1, &target)?;
    let pi_prime = mu.sum(ctx, &Subspace::span(ctx, 3, &[p1])?)?;
    let size_pi = pts.len();
    let size_pi_prime = b_operator(ctx, &pi_prime).len();
    let size_mu = b_operator(ctx, &mu).len();
    let bound = if k >= 2 {
        q.pow(k as u32 - 1) + q.pow(k as u32 - 2) + 1
    } else {
        1
    };
    Ok(Some(ProjectionReplay {
        rank: k,
        size_pi,
        size_pi_prime,
        size_mu,
        mu_dim: mu.dim(),
        p2_weight_in_mu: weight_via_spread(ctx, &mu, &pt2),
        pi_prime_count_ok: size_pi_prime as u64 == q.pow(k as u32 - 1) + size_mu as u64,
        inequality_ok: size_pi >= size_pi_prime && size_pi_prime as u64 >= bound,
    }))
}

fn dot(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint) -> Elem {
    ctx.sum(
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(&x, &y)| ctx.mul(x, y)),
    )
}
