//! F_q-linear sets L_U = {⟨u⟩ : u ∈ U*} in PG(r-1, q^n).

mod plane;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx, Subspace};
use crate::linearized::LinPoly;

pub use plane::{
    all_points, is_blocking_set, line_through, max_linearity_modulus, plane_report,
    secant_spectrum, verify_hyperplane_bound, verify_plane_bound, BlockingReport, HyperplaneReport,
    PlaneReport, Spectrum,
};

/// A projective point, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjPoint {
    coords: Vec<Elem>,
}

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn normalize(ctx: &FieldCtx, v: &[Elem]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|c| !c.is_zero())?;
        let s = ctx.inv(lead).expect("nonzero");
        Some(ProjPoint {
            coords: v.iter().map(|&c| ctx.mul(c, s)).collect(),
        })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPoint {
    pub point: ProjPoint,
    pub weight: usize,
}

/// The finite slopes of the directions determined by an affine graph.
/// A graph never determines the vertical direction, so `has_infinity` is
/// false for sets built from (V, f).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DirectionSet {
    pub slopes: BTreeSet<Elem>,
    pub has_infinity: bool,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.slopes.len() + usize::from(self.has_infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// U ⊆ F_{q^n}^r of F_q-dimension k (the rank), optionally remembering the
/// graph (V, f) it came from.
#[derive(Clone, Debug)]
pub struct LinearSetSpec {
    u: Subspace,
    graph: Option<(Subspace, LinPoly)>,
}

impl LinearSetSpec {
    /// U = {(x, f(x)) : x ∈ V}.
    pub fn from_graph(ctx: &FieldCtx, v: &Subspace, f: &LinPoly) -> Result<LinearSetSpec> {
        if v.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: v.arity(),
            });
        }
        if v.dim() > ctx.n() {
            return Err(Error::RankTooLarge {
                k: v.dim(),
                n: ctx.n(),
            });
        }
        let gens: Vec<Vec<Elem>> = v
            .basis()
            .iter()
            .map(|b| vec![b[0], f.eval(ctx, b[0])])
            .collect();
        let u = Subspace::span(ctx, 2, &gens)?;
        debug_assert_eq!(u.dim(), v.dim());
        Ok(LinearSetSpec {
            u,
            graph: Some((v.clone(), f.clone())),
        })
    }

    pub fn from_subspace(u: Subspace) -> LinearSetSpec {
        LinearSetSpec { u, graph: None }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.u
    }

    pub fn graph(&self) -> Option<(&Subspace, &LinPoly)> {
        self.graph.as_ref().map(|(v, f)| (v, f))
    }

    pub fn r(&self) -> usize {
        self.u.arity()
    }

    pub fn rank(&self) -> usize {
        self.u.dim()
    }

    /// Distinct points with weights, sorted. A point of weight w is hit by
    /// exactly q^w - 1 vectors of U*, which is how the weight is read off.
    pub fn points(&self, ctx: &FieldCtx) -> Vec<WeightedPoint> {
        let mut hits: HashMap<ProjPoint, u64> = HashMap::new();
        for v in self.u.nonzero_vectors(ctx) {
            let p = ProjPoint::normalize(ctx, &v).expect("nonzero vector");
            *hits.entry(p).or_default() += 1;
        }
        let q = ctx.q() as u64;
        let mut out: Vec<WeightedPoint> = hits
            .into_iter()
            .map(|(point, c)| WeightedPoint {
                point,
                weight: log_q(c + 1, q).expect("hit count is q^w - 1"),
            })
            .collect();
        out.sort_by(|a, b| a.point.cmp(&b.point));
        out
    }

    /// dim_q(⟨P⟩_{q^n} ∩ U); zero for points outside the set.
    pub fn weight(&self, ctx: &FieldCtx, p: &ProjPoint) -> usize {
        let s = Subspace::fqn_span(ctx, p.coords());
        s.intersect(ctx, &self.u).expect("same arity").dim()
    }

    /// For graph sets: the weight of ⟨(1, m)⟩ read from the number of Λ ∈ V
    /// with f(Λ) = Λ·m, which is q^wt.
    pub fn weight_by_lambda_count(&self, ctx: &FieldCtx, p: &ProjPoint) -> Option<usize> {
        let (v, f) = self.graph.as_ref()?;
        if p.coords()[0].is_zero() {
            return Some(0);
        }
        let m = p.coords()[1];
        let count = v
            .elements(ctx)
            .into_iter()
            .filter(|&l| f.eval(ctx, l) == ctx.mul(l, m))
            .count();
        log_q(count as u64, ctx.q() as u64)
    }

    /// Number of points of each weight.
    pub fn weight_histogram(&self, ctx: &FieldCtx) -> BTreeMap<usize, usize> {
        histogram(&self.points(ctx))
    }

    pub fn verify_line_bound(&self, ctx: &FieldCtx) -> LineBound {
        line_bound(ctx, self.rank(), &self.points(ctx))
    }

    /// Whether the vectors of U defining weight-one points span U.
    pub fn span_of_weight_one(&self, ctx: &FieldCtx) -> Result<bool> {
        let pts: BTreeSet<ProjPoint> = self
            .points(ctx)
            .into_iter()
            .filter(|w| w.weight == 1)
            .map(|w| w.point)
            .collect();
        if pts.is_empty() {
            return Err(Error::NoWeightOnePoint);
        }
        let gens: Vec<Vec<Elem>> = self
            .u
            .nonzero_vectors(ctx)
            .into_iter()
            .filter(|v| pts.contains(&ProjPoint::normalize(ctx, v).expect("nonzero")))
            .collect();
        Ok(Subspace::span(ctx, self.r(), &gens)? == self.u)
    }
}

pub fn histogram(points: &[WeightedPoint]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for w in points {
        *h.entry(w.weight).or_default() += 1;
    }
    h
}

/// Size bound for a rank-k set on a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineBound {
    pub size: usize,
    pub has_weight_one: bool,
    /// q^{k-1} + 1 for k ≥ 2; a rank-1 set is a single point.
    pub bound: u64,
    pub congruence_ok: bool,
    pub bound_ok: bool,
}

pub fn line_bound(ctx: &FieldCtx, k: usize, points: &[WeightedPoint]) -> LineBound {
    let q = ctx.q() as u64;
    let size = points.len();
    let has_weight_one = points.iter().any(|w| w.weight == 1);
    let bound = if k >= 2 { q.pow(k as u32 - 1) + 1 } else { 1 };
    LineBound {
        size,
        has_weight_one,
        bound,
        congruence_ok: size as u64 % q == 1 % q,
        bound_ok: !has_weight_one || size as u64 >= bound,
    }
}

/// W = {f(x)/x : x ∈ V*}.
pub fn directions(ctx: &FieldCtx, v: &Subspace, f: &LinPoly) -> DirectionSet {
    let slopes = v
        .elements(ctx)
        .into_iter()
        .filter(|x| !x.is_zero())
        .map(|x| ctx.div(f.eval(ctx, x), x).expect("x nonzero"))
        .collect();
    DirectionSet {
        slopes,
        has_infinity: false,
    }
}

/// Slopes determined by pairs of points of the affine set {(x, f(x))}.
pub fn directions_pairwise(ctx: &FieldCtx, v: &Subspace, f: &LinPoly) -> DirectionSet {
    let pts: Vec<(Elem, Elem)> = v
        .elements(ctx)
        .into_iter()
        .map(|x| (x, f.eval(ctx, x)))
        .collect();
    let mut out = DirectionSet::default();
    for (i, &(x1, y1)) in pts.iter().enumerate() {
        for &(x2, y2) in &pts[i + 1..] {
            let dx = ctx.sub(x2, x1);
            if dx.is_zero() {
                out.has_infinity = true;
            } else {
                out.slopes
                    .insert(ctx.div(ctx.sub(y2, y1), dx).expect("dx nonzero"));
            }
        }
    }
    out
}

/// e with q^e = x.
pub(crate) fn log_q(x: u64, q: u64) -> Option<usize> {
    let mut t = 1u64;
    let mut e = 0;
    while t < x {
        t *= q;
        e += 1;
    }
    (t == x).then_some(e)
}
