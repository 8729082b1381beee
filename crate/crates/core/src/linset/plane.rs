//! Linear sets in PG(2, q^n) (and PG(3, q^n) for the hyperplane bound):
//! line intersections, blocking properties and size bounds.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::{histogram, LinearSetSpec, ProjPoint, WeightedPoint};
use crate::error::{Error, Result};
use crate::fields::{matrix, Elem, FieldCtx};

/// Largest number of hyperplanes we are willing to scan.
const HYPERPLANE_CAP: u64 = 1 << 20;

/// Every point of PG(r-1, q^n) in normalized form.
pub fn all_points(ctx: &FieldCtx, r: usize) -> Vec<ProjPoint> {
    let order = ctx.order() as usize;
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = order.pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![Elem::ZERO; r];
            v[lead] = Elem::ONE;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = Elem((idx % order) as u32);
                idx /= order;
            }
            out.push(ProjPoint { coords: v });
        }
    }
    out
}

/// The line joining two points of PG(2, q^n), as a normalized dual point.
pub fn line_through(ctx: &FieldCtx, a: &ProjPoint, b: &ProjPoint) -> Option<ProjPoint> {
    let (a, b) = (a.coords(), b.coords());
    let m = |i: usize, j: usize| ctx.sub(ctx.mul(a[i], b[j]), ctx.mul(a[j], b[i]));
    ProjPoint::normalize(ctx, &[m(1, 2), m(2, 0), m(0, 1)])
}

fn incident(ctx: &FieldCtx, dual: &ProjPoint, p: &ProjPoint) -> bool {
    ctx.sum(
        dual.coords()
            .iter()
            .zip(p.coords())
            .map(|(&a, &b)| ctx.mul(a, b)),
    )
    .is_zero()
}

/// Number of lines meeting the set in exactly m points, for every m ≥ 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub counts: BTreeMap<usize, u64>,
}

impl Spectrum {
    /// Sizes of lines through at least two points of the set.
    pub fn secant_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied().filter(|&m| m >= 2)
    }

    pub fn has_secant_of_size(&self, m: usize) -> bool {
        self.counts.get(&m).is_some_and(|&c| c > 0)
    }
}

/// Intersection sizes of all lines of PG(2, q^n) meeting the set, found
/// from the lines through pairs of points. Tangent lines are counted per
/// point as the q^n + 1 lines through it minus its secants.
pub fn secant_spectrum(ctx: &FieldCtx, points: &[ProjPoint]) -> Spectrum {
    let mut lines: HashMap<ProjPoint, HashSet<usize>> = HashMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let l = line_through(ctx, &points[i], &points[j]).expect("distinct points");
            let members = lines.entry(l).or_default();
            members.insert(i);
            members.insert(j);
        }
    }
    let mut secants_through = vec![0u64; points.len()];
    let mut counts = BTreeMap::new();
    for members in lines.values() {
        *counts.entry(members.len()).or_insert(0u64) += 1;
        for &i in members {
            secants_through[i] += 1;
        }
    }
    let pencil = ctx.order() as u64 + 1;
    let tangents: u64 = secants_through.iter().map(|&s| pencil - s).sum();
    if tangents > 0 {
        counts.insert(1, tangents);
    }
    Spectrum { counts }
}

/// Largest e with every secant size ≡ 1 mod p^e. With no secants at all
/// every e works and the answer is capped at t = log_p q^n.
pub fn max_linearity_modulus(ctx: &FieldCtx, spectrum: &Spectrum) -> usize {
    let p = ctx.p() as usize;
    let t = ctx.degree();
    spectrum
        .secant_sizes()
        .map(|m| {
            let mut x = m - 1;
            let mut e = 0;
            while x % p == 0 && e < t {
                x /= p;
                e += 1;
            }
            e
        })
        .min()
        .unwrap_or(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingReport {
    pub blocking: bool,
    /// Contains a whole line.
    pub trivial: bool,
    /// Fewer than 3(q^n + 1)/2 points.
    pub small: bool,
}

/// Scans every line of PG(2, q^n).
pub fn is_blocking_set(ctx: &FieldCtx, points: &[ProjPoint]) -> Result<BlockingReport> {
    let order = ctx.order() as u64;
    let line_count = order * order + order + 1;
    if line_count > HYPERPLANE_CAP {
        return Err(Error::AmbientTooLarge(format!("{line_count} lines")));
    }
    let mut blocking = true;
    let mut trivial = false;
    for l in all_points(ctx, 3) {
        let m = points.iter().filter(|p| incident(ctx, &l, p)).count() as u64;
        blocking &= m >= 1;
        trivial |= m == order + 1;
    }
    Ok(BlockingReport {
        blocking,
        trivial,
        small: (2 * points.len() as u64) < 3 * (order + 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub size: usize,
    pub weights: BTreeMap<usize, usize>,
    pub spectrum: Spectrum,
    pub has_q1_secant: bool,
    /// q^{k-1} + q^{k-2} + 1.
    pub bound: u64,
    /// The bound is asserted when a (q+1)-secant exists and 3 ≤ k ≤ n.
    pub bound_asserted: bool,
    pub bound_ok: bool,
    pub congruence_ok: bool,
    pub e_modulus: usize,
}

pub fn verify_plane_bound(ctx: &FieldCtx, spec: &LinearSetSpec) -> Result<PlaneReport> {
    if spec.r() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: spec.r(),
        });
    }
    let pts = spec.points(ctx);
    Ok(plane_report(ctx, spec.rank(), &pts))
}

/// Plane report for an already computed weighted point set of a rank-k set.
pub fn plane_report(ctx: &FieldCtx, k: usize, pts: &[WeightedPoint]) -> PlaneReport {
    let q = ctx.q() as u64;
    let plain: Vec<ProjPoint> = pts.iter().map(|w| w.point.clone()).collect();
    let spectrum = secant_spectrum(ctx, &plain);
    let has_q1_secant = spectrum.has_secant_of_size(q as usize + 1);
    let bound = match k {
        0 => 0,
        1 => 1,
        _ => q.pow(k as u32 - 1) + q.pow(k as u32 - 2) + 1,
    };
    let bound_asserted = has_q1_secant && (3..=ctx.n()).contains(&k);
    let size = pts.len();
    PlaneReport {
        size,
        weights: histogram(pts),
        e_modulus: max_linearity_modulus(ctx, &spectrum),
        spectrum,
        has_q1_secant,
        bound,
        bound_asserted,
        bound_ok: !bound_asserted || size as u64 >= bound,
        congruence_ok: size as u64 % q == 1 % q,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneReport {
    pub r: usize,
    pub size: usize,
    pub spans: bool,
    /// Some hyperplane meets the set in (q^{r-1}-1)/(q-1) points spanning it.
    pub hypothesis: bool,
    /// q^{k-1} + ... + q^{k-r+1} + 1.
    pub bound: u64,
    pub bound_asserted: bool,
    pub bound_ok: bool,
}

/// Size bound under a hyperplane meeting the set in the point set of a
/// PG(r-2, q). Hyperplanes are enumerated, so only r ∈ {3, 4} at small q^n.
pub fn verify_hyperplane_bound(ctx: &FieldCtx, spec: &LinearSetSpec) -> Result<HyperplaneReport> {
    let r = spec.r();
    if !(3..=4).contains(&r) {
        return Err(Error::AmbientTooLarge(format!(
            "hyperplane enumeration for r = {r}"
        )));
    }
    let order = ctx.order() as u64;
    let hyperplanes: u64 = (0..r as u32).map(|i| order.pow(i)).sum();
    if hyperplanes > HYPERPLANE_CAP {
        return Err(Error::AmbientTooLarge(format!("{hyperplanes} hyperplanes")));
    }
    let q = ctx.q() as u64;
    let k = spec.rank();
    let pts: Vec<ProjPoint> = spec.points(ctx).into_iter().map(|w| w.point).collect();
    let rows: Vec<Vec<Elem>> = pts.iter().map(|p| p.coords().to_vec()).collect();
    let spans = matrix::rank(ctx, &rows) == r;
    let target = ((q.pow(r as u32 - 1) - 1) / (q - 1)) as usize;
    let hypothesis = all_points(ctx, r).iter().any(|h| {
        let on: Vec<Vec<Elem>> = pts
            .iter()
            .filter(|p| incident(ctx, h, p))
            .map(|p| p.coords().to_vec())
            .collect();
        on.len() == target && matrix::rank(ctx, &on) == r - 1
    });
    let bound = if k + 1 >= r {
        (0..r as u32 - 1)
            .map(|i| q.pow(k as u32 - 1 - i))
            .sum::<u64>()
            + 1
    } else {
        0
    };
    let bound_asserted = hypothesis && spans && (r..=ctx.n()).contains(&k);
    Ok(HyperplaneReport {
        r,
        size: pts.len(),
        spans,
        hypothesis,
        bound,
        bound_asserted,
        bound_ok: !bound_asserted || pts.len() as u64 >= bound,
    })
}
