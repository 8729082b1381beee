//! Rédei polynomials R(X,Y) = ∏(X - x_i·Y + y_i) of affine point sets and
//! the Euclidean division of X^{q^n} - X by R over F_{q^n}[Y].

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx, Subspace};
use crate::linearized::{q_log, LinPoly};
use crate::poly::Poly;

/// A polynomial in X whose coefficients are polynomials in Y, stored
/// sparsely by X-exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<usize, Poly>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Poly)>>(terms: I) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, p) in terms {
            out.insert_disjoint(e, p);
        }
        out
    }

    /// X^{q^n} - X.
    pub fn field_poly(ctx: &FieldCtx) -> BiPoly {
        BiPoly::from_terms([
            (ctx.order() as usize, Poly::constant(Elem::ONE)),
            (1, Poly::constant(ctx.neg(Elem::ONE))),
        ])
    }

    fn insert_disjoint(&mut self, e: usize, p: Poly) {
        if p.is_zero() {
            return;
        }
        let prev = self.terms.insert(e, p);
        assert!(prev.is_none(), "duplicate X-exponent {e}");
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<usize, Poly> {
        &self.terms
    }

    /// Coefficient of X^e.
    pub fn coeff(&self, e: usize) -> Poly {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(e, p)| p.degree().map(|d| d + e))
            .max()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (e, p) in &other.terms {
            let s = terms.get(e).map_or_else(|| p.clone(), |a| a.add(ctx, p));
            if s.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, s);
            }
        }
        BiPoly { terms }
    }

    pub fn neg(&self, ctx: &FieldCtx) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&e, p)| (e, p.neg(ctx))).collect(),
        }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &BiPoly) -> BiPoly {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
        for (ea, pa) in &self.terms {
            for (eb, pb) in &other.terms {
                let slot = acc.entry(ea + eb).or_default();
                slot.add_scaled_shifted(ctx, pa, pb);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        BiPoly { terms: acc }
    }

    /// Substitutes Y = y.
    pub fn specialize(&self, ctx: &FieldCtx, y: Elem) -> Poly {
        let Some(d) = self.x_degree() else {
            return Poly::zero();
        };
        let mut v = vec![Elem::ZERO; d + 1];
        for (&e, p) in &self.terms {
            v[e] = p.eval(ctx, y);
        }
        Poly::new(v)
    }

    /// `{"e": [y-coefficients...]}` keyed by X-exponent.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, p) in &self.terms {
            m.insert(
                e.to_string(),
                json!(p.coeffs().iter().map(|c| c.value()).collect::<Vec<_>>()),
            );
        }
        Value::Object(m)
    }
}

/// R(X,Y) together with the number of points it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedeiPoly {
    poly: BiPoly,
    size: usize,
}

impl RedeiPoly {
    /// Expands ∏(X - x_i·Y + y_i) one linear factor at a time.
    pub fn build(ctx: &FieldCtx, points: &[(Elem, Elem)]) -> Result<RedeiPoly> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut seen = std::collections::HashSet::with_capacity(points.len());
        for &(x, y) in points {
            if !seen.insert((x, y)) {
                return Err(Error::DuplicatePoint(x.value(), y.value()));
            }
        }
        // dense[d] is the Y-polynomial multiplying X^d
        let mut dense: Vec<Poly> = vec![Poly::constant(Elem::ONE)];
        for &(x, y) in points {
            let c = Poly::new(vec![y, ctx.neg(x)]);
            let mut next = vec![Poly::zero(); dense.len() + 1];
            for (d, p) in dense.iter().enumerate() {
                next[d + 1] = next[d + 1].add(ctx, p);
                next[d].add_scaled_shifted(ctx, p, &c);
            }
            dense = next;
        }
        Ok(RedeiPoly {
            poly: BiPoly::from_terms(dense.into_iter().enumerate()),
            size: points.len(),
        })
    }

    /// Rédei polynomial of the affine graph {(x, f(x)) : x ∈ V}.
    pub fn from_graph(ctx: &FieldCtx, v: &Subspace, f: &LinPoly) -> Result<RedeiPoly> {
        let pts: Vec<(Elem, Elem)> = v
            .elements(ctx)
            .into_iter()
            .map(|x| (x, f.eval(ctx, x)))
            .collect();
        Self::build(ctx, &pts)
    }

    /// Wraps an arbitrary bivariate polynomial; `size` is taken as deg_X.
    pub fn from_bipoly(poly: BiPoly) -> RedeiPoly {
        let size = poly.x_degree().unwrap_or(0);
        RedeiPoly { poly, size }
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.poly.x_degree()
    }

    /// σ_i(Y), the coefficient of X^{|S|-i}.
    pub fn sigma(&self, i: usize) -> Poly {
        if i > self.size {
            return Poly::zero();
        }
        self.poly.coeff(self.size - i)
    }

    pub fn specialize(&self, ctx: &FieldCtx, y: Elem) -> Poly {
        self.poly.specialize(ctx, y)
    }

    fn is_monic(&self) -> bool {
        self.poly
            .x_degree()
            .is_some_and(|d| self.poly.coeff(d) == Poly::constant(Elem::ONE))
    }

    /// Roots of R(X,y) with multiplicities, by scanning the field.
    pub fn multiplicity_profile(&self, ctx: &FieldCtx, y: Elem) -> Result<Vec<(Elem, usize)>> {
        let mut g = self.specialize(ctx, y);
        let total = g.degree().unwrap_or(0);
        let mut out = Vec::new();
        let mut found = 0;
        for a in ctx.elements() {
            if !g.eval(ctx, a).is_zero() {
                continue;
            }
            let lin = Poly::new(vec![ctx.neg(a), Elem::ONE]);
            let mut m = 0;
            loop {
                let (quot, rem) = g.divrem(ctx, &lin)?;
                if !rem.is_zero() {
                    break;
                }
                g = quot;
                m += 1;
            }
            found += m;
            out.push((a, m));
        }
        if found != total {
            return Err(Error::NonSplitting);
        }
        Ok(out)
    }

    /// True iff the nonzero X-slots sit only at q-powers up to q^k and
    /// deg_X R = q^k.
    pub fn check_shape(&self, ctx: &FieldCtx, k: usize) -> bool {
        let q = ctx.q() as usize;
        if self.x_degree() != Some(q.pow(k as u32)) {
            return false;
        }
        self.poly
            .terms
            .keys()
            .all(|&e| q_log(e, q).is_some_and(|j| j <= k))
    }

    /// Euclidean division of X^{q^n} - X by R in F_{q^n}[Y][X].
    ///
    /// Each step records whether the running degree bounds still hold:
    /// deg σ*_j ≤ j, deg ρ_i ≤ i, total degree ≤ q^n.
    pub fn divide_xqn(&self, ctx: &FieldCtx) -> Result<DivisionResult> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let qn = ctx.order() as usize;
        let d = self.x_degree().expect("monic implies nonzero");
        if d > qn {
            return Err(Error::Unsupported(format!(
                "deg_X R = {d} exceeds q^n = {qn}"
            )));
        }
        let mut r: Vec<Poly> = vec![Poly::zero(); qn + 1];
        r[qn] = Poly::constant(Elem::ONE);
        r[1] = r[1].sub(ctx, &Poly::constant(Elem::ONE));
        let mut quot = BTreeMap::new();
        let mut ledger = DegreeLedger {
            steps: 0,
            sigma_star_ok: true,
            rho_ok: true,
            total_degree_ok: true,
        };
        for j in 0..=(qn - d) {
            let top = qn - j;
            let lead = std::mem::take(&mut r[top]);
            if lead.degree().is_some_and(|dy| dy > j) {
                ledger.sigma_star_ok = false;
            }
            if !lead.is_zero() {
                let shift = top - d;
                let minus = lead.neg(ctx);
                for (&e, p) in &self.poly.terms {
                    if e == d {
                        continue;
                    }
                    r[e + shift].add_scaled_shifted(ctx, p, &minus);
                }
                quot.insert(shift, lead);
            }
            ledger.steps += 1;
            for (e, p) in r.iter().enumerate() {
                if let Some(dy) = p.degree() {
                    if dy > qn - e {
                        ledger.rho_ok = false;
                    }
                }
            }
        }
        let rem = BiPoly::from_terms(r.into_iter().enumerate());
        let quot = BiPoly { terms: quot };
        if quot.total_degree().is_some_and(|t| t > qn) || rem.total_degree().is_some_and(|t| t > qn)
        {
            ledger.total_degree_ok = false;
        }
        let h = rem
            .neg(ctx)
            .sub(ctx, &BiPoly::from_terms([(1, Poly::constant(Elem::ONE))]));
        let i0 = h.x_degree().map(|e| qn - e);
        Ok(DivisionResult {
            qn,
            quotient: quot,
            remainder: rem,
            h,
            i0,
            ledger,
        })
    }
}

/// Degree bounds observed while dividing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeLedger {
    pub steps: usize,
    pub sigma_star_ok: bool,
    pub rho_ok: bool,
    pub total_degree_ok: bool,
}

impl DegreeLedger {
    pub fn ok(&self) -> bool {
        self.sigma_star_ok && self.rho_ok && self.total_degree_ok
    }
}

/// X^{q^n} - X = R·Q + r and H = -r - X.
#[derive(Clone, Debug)]
pub struct DivisionResult {
    qn: usize,
    pub quotient: BiPoly,
    pub remainder: BiPoly,
    pub h: BiPoly,
    /// Smallest i with h_i ≢ 0, where h_i multiplies X^{q^n-i}.
    pub i0: Option<usize>,
    pub ledger: DegreeLedger,
}

impl DivisionResult {
    /// h_i(Y), the coefficient of X^{q^n-i} in H.
    pub fn h_coeff(&self, i: usize) -> Poly {
        if i > self.qn {
            return Poly::zero();
        }
        self.h.coeff(self.qn - i)
    }

    pub fn deg_x_h(&self) -> Option<usize> {
        self.h.x_degree()
    }

    /// The exponent j with deg_X H = q^j, if it is a power of q.
    pub fn deg_h_q_power(&self, ctx: &FieldCtx) -> Option<usize> {
        self.deg_x_h().and_then(|d| q_log(d, ctx.q() as usize))
    }

    /// deg_X H ≤ q^k - 1 and deg h_i ≤ i for all i.
    pub fn h_bounds_ok(&self, k: usize, q: usize) -> bool {
        let cap = q.pow(k as u32).saturating_sub(1).max(1);
        self.deg_x_h().map_or(true, |d| d <= cap)
            && self
                .h
                .terms
                .iter()
                .all(|(&e, p)| p.degree().map_or(true, |dy| dy <= self.qn - e))
    }

    /// R·Q + r == X^{q^n} - X, coefficient by coefficient.
    pub fn identity_holds(&self, ctx: &FieldCtx, r: &RedeiPoly) -> bool {
        r.poly.mul(ctx, &self.quotient).add(ctx, &self.remainder) == BiPoly::field_poly(ctx)
    }

    /// Compares H(X,y) with -H̃_y - X from the symbolic division of
    /// X^{q^n} - X by R(X,y), for every y. Returns the slopes where the two
    /// disagree (or where R(X,y) is not linearized).
    pub fn ore_mismatches(&self, ctx: &FieldCtx, r: &RedeiPoly) -> Vec<Elem> {
        let big = LinPoly::field_poly(ctx);
        let minus_x = Poly::new(vec![Elem::ZERO, ctx.neg(Elem::ONE)]);
        ctx.elements()
            .filter(|&y| {
                let Ok(ry) = LinPoly::from_poly(ctx, &r.specialize(ctx, y)) else {
                    return true;
                };
                let Ok((_, rem)) = big.sym_divrem(ctx, &ry) else {
                    return true;
                };
                let h_prime = rem.to_poly(ctx).neg(ctx).add(ctx, &minus_x);
                self.h.specialize(ctx, y) != h_prime
            })
            .collect()
    }

    pub fn to_json(&self, r: &RedeiPoly) -> Value {
        json!({
            "R": r.poly.to_json(),
            "Q": self.quotient.to_json(),
            "r": self.remainder.to_json(),
            "H": self.h.to_json(),
            "degX_H": self.deg_x_h(),
            "i0": self.i0,
            "ledger": {
                "steps": self.ledger.steps,
                "sigma_star_ok": self.ledger.sigma_star_ok,
                "rho_ok": self.ledger.rho_ok,
                "total_degree_ok": self.ledger.total_degree_ok,
            },
        })
    }
}
