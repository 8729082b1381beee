//! Linearized polynomials Σ c_i X^{q^i} over F_{q^n} and their symbolic
//! (composition) algebra.
//!
//! Two products are provided. [`LinPoly::compose`] is plain composition,
//! where symbolic degrees add. [`LinPoly::sym_mul`] additionally reduces
//! modulo X^{q^n} - X, which folds the coefficient of X^{q^i} onto
//! X^{q^{i mod n}} unchanged (x^{q^n} = x on the field). Right division
//! works in the unreduced ring so that `F = Q∘G + H` holds coefficient-wise
//! even when F itself has symbolic degree n.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{matrix, Elem, FieldCtx, Subspace};
use crate::poly::Poly;

/// `coeffs[i]` multiplies X^{q^i}; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinPoly {
    coeffs: Vec<Elem>,
}

impl LinPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> LinPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    pub fn zero() -> LinPoly {
        LinPoly::default()
    }

    /// The identity map X.
    pub fn identity() -> LinPoly {
        LinPoly::new(vec![Elem::ONE])
    }

    /// c·X^{q^i}.
    pub fn monomial(c: Elem, i: usize) -> LinPoly {
        let mut v = vec![Elem::ZERO; i + 1];
        v[i] = c;
        LinPoly::new(v)
    }

    /// X^{q^n} - X, unreduced.
    pub fn field_poly(ctx: &FieldCtx) -> LinPoly {
        let mut v = vec![Elem::ZERO; ctx.n() + 1];
        v[0] = ctx.neg(Elem::ONE);
        v[ctx.n()] = Elem::ONE;
        LinPoly::new(v)
    }

    /// Σ_{i<n} X^{q^i}, the trace map.
    pub fn trace_poly(ctx: &FieldCtx) -> LinPoly {
        LinPoly::new(vec![Elem::ONE; ctx.n()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Symbolic degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..len)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..len)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> LinPoly {
        LinPoly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    /// s·L, scaling the values.
    pub fn scale(&self, ctx: &FieldCtx, s: Elem) -> LinPoly {
        LinPoly::new(self.coeffs.iter().map(|&c| ctx.mul(c, s)).collect())
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(x, i)));
            }
        }
        acc
    }

    /// F(G(X)) without reduction: (F∘G)_m = Σ_{i+j=m} F_i · G_j^{q^i}.
    pub fn compose(&self, ctx: &FieldCtx, g: &LinPoly) -> LinPoly {
        if self.is_zero() || g.is_zero() {
            return LinPoly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + g.coeffs.len() - 1];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in g.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                out[i + j] = ctx.add(out[i + j], ctx.mul(fi, ctx.frobenius(gj, i)));
            }
        }
        LinPoly::new(out)
    }

    /// Reduction modulo X^{q^n} - X.
    pub fn reduce(&self, ctx: &FieldCtx) -> LinPoly {
        let n = ctx.n();
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![Elem::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = ctx.add(out[i % n], c);
        }
        LinPoly::new(out)
    }

    /// Symbolic product F∘G mod X^{q^n} - X.
    pub fn sym_mul(&self, ctx: &FieldCtx, g: &LinPoly) -> LinPoly {
        self.compose(ctx, g).reduce(ctx)
    }

    /// Right division: F = Q∘G + H with deg H < deg G.
    ///
    /// The leading term c·X^{q^a} of the running remainder is cancelled by
    /// t·X^{q^{a-b}} ∘ G, whose leading coefficient is t·g^{q^{a-b}}; so
    /// t = c / g^{q^{a-b}} and no root extraction is needed.
    pub fn sym_divrem(&self, ctx: &FieldCtx, g: &LinPoly) -> Result<(LinPoly, LinPoly)> {
        let b = g.degree().ok_or(Error::DivisorZero)?;
        let lead = g.coeffs[b];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(b)];
        while let Some(a) = rem.iter().rposition(|c| !c.is_zero()) {
            if a < b {
                break;
            }
            let s = a - b;
            let t = ctx.div(rem[a], ctx.frobenius(lead, s))?;
            quot[s] = ctx.add(quot[s], t);
            for (j, &gj) in g.coeffs.iter().enumerate() {
                rem[s + j] = ctx.sub(rem[s + j], ctx.mul(t, ctx.frobenius(gj, s)));
            }
            debug_assert!(rem[a].is_zero());
        }
        Ok((LinPoly::new(quot), LinPoly::new(rem)))
    }

    /// {x : L(x) = 0} as an F_q-subspace.
    pub fn kernel(&self, ctx: &FieldCtx) -> Subspace {
        Subspace::kernel_of(ctx, 1, |x| vec![self.eval(ctx, x[0])])
    }

    pub fn image(&self, ctx: &FieldCtx) -> Subspace {
        let imgs: Vec<Elem> = ctx.fq_basis().iter().map(|&b| self.eval(ctx, b)).collect();
        Subspace::scalar_span(ctx, &imgs)
    }

    /// The monic ∏_{β∈V}(X - β), built one basis vector at a time via
    /// P ↦ (X^q - P(b)^{q-1}·X) ∘ P.
    pub fn subspace_poly(ctx: &FieldCtx, v: &Subspace) -> Result<LinPoly> {
        if v.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: v.arity(),
            });
        }
        let mut p = LinPoly::identity();
        for b in v.basis() {
            let c = ctx.pow(p.eval(ctx, b[0]), ctx.q() as u64 - 1);
            let step = LinPoly::new(vec![ctx.neg(c), Elem::ONE]);
            p = step.compose(ctx, &p);
        }
        Ok(p)
    }

    /// The ordinary polynomial with coefficient c_i at exponent q^i.
    pub fn to_poly(&self, ctx: &FieldCtx) -> Poly {
        let Some(d) = self.degree() else {
            return Poly::zero();
        };
        let q = ctx.q() as usize;
        let mut v = vec![Elem::ZERO; q.pow(d as u32) + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[q.pow(i as u32)] = c;
        }
        Poly::new(v)
    }

    /// Reads an ordinary polynomial back; fails if some nonzero coefficient
    /// sits at an exponent that is not a power of q.
    pub fn from_poly(ctx: &FieldCtx, f: &Poly) -> Result<LinPoly> {
        let q = ctx.q() as usize;
        let mut out = Vec::new();
        for (e, &c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = q_log(e, q).ok_or(Error::NotLinearized(e))?;
            if out.len() <= i {
                out.resize(i + 1, Elem::ZERO);
            }
            out[i] = c;
        }
        Ok(LinPoly::new(out))
    }

    /// The unique L of symbolic degree < n with L(b_j) = images[j], where
    /// `basis` is an F_q-basis of F_{q^n} (Moore-matrix solve).
    pub fn interpolate(ctx: &FieldCtx, basis: &[Elem], images: &[Elem]) -> Result<LinPoly> {
        let n = ctx.n();
        if basis.len() != n || images.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: basis.len().min(images.len()),
            });
        }
        let moore: Vec<Vec<Elem>> = basis
            .iter()
            .map(|&b| (0..n).map(|i| ctx.frobenius(b, i)).collect())
            .collect();
        Ok(LinPoly::new(matrix::solve(ctx, &moore, images)?))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<LinPoly> {
        let coeffs = text
            .split(',')
            .map(|t| {
                let v: u64 = t
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
                ctx.elem(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinPoly::new(coeffs))
    }
}

impl fmt::Display for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// i with q^i = e, if any.
pub(crate) fn q_log(e: usize, q: usize) -> Option<usize> {
    let mut i = 0;
    let mut t = 1usize;
    while t < e {
        t *= q;
        i += 1;
    }
    (t == e).then_some(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_lin(ctx: &FieldCtx, rng: &mut ChaCha8Rng, len: usize) -> LinPoly {
        LinPoly::new(
            (0..len)
                .map(|_| Elem(rng.gen_range(0..ctx.order())))
                .collect(),
        )
    }

    fn x_q_minus_x(ctx: &FieldCtx) -> LinPoly {
        LinPoly::new(vec![ctx.neg(Elem::ONE), Elem::ONE])
    }

    #[test]
    fn eval_identity_and_subfield() {
        let f = FieldCtx::new(2, 1, 4, None).unwrap();
        let l = x_q_minus_x(&f);
        for x in f.elements() {
            assert_eq!(LinPoly::identity().eval(&f, x), x);
            assert_eq!(l.eval(&f, x).is_zero(), f.in_subfield(x));
        }
    }

    #[test]
    fn trace_poly_matches_trace() {
        let f = FieldCtx::new(3, 1, 2, None).unwrap();
        let t = LinPoly::trace_poly(&f);
        for x in f.elements() {
            assert_eq!(t.eval(&f, x), f.trace(x));
        }
    }

    #[test]
    fn additive_and_fq_homogeneous() {
        let f = FieldCtx::new(2, 2, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let l = random_lin(&f, &mut rng, 2);
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(l.eval(&f, f.add(x, y)), f.add(l.eval(&f, x), l.eval(&f, y)));
                }
                for &lam in f.subfield() {
                    assert_eq!(l.eval(&f, f.mul(lam, x)), f.mul(lam, l.eval(&f, x)));
                }
            }
        }
    }

    #[test]
    fn kernels() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        assert_eq!(LinPoly::zero().kernel(&f).dim(), 3);
        let k = x_q_minus_x(&f).kernel(&f);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.elements(&f), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn rank_nullity() {
        let f = FieldCtx::new(2, 1, 6, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let l = random_lin(&f, &mut rng, 6);
            // image dimension from the explicit list of values
            let vals: Vec<Elem> = f.elements().map(|x| l.eval(&f, x)).collect();
            let img = Subspace::scalar_span(&f, &vals);
            assert_eq!(img, l.image(&f));
            assert_eq!(l.kernel(&f).dim() + img.dim(), 6);
        }
    }

    #[test]
    fn subspace_poly_examples() {
        let f = FieldCtx::new(2, 1, 2, None).unwrap();
        assert_eq!(
            LinPoly::subspace_poly(&f, &Subspace::zero(&f, 1)).unwrap(),
            LinPoly::identity()
        );
        let fq = Subspace::scalar_span(&f, &[Elem::ONE]);
        assert_eq!(LinPoly::subspace_poly(&f, &fq).unwrap(), x_q_minus_x(&f));

        let g = FieldCtx::new(3, 1, 2, None).unwrap();
        let fq = Subspace::scalar_span(&g, &[Elem::ONE]);
        let direct = Poly::from_roots(&g, &fq.elements(&g));
        assert_eq!(LinPoly::subspace_poly(&g, &fq).unwrap().to_poly(&g), direct);
    }

    #[test]
    fn subspace_poly_matches_product_expansion() {
        let f = FieldCtx::new(2, 1, 5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let v = loop {
                let a = Elem(rng.gen_range(1..32));
                let b = Elem(rng.gen_range(1..32));
                let s = Subspace::scalar_span(&f, &[a, b]);
                if s.dim() == 2 {
                    break s;
                }
            };
            let direct = Poly::from_roots(&f, &v.elements(&f));
            for (e, c) in direct.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    assert!([1, 2, 4].contains(&e), "exponent {e}");
                }
            }
            let l = LinPoly::subspace_poly(&f, &v).unwrap();
            assert_eq!(l.degree(), Some(2));
            assert_eq!(l.to_poly(&f), direct);
            assert_eq!(LinPoly::from_poly(&f, &direct).unwrap(), l);
            assert_eq!(l.kernel(&f), v);
        }
    }

    #[test]
    fn from_poly_rejects_non_q_powers() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let p = Poly::new(vec![Elem(0), Elem(1), Elem(0), Elem(1)]);
        assert_eq!(
            LinPoly::from_poly(&f, &p).unwrap_err(),
            Error::NotLinearized(3)
        );
    }

    #[test]
    fn sym_mul_identities() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_lin(&f, &mut rng, 3);
        assert_eq!(LinPoly::identity().sym_mul(&f, &g), g);
        assert_eq!(g.sym_mul(&f, &LinPoly::identity()), g);
        let xq = LinPoly::monomial(Elem::ONE, 1);
        assert_eq!(xq.sym_mul(&f, &xq), LinPoly::monomial(Elem::ONE, 2));
        // folding: X^{q^2} ∘ X^{q^2} = X^{q^4} = X^q on F_8
        let x4 = LinPoly::monomial(Elem::ONE, 2);
        assert_eq!(x4.sym_mul(&f, &x4), xq);
    }

    #[test]
    fn sym_mul_pointwise() {
        let f = FieldCtx::new(3, 1, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_lin(&f, &mut rng, 3);
            let b = random_lin(&f, &mut rng, 3);
            let ab = a.sym_mul(&f, &b);
            for x in f.elements() {
                assert_eq!(ab.eval(&f, x), a.eval(&f, b.eval(&f, x)));
            }
        }
    }

    #[test]
    fn divrem_examples() {
        let f = FieldCtx::new(2, 1, 2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_lin(&f, &mut rng, 2);
        assert_eq!(
            a.sym_divrem(&f, &LinPoly::identity()).unwrap(),
            (a.clone(), LinPoly::zero())
        );
        assert_eq!(
            a.sym_divrem(&f, &LinPoly::zero()).unwrap_err(),
            Error::DivisorZero
        );

        let g = LinPoly::subspace_poly(&f, &Subspace::scalar_span(&f, &[Elem::ONE])).unwrap();
        let big = LinPoly::field_poly(&f);
        let (q, h) = big.sym_divrem(&f, &g).unwrap();
        assert!(h.is_zero());
        assert_eq!(q.compose(&f, &g), big);
    }

    #[test]
    fn divrem_random() {
        let f = FieldCtx::new(2, 1, 6, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let la = rng.gen_range(0..8);
            let a = random_lin(&f, &mut rng, la);
            let lg = rng.gen_range(1..6);
            let g = random_lin(&f, &mut rng, lg);
            if g.is_zero() {
                continue;
            }
            let (q, h) = a.sym_divrem(&f, &g).unwrap();
            assert_eq!(q.compose(&f, &g).add(&f, &h), a);
            assert!(h.degree() < g.degree());
        }
    }

    #[test]
    fn interpolation_round_trip() {
        let f = FieldCtx::new(3, 1, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let l = random_lin(&f, &mut rng, 3);
            let imgs: Vec<Elem> = f.fq_basis().iter().map(|&b| l.eval(&f, b)).collect();
            assert_eq!(LinPoly::interpolate(&f, f.fq_basis(), &imgs).unwrap(), l);
        }
    }

    #[test]
    fn text_round_trip() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let l = LinPoly::new(vec![Elem(3), Elem(0), Elem(7)]);
        assert_eq!(l.to_text(), "3,0,7");
        assert_eq!(LinPoly::parse(&f, "3, 0, 7").unwrap(), l);
        assert_eq!(LinPoly::parse(&f, "0").unwrap(), LinPoly::zero());
        assert!(LinPoly::parse(&f, "8").is_err());
        assert!(LinPoly::parse(&f, "x").is_err());
    }
}
