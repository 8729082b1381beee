//! Dense univariate polynomials over F_{q^n}.

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx};

/// Ascending coefficient list with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Elem, degree: usize) -> Poly {
        let mut v = vec![Elem::ZERO; degree + 1];
        v[degree] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, s: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| ctx.mul(c, s)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// `self += s * other * Y^shift`, in place.
    pub(crate) fn add_scaled_shifted(&mut self, ctx: &FieldCtx, other: &Poly, s: &Poly) {
        if other.is_zero() || s.is_zero() {
            return;
        }
        let need = other.coeffs.len() + s.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Elem::ZERO);
        }
        for (i, &a) in s.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                self.coeffs[i + j] = ctx.add(self.coeffs[i + j], ctx.mul(a, b));
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn divrem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<(Poly, Poly)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.coeffs[d])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let t = ctx.mul(c, lead_inv);
            quot[top - d] = t;
            for (i, &g) in divisor.coeffs.iter().enumerate() {
                rem[top - d + i] = ctx.sub(rem[top - d + i], ctx.mul(t, g));
            }
        }
        rem.truncate(d);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Formal derivative.
    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ctx.scale_int(c, (i as u64 % ctx.p() as u64) as u32))
                .collect(),
        )
    }

    /// ∏ (X - r) over the given roots.
    pub fn from_roots(ctx: &FieldCtx, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::constant(Elem::ONE), |acc, &r| {
            acc.mul(ctx, &Poly::new(vec![ctx.neg(r), Elem::ONE]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let f = FieldCtx::new(3, 1, 2, None).unwrap();
        let a = Poly::new((0..9).map(Elem).collect());
        let b = Poly::new(vec![Elem(2), Elem(5), Elem(1)]);
        let (q, r) = a.divrem(&f, &b).unwrap();
        assert!(r.degree().map_or(true, |d| d < 2));
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert_eq!(
            a.divrem(&f, &Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn roots_product_vanishes_on_field() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let all: Vec<Elem> = f.elements().collect();
        let p = Poly::from_roots(&f, &all);
        // X^8 - X
        let mut expect = vec![Elem::ZERO; 9];
        expect[1] = Elem::ONE;
        expect[8] = Elem::ONE;
        assert_eq!(p, Poly::new(expect));
    }
}
