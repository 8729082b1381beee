use super::fp::{self, Echelon};
use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// An F_q-subspace of F_{q^n}^r.
///
/// The canonical representative is the reduced row echelon form of the
/// subspace viewed as an F_p-space of flattened coordinate vectors; two
/// subspaces are equal iff these forms agree. The F_q-basis is derived
/// greedily from the echelon rows, so it is canonical too.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    arity: usize,
    echelon: Echelon,
    basis: Vec<Vec<Elem>>,
}

pub(crate) fn flatten(ctx: &FieldCtx, v: &[Elem]) -> Vec<u32> {
    v.iter().flat_map(|&x| ctx.coeffs(x)).collect()
}

pub(crate) fn unflatten(ctx: &FieldCtx, digits: &[u32]) -> Vec<Elem> {
    digits
        .chunks(ctx.degree())
        .map(|c| ctx.from_coeffs(c))
        .collect()
}

impl Subspace {
    pub fn zero(ctx: &FieldCtx, arity: usize) -> Subspace {
        Subspace {
            arity,
            echelon: Echelon::new(ctx.p(), arity * ctx.degree()),
            basis: Vec::new(),
        }
    }

    /// F_q-span of `vectors`.
    pub fn span(ctx: &FieldCtx, arity: usize, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        let mut ech = Echelon::new(ctx.p(), arity * ctx.degree());
        for v in vectors {
            if v.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: v.len(),
                });
            }
            for &b in ctx.subfield_fp_basis() {
                let scaled: Vec<Elem> = v.iter().map(|&x| ctx.mul(b, x)).collect();
                ech.insert(flatten(ctx, &scaled));
            }
        }
        Ok(Self::from_echelon(ctx, arity, ech))
    }

    /// F_q-span of scalars, as a subspace of F_{q^n}.
    pub fn scalar_span(ctx: &FieldCtx, elems: &[Elem]) -> Subspace {
        let vs: Vec<Vec<Elem>> = elems.iter().map(|&e| vec![e]).collect();
        Self::span(ctx, 1, &vs).expect("arity 1")
    }

    /// The whole of F_{q^n}^arity.
    pub fn full(ctx: &FieldCtx, arity: usize) -> Subspace {
        let vs: Vec<Vec<Elem>> = (0..arity)
            .flat_map(|i| {
                ctx.fq_basis().iter().map(move |&b| {
                    let mut v = vec![Elem::ZERO; arity];
                    v[i] = b;
                    v
                })
            })
            .collect();
        Self::span(ctx, arity, &vs).expect("consistent arity")
    }

    /// {λv : λ ∈ F_{q^n}}, an F_q-subspace of dimension n when v ≠ 0.
    pub fn fqn_span(ctx: &FieldCtx, v: &[Elem]) -> Subspace {
        let vs: Vec<Vec<Elem>> = ctx
            .fq_basis()
            .iter()
            .map(|&b| v.iter().map(|&x| ctx.mul(b, x)).collect())
            .collect();
        Self::span(ctx, v.len(), &vs).expect("consistent arity")
    }

    /// Kernel of an F_q-linear map on F_{q^n}^arity.
    pub fn kernel_of<F>(ctx: &FieldCtx, arity: usize, map: F) -> Subspace
    where
        F: Fn(&[Elem]) -> Vec<Elem>,
    {
        let width = arity * ctx.degree();
        let images: Vec<Vec<u32>> = (0..width)
            .map(|i| {
                let mut unit = vec![0u32; width];
                unit[i] = 1;
                flatten(ctx, &map(&unflatten(ctx, &unit)))
            })
            .collect();
        let mut ech = Echelon::new(ctx.p(), width);
        for v in fp::kernel(ctx.p(), &images) {
            ech.insert(v);
        }
        Self::from_echelon(ctx, arity, ech)
    }

    fn from_echelon(ctx: &FieldCtx, arity: usize, echelon: Echelon) -> Subspace {
        let h = ctx.h();
        let basis = if h == 1 {
            echelon.rows().iter().map(|r| unflatten(ctx, r)).collect()
        } else {
            let mut chosen = Echelon::new(ctx.p(), arity * ctx.degree());
            let mut basis = Vec::new();
            for row in echelon.rows() {
                if chosen.rank() == echelon.rank() {
                    break;
                }
                if chosen.contains(row) {
                    continue;
                }
                let v = unflatten(ctx, row);
                for &b in ctx.subfield_fp_basis() {
                    let scaled: Vec<Elem> = v.iter().map(|&x| ctx.mul(b, x)).collect();
                    chosen.insert(flatten(ctx, &scaled));
                }
                basis.push(v);
            }
            basis
        };
        debug_assert_eq!(echelon.rank(), basis.len() * h);
        Subspace {
            arity,
            echelon,
            basis,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical F_q-basis.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn contains(&self, ctx: &FieldCtx, v: &[Elem]) -> bool {
        v.len() == self.arity && self.echelon.contains(&flatten(ctx, v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.arity == self.arity
            && other
                .echelon
                .rows()
                .iter()
                .all(|r| self.echelon.contains(r))
    }

    pub fn sum(&self, ctx: &FieldCtx, other: &Subspace) -> Result<Subspace> {
        self.check_arity(other)?;
        let mut ech = self.echelon.clone();
        for r in other.echelon.rows() {
            ech.insert(r.clone());
        }
        Ok(Self::from_echelon(ctx, self.arity, ech))
    }

    /// Intersection via the Zassenhaus construction over F_p.
    pub fn intersect(&self, ctx: &FieldCtx, other: &Subspace) -> Result<Subspace> {
        self.check_arity(other)?;
        let w = self.arity * ctx.degree();
        let mut z = Echelon::new(ctx.p(), 2 * w);
        for r in self.echelon.rows() {
            let mut row = r.clone();
            row.extend_from_slice(r);
            z.insert(row);
        }
        for r in other.echelon.rows() {
            let mut row = r.clone();
            row.extend(std::iter::repeat(0).take(w));
            z.insert(row);
        }
        let mut ech = Echelon::new(ctx.p(), w);
        for row in z.rows() {
            if row[..w].iter().all(|&x| x == 0) {
                ech.insert(row[w..].to_vec());
            }
        }
        Ok(Self::from_echelon(ctx, self.arity, ech))
    }

    fn check_arity(&self, other: &Subspace) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    /// Number of vectors, q^dim.
    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        (ctx.q() as u64).pow(self.dim() as u32)
    }

    /// All q^dim vectors, lexicographic in the F_q-coefficient tuple of the
    /// basis combination (first coefficient most significant).
    pub fn vectors(&self, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
        let q = ctx.q() as usize;
        let sub = ctx.subfield();
        let d = self.dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; d];
        for _ in 0..total {
            let mut v = vec![Elem::ZERO; self.arity];
            for (b, &di) in self.basis.iter().zip(&digits) {
                if di == 0 {
                    continue;
                }
                let l = sub[di];
                for (x, &bx) in v.iter_mut().zip(b) {
                    *x = ctx.add(*x, ctx.mul(l, bx));
                }
            }
            out.push(v);
            for slot in digits.iter_mut().rev() {
                *slot += 1;
                if *slot < q {
                    break;
                }
                *slot = 0;
            }
        }
        out
    }

    pub fn nonzero_vectors(&self, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
        let mut v = self.vectors(ctx);
        v.remove(0);
        v
    }

    /// Elements of an arity-1 subspace.
    pub fn elements(&self, ctx: &FieldCtx) -> Vec<Elem> {
        debug_assert_eq!(self.arity, 1);
        self.vectors(ctx).into_iter().map(|v| v[0]).collect()
    }

    /// Extends the basis to an F_q-basis of the whole ambient space using
    /// the standard vectors b·e_i; returns only the added vectors.
    pub fn complement_basis(&self, ctx: &FieldCtx) -> Vec<Vec<Elem>> {
        let mut cur = self.clone();
        let mut added = Vec::new();
        for i in 0..self.arity {
            for &b in ctx.fq_basis() {
                let mut v = vec![Elem::ZERO; self.arity];
                v[i] = b;
                if !cur.contains(ctx, &v) {
                    cur = cur
                        .sum(ctx, &Subspace::span(ctx, self.arity, &[v.clone()]).unwrap())
                        .unwrap();
                    added.push(v);
                }
            }
        }
        added
    }

    /// Serialises as the arity followed by one line per basis vector of
    /// comma-separated element integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.arity);
        for b in &self.basis {
            let line: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_text(ctx: &FieldCtx, text: &str) -> Result<Subspace> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let arity: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing arity".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("arity: {e}")))?;
        let mut vs = Vec::new();
        for line in lines {
            let v = line
                .split(',')
                .map(|t| {
                    let x: u64 = t
                        .trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
                    ctx.elem(x)
                })
                .collect::<Result<Vec<_>>>()?;
            vs.push(v);
        }
        Subspace::span(ctx, arity, &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn zero_span() {
        let f = FieldCtx::new(2, 1, 2, None).unwrap();
        let s = Subspace::span(&f, 1, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.vectors(&f), vec![vec![Elem::ZERO]]);
    }

    #[test]
    fn span_one_and_omega_is_f4() {
        let f = FieldCtx::new(2, 1, 2, None).unwrap();
        let s = Subspace::scalar_span(&f, &[Elem::ONE, f.root()]);
        assert_eq!(s.dim(), 2);
        let mut e = s.elements(&f);
        e.sort();
        assert_eq!(e, f.elements().collect::<Vec<_>>());
    }

    #[test]
    fn arity_mismatch() {
        let f = FieldCtx::new(2, 1, 2, None).unwrap();
        let err = Subspace::span(&f, 2, &[vec![Elem::ONE]]).unwrap_err();
        assert_eq!(
            err,
            Error::ArityMismatch {
                expected: 2,
                got: 1
            }
        );
        let a = Subspace::zero(&f, 1);
        let b = Subspace::zero(&f, 2);
        assert!(a.sum(&f, &b).is_err());
    }

    #[test]
    fn canonical_form_ignores_generators() {
        let f = FieldCtx::new(3, 1, 3, None).unwrap();
        let a = Subspace::scalar_span(&f, &[Elem(1), Elem(3)]);
        let b = Subspace::scalar_span(
            &f,
            &[f.add(Elem(1), Elem(3)), f.sub(Elem(1), Elem(3)), Elem(4)],
        );
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn tower_enumeration_counts() {
        let f = FieldCtx::new(2, 2, 3, None).unwrap();
        let s = Subspace::scalar_span(&f, &[Elem(5), Elem(9)]);
        assert_eq!(s.dim(), 2);
        let vs = s.vectors(&f);
        assert_eq!(vs.len(), 16);
        assert_eq!(vs.iter().collect::<HashSet<_>>().len(), 16);
        // closed under F_4 scalars
        for v in &vs {
            for &l in f.subfield() {
                assert!(s.contains(&f, &[f.mul(l, v[0])]));
            }
        }
    }

    #[test]
    fn dimension_formula_random_pairs() {
        let f = FieldCtx::new(2, 1, 6, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (ka, kb) = (rng.gen_range(0..7), rng.gen_range(0..7));
            let mut gen = |k: usize| -> Vec<Vec<Elem>> {
                (0..k)
                    .map(|_| vec![Elem(rng.gen_range(0..64)), Elem(rng.gen_range(0..64))])
                    .collect()
            };
            let a = Subspace::span(&f, 2, &gen(ka)).unwrap();
            let b = Subspace::span(&f, 2, &gen(kb)).unwrap();
            let i = a.intersect(&f, &b).unwrap();
            let s = a.sum(&f, &b).unwrap();
            assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
            assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
            assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
        }
    }

    #[test]
    fn fqn_span_has_dimension_n() {
        let f = FieldCtx::new(3, 1, 2, None).unwrap();
        let s = Subspace::fqn_span(&f, &[Elem(1), Elem(4)]);
        assert_eq!(s.dim(), 2);
        for l in f.elements() {
            assert!(s.contains(&f, &[l, f.mul(l, Elem(4))]));
        }
    }

    #[test]
    fn text_round_trip() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let s = Subspace::span(&f, 2, &[vec![Elem(1), Elem(0)], vec![Elem(3), Elem(5)]]).unwrap();
        let t = s.to_text();
        assert_eq!(Subspace::from_text(&f, &t).unwrap(), s);
    }

    #[test]
    fn complement_completes_basis() {
        let f = FieldCtx::new(2, 1, 4, None).unwrap();
        let s = Subspace::scalar_span(&f, &[Elem(3), Elem(6)]);
        let extra = s.complement_basis(&f);
        assert_eq!(extra.len(), 2);
        let mut all: Vec<Vec<Elem>> = s.basis().to_vec();
        all.extend(extra);
        assert_eq!(Subspace::span(&f, 1, &all).unwrap().dim(), 4);
    }
}
