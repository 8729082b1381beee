//! Random and exhaustive generation of subspaces and F_q-linear maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldCtx, Subspace};
use crate::linearized::LinPoly;

/// The generator for instance `index` of a seeded sweep. Each instance
/// gets its own ChaCha stream, so results do not depend on scheduling.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_elem<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> Elem {
    Elem(rng.gen_range(0..ctx.order()))
}

/// k random vectors of F_{q^n}^r, redrawn until they are F_q-independent.
pub fn random_subspace<R: Rng>(
    ctx: &FieldCtx,
    r: usize,
    k: usize,
    rng: &mut R,
) -> Result<Subspace> {
    if k > r * ctx.n() {
        return Err(Error::RankOutOfRange {
            k,
            min: 0,
            max: r * ctx.n(),
        });
    }
    loop {
        let gens: Vec<Vec<Elem>> = (0..k)
            .map(|_| (0..r).map(|_| random_elem(ctx, rng)).collect())
            .collect();
        let s = Subspace::span(ctx, r, &gens)?;
        if s.dim() == k {
            return Ok(s);
        }
    }
}

/// Uniform coefficients c_0..c_{n-1}.
pub fn random_linpoly<R: Rng>(ctx: &FieldCtx, rng: &mut R) -> LinPoly {
    LinPoly::new((0..ctx.n()).map(|_| random_elem(ctx, rng)).collect())
}

/// Number of k-dimensional subspaces of F_q^m.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> u128 {
    if k > m {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((m - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// F_{q^n}^r vector from F_q-coordinates with respect to the fixed F_q-basis.
fn from_fq_coords(ctx: &FieldCtx, r: usize, c: &[Elem]) -> Vec<Elem> {
    let n = ctx.n();
    (0..r)
        .map(|j| {
            ctx.sum(
                ctx.fq_basis()
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| ctx.mul(c[j * n + i], b)),
            )
        })
        .collect()
}

/// Calls `visit` with a basis of every k-dimensional F_q-subspace of
/// F_{q^n}^r, walking reduced echelon forms over F_q in a fixed order.
pub fn for_each_subspace<F: FnMut(&[Vec<Elem>])>(ctx: &FieldCtx, r: usize, k: usize, mut visit: F) {
    let m = r * ctx.n();
    if k > m {
        return;
    }
    let sub = ctx.subfield().to_vec();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row, col) with col > pivot[row], col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|row| {
                let pv = &pivots;
                (pv[row] + 1..m)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![Elem::ZERO; m]; k];
            for (row, &p) in pivots.iter().enumerate() {
                rows[row][p] = Elem::ONE;
            }
            for (&(row, col), &d) in free.iter().zip(&digits) {
                rows[row][col] = sub[d];
            }
            let basis: Vec<Vec<Elem>> = rows.iter().map(|c| from_fq_coords(ctx, r, c)).collect();
            visit(&basis);
            if !odometer(&mut digits, sub.len()) {
                break;
            }
        }
        if !next_combination(&mut pivots, m) {
            break;
        }
    }
}

fn odometer(d: &mut [usize], base: usize) -> bool {
    for x in d.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every k-dimensional F_q-subspace of F_{q^n}^r.
pub fn all_subspaces(ctx: &FieldCtx, r: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for_each_subspace(ctx, r, k, |b| {
        out.push(Subspace::span(ctx, r, b).expect("arity r"))
    });
    out
}

/// All F_q-linear maps V → F_{q^n}, indexed by the images of V's basis.
/// Each map is extended by zero on a fixed complement and returned as the
/// interpolating linearized polynomial of symbolic degree < n.
pub struct LinearMaps {
    basis: Vec<Elem>,
    k: usize,
    order: u64,
}

impl LinearMaps {
    pub fn new(ctx: &FieldCtx, v: &Subspace) -> LinearMaps {
        let mut basis: Vec<Elem> = v.basis().iter().map(|b| b[0]).collect();
        basis.extend(v.complement_basis(ctx).iter().map(|b| b[0]));
        LinearMaps {
            basis,
            k: v.dim(),
            order: ctx.order() as u64,
        }
    }

    pub fn len(&self) -> u64 {
        self.order.pow(self.k as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, ctx: &FieldCtx, mut index: u64) -> LinPoly {
        let mut images = vec![Elem::ZERO; self.basis.len()];
        for img in images.iter_mut().take(self.k) {
            *img = Elem((index % self.order) as u32);
            index /= self.order;
        }
        LinPoly::interpolate(ctx, &self.basis, &images).expect("basis of F_{q^n}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for (p, h, n, r) in [(2, 1, 2, 2), (3, 1, 2, 1), (2, 2, 2, 1), (2, 1, 3, 1)] {
            let f = FieldCtx::new(p, h, n, None).unwrap();
            for k in 0..=r * n {
                let all = all_subspaces(&f, r, k);
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(|s| s.dim() == k));
                assert_eq!(all.len() as u128, gaussian_binomial(r * n, k, f.q() as u64));
            }
        }
    }

    #[test]
    fn linear_maps_hit_every_assignment() {
        let f = FieldCtx::new(2, 1, 3, None).unwrap();
        let v = all_subspaces(&f, 1, 2)[3].clone();
        let maps = LinearMaps::new(&f, &v);
        assert_eq!(maps.len(), 64);
        let mut seen = HashSet::new();
        for i in 0..maps.len() {
            let l = maps.get(&f, i);
            assert!(l.degree().map_or(true, |d| d < 3));
            let vals: Vec<Elem> = v.elements(&f).iter().map(|&x| l.eval(&f, x)).collect();
            seen.insert(vals);
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn seeded_streams_are_stable() {
        let f = FieldCtx::new(3, 1, 3, None).unwrap();
        let a = random_subspace(&f, 2, 3, &mut instance_rng(42, 7)).unwrap();
        let b = random_subspace(&f, 2, 3, &mut instance_rng(42, 7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 3);
    }
}
