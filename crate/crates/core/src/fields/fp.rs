//! Prime-field helpers: modular inverses, polynomial trial division and
//! row echelon forms over F_p.

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64 % p64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `f` modulo the monic `g` (both ascending coefficient lists).
fn rem_monic(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for top in (dg..r.len()).rev() {
        let c = r[top] % p64;
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = top - dg + i;
            r[idx] = (r[idx] + (p64 - c) * gi as u64) % p64;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        let mut g = vec![0u32; d + 1];
        g[d] = 1;
        for idx in 0..count {
            let mut t = idx;
            for c in g.iter_mut().take(d) {
                *c = (t % p as u64) as u32;
                t /= p as u64;
            }
            if rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `deg`, comparing
/// the constant term first.
pub(crate) fn smallest_irreducible(deg: usize, p: u32) -> Vec<u32> {
    let total = (p as u64).pow(deg as u32);
    let mut f = vec![0u32; deg + 1];
    f[deg] = 1;
    for idx in 0..total {
        // c0 is the most significant digit of idx
        let mut t = idx;
        for i in (0..deg).rev() {
            f[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Reduced row echelon form over F_p, maintained incrementally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`, returning whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let s = inv_mod(v[c], self.p) as u64;
        for x in v.iter_mut() {
            *x = (*x as u64 * s % p) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }
}

/// Kernel of the F_p-linear map sending the i-th unit vector to `images[i]`.
pub(crate) fn kernel(p: u32, images: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = images.len();
    let w = images.first().map_or(0, |v| v.len());
    let p64 = p as u64;
    let mut rows: Vec<Vec<u32>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut r = img.clone();
            r.extend((0..m).map(|j| (i == j) as u32));
            r
        })
        .collect();
    let mut next = 0;
    for col in 0..w {
        let Some(piv) = (next..m).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(next, piv);
        let s = inv_mod(rows[next][col], p) as u64;
        for x in rows[next].iter_mut() {
            *x = (*x as u64 * s % p64) as u32;
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row[col] == 0 {
                continue;
            }
            let f = row[col] as u64;
            for (x, &r) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + (p64 - f) * r as u64) % p64) as u32;
            }
        }
        next += 1;
    }
    rows.into_iter()
        .skip(next)
        .map(|r| r[w..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_irreducibles_over_f2() {
        // X^2, X^2+1, X^2+X are reducible; only X^2+X+1 survives
        let all: Vec<_> = (0..4u32)
            .map(|i| vec![i & 1, i >> 1, 1])
            .filter(|f| is_irreducible(f, 2))
            .collect();
        assert_eq!(all, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(1, 2), vec![0, 1]);
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1, 1]);
    }

    #[test]
    fn echelon_is_canonical() {
        let mut a = Echelon::new(3, 3);
        a.insert(vec![1, 2, 0]);
        a.insert(vec![0, 1, 1]);
        let mut b = Echelon::new(3, 3);
        b.insert(vec![1, 0, 1]);
        b.insert(vec![2, 1, 0]);
        assert_eq!(a, b);
        assert!(a.contains(&[1, 0, 1]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn kernel_of_projection() {
        // (x, y, z) -> (x + z, y) over F_5 has kernel spanned by (1, 0, 4)
        let ker = kernel(5, &[vec![1, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!((v[0] + v[2]) % 5, 0);
        assert_eq!(v[1], 0);
    }
}
