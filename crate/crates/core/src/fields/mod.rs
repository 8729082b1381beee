//! Arithmetic in F_{q^n}, q = p^h, realised as a single degree-hn extension
//! of F_p. The subfield F_q is the fixed field of x -> x^q.

pub(crate) mod fp;
pub mod matrix;
mod subspace;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use subspace::Subspace;

/// Largest field order handled at all.
pub const ORDER_LIMIT: u64 = 1 << 30;
/// Fields up to this order get exp/log/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element, encoded as the integer whose base-p digits (least
/// significant first) are its coordinates in the polynomial basis.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// exp[i] = g^i, stored twice over so sums of two logs need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[d] = log(1 + g^d), odd characteristic only
    zech: Vec<u32>,
}

/// Immutable description of F_{q^n} with q = p^h.
pub struct FieldCtx {
    p: u32,
    h: usize,
    n: usize,
    degree: usize,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    subfield: Vec<Elem>,
    subfield_fp_basis: Vec<Elem>,
    fq_basis: Vec<Elem>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds F_{p^{hn}}. Without an override the modulus is the
    /// lexicographically smallest monic irreducible (constant term compared
    /// first).
    pub fn new(p: u32, h: usize, n: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        if !fp::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 || n == 0 {
            return Err(Error::DegreeMismatch {
                expected: h * n,
                got: vec![],
            });
        }
        let degree = h * n;
        let order = (p as u64)
            .checked_pow(degree as u32)
            .filter(|&o| o <= ORDER_LIMIT)
            .ok_or(Error::FieldTooLarge(u64::MAX))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree + 1 || m[degree] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        got: m.to_vec(),
                    });
                }
                if !fp::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => fp::smallest_irreducible(degree, p),
        };
        let mut ctx = FieldCtx {
            p,
            h,
            n,
            degree,
            q: p.pow(h as u32),
            order: order as u32,
            modulus,
            tables: None,
            subfield: Vec::new(),
            subfield_fp_basis: Vec::new(),
            fq_basis: Vec::new(),
        };
        if order <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.init_subfield();
        ctx.init_fq_basis();
        Ok(ctx)
    }

    /// Builds F_{q^n} from the prime power `q`.
    pub fn for_q(q: u64, n: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        let (p, h) = split_prime_power(q)?;
        FieldCtx::new(p as u32, h, n, modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn h(&self) -> usize {
        self.h
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// Degree hn over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// q^n, the number of field elements.
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The q elements of F_q, sorted by encoding.
    pub fn subfield(&self) -> &[Elem] {
        &self.subfield
    }

    /// F_p-basis of F_q (h elements).
    pub fn subfield_fp_basis(&self) -> &[Elem] {
        &self.subfield_fp_basis
    }

    /// Canonical F_q-basis of F_{q^n}, starting with 1.
    pub fn fq_basis(&self) -> &[Elem] {
        &self.fq_basis
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.order).map(Elem)
    }

    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value < self.order as u64 {
            Ok(Elem(value as u32))
        } else {
            Err(Error::InvalidElement {
                value,
                order: self.order as u64,
            })
        }
    }

    /// Coordinates over F_p, lowest power first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, digits: &[u32]) -> Elem {
        Elem(
            digits
                .iter()
                .rev()
                .fold(0u32, |acc, &d| acc * self.p + d % self.p),
        )
    }

    /// The class of X modulo the field polynomial.
    pub fn root(&self) -> Elem {
        if self.degree == 1 {
            Elem((self.p - self.modulus[0]) % self.p)
        } else {
            Elem(self.p)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                let (la, lb) = (t.log[a.0 as usize], t.log[b.0 as usize]);
                let d = (lb + m - la) % m;
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    Elem(0)
                } else {
                    Elem(t.exp[(la + z) as usize])
                }
            }
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                Elem(t.exp[((t.log[a.0 as usize] + m / 2) % m) as usize])
            }
            None => {
                let d: Vec<u32> = self
                    .coeffs(a)
                    .iter()
                    .map(|&c| (self.p - c) % self.p)
                    .collect();
                self.from_coeffs(&d)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let m = self.order - 1;
                Elem(t.exp[((m - t.log[a.0 as usize]) % m) as usize])
            }
            None => self.pow(a, self.order as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem(0);
        }
        let m = (self.order - 1) as u64;
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64 * (e % m) % m;
                Elem(t.exp[l as usize])
            }
            None => {
                let mut e = e % m;
                if e == 0 {
                    return Elem::ONE;
                }
                let mut base = a;
                let mut acc = Elem::ONE;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_slow(acc, base);
                    }
                    base = self.mul_slow(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// x^{q^e}.
    pub fn frobenius(&self, a: Elem, e: usize) -> Elem {
        let e = e % self.n;
        if e == 0 {
            return a;
        }
        self.pow(a, (self.q as u64).pow(e as u32))
    }

    /// Tr_{q^n/q}(x).
    pub fn trace(&self, a: Elem) -> Elem {
        (0..self.n).fold(Elem(0), |acc, i| self.add(acc, self.frobenius(a, i)))
    }

    pub fn in_subfield(&self, a: Elem) -> bool {
        self.frobenius(a, 1) == a
    }

    /// Multiplication by an integer (reduced mod p).
    pub fn scale_int(&self, a: Elem, k: u32) -> Elem {
        let d: Vec<u32> = self
            .coeffs(a)
            .iter()
            .map(|&c| ((c as u64 * k as u64) % self.p as u64) as u32)
            .collect();
        self.from_coeffs(&d)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem(0), |acc, x| self.add(acc, x))
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.coeffs(a), self.coeffs(b));
        let d: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_coeffs(&d)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let (da, db) = (self.coeffs(a), self.coeffs(b));
        let deg = self.degree;
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (deg..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(deg) {
                let idx = top - deg + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..deg].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&digits)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let order = self.order as u64;
        let m = order - 1;
        let factors = fp::prime_factors(m);
        let g = (1..order)
            .map(|v| Elem(v as u32))
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, m / r) != Elem::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * m as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut x = Elem::ONE;
        for i in 0..m as usize {
            exp[i] = x.0;
            exp[i + m as usize] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        let zech = if self.p == 2 {
            Vec::new()
        } else {
            (0..m as usize)
                .map(|d| {
                    let v = self.add_digits(Elem::ONE, Elem(exp[d]));
                    if v.0 == 0 {
                        NO_LOG
                    } else {
                        log[v.0 as usize]
                    }
                })
                .collect()
        };
        Tables { exp, log, zech }
    }

    fn init_subfield(&mut self) {
        // F_q = ker(x -> x^q - x), an F_p-subspace
        let images: Vec<Vec<u32>> = (0..self.degree)
            .map(|i| {
                let e = Elem(self.p.pow(i as u32));
                self.coeffs(self.sub(self.pow(e, self.q as u64), e))
            })
            .collect();
        let mut ech = fp::Echelon::new(self.p, self.degree);
        for v in fp::kernel(self.p, &images) {
            ech.insert(v);
        }
        let basis: Vec<Elem> = ech.rows().iter().map(|r| self.from_coeffs(r)).collect();
        debug_assert_eq!(basis.len(), self.h);
        let mut elems = vec![Elem(0)];
        for &b in &basis {
            let mut next = Vec::with_capacity(elems.len() * self.p as usize);
            for k in 0..self.p {
                let kb = self.scale_int(b, k);
                next.extend(elems.iter().map(|&e| self.add(e, kb)));
            }
            elems = next;
        }
        elems.sort();
        self.subfield = elems;
        self.subfield_fp_basis = basis;
    }

    fn init_fq_basis(&mut self) {
        let mut ech = fp::Echelon::new(self.p, self.degree);
        let mut basis = Vec::with_capacity(self.n);
        let omega = self.root();
        let mut cand = Elem::ONE;
        while basis.len() < self.n {
            let fresh: Vec<Vec<u32>> = self
                .subfield_fp_basis
                .iter()
                .map(|&b| self.coeffs(self.mul(b, cand)))
                .collect();
            let before = ech.rank();
            let mut trial = ech.clone();
            for v in fresh {
                trial.insert(v);
            }
            if trial.rank() == before + self.h {
                ech = trial;
                basis.push(cand);
            }
            cand = self.mul(cand, omega);
        }
        self.fq_basis = basis;
    }
}

/// V = {x : Tr(α_i x) = 0 for every α_i}. Errors when the constraints are
/// F_q-dependent, i.e. V is larger than n - |alphas|.
pub fn trace_kernel_subspace(ctx: &FieldCtx, alphas: &[Elem]) -> Result<Subspace> {
    let v = Subspace::kernel_of(ctx, 1, |x| {
        alphas
            .iter()
            .map(|&a| ctx.trace(ctx.mul(a, x[0])))
            .collect()
    });
    let expected = ctx.n().saturating_sub(alphas.len());
    if alphas.len() > ctx.n() || v.dim() != expected {
        return Err(Error::DependentConstraints {
            expected,
            got: v.dim(),
        });
    }
    Ok(v)
}

/// Splits a prime power q into (p, h).
pub fn split_prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = fp::prime_factors(q);
    if p.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = p[0];
    let mut h = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        h += 1;
    }
    Ok((p, h))
}
