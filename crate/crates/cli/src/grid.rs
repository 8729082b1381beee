//! Parameter grids, instance caps and the exhaustive/random mode switch.

use linset_core::sample::gaussian_binomial;
use linset_core::FieldCtx;

use crate::{Common, Failure};

pub const DEFAULT_CAP: u128 = 10_000_000;

/// The instance cap, from LINSET_CAP when set.
pub fn cap() -> Result<u128, Failure> {
    match std::env::var("LINSET_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("LINSET_CAP={v} is not a number"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { count: u64, seed: u64 },
}

impl Mode {
    pub fn label(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Random { count, seed } => format!("random {count} per cell, seed {seed}"),
        }
    }
}

/// Random mode when asked for (a seed is mandatory), otherwise exhaustive
/// provided the enumeration fits under the cap.
pub fn mode(c: &Common, exhaustive_count: u128) -> Result<Mode, Failure> {
    if let Some(count) = c.random {
        let seed = c
            .seed
            .ok_or_else(|| Failure::Usage("--random needs an explicit --seed".into()))?;
        return Ok(Mode::Random { count, seed });
    }
    let cap = cap()?;
    if exhaustive_count <= cap {
        return Ok(Mode::Exhaustive);
    }
    let e = linset_core::Error::CapExceeded {
        count: exhaustive_count,
        cap,
    };
    if c.exhaustive {
        Err(e.into())
    } else {
        Err(Failure::Usage(format!("{e}; use --random N --seed S")))
    }
}

pub fn field(c: &Common, q: u64, n: usize) -> Result<FieldCtx, Failure> {
    Ok(FieldCtx::for_q(q, n, c.modulus.as_deref())?)
}

pub fn n_list(c: &Common) -> Result<&[usize], Failure> {
    if c.n.is_empty() {
        return Err(Failure::Usage("--n is required".into()));
    }
    Ok(&c.n)
}

pub fn single<T: Copy>(xs: &[T], name: &str) -> Result<T, Failure> {
    match xs {
        [x] => Ok(*x),
        _ => Err(Failure::Usage(format!(
            "--{name} takes a single value here"
        ))),
    }
}

/// One (q, n, k) combination.
pub struct Cell {
    pub ctx: FieldCtx,
    pub q: u64,
    pub n: usize,
    pub k: usize,
}

impl Cell {
    /// Seed of the ChaCha streams for this cell, so a cell draws the same
    /// instances whatever else is in the grid.
    pub fn seed(&self, seed: u64) -> u64 {
        seed ^ (self.q << 40 | (self.n as u64) << 20 | self.k as u64)
    }
}

/// All cells of the grid with `ranks(n)` as the default rank list; ranks
/// outside `admissible(n)` are skipped and listed.
pub fn cells(
    c: &Common,
    ranks: impl Fn(usize) -> Vec<usize>,
    admissible: impl Fn(usize, usize) -> bool,
) -> Result<(Vec<Cell>, Vec<String>), Failure> {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for &q in &c.q {
        for &n in n_list(c)? {
            let ks = if c.k.is_empty() {
                ranks(n)
            } else {
                c.k.clone()
            };
            for k in ks {
                if !admissible(n, k) {
                    skipped.push(format!("q={q} n={n} k={k}"));
                    continue;
                }
                out.push(Cell {
                    ctx: field(c, q, n)?,
                    q,
                    n,
                    k,
                });
            }
        }
    }
    Ok((out, skipped))
}

/// Number of (V, f) pairs with dim V = k: subspaces times maps.
pub fn graph_count(q: u64, n: usize, k: usize) -> u128 {
    let maps = (q as u128).checked_pow((n * k) as u32).unwrap_or(u128::MAX);
    gaussian_binomial(n, k, q).saturating_mul(maps)
}
