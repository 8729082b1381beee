//! Dense Gaussian elimination over F_{q^n}.

use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// Row-reduces `rows` in place and returns the rank.
pub fn row_reduce(ctx: &FieldCtx, rows: &mut [Vec<Elem>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = ctx.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = ctx.mul(*x, s);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = ctx.sub(*x, ctx.mul(f, p));
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(ctx: &FieldCtx, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(ctx, &mut m)
}

/// Solves the square system `a · x = b`.
pub fn solve(ctx: &FieldCtx, a: &[Vec<Elem>], b: &[Elem]) -> Result<Vec<Elem>> {
    let n = a.len();
    let mut aug: Vec<Vec<Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let r = row_reduce(ctx, &mut aug);
    if r < n
        || aug
            .iter()
            .take(n)
            .enumerate()
            .any(|(i, row)| row[i] != Elem::ONE)
    {
        return Err(Error::DependentVectors);
    }
    Ok(aug.iter().map(|row| row[n]).collect())
}
