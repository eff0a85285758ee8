//! Exact rank over ℚ by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Q;

/// Scale a rational vector by the lcm of its denominators.
fn integral(v: &[Q]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    v.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

/// Rank of the matrix whose rows are `vectors` (all of equal length).
pub fn rank(vectors: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .map(|v| integral(v))
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let num = &prow[col] * &row[j] - &lead * &prow[j];
                row[j] = num / &prev;
            }
        }
        prev = a[r][col].clone();
        r += 1;
    }
    r
}

/// `Some(c)` with `b = c·a` and `c ≠ 0`, when both are nonzero and proportional.
pub fn proportionality(a: &[Q], b: &[Q]) -> Option<Q> {
    if a.len() != b.len() {
        return None;
    }
    let k = a.iter().position(|c| !c.is_zero())?;
    let c = &b[k] / &a[k];
    if c.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| &(x * &c) == y).then_some(c)
}
