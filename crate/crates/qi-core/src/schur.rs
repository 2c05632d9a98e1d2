//! Dominant weights, partitions and Schur Laurent polynomials.
//!
//! Schur characters are built by enumerating semistandard tableaux; weights
//! with negative parts are handled by twisting with a power of the
//! determinant character, enumerating the shifted partition, and shifting
//! the exponents back.

use alloc::vec;
use alloc::vec::Vec;

use crate::character::TorusCharacter;
use crate::error::{Error, Result};

/// A weakly decreasing integer vector: a dominant weight for GL_n. Parts may
/// be negative (determinant twists).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("dominant weight parts must be weakly decreasing".into()));
        }
        Ok(DominantWeight(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight(vec![0; n])
    }

    /// All parts equal to `c` (the character of det^c).
    pub fn det_power(n: usize, c: i64) -> Self {
        DominantWeight(vec![c; n])
    }

    pub fn is_det_power(&self) -> Option<i64> {
        match self.0.first() {
            None => Some(0),
            Some(&c) if self.0.iter().all(|&x| x == c) => Some(c),
            _ => None,
        }
    }

    pub fn shifted(&self, k: i64) -> Self {
        DominantWeight(self.0.iter().map(|&x| x + k).collect())
    }
}

/// The Schur Laurent polynomial s_λ(z_1..z_n) as a single-group character.
pub fn schur_character(lambda: &DominantWeight, n: usize) -> Result<TorusCharacter> {
    if lambda.len() != n {
        return Err(Error::Invalid(alloc::format!(
            "weight has {} parts, torus rank is {n}",
            lambda.len()
        )));
    }
    let min = lambda.parts().iter().copied().min().unwrap_or(0);
    let shift = if min < 0 { -min } else { 0 };
    let shape: Vec<usize> = lambda.parts().iter().map(|&x| (x + shift) as usize).collect();
    let mut raw: Vec<(Vec<i64>, i64)> = Vec::new();
    for_each_ssyt(&shape, n, &mut |weight| {
        let exps: Vec<i64> = weight.iter().map(|&w| w as i64 - shift).collect();
        raw.push((exps, 1));
    });
    TorusCharacter::from_raw_terms(vec![n], raw)
}

/// Runs `f` on the content weight (count of each entry 1..=n) of every
/// semistandard tableau of the given shape: rows weakly increase, columns
/// strictly increase.
fn for_each_ssyt(shape: &[usize], n: usize, f: &mut dyn FnMut(&[usize])) {
    let rows: Vec<usize> = shape.iter().copied().take_while(|&r| r > 0).collect();
    if rows.is_empty() {
        f(&vec![0; n]);
        return;
    }
    if rows.len() > n {
        return; // column of height > n cannot be strictly increasing in 1..=n
    }
    let mut weight = vec![0usize; n];
    let mut prev_row: Vec<usize> = Vec::new();
    fill_row(&rows, 0, n, &mut prev_row, &mut weight, f);

    fn fill_row(
        rows: &[usize],
        r: usize,
        n: usize,
        prev_row: &mut Vec<usize>,
        weight: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if r == rows.len() {
            f(weight);
            return;
        }
        let len = rows[r];
        let mut cur = vec![0usize; len];
        fill_cell(rows, r, 0, n, prev_row, &mut cur, weight, f);

        #[allow(clippy::too_many_arguments)]
        fn fill_cell(
            rows: &[usize],
            r: usize,
            c: usize,
            n: usize,
            prev_row: &mut Vec<usize>,
            cur: &mut Vec<usize>,
            weight: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if c == cur.len() {
                let saved = core::mem::replace(prev_row, cur.clone());
                fill_row(rows, r + 1, n, prev_row, weight, f);
                *prev_row = saved;
                return;
            }
            let mut lo = 1;
            if c > 0 {
                lo = lo.max(cur[c - 1]);
            }
            if r > 0 {
                lo = lo.max(prev_row[c] + 1);
            }
            for v in lo..=n {
                cur[c] = v;
                weight[v - 1] += 1;
                fill_cell(rows, r, c + 1, n, prev_row, cur, weight, f);
                weight[v - 1] -= 1;
            }
        }
    }
}

/// Number of semistandard tableaux of `shape` with entries in 1..=n, i.e.
/// s_shape(1,...,1).
pub fn ssyt_count(shape: &[usize], n: usize) -> u64 {
    let mut count = 0u64;
    for_each_ssyt(shape, n, &mut |_| count += 1);
    count
}

/// All partitions of `t` in weakly decreasing order, largest-first ordering.
pub fn partitions(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    go(t, t, &mut cur, &mut out);
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(rem)).rev() {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    out
}

/// Conjugate (transpose) partition.
pub fn conjugate(shape: &[usize]) -> Vec<usize> {
    let cols = shape.first().copied().unwrap_or(0);
    (1..=cols)
        .map(|c| shape.iter().filter(|&&r| r >= c).count())
        .collect()
}
