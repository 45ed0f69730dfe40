//! Smith normal form over ℤ with arbitrary-precision entries.
//!
//! Pivots are chosen with least nonzero absolute value to keep entries small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::CohomologyError;

use super::CancelToken;

/// `U·A·V = diag(d₁, …, d_r, 0, …)` with `d₁ | d₂ | … | d_r`, all positive.
#[derive(Clone, Debug)]
pub struct IntSmith {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl IntSmith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal entries other than 1: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn add_row(m: &mut [Vec<BigInt>], dst: usize, src: usize, c: &BigInt) {
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn add_col(m: &mut [Vec<BigInt>], dst: usize, src: usize, c: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let y = &row[src] * c;
            row[dst] += y;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of an integer matrix given row-major.
pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize, cancel: Option<&CancelToken>) -> Result<IntSmith, CohomologyError> {
    let rows = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            CancelToken::check(cancel)?;
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diagonal, u, v);
            };
            m.swap(pi, t);
            u.swap(pi, t);
            swap_cols(&mut m, pj, t);
            swap_cols(&mut v, pj, t);

            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = -m[i][t].div_floor(&m[t][t]);
                add_row(&mut m, i, t, &q);
                add_row(&mut u, i, t, &q);
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = -m[t][j].div_floor(&m[t][t]);
                add_col(&mut m, j, t, &q);
                add_col(&mut v, j, t, &q);
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut m, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diagonal.push(m[t][t].clone());
    }
    finish(diagonal, u, v)
}

fn finish(diagonal: Vec<BigInt>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>) -> Result<IntSmith, CohomologyError> {
    Ok(IntSmith { diagonal, u, v })
}
