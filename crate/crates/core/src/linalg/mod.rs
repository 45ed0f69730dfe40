//! Exact linear algebra over ℤ and over ℤ/E.
//!
//! Every module in this crate is finite, so the linear systems behind
//! cohomology live over `ℤ/E` for some exponent `E`. Those are split by the
//! Chinese remainder theorem into local problems over `ℤ/p^K`, where the
//! Smith form needs no coefficient growth: the pivot is always an entry of
//! least `p`-adic valuation, and it divides everything else.
//!
//! [`integer`] holds an arbitrary-precision Smith form over ℤ.

pub mod integer;
pub mod local;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::CohomologyError;

pub use integer::{smith_normal_form, IntSmith};
pub use local::{local_smith, LocalSmith, ModMatrix, PrimePower, SmithTracking};

/// Cooperative cancellation flag, checked once per pivot.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> CancelToken {
        CancelToken::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn check(token: Option<&CancelToken>) -> Result<(), CohomologyError> {
        match token {
            Some(t) if t.is_cancelled() => Err(CohomologyError::Cancelled),
            _ => Ok(()),
        }
    }
}

/// Prime-power factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `x ≡ 1 (mod q)`, `x ≡ 0 (mod n/q)` for a prime-power factor `q` of `n`.
pub fn crt_idempotent(q: u64, n: u64) -> u64 {
    let rest = n / q;
    if rest == 1 {
        return 1 % n;
    }
    let inv = mod_inverse(rest % q, q).expect("coprime factors");
    ((rest as u128 * inv as u128) % n as u128) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// A solution of `A·x ≡ b (mod modulus)`, or `None` if there is none.
///
/// `a` is given row-major with integer entries of any sign.
pub fn solve_mod(
    a: &[Vec<i64>],
    cols: usize,
    b: &[i64],
    modulus: u64,
    cancel: Option<&CancelToken>,
) -> Result<Option<Vec<u64>>, CohomologyError> {
    let mut x = vec![0u64; cols];
    if modulus == 1 {
        return Ok(Some(x));
    }
    for (p, k) in factorize(modulus) {
        let ring = PrimePower::new(p, k);
        let m = ModMatrix::from_signed(a, cols, ring.modulus());
        let rhs = ModMatrix::from_signed(&b.iter().map(|&v| vec![v]).collect::<Vec<_>>(), 1, ring.modulus());
        let Some(xp) = local::solve(m, rhs, ring, cancel)? else {
            return Ok(None);
        };
        let e = crt_idempotent(ring.modulus(), modulus);
        for (xi, v) in x.iter_mut().zip(xp) {
            *xi = ((*xi as u128 + v as u128 * e as u128) % modulus as u128) as u64;
        }
    }
    Ok(Some(x))
}

/// Generators of `{x : A·x ≡ 0 (mod modulus)}` as residue vectors.
pub fn kernel_mod(
    a: &[Vec<i64>],
    cols: usize,
    modulus: u64,
    cancel: Option<&CancelToken>,
) -> Result<Vec<Vec<u64>>, CohomologyError> {
    let mut gens = Vec::new();
    if modulus == 1 {
        return Ok(gens);
    }
    for (p, k) in factorize(modulus) {
        let ring = PrimePower::new(p, k);
        let m = ModMatrix::from_signed(a, cols, ring.modulus());
        let e = crt_idempotent(ring.modulus(), modulus);
        for g in local::kernel(m, ring, cancel)? {
            gens.push(g.into_iter().map(|v| ((v as u128 * e as u128) % modulus as u128) as u64).collect());
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn idempotents() {
        for n in [6u64, 12, 360] {
            for (p, k) in factorize(n) {
                let q = p.pow(k);
                let e = crt_idempotent(q, n);
                assert_eq!(e % q, 1);
                assert_eq!(e % (n / q), 0);
            }
        }
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn solve_composite() {
        // 2x + 3y ≡ 5, 4x ≡ 4 (mod 6)
        let a = vec![vec![2, 3], vec![4, 0]];
        let x = solve_mod(&a, 2, &[5, 4], 6, None).unwrap().unwrap();
        assert_eq!((2 * x[0] + 3 * x[1]) % 6, 5);
        assert_eq!((4 * x[0]) % 6, 4);
        // 2x ≡ 1 (mod 4) has no solution
        assert_eq!(solve_mod(&[vec![2]], 1, &[1], 4, None).unwrap(), None);
    }

    #[test]
    fn kernel_composite() {
        // x + y ≡ 0 (mod 12)
        let gens = kernel_mod(&[vec![1, 1]], 2, 12, None).unwrap();
        let mut span = std::collections::BTreeSet::new();
        // enumerate the span by brute force
        let mut frontier = vec![vec![0u64, 0]];
        span.insert(vec![0u64, 0]);
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w = vec![(v[0] + g[0]) % 12, (v[1] + g[1]) % 12];
                if span.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        assert_eq!(span.len(), 12);
        assert!(span.iter().all(|v| (v[0] + v[1]) % 12 == 0));
    }

    #[test]
    fn cancellation() {
        let t = CancelToken::new();
        t.cancel();
        let a = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(solve_mod(&a, 2, &[1, 1], 5, Some(&t)), Err(CohomologyError::Cancelled));
    }
}
