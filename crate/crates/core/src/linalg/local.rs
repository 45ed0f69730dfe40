//! Smith normal form over the local ring `ℤ/p^K`.

use crate::error::CohomologyError;

use super::{mod_inverse, CancelToken};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    k: u32,
    m: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> PrimePower {
        assert!(k >= 1);
        PrimePower { p, k, m: p.checked_pow(k).expect("modulus overflow") }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `p`-adic valuation of a residue; `K` for zero.
    pub fn valuation(&self, mut x: u64) -> u32 {
        x %= self.m;
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    /// `a - c·b`.
    #[inline]
    fn sub_mul(&self, a: u64, c: u64, b: u64) -> u64 {
        let cb = self.mul(c, b);
        if a >= cb {
            a - cb
        } else {
            a + self.m - cb
        }
    }

    #[inline]
    fn add_mul(&self, a: u64, c: u64, b: u64) -> u64 {
        let s = a as u128 + self.mul(c, b) as u128;
        (s % self.m as u128) as u64
    }
}

/// Dense row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: Vec<Vec<u64>>,
    pub cols: usize,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ModMatrix {
        ModMatrix { rows: vec![vec![0; cols]; rows], cols }
    }

    pub fn identity(n: usize) -> ModMatrix {
        let mut m = ModMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn from_signed(a: &[Vec<i64>], cols: usize, modulus: u64) -> ModMatrix {
        let rows = a
            .iter()
            .map(|r| {
                debug_assert_eq!(r.len(), cols);
                r.iter().map(|&x| x.rem_euclid(modulus as i64) as u64).collect()
            })
            .collect();
        ModMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn mul_vec(&self, x: &[u64], modulus: u64) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| (r.iter().zip(x).map(|(&a, &b)| a as u128 * b as u128).sum::<u128>() % modulus as u128) as u64)
            .collect()
    }
}

/// Which transforms to record alongside the diagonal.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmithTracking {
    pub v: bool,
    pub v_inv: bool,
    pub u_inv: bool,
}

/// `U·A·V = diag(p^{v₀}, p^{v₁}, …, 0, …)` with `v₀ ≤ v₁ ≤ …`.
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub ring: PrimePower,
    /// Valuations of the nonzero diagonal entries, nondecreasing.
    pub valuations: Vec<u32>,
    pub rows: usize,
    pub cols: usize,
    pub v: Option<ModMatrix>,
    pub v_inv: Option<ModMatrix>,
    pub u_inv: Option<ModMatrix>,
}

impl LocalSmith {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }
}

/// Smith form of `a` over `ℤ/p^K`. Row operations are also applied to `rhs`
/// (which must have as many rows as `a`), so `rhs` ends up as `U·rhs`.
pub fn local_smith(
    mut a: ModMatrix,
    ring: PrimePower,
    track: SmithTracking,
    mut rhs: Option<&mut ModMatrix>,
    cancel: Option<&CancelToken>,
) -> Result<LocalSmith, CohomologyError> {
    let nrows = a.nrows();
    let ncols = a.cols;
    let mut v = track.v.then(|| ModMatrix::identity(ncols));
    let mut v_inv = track.v_inv.then(|| ModMatrix::identity(ncols));
    let mut u_inv = track.u_inv.then(|| ModMatrix::identity(nrows));
    let mut valuations = Vec::new();
    let m = ring.modulus();

    for t in 0..nrows.min(ncols) {
        CancelToken::check(cancel)?;
        // entry of least valuation in the trailing block
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..nrows {
            let row = &a.rows[i];
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let val = ring.valuation(x);
                    if best.is_none_or(|(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };

        if pi != t {
            a.rows.swap(pi, t);
            if let Some(r) = rhs.as_deref_mut() {
                r.rows.swap(pi, t);
            }
            if let Some(ui) = u_inv.as_mut() {
                for row in ui.rows.iter_mut() {
                    row.swap(pi, t);
                }
            }
        }
        if pj != t {
            for row in a.rows.iter_mut() {
                row.swap(pj, t);
            }
            if let Some(vm) = v.as_mut() {
                for row in vm.rows.iter_mut() {
                    row.swap(pj, t);
                }
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.rows.swap(pj, t);
            }
        }

        // normalize the pivot to exactly p^val
        let pv = ring.pow(val);
        let unit = a.rows[t][t] / pv;
        if unit != 1 {
            let s = mod_inverse(unit % m, m).expect("unit");
            for x in a.rows[t].iter_mut().skip(t) {
                *x = ring.mul(*x, s);
            }
            if let Some(r) = rhs.as_deref_mut() {
                for x in r.rows[t].iter_mut() {
                    *x = ring.mul(*x, s);
                }
            }
            if let Some(ui) = u_inv.as_mut() {
                let u = unit % m;
                for row in ui.rows.iter_mut() {
                    row[t] = ring.mul(row[t], u);
                }
            }
        }

        // clear column t below the pivot
        let (head, tail) = a.rows.split_at_mut(t + 1);
        let pivot_row = &head[t];
        for (off, row) in tail.iter_mut().enumerate() {
            let x = row[t];
            if x == 0 {
                continue;
            }
            let c = x / pv;
            for j in t..ncols {
                if pivot_row[j] != 0 {
                    row[j] = ring.sub_mul(row[j], c, pivot_row[j]);
                }
            }
            let i = t + 1 + off;
            if let Some(r) = rhs.as_deref_mut() {
                let (rh, rt) = r.rows.split_at_mut(i);
                for (dst, &src) in rt[0].iter_mut().zip(&rh[t]) {
                    *dst = ring.sub_mul(*dst, c, src);
                }
            }
            if let Some(ui) = u_inv.as_mut() {
                for urow in ui.rows.iter_mut() {
                    urow[t] = ring.add_mul(urow[t], c, urow[i]);
                }
            }
        }

        // clear row t right of the pivot; only row t changes in `a`
        for j in t + 1..ncols {
            let x = a.rows[t][j];
            if x == 0 {
                continue;
            }
            let c = x / pv;
            a.rows[t][j] = 0;
            if let Some(vm) = v.as_mut() {
                for row in vm.rows.iter_mut() {
                    row[j] = ring.sub_mul(row[j], c, row[t]);
                }
            }
            if let Some(vi) = v_inv.as_mut() {
                let (lo, hi) = vi.rows.split_at_mut(j);
                let src = &hi[0];
                for (dst, &s) in lo[t].iter_mut().zip(src) {
                    *dst = ring.add_mul(*dst, c, s);
                }
            }
        }
        valuations.push(val);
    }

    Ok(LocalSmith { ring, valuations, rows: nrows, cols: ncols, v, v_inv, u_inv })
}

/// A solution of `A·x = b` over `ℤ/p^K` (`b` a single column).
pub fn solve(
    a: ModMatrix,
    mut b: ModMatrix,
    ring: PrimePower,
    cancel: Option<&CancelToken>,
) -> Result<Option<Vec<u64>>, CohomologyError> {
    let ncols = a.cols;
    let s = local_smith(a, ring, SmithTracking { v: true, ..Default::default() }, Some(&mut b), cancel)?;
    let ub: Vec<u64> = b.rows.iter().map(|r| r[0]).collect();
    let mut y = vec![0u64; ncols];
    for (t, &val) in s.valuations.iter().enumerate() {
        if ring.valuation(ub[t]) < val {
            return Ok(None);
        }
        y[t] = ub[t] / ring.pow(val);
    }
    if ub[s.rank()..].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(s.v.unwrap().mul_vec(&y, ring.modulus())))
}

/// Generators of the kernel of `A` over `ℤ/p^K`.
pub fn kernel(a: ModMatrix, ring: PrimePower, cancel: Option<&CancelToken>) -> Result<Vec<Vec<u64>>, CohomologyError> {
    let ncols = a.cols;
    let s = local_smith(a, ring, SmithTracking { v: true, ..Default::default() }, None, cancel)?;
    let v = s.v.unwrap();
    let k = ring.exponent();
    let mut gens = Vec::new();
    for t in 0..ncols {
        let val = s.valuations.get(t).copied().unwrap_or(k);
        if val == 0 {
            continue;
        }
        let scale = ring.pow(k - val);
        gens.push(v.column(t).into_iter().map(|x| ring.mul(x, scale)).collect());
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn matmul(a: &ModMatrix, b: &ModMatrix, m: u64) -> ModMatrix {
        let rows = a
            .rows
            .iter()
            .map(|r| {
                (0..b.cols)
                    .map(|j| (r.iter().enumerate().map(|(l, &x)| x as u128 * b.rows[l][j] as u128).sum::<u128>() % m as u128) as u64)
                    .collect()
            })
            .collect();
        ModMatrix { rows, cols: b.cols }
    }

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize, m: u64) -> ModMatrix {
        ModMatrix { rows: (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..m) * rng.gen_range(0..2)).collect()).collect(), cols: c }
    }

    #[test]
    fn transforms_diagonalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, k) in &[(2u64, 3u32), (3, 2), (5, 1), (2, 1)] {
            let ring = PrimePower::new(p, k);
            let m = ring.modulus();
            for _ in 0..40 {
                let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
                let a = random(&mut rng, r, c, m);
                let mut u = ModMatrix::identity(r);
                let s = local_smith(
                    a.clone(),
                    ring,
                    SmithTracking { v: true, v_inv: true, u_inv: true },
                    Some(&mut u),
                    None,
                )
                .unwrap();
                let v = s.v.as_ref().unwrap();
                let d = matmul(&matmul(&u, &a, m), v, m);
                for i in 0..r {
                    for j in 0..c {
                        let expect = if i == j && i < s.rank() { ring.pow(s.valuations[i]) } else { 0 };
                        assert_eq!(d.rows[i][j], expect % m);
                    }
                }
                assert!(s.valuations.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(matmul(v, s.v_inv.as_ref().unwrap(), m), ModMatrix::identity(c));
                assert_eq!(matmul(&u, s.u_inv.as_ref().unwrap(), m), ModMatrix::identity(r));
            }
        }
    }

    #[test]
    fn solve_and_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ring = PrimePower::new(2, 3);
        let m = ring.modulus();
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let a = random(&mut rng, r, c, m);
            let x: Vec<u64> = (0..c).map(|_| rng.gen_range(0..m)).collect();
            let b = a.mul_vec(&x, m);
            let bm = ModMatrix { rows: b.iter().map(|&v| vec![v]).collect(), cols: 1 };
            let sol = solve(a.clone(), bm, ring, None).unwrap().expect("consistent system");
            assert_eq!(a.mul_vec(&sol, m), b);
            for g in kernel(a.clone(), ring, None).unwrap() {
                assert!(a.mul_vec(&g, m).iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn kernel_is_complete() {
        // brute force the kernel size on small matrices over Z/4
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ring = PrimePower::new(2, 2);
        for _ in 0..30 {
            let a = random(&mut rng, 3, 3, 4);
            let brute = (0..64u64)
                .filter(|&n| a.mul_vec(&[n % 4, n / 4 % 4, n / 16], 4).iter().all(|&v| v == 0))
                .count();
            let s = local_smith(a, ring, SmithTracking::default(), None, None).unwrap();
            // |ker| = ∏ over columns of p^{valuation}, zero columns contributing p^K
            let size: u64 = (0..3).map(|t| 2u64.pow(s.valuations.get(t).copied().unwrap_or(2))).product();
            assert_eq!(brute as u64, size);
        }
    }
}
