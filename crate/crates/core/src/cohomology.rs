//! Group cohomology of finite groups with coefficients in finite modules and
//! in ℚ/ℤ.
//!
//! # Finite coefficients
//!
//! A finite module `M = ⊕ ℤ/dᵢ` splits into `p`-primary parts, each stable
//! under the action, and `Hⁿ(G; M) = ⊕_p Hⁿ(G; M_p)`. On a primary part every
//! lifted cochain group is `(ℤ/p^K)^N` modulo the relations `p^{eᵢ}·eᵢ`, so
//! cocycles are the kernel of the row-scaled differential over `ℤ/p^K`
//! and the quotient by coboundaries is read off a second Smith form.
//!
//! # ℚ/ℤ coefficients
//!
//! The multiplicative group of an algebraically closed field of
//! characteristic zero is modeled by its torsion ℚ/ℤ, which carries every
//! cohomology class of a finite group. For `n ≥ 1`,
//! `Hⁿ(G; ℚ/ℤ) ≅ H^{n+1}(G; ℤ)`, the torsion of the cokernel of the
//! integral differential `dⁿ`. Its exponent divides `|G|`, so the local Smith
//! forms at `p^{v_p(|G|)+1}` determine it; the computation is repeated with
//! every exponent raised by one and the two answers must agree.
//!
//! Solving `dβ = z` in ℚ/ℤ for `z` with denominators dividing `M` happens
//! over `ℤ/(M·|G|)`: any ℚ/ℤ-solution can be corrected by a coboundary to one
//! with denominators dividing `M·|G|`.

use std::sync::Arc;

use crate::abelian::{AbelianGroup, GroupAction};
use crate::cochain::{faces, index_tuple, tuple_count, Cochain, QzCochain};
use crate::error::CohomologyError;
use crate::group::FiniteGroup;
use crate::linalg::{crt_idempotent, factorize, local_smith, CancelToken, ModMatrix, PrimePower, SmithTracking};
use crate::qz::Qz;

/// Highest supported cohomological degree.
pub const MAX_DEGREE: usize = 4;

/// Default bound on the number of rows of a differential matrix.
pub const DEFAULT_MAX_ROWS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct CohomologyOptions {
    pub max_rows: usize,
    pub cancel: Option<CancelToken>,
    /// Compute representative cocycles for the generators.
    pub generators: bool,
}

impl Default for CohomologyOptions {
    fn default() -> Self {
        CohomologyOptions { max_rows: DEFAULT_MAX_ROWS, cancel: None, generators: true }
    }
}

/// A finite abelian group `Hⁿ`, with representatives when requested.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    /// `d₁ | d₂ | …`, each at least 2; empty for the trivial group.
    pub invariant_factors: Vec<u64>,
    /// One cocycle per invariant factor, generating the matching cyclic summand.
    pub generators: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// The `p`-primary part of a module, as `⊕ ℤ/p^{eᵢ}` over `ℤ/p^K`.
struct PrimaryPart {
    ring: PrimePower,
    /// Components of the module that survive at this prime.
    components: Vec<usize>,
    exps: Vec<u32>,
    /// Action matrices over the primary part, one per group element.
    mats: Vec<Vec<Vec<u64>>>,
}

impl PrimaryPart {
    fn rank(&self) -> usize {
        self.components.len()
    }

    fn split(action: &GroupAction) -> Vec<PrimaryPart> {
        let a = action.target();
        let f = a.factors();
        let mut parts = Vec::new();
        for (p, _) in factorize(a.exponent()) {
            let mut components = Vec::new();
            let mut exps = Vec::new();
            for (i, &d) in f.iter().enumerate() {
                let mut e = 0;
                let mut x = d;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                if e > 0 {
                    components.push(i);
                    exps.push(e);
                }
            }
            let kmax = *exps.iter().max().unwrap();
            let ring = PrimePower::new(p, kmax);
            // image of the i-th primary basis vector, projected back
            let mats = action
                .source()
                .elements()
                .map(|g| {
                    let mut m = vec![vec![0u64; components.len()]; components.len()];
                    for (ci, &i) in components.iter().enumerate() {
                        let mut v = a.zero();
                        v[i] = crt_idempotent(p.pow(exps[ci]), f[i]);
                        let w = action.act(g, &v);
                        for (cj, &j) in components.iter().enumerate() {
                            m[cj][ci] = w[j] % p.pow(exps[cj]);
                        }
                    }
                    m
                })
                .collect();
            parts.push(PrimaryPart { ring, components, exps, mats });
        }
        parts
    }

    /// Lifted coordinates of a cochain's primary projection.
    fn project(&self, c: &Cochain) -> Vec<u64> {
        let k = self.rank();
        let mut out = vec![0; c.len() * k];
        for t in 0..c.len() {
            let v = c.at(t);
            for (ci, &i) in self.components.iter().enumerate() {
                out[t * k + ci] = v[i] % self.ring.pow(self.exps[ci]);
            }
        }
        out
    }

    /// Adds the embedding of primary coordinates into a module cochain.
    fn embed_into(&self, coords: &[u64], target: &mut Cochain) {
        let k = self.rank();
        let f = target.action().target().factors().to_vec();
        let p = self.ring.prime();
        for t in 0..target.len() {
            let mut v = target.at(t).to_vec();
            for (ci, &i) in self.components.iter().enumerate() {
                let e = crt_idempotent(p.pow(self.exps[ci]), f[i]);
                let x = coords[t * k + ci] % p.pow(self.exps[ci]);
                v[i] = ((v[i] as u128 + x as u128 * e as u128) % f[i] as u128) as u64;
            }
            target.set_at(t, &v);
        }
    }

    /// Differential `C^{n} → C^{n+1}` on lifted coordinates; when `scaled`,
    /// row `(t, j)` is multiplied by `p^{K − e_j}` so that its kernel mod `p^K`
    /// is exactly the cocycle lattice.
    fn differential(&self, group: &FiniteGroup, degree: usize, scaled: bool) -> ModMatrix {
        let k = self.rank();
        let order = group.order();
        let rows = tuple_count(order, degree + 1) * k;
        let cols = tuple_count(order, degree) * k;
        let m = self.ring.modulus();
        let kk = self.ring.exponent();
        let mut out = ModMatrix::zeros(rows, cols);
        for t in 0..tuple_count(order, degree + 1) {
            let tuple = index_tuple(order, degree + 1, t);
            for face in faces(group, &tuple) {
                for j in 0..k {
                    let row = &mut out.rows[t * k + j];
                    for i in 0..k {
                        let entry: i64 = match face.acting {
                            Some(g) => self.mats[g][j][i] as i64,
                            None => i64::from(i == j),
                        } * face.sign;
                        if entry != 0 {
                            let col = face.index * k + i;
                            row[col] = ((row[col] as i128 + entry as i128).rem_euclid(m as i128)) as u64;
                        }
                    }
                }
            }
            if scaled {
                for j in 0..k {
                    let s = self.ring.pow(kk - self.exps[j]);
                    if s != 1 {
                        for x in out.rows[t * k + j].iter_mut() {
                            *x = ((*x as u128 * s as u128) % m as u128) as u64;
                        }
                    }
                }
            }
        }
        out
    }
}

fn check_rows(order: usize, degree: usize, rank: usize, opts: &CohomologyOptions) -> Result<(), CohomologyError> {
    let rows = tuple_count(order, degree + 1).saturating_mul(rank.max(1));
    if rows > opts.max_rows {
        return Err(CohomologyError::SizeBound { rows, bound: opts.max_rows });
    }
    Ok(())
}

/// Elementary divisors `p^e` of one primary part, with generator coordinates.
struct PrimaryCohomology {
    p: u64,
    exps: Vec<u32>,
    gens: Vec<Vec<u64>>,
}

fn primary_cohomology(
    part: &PrimaryPart,
    group: &FiniteGroup,
    degree: usize,
    opts: &CohomologyOptions,
) -> Result<PrimaryCohomology, CohomologyError> {
    let ring = part.ring;
    let m = ring.modulus();
    let kk = ring.exponent();
    let k = part.rank();
    let cancel = opts.cancel.as_ref();
    let n_cols = tuple_count(group.order(), degree) * k;

    // cocycles: y = V⁻¹x with p^{v_t}·y_t = 0
    let scaled = part.differential(group, degree, true);
    let zs = local_smith(scaled, ring, SmithTracking { v: true, v_inv: true, u_inv: false }, None, cancel)?;
    let v = zs.v.unwrap();
    let v_inv = zs.v_inv.unwrap();
    let val_of = |t: usize| zs.valuations.get(t).copied().unwrap_or(kk);
    let coords: Vec<usize> = (0..n_cols).filter(|&t| val_of(t) > 0).collect();

    // coboundaries and module relations, written in cocycle coordinates
    let mut columns: Vec<Vec<u64>> = Vec::new();
    let to_w = |y: &[u64]| -> Vec<u64> {
        coords
            .iter()
            .map(|&t| {
                let shift = ring.pow(kk - val_of(t));
                debug_assert_eq!(y[t] % shift, 0, "boundary outside the cocycle lattice");
                (y[t] / shift) % ring.pow(val_of(t))
            })
            .collect()
    };
    if degree > 0 {
        let prev = part.differential(group, degree - 1, false);
        for j in 0..prev.cols {
            let b = prev.column(j);
            if b.iter().all(|&x| x == 0) {
                continue;
            }
            columns.push(to_w(&v_inv.mul_vec(&b, m)));
        }
    }
    for idx in 0..n_cols {
        let e = part.exps[idx % k];
        if e == kk {
            continue;
        }
        let scale = ring.pow(e);
        let y: Vec<u64> = v_inv.rows.iter().map(|r| ((r[idx] as u128 * scale as u128) % m as u128) as u64).collect();
        columns.push(to_w(&y));
    }
    let rows = coords.len();
    let mut x = ModMatrix::zeros(rows, columns.len() + rows);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..rows {
            x.rows[r][c] = col[r];
        }
    }
    for (r, &t) in coords.iter().enumerate() {
        x.rows[r][columns.len() + r] = ring.pow(val_of(t)) % m;
    }

    let hs = local_smith(x, ring, SmithTracking { u_inv: opts.generators, ..Default::default() }, None, cancel)?;
    let mut exps = Vec::new();
    let mut gens = Vec::new();
    for s in 0..rows {
        let e = hs.valuations.get(s).copied().unwrap_or(kk);
        if e == 0 {
            continue;
        }
        exps.push(e);
        if let Some(u_inv) = hs.u_inv.as_ref() {
            let mut y = vec![0u64; n_cols];
            for (r, &t) in coords.iter().enumerate() {
                let w = u_inv.rows[r][s];
                y[t] = ((w as u128 * ring.pow(kk - val_of(t)) as u128) % m as u128) as u64;
            }
            gens.push(v.mul_vec(&y, m));
        }
    }
    Ok(PrimaryCohomology { p: ring.prime(), exps, gens })
}

/// Merges elementary divisors across primes into invariant factors,
/// ascending in divisibility order. Generators are summed to match.
fn merge_primary<T: Clone>(parts: Vec<(u64, Vec<(u32, T)>)>, zero: impl Fn() -> T, add: impl Fn(&T, &T) -> T) -> Vec<(u64, T)> {
    let mut parts: Vec<(u64, Vec<(u32, T)>)> = parts
        .into_iter()
        .map(|(p, mut v)| {
            v.sort_by(|a, b| b.0.cmp(&a.0));
            (p, v)
        })
        .collect();
    let len = parts.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut factor = 1u64;
        let mut gen = zero();
        for (p, v) in parts.iter_mut() {
            if let Some((e, g)) = v.get(i) {
                factor *= p.pow(*e);
                gen = add(&gen, g);
            }
        }
        out.push((factor, gen));
    }
    out.reverse();
    out
}

/// `Hⁿ(G; A)` for the module described by `action`, `0 ≤ n ≤ 4`.
pub fn cohomology(action: &Arc<GroupAction>, degree: usize, opts: &CohomologyOptions) -> Result<CohomologyGroup, CohomologyError> {
    if degree > MAX_DEGREE {
        return Err(CohomologyError::UnsupportedDegree { degree, min: 0, max: MAX_DEGREE });
    }
    let group = action.source();
    check_rows(group.order(), degree, action.target().rank(), opts)?;
    let mut pieces = Vec::new();
    for part in PrimaryPart::split(action) {
        let pc = primary_cohomology(&part, group, degree, opts)?;
        let gens: Vec<Cochain> = if opts.generators {
            pc.gens
                .iter()
                .map(|coords| {
                    let mut c = Cochain::zero(action.clone(), degree);
                    part.embed_into(coords, &mut c);
                    c
                })
                .collect()
        } else {
            vec![Cochain::zero(action.clone(), degree); pc.exps.len()]
        };
        pieces.push((pc.p, pc.exps.into_iter().zip(gens).collect()));
    }
    let merged = merge_primary(pieces, || Cochain::zero(action.clone(), degree), |a, b| a.add(b));
    let (invariant_factors, generators): (Vec<u64>, Vec<Cochain>) = merged.into_iter().unzip();
    Ok(CohomologyGroup { degree, invariant_factors, generators: if opts.generators { generators } else { Vec::new() } })
}

/// Some `w` with `dw = z`, or `None` if `[z] ≠ 0`.
pub fn coboundary_witness(z: &Cochain, opts: &CohomologyOptions) -> Result<Option<Cochain>, CohomologyError> {
    if let Err(tuple) = z.cocycle_witness() {
        return Err(CohomologyError::NotACocycle { tuple });
    }
    let degree = z.degree();
    if degree == 0 {
        return Err(CohomologyError::UnsupportedDegree { degree, min: 1, max: MAX_DEGREE });
    }
    if degree > MAX_DEGREE + 1 {
        return Err(CohomologyError::UnsupportedDegree { degree, min: 1, max: MAX_DEGREE + 1 });
    }
    let action = z.action();
    let group = action.source();
    check_rows(group.order(), degree - 1, action.target().rank(), opts)?;
    let mut witness = Cochain::zero(action.clone(), degree - 1);
    for part in PrimaryPart::split(action) {
        let ring = part.ring;
        let m = ring.modulus();
        let kk = ring.exponent();
        let k = part.rank();
        let a = part.differential(group, degree - 1, true);
        let mut rhs = ModMatrix::zeros(a.nrows(), 1);
        for (row, x) in part.project(z).into_iter().enumerate() {
            let s = ring.pow(kk - part.exps[row % k]);
            rhs.rows[row][0] = ((x as u128 * s as u128) % m as u128) as u64;
        }
        let Some(coords) = crate::linalg::local::solve(a, rhs, ring, opts.cancel.as_ref())? else {
            return Ok(None);
        };
        part.embed_into(&coords, &mut witness);
    }
    debug_assert!(witness.differential() == *z);
    Ok(Some(witness))
}

/// A cochain `β` with `b − a = dβ`, or `None` when the classes differ.
pub fn cohomologous(a: &Cochain, b: &Cochain, opts: &CohomologyOptions) -> Result<Option<Cochain>, CohomologyError> {
    if !a.compatible(b) {
        return Err(CohomologyError::Mismatched);
    }
    for c in [a, b] {
        if let Err(tuple) = c.cocycle_witness() {
            return Err(CohomologyError::NotACocycle { tuple });
        }
    }
    coboundary_witness(&b.sub(a), opts)
}

/// `Hⁿ(G; ℚ/ℤ)` with the torsion bound that determined it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCohomology {
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    /// The modulus `T = ∏ p^{K_p}` used for the local Smith forms.
    pub torsion_bound: u64,
    /// Whether raising every `K_p` by one reproduced the same group.
    pub stabilized: bool,
}

impl TorusCohomology {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

fn integral_differential(group: &FiniteGroup, degree: usize, modulus: u64) -> ModMatrix {
    let order = group.order();
    let mut out = ModMatrix::zeros(tuple_count(order, degree + 1), tuple_count(order, degree));
    for t in 0..out.nrows() {
        let tuple = index_tuple(order, degree + 1, t);
        for face in faces(group, &tuple) {
            let x = &mut out.rows[t][face.index];
            *x = ((*x as i128 + face.sign as i128).rem_euclid(modulus as i128)) as u64;
        }
    }
    out
}

fn torus_at(group: &FiniteGroup, degree: usize, raise: u32, opts: &CohomologyOptions) -> Result<(Vec<u64>, u64), CohomologyError> {
    let mut pieces = Vec::new();
    let mut bound = 1u64;
    for (p, e) in factorize(group.order() as u64) {
        let ring = PrimePower::new(p, e + 1 + raise);
        bound *= ring.modulus();
        let d = integral_differential(group, degree, ring.modulus());
        let s = local_smith(d, ring, SmithTracking::default(), None, opts.cancel.as_ref())?;
        let exps: Vec<(u32, ())> = s.valuations.iter().filter(|&&v| v > 0).map(|&v| (v, ())).collect();
        pieces.push((p, exps));
    }
    let factors = merge_primary(pieces, || (), |_, _| ()).into_iter().map(|(f, _)| f).collect();
    Ok((factors, bound))
}

/// `Hⁿ(G; ℚ/ℤ)` with trivial action, for `n ≥ 1`.
pub fn torus_cohomology(group: &FiniteGroup, degree: usize, opts: &CohomologyOptions) -> Result<TorusCohomology, CohomologyError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(CohomologyError::UnsupportedDegree { degree, min: 1, max: MAX_DEGREE });
    }
    check_rows(group.order(), degree, 1, opts)?;
    let (invariant_factors, torsion_bound) = torus_at(group, degree, 0, opts)?;
    let (again, _) = torus_at(group, degree, 1, opts)?;
    Ok(TorusCohomology { degree, stabilized: again == invariant_factors, invariant_factors, torsion_bound })
}

/// `ℤ/m` with trivial action, the `(1/m)ℤ/ℤ` slice of ℚ/ℤ.
fn cyclic_module(group: &FiniteGroup, m: u64) -> Arc<GroupAction> {
    Arc::new(GroupAction::trivial(group.clone(), AbelianGroup::cyclic(m)))
}

fn solve_qz_at(z: &QzCochain, modulus: u64, opts: &CohomologyOptions) -> Result<Option<QzCochain>, CohomologyError> {
    let group = z.group();
    if modulus == 1 {
        return Ok(z.is_zero().then(|| QzCochain::zero(group.clone(), z.degree() - 1)));
    }
    let module = cyclic_module(group, modulus);
    let lifted = Cochain::from_flat(
        module,
        z.degree(),
        z.values().iter().map(|v| v.scaled_to(modulus).expect("denominator divides modulus") as i64).collect(),
    );
    Ok(coboundary_witness(&lifted, opts)?.map(|w| {
        let values = w.flat().iter().map(|&x| Qz::new(x as i64, modulus)).collect();
        QzCochain::from_values(group.clone(), z.degree() - 1, values)
    }))
}

/// Some `γ` with `dγ = z` in ℚ/ℤ, or `None` when `[z] ≠ 0` in `Hⁿ(G; ℚ/ℤ)`.
pub fn qz_coboundary_witness(z: &QzCochain, opts: &CohomologyOptions) -> Result<Option<QzCochain>, CohomologyError> {
    if let Err(tuple) = z.cocycle_witness() {
        return Err(CohomologyError::NotACocycle { tuple });
    }
    if z.degree() == 0 {
        return Err(CohomologyError::UnsupportedDegree { degree: 0, min: 1, max: MAX_DEGREE + 1 });
    }
    let modulus = z.torsion_bound() * z.group().order() as u64;
    solve_qz_at(z, modulus, opts)
}

/// `γ` with `b − a = dγ` in ℚ/ℤ, or `None`.
pub fn qz_cohomologous(a: &QzCochain, b: &QzCochain, opts: &CohomologyOptions) -> Result<Option<QzCochain>, CohomologyError> {
    if !a.compatible(b) {
        return Err(CohomologyError::Mismatched);
    }
    for c in [a, b] {
        if let Err(tuple) = c.cocycle_witness() {
            return Err(CohomologyError::NotACocycle { tuple });
        }
    }
    qz_coboundary_witness(&b.sub(a), opts)
}

/// The result of splitting a symmetric 2-cocycle.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub gamma: QzCochain,
    /// The modulus `M′` at which the linear system became solvable.
    pub modulus: u64,
    /// How many times `M′` was doubled from its initial value `M·|A|`.
    pub doublings: u32,
}

/// Maximum number of doublings of the modulus before giving up.
pub const MAX_DOUBLINGS: u32 = 16;

/// Writes a symmetric 2-cocycle on a finite abelian group as `dγ`.
///
/// Symmetric 2-cocycles with values in ℚ/ℤ (equivalently in the
/// multiplicative group of an algebraically closed field of characteristic
/// zero) classify abelian extensions, and `Ext¹(A, ℚ/ℤ) = 0` because ℚ/ℤ is
/// divisible; so a splitting always exists. The returned `γ` satisfies
/// `dγ = φ` exactly.
pub fn split_symmetric_2cocycle(phi: &QzCochain, opts: &CohomologyOptions) -> Result<Splitting, CohomologyError> {
    if phi.degree() != 2 {
        return Err(CohomologyError::UnsupportedDegree { degree: phi.degree(), min: 2, max: 2 });
    }
    let group = phi.group();
    if !group.is_abelian() {
        return Err(CohomologyError::NotAbelian);
    }
    for a in group.elements() {
        for b in a + 1..group.order() {
            if phi.get(&[a, b]) != phi.get(&[b, a]) {
                return Err(CohomologyError::NotSymmetric { a, b });
            }
        }
    }
    if let Err(tuple) = phi.cocycle_witness() {
        return Err(CohomologyError::NotACocycle { tuple });
    }
    let mut modulus = phi.torsion_bound() * group.order() as u64;
    for doublings in 0..=MAX_DOUBLINGS {
        if let Some(gamma) = solve_qz_at(phi, modulus, opts)? {
            assert!(gamma.differential() == *phi, "splitting must reproduce φ");
            return Ok(Splitting { gamma, modulus, doublings });
        }
        modulus *= 2;
    }
    Err(CohomologyError::TorsionBoundExceeded { bound: modulus / 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::all_actions;
    use std::collections::HashSet;

    fn negation() -> Arc<GroupAction> {
        Arc::new(
            GroupAction::from_generator_images(FiniteGroup::cyclic(2), AbelianGroup::cyclic(3), &[(1, vec![vec![-1]])])
                .unwrap(),
        )
    }

    fn trivial(g: FiniteGroup, a: AbelianGroup) -> Arc<GroupAction> {
        Arc::new(GroupAction::trivial(g, a))
    }

    /// (#cocycles, #coboundaries) by exhaustive enumeration.
    fn brute_force(action: &Arc<GroupAction>, degree: usize) -> (u64, u64) {
        let a = action.target();
        let order = a.order() as u64;
        let cells = tuple_count(action.source().order(), degree);
        let total = order.pow(cells as u32);
        let decode = |mut code: u64, cells: usize, deg: usize| {
            let vals: Vec<i64> = (0..cells)
                .flat_map(|_| {
                    let v = a.element((code % order) as usize);
                    code /= order;
                    v.into_iter().map(|x| x as i64)
                })
                .collect();
            Cochain::from_flat(action.clone(), deg, vals)
        };
        let cocycles = (0..total).filter(|&c| decode(c, cells, degree).is_cocycle()).count() as u64;
        let prev = if degree == 0 { 1 } else { tuple_count(action.source().order(), degree - 1) };
        let boundaries: HashSet<Vec<u64>> = if degree == 0 {
            HashSet::from([vec![0; a.rank()]])
        } else {
            (0..order.pow(prev as u32)).map(|c| decode(c, prev, degree - 1).differential().flat().to_vec()).collect()
        };
        (cocycles, boundaries.len() as u64)
    }

    #[test]
    fn h3_of_z2_in_z3_vanishes() {
        let h = cohomology(&negation(), 3, &CohomologyOptions::default()).unwrap();
        assert!(h.is_trivial());
        let (z, b) = brute_force(&negation(), 3);
        assert_eq!(z / b, 1);
    }

    #[test]
    fn h2_of_z2_in_z2() {
        let act = trivial(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2));
        let h = cohomology(&act, 2, &CohomologyOptions::default()).unwrap();
        assert_eq!(h.invariant_factors, vec![2]);
        assert!(h.generators[0].is_cocycle());
        assert!(coboundary_witness(&h.generators[0], &CohomologyOptions::default()).unwrap().is_none());
    }

    #[test]
    fn trivial_group_has_no_higher_cohomology() {
        let act = trivial(FiniteGroup::trivial(), AbelianGroup::new(vec![2, 3]).unwrap());
        for n in 1..=4 {
            assert!(cohomology(&act, n, &CohomologyOptions::default()).unwrap().is_trivial());
        }
        assert_eq!(cohomology(&act, 0, &CohomologyOptions::default()).unwrap().invariant_factors, vec![6]);
    }

    #[test]
    fn degree_zero_is_fixed_points() {
        let h = cohomology(&negation(), 0, &CohomologyOptions::default()).unwrap();
        assert!(h.is_trivial());
        let act = Arc::new(
            GroupAction::from_generator_images(
                FiniteGroup::cyclic(2),
                AbelianGroup::new(vec![2, 2]).unwrap(),
                &[(1, vec![vec![0, 1], vec![1, 0]])],
            )
            .unwrap(),
        );
        assert_eq!(cohomology(&act, 0, &CohomologyOptions::default()).unwrap().invariant_factors, vec![2]);
    }

    #[test]
    fn matches_brute_force_on_small_modules() {
        let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4)];
        let modules = [AbelianGroup::cyclic(2), AbelianGroup::cyclic(3), AbelianGroup::cyclic(4), AbelianGroup::new(vec![2, 2]).unwrap()];
        for g in &groups {
            for a in &modules {
                for act in all_actions(g, a) {
                    let act = Arc::new(act);
                    for n in 0..=3 {
                        let cells = tuple_count(g.order(), n) as u32;
                        if (a.order() as f64).powi(cells as i32) > (1u64 << 20) as f64 {
                            continue;
                        }
                        let h = cohomology(&act, n, &CohomologyOptions::default()).unwrap();
                        let (z, b) = brute_force(&act, n);
                        assert_eq!(h.order(), z / b, "G={} A={:?} n={}", g.order(), a.factors(), n);
                        for gen in &h.generators {
                            assert!(gen.is_cocycle());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generators_have_the_stated_orders() {
        // H²(Z2×Z2; Z2) = (Z2)³
        let act = trivial(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)), AbelianGroup::cyclic(2));
        let h = cohomology(&act, 2, &CohomologyOptions::default()).unwrap();
        assert_eq!(h.invariant_factors, vec![2, 2, 2]);
        // H³(Z6; Z6) = Z6: generator of order exactly 6
        let act = trivial(FiniteGroup::cyclic(6), AbelianGroup::cyclic(6));
        let h = cohomology(&act, 3, &CohomologyOptions::default()).unwrap();
        assert_eq!(h.invariant_factors, vec![6]);
        let g = &h.generators[0];
        let mut multiple = g.clone();
        for k in 1..6 {
            assert!(coboundary_witness(&multiple, &CohomologyOptions::default()).unwrap().is_none(), "{k}·gen trivial");
            multiple = multiple.add(g);
        }
        assert!(coboundary_witness(&multiple, &CohomologyOptions::default()).unwrap().is_some());
    }

    #[test]
    fn witnesses_reproduce_coboundaries() {
        let act = negation();
        let beta = Cochain::from_fn(act.clone(), 2, |t| vec![(t[0] * 2 + t[1]) as i64]);
        let z = beta.differential();
        let w = coboundary_witness(&z, &CohomologyOptions::default()).unwrap().unwrap();
        assert_eq!(w.differential(), z);
        assert!(matches!(coboundary_witness(&beta, &CohomologyOptions::default()), Err(CohomologyError::NotACocycle { .. })));
        let zero = Cochain::zero(act, 3);
        assert!(coboundary_witness(&zero, &CohomologyOptions::default()).unwrap().unwrap().is_zero());
    }

    #[test]
    fn distinct_h3_classes_over_z2() {
        let act = trivial(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2));
        let h = cohomology(&act, 3, &CohomologyOptions::default()).unwrap();
        assert_eq!(h.invariant_factors, vec![2]);
        let zero = Cochain::zero(act.clone(), 3);
        assert!(cohomologous(&zero, &h.generators[0], &CohomologyOptions::default()).unwrap().is_none());
        // brute force: no 2-cochain (2⁴ of them) bounds the generator
        let gen = &h.generators[0];
        for code in 0..16i64 {
            let beta = Cochain::from_flat(act.clone(), 2, (0..4).map(|i| (code >> i) & 1).collect());
            assert_ne!(beta.differential(), *gen);
        }
    }

    #[test]
    fn size_bound_and_degree_errors() {
        let act = trivial(FiniteGroup::symmetric(4), AbelianGroup::cyclic(2));
        let opts = CohomologyOptions { max_rows: 1000, ..Default::default() };
        assert!(matches!(cohomology(&act, 3, &opts), Err(CohomologyError::SizeBound { .. })));
        assert!(matches!(cohomology(&act, 5, &opts), Err(CohomologyError::UnsupportedDegree { .. })));
    }

    #[test]
    fn torus_cohomology_known_values() {
        let opts = CohomologyOptions::default();
        // H¹(Zn; Q/Z) = Zn, H²(Zn; Q/Z) = 0, H³(Zn; Q/Z) = Zn
        for n in [2usize, 3, 4, 6] {
            let g = FiniteGroup::cyclic(n);
            assert_eq!(torus_cohomology(&g, 1, &opts).unwrap().invariant_factors, vec![n as u64]);
            assert!(torus_cohomology(&g, 2, &opts).unwrap().invariant_factors.is_empty());
            assert_eq!(torus_cohomology(&g, 3, &opts).unwrap().invariant_factors, vec![n as u64]);
        }
        let k4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        let h2 = torus_cohomology(&k4, 2, &opts).unwrap();
        assert_eq!(h2.invariant_factors, vec![2]);
        assert!(h2.stabilized);
        // Schur multiplier of S3 is trivial; H³(S3; Q/Z) = Z6
        let s3 = FiniteGroup::symmetric(3);
        assert!(torus_cohomology(&s3, 2, &opts).unwrap().invariant_factors.is_empty());
        assert_eq!(torus_cohomology(&s3, 3, &opts).unwrap().invariant_factors, vec![6]);
    }

    #[test]
    fn torus_cohomology_agrees_with_finite_coefficients() {
        // 0 → Z/M → Q/Z → Q/Z → 0 with |G| dividing M gives
        // |Hⁿ(G; Z/M)| = |Hⁿ(G; Q/Z)| · |H^{n−1}(G; Q/Z)| for n ≥ 2
        let opts = CohomologyOptions::default();
        for g in [FiniteGroup::cyclic(4), FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)), FiniteGroup::symmetric(3)] {
            let m = g.order() as u64;
            let act = trivial(g.clone(), AbelianGroup::cyclic(m));
            let h1 = torus_cohomology(&g, 1, &opts).unwrap().order();
            assert_eq!(cohomology(&act, 1, &opts).unwrap().order(), h1);
            let mut prev = h1;
            for n in 2..=3 {
                let hn = torus_cohomology(&g, n, &opts).unwrap().order();
                assert_eq!(cohomology(&act, n, &opts).unwrap().order(), hn * prev, "n={n}");
                prev = hn;
            }
        }
    }

    #[test]
    fn split_examples() {
        let opts = CohomologyOptions::default();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let zero = QzCochain::zero(z2.clone(), 2);
        assert!(split_symmetric_2cocycle(&zero, &opts).unwrap().gamma.is_zero());

        let mut phi = QzCochain::zero(z2.clone(), 2);
        phi.set(&[1, 1], Qz::new(1, 2));
        let s = split_symmetric_2cocycle(&phi, &opts).unwrap();
        assert_eq!(s.gamma.differential(), phi);
        assert!([Qz::new(1, 4), Qz::new(3, 4)].contains(&s.gamma.get(&[1])));
        assert_eq!(s.gamma.get(&[0]), Qz::ZERO);

        // alternating bicharacter on Z2×Z2: φ(a,b) = a₁b₂/2
        let k4 = AbelianGroup::new(vec![2, 2]).unwrap();
        let g = Arc::new(k4.to_finite_group());
        let alt = QzCochain::from_fn(g, 2, |t| {
            let (a, b) = (k4.element(t[0]), k4.element(t[1]));
            Qz::new((a[0] * b[1]) as i64, 2)
        });
        assert!(alt.is_cocycle());
        match split_symmetric_2cocycle(&alt, &opts) {
            Err(CohomologyError::NotSymmetric { a, b }) => assert_ne!(alt.get(&[a, b]), alt.get(&[b, a])),
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
        assert!(qz_coboundary_witness(&alt, &opts).unwrap().is_none());
    }

    #[test]
    fn split_rejects_non_cocycles_and_nonabelian() {
        let opts = CohomologyOptions::default();
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let mut phi = QzCochain::zero(z3, 2);
        phi.set(&[1, 1], Qz::new(1, 3));
        assert!(matches!(split_symmetric_2cocycle(&phi, &opts), Err(CohomologyError::NotACocycle { .. })));
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(split_symmetric_2cocycle(&QzCochain::zero(s3, 2), &opts).unwrap_err(), CohomologyError::NotAbelian);
    }

    #[test]
    fn cancelled_computation() {
        let token = CancelToken::new();
        token.cancel();
        let opts = CohomologyOptions { cancel: Some(token), ..Default::default() };
        assert_eq!(cohomology(&negation(), 2, &opts).unwrap_err(), CohomologyError::Cancelled);
    }
}
