//! Seeded random inputs for property checks.
//!
//! 2-groups are drawn with `|G| ≤ 6` and `|A| ≤ 6`: a random action, and
//! `α = dβ + Σ cᵢ·zᵢ` over representatives `zᵢ` of generators of `H³(G; A)`.
//! Generators are computed once per action.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{all_actions, AbelianGroup, GroupAction};
use crate::cochain::{Cochain, QzCochain};
use crate::cohomology::{cohomology, CohomologyOptions};
use crate::error::CohomologyError;
use crate::group::FiniteGroup;
use crate::linalg::kernel_mod;
use crate::qz::Qz;
use crate::twogroup::Skeletal2Group;

/// Base groups of order at most 6: cyclic groups, the Klein group and `S₃`.
pub fn small_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=6).map(FiniteGroup::cyclic).collect();
    out.push(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)));
    out.push(FiniteGroup::symmetric(3));
    out
}

/// Coefficient groups of order at most 6.
pub fn small_modules() -> Vec<AbelianGroup> {
    AbelianGroup::all_up_to_order(6)
}

pub fn random_cochain<R: Rng>(action: &Arc<GroupAction>, degree: usize, rng: &mut R) -> Cochain {
    let factors = action.target().factors().to_vec();
    Cochain::from_fn(action.clone(), degree, |_| factors.iter().map(|&d| rng.gen_range(0..d as i64)).collect())
}

/// Draws random 2-groups, caching `H³` generators per action.
#[derive(Default)]
pub struct Corpus {
    groups: Vec<FiniteGroup>,
    modules: Vec<AbelianGroup>,
    actions: HashMap<(usize, usize), Vec<Arc<GroupAction>>>,
    generators: HashMap<Arc<GroupAction>, Vec<(u64, Cochain)>>,
    opts: CohomologyOptions,
}

impl Corpus {
    pub fn new() -> Corpus {
        Corpus { groups: small_groups(), modules: small_modules(), ..Default::default() }
    }

    pub fn random_action<R: Rng>(&mut self, rng: &mut R) -> Arc<GroupAction> {
        let gi = rng.gen_range(0..self.groups.len());
        let mi = rng.gen_range(0..self.modules.len());
        let (groups, modules) = (&self.groups, &self.modules);
        let actions = self
            .actions
            .entry((gi, mi))
            .or_insert_with(|| all_actions(&groups[gi], &modules[mi]).into_iter().map(Arc::new).collect());
        actions.choose(rng).expect("the trivial action always exists").clone()
    }

    /// Representatives of generators of `H³(G; A)` with their orders.
    pub fn h3_generators(&mut self, action: &Arc<GroupAction>) -> Result<&[(u64, Cochain)], CohomologyError> {
        if !self.generators.contains_key(action) {
            let h3 = cohomology(action, 3, &self.opts)?;
            let gens = h3.invariant_factors.iter().copied().zip(h3.generators).collect();
            self.generators.insert(action.clone(), gens);
        }
        Ok(&self.generators[action])
    }

    /// A random validated 2-group.
    pub fn random_two_group<R: Rng>(&mut self, rng: &mut R) -> Result<Skeletal2Group, CohomologyError> {
        let action = self.random_action(rng);
        let mut alpha = random_cochain(&action, 2, rng).differential();
        for (order, z) in self.h3_generators(&action)?.to_vec() {
            for _ in 0..rng.gen_range(0..order) {
                alpha = alpha.add(&z);
            }
        }
        Ok(Skeletal2Group::build(action, alpha).expect("cocycle by construction"))
    }
}

/// Adds a nonzero value at one random entry so that `α` stops being a
/// cocycle. Returns the corrupted cochain and the tuple that was changed.
pub fn corrupt<R: Rng>(alpha: &Cochain, rng: &mut R) -> Option<(Cochain, Vec<usize>)> {
    let a = alpha.action().target();
    if a.order() == 1 {
        return None;
    }
    let n = alpha.group().order();
    loop {
        let tuple: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
        let shift = a.element(rng.gen_range(1..a.order()));
        let mut bad = alpha.clone();
        let v = a.add(alpha.get(&tuple), &shift);
        bad.set(&tuple, &v);
        // some single-entry changes are themselves cocycles; draw again
        if !bad.is_cocycle() {
            return Some((bad, tuple));
        }
    }
}

/// A random ℚ/ℤ-valued cochain with values in `(1/m)ℤ/ℤ`.
pub fn random_qz_cochain<R: Rng>(group: &Arc<FiniteGroup>, degree: usize, m: u64, rng: &mut R) -> QzCochain {
    QzCochain::from_fn(group.clone(), degree, |_| Qz::new(rng.gen_range(0..m as i64), m))
}

/// A random symmetric 2-cocycle in `(1/m)ℤ/ℤ`, drawn from a basis of the
/// solutions of `dφ = 0`, `φ(a,b) = φ(b,a)` over `ℤ/m`.
pub fn random_symmetric_cocycle<R: Rng>(group: &Arc<FiniteGroup>, m: u64, rng: &mut R) -> Result<QzCochain, CohomologyError> {
    let n = group.order();
    let cols = n * n;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let d = crate::cochain::tuple_count(n, 3);
    for t in 0..d {
        let tuple = crate::cochain::index_tuple(n, 3, t);
        let mut row = vec![0i64; cols];
        // (dφ)(a,b,c) = φ(b,c) − φ(ab,c) + φ(a,bc) − φ(a,b)
        let (a, b, c) = (tuple[0], tuple[1], tuple[2]);
        row[b * n + c] += 1;
        row[group.mul(a, b) * n + c] -= 1;
        row[a * n + group.mul(b, c)] += 1;
        row[a * n + b] -= 1;
        rows.push(row);
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut row = vec![0i64; cols];
            row[a * n + b] = 1;
            row[b * n + a] = -1;
            rows.push(row);
        }
    }
    let basis = kernel_mod(&rows, cols, m, None)?;
    let mut values = vec![0u64; cols];
    for v in &basis {
        let c = rng.gen_range(0..m);
        for (x, &y) in values.iter_mut().zip(v) {
            *x = (*x + c * y) % m;
        }
    }
    Ok(QzCochain::from_values(group.clone(), 2, values.into_iter().map(|x| Qz::new(x as i64, m)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_two_groups_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut corpus = Corpus::new();
        for _ in 0..10 {
            let c = corpus.random_two_group(&mut rng).unwrap();
            assert!(c.alpha().is_cocycle());
            assert!(c.base().order() <= 6 && c.coeff().order() <= 6);
            if let Some((bad, tuple)) = corrupt(c.alpha(), &mut rng) {
                assert!(!bad.is_cocycle());
                assert_ne!(bad.get(&tuple), c.alpha().get(&tuple));
            }
        }
    }

    #[test]
    fn symmetric_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k4 = Arc::new(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)));
        for _ in 0..5 {
            let phi = random_symmetric_cocycle(&k4, 4, &mut rng).unwrap();
            assert!(phi.is_cocycle());
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(phi.get(&[a, b]), phi.get(&[b, a]));
                }
            }
        }
    }
}
