//! Skeletal finite 2-groups `𝒞(G, A, α)`.
//!
//! Objects are the elements of `G`; `Hom(g, g) = A` and there are no other
//! morphisms. The tensor product of morphisms is `(g,a) ⊗ (h,b) = (gh, a + g▷b)`,
//! the associator at `(g,h,k)` is `α(g,h,k)`, and the unitors are
//! `λ_g = −α(e,e,g)`, `ρ_g = α(g,e,e)`. The pentagon holds exactly when `dα = 0`.

use std::sync::Arc;

use crate::abelian::{apply_matrix, automorphisms, AbelianGroup, ActionMatrix, GroupAction};
use crate::cochain::Cochain;
use crate::cohomology::{cohomologous, CohomologyOptions};
use crate::error::TwoGroupError;
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeletal2Group {
    action: Arc<GroupAction>,
    alpha: Cochain,
}

/// A morphism `a : g → g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoGroupMorphism {
    pub object: usize,
    pub auto: Vec<u64>,
}

impl Skeletal2Group {
    /// Validates the pentagon over all `|G|⁴` quadruples.
    pub fn build(action: Arc<GroupAction>, alpha: Cochain) -> Result<Skeletal2Group, TwoGroupError> {
        if alpha.degree() != 3 {
            return Err(TwoGroupError::WrongDegree(alpha.degree()));
        }
        if !Arc::ptr_eq(alpha.action(), &action) && **alpha.action() != *action {
            return Err(TwoGroupError::ModuleMismatch);
        }
        if let Err(t) = alpha.cocycle_witness() {
            return Err(TwoGroupError::PentagonViolation { g: t[0], h: t[1], k: t[2], l: t[3] });
        }
        Ok(Skeletal2Group { action, alpha })
    }

    /// `𝒞(G, A, α)` with `α ≡ 0`.
    pub fn untwisted(action: Arc<GroupAction>) -> Skeletal2Group {
        let alpha = Cochain::zero(action.clone(), 3);
        Skeletal2Group { action, alpha }
    }

    /// Skips the pentagon check. Meant for exercising checks downstream.
    pub fn unchecked(action: Arc<GroupAction>, alpha: Cochain) -> Skeletal2Group {
        assert_eq!(alpha.degree(), 3);
        Skeletal2Group { action, alpha }
    }

    /// `π₁`.
    pub fn base(&self) -> &FiniteGroup {
        self.action.source()
    }

    /// `π₂`.
    pub fn coeff(&self) -> &AbelianGroup {
        self.action.target()
    }

    pub fn action(&self) -> &Arc<GroupAction> {
        &self.action
    }

    pub fn alpha(&self) -> &Cochain {
        &self.alpha
    }

    pub fn associator(&self, g: usize, h: usize, k: usize) -> Vec<u64> {
        self.alpha.get(&[g, h, k]).to_vec()
    }

    /// `(λ_g, ρ_g)`.
    pub fn unitors(&self, g: usize) -> (Vec<u64>, Vec<u64>) {
        let e = self.base().identity();
        let lambda = self.coeff().neg(self.alpha.get(&[e, e, g]));
        let rho = self.alpha.get(&[g, e, e]).to_vec();
        (lambda, rho)
    }

    pub fn inverse_object(&self, g: usize) -> usize {
        self.base().inv(g)
    }

    pub fn identity_morphism(&self, g: usize) -> TwoGroupMorphism {
        TwoGroupMorphism { object: g, auto: self.coeff().zero() }
    }

    pub fn tensor_morphism(&self, m1: &TwoGroupMorphism, m2: &TwoGroupMorphism) -> TwoGroupMorphism {
        let moved = self.action.act(m1.object, &m2.auto);
        TwoGroupMorphism { object: self.base().mul(m1.object, m2.object), auto: self.coeff().add(&m1.auto, &moved) }
    }

    /// Composite of two endomorphisms of the same object; `None` otherwise.
    pub fn compose(&self, m1: &TwoGroupMorphism, m2: &TwoGroupMorphism) -> Option<TwoGroupMorphism> {
        (m1.object == m2.object).then(|| TwoGroupMorphism { object: m1.object, auto: self.coeff().add(&m1.auto, &m2.auto) })
    }

    /// A 2-cochain `β` with `α′ − α = dβ`, giving a monoidal equivalence
    /// `𝒞(G,A,α) ≃ 𝒞(G,A,α′)` whose underlying functor is the identity.
    pub fn equivalent_to(&self, other: &Skeletal2Group, opts: &CohomologyOptions) -> Result<Option<Cochain>, TwoGroupError> {
        if *self.action != *other.action {
            return Err(TwoGroupError::MismatchedPostnikovData);
        }
        Ok(cohomologous(&self.alpha, &other.alpha, opts)?)
    }

    /// Equivalences whose underlying functor may permute `G` and `A`.
    ///
    /// Searches pairs `(φ, f) ∈ Aut(G) × Aut(A)` with `f(g▷a) = φ(g)▷′f(a)`
    /// for which `f∘α` and `φ*α′` are cohomologous. This goes beyond
    /// identity-on-objects equivalences.
    pub fn equivalent_up_to_automorphisms(
        &self,
        other: &Skeletal2Group,
        opts: &CohomologyOptions,
    ) -> Result<Option<TwistedEquivalence>, TwoGroupError> {
        if self.base().table() != other.base().table() || self.coeff() != other.coeff() {
            return Err(TwoGroupError::MismatchedPostnikovData);
        }
        let g = self.base();
        let a = self.coeff();
        let module_auts = automorphisms(a);
        for phi in g.automorphisms() {
            // G acting on A through φ and the other action
            let mats: Vec<ActionMatrix> = g.elements().map(|x| other.action.matrix(phi[x]).clone()).collect();
            let pulled = Arc::new(GroupAction::new(g.clone(), a.clone(), mats).expect("twist of a valid action"));
            for f in &module_auts {
                let compatible = g.elements().all(|x| {
                    a.elements().all(|v| apply_matrix(a, f, &self.action.act(x, &v)) == pulled.act(x, &apply_matrix(a, f, &v)))
                });
                if !compatible {
                    continue;
                }
                let pushed = Cochain::from_fn(pulled.clone(), 3, |t| {
                    apply_matrix(a, f, self.alpha.get(t)).into_iter().map(|x| x as i64).collect()
                });
                let back = Cochain::from_fn(pulled.clone(), 3, |t| {
                    other.alpha.get(&[phi[t[0]], phi[t[1]], phi[t[2]]]).iter().map(|&x| x as i64).collect()
                });
                if let Some(witness) = cohomologous(&pushed, &back, opts)? {
                    return Ok(Some(TwistedEquivalence { group_automorphism: phi, module_automorphism: f.clone(), witness }));
                }
            }
        }
        Ok(None)
    }
}

/// Data of an equivalence `𝒞(G,A,α) ≃ 𝒞(G,A,α′)` acting by `φ` on objects
/// and by `f` on morphisms.
#[derive(Clone, Debug)]
pub struct TwistedEquivalence {
    pub group_automorphism: Vec<usize>,
    pub module_automorphism: ActionMatrix,
    /// `β` with `φ*α′ − f∘α = dβ`.
    pub witness: Cochain,
}

/// Identity-on-objects equivalence test; see [`Skeletal2Group::equivalent_to`].
pub fn equivalent_2groups(a: &Skeletal2Group, b: &Skeletal2Group, opts: &CohomologyOptions) -> Result<Option<Cochain>, TwoGroupError> {
    a.equivalent_to(b, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn negation() -> Arc<GroupAction> {
        Arc::new(GroupAction::new(FiniteGroup::cyclic(2), AbelianGroup::cyclic(3), vec![vec![vec![1]], vec![vec![-1]]]).unwrap())
    }

    fn z2_trivial() -> Arc<GroupAction> {
        Arc::new(GroupAction::trivial(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2)))
    }

    fn random_cochain(action: &Arc<GroupAction>, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let factors = action.target().factors().to_vec();
        Cochain::from_fn(action.clone(), degree, |_| factors.iter().map(|&d| rng.gen_range(0..d as i64)).collect())
    }

    #[test]
    fn build_accepts_cocycles_only() {
        let act = negation();
        assert!(Skeletal2Group::build(act.clone(), Cochain::zero(act.clone(), 3)).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let beta = random_cochain(&act, 2, &mut rng);
        assert!(Skeletal2Group::build(act.clone(), beta.differential()).is_ok());

        let mut bad = Cochain::zero(act.clone(), 3);
        bad.set(&[0, 0, 0], &[1]);
        let witness = bad.cocycle_witness().unwrap_err();
        assert_eq!(
            Skeletal2Group::build(act.clone(), bad),
            Err(TwoGroupError::PentagonViolation { g: witness[0], h: witness[1], k: witness[2], l: witness[3] })
        );
        assert_eq!(Skeletal2Group::build(act.clone(), Cochain::zero(act.clone(), 2)), Err(TwoGroupError::WrongDegree(2)));
        assert_eq!(Skeletal2Group::build(act, Cochain::zero(z2_trivial(), 3)), Err(TwoGroupError::ModuleMismatch));
    }

    #[test]
    fn build_agrees_with_cocycle_test() {
        let act = z2_trivial();
        // every 3-cochain over Z2 with values in Z2: 2^8 of them
        for bits in 0u32..256 {
            let alpha = Cochain::from_flat(act.clone(), 3, (0..8).map(|i| ((bits >> i) & 1) as i64).collect());
            let cocycle = alpha.is_cocycle();
            assert_eq!(Skeletal2Group::build(act.clone(), alpha).is_ok(), cocycle);
        }
    }

    #[test]
    fn tensor_of_morphisms() {
        let c = Skeletal2Group::untwisted(negation());
        let m = |g, a| TwoGroupMorphism { object: g, auto: vec![a] };
        assert_eq!(c.tensor_morphism(&m(1, 1), &m(0, 2)), m(1, 2));
        assert_eq!(c.tensor_morphism(&m(1, 0), &m(1, 0)), m(0, 0));
        // interchange law, exhaustively
        for (g, h) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for a in 0..3 {
                for a2 in 0..3 {
                    for b in 0..3 {
                        for b2 in 0..3 {
                            let lhs = c.tensor_morphism(&c.compose(&m(g, a), &m(g, a2)).unwrap(), &c.compose(&m(h, b), &m(h, b2)).unwrap());
                            let rhs = c.compose(&c.tensor_morphism(&m(g, a), &m(h, b)), &c.tensor_morphism(&m(g, a2), &m(h, b2))).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
        assert_eq!(c.compose(&m(0, 1), &m(1, 1)), None);
    }

    #[test]
    fn conjugation_recovers_the_action() {
        let g = FiniteGroup::symmetric(3);
        let a = AbelianGroup::cyclic(3);
        // sign representation: odd permutations negate
        let sign: Vec<ActionMatrix> = (0..6).map(|x| vec![vec![if [0, 3, 4].contains(&x) { 1 } else { -1 }]]).collect();
        let act = Arc::new(GroupAction::new(g.clone(), a.clone(), sign).unwrap());
        let c = Skeletal2Group::untwisted(act.clone());
        let e = g.identity();
        for x in g.elements() {
            for v in a.elements() {
                let inner = c.tensor_morphism(&TwoGroupMorphism { object: e, auto: v.clone() }, &c.identity_morphism(g.inv(x)));
                let conj = c.tensor_morphism(&c.identity_morphism(x), &inner);
                assert_eq!(conj.object, e);
                assert_eq!(conj.auto, act.act(x, &v));
            }
        }
    }

    #[test]
    fn associator_unitors_and_inverses() {
        let act = z2_trivial();
        let c = Skeletal2Group::untwisted(act.clone());
        assert_eq!(c.associator(1, 1, 1), vec![0]);
        assert_eq!(c.unitors(1), (vec![0], vec![0]));

        let h3 = cohomology(&act, 3, &CohomologyOptions::default()).unwrap();
        assert_eq!(h3.invariant_factors, vec![2]);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let alpha = h3.generators[0].add(&random_cochain(&act, 2, &mut rng).differential());
        let c = Skeletal2Group::build(act.clone(), alpha.clone()).unwrap();
        for g in 0..2 {
            let (l, r) = c.unitors(g);
            assert_eq!(l, c.coeff().neg(alpha.get(&[0, 0, g])));
            assert_eq!(r, alpha.get(&[g, 0, 0]).to_vec());
            for h in 0..2 {
                for k in 0..2 {
                    assert_eq!(c.associator(g, h, k), alpha.get(&[g, h, k]).to_vec());
                }
            }
        }
        // dα(e,e,e,e) = α(e,e,e), so both unitors of the unit object vanish
        assert_eq!(c.unitors(0), (vec![0], vec![0]));

        let c3 = Skeletal2Group::untwisted(Arc::new(GroupAction::trivial(FiniteGroup::cyclic(3), AbelianGroup::trivial())));
        assert_eq!(c3.inverse_object(0), 0);
        assert_eq!(c3.inverse_object(1), 2);
        let k4 = Skeletal2Group::untwisted(Arc::new(GroupAction::trivial(
            FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
            AbelianGroup::trivial(),
        )));
        assert!((0..4).all(|g| k4.inverse_object(g) == g));
    }

    #[test]
    fn equivalence_detection() {
        let act = z2_trivial();
        let opts = CohomologyOptions::default();
        let h3 = cohomology(&act, 3, &opts).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let zero = Skeletal2Group::untwisted(act.clone());
        let w = equivalent_2groups(&zero, &zero, &opts).unwrap().unwrap();
        assert!(w.is_zero());

        let alpha = h3.generators[0].clone();
        let beta = random_cochain(&act, 2, &mut rng);
        let c1 = Skeletal2Group::build(act.clone(), alpha.clone()).unwrap();
        let c2 = Skeletal2Group::build(act.clone(), alpha.add(&beta.differential())).unwrap();
        let w = equivalent_2groups(&c1, &c2, &opts).unwrap().unwrap();
        assert_eq!(w.differential(), c2.alpha().sub(c1.alpha()));
        assert_eq!(equivalent_2groups(&zero, &c1, &opts).unwrap(), None);

        let other = Skeletal2Group::untwisted(negation());
        assert_eq!(equivalent_2groups(&zero, &other, &opts), Err(TwoGroupError::MismatchedPostnikovData));
    }

    #[test]
    fn equivalence_up_to_automorphisms() {
        let opts = CohomologyOptions::default();
        // H³(Z3; Z3) = Z3; the classes 1 and 2 are swapped by negation on Z3
        let act = Arc::new(GroupAction::trivial(FiniteGroup::cyclic(3), AbelianGroup::cyclic(3)));
        let h3 = cohomology(&act, 3, &opts).unwrap();
        assert_eq!(h3.invariant_factors, vec![3]);
        let gen = &h3.generators[0];
        let c1 = Skeletal2Group::build(act.clone(), gen.clone()).unwrap();
        let c2 = Skeletal2Group::build(act.clone(), gen.add(gen)).unwrap();
        assert_eq!(equivalent_2groups(&c1, &c2, &opts).unwrap(), None);
        let tw = c1.equivalent_up_to_automorphisms(&c2, &opts).unwrap().expect("twisted equivalence");
        let a = c1.coeff();
        let g = c1.base();
        for t in (0..27).map(|i| [i / 9, (i / 3) % 3, i % 3]) {
            // f∘α + dβ = φ*α′ pointwise
            let lhs = a.add(&apply_matrix(a, &tw.module_automorphism, gen.get(&t)), tw.witness.differential().get(&t));
            let phi = &tw.group_automorphism;
            assert_eq!(lhs, c2.alpha().get(&[phi[t[0]], phi[t[1]], phi[t[2]]]).to_vec());
        }
        assert!(g.automorphisms().contains(&tw.group_automorphism));
        let zero = Skeletal2Group::untwisted(act);
        assert!(zero.equivalent_up_to_automorphisms(&c1, &opts).unwrap().is_none());
    }
}
