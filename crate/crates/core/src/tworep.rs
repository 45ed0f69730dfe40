//! Counting invariants of the 2-category of 2-representations of `𝒢`.
//!
//! Components are the blocks of `Vect_𝒢`, one per orbit of `G` on `Â`.
//! A block is Morita equivalent to the pointed category `Vect_H^ω`, whose
//! indecomposable module categories are classified by pairs `(L, ψ)`:
//! a subgroup `L ≤ H` up to conjugacy with `[ω|_L] = 0`, and `ψ` in a torsor
//! under `H²(L; ℚ/ℤ)`. That classification is a standard external theorem
//! about pointed fusion categories; the count below relies on it.

use std::sync::Arc;

use crate::cohomology::{qz_coboundary_witness, torus_cohomology, CohomologyOptions};
use crate::error::FusionError;
use crate::fusion::VectG;
use crate::group::DEFAULT_SUBGROUP_BOUND;

/// Marks results that rest on the module-category classification for pointed
/// fusion categories.
pub const IMPORTED_CLASSIFICATION: &str = "module categories over Vect_H^ω ↔ (L ≤ H up to conjugacy, ψ with dψ = ω|_L)";

/// One subgroup class `L ≤ H` and its contribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupContribution {
    /// A representative of the class, as elements of `G`.
    pub subgroup: Vec<usize>,
    pub restriction_trivial: bool,
    /// `|H²(L; ℚ/ℤ)|`, counted only when the restriction is trivial.
    pub h2_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    pub base_character: usize,
    pub stabilizer: Vec<usize>,
    pub contributions: Vec<SubgroupContribution>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCount {
    pub total: u64,
    pub per_component: Vec<ComponentCount>,
    /// Whether every `H²(L; ℚ/ℤ)` stabilized under raising the torsion bound.
    pub stabilized: bool,
}

/// `Rep(π₁)`, the endomorphisms of the trivial 2-representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialEndoHom {
    pub label: String,
    pub group: String,
    pub irreducibles: usize,
}

/// The regular 2-representation: `|π₁|` copies of `Rep(π₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularDescriptor {
    pub copies: usize,
    pub factor_label: String,
    pub irreducibles_per_factor: usize,
}

/// The endomorphisms of the regular 2-representation, `Vect_𝒢^rev`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularEndoHom {
    pub label: String,
    pub simple_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRepReport {
    pub component_count: usize,
    pub simple_count: SimpleCount,
    pub trivial_rep_endohom: TrivialEndoHom,
    pub regular: RegularDescriptor,
    pub regular_endohom: RegularEndoHom,
    pub imported_theorem: &'static str,
}

/// Number of orbits of `G` on `Â`.
pub fn component_count(v: &VectG) -> usize {
    v.orbits().orbits.len()
}

/// Number of simple 2-representations, component by component.
pub fn simple_2rep_count(v: &VectG, opts: &CohomologyOptions, subgroup_bound: usize) -> Result<SimpleCount, FusionError> {
    let mut per_component = Vec::new();
    let mut stabilized = true;
    for orbit in 0..v.orbits().orbits.len() {
        let summand = v.pointed_summand(v.orbits().representative(orbit), opts)?;
        let h = &summand.group;
        let lattice = h.subgroups(subgroup_bound)?;
        let mut contributions = Vec::new();
        for elems in lattice.class_representatives() {
            let (l, embedding) = h.subgroup(elems)?;
            let l = Arc::new(l);
            let restricted = summand.cocycle.restrict(l.clone(), &embedding);
            let restriction_trivial = qz_coboundary_witness(&restricted, opts)?.is_some();
            let h2_order = if restriction_trivial {
                let h2 = torus_cohomology(&l, 2, opts)?;
                stabilized &= h2.stabilized;
                h2.order()
            } else {
                0
            };
            let subgroup = elems.iter().map(|&x| summand.stabilizer[x]).collect();
            contributions.push(SubgroupContribution { subgroup, restriction_trivial, h2_order });
        }
        let count = contributions.iter().map(|c| c.h2_order).sum();
        per_component.push(ComponentCount {
            base_character: summand.base_character,
            stabilizer: summand.stabilizer.clone(),
            contributions,
            count,
        });
    }
    let total = per_component.iter().map(|c| c.count).sum();
    Ok(SimpleCount { total, per_component, stabilized })
}

pub fn descriptors(v: &VectG, opts: &CohomologyOptions) -> Result<TwoRepReport, FusionError> {
    descriptors_with_bound(v, opts, DEFAULT_SUBGROUP_BOUND)
}

pub fn descriptors_with_bound(v: &VectG, opts: &CohomologyOptions, subgroup_bound: usize) -> Result<TwoRepReport, FusionError> {
    let g = v.two_group().base();
    let a = v.two_group().coeff();
    Ok(TwoRepReport {
        component_count: component_count(v),
        simple_count: simple_2rep_count(v, opts, subgroup_bound)?,
        trivial_rep_endohom: TrivialEndoHom {
            label: "rep(π₁)".into(),
            group: g.descriptor(),
            irreducibles: g.conjugacy_class_count(),
        },
        regular: RegularDescriptor { copies: g.order(), factor_label: "rep(π₂)".into(), irreducibles_per_factor: a.order() },
        regular_endohom: RegularEndoHom { label: "Vect_𝒢^rev".into(), simple_count: v.simple_count() },
        imported_theorem: IMPORTED_CLASSIFICATION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, GroupAction};
    use crate::cochain::Cochain;
    use crate::cohomology::cohomology;
    use crate::error::GroupError;
    use crate::group::FiniteGroup;
    use crate::twogroup::Skeletal2Group;

    fn vectg(g: FiniteGroup, a: AbelianGroup) -> VectG {
        VectG::new(Skeletal2Group::untwisted(Arc::new(GroupAction::trivial(g, a))))
    }

    #[test]
    fn example_counts() {
        let act = GroupAction::new(FiniteGroup::cyclic(2), AbelianGroup::cyclic(3), vec![vec![vec![1]], vec![vec![-1]]]).unwrap();
        let v = VectG::new(Skeletal2Group::untwisted(Arc::new(act)));
        let r = descriptors(&v, &CohomologyOptions::default()).unwrap();
        assert_eq!(r.component_count, 2);
        assert_eq!(r.simple_count.total, 3);
        assert_eq!(r.simple_count.per_component.iter().map(|c| c.count).collect::<Vec<_>>(), vec![2, 1]);
        assert!(r.simple_count.stabilized);
        assert_eq!(r.trivial_rep_endohom.irreducibles, 2);
        assert_eq!(r.regular, RegularDescriptor { copies: 2, factor_label: "rep(π₂)".into(), irreducibles_per_factor: 3 });
        assert_eq!(r.regular_endohom.simple_count, 6);
    }

    #[test]
    fn pointed_cases() {
        let opts = CohomologyOptions::default();
        let v = vectg(FiniteGroup::cyclic(2), AbelianGroup::trivial());
        assert_eq!(simple_2rep_count(&v, &opts, 24).unwrap().total, 2);
        // subgroup classes of S3: 1, Z2, Z3, S3, all with trivial H²
        let v = vectg(FiniteGroup::symmetric(3), AbelianGroup::trivial());
        let r = descriptors(&v, &opts).unwrap();
        assert_eq!(r.simple_count.total, 4);
        assert_eq!(r.trivial_rep_endohom.irreducibles, 3);
        // K4 has five subgroups and H²(K4; ℚ/ℤ) = Z2
        let k4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert_eq!(simple_2rep_count(&vectg(k4, AbelianGroup::trivial()), &opts, 24).unwrap().total, 6);
        let triv = descriptors(&vectg(FiniteGroup::trivial(), AbelianGroup::trivial()), &opts).unwrap();
        assert_eq!((triv.component_count, triv.simple_count.total, triv.trivial_rep_endohom.irreducibles), (1, 1, 1));
    }

    #[test]
    fn trivial_base_group() {
        let v = vectg(FiniteGroup::trivial(), AbelianGroup::new(vec![2, 3]).unwrap());
        assert_eq!(component_count(&v), 6);
        assert_eq!(simple_2rep_count(&v, &CohomologyOptions::default(), 24).unwrap().total, 6);
    }

    #[test]
    fn twisted_cocycle_removes_the_top_subgroup() {
        // Z2 acting trivially on Z2 with the nontrivial class: the nontrivial
        // character sees ω nontrivial on Z2, so only L = 1 contributes there
        let act = Arc::new(GroupAction::trivial(FiniteGroup::cyclic(2), AbelianGroup::cyclic(2)));
        let opts = CohomologyOptions::default();
        let alpha: Cochain = cohomology(&act, 3, &opts).unwrap().generators[0].clone();
        let v = VectG::new(Skeletal2Group::build(act, alpha).unwrap());
        let c = simple_2rep_count(&v, &opts, 24).unwrap();
        assert_eq!(c.per_component.iter().map(|x| x.count).collect::<Vec<_>>(), vec![2, 1]);
        assert!(!c.per_component[1].contributions[1].restriction_trivial);
    }

    #[test]
    fn subgroup_bound_is_enforced() {
        let v = vectg(FiniteGroup::symmetric(3), AbelianGroup::trivial());
        assert_eq!(
            simple_2rep_count(&v, &CohomologyOptions::default(), 4),
            Err(FusionError::Group(GroupError::SizeBound { order: 6, bound: 4 }))
        );
    }
}
