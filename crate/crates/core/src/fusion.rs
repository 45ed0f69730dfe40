//! The multi-fusion category `Vect_𝒢` of a skeletal 2-group.
//!
//! Simple objects are pairs `(g, ρ)` with `g ∈ G` and `ρ ∈ Â`, standing for
//! `g` tensored with the idempotent `p_ρ`. Fusion is
//! `(g,ρ) ⊗ (h,σ) = δ_{ρ, g▷σ} (gh, ρ)` and the associator on a composable
//! triple `(g,ρ), (h,σ), (k,τ)` is the scalar `ρ(α(g,h,k))`.
//!
//! The unit `⊕_ρ (e,ρ)` splits along `Â`, and `(g,ρ)` maps `(e, g⁻¹▷ρ)` to
//! `(e, ρ)`, so the indecomposable summands are indexed by the orbits of the
//! dual action. The summand of an orbit through `ρ` has the pointed diagonal
//! datum `(Stab(ρ), (ρ∘α)|_{Stab(ρ)})`.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{Character, GroupAction, OrbitDecomposition};
use crate::cochain::QzCochain;
use crate::cohomology::{qz_coboundary_witness, CohomologyOptions};
use crate::cyclotomic::{root_of_unity, CyclotomicRational};
use crate::error::FusionError;
use crate::group::FiniteGroup;
use crate::qz::Qz;
use crate::twogroup::Skeletal2Group;

/// The simple object `(g, ρ)`; `rho` indexes the canonical character list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionSimple {
    pub g: usize,
    pub rho: usize,
}

/// Four composable simples on which the scalar pentagon fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonFailure {
    pub simples: [FusionSimple; 4],
    /// Left minus right side of the pentagon, in ℚ/ℤ.
    pub defect: Qz,
}

/// Fusion data of `Vect_𝒢`, with the dual action precomputed.
#[derive(Clone, Debug)]
pub struct VectG {
    two_group: Skeletal2Group,
    characters: Vec<Character>,
    dual: GroupAction,
    orbits: OrbitDecomposition,
}

impl VectG {
    pub fn new(two_group: Skeletal2Group) -> VectG {
        let characters = two_group.coeff().dual_group();
        let dual = two_group.action().dual_action();
        let orbits = OrbitDecomposition::new(two_group.base(), dual.permutation_table());
        VectG { two_group, characters, dual, orbits }
    }

    pub fn two_group(&self) -> &Skeletal2Group {
        &self.two_group
    }

    fn group(&self) -> &FiniteGroup {
        self.two_group.base()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn orbits(&self) -> &OrbitDecomposition {
        &self.orbits
    }

    /// `g ▷ ρ` on character indices.
    pub fn act(&self, g: usize, rho: usize) -> usize {
        self.dual.act_index(g, rho)
    }

    /// Renders `(g, χ[c₁,…])`.
    pub fn label(&self, s: FusionSimple) -> String {
        format!("({},{})", s.g, self.characters[s.rho].label())
    }

    /// All `|G|·|Â|` simples, `g`-major.
    pub fn simples(&self) -> Vec<FusionSimple> {
        let n = self.characters.len();
        self.group().elements().flat_map(|g| (0..n).map(move |rho| FusionSimple { g, rho })).collect()
    }

    pub fn simple_count(&self) -> usize {
        self.group().order() * self.characters.len()
    }

    pub fn check(&self, s: FusionSimple) -> Result<FusionSimple, FusionError> {
        if s.g < self.group().order() && s.rho < self.characters.len() {
            Ok(s)
        } else {
            Err(FusionError::UnknownSimple { g: s.g, rho: s.rho })
        }
    }

    /// `s1 ⊗ s2`, or `None` for the zero object.
    pub fn fuse(&self, s1: FusionSimple, s2: FusionSimple) -> Option<FusionSimple> {
        (s1.rho == self.act(s1.g, s2.rho)).then(|| FusionSimple { g: self.group().mul(s1.g, s2.g), rho: s1.rho })
    }

    /// The full fusion table over [`VectG::simples`].
    pub fn fusion_table(&self) -> Vec<Vec<Option<FusionSimple>>> {
        let simples = self.simples();
        simples.iter().map(|&a| simples.iter().map(|&b| self.fuse(a, b)).collect()).collect()
    }

    /// `ρ(α(g,h,k))` for a composable triple.
    pub fn associator_scalar(&self, s1: FusionSimple, s2: FusionSimple, s3: FusionSimple) -> Result<Qz, FusionError> {
        let s12 = self.fuse(s1, s2).ok_or(FusionError::ZeroComposite)?;
        self.fuse(s12, s3).ok_or(FusionError::ZeroComposite)?;
        let value = self.two_group.alpha().get(&[s1.g, s2.g, s3.g]);
        Ok(self.characters[s1.rho].eval(self.two_group.coeff(), value))
    }

    /// The associator scalar as a root of unity.
    pub fn associator_value(&self, s1: FusionSimple, s2: FusionSimple, s3: FusionSimple) -> Result<CyclotomicRational, FusionError> {
        self.associator_scalar(s1, s2, s3).map(root_of_unity)
    }

    /// The summands `(e, ρ)` of the unit object.
    pub fn unit_summands(&self) -> Vec<FusionSimple> {
        let e = self.group().identity();
        (0..self.characters.len()).map(|rho| FusionSimple { g: e, rho }).collect()
    }

    pub fn is_unit_summand(&self, s: FusionSimple) -> bool {
        s.g == self.group().identity()
    }

    /// `(g⁻¹, g⁻¹ ▷ ρ)`.
    pub fn dual_simple(&self, s: FusionSimple) -> FusionSimple {
        let inv = self.group().inv(s.g);
        FusionSimple { g: inv, rho: self.act(inv, s.rho) }
    }

    /// The simples `(g, ρ)` with `g ▷ σ = ρ`, spanning maps from the `σ`-part
    /// of the unit to the `ρ`-part.
    pub fn hom_component(&self, rho: usize, sigma: usize) -> Vec<FusionSimple> {
        self.orbits.transporter(sigma, rho).into_iter().map(|g| FusionSimple { g, rho }).collect()
    }

    /// The pairs `((g,σ),(g,τ))` with `σ + τ = ρ`.
    pub fn diagonal_image(&self, s: FusionSimple) -> Vec<(FusionSimple, FusionSimple)> {
        let a = self.two_group.coeff();
        let dual = a.dual();
        let rho = dual.element(s.rho);
        (0..self.characters.len())
            .map(|sigma| {
                let tau = dual.index_of(&dual.add(&rho, &dual.neg(&dual.element(sigma))));
                (FusionSimple { g: s.g, rho: sigma }, FusionSimple { g: s.g, rho: tau })
            })
            .collect()
    }

    /// Checks the scalar pentagon on every composable quadruple.
    ///
    /// For `s₁ ⊗ s₂ ⊗ s₃ ⊗ s₄` nonzero, compares
    /// `a(s₁,s₂,s₃s₄) + a(s₁s₂,s₃,s₄)` with
    /// `a(s₂,s₃,s₄) + a(s₁,s₂s₃,s₄) + a(s₁,s₂,s₃)`.
    pub fn pentagon_check(&self) -> Result<(), PentagonFailure> {
        let g = self.group();
        for rho in 0..self.characters.len() {
            for a in g.elements() {
                let sigma = self.act(g.inv(a), rho);
                for b in g.elements() {
                    let tau = self.act(g.inv(b), sigma);
                    for c in g.elements() {
                        let upsilon = self.act(g.inv(c), tau);
                        for d in g.elements() {
                            let s = [
                                FusionSimple { g: a, rho },
                                FusionSimple { g: b, rho: sigma },
                                FusionSimple { g: c, rho: tau },
                                FusionSimple { g: d, rho: upsilon },
                            ];
                            let defect = self.pentagon_defect(s).expect("composable by construction");
                            if !defect.is_zero() {
                                return Err(PentagonFailure { simples: s, defect });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn pentagon_defect(&self, s: [FusionSimple; 4]) -> Result<Qz, FusionError> {
        let fuse = |x, y| self.fuse(x, y).ok_or(FusionError::ZeroComposite);
        let s12 = fuse(s[0], s[1])?;
        let s23 = fuse(s[1], s[2])?;
        let s34 = fuse(s[2], s[3])?;
        let lhs = self.associator_scalar(s[0], s[1], s34)? + self.associator_scalar(s12, s[2], s[3])?;
        let rhs = self.associator_scalar(s[1], s[2], s[3])?
            + self.associator_scalar(s[0], s23, s[3])?
            + self.associator_scalar(s[0], s[1], s[2])?;
        Ok(lhs - rhs)
    }

    /// The pointed datum `(Stab(ρ), (ρ∘α)|_{Stab(ρ)})` at a character.
    pub fn pointed_summand(&self, rho: usize, opts: &CohomologyOptions) -> Result<PointedSummand, FusionError> {
        let stabilizer = self.orbits.stabilizer_of(rho);
        let (sub, embedding) = self.group().subgroup(&stabilizer)?;
        let sub = Arc::new(sub);
        let cocycle = self.two_group.alpha().evaluate(&self.characters[rho]).restrict(sub.clone(), &embedding);
        let class_trivial = qz_coboundary_witness(&cocycle, opts)?.is_some();
        Ok(PointedSummand { base_character: rho, stabilizer, group: sub, cocycle, class_trivial })
    }

    /// Splits `Vect_𝒢` into indecomposable blocks, one per orbit of `G` on `Â`.
    pub fn decompose(&self, opts: &CohomologyOptions) -> Result<MultiFusionReport, FusionError> {
        let orbit_count = self.orbits.orbits.len();
        let blocks: Vec<Result<Block, FusionError>> = if orbit_count > 1 {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..orbit_count).map(|i| scope.spawn(move || self.block(i, opts))).collect();
                handles.into_iter().map(|h| h.join().expect("block worker panicked")).collect()
            })
        } else {
            (0..orbit_count).map(|i| self.block(i, opts)).collect()
        };
        let blocks = blocks.into_iter().collect::<Result<Vec<_>, _>>()?;
        let totals = Totals {
            simple_count: blocks.iter().map(|b| b.simple_count).sum(),
            unit_summand_count: self.characters.len(),
            component_count: blocks.len(),
        };
        debug_assert_eq!(totals.simple_count, self.simple_count());
        Ok(MultiFusionReport { blocks, totals })
    }

    fn block(&self, orbit: usize, opts: &CohomologyOptions) -> Result<Block, FusionError> {
        let characters = self.orbits.orbits[orbit].clone();
        let representative = self.orbits.representative(orbit);
        let matrix = characters
            .iter()
            .map(|&r| characters.iter().map(|&s| self.hom_component(r, s).len()).collect())
            .collect();
        let summand = self.pointed_summand(representative, opts)?;
        let kind = if characters.len() == 1 {
            BlockKind::Pointed
        } else if summand.stabilizer.len() == 1 {
            BlockKind::Matrix
        } else {
            BlockKind::Mixed
        };
        let simple_count = characters.len() * self.group().order();
        Ok(Block { characters, kind, matrix, summand, simple_count })
    }
}

/// The diagonal pointed fusion category of a block.
#[derive(Clone, Debug)]
pub struct PointedSummand {
    pub base_character: usize,
    /// `Stab(ρ)` as sorted elements of `G`.
    pub stabilizer: Vec<usize>,
    /// `Stab(ρ)` re-indexed by position in `stabilizer`.
    pub group: Arc<FiniteGroup>,
    /// `(ρ∘α)|_{Stab(ρ)}`, a 3-cocycle with values in ℚ/ℤ.
    pub cocycle: QzCochain,
    /// Whether the cocycle is a coboundary.
    pub class_trivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// A singleton orbit: the block is the pointed category itself.
    Pointed,
    /// Trivial stabilizers: the block is `End(Vect^{⊕n})`.
    Matrix,
    /// Neither; Morita equivalent to its pointed diagonal summand.
    Mixed,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Pointed => "pointed",
            BlockKind::Matrix => "matrix",
            BlockKind::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    /// The orbit, as sorted character indices.
    pub characters: Vec<usize>,
    pub kind: BlockKind,
    /// `matrix[i][j]` = number of simples from the `characters[j]` part of the
    /// unit to the `characters[i]` part.
    pub matrix: Vec<Vec<usize>>,
    pub summand: PointedSummand,
    pub simple_count: usize,
}

impl Block {
    /// `Vect_H^ω`, `End(Vect^{⊕n})` or `Mat_n(Vect_H^ω)`, with `ω` shown only
    /// when its class is nontrivial.
    pub fn label(&self) -> String {
        let n = self.characters.len();
        let h = self.summand.group.descriptor();
        let pointed = if h == "1" {
            "Vect".to_string()
        } else if self.summand.class_trivial {
            format!("Vect_{h}")
        } else {
            format!("Vect_{h}^ω")
        };
        match self.kind {
            BlockKind::Pointed => pointed,
            BlockKind::Matrix => format!("End({})", vec!["Vect"; n].join("⊕")),
            BlockKind::Mixed => format!("Mat{n}({pointed})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Totals {
    pub simple_count: usize,
    pub unit_summand_count: usize,
    pub component_count: usize,
}

#[derive(Clone, Debug)]
pub struct MultiFusionReport {
    pub blocks: Vec<Block>,
    pub totals: Totals,
}

impl MultiFusionReport {
    /// Blocks joined with `⊕`, e.g. `Vect_Z2 ⊕ End(Vect⊕Vect)`.
    pub fn label(&self) -> String {
        self.blocks.iter().map(Block::label).collect::<Vec<_>>().join(" ⊕ ")
    }

    /// Block kinds and sizes, for comparing reports.
    pub fn shape(&self) -> Vec<(BlockKind, Vec<usize>, Vec<Vec<usize>>)> {
        self.blocks.iter().map(|b| (b.kind, b.characters.clone(), b.matrix.clone())).collect()
    }
}
