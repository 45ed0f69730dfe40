//! Finite abelian groups in invariant-factor form, their characters, and
//! group actions by automorphisms.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{ActionError, GroupError};
use crate::group::FiniteGroup;
use crate::qz::Qz;

/// `ℤ/d₁ × … × ℤ/d_k`. Elements are residue vectors, indexed in mixed radix
/// with the first component most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<AbelianGroup, GroupError> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(GroupError::BadInvariantFactor(d));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        if n == 1 {
            AbelianGroup::trivial()
        } else {
            AbelianGroup::new(vec![n]).unwrap()
        }
    }

    /// Every abelian group of order at most `n` up to isomorphism, as
    /// invariant-factor chains `d₁ | d₂ | …`, sorted by order.
    pub fn all_up_to_order(n: usize) -> Vec<AbelianGroup> {
        fn extend(chain: &mut Vec<u64>, order: u64, n: u64, out: &mut Vec<Vec<u64>>) {
            out.push(chain.clone());
            let last = chain.last().copied();
            let mut d = last.unwrap_or(2);
            while order * d <= n {
                if last.is_none_or(|l| d % l == 0) {
                    chain.push(d);
                    extend(chain, order * d, n, out);
                    chain.pop();
                }
                d += 1;
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), 1, n as u64, &mut out);
        let mut groups: Vec<AbelianGroup> = out.into_iter().map(|factors| AbelianGroup { factors }).collect();
        groups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.factors.cmp(&b.factors)));
        groups
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// Least common multiple of the factors (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |e, &d| num_integer::lcm(e, d))
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut v = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let d = self.factors[i] as usize;
            v[i] = (index % d) as u64;
            index /= d;
        }
        v
    }

    pub fn index_of(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.factors).fold(0, |acc, (&x, &d)| acc * d as usize + (x % d) as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Reduces an integer vector componentwise.
    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        v.iter().zip(&self.factors).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &d)| (d - x) % d).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    /// The group as a multiplication table, indexed like [`Self::element`].
    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let a = self.element(i);
                (0..n).map(|j| self.index_of(&self.add(&a, &self.element(j)))).collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("abelian group table")
    }

    /// Characters of the group, in the same canonical order as the elements.
    pub fn dual_group(&self) -> Vec<Character> {
        (0..self.order()).map(|i| Character { components: self.element(i) }).collect()
    }

    /// The character group, which has the same invariant factors.
    pub fn dual(&self) -> AbelianGroup {
        self.clone()
    }

    /// Evaluates the character with component vector `chi` at `a`.
    pub fn pairing(&self, chi: &[u64], a: &[u64]) -> Qz {
        chi.iter().zip(a).zip(&self.factors).map(|((&c, &x), &d)| Qz::new((c * x % d) as i64, d)).sum()
    }
}

/// A character `a ↦ Σ cᵢ·aᵢ/dᵢ` with values in ℚ/ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub components: Vec<u64>,
}

impl Character {
    pub fn eval(&self, group: &AbelianGroup, a: &[u64]) -> Qz {
        group.pairing(&self.components, a)
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    /// Renders as `χ[c₁,…,c_k]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        format!("χ[{}]", parts.join(","))
    }
}

/// Integer matrices over `ℤ/d₁ × … × ℤ/d_k`: entry `(j, i)` is reduced mod `d_j`.
pub type ActionMatrix = Vec<Vec<i64>>;

/// An action of a finite group on a finite abelian group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAction {
    source: FiniteGroup,
    target: AbelianGroup,
    matrices: Vec<ActionMatrix>,
    table: Vec<Vec<usize>>,
}

fn reduce_matrix(a: &AbelianGroup, m: &ActionMatrix) -> ActionMatrix {
    m.iter()
        .zip(a.factors())
        .map(|(row, &d)| row.iter().map(|&x| x.rem_euclid(d as i64)).collect())
        .collect()
}

fn compose(a: &AbelianGroup, m1: &ActionMatrix, m2: &ActionMatrix) -> ActionMatrix {
    let k = a.rank();
    let m: ActionMatrix = (0..k)
        .map(|j| (0..k).map(|i| (0..k).map(|l| m1[j][l] * m2[l][i]).sum()).collect())
        .collect();
    reduce_matrix(a, &m)
}

fn identity_matrix(k: usize) -> ActionMatrix {
    (0..k).map(|j| (0..k).map(|i| i64::from(i == j)).collect()).collect()
}

/// Image of `v` under the matrix, reduced into the group.
pub fn apply_matrix(a: &AbelianGroup, m: &ActionMatrix, v: &[u64]) -> Vec<u64> {
    let k = a.rank();
    (0..k)
        .map(|j| {
            let d = a.factors()[j] as i128;
            let s: i128 = (0..k).map(|i| m[j][i] as i128 * v[i] as i128).sum();
            s.rem_euclid(d) as u64
        })
        .collect()
}

/// Checks that `m` induces a well-defined bijective endomorphism of `a`.
fn check_automorphism(a: &AbelianGroup, m: &ActionMatrix, element: usize) -> Result<(), ActionError> {
    let k = a.rank();
    if m.len() != k || m.iter().any(|r| r.len() != k) {
        return Err(ActionError::BadShape { element });
    }
    let f = a.factors();
    for i in 0..k {
        for j in 0..k {
            if (f[i] as i64 * m[j][i]).rem_euclid(f[j] as i64) != 0 {
                return Err(ActionError::NotWellDefined { element, row: j, col: i, factor: f[i] });
            }
        }
    }
    let mut hit = vec![false; a.order()];
    for v in a.elements() {
        let w = a.index_of(&apply_matrix(a, m, &v));
        if hit[w] {
            return Err(ActionError::NotBijective { element });
        }
        hit[w] = true;
    }
    Ok(())
}

impl GroupAction {
    /// One matrix per group element.
    pub fn new(source: FiniteGroup, target: AbelianGroup, matrices: Vec<ActionMatrix>) -> Result<GroupAction, ActionError> {
        if matrices.len() != source.order() {
            return Err(ActionError::WrongCount { expected: source.order(), got: matrices.len() });
        }
        for (g, m) in matrices.iter().enumerate() {
            check_automorphism(&target, m, g)?;
        }
        let matrices: Vec<ActionMatrix> = matrices.iter().map(|m| reduce_matrix(&target, m)).collect();
        let table: Vec<Vec<usize>> = matrices
            .iter()
            .map(|m| target.elements().map(|v| target.index_of(&apply_matrix(&target, m, &v))).collect())
            .collect();
        let action = GroupAction { source, target, matrices, table };
        action.check_homomorphism()?;
        Ok(action)
    }

    fn check_homomorphism(&self) -> Result<(), ActionError> {
        let e = self.source.identity();
        if self.table[e].iter().enumerate().any(|(i, &j)| i != j) {
            return Err(ActionError::IdentityNontrivial);
        }
        for g in self.source.elements() {
            for h in self.source.elements() {
                let gh = self.source.mul(g, h);
                if (0..self.target.order()).any(|a| self.table[gh][a] != self.table[g][self.table[h][a]]) {
                    return Err(ActionError::NotHomomorphism { g, h });
                }
            }
        }
        Ok(())
    }

    pub fn trivial(source: FiniteGroup, target: AbelianGroup) -> GroupAction {
        let k = target.rank();
        let mats = vec![identity_matrix(k); source.order()];
        GroupAction::new(source, target, mats).expect("trivial action")
    }

    /// Extends images of a generating set to the whole group.
    pub fn from_generator_images(
        source: FiniteGroup,
        target: AbelianGroup,
        images: &[(usize, ActionMatrix)],
    ) -> Result<GroupAction, ActionError> {
        let k = target.rank();
        for (g, m) in images {
            if *g >= source.order() {
                return Err(ActionError::ElementOutOfRange(*g));
            }
            check_automorphism(&target, m, *g)?;
        }
        let images: Vec<(usize, ActionMatrix)> = images.iter().map(|(g, m)| (*g, reduce_matrix(&target, m))).collect();
        let mut mats: Vec<Option<ActionMatrix>> = vec![None; source.order()];
        mats[source.identity()] = Some(identity_matrix(k));
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().unwrap();
            for (g, mg) in &images {
                let y = source.mul(x, *g);
                let my = compose(&target, &mx, mg);
                match &mats[y] {
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != my => return Err(ActionError::NotHomomorphism { g: x, h: *g }),
                    Some(_) => {}
                }
            }
        }
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or(ActionError::DoesNotGenerate { element: g }))
            .collect::<Result<Vec<_>, _>>()?;
        GroupAction::new(source, target, mats)
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self, g: usize) -> &ActionMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ActionMatrix] {
        &self.matrices
    }

    /// `g ▷ a` on element indices.
    #[inline]
    pub fn act_index(&self, g: usize, a: usize) -> usize {
        self.table[g][a]
    }

    /// `g ▷ a` on residue vectors.
    pub fn act(&self, g: usize, a: &[u64]) -> Vec<u64> {
        apply_matrix(&self.target, &self.matrices[g], a)
    }

    /// Permutation tables, one per group element.
    pub fn permutation_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|row| row.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// The induced action on characters, `(g ▷ ρ)(a) = ρ(g⁻¹ ▷ a)`.
    ///
    /// Characters are indexed like the elements of the target, so the result
    /// acts on an abelian group with the same invariant factors.
    pub fn dual_action(&self) -> GroupAction {
        let mats = self.source.elements().map(|g| self.dual_matrix(g)).collect();
        GroupAction::new(self.source.clone(), self.target.dual(), mats).expect("dual of a valid action is valid")
    }

    fn dual_matrix(&self, g: usize) -> ActionMatrix {
        let f = self.target.factors();
        let k = f.len();
        let m = &self.matrices[self.source.inv(g)];
        (0..k)
            .map(|l| {
                (0..k)
                    .map(|i| {
                        // m_{il}·d_l is divisible by d_i because the action is well defined
                        let num = m[i][l] as i128 * f[l] as i128;
                        debug_assert_eq!(num.rem_euclid(f[i] as i128), 0);
                        (num / f[i] as i128).rem_euclid(f[l] as i128) as i64
                    })
                    .collect()
            })
            .collect()
    }
}

/// All automorphisms of `a`, as reduced matrices (identity first).
pub fn automorphisms(a: &AbelianGroup) -> Vec<ActionMatrix> {
    let k = a.rank();
    let f = a.factors();
    // column i is the image of the i-th basis vector: any element whose order divides d_i
    let columns: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| a.elements().filter(|v| a.index_of(&v.iter().map(|&x| x * f[i]).collect::<Vec<_>>()) == 0).collect())
        .collect();
    let mut out = vec![identity_matrix(k)];
    let mut choice = vec![0usize; k];
    if k == 0 {
        return out;
    }
    loop {
        let m: ActionMatrix = (0..k).map(|j| (0..k).map(|i| columns[i][choice[i]][j] as i64).collect()).collect();
        if m != out[0] && check_automorphism(a, &m, 0).is_ok() {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            choice[i] += 1;
            if choice[i] < columns[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every action of `g` on `a` (every homomorphism `g → Aut(a)`).
pub fn all_actions(g: &FiniteGroup, a: &AbelianGroup) -> Vec<GroupAction> {
    let auts = automorphisms(a);
    let gens = g.generators();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<(usize, ActionMatrix)> = gens.iter().zip(&choice).map(|(&x, &c)| (x, auts[c].clone())).collect();
        if let Ok(act) = GroupAction::from_generator_images(g.clone(), a.clone(), &images) {
            out.push(act);
        }
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < auts.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Orbits of a group acting on `0..n` by permutation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// Each orbit sorted; orbits ordered by their smallest point.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer (sorted group elements) of each orbit's smallest point.
    pub stabilizers: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    table: Arc<Vec<Vec<usize>>>,
}

impl OrbitDecomposition {
    /// `table[g][x]` is the image of point `x` under group element `g`.
    pub fn new(group: &FiniteGroup, table: &[Vec<usize>]) -> OrbitDecomposition {
        let n = table.first().map_or(0, |r| r.len());
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        let mut stabilizers = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = group.elements().map(|g| table[g][x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                orbit_of[y] = orbits.len();
            }
            orbits.push(orbit);
            stabilizers.push(group.elements().filter(|&g| table[g][x] == x).collect());
        }
        OrbitDecomposition { orbits, stabilizers, orbit_of, table: Arc::new(table.to_vec()) }
    }

    pub fn representative(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }

    /// All group elements sending `from` to `to`.
    pub fn transporter(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.table.len()).filter(|&g| self.table[g][from] == to).collect()
    }

    pub fn stabilizer_of(&self, x: usize) -> Vec<usize> {
        self.transporter(x, x)
    }
}

impl GroupAction {
    /// Orbits and stabilizers of the dual action on characters.
    pub fn character_orbits(&self) -> OrbitDecomposition {
        let dual = self.dual_action();
        OrbitDecomposition::new(&self.source, dual.permutation_table())
    }
}
