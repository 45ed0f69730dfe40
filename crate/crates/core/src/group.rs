//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, VecDeque};

use crate::error::GroupError;

/// Default bound on the group order for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 24;

/// A finite group on the elements `0..order`, validated on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("identity", &self.identity).finish()
    }
}

impl FiniteGroup {
    /// Validates a square multiplication table over `0..n`.
    ///
    /// Identity and inverses are located first; associativity is then checked
    /// on all `n³` triples.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(GroupError::EntryOutOfRange { row: i, col: j, value: row[j] });
            }
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(GroupError::NoInverse { element: x })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, identity })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// ℤ/n with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mul = (0..n * n).map(|t| (t / n + t % n) % n).collect();
        let inv = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup { order: n, mul, inv, identity: 0 }
    }

    /// Direct product; the pair `(a, b)` has index `a·|other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut mul = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                mul.push(a * m + b);
            }
        }
        let inv = (0..n * m).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        FiniteGroup { order: n * m, mul, inv, identity: self.identity * m + other.identity }
    }

    /// The symmetric group on `k` points; permutations listed lexicographically,
    /// composed as functions (`(στ)(i) = σ(τ(i))`).
    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..k).collect(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect())).collect())
            .collect();
        FiniteGroup::from_table(&table).expect("symmetric group table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// A generating set built greedily: repeatedly add the smallest element
    /// outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order {
            let g = self.elements().find(|x| span.binary_search(x).is_err()).unwrap();
            gens.push(g);
            span = self.generated_by(&gens);
        }
        gens
    }

    /// All automorphisms as permutations of element indices, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> =
            gens.iter().map(|&g| self.elements().filter(|&x| self.element_order(x) == self.element_order(g)).collect()).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
            if let Some(map) = self.extend_homomorphism(&gens, &images) {
                let mut seen = vec![false; self.order];
                map.iter().for_each(|&y| seen[y] = true);
                if seen.iter().all(|&b| b) {
                    out.push(map);
                }
            }
            let mut i = 0;
            loop {
                if i == gens.len() {
                    out.sort();
                    return out;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// The endomorphism sending `gens[i] ↦ images[i]`, if one exists.
    fn extend_homomorphism(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = self.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let hom = self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])));
        hom.then_some(map)
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, x)).collect();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Number of conjugacy classes (the number of irreducible complex
    /// representations).
    pub fn conjugacy_class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Builds the subgroup on `elements` as a group in its own right.
    ///
    /// Returns the group, re-indexed by position in the sorted element list,
    /// together with the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut embedding: Vec<usize> = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        let pos = |x: usize| embedding.binary_search(&x).ok();
        let mut table = Vec::with_capacity(embedding.len());
        for &a in &embedding {
            let mut row = Vec::with_capacity(embedding.len());
            for &b in &embedding {
                row.push(pos(self.mul(a, b)).ok_or(GroupError::NotClosed { a, b })?);
            }
            table.push(row);
        }
        let group = FiniteGroup::from_table(&table)?;
        Ok((group, embedding))
    }

    /// Every subgroup exactly once, grouped into conjugacy classes.
    pub fn subgroups(&self, bound: usize) -> Result<SubgroupLattice, GroupError> {
        if self.order > bound {
            return Err(GroupError::SizeBound { order: self.order, bound });
        }
        // every subgroup is reached by adjoining one element at a time
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![self.identity];
        all.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in self.elements() {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated_by(&gens);
                if all.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        let mut subgroups: Vec<Vec<usize>> = all.into_iter().collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for g in self.elements() {
                let mut conj: Vec<usize> = subgroups[i].iter().map(|&x| self.conjugate(g, x)).collect();
                conj.sort_unstable();
                let j = subgroups.iter().position(|s| *s == conj).expect("conjugate is a subgroup");
                members.insert(j);
            }
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        Ok(SubgroupLattice { subgroups, classes })
    }

    /// A short human-readable name: `1`, `Z<n>`, or `G<n>` (`A<n>` if abelian).
    pub fn descriptor(&self) -> String {
        if self.order == 1 {
            "1".to_string()
        } else if self.is_cyclic() {
            format!("Z{}", self.order)
        } else if self.is_abelian() {
            format!("A{}", self.order)
        } else {
            format!("G{}", self.order)
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// All subgroups of a group (sorted element lists, ordered by size then
/// lexicographically) and their partition into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Vec<usize>>,
    /// Indices into `subgroups`; each class sorted, classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    /// One representative (the first member) per conjugacy class.
    pub fn class_representatives(&self) -> impl Iterator<Item = &[usize]> {
        self.classes.iter().map(move |c| self.subgroups[c[0]].as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed subsets containing the identity, by brute force over all subsets.
    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u32..(1 << n))
            .filter(|mask| {
                let has = |x: usize| mask & (1 << x) != 0;
                has(g.identity())
                    && (0..n).all(|a| (0..n).all(|b| !(has(a) && has(b)) || has(g.mul(a, b))))
            })
            .count()
    }

    #[test]
    fn trivial_and_z2() {
        let t = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.identity(), 0);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn rejects_bad_tables() {
        // identity is 1; nothing multiplies 0 back to 1
        let err = FiniteGroup::from_table(&[vec![0, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { element: 0 });
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 1], vec![0]]), Err(GroupError::NotSquare { .. })));
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]), Err(GroupError::EntryOutOfRange { .. })));
        assert_eq!(FiniteGroup::from_table(&[vec![1, 0], vec![0, 0]]).unwrap_err(), GroupError::NoIdentity);
        // a Latin square with identity 0 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(&loop5) {
            Err(GroupError::NotAssociative { a, b, c }) => {
                let m = |x: usize, y: usize| loop5[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let l = z2.subgroups(DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!((l.subgroups.len(), l.classes.len()), (2, 2));

        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.subgroups(24).unwrap().subgroups.len(), 3);
        assert_eq!(brute_subgroups(&z4), 3);

        let s3 = FiniteGroup::symmetric(3);
        let l = s3.subgroups(24).unwrap();
        assert_eq!(l.subgroups.len(), brute_subgroups(&s3));
        assert_eq!((l.subgroups.len(), l.classes.len()), (6, 4));

        let k4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert_eq!(k4.subgroups(24).unwrap().subgroups.len(), brute_subgroups(&k4));

        assert!(matches!(FiniteGroup::symmetric(4).subgroups(12), Err(GroupError::SizeBound { .. })));
        let s4 = FiniteGroup::symmetric(4).subgroups(24).unwrap();
        assert_eq!((s4.subgroups.len(), s4.classes.len()), (30, 11));
    }

    #[test]
    fn class_counts() {
        assert_eq!(FiniteGroup::cyclic(5).conjugacy_class_count(), 5);
        assert_eq!(FiniteGroup::symmetric(3).conjugacy_class_count(), 3);
        assert_eq!(FiniteGroup::trivial().conjugacy_class_count(), 1);
        assert_eq!(FiniteGroup::symmetric(4).conjugacy_class_count(), 5);
    }

    #[test]
    fn products_and_subgroups() {
        let g = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(3));
        assert!(g.is_cyclic());
        assert_eq!(g.descriptor(), "Z6");
        assert_eq!(FiniteGroup::symmetric(3).descriptor(), "G6");
        let s3 = FiniteGroup::symmetric(3);
        let rot = s3.elements().filter(|&x| s3.element_order(x) != 2).collect::<Vec<_>>();
        let (h, emb) = s3.subgroup(&rot).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(emb, rot);
        assert!(matches!(s3.subgroup(&[0, 1, 2]), Err(GroupError::NotClosed { .. })));
        assert_eq!(s3.generated_by(&s3.generators()).len(), 6);
    }

    #[test]
    fn automorphism_counts() {
        let k4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        for (g, n) in [(FiniteGroup::trivial(), 1), (FiniteGroup::cyclic(4), 2), (FiniteGroup::cyclic(6), 2), (k4, 6), (FiniteGroup::symmetric(3), 6), (FiniteGroup::cyclic(5), 4)] {
            let auts = g.automorphisms();
            assert_eq!(auts.len(), n);
            assert_eq!(auts[0], g.elements().collect::<Vec<_>>());
        }
    }
}
