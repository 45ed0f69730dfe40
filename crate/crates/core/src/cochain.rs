//! Inhomogeneous cochains `Gⁿ → M` and their differential.
//!
//! Everything is additive. The differential of an `n`-cochain `c` is
//!
//! ```text
//! (dc)(g₁,…,g_{n+1}) = g₁ ▷ c(g₂,…,g_{n+1})
//!                    + Σ_{i=1..n} (-1)^i c(g₁,…,g_i·g_{i+1},…,g_{n+1})
//!                    + (-1)^{n+1} c(g₁,…,g_n)
//! ```
//!
//! so for `n = 3` the condition `dα = 0` reads
//! `g▷α(h,k,l) − α(gh,k,l) + α(g,hk,l) − α(g,h,kl) + α(g,h,k) = 0`, the
//! additive form of the pentagon for a skeletal 2-group. Cochains are not
//! assumed normalized.

use std::sync::Arc;

use crate::abelian::GroupAction;
use crate::group::FiniteGroup;
use crate::qz::Qz;

/// Number of `n`-tuples over a group of the given order.
pub fn tuple_count(order: usize, degree: usize) -> usize {
    order.pow(degree as u32)
}

/// Index of a tuple, first entry most significant.
pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub fn index_tuple(order: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for i in (0..degree).rev() {
        t[i] = index % order;
        index /= order;
    }
    t
}

/// One term of `(dc)(tuple)`: `sign · [g ▷] c(face)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Face {
    pub sign: i64,
    /// Group element acting on the value, for the leading term.
    pub acting: Option<usize>,
    pub index: usize,
}

/// The `n + 2` faces of an `(n+1)`-tuple.
pub(crate) fn faces(group: &FiniteGroup, tuple: &[usize]) -> Vec<Face> {
    let n1 = tuple.len();
    let order = group.order();
    let mut out = Vec::with_capacity(n1 + 1);
    out.push(Face { sign: 1, acting: Some(tuple[0]), index: tuple_index(order, &tuple[1..]) });
    let mut buf = Vec::with_capacity(n1 - 1);
    for i in 1..n1 {
        buf.clear();
        buf.extend_from_slice(&tuple[..i - 1]);
        buf.push(group.mul(tuple[i - 1], tuple[i]));
        buf.extend_from_slice(&tuple[i + 1..]);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push(Face { sign, acting: None, index: tuple_index(order, &buf) });
    }
    let sign = if n1.is_multiple_of(2) { 1 } else { -1 };
    out.push(Face { sign, acting: None, index: tuple_index(order, &tuple[..n1 - 1]) });
    out
}

/// A cochain with values in a finite module `A` with `G`-action.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    action: Arc<GroupAction>,
    degree: usize,
    /// Row-major: `values[t·k + i]` is component `i` at tuple index `t`.
    values: Vec<u64>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cochain").field("degree", &self.degree).field("values", &self.values).finish()
    }
}

impl Cochain {
    pub fn zero(action: Arc<GroupAction>, degree: usize) -> Cochain {
        let len = tuple_count(action.source().order(), degree) * action.target().rank();
        Cochain { action, degree, values: vec![0; len] }
    }

    pub fn from_fn(action: Arc<GroupAction>, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Cochain {
        let mut c = Cochain::zero(action, degree);
        let order = c.group().order();
        for t in 0..tuple_count(order, degree) {
            let tuple = index_tuple(order, degree, t);
            let v = c.action.target().reduce(&f(&tuple));
            c.set_at(t, &v);
        }
        c
    }

    /// Builds from flat component values (reduced on entry).
    pub fn from_flat(action: Arc<GroupAction>, degree: usize, values: Vec<i64>) -> Cochain {
        let mut c = Cochain::zero(action, degree);
        assert_eq!(values.len(), c.values.len(), "cochain length");
        let k = c.rank();
        for (t, chunk) in values.chunks(k.max(1)).enumerate().take(c.len()) {
            if k > 0 {
                let v = c.action.target().reduce(chunk);
                c.set_at(t, &v);
            }
        }
        c
    }

    pub fn action(&self) -> &Arc<GroupAction> {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.source()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn rank(&self) -> usize {
        self.action.target().rank()
    }

    /// Number of tuples.
    pub fn len(&self) -> usize {
        tuple_count(self.group().order(), self.degree)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self) -> &[u64] {
        &self.values
    }

    pub fn at(&self, index: usize) -> &[u64] {
        let k = self.rank();
        &self.values[index * k..(index + 1) * k]
    }

    pub fn get(&self, tuple: &[usize]) -> &[u64] {
        assert_eq!(tuple.len(), self.degree);
        self.at(tuple_index(self.group().order(), tuple))
    }

    pub fn set_at(&mut self, index: usize, value: &[u64]) {
        let k = self.rank();
        self.values[index * k..(index + 1) * k].copy_from_slice(value);
    }

    pub fn set(&mut self, tuple: &[usize], value: &[u64]) {
        let idx = tuple_index(self.group().order(), tuple);
        self.set_at(idx, value);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// True when both cochains have the same group, module, action and degree.
    pub fn compatible(&self, other: &Cochain) -> bool {
        self.degree == other.degree && (Arc::ptr_eq(&self.action, &other.action) || *self.action == *other.action)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert!(self.compatible(other));
        self.zip_with(other, |a, b, d| (a + b) % d)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert!(self.compatible(other));
        self.zip_with(other, |a, b, d| (a + d - b) % d)
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(u64, u64, u64) -> u64) -> Cochain {
        let k = self.rank();
        let factors = self.action.target().factors();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (&a, &b))| f(a, b, factors[i % k]))
            .collect();
        Cochain { action: self.action.clone(), degree: self.degree, values }
    }

    /// `d(self)`, a cochain of degree `n + 1`.
    pub fn differential(&self) -> Cochain {
        let order = self.group().order();
        let a = self.action.target();
        let mut out = Cochain::zero(self.action.clone(), self.degree + 1);
        let k = self.rank();
        if k == 0 {
            return out;
        }
        let mut acc = vec![0i64; k];
        for t in 0..out.len() {
            let tuple = index_tuple(order, self.degree + 1, t);
            acc.iter_mut().for_each(|x| *x = 0);
            for face in faces(self.group(), &tuple) {
                let v = self.at(face.index);
                let v = match face.acting {
                    Some(g) => self.action.act(g, v),
                    None => v.to_vec(),
                };
                for i in 0..k {
                    acc[i] += face.sign * v[i] as i64;
                }
            }
            let v = a.reduce(&acc);
            out.set_at(t, &v);
        }
        out
    }

    /// `Ok(())` if `d(self) = 0`, otherwise the first tuple where it is not.
    pub fn cocycle_witness(&self) -> Result<(), Vec<usize>> {
        let d = self.differential();
        let order = self.group().order();
        match (0..d.len()).find(|&t| d.at(t).iter().any(|&x| x != 0)) {
            None => Ok(()),
            Some(t) => Err(index_tuple(order, self.degree + 1, t)),
        }
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_witness().is_ok()
    }

    /// Evaluates a character on every value: `ρ ∘ self`, with values in ℚ/ℤ.
    pub fn evaluate(&self, character: &crate::abelian::Character) -> QzCochain {
        let a = self.action.target();
        let values = (0..self.len()).map(|t| character.eval(a, self.at(t))).collect();
        QzCochain { group: Arc::new(self.group().clone()), degree: self.degree, values }
    }
}

/// A cochain with values in ℚ/ℤ and trivial action.
#[derive(Clone, PartialEq, Eq)]
pub struct QzCochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    values: Vec<Qz>,
}

impl std::fmt::Debug for QzCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QzCochain").field("degree", &self.degree).field("values", &self.values).finish()
    }
}

impl QzCochain {
    pub fn zero(group: Arc<FiniteGroup>, degree: usize) -> QzCochain {
        let len = tuple_count(group.order(), degree);
        QzCochain { group, degree, values: vec![Qz::ZERO; len] }
    }

    pub fn from_fn(group: Arc<FiniteGroup>, degree: usize, mut f: impl FnMut(&[usize]) -> Qz) -> QzCochain {
        let order = group.order();
        let values = (0..tuple_count(order, degree)).map(|t| f(&index_tuple(order, degree, t))).collect();
        QzCochain { group, degree, values }
    }

    pub fn from_values(group: Arc<FiniteGroup>, degree: usize, values: Vec<Qz>) -> QzCochain {
        assert_eq!(values.len(), tuple_count(group.order(), degree), "cochain length");
        QzCochain { group, degree, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Qz] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, tuple: &[usize]) -> Qz {
        self.values[tuple_index(self.group.order(), tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: Qz) {
        let i = tuple_index(self.group.order(), tuple);
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Qz::is_zero)
    }

    /// Least common multiple of the denominators: every value lies in `(1/M)ℤ/ℤ`.
    pub fn torsion_bound(&self) -> u64 {
        self.values.iter().fold(1, |m, v| num_integer::lcm(m, v.denom()))
    }

    pub fn compatible(&self, other: &QzCochain) -> bool {
        self.degree == other.degree && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }

    pub fn add(&self, other: &QzCochain) -> QzCochain {
        assert!(self.compatible(other));
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect();
        QzCochain { group: self.group.clone(), degree: self.degree, values }
    }

    pub fn sub(&self, other: &QzCochain) -> QzCochain {
        assert!(self.compatible(other));
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a - b).collect();
        QzCochain { group: self.group.clone(), degree: self.degree, values }
    }

    pub fn differential(&self) -> QzCochain {
        let order = self.group.order();
        let n1 = self.degree + 1;
        let values = (0..tuple_count(order, n1))
            .map(|t| {
                let tuple = index_tuple(order, n1, t);
                faces(&self.group, &tuple).iter().map(|f| self.values[f.index].times(f.sign)).sum()
            })
            .collect();
        QzCochain { group: self.group.clone(), degree: n1, values }
    }

    pub fn cocycle_witness(&self) -> Result<(), Vec<usize>> {
        let d = self.differential();
        match d.values.iter().position(|v| !v.is_zero()) {
            None => Ok(()),
            Some(t) => Err(index_tuple(self.group.order(), self.degree + 1, t)),
        }
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_witness().is_ok()
    }

    /// Restriction along a subgroup embedding (`embedding[i]` is the image of
    /// the subgroup's element `i`).
    pub fn restrict(&self, subgroup: Arc<FiniteGroup>, embedding: &[usize]) -> QzCochain {
        let order = self.group.order();
        QzCochain::from_fn(subgroup, self.degree, |t| {
            let image: Vec<usize> = t.iter().map(|&x| embedding[x]).collect();
            self.values[tuple_index(order, &image)]
        })
    }
}
