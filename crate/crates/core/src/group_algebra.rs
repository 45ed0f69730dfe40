//! The group algebra `k[A]` of a finite abelian group over ℚ(ζ_N).
//!
//! Elements are coefficient vectors indexed like the elements of `A`.
//! Characters give the Fourier idempotents
//! `p_ρ = (1/|A|) Σ_a ρ(a)⁻¹·a`, which are orthogonal, sum to the unit, and
//! identify `k[A]` with the algebra of functions on `Â`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::abelian::{AbelianGroup, Character};
use crate::cyclotomic::{root_of_unity_in, CyclotomicRational};

/// `Σ c_a·a` with every `c_a` in ℚ(ζ_N) for a shared conductor `N`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    base: Arc<AbelianGroup>,
    conductor: u64,
    coeffs: Vec<CyclotomicRational>,
}

impl GroupAlgebraElement {
    pub fn zero(base: Arc<AbelianGroup>, conductor: u64) -> Self {
        let coeffs = vec![CyclotomicRational::zero(conductor); base.order()];
        GroupAlgebraElement { base, conductor, coeffs }
    }

    /// The basis element `a`, given by index.
    pub fn basis(base: Arc<AbelianGroup>, conductor: u64, a: usize) -> Self {
        let mut x = Self::zero(base, conductor);
        x.coeffs[a] = CyclotomicRational::one(conductor);
        x
    }

    pub fn unit(base: Arc<AbelianGroup>, conductor: u64) -> Self {
        Self::basis(base, conductor, 0)
    }

    /// Coefficients are embedded into the common conductor.
    pub fn from_coeffs(base: Arc<AbelianGroup>, coeffs: Vec<CyclotomicRational>) -> Self {
        assert_eq!(coeffs.len(), base.order(), "one coefficient per group element");
        let conductor = coeffs.iter().fold(1, |l, c| l.lcm(&c.conductor()));
        let coeffs = coeffs.iter().map(|c| c.embed(conductor)).collect();
        GroupAlgebraElement { base, conductor, coeffs }
    }

    pub fn base(&self) -> &Arc<AbelianGroup> {
        &self.base
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CyclotomicRational] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &CyclotomicRational {
        &self.coeffs[a]
    }

    pub fn embed(&self, conductor: u64) -> Self {
        GroupAlgebraElement {
            base: self.base.clone(),
            conductor,
            coeffs: self.coeffs.iter().map(|c| c.embed(conductor)).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        assert_eq!(*self.base, *other.base, "elements of different group algebras");
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l), other.embed(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        GroupAlgebraElement { coeffs, ..a }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        GroupAlgebraElement { coeffs, ..a }
    }

    pub fn scale(&self, c: &CyclotomicRational) -> Self {
        let l = self.conductor.lcm(&c.conductor());
        let c = c.embed(l);
        let coeffs = self.coeffs.iter().map(|x| &x.embed(l) * &c).collect();
        GroupAlgebraElement { base: self.base.clone(), conductor: l, coeffs }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let group = &*a.base;
        let mut out = Self::zero(a.base.clone(), a.conductor);
        let elems: Vec<Vec<u64>> = group.elements().collect();
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = group.index_of(&group.add(&elems[i], &elems[j]));
                out.coeffs[k] = &out.coeffs[k] + &(x * y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CyclotomicRational::is_zero)
    }

    /// `ε(x) = Σ c_a`.
    pub fn counit(&self) -> CyclotomicRational {
        self.coeffs.iter().fold(CyclotomicRational::zero(self.conductor), |s, c| &s + c)
    }

    /// `Δx` in `k[A] ⊗ k[A]`, as the matrix of coefficients of `a ⊗ b`.
    pub fn coproduct(&self) -> Vec<Vec<CyclotomicRational>> {
        let n = self.coeffs.len();
        (0..n)
            .map(|a| (0..n).map(|b| if a == b { self.coeffs[a].clone() } else { CyclotomicRational::zero(self.conductor) }).collect())
            .collect()
    }

    /// `x ⊗ x` as a coefficient matrix.
    pub fn tensor_square(&self) -> Vec<Vec<CyclotomicRational>> {
        self.coeffs.iter().map(|x| self.coeffs.iter().map(|y| x * y).collect()).collect()
    }
}

impl PartialEq for GroupAlgebraElement {
    /// Coefficientwise, independent of the conductor used to store them.
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

/// `p_ρ = (1/|A|) Σ_a ρ(a)⁻¹·a` in ℚ(ζ_N) with `N = exponent(A)`.
pub fn idempotent(base: &Arc<AbelianGroup>, rho: &Character) -> GroupAlgebraElement {
    let n = base.exponent();
    let inv_order = BigRational::new(BigInt::from(1), BigInt::from(base.order()));
    let coeffs = base
        .elements()
        .map(|a| root_of_unity_in(n, -rho.eval(base, &a)).expect("exponent kills every character value").scale(&inv_order))
        .collect();
    GroupAlgebraElement { base: base.clone(), conductor: n, coeffs }
}

/// `x ↦ (σ ↦ Σ_a c_a·σ(a))`, indexed by the characters in canonical order.
pub fn fourier(x: &GroupAlgebraElement) -> Vec<CyclotomicRational> {
    let base = &*x.base;
    let n = x.conductor.lcm(&base.exponent());
    let elems: Vec<Vec<u64>> = base.elements().collect();
    base.dual_group()
        .iter()
        .map(|sigma| {
            let mut acc = CyclotomicRational::zero(n);
            for (c, a) in x.coeffs.iter().zip(&elems) {
                if !c.is_zero() {
                    let z = root_of_unity_in(n, sigma.eval(base, a)).expect("conductor");
                    acc = &acc + &(&c.embed(n) * &z);
                }
            }
            acc
        })
        .collect()
}

/// `f ↦ Σ_ρ f(ρ)·p_ρ`.
pub fn inverse_fourier(base: &Arc<AbelianGroup>, values: &[CyclotomicRational]) -> GroupAlgebraElement {
    let chars = base.dual_group();
    assert_eq!(values.len(), chars.len(), "one value per character");
    let mut acc = GroupAlgebraElement::zero(base.clone(), base.exponent());
    for (v, rho) in values.iter().zip(&chars) {
        if !v.is_zero() {
            acc = acc.add(&idempotent(base, rho).scale(v));
        }
    }
    acc
}

/// Whether `Δx = x ⊗ x` and `ε(x) = 1`.
pub fn is_group_like(x: &GroupAlgebraElement) -> bool {
    x.counit().is_one() && x.coproduct() == x.tensor_square()
}

/// All group-like elements of `k[A]`.
///
/// Comparing diagonal coefficients of `Δx = x ⊗ x` gives `c_a² = c_a`, so
/// every coefficient is 0 or 1; the search runs over those `2^{|A|}`
/// candidates and keeps the ones satisfying all the equations.
pub fn enumerate_group_likes(base: &Arc<AbelianGroup>) -> Vec<GroupAlgebraElement> {
    let n = base.order();
    assert!(n < 24, "candidate search is exponential in |A|");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let coeffs = (0..n).map(|a| CyclotomicRational::from_integer(1, ((mask >> a) & 1) as i64)).collect();
        let x = GroupAlgebraElement { base: base.clone(), conductor: 1, coeffs };
        if is_group_like(&x) {
            out.push(x);
        }
    }
    out
}
