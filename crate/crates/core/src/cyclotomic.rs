//! Exact arithmetic in the cyclotomic field ℚ(ζ_N).
//!
//! An element is a polynomial in `ζ` of degree below `φ(N)`, the canonical
//! remainder modulo the cyclotomic polynomial `Φ_N`. Elements with different
//! conductors are combined in ℚ(ζ_L) for `L = lcm`, via `ζ_N = ζ_L^{L/N}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CyclotomicError;
use crate::qz::Qz;

type Poly = Vec<BigRational>;

fn cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_exact(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache().write().expect("cache lock").insert(n, p.clone());
    p
}

/// Exact division by a monic integer polynomial.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Euler's totient, the degree of `Φ_n`.
pub fn totient(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Remainder of `p` modulo the monic `Φ_n`.
fn reduce(mut p: Poly, n: u64) -> Poly {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    while p.len() > deg {
        let c = p.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let top = p.len();
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if !pj.is_zero() {
                p[top - deg + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Quotient and remainder in ℚ[x]; `b` must be nonzero and trimmed.
fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    out.resize(a.len().max(b.len()), BigRational::zero());
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(&mut out);
    out
}

/// An element of ℚ(ζ_N) in the power basis `1, ζ, …, ζ^{φ(N)−1}`.
#[derive(Clone)]
pub struct CyclotomicRational {
    conductor: u64,
    coeffs: Poly,
}

impl CyclotomicRational {
    pub fn zero(conductor: u64) -> Self {
        CyclotomicRational { conductor, coeffs: vec![BigRational::zero(); totient(conductor)] }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u64, q: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    /// Reduces an arbitrary polynomial in `ζ_N`.
    pub fn from_poly(conductor: u64, poly: Vec<BigRational>) -> Self {
        CyclotomicRational { conductor, coeffs: reduce(poly, conductor) }
    }

    /// `ζ_N^k`.
    pub fn zeta_power(conductor: u64, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_poly(conductor, p)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// The same element in ℚ(ζ_M); `N` must divide `M`.
    pub fn embed(&self, m: u64) -> Self {
        assert_eq!(m % self.conductor, 0, "conductor {} does not divide {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Self::from_poly(m, p)
    }

    /// The same element viewed in ℚ(ζ_d) for a divisor `d` of `N`, if it lies there.
    pub fn restrict(&self, d: u64) -> Option<Self> {
        assert_eq!(self.conductor % d, 0);
        let k = totient(d);
        let n = self.coeffs.len();
        // columns: images of 1, ζ_d, …, ζ_d^{k−1}; augmented by self
        let basis: Vec<Self> = (0..k as i64).map(|i| Self::zeta_power(d, i).embed(self.conductor)).collect();
        let mut rows: Vec<Vec<BigRational>> =
            (0..n).map(|r| basis.iter().map(|b| b.coeffs[r].clone()).chain([self.coeffs[r].clone()]).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let lead = rows[r][c].clone();
            rows[r].iter_mut().for_each(|x| *x /= &lead);
            for i in 0..n {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in c..=k {
                        let t = &f * &rows[r][j];
                        rows[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[k].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); k];
        for (i, &c) in pivots.iter().enumerate() {
            coeffs[c] = rows[i][k].clone();
        }
        Some(CyclotomicRational { conductor: d, coeffs })
    }

    /// The same element with the least conductor dividing the current one.
    pub fn minimize(&self) -> Self {
        let n = self.conductor;
        (1..=n).filter(|d| n.is_multiple_of(*d)).find_map(|d| self.restrict(d)).unwrap_or_else(|| self.clone())
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l), other.embed(l))
    }

    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        // extended Euclid: s·self + t·Φ_N = 1
        let phi: Poly = cyclotomic_polynomial(self.conductor).iter().cloned().map(BigRational::from_integer).collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        let c = r0[0].clone();
        let s: Poly = s0.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_poly(self.conductor, s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicRational { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }
}

/// `e^{2πi q}` as an element of ℚ(ζ_den).
pub fn root_of_unity(q: Qz) -> CyclotomicRational {
    CyclotomicRational::zeta_power(q.denom(), q.numer() as i64)
}

/// `e^{2πi q}` inside ℚ(ζ_N); the denominator of `q` must divide `N`.
pub fn root_of_unity_in(conductor: u64, q: Qz) -> Result<CyclotomicRational, CyclotomicError> {
    if !conductor.is_multiple_of(q.denom()) {
        return Err(CyclotomicError::ConductorMismatch { den: q.denom(), conductor });
    }
    Ok(CyclotomicRational::zeta_power(conductor, (q.numer() * (conductor / q.denom())) as i64))
}

impl PartialEq for CyclotomicRational {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicRational {}

impl<'a> Add<&'a CyclotomicRational> for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn add(self, rhs: &CyclotomicRational) -> CyclotomicRational {
        if self.conductor != rhs.conductor {
            let (a, b) = self.align(rhs);
            return &a + &b;
        }
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicRational { conductor: self.conductor, coeffs }
    }
}

impl<'a> Sub<&'a CyclotomicRational> for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn sub(self, rhs: &CyclotomicRational) -> CyclotomicRational {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicRational {
    type Output = CyclotomicRational;
    fn neg(self) -> CyclotomicRational {
        CyclotomicRational { conductor: self.conductor, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
}

impl<'a> Mul<&'a CyclotomicRational> for &'a CyclotomicRational {
    type Output = CyclotomicRational;
    fn mul(self, rhs: &CyclotomicRational) -> CyclotomicRational {
        if self.conductor != rhs.conductor {
            let (a, b) = self.align(rhs);
            return &a * &b;
        }
        CyclotomicRational::from_poly(self.conductor, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicRational {
            type Output = CyclotomicRational;
            fn $m(self, rhs: CyclotomicRational) -> CyclotomicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicRational {
    type Output = CyclotomicRational;
    fn neg(self) -> CyclotomicRational {
        -&self
    }
}

impl fmt::Display for CyclotomicRational {
    /// Renders as a sum of `c·ζN^i` terms, e.g. `1/2 - 1/2·ζ4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match i {
                0 => String::new(),
                1 => format!("ζ{}", self.conductor),
                _ => format!("ζ{}^{}", self.conductor, i),
            };
            match (mag.is_one(), zeta.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{zeta}")?,
                (false, false) => write!(f, "{mag}·{zeta}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
