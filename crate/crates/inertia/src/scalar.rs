//! Exact scalars: rationals and cyclotomic field elements.
//!
//! A cyclotomic element of order `n` is stored by its coordinate vector in
//! the power basis `1, ζ, …, ζ^{φ(n)−1}` of `Q[ζ]/(Φ_n)`, always fully
//! reduced modulo the n-th cyclotomic polynomial. Elements that turn out to
//! be rational are demoted to the `Rational` variant, so representations are
//! canonical within a fixed order and equality across orders is decided by
//! promotion to the least common order.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num::{BigInt, BigRational, One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Largest cyclotomic order the engine will materialize.
pub const MAX_CYCLOTOMIC_ORDER: u64 = 512;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rat),
    Cyclotomic { order: u64, coeffs: Vec<Rat> },
}

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Euler totient by trial division; orders are small here.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Quotient and remainder of `a` by a monic polynomial `b` over Q.
fn poly_divmod_monic(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    debug_assert!(b.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<Rat> = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quo = vec![Rat::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quo[i - db] = c.clone();
        for j in 0..=db {
            let t = &c * &b[j];
            rem[i - db + j] -= t;
        }
    }
    while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
        rem.pop();
    }
    (quo, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    out
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<BTreeMap<u64, Vec<BigInt>>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Integer coefficients of the n-th cyclotomic polynomial Φ_n, lowest degree
/// first, computed by dividing x^n − 1 by Φ_d over all proper divisors d | n.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 || n > MAX_CYCLOTOMIC_ORDER {
        return Err(Error::CyclotomicOrderOutOfBounds(n, MAX_CYCLOTOMIC_ORDER));
    }
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    // x^n − 1
    let mut num = vec![Rat::zero(); (n + 1) as usize];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d: Vec<Rat> = cyclotomic_polynomial(d)?
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect();
            let (quo, rem) = poly_divmod_monic(&num, &phi_d);
            debug_assert!(rem.is_empty());
            num = quo;
        }
    }
    let ints: Vec<BigInt> = num
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(n, ints.clone());
    Ok(ints)
}

fn cyclotomic_rat(n: u64) -> Vec<Rat> {
    cyclotomic_polynomial(n)
        .expect("order within bound")
        .iter()
        .map(|c| Rat::from_integer(c.clone()))
        .collect()
}

/// Reduce a polynomial in ζ_n modulo Φ_n and trim to length φ(n).
fn reduce_mod_phi(order: u64, poly: &[Rat]) -> Vec<Rat> {
    let phi = cyclotomic_rat(order);
    let (_, rem) = poly_divmod_monic(poly, &phi);
    let mut out = vec![Rat::zero(); euler_phi(order) as usize];
    for (i, c) in rem.into_iter().enumerate() {
        out[i] = c;
    }
    out
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rat::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Rational(rat_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::Rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rational(r)
    }

    /// ζ_n^k, demoted to a rational when it is one (n ≤ 2 or k ≡ 0).
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 || n > MAX_CYCLOTOMIC_ORDER {
            return Err(Error::CyclotomicOrderOutOfBounds(n, MAX_CYCLOTOMIC_ORDER));
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Ok(Scalar::make_cyclotomic(n, poly))
    }

    /// Build a cyclotomic scalar from a raw ζ_n-polynomial, reducing and
    /// demoting to `Rational` when possible.
    pub fn make_cyclotomic(order: u64, poly: Vec<Rat>) -> Self {
        let coeffs = reduce_mod_phi(order, &poly);
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Scalar::Rational(coeffs[0].clone())
        } else {
            Scalar::Cyclotomic { order, coeffs }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn order(&self) -> u64 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic { order, .. } => *order,
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic { .. } => None,
        }
    }

    /// Coordinates in the power basis of Q(ζ_m); `m` must be a multiple of
    /// the element's own order. Promotion substitutes ζ_n ↦ ζ_m^{m/n}.
    fn coords_in(&self, m: u64) -> Vec<Rat> {
        let phi_m = euler_phi(m) as usize;
        match self {
            Scalar::Rational(r) => {
                let mut v = vec![Rat::zero(); phi_m];
                v[0] = r.clone();
                v
            }
            Scalar::Cyclotomic { order, coeffs } => {
                debug_assert!(m % order == 0);
                let step = (m / order) as usize;
                let mut poly = vec![Rat::zero(); (coeffs.len() - 1) * step + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    poly[i * step] = c.clone();
                }
                reduce_mod_phi(m, &poly)
            }
        }
    }

    fn common_order(&self, other: &Scalar) -> Result<u64> {
        let a = self.order();
        let b = other.order();
        let l = num::integer::lcm(a, b);
        if l > MAX_CYCLOTOMIC_ORDER {
            return Err(Error::IncompatibleCyclotomicOrders(a, b));
        }
        Ok(l)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let m = self.common_order(other).expect("orders within bound");
                let mut a = self.coords_in(m);
                for (x, y) in a.iter_mut().zip(other.coords_in(m)) {
                    *x += y;
                }
                Scalar::make_cyclotomic(m, a)
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic { order, coeffs } => Scalar::Cyclotomic {
                order: *order,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Cyclotomic { order, coeffs }) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyclotomic {
                    order: *order,
                    coeffs: coeffs.iter().map(|c| a * c).collect(),
                }
            }
            (Scalar::Cyclotomic { .. }, Scalar::Rational(_)) => other.mul(self),
            _ => {
                let m = self.common_order(other).expect("orders within bound");
                let prod = poly_mul(&self.coords_in(m), &other.coords_in(m));
                Scalar::make_cyclotomic(m, prod)
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Φ_n.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic { order, coeffs } => {
                let phi = cyclotomic_rat(*order);
                let mut a: Vec<Rat> = coeffs.clone();
                while a.last().map(|c| c.is_zero()).unwrap_or(false) {
                    a.pop();
                }
                // Extended Euclid: track s with s·a ≡ gcd (mod Φ_n).
                let (mut r0, mut r1) = (phi, a);
                let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
                while !r1.is_empty() {
                    // Make divisor monic to reuse the monic division routine.
                    let lead = r1.last().unwrap().clone();
                    let monic: Vec<Rat> = r1.iter().map(|c| c / &lead).collect();
                    let (quo, rem) = poly_divmod_monic(&r0, &monic);
                    let quo: Vec<Rat> = quo.iter().map(|c| c / &lead).collect();
                    let mut s2 = s0.clone();
                    let qs = poly_mul(&quo, &s1);
                    if s2.len() < qs.len() {
                        s2.resize(qs.len(), Rat::zero());
                    }
                    for (x, y) in s2.iter_mut().zip(qs) {
                        *x -= y;
                    }
                    while s2.last().map(|c| c.is_zero()).unwrap_or(false) {
                        s2.pop();
                    }
                    r0 = r1;
                    r1 = rem;
                    s0 = s1;
                    s1 = s2;
                }
                // Φ_n is irreducible, so gcd is a nonzero constant.
                debug_assert_eq!(r0.len(), 1);
                let g = r0[0].clone();
                let inv: Vec<Rat> = s0.iter().map(|c| c / &g).collect();
                Ok(Scalar::make_cyclotomic(*order, inv))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Formal complex conjugation ζ ↦ ζ⁻¹ (identity on rationals).
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Cyclotomic { order, coeffs } => {
                let n = *order as usize;
                let mut poly = vec![Rat::zero(); n];
                for (i, c) in coeffs.iter().enumerate() {
                    poly[(n - i) % n] += c.clone();
                }
                Scalar::make_cyclotomic(*order, poly)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Rational(_), Scalar::Cyclotomic { .. })
            | (Scalar::Cyclotomic { .. }, Scalar::Rational(_)) => false,
            (
                Scalar::Cyclotomic { order: na, .. },
                Scalar::Cyclotomic { order: nb, .. },
            ) => {
                if na == nb {
                    match (self, other) {
                        (
                            Scalar::Cyclotomic { coeffs: ca, .. },
                            Scalar::Cyclotomic { coeffs: cb, .. },
                        ) => ca == cb,
                        _ => unreachable!(),
                    }
                } else {
                    match self.common_order(other) {
                        Ok(m) => self.coords_in(m) == other.coords_in(m),
                        Err(_) => false,
                    }
                }
            }
        }
    }
}

impl Eq for Scalar {}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
