//! Exact rationals and cyclotomic numbers.
//!
//! A [`CycloScalar`] is an element of ℚ(ζ_N) stored in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` obtained by reducing modulo the N-th cyclotomic
//! polynomial. Elements of different orders are compared and combined by
//! lifting to the least common multiple.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Builds a rational from a pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn cyclo_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclo_cache().read().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d, d | n, d < n.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cyclo_cache()
        .write()
        .expect("cache poisoned")
        .insert(n, p.clone());
    p
}

// Division of integer polynomials by a monic divisor, remainder must vanish.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Element of the cyclotomic field ℚ(ζ_order) in canonical form.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        CycloScalar {
            order: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        CycloScalar { order: 1, coeffs }
    }

    /// The sign `(-1)^e`.
    pub fn sign(e: u64) -> Self {
        if e % 2 == 0 {
            Self::one()
        } else {
            Self::from_int(-1)
        }
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let mut raw = BTreeMap::new();
        raw.insert(k, Rational::one());
        Self::canonicalize(&raw, n)
    }

    /// Canonical representative of Σ c_k ζ_n^k; exponents are read modulo n.
    pub fn canonicalize(raw: &BTreeMap<i64, Rational>, n: u32) -> Self {
        assert!(n >= 1, "order must be positive");
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in raw {
            let e = k.rem_euclid(n as i64) as usize;
            dense[e] += c;
        }
        Self::from_dense(dense, n)
    }

    fn from_dense(mut dense: Vec<Rational>, n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..dense.len()).rev() {
            let c = std::mem::take(&mut dense[i]);
            if c.is_zero() {
                continue;
            }
            let shift = i - deg;
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    dense[shift + j] -= &c * Rational::from_integer(pj.clone());
                }
            }
        }
        let mut coeffs = BTreeMap::new();
        for (i, c) in dense.into_iter().enumerate().take(deg) {
            if !c.is_zero() {
                coeffs.insert(i as u32, c);
            }
        }
        let order = if coeffs.keys().all(|&k| k == 0) { 1 } else { n };
        CycloScalar { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients, exponent to coefficient.
    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value when the element lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// The integer value when the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn dense_at(&self, n: u32) -> Vec<Rational> {
        debug_assert_eq!(n % self.order, 0);
        let step = (n / self.order) as usize;
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[*k as usize * step] = c.clone();
        }
        dense
    }

    /// Image under the automorphism ζ ↦ ζ^k of ℚ(ζ_order); k must be a unit.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order;
        let raw: BTreeMap<i64, Rational> = BTreeMap::new();
        let mut raw = raw;
        for (e, c) in &self.coeffs {
            *raw.entry((*e as i64 * k).rem_euclid(n as i64))
                .or_insert_with(Rational::zero) += c;
        }
        Self::canonicalize(&raw, n)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycloScalar {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c * r))
                .collect(),
        }
    }

    fn combine(&self, other: &Self, sub: bool) -> Self {
        if self.order == 1 && other.order == 1 {
            let a = self.to_rational().unwrap_or_default();
            let b = other.to_rational().unwrap_or_default();
            return Self::from_rational(if sub { a - b } else { a + b });
        }
        let n = self.order.lcm(&other.order);
        let mut a = self.dense_at(n);
        let b = other.dense_at(n);
        for (x, y) in a.iter_mut().zip(b) {
            if sub {
                *x -= y;
            } else {
                *x += y;
            }
        }
        Self::from_dense(a, n)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.order == 1 {
            return other.scale(&self.to_rational().unwrap_or_default());
        }
        if other.order == 1 {
            return self.scale(&other.to_rational().unwrap_or_default());
        }
        let n = self.order.lcm(&other.order);
        let sa = n / self.order;
        let sb = n / other.order;
        let mut dense = vec![Rational::zero(); n as usize];
        for (i, ci) in &self.coeffs {
            for (j, cj) in &other.coeffs {
                let e = ((i * sa + j * sb) % n) as usize;
                dense[e] += ci * cj;
            }
        }
        Self::from_dense(dense, n)
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            self.combine(other, true).is_zero()
        }
    }
}

impl Eq for CycloScalar {}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.combine(rhs, false)
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: CycloScalar) -> CycloScalar {
        self.combine(&rhs, false)
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        *self = self.combine(rhs, false);
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.combine(rhs, true)
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: CycloScalar) -> CycloScalar {
        self.combine(&rhs, true)
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.product(rhs)
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        self.product(&rhs)
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.scale(&int(-1))
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.scale(&int(-1))
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if *k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "{}*z{}^{}", mag, self.order, k)?;
            }
        }
        Ok(())
    }
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serializes a rational as "p" or "p/q".
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Serializes an optional rational as a string or null.
pub fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}
