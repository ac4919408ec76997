//! Exact cyclotomic integers and half-integral power normalizations.
//!
//! A [`CycloValue`] is an element of Z[z]/(Phi_m(z)) stored as an integer
//! coefficient vector indexed by exponents 0..m-1. Arithmetic works in the
//! group ring Z[z]/(z^m - 1) and canonicalization reduces modulo the m-th
//! cyclotomic polynomial, so equal values always compare equal.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// An exact element of the m-th cyclotomic ring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycloValue {
    order: u64,
    coeffs: Vec<i64>,
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, low-to-high integer coefficients.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    if let Some(hit) = cyclo_cache().lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = if m == 1 {
        vec![-1, 1]
    } else {
        // (x^m - 1) / prod_{d | m, d < m} Phi_d
        let mut num = vec![0i64; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in 1..m {
            if m % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                num = poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    cyclo_cache().lock().unwrap().insert(m, result.clone());
    result
}

/// Exact division of integer polynomials (monic divisor), low-to-high coefficients.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Remainder of an integer polynomial modulo the (monic) m-th cyclotomic polynomial.
fn reduce_mod_cyclotomic(coeffs: &[i64], m: u64) -> Vec<i64> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    let mut rem = coeffs.to_vec();
    while rem.len() > deg {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (i, &d) in phi.iter().enumerate() {
                rem[top - deg + i] -= lead * d;
            }
        }
        rem.pop();
    }
    rem
}

impl CycloValue {
    /// Zero in the m-th cyclotomic ring.
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        CycloValue { order, coeffs: vec![0; order as usize] }
    }

    pub fn from_integer(c: i64) -> Self {
        CycloValue { order: 1, coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// zeta_m^e.
    pub fn root_of_unity(order: u64, exponent: u64) -> Self {
        let mut v = Self::zero(order);
        v.coeffs[(exponent % order) as usize] = 1;
        v
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<i64>) -> Self {
        assert!(order >= 1 && coeffs.len() == order as usize);
        CycloValue { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical coefficient vector: reduced mod Phi_m, padded to length m.
    pub fn canonical_coeffs(&self) -> Vec<i64> {
        let mut red = reduce_mod_cyclotomic(&self.coeffs, self.order);
        red.resize(self.order as usize, 0);
        red
    }

    /// Same value viewed in the ring of order `target` (current order must divide it).
    pub fn lift_to(&self, target: u64) -> CycloValue {
        assert!(target % self.order == 0);
        let scale = (target / self.order) as usize;
        let mut coeffs = vec![0i64; target as usize];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[e * scale] += c;
        }
        CycloValue { order: target, coeffs }
    }

    fn common_order(&self, other: &CycloValue) -> u64 {
        num_integer::lcm(self.order, other.order)
    }

    pub fn add(&self, other: &CycloValue) -> CycloValue {
        let m = self.common_order(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| x + y).collect();
        CycloValue { order: m, coeffs }
    }

    pub fn neg(&self) -> CycloValue {
        CycloValue { order: self.order, coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn sub(&self, other: &CycloValue) -> CycloValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycloValue) -> CycloValue {
        let m = self.common_order(other);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        // cyclic convolution in Z[z]/(z^m - 1)
        let mm = m as usize;
        let mut coeffs = vec![0i64; mm];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = (i + j) % mm;
                coeffs[k] += x * y;
            }
        }
        CycloValue { order: m, coeffs }
    }

    pub fn scale(&self, c: i64) -> CycloValue {
        CycloValue { order: self.order, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> CycloValue {
        let mut r = CycloValue::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Complex conjugation: exponent negation.
    pub fn conjugate(&self) -> CycloValue {
        let m = self.order as usize;
        let mut coeffs = vec![0i64; m];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - e) % m] += c;
        }
        CycloValue { order: self.order, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_coeffs().iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.as_integer() == Some(1)
    }

    /// Some(c) when the value is the rational integer c.
    pub fn as_integer(&self) -> Option<i64> {
        let red = self.canonical_coeffs();
        if red[1..].iter().all(|&c| c == 0) {
            Some(red[0])
        } else {
            None
        }
    }

    /// Fixed by conjugation, i.e. real under every embedding.
    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Divide every canonical coefficient by `d` exactly; None if not divisible.
    pub fn div_exact(&self, d: i64) -> Option<CycloValue> {
        assert!(d != 0);
        let red = self.canonical_coeffs();
        if red.iter().all(|&c| c % d == 0) {
            Some(CycloValue {
                order: self.order,
                coeffs: red.iter().map(|&c| c / d).collect(),
            })
        } else {
            None
        }
    }

    /// Numeric value under the embedding z -> exp(2*pi*i*k/m).
    pub fn embed(&self, k: u64) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let theta = 2.0 * std::f64::consts::PI * (e as u64 * k % self.order) as f64 / m;
                re += c as f64 * theta.cos();
                im += c as f64 * theta.sin();
            }
        }
        (re, im)
    }
}

impl PartialEq for CycloValue {
    fn eq(&self, other: &Self) -> bool {
        let m = self.common_order(other);
        self.lift_to(m).canonical_coeffs() == other.lift_to(m).canonical_coeffs()
    }
}

impl Eq for CycloValue {}

impl std::fmt::Display for CycloValue {
    /// Canonical string form "c0 + c1*z^1 + ..." over nonzero terms.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let red = self.canonical_coeffs();
        let terms: Vec<String> = red
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| if e == 0 { format!("{c}") } else { format!("{c}*z^{e}") })
            .collect();
        if terms.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", terms.join(" + "))
        }
    }
}

/// A cyclotomic value times a half-integral power of a fixed base q.
///
/// `value = algebraic * q^(half_power/2)`. Gauss sums carry `half_power = -1`
/// (the unitary normalization); products accumulate powers which
/// [`NormalizedValue::canonicalize`] folds back into the algebraic part when
/// the division is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedValue {
    pub algebraic: CycloValue,
    pub base: u64,
    pub half_power: i64,
}

impl NormalizedValue {
    pub fn one() -> Self {
        NormalizedValue { algebraic: CycloValue::one(), base: 1, half_power: 0 }
    }

    pub fn from_cyclo(v: CycloValue) -> Self {
        NormalizedValue { algebraic: v, base: 1, half_power: 0 }
    }

    pub fn new(algebraic: CycloValue, base: u64, half_power: i64) -> Self {
        NormalizedValue { algebraic, base, half_power }
    }

    /// Fold even powers of the base into the algebraic part where exact.
    pub fn canonicalize(&self) -> NormalizedValue {
        let mut alg = CycloValue::from_coeffs(self.algebraic.order, self.algebraic.canonical_coeffs());
        let mut hp = self.half_power;
        if self.base <= 1 {
            return NormalizedValue { algebraic: alg, base: 1, half_power: 0 };
        }
        while hp >= 2 {
            alg = alg.scale(self.base as i64);
            hp -= 2;
        }
        while hp <= -2 {
            match alg.div_exact(self.base as i64) {
                Some(d) => {
                    alg = d;
                    hp += 2;
                }
                None => break,
            }
        }
        let base = if hp == 0 { 1 } else { self.base };
        NormalizedValue { algebraic: alg, base, half_power: hp }
    }

    pub fn mul(&self, other: &NormalizedValue) -> Result<NormalizedValue> {
        let a = self.canonicalize();
        let b = other.canonicalize();
        let (base, hp) = match (a.half_power, b.half_power) {
            (0, 0) => (1, 0),
            (0, h) => (b.base, h),
            (h, 0) => (a.base, h),
            (ha, hb) => {
                if a.base != b.base {
                    return Err(Error::MixedBase);
                }
                (a.base, ha + hb)
            }
        };
        Ok(NormalizedValue { algebraic: a.algebraic.mul(&b.algebraic), base, half_power: hp }
            .canonicalize())
    }

    pub fn is_one(&self) -> bool {
        let c = self.canonicalize();
        c.half_power == 0 && c.algebraic.is_one()
    }

    /// Some(+1/-1) when the value is exactly +1 or -1.
    pub fn as_sign(&self) -> Option<i8> {
        let c = self.canonicalize();
        if c.half_power != 0 {
            return None;
        }
        match c.algebraic.as_integer() {
            Some(1) => Some(1),
            Some(-1) => Some(-1),
            _ => None,
        }
    }

    /// Conjugation-invariance of the algebraic part (the base power is real).
    pub fn is_real(&self) -> bool {
        self.algebraic.is_real()
    }

    pub fn is_zero(&self) -> bool {
        self.algebraic.is_zero()
    }

    /// Numeric modulus under the embedding z -> exp(2*pi*i*k/m).
    pub fn abs_embed(&self, k: u64) -> f64 {
        let (re, im) = self.algebraic.embed(k);
        let qpow = (self.base as f64).powf(self.half_power as f64 / 2.0);
        (re * re + im * im).sqrt() * qpow
    }
}
