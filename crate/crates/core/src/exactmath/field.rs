//! Prime and small extension finite fields with exact element arithmetic.
//!
//! A field F_{p^f} is presented as F_p[x]/(m(x)) where m is the
//! lexicographically smallest monic irreducible of degree f. Elements store
//! their coordinate vector in the power basis; all arithmetic is modular and
//! exact. Fields are desk scale (q bounded), which the constructors enforce.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1_000_000;

/// A prime power q = p^f together with the defining modulus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    f: u32,
    /// Low coefficients c0..c_{f-1} of the monic modulus x^f + c_{f-1}x^{f-1} + ... + c0.
    #[serde(with = "arc_vec")]
    modulus: Arc<Vec<u64>>,
}

mod arc_vec {
    use super::Arc;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Arc<Vec<u64>>, ser: S) -> Result<S::Ok, S::Error> {
        v.as_ref().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Arc<Vec<u64>>, D::Error> {
        Ok(Arc::new(Vec::<u64>::deserialize(de)?))
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.f == other.f
            && (Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.f.hash(state);
        self.modulus.hash(state);
    }
}

/// An element of a [`FieldSpec`], as coordinates in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    spec: FieldSpec,
    coords: Vec<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---- polynomial helpers over F_p (dense, low-to-high coefficients) ----

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial with low coeffs `m` and degree `deg`.
pub(crate) fn poly_rem_monic(a: &[u64], m: &[u64], deg: usize, p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - c % p) % p * lead) % p;
            }
        }
        r.pop();
    }
    trim(&mut r);
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // make b monic for the remainder step
        let lead = *b.last().unwrap();
        let inv = mod_inv(lead, p);
        let bm: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let deg = bm.len() - 1;
        let low = &bm[..deg];
        let r = poly_rem_monic(&a, low, deg, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = mod_inv(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

/// x^(p^k) modulo the monic polynomial given by low coeffs `m` of degree `deg`.
fn frobenius_power(k: u32, m: &[u64], deg: usize, p: u64) -> Vec<u64> {
    // repeated exponentiation by p
    let mut cur = if deg == 1 {
        vec![(p - m[0] % p) % p] // x ≡ -c0
    } else {
        vec![0, 1]
    };
    for _ in 0..k {
        cur = poly_powmod(&cur, p, m, deg, p);
    }
    cur
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], deg: usize, p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem_monic(&poly_mul(&result, &b, p), m, deg, p);
        }
        b = poly_rem_monic(&poly_mul(&b, &b, p), m, deg, p);
        e >>= 1;
    }
    result
}

/// Rabin irreducibility test for a monic polynomial of degree f given by low coeffs.
fn is_irreducible(low: &[u64], f: u32, p: u64) -> bool {
    let deg = f as usize;
    if deg == 1 {
        return true;
    }
    // x^(p^f) ≡ x mod m
    let xf = frobenius_power(f, low, deg, p);
    let mut x = vec![0u64, 1];
    trim(&mut x);
    let mut lhs = xf.clone();
    trim(&mut lhs);
    if lhs != x {
        return false;
    }
    // gcd(x^(p^(f/l)) - x, m) = 1 for each prime l | f
    let mut n = f;
    let mut primes = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for l in primes {
        let mut diff = frobenius_power(f / l, low, deg, p);
        // subtract x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let mut modulus_full = low.to_vec();
        modulus_full.push(1);
        let g = poly_gcd(&modulus_full, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn spec_cache() -> &'static Mutex<HashMap<(u64, u32), FieldSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FieldSpec>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldSpec {
    /// The field with q = p^f elements, with the canonical (lex-least) modulus.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if let Some(hit) = spec_cache().lock().unwrap().get(&(p, f)) {
            return Ok(hit.clone());
        }
        let built = Self::build(p, f)?;
        spec_cache()
            .lock()
            .unwrap()
            .insert((p, f), built.clone());
        Ok(built)
    }

    fn build(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(f).filter(|&q| q <= MAX_FIELD_SIZE as u128);
        let q = match q {
            Some(q) => q as u64,
            None => return Err(Error::FieldTooLarge(u64::MAX)),
        };
        let _ = q;
        if f == 1 {
            return Ok(FieldSpec { p, f, modulus: Arc::new(vec![0]) });
        }
        // lexicographically smallest monic irreducible of degree f:
        // scan coefficient vectors (c0, ..., c_{f-1}) in lex order.
        let deg = f as usize;
        let mut coeffs = vec![0u64; deg];
        loop {
            if coeffs[0] != 0 && is_irreducible(&coeffs, f, p) {
                return Ok(FieldSpec { p, f, modulus: Arc::new(coeffs) });
            }
            // lex successor: increment from the last coordinate
            let mut i = deg;
            loop {
                if i == 0 {
                    return Err(Error::InvalidField(format!(
                        "no irreducible of degree {f} over F_{p}"
                    )));
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Low coefficients of the modulus (degree-1 fields report `[0]`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: self.clone(), coords: vec![0; self.f as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime(1)
    }

    /// Element with constant coordinate `c` (image of the prime field).
    pub fn from_prime(&self, c: u64) -> FieldElement {
        let mut coords = vec![0; self.f as usize];
        coords[0] = c % self.p;
        FieldElement { spec: self.clone(), coords }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<FieldElement> {
        if coords.len() != self.f as usize {
            return Err(Error::InvalidField("wrong number of coordinates".into()));
        }
        let coords = coords.into_iter().map(|c| c % self.p).collect();
        Ok(FieldElement { spec: self.clone(), coords })
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<FieldElement> {
        let q = self.q();
        (0..q).map(|i| self.element_from_rank(i)).collect()
    }

    /// The i-th element in lexicographic order on coordinate vectors.
    pub fn element_from_rank(&self, rank: u64) -> FieldElement {
        let deg = self.f as usize;
        let mut coords = vec![0u64; deg];
        let mut r = rank;
        for i in (0..deg).rev() {
            coords[i] = r % self.p;
            r /= self.p;
        }
        FieldElement { spec: self.clone(), coords }
    }

    /// Dense code of an element: c0 + c1 p + c2 p^2 + ... (table index).
    pub(crate) fn code(&self, e: &FieldElement) -> u64 {
        let mut c = 0u64;
        for &x in e.coords.iter().rev() {
            c = c * self.p + x;
        }
        c
    }

}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if !(Arc::ptr_eq(&self.spec.modulus, &other.spec.modulus)
            && self.spec.p == other.spec.p)
            && self.spec != other.spec
        {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.spec.p;
        if self.spec.f == 1 {
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coords: vec![(self.coords[0] + other.coords[0]) % p],
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement { spec: self.spec.clone(), coords })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.spec.p;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FieldElement { spec: self.spec.clone(), coords })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.spec.p;
        let coords = self.coords.iter().map(|&a| (p - a) % p).collect();
        FieldElement { spec: self.spec.clone(), coords }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.spec.p;
        if self.spec.f == 1 {
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coords: vec![self.coords[0] * other.coords[0] % p],
            });
        }
        let deg = self.spec.f as usize;
        if deg <= 4 {
            // stack-buffer product and reduction
            let mut buf = [0u64; 8];
            for (i, &a) in self.coords.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in other.coords.iter().enumerate() {
                    buf[i + j] = (buf[i + j] + a * b) % p;
                }
            }
            let m = &self.spec.modulus;
            for top in (deg..2 * deg - 1).rev() {
                let lead = buf[top];
                if lead != 0 {
                    buf[top] = 0;
                    for (i, &c) in m.iter().enumerate() {
                        let idx = top - deg + i;
                        buf[idx] = (buf[idx] + (p - c % p) % p * lead) % p;
                    }
                }
            }
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coords: buf[..deg].to_vec(),
            });
        }
        let prod = poly_mul(&self.coords, &other.coords, p);
        let mut red = poly_rem_monic(&prod, &self.spec.modulus, deg, p);
        red.resize(deg, 0);
        Ok(FieldElement { spec: self.spec.clone(), coords: red })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut result = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        result
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        if self.spec.f == 1 {
            let p = self.spec.p;
            return Ok(FieldElement {
                spec: self.spec.clone(),
                coords: vec![mod_pow(self.coords[0], p - 2, p)],
            });
        }
        Ok(self.pow(self.spec.q() - 2))
    }

    /// Absolute trace down to the prime field, as an integer in [0, p).
    pub fn trace(&self) -> u64 {
        let f = self.spec.f;
        let p = self.spec.p;
        let mut acc = self.spec.zero();
        let mut frob = self.clone();
        for _ in 0..f {
            acc = acc.add(&frob).expect("same field");
            frob = frob.pow(p);
        }
        debug_assert!(acc.coords[1..].iter().all(|&c| c == 0));
        acc.coords[0]
    }

    /// Relative trace to the subfield of degree `sub_f` (sub_f | f), staying in self's field.
    pub fn trace_to(&self, sub_f: u32) -> FieldElement {
        assert!(self.spec.f % sub_f == 0);
        let steps = self.spec.f / sub_f;
        let qs = self.spec.p.pow(sub_f);
        let mut acc = self.spec.zero();
        let mut frob = self.clone();
        for _ in 0..steps {
            acc = acc.add(&frob).expect("same field");
            frob = frob.pow(qs);
        }
        acc
    }

    /// Relative norm to the subfield of degree `sub_f` (sub_f | f), staying in self's field.
    pub fn norm_to(&self, sub_f: u32) -> FieldElement {
        assert!(self.spec.f % sub_f == 0);
        let steps = self.spec.f / sub_f;
        let qs = self.spec.p.pow(sub_f);
        let mut acc = self.spec.one();
        let mut frob = self.clone();
        for _ in 0..steps {
            acc = acc.mul(&frob).expect("same field");
            frob = frob.pow(qs);
        }
        acc
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.spec.f == 1 {
            write!(out, "{}", self.coords[0])
        } else {
            let terms: Vec<String> = self
                .coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match i {
                    0 => format!("{c}"),
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                })
                .collect();
            if terms.is_empty() {
                write!(out, "0")
            } else {
                write!(out, "{}", terms.join(" + "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1]); // x^2+x+1
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0]); // x^2+1
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1]); // x^3+x^2+1
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, f) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)] {
            let spec = FieldSpec::new(p, f).unwrap();
            let q = spec.q();
            let els = spec.elements();
            assert_eq!(els.len() as u64, q);
            // x^q = x for all elements
            for e in &els {
                assert_eq!(e.pow(q), *e, "x^q = x fails in F_{q}");
            }
            // multiplicative inverses
            for e in &els {
                if !e.is_zero() {
                    assert!(e.mul(&e.inv().unwrap()).unwrap().is_one());
                }
            }
            // distributivity on a sample
            for a in els.iter().take(4) {
                for b in els.iter().take(4) {
                    for c in els.iter().take(4) {
                        let lhs = a.mul(&b.add(c).unwrap()).unwrap();
                        let rhs = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let spec = FieldSpec::new(3, 2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for e in spec.elements() {
            seen.insert(e.trace());
            for g in spec.elements() {
                let t1 = e.add(&g).unwrap().trace();
                let t2 = (e.trace() + g.trace()) % 3;
                assert_eq!(t1, t2);
            }
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldSpec::new(4, 1), Err(Error::NotPrime(4))));
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(FieldSpec::new(1009, 3).is_err()); // over the size bound
    }
}
