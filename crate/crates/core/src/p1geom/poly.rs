//! Dense polynomials over a finite field, with factorization into monic
//! irreducibles (squarefree split, distinct-degree, then a deterministic
//! equal-degree sweep). Everything is desk scale.

use crate::error::{Error, Result};
use crate::exactmath::field::{FieldElement, FieldSpec};
use serde::{Deserialize, Serialize};

// scalar (prime-field) kernels from the field layer
use crate::exactmath::field::{mod_inv, poly_mul as scalar_mul, trim as scalar_trim};

fn scalar_codes(p: &Poly) -> Vec<u64> {
    p.coeffs.iter().map(|c| c.coords()[0]).collect()
}

fn from_scalar_codes(spec: &FieldSpec, codes: Vec<u64>) -> Poly {
    Poly::new(
        spec.clone(),
        codes.into_iter().map(|c| spec.from_prime(c)).collect(),
    )
}

/// Scalar division with remainder for prime fields, low-to-high coefficients.
fn scalar_divrem(num: &[u64], den: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dn = den.len() - 1;
    let lead_inv = mod_inv(den[dn], p);
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![], rem);
    }
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0u64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn] % p * lead_inv % p;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p * p - c * d % p) % p;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dn);
    scalar_trim(&mut rem);
    (quot, rem)
}

/// Polynomial with low-to-high coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(spec: FieldSpec, coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly { spec, coeffs };
        p.trim();
        p
    }

    pub fn zero(spec: FieldSpec) -> Poly {
        Poly { spec, coeffs: vec![] }
    }

    pub fn one(spec: FieldSpec) -> Poly {
        let one = spec.one();
        Poly { spec, coeffs: vec![one] }
    }

    pub fn constant(spec: FieldSpec, c: FieldElement) -> Poly {
        Poly::new(spec, vec![c])
    }

    /// The monic linear polynomial t - a.
    pub fn linear(spec: FieldSpec, a: &FieldElement) -> Poly {
        Poly::new(spec.clone(), vec![a.neg(), spec.one()])
    }

    /// t itself.
    pub fn variable(spec: FieldSpec) -> Poly {
        Poly::new(spec.clone(), vec![spec.zero(), spec.one()])
    }

    pub fn from_prime_coeffs(spec: &FieldSpec, coeffs: &[u64]) -> Poly {
        Poly::new(
            spec.clone(),
            coeffs.iter().map(|&c| spec.from_prime(c)).collect(),
        )
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(
            self.spec.clone(),
            self.coeffs.iter().map(|x| x.mul(c).expect("same field")).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.spec.zero();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            out.push(a.add(b).expect("same field"));
        }
        Poly::new(self.spec.clone(), out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.spec.clone(), self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.spec.clone());
        }
        if self.spec.degree() == 1 {
            let prod = scalar_mul(&scalar_codes(self), &scalar_codes(other), self.spec.p());
            return from_scalar_codes(&self.spec, prod);
        }
        let zero = self.spec.zero();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.mul(b).expect("same field");
                out[i + j] = out[i + j].add(&prod).expect("same field");
            }
        }
        Poly::new(self.spec.clone(), out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.spec.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, den: &Poly) -> (Poly, Poly) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        if self.degree() < den.degree() {
            return (Poly::zero(self.spec.clone()), self.clone());
        }
        if self.spec.degree() == 1 {
            let (q, r) = scalar_divrem(&scalar_codes(self), &scalar_codes(den), self.spec.p());
            return (
                from_scalar_codes(&self.spec, q),
                from_scalar_codes(&self.spec, r),
            );
        }
        let lead_inv = den.leading().unwrap().inv().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let dn = den.coeffs.len() - 1;
        let qn = rem.len() - 1 - dn;
        let zero = self.spec.zero();
        let mut quot = vec![zero; qn + 1];
        for k in (0..=qn).rev() {
            let c = rem[k + dn].mul(&lead_inv).expect("same field");
            if !c.is_zero() {
                for (i, d) in den.coeffs.iter().enumerate() {
                    let sub = c.mul(d).expect("same field");
                    rem[k + i] = rem[k + i].sub(&sub).expect("same field");
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn);
        (Poly::new(self.spec.clone(), quot), Poly::new(self.spec.clone(), rem))
    }

    pub fn rem(&self, den: &Poly) -> Poly {
        self.div_rem(den).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, den: &Poly) -> Poly {
        let (q, r) = self.div_rem(den);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.spec.degree() == 1 {
            let p = self.spec.p();
            let mut a = scalar_codes(self);
            let mut b = scalar_codes(other);
            scalar_trim(&mut a);
            scalar_trim(&mut b);
            while !b.is_empty() {
                let (_, r) = scalar_divrem(&a, &b, p);
                a = b;
                b = r;
            }
            if let Some(&lead) = a.last() {
                let inv = mod_inv(lead, p);
                for c in a.iter_mut() {
                    *c = *c * inv % p;
                }
            }
            return from_scalar_codes(&self.spec, a);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.spec.clone());
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = self.spec.zero();
                for _ in 0..i {
                    acc = acc.add(c).expect("same field");
                }
                acc
            })
            .collect();
        Poly::new(self.spec.clone(), out)
    }

    /// Evaluate at an element of the base field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).expect("same field").add(c).expect("same field");
        }
        acc
    }

    /// Evaluate at an element of an extension, coefficient-embedded via `embed`.
    pub fn eval_embedded(
        &self,
        x: &FieldElement,
        embed: &dyn Fn(&FieldElement) -> FieldElement,
    ) -> FieldElement {
        let ext = x.spec().clone();
        let mut acc = ext.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).expect("same field").add(&embed(c)).expect("same field");
        }
        acc
    }

    /// Multiplicity of the monic irreducible `pi` in self.
    pub fn multiplicity_of(&self, pi: &Poly) -> u32 {
        assert!(!self.is_zero());
        let mut count = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(pi);
            if !r.is_zero() {
                return count;
            }
            count += 1;
            cur = q;
        }
    }

    /// t^e mod m, by repeated squaring.
    fn var_powmod(spec: &FieldSpec, e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(spec.clone());
        let mut base = Poly::variable(spec.clone()).rem(m);
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            k >>= 1;
        }
        acc
    }

    fn powmod(&self, e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.spec.clone());
        let mut base = self.rem(m);
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            k >>= 1;
        }
        acc
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::WrongDivisor("factoring the zero polynomial".into()));
        }
        let mut distinct = vec![];
        distinct_irreducible_factors(&self.make_monic(), &mut distinct)?;
        let mut out: Vec<(Poly, u32)> = distinct
            .into_iter()
            .map(|pi| {
                let m = self.multiplicity_of(&pi);
                (pi, m)
            })
            .collect();
        out.sort_by(|a, b| poly_sort_key(&a.0).cmp(&poly_sort_key(&b.0)));
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        if self.degree() < 1 {
            return false;
        }
        if self.degree() == 1 {
            return true;
        }
        match self.make_monic().factor() {
            Ok(f) => f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == self.degree(),
            Err(_) => false,
        }
    }
}

pub(crate) fn poly_sort_key(p: &Poly) -> (i64, Vec<Vec<u64>>) {
    (
        p.degree(),
        p.coeffs().iter().map(|c| c.coords().to_vec()).collect(),
    )
}

/// Distinct monic irreducible factors, multiplicities ignored.
fn distinct_irreducible_factors(f: &Poly, out: &mut Vec<Poly>) -> Result<()> {
    let spec = f.spec().clone();
    if f.degree() <= 0 {
        return Ok(());
    }
    if f.degree() == 1 {
        push_unique(out, f.make_monic());
        return Ok(());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(t^p); take the p-th root of the coefficients
        let p = spec.p() as usize;
        let q = spec.q();
        let root_coeffs: Vec<FieldElement> = f
            .coeffs()
            .iter()
            .step_by(p)
            .map(|c| c.pow(q / spec.p() as u64))
            .collect();
        let g = Poly::new(spec, root_coeffs);
        return distinct_irreducible_factors(&g, out);
    }
    let squarefree = f.div_exact(&f.gcd(&deriv));
    // distinct-degree split of the squarefree part, with the Frobenius
    // power carried incrementally: frob = t^(q^d) mod rest
    let mut rest = squarefree.make_monic();
    let q = spec.q();
    let mut d = 1u32;
    let mut frob = Poly::var_powmod(&spec, q as u128, &rest);
    while rest.degree() >= d as i64 {
        if rest.degree() == d as i64 {
            push_unique(out, rest.make_monic());
            break;
        }
        let diff = frob.sub(&Poly::variable(spec.clone()));
        let g = rest.gcd(&diff);
        if g.degree() > 0 {
            equal_degree_split(&g, d, out)?;
            rest = rest.div_exact(&g);
            frob = frob.rem(&rest);
        }
        d += 1;
        if rest.degree() >= d as i64 {
            frob = frob.powmod(q as u128, &rest);
        }
    }
    if rest.degree() > 0 {
        push_unique(out, rest.make_monic());
    }
    Ok(())
}

fn push_unique(out: &mut Vec<Poly>, p: Poly) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// Split a product of distinct irreducibles of the same degree d.
fn equal_degree_split(h: &Poly, d: u32, out: &mut Vec<Poly>) -> Result<()> {
    let spec = h.spec().clone();
    if h.degree() == d as i64 {
        push_unique(out, h.make_monic());
        return Ok(());
    }
    let q = spec.q() as u128;
    // deterministic sweep over candidate polynomials in lex order
    for code in 1..(10_000u64) {
        let u = poly_from_code(&spec, code, h.degree() as usize);
        let g = if spec.p() == 2 {
            // trace map sum u^(2^i), i < d * log2(q)
            let bits = (q as f64).log2().round() as u32 * d;
            let mut acc = Poly::zero(spec.clone());
            let mut term = u.rem(h);
            for _ in 0..bits {
                acc = acc.add(&term).rem(h);
                term = term.mul(&term).rem(h);
            }
            acc.gcd(h)
        } else {
            let e = (q.pow(d) - 1) / 2;
            let pw = u.powmod(e, h);
            let shifted = pw.sub(&Poly::one(spec.clone()));
            shifted.gcd(h)
        };
        if g.degree() > 0 && g.degree() < h.degree() {
            equal_degree_split(&g, d, out)?;
            equal_degree_split(&h.div_exact(&g), d, out)?;
            return Ok(());
        }
    }
    Err(Error::WrongDivisor(
        "equal-degree splitting did not terminate".into(),
    ))
}

/// Deterministic enumeration of small nonconstant polynomials.
fn poly_from_code(spec: &FieldSpec, code: u64, max_deg: usize) -> Poly {
    let q = spec.q();
    let mut c = code;
    let mut coeffs = vec![];
    while c > 0 && coeffs.len() <= max_deg {
        coeffs.push(spec.element_from_rank(c % q));
        c /= q;
    }
    if coeffs.len() < 2 {
        coeffs.resize(2, spec.zero());
        coeffs[1] = spec.one();
    }
    Poly::new(spec.clone(), coeffs)
}

/// All monic irreducibles of the given degree, in lex order on coefficients.
pub fn monic_irreducibles(spec: &FieldSpec, degree: u32) -> Vec<Poly> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Vec<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (spec.p(), spec.degree(), degree);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let out = monic_irreducibles_uncached(spec, degree);
    cache.lock().unwrap().insert(key, out.clone());
    out
}

fn monic_irreducibles_uncached(spec: &FieldSpec, degree: u32) -> Vec<Poly> {
    let q = spec.q();
    let total = q.pow(degree);
    let mut out = vec![];
    for rank in 0..total {
        let mut coeffs = vec![];
        let mut r = rank;
        for _ in 0..degree {
            coeffs.push(spec.element_from_rank(r % q));
            r /= q;
        }
        coeffs.push(spec.one());
        let p = Poly::new(spec.clone(), coeffs);
        if p.is_irreducible() {
            out.push(p);
        }
    }
    out.sort_by(|a, b| poly_sort_key(a).cmp(&poly_sort_key(b)));
    out
}

impl std::fmt::Display for Poly {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => {
                    if c.is_one() {
                        "t".into()
                    } else {
                        format!("({c})*t")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("t^{i}")
                    } else {
                        format!("({c})*t^{i}")
                    }
                }
            })
            .collect();
        write!(out, "{}", terms.join(" + "))
    }
}
