//! Multiplicative characters of finite fields.
//!
//! Characters are pinned to the canonical generator of the multiplicative
//! group (the least generator in lexicographic coordinate order), with
//! discrete logs resolved through a memoized per-field table.

use super::cyclo::CycloValue;
use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A character of order n on the nonzero elements, chi(g0) = zeta_n^exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultCharacter {
    spec: FieldSpec,
    order: u64,
    exponent: u64,
}

struct FieldTables {
    generator: FieldElement,
    /// discrete log indexed by element code; u64::MAX marks zero
    log: Vec<u64>,
    /// codes of g0^i for i in 0..q-1
    exp: Vec<u64>,
    /// absolute trace indexed by element code
    trace: Vec<u64>,
}

fn tables_cache() -> &'static Mutex<HashMap<(u64, u32), Arc<FieldTables>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<FieldTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn tables(spec: &FieldSpec) -> Arc<FieldTables> {
    let key = (spec.p(), spec.degree());
    if let Some(hit) = tables_cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let built = Arc::new(build_tables(spec));
    tables_cache().lock().unwrap().insert(key, Arc::clone(&built));
    built
}

fn multiplicative_order_is_full(g: &FieldElement, qm1: u64) -> bool {
    let mut n = qm1;
    let mut prime_divisors = vec![];
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            prime_divisors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        prime_divisors.push(n);
    }
    prime_divisors.iter().all(|&l| !g.pow(qm1 / l).is_one())
}

fn build_tables(spec: &FieldSpec) -> FieldTables {
    let q = spec.q();
    let qm1 = q - 1;
    let generator = if q == 2 {
        spec.one()
    } else {
        spec.elements()
            .into_iter()
            .filter(|e| !e.is_zero())
            .find(|e| multiplicative_order_is_full(e, qm1))
            .expect("multiplicative group of a finite field is cyclic")
    };
    let mut log = vec![u64::MAX; q as usize];
    let mut exp = vec![0u64; qm1 as usize];
    let mut cur = spec.one();
    for i in 0..qm1 {
        let code = spec.code(&cur);
        exp[i as usize] = code;
        log[code as usize] = i;
        cur = cur.mul(&generator).expect("same field");
    }
    let mut trace = vec![0u64; q as usize];
    for e in spec.elements() {
        trace[spec.code(&e) as usize] = e.trace();
    }
    FieldTables { generator, log, exp, trace }
}

/// Least generator of the multiplicative group under lexicographic ordering.
pub fn canonical_generator(spec: &FieldSpec) -> FieldElement {
    tables(spec).generator.clone()
}

/// Discrete log with respect to the canonical generator.
pub fn discrete_log(u: &FieldElement) -> Result<u64> {
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let t = tables(u.spec());
    Ok(t.log[u.spec().code(u) as usize])
}

pub(crate) fn trace_by_code(spec: &FieldSpec, code: u64) -> u64 {
    tables(spec).trace[code as usize]
}

pub(crate) fn exp_code(spec: &FieldSpec, i: u64) -> u64 {
    tables(&spec.clone()).exp[i as usize]
}

impl MultCharacter {
    pub fn new(spec: FieldSpec, order: u64, exponent: u64) -> Result<Self> {
        let qm1 = spec.q() - 1;
        if order == 0 || (qm1 > 0 && qm1 % order != 0) || (qm1 == 0 && order != 1) {
            return Err(Error::BadCharacterOrder { order, qm1 });
        }
        Ok(MultCharacter { spec, order, exponent: exponent % order })
    }

    pub fn trivial(spec: FieldSpec) -> Self {
        MultCharacter { spec, order: 1, exponent: 0 }
    }

    /// The character of exact order 2 (q must be odd).
    pub fn quadratic(spec: FieldSpec) -> Result<Self> {
        Self::new(spec, 2, 1)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn conjugate(&self) -> MultCharacter {
        MultCharacter {
            spec: self.spec.clone(),
            order: self.order,
            exponent: (self.order - self.exponent) % self.order,
        }
    }

    /// Value as the exponent k in zeta_order^k, for nonzero u.
    pub fn eval_exponent(&self, u: &FieldElement) -> Result<u64> {
        if u.spec() != &self.spec {
            return Err(Error::FieldMismatch);
        }
        let dlog = discrete_log(u)?;
        // k * dlog mod order, guarding the product width
        Ok(((self.exponent as u128 * dlog as u128) % self.order as u128) as u64)
    }

    pub fn eval(&self, u: &FieldElement) -> Result<CycloValue> {
        let e = self.eval_exponent(u)?;
        Ok(CycloValue::root_of_unity(self.order, e))
    }

    /// chi(-1) as +1 or -1.
    pub fn value_at_minus_one(&self) -> i8 {
        let minus_one = self.spec.one().neg();
        if minus_one.is_one() {
            return 1; // characteristic 2
        }
        let e = self.eval_exponent(&minus_one).expect("nonzero");
        // (-1) has order 2, so the value is a square root of 1
        if e == 0 {
            1
        } else {
            debug_assert_eq!(e * 2 % self.order, 0);
            -1
        }
    }

    /// Same character presented with a possibly different (order, exponent) pair.
    pub fn same_character(&self, other: &MultCharacter) -> bool {
        if self.spec != other.spec {
            return false;
        }
        let qm1 = self.spec.q() - 1;
        if qm1 == 0 {
            return true;
        }
        self.exponent * (qm1 / self.order) == other.exponent * (qm1 / other.order)
    }

    /// Product character, presented on the full group of order q-1.
    pub fn compose(&self, other: &MultCharacter) -> Result<MultCharacter> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        let qm1 = self.spec.q() - 1;
        if qm1 == 0 {
            return Ok(MultCharacter::trivial(self.spec.clone()));
        }
        let e = (self.exponent * (qm1 / self.order) + other.exponent * (qm1 / other.order)) % qm1;
        let g = num_integer::gcd(e, qm1);
        let order = qm1 / g;
        MultCharacter::new(self.spec.clone(), order, if order == 1 { 0 } else { e / g })
    }
}

/// Character value chi(u), exact.
pub fn char_eval(chi: &MultCharacter, u: &FieldElement) -> Result<CycloValue> {
    chi.eval(u)
}
