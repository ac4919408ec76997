//! Closed points of the projective line over a finite field.
//!
//! A finite closed point is its monic irreducible minimal polynomial; the
//! residue field is the canonical extension of matching degree, with the
//! lex-least root as representative.

use super::poly::{poly_sort_key, Poly};
use crate::error::{Error, Result};
use crate::exactmath::field::{FieldElement, FieldSpec};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

type ReprKey = (u64, u32, Vec<Vec<u64>>);

fn repr_cache() -> &'static Mutex<HashMap<ReprKey, FieldElement>> {
    static CACHE: OnceLock<Mutex<HashMap<ReprKey, FieldElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embed_root_cache() -> &'static Mutex<HashMap<(u64, u32, u32), FieldElement>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), FieldElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A closed point of P^1: infinity or a monic irreducible over the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedPoint {
    Infinity,
    Finite(Poly),
}

impl ClosedPoint {
    pub fn finite(min_poly: Poly) -> Result<ClosedPoint> {
        if !min_poly.is_monic() || !min_poly.is_irreducible() {
            return Err(Error::WrongDivisor(format!(
                "not a monic irreducible: {min_poly}"
            )));
        }
        Ok(ClosedPoint::Finite(min_poly))
    }

    /// The degree-1 point t = a.
    pub fn rational(spec: &FieldSpec, a: &FieldElement) -> ClosedPoint {
        ClosedPoint::Finite(Poly::linear(spec.clone(), a))
    }

    pub fn degree(&self) -> u32 {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(p) => p.degree() as u32,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity)
    }

    pub fn min_poly(&self) -> Option<&Poly> {
        match self {
            ClosedPoint::Infinity => None,
            ClosedPoint::Finite(p) => Some(p),
        }
    }

    /// The residue field as a canonical FieldSpec over the same prime.
    pub fn residue_spec(&self, base: &FieldSpec) -> Result<FieldSpec> {
        FieldSpec::new(base.p(), base.degree() * self.degree())
    }

    /// Lex-least root of the minimal polynomial inside the residue field;
    /// for infinity, the zero of the chart coordinate (returned as 0).
    pub fn representative(&self, base: &FieldSpec) -> Result<FieldElement> {
        let ext = self.residue_spec(base)?;
        match self {
            ClosedPoint::Infinity => Ok(ext.zero()),
            ClosedPoint::Finite(pi) => {
                let key: ReprKey = (
                    base.p(),
                    base.degree(),
                    pi.coeffs().iter().map(|c| c.coords().to_vec()).collect(),
                );
                if let Some(hit) = repr_cache().lock().unwrap().get(&key) {
                    return Ok(hit.clone());
                }
                let embed = embedding(base, &ext)?;
                for cand in ext.elements() {
                    if pi.eval_embedded(&cand, &|c| embed(c)).is_zero() {
                        repr_cache().lock().unwrap().insert(key, cand.clone());
                        return Ok(cand);
                    }
                }
                Err(Error::InvalidField(format!(
                    "no root of {pi} in the residue field"
                )))
            }
        }
    }
}

/// Field embedding of `base` into `ext` (degrees divide), as a closure.
pub fn embedding(
    base: &FieldSpec,
    ext: &FieldSpec,
) -> Result<Box<dyn Fn(&FieldElement) -> FieldElement>> {
    if ext.p() != base.p() || ext.degree() % base.degree() != 0 {
        return Err(Error::FieldMismatch);
    }
    let ext = ext.clone();
    if base.degree() == 1 {
        return Ok(Box::new(move |c: &FieldElement| ext.from_prime(c.coords()[0])));
    }
    // image of the ring generator: lex-least root of the base modulus in ext
    let key = (base.p(), base.degree(), ext.degree());
    let cached = embed_root_cache().lock().unwrap().get(&key).cloned();
    let root = match cached {
        Some(r) => r,
        None => {
            let mut modulus = base.modulus().to_vec();
            modulus.push(1);
            let found = ext
                .elements()
                .into_iter()
                .find(|cand| {
                    let mut acc = ext.zero();
                    for &c in modulus.iter().rev() {
                        acc = acc
                            .mul(cand)
                            .expect("same field")
                            .add(&ext.from_prime(c))
                            .expect("same field");
                    }
                    acc.is_zero()
                })
                .ok_or(Error::FieldMismatch)?;
            embed_root_cache().lock().unwrap().insert(key, found.clone());
            found
        }
    };
    Ok(Box::new(move |c: &FieldElement| {
        let mut acc = ext.zero();
        for coord in c.coords().iter().rev() {
            acc = acc
                .mul(&root)
                .expect("same field")
                .add(&ext.from_prime(*coord))
                .expect("same field");
        }
        acc
    }))
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ClosedPoint::Infinity, ClosedPoint::Infinity) => std::cmp::Ordering::Equal,
            (ClosedPoint::Infinity, _) => std::cmp::Ordering::Less,
            (_, ClosedPoint::Infinity) => std::cmp::Ordering::Greater,
            (ClosedPoint::Finite(a), ClosedPoint::Finite(b)) => {
                poly_sort_key(a).cmp(&poly_sort_key(b))
            }
        }
    }
}

impl std::fmt::Display for ClosedPoint {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(out, "inf"),
            ClosedPoint::Finite(p) => write!(out, "({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_point_basics() {
        let s = FieldSpec::prime(5).unwrap();
        let p = ClosedPoint::rational(&s, &s.from_prime(2));
        assert_eq!(p.degree(), 1);
        assert_eq!(p.representative(&s).unwrap(), s.from_prime(2));
        assert_eq!(ClosedPoint::Infinity.degree(), 1);
    }

    #[test]
    fn quadratic_point_representative() {
        let s = FieldSpec::prime(3).unwrap();
        // t^2 + 1 irreducible over F_3; residue field F_9 with modulus x^2+1
        let pi = Poly::from_prime_coeffs(&s, &[1, 0, 1]);
        let p = ClosedPoint::finite(pi.clone()).unwrap();
        assert_eq!(p.degree(), 2);
        let rep = p.representative(&s).unwrap();
        let f9 = p.residue_spec(&s).unwrap();
        assert_eq!(f9.q(), 9);
        // rep^2 + 1 = 0 in F_9
        let val = rep.mul(&rep).unwrap().add(&f9.one()).unwrap();
        assert!(val.is_zero());
    }

    #[test]
    fn reducible_rejected() {
        let s = FieldSpec::prime(5).unwrap();
        let sq = Poly::from_prime_coeffs(&s, &[4, 0, 1]); // (t-1)(t+1)
        assert!(ClosedPoint::finite(sq).is_err());
    }
}
