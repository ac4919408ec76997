//! Tate's algorithm: local minimal models and Kodaira types at a prime.
//!
//! The implementation follows the classical step structure with explicit
//! integral coordinate changes, so it is valid at p = 2 and p = 3 as well.
//! Repeated-root analysis of the reduced cubic and the quadratics in the
//! I_n* subloop is done with exact arithmetic mod p.

use super::model::{residue, shift_down, val_p, WeierstrassModel};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Kodaira symbol of the special fiber of the minimal regular model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KodairaType {
    Good,
    /// I_n, n >= 1 (multiplicative)
    In(u32),
    II,
    III,
    IV,
    /// I_n*, n >= 0
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn is_good(&self) -> bool {
        matches!(self, KodairaType::Good)
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::In(_))
    }

    pub fn is_additive(&self) -> bool {
        !self.is_good() && !self.is_multiplicative()
    }

    /// Geometric component count of the special fiber.
    pub fn component_count(&self) -> u32 {
        match self {
            KodairaType::Good => 1,
            KodairaType::In(n) => *n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::InStar(n) => 5 + n,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::Good => write!(out, "good"),
            KodairaType::In(n) => write!(out, "I{n}"),
            KodairaType::II => write!(out, "II"),
            KodairaType::III => write!(out, "III"),
            KodairaType::IV => write!(out, "IV"),
            KodairaType::InStar(n) => write!(out, "I{n}*"),
            KodairaType::IVStar => write!(out, "IV*"),
            KodairaType::IIIStar => write!(out, "III*"),
            KodairaType::IIStar => write!(out, "II*"),
        }
    }
}

/// Local reduction data at a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaData {
    pub p: u64,
    pub kodaira: KodairaType,
    /// Valuation of the minimal discriminant.
    pub vdisc: u32,
    /// Geometric component count of the special fiber.
    pub ncomponents: u32,
    /// For multiplicative reduction: whether the node tangents are rational.
    pub split: Option<bool>,
    /// A model minimal at p (translations at other primes untouched).
    pub minimal_model: WeierstrassModel,
}

// ---- small exact helpers mod p ----

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn quad_disc(a: u64, b: u64, c: u64, p: u64) -> u64 {
    let pm = p as u128;
    let b2 = (b as u128 % pm) * (b as u128 % pm) % pm;
    let fourac = 4 * (a as u128 % pm) % pm * (c as u128 % pm) % pm;
    ((b2 + pm - fourac) % pm) as u64
}

/// Whether a*X^2 + b*X + c (a != 0 mod p) is separable mod p.
fn quad_separable(a: u64, b: u64, c: u64, p: u64) -> bool {
    debug_assert!(a % p != 0);
    if p == 2 {
        b % 2 != 0
    } else {
        quad_disc(a, b, c, p) != 0
    }
}

/// Double root of an inseparable a*X^2 + b*X + c mod p.
fn quad_double_root(a: u64, b: u64, c: u64, p: u64) -> u64 {
    debug_assert!(!quad_separable(a, b, c, p));
    if p == 2 {
        // b even: X^2 + c/a, and square roots in F_2 are the identity
        c % 2 * inv_mod(a % 2, 2) % 2
    } else {
        (p - b % p) % p * inv_mod(2 * a % p, p) % p
    }
}

/// Whether a*X^2 + b*X + c has a root in F_p (a != 0).
fn quad_has_rational_root(a: u64, b: u64, c: u64, p: u64) -> bool {
    if p == 2 {
        (c % 2 == 0) || ((a + b + c) % 2 == 0)
    } else {
        // Euler's criterion on the discriminant
        let disc = quad_disc(a, b, c, p);
        if disc == 0 {
            return true;
        }
        let mut r = 1u64;
        let mut base = disc;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r == 1
    }
}

/// Multiplicity of t0 as a root of the monic cubic T^3 + c2 T^2 + c1 T + c0 mod p.
fn cubic_root_multiplicity(c2: u64, c1: u64, c0: u64, t0: u64, p: u64) -> u32 {
    let mut coeffs = vec![c0 % p, c1 % p, c2 % p, 1];
    let mut mult = 0u32;
    while coeffs.len() > 1 {
        // synthetic division by (T - t0): quotient plus remainder
        let mut quot = vec![0u64; coeffs.len() - 1];
        let mut carry = 0u64;
        for i in (0..coeffs.len()).rev() {
            let v = (coeffs[i] + carry * t0) % p;
            if i == 0 {
                if v != 0 {
                    return mult;
                }
            } else {
                quot[i - 1] = v;
                carry = v;
            }
        }
        mult += 1;
        coeffs = quot;
    }
    mult
}

/// Repeated root of the monic cubic T^3 + c2 T^2 + c1 T + c0 mod p, with its
/// multiplicity (2 or 3); None when the cubic is separable.
fn cubic_repeated_root(c2: u64, c1: u64, c0: u64, p: u64) -> Option<(u64, u32)> {
    let cubic = vec![c0 % p, c1 % p, c2 % p, 1];
    let deriv = vec![c1 % p, 2 * c2 % p, 3 % p];
    let g = poly_gcd_mod(&cubic, &deriv, p);
    let t0 = match g.len() {
        // derivative vanished identically: char 3 with 3 | c1, c2;
        // T^3 + c0 = (T + cbrt(c0))^3 and cube roots on F_3 are the identity
        4 => {
            debug_assert_eq!(p, 3);
            (p - c0 % p) % p
        }
        1 => return None, // separable
        // gcd linear: its root; gcd quadratic: (T - t0)^2, extract t0
        2 => (p - g[0]) % p * inv_mod(g[1], p) % p,
        3 => {
            if p == 2 {
                g[0] % 2 // sqrt is the identity on F_2
            } else {
                (p - g[1]) % p * inv_mod(2 % p, p) % p
            }
        }
        _ => unreachable!("gcd of a cubic has degree <= 3"),
    };
    let mult = cubic_root_multiplicity(c2, c1, c0, t0, p);
    debug_assert!(mult >= 2, "gcd with derivative found a non-repeated root");
    Some((t0, mult))
}

/// Monic gcd of two polynomials mod p (low-to-high coefficients).
fn poly_gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a: Vec<u64> = a.iter().map(|&c| c % p).collect();
    let mut b: Vec<u64> = b.iter().map(|&c| c % p).collect();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // remainder of a by b
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let factor = *a.last().unwrap() % p * lead_inv % p;
            let shift = a.len() - b.len();
            if factor != 0 {
                for (i, &c) in b.iter().enumerate() {
                    a[shift + i] = (a[shift + i] + p * p - factor * c % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// Find a representative of the singular point of the reduction mod p,
/// assuming p | disc. Returns lifted (r, t) for the translation to (0,0).
fn singular_point(e: &WeierstrassModel, p: u64) -> (BigInt, BigInt) {
    if p < 64 {
        // brute scan; the singular point of a Weierstrass cubic is unique
        let pm = p as i128;
        let m = |v: &BigInt| residue(v, p) as i128;
        let (a1, a2, a3, a4, a6) = (m(&e.a1), m(&e.a2), m(&e.a3), m(&e.a4), m(&e.a6));
        for x in 0..pm {
            for y in 0..pm {
                let f = (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6)
                    .rem_euclid(pm);
                if f != 0 {
                    continue;
                }
                let fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4).rem_euclid(pm);
                let fy = (2 * y + a1 * x + a3).rem_euclid(pm);
                if fx == 0 && fy == 0 {
                    return (BigInt::from(x), BigInt::from(y));
                }
            }
        }
        panic!("no singular point found mod {p} although p | disc");
    }
    // p >= 64 is odd: complete the square. The singular x is the repeated
    // root of g(Z) = Z^3 + b2 Z^2 + 8 b4 Z + 16 b6 at Z = 4x.
    let inv = e.invariants().expect("nonsingular model");
    let c2 = residue(&inv.b2, p);
    let c1 = residue(&(8 * &inv.b4), p);
    let c0 = residue(&(16 * &inv.b6), p);
    let (z0, _) = cubic_repeated_root(c2, c1, c0, p).expect("repeated root exists for p | disc");
    let x0 = z0 % p * inv_mod(4 % p, p) % p;
    // y0 = -(a1 x0 + a3)/2 mod p
    let a1x = residue(&e.a1, p) * x0 % p;
    let num = (a1x + residue(&e.a3, p)) % p;
    let y0 = (p - num) % p * inv_mod(2 % p, p) % p;
    (BigInt::from(x0), BigInt::from(y0))
}

fn vp(e: &WeierstrassModel, p: u64) -> [u32; 5] {
    [
        val_p(&e.a1, p),
        val_p(&e.a2, p),
        val_p(&e.a3, p),
        val_p(&e.a4, p),
        val_p(&e.a6, p),
    ]
}

/// Normalize after ruling out types II-IV: valuations (>=1, >=1, >=2, >=2, >=3).
fn step6_normalize(e: &WeierstrassModel, p: u64) -> WeierstrassModel {
    let target = |m: &WeierstrassModel| {
        let v = vp(m, p);
        v[0] >= 1 && v[1] >= 1 && v[2] >= 2 && v[3] >= 2 && v[4] >= 3
    };
    if p <= 3 {
        for s in 0..p {
            for t in 0..p.pow(3) {
                let cand = e.translated(&BigInt::zero(), &BigInt::from(s), &BigInt::from(t));
                if target(&cand) {
                    return cand;
                }
            }
        }
        panic!("step-6 normalization failed at p = {p}");
    }
    // p >= 5: kill a1 mod p, then a3 mod p^2
    let s = (p - residue(&e.a1, p)) % p * inv_mod(2, p) % p;
    let m = e.translated(&BigInt::zero(), &BigInt::from(s), &BigInt::zero());
    let p2 = p as u128 * p as u128;
    let a3r = {
        use num_integer::Integer;
        let md = m.a3.mod_floor(&BigInt::from(p2));
        md.to_u64_digits().1.first().copied().unwrap_or(0) as u128
    };
    let inv2 = {
        // inverse of 2 mod p^2 via Euler: phi(p^2) = p(p-1)
        let mut r: u128 = 1;
        let mut b: u128 = 2;
        let mut exp = p as u128 * (p as u128 - 1) - 1;
        while exp > 0 {
            if exp & 1 == 1 {
                r = r * b % p2;
            }
            b = b * b % p2;
            exp >>= 1;
        }
        r
    };
    let t = (p2 - a3r % p2) % p2 * inv2 % p2;
    let m = m.translated(&BigInt::zero(), &BigInt::zero(), &BigInt::from(t));
    debug_assert!(target(&m), "step-6 closed form failed at p = {p}");
    m
}

/// Tate's algorithm; also reports how many u = p rescalings were applied.
pub fn tate_with_scalings(w: &WeierstrassModel, p: u64) -> Result<(KodairaData, u32)> {
    if !super::model::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let mut e = w.clone();
    e.invariants()?; // reject singular models up front
    let mut scalings = 0u32;
    let zero = BigInt::zero();

    'restart: loop {
        let inv = e.invariants().expect("scalings keep the model nonsingular");
        let n = val_p(&inv.disc, p);
        let finish = |kodaira: KodairaType, split: Option<bool>, model: WeierstrassModel| {
            let vdisc = val_p(&model.discriminant(), p);
            Ok((
                KodairaData {
                    p,
                    kodaira,
                    vdisc,
                    ncomponents: kodaira.component_count(),
                    split,
                    minimal_model: model,
                },
                scalings,
            ))
        };
        if n == 0 {
            return finish(KodairaType::Good, None, e);
        }

        // Step 2: move the singular point of the reduction to (0,0).
        let (r, t) = singular_point(&e, p);
        e = e.translated(&r, &zero, &t);
        debug_assert!(vp(&e, p)[2] >= 1 && vp(&e, p)[3] >= 1 && vp(&e, p)[4] >= 1);
        let inv = e.invariants().expect("translation preserves disc");
        if val_p(&inv.b2, p) == 0 {
            // node: multiplicative reduction, type I_n
            let a1 = residue(&e.a1, p);
            let a2neg = (p - residue(&e.a2, p)) % p;
            let split = quad_has_rational_root(1, a1, a2neg, p);
            return finish(KodairaType::In(n), Some(split), e);
        }

        // Additive reduction from here on.
        if val_p(&e.a6, p) < 2 {
            return finish(KodairaType::II, None, e);
        }
        if val_p(&inv.b8, p) < 3 {
            return finish(KodairaType::III, None, e);
        }
        if val_p(&inv.b6, p) < 3 {
            return finish(KodairaType::IV, None, e);
        }

        // Step 6: normalize valuations, then analyse P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3.
        e = step6_normalize(&e, p);
        let c2 = residue(&shift_down(&e.a2, p, 1), p);
        let c1 = residue(&shift_down(&e.a4, p, 2), p);
        let c0 = residue(&shift_down(&e.a6, p, 3), p);
        match cubic_repeated_root(c2, c1, c0, p) {
            None => {
                return finish(KodairaType::InStar(0), None, e);
            }
            Some((t0, 2)) => {
                // I_n* subloop; put the double root at T = 0
                e = e.translated(&(BigInt::from(t0) * p), &zero, &zero);
                {
                    let v = vp(&e, p);
                    debug_assert!(v[1] == 1 && v[2] >= 2 && v[3] >= 3 && v[4] >= 4);
                }
                let vdisc_entry = val_p(&e.discriminant(), p);
                let mut k = 2u32;
                loop {
                    // quadratic in Y: Y^2 + (a3/p^k) Y - a6/p^(2k)
                    let b = residue(&shift_down(&e.a3, p, k), p);
                    let c = (p - residue(&shift_down(&e.a6, p, 2 * k), p)) % p;
                    if quad_separable(1, b, c, p) {
                        return finish(KodairaType::InStar(2 * k - 3), None, e);
                    }
                    let y0 = quad_double_root(1, b, c, p);
                    e = e.translated(&zero, &zero, &(BigInt::from(y0) * BigInt::from(p).pow(k)));
                    // quadratic in X: (a2/p) X^2 + (a4/p^(k+1)) X + a6/p^(2k+1)
                    let qa = residue(&shift_down(&e.a2, p, 1), p);
                    let qb = residue(&shift_down(&e.a4, p, k + 1), p);
                    let qc = residue(&shift_down(&e.a6, p, 2 * k + 1), p);
                    if quad_separable(qa, qb, qc, p) {
                        return finish(KodairaType::InStar(2 * k - 2), None, e);
                    }
                    let x0 = quad_double_root(qa, qb, qc, p);
                    e = e.translated(&(BigInt::from(x0) * BigInt::from(p).pow(k)), &zero, &zero);
                    k += 1;
                    assert!(
                        2 * k <= vdisc_entry + 8,
                        "I_n* subloop exceeded the discriminant bound"
                    );
                }
            }
            Some((t0, _)) => {
                // triple root: translate it to T = 0
                e = e.translated(&(BigInt::from(t0) * p), &zero, &zero);
                {
                    let v = vp(&e, p);
                    debug_assert!(v[1] >= 2 && v[3] >= 3 && v[4] >= 4);
                }
                // quadratic Y^2 + (a3/p^2) Y - a6/p^4
                let b = residue(&shift_down(&e.a3, p, 2), p);
                let c = (p - residue(&shift_down(&e.a6, p, 4), p)) % p;
                if quad_separable(1, b, c, p) {
                    return finish(KodairaType::IVStar, None, e);
                }
                let y0 = quad_double_root(1, b, c, p);
                e = e.translated(&zero, &zero, &(BigInt::from(y0) * BigInt::from(p).pow(2)));
                if val_p(&e.a4, p) < 4 {
                    return finish(KodairaType::IIIStar, None, e);
                }
                if val_p(&e.a6, p) < 6 {
                    return finish(KodairaType::IIStar, None, e);
                }
                // non-minimal: rescale and start over
                e = e.transformed(&BigInt::from(p), &zero, &zero, &zero);
                scalings += 1;
                continue 'restart;
            }
        }
    }
}

/// Local minimal model and Kodaira data at p.
pub fn tate_algorithm(w: &WeierstrassModel, p: u64) -> Result<KodairaData> {
    Ok(tate_with_scalings(w, p)?.0)
}

/// A globally minimal model in reduced form, with a change flag.
pub fn global_minimal_model(w: &WeierstrassModel) -> Result<(WeierstrassModel, bool)> {
    let mut model = w.clone();
    model.invariants()?;
    let mut changed = false;
    let mut p = 2u64;
    loop {
        let disc = model.discriminant().abs();
        if BigInt::from(p).pow(12) > disc {
            break;
        }
        if super::model::is_prime_u64(p) && val_p(&disc, p) >= 12 {
            let (data, scalings) = tate_with_scalings(&model, p)?;
            if scalings > 0 {
                model = data.minimal_model;
                changed = true;
            }
        }
        p += 1;
    }
    let reduced = model.canonical_reduced();
    let changed = changed || reduced != *w;
    Ok((reduced, changed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_curve_types() {
        let x = WeierstrassModel::new([1, 0, 1, 0, 0]);
        let at2 = tate_algorithm(&x, 2).unwrap();
        assert_eq!(at2.kodaira, KodairaType::In(1));
        assert_eq!(at2.split, Some(false)); // tangent cone irreducible over F_2
        assert_eq!(at2.vdisc, 1);
        let at13 = tate_algorithm(&x, 13).unwrap();
        assert_eq!(at13.kodaira, KodairaType::In(1));
        let at5 = tate_algorithm(&x, 5).unwrap();
        assert_eq!(at5.kodaira, KodairaType::Good);
        assert_eq!(at5.ncomponents, 1);

        let y = WeierstrassModel::new([1, 0, 1, -5, -8]);
        let at2 = tate_algorithm(&y, 2).unwrap();
        assert_eq!(at2.kodaira, KodairaType::In(3));
        assert_eq!(at2.split, Some(false));
        assert_eq!(at2.ncomponents, 3);
        let at13 = tate_algorithm(&y, 13).unwrap();
        assert_eq!(at13.kodaira, KodairaType::In(3));
        assert_eq!(at13.split, Some(true)); // node tangents rational mod 13
    }

    #[test]
    fn known_multiplicative_curves() {
        // y^2 + y = x^3 - x^2 - 10x - 20: I5 at 11
        let e11 = WeierstrassModel::new([0, -1, 1, -10, -20]);
        let d = tate_algorithm(&e11, 11).unwrap();
        assert_eq!(d.kodaira, KodairaType::In(5));
        // y^2 + y = x^3 - x: I1 at 37
        let e37 = WeierstrassModel::new([0, 0, 1, -1, 0]);
        let d = tate_algorithm(&e37, 37).unwrap();
        assert_eq!(d.kodaira, KodairaType::In(1));
        assert_eq!(d.vdisc, 1);
    }

    #[test]
    fn additive_small_curves() {
        // y^2 = x^3 + x: additive at 2; conductor 64 forces type II via Ogg
        let w = WeierstrassModel::new([0, 0, 0, 1, 0]);
        let d = tate_algorithm(&w, 2).unwrap();
        assert!(d.kodaira.is_additive());
        assert_eq!(d.kodaira, KodairaType::II);
        assert_eq!(d.vdisc, 6);
        // y^2 = x^3 + 1: disc = -432 = -2^4 * 27
        let w = WeierstrassModel::new([0, 0, 0, 0, 1]);
        let d2 = tate_algorithm(&w, 2).unwrap();
        assert!(d2.kodaira.is_additive());
        let d3 = tate_algorithm(&w, 3).unwrap();
        assert!(d3.kodaira.is_additive());
    }

    #[test]
    fn star_types_at_large_primes_match_valuations() {
        // For p >= 5 the type pins v(disc): II:2 III:3 IV:4 I0*:6 In*:6+n IV*:8 III*:9 II*:10
        for p in [5u64, 7, 11] {
            let pi = p as i64;
            let cases: Vec<(WeierstrassModel, KodairaType)> = vec![
                (WeierstrassModel::new([0, 0, 0, 0, pi]), KodairaType::II),
                (WeierstrassModel::new([0, 0, 0, pi, 0]), KodairaType::III),
                (WeierstrassModel::new([0, 0, 0, 0, pi * pi]), KodairaType::IV),
                (WeierstrassModel::new([0, 0, 0, -pi * pi, 0]), KodairaType::InStar(0)),
                (WeierstrassModel::new([0, 0, 0, pi * pi * pi, 0]), KodairaType::IIIStar),
                (
                    WeierstrassModel::new([0, 0, 0, 0, pi * pi * pi * pi * pi]),
                    KodairaType::IIStar,
                ),
                (
                    WeierstrassModel::new([0, 0, 0, 0, pi * pi * pi * pi]),
                    KodairaType::IVStar,
                ),
            ];
            for (w, expect) in cases {
                let d = tate_algorithm(&w, p).unwrap();
                assert_eq!(d.kodaira, expect, "curve {w} at {p}");
                let expected_v = match expect {
                    KodairaType::II => 2,
                    KodairaType::III => 3,
                    KodairaType::IV => 4,
                    KodairaType::InStar(n) => 6 + n,
                    KodairaType::IVStar => 8,
                    KodairaType::IIIStar => 9,
                    KodairaType::IIStar => 10,
                    _ => unreachable!(),
                };
                assert_eq!(d.vdisc, expected_v, "valuation for {expect} at {p}");
            }
            // I_n* families: y^2 = x^3 + p x^2 + p^3 x + c p^4 has I1* for generic c,
            // and a6 = p^5 d pushes to I2*.
            let i1 = WeierstrassModel::new([0, pi, 0, pi.pow(3), 2 * pi.pow(4)]);
            let d = tate_algorithm(&i1, p).unwrap();
            assert_eq!(d.kodaira, KodairaType::InStar(1));
            assert_eq!(d.vdisc, 7);
            let i2 = WeierstrassModel::new([0, pi, 0, pi.pow(3), pi.pow(5)]);
            let d = tate_algorithm(&i2, p).unwrap();
            assert_eq!(d.kodaira, KodairaType::InStar(2));
            assert_eq!(d.vdisc, 8);
        }
    }

    #[test]
    fn instar_at_two() {
        // y^2 = x^3 - 4x: quotient of y^2 = x^3 + x by its 2-torsion; I2* at 2
        let w = WeierstrassModel::new([0, 0, 0, -4, 0]);
        let d = tate_algorithm(&w, 2).unwrap();
        assert_eq!(d.kodaira, KodairaType::InStar(2));
        assert_eq!(d.vdisc, 12); // minimal despite v = 12
    }

    #[test]
    fn nonminimal_models_rescale() {
        // y^2 = x^3 + 16 is y^2 + y = x^3 after rescaling: good at 2
        let w = WeierstrassModel::new([0, 0, 0, 0, 16]);
        let (data, scalings) = tate_with_scalings(&w, 2).unwrap();
        assert_eq!(scalings, 1);
        assert_eq!(data.kodaira, KodairaType::Good);
        let (min, changed) = global_minimal_model(&w).unwrap();
        assert!(changed);
        assert_eq!(min, WeierstrassModel::new([0, 0, 1, 0, 0]));

        // u = 6 blowup of [1,0,1,0,0]: scale a_i by 6^i
        let big = WeierstrassModel::new([6, 0, 216, 0, 0]);
        let (min, changed) = global_minimal_model(&big).unwrap();
        assert!(changed);
        assert_eq!(min, WeierstrassModel::new([1, 0, 1, 0, 0]));
    }

    #[test]
    fn already_minimal_untouched() {
        let w = WeierstrassModel::new([1, 0, 1, -5, -8]);
        let (min, changed) = global_minimal_model(&w).unwrap();
        assert_eq!(min, w);
        assert!(!changed);
    }

    #[test]
    fn split_vs_nonsplit_matches_counts() {
        // split multiplicative at p: smooth locus has p - 1 points; nonsplit: p + 1
        for (curve, p) in [
            (WeierstrassModel::new([1, 0, 1, 0, 0]), 2u64),
            (WeierstrassModel::new([1, 0, 1, 0, 0]), 13),
            (WeierstrassModel::new([1, 0, 1, -5, -8]), 2),
            (WeierstrassModel::new([1, 0, 1, -5, -8]), 13),
            (WeierstrassModel::new([0, -1, 1, -10, -20]), 11),
            (WeierstrassModel::new([0, 0, 1, -1, 0]), 37),
        ] {
            let d = tate_algorithm(&curve, p).unwrap();
            let split = d.split.unwrap();
            let count = smooth_point_count(&d.minimal_model, p);
            if split {
                assert_eq!(count, p - 1, "{curve} at {p}");
            } else {
                assert_eq!(count, p + 1, "{curve} at {p}");
            }
        }
    }

    /// Brute-force count of smooth affine points plus the point at infinity.
    fn smooth_point_count(w: &WeierstrassModel, p: u64) -> u64 {
        let pm = p as i128;
        let m = |v: &BigInt| residue(v, p) as i128;
        let (a1, a2, a3, a4, a6) = (m(&w.a1), m(&w.a2), m(&w.a3), m(&w.a4), m(&w.a6));
        let mut count = 1u64; // infinity is always smooth
        for x in 0..pm {
            for y in 0..pm {
                let f = (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6)
                    .rem_euclid(pm);
                if f != 0 {
                    continue;
                }
                let fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4).rem_euclid(pm);
                let fy = (2 * y + a1 * x + a3).rem_euclid(pm);
                if fx != 0 || fy != 0 {
                    count += 1;
                }
            }
        }
        count
    }
}
