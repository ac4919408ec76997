//! Torsion subgroups via the Nagell-Lutz bound on the completed-square model.
//!
//! Candidates come from Y = 2y + a1 x + a3 on eta^2 = g(xi) with xi = 4x,
//! eta = 4Y and g(xi) = xi^3 + b2 xi^2 + 8 b4 xi + 16 b6: torsion points are
//! integral there with eta = 0 or eta^2 dividing disc(g). Each candidate is
//! verified by multiplying up to the rational torsion bound.

use super::model::WeierstrassModel;
use super::point::RationalPoint;
use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Rational torsion order bound over Q.
const MAX_ORDER: i64 = 12;

/// The full torsion subgroup with its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionData {
    pub points: Vec<RationalPoint>,
    /// Invariant factors (a | b), e.g. [3] or [2, 4]; [1] for the trivial group.
    pub structure: Vec<u64>,
}

impl TorsionData {
    pub fn order(&self) -> u64 {
        self.points.len() as u64
    }
}

/// Discriminant of the monic cubic x^3 + a x^2 + b x + c.
fn cubic_disc(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    18 * a * b * c - 4 * a.pow(3) * c + a.pow(2) * b.pow(2) - 4 * b.pow(3) - 27 * c.pow(2)
}

/// All nonnegative eta with eta^2 dividing |d| (d != 0), ascending.
fn square_divisor_roots(d: &BigInt) -> Vec<BigInt> {
    let mut n = d.abs();
    let mut exponents: Vec<(BigInt, u32)> = vec![];
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&n, &p);
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            exponents.push((p.clone(), e));
        }
        p += 1u32;
    }
    // leftover n > 1 is prime with exponent 1: contributes nothing to squares
    let mut roots = vec![BigInt::from(1)];
    for (p, e) in exponents {
        let reps = e / 2;
        let mut next = vec![];
        for r in &roots {
            let mut pk = BigInt::from(1);
            for _ in 0..=reps {
                next.push(r * &pk);
                pk *= &p;
            }
        }
        roots = next;
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Integer roots of the monic cubic x^3 + a x^2 + b x + c, by exact
/// bisection on monotone intervals between the critical points.
fn integer_cubic_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let eval = |x: &BigInt| -> BigInt { x.pow(3) + a * x.pow(2) + b * x + c };
    let bound = BigInt::from(1) + a.abs().max(b.abs()).max(c.abs());
    let mut roots = vec![];

    // approximate critical points of the cubic (roots of 3x^2 + 2ax + b);
    // integers near them are probed directly, and the remaining intervals
    // are strictly monotone with a safety margin
    let af = bigint_to_f64(a);
    let bf = bigint_to_f64(b);
    let disc = 4.0 * af * af - 12.0 * bf;
    let mut crits: Vec<BigInt> = vec![];
    if disc > 0.0 {
        let s = disc.sqrt();
        for crit in [(-2.0 * af - s) / 6.0, (-2.0 * af + s) / 6.0] {
            if crit.is_finite() && crit.abs() < 9.0e18 {
                crits.push(BigInt::from(crit.floor() as i128));
            }
        }
    }
    crits.sort();
    crits.dedup();
    for c0 in &crits {
        for off in -3i64..=3 {
            let x = c0 + off;
            if eval(&x).is_zero() {
                roots.push(x);
            }
        }
    }

    // monotone intervals: [-B, c1-3], [c1+3, c2-3], [c2+3, B]
    let mut endpoints: Vec<BigInt> = vec![-&bound];
    for c0 in &crits {
        endpoints.push(c0 - 3);
        endpoints.push(c0 + 3);
    }
    endpoints.push(bound.clone());
    for pair in endpoints.chunks(2) {
        let (mut lo, mut hi) = (pair[0].clone(), pair[1].clone());
        if lo > hi {
            continue;
        }
        let (flo, fhi) = (eval(&lo), eval(&hi));
        if flo.is_zero() {
            roots.push(lo.clone());
        }
        if fhi.is_zero() {
            roots.push(hi.clone());
        }
        if flo.sign() == fhi.sign() || flo.is_zero() || fhi.is_zero() {
            continue;
        }
        let rising = flo.is_negative();
        while &hi - &lo > BigInt::from(1) {
            let mid: BigInt = (&lo + &hi) / 2;
            let fm = eval(&mid);
            if fm.is_zero() {
                roots.push(mid);
                break;
            }
            if fm.is_negative() == rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::MAX)
}

/// Order of a point if torsion of order <= 12, else None.
pub fn torsion_order_of(w: &WeierstrassModel, p: &RationalPoint) -> Option<u64> {
    let mut acc = p.clone();
    for n in 1..=MAX_ORDER {
        // acc = n*P here
        if acc.is_infinity() {
            return Some(n as u64);
        }
        acc = w.add_points(&acc, p).ok()?;
    }
    None
}

/// The torsion subgroup of an integral model.
pub fn torsion_subgroup(w: &WeierstrassModel) -> Result<TorsionData> {
    let inv = w.invariants()?;
    // eta^2 = xi^3 + b2 xi^2 + 8 b4 xi + 16 b6
    let ca = inv.b2.clone();
    let cb = 8 * &inv.b4;
    let cc = 16 * &inv.b6;
    let d = cubic_disc(&ca, &cb, &cc);
    debug_assert!(!d.is_zero());

    let mut etas = square_divisor_roots(&d);
    etas.insert(0, BigInt::zero());
    etas.dedup();

    let mut points = vec![RationalPoint::Infinity];
    let four = BigRational::from(BigInt::from(4));
    let eight = BigRational::from(BigInt::from(8));
    for eta in etas {
        // integer xi with g(xi) = eta^2
        let shift = &cc - &eta * &eta;
        for xi in integer_cubic_roots(&ca, &cb, &shift) {
            for sign in [1i64, -1] {
                let eta_signed = BigRational::from(&eta * BigInt::from(sign));
                let xi_rat = BigRational::from(xi.clone());
                let x = &xi_rat / &four;
                let a1 = BigRational::from(w.a1.clone());
                let a3 = BigRational::from(w.a3.clone());
                let y = (&eta_signed - &a1 * &xi_rat - &four * &a3) / &eight;
                if !w.contains_affine(&x, &y) {
                    continue;
                }
                let cand = RationalPoint::affine(x, y);
                if torsion_order_of(w, &cand).is_some() && !points.contains(&cand) {
                    points.push(cand);
                }
                if eta.is_zero() {
                    break;
                }
            }
        }
    }

    // group structure: N = |T|, exponent e = lcm of orders; shapes are Z/e or Z/2 x Z/e
    let orders: Vec<u64> = points
        .iter()
        .map(|p| torsion_order_of(w, p).expect("verified torsion"))
        .collect();
    let n = points.len() as u64;
    let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    let structure = if n == 1 {
        vec![1]
    } else if exponent == n {
        vec![n]
    } else {
        debug_assert_eq!(n % exponent, 0);
        vec![n / exponent, exponent]
    };
    // deterministic output order
    let mut indexed: Vec<(RationalPoint, u64)> =
        points.into_iter().zip(orders).collect();
    indexed.sort_by(|a, b| point_sort_key(&a.0).cmp(&point_sort_key(&b.0)));
    let points = indexed.into_iter().map(|(p, _)| p).collect();
    Ok(TorsionData { points, structure })
}

fn point_sort_key(p: &RationalPoint) -> (u8, BigRational, BigRational) {
    match p {
        RationalPoint::Infinity => (0, BigRational::zero(), BigRational::zero()),
        RationalPoint::Affine { x, y } => (1, x.clone(), y.clone()),
    }
}
