//! Rational points, the chord-tangent group law, and reduction mod p.

use super::model::{residue, WeierstrassModel};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A point of the curve over Q, canonicalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RationalPoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl RationalPoint {
    pub fn affine(x: BigRational, y: BigRational) -> Self {
        RationalPoint::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::Affine { x: BigRational::from(BigInt::from(x)), y: BigRational::from(BigInt::from(y)) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, RationalPoint::Infinity)
    }
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalPoint::Infinity => write!(out, "O"),
            RationalPoint::Affine { x, y } => write!(out, "[{x},{y}]"),
        }
    }
}

impl WeierstrassModel {
    pub fn contains(&self, p: &RationalPoint) -> bool {
        match p {
            RationalPoint::Infinity => true,
            RationalPoint::Affine { x, y } => self.contains_affine(x, y),
        }
    }

    /// -P = (x, -y - a1 x - a3).
    pub fn negate(&self, p: &RationalPoint) -> Result<RationalPoint> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        Ok(match p {
            RationalPoint::Infinity => RationalPoint::Infinity,
            RationalPoint::Affine { x, y } => {
                let a1 = BigRational::from(self.a1.clone());
                let a3 = BigRational::from(self.a3.clone());
                RationalPoint::Affine { x: x.clone(), y: -y - a1 * x - a3 }
            }
        })
    }

    /// Chord-tangent addition.
    pub fn add_points(&self, p: &RationalPoint, q: &RationalPoint) -> Result<RationalPoint> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::OffCurve);
        }
        let (x1, y1) = match p {
            RationalPoint::Infinity => return Ok(q.clone()),
            RationalPoint::Affine { x, y } => (x.clone(), y.clone()),
        };
        let (x2, y2) = match q {
            RationalPoint::Infinity => return Ok(p.clone()),
            RationalPoint::Affine { x, y } => (x.clone(), y.clone()),
        };
        let a1 = BigRational::from(self.a1.clone());
        let a2 = BigRational::from(self.a2.clone());
        let a3 = BigRational::from(self.a3.clone());
        let a4 = BigRational::from(self.a4.clone());
        let a6 = BigRational::from(self.a6.clone());

        let (lambda, nu) = if x1 != x2 {
            let l = (&y2 - &y1) / (&x2 - &x1);
            let n = (&y1 * &x2 - &y2 * &x1) / (&x2 - &x1);
            (l, n)
        } else {
            // same x: either inverses or a doubling
            let denom = BigRational::from(BigInt::from(2)) * &y1 + &a1 * &x1 + &a3;
            if denom.is_zero() || y1 != y2 {
                return Ok(RationalPoint::Infinity);
            }
            let three = BigRational::from(BigInt::from(3));
            let two = BigRational::from(BigInt::from(2));
            let l = (&three * &x1 * &x1 + &two * &a2 * &x1 + &a4 - &a1 * &y1) / &denom;
            let n = (-(&x1 * &x1 * &x1) + &a4 * &x1 + &two * &a6 - &a3 * &y1) / &denom;
            (l, n)
        };
        let x3 = &lambda * &lambda + &a1 * &lambda - &a2 - &x1 - &x2;
        let y3 = -(&lambda + &a1) * &x3 - &nu - &a3;
        Ok(RationalPoint::Affine { x: x3, y: y3 })
    }

    /// n-fold sum; n may be negative.
    pub fn multiply(&self, p: &RationalPoint, n: i64) -> Result<RationalPoint> {
        let base = if n < 0 { self.negate(p)? } else { p.clone() };
        let mut acc = RationalPoint::Infinity;
        for _ in 0..n.unsigned_abs() {
            acc = self.add_points(&acc, &base)?;
        }
        Ok(acc)
    }
}

/// A point of the reduced curve over F_p, in projective coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedPoint {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    /// Whether the point is a smooth point of the reduced curve.
    pub smooth: bool,
}

impl ReducedPoint {
    pub fn is_infinity(&self) -> bool {
        self.z == 0
    }
}

/// Primitive integer projective coordinates of a rational point.
fn primitive_triple(p: &RationalPoint) -> (BigInt, BigInt, BigInt) {
    match p {
        RationalPoint::Infinity => (BigInt::zero(), BigInt::one(), BigInt::zero()),
        RationalPoint::Affine { x, y } => {
            let dz = num_integer::lcm(x.denom().clone(), y.denom().clone());
            let xx = (x * BigRational::from(dz.clone())).to_integer();
            let yy = (y * BigRational::from(dz.clone())).to_integer();
            let g = num_integer::gcd(num_integer::gcd(xx.abs(), yy.abs()), dz.abs());
            (xx / &g, yy / &g, dz / &g)
        }
    }
}

/// Projective reduction mod p with a smoothness flag for the landing point.
pub fn reduce_point(w: &WeierstrassModel, point: &RationalPoint, p: u64) -> Result<ReducedPoint> {
    if !w.contains(point) {
        return Err(Error::OffCurve);
    }
    let (xx, yy, zz) = primitive_triple(point);
    let (x, y, z) = (residue(&xx, p), residue(&yy, p), residue(&zz, p));
    // normalize the representative: last nonzero coordinate scaled to 1 where possible
    let (x, y, z) = normalize_projective(x, y, z, p);
    let smooth = is_smooth_point(w, x, y, z, p);
    Ok(ReducedPoint { x, y, z, smooth })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime
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

fn normalize_projective(x: u64, y: u64, z: u64, p: u64) -> (u64, u64, u64) {
    if z != 0 {
        let inv = inv_mod(z, p);
        (x * inv % p, y * inv % p, 1)
    } else if y != 0 {
        let inv = inv_mod(y, p);
        (x * inv % p, 1, 0)
    } else {
        (1, 0, 0)
    }
}

/// Jacobian criterion for the homogenized Weierstrass cubic at a point on it.
fn is_smooth_point(w: &WeierstrassModel, x: u64, y: u64, z: u64, p: u64) -> bool {
    let pb = p as i128;
    let m = |v: &BigInt| -> i128 { residue(v, p) as i128 };
    let (a1, a2, a3, a4, a6) = (m(&w.a1), m(&w.a2), m(&w.a3), m(&w.a4), m(&w.a6));
    let (x, y, z) = (x as i128, y as i128, z as i128);
    // F = y^2 z + a1 xyz + a3 y z^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3
    let fx = (a1 * y * z - 3 * x * x - 2 * a2 * x * z - a4 * z * z).rem_euclid(pb);
    let fy = (2 * y * z + a1 * x * z + a3 * z * z).rem_euclid(pb);
    let fz = (y * y + a1 * x * y + 2 * a3 * y * z - a2 * x * x - 2 * a4 * x * z - 3 * a6 * z * z)
        .rem_euclid(pb);
    fx != 0 || fy != 0 || fz != 0
}
