//! Weierstrass models and their standard invariants.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

/// The b-, c-invariants, discriminant and j-invariant of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
    pub j_num: BigInt,
    pub j_den: BigInt,
}

impl WeierstrassModel {
    pub fn new(a: [i64; 5]) -> Self {
        WeierstrassModel {
            a1: a[0].into(),
            a2: a[1].into(),
            a3: a[2].into(),
            a4: a[3].into(),
            a6: a[4].into(),
        }
    }

    pub fn from_bigints(a1: BigInt, a2: BigInt, a3: BigInt, a4: BigInt, a6: BigInt) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn coefficients(&self) -> [&BigInt; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    fn raw_invariants(&self) -> CurveInvariants {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * (a2 * a6) - a1 * a3 * a4 + a2 * (a3 * a3) - a4 * a4;
        let c4 = &b2 * &b2 - 24 * &b4;
        let b2cubed: BigInt = &b2 * &b2 * &b2;
        let c6 = -b2cubed + 36 * (&b2 * &b4) - 216 * &b6;
        let b2sq_b8: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = -b2sq_b8 - 8 * (&b4 * &b4 * &b4) - 27 * (&b6 * &b6)
            + 9 * (&b2 * &b4 * &b6);
        let j_num = &c4 * &c4 * &c4;
        CurveInvariants { b2, b4, b6, b8, c4, c6, j_den: disc.clone(), disc, j_num }
    }

    /// Standard invariants; errors on a singular model.
    pub fn invariants(&self) -> Result<CurveInvariants> {
        let inv = self.raw_invariants();
        if inv.disc.is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(inv)
    }

    pub fn discriminant(&self) -> BigInt {
        self.raw_invariants().disc
    }

    /// Coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
    ///
    /// Requires the divisions by powers of `u` to be exact; callers only use
    /// non-unit `u` at points where the theory guarantees integrality.
    pub fn transformed(&self, u: &BigInt, r: &BigInt, s: &BigInt, t: &BigInt) -> WeierstrassModel {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let na1 = a1 + 2 * s;
        let na2 = a2 - s * a1 + 3 * r - s * s;
        let na3 = a3 + r * a1 + 2 * t;
        let na4 = a4 - s * a3 + 2 * (r * a2) - (t + r * s) * a1 + 3 * (r * r) - 2 * (s * t);
        let na6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let div = |n: BigInt, d: &BigInt| -> BigInt {
            let (q, rem) = num_integer::Integer::div_rem(&n, d);
            assert!(rem.is_zero(), "non-integral coordinate change");
            q
        };
        WeierstrassModel {
            a1: div(na1, u),
            a2: div(na2, &u2),
            a3: div(na3, &u3),
            a4: div(na4, &u4),
            a6: div(na6, &u6),
        }
    }

    pub fn translated(&self, r: &BigInt, s: &BigInt, t: &BigInt) -> WeierstrassModel {
        self.transformed(&BigInt::one(), r, s, t)
    }

    /// Whether (x, y) satisfies the affine equation.
    pub fn contains_affine(&self, x: &BigRational, y: &BigRational) -> bool {
        let a1 = BigRational::from(self.a1.clone());
        let a2 = BigRational::from(self.a2.clone());
        let a3 = BigRational::from(self.a3.clone());
        let a4 = BigRational::from(self.a4.clone());
        let a6 = BigRational::from(self.a6.clone());
        y * y + &a1 * x * y + &a3 * y == x * x * x + &a2 * x * x + &a4 * x + &a6
    }

    /// The reduced form with a1, a3 in {0,1} and a2 in {-1,0,1}.
    pub fn canonical_reduced(&self) -> WeierstrassModel {
        use num_integer::Integer;
        let zero = BigInt::zero();
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        // s: a1 + 2s in {0,1}
        let s = -self.a1.div_floor(&two);
        let m = self.translated(&zero, &s, &zero);
        // r: a2 + 3r in {-1,0,1}
        let a2p1: BigInt = &m.a2 + 1;
        let r = -a2p1.div_floor(&three);
        let m = m.translated(&r, &zero, &zero);
        // t: a3 + 2t in {0,1}
        let t = -m.a3.div_floor(&two);
        m.translated(&zero, &zero, &t)
    }

    /// Clear rational scaling so all coefficients are integers after a
    /// u = 1/m change; `self` is already integral so this is the identity,
    /// provided for quotient construction which passes rationals.
    pub(crate) fn from_rational_coeffs(
        a1: BigRational,
        a2: BigRational,
        a3: BigRational,
        a4: BigRational,
        a6: BigRational,
    ) -> WeierstrassModel {
        // find m with m^i * a_i integral for i = 1,2,3,4,6
        let mut m = BigInt::one();
        let coeffs: [(&BigRational, u32); 5] =
            [(&a1, 1), (&a2, 2), (&a3, 3), (&a4, 4), (&a6, 6)];
        loop {
            let ok = coeffs.iter().all(|(c, e)| {
                let scaled = (*c) * BigRational::from(m.pow(*e));
                scaled.is_integer()
            });
            if ok {
                break;
            }
            m += 1;
            assert!(m.magnitude().bits() < 64, "runaway denominator clearing");
        }
        let to_int = |c: &BigRational, e: u32| (c * BigRational::from(m.pow(e))).to_integer();
        WeierstrassModel {
            a1: to_int(&a1, 1),
            a2: to_int(&a2, 2),
            a3: to_int(&a3, 3),
            a4: to_int(&a4, 4),
            a6: to_int(&a6, 6),
        }
    }
}

impl std::fmt::Display for WeierstrassModel {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "[{},{},{},{},{}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl CurveInvariants {
    /// Consistency identities 4 b8 = b2 b6 - b4^2 and 1728 disc = c4^3 - c6^3.
    pub fn consistent(&self) -> bool {
        let lhs = 4 * &self.b8;
        let rhs = &self.b2 * &self.b6 - &self.b4 * &self.b4;
        let lhs2 = 1728 * &self.disc;
        let rhs2 = &self.c4 * &self.c4 * &self.c4 - &self.c6 * &self.c6;
        lhs == rhs && lhs2 == rhs2
    }
}

pub(crate) use crate::exactmath::field::is_prime as is_prime_u64;

/// p-adic valuation; u32::MAX encodes infinity (the zero integer).
pub(crate) fn val_p(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut x = x.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&x, &p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        x = q;
    }
}

/// x / p^k, exact.
pub(crate) fn shift_down(x: &BigInt, p: u64, k: u32) -> BigInt {
    let d = BigInt::from(p).pow(k);
    let (q, r) = num_integer::Integer::div_rem(x, &d);
    assert!(r.is_zero());
    q
}

/// Least nonnegative residue mod p.
pub(crate) fn residue(x: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = x.mod_floor(&BigInt::from(p));
    let digits = m.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}
