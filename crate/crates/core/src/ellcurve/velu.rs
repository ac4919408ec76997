//! Quotients of a curve by a finite rational subgroup.
//!
//! The quotient model keeps a1, a2, a3 and shifts a4, a6 by sums over the
//! kernel; one representative is taken from each inverse pair. The result is
//! reduced to a globally minimal model.

use super::model::WeierstrassModel;
use super::point::RationalPoint;
use super::tate::global_minimal_model;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Closure of a point list under addition and negation, with a size cap.
pub fn subgroup_closure(
    w: &WeierstrassModel,
    generators: &[RationalPoint],
    cap: usize,
) -> Result<Vec<RationalPoint>> {
    for g in generators {
        if !w.contains(g) {
            return Err(Error::OffCurve);
        }
    }
    let mut elements = vec![RationalPoint::Infinity];
    let mut frontier = elements.clone();
    while let Some(e) = frontier.pop() {
        for g in generators {
            for next in [w.add_points(&e, g)?, w.add_points(&e, &w.negate(g)?)?] {
                if !elements.contains(&next) {
                    if elements.len() >= cap {
                        return Err(Error::NotTorsion);
                    }
                    elements.push(next.clone());
                    frontier.push(next);
                }
            }
        }
    }
    Ok(elements)
}

fn is_subgroup(w: &WeierstrassModel, kernel: &[RationalPoint]) -> bool {
    if !kernel.contains(&RationalPoint::Infinity) {
        return false;
    }
    for a in kernel {
        if !w.contains(a) {
            return false;
        }
        match w.negate(a) {
            Ok(n) if kernel.contains(&n) => {}
            _ => return false,
        }
        for b in kernel {
            match w.add_points(a, b) {
                Ok(s) if kernel.contains(&s) => {}
                _ => return false,
            }
        }
    }
    true
}

/// The quotient curve by a finite subgroup, as a reduced global minimal model.
pub fn velu_quotient(w: &WeierstrassModel, kernel: &[RationalPoint]) -> Result<WeierstrassModel> {
    w.invariants()?;
    if !is_subgroup(w, kernel) {
        return Err(Error::NotASubgroup);
    }
    let a1 = BigRational::from(w.a1.clone());
    let a2 = BigRational::from(w.a2.clone());
    let a3 = BigRational::from(w.a3.clone());
    let a4 = BigRational::from(w.a4.clone());
    let a6 = BigRational::from(w.a6.clone());
    let b2 = &a1 * &a1 + BigRational::from(BigInt::from(4)) * &a2;

    let mut t = BigRational::zero();
    let mut ww = BigRational::zero();
    let mut used: Vec<RationalPoint> = vec![];
    for q in kernel {
        let (x, y) = match q {
            RationalPoint::Infinity => continue,
            RationalPoint::Affine { x, y } => (x.clone(), y.clone()),
        };
        let neg = w.negate(q)?;
        if used.contains(&neg) {
            continue; // one representative per inverse pair
        }
        used.push(q.clone());
        let two = BigRational::from(BigInt::from(2));
        let three = BigRational::from(BigInt::from(3));
        let gx = &three * &x * &x + &two * &a2 * &x + &a4 - &a1 * &y;
        let gy = -&two * &y - &a1 * &x - &a3;
        let tq = if neg == *q {
            gx.clone()
        } else {
            &two * &gx - &a1 * &gy
        };
        let uq = &gy * &gy;
        ww += &uq + &x * &tq;
        t += tq;
    }

    let five = BigRational::from(BigInt::from(5));
    let seven = BigRational::from(BigInt::from(7));
    let qa4 = &a4 - &five * &t;
    let qa6 = &a6 - &b2 * &t - &seven * &ww;
    let integral = WeierstrassModel::from_rational_coeffs(a1, a2, a3, qa4, qa6);
    let (minimal, _) = global_minimal_model(&integral)?;
    Ok(minimal)
}
