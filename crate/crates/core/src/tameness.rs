//! Numerical tameness of a torsion-subgroup action on a minimal model.
//!
//! For each prime p dividing the order of the acting group: the model must
//! have good or multiplicative reduction at p, and the p-Sylow subgroup must
//! reduce mod p to pairwise distinct smooth points.

use crate::ellcurve::{
    reduce_point, tate_algorithm, torsion_order_of, torsion_subgroup, KodairaType,
    RationalPoint, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::par;
use serde::{Deserialize, Serialize};

/// Verdict for one prime dividing the group order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    pub p: u64,
    /// Reduction type is good or multiplicative.
    pub condition_reduction: bool,
    pub kodaira: String,
    /// p-Sylow points reduce to pairwise distinct smooth points.
    pub condition_sylow_smooth: bool,
    pub sylow_order: u64,
}

/// Full tameness report for a kernel acting by translations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamenessReport {
    pub group_order: u64,
    /// Invariant factors of the kernel.
    pub structure: Vec<u64>,
    pub per_prime: Vec<PrimeVerdict>,
    /// gcd of the two cyclic factors is 1 (single-factor groups pass).
    pub structural_coprime: bool,
    pub overall: bool,
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of a finite subgroup of curve points.
fn kernel_structure(w: &WeierstrassModel, kernel: &[RationalPoint]) -> Result<Vec<u64>> {
    let mut orders = vec![];
    for p in kernel {
        match torsion_order_of(w, p) {
            Some(o) => orders.push(o),
            None => return Err(Error::NotTorsion),
        }
    }
    let n = kernel.len() as u64;
    let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    Ok(if n <= 1 {
        vec![1]
    } else if exponent == n {
        vec![n]
    } else {
        vec![n / exponent, exponent]
    })
}

/// Kwon's criteria for a torsion kernel on a globally minimal model.
pub fn kwon_check(w: &WeierstrassModel, kernel: &[RationalPoint]) -> Result<TamenessReport> {
    w.invariants()?;
    let torsion = torsion_subgroup(w)?;
    for pt in kernel {
        if !w.contains(pt) {
            return Err(Error::OffCurve);
        }
        if !pt.is_infinity() && !torsion.points.contains(pt) {
            return Err(Error::NotTorsion);
        }
    }
    let order = kernel.len() as u64;
    let structure = kernel_structure(w, kernel)?;
    let structural_coprime = match structure.as_slice() {
        [_] => true,
        [a, b] => num_integer::gcd(*a, *b) == 1,
        _ => false,
    };

    let primes = prime_divisors(order);
    let kernel_owned: Vec<RationalPoint> = kernel.to_vec();
    let w_owned = w.clone();
    let verdicts: Vec<Result<PrimeVerdict>> = par::map_collect(primes, move |p| {
        let data = tate_algorithm(&w_owned, p)?;
        let condition_reduction =
            matches!(data.kodaira, KodairaType::Good | KodairaType::In(_));
        // p-Sylow subgroup of the kernel: points of p-power order
        let sylow: Vec<&RationalPoint> = kernel_owned
            .iter()
            .filter(|pt| {
                torsion_order_of(&w_owned, pt)
                    .map(|o| is_prime_power_or_one(o, p))
                    .unwrap_or(false)
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut smooth_distinct = true;
        for pt in &sylow {
            let red = reduce_point(&w_owned, pt, p)?;
            if !red.smooth || !seen.insert((red.x, red.y, red.z)) {
                smooth_distinct = false;
                break;
            }
        }
        Ok(PrimeVerdict {
            p,
            condition_reduction,
            kodaira: data.kodaira.to_string(),
            condition_sylow_smooth: smooth_distinct,
            sylow_order: sylow.len() as u64,
        })
    });
    let per_prime = verdicts.into_iter().collect::<Result<Vec<_>>>()?;

    let overall = structural_coprime
        && per_prime
            .iter()
            .all(|v| v.condition_reduction && v.condition_sylow_smooth);
    Ok(TamenessReport {
        group_order: order,
        structure,
        per_prime,
        structural_coprime,
        overall,
    })
}

fn is_prime_power_or_one(o: u64, p: u64) -> bool {
    let mut o = o;
    while o % p == 0 {
        o /= p;
    }
    o == 1
}
