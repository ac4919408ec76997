//! Normalized Gauss sums of multiplicative characters.
//!
//! `tau(chi) = sum over nonzero u of chi(u) * psi(u)` with the additive
//! character `psi(u) = zeta_p^{Tr(u)}`. Values are carried with the unitary
//! normalization `tau(chi) * q^{-1/2}`; the exact algebraic part is retained.

use super::characters::{exp_code, trace_by_code, MultCharacter};
use super::cyclo::{CycloValue, NormalizedValue};
use super::field::FieldSpec;
use crate::error::{Error, Result};
use crate::par;

/// Sign of a real value.
pub type Sign = i8;

fn raw_gauss_sum(chi: &MultCharacter) -> CycloValue {
    let spec = chi.spec();
    let q = spec.q();
    let p = spec.p();
    let n = chi.order();
    let m = num_integer::lcm(n, p);
    let mut coeffs = vec![0i64; m as usize];
    let step_n = m / n;
    let step_p = m / p;
    for j in 0..(q - 1) {
        // u = g0^j: chi(u) = zeta_n^{k j}, psi(u) = zeta_p^{Tr(u)}
        let chi_exp = (chi.exponent() as u128 * j as u128 % n as u128) as u64;
        let tr = trace_by_code(spec, exp_code(spec, j));
        let e = (step_n * chi_exp + step_p * tr) % m;
        coeffs[e as usize] += 1;
    }
    CycloValue::from_coeffs(m, coeffs)
}

/// Gauss sum of a nontrivial character, unitarily normalized.
pub fn gauss_sum(chi: &MultCharacter) -> Result<NormalizedValue> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    Ok(NormalizedValue::new(raw_gauss_sum(chi), chi.spec().q(), -1))
}

/// Normalized Gauss sum of the trivial character, by convention 1.
fn norm_tau(chi: &MultCharacter) -> NormalizedValue {
    if chi.is_trivial() {
        NormalizedValue::one()
    } else {
        NormalizedValue::new(raw_gauss_sum(chi), chi.spec().q(), -1)
    }
}

/// Inverse of the normalized Gauss sum, via tau(chi) tau(conj chi) = chi(-1) q.
fn norm_tau_inverse(chi: &MultCharacter) -> NormalizedValue {
    if chi.is_trivial() {
        return NormalizedValue::one();
    }
    let sign = chi.value_at_minus_one() as i64;
    let conj = raw_gauss_sum(&chi.conjugate()).scale(sign);
    NormalizedValue::new(conj, chi.spec().q(), -1)
}

/// Product of normalized Gauss sums over a virtual character, with
/// tau(trivial) = 1 and negative multiplicities resolved by reflection.
pub fn gauss_sum_virtual(constituents: &[(MultCharacter, i64)]) -> Result<NormalizedValue> {
    let mut spec: Option<&FieldSpec> = None;
    for (chi, _) in constituents {
        match spec {
            None => spec = Some(chi.spec()),
            Some(s) if s == chi.spec() => {}
            Some(_) => return Err(Error::FieldMismatch),
        }
    }
    let mut acc = NormalizedValue::one();
    for (chi, mult) in constituents {
        if *mult == 0 {
            continue;
        }
        let factor = if *mult > 0 { norm_tau(chi) } else { norm_tau_inverse(chi) };
        for _ in 0..mult.unsigned_abs() {
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc.canonicalize())
}

/// Sign of a real nonzero normalized value.
pub fn real_sign(v: &NormalizedValue) -> Result<Sign> {
    let c = v.canonicalize();
    if c.is_zero() {
        return Err(Error::Zero);
    }
    if !c.is_real() {
        return Err(Error::NotReal);
    }
    if let Some(n) = c.algebraic.as_integer() {
        return Ok(if n > 0 { 1 } else { -1 });
    }
    // real algebraic value under the fixed embedding z -> exp(2 pi i / m)
    let (re, im) = c.algebraic.embed(1);
    debug_assert!(im.abs() < 1e-6 * (1.0 + re.abs()));
    if re.abs() < 1e-9 {
        return Err(Error::Zero);
    }
    Ok(if re > 0.0 { 1 } else { -1 })
}

/// Exact quadratic Gauss sum over F_p built from squares only: 1 + 2*sum zeta^(k^2).
///
/// Independent of the character/discrete-log machinery; equals sqrt(p) for
/// p ≡ 1 mod 4 and i*sqrt(p) for p ≡ 3 mod 4.
pub fn quadratic_gauss_reference(p: u64) -> CycloValue {
    assert!(p % 2 == 1);
    let mut coeffs = vec![0i64; p as usize];
    coeffs[0] = 1;
    for k in 1..=(p - 1) / 2 {
        coeffs[(k * k % p) as usize] += 2;
    }
    CycloValue::from_coeffs(p, coeffs)
}

/// Normalized quadratic Gauss sign for each odd prime, feature-parallel.
pub fn quadratic_sign_sweep(primes: &[u64]) -> Vec<(u64, NormalizedValue)> {
    par::map_collect(primes.to_vec(), |p| (p, quadratic_norm(p)))
}

/// Sequential variant of [`quadratic_sign_sweep`] for baseline comparison.
pub fn quadratic_sign_sweep_seq(primes: &[u64]) -> Vec<(u64, NormalizedValue)> {
    par::map_collect_seq(primes.to_vec(), |p| (p, quadratic_norm(p)))
}

fn quadratic_norm(p: u64) -> NormalizedValue {
    let spec = FieldSpec::prime(p).expect("prime");
    let chi = MultCharacter::quadratic(spec).expect("odd prime");
    gauss_sum(&chi).expect("nontrivial")
}
