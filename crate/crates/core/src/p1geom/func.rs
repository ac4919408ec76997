//! Rational functions and logarithmic differentials on the line.
//!
//! A differential is written f dt in the affine coordinate; the chart change
//! dt = -s^{-2} ds governs orders and residues at infinity.

use super::points::{embedding, ClosedPoint};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactmath::field::{FieldElement, FieldSpec};
use serde::{Deserialize, Serialize};

/// num/den in canonical form: coprime, den monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// The differential f dt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogDifferential {
    pub f: RationalFunction,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::WrongDivisor("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        // fold the denominator's leading unit into the numerator
        let lead = den.leading().expect("nonzero").clone();
        let inv = lead.inv().expect("nonzero");
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let spec = p.spec().clone();
        RationalFunction { num: p, den: Poly::one(spec) }
    }

    pub fn zero(spec: FieldSpec) -> RationalFunction {
        RationalFunction { num: Poly::zero(spec.clone()), den: Poly::one(spec) }
    }

    pub fn spec(&self) -> &FieldSpec {
        self.num.spec()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &FieldElement) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Order of vanishing at a closed point.
    pub fn ord_at(&self, x: &ClosedPoint) -> i64 {
        assert!(!self.is_zero(), "order of the zero function");
        match x {
            ClosedPoint::Infinity => self.den.degree() - self.num.degree(),
            ClosedPoint::Finite(pi) => {
                self.num.multiplicity_of(pi) as i64 - self.den.multiplicity_of(pi) as i64
            }
        }
    }

    /// Value at a finite closed point where the function is a unit, inside
    /// the residue field.
    pub fn value_at(&self, x: &ClosedPoint, base: &FieldSpec) -> Result<FieldElement> {
        match x {
            ClosedPoint::Infinity => {
                if self.ord_at(x) != 0 {
                    return Err(Error::WrongDivisor("not a unit at infinity".into()));
                }
                // ratio of leading coefficients
                let ln = self.num.leading().expect("nonzero").clone();
                let ld = self.den.leading().expect("nonzero");
                ln.mul(&ld.inv()?)
            }
            ClosedPoint::Finite(pi) => {
                if self.ord_at(x) != 0 {
                    return Err(Error::WrongDivisor(format!("not a unit at {x}")));
                }
                let ext = x.residue_spec(base)?;
                let embed = embedding(base, &ext)?;
                let alpha = x.representative(base)?;
                let n = self.num.eval_embedded(&alpha, &|c| embed(c));
                let d = self.den.eval_embedded(&alpha, &|c| embed(c));
                let _ = pi;
                n.mul(&d.inv()?)
            }
        }
    }

    /// The function g(s) with f(t) dt = g(s) ds under s = 1/t.
    pub fn infinity_chart(&self) -> RationalFunction {
        // f(1/s) = s^(deg den - deg num) * rev(num)/rev(den); then * (-1/s^2)
        let spec = self.spec().clone();
        let rev = |p: &Poly| {
            let mut c: Vec<FieldElement> = p.coeffs().to_vec();
            c.reverse();
            Poly::new(spec.clone(), c)
        };
        let dn = self.den.degree();
        let nm = self.num.degree();
        let mut num = rev(&self.num).neg();
        let mut den = rev(&self.den);
        let shift = dn - nm - 2;
        let s = Poly::variable(spec.clone());
        if shift >= 0 {
            num = num.mul(&s.pow(shift as u64));
        } else {
            den = den.mul(&s.pow((-shift) as u64));
        }
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    /// Full divisor: (point, order) over all closed points with ord != 0.
    pub fn divisor(&self) -> Result<Vec<(ClosedPoint, i64)>> {
        let mut out = vec![];
        for (pi, m) in self.num.factor()? {
            out.push((ClosedPoint::Finite(pi), m as i64));
        }
        for (pi, m) in self.den.factor()? {
            let entry = ClosedPoint::Finite(pi);
            if let Some(e) = out.iter_mut().find(|(p, _)| *p == entry) {
                e.1 -= m as i64;
            } else {
                out.push((entry, -(m as i64)));
            }
        }
        let at_inf = self.ord_at(&ClosedPoint::Infinity);
        if at_inf != 0 {
            out.push((ClosedPoint::Infinity, at_inf));
        }
        out.retain(|(_, m)| *m != 0);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

impl LogDifferential {
    pub fn new(f: RationalFunction) -> LogDifferential {
        LogDifferential { f }
    }

    /// dpi/pi summed over a set of monic irreducibles, the basic log form.
    pub fn dlog(pi: &Poly) -> LogDifferential {
        LogDifferential {
            f: RationalFunction::new(pi.derivative(), pi.clone()).expect("irreducible"),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        self.f.spec()
    }

    pub fn add(&self, other: &LogDifferential) -> LogDifferential {
        LogDifferential { f: self.f.add(&other.f) }
    }

    pub fn scale(&self, c: &FieldElement) -> LogDifferential {
        LogDifferential { f: self.f.scale(c) }
    }

    /// Order of the differential at a closed point (chart change at infinity).
    pub fn ord_at(&self, x: &ClosedPoint) -> i64 {
        assert!(!self.f.is_zero());
        match x {
            ClosedPoint::Infinity => {
                let g = self.f.infinity_chart();
                g.ord_at(&ClosedPoint::Finite(Poly::variable(self.spec().clone())))
            }
            finite => self.f.ord_at(finite),
        }
    }

    /// Residue at a closed point, in its residue field; requires ord >= -1.
    pub fn res_at(&self, x: &ClosedPoint, base: &FieldSpec) -> Result<FieldElement> {
        if self.ord_at(x) < -1 {
            return Err(Error::HigherOrderPole);
        }
        match x {
            ClosedPoint::Infinity => {
                let g = self.f.infinity_chart();
                let origin = ClosedPoint::Finite(Poly::variable(self.spec().clone()));
                residue_finite(&g, &origin, base)
            }
            finite => residue_finite(&self.f, finite, base),
        }
    }

    /// Full divisor of the differential.
    pub fn divisor(&self) -> Result<Vec<(ClosedPoint, i64)>> {
        let mut d = self.f.divisor()?;
        // dt contributes -2 at infinity
        if let Some(e) = d.iter_mut().find(|(p, _)| p.is_infinity()) {
            e.1 -= 2;
        } else {
            d.push((ClosedPoint::Infinity, -2));
        }
        d.retain(|(_, m)| *m != 0);
        d.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(d)
    }
}

/// Residue of f dt at a finite point x with ord >= -1:
/// write f = g / (pi * w) with pi not dividing g, w: res = g(a)/(w(a) pi'(a)).
fn residue_finite(
    f: &RationalFunction,
    x: &ClosedPoint,
    base: &FieldSpec,
) -> Result<FieldElement> {
    let pi = x.min_poly().expect("finite point");
    let ext = x.residue_spec(base)?;
    if f.ord_at(x) >= 0 {
        return Ok(ext.zero());
    }
    let embed = embedding(base, &ext)?;
    let alpha = x.representative(base)?;
    let w = f.den().div_exact(pi);
    let g = f.num();
    let gv = g.eval_embedded(&alpha, &|c| embed(c));
    let wv = w.eval_embedded(&alpha, &|c| embed(c));
    let dv = pi.derivative().eval_embedded(&alpha, &|c| embed(c));
    gv.mul(&wv.mul(&dv)?.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn dt_over_t(s: &FieldSpec) -> LogDifferential {
        LogDifferential::dlog(&Poly::variable(s.clone()))
    }

    #[test]
    fn orders_of_basic_forms() {
        let s = f5();
        let zero = ClosedPoint::rational(&s, &s.zero());
        let om = dt_over_t(&s);
        assert_eq!(om.ord_at(&zero), -1);
        assert_eq!(om.ord_at(&ClosedPoint::Infinity), -1);
        // dt has order -2 at infinity
        let dt = LogDifferential::new(RationalFunction::from_poly(Poly::one(s.clone())));
        assert_eq!(dt.ord_at(&ClosedPoint::Infinity), -2);
        assert_eq!(dt.ord_at(&zero), 0);
    }

    #[test]
    fn residues_of_basic_forms() {
        let s = f5();
        let zero = ClosedPoint::rational(&s, &s.zero());
        let om = dt_over_t(&s);
        assert!(om.res_at(&zero, &s).unwrap().is_one());
        // dt/t at infinity has residue -1
        let r = om.res_at(&ClosedPoint::Infinity, &s).unwrap();
        assert_eq!(r, s.from_prime(4));
        // dt at infinity: second-order pole
        let dt = LogDifferential::new(RationalFunction::from_poly(Poly::one(s.clone())));
        assert!(matches!(
            dt.res_at(&ClosedPoint::Infinity, &s),
            Err(Error::HigherOrderPole)
        ));
    }

    #[test]
    fn worked_residue_example() {
        // (-t-1)/(t(t-1)) dt over F_5 at t=1: evaluate (-t-1)/t there = -2
        let s = f5();
        let num = Poly::from_prime_coeffs(&s, &[4, 4]); // -1 - t
        let den = Poly::from_prime_coeffs(&s, &[0, 4, 1]); // t^2 - t... careful: t(t-1) = t^2 - t
        let om = LogDifferential::new(RationalFunction::new(num, den).unwrap());
        let one_pt = ClosedPoint::rational(&s, &s.one());
        let r = om.res_at(&one_pt, &s).unwrap();
        assert_eq!(r, s.from_prime(3)); // -2 mod 5
        // and residue 1 at t = 0, -1 at infinity... res_inf = -(sum of finite)
        let zero_pt = ClosedPoint::rational(&s, &s.zero());
        assert!(om.res_at(&zero_pt, &s).unwrap().is_one());
        let rinf = om.res_at(&ClosedPoint::Infinity, &s).unwrap();
        assert_eq!(rinf, s.from_prime(1)); // residues sum to zero: 1 + 3 + 1 = 5 = 0
    }

    #[test]
    fn residue_theorem_sampled() {
        // sum over all closed points of tr(res) vanishes
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, f) in [(3u64, 1u32), (5, 1), (13, 1), (3, 2), (5, 2)] {
            let s = FieldSpec::new(p, f).unwrap();
            for _ in 0..40 {
                let deg_n = rng.gen_range(0..4);
                let deg_d = rng.gen_range(1..4);
                let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng, d: usize| {
                    let coeffs: Vec<FieldElement> = (0..=d)
                        .map(|_| s.element_from_rank(rng.gen_range(0..s.q())))
                        .collect();
                    Poly::new(s.clone(), coeffs)
                };
                let num = rand_poly(&mut rng, deg_n);
                let den = rand_poly(&mut rng, deg_d);
                if num.is_zero() || den.is_zero() {
                    continue;
                }
                let om = LogDifferential::new(RationalFunction::new(num, den).unwrap());
                if om.f.is_zero() {
                    continue;
                }
                // skip differentials with higher-order poles
                let div = om.divisor().unwrap();
                if div.iter().any(|(_, m)| *m < -1) {
                    continue;
                }
                let mut total = s.zero();
                for (pt, m) in div {
                    if m == -1 {
                        let r = om.res_at(&pt, &s).unwrap();
                        // relative trace down to the base field
                        let tr = r.trace_to(s.degree());
                        // tr lies in the image of the base; map back by matching
                        let ext = pt.residue_spec(&s).unwrap();
                        let emb = embedding(&s, &ext).unwrap();
                        let back = s
                            .elements()
                            .into_iter()
                            .find(|c| emb(c) == tr)
                            .expect("trace lands in the base field");
                        total = total.add(&back).unwrap();
                    }
                }
                assert!(total.is_zero(), "residue sum nonzero over F_{}^{}", p, f);
            }
        }
    }
}
