//! Generalized divisor classes on the line with modulus at a boundary
//! divisor: the relative canonical cycle, the horizontal-intersection class,
//! the boundary-unit discrepancy class, and character evaluation on them.

use super::func::{LogDifferential, RationalFunction};
use super::points::ClosedPoint;
use super::poly::{monic_irreducibles, Poly};
use crate::error::{Error, Result};
use crate::exactmath::characters::MultCharacter;
use crate::exactmath::cyclo::CycloValue;
use crate::exactmath::field::{FieldElement, FieldSpec};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// P^1 with a boundary divisor D and disjoint auxiliary marked points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedLine {
    spec: FieldSpec,
    boundary: BTreeSet<ClosedPoint>,
    marked: BTreeSet<ClosedPoint>,
}

/// An element of the class group with modulus: a divisor off the boundary
/// plus a unit of the residue field at each boundary point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCycleClass {
    pub off_boundary: BTreeMap<ClosedPoint, i64>,
    pub at_boundary: BTreeMap<ClosedPoint, FieldElement>,
}

/// Evaluation data for a character of the class group: one unramified root
/// of unity (the value on a degree-one point class) and a ramified local
/// character at each boundary point.
#[derive(Clone, Debug)]
pub struct CharacterData {
    pub unramified: CycloValue,
    pub local: BTreeMap<ClosedPoint, MultCharacter>,
}

impl MarkedLine {
    pub fn new(
        spec: FieldSpec,
        boundary: Vec<ClosedPoint>,
        marked: Vec<ClosedPoint>,
    ) -> Result<MarkedLine> {
        let boundary: BTreeSet<_> = boundary.into_iter().collect();
        let marked: BTreeSet<_> = marked.into_iter().collect();
        if boundary.intersection(&marked).next().is_some() {
            return Err(Error::Overlap);
        }
        Ok(MarkedLine { spec, boundary, marked })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn boundary(&self) -> &BTreeSet<ClosedPoint> {
        &self.boundary
    }

    pub fn marked(&self) -> &BTreeSet<ClosedPoint> {
        &self.marked
    }

    pub fn boundary_degree(&self) -> i64 {
        self.boundary.iter().map(|x| x.degree() as i64).sum()
    }
}

impl ZeroCycleClass {
    pub fn zero() -> ZeroCycleClass {
        ZeroCycleClass { off_boundary: BTreeMap::new(), at_boundary: BTreeMap::new() }
    }

    /// Total degree of the off-boundary part, weighted by residue degrees.
    pub fn degree(&self) -> i64 {
        self.off_boundary
            .iter()
            .map(|(x, m)| x.degree() as i64 * m)
            .sum()
    }
}

/// A differential with simple poles and residue one at every boundary point:
/// sum of dlog terms over the finite boundary, plus an auxiliary correction
/// when infinity lies on the boundary.
pub fn canonical_differential(line: &MarkedLine) -> Result<LogDifferential> {
    if line.boundary.is_empty() {
        return Err(Error::EmptyD);
    }
    let spec = line.spec.clone();
    let mut omega =
        LogDifferential::new(RationalFunction::zero(spec.clone()));
    let mut finite_degree = 0u64;
    for x in &line.boundary {
        if let Some(pi) = x.min_poly() {
            omega = omega.add(&LogDifferential::dlog(pi));
            finite_degree += x.degree() as u64;
        }
    }
    if line.boundary.contains(&ClosedPoint::Infinity) {
        // residue at infinity of the sum is -finite_degree; require 1
        let p = spec.p();
        let deficit = spec
            .from_prime((finite_degree + 1) % p); // -(res) + 1 ... see below
        // we need res_inf = 1: current is -m, so add an auxiliary term whose
        // residue at infinity is 1 + m (in F_p)
        let needed = deficit; // (m + 1) mod p
        if !needed.is_zero() {
            let aux = auxiliary_point(line)?;
            let pi = aux.min_poly().expect("finite auxiliary point");
            // c * dlog(pi) has residue -c*deg(pi) at infinity
            let degf = spec.from_prime(aux.degree() as u64 % p);
            let c = needed.neg().mul(&degf.inv()?)?;
            omega = omega.add(&LogDifferential::dlog(pi).scale(&c));
        }
    }
    // validation: ord -1 and residue 1 at every boundary point
    for x in &line.boundary {
        if omega.ord_at(x) != -1 {
            return Err(Error::WrongDivisor(format!("order at {x} is not -1")));
        }
        if !omega.res_at(x, &spec)?.is_one() {
            return Err(Error::WrongDivisor(format!("residue at {x} is not 1")));
        }
    }
    Ok(omega)
}

/// A finite closed point off the boundary whose degree is a unit mod p.
fn auxiliary_point(line: &MarkedLine) -> Result<ClosedPoint> {
    let p = line.spec.p();
    for d in 1..=3u32 {
        if d as u64 % p == 0 {
            continue;
        }
        for pi in monic_irreducibles(&line.spec, d) {
            let cand = ClosedPoint::Finite(pi);
            if !line.boundary.contains(&cand) {
                return Ok(cand);
            }
        }
    }
    Err(Error::WrongDivisor("no auxiliary point available".into()))
}

/// The relative canonical cycle from a caller-supplied differential with
/// simple poles and residue one along the boundary.
pub fn relative_canonical_cycle_with(
    line: &MarkedLine,
    omega: &LogDifferential,
) -> Result<ZeroCycleClass> {
    if line.boundary.is_empty() {
        return Err(Error::EmptyD);
    }
    for x in &line.boundary {
        if omega.ord_at(x) != -1 {
            return Err(Error::WrongDivisor(format!("order at {x} is not -1")));
        }
        if !omega.res_at(x, &line.spec)?.is_one() {
            return Err(Error::WrongDivisor(format!("residue at {x} is not 1")));
        }
    }
    cycle_from_checked(line, omega)
}

/// Class construction once the boundary conditions have been verified.
fn cycle_from_checked(line: &MarkedLine, omega: &LogDifferential) -> Result<ZeroCycleClass> {
    let mut off = BTreeMap::new();
    for (x, m) in omega.divisor()? {
        if !line.boundary.contains(&x) {
            off.insert(x, -m);
        }
    }
    let ext_one = |x: &ClosedPoint| -> Result<FieldElement> {
        Ok(x.residue_spec(&line.spec)?.one())
    };
    let mut at = BTreeMap::new();
    for x in &line.boundary {
        at.insert(x.clone(), ext_one(x)?);
    }
    Ok(ZeroCycleClass { off_boundary: off, at_boundary: at })
}

/// The relative canonical cycle, constructing the differential internally.
pub fn relative_canonical_cycle(line: &MarkedLine) -> Result<ZeroCycleClass> {
    // the constructor already verified the boundary conditions
    let omega = canonical_differential(line)?;
    let mut off = BTreeMap::new();
    // zeros of the numerator lie off the boundary (no cancellation against
    // the boundary poles: the residues there are 1)
    for (pi, m) in omega.f.num().factor()? {
        off.insert(ClosedPoint::Finite(pi), -(m as i64));
    }
    // poles: the denominator is the product of the boundary minimal
    // polynomials and at most one auxiliary irreducible; peel the known
    // factors off by exact division
    let mut den_rest = omega.f.den().clone();
    for x in &line.boundary {
        if let Some(pi) = x.min_poly() {
            den_rest = den_rest.div_exact(pi);
        }
    }
    if den_rest.degree() > 0 {
        *off.entry(ClosedPoint::Finite(den_rest.make_monic())).or_insert(0) += 1;
    }
    if !line.boundary.contains(&ClosedPoint::Infinity) {
        let m = omega.ord_at(&ClosedPoint::Infinity);
        if m != 0 {
            off.insert(ClosedPoint::Infinity, -m);
        }
    }
    off.retain(|_, m| *m != 0);
    let mut at = BTreeMap::new();
    for x in &line.boundary {
        at.insert(x.clone(), x.residue_spec(&line.spec)?.one());
    }
    Ok(ZeroCycleClass { off_boundary: off, at_boundary: at })
}

/// Multiplicity one at each marked point, identity units on the boundary.
pub fn lambda_class(line: &MarkedLine) -> Result<ZeroCycleClass> {
    if line
        .marked
        .iter()
        .any(|m| line.boundary.contains(m))
    {
        return Err(Error::Overlap);
    }
    let mut off = BTreeMap::new();
    for m in &line.marked {
        off.insert(m.clone(), 1);
    }
    let mut at = BTreeMap::new();
    for x in &line.boundary {
        at.insert(x.clone(), x.residue_spec(&line.spec)?.one());
    }
    Ok(ZeroCycleClass { off_boundary: off, at_boundary: at })
}

/// The discrepancy class: trivial off the boundary, residues of `gamma` at
/// the boundary. `gamma` must have order -1 on the boundary, +1 at marked
/// points and 0 elsewhere.
pub fn delta_class(line: &MarkedLine, gamma: &LogDifferential) -> Result<ZeroCycleClass> {
    let div = gamma.divisor()?;
    for (x, m) in &div {
        let expected = if line.boundary.contains(x) {
            -1
        } else if line.marked.contains(x) {
            1
        } else {
            0
        };
        if *m != expected {
            return Err(Error::WrongDivisor(format!(
                "order {m} at {x}, expected {expected}"
            )));
        }
    }
    // divisor() lists only nonzero orders; boundary and marked points must all appear
    for x in line.boundary.iter().chain(line.marked.iter()) {
        if !div.iter().any(|(y, _)| y == x) {
            return Err(Error::WrongDivisor(format!("no pole or zero at {x}")));
        }
    }
    let mut at = BTreeMap::new();
    for x in &line.boundary {
        at.insert(x.clone(), gamma.res_at(x, &line.spec)?);
    }
    Ok(ZeroCycleClass { off_boundary: BTreeMap::new(), at_boundary: at })
}

/// w^(deg of the off-boundary part) times the product of local character
/// values on the boundary units.
pub fn eval_character_on_class(
    chi: &CharacterData,
    class: &ZeroCycleClass,
) -> Result<CycloValue> {
    let mut acc = cyclo_pow_signed(&chi.unramified, class.degree());
    for (x, unit) in &class.at_boundary {
        let local = chi
            .local
            .get(x)
            .ok_or(Error::MissingCharacter)?;
        if unit.spec() != local.spec() {
            return Err(Error::FieldMismatch);
        }
        acc = acc.mul(&local.eval(unit)?);
    }
    Ok(acc)
}

/// Integer powers of a root of unity (negative exponents conjugate).
pub fn cyclo_pow_signed(w: &CycloValue, e: i64) -> CycloValue {
    let base = if e < 0 { w.conjugate() } else { w.clone() };
    let mut acc = CycloValue::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base);
    }
    acc
}

/// Outcome of the descent check: consistent, or a counterexample function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsistencyOutcome {
    Consistent,
    Witness(String),
}

/// Principal class of a rational function that is a unit on the boundary.
pub fn principal_class(
    line: &MarkedLine,
    f: &RationalFunction,
) -> Result<ZeroCycleClass> {
    let mut off = BTreeMap::new();
    for (x, m) in f.divisor()? {
        if line.boundary.contains(&x) {
            return Err(Error::WrongDivisor(format!("not a unit at {x}")));
        }
        off.insert(x, m);
    }
    let mut at = BTreeMap::new();
    for x in &line.boundary {
        let ext = x.residue_spec(&line.spec)?;
        let raw = f.value_at(x, &line.spec)?;
        debug_assert_eq!(raw.spec(), &ext);
        at.insert(x.clone(), raw);
    }
    Ok(ZeroCycleClass { off_boundary: off, at_boundary: at })
}

/// Sample principal classes of boundary units and test that the character
/// data evaluates to 1 on all of them; a failing sample is returned as a
/// witness. This is the obstruction to the data descending to the class
/// group with modulus.
pub fn check_character_consistency(
    chi: &CharacterData,
    line: &MarkedLine,
    samples: u32,
    seed: u64,
) -> Result<ConsistencyOutcome> {
    let spec = line.spec.clone();
    let try_f = |f: &RationalFunction| -> Result<Option<String>> {
        let class = principal_class(line, f)?;
        let v = eval_character_on_class(chi, &class)?;
        if v.is_one() {
            Ok(None)
        } else {
            Ok(Some(format!("({})/({})", f.num(), f.den())))
        }
    };

    // deterministic first wave: linear functions t - a off the boundary,
    // when infinity is not a boundary point
    if !line.boundary.contains(&ClosedPoint::Infinity) {
        for a in spec.elements() {
            let pt = ClosedPoint::rational(&spec, &a);
            if line.boundary.contains(&pt) {
                continue;
            }
            let f = RationalFunction::from_poly(Poly::linear(spec.clone(), &a));
            if let Some(w) = try_f(&f)? {
                return Ok(ConsistencyOutcome::Witness(w));
            }
        }
    }

    // random units: c * prod pi_i^(e_i) with balanced degree if infinity is
    // on the boundary
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Poly> = monic_irreducibles(&spec, 1)
        .into_iter()
        .chain(monic_irreducibles(&spec, 2))
        .filter(|pi| !line.boundary.contains(&ClosedPoint::Finite(pi.clone())))
        .collect();
    if pool.is_empty() {
        return Ok(ConsistencyOutcome::Consistent);
    }
    let infinity_on_boundary = line.boundary.contains(&ClosedPoint::Infinity);
    for _ in 0..samples {
        let mut num = Poly::one(spec.clone());
        let mut den = Poly::one(spec.clone());
        let factors = rng.gen_range(1..=3usize);
        for _ in 0..factors {
            let pi = &pool[rng.gen_range(0..pool.len())];
            if rng.gen_bool(0.5) {
                num = num.mul(pi);
            } else {
                den = den.mul(pi);
            }
        }
        if infinity_on_boundary {
            // pad with degree-1 factors to equalize degrees
            while num.degree() < den.degree() {
                let pi = &pool[rng.gen_range(0..pool.len())];
                if pi.degree() == 1 {
                    num = num.mul(pi);
                }
            }
            while den.degree() < num.degree() {
                let pi = &pool[rng.gen_range(0..pool.len())];
                if pi.degree() == 1 {
                    den = den.mul(pi);
                }
            }
        }
        // random nonzero constant
        let c = loop {
            let cand = spec.element_from_rank(rng.gen_range(0..spec.q()));
            if !cand.is_zero() {
                break cand;
            }
        };
        let f = RationalFunction::new(num.scale(&c), den)?;
        if f.is_zero() {
            continue;
        }
        // gcd cancellation may have emptied a boundary-unit guarantee; the
        // principal-class constructor re-checks
        match try_f(&f) {
            Ok(None) => {}
            Ok(Some(w)) => return Ok(ConsistencyOutcome::Witness(w)),
            Err(Error::WrongDivisor(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(ConsistencyOutcome::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn pt(spec: &FieldSpec, a: u64) -> ClosedPoint {
        ClosedPoint::rational(spec, &spec.from_prime(a))
    }

    #[test]
    fn canonical_cycle_worked_example() {
        // D = {0, inf} over F_5 with omega = (-t-1)/(t(t-1)) dt: class [1] - [-1]
        let s = f5();
        let line = MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![])
            .unwrap();
        let num = Poly::from_prime_coeffs(&s, &[4, 4]);
        let den = Poly::from_prime_coeffs(&s, &[0, 4, 1]);
        let omega = LogDifferential::new(RationalFunction::new(num, den).unwrap());
        let c = relative_canonical_cycle_with(&line, &omega).unwrap();
        assert_eq!(c.off_boundary.get(&pt(&s, 1)), Some(&1));
        assert_eq!(c.off_boundary.get(&pt(&s, 4)), Some(&-1));
        assert_eq!(c.off_boundary.len(), 2);
        assert_eq!(c.degree(), 0); // 2 - #D
    }

    #[test]
    fn canonical_cycle_degree_law() {
        // degree = 2 - deg D for assorted boundary shapes
        let s = f5();
        let quad = monic_irreducibles(&s, 2);
        let configs: Vec<Vec<ClosedPoint>> = vec![
            vec![pt(&s, 0)],
            vec![ClosedPoint::Infinity],
            vec![pt(&s, 0), ClosedPoint::Infinity],
            vec![pt(&s, 0), pt(&s, 1), pt(&s, 2)],
            vec![ClosedPoint::Finite(quad[0].clone())],
            vec![ClosedPoint::Finite(quad[1].clone()), ClosedPoint::Infinity],
            vec![pt(&s, 3), ClosedPoint::Finite(quad[2].clone()), ClosedPoint::Infinity],
        ];
        for boundary in configs {
            let line = MarkedLine::new(s.clone(), boundary, vec![]).unwrap();
            let c = relative_canonical_cycle(&line).unwrap();
            assert_eq!(c.degree(), 2 - line.boundary_degree(), "boundary {:?}", line.boundary());
        }
        // empty boundary rejected
        let line = MarkedLine::new(s, vec![], vec![]).unwrap();
        assert!(matches!(relative_canonical_cycle(&line), Err(Error::EmptyD)));
    }

    #[test]
    fn choice_independence_of_omega() {
        // two valid differentials differ by a principal class: any consistent
        // character data evaluates equally on the two cycles
        let s = f5();
        let line =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        let auto = canonical_differential(&line).unwrap();
        let num = Poly::from_prime_coeffs(&s, &[4, 4]);
        let den = Poly::from_prime_coeffs(&s, &[0, 4, 1]);
        let manual = LogDifferential::new(RationalFunction::new(num, den).unwrap());
        let c1 = relative_canonical_cycle_with(&line, &auto).unwrap();
        let c2 = relative_canonical_cycle_with(&line, &manual).unwrap();
        // trivial character data evaluates both to 1; degree parts agree
        assert_eq!(c1.degree(), c2.degree());
        let chi = CharacterData {
            unramified: CycloValue::root_of_unity(4, 1),
            local: line
                .boundary()
                .iter()
                .map(|x| (x.clone(), MultCharacter::trivial(s.clone())))
                .collect(),
        };
        let v1 = eval_character_on_class(&chi, &c1).unwrap();
        let v2 = eval_character_on_class(&chi, &c2).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn lambda_and_delta_basics() {
        let s = f5();
        let line = MarkedLine::new(
            s.clone(),
            vec![pt(&s, 0), ClosedPoint::Infinity],
            vec![pt(&s, 2), pt(&s, 3)],
        )
        .unwrap();
        let l = lambda_class(&line).unwrap();
        assert_eq!(l.degree(), 2);
        assert_eq!(l.off_boundary.len(), 2);
        assert!(l.at_boundary.values().all(|u| u.is_one()));

        // marked overlapping the boundary is rejected at construction
        assert!(matches!(
            MarkedLine::new(s.clone(), vec![pt(&s, 0)], vec![pt(&s, 0)]),
            Err(Error::Overlap)
        ));

        // delta for D = {0, inf}, no marked points: gamma = c dt/t
        let line2 =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        let gamma = LogDifferential::new(
            RationalFunction::new(
                Poly::constant(s.clone(), s.from_prime(3)),
                Poly::variable(s.clone()),
            )
            .unwrap(),
        );
        let d = delta_class(&line2, &gamma).unwrap();
        assert!(d.off_boundary.is_empty());
        assert_eq!(d.at_boundary.get(&pt(&s, 0)), Some(&s.from_prime(3)));
        assert_eq!(d.at_boundary.get(&ClosedPoint::Infinity), Some(&s.from_prime(2)));
        // scaling gamma scales the units
        let d2 = delta_class(&line2, &gamma.scale(&s.from_prime(2))).unwrap();
        assert_eq!(d2.at_boundary.get(&pt(&s, 0)), Some(&s.from_prime(1)));

        // all units 1: evaluation trivial for any local data
        let chi = CharacterData {
            unramified: CycloValue::one(),
            local: line2
                .boundary()
                .iter()
                .map(|x| (x.clone(), MultCharacter::quadratic(s.clone()).unwrap()))
                .collect(),
        };
        let mut trivial_units = d.clone();
        for u in trivial_units.at_boundary.values_mut() {
            *u = s.one();
        }
        assert!(eval_character_on_class(&chi, &trivial_units).unwrap().is_one());

        // quadratic character sees the nonresidue 3, residue 4 = 2^2
        let v = eval_character_on_class(&chi, &d).unwrap();
        // chi(3) * chi(2): 3 is a nonresidue mod 5, 2 is a nonresidue mod 5
        assert!(v.is_one());
    }

    #[test]
    fn wrong_divisor_rejected() {
        let s = f5();
        let line =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        // gamma with a zero off the marked set
        let gamma = LogDifferential::new(
            RationalFunction::new(
                Poly::from_prime_coeffs(&s, &[4, 1]), // t - 1
                Poly::variable(s.clone()),
            )
            .unwrap(),
        );
        assert!(matches!(delta_class(&line, &gamma), Err(Error::WrongDivisor(_))));
    }

    #[test]
    fn missing_character_detected() {
        let s = f5();
        let line =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        let c = relative_canonical_cycle(&line).unwrap();
        let chi = CharacterData { unramified: CycloValue::one(), local: BTreeMap::new() };
        assert!(matches!(
            eval_character_on_class(&chi, &c),
            Err(Error::MissingCharacter)
        ));
    }

    #[test]
    fn consistency_checker_outcomes() {
        let s = f5();
        // trivial data is always consistent
        let line =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        let trivial = CharacterData {
            unramified: CycloValue::one(),
            local: line
                .boundary()
                .iter()
                .map(|x| (x.clone(), MultCharacter::trivial(s.clone())))
                .collect(),
        };
        assert_eq!(
            check_character_consistency(&trivial, &line, 200, 11).unwrap(),
            ConsistencyOutcome::Consistent
        );

        // a single ramified quadratic crossing cannot descend: witness t - a
        let single = MarkedLine::new(s.clone(), vec![pt(&s, 0)], vec![]).unwrap();
        let quad_single = CharacterData {
            unramified: CycloValue::one(),
            local: [(pt(&s, 0), MultCharacter::quadratic(s.clone()).unwrap())]
                .into_iter()
                .collect(),
        };
        match check_character_consistency(&quad_single, &single, 200, 11).unwrap() {
            ConsistencyOutcome::Witness(w) => assert!(w.contains("t"), "witness {w}"),
            ConsistencyOutcome::Consistent => panic!("ramified single crossing accepted"),
        }

        // quadratic at both of {0, inf}: rejected under this evaluation
        // contract as well, with a ratio witness
        let both = CharacterData {
            unramified: CycloValue::one(),
            local: line
                .boundary()
                .iter()
                .map(|x| (x.clone(), MultCharacter::quadratic(s.clone()).unwrap()))
                .collect(),
        };
        match check_character_consistency(&both, &line, 400, 11).unwrap() {
            ConsistencyOutcome::Witness(_) => {}
            ConsistencyOutcome::Consistent => panic!("two-crossing quadratic data accepted"),
        }
    }

    #[test]
    fn scale_invariance_of_delta_evaluation() {
        // evaluating consistent data on delta is invariant under scaling gamma
        let s = f5();
        let line =
            MarkedLine::new(s.clone(), vec![pt(&s, 0), ClosedPoint::Infinity], vec![]).unwrap();
        let gamma = LogDifferential::new(
            RationalFunction::new(Poly::one(s.clone()), Poly::variable(s.clone())).unwrap(),
        );
        // data trivial on constants: quadratic at both crossings evaluates on
        // (c, c) to chi(c)^2 = 1
        let chi = CharacterData {
            unramified: CycloValue::one(),
            local: line
                .boundary()
                .iter()
                .map(|x| (x.clone(), MultCharacter::quadratic(s.clone()).unwrap()))
                .collect(),
        };
        let base = eval_character_on_class(&chi, &delta_class(&line, &gamma).unwrap()).unwrap();
        for c in [2u64, 3, 4] {
            let scaled = gamma.scale(&s.from_prime(c));
            let v =
                eval_character_on_class(&chi, &delta_class(&line, &scaled).unwrap()).unwrap();
            assert_eq!(v, base);
        }
    }
}
