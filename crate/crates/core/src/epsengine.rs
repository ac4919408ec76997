//! Local factors, fibral ratios, the archimedean term, and the assembled
//! global sign.
//!
//! Each finite place contributes the ratio of the fiber's epsilon constant to
//! the horizontal one, expanded as a product of determinant values on
//! discrepancy classes, normalized Gauss sums at crossings, and Frobenius
//! determinants at crossing points. The horizontal factor itself is positive,
//! so the global sign is the archimedean sign times the product of ratios.

use crate::ellcurve::{
    global_minimal_model, subgroup_closure, tate_algorithm, torsion_subgroup, valuation,
    KodairaType, RationalPoint, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::exactmath::characters::MultCharacter;
use crate::exactmath::cyclo::{CycloValue, NormalizedValue};
use crate::exactmath::gauss::gauss_sum_virtual;
use crate::fibermodel::{build_fiber, validate_fiber, CrossingPoint, FiberDescription};
use crate::groupsrep::{
    det_eval_minus_frobenius, det_trivial_all_subgroups, invariants_under, validate_rep,
    AbelianGroup, GroupElement, Subgroup, ValidationReport, VirtualRep, DEFAULT_GROUP_BOUND,
};
use crate::par;
use crate::tameness::{kwon_check, prime_divisors, TamenessReport};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One finite place's fibral ratio with its named subfactors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub p: u64,
    pub sign: i8,
    pub breakdown: Vec<(String, String)>,
}

/// Archimedean input: the translation-action pipeline class, or a supplied sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityContext {
    Pipeline,
    Manual(Option<i8>),
}

/// The full pipeline configuration.
#[derive(Clone, Debug)]
pub struct CurveJob {
    pub curve: WeierstrassModel,
    /// Generators of the kernel among the curve's rational points.
    pub kernel_generators: Vec<RationalPoint>,
    pub rep: VirtualRep,
    /// Manual fibers replacing pipeline-built ones at chosen primes.
    pub fiber_overrides: BTreeMap<u64, FiberDescription>,
    /// Archimedean sign override; the pipeline class supplies +1.
    pub eps_infinity_override: Option<i8>,
    /// Bound for exhaustive subgroup enumeration.
    pub max_group: u64,
}

impl CurveJob {
    pub fn new(curve: WeierstrassModel, kernel_generators: Vec<RationalPoint>, rep: VirtualRep) -> Self {
        CurveJob {
            curve,
            kernel_generators,
            rep,
            fiber_overrides: BTreeMap::new(),
            eps_infinity_override: None,
            max_group: DEFAULT_GROUP_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaceReport {
    pub p: u64,
    pub kodaira_x: String,
    pub kodaira_y: String,
    pub ratio: i8,
    pub breakdown: Vec<(String, String)>,
    pub source: String,
}

/// The assembled result of a global sign computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub valid: ValidationReport,
    pub tame: TamenessReport,
    pub curve: String,
    pub quotient: String,
    pub disc_curve: String,
    pub disc_quotient: String,
    pub torsion_structure: Vec<u64>,
    /// Whether det of the invariants is trivial for every subgroup.
    pub det_trivial_shortcut: bool,
    pub places: Vec<PlaceReport>,
    pub eps_infinity: i8,
    #[serde(rename = "W")]
    pub w: i8,
    pub assumptions: Vec<String>,
}

/// det(-F | V^I) at a closed point: a root of unity, +-1 for orthogonal reps.
pub fn eps_point(
    rep: &VirtualRep,
    inertia: &Subgroup,
    frobenius: &GroupElement,
) -> Result<CycloValue> {
    det_eval_minus_frobenius(rep, inertia, frobenius)
}

/// The crossing term for one side: 1 when the side is unramified there, and
/// otherwise the normalized Gauss sum of the localized inertia invariants.
pub fn eps0_crossing(
    fd: &FiberDescription,
    component_id: u32,
    crossing: &CrossingPoint,
    rep: &VirtualRep,
) -> Result<NormalizedValue> {
    let comp = fd
        .component(component_id)
        .ok_or_else(|| Error::MissingLocalData(format!("component {component_id}")))?;
    let map = crossing
        .local_char_data
        .as_ref()
        .and_then(|d| d.get(&component_id));
    let map = match map {
        None => return Ok(NormalizedValue::one()), // unramified side
        Some(m) => m,
    };
    let inertia = comp.inertia.as_ref().ok_or_else(|| {
        Error::MissingLocalData(format!("inertia of component {component_id}"))
    })?;
    let invariants = invariants_under(rep, inertia)?;
    if !invariants.determinant().is_trivial() {
        return Err(Error::NontrivialDet);
    }
    let constituents: Vec<(MultCharacter, i64)> = invariants
        .terms()
        .iter()
        .map(|(chi, &m)| Ok((map.localize(&fd.group, chi.exps())?, m)))
        .collect::<Result<_>>()?;
    gauss_sum_virtual(&constituents)
}

/// det(V^I) evaluated on the component's discrepancy class.
pub fn det_on_delta(
    fd: &FiberDescription,
    component_id: u32,
    rep: &VirtualRep,
) -> Result<CycloValue> {
    let comp = fd
        .component(component_id)
        .ok_or_else(|| Error::MissingLocalData(format!("component {component_id}")))?;
    let inertia = comp.inertia.as_ref().ok_or_else(|| {
        Error::MissingLocalData(format!("inertia of component {component_id}"))
    })?;
    let det = invariants_under(rep, inertia)?.determinant();
    if det.is_trivial() {
        return Ok(CycloValue::one());
    }
    let data = comp.delta_data.as_ref().ok_or_else(|| {
        Error::MissingLocalData(format!("delta data of component {component_id}"))
    })?;
    let mut acc = CycloValue::one();
    for zid in &comp.crossings_on_me {
        let entry = data.get(zid).ok_or_else(|| {
            Error::MissingLocalData(format!(
                "delta unit of component {component_id} at crossing {zid}"
            ))
        })?;
        let local = entry.chars.localize(&fd.group, det.exps())?;
        if entry.unit.spec() != local.spec() {
            return Err(Error::MissingLocalData(format!(
                "delta unit of component {component_id} at crossing {zid} lives in the wrong field"
            )));
        }
        acc = acc.mul(&local.eval(&entry.unit)?);
    }
    Ok(acc)
}

/// The ratio of the fiber's epsilon constant to the horizontal one.
///
/// Empty crossing set: 1. All inertia determinants trivial: 1, with the
/// shortcut recorded. Otherwise the full product over components and
/// crossings, asserted to be exactly +-1.
pub fn fibral_ratio(fd: &FiberDescription, rep: &VirtualRep) -> Result<LocalFactor> {
    fibral_ratio_bounded(fd, rep, DEFAULT_GROUP_BOUND)
}

pub fn fibral_ratio_bounded(
    fd: &FiberDescription,
    rep: &VirtualRep,
    max_group: u64,
) -> Result<LocalFactor> {
    let validation = validate_fiber(fd);
    if !validation.valid {
        return Err(Error::InvalidFiber(validation.problems.join("; ")));
    }
    if !validate_rep(rep).pass() {
        return Err(Error::NotValidRep(
            "fibral ratio needs an orthogonal dimension-zero trivial-determinant input".into(),
        ));
    }
    if rep.group() != &fd.group {
        return Err(Error::GroupMismatch);
    }
    if fd.crossings.is_empty() {
        return Ok(LocalFactor {
            p: fd.p,
            sign: 1,
            breakdown: vec![("no crossings".into(), "1".into())],
        });
    }
    let (all_trivial, _) = det_trivial_all_subgroups(rep, max_group)?;
    if all_trivial {
        let breakdown = fd
            .components
            .iter()
            .map(|c| (format!("det on delta, component {}", c.id), "1".into()))
            .chain(
                fd.crossings
                    .iter()
                    .map(|z| (format!("crossing {}", z.id), "1".into())),
            )
            .collect();
        return Ok(LocalFactor { p: fd.p, sign: 1, breakdown });
    }

    // full evaluation; collect what is missing first
    let mut missing = vec![];
    for c in &fd.components {
        if c.inertia.is_none() {
            missing.push(format!("components[{}].inertia", c.id));
        }
    }
    for z in &fd.crossings {
        if z.inertia.is_none() {
            missing.push(format!("crossings[{}].inertia", z.id));
        }
        if z.frobenius.is_none() {
            missing.push(format!("crossings[{}].frobenius", z.id));
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingLocalData(missing.join(", ")));
    }

    let mut breakdown = vec![];
    let mut total = NormalizedValue::one();
    for c in &fd.components {
        let d = det_on_delta(fd, c.id, rep)?;
        breakdown.push((format!("det on delta, component {}", c.id), d.to_string()));
        total = total.mul(&NormalizedValue::from_cyclo(d))?;
    }
    for z in &fd.crossings {
        let a = eps0_crossing(fd, z.between.0, z, rep)?;
        let b = eps0_crossing(fd, z.between.1, z, rep)?;
        let point = eps_point(
            rep,
            z.inertia.as_ref().expect("checked above"),
            z.frobenius.as_ref().expect("checked above"),
        )?;
        breakdown.push((
            format!("crossing {}: eps0 x eps0 x point", z.id),
            format!(
                "{} x {} x {}",
                a.canonicalize().algebraic,
                b.canonicalize().algebraic,
                point
            ),
        ));
        total = total
            .mul(&a)?
            .mul(&b)?
            .mul(&NormalizedValue::from_cyclo(point))?;
    }
    let sign = match total.as_sign() {
        Some(s) => s,
        None => return Err(Error::NotReal),
    };
    Ok(LocalFactor { p: fd.p, sign, breakdown })
}

/// The archimedean sign: +1 in the pipeline class, or the supplied value.
pub fn eps_infinity(ctx: &InfinityContext) -> Result<i8> {
    match ctx {
        InfinityContext::Pipeline => Ok(1),
        InfinityContext::Manual(Some(s)) if *s == 1 || *s == -1 => Ok(*s),
        InfinityContext::Manual(Some(s)) => Err(Error::MissingInput(format!(
            "archimedean sign must be +1 or -1, got {s}"
        ))),
        InfinityContext::Manual(None) => Err(Error::MissingInput(
            "manual mode requires an archimedean sign".into(),
        )),
    }
}

/// Product over components of the component Gauss sum raised to the Euler
/// characteristic; 1 on pipeline fibers, where every exponent vanishes.
pub fn saito_component_diagnostic(
    fd: &FiberDescription,
    kappa_data: &BTreeMap<u32, Vec<(MultCharacter, i64)>>,
) -> Result<NormalizedValue> {
    let mut acc = NormalizedValue::one();
    for c in &fd.components {
        if c.euler_c == 0 {
            continue;
        }
        let data = kappa_data.get(&c.id).ok_or_else(|| {
            Error::MissingLocalData(format!(
                "component Gauss data for component {} with nonzero Euler characteristic",
                c.id
            ))
        })?;
        let scaled: Vec<(MultCharacter, i64)> = data
            .iter()
            .map(|(chi, m)| (chi.clone(), m * c.euler_c))
            .collect();
        acc = acc.mul(&gauss_sum_virtual(&scaled)?)?;
    }
    Ok(acc.canonicalize())
}

/// Primes dividing n, or the discriminants of either model.
fn relevant_primes(
    disc_x: &BigInt,
    disc_y: &BigInt,
    group_order: u64,
) -> Result<Vec<u64>> {
    let mut primes: Vec<u64> = prime_divisors(group_order);
    let mut push_factors = |d: &BigInt| -> Result<()> {
        let mut n = d.abs();
        let mut p = 2u64;
        while BigInt::from(p) * BigInt::from(p) <= n {
            if valuation(&n, p) > 0 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                while valuation(&n, p) > 0 {
                    n /= BigInt::from(p);
                }
            }
            p += 1;
            if p > 10_000_000 {
                return Err(Error::UnsupportedReduction(
                    "discriminant has a factor too large to classify".into(),
                ));
            }
        }
        if n > BigInt::one() {
            // leftover prime
            let digits = n.to_u64_digits().1;
            if digits.len() > 1 {
                return Err(Error::UnsupportedReduction(
                    "discriminant prime factor exceeds u64".into(),
                ));
            }
            let q = digits[0];
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
        Ok(())
    };
    push_factors(disc_x)?;
    push_factors(disc_y)?;
    primes.sort();
    Ok(primes)
}

/// Run the whole pipeline and assemble the global sign.
pub fn global_sign(job: &CurveJob) -> Result<EpsilonReport> {
    let valid = validate_rep(&job.rep);
    if !valid.pass() {
        return Err(Error::NotValidRep(format!(
            "orthogonal: {}, dimension zero: {}, trivial determinant: {}",
            valid.orthogonal, valid.dimension_zero, valid.trivial_determinant
        )));
    }
    let x = &job.curve;
    x.invariants()?;
    let (minimal, changed) = global_minimal_model(x)?;
    if changed && minimal != *x {
        return Err(Error::MissingInput(
            "the input model must be globally minimal in reduced form".into(),
        ));
    }
    let kernel = subgroup_closure(x, &job.kernel_generators, 256)?;
    let tame = kwon_check(x, &kernel)?;
    if !tame.overall {
        return Err(Error::NotTame(
            serde_json::to_string(&tame).unwrap_or_default(),
        ));
    }
    // acting group: invariant factors of the kernel
    let group = AbelianGroup::new(tame.structure.clone())?;
    if &group != job.rep.group() {
        return Err(Error::GroupMismatch);
    }
    let quotient = crate::ellcurve::velu_quotient(x, &kernel)?;
    let disc_x = x.discriminant();
    let disc_y = quotient.discriminant();
    let torsion = torsion_subgroup(x)?;

    let (shortcut, _) = det_trivial_all_subgroups(&job.rep, job.max_group)?;
    let primes = relevant_primes(&disc_x, &disc_y, kernel.len() as u64)?;

    let jobs: Vec<u64> = primes;
    let places: Vec<Result<PlaceReport>> = par::map_collect(jobs, |p| {
        let kx = tate_algorithm(x, p)?;
        let ky = tate_algorithm(&quotient, p)?;
        if !matches!(ky.kodaira, KodairaType::Good | KodairaType::In(_)) {
            return Err(Error::UnsupportedReduction(format!(
                "quotient has type {} at {p}",
                ky.kodaira
            )));
        }
        let (fd, source) = match job.fiber_overrides.get(&p) {
            Some(fd) => {
                if fd.p != p {
                    return Err(Error::InvalidFiber(format!(
                        "override for {p} describes the fiber at {}",
                        fd.p
                    )));
                }
                (fd.clone(), "override")
            }
            None => (build_fiber(&ky, &group, &job.rep)?, "pipeline"),
        };
        let factor = fibral_ratio_bounded(&fd, &job.rep, job.max_group)?;
        Ok(PlaceReport {
            p,
            kodaira_x: kx.kodaira.to_string(),
            kodaira_y: ky.kodaira.to_string(),
            ratio: factor.sign,
            breakdown: factor.breakdown,
            source: source.into(),
        })
    });
    let places = places.into_iter().collect::<Result<Vec<_>>>()?;

    let mut assumptions = vec![
        "horizontal factor positive for orthogonal inputs".to_string(),
    ];
    let ctx = match job.eps_infinity_override {
        Some(s) => {
            assumptions.push(format!("archimedean sign {s} supplied as input"));
            InfinityContext::Manual(Some(s))
        }
        None => {
            assumptions
                .push("archimedean sign +1 from the trivial Hodge action".to_string());
            InfinityContext::Pipeline
        }
    };
    let inf = eps_infinity(&ctx)?;
    let w = places.iter().fold(inf, |acc, pl| acc * pl.ratio);
    Ok(EpsilonReport {
        valid,
        tame,
        curve: x.to_string(),
        quotient: quotient.to_string(),
        disc_curve: disc_x.to_string(),
        disc_quotient: disc_y.to_string(),
        torsion_structure: torsion.structure,
        det_trivial_shortcut: shortcut,
        places,
        eps_infinity: inf,
        w,
        assumptions,
    })
}
