//! Finite abelian groups, their characters, and virtual orthogonal
//! representations with determinant evaluations.
//!
//! Groups are presented as products of cyclic factors. A virtual
//! representation is an integer-weighted multiset of characters; the
//! predicates needed downstream (orthogonality, dimension zero, trivial
//! determinant) are exact multiset computations.

use crate::error::{Error, Result};
use crate::exactmath::cyclo::CycloValue;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Default bound on |G| for exhaustive subgroup enumeration.
pub const DEFAULT_GROUP_BOUND: u64 = 10_000;

/// G = Z/n1 x ... x Z/nr.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element of an [`AbelianGroup`], componentwise residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

/// A subgroup, stored with generators and the full (sorted) element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: AbelianGroup,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

/// A character chi(g) = prod_i zeta_{n_i}^{k_i g_i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GCharacter {
    exps: Vec<u64>,
}

/// Integer combination of characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualRep {
    group: AbelianGroup,
    terms: BTreeMap<GCharacter, i64>,
}

#[derive(Serialize, Deserialize)]
struct RepTermWire {
    exps: Vec<u64>,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct VirtualRepWire {
    group: Vec<u64>,
    terms: Vec<RepTermWire>,
}

impl Serialize for VirtualRep {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = VirtualRepWire {
            group: self.group.factors.clone(),
            terms: self
                .terms
                .iter()
                .map(|(chi, &mult)| RepTermWire { exps: chi.exps.clone(), mult })
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VirtualRep {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = VirtualRepWire::deserialize(de)?;
        let group = AbelianGroup::new(wire.group).map_err(serde::de::Error::custom)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| Ok((group.character(t.exps).map_err(serde::de::Error::custom)?, t.mult)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        VirtualRep::new(group, terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupWire {
    group: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = SubgroupWire {
            group: self.group.factors.clone(),
            generators: self.generators.iter().map(|g| g.coords.clone()).collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = SubgroupWire::deserialize(de)?;
        let group = AbelianGroup::new(wire.group).map_err(serde::de::Error::custom)?;
        let gens = wire
            .generators
            .into_iter()
            .map(|c| group.element(c).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        group.subgroup(gens).map_err(serde::de::Error::custom)
    }
}

/// Outcome of [`validate_rep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub orthogonal: bool,
    pub dimension_zero: bool,
    pub trivial_determinant: bool,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.orthogonal && self.dimension_zero && self.trivial_determinant
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::NotValidRep("zero cyclic factor".into()));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.factors.len()] }
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::GroupMismatch);
        }
        let coords = coords
            .into_iter()
            .zip(&self.factors)
            .map(|(c, &n)| c % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        GroupElement { coords }
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (i, &n) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for c in 0..n {
                    let mut coords = e.coords.clone();
                    coords[i] = c;
                    next.push(GroupElement { coords });
                }
            }
            out = next;
        }
        out
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            generators: vec![],
            elements: vec![self.identity()],
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        let mut elements = self.elements();
        elements.sort();
        let generators = (0..self.factors.len())
            .map(|i| {
                let mut coords = vec![0; self.factors.len()];
                coords[i] = 1 % self.factors[i].max(1);
                GroupElement { coords }
            })
            .collect();
        Subgroup { group: self.clone(), generators, elements }
    }

    pub fn subgroup(&self, generators: Vec<GroupElement>) -> Result<Subgroup> {
        for g in &generators {
            if g.coords.len() != self.factors.len() {
                return Err(Error::GroupMismatch);
            }
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut queue: VecDeque<GroupElement> = seen.iter().cloned().collect();
        while let Some(e) = queue.pop_front() {
            for g in &generators {
                let next = self.add(&e, g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(Subgroup {
            group: self.clone(),
            generators,
            elements: seen.into_iter().collect(),
        })
    }

    /// All subgroups, by closure of incremental generator extensions.
    pub fn all_subgroups(&self, bound: u64) -> Result<Vec<Subgroup>> {
        if self.order() > bound {
            return Err(Error::GroupTooLarge(self.order(), bound));
        }
        let all = self.elements();
        let mut found: BTreeMap<Vec<GroupElement>, Subgroup> = BTreeMap::new();
        let trivial = self.trivial_subgroup();
        let mut queue = VecDeque::new();
        found.insert(trivial.elements.clone(), trivial.clone());
        queue.push_back(trivial);
        while let Some(h) = queue.pop_front() {
            for g in &all {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(g.clone());
                let bigger = self.subgroup(gens)?;
                if !found.contains_key(&bigger.elements) {
                    found.insert(bigger.elements.clone(), bigger.clone());
                    queue.push_back(bigger);
                }
            }
        }
        Ok(found.into_values().collect())
    }

    pub fn trivial_character(&self) -> GCharacter {
        GCharacter { exps: vec![0; self.factors.len()] }
    }

    pub fn character(&self, exps: Vec<u64>) -> Result<GCharacter> {
        if exps.len() != self.factors.len() {
            return Err(Error::GroupMismatch);
        }
        let exps = exps
            .into_iter()
            .zip(&self.factors)
            .map(|(k, &n)| k % n)
            .collect();
        Ok(GCharacter { exps })
    }

    pub fn characters(&self) -> Vec<GCharacter> {
        self.elements()
            .into_iter()
            .map(|e| GCharacter { exps: e.coords })
            .collect()
    }

    pub fn char_conjugate(&self, chi: &GCharacter) -> GCharacter {
        GCharacter {
            exps: chi
                .exps
                .iter()
                .zip(&self.factors)
                .map(|(&k, &n)| (n - k) % n)
                .collect(),
        }
    }

    pub fn char_mul(&self, a: &GCharacter, b: &GCharacter) -> GCharacter {
        GCharacter {
            exps: a
                .exps
                .iter()
                .zip(&b.exps)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn char_pow(&self, chi: &GCharacter, e: i64) -> GCharacter {
        GCharacter {
            exps: chi
                .exps
                .iter()
                .zip(&self.factors)
                .map(|(&k, &n)| {
                    let r = (k as i128 * e as i128).rem_euclid(n as i128);
                    r as u64
                })
                .collect(),
        }
    }

    /// chi(g) as an exact root of unity of order lcm(factors).
    pub fn char_value(&self, chi: &GCharacter, g: &GroupElement) -> CycloValue {
        let m = self.factors.iter().fold(1u64, |acc, &n| num_integer::lcm(acc, n));
        let mut e = 0u64;
        for ((&k, &gi), &n) in chi.exps.iter().zip(&g.coords).zip(&self.factors) {
            e = (e + (m / n) * (k * gi % n)) % m;
        }
        CycloValue::root_of_unity(m, e)
    }

    /// Whether chi(g) = 1, combining the componentwise exponents.
    pub fn char_trivial_at(&self, chi: &GCharacter, g: &GroupElement) -> bool {
        let m = self.factors.iter().fold(1u64, |acc, &n| num_integer::lcm(acc, n));
        let mut e = 0u64;
        for ((&k, &gi), &n) in chi.exps.iter().zip(&g.coords).zip(&self.factors) {
            e = (e + (m / n) * (k * gi % n)) % m;
        }
        e == 0
    }

    /// Whether chi is trivial on every element of the subgroup.
    pub fn char_trivial_on(&self, chi: &GCharacter, sub: &Subgroup) -> bool {
        sub.elements.iter().all(|g| self.char_trivial_at(chi, g))
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl Subgroup {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.elements.iter().all(|e| other.contains(e))
    }
}

impl GCharacter {
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }
}

impl VirtualRep {
    pub fn new(group: AbelianGroup, terms: Vec<(GCharacter, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (chi, mult) in terms {
            if chi.exps.len() != group.factors.len() {
                return Err(Error::GroupMismatch);
            }
            *map.entry(chi).or_insert(0) += mult;
        }
        map.retain(|_, &mut m| m != 0);
        Ok(VirtualRep { group, terms: map })
    }

    pub fn zero(group: AbelianGroup) -> Self {
        VirtualRep { group, terms: BTreeMap::new() }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GCharacter, i64> {
        &self.terms
    }

    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn determinant(&self) -> GCharacter {
        let mut det = self.group.trivial_character();
        for (chi, &mult) in &self.terms {
            det = self.group.char_mul(&det, &self.group.char_pow(chi, mult));
        }
        det
    }

    pub fn is_orthogonal(&self) -> bool {
        self.terms.iter().all(|(chi, &mult)| {
            self.terms.get(&self.group.char_conjugate(chi)).copied().unwrap_or(0) == mult
        })
    }

    /// Multiset sum of two representations of the same group.
    pub fn direct_sum(&self, other: &VirtualRep) -> Result<VirtualRep> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut terms = self.terms.clone();
        for (chi, &mult) in &other.terms {
            *terms.entry(chi.clone()).or_insert(0) += mult;
        }
        terms.retain(|_, &mut m| m != 0);
        Ok(VirtualRep { group: self.group.clone(), terms })
    }

    /// Every multiplicity scaled by `c`.
    pub fn scaled(&self, c: i64) -> VirtualRep {
        let mut terms = self.terms.clone();
        terms.values_mut().for_each(|m| *m *= c);
        terms.retain(|_, &mut m| m != 0);
        VirtualRep { group: self.group.clone(), terms }
    }
}

/// Orthogonality, dimension and determinant predicates for a virtual rep.
pub fn validate_rep(v: &VirtualRep) -> ValidationReport {
    ValidationReport {
        orthogonal: v.is_orthogonal(),
        dimension_zero: v.dimension() == 0,
        trivial_determinant: v.determinant().is_trivial(),
    }
}

/// The inertia invariants V^I: terms whose character is trivial on I.
pub fn invariants_under(v: &VirtualRep, inertia: &Subgroup) -> Result<VirtualRep> {
    if inertia.group() != v.group() {
        return Err(Error::GroupMismatch);
    }
    let terms = v
        .terms
        .iter()
        .filter(|(chi, _)| v.group.char_trivial_on(chi, inertia))
        .map(|(chi, &m)| (chi.clone(), m))
        .collect();
    Ok(VirtualRep { group: v.group.clone(), terms })
}

/// Whether det(V^I) is trivial for every subgroup I of G; on failure returns
/// a witness subgroup.
pub fn det_trivial_all_subgroups(
    v: &VirtualRep,
    bound: u64,
) -> Result<(bool, Option<Subgroup>)> {
    for sub in v.group.all_subgroups(bound)? {
        let inv = invariants_under(v, &sub)?;
        if !inv.determinant().is_trivial() {
            return Ok((false, Some(sub)));
        }
    }
    Ok((true, None))
}

/// det(-F | V^I) = (-1)^(dim V^I) * det(V^I)(F), exact root of unity.
pub fn det_eval_minus_frobenius(
    v: &VirtualRep,
    inertia: &Subgroup,
    frobenius: &GroupElement,
) -> Result<CycloValue> {
    if frobenius.coords.len() != v.group.factors.len() {
        return Err(Error::GroupMismatch);
    }
    let w = invariants_under(v, inertia)?;
    let det = w.determinant();
    let value = v.group.char_value(&det, frobenius);
    let sign = if w.dimension().rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(value.scale(sign))
}
