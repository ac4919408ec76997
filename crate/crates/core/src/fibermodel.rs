//! Declarative model of one reduced special fiber with its cover data.
//!
//! A fiber is a list of components (rational or elliptic) and crossing
//! points between distinct components, each optionally carrying inertia,
//! Frobenius, and local character data. Builders populate the model from
//! elliptic reduction data; manual fibers round-trip through JSON.

use crate::ellcurve::{KodairaData, KodairaType};
use crate::error::{Error, Result};
use crate::exactmath::characters::MultCharacter;
use crate::exactmath::field::FieldElement;
use crate::groupsrep::{AbelianGroup, GroupElement, Subgroup, VirtualRep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Rational,
    Elliptic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Pipeline,
    Manual,
}

/// Map from the dual group's standard generators to local characters of one
/// crossing's residue field: determines the local component of any global
/// character by multiplicativity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCharMap {
    /// One local character per cyclic factor of the acting group.
    pub generator_images: Vec<MultCharacter>,
}

impl LocalCharMap {
    /// Local incarnation of a global character given by its exponents.
    pub fn localize(&self, group: &AbelianGroup, exps: &[u64]) -> Result<MultCharacter> {
        if exps.len() != self.generator_images.len()
            || exps.len() != group.factors().len()
        {
            return Err(Error::GroupMismatch);
        }
        let spec = self
            .generator_images
            .first()
            .map(|c| c.spec().clone())
            .ok_or_else(|| Error::MissingLocalData("empty character map".into()))?;
        let mut acc = MultCharacter::trivial(spec);
        for (img, &e) in self.generator_images.iter().zip(exps) {
            let mut power = MultCharacter::trivial(img.spec().clone());
            for _ in 0..e {
                power = power.compose(img)?;
            }
            acc = acc.compose(&power)?;
        }
        Ok(acc)
    }

    /// The map must respect the factor orders to be a homomorphism.
    pub fn respects(&self, group: &AbelianGroup) -> Result<bool> {
        if self.generator_images.len() != group.factors().len() {
            return Ok(false);
        }
        for (img, &n) in self.generator_images.iter().zip(group.factors()) {
            let mut acc = MultCharacter::trivial(img.spec().clone());
            for _ in 0..n {
                acc = acc.compose(img)?;
            }
            if !acc.is_trivial() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-crossing discrepancy data on one component: the boundary unit and the
/// character map used to evaluate determinants on the discrepancy class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaEntry {
    /// Unit of the crossing's residue field.
    pub unit: FieldElement,
    /// Localization of global characters at this crossing.
    pub chars: LocalCharMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberComponent {
    pub id: u32,
    pub kind: ComponentKind,
    /// Residue field extension degree of the component's constant field.
    pub f: u32,
    pub inertia: Option<Subgroup>,
    pub euler_c: i64,
    pub crossings_on_me: Vec<u32>,
    /// Geometric self-intersection points (nodes of this component alone).
    #[serde(default)]
    pub self_nodes: u32,
    /// Discrepancy-class data per incident crossing.
    #[serde(default)]
    pub delta_data: Option<BTreeMap<u32, DeltaEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub id: u32,
    /// The two distinct components meeting here.
    pub between: (u32, u32),
    /// Residue degree of the crossing point over the prime field.
    pub deg: u32,
    pub inertia: Option<Subgroup>,
    pub frobenius: Option<GroupElement>,
    /// Ramified localization maps for each side, keyed by component id;
    /// a missing entry means the side is unramified at this crossing.
    #[serde(default)]
    pub local_char_data: Option<BTreeMap<u32, LocalCharMap>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDescription {
    pub p: u64,
    pub group: AbelianGroup,
    pub components: Vec<FiberComponent>,
    pub crossings: Vec<CrossingPoint>,
    pub provenance: Provenance,
}

/// Outcome of [`validate_fiber`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberValidation {
    pub valid: bool,
    pub problems: Vec<String>,
    /// Crossings lacking inertia or Frobenius data for a full evaluation.
    pub incomplete_crossings: Vec<u32>,
}

impl FiberDescription {
    pub fn component(&self, id: u32) -> Option<&FiberComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn crossing(&self, id: u32) -> Option<&CrossingPoint> {
        self.crossings.iter().find(|z| z.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable fiber")
    }

    pub fn from_json(text: &str) -> Result<FiberDescription> {
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))
    }
}

/// Build the fiber of a good or multiplicative reduction with the polygon
/// combinatorics; inertia and Frobenius entries stay unset (the engine's
/// triviality shortcut does not need them).
pub fn build_fiber(
    reduction: &KodairaData,
    group: &AbelianGroup,
    _rep: &VirtualRep,
) -> Result<FiberDescription> {
    match reduction.kodaira {
        KodairaType::Good => Ok(FiberDescription {
            p: reduction.p,
            group: group.clone(),
            components: vec![FiberComponent {
                id: 0,
                kind: ComponentKind::Elliptic,
                f: 1,
                inertia: None,
                euler_c: 0,
                crossings_on_me: vec![],
                self_nodes: 0,
                delta_data: None,
            }],
            crossings: vec![],
            provenance: Provenance::Pipeline,
        }),
        KodairaType::In(1) => Ok(FiberDescription {
            p: reduction.p,
            group: group.clone(),
            components: vec![FiberComponent {
                id: 0,
                kind: ComponentKind::Rational,
                f: 1,
                inertia: None,
                euler_c: 0,
                crossings_on_me: vec![],
                // the node joins the component to itself, not a crossing of
                // two distinct components
                self_nodes: 1,
                delta_data: None,
            }],
            crossings: vec![],
            provenance: Provenance::Pipeline,
        }),
        KodairaType::In(n) => {
            let n = n as u32;
            let components = (0..n)
                .map(|i| FiberComponent {
                    id: i,
                    kind: ComponentKind::Rational,
                    f: 1,
                    inertia: None,
                    euler_c: 0,
                    crossings_on_me: vec![i, (i + n - 1) % n],
                    self_nodes: 0,
                    delta_data: None,
                })
                .collect();
            let crossings = (0..n)
                .map(|i| CrossingPoint {
                    id: i,
                    between: (i, (i + 1) % n),
                    deg: 1,
                    inertia: None,
                    frobenius: None,
                    local_char_data: None,
                })
                .collect();
            Ok(FiberDescription {
                p: reduction.p,
                group: group.clone(),
                components,
                crossings,
                provenance: Provenance::Pipeline,
            })
        }
        other => Err(Error::UnsupportedType(other.to_string())),
    }
}

/// Structural checks: incidence symmetry, distinct components at crossings,
/// Euler characteristics, subgroup membership, residue degrees.
pub fn validate_fiber(fd: &FiberDescription) -> FiberValidation {
    let mut problems = vec![];
    let mut incomplete = vec![];
    let mut seen_component_ids = std::collections::HashSet::new();
    for c in &fd.components {
        if !seen_component_ids.insert(c.id) {
            problems.push(format!("duplicate component id {}", c.id));
        }
    }
    let mut seen_crossing_ids = std::collections::HashSet::new();
    for z in &fd.crossings {
        if !seen_crossing_ids.insert(z.id) {
            problems.push(format!("duplicate crossing id {}", z.id));
        }
        if z.between.0 == z.between.1 {
            problems.push(format!(
                "crossing {} joins a component to itself",
                z.id
            ));
        }
        for side in [z.between.0, z.between.1] {
            match fd.component(side) {
                None => problems.push(format!(
                    "crossing {} references missing component {side}",
                    z.id
                )),
                Some(c) => {
                    if !c.crossings_on_me.contains(&z.id) {
                        problems.push(format!(
                            "component {} does not list incident crossing {}",
                            side, z.id
                        ));
                    }
                }
            }
        }
        if let Some(i) = &z.inertia {
            if i.group() != &fd.group {
                problems.push(format!("crossing {} inertia group mismatch", z.id));
            }
            // a crossing's inertia contains the inertia of both components
            for side in [z.between.0, z.between.1] {
                if let Some(ci) = fd.component(side).and_then(|c| c.inertia.as_ref()) {
                    if ci.group() == &fd.group && !ci.is_subset_of(i) {
                        problems.push(format!(
                            "crossing {}: inertia does not contain component {side}'s inertia",
                            z.id
                        ));
                    }
                }
            }
        }
        if let Some(data) = &z.local_char_data {
            for (side, map) in data {
                match map.respects(&fd.group) {
                    Ok(true) => {}
                    _ => problems.push(format!(
                        "crossing {}: localization map for component {side} is not a homomorphism",
                        z.id
                    )),
                }
            }
        }
        if z.inertia.is_none() || z.frobenius.is_none() {
            incomplete.push(z.id);
        }
    }
    for c in &fd.components {
        for zid in &c.crossings_on_me {
            match fd.crossing(*zid) {
                None => problems.push(format!(
                    "component {} lists missing crossing {zid}",
                    c.id
                )),
                Some(z) => {
                    if z.between.0 != c.id && z.between.1 != c.id {
                        problems.push(format!(
                            "component {} lists crossing {} it does not lie on",
                            c.id, zid
                        ));
                    }
                }
            }
        }
        if let Some(i) = &c.inertia {
            if i.group() != &fd.group {
                problems.push(format!("component {} inertia group mismatch", c.id));
            }
        }
        if c.f == 0 {
            problems.push(format!("component {} has zero residue degree", c.id));
        } else {
            // weighted crossing count relative to the component's field
            let mut weighted = 0i64;
            let mut degree_ok = true;
            for zid in &c.crossings_on_me {
                if let Some(z) = fd.crossing(*zid) {
                    if z.deg % c.f != 0 {
                        problems.push(format!(
                            "crossing {} degree {} not divisible by component degree {}",
                            zid, z.deg, c.f
                        ));
                        degree_ok = false;
                    } else {
                        weighted += (z.deg / c.f) as i64;
                    }
                }
            }
            if degree_ok {
                let base = match c.kind {
                    ComponentKind::Rational => 2,
                    ComponentKind::Elliptic => 0,
                };
                let expected = base - weighted - 2 * c.self_nodes as i64;
                if c.euler_c != expected {
                    problems.push(format!(
                        "component {}: euler characteristic {} but expected {}",
                        c.id, c.euler_c, expected
                    ));
                }
            }
        }
    }
    FiberValidation {
        valid: problems.is_empty(),
        problems,
        incomplete_crossings: incomplete,
    }
}
