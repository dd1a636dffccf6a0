//! Domain types shared by the solvers.
//!
//! Everything stored here is in SI base units: metres, pascals, newtons and
//! degrees Celsius. Engineering units (GPa, kN) only appear at the CLI
//! boundary.

use std::f64::consts::PI;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{ValidationError, Violation};

/// Node count used when a caller does not ask for a specific grid.
pub const DEFAULT_GRID_NODES: usize = 1001;

/// Open interval of admissible `ψ·L` values.
pub const PSI_L_MIN: f64 = 1e-8;
pub const PSI_L_MAX: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PileSection {
    /// Pile length `L` (m).
    pub length: f64,
    /// Shaft perimeter `p` (m).
    pub perimeter: f64,
    /// Cross-sectional area `A` (m²).
    pub area: f64,
}

impl PileSection {
    /// Solid circular section of diameter `d`.
    pub fn circular(diameter: f64, length: f64) -> Result<Self, ValidationError> {
        let mut violations = Vec::new();
        positive("pile.diameter", diameter, &mut violations);
        positive("pile.length", length, &mut violations);
        if !violations.is_empty() {
            return Err(ValidationError { violations });
        }
        Ok(Self {
            length,
            perimeter: PI * diameter,
            area: PI * diameter * diameter / 4.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PileMaterial {
    /// Young's modulus `E` (Pa).
    pub elastic_modulus: f64,
    /// Linear thermal expansion coefficient `α` (1/°C).
    pub thermal_expansion: f64,
}

/// Tip support condition; the two limits of the tip spring stiffness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TipCondition {
    /// Rigid tip, `k_b → ∞`: no tip displacement.
    EndBearing,
    /// Free tip, `k_b → 0`: no tip stress.
    FullyFloating,
}

impl TipCondition {
    pub fn short_name(self) -> &'static str {
        match self {
            TipCondition::EndBearing => "EB",
            TipCondition::FullyFloating => "FF",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestraintSet {
    /// Distributed interface shear stiffness `k_s` (Pa/m).
    pub shear_stiffness: f64,
    /// Head spring stiffness `k_h` (Pa/m).
    pub head_stiffness: f64,
    pub tip: TipCondition,
}

/// Signed loads. Tension and heating are positive.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LoadCase {
    /// Axial head force `F` (N).
    pub head_force: f64,
    /// Uniform temperature change `ΔT` (°C).
    pub temperature_change: f64,
}

impl LoadCase {
    pub fn new(head_force: f64, temperature_change: f64) -> Self {
        Self {
            head_force,
            temperature_change,
        }
    }
}

/// Which part of the load a response belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Thermal,
    Mechanical,
    Combined,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::Thermal => "thermal",
            Component::Mechanical => "mechanical",
            Component::Combined => "combined",
        }
    }

    /// The part of `load` this component responds to.
    pub fn active_load(self, load: LoadCase) -> LoadCase {
        match self {
            Component::Thermal => LoadCase::new(0.0, load.temperature_change),
            Component::Mechanical => LoadCase::new(load.head_force, 0.0),
            Component::Combined => load,
        }
    }
}

/// Node coordinates along the pile, tip (`x = 0`) to head (`x = L`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    x: Vec<f64>,
}

impl Grid {
    /// `nodes` equally spaced points on `[0, length]` with exact endpoints.
    pub fn uniform(length: f64, nodes: usize) -> Result<Self, ValidationError> {
        let mut violations = Vec::new();
        positive("pile.length", length, &mut violations);
        if nodes < 2 {
            violations.push(Violation::GridMalformed(format!(
                "need at least 2 nodes, got {nodes}"
            )));
        }
        if !violations.is_empty() {
            return Err(ValidationError { violations });
        }
        let last = (nodes - 1) as f64;
        let x = (0..nodes).map(|i| (i as f64 / last) * length).collect();
        Ok(Self { x })
    }

    /// Wraps arbitrary coordinates; checked later by [`validate_case`].
    pub fn from_coordinates(x: Vec<f64>) -> Self {
        Self { x }
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    fn check(&self, length: f64, out: &mut Vec<Violation>) {
        let x = &self.x;
        if x.len() < 2 {
            out.push(Violation::GridMalformed(format!(
                "need at least 2 nodes, got {}",
                x.len()
            )));
            return;
        }
        if x[0] != 0.0 {
            out.push(Violation::GridMalformed(format!(
                "first node must be the tip x = 0 (got {})",
                x[0]
            )));
        }
        let last = x[x.len() - 1];
        if last != length {
            out.push(Violation::GridMalformed(format!(
                "last node must be the head x = L = {length} (got {last})"
            )));
        }
        if let Some(i) = x.windows(2).position(|w| !(w[1] > w[0])) {
            out.push(Violation::GridMalformed(format!(
                "coordinates not strictly increasing at node {}",
                i + 1
            )));
        }
    }
}

/// Raw, unvalidated description of one pile problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseDefinition {
    pub section: PileSection,
    pub material: PileMaterial,
    pub restraints: RestraintSet,
    pub load: LoadCase,
    pub grid: Grid,
}

/// A [`CaseDefinition`] that has passed [`validate_case`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValidCase(CaseDefinition);

impl Deref for ValidCase {
    type Target = CaseDefinition;

    fn deref(&self) -> &CaseDefinition {
        &self.0
    }
}

impl ValidCase {
    pub fn into_inner(self) -> CaseDefinition {
        self.0
    }

    /// `ψ = sqrt((p/A)(k_s/E))`.
    pub fn psi(&self) -> f64 {
        psi_of(&self.section, &self.material, &self.restraints)
    }

    pub fn with_load(&self, load: LoadCase) -> Result<Self, ValidationError> {
        validate_case(CaseDefinition {
            load,
            ..self.0.clone()
        })
    }

    pub fn with_head_stiffness(&self, head_stiffness: f64) -> Result<Self, ValidationError> {
        let mut def = self.0.clone();
        def.restraints.head_stiffness = head_stiffness;
        validate_case(def)
    }

    pub fn with_grid(&self, grid: Grid) -> Result<Self, ValidationError> {
        validate_case(CaseDefinition {
            grid,
            ..self.0.clone()
        })
    }

    /// True when everything except the loads matches.
    pub fn same_structure(&self, other: &ValidCase) -> bool {
        self.section == other.section
            && self.material == other.material
            && self.restraints == other.restraints
    }
}

pub(crate) fn psi_of(section: &PileSection, material: &PileMaterial, restraints: &RestraintSet) -> f64 {
    ((section.perimeter / section.area) * (restraints.shear_stiffness / material.elastic_modulus))
        .sqrt()
}

/// Checks every invariant and reports all violations at once.
pub fn validate_case(case: CaseDefinition) -> Result<ValidCase, ValidationError> {
    let mut v = Vec::new();
    let s = &case.section;
    let m = &case.material;
    let r = &case.restraints;

    positive("pile.length", s.length, &mut v);
    positive("pile.perimeter", s.perimeter, &mut v);
    positive("pile.area", s.area, &mut v);
    positive("material.elastic_modulus", m.elastic_modulus, &mut v);
    positive("material.thermal_expansion", m.thermal_expansion, &mut v);
    positive("restraints.shear_stiffness", r.shear_stiffness, &mut v);
    if r.head_stiffness.is_nan() || r.head_stiffness < 0.0 {
        v.push(Violation::NegativeParameter {
            field: "restraints.head_stiffness",
            value: r.head_stiffness,
        });
    } else if !r.head_stiffness.is_finite() {
        v.push(Violation::NonFiniteParameter {
            field: "restraints.head_stiffness",
            value: r.head_stiffness,
        });
    }
    finite("load.head_force", case.load.head_force, &mut v);
    finite("load.temperature_change", case.load.temperature_change, &mut v);

    let psi_computable = s.perimeter > 0.0
        && s.area > 0.0
        && m.elastic_modulus > 0.0
        && r.shear_stiffness >= 0.0
        && s.length > 0.0
        && [s.perimeter, s.area, m.elastic_modulus, r.shear_stiffness, s.length]
            .iter()
            .all(|x| x.is_finite());
    if psi_computable {
        let psi_l = psi_of(s, m, r) * s.length;
        if !(psi_l > PSI_L_MIN && psi_l < PSI_L_MAX) {
            v.push(Violation::PsiOutOfRange { psi_l });
        }
    }

    case.grid.check(s.length, &mut v);

    if v.is_empty() {
        Ok(ValidCase(case))
    } else {
        Err(ValidationError { violations: v })
    }
}

fn positive(field: &'static str, value: f64, out: &mut Vec<Violation>) {
    if !value.is_finite() && value > 0.0 {
        out.push(Violation::NonFiniteParameter { field, value });
    } else if !(value > 0.0) {
        out.push(Violation::NonPositiveParameter { field, value });
    }
}

fn finite(field: &'static str, value: f64, out: &mut Vec<Violation>) {
    if !value.is_finite() {
        out.push(Violation::NonFiniteParameter { field, value });
    }
}
