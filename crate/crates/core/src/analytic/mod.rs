//! Closed-form thermo-mechanical response of a single pile.
//!
//! Governing problem (per unit length, `x` upward from the tip):
//!
//! ```text
//! A·dσ/dx = p·k_s·u,    σ = E·(du/dx − α·ΔT),    ψ² = (p/A)(k_s/E)
//! ```
//!
//! End-bearing tips have `u(0) = 0`; fully floating tips have `σ(0) = 0`.
//! The head carries the applied force `F` and, for the thermal part only, a
//! spring reaction `σ(L) = −k_h·u(L)`. The mechanical terms carry no `k_h`:
//! the head spring restrains thermally induced movement while `F` stays a
//! prescribed force.

pub mod hyperbolic;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    psi_of, Component, LoadCase, PileMaterial, PileSection, RestraintSet, TipCondition, ValidCase,
};
use hyperbolic::{cosh_over_cosh, cosh_over_sinh, sinh_over_cosh, sinh_over_sinh};

/// Width of the final bisection bracket for tension-zone ends, as a fraction of `L`.
pub const ZONE_TOLERANCE: f64 = 1e-9;

/// Nodal stresses within this fraction of `max|σ|` are treated as zero when
/// looking for tension.
pub const ZERO_STRESS_FRACTION: f64 = 1e-12;

/// `ψ = sqrt((p/A)(k_s/E))` in 1/m.
pub fn compute_psi(section: &PileSection, material: &PileMaterial, restraints: &RestraintSet) -> f64 {
    psi_of(section, material, restraints)
}

/// Temperature change that mimics a head force in an end-bearing pile with a free head.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalentThermalLoad {
    /// `|F| / (A·E·α)` in °C.
    pub magnitude: f64,
    /// Signed value for compression with cooling: `+F/(A·E·α)`.
    pub scenario_i: f64,
    /// Signed value for compression with heating: `−F/(A·E·α)`.
    pub scenario_ii: f64,
}

pub fn equivalent_thermal_load(
    head_force: f64,
    section: &PileSection,
    material: &PileMaterial,
) -> EquivalentThermalLoad {
    let signed = head_force / (section.area * material.elastic_modulus * material.thermal_expansion);
    EquivalentThermalLoad {
        magnitude: signed.abs(),
        scenario_i: signed,
        scenario_ii: -signed,
    }
}

/// Height above the tip where the thermal displacement vanishes.
///
/// End-bearing piles always return 0. For fully floating piles the closed
/// form `tanh(ψx₀) = N/D` is rewritten as
/// `ψx₀ = ψL/2 + ½·ln((κ + m)/(m + κ·e^{−ψL}))`, with `κ = k_h/(Eψ)` and
/// `m = 1 − e^{−ψL}`, which needs no `atanh` near 1 and gives exactly `L/2`
/// for `k_h = 0`.
pub fn null_point(case: &ValidCase) -> f64 {
    match case.restraints.tip {
        TipCondition::EndBearing => 0.0,
        TipCondition::FullyFloating => {
            let psi = case.psi();
            let length = case.section.length;
            let kappa = case.restraints.head_stiffness / (case.material.elastic_modulus * psi);
            let q = (-psi * length).exp();
            let m = -(-psi * length).exp_m1();
            let shift = ((kappa + m).ln() - (m + q * kappa).ln()) / psi;
            (0.5 * length + 0.5 * shift).min(length)
        }
    }
}

/// Displacement, strain and stress at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldValues {
    pub displacement: f64,
    pub strain: f64,
    pub stress: f64,
}

impl std::ops::Add for FieldValues {
    type Output = FieldValues;

    fn add(self, o: FieldValues) -> FieldValues {
        FieldValues {
            displacement: self.displacement + o.displacement,
            strain: self.strain + o.strain,
            stress: self.stress + o.stress,
        }
    }
}

/// Per-case constants, computed once and evaluated at any `x`.
#[derive(Debug, Clone)]
struct ClosedForm {
    psi: f64,
    psi_l: f64,
    modulus: f64,
    tip: TipCondition,
    null_point: f64,
    free_strain: f64,
    axial_strain: f64,
    // End-bearing head spring factor 1/(1 + κ·tanh ψL).
    head_factor: f64,
}

impl ClosedForm {
    fn new(case: &ValidCase) -> Self {
        let psi = case.psi();
        let psi_l = psi * case.section.length;
        let m = &case.material;
        let kappa = case.restraints.head_stiffness / (m.elastic_modulus * psi);
        Self {
            psi,
            psi_l,
            modulus: m.elastic_modulus,
            tip: case.restraints.tip,
            null_point: null_point(case),
            free_strain: m.thermal_expansion * case.load.temperature_change,
            axial_strain: case.load.head_force / (case.section.area * m.elastic_modulus),
            head_factor: 1.0 / (1.0 + kappa * psi_l.tanh()),
        }
    }

    fn thermal(&self, x: f64) -> FieldValues {
        let (ru, re) = match self.tip {
            TipCondition::EndBearing => {
                let b = self.psi * x;
                (
                    sinh_over_cosh(b, self.psi_l) * self.head_factor,
                    cosh_over_cosh(b, self.psi_l) * self.head_factor,
                )
            }
            TipCondition::FullyFloating => {
                // The printed head-side denominator equals cosh(ψx₀) by the
                // null-point identity; using it keeps the tip exactly stress-free.
                let a = self.psi * self.null_point;
                let b = self.psi * (x - self.null_point);
                (sinh_over_cosh(b, a), cosh_over_cosh(b, a))
            }
        };
        let strain = self.free_strain * re;
        FieldValues {
            displacement: self.free_strain * ru / self.psi,
            strain,
            stress: self.modulus * (strain - self.free_strain),
        }
    }

    fn mechanical(&self, x: f64) -> FieldValues {
        let b = self.psi * x;
        let (ru, re) = match self.tip {
            TipCondition::EndBearing => (sinh_over_cosh(b, self.psi_l), cosh_over_cosh(b, self.psi_l)),
            TipCondition::FullyFloating => {
                (cosh_over_sinh(b, self.psi_l), sinh_over_sinh(b, self.psi_l))
            }
        };
        let strain = self.axial_strain * re;
        FieldValues {
            displacement: self.axial_strain * ru / self.psi,
            strain,
            stress: self.modulus * strain,
        }
    }

    fn eval(&self, component: Component, x: f64) -> FieldValues {
        match component {
            Component::Thermal => self.thermal(x),
            Component::Mechanical => self.mechanical(x),
            Component::Combined => self.thermal(x) + self.mechanical(x),
        }
    }
}

/// Closed-form fields of one load component at a single height `x`.
pub fn evaluate(case: &ValidCase, component: Component, x: f64) -> FieldValues {
    ClosedForm::new(case).eval(component, x)
}

/// Nodal fields of one load component, aligned with the case grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResponseProfile {
    pub case: ValidCase,
    pub component: Component,
    /// `u` (m), positive upward.
    pub displacement: Vec<f64>,
    /// `ε`, tension positive.
    pub strain: Vec<f64>,
    /// `σ` (Pa), tension positive.
    pub stress: Vec<f64>,
    /// `τ = k_s·u` (Pa).
    pub interface_shear: Vec<f64>,
}

impl ResponseProfile {
    pub fn x(&self) -> &[f64] {
        self.case.grid.coordinates()
    }

    pub fn len(&self) -> usize {
        self.displacement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.displacement.is_empty()
    }

    pub fn head(&self) -> FieldValues {
        self.at_node(self.len() - 1)
    }

    pub fn tip(&self) -> FieldValues {
        self.at_node(0)
    }

    pub fn at_node(&self, i: usize) -> FieldValues {
        FieldValues {
            displacement: self.displacement[i],
            strain: self.strain[i],
            stress: self.stress[i],
        }
    }
}

fn profile(case: &ValidCase, component: Component) -> ResponseProfile {
    let form = ClosedForm::new(case);
    let n = case.grid.len();
    let mut p = ResponseProfile {
        case: case.clone(),
        component,
        displacement: Vec::with_capacity(n),
        strain: Vec::with_capacity(n),
        stress: Vec::with_capacity(n),
        interface_shear: Vec::new(),
    };
    for &x in case.grid.coordinates() {
        let f = form.eval(component, x);
        p.displacement.push(f.displacement);
        p.strain.push(f.strain);
        p.stress.push(f.stress);
    }
    p.interface_shear = interface_shear(&p);
    p
}

/// Response to `ΔT` alone; the head force is ignored.
pub fn thermal_profile(case: &ValidCase) -> ResponseProfile {
    profile(case, Component::Thermal)
}

/// Response to `F` alone; the temperature change is ignored.
pub fn mechanical_profile(case: &ValidCase) -> ResponseProfile {
    profile(case, Component::Mechanical)
}

/// Node-wise sum of two profiles on the same pile and grid.
///
/// The result's case carries the sum of the loads each input actually
/// responds to, so `thermal(ΔT) + thermal(−ΔT)` is the unloaded pile.
pub fn superpose(a: &ResponseProfile, b: &ResponseProfile) -> Result<ResponseProfile> {
    if !a.case.same_structure(&b.case) {
        return Err(Error::CaseMismatch(
            "profiles describe different piles or restraints".into(),
        ));
    }
    if a.case.grid != b.case.grid {
        return Err(Error::CaseMismatch("profiles use different grids".into()));
    }
    let la = a.component.active_load(a.case.load);
    let lb = b.component.active_load(b.case.load);
    let load = LoadCase::new(
        la.head_force + lb.head_force,
        la.temperature_change + lb.temperature_change,
    );
    let case = a.case.with_load(load)?;
    let component = if a.component == b.component {
        a.component
    } else {
        Component::Combined
    };
    let add = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<_>>();
    Ok(ResponseProfile {
        case,
        component,
        displacement: add(&a.displacement, &b.displacement),
        strain: add(&a.strain, &b.strain),
        stress: add(&a.stress, &b.stress),
        interface_shear: add(&a.interface_shear, &b.interface_shear),
    })
}

/// `τ = k_s·u` at every node.
pub fn interface_shear(profile: &ResponseProfile) -> Vec<f64> {
    let ks = profile.case.restraints.shear_stiffness;
    profile.displacement.iter().map(|u| ks * u).collect()
}

/// Interval of the pile in tension, `lower <= x <= upper` (m from the tip).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TensionZone {
    pub lower: f64,
    pub upper: f64,
}

impl TensionZone {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Locates the region where `σ > 0`.
///
/// Nodes bracket each sign change; the ends are then refined by bisection on
/// the closed-form stress to `ZONE_TOLERANCE·L`. More than one disjoint
/// region is reported as [`Error::MultipleZones`].
pub fn tension_zone(profile: &ResponseProfile) -> Result<Option<TensionZone>> {
    let stress = &profile.stress;
    let scale = stress.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let threshold = ZERO_STRESS_FRACTION * scale;
    let tensile: Vec<bool> = stress.iter().map(|&s| s > threshold).collect();

    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = None;
    for (i, &t) in tensile.iter().enumerate() {
        match (t, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, tensile.len() - 1));
    }
    match runs.len() {
        0 => return Ok(None),
        1 => {}
        count => return Err(Error::MultipleZones { count }),
    }

    let (first, last) = runs[0];
    let x = profile.x();
    let form = ClosedForm::new(&profile.case);
    let sigma = |xx: f64| form.eval(profile.component, xx).stress;
    let tol = ZONE_TOLERANCE * profile.case.section.length;

    let lower = if first == 0 {
        x[0]
    } else {
        bisect_root(&sigma, x[first - 1], x[first], tol)
    };
    let upper = if last == x.len() - 1 {
        x[last]
    } else {
        bisect_root(&sigma, x[last], x[last + 1], tol)
    };
    Ok(Some(TensionZone { lower, upper }))
}

/// Bisection for a sign change of `f` inside `[a, b]`.
fn bisect_root(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    while (b - a) > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Scalar digest of one solved case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedSummary {
    pub tip: TipCondition,
    pub head_stiffness: f64,
    pub head_force: f64,
    pub temperature_change: f64,
    pub psi: f64,
    pub psi_l: f64,
    pub null_point: f64,
    pub equivalent_dt: EquivalentThermalLoad,
    pub head_displacement: f64,
    pub tip_displacement: f64,
    pub head_stress: f64,
    pub tip_stress: f64,
    pub tension_zone: Option<TensionZone>,
    /// Largest nodal tensile stress, 0 when the pile is nowhere in tension.
    pub max_tensile_stress: f64,
}

pub fn summarize(
    thermal: &ResponseProfile,
    mechanical: &ResponseProfile,
    combined: &ResponseProfile,
) -> Result<DerivedSummary> {
    let expect = [
        (thermal, Component::Thermal),
        (mechanical, Component::Mechanical),
        (combined, Component::Combined),
    ];
    for (p, c) in expect {
        if p.component != c {
            return Err(Error::CaseMismatch(format!(
                "expected a {} profile, got {}",
                c.as_str(),
                p.component.as_str()
            )));
        }
    }
    if thermal.case != combined.case || mechanical.case != combined.case {
        return Err(Error::CaseMismatch(
            "thermal, mechanical and combined profiles come from different cases".into(),
        ));
    }
    let case = &combined.case;
    let psi = case.psi();
    let head = combined.head();
    let tip = combined.tip();
    let max_tensile = combined.stress.iter().fold(0.0f64, |m, &s| m.max(s));
    Ok(DerivedSummary {
        tip: case.restraints.tip,
        head_stiffness: case.restraints.head_stiffness,
        head_force: case.load.head_force,
        temperature_change: case.load.temperature_change,
        psi,
        psi_l: psi * case.section.length,
        null_point: null_point(case),
        equivalent_dt: equivalent_thermal_load(case.load.head_force, &case.section, &case.material),
        head_displacement: head.displacement,
        tip_displacement: tip.displacement,
        head_stress: head.stress,
        tip_stress: tip.stress,
        tension_zone: tension_zone(combined)?,
        max_tensile_stress: max_tensile,
    })
}

/// Thermal, mechanical and combined profiles plus their summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub thermal: ResponseProfile,
    pub mechanical: ResponseProfile,
    pub combined: ResponseProfile,
    pub summary: DerivedSummary,
}

pub fn solve(case: &ValidCase) -> Result<Solution> {
    let thermal = thermal_profile(case);
    let mechanical = mechanical_profile(case);
    let combined = superpose(&thermal, &mechanical)?;
    let summary = summarize(&thermal, &mechanical, &combined)?;
    Ok(Solution {
        thermal,
        mechanical,
        combined,
        summary,
    })
}

#[cfg(test)]
mod tests;
