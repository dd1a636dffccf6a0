//! Reference pile, load scenarios, parameter sweeps and plot-ready datasets.

pub mod claims;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{self, DerivedSummary, ResponseProfile, Solution};
use crate::error::{Error, Result};
use crate::model::{
    validate_case, CaseDefinition, Grid, LoadCase, PileMaterial, PileSection, RestraintSet,
    TipCondition, ValidCase, DEFAULT_GRID_NODES,
};

pub use claims::{claims_report, Claim, ClaimReport};

// Reference pile (SI).
pub const LENGTH: f64 = 26.0;
pub const DIAMETER: f64 = 1.0;
pub const ELASTIC_MODULUS: f64 = 29.2e9;
pub const THERMAL_EXPANSION: f64 = 1e-5;
pub const SHEAR_STIFFNESS: f64 = 0.0167e9;

/// Head spring stiffnesses used for the restrained comparisons (Pa/m).
pub const HEAD_STIFFNESS_LOW: f64 = 0.125e9;
pub const HEAD_STIFFNESS_HIGH: f64 = 2e9;

/// Compressive head force of both load scenarios (N).
pub const SCENARIO_FORCE: f64 = -1e6;
/// Magnitude of the temperature change of both load scenarios (°C).
pub const SCENARIO_DT: f64 = 10.0;

/// Reference pile with the given tip and head spring, unloaded, default grid.
pub fn canonical_case(tip: TipCondition, head_stiffness: f64) -> Result<ValidCase> {
    Ok(validate_case(CaseDefinition {
        section: PileSection::circular(DIAMETER, LENGTH)?,
        material: PileMaterial {
            elastic_modulus: ELASTIC_MODULUS,
            thermal_expansion: THERMAL_EXPANSION,
        },
        restraints: RestraintSet {
            shear_stiffness: SHEAR_STIFFNESS,
            head_stiffness,
            tip,
        },
        load: LoadCase::default(),
        grid: Grid::uniform(LENGTH, DEFAULT_GRID_NODES)?,
    })?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ScenarioId {
    /// Compression with cooling.
    I,
    /// Compression with heating.
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub id: ScenarioId,
    pub head_force: f64,
    pub temperature_change: f64,
}

impl Scenario {
    pub fn new(id: ScenarioId, head_force: f64, temperature_change: f64) -> Result<Self> {
        let ok = head_force < 0.0
            && match id {
                ScenarioId::I => temperature_change < 0.0,
                ScenarioId::II => temperature_change > 0.0,
            };
        if !ok {
            return Err(Error::InvalidRequest(format!(
                "scenario {id:?} needs F < 0 and {} (got F = {head_force}, dT = {temperature_change})",
                match id {
                    ScenarioId::I => "dT < 0",
                    ScenarioId::II => "dT > 0",
                }
            )));
        }
        Ok(Self {
            id,
            head_force,
            temperature_change,
        })
    }

    /// `F = −1 MN` with `ΔT = ∓10 °C`.
    pub fn canonical(id: ScenarioId) -> Self {
        let dt = match id {
            ScenarioId::I => -SCENARIO_DT,
            ScenarioId::II => SCENARIO_DT,
        };
        Self {
            id,
            head_force: SCENARIO_FORCE,
            temperature_change: dt,
        }
    }

    pub fn load(&self) -> LoadCase {
        LoadCase::new(self.head_force, self.temperature_change)
    }
}

/// Solves `case` under the scenario's loads.
pub fn run_scenario(scenario: &Scenario, case: &ValidCase) -> Result<Solution> {
    analytic::solve(&case.with_load(scenario.load())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// `k_h` in Pa/m.
    HeadStiffness,
    /// `ΔT` in °C.
    Temperature,
    /// `F` in N.
    Force,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ValidCase,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// One summary per swept value, in input order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<DerivedSummary>> {
    if spec.values.is_empty() {
        return Err(Error::InvalidRequest("sweep needs at least one value".into()));
    }
    if let Some(v) = spec.values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidRequest(format!("sweep value {v} is not finite")));
    }
    spec.values
        .par_iter()
        .map(|&v| {
            let base = &spec.base;
            let case = match spec.parameter {
                SweepParameter::HeadStiffness => base.with_head_stiffness(v)?,
                SweepParameter::Temperature => {
                    base.with_load(LoadCase::new(base.load.head_force, v))?
                }
                SweepParameter::Force => {
                    base.with_load(LoadCase::new(v, base.load.temperature_change))?
                }
            };
            Ok(analytic::solve(&case)?.summary)
        })
        .collect()
}

/// [`sweep`] restricted to the head spring stiffness.
pub fn kh_sweep(spec: &SweepSpec) -> Result<Vec<DerivedSummary>> {
    if spec.parameter != SweepParameter::HeadStiffness {
        return Err(Error::InvalidRequest(format!(
            "expected a head_stiffness sweep, got {:?}",
            spec.parameter
        )));
    }
    sweep(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Displacement,
    Strain,
    Stress,
}

impl Quantity {
    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Displacement => "m",
            Quantity::Strain => "-",
            Quantity::Stress => "Pa",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Quantity::Displacement => "u",
            Quantity::Strain => "eps",
            Quantity::Stress => "sigma",
        }
    }

    fn of(self, p: &ResponseProfile) -> &[f64] {
        match self {
            Quantity::Displacement => &p.displacement,
            Quantity::Strain => &p.strain,
            Quantity::Stress => &p.stress,
        }
    }
}

/// One plotted curve, ordered from the head (depth 0) down to the tip.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub label: String,
    pub quantity: Quantity,
    pub unit: &'static str,
    pub tip: TipCondition,
    pub head_stiffness: f64,
    pub head_force: f64,
    pub temperature_change: f64,
    /// Depth below the head, `z = L − x` (m).
    pub depth: Vec<f64>,
    pub values: Vec<f64>,
}

impl Series {
    fn from_profile(label: String, quantity: Quantity, p: &ResponseProfile) -> Self {
        let length = p.case.section.length;
        let load = p.component.active_load(p.case.load);
        Self {
            label,
            quantity,
            unit: quantity.unit(),
            tip: p.case.restraints.tip,
            head_stiffness: p.case.restraints.head_stiffness,
            head_force: load.head_force,
            temperature_change: load.temperature_change,
            depth: p.x().iter().rev().map(|x| length - x).collect(),
            values: quantity.of(p).iter().rev().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureDataset {
    pub figure: u32,
    pub title: String,
    pub series: Vec<Series>,
}

const QUANTITIES: [Quantity; 3] = [Quantity::Displacement, Quantity::Strain, Quantity::Stress];

fn kh_tag(kh: f64) -> String {
    format!("kh{}", kh / 1e9)
}

/// Plot-ready curves for figures 2 through 7, using the reference pile.
pub fn figure_dataset(figure: u32) -> Result<FigureDataset> {
    let dataset = match figure {
        2 | 3 => {
            let tip = if figure == 2 {
                TipCondition::FullyFloating
            } else {
                TipCondition::EndBearing
            };
            let s = run_scenario(&Scenario::canonical(ScenarioId::I), &canonical_case(tip, 0.0)?)?;
            let mut series = Vec::new();
            for q in QUANTITIES {
                for p in [&s.thermal, &s.mechanical, &s.combined] {
                    series.push(Series::from_profile(
                        format!("{}_{}", q.symbol(), p.component.as_str()),
                        q,
                        p,
                    ));
                }
            }
            FigureDataset {
                figure,
                title: format!(
                    "{} pile, compression with cooling, no head spring: thermal, mechanical and combined response",
                    if figure == 2 { "Fully floating" } else { "End bearing" }
                ),
                series,
            }
        }
        4 => {
            let scenario = Scenario::canonical(ScenarioId::II);
            let ff = run_scenario(&scenario, &canonical_case(TipCondition::FullyFloating, 0.0)?)?;
            let eb = run_scenario(&scenario, &canonical_case(TipCondition::EndBearing, 0.0)?)?;
            let mut series = Vec::new();
            for q in QUANTITIES {
                for (tag, s) in [("FF", &ff), ("EB", &eb)] {
                    series.push(Series::from_profile(
                        format!("{}_{tag}", q.symbol()),
                        q,
                        &s.combined,
                    ));
                }
            }
            FigureDataset {
                figure,
                title: "Combined response to compression with heating, no head spring: FF vs EB".into(),
                series,
            }
        }
        5..=7 => {
            let q = QUANTITIES[(figure - 5) as usize];
            let scenario = Scenario::canonical(ScenarioId::II);
            let mut series = Vec::new();
            for tip in [TipCondition::FullyFloating, TipCondition::EndBearing] {
                for kh in [HEAD_STIFFNESS_LOW, HEAD_STIFFNESS_HIGH] {
                    let s = run_scenario(&scenario, &canonical_case(tip, kh)?)?;
                    series.push(Series::from_profile(
                        format!("{}_{}_{}", q.symbol(), tip.short_name(), kh_tag(kh)),
                        q,
                        &s.combined,
                    ));
                }
            }
            FigureDataset {
                figure,
                title: format!(
                    "Combined {} under compression with heating and a head spring: FF vs EB",
                    match q {
                        Quantity::Displacement => "axial displacement",
                        Quantity::Strain => "axial strain",
                        Quantity::Stress => "axial stress",
                    }
                ),
                series,
            }
        }
        other => return Err(Error::UnknownFigure(other)),
    };
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn canonical_case_psi_l() {
        let c = canonical_case(TipCondition::EndBearing, 0.0).unwrap();
        assert!((c.psi() * LENGTH - 1.2436).abs() < 5e-5);
        assert!(canonical_case(TipCondition::FullyFloating, 2e9).is_ok());
        assert!(matches!(
            canonical_case(TipCondition::EndBearing, -1.0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn scenario_sign_rules() {
        assert!(Scenario::new(ScenarioId::I, -1e6, -10.0).is_ok());
        assert!(Scenario::new(ScenarioId::I, -1e6, 10.0).is_err());
        assert!(Scenario::new(ScenarioId::II, 1e6, 10.0).is_err());
        let c = Scenario::canonical(ScenarioId::II);
        assert_eq!(Scenario::new(ScenarioId::II, c.head_force, c.temperature_change).unwrap(), c);
    }

    #[test]
    fn scenario_outcomes() {
        let eb = canonical_case(TipCondition::EndBearing, 0.0).unwrap();
        let ff = canonical_case(TipCondition::FullyFloating, 0.0).unwrap();
        let s1 = run_scenario(&Scenario::canonical(ScenarioId::I), &eb).unwrap();
        assert!(s1.summary.tension_zone.is_some());
        for c in [&eb, &ff] {
            let s2 = run_scenario(&Scenario::canonical(ScenarioId::II), c).unwrap();
            assert!(s2.combined.stress.iter().all(|s| *s <= 0.0));
        }
        let f1 = run_scenario(&Scenario::canonical(ScenarioId::I), &ff).unwrap();
        assert_eq!(f1.mechanical.tip().strain, 0.0);
        assert_eq!(f1.combined.tip().stress, 0.0);
    }

    #[test]
    fn head_stiffness_sweep() {
        let base = canonical_case(TipCondition::EndBearing, 0.0)
            .unwrap()
            .with_load(Scenario::canonical(ScenarioId::II).load())
            .unwrap();
        let spec = SweepSpec {
            base: base.clone(),
            parameter: SweepParameter::HeadStiffness,
            values: vec![0.0, HEAD_STIFFNESS_LOW, HEAD_STIFFNESS_HIGH],
        };
        let out = kh_sweep(&spec).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out[0].head_displacement > out[1].head_displacement);
        assert!(out[1].head_displacement > out[2].head_displacement);

        let single = kh_sweep(&SweepSpec {
            values: vec![0.0],
            ..spec.clone()
        })
        .unwrap();
        let direct = run_scenario(&Scenario::canonical(ScenarioId::II), &base).unwrap();
        assert_eq!(single[0], direct.summary);

        assert!(kh_sweep(&SweepSpec {
            values: vec![],
            ..spec.clone()
        })
        .is_err());
        assert!(kh_sweep(&SweepSpec {
            parameter: SweepParameter::Force,
            ..spec
        })
        .is_err());
    }

    #[test]
    fn other_sweeps_preserve_order() {
        let base = canonical_case(TipCondition::FullyFloating, HEAD_STIFFNESS_LOW).unwrap();
        let values = vec![-20.0, -5.0, 0.0, 5.0, 20.0];
        let out = sweep(&SweepSpec {
            base,
            parameter: SweepParameter::Temperature,
            values: values.clone(),
        })
        .unwrap();
        for (s, v) in out.iter().zip(&values) {
            assert_eq!(s.temperature_change, *v);
        }
    }

    #[test]
    fn figure_series_counts_and_labels() {
        let expected = [(2, 9), (3, 9), (4, 6), (5, 4), (6, 4), (7, 4)];
        for (id, count) in expected {
            let d = figure_dataset(id).unwrap();
            assert_eq!(d.series.len(), count, "figure {id}");
            let labels: HashSet<_> = d.series.iter().map(|s| s.label.as_str()).collect();
            assert_eq!(labels.len(), count);
            for s in &d.series {
                assert_eq!(s.depth.len(), s.values.len());
                assert_eq!(s.depth[0], 0.0);
                assert_eq!(*s.depth.last().unwrap(), LENGTH);
            }
        }
        assert!(matches!(figure_dataset(1), Err(Error::UnknownFigure(1))));
        assert!(matches!(figure_dataset(8), Err(Error::UnknownFigure(8))));
        assert_eq!(figure_dataset(5).unwrap(), figure_dataset(5).unwrap());
    }

    #[test]
    fn figure_two_uses_scenario_one_loads() {
        let d = figure_dataset(2).unwrap();
        let u_th = &d.series[0];
        assert_eq!(u_th.label, "u_thermal");
        assert_eq!(u_th.tip, TipCondition::FullyFloating);
        assert_eq!(u_th.temperature_change, -SCENARIO_DT);
        assert_eq!(u_th.head_force, 0.0);
        let u_m = &d.series[1];
        assert_eq!(u_m.head_force, SCENARIO_FORCE);
    }
}
