//! Run configuration files.
//!
//! A config is TOML with units spelled out in every key. Dotted keys keep it
//! flat and diffable:
//!
//! ```toml
//! pile.length_m = 26.0
//! pile.diameter_m = 1.0          # or pile.perimeter_m + pile.area_m2
//! material.E_GPa = 29.2
//! material.alpha_per_C = 1.0e-5
//! soil.ks_GPa_per_m = 0.0167
//! restraints.tip = "end-bearing" # or "fully-floating"
//! restraints.kh_GPa_per_m = 0.0
//! load.F_kN = -1000.0
//! load.dT_C = -10.0
//! grid.nodes = 1001
//! output.profile_csv = "profile.csv"
//! output.summary_json = "profile.summary.json"
//! ```
//!
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::units;
use super::CliError;
use crate::model::{
    validate_case, CaseDefinition, Grid, LoadCase, PileMaterial, PileSection, RestraintSet,
    TipCondition, ValidCase, DEFAULT_GRID_NODES,
};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub pile: PileConfig,
    pub material: MaterialConfig,
    pub soil: SoilConfig,
    pub restraints: RestraintConfig,
    #[serde(default)]
    pub load: LoadConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PileConfig {
    pub length_m: f64,
    pub diameter_m: Option<f64>,
    pub perimeter_m: Option<f64>,
    pub area_m2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    #[serde(rename = "E_GPa")]
    pub e_gpa: f64,
    #[serde(rename = "alpha_per_C")]
    pub alpha_per_c: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoilConfig {
    #[serde(rename = "ks_GPa_per_m")]
    pub ks_gpa_per_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TipConfig {
    EndBearing,
    FullyFloating,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestraintConfig {
    pub tip: TipConfig,
    #[serde(rename = "kh_GPa_per_m", default)]
    pub kh_gpa_per_m: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadConfig {
    #[serde(rename = "F_kN", default)]
    pub f_kn: f64,
    #[serde(rename = "dT_C", default)]
    pub dt_c: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_nodes")]
    pub nodes: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_GRID_NODES,
        }
    }
}

fn default_nodes() -> usize {
    DEFAULT_GRID_NODES
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub profile_csv: Option<PathBuf>,
    pub summary_json: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Converts to SI and validates.
    pub fn to_case(&self) -> Result<ValidCase, CliError> {
        let p = &self.pile;
        let section = match (p.diameter_m, p.perimeter_m, p.area_m2) {
            (Some(d), None, None) => PileSection::circular(d, p.length_m).map_err(crate::Error::from)?,
            (None, Some(perimeter), Some(area)) => PileSection {
                length: p.length_m,
                perimeter,
                area,
            },
            _ => {
                return Err(CliError::Input(
                    "pile: give either diameter_m, or both perimeter_m and area_m2".into(),
                ))
            }
        };
        let grid = Grid::uniform(p.length_m, self.grid.nodes).map_err(crate::Error::from)?;
        let def = CaseDefinition {
            section,
            material: PileMaterial {
                elastic_modulus: self.material.e_gpa * units::GPA_TO_PA,
                thermal_expansion: self.material.alpha_per_c,
            },
            restraints: RestraintSet {
                shear_stiffness: self.soil.ks_gpa_per_m * units::GPA_PER_M_TO_PA_PER_M,
                head_stiffness: self.restraints.kh_gpa_per_m * units::GPA_PER_M_TO_PA_PER_M,
                tip: match self.restraints.tip {
                    TipConfig::EndBearing => TipCondition::EndBearing,
                    TipConfig::FullyFloating => TipCondition::FullyFloating,
                },
            },
            load: LoadCase::new(self.load.f_kn * units::KN_TO_N, self.load.dt_c),
            grid,
        };
        Ok(validate_case(def).map_err(crate::Error::from)?)
    }
}
