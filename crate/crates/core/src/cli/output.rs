//! File formats written by the CLI. Every file is written atomically.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::CliError;
use crate::analytic::{DerivedSummary, Solution};
use crate::model::ValidCase;
use crate::study::{FigureDataset, Series, SweepParameter};

pub const PROFILE_HEADER: &str = "x_m,depth_m,u_m,eps,sigma_Pa,tau_Pa,component";

/// Shortest text that parses back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("cannot serialize {}: {e}", path.display())))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn profile_csv(solution: &Solution) -> String {
    let mut out = String::from(PROFILE_HEADER);
    out.push('\n');
    for p in [&solution.thermal, &solution.mechanical, &solution.combined] {
        let length = p.case.section.length;
        for (i, &x) in p.x().iter().enumerate() {
            let row = [
                fmt_num(x),
                fmt_num(length - x),
                fmt_num(p.displacement[i]),
                fmt_num(p.strain[i]),
                fmt_num(p.stress[i]),
                fmt_num(p.interface_shear[i]),
            ];
            out.push_str(&row.join(","));
            out.push(',');
            out.push_str(p.component.as_str());
            out.push('\n');
        }
    }
    out
}

/// Inputs (SI) plus the derived summary.
#[derive(Debug, Serialize)]
pub struct SummaryFile<'a> {
    pub tip: crate::model::TipCondition,
    pub length_m: f64,
    pub perimeter_m: f64,
    pub area_m2: f64,
    pub elastic_modulus_pa: f64,
    pub thermal_expansion_per_c: f64,
    pub shear_stiffness_pa_per_m: f64,
    pub head_stiffness_pa_per_m: f64,
    pub head_force_n: f64,
    pub temperature_change_c: f64,
    pub nodes: usize,
    pub summary: &'a DerivedSummary,
}

impl<'a> SummaryFile<'a> {
    pub fn new(case: &ValidCase, summary: &'a DerivedSummary) -> Self {
        Self {
            tip: case.restraints.tip,
            length_m: case.section.length,
            perimeter_m: case.section.perimeter,
            area_m2: case.section.area,
            elastic_modulus_pa: case.material.elastic_modulus,
            thermal_expansion_per_c: case.material.thermal_expansion,
            shear_stiffness_pa_per_m: case.restraints.shear_stiffness,
            head_stiffness_pa_per_m: case.restraints.head_stiffness,
            head_force_n: case.load.head_force,
            temperature_change_c: case.load.temperature_change,
            nodes: case.grid.len(),
            summary,
        }
    }
}

pub fn sweep_header(parameter: SweepParameter) -> String {
    let name = match parameter {
        SweepParameter::HeadStiffness => "kh_GPa_per_m",
        SweepParameter::Temperature => "dT_C",
        SweepParameter::Force => "F_kN",
    };
    format!(
        "{name},u_head_m,u_tip_m,sigma_head_Pa,sigma_tip_Pa,x0_m,tension_lo_m,tension_hi_m,max_tension_Pa"
    )
}

/// One row per summary; `values` are echoed in the units they were given.
pub fn sweep_csv(parameter: SweepParameter, values: &[f64], summaries: &[DerivedSummary]) -> String {
    let mut out = sweep_header(parameter);
    out.push('\n');
    for (v, s) in values.iter().zip(summaries) {
        let (lo, hi) = match s.tension_zone {
            Some(z) => (fmt_num(z.lower), fmt_num(z.upper)),
            None => (String::new(), String::new()),
        };
        let row = [
            fmt_num(*v),
            fmt_num(s.head_displacement),
            fmt_num(s.tip_displacement),
            fmt_num(s.head_stress),
            fmt_num(s.tip_stress),
            fmt_num(s.null_point),
            lo,
            hi,
            fmt_num(s.max_tensile_stress),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn series_csv(series: &Series, length: f64) -> String {
    let mut out = format!("depth_m,x_m,{}_{}\n", series.label, unit_tag(series.unit));
    for (z, v) in series.depth.iter().zip(&series.values) {
        out.push_str(&format!("{},{},{}\n", fmt_num(*z), fmt_num(length - z), fmt_num(*v)));
    }
    out
}

fn unit_tag(unit: &str) -> &str {
    match unit {
        "-" => "1",
        other => other,
    }
}

#[derive(Debug, Serialize)]
pub struct ManifestEntry<'a> {
    pub label: &'a str,
    pub file: String,
    pub quantity: crate::study::Quantity,
    pub unit: &'a str,
    pub tip: crate::model::TipCondition,
    pub head_stiffness_pa_per_m: f64,
    pub head_force_n: f64,
    pub temperature_change_c: f64,
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub figure: u32,
    pub title: &'a str,
    pub series: Vec<ManifestEntry<'a>>,
}

pub fn series_file_name(figure: u32, label: &str) -> String {
    format!("fig{figure}_{label}.csv")
}

pub fn manifest(dataset: &FigureDataset) -> Manifest<'_> {
    Manifest {
        figure: dataset.figure,
        title: &dataset.title,
        series: dataset
            .series
            .iter()
            .map(|s| ManifestEntry {
                label: &s.label,
                file: series_file_name(dataset.figure, &s.label),
                quantity: s.quantity,
                unit: s.unit,
                tip: s.tip,
                head_stiffness_pa_per_m: s.head_stiffness,
                head_force_n: s.head_force,
                temperature_change_c: s.temperature_change,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn numbers_round_trip(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = fmt_num(v);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn compact_forms() {
        assert_eq!(fmt_num(26.0), "26");
        assert_eq!(fmt_num(0.026), "0.026");
        assert_eq!(fmt_num(-1.5e-9), "-1.5e-9");
        assert_eq!(fmt_num(0.0), "0");
    }
}
