//! Finite-difference solution of the pile boundary-value problem.
//!
//! Solves `u'' = (p·k_s/(A·E))·u` on a uniform grid with second-order central
//! differences. Derivative boundary conditions are imposed through ghost
//! nodes so the scheme stays O(h²) up to the ends:
//!
//! | end  | end-bearing | fully floating                     |
//! |------|-------------|------------------------------------|
//! | tip  | `u = 0`     | `u' = αΔT` (thermal), `0` (mech.)  |
//! | head | `E(u' − αΔT) = −k_h·u` (thermal), `E·u' = F/A` (mech.) |
//!
//! This module shares only the `model` types with the closed forms. The
//! comparison helpers at the bottom take closed-form profiles as inputs.

pub mod tridiag;

use serde::Serialize;

use crate::analytic::{self, ResponseProfile};
use crate::error::{Error, Result};
use crate::model::{Component, Grid, TipCondition, ValidCase};

/// Smallest node count the solver accepts.
pub const MIN_NODES: usize = 11;

/// Discrete solution of one load component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdSolution {
    /// Case with the solver's uniform grid substituted.
    pub case: ValidCase,
    pub component: Component,
    pub displacement: Vec<f64>,
    pub strain: Vec<f64>,
    pub stress: Vec<f64>,
    pub interface_shear: Vec<f64>,
}

impl FdSolution {
    pub fn x(&self) -> &[f64] {
        self.case.grid.coordinates()
    }

    pub fn spacing(&self) -> f64 {
        let x = self.x();
        x[1] - x[0]
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if n < MIN_NODES || n % 2 == 0 {
        return Err(Error::InvalidRequest(format!(
            "finite-difference node count must be odd and >= {MIN_NODES}, got {n}"
        )));
    }
    Ok(())
}

/// Solves the thermal or mechanical problem on `n` uniform nodes.
pub fn solve_fd(case: &ValidCase, component: Component, n: usize) -> Result<FdSolution> {
    check_nodes(n)?;
    let (free_strain, head_strain, head_spring) = match component {
        Component::Thermal => {
            let fs = case.material.thermal_expansion * case.load.temperature_change;
            (fs, fs, case.restraints.head_stiffness / case.material.elastic_modulus)
        }
        Component::Mechanical => (
            0.0,
            case.load.head_force / (case.section.area * case.material.elastic_modulus),
            0.0,
        ),
        Component::Combined => {
            return Err(Error::InvalidRequest(
                "the finite-difference solver handles thermal and mechanical parts separately".into(),
            ))
        }
    };

    let length = case.section.length;
    let grid = Grid::uniform(length, n)?;
    let case = case.with_grid(grid)?;
    let h = length / (n - 1) as f64;
    let s = &case.section;
    let m = &case.material;
    let r = &case.restraints;
    // Shaft equilibrium: A·E·u'' = p·k_s·u.
    let coeff = s.perimeter * r.shear_stiffness / (s.area * m.elastic_modulus);
    let d0 = 2.0 + coeff * h * h;

    let mut sub = vec![-1.0; n];
    let mut diag = vec![d0; n];
    let mut sup = vec![-1.0; n];
    let mut rhs = vec![0.0; n];

    match r.tip {
        TipCondition::EndBearing => {
            diag[0] = 1.0;
            sup[0] = 0.0;
        }
        TipCondition::FullyFloating => {
            // ghost: u[-1] = u[1] − 2h·u'(0), with u'(0) = free strain
            sup[0] = -2.0;
            rhs[0] = -2.0 * h * free_strain;
        }
    }
    // ghost: u[n] = u[n−2] + 2h·(head_strain − head_spring·u[n−1])
    sub[n - 1] = -2.0;
    diag[n - 1] = d0 + 2.0 * h * head_spring;
    rhs[n - 1] = 2.0 * h * head_strain;

    let u = tridiag::solve(&sub, &diag, &sup, &rhs)?;
    let strain = differentiate(&u, h);
    let stress = strain
        .iter()
        .map(|e| m.elastic_modulus * (e - free_strain))
        .collect();
    let interface_shear = u.iter().map(|v| r.shear_stiffness * v).collect();
    Ok(FdSolution {
        case,
        component,
        displacement: u,
        strain,
        stress,
        interface_shear,
    })
}

/// Second-order derivative on a uniform grid (one-sided three-point at the ends).
fn differentiate(u: &[f64], h: f64) -> Vec<f64> {
    let n = u.len();
    let mut d = vec![0.0; n];
    d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    for i in 1..n - 1 {
        d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
    }
    d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    d
}

/// Relative residual of global axial equilibrium,
/// `A·(σ(L) − σ(0)) − p·k_s·∫u dx`, scaled by the end forces or by
/// `p·k_s·∫|u| dx`, whichever is largest.
pub fn equilibrium_residual(sol: &FdSolution) -> f64 {
    let s = &sol.case.section;
    let ks = sol.case.restraints.shear_stiffness;
    let h = sol.spacing();
    let u = &sol.displacement;
    let n = u.len();
    let integral = h * (u.iter().sum::<f64>() - 0.5 * (u[0] + u[n - 1]));
    let head = s.area * sol.stress[n - 1];
    let tip = s.area * sol.stress[0];
    let shaft = s.perimeter * ks * integral;
    let abs_integral = h * (u.iter().map(|v| v.abs()).sum::<f64>() - 0.5 * (u[0].abs() + u[n - 1].abs()));
    let scale = head.abs().max(tip.abs()).max(s.perimeter * ks * abs_integral);
    if scale == 0.0 {
        return 0.0;
    }
    (head - tip - shaft).abs() / scale
}

/// Max-norm and RMS error of one field, both relative to `max|reference|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldError {
    pub max: f64,
    pub rms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorNorms {
    pub displacement: FieldError,
    pub strain: FieldError,
    pub stress: FieldError,
    pub interface_shear: FieldError,
}

impl ErrorNorms {
    /// Largest max-norm error over all fields.
    pub fn worst(&self) -> f64 {
        self.fields().iter().map(|(_, e)| e.max).fold(0.0, f64::max)
    }

    pub fn fields(&self) -> [(&'static str, FieldError); 4] {
        [
            ("u", self.displacement),
            ("eps", self.strain),
            ("sigma", self.stress),
            ("tau", self.interface_shear),
        ]
    }
}

fn field_error(reference: &[f64], fd: &[f64], stride: usize) -> FieldError {
    let scale = reference.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let denom = if scale > 0.0 { scale } else { 1.0 };
    let mut max = 0.0f64;
    let mut sq = 0.0;
    for (i, r) in reference.iter().enumerate() {
        let e = (fd[i * stride] - r).abs() / denom;
        max = max.max(e);
        sq += e * e;
    }
    FieldError {
        max,
        rms: (sq / reference.len() as f64).sqrt(),
    }
}

/// Compares a closed-form profile with a finite-difference solution at the
/// nodes they share. The solver grid must refine the profile grid by an
/// integer factor.
pub fn compare(analytic: &ResponseProfile, fd: &FdSolution) -> Result<ErrorNorms> {
    if analytic.component != fd.component {
        return Err(Error::CaseMismatch(format!(
            "component {} vs {}",
            analytic.component.as_str(),
            fd.component.as_str()
        )));
    }
    if !analytic.case.same_structure(&fd.case) {
        return Err(Error::CaseMismatch(
            "closed-form and finite-difference cases describe different piles".into(),
        ));
    }
    let la = analytic.component.active_load(analytic.case.load);
    let lf = fd.component.active_load(fd.case.load);
    if la != lf {
        return Err(Error::CaseMismatch("loads differ".into()));
    }
    let xa = analytic.x();
    let xf = fd.x();
    let (na, nf) = (xa.len(), xf.len());
    if nf < na || (nf - 1) % (na - 1) != 0 {
        return Err(Error::CaseMismatch(format!(
            "finite-difference grid ({nf} nodes) does not refine the profile grid ({na} nodes)"
        )));
    }
    let stride = (nf - 1) / (na - 1);
    let tol = 1e-12 * analytic.case.section.length;
    if xa.iter().enumerate().any(|(i, x)| (xf[i * stride] - x).abs() > tol) {
        return Err(Error::CaseMismatch("profile nodes are not shared with the solver grid".into()));
    }
    Ok(ErrorNorms {
        displacement: field_error(&analytic.displacement, &fd.displacement, stride),
        strain: field_error(&analytic.strain, &fd.strain, stride),
        stress: field_error(&analytic.stress, &fd.stress, stride),
        interface_shear: field_error(&analytic.interface_shear, &fd.interface_shear, stride),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub node_counts: Vec<usize>,
    /// Max-norm relative displacement error at each node count.
    pub error_norms: Vec<f64>,
    /// Order between each successive pair of grids.
    pub pairwise_orders: Vec<f64>,
    /// Order between the two finest grids.
    pub observed_order: f64,
}

/// Grid refinement study against the closed-form displacement.
pub fn convergence_study(
    case: &ValidCase,
    component: Component,
    node_counts: &[usize],
) -> Result<ConvergenceReport> {
    if node_counts.len() < 3 {
        return Err(Error::InvalidRequest(format!(
            "convergence study needs at least 3 node counts, got {}",
            node_counts.len()
        )));
    }
    for w in node_counts.windows(2) {
        let ratio = (w[1] - 1) as f64 / (w[0].max(2) - 1) as f64;
        if !(1.5..=2.5).contains(&ratio) {
            return Err(Error::InvalidRequest(format!(
                "node counts must roughly double ({} -> {})",
                w[0], w[1]
            )));
        }
    }
    let mut errors = Vec::with_capacity(node_counts.len());
    for &n in node_counts {
        let fd = solve_fd(case, component, n)?;
        let reference = match component {
            Component::Thermal => analytic::thermal_profile(&fd.case),
            _ => analytic::mechanical_profile(&fd.case),
        };
        errors.push(compare(&reference, &fd)?.displacement.max);
    }
    let pairwise_orders: Vec<f64> = node_counts
        .windows(2)
        .zip(errors.windows(2))
        .map(|(n, e)| {
            let h_ratio = (n[1] - 1) as f64 / (n[0] - 1) as f64;
            (e[0] / e[1]).ln() / h_ratio.ln()
        })
        .collect();
    let observed_order = *pairwise_orders.last().unwrap();
    Ok(ConvergenceReport {
        node_counts: node_counts.to_vec(),
        error_norms: errors,
        pairwise_orders,
        observed_order,
    })
}
