use std::f64::consts::PI;

use super::*;
use crate::model::{validate_case, CaseDefinition, Grid, PileMaterial, PileSection, RestraintSet};

const KH_LOW: f64 = 0.125e9;
const KH_HIGH: f64 = 2e9;

fn case(tip: TipCondition, kh: f64, f: f64, dt: f64) -> ValidCase {
    validate_case(CaseDefinition {
        section: PileSection::circular(1.0, 26.0).unwrap(),
        material: PileMaterial {
            elastic_modulus: 29.2e9,
            thermal_expansion: 1e-5,
        },
        restraints: RestraintSet {
            shear_stiffness: 0.0167e9,
            head_stiffness: kh,
            tip,
        },
        load: LoadCase::new(f, dt),
        grid: Grid::uniform(26.0, 1001).unwrap(),
    })
    .unwrap()
}

/// The printed closed forms evaluated naively (no ratio rewriting, printed
/// fully floating denominators, atanh null point). Fine for small ψL.
fn printed(case: &ValidCase, x: f64) -> (FieldValues, FieldValues) {
    let e = case.material.elastic_modulus;
    let al = case.material.thermal_expansion;
    let a = case.section.area;
    let l = case.section.length;
    let kh = case.restraints.head_stiffness;
    let f = case.load.head_force;
    let dt = case.load.temperature_change;
    let p = (case.section.perimeter / a * case.restraints.shear_stiffness / e).sqrt();
    match case.restraints.tip {
        TipCondition::EndBearing => {
            let d = p * (p * l).cosh() + kh / e * (p * l).sinh();
            let th_u = al * dt * (p * x).sinh() / d;
            let th_e = al * dt * (p * x).cosh() / ((p * l).cosh() + kh / (e * p) * (p * l).sinh());
            let th_s = e * al * dt * ((p * x).cosh() / ((p * l).cosh() + kh / (e * p) * (p * l).sinh()) - 1.0);
            let m_u = f * (p * x).sinh() / (a * e * p * (p * l).cosh());
            let m_e = f * (p * x).cosh() / (a * e * (p * l).cosh());
            let m_s = f * (p * x).cosh() / (a * (p * l).cosh());
            (
                FieldValues { displacement: th_u, strain: th_e, stress: th_s },
                FieldValues { displacement: m_u, strain: m_e, stress: m_s },
            )
        }
        TipCondition::FullyFloating => {
            let k = kh / (e * p);
            let pl = p * l;
            let x0 = ((pl.cosh() - 1.0 + k * pl.sinh()) / (pl.sinh() + k * pl.cosh())).atanh() / p;
            let r = p * (l - x0);
            let th_u = al * dt * (p * (x - x0)).sinh() / (p * r.cosh() + kh / e * r.sinh());
            let th_e = al * dt * (p * (x - x0)).cosh() / (r.cosh() + k * r.sinh());
            let th_s = e * al * dt * ((p * (x - x0)).cosh() / (r.cosh() + k * r.sinh()) - 1.0);
            let m_u = f * (p * x).cosh() / (a * e * p * pl.sinh());
            let m_e = f * (p * x).sinh() / (a * e * pl.sinh());
            let m_s = f * (p * x).sinh() / (a * pl.sinh());
            (
                FieldValues { displacement: th_u, strain: th_e, stress: th_s },
                FieldValues { displacement: m_u, strain: m_e, stress: m_s },
            )
        }
    }
}

fn close(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * scale.max(f64::MIN_POSITIVE)
}

#[test]
fn psi_of_canonical_pile() {
    let c = case(TipCondition::EndBearing, 0.0, 0.0, 0.0);
    let psi = compute_psi(&c.section, &c.material, &c.restraints);
    // By hand: p/A = 4 /m, k_s/E = 0.0167/29.2 → ψ² = 2.28767e-3 /m².
    assert!((psi - 0.04783).abs() < 5e-6);
    assert!((psi * 26.0 - 1.2436).abs() < 5e-5);
}

#[test]
fn psi_scaling() {
    let c = case(TipCondition::EndBearing, 0.0, 0.0, 0.0);
    let base = compute_psi(&c.section, &c.material, &c.restraints);
    let mut r = c.restraints;
    r.shear_stiffness *= 4.0;
    assert!((compute_psi(&c.section, &c.material, &r) / base - 2.0).abs() < 1e-15);

    let mut s = c.section;
    s.perimeter /= 2.0;
    let mut r = c.restraints;
    r.shear_stiffness *= 2.0;
    assert!((compute_psi(&s, &c.material, &r) / base - 1.0).abs() < 1e-15);
}

#[test]
fn equivalent_thermal_load_of_one_meganewton() {
    let c = case(TipCondition::EndBearing, 0.0, 0.0, 0.0);
    let eq = equivalent_thermal_load(-1e6, &c.section, &c.material);
    assert!((eq.magnitude - 4.36).abs() < 0.01);
    assert!((10.0 / eq.magnitude - 2.29).abs() < 0.01);
    assert!(eq.scenario_i < 0.0 && eq.scenario_ii > 0.0);
    assert_eq!(eq.scenario_i, -eq.scenario_ii);
    let zero = equivalent_thermal_load(0.0, &c.section, &c.material);
    assert_eq!(zero.magnitude, 0.0);
}

#[test]
fn implementation_matches_printed_formulas() {
    for tip in [TipCondition::EndBearing, TipCondition::FullyFloating] {
        for kh in [0.0, KH_LOW, KH_HIGH] {
            for (f, dt) in [(-1e6, -10.0), (-1e6, 10.0), (2.5e5, 3.0)] {
                let c = case(tip, kh, f, dt);
                let th = thermal_profile(&c);
                let me = mechanical_profile(&c);
                let scale = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                for (i, &x) in c.grid.coordinates().iter().enumerate().step_by(50) {
                    let (pt, pm) = printed(&c, x);
                    assert!(close(th.displacement[i], pt.displacement, 1e-12, scale(&th.displacement)));
                    assert!(close(th.strain[i], pt.strain, 1e-12, scale(&th.strain)));
                    assert!(close(th.stress[i], pt.stress, 1e-10, scale(&th.stress)));
                    assert!(close(me.displacement[i], pm.displacement, 1e-12, scale(&me.displacement)));
                    assert!(close(me.strain[i], pm.strain, 1e-12, scale(&me.strain)));
                    assert!(close(me.stress[i], pm.stress, 1e-12, scale(&me.stress)));
                }
            }
        }
    }
}

#[test]
fn end_bearing_thermal_without_head_spring() {
    let c = case(TipCondition::EndBearing, 0.0, 0.0, -10.0);
    let p = thermal_profile(&c);
    assert_eq!(p.tip().displacement, 0.0);
    assert_eq!(p.head().stress, 0.0);
    // αΔT·tanh(ψL)/ψ
    let psi = c.psi();
    let expected = 1e-5 * -10.0 * (psi * 26.0).tanh() / psi;
    assert!((p.head().displacement - expected).abs() < 1e-15);
    assert!((p.head().displacement * 1e3 + 1.77).abs() < 0.005);
}

#[test]
fn fully_floating_thermal_null_point_at_mid_length() {
    let c = case(TipCondition::FullyFloating, 0.0, -1e6, -10.0);
    assert_eq!(null_point(&c), 13.0);
    let p = thermal_profile(&c);
    assert_eq!(p.displacement[500], 0.0);
}

#[test]
fn null_point_with_head_spring_matches_atanh_form() {
    let c = case(TipCondition::FullyFloating, KH_LOW, 0.0, 10.0);
    let x0 = null_point(&c);
    let e = 29.2e9;
    let psi = c.psi();
    let k = KH_LOW / (e * psi);
    let pl = psi * 26.0;
    let direct = ((pl.cosh() - 1.0 + k * pl.sinh()) / (pl.sinh() + k * pl.cosh())).atanh() / psi;
    assert!((x0 - direct).abs() < 1e-10 * 26.0);
    assert!((x0 - 13.86).abs() < 0.01);
    for kh in [0.0, KH_LOW, KH_HIGH] {
        assert_eq!(null_point(&case(TipCondition::EndBearing, kh, 0.0, 10.0)), 0.0);
    }
}

#[test]
fn null_point_identity_holds() {
    for kh in [0.0, KH_LOW, KH_HIGH, 50e9] {
        let c = case(TipCondition::FullyFloating, kh, 0.0, 10.0);
        let psi = c.psi();
        let x0 = null_point(&c);
        let k = kh / (29.2e9 * psi);
        let lhs = (psi * x0).cosh();
        let rhs = (psi * (26.0 - x0)).cosh() + k * (psi * (26.0 - x0)).sinh();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs, "kh={kh}");
        assert!((0.0..=26.0).contains(&x0));
    }
}

#[test]
fn mechanical_boundary_values() {
    for kh in [0.0, KH_LOW, KH_HIGH] {
        let c = case(TipCondition::EndBearing, kh, -1e6, 0.0);
        let p = mechanical_profile(&c);
        let fa = -1e6 / (PI / 4.0);
        assert!((p.head().stress - fa).abs() < 1e-12 * fa.abs());
        assert!((p.head().stress / 1e6 + 1.273).abs() < 5e-4);
        let psi = c.psi();
        let u = -1e6 * (psi * 26.0).tanh() / (PI / 4.0 * 29.2e9 * psi);
        assert!((p.head().displacement - u).abs() < 1e-12 * u.abs());
        assert!((p.head().displacement * 1e3 + 0.77).abs() < 0.005);
    }
    let ff = mechanical_profile(&case(TipCondition::FullyFloating, 0.0, -1e6, 0.0));
    assert_eq!(ff.tip().stress, 0.0);
}

#[test]
fn superposition_identities() {
    let c = case(TipCondition::FullyFloating, KH_LOW, -1e6, -10.0);
    let th = thermal_profile(&c);
    let zero_mech = mechanical_profile(&c.with_load(LoadCase::new(0.0, -10.0)).unwrap());
    let s = superpose(&th, &zero_mech).unwrap();
    assert_eq!(s.displacement, th.displacement);
    assert_eq!(s.stress, th.stress);
    assert_eq!(s.component, Component::Combined);

    let neg = thermal_profile(&c.with_load(LoadCase::new(1e6, 10.0)).unwrap());
    let z = superpose(&th, &neg).unwrap();
    assert!(z.displacement.iter().chain(&z.strain).chain(&z.stress).all(|v| *v == 0.0));
    assert_eq!(z.case.load, LoadCase::new(0.0, 0.0));
}

#[test]
fn superpose_rejects_mismatched_cases() {
    let a = thermal_profile(&case(TipCondition::EndBearing, 0.0, -1e6, -10.0));
    let b = mechanical_profile(&case(TipCondition::EndBearing, KH_LOW, -1e6, -10.0));
    assert!(matches!(superpose(&a, &b), Err(Error::CaseMismatch(_))));
    let c = case(TipCondition::EndBearing, 0.0, -1e6, -10.0);
    let coarse = mechanical_profile(&c.with_grid(Grid::uniform(26.0, 11).unwrap()).unwrap());
    assert!(matches!(superpose(&a, &coarse), Err(Error::CaseMismatch(_))));
}

#[test]
fn interface_shear_is_linear_in_displacement() {
    let c = case(TipCondition::FullyFloating, 0.0, 0.0, 10.0);
    let p = thermal_profile(&c);
    for (t, u) in p.interface_shear.iter().zip(&p.displacement) {
        assert_eq!(*t, 0.0167e9 * u);
    }
    // antisymmetric about mid-length
    let n = p.len();
    let scale = p.interface_shear.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    for i in 0..n {
        assert!((p.interface_shear[i] + p.interface_shear[n - 1 - i]).abs() < 1e-12 * scale);
    }
    let zero = thermal_profile(&c.with_load(LoadCase::default()).unwrap());
    assert!(interface_shear(&zero).iter().all(|t| *t == 0.0));

    let mut doubled = p.clone();
    doubled.case = {
        let mut d = c.clone().into_inner();
        d.restraints.shear_stiffness *= 2.0;
        validate_case(d).unwrap()
    };
    for (t2, t1) in interface_shear(&doubled).iter().zip(&p.interface_shear) {
        assert_eq!(*t2, 2.0 * t1);
    }
}

#[test]
fn tension_zone_scenarios() {
    for tip in [TipCondition::EndBearing, TipCondition::FullyFloating] {
        for kh in [0.0, KH_LOW, KH_HIGH] {
            let s = solve(&case(tip, kh, -1e6, 10.0)).unwrap();
            assert!(tension_zone(&s.combined).unwrap().is_none());
        }
        let s = solve(&case(tip, 0.0, -1e6, 0.0)).unwrap();
        assert!(tension_zone(&s.combined).unwrap().is_none());
    }
    let eb = solve(&case(TipCondition::EndBearing, 0.0, -1e6, -10.0)).unwrap();
    let ff = solve(&case(TipCondition::FullyFloating, 0.0, -1e6, -10.0)).unwrap();
    let zeb = eb.summary.tension_zone.unwrap();
    let zff = ff.summary.tension_zone.unwrap();
    assert!(zeb.length() > zff.length());
    assert_eq!(zeb.lower, 0.0);
    assert!(zff.lower <= ZONE_TOLERANCE * 26.0);
    // bisection ends on a root of the closed-form stress
    let s_at = evaluate(&eb.combined.case, Component::Combined, zeb.upper).stress;
    assert!(s_at.abs() < 1.0, "{s_at}");
}

#[test]
fn two_separate_tension_regions_are_flagged() {
    let c = case(TipCondition::EndBearing, 0.0, 0.0, 0.0);
    let mut p = thermal_profile(&c);
    let n = p.len();
    p.stress = (0..n).map(|i| if i % 300 < 100 { 1.0 } else { -1.0 }).collect();
    assert!(matches!(tension_zone(&p), Err(Error::MultipleZones { .. })));
}

#[test]
fn summary_endpoints() {
    let s = solve(&case(TipCondition::EndBearing, 0.0, -1e6, -10.0)).unwrap();
    assert!((s.summary.psi_l - 1.2436).abs() < 5e-5);
    assert_eq!(s.summary.tip_displacement, 0.0);
    assert!((s.summary.equivalent_dt.magnitude - 4.36).abs() < 0.01);
    assert!(s.summary.max_tensile_stress > 0.0);
    assert_eq!(s.summary.null_point, 0.0);
}

#[test]
fn summarize_rejects_mixed_cases() {
    let a = solve(&case(TipCondition::EndBearing, 0.0, -1e6, -10.0)).unwrap();
    let b = solve(&case(TipCondition::EndBearing, KH_LOW, -1e6, -10.0)).unwrap();
    assert!(matches!(
        summarize(&a.thermal, &b.mechanical, &a.combined),
        Err(Error::CaseMismatch(_))
    ));
    assert!(matches!(
        summarize(&a.mechanical, &a.thermal, &a.combined),
        Err(Error::CaseMismatch(_))
    ));
}

#[test]
fn large_psi_l_stays_finite() {
    let mut def = case(TipCondition::FullyFloating, KH_HIGH, -1e6, 10.0).into_inner();
    def.restraints.shear_stiffness = 0.0167e9 * 2.5e5; // ψL ≈ 620
    let c = validate_case(def).unwrap();
    assert!(c.psi() * 26.0 > 600.0);
    for tip in [TipCondition::EndBearing, TipCondition::FullyFloating] {
        let mut d = c.clone().into_inner();
        d.restraints.tip = tip;
        let s = solve(&validate_case(d).unwrap()).unwrap();
        for v in s.combined.displacement.iter().chain(&s.combined.stress) {
            assert!(v.is_finite());
        }
        let fa = -1e6 / (PI / 4.0);
        assert!((s.mechanical.head().stress - fa).abs() < 1e-12 * fa.abs());
    }
}
