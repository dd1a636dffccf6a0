//! Ratios of hyperbolic functions that stay finite for large arguments.
//!
//! All closed-form fields are built from `sinh(b)/cosh(a)`, `cosh(b)/cosh(a)`,
//! `sinh(b)/sinh(a)` and `cosh(b)/sinh(a)` with `0 <= |b| <= a`. Below
//! [`SCALED_THRESHOLD`] they are evaluated directly; above it the common
//! factor `e^a` is cancelled analytically so nothing overflows before
//! `cosh` itself would (near 710).

/// Largest argument for which the direct quotient is used.
pub const SCALED_THRESHOLD: f64 = 30.0;

#[inline]
fn scaled(a: f64, b: f64) -> bool {
    a.abs().max(b.abs()) > SCALED_THRESHOLD
}

/// `1 - e^{-2t}` for `t >= 0`, accurate near zero.
#[inline]
fn one_minus_exp_neg2(t: f64) -> f64 {
    -(-2.0 * t).exp_m1()
}

/// `sinh(b) / cosh(a)`.
pub fn sinh_over_cosh(b: f64, a: f64) -> f64 {
    if !scaled(a, b) {
        return b.sinh() / a.cosh();
    }
    let bb = b.abs();
    let v = (bb - a).exp() * one_minus_exp_neg2(bb) / (1.0 + (-2.0 * a).exp());
    v.copysign(b)
}

/// `cosh(b) / cosh(a)`.
pub fn cosh_over_cosh(b: f64, a: f64) -> f64 {
    if !scaled(a, b) {
        return b.cosh() / a.cosh();
    }
    let bb = b.abs();
    (bb - a).exp() * (1.0 + (-2.0 * bb).exp()) / (1.0 + (-2.0 * a).exp())
}

/// `sinh(b) / sinh(a)`, `a > 0`.
pub fn sinh_over_sinh(b: f64, a: f64) -> f64 {
    if !scaled(a, b) {
        return b.sinh() / a.sinh();
    }
    let bb = b.abs();
    let v = (bb - a).exp() * one_minus_exp_neg2(bb) / one_minus_exp_neg2(a);
    v.copysign(b)
}

/// `cosh(b) / sinh(a)`, `a > 0`.
pub fn cosh_over_sinh(b: f64, a: f64) -> f64 {
    if !scaled(a, b) {
        return b.cosh() / a.sinh();
    }
    let bb = b.abs();
    (bb - a).exp() * (1.0 + (-2.0 * bb).exp()) / one_minus_exp_neg2(a)
}
