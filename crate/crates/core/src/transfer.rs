//! Cole-Cole transfer function `Z(v) = Z0 / (1 + (i v / vc)^(1/d))`, its
//! circular-arc locus, the pinned phase angle, and the four classes of
//! hyperbolic distances built from natural numbers.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{cpow_principal, ComplexValue};

/// Amplitude `z0`, characteristic frequency `vc` and order parameter `d`
/// (the fractional exponent is `1/d`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColeColeParams {
    z0: f64,
    vc: f64,
    d: f64,
}

impl ColeColeParams {
    pub fn new(z0: f64, vc: f64, d: f64) -> Result<Self> {
        if !(z0 > 0.0 && z0.is_finite()) {
            return Err(Error::domain(format!("z0 must be > 0, got {z0}")));
        }
        if !(vc > 0.0 && vc.is_finite()) {
            return Err(Error::domain(format!("vc must be > 0, got {vc}")));
        }
        if !(d >= 1.0 && d.is_finite()) {
            return Err(Error::domain(format!("d must be ≥ 1, got {d}")));
        }
        Ok(Self { z0, vc, d })
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn vc(&self) -> f64 {
        self.vc
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// The fractional order `1/d`.
    pub fn order(&self) -> f64 {
        1.0 / self.d
    }
}

/// Circle carrying the Cole-Cole arc between its endpoints `0` and `z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcGeometry {
    pub center: ComplexValue,
    pub radius: f64,
    /// Length of the arc's string on the real axis.
    pub chord: f64,
    /// Pinned phase angle, radians.
    pub depression_angle: f64,
}

/// Horizontal (`*_h`) and vertical (`*_v`) hyperbolic distances of index `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceQuad {
    /// `n^(1/d)`
    pub left_h: f64,
    /// `n^(-1/d)`
    pub right_h: f64,
    /// `n^(1/D)`
    pub right_v: f64,
    /// `n^(-1/D)`
    pub left_v: f64,
}

/// `Z(v)` for angular frequency `v >= 0`. Returns `z0` exactly at `v = 0`.
pub fn evaluate(params: &ColeColeParams, v: f64) -> Result<ComplexValue> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::domain(format!("frequency must be ≥ 0, got {v}")));
    }
    if v == 0.0 {
        return Ok(ComplexValue::new(params.z0, 0.0));
    }
    let fractional = cpow_principal(
        ComplexValue::new(0.0, v / params.vc),
        ComplexValue::new(params.order(), 0.0),
    )?;
    Ok(params.z0 / (1.0 + fractional))
}

/// Evaluates `Z` over a frequency sweep; output order follows `frequencies`.
pub fn evaluate_sweep(params: &ColeColeParams, frequencies: &[f64]) -> Result<Vec<ComplexValue>> {
    frequencies.par_iter().map(|&v| evaluate(params, v)).collect()
}

/// `n` frequencies from `vmin` to `vmax` inclusive, linearly or
/// logarithmically spaced.
pub fn frequency_grid(vmin: f64, vmax: f64, points: usize, log_spacing: bool) -> Result<Vec<f64>> {
    if !(vmin < vmax) || !vmin.is_finite() || !vmax.is_finite() {
        return Err(Error::domain(format!("need vmin < vmax, got [{vmin}, {vmax}]")));
    }
    if vmin < 0.0 {
        return Err(Error::domain(format!("vmin must be ≥ 0, got {vmin}")));
    }
    if points < 2 {
        return Err(Error::domain(format!("points must be ≥ 2, got {points}")));
    }
    if log_spacing && vmin <= 0.0 {
        return Err(Error::domain("log spacing needs vmin > 0"));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / last;
            if i == points - 1 {
                vmax
            } else if log_spacing {
                (vmin.ln() + f * (vmax.ln() - vmin.ln())).exp()
            } else {
                vmin + f * (vmax - vmin)
            }
        })
        .collect())
}

/// Pinned phase angle `(pi/2)(1 - 1/d)`.
pub fn phase_pinning(d: f64) -> Result<f64> {
    if !(d >= 1.0) || !d.is_finite() {
        return Err(Error::domain(format!("d must be ≥ 1, got {d}")));
    }
    Ok(FRAC_PI_2 * (1.0 - 1.0 / d))
}

/// Support circle of the arc.
///
/// The arc bulges below the real axis, so its center sits above it at
/// `(z0/2)(1 + i cot(pi/(2d)))`, with radius `(z0/2) / sin(pi/(2d))`.
pub fn arc_geometry(params: &ColeColeParams) -> Result<ArcGeometry> {
    let half_angle = FRAC_PI_2 / params.d;
    let half = 0.5 * params.z0;
    let lift = if params.d == 1.0 {
        0.0
    } else {
        half * half_angle.cos() / half_angle.sin()
    };
    Ok(ArcGeometry {
        center: ComplexValue::new(half, lift),
        radius: half / half_angle.sin(),
        chord: params.z0,
        depression_angle: phase_pinning(params.d)?,
    })
}

/// `(v/vc)^(1/d)`.
pub fn hyperbolic_distance(v: f64, vc: f64, d: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("v must be > 0, got {v}")));
    }
    if !(vc > 0.0) {
        return Err(Error::domain(format!("vc must be > 0, got {vc}")));
    }
    if !(d >= 1.0) {
        return Err(Error::domain(format!("d must be ≥ 1, got {d}")));
    }
    Ok((v / vc).powf(1.0 / d))
}

/// Conjugate exponent `D = d / (d - 1)`, so that `1/D = 1 - 1/d`.
pub fn conjugate_exponent(d: f64) -> Result<f64> {
    if !(d > 1.0) || !d.is_finite() {
        return Err(Error::domain(format!(
            "conjugate exponent needs d > 1, got {d}"
        )));
    }
    Ok(d / (d - 1.0))
}

pub fn distance_classes(n: u64, d: f64) -> Result<DistanceQuad> {
    if n == 0 {
        return Err(Error::domain("n must be ≥ 1"));
    }
    let big_d = conjugate_exponent(d)?;
    let n = n as f64;
    let h = n.powf(1.0 / d);
    let v = n.powf(1.0 / big_d);
    Ok(DistanceQuad {
        left_h: h,
        right_h: 1.0 / h,
        right_v: v,
        left_v: 1.0 / v,
    })
}
