//! Grünwald-Letnikov fractional differintegration and an implicit solver for
//! the fractional relaxation equation
//! `(1/vc)^a D^a U(t) = z0 I(t) - U(t)` with `a = 1/d`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numeric::ComplexValue;
use crate::transfer::ColeColeParams;

/// Largest drive accepted by [`solve_relaxation`]; the full-memory
/// convolution costs O(n^2).
pub const MAX_SOLVER_SAMPLES: usize = 100_000;

/// Time step used by [`frequency_response_empirical`].
pub const DEFAULT_STEP: f64 = 1e-3;

/// Fractional order in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!(
                "fractional order must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    /// Order `1/d` of a Cole-Cole parameter set.
    pub fn from_params(params: &ColeColeParams) -> Self {
        Self(params.order())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Uniformly sampled real signal, `values[k]` at `t = k h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    h: f64,
    values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain(format!("time step must be > 0, got {h}")));
        }
        if values.is_empty() {
            return Err(Error::domain("signal needs at least one sample"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("sample {i} is not finite")));
        }
        Ok(Self { h, values })
    }

    /// Samples `f(k h)` for `k = 0..len`.
    pub fn from_fn(h: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(h, (0..len).map(|k| f(k as f64 * h)).collect())
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    /// Index of the sample closest to time `t`.
    pub fn index_at(&self, t: f64) -> usize {
        ((t / self.h).round().max(0.0) as usize).min(self.values.len() - 1)
    }
}

/// Time step and length of a simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub h: f64,
    pub steps: usize,
}

impl SolverConfig {
    pub fn new(h: f64, steps: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Config(format!("time step must be > 0, got {h}")));
        }
        if steps == 0 || steps > MAX_SOLVER_SAMPLES {
            return Err(Error::Config(format!(
                "steps must lie in 1..={MAX_SOLVER_SAMPLES}, got {steps}"
            )));
        }
        Ok(Self { h, steps })
    }

    /// Step drive `I = 1` sampled on this configuration.
    pub fn step_drive(&self) -> SampledSignal {
        SampledSignal {
            h: self.h,
            values: vec![1.0; self.steps],
        }
    }

    /// Sinusoidal drive `I = sin(v t)`.
    pub fn sine_drive(&self, v: f64) -> SampledSignal {
        SampledSignal {
            h: self.h,
            values: (0..self.steps).map(|k| (v * k as f64 * self.h).sin()).collect(),
        }
    }
}

/// Grünwald-Letnikov weights `w_k = (-1)^k binom(alpha, k)`, via
/// `w_k = w_{k-1} (1 - (alpha + 1)/k)`.
pub fn gl_weights(alpha: FracOrder, count: usize) -> Vec<f64> {
    let a = alpha.0;
    let mut w = Vec::with_capacity(count);
    let mut current = 1.0;
    for k in 0..count {
        if k > 0 {
            current *= 1.0 - (a + 1.0) / k as f64;
        }
        w.push(current);
    }
    w
}

/// `g_n = h^-alpha sum_{k=0}^{n} w_k f_{n-k}`, lower terminal at `t = 0`
/// with zero history before it.
pub fn gl_differintegral(f: &SampledSignal, alpha: FracOrder) -> Result<SampledSignal> {
    if f.len() < 2 {
        return Err(Error::domain("differintegral needs at least two samples"));
    }
    let w = gl_weights(alpha, f.len());
    let scale = f.h.powf(-alpha.0);
    let values = (0..f.len())
        .map(|n| {
            let acc: f64 = w[..=n]
                .iter()
                .zip(f.values[..=n].iter().rev())
                .map(|(wk, fv)| wk * fv)
                .sum();
            scale * acc
        })
        .collect();
    Ok(SampledSignal { h: f.h, values })
}

/// Solves the relaxation equation for `U` driven by `I = drive`, from `U(0) = 0`.
///
/// Implicit Grünwald-Letnikov step with full memory:
/// `U_n = (z0 I_n - c sum_{k=1}^{n} w_k U_{n-k}) / (1 + c)`, `c = (vc h)^-alpha`.
pub fn solve_relaxation(params: &ColeColeParams, drive: &SampledSignal) -> Result<SampledSignal> {
    let n = drive.len();
    if n > MAX_SOLVER_SAMPLES {
        return Err(Error::Config(format!(
            "drive has {n} samples; the solver accepts at most {MAX_SOLVER_SAMPLES}"
        )));
    }
    let alpha = FracOrder::from_params(params);
    let w = gl_weights(alpha, n);
    let c = (params.vc() * drive.h).powf(-alpha.0);
    let mut u = vec![0.0; n];
    for i in 1..n {
        let memory: f64 = w[1..=i]
            .iter()
            .zip(u[..i].iter().rev())
            .map(|(wk, uv)| wk * uv)
            .sum();
        u[i] = (params.z0() * drive.values[i] - c * memory) / (1.0 + c);
    }
    Ok(SampledSignal { h: drive.h, values: u })
}

/// Least-squares fit of `y ~ a sin(v t) + b cos(v t) + offset` over samples
/// `start..` of `signal`; returns the complex amplitude `a + i b`, i.e.
/// `A e^{i phi}` for `A sin(v t + phi)`.
pub fn fit_sinusoid(signal: &SampledSignal, v: f64, start: usize) -> Result<ComplexValue> {
    if signal.len() < start + 3 {
        return Err(Error::Config("too few samples for a sinusoid fit".into()));
    }
    // normal equations for basis (sin, cos, 1)
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (k, &y) in signal.values.iter().enumerate().skip(start) {
        let (s, c) = (v * signal.time(k)).sin_cos();
        let basis = [s, c, 1.0];
        for i in 0..3 {
            rhs[i] += basis[i] * y;
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
        }
    }
    let x = solve3(m, rhs)
        .ok_or_else(|| Error::Config("sinusoid fit is degenerate; sample a full cycle".into()))?;
    Ok(ComplexValue::new(x[0], x[1]))
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / m[row][row];
    }
    let scale = m.iter().map(|r| r.iter().fold(0.0f64, |a, v| a.max(v.abs()))).fold(0.0, f64::max);
    if (0..3).any(|i| m[i][i].abs() <= 1e-12 * scale) {
        return None;
    }
    Some(x)
}

/// Complex gain `U/I` (normalized by `z0`) measured from a time-domain
/// simulation driven by `sin(v t)`, with the default step of 1 ms.
pub fn frequency_response_empirical(params: &ColeColeParams, v: f64, cycles: u32) -> Result<ComplexValue> {
    frequency_response_with_step(params, v, cycles, DEFAULT_STEP)
}

/// [`frequency_response_empirical`] with an explicit time step. The first
/// `cycles - 2` periods are discarded as transient; the fit uses the last two.
pub fn frequency_response_with_step(
    params: &ColeColeParams,
    v: f64,
    cycles: u32,
    h: f64,
) -> Result<ComplexValue> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::domain(format!("drive frequency must be > 0, got {v}")));
    }
    if cycles < 10 {
        return Err(Error::domain(format!("need at least 10 cycles, got {cycles}")));
    }
    let period = TAU / v;
    let samples = (cycles as f64 * period / h).ceil() as usize + 1;
    if samples > MAX_SOLVER_SAMPLES {
        return Err(Error::Config(format!(
            "{cycles} cycles at v = {v} need {samples} samples of h = {h}; \
             limit is {MAX_SOLVER_SAMPLES}"
        )));
    }
    let cfg = SolverConfig::new(h, samples)?;
    let response = solve_relaxation(params, &cfg.sine_drive(v))?;
    let fit_start = ((cycles - 2) as f64 * period / h).ceil() as usize;
    Ok(fit_sinusoid(&response, v, fit_start)? / params.z0())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    #[test]
    fn first_difference_weights() {
        assert_eq!(gl_weights(order(1.0), 4), vec![1.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn half_order_weights_match_binomials() {
        // (-1)^k binom(1/2, k) from Gamma ratios:
        // binom(a, k) = Gamma(a+1) / (Gamma(k+1) Gamma(a-k+1))
        let a: f64 = 0.5;
        let gamma = |x: f64| crate::numeric::log_gamma(ComplexValue::new(x, 0.0)).unwrap().exp().re;
        let oracle: Vec<f64> = (0..5)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * gamma(a + 1.0) / (gamma(kf + 1.0) * gamma(a - kf + 1.0))
            })
            .collect();
        let w = gl_weights(order(a), 5);
        for (got, want) in w.iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        let frozen = [1.0, -0.5, -0.125, -0.0625, -0.0390625];
        assert_eq!(w, frozen);
    }

    #[test]
    fn vanishing_order_is_identity() {
        let w = gl_weights(order(1e-12), 3);
        assert_eq!(w[0], 1.0);
        assert!(w[1].abs() < 1e-11 && w[2].abs() < 1e-11);
    }

    #[test]
    fn order_bounds() {
        assert!(FracOrder::new(0.0).is_err());
        assert!(FracOrder::new(1.0001).is_err());
        assert!(FracOrder::new(1.0).is_ok());
    }

    #[test]
    fn ramp_first_difference() {
        let h = 0.01;
        let f = SampledSignal::from_fn(h, 200, |t| t).unwrap();
        let g = gl_differintegral(&f, order(1.0)).unwrap();
        for &v in &g.values()[1..] {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn differintegral_needs_two_samples() {
        let f = SampledSignal::new(0.1, vec![1.0]).unwrap();
        assert!(gl_differintegral(&f, order(0.5)).is_err());
    }

    #[test]
    fn signal_validation() {
        assert!(SampledSignal::new(0.0, vec![1.0]).is_err());
        assert!(SampledSignal::new(1.0, vec![]).is_err());
        assert!(SampledSignal::new(1.0, vec![f64::NAN]).is_err());
    }

    #[test]
    fn solver_guard() {
        let p = ColeColeParams::new(1.0, 1.0, 1.0).unwrap();
        let drive = SampledSignal::new(1e-3, vec![1.0; MAX_SOLVER_SAMPLES + 1]).unwrap();
        assert!(matches!(solve_relaxation(&p, &drive), Err(Error::Config(_))));
        assert!(SolverConfig::new(1e-3, 200_000).is_err());
    }

    #[test]
    fn step_response_first_order() {
        let p = ColeColeParams::new(1.0, 1.0, 1.0).unwrap();
        let cfg = SolverConfig::new(1e-3, 5001).unwrap();
        let u = solve_relaxation(&p, &cfg.step_drive()).unwrap();
        let max_err = u
            .values()
            .iter()
            .enumerate()
            .map(|(k, &v)| (v - (1.0 - (-u.time(k)).exp())).abs())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-2, "{max_err}");
    }

    #[test]
    fn sinusoid_fit_recovers_amplitude_and_phase() {
        let v = 3.0;
        let s = SampledSignal::from_fn(1e-3, 5000, |t| 0.7 * (v * t - 0.4).sin() + 0.2).unwrap();
        let g = fit_sinusoid(&s, v, 1000).unwrap();
        assert!((g.norm() - 0.7).abs() < 1e-10);
        assert!((g.arg() + 0.4).abs() < 1e-10);
    }

    #[test]
    fn response_needs_ten_cycles() {
        let p = ColeColeParams::new(1.0, 1.0, 2.0).unwrap();
        assert!(frequency_response_empirical(&p, 1.0, 9).is_err());
    }
}
