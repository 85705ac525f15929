//! Shared numerical kernels: principal-branch complex powers, complex
//! log-gamma and accelerated summation of alternating series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number in binary64. Every complex quantity of the toolkit
/// (transfer values, eta, zeta, prime products) is carried by this type.
pub type ComplexValue = Complex64;

/// Absolute tolerance and term budget for iterative summations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    abs_tol: f64,
    max_terms: u64,
}

impl ToleranceConfig {
    pub const MIN_ABS_TOL: f64 = 1e-15;
    pub const MAX_TERMS: u64 = 100_000_000;

    pub fn new(abs_tol: f64, max_terms: u64) -> Result<Self> {
        if !(abs_tol >= Self::MIN_ABS_TOL) || !abs_tol.is_finite() {
            return Err(Error::domain(format!(
                "abs_tol must be a finite value >= {:e}, got {abs_tol}",
                Self::MIN_ABS_TOL
            )));
        }
        if max_terms == 0 || max_terms > Self::MAX_TERMS {
            return Err(Error::domain(format!(
                "max_terms must lie in 1..={}, got {max_terms}",
                Self::MAX_TERMS
            )));
        }
        Ok(Self { abs_tol, max_terms })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            max_terms: 1_000_000,
        }
    }
}

/// `base^exponent` on the principal branch, `exp(exponent * Log(base))` with
/// `arg(base)` in `(-pi, pi]`.
///
/// Positive real bases take a separate path (`r^a * e^{i b ln r}`) so that
/// real powers match `f64::powf` and purely imaginary exponents land exactly
/// on the unit circle.
pub fn cpow_principal(base: ComplexValue, exponent: ComplexValue) -> Result<ComplexValue> {
    if base.re == 0.0 && base.im == 0.0 {
        if exponent.re > 0.0 {
            return Ok(ComplexValue::new(0.0, 0.0));
        }
        return Err(Error::domain(format!(
            "0 raised to an exponent with non-positive real part ({exponent})"
        )));
    }
    if exponent.re == 0.0 && exponent.im == 0.0 {
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    if base.im == 0.0 && base.re > 0.0 {
        return Ok(real_base_pow(base.re, exponent));
    }
    if exponent.im == 0.0 && exponent.re == 1.0 {
        return Ok(base);
    }
    let log = ComplexValue::new(base.norm().ln(), base.im.atan2(base.re));
    Ok((exponent * log).exp())
}

/// `r^s` for a positive real base `r`.
pub(crate) fn real_base_pow(r: f64, s: ComplexValue) -> ComplexValue {
    let modulus = r.powf(s.re);
    if s.im == 0.0 {
        return ComplexValue::new(modulus, 0.0);
    }
    let (sin, cos) = (s.im * r.ln()).sin_cos();
    ComplexValue::new(modulus * cos, modulus * sin)
}

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published coefficients, kept verbatim
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of `log Gamma(z)`.
///
/// Lanczos approximation for `Re(z) >= 1/2`, one upward recurrence step for
/// `1/4 <= Re(z) < 1/2`, and the reflection formula below `1/4`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("log_gamma of non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(format!("Gamma has a pole at z = {}", z.re)));
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: ComplexValue) -> ComplexValue {
    if z.re < 0.25 {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        let sin = (z * PI).sin();
        return ComplexValue::new(PI.ln(), 0.0) - sin.ln() - log_gamma_unchecked(1.0 - z);
    }
    if z.re < 0.5 {
        return log_gamma_unchecked(z + 1.0) - z.ln();
    }
    let x = z - 1.0;
    let mut series = ComplexValue::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + series.ln()
}

/// Outcome of an accelerated alternating summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingSum {
    pub value: ComplexValue,
    /// Number of series terms consumed by the final pass.
    pub terms: u64,
    /// Difference to the previous, shorter pass.
    pub error_estimate: f64,
}

// (3 + sqrt 8)^n overflows binary64 a little above n = 400.
const CVZ_MAX_TERMS: u64 = 360;
const CVZ_SCHEDULE: [u64; 13] = [8, 12, 16, 24, 32, 48, 64, 96, 128, 176, 240, 300, 360];

/// Accelerated value of `sum_{n>=1} (-1)^{n+1} term(n)`.
///
/// Uses the Cohen-Rodriguez Villegas-Zagier Chebyshev weights. Passes of
/// increasing length are run until two consecutive results agree within
/// `cfg.abs_tol` (or within the rounding floor of the weighted sum, when
/// that is larger). Constant terms converge to their Abel sum.
pub fn sum_alternating<F, T>(term: F, cfg: &ToleranceConfig) -> Result<ComplexValue>
where
    F: Fn(u64) -> T,
    T: Into<ComplexValue>,
{
    sum_alternating_detailed(term, cfg).map(|s| s.value)
}

/// Same as [`sum_alternating`], also reporting the term count and error estimate.
pub fn sum_alternating_detailed<F, T>(term: F, cfg: &ToleranceConfig) -> Result<AlternatingSum>
where
    F: Fn(u64) -> T,
    T: Into<ComplexValue>,
{
    let cap = cfg.max_terms.min(CVZ_MAX_TERMS);
    let mut terms: Vec<ComplexValue> = Vec::new();
    let mut previous: Option<ComplexValue> = None;
    let mut last_estimate = f64::INFINITY;

    for &n in CVZ_SCHEDULE.iter().filter(|&&n| n <= cap) {
        while (terms.len() as u64) < n {
            let v: ComplexValue = term(terms.len() as u64 + 1).into();
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Convergence(format!(
                    "series term {} is not finite",
                    terms.len() + 1
                )));
            }
            terms.push(v);
        }
        let (value, rounding_floor) = cvz_pass(&terms[..n as usize]);
        if let Some(prev) = previous {
            let estimate = (value - prev).norm();
            last_estimate = estimate;
            if estimate <= cfg.abs_tol.max(rounding_floor) {
                return Ok(AlternatingSum {
                    value,
                    terms: n,
                    error_estimate: estimate,
                });
            }
        }
        previous = Some(value);
    }
    Err(Error::Convergence(format!(
        "alternating series did not settle within {cap} terms \
         (last error estimate {last_estimate:e}, tolerance {:e})",
        cfg.abs_tol
    )))
}

/// One Chebyshev-weighted pass over `a_0..a_{n-1}` (with `a_k = term(k+1)`).
/// Returns the estimate and a bound on its accumulated rounding error.
fn cvz_pass(a: &[ComplexValue]) -> (ComplexValue, f64) {
    let n = a.len() as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (k, &ak) in a.iter().enumerate() {
        let k = k as f64;
        c = b - c;
        sum += c * ak;
        magnitude += (c * ak.norm()).abs();
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    (sum / d, 16.0 * f64::EPSILON * magnitude / d)
}

/// Plain partial sum `sum_{n=1}^{terms} (-1)^{n+1} term(n)`; the unaccelerated
/// reference used to check [`sum_alternating`].
pub fn sum_alternating_direct<F, T>(term: F, terms: u64) -> ComplexValue
where
    F: Fn(u64) -> T,
    T: Into<ComplexValue>,
{
    let mut sum = ComplexValue::new(0.0, 0.0);
    for n in 1..=terms {
        let v: ComplexValue = term(n).into();
        if n % 2 == 1 {
            sum += v;
        } else {
            sum -= v;
        }
    }
    sum
}
