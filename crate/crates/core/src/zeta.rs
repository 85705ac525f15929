//! Möbius function, Dirichlet eta and Riemann zeta in the critical strip,
//! series/product cross-checks, the two-class eta construction over
//! `s1 = 1/d + iθ`, `s2 = 1/D + iθ`, and critical-line zero finding.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{log_gamma, real_base_pow, sum_alternating_detailed, ComplexValue, ToleranceConfig};
use crate::primes::{PrimeSet, Sign};
use crate::transfer::conjugate_exponent;

/// Point `s = σ[1 ± (1/σ) iθ] = σ ± iθ` with `0 < σ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SPoint {
    sigma: f64,
    theta: f64,
    sign: Sign,
}

impl SPoint {
    pub fn new(sigma: f64, theta: f64, sign: Sign) -> Result<Self> {
        if !(sigma > 0.0 && sigma <= 1.0) {
            return Err(Error::domain(format!("sigma must lie in (0, 1], got {sigma}")));
        }
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(Error::domain(format!("theta must be ≥ 0, got {theta}")));
        }
        Ok(Self { sigma, theta, sign })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn as_complex(&self) -> ComplexValue {
        ComplexValue::new(self.sigma, self.sign.value() * self.theta)
    }
}

/// `σ + sign·iθ`, validated as an [`SPoint`].
pub fn s_point(sigma: f64, theta: f64, sign: Sign) -> Result<ComplexValue> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::domain(format!("sigma must lie in (0, 1], got {sigma}")));
    }
    if !theta.is_finite() {
        return Err(Error::domain("theta must be finite"));
    }
    Ok(ComplexValue::new(sigma, sign.value() * theta))
}

/// Möbius function by trial division.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("mobius is defined for n ≥ 1"));
    }
    let mut n = n;
    let mut mu = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            mu = -mu;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        mu = -mu;
    }
    Ok(mu)
}

/// `μ(0..=limit)` by a linear sieve; entry 0 is unused and set to 0.
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    if limit == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut is_composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            is_composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// Upper bound on the term count of the direct (oracle) sums.
pub const MAX_DIRECT_TERMS: u64 = 100_000_000;

fn check_terms(terms: u64) -> Result<()> {
    if terms == 0 || terms > MAX_DIRECT_TERMS {
        return Err(Error::domain(format!(
            "terms must lie in 1..={MAX_DIRECT_TERMS}, got {terms}"
        )));
    }
    Ok(())
}

fn check_absolutely_convergent(s: ComplexValue) -> Result<()> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Dirichlet series needs Re(s) > 1, got s = {s}"
        )));
    }
    Ok(())
}

/// Dirichlet eta `sum (-1)^{n+1} n^{-s}` for `Re(s) > 0`.
pub fn eta(s: ComplexValue, cfg: &ToleranceConfig) -> Result<ComplexValue> {
    eta_with_terms(s, cfg).map(|(v, _)| v)
}

/// [`eta`] together with the number of series terms the accelerator used.
pub fn eta_with_terms(s: ComplexValue, cfg: &ToleranceConfig) -> Result<(ComplexValue, u64)> {
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::domain(format!("eta needs Re(s) > 0, got s = {s}")));
    }
    let r = sum_alternating_detailed(|n| real_base_pow(n as f64, -s), cfg)?;
    Ok((r.value, r.terms))
}

/// Below this modulus of `1 - 2^{1-s}` the division is refused.
pub const SINGULAR_FACTOR_TOL: f64 = 1e-8;

/// `1 - 2^{1-s}`.
pub fn eta_factor(s: ComplexValue) -> ComplexValue {
    1.0 - real_base_pow(2.0, 1.0 - s)
}

/// Zeta in `Re(s) > 0` as `eta(s) / (1 - 2^{1-s})`.
pub fn zeta_from_eta(s: ComplexValue, cfg: &ToleranceConfig) -> Result<ComplexValue> {
    zeta_from_eta_with_terms(s, cfg).map(|(v, _)| v)
}

pub fn zeta_from_eta_with_terms(s: ComplexValue, cfg: &ToleranceConfig) -> Result<(ComplexValue, u64)> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if !(s.re > 0.0) {
        return Err(Error::domain(format!("zeta_from_eta needs Re(s) > 0, got s = {s}")));
    }
    let factor = eta_factor(s);
    let modulus = factor.norm();
    if modulus <= SINGULAR_FACTOR_TOL {
        return Err(Error::SingularFactor {
            re: s.re,
            im: s.im,
            modulus,
        });
    }
    let (e, terms) = eta_with_terms(s, cfg)?;
    Ok((e / factor, terms))
}

/// Partial sum `sum_{n=1}^{terms} n^{-s}`, `Re(s) > 1`. Summed from the
/// smallest term up.
pub fn zeta_direct(s: ComplexValue, terms: u64) -> Result<ComplexValue> {
    check_absolutely_convergent(s)?;
    check_terms(terms)?;
    Ok((1..=terms)
        .rev()
        .map(|n| real_base_pow(n as f64, -s))
        .fold(ComplexValue::new(0.0, 0.0), |acc, t| acc + t))
}

/// `sum_{n=1}^{terms} μ(n) n^{-s}`, which tends to `1/ζ(s)`.
pub fn mobius_inverse_zeta(s: ComplexValue, terms: u64) -> Result<ComplexValue> {
    check_absolutely_convergent(s)?;
    check_terms(terms)?;
    let mu = mobius_table(terms as usize);
    Ok((1..=terms as usize)
        .rev()
        .filter(|&n| mu[n] != 0)
        .map(|n| f64::from(mu[n]) * real_base_pow(n as f64, -s))
        .fold(ComplexValue::new(0.0, 0.0), |acc, t| acc + t))
}

/// `prod_p (1 - p^{-s})^{-1}` over the given primes, `Re(s) > 1`.
pub fn euler_product(s: ComplexValue, primes: &PrimeSet) -> Result<ComplexValue> {
    check_absolutely_convergent(s)?;
    if primes.is_empty() {
        return Err(Error::domain("Euler product needs at least one prime"));
    }
    Ok(primes
        .iter()
        .map(|p| 1.0 / (1.0 - real_base_pow(p as f64, -s)))
        .fold(ComplexValue::new(1.0, 0.0), |acc, f| acc * f))
}

/// Order `d > 1` and ordinate θ defining `s1 = 1/d + iθ`, `s2 = 1/D + iθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartParams {
    d: f64,
    theta: f64,
}

impl ChartParams {
    pub fn new(d: f64, theta: f64) -> Result<Self> {
        conjugate_exponent(d)?;
        if !theta.is_finite() {
            return Err(Error::domain("theta must be finite"));
        }
        Ok(Self { d, theta })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `D = d/(d-1)`.
    pub fn conjugate(&self) -> f64 {
        self.d / (self.d - 1.0)
    }

    pub fn s1(&self) -> ComplexValue {
        ComplexValue::new(1.0 / self.d, self.theta)
    }

    pub fn s2(&self) -> ComplexValue {
        ComplexValue::new(1.0 / self.conjugate(), self.theta)
    }
}

/// Partial sums of the four distance columns after `terms` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPartials {
    /// `sum n^{-s1}`
    pub inv_xi_h: ComplexValue,
    /// `sum n^{s1}`
    pub lambda_h: ComplexValue,
    /// `sum n^{-s2}`
    pub inv_xi_v: ComplexValue,
    /// `sum n^{s2}`
    pub lambda_v: ComplexValue,
    pub terms: u64,
}

/// Partial sums for every `N = 1..=terms`, in order.
pub fn chart1_partials_sequence(params: &ChartParams, terms: u64) -> Result<Vec<ChartPartials>> {
    check_terms(terms)?;
    let (s1, s2) = (params.s1(), params.s2());
    let zero = ComplexValue::new(0.0, 0.0);
    let mut acc = ChartPartials {
        inv_xi_h: zero,
        lambda_h: zero,
        inv_xi_v: zero,
        lambda_v: zero,
        terms: 0,
    };
    let mut out = Vec::with_capacity(terms as usize);
    for n in 1..=terms {
        let x = n as f64;
        acc.inv_xi_h += real_base_pow(x, -s1);
        acc.lambda_h += real_base_pow(x, s1);
        acc.inv_xi_v += real_base_pow(x, -s2);
        acc.lambda_v += real_base_pow(x, s2);
        acc.terms = n;
        out.push(acc);
    }
    Ok(out)
}

/// The four partial sums at `N = terms`.
pub fn chart1_partials(params: &ChartParams, terms: u64) -> Result<ChartPartials> {
    Ok(*chart1_partials_sequence(params, terms)?
        .last()
        .expect("terms ≥ 1"))
}

/// `|eta(s1) - eta(s2)|`; zero exactly when `d = 2`.
pub fn assertion_one_residual(d: f64, theta: f64, cfg: &ToleranceConfig) -> Result<f64> {
    let params = ChartParams::new(d, theta)?;
    let e1 = eta(params.s1(), cfg)?;
    let e2 = eta(params.s2(), cfg)?;
    Ok((e1 - e2).norm())
}

/// Tolerance used by the zero finder's zeta evaluations.
pub fn zero_scan_tolerance() -> ToleranceConfig {
    ToleranceConfig::new(1e-12, 10_000).expect("valid constant")
}

/// `ϑ(t) = Im log Γ(1/4 + it/2) - (t/2) ln π`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    Ok(log_gamma(ComplexValue::new(0.25, 0.5 * t))?.im - 0.5 * t * PI.ln())
}

/// `Z(t) = e^{iϑ(t)} ζ(1/2 + it)`, real on the critical line.
pub fn hardy_rotation(t: f64) -> Result<f64> {
    hardy_rotation_with(t, &zero_scan_tolerance())
}

pub fn hardy_rotation_with(t: f64, cfg: &ToleranceConfig) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("t must be ≥ 0, got {t}")));
    }
    let z = zeta_from_eta(ComplexValue::new(0.5, t), cfg)?;
    let theta = riemann_siegel_theta(t)?;
    let rotated = ComplexValue::from_polar(1.0, theta) * z;
    if rotated.im.abs() >= 1e-6 * (1.0 + rotated.re.abs()) {
        return Err(Error::Convergence(format!(
            "rotated zeta at t = {t} keeps imaginary part {:e}",
            rotated.im
        )));
    }
    Ok(rotated.re)
}

/// A sign change of `Z(t)` between two grid points, refined by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBracket {
    pub t_lo: f64,
    pub t_hi: f64,
    pub t_refined: f64,
    /// `|ζ(1/2 + i t_refined)|`
    pub residual: f64,
}

pub const DEFAULT_GRID_STEP: f64 = 0.05;
const BISECTION_WIDTH: f64 = 1e-8;

/// Grid `k · step` for integer `k` with `t_lo ≤ k·step ≤ t_hi`. Anchoring
/// the grid at the origin makes scans of adjacent sub-ranges share points.
pub fn zero_scan_grid(t_lo: f64, t_hi: f64, grid_step: f64) -> Vec<f64> {
    let k_lo = (t_lo / grid_step - 1e-9).ceil().max(0.0) as u64;
    let k_hi = (t_hi / grid_step + 1e-9).floor() as u64;
    (k_lo..=k_hi).map(|k| k as f64 * grid_step).collect()
}

/// Zeros of ζ on the critical line with ordinate in `[t_lo, t_hi]`, found as
/// sign changes of [`hardy_rotation`] and bisected to width 1e-8.
pub fn find_zeros(t_lo: f64, t_hi: f64, grid_step: f64, cfg: &ToleranceConfig) -> Result<Vec<ZeroBracket>> {
    if !(t_lo >= 0.0 && t_lo < t_hi && t_hi.is_finite()) {
        return Err(Error::domain(format!(
            "need 0 ≤ from < to, got [{t_lo}, {t_hi}]"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= 0.25) {
        return Err(Error::domain(format!(
            "grid step must lie in (0, 0.25], got {grid_step}"
        )));
    }
    let grid = zero_scan_grid(t_lo, t_hi, grid_step);
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| hardy_rotation_with(t, cfg))
        .collect::<Result<_>>()?;

    let brackets: Vec<usize> = (1..grid.len())
        .filter(|&i| (values[i - 1] < 0.0) != (values[i] < 0.0))
        .collect();

    let mut zeros: Vec<ZeroBracket> = brackets
        .par_iter()
        .map(|&i| bisect(grid[i - 1], grid[i], values[i - 1], cfg))
        .collect::<Result<_>>()?;
    zeros.sort_by(|a, b| a.t_refined.total_cmp(&b.t_refined));
    Ok(zeros)
}

fn bisect(t_lo: f64, t_hi: f64, z_lo: f64, cfg: &ToleranceConfig) -> Result<ZeroBracket> {
    let (mut a, mut b) = (t_lo, t_hi);
    let negative_at_a = z_lo < 0.0;
    while b - a >= BISECTION_WIDTH {
        let mid = 0.5 * (a + b);
        let z = hardy_rotation_with(mid, cfg)?;
        if z == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if (z < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    let t_refined = 0.5 * (a + b);
    let residual = zeta_from_eta(ComplexValue::new(0.5, t_refined), cfg)?.norm();
    Ok(ZeroBracket {
        t_lo,
        t_hi,
        t_refined,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(999_999_999_989).unwrap(), -1); // prime
        assert!(mobius(0).is_err());
    }

    #[test]
    fn table_matches_trial_division() {
        let t = mobius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(t[n as usize], mobius(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn s_points() {
        assert_eq!(s_point(0.5, 0.0, Sign::Plus).unwrap(), c(0.5, 0.0));
        assert_eq!(s_point(0.5, 7.0, Sign::Plus).unwrap(), c(0.5, 7.0));
        let s = s_point(1.0 / 3.0, 2.0, Sign::Minus).unwrap();
        assert!((s.re - 0.333_333_33).abs() < 1e-8 && s.im == -2.0);
        assert!(s_point(0.0, 1.0, Sign::Plus).is_err());
        assert!(s_point(1.2, 1.0, Sign::Plus).is_err());
        let p = SPoint::new(0.5, 3.0, Sign::Minus).unwrap();
        assert_eq!(p.as_complex(), c(0.5, -3.0));
    }

    #[test]
    fn eta_domain() {
        let cfg = ToleranceConfig::default();
        assert!(matches!(eta(c(0.0, 1.0), &cfg), Err(Error::Domain(_))));
        assert!(matches!(eta(c(-1.0, 0.0), &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_errors() {
        let cfg = ToleranceConfig::default();
        assert!(matches!(zeta_from_eta(c(1.0, 0.0), &cfg), Err(Error::Pole(_))));
        let k1 = 2.0 * PI / 2f64.ln();
        assert!(matches!(
            zeta_from_eta(c(1.0, k1), &cfg),
            Err(Error::SingularFactor { .. })
        ));
        assert!(matches!(zeta_direct(c(1.0, 0.0), 10), Err(Error::Domain(_))));
        assert!(matches!(mobius_inverse_zeta(c(0.5, 0.0), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn direct_sums() {
        assert_eq!(zeta_direct(c(2.0, 0.0), 1).unwrap(), c(1.0, 0.0));
        assert_eq!(mobius_inverse_zeta(c(3.0, 5.0), 1).unwrap(), c(1.0, 0.0));
        let v = zeta_direct(c(4.0, 0.0), 10_000).unwrap();
        assert!((v.re - PI.powi(4) / 90.0).abs() < 1e-9);
    }

    #[test]
    fn single_factor_euler_product() {
        let primes = crate::primes::sieve(2).unwrap();
        let v = euler_product(c(2.0, 0.0), &primes).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn chart_first_terms() {
        let p = ChartParams::new(3.7, 2.5).unwrap();
        let one = chart1_partials(&p, 1).unwrap();
        for v in [one.inv_xi_h, one.lambda_h, one.inv_xi_v, one.lambda_v] {
            assert_eq!(v, c(1.0, 0.0));
        }
        let p = ChartParams::new(2.0, 0.0).unwrap();
        let two = chart1_partials(&p, 2).unwrap();
        assert!((two.inv_xi_h.re - (1.0 + std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((two.lambda_h.re - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
        let l10 = chart1_partials(&p, 10).unwrap().lambda_h.re;
        let l100 = chart1_partials(&p, 100).unwrap().lambda_h.re;
        assert!(l100 > l10);
        assert!(ChartParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn zero_scan_grid_is_anchored() {
        let whole = zero_scan_grid(14.0, 26.0, 0.05);
        let mut split = zero_scan_grid(14.0, 20.0, 0.05);
        let right = zero_scan_grid(20.0, 26.0, 0.05);
        assert_eq!(split.last(), right.first());
        split.extend_from_slice(&right[1..]);
        assert_eq!(whole, split);
    }

    #[test]
    fn find_zeros_validation() {
        let cfg = zero_scan_tolerance();
        assert!(find_zeros(30.0, 10.0, 0.05, &cfg).is_err());
        assert!(find_zeros(-1.0, 10.0, 0.05, &cfg).is_err());
        assert!(find_zeros(0.0, 10.0, 0.5, &cfg).is_err());
    }
}
