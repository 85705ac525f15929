//! Prime sieving, the Mandelbrot gauge relation, the θ′-parametrized
//! Hausdorff normalization and the truncated prime product ϖ.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{real_base_pow, ComplexValue};

pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Sieve of Eratosthenes over the odd numbers.
pub fn sieve(limit: u64) -> Result<PrimeSet> {
    if limit == 0 {
        return Err(Error::domain("sieve limit must be ≥ 1"));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Limit(format!(
            "sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}"
        )));
    }
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    // index i stands for 2i + 1
    let half = limit.div_ceil(2) as usize;
    let mut composite = vec![false; half];
    let mut i = 1;
    while i < half {
        if !composite[i] {
            let p = 2 * i + 1;
            primes.push(p as u64);
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    Ok(PrimeSet { limit, primes })
}

/// Gauge `1/delta = (vc/p)^(1/d)` solving the Mandelbrot relation.
pub fn mandelbrot_gauge(p: f64, vc: f64, d: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must be > 0, got {p}")));
    }
    if !(vc > 0.0 && vc.is_finite()) {
        return Err(Error::domain(format!("vc must be > 0, got {vc}")));
    }
    if !(d >= 1.0 && d.is_finite()) {
        return Err(Error::domain(format!("d must be ≥ 1, got {d}")));
    }
    if p == vc {
        return Ok(1.0);
    }
    Ok((vc / p).powf(1.0 / d))
}

/// `S = inv_delta (p^{2iθ′} + p^{-2iθ′})`; returns `(Re S - 1, Im S)`.
pub fn hausdorff_residual(p: u64, inv_delta: f64, theta_prime: f64) -> (f64, f64) {
    let p = p as f64;
    let up = real_base_pow(p, ComplexValue::new(0.0, 2.0 * theta_prime));
    let down = real_base_pow(p, ComplexValue::new(0.0, -2.0 * theta_prime));
    let s = inv_delta * (up + down);
    (s.re - 1.0, s.im)
}

/// One closed-form root `θ′ = (sign π/3 + 2πk) / (2 ln p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPrimeSolution {
    pub p: u64,
    pub k: u64,
    pub sign: Sign,
    pub theta_prime: f64,
}

/// Tolerance used to verify each closed-form root against the residual.
pub const THETA_PRIME_TOL: f64 = 1e-12;

/// All roots of `2 cos(2 θ′ ln p) = 1` for branches `k = 0..branches`,
/// non-negative, sorted ascending.
pub fn solve_theta_prime(p: u64, branches: u64) -> Result<Vec<ThetaPrimeSolution>> {
    if p < 2 {
        return Err(Error::domain(format!("p must be ≥ 2, got {p}")));
    }
    if branches == 0 {
        return Err(Error::domain("branches must be ≥ 1"));
    }
    let two_ln_p = 2.0 * (p as f64).ln();
    let mut out = Vec::with_capacity(2 * branches as usize);
    for k in 0..branches {
        for sign in [Sign::Plus, Sign::Minus] {
            if sign == Sign::Minus && k == 0 {
                continue;
            }
            let theta_prime = (sign.value() * PI / 3.0 + 2.0 * PI * k as f64) / two_ln_p;
            let (re, _) = hausdorff_residual(p, 1.0, theta_prime);
            if re.abs() >= THETA_PRIME_TOL {
                return Err(Error::Convergence(format!(
                    "θ′ = {theta_prime} (p = {p}, k = {k}) leaves residual {re:e}"
                )));
            }
            out.push(ThetaPrimeSolution {
                p,
                k,
                sign,
                theta_prime,
            });
        }
    }
    out.sort_by(|a, b| a.theta_prime.total_cmp(&b.theta_prime));
    Ok(out)
}

/// Reading of the sign between the two prime powers in each ϖ factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignConvention {
    /// `1 - p^{-s+} + p^{-s-}`
    AsPrinted,
    /// `1 - p^{-s+} - p^{-s-}`
    BothMinus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarpiConfig {
    prime_limit: u64,
    pub sign_convention: SignConvention,
}

impl VarpiConfig {
    pub fn new(prime_limit: u64, sign_convention: SignConvention) -> Result<Self> {
        if prime_limit < 2 {
            return Err(Error::domain(format!(
                "prime limit must be ≥ 2, got {prime_limit}"
            )));
        }
        Ok(Self {
            prime_limit,
            sign_convention,
        })
    }

    pub fn prime_limit(&self) -> u64 {
        self.prime_limit
    }

    pub fn primes(&self) -> Result<PrimeSet> {
        sieve(self.prime_limit)
    }
}

const PRODUCT_CEILING: f64 = 1e300;
const PRODUCT_FLOOR: f64 = 1e-300;

/// Truncated product `prod_p (1 - p^{-s+} ± p^{-s-})`, `s± = (1 ± 2iθ′)/2`.
pub fn varpi(theta_prime: f64, primes: &PrimeSet, cfg: &VarpiConfig) -> Result<ComplexValue> {
    if primes.is_empty() {
        return Err(Error::domain("ϖ needs at least one prime"));
    }
    let mut product = ComplexValue::new(1.0, 0.0);
    for p in primes.iter() {
        product *= varpi_factor(p, theta_prime, cfg.sign_convention);
        let m = product.norm();
        if !(m <= PRODUCT_CEILING) || m < PRODUCT_FLOOR {
            return Err(Error::Overflow(format!(
                "ϖ partial product reached modulus {m:e} at p = {p}, θ′ = {theta_prime}"
            )));
        }
    }
    Ok(product)
}

/// Single factor of ϖ for prime `p`.
pub fn varpi_factor(p: u64, theta_prime: f64, convention: SignConvention) -> ComplexValue {
    let p = p as f64;
    let plus = real_base_pow(p, ComplexValue::new(-0.5, -theta_prime));
    let minus = real_base_pow(p, ComplexValue::new(-0.5, theta_prime));
    match convention {
        // grouped so that θ′ = 0 gives exactly 1
        SignConvention::AsPrinted => 1.0 + (minus - plus),
        SignConvention::BothMinus => 1.0 - (plus + minus),
    }
}

/// Grid `lo + k step` for `k = 0, 1, ...` while the point stays within `hi`.
pub fn theta_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::domain(format!("step must be > 0, got {step}")));
    }
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("need from ≤ to, got [{lo}, {hi}]")));
    }
    let count = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

/// `(θ′, ϖ(θ′))` over [`theta_grid`]; evaluated in parallel, returned in grid order.
pub fn varpi_grid(
    lo: f64,
    hi: f64,
    step: f64,
    primes: &PrimeSet,
    cfg: &VarpiConfig,
) -> Result<Vec<(f64, ComplexValue)>> {
    theta_grid(lo, hi, step)?
        .into_par_iter()
        .map(|t| varpi(t, primes, cfg).map(|v| (t, v)))
        .collect()
}

/// Indices of strict interior local minima of `values`.
pub fn strict_local_minima(values: &[f64]) -> Vec<usize> {
    values
        .windows(3)
        .enumerate()
        .filter(|(_, w)| w[1] < w[0] && w[1] < w[2])
        .map(|(i, _)| i + 1)
        .collect()
}

/// Grid points that are strict local minima of `|ϖ|`, as `(θ′, |ϖ|)`.
pub fn varpi_scan(
    theta_lo: f64,
    theta_hi: f64,
    step: f64,
    primes: &PrimeSet,
    cfg: &VarpiConfig,
) -> Result<Vec<(f64, f64)>> {
    if !(theta_lo < theta_hi) {
        return Err(Error::domain(format!(
            "need theta_lo < theta_hi, got [{theta_lo}, {theta_hi}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::domain(format!("step must be > 0, got {step}")));
    }
    if theta_hi - theta_lo < step {
        return Ok(Vec::new());
    }
    let grid = varpi_grid(theta_lo, theta_hi, step, primes, cfg)?;
    let moduli: Vec<f64> = grid.iter().map(|(_, v)| v.norm()).collect();
    Ok(strict_local_minima(&moduli)
        .into_iter()
        .map(|i| (grid[i].0, moduli[i]))
        .collect())
}
