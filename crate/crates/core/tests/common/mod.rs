//! Independent reference computations shared by the integration tests.
//! None of these go through the accelerated summation of the library.
#![allow(dead_code)]

use fraczeta::ComplexValue;

/// `n^{-s}` from scratch, without the library's power routine.
pub fn inv_pow(n: f64, s: ComplexValue) -> ComplexValue {
    let m = n.powf(-s.re);
    let a = -s.im * n.ln();
    ComplexValue::new(m * a.cos(), m * a.sin())
}

/// Dirichlet eta by repeated averaging of consecutive partial sums
/// (Euler / van Wijngaarden style): partial sums `S_n .. S_{n+levels}` are
/// averaged pairwise `levels` times.
pub fn eta_by_averaging(s: ComplexValue, start: usize, levels: usize) -> ComplexValue {
    let mut partial = ComplexValue::new(0.0, 0.0);
    let mut sums = Vec::with_capacity(levels + 1);
    for n in 1..=start + levels {
        let t = inv_pow(n as f64, s);
        if n % 2 == 1 {
            partial += t;
        } else {
            partial -= t;
        }
        if n >= start {
            sums.push(partial);
        }
    }
    while sums.len() > 1 {
        sums = sums.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    sums[0]
}

/// Reference eta used by the oracles.
pub fn eta_ref(s: ComplexValue) -> ComplexValue {
    eta_by_averaging(s, 200, 40)
}

/// Circle through three points: (center, radius).
pub fn circumcircle(a: ComplexValue, b: ComplexValue, c: ComplexValue) -> (ComplexValue, f64) {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let (a2, b2, c2) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    let ux = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d;
    let uy = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d;
    let center = ComplexValue::new(ux, uy);
    (center, (a - center).norm())
}

/// Golden-section minimization of `f` on `[a, b]` down to width `tol`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Ordinates of the minima of `|eta(1/2 + it)|` on `[lo, hi]`: a dense scan
/// at `step`, then golden-section refinement of every grid minimum whose
/// value is below `threshold`.
pub fn dense_eta_minima(lo: f64, hi: f64, step: f64, threshold: f64) -> Vec<f64> {
    let f = |t: f64| eta_ref(ComplexValue::new(0.5, t)).norm();
    let n = ((hi - lo) / step).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| lo + k as f64 * step).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    (1..n)
        .filter(|&i| vals[i] < vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] < threshold)
        .map(|i| golden_min(f, grid[i - 1], grid[i + 1], 1e-9))
        .collect()
}

/// Tail of `sum_{n>N} n^{-2}` by Euler-Maclaurin: 1/N - 1/(2N^2) + 1/(6N^3).
pub fn inverse_square_tail(n: f64) -> f64 {
    1.0 / n - 0.5 / (n * n) + 1.0 / (6.0 * n * n * n)
}
