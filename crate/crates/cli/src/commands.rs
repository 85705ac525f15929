use std::f64::consts::TAU;

use fraczeta::fracdiff::{self, SolverConfig};
use fraczeta::primes::{self, sieve, solve_theta_prime, strict_local_minima, varpi_grid};
use fraczeta::transfer::{self, arc_geometry, evaluate_sweep, frequency_grid};
use fraczeta::zeta::{self, s_point, ChartParams};
use fraczeta::{
    ColeColeParams, ComplexValue, Error, Result, Sign, SignConvention, ToleranceConfig, VarpiConfig,
};
use serde_json::json;

use crate::output::{Cell, Table};
use crate::{
    Chart1Args, Convention, Drive, RelaxArgs, SignArg, TransferArgs, VarpiArgs, ZerosArgs, ZetaArgs,
    ZetaMode,
};

fn complex_json(z: ComplexValue) -> serde_json::Value {
    json!([z.re, z.im])
}

pub fn transfer(a: &TransferArgs) -> Result<Table> {
    let params = ColeColeParams::new(a.z0, a.vc, a.d)?;
    let grid = frequency_grid(a.vmin, a.vmax, a.points, a.log_spacing)?;
    let values = evaluate_sweep(&params, &grid)?;
    let arc = arc_geometry(&params)?;

    let mut t = Table::new(&["v", "re", "im", "modulus", "phase_deg"]);
    for (v, z) in grid.iter().zip(values) {
        t.push(vec![
            Cell::from(*v),
            z.re.into(),
            z.im.into(),
            z.norm().into(),
            z.arg().to_degrees().into(),
        ]);
    }
    t.meta(
        "inputs",
        json!({
            "z0": a.z0, "vc": a.vc, "d": a.d, "vmin": a.vmin, "vmax": a.vmax,
            "points": a.points, "log": a.log_spacing,
        }),
    );
    t.meta(
        "arc_geometry",
        json!({
            "center": complex_json(arc.center),
            "radius": arc.radius,
            "chord": arc.chord,
            "depression_angle_rad": arc.depression_angle,
        }),
    );
    Ok(t)
}

pub fn relax(a: &RelaxArgs) -> Result<Table> {
    let params = ColeColeParams::new(a.z0, a.vc, a.d)?;
    if a.drive == Drive::Sin && !(a.freq > 0.0 && a.freq.is_finite()) {
        return Err(Error::Domain(format!("--freq must be > 0, got {}", a.freq)));
    }
    if !(a.h > 0.0 && a.h.is_finite()) {
        return Err(Error::Config(format!("--h must be > 0, got {}", a.h)));
    }
    let period = TAU / a.freq;
    let steps = match (a.steps, a.drive) {
        (Some(n), _) => n,
        (None, Drive::Step) => 10_000,
        (None, Drive::Sin) => (12.0 * period / a.h).ceil() as usize + 1,
    };
    let cfg = SolverConfig::new(a.h, steps)?;
    let drive = match a.drive {
        Drive::Step => cfg.step_drive(),
        Drive::Sin => cfg.sine_drive(a.freq),
    };
    let u = fracdiff::solve_relaxation(&params, &drive)?;

    let mut t = Table::new(&["t", "i_t", "u_t"]);
    for (k, (i, v)) in drive.values().iter().zip(u.values()).enumerate() {
        t.push(vec![Cell::from(drive.time(k)), (*i).into(), (*v).into()]);
    }
    t.meta(
        "inputs",
        json!({
            "z0": a.z0, "vc": a.vc, "d": a.d,
            "drive": match a.drive { Drive::Step => "step", Drive::Sin => "sin" },
            "freq": a.freq, "h": a.h, "steps": steps,
        }),
    );
    if a.drive == Drive::Sin {
        let span = steps as f64 * a.h;
        if span < 2.0 * period {
            return Err(Error::Config(format!(
                "sine fit needs two full cycles ({:.6} s), simulation covers {span:.6} s",
                2.0 * period
            )));
        }
        let start = ((span - 2.0 * period) / a.h).floor() as usize;
        let gain = fracdiff::fit_sinusoid(&u, a.freq, start)? / params.z0();
        let model = transfer::evaluate(&params, a.freq)? / params.z0();
        t.meta(
            "fit",
            json!({
                "gain": gain.norm(),
                "phase_rad": gain.arg(),
                "complex_gain": complex_json(gain),
                "transfer_function": complex_json(model),
            }),
        );
    }
    Ok(t)
}

pub fn zeta(a: &ZetaArgs) -> Result<Table> {
    let sign = match a.sign {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    };
    // σ ≤ 1 goes through the validated critical-strip point; the absolutely
    // convergent modes also accept σ > 1.
    let s = if a.sigma > 1.0 && a.sigma.is_finite() && a.theta.is_finite() {
        ComplexValue::new(a.sigma, sign.value() * a.theta)
    } else {
        s_point(a.sigma, a.theta, sign)?
    };
    let (name, value, terms_used) = match a.mode {
        ZetaMode::Eta => {
            let cfg = ToleranceConfig::new(a.tol, a.terms)?;
            let (v, n) = zeta::eta_with_terms(s, &cfg)?;
            ("eta", v, n)
        }
        ZetaMode::Zeta => {
            let cfg = ToleranceConfig::new(a.tol, a.terms)?;
            let (v, n) = zeta::zeta_from_eta_with_terms(s, &cfg)?;
            ("zeta", v, n)
        }
        ZetaMode::Direct => ("direct", zeta::zeta_direct(s, a.terms)?, a.terms),
        ZetaMode::Mobius => ("mobius", zeta::mobius_inverse_zeta(s, a.terms)?, a.terms),
        ZetaMode::Euler => {
            // check the domain before paying for the sieve
            if s.re <= 1.0 {
                return Err(Error::Domain(format!("Euler product needs Re(s) > 1, got s = {s}")));
            }
            let primes = sieve(a.prime_limit)?;
            ("euler", zeta::euler_product(s, &primes)?, primes.len() as u64)
        }
    };
    let mut t = Table::new(&["mode", "s_re", "s_im", "value_re", "value_im", "terms_used"]);
    t.push(vec![
        Cell::from(name),
        s.re.into(),
        s.im.into(),
        value.re.into(),
        value.im.into(),
        terms_used.into(),
    ]);
    t.meta(
        "inputs",
        json!({
            "mode": name, "sigma": a.sigma, "theta": a.theta,
            "sign": match sign { Sign::Plus => "plus", Sign::Minus => "minus" },
            "terms": a.terms, "tol": a.tol, "prime_limit": a.prime_limit,
        }),
    );
    t.meta("modulus", json!(value.norm()));
    Ok(t)
}

pub fn zeros(a: &ZerosArgs) -> Result<Table> {
    let found = zeta::find_zeros(a.t_from, a.t_to, a.grid_step, &zeta::zero_scan_tolerance())?;
    let mut t = Table::new(&["t_lo", "t_hi", "t_refined", "residual"]);
    for z in &found {
        t.push(vec![
            Cell::from(z.t_lo),
            z.t_hi.into(),
            z.t_refined.into(),
            z.residual.into(),
        ]);
    }
    t.meta(
        "inputs",
        json!({ "from": a.t_from, "to": a.t_to, "step": a.grid_step }),
    );
    t.meta("count", json!(found.len()));
    Ok(t)
}

const REFERENCE_PRIME_LIMIT: u64 = 20;
const REFERENCE_BRANCHES: u64 = 3;

pub fn varpi(a: &VarpiArgs) -> Result<Table> {
    let convention = match a.convention {
        Convention::AsPrinted => SignConvention::AsPrinted,
        Convention::BothMinus => SignConvention::BothMinus,
    };
    let cfg = VarpiConfig::new(a.prime_limit, convention)?;
    let primes = cfg.primes()?;
    let grid = varpi_grid(a.theta_from, a.theta_to, a.step, &primes, &cfg)?;
    let moduli: Vec<f64> = grid.iter().map(|(_, v)| v.norm()).collect();

    let mut t = Table::new(&["theta_prime", "varpi_re", "varpi_im", "modulus"]);
    for ((theta, v), m) in grid.iter().zip(&moduli) {
        t.push(vec![Cell::from(*theta), v.re.into(), v.im.into(), (*m).into()]);
    }
    let minima: Vec<_> = strict_local_minima(&moduli)
        .into_iter()
        .map(|i| json!([grid[i].0, moduli[i]]))
        .collect();
    let mut reference = Vec::new();
    for p in primes::sieve(REFERENCE_PRIME_LIMIT)?.iter() {
        for s in solve_theta_prime(p, REFERENCE_BRANCHES)? {
            reference.push(json!({
                "p": s.p,
                "k": s.k,
                "sign": match s.sign { Sign::Plus => "+", Sign::Minus => "-" },
                "theta_prime": s.theta_prime,
            }));
        }
    }
    t.meta(
        "inputs",
        json!({
            "from": a.theta_from, "to": a.theta_to, "step": a.step, "primes": a.prime_limit,
            "convention": match convention {
                SignConvention::AsPrinted => "as-printed",
                SignConvention::BothMinus => "both-minus",
            },
        }),
    );
    t.meta("prime_count", json!(primes.len()));
    t.meta("local_minima", json!(minima));
    t.meta("theta_prime_reference", json!(reference));
    Ok(t)
}

pub fn chart1(a: &Chart1Args) -> Result<Table> {
    let params = ChartParams::new(a.d, a.theta)?;
    let cfg = ToleranceConfig::default();
    let eta1 = zeta::eta(params.s1(), &cfg)?;
    let eta2 = zeta::eta(params.s2(), &cfg)?;
    let mut t = Table::new(&[
        "n",
        "inv_xi_h_re",
        "inv_xi_h_im",
        "lambda_h_re",
        "lambda_h_im",
        "inv_xi_v_re",
        "inv_xi_v_im",
        "lambda_v_re",
        "lambda_v_im",
        "eta_s1_re",
        "eta_s1_im",
        "eta_s2_re",
        "eta_s2_im",
    ]);
    for p in zeta::chart1_partials_sequence(&params, a.terms)? {
        t.push(vec![
            Cell::from(p.terms),
            p.inv_xi_h.re.into(),
            p.inv_xi_h.im.into(),
            p.lambda_h.re.into(),
            p.lambda_h.im.into(),
            p.inv_xi_v.re.into(),
            p.inv_xi_v.im.into(),
            p.lambda_v.re.into(),
            p.lambda_v.im.into(),
            eta1.re.into(),
            eta1.im.into(),
            eta2.re.into(),
            eta2.im.into(),
        ]);
    }
    t.meta("inputs", json!({ "d": a.d, "theta": a.theta, "terms": a.terms }));
    t.meta(
        "derived",
        json!({
            "conjugate_exponent": params.conjugate(),
            "s1": complex_json(params.s1()),
            "s2": complex_json(params.s2()),
            "residual": (eta1 - eta2).norm(),
        }),
    );
    Ok(t)
}
