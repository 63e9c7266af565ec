//! Coefficient-level consequences of subordination: Parseval domination,
//! coefficient growth, and area / derivative-norm comparisons below a radius
//! threshold.

use crate::error::{Error, Result};
use crate::maps::{AnalyticMap, Repr};
use crate::potential::{self, periodic_integral, Hypothesis, Quadrature, TestFunction};
use crate::report::VerificationReport;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{E, PI, TAU};

/// Terms below this (relative to the running sum) end a series.
pub const TERM_FLOOR: f64 = 1e-16;
/// Consecutive small terms required before truncating.
pub const TAIL_TERMS: usize = 10;
/// Agreement required between quadrature and coefficient forms.
pub const DUAL_FORM_TOL: f64 = 1e-8;
const MAX_TERMS: usize = 1 << 14;
const FIRST_BLOCK: usize = 64;

/// Largest radius for the area comparison: `exp(-1/(2e))`.
pub fn area_threshold() -> f64 {
    (-1.0 / (2.0 * E)).exp()
}

/// Largest radius for the derivative-norm comparison: `exp(-1/e)`.
pub fn derivative_threshold() -> f64 {
    (-1.0 / E).exp()
}

/// `max_{1 <= x <= x_max} x r^{2x}` over integers.
pub fn weighted_power_peak(r: f64, x_max: u32) -> f64 {
    (1..=x_max)
        .map(|x| x as f64 * r.powf(2.0 * x as f64))
        .fold(0.0, f64::max)
}

/// Taylor coefficients `c_0..=c_n` at the origin.
///
/// Rational maps use exact series division and bare power series their own
/// coefficients; anything else is extracted by DFT and must pass the trust check.
pub fn coefficients(f: &AnalyticMap, n: usize) -> Result<Vec<Complex64>> {
    if let Repr::PowerSeries { coeffs, .. } = f.repr() {
        let mut c = coeffs.clone();
        c.resize(n + 1, Complex64::new(0.0, 0.0));
        return Ok(c);
    }
    if let Some(c) = f.rational().and_then(|r| r.taylor(n)) {
        return Ok(c);
    }
    let rho = 0.5f64.min(0.9 * f.guard_radius() / 1.1);
    let series = f.taylor_coefficients(n, rho)?;
    if !series.is_trusted() {
        return Err(Error::UntrustedCoefficients {
            estimate: series.error_estimate,
        });
    }
    Ok(series.coeffs)
}

/// `Σ_{n>=1} term(n, c_n)`, stopped after ten consecutive negligible terms.
fn series_sum<T>(f: &AnalyticMap, term: T) -> Result<f64>
where
    T: Fn(usize, Complex64) -> f64,
{
    let mut block = FIRST_BLOCK;
    loop {
        let c = coefficients(f, block)?;
        let mut sum = 0.0;
        let mut quiet = 0;
        for (n, &cn) in c.iter().enumerate().skip(1) {
            let t = term(n, cn);
            sum += t;
            quiet = if t.abs() < TERM_FLOOR * (1.0 + sum.abs()) {
                quiet + 1
            } else {
                0
            };
            if quiet >= TAIL_TERMS {
                return Ok(sum);
            }
        }
        if block >= MAX_TERMS {
            return Err(Error::NonConvergent { nodes: block });
        }
        block *= 2;
    }
}

/// `∫ |f'(ρ e^{iθ})|² dθ` by quadrature.
pub fn derivative_norm(f: &AnalyticMap, rho: f64, q: &Quadrature) -> Result<f64> {
    f.derivative_eval(Complex64::new(rho, 0.0))?;
    Ok(periodic_integral(q.nodes, |t| {
        let z = Complex64::from_polar(rho, t);
        f.value_and_derivative(z).1.norm_sqr()
    }))
}

/// `2π Σ n² |c_n|² ρ^{2n-2}`.
pub fn derivative_norm_series(f: &AnalyticMap, rho: f64) -> Result<f64> {
    Ok(TAU
        * series_sum(f, |n, c| {
            (n * n) as f64 * c.norm_sqr() * rho.powi(2 * n as i32 - 2)
        })?)
}

/// Area of the (multi-sheeted) image of `|z| < ρ`: `π Σ n |c_n|² ρ^{2n}`.
pub fn image_area(f: &AnalyticMap, rho: f64) -> Result<f64> {
    Ok(PI * series_sum(f, |n, c| n as f64 * c.norm_sqr() * rho.powi(2 * n as i32))?)
}

/// Rescales `f` to `z ↦ f(r z)`.
pub fn dilate(f: &AnalyticMap, r: f64) -> Result<AnalyticMap> {
    AnalyticMap::compose(
        f,
        &AnalyticMap::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(r, 0.0)])?,
    )
}

/// One row of a [`DominationTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominationRow {
    pub n: usize,
    /// `Σ_{1<=k<=n} |a_k|²`.
    pub a_sum: f64,
    /// `Σ_{1<=k<=n} |b_k|²`.
    pub b_sum: f64,
    /// `Σ_{2<=k<=n} |b_k|²`.
    pub shifted_b_sum: f64,
    pub holds: bool,
}

/// Squared boundary means entering the Parseval chain
/// `B_n <= mean|g|² <= mean|f|² <= A_n + |b_1|²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParsevalChain {
    pub g_mean: f64,
    pub f_mean: f64,
    pub b1_squared: f64,
    /// Rows `n >= N` where some link of the chain fails.
    pub violations: Vec<usize>,
}

/// Partial sums comparing `Σ_{k>=2} |b_k|²` with `Σ_{k>=1} |a_k|²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationTable {
    pub rows: Vec<DominationRow>,
    /// Least `N >= 3` with `holds` on every computed row `n >= N`.
    pub n_found: Option<usize>,
    pub chain: Option<ParsevalChain>,
    pub diagnostics: Vec<String>,
}

const CHAIN_TOL: f64 = 1e-8;

/// Builds the domination table for `g` subordinate to `f`, both vanishing at 0.
pub fn coeff_domination(f: &AnalyticMap, g: &AnalyticMap, n_max: usize) -> Result<DominationTable> {
    if n_max < 1 {
        return Err(Error::Precondition("table needs n_max >= 1".into()));
    }
    let a = coefficients(f, n_max)?;
    let b = coefficients(g, n_max)?;
    if a[0].norm() >= 1e-12 {
        return Err(Error::Precondition(format!("f(0) = {} must vanish", a[0])));
    }
    if b[1].norm() < 1e-12 {
        return Err(Error::MissingB1(b[1].norm()));
    }
    let mut diagnostics = Vec::new();
    if let Hypothesis::Inconclusive(reason) =
        potential::require_subordinate(g, f, "g subordinate to f")?
    {
        diagnostics.push(reason);
    }

    let mut rows = Vec::with_capacity(n_max);
    let (mut a_sum, mut b_sum) = (0.0, 0.0);
    for n in 1..=n_max {
        a_sum += a[n].norm_sqr();
        b_sum += b[n].norm_sqr();
        let shifted_b_sum = b_sum - b[1].norm_sqr();
        rows.push(DominationRow {
            n,
            a_sum,
            b_sum,
            shifted_b_sum,
            holds: shifted_b_sum <= a_sum + 1e-12,
        });
    }
    let n_found = match rows.iter().rposition(|r| !r.holds) {
        None => Some(3.min(n_max)),
        Some(last) if last + 1 < rows.len() => Some((rows[last + 1].n).max(3)),
        Some(_) => None,
    }
    .filter(|&n| n <= n_max);

    let chain = match n_found {
        Some(start) if f.guard_radius() >= 1.0 && g.guard_radius() >= 1.0 => {
            let q = Quadrature::default();
            let square = TestFunction::PowerModulus { p: 2.0 };
            let g_mean = potential::hardy_integral(g, &square, 1.0, &q)? / TAU;
            let f_mean = potential::hardy_integral(f, &square, 1.0, &q)? / TAU;
            let b1_squared = b[1].norm_sqr();
            let violations = rows
                .iter()
                .filter(|r| r.n >= start)
                .filter(|r| {
                    !(r.b_sum <= g_mean + CHAIN_TOL
                        && g_mean <= f_mean + CHAIN_TOL
                        && f_mean <= r.a_sum + b1_squared + CHAIN_TOL)
                })
                .map(|r| r.n)
                .collect();
            Some(ParsevalChain {
                g_mean,
                f_mean,
                b1_squared,
                violations,
            })
        }
        Some(_) => {
            diagnostics.push(
                "boundary means unavailable: a map is not evaluable on the unit circle".into(),
            );
            None
        }
        None => None,
    };
    Ok(DominationTable {
        rows,
        n_found,
        chain,
        diagnostics,
    })
}

/// Growth of `|b_n| / √n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthBound {
    pub sup: f64,
    pub argmax: usize,
    /// `max_{1<=k<=n} |b_k| / √k` for `n = 1..=n_max`.
    pub running_max: Vec<f64>,
}

/// `sup_{1<=n<=n_max} |b_n| / √n`, a diagnostic for `b_n = O(√n)`.
pub fn sqrt_growth_bound(g: &AnalyticMap, n_max: usize) -> Result<GrowthBound> {
    if n_max < 1 {
        return Err(Error::Precondition("growth bound needs n_max >= 1".into()));
    }
    let b = coefficients(g, n_max)?;
    let mut running_max = Vec::with_capacity(n_max);
    let (mut sup, mut argmax) = (f64::NEG_INFINITY, 1);
    for (n, bn) in b.iter().enumerate().skip(1) {
        let ratio = bn.norm() / (n as f64).sqrt();
        if ratio > sup {
            sup = ratio;
            argmax = n;
        }
        running_max.push(sup);
    }
    Ok(GrowthBound {
        sup,
        argmax,
        running_max,
    })
}

fn rescaled_subordination(f: &AnalyticMap, g: &AnalyticMap, r: f64) -> Result<Vec<Hypothesis>> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Precondition(format!(
            "radius {r} must lie in (0, 1)"
        )));
    }
    let fr = dilate(f, r)?;
    let gr = dilate(g, r)?;
    Ok(vec![potential::require_subordinate(
        &gr,
        &fr,
        "g(r·) subordinate to f(r·)",
    )?])
}

fn threshold_note(report: VerificationReport, r: f64, bound: f64) -> VerificationReport {
    if r > bound {
        report.note(format!(
            "advisory: r = {r} exceeds the threshold {bound:.9}; the bound is not claimed here"
        ))
    } else {
        report
    }
}

/// Area comparison `π Σ n|b_n|² r^{4n} <= π Σ n|a_n|² r^{2n}`: the image of
/// `|z| < r²` under `g` against the image of `|z| < r` under `f`.
pub fn area_comparison(f: &AnalyticMap, g: &AnalyticMap, r: f64) -> Result<VerificationReport> {
    let hypotheses = rescaled_subordination(f, g, r)?;
    let lhs = image_area(g, r * r)?;
    let rhs = image_area(f, r)?;
    let report = VerificationReport::at_most(lhs, rhs, 1e-10 * (1.0 + rhs.abs()));
    Ok(potential::apply(
        threshold_note(report, r, area_threshold()),
        hypotheses,
    ))
}

/// Derivative-norm comparison `∫|g'(r² e^{iθ})|² dθ <= ∫|f'(r e^{iθ})|² dθ`,
/// by quadrature, cross-checked against `2π Σ n²|c_n|² ρ^{2n-2}`.
pub fn derivative_hardy_comparison(
    f: &AnalyticMap,
    g: &AnalyticMap,
    r: f64,
    q: &Quadrature,
) -> Result<VerificationReport> {
    let hypotheses = rescaled_subordination(f, g, r)?;
    let lhs = derivative_norm(g, r * r, q)?;
    let rhs = derivative_norm(f, r, q)?;
    let mut report = VerificationReport::at_most(lhs, rhs, 1e-10 * (1.0 + rhs.abs()));
    for (side, quad, series) in [
        ("lhs", lhs, derivative_norm_series(g, r * r)),
        ("rhs", rhs, derivative_norm_series(f, r)),
    ] {
        match series {
            Ok(s) if (s - quad).abs() <= DUAL_FORM_TOL * (1.0 + s.abs()) => {}
            Ok(s) => {
                report = report.inconclusive(format!(
                    "{side}: quadrature {quad} and coefficient form {s} disagree"
                ))
            }
            Err(e) => report = report.note(format!("{side}: coefficient form unavailable ({e})")),
        }
    }
    Ok(potential::apply(
        threshold_note(report, r, derivative_threshold()),
        hypotheses,
    ))
}
