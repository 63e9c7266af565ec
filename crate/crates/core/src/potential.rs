//! Boundary quadrature and the subordination inequalities built on it.
//!
//! Integrals over circles use the uniform-node periodic trapezoid rule, which
//! converges geometrically for the real-analytic integrands produced by the
//! built-in test functions away from their singular points.

use crate::error::{Error, Result};
use crate::geometry::{self, DEFAULT_PROBE_RADIUS};
use crate::maps::AnalyticMap;
use crate::par;
use crate::report::{Verdict, VerificationReport};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Default number of quadrature nodes.
pub const DEFAULT_NODES: usize = 1024;
/// Nodes closer than this to a logarithmic singularity trigger a radius nudge.
pub const SINGULAR_GUARD: f64 = 1e-8;
/// Size of a radius nudge.
pub const NUDGE: f64 = 1e-4;
/// Jensen residual tolerance.
pub const JENSEN_TOL: f64 = 1e-7;
/// Zero-sum inequality tolerance.
pub const ZERO_SUM_TOL: f64 = 1e-8;
/// Zeros closer than this to the Jensen contour are rejected.
pub const CONTOUR_GUARD: f64 = 1e-6;
/// Tolerance of the sub-mean-value check.
pub const SUBMEAN_TOL: f64 = 1e-6;
const POISSON_NODES: usize = 1024;
const POISSON_MAX_NODES: usize = 1 << 20;
const SUBMEAN_NODES: usize = 64;
const RANGE_SAMPLES: usize = 512;

/// Member of the built-in family of subharmonic functions on ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// `|w|^p`, `p > 0`.
    PowerModulus { p: f64 },
    /// `log|w - c|`.
    LogDistance { c: Complex64Ser },
    /// `(Re w)^2`.
    ReSquared,
    /// `max(log|w|, m)`.
    MaxLog { m: f64 },
}

/// Serializable complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex64Ser {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Ser {
    fn from(c: Complex64) -> Self {
        Complex64Ser { re: c.re, im: c.im }
    }
}

impl From<Complex64Ser> for Complex64 {
    fn from(c: Complex64Ser) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl TestFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Precondition(format!(
                "exponent {p} must be positive"
            )));
        }
        Ok(TestFunction::PowerModulus { p })
    }

    pub fn log_distance(c: Complex64) -> Self {
        TestFunction::LogDistance { c: c.into() }
    }

    pub fn max_log(m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Precondition("max_log floor must be finite".into()));
        }
        Ok(TestFunction::MaxLog { m })
    }

    pub fn eval(&self, w: Complex64) -> f64 {
        match *self {
            TestFunction::PowerModulus { p } => w.norm().powf(p),
            TestFunction::LogDistance { c } => (w - Complex64::from(c)).norm().ln(),
            TestFunction::ReSquared => w.re * w.re,
            TestFunction::MaxLog { m } => w.norm().ln().max(m),
        }
    }

    /// The point where the function is `-inf`, if any.
    pub fn singularity(&self) -> Option<Complex64> {
        match *self {
            TestFunction::LogDistance { c } => Some(c.into()),
            _ => None,
        }
    }
}

/// Quadrature settings shared by the boundary-integral checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub nodes: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            nodes: DEFAULT_NODES,
        }
    }
}

impl Quadrature {
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < 256 || !nodes.is_power_of_two() {
            return Err(Error::Precondition(format!(
                "node count {nodes} must be a power of two >= 256"
            )));
        }
        Ok(Quadrature { nodes })
    }
}

/// `∫_0^{2π} h(θ) dθ` by the `n`-node periodic trapezoid rule.
pub fn periodic_integral<H>(n: usize, h: H) -> f64
where
    H: Fn(f64) -> f64 + Sync + Send,
{
    let values = par::map_range(n, |k| h(TAU * k as f64 / n as f64));
    TAU * par::ordered_sum(&values) / n as f64
}

/// A Hardy integral together with the radius actually used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyValue {
    pub value: f64,
    pub radius: f64,
    pub nudged: bool,
}

/// `∫_0^{2π} u(f(r e^{iθ})) dθ`.
pub fn hardy_integral(f: &AnalyticMap, u: &TestFunction, r: f64, q: &Quadrature) -> Result<f64> {
    Ok(hardy_integral_detailed(f, u, r, q)?.value)
}

/// [`hardy_integral`], reporting any radius nudge used to step off a
/// logarithmic singularity.
pub fn hardy_integral_detailed(
    f: &AnalyticMap,
    u: &TestFunction,
    r: f64,
    q: &Quadrature,
) -> Result<HardyValue> {
    Quadrature::new(q.nodes)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Precondition(format!(
            "radius {r} must lie in (0, 1]"
        )));
    }
    f.eval(Complex64::new(r, 0.0))?;
    let n = q.nodes;
    let sample = |radius: f64| -> Vec<Complex64> {
        par::map_range(n, |k| {
            f.eval_unchecked(Complex64::from_polar(radius, TAU * k as f64 / n as f64))
        })
    };
    let integrate = |values: &[Complex64]| -> f64 {
        let terms: Vec<f64> = values.iter().map(|&w| u.eval(w)).collect();
        TAU * par::ordered_sum(&terms) / n as f64
    };
    let hits = |values: &[Complex64]| {
        u.singularity()
            .is_some_and(|c| values.iter().any(|&w| (w - c).norm() < SINGULAR_GUARD))
    };

    let values = sample(r);
    if !hits(&values) {
        return Ok(HardyValue {
            value: integrate(&values),
            radius: r,
            nudged: false,
        });
    }
    for radius in [r - NUDGE, r + NUDGE] {
        if radius <= 0.0 || f.eval(Complex64::new(radius, 0.0)).is_err() {
            continue;
        }
        let values = sample(radius);
        if !hits(&values) {
            return Ok(HardyValue {
                value: integrate(&values),
                radius,
                nudged: true,
            });
        }
    }
    Err(Error::SingularNode)
}

/// `∫ u(g(r e^{iθ})) dθ` on a list of radii, for monotone-limit reporting.
pub fn radial_profile(
    g: &AnalyticMap,
    u: &TestFunction,
    radii: &[f64],
    q: &Quadrature,
) -> Result<Vec<f64>> {
    radii.iter().map(|&r| hardy_integral(g, u, r, q)).collect()
}

/// Outcome of a hypothesis pre-check.
pub(crate) enum Hypothesis {
    Holds,
    Inconclusive(String),
}

pub(crate) fn require_proper(f: &AnalyticMap, name: &str) -> Result<Hypothesis> {
    let report = geometry::is_proper(f)?;
    match report.verdict {
        Verdict::Holds => Ok(Hypothesis::Holds),
        Verdict::Inconclusive => Ok(Hypothesis::Inconclusive(format!(
            "properness of {name} inconclusive: {}",
            report.diagnostics.join("; ")
        ))),
        Verdict::Fails => Err(Error::HypothesisViolation(format!(
            "{name} is not proper: {}",
            report.diagnostics.join("; ")
        ))),
    }
}

pub(crate) fn require_subordinate(
    g: &AnalyticMap,
    f: &AnalyticMap,
    what: &str,
) -> Result<Hypothesis> {
    let v = geometry::is_subordinate(g, f, DEFAULT_PROBE_RADIUS)?;
    if !v.centers_match {
        return Err(Error::HypothesisViolation(format!(
            "{what}: centers differ"
        )));
    }
    if !v.image_contained {
        let at = v.witnesses.first().map(|w| w.point()).unwrap_or_default();
        return Err(Error::HypothesisViolation(format!(
            "{what}: {} probes leave the image (first at z = {at})",
            v.failing_probes
        )));
    }
    if !v.witnesses.is_empty() {
        return Ok(Hypothesis::Inconclusive(format!(
            "{what}: {} probes undecided near the image boundary",
            v.failing_probes
        )));
    }
    Ok(Hypothesis::Holds)
}

pub(crate) fn apply(report: VerificationReport, checks: Vec<Hypothesis>) -> VerificationReport {
    checks.into_iter().fold(report, |r, h| match h {
        Hypothesis::Holds => r,
        Hypothesis::Inconclusive(reason) => r.inconclusive(reason),
    })
}

fn boundary_bounded(f: &AnalyticMap, u: &TestFunction, q: &Quadrature) -> Result<()> {
    let values = f.sample_circle(1.0, q.nodes)?;
    if let Some(w) = values.iter().find(|&&w| !u.eval(w).is_finite()) {
        return Err(Error::HypothesisViolation(format!(
            "u∘f is unbounded on the circle near f = {w}"
        )));
    }
    Ok(())
}

/// Checks `∫ u(g(r e^{iθ})) dθ <= ∫ u(f(e^{iθ})) dθ` for `0 < r < 1`, with
/// `f` proper and `g` subordinate to `f`.
pub fn verify_littlewood(
    f: &AnalyticMap,
    g: &AnalyticMap,
    u: &TestFunction,
    r: f64,
    q: &Quadrature,
) -> Result<VerificationReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Precondition(format!(
            "radius {r} must lie in (0, 1); use radial_profile for limits"
        )));
    }
    let hypotheses = vec![
        require_proper(f, "f")?,
        require_subordinate(g, f, "g subordinate to f")?,
    ];
    boundary_bounded(f, u, q)?;
    let lhs = hardy_integral_detailed(g, u, r, q)?;
    let rhs = hardy_integral_detailed(f, u, 1.0, q)?;
    let mut report =
        VerificationReport::at_most(lhs.value, rhs.value, 1e-7 * (1.0 + rhs.value.abs()));
    for (side, v) in [("lhs", lhs), ("rhs", rhs)] {
        if v.nudged {
            report = report.note(format!("{side} radius nudged to {}", v.radius));
        }
    }
    Ok(apply(report, hypotheses))
}

/// Jensen's formula on `|z| = r`:
/// `log|f(0)| + Σ_{|b|<r} m_b log(r/|b|) = (1/2π) ∫ log|f(r e^{iθ})| dθ`.
pub fn jensen_check(f: &AnalyticMap, r: f64, q: &Quadrature) -> Result<VerificationReport> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Precondition(format!(
            "radius {r} must lie in (0, 1]"
        )));
    }
    let f0 = f.eval(Complex64::new(0.0, 0.0))?;
    if f0.norm() == 0.0 {
        return Err(Error::Precondition("f(0) must be nonzero".into()));
    }
    let zeros = geometry::preimages(f, Complex64::new(0.0, 0.0), (r + CONTOUR_GUARD).min(1.0))?;
    if let Some(&(zero, _)) = zeros
        .entries()
        .iter()
        .find(|e| (e.0.norm() - r).abs() < CONTOUR_GUARD)
    {
        return Err(Error::ZeroOnContour { zero, radius: r });
    }
    let rhs = hardy_integral_detailed(
        f,
        &TestFunction::log_distance(Complex64::new(0.0, 0.0)),
        r,
        q,
    )?;
    let radius = rhs.radius;
    let lhs = f0.norm().ln()
        + zeros
            .entries()
            .iter()
            .filter(|e| e.0.norm() < radius)
            .map(|&(b, m)| m as f64 * (radius / b.norm()).ln())
            .sum::<f64>();
    let mut report = VerificationReport::equal(lhs, rhs.value / TAU, JENSEN_TOL);
    if rhs.nudged {
        report = report.note(format!("contour nudged to r = {radius}"));
    }
    Ok(report.note(format!(
        "{} zeros (with multiplicity) inside the contour",
        zeros.total_multiplicity()
    )))
}

/// Zero-moduli inequality `Σ_{g(b)=0} m_b log|b| >= Σ_{f(a)=0} m_a log|a|`
/// for `g` subordinate to a proper `f`; the report's `lhs` is the sum over
/// zeros of `g`. When `g` is proper with the same image, equality is required.
///
/// Fails with [`Error::CenterZero`] when `f(0) = g(0) = 0`: both sums are `-inf`.
pub fn zero_sum_inequality(f: &AnalyticMap, g: &AnalyticMap) -> Result<VerificationReport> {
    let origin = Complex64::new(0.0, 0.0);
    if f.eval(origin)?.norm() == 0.0 && g.eval(origin)?.norm() == 0.0 {
        return Err(Error::CenterZero);
    }
    let hypotheses = vec![
        require_proper(f, "f")?,
        require_subordinate(g, f, "g subordinate to f")?,
    ];
    let g_zeros = geometry::preimages(g, origin, 0.999)?;
    let f_zeros = geometry::preimages(f, origin, 1.0)?;
    let lhs = g_zeros.log_modulus_sum();
    let rhs = f_zeros.log_modulus_sum();
    let mut report = VerificationReport::at_least(lhs, rhs, ZERO_SUM_TOL);
    if f_zeros.is_empty() {
        report = report.note("f has no zeros; its sum is 0 by convention");
    }
    if g_zeros.is_empty() {
        report = report.note("g has no zeros in |z| < 0.999; its sum is 0 by convention");
    }

    let g_proper = matches!(
        geometry::is_proper(g).map(|r| r.verdict),
        Ok(Verdict::Holds)
    );
    let same_image =
        g_proper && geometry::is_subordinate(f, g, DEFAULT_PROBE_RADIUS).is_ok_and(|v| v.holds());
    if same_image {
        let gap = (lhs - rhs).abs();
        if gap <= ZERO_SUM_TOL {
            report = report.note(format!("equal-image case: sums agree to {gap:.3e}"));
        } else {
            report.verdict = Verdict::Fails;
            report = report.note(format!("equal-image case: sums differ by {gap:.3e}"));
        }
    }
    Ok(apply(report, hypotheses))
}

/// Zero-free disk for `g: 𝔻 → 𝔻` and a value `a ≠ g(0)`: `g - a` has no
/// zeros in `|z| < |a - x| / |1 - x̄ a|`, `x = g(0)`.
///
/// The report compares that radius (`lhs`) with the smallest modulus of a
/// solution of `g = a` in the disk (`rhs`, 1 when there is none).
pub fn vanish_free_check(g: &AnalyticMap, a: Complex64) -> Result<VerificationReport> {
    let x = g.eval(Complex64::new(0.0, 0.0))?;
    if (x - a).norm() < 1e-12 {
        return Err(Error::Precondition(format!("a = {a} coincides with g(0)")));
    }
    if a.norm() >= 1.0 {
        return Err(Error::Precondition(format!(
            "a = {a} must lie in the unit disk"
        )));
    }
    let radius = g.guard_radius().min(1.0);
    let boundary = g.sample_circle(radius, RANGE_SAMPLES)?;
    if let Some(&at) = boundary.iter().find(|w| w.norm() > 1.0 + 1e-12) {
        return Err(Error::RangeViolation { at });
    }
    let r = (a - x).norm() / (Complex64::new(1.0, 0.0) - x.conj() * a).norm();
    let solutions = geometry::preimages(g, a, radius)?;
    let nearest = solutions.min_modulus().unwrap_or(radius);
    Ok(VerificationReport::at_most(r, nearest, 1e-10).note(format!(
        "{} solutions of g = a in |z| < {radius}",
        solutions.total_multiplicity()
    )))
}

/// Real boundary data on the unit circle, as a function of the angle.
pub trait BoundaryData: Sync {
    fn value(&self, theta: f64) -> f64;
}

impl<F> BoundaryData for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn value(&self, theta: f64) -> f64 {
        self(theta)
    }
}

/// `u(f(e^{iθ}))`.
#[derive(Debug, Clone)]
pub struct Composed {
    pub map: AnalyticMap,
    pub u: TestFunction,
}

impl BoundaryData for Composed {
    fn value(&self, theta: f64) -> f64 {
        self.u
            .eval(self.map.eval_unchecked(Complex64::from_polar(1.0, theta)))
    }
}

/// Samples on uniform angles, linearly interpolated.
#[derive(Debug, Clone)]
pub struct Sampled(pub Vec<f64>);

impl BoundaryData for Sampled {
    fn value(&self, theta: f64) -> f64 {
        let n = self.0.len();
        let s = theta.rem_euclid(TAU) / TAU * n as f64;
        let k = (s.floor() as usize).min(n - 1);
        let frac = s - k as f64;
        self.0[k] * (1.0 - frac) + self.0[(k + 1) % n] * frac
    }
}

/// Harmonic extension of boundary data into the disk by Poisson-kernel quadrature.
pub struct PoissonExtension<'a> {
    data: &'a dyn BoundaryData,
    base: Vec<f64>,
}

impl<'a> PoissonExtension<'a> {
    pub fn new(data: &'a dyn BoundaryData) -> Self {
        let base = (0..POISSON_NODES)
            .map(|k| data.value(TAU * k as f64 / POISSON_NODES as f64))
            .collect();
        PoissonExtension { data, base }
    }

    fn quadrature(samples: &[f64], t: Complex64) -> f64 {
        let n = samples.len();
        let weight = 1.0 - t.norm_sqr();
        let mut acc = 0.0;
        for (k, &b) in samples.iter().enumerate() {
            let e = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
            acc += weight / (e - t).norm_sqr() * b;
        }
        acc / n as f64
    }

    /// `v(t) = (1/2π) ∫ P(t, e^{iθ}) b(θ) dθ`, `|t| <= 0.999`.
    ///
    /// Beyond `|t| = 0.99` the node count doubles until successive values
    /// agree to 1e-7.
    pub fn at(&self, t: Complex64) -> Result<f64> {
        if t.norm() > 0.999 {
            return Err(Error::Precondition(format!(
                "|t| = {} exceeds 0.999",
                t.norm()
            )));
        }
        let mut value = Self::quadrature(&self.base, t);
        if t.norm() <= 0.99 {
            return Ok(value);
        }
        let mut n = POISSON_NODES;
        while n < POISSON_MAX_NODES {
            n *= 2;
            let samples: Vec<f64> = (0..n)
                .map(|k| self.data.value(TAU * k as f64 / n as f64))
                .collect();
            let next = Self::quadrature(&samples, t);
            let settled = (next - value).abs() < 1e-7;
            value = next;
            if settled {
                return Ok(value);
            }
        }
        Err(Error::NonConvergent { nodes: n })
    }
}

/// One-shot [`PoissonExtension::at`].
pub fn poisson_extension(data: &dyn BoundaryData, t: Complex64) -> Result<f64> {
    PoissonExtension::new(data).at(t)
}

/// `V(x) = min { v(t) : f(t) = x }`, with `v` the harmonic extension of the data.
pub struct Pushforward<'a> {
    map: &'a AnalyticMap,
    extension: PoissonExtension<'a>,
}

impl<'a> Pushforward<'a> {
    pub fn new(map: &'a AnalyticMap, data: &'a dyn BoundaryData) -> Self {
        Pushforward {
            map,
            extension: PoissonExtension::new(data),
        }
    }

    pub fn map(&self) -> &AnalyticMap {
        self.map
    }

    pub fn extension(&self) -> &PoissonExtension<'a> {
        &self.extension
    }

    pub fn value(&self, x: Complex64) -> Result<f64> {
        let pre = geometry::preimages(self.map, x, 1.0)?;
        if pre.is_empty() {
            return Err(Error::EmptyPreimage(x));
        }
        let mut best = f64::INFINITY;
        for &(t, _) in pre.entries() {
            best = best.min(self.extension.at(t)?);
        }
        Ok(best)
    }
}

/// One-shot [`Pushforward::value`].
pub fn pushforward_superharmonic(
    f: &AnalyticMap,
    data: &dyn BoundaryData,
    x: Complex64,
) -> Result<f64> {
    Pushforward::new(f, data).value(x)
}

/// Super-mean-value test for `V` on the circle `|w - x| = rho`:
/// `lhs` is the 64-node circle mean, `rhs = V(x)`.
pub fn submean_check(v: &Pushforward<'_>, x: Complex64, rho: f64) -> Result<VerificationReport> {
    if !(rho > 0.0) {
        return Err(Error::Precondition(format!(
            "probe radius {rho} must be positive"
        )));
    }
    let nodes: Vec<Complex64> = (0..SUBMEAN_NODES)
        .map(|k| x + Complex64::from_polar(rho, TAU * k as f64 / SUBMEAN_NODES as f64))
        .collect();
    for &w in &nodes {
        if !geometry::image_contains(v.map(), w)? {
            return Err(Error::ProbeExitsImage(w));
        }
    }
    let values = par::try_map_range(nodes.len(), |k| v.value(nodes[k]))?;
    let lhs = par::ordered_sum(&values) / nodes.len() as f64;
    let rhs = v.value(x)?;
    Ok(VerificationReport::at_most(lhs, rhs, SUBMEAN_TOL))
}

/// The three values in `u(f(t)) <= V(f(t)) <= v(t)` for boundary data `u∘f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronChain {
    pub subharmonic: f64,
    pub pushforward: f64,
    pub harmonic: f64,
}

pub fn perron_chain(f: &AnalyticMap, u: &TestFunction, t: Complex64) -> Result<PerronChain> {
    let data = Composed {
        map: f.clone(),
        u: *u,
    };
    let v = Pushforward::new(f, &data);
    let x = f.eval(t)?;
    Ok(PerronChain {
        subharmonic: u.eval(x),
        pushforward: v.value(x)?,
        harmonic: v.extension().at(t)?,
    })
}

/// Equal images and centers give equal boundary integrals:
/// `∫ u(g(e^{iθ})) dθ = ∫ u(f(e^{iθ})) dθ`.
pub fn equal_image_equality(
    f: &AnalyticMap,
    g: &AnalyticMap,
    u: &TestFunction,
    q: &Quadrature,
) -> Result<VerificationReport> {
    let hypotheses = vec![
        require_proper(f, "f")?,
        require_proper(g, "g")?,
        require_subordinate(g, f, "g(𝔻) ⊂ f(𝔻)")?,
        require_subordinate(f, g, "f(𝔻) ⊂ g(𝔻)")?,
    ];
    let lhs = hardy_integral(g, u, 1.0, q)?;
    let rhs = hardy_integral(f, u, 1.0, q)?;
    Ok(apply(
        VerificationReport::equal(lhs, rhs, 1e-6 * (1.0 + rhs.abs())),
        hypotheses,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_pow(k: usize) -> AnalyticMap {
        let mut coeffs = vec![c(0.0, 0.0); k + 1];
        coeffs[k] = c(1.0, 0.0);
        AnalyticMap::polynomial(coeffs).unwrap()
    }

    fn q() -> Quadrature {
        Quadrature::default()
    }

    #[test]
    fn hardy_examples() {
        let id = AnalyticMap::identity();
        let v = hardy_integral(&id, &TestFunction::power(2.0).unwrap(), 0.5, &q()).unwrap();
        assert!((v - TAU * 0.25).abs() < 1e-14);

        let v = hardy_integral(&z_pow(3), &TestFunction::ReSquared, 1.0, &q()).unwrap();
        assert!((v - PI).abs() < 1e-13);

        let f = AnalyticMap::polynomial(vec![c(-1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let v = hardy_integral(&f, &TestFunction::log_distance(c(0.0, 0.0)), 1.0, &q()).unwrap();
        assert!((v - TAU * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hardy_nudges_off_singular_nodes() {
        // z hits c = 1 exactly at the node θ = 0.
        let id = AnalyticMap::identity();
        let v = hardy_integral_detailed(&id, &TestFunction::log_distance(c(1.0, 0.0)), 1.0, &q())
            .unwrap();
        assert!(v.nudged);
        assert_eq!(v.radius, 1.0 - NUDGE);
        // The n-node rule sums log|1 - r ω^k| to log(1 - r^n) exactly.
        let n = q().nodes as f64;
        let expected = TAU / n * (1.0 - v.radius.powf(n)).ln();
        assert!((v.value - expected).abs() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_bad_node_counts() {
        assert!(Quadrature::new(100).is_err());
        assert!(Quadrature::new(300).is_err());
        assert!(Quadrature::new(2048).is_ok());
    }

    #[test]
    fn littlewood_examples() {
        let g = z_pow(2);
        let f = z_pow(1);
        let r = verify_littlewood(&f, &g, &TestFunction::power(2.0).unwrap(), 0.9, &q()).unwrap();
        assert!(r.holds());
        assert!((r.lhs - TAU * 0.9f64.powi(4)).abs() < 1e-12);
        assert!((r.rhs - TAU).abs() < 1e-12);

        let f = AnalyticMap::mobius(c(0.3, 0.0)).unwrap();
        let g = AnalyticMap::compose(&f, &z_pow(2)).unwrap();
        assert!(
            verify_littlewood(&f, &g, &TestFunction::power(1.0).unwrap(), 0.5, &q())
                .unwrap()
                .holds()
        );

        assert!(matches!(
            verify_littlewood(&f, &f, &TestFunction::ReSquared, 1.0, &q()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn littlewood_rejects_non_subordinate() {
        let f = z_pow(1);
        let g = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(matches!(
            verify_littlewood(&f, &g, &TestFunction::ReSquared, 0.5, &q()),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn littlewood_margin_closes_as_r_approaches_one() {
        let f = AnalyticMap::mobius(c(0.4, 0.2)).unwrap();
        let u = TestFunction::power(2.0).unwrap();
        let margins: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&r| verify_littlewood(&f, &f, &u, r, &q()).unwrap().margin)
            .collect();
        assert!(margins.windows(2).all(|m| m[1] < m[0]));
        assert!(margins[2] < 0.05 * margins[0]);
    }

    #[test]
    fn jensen_examples() {
        let f = AnalyticMap::polynomial(vec![c(-1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let r = jensen_check(&f, 1.0, &q()).unwrap();
        assert!(r.holds());
        assert!((r.lhs - 2f64.ln()).abs() < 1e-12);

        let r = jensen_check(&AnalyticMap::mobius(c(0.5, 0.0)).unwrap(), 1.0, &q()).unwrap();
        assert!(r.holds() && r.lhs.abs() < 1e-12 && r.rhs.abs() < 1e-12);

        let f = AnalyticMap::polynomial(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = jensen_check(&f, 0.9, &q()).unwrap();
        assert!(r.holds());
        assert!((r.lhs - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn jensen_rejects_contour_zeros() {
        let f = AnalyticMap::polynomial(vec![c(-0.5, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            jensen_check(&f, 0.5, &q()),
            Err(Error::ZeroOnContour { .. })
        ));
    }

    #[test]
    fn zero_sum_examples() {
        let f = AnalyticMap::mobius(c(0.5, 0.0)).unwrap();
        let g = AnalyticMap::compose(&f, &z_pow(2)).unwrap();
        let r = zero_sum_inequality(&f, &g).unwrap();
        assert!(r.holds());
        assert!((r.lhs - 0.5f64.ln()).abs() < 1e-12);
        assert!((r.rhs - 0.5f64.ln()).abs() < 1e-12);
        assert!(r
            .diagnostics
            .iter()
            .any(|d| d.starts_with("equal-image case: sums agree")));

        let half = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let g = AnalyticMap::compose(&f, &half).unwrap();
        let r = zero_sum_inequality(&f, &g).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - 0.5f64.ln()).abs() < 1e-12);

        assert!(matches!(
            zero_sum_inequality(&z_pow(2), &z_pow(4)),
            Err(Error::CenterZero)
        ));
    }

    #[test]
    fn vanish_free_examples() {
        let m = AnalyticMap::mobius(c(0.5, 0.0)).unwrap();
        let g = AnalyticMap::compose(&m, &z_pow(2)).unwrap();
        let r = vanish_free_check(&g, c(0.0, 0.0)).unwrap();
        assert!(r.holds());
        assert!((r.lhs - 0.5).abs() < 1e-15);
        assert!((r.rhs - 0.5f64.sqrt()).abs() < 1e-12);

        assert!(matches!(
            vanish_free_check(&g, c(0.5, 0.0)),
            Err(Error::Precondition(_))
        ));

        // Sharp case: the zero sits on the circle of radius R.
        let r = vanish_free_check(&m, c(0.0, 0.0)).unwrap();
        assert!(r.holds());
        assert!((r.rhs - 0.5).abs() < 1e-15);

        let big = AnalyticMap::polynomial(vec![c(0.5, 0.0), c(0.9, 0.0)]).unwrap();
        assert!(matches!(
            vanish_free_check(&big, c(0.0, 0.0)),
            Err(Error::RangeViolation { .. })
        ));
    }

    #[test]
    fn poisson_examples() {
        let constant = |_: f64| 0.7;
        assert!((poisson_extension(&constant, c(0.3, -0.4)).unwrap() - 0.7).abs() < 1e-14);
        let cos = |t: f64| t.cos();
        assert!(poisson_extension(&cos, c(0.0, 0.0)).unwrap().abs() < 1e-15);
        assert!((poisson_extension(&cos, c(0.5, 0.0)).unwrap() - 0.5).abs() < 1e-14);
        // Near the boundary the refinement still recovers Re t.
        let t = c(0.0, 0.995);
        assert!((poisson_extension(&cos, t).unwrap() - t.re).abs() < 1e-7);
        assert!(poisson_extension(&cos, c(0.9995, 0.0)).is_err());
    }

    #[test]
    fn sampled_boundary_interpolates() {
        let n = 4096;
        let data = Sampled((0..n).map(|k| (TAU * k as f64 / n as f64).cos()).collect());
        assert!((poisson_extension(&data, c(0.5, 0.0)).unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn pushforward_examples() {
        let cos = |t: f64| t.cos();
        let v = pushforward_superharmonic(&z_pow(2), &cos, c(0.25, 0.0)).unwrap();
        assert!((v + 0.5).abs() < 1e-13);

        let constant = |_: f64| -1.25;
        let v = pushforward_superharmonic(&z_pow(2), &constant, c(0.1, 0.3)).unwrap();
        assert!((v + 1.25).abs() < 1e-14);

        let m = AnalyticMap::mobius(c(0.3, 0.0)).unwrap();
        let x = c(0.2, 0.1);
        let pre = crate::geometry::preimages(&m, x, 1.0).unwrap().entries()[0].0;
        let v = pushforward_superharmonic(&m, &cos, x).unwrap();
        assert!((v - pre.re).abs() < 1e-13);
    }

    #[test]
    fn submean_examples() {
        let cos = |t: f64| t.cos();
        let m = AnalyticMap::mobius(c(0.3, 0.0)).unwrap();
        let v = Pushforward::new(&m, &cos);
        let r = submean_check(&v, c(0.1, 0.2), 0.1).unwrap();
        assert!(r.holds() && r.margin.abs() < 1e-6);

        let sq = z_pow(2);
        let v = Pushforward::new(&sq, &cos);
        assert!(submean_check(&v, c(0.25, 0.0), 0.05).unwrap().holds());
        // Across the fold on the negative axis the inequality is strict.
        let r = submean_check(&v, c(-0.25, 0.0), 0.05).unwrap();
        assert!(r.holds() && r.margin > 1e-3);

        let constant = |_: f64| 3.0;
        let v = Pushforward::new(&sq, &constant);
        let r = submean_check(&v, c(0.3, 0.3), 0.05).unwrap();
        assert!(r.margin.abs() < 1e-13);

        assert!(matches!(
            submean_check(&v, c(0.97, 0.0), 0.05),
            Err(Error::ProbeExitsImage(_))
        ));
    }

    #[test]
    fn perron_chain_is_ordered() {
        let f = z_pow(2);
        let u = TestFunction::ReSquared;
        for t in [c(0.3, 0.2), c(-0.5, 0.4), c(0.1, -0.7)] {
            let ch = perron_chain(&f, &u, t).unwrap();
            assert!(ch.subharmonic <= ch.pushforward + 1e-6);
            assert!(ch.pushforward <= ch.harmonic + 1e-6);
        }
    }

    #[test]
    fn equal_image_examples() {
        let f = z_pow(2);
        let g = z_pow(3);
        let r = equal_image_equality(&f, &g, &TestFunction::ReSquared, &q()).unwrap();
        assert!(r.holds());
        assert!((r.lhs - PI).abs() < 1e-12 && (r.rhs - PI).abs() < 1e-12);

        let r =
            equal_image_equality(&f, &g, &TestFunction::log_distance(c(2.0, 0.0)), &q()).unwrap();
        assert!(r.holds());
        assert!((r.lhs - TAU * 2f64.ln()).abs() < 1e-12);

        let m = AnalyticMap::mobius(c(0.2, 0.1)).unwrap();
        let r = equal_image_equality(&m, &m, &TestFunction::MaxLog { m: -0.5 }, &q()).unwrap();
        assert_eq!(r.lhs, r.rhs);
    }
}
