//! Weighted Green functions as envelopes of the Lelong disc functional.
//!
//! For a weight system `α = Σ m_j δ_{p_j}` and an analytic disc `f`, the
//! functional sums `m_j · m_a · log|a|` over the points `a` of the disk that
//! `f` sends to a pole `p_j`. Its infimum over discs centred at `x` is
//! attained by `F∘ψ` for a proper `F` and a disk automorphism `ψ` moving the
//! origin to a preimage of `x`.

use crate::error::{Error, Result};
use crate::geometry;
use crate::maps::{AnalyticMap, ZeroSet};
use crate::par;
use crate::report::{Verdict, VerificationReport};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::Add;

/// Radius used to collect preimages of the poles under a candidate disc.
pub const FUNCTIONAL_RADIUS: f64 = 0.9999;
/// Tolerance of the sampled minimality check.
pub const SAMPLE_TOL: f64 = 1e-7;
/// Two points closer than this are treated as the same point.
pub const POINT_MATCH: f64 = 1e-12;
const MAX_INNER_DEGREE: usize = 4;
const SAMPLE_ZERO_RADIUS: f64 = 0.95;

/// A real number or `-∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogValue {
    Finite(f64),
    NegInfinity,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue::Finite(0.0);

    /// `log|w|`, with `log 0 = -∞`.
    pub fn log_modulus(w: Complex64) -> Self {
        let r = w.norm();
        if r == 0.0 {
            LogValue::NegInfinity
        } else {
            LogValue::Finite(r.ln())
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            LogValue::Finite(v) => Some(v),
            LogValue::NegInfinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, LogValue::Finite(_))
    }

    /// Multiplication by a positive weight.
    pub fn scale(self, m: f64) -> Self {
        match self {
            LogValue::Finite(v) => LogValue::Finite(m * v),
            LogValue::NegInfinity => LogValue::NegInfinity,
        }
    }

    pub fn max(self, other: Self) -> Self {
        match (self, other) {
            (LogValue::Finite(a), LogValue::Finite(b)) => LogValue::Finite(a.max(b)),
            (LogValue::NegInfinity, v) | (v, LogValue::NegInfinity) => v,
        }
    }

    /// `self - other` for a finite `other`; `-∞` stays `-∞`.
    pub fn minus(self, other: f64) -> Self {
        match self {
            LogValue::Finite(v) => LogValue::Finite(v - other),
            LogValue::NegInfinity => LogValue::NegInfinity,
        }
    }

    /// `-∞` maps to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }
}

impl Add for LogValue {
    type Output = LogValue;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (LogValue::Finite(a), LogValue::Finite(b)) => LogValue::Finite(a + b),
            _ => LogValue::NegInfinity,
        }
    }
}

impl std::iter::Sum for LogValue {
    fn sum<I: Iterator<Item = LogValue>>(iter: I) -> Self {
        iter.fold(LogValue::ZERO, Add::add)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (LogValue::Finite(a), LogValue::Finite(b)) => a.partial_cmp(b),
            (LogValue::NegInfinity, LogValue::NegInfinity) => Some(Ordering::Equal),
            (LogValue::NegInfinity, _) => Some(Ordering::Less),
            (_, LogValue::NegInfinity) => Some(Ordering::Greater),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogValue::Finite(v) => write!(f, "{v:?}"),
            LogValue::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Finite values serialize as numbers, `-∞` as the string `"-inf"`.
impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LogValue::Finite(v) => s.serialize_f64(*v),
            LogValue::NegInfinity => s.serialize_str("-inf"),
        }
    }
}

/// Positively weighted poles `Σ m_j δ_{p_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSystem {
    poles: Vec<(Complex64, f64)>,
}

impl WeightSystem {
    pub fn new(poles: Vec<(Complex64, f64)>) -> Result<Self> {
        for (i, &(p, m)) in poles.iter().enumerate() {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::InvalidMap(format!("pole {p} is not finite")));
            }
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::InvalidMap(format!(
                    "weight {m} at pole {p} must be positive"
                )));
            }
            if poles[..i]
                .iter()
                .any(|&(q, _)| (q - p).norm() <= POINT_MATCH)
            {
                return Err(Error::InvalidMap(format!("pole {p} listed twice")));
            }
        }
        Ok(WeightSystem { poles })
    }

    pub fn single(pole: Complex64, weight: f64) -> Result<Self> {
        Self::new(vec![(pole, weight)])
    }

    pub fn poles(&self) -> &[(Complex64, f64)] {
        &self.poles
    }

    /// The same poles with every weight multiplied by `k > 0`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(self.poles.iter().map(|&(p, m)| (p, k * m)).collect())
    }

    fn pole_at(&self, x: Complex64) -> Option<(Complex64, f64)> {
        self.poles
            .iter()
            .copied()
            .find(|&(p, _)| (p - x).norm() <= POINT_MATCH)
    }
}

/// The Lelong functional of the disc `f`: the weighted sum of `log|a|` over
/// solutions `a` of `f(a) = p_j` in `|a| < 0.9999`.
///
/// Returns `-∞` when `f(0)` is itself a pole.
pub fn lelong_functional(weights: &WeightSystem, f: &AnalyticMap) -> Result<LogValue> {
    let center = f.eval(Complex64::new(0.0, 0.0))?;
    if weights.pole_at(center).is_some() {
        return Ok(LogValue::NegInfinity);
    }
    let mut total = LogValue::ZERO;
    for &(p, m) in weights.poles() {
        let pre = geometry::preimages(f, p, FUNCTIONAL_RADIUS)?;
        total = total + LogValue::Finite(m * pre.log_modulus_sum());
    }
    Ok(total)
}

/// Pseudo-hyperbolic coordinate of `a` seen from `z`: `(a - z) / (1 - z̄ a)`.
pub fn disk_coordinate(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::new(1.0, 0.0) - z.conj() * a)
}

/// Contribution `m · log|(a - z)/(1 - z̄ a)|` of a single weighted pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleContribution {
    pub pole: [f64; 2],
    pub value: LogValue,
}

/// An envelope value together with a disc attaining it.
#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    pub value: LogValue,
    /// The preimage of the centre that the extremal disc starts from.
    pub center_preimage: Complex64,
    pub extremal_disc: AnalyticMap,
    pub contributions: Vec<PoleContribution>,
    pub diagnostics: Vec<String>,
}

/// Orders preimages by modulus, then by argument in `[0, 2π)`.
fn canonical_order(a: &Complex64, b: &Complex64) -> Ordering {
    let arg = |z: &Complex64| z.arg().rem_euclid(TAU);
    let (ra, rb) = (a.norm(), b.norm());
    if (ra - rb).abs() <= POINT_MATCH {
        arg(a).total_cmp(&arg(b))
    } else {
        ra.total_cmp(&rb)
    }
}

/// Envelope of the Lelong functional over discs in the image of a proper map.
///
/// The pole preimages are computed once, so evaluating on a grid only solves
/// `F(z) = x` per point.
#[derive(Debug, Clone)]
pub struct EnvelopeSolver {
    weights: WeightSystem,
    map: AnalyticMap,
    pole_preimages: Vec<ZeroSet>,
}

impl EnvelopeSolver {
    pub fn new(weights: WeightSystem, map: AnalyticMap) -> Result<Self> {
        let report = geometry::is_proper(&map)?;
        if report.verdict != Verdict::Holds {
            return Err(Error::HypothesisViolation(format!(
                "map is not proper ({}): {}",
                report.verdict,
                report.diagnostics.join("; ")
            )));
        }
        let pole_preimages = weights
            .poles()
            .iter()
            .map(|&(p, _)| geometry::preimages(&map, p, 1.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(EnvelopeSolver {
            weights,
            map,
            pole_preimages,
        })
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn map(&self) -> &AnalyticMap {
        &self.map
    }

    /// All preimages of `x`, in canonical order.
    pub fn center_preimages(&self, x: Complex64) -> Result<Vec<Complex64>> {
        if !geometry::image_contains(&self.map, x)? {
            return Err(Error::Precondition(format!(
                "{x} lies outside the image of the map"
            )));
        }
        let pre = geometry::preimages(&self.map, x, 1.0)?;
        let mut points: Vec<Complex64> = pre.entries().iter().map(|e| e.0).collect();
        if points.is_empty() {
            return Err(Error::EmptyPreimage(x));
        }
        points.sort_by(canonical_order);
        Ok(points)
    }

    /// Envelope value at `x`, built from the canonical preimage of `x`.
    pub fn envelope(&self, x: Complex64) -> Result<EnvelopeResult> {
        let z = self.center_preimages(x)?[0];
        self.envelope_from(x, z)
    }

    /// Envelope value at `x` built from a chosen preimage `z` of `x`.
    pub fn envelope_from(&self, x: Complex64, z: Complex64) -> Result<EnvelopeResult> {
        let image = self.map.eval(z)?;
        if (image - x).norm() > 1e-9 * (1.0 + x.norm()) {
            return Err(Error::Precondition(format!("{z} is not a preimage of {x}")));
        }
        let (value, contributions) = self.value_at_preimage(z);
        let mut diagnostics = Vec::new();
        if let Some((p, _)) = self.weights.pole_at(x) {
            diagnostics.push(format!("centre coincides with pole {p}"));
        }
        Ok(EnvelopeResult {
            value,
            center_preimage: z,
            extremal_disc: AnalyticMap::compose(&self.map, &AnalyticMap::mobius(z)?)?,
            contributions,
            diagnostics,
        })
    }

    /// `Σ_j m_j Σ_{F(a) = p_j} m_a log|(a - z)/(1 - z̄ a)|`.
    pub fn value_at_preimage(&self, z: Complex64) -> (LogValue, Vec<PoleContribution>) {
        let contributions: Vec<PoleContribution> = self
            .weights
            .poles()
            .iter()
            .zip(&self.pole_preimages)
            .map(|(&(p, m), pre)| {
                let value: LogValue = pre
                    .entries()
                    .iter()
                    .map(|&(a, k)| {
                        if (a - z).norm() <= POINT_MATCH {
                            LogValue::NegInfinity
                        } else {
                            LogValue::log_modulus(disk_coordinate(a, z)).scale(k as f64)
                        }
                    })
                    .sum();
                PoleContribution {
                    pole: [p.re, p.im],
                    value: value.scale(m),
                }
            })
            .collect();
        (contributions.iter().map(|c| c.value).sum(), contributions)
    }
}

/// One-shot [`EnvelopeSolver::envelope`].
pub fn envelope_proper(
    weights: &WeightSystem,
    map: &AnalyticMap,
    x: Complex64,
) -> Result<EnvelopeResult> {
    EnvelopeSolver::new(weights.clone(), map.clone())?.envelope(x)
}

/// Envelope for a single pole on a product of disk-like factors.
#[derive(Debug, Clone)]
pub struct PolydiscEnvelope {
    pub value: LogValue,
    /// Coordinate `i` of the extremal disc.
    pub extremal_disc: Vec<AnalyticMap>,
    /// Disc parameter at which the extremal disc passes through the pole.
    pub pole_parameter: Complex64,
    /// Per-coordinate `log|w_i|`, before scaling by the weight.
    pub coordinate_logs: Vec<LogValue>,
    /// Index of the coordinate attaining the maximum.
    pub leading: usize,
}

/// Single-pole envelope on `F_1(𝔻) × … × F_n(𝔻)` with each `F_i` a disk
/// automorphism: `m · max_i log|w_i|`, where `w_i` is the disk coordinate of
/// `F_i⁻¹(p_i)` seen from `F_i⁻¹(x_i)`.
pub fn envelope_polydisc(
    pole: &[Complex64],
    weight: f64,
    factors: &[AnalyticMap],
    x: &[Complex64],
) -> Result<PolydiscEnvelope> {
    let n = factors.len();
    if n == 0 || pole.len() != n || x.len() != n {
        return Err(Error::Precondition(format!(
            "dimension mismatch: {n} factors, pole of length {}, point of length {}",
            pole.len(),
            x.len()
        )));
    }
    if !(weight > 0.0 && weight.is_finite()) {
        return Err(Error::InvalidMap(format!(
            "weight {weight} must be positive"
        )));
    }
    let mut centers = Vec::with_capacity(n);
    let mut coords = Vec::with_capacity(n);
    for (i, factor) in factors.iter().enumerate() {
        if factor.disk_cover_degree() != Some(1) {
            return Err(Error::DegenerateFactor { index: i });
        }
        let solve = |w: Complex64| -> Result<Complex64> {
            let pre = geometry::preimages(factor, w, 1.0)?;
            match pre.entries() {
                [(z, 1)] => Ok(*z),
                _ => Err(Error::Precondition(format!("{w} is not in factor {i}"))),
            }
        };
        let s = solve(x[i])?;
        let q = solve(pole[i])?;
        centers.push(s);
        coords.push(disk_coordinate(q, s));
    }

    let mut leading = 0;
    for i in 1..n {
        if coords[i].norm() > coords[leading].norm() {
            leading = i;
        }
    }
    let a = coords[leading];
    let coordinate_logs: Vec<LogValue> = coords.iter().map(|&w| LogValue::log_modulus(w)).collect();
    let value = coordinate_logs
        .iter()
        .fold(LogValue::NegInfinity, |acc, &v| acc.max(v))
        .scale(weight);

    let extremal_disc = (0..n)
        .map(|i| {
            let slope = if a.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                coords[i] / a
            };
            let linear = AnalyticMap::polynomial(vec![Complex64::new(0.0, 0.0), slope])?;
            let moved = AnalyticMap::compose(&AnalyticMap::mobius(centers[i])?, &linear)?;
            AnalyticMap::compose(&factors[i], &moved)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolydiscEnvelope {
        value,
        extremal_disc,
        pole_parameter: a,
        coordinate_logs,
        leading,
    })
}

/// Random Blaschke product of degree 1 to 4 fixing the origin.
fn random_inner_factor(rng: &mut ChaCha8Rng) -> Result<AnalyticMap> {
    let degree = rng.random_range(1..=MAX_INNER_DEGREE);
    let mut zeros = vec![(Complex64::new(0.0, 0.0), 1)];
    for _ in 1..degree {
        let r = SAMPLE_ZERO_RADIUS * rng.random::<f64>().sqrt();
        zeros.push((Complex64::from_polar(r, TAU * rng.random::<f64>()), 1));
    }
    let phase = TAU * rng.random::<f64>();
    AnalyticMap::blaschke(ZeroSet::new(zeros, 1.0)?, phase)
}

/// Samples discs `F∘ψ∘B` through `x`, with `B` a random Blaschke product
/// fixing 0, and checks that none undercuts the envelope at `x`.
///
/// Sample 0 is the extremal disc itself. Sample `i` draws from a ChaCha
/// stream `i` of `seed`, so the outcome does not depend on scheduling.
/// The report's `lhs` is the smallest sampled functional, `rhs` the envelope.
pub fn envelope_sample_check(
    weights: &WeightSystem,
    map: &AnalyticMap,
    x: Complex64,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let solver = EnvelopeSolver::new(weights.clone(), map.clone())?;
    let envelope = solver.envelope(x)?;
    let target = envelope.value.finite().ok_or_else(|| {
        Error::Precondition(format!("envelope at {x} is -inf; nothing to sample"))
    })?;
    let values = par::try_map_range(samples, |i| -> Result<LogValue> {
        if i == 0 {
            return lelong_functional(weights, &envelope.extremal_disc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let inner = random_inner_factor(&mut rng)?;
        let disc = AnalyticMap::compose(&envelope.extremal_disc, &inner)?;
        lelong_functional(weights, &disc)
    })?;
    let (worst, min) = values.iter().enumerate().fold(
        (0, LogValue::Finite(f64::INFINITY)),
        |(k, best), (i, &v)| {
            if v < best {
                (i, v)
            } else {
                (k, best)
            }
        },
    );
    let lhs = if samples == 0 { target } else { min.to_f64() };
    Ok(VerificationReport::at_least(lhs, target, SAMPLE_TOL)
        .note(format!("seed {seed}, {samples} samples"))
        .note(format!("minimum gap {:e} at sample {worst}", lhs - target)))
}
