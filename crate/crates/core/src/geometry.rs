//! Winding numbers, preimages, properness and subordination.
//!
//! Membership in the open image `f(𝔻)` of a proper map continuous on the
//! closed disk is decided by the winding number of `f|𝕋`: the boundary of the
//! image lies in `f(𝕋)`, so a point is in the image iff the boundary curve
//! winds around it.

use crate::error::{Error, Result};
use crate::maps::{AnalyticMap, ZeroSet};
use crate::par;
use crate::report::{Verdict, VerificationReport};
use crate::roots::{polynomial_roots, Root};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

/// Minimum distance between the sampled curve and the target point.
pub const CURVE_GUARD: f64 = 1e-9;
/// Maximum |g(0) - f(0)| for the centers to count as equal.
pub const CENTER_MATCH: f64 = 1e-10;
/// Default radius of the compact probe disk for containment checks.
pub const DEFAULT_PROBE_RADIUS: f64 = 0.995;

const INITIAL_NODES: usize = 256;
const MAX_NODES: usize = 1 << 20;
/// A step is accepted once its chord is at most this fraction of the
/// distance from its endpoints to the target.
const STEP_RATIO: f64 = 0.1;
/// Bound on step length times curve speed, relative to the same distance.
const SPEED_RATIO: f64 = 0.5;
const PROPER_PROBES: usize = 256;
const PROPER_INNER_RADIUS: f64 = 0.999;
const PROBE_CIRCLES: usize = 32;
const PROBE_ANGLES: usize = 256;
const MAX_WITNESSES: usize = 64;

/// Result of an argument-principle count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult {
    pub count: i64,
    /// Minimum of `|curve - w|` over all nodes.
    pub min_distance: f64,
    pub refined_nodes: usize,
    /// Every accepted step satisfied the local chord-to-distance bound.
    pub reliable: bool,
}

/// Winding number around `w` of the closed curve `path(t)`, `t ∈ [0, 1]`.
///
/// Steps whose argument increment exceeds π/2, or whose chord is large
/// compared with the distance to `w`, are bisected.
pub fn winding_along<P>(path: P, w: Complex64, initial_nodes: usize) -> Result<WindingResult>
where
    P: Fn(f64) -> Complex64,
{
    let sampled = |t: f64| (path(t), 0.0);
    let samples: Vec<(Complex64, f64)> = (0..initial_nodes)
        .map(|k| sampled(k as f64 / initial_nodes as f64))
        .collect();
    winding_from_samples(&sampled, &samples, w)
}

/// Curve point and speed `|γ'(t)|` on the circle `|z| = r`, `t ∈ [0, 1]`.
fn circle_point(f: &AnalyticMap, r: f64, t: f64) -> (Complex64, f64) {
    let z = Complex64::from_polar(r, TAU * t);
    let (v, dv) = f.value_and_derivative(z);
    (v, TAU * r * dv.norm())
}

fn circle_samples(f: &AnalyticMap, r: f64, n: usize) -> Vec<(Complex64, f64)> {
    par::map_range(n, |k| circle_point(f, r, k as f64 / n as f64))
}

/// [`winding_along`] starting from precomputed samples `path(k / n)`, so one
/// sampling of a curve can serve many target points.
///
/// `path` returns the point and the speed of the curve; a step is also
/// bisected while its length times the larger endpoint speed is large
/// compared with the distance to `w`. This catches loops traversed between
/// two nodes. A speed of zero disables the test.
fn winding_from_samples<P>(
    path: &P,
    samples: &[(Complex64, f64)],
    w: Complex64,
) -> Result<WindingResult>
where
    P: Fn(f64) -> (Complex64, f64),
{
    let initial_nodes = samples.len();
    let eval = |t: f64| {
        let (v, speed) = path(t);
        (v - w, speed)
    };
    let mut min_distance = f64::INFINITY;
    let mut nodes = initial_nodes;
    let mut total = 0.0;

    let starts: Vec<(f64, Complex64, f64)> = samples
        .iter()
        .enumerate()
        .map(|(k, &(v, speed))| (k as f64 / initial_nodes as f64, v - w, speed))
        .collect();
    for &(_, v, _) in &starts {
        min_distance = min_distance.min(v.norm());
    }
    if min_distance < CURVE_GUARD {
        return Err(Error::CurveTooClose {
            distance: min_distance,
        });
    }

    type Node = (f64, Complex64, f64);
    let mut stack: Vec<(Node, Node)> = Vec::new();
    for k in (0..initial_nodes).rev() {
        let a = starts[k];
        let b = if k + 1 == initial_nodes {
            (1.0, starts[0].1, starts[0].2)
        } else {
            starts[k + 1]
        };
        stack.push((a, b));
    }

    while let Some(((ta, va, sa), (tb, vb, sb))) = stack.pop() {
        let incr = (vb / va).arg();
        let chord = (vb - va).norm();
        let local = va.norm().min(vb.norm());
        let sweep = (tb - ta) * sa.max(sb);
        if incr.abs() <= FRAC_PI_2 && chord <= STEP_RATIO * local && sweep <= SPEED_RATIO * local {
            total += incr;
            continue;
        }
        if nodes >= MAX_NODES {
            return Err(Error::NonConvergent { nodes });
        }
        let tm = 0.5 * (ta + tb);
        if tm <= ta || tm >= tb {
            return Err(Error::CurveTooClose { distance: local });
        }
        let (vm, sm) = eval(tm);
        nodes += 1;
        min_distance = min_distance.min(vm.norm());
        if vm.norm() < CURVE_GUARD {
            return Err(Error::CurveTooClose {
                distance: vm.norm(),
            });
        }
        stack.push(((tm, vm, sm), (tb, vb, sb)));
        stack.push(((ta, va, sa), (tm, vm, sm)));
    }

    Ok(WindingResult {
        count: (total / TAU).round() as i64,
        min_distance,
        refined_nodes: nodes,
        reliable: true,
    })
}

/// Number of solutions of `f = w` in `|z| < circle_radius`, by the argument principle.
pub fn winding_number(f: &AnalyticMap, circle_radius: f64, w: Complex64) -> Result<WindingResult> {
    if !(circle_radius > 0.0) {
        return Err(Error::Precondition(format!(
            "circle radius {circle_radius} must be positive"
        )));
    }
    f.eval(Complex64::new(circle_radius, 0.0))?;
    let path = |t: f64| circle_point(f, circle_radius, t);
    winding_from_samples(&path, &circle_samples(f, circle_radius, INITIAL_NODES), w)
}

/// All solutions of `f(z) = w` with `|z| < rho`, with multiplicities.
///
/// Rational maps are solved through the companion matrix of the cleared
/// numerator `P - wQ`; the total multiplicity is checked against the winding
/// count on `|z| = rho` unless a root sits on that circle. Other maps fall
/// back to recursive subdivision counted by winding numbers.
pub fn preimages(f: &AnalyticMap, w: Complex64, rho: f64) -> Result<ZeroSet> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::Precondition(format!(
            "preimage radius {rho} must lie in (0, 1]"
        )));
    }
    match f.rational() {
        Some(rational) => {
            let level = rational.level_polynomial(w);
            if level.trimmed(1e-13).degree() == 0
                && level.norm_inf() <= 1e-14 * rational.den.norm_inf()
            {
                return Err(Error::DegenerateMap(format!("map is identically {w}")));
            }
            let den = &rational.den;
            let roots: Vec<Root> = polynomial_roots(&level)?
                .into_iter()
                .filter(|r| crate::roots::relative_residual(den, r.point) > 1e-10)
                .collect();
            let inside: Vec<(Complex64, u32)> = roots
                .iter()
                .filter(|r| r.point.norm() < rho)
                .map(|r| (r.point, r.multiplicity))
                .collect();
            let on_contour = roots.iter().any(|r| (r.point.norm() - rho).abs() < 1e-7);
            if !on_contour && rho <= f.guard_radius() {
                match winding_number(f, rho, w) {
                    Ok(wr) => {
                        let companion: u32 = inside.iter().map(|e| e.1).sum();
                        if wr.count != companion as i64 {
                            return Err(Error::RootCountMismatch {
                                companion: companion as usize,
                                winding: wr.count,
                            });
                        }
                    }
                    Err(Error::CurveTooClose { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            ZeroSet::new(inside, rho)
        }
        None => subdivision_preimages(f, w, rho),
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    count: i64,
}

impl Cell {
    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn size(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }
}

fn subdivision_preimages(f: &AnalyticMap, w: Complex64, rho: f64) -> Result<ZeroSet> {
    // The search square must stay inside the evaluation guard.
    let half = rho * 1.0137;
    if half * std::f64::consts::SQRT_2 > f.guard_radius() {
        return Err(Error::UnsupportedRepresentation(format!(
            "subdivision search on |z| < {rho} needs evaluation beyond the guard radius {}",
            f.guard_radius()
        )));
    }
    let o = Complex64::new(rho * 3.1e-4, -rho * 1.7e-4);
    let (x0, x1, y0, y1) = (o.re - half, o.re + half, o.im - half, o.im + half);
    let root_cell = Cell {
        x0,
        x1,
        y0,
        y1,
        count: rect_count(f, w, x0, x1, y0, y1)?,
    };

    let mut found: Vec<(Complex64, u32)> = Vec::new();
    let mut queue = vec![root_cell];
    while let Some(cell) = queue.pop() {
        if cell.count == 0 {
            continue;
        }
        let center = cell.center();
        if cell.count == 1 && cell.size() < 1e-3 {
            if let Some(z) = newton(f, w, center) {
                if (z - center).norm() < 2.0 * cell.size() {
                    found.push((z, 1));
                    continue;
                }
            }
        }
        if cell.size() < 1e-8 {
            found.push((center, cell.count as u32));
            continue;
        }
        let children = split(f, w, &cell)?;
        let total: i64 = children.iter().map(|c| c.count).sum();
        if total != cell.count {
            return Err(Error::RootCountMismatch {
                companion: total.max(0) as usize,
                winding: cell.count,
            });
        }
        queue.extend(children);
    }
    let mut merged: Vec<(Complex64, u32)> = Vec::new();
    for (z, m) in found {
        match merged.iter_mut().find(|e| (e.0 - z).norm() < 1e-9) {
            Some(e) => e.1 += m,
            None => merged.push((z, m)),
        }
    }
    ZeroSet::new(
        merged.into_iter().filter(|e| e.0.norm() < rho).collect(),
        rho,
    )
}

/// Splits a cell into four; off-center split points avoid roots on edges.
fn split(f: &AnalyticMap, w: Complex64, cell: &Cell) -> Result<Vec<Cell>> {
    'shifts: for shift in [0.0137, -0.0291, 0.0433, -0.0571] {
        let xm = 0.5 * (cell.x0 + cell.x1) + shift * (cell.x1 - cell.x0);
        let ym = 0.5 * (cell.y0 + cell.y1) - 0.7 * shift * (cell.y1 - cell.y0);
        let xs = [cell.x0, xm, cell.x1];
        let ys = [cell.y0, ym, cell.y1];
        let mut out = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[j], ys[j + 1]);
                match rect_count(f, w, x0, x1, y0, y1) {
                    Ok(count) => out.push(Cell {
                        x0,
                        x1,
                        y0,
                        y1,
                        count,
                    }),
                    Err(Error::CurveTooClose { .. }) => continue 'shifts,
                    Err(e) => return Err(e),
                }
            }
        }
        return Ok(out);
    }
    Err(Error::CurveTooClose { distance: 0.0 })
}

fn rect_count(f: &AnalyticMap, w: Complex64, x0: f64, x1: f64, y0: f64, y1: f64) -> Result<i64> {
    let corners = [
        Complex64::new(x0, y0),
        Complex64::new(x1, y0),
        Complex64::new(x1, y1),
        Complex64::new(x0, y1),
    ];
    let path = |t: f64| {
        let s = (t * 4.0).min(4.0 - 1e-12);
        let side = s.floor() as usize;
        let frac = s - side as f64;
        let a = corners[side];
        let b = corners[(side + 1) % 4];
        let (v, dv) = f.value_and_derivative(a + (b - a) * frac);
        (v, 4.0 * (b - a).norm() * dv.norm())
    };
    let samples: Vec<(Complex64, f64)> = (0..64).map(|k| path(k as f64 / 64.0)).collect();
    Ok(winding_from_samples(&path, &samples, w)?.count)
}

fn newton(f: &AnalyticMap, w: Complex64, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..50 {
        let (v, dv) = f.value_and_derivative(z);
        if dv.norm() == 0.0 {
            return None;
        }
        let step = (v - w) / dv;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > f.guard_radius() {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    Some(z)
}

/// True when `f` takes a single value (checked on a probe circle).
pub fn is_constant(f: &AnalyticMap) -> bool {
    let r = f.guard_radius().min(1.0) * 0.5;
    let center = f.eval_unchecked(Complex64::new(0.0, 0.0));
    (0..64).all(|k| {
        let z = Complex64::from_polar(r, TAU * k as f64 / 64.0);
        (f.eval_unchecked(z) - center).norm() <= 1e-14 * (1.0 + center.norm())
    })
}

/// Checks that `f(𝕋)` does not meet `f(𝔻)`, probing 256 boundary values.
///
/// Finite Blaschke products and compositions of disk automorphisms are
/// proper by construction. The report counts failing probes (`lhs`) against 0.
pub fn is_proper(f: &AnalyticMap) -> Result<VerificationReport> {
    if is_constant(f) {
        return Err(Error::DegenerateMap("constant map is not proper".into()));
    }
    if let Some(d) = f.disk_cover_degree() {
        return Ok(VerificationReport::at_most(0.0, 0.0, 0.0).note(format!(
            "proper by construction: degree-{d} self-cover of the unit disk"
        )));
    }
    let boundary = f.sample_circle(1.0, PROPER_PROBES)?;
    let outcomes = par::map_slice(&boundary, |&s| winding_number(f, PROPER_INNER_RADIUS, s));
    let mut failing = Vec::new();
    let mut inconclusive = 0usize;
    for (k, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(wr) if wr.count == 0 => {}
            Ok(wr) => failing.push((k, wr.count)),
            Err(Error::CurveTooClose { .. }) | Err(Error::NonConvergent { .. }) => {
                inconclusive += 1
            }
            Err(e) => return Err(e),
        }
    }
    let mut report = VerificationReport::at_most(failing.len() as f64, 0.0, 0.0);
    for &(k, count) in failing.iter().take(8) {
        report = report.note(format!(
            "boundary value f(e^(i{:.4})) is covered {count} times by f on |z| < {PROPER_INNER_RADIUS}",
            TAU * k as f64 / PROPER_PROBES as f64
        ));
    }
    if inconclusive * 20 > PROPER_PROBES {
        report = report.inconclusive(format!(
            "{inconclusive} of {PROPER_PROBES} probes hit the distance guard"
        ));
    } else if inconclusive > 0 {
        report = report.note(format!("{inconclusive} probes inconclusive (below 5%)"));
    }
    Ok(report)
}

/// Whether `w` lies in the open image `f(𝔻)` of a proper map `f`.
pub fn image_contains(f: &AnalyticMap, w: Complex64) -> Result<bool> {
    if f.disk_cover_degree().is_some() {
        return Ok(w.norm() < 1.0);
    }
    Ok(winding_number(f, 1.0, w)?.count >= 1)
}

/// The image of the unit circle under a map, sampled once for repeated
/// membership tests.
pub struct BoundaryCurve<'a> {
    map: &'a AnalyticMap,
    samples: Vec<(Complex64, f64)>,
}

impl<'a> BoundaryCurve<'a> {
    pub fn new(map: &'a AnalyticMap) -> Result<Self> {
        let samples = if map.disk_cover_degree().is_some() {
            Vec::new()
        } else {
            map.eval(Complex64::new(1.0, 0.0))?;
            circle_samples(map, 1.0, INITIAL_NODES)
        };
        Ok(BoundaryCurve { map, samples })
    }

    /// Same answer as [`image_contains`].
    pub fn contains(&self, w: Complex64) -> Result<bool> {
        if self.samples.is_empty() {
            return Ok(w.norm() < 1.0);
        }
        let path = |t: f64| circle_point(self.map, 1.0, t);
        Ok(winding_from_samples(&path, &self.samples, w)?.count >= 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `g(z)` lies outside the image of `f`.
    Escapes { z: Complex64, value: Complex64 },
    /// Membership of `g(z)` could not be decided.
    Inconclusive {
        z: Complex64,
        value: Complex64,
        reason: String,
    },
}

impl Witness {
    pub fn point(&self) -> Complex64 {
        match self {
            Witness::Escapes { z, .. } | Witness::Inconclusive { z, .. } => *z,
        }
    }
}

/// Outcome of the probe-based test `g(0) = f(0)` and `g(D̄_ρ) ⊂ f(𝔻)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinationVerdict {
    pub centers_match: bool,
    pub image_contained: bool,
    pub probe_radius: f64,
    /// First failing probes in probe order (at most 64 kept).
    pub witnesses: Vec<Witness>,
    pub failing_probes: usize,
}

impl SubordinationVerdict {
    pub fn holds(&self) -> bool {
        self.centers_match && self.image_contained && self.witnesses.is_empty()
    }
}

/// Probes `g` on 32 concentric circles up to `probe_radius` (256 angles each)
/// and tests each value for membership in `f(𝔻)`.
pub fn is_subordinate(
    g: &AnalyticMap,
    f: &AnalyticMap,
    probe_radius: f64,
) -> Result<SubordinationVerdict> {
    if !(probe_radius > 0.0 && probe_radius < 1.0) {
        return Err(Error::Precondition(format!(
            "probe radius {probe_radius} must lie in (0, 1)"
        )));
    }
    if is_constant(f) {
        return Err(Error::DegenerateMap("superordinate map is constant".into()));
    }
    let origin = Complex64::new(0.0, 0.0);
    let centers_match = (g.eval(origin)? - f.eval(origin)?).norm() < CENTER_MATCH;
    g.eval(Complex64::new(probe_radius, 0.0))?;

    let boundary = BoundaryCurve::new(f)?;
    let total = PROBE_CIRCLES * PROBE_ANGLES;
    let results = par::try_map_range(total, |idx| {
        let ring = idx / PROBE_ANGLES + 1;
        let k = idx % PROBE_ANGLES;
        let r = probe_radius * ring as f64 / PROBE_CIRCLES as f64;
        let z = Complex64::from_polar(r, TAU * k as f64 / PROBE_ANGLES as f64);
        let value = g.eval_unchecked(z);
        match boundary.contains(value) {
            Ok(true) => Ok(None),
            Ok(false) => Ok(Some(Witness::Escapes { z, value })),
            Err(e @ (Error::CurveTooClose { .. } | Error::NonConvergent { .. })) => {
                Ok(Some(Witness::Inconclusive {
                    z,
                    value,
                    reason: e.to_string(),
                }))
            }
            Err(e) => Err(e),
        }
    })?;
    let failing: Vec<Witness> = results.into_iter().flatten().collect();
    let image_contained = !failing.iter().any(|w| matches!(w, Witness::Escapes { .. }));
    Ok(SubordinationVerdict {
        centers_match,
        image_contained,
        probe_radius,
        failing_probes: failing.len(),
        witnesses: failing.into_iter().take(MAX_WITNESSES).collect(),
    })
}

/// Converts a subordination verdict into the verdict of a hypothesis check.
pub fn subordination_verdict(v: &SubordinationVerdict) -> Verdict {
    if !v.centers_match || !v.image_contained {
        Verdict::Fails
    } else if !v.witnesses.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    }
}
