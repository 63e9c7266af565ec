//! Holomorphic maps on disks: Möbius automorphisms, finite Blaschke products,
//! polynomials, truncated power series, compositions and output scalings.
//!
//! Maps are immutable and cheap to clone. Every representation evaluates its
//! value and derivative in closed form; rational representations also expose
//! an expanded numerator/denominator pair used for preimage solving.

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{Polynomial, Rational};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Möbius parameters must satisfy `|a| < 1 - MOBIUS_MARGIN`.
pub const MOBIUS_MARGIN: f64 = 1e-12;
/// Power series are evaluated only for `|z| <= SERIES_GUARD * radius`.
pub const SERIES_GUARD: f64 = 0.95;
/// Distinct points of a [`ZeroSet`] must be at least this far apart.
pub const ZERO_SEPARATION: f64 = 1e-9;
/// Coefficient series with a larger error estimate are not trusted.
pub const COEFFICIENT_TRUST: f64 = 1e-8;
/// Boundary samples used when checking a composition's range.
const COMPOSE_SAMPLES: usize = 512;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Finite multiset of points inside a disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    entries: Vec<(Complex64, u32)>,
    ambient_radius: f64,
}

impl ZeroSet {
    pub fn new(entries: Vec<(Complex64, u32)>, ambient_radius: f64) -> Result<Self> {
        if !(ambient_radius > 0.0) {
            return Err(Error::InvalidMap(format!(
                "ambient radius {ambient_radius} must be positive"
            )));
        }
        for (i, &(p, m)) in entries.iter().enumerate() {
            if m == 0 {
                return Err(Error::InvalidMap(format!(
                    "multiplicity of {p} must be positive"
                )));
            }
            if !(p.norm() < ambient_radius) {
                return Err(Error::InvalidMap(format!(
                    "point {p} is not inside the disk of radius {ambient_radius}"
                )));
            }
            if entries[..i]
                .iter()
                .any(|&(q, _)| (p - q).norm() <= ZERO_SEPARATION)
            {
                return Err(Error::InvalidMap(format!(
                    "point {p} repeated; merge multiplicities instead"
                )));
            }
        }
        Ok(ZeroSet {
            entries,
            ambient_radius,
        })
    }

    pub fn empty(ambient_radius: f64) -> Self {
        ZeroSet {
            entries: Vec::new(),
            ambient_radius,
        }
    }

    pub fn entries(&self) -> &[(Complex64, u32)] {
        &self.entries
    }

    pub fn ambient_radius(&self) -> f64 {
        self.ambient_radius
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// `Σ m log|b|`; zero for the empty set and `-inf` if the origin is included.
    pub fn log_modulus_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(p, m)| m as f64 * p.norm().ln())
            .sum()
    }

    /// Smallest modulus among the points, if any.
    pub fn min_modulus(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.0.norm())
            .min_by(f64::total_cmp)
    }
}

/// Taylor coefficients at the origin extracted from boundary samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub coeffs: Vec<Complex64>,
    pub extraction_radius: f64,
    pub error_estimate: f64,
}

impl CoefficientSeries {
    pub fn is_trusted(&self) -> bool {
        self.error_estimate < COEFFICIENT_TRUST
    }
}

/// Structural form of an [`AnalyticMap`].
#[derive(Debug, Clone)]
pub enum Repr {
    Identity,
    /// `ψ_a(z) = (z + a) / (1 + ā z)`.
    Mobius(Complex64),
    /// `e^{iφ} Π ((z - a) / (1 - ā z))^m`.
    Blaschke {
        zeros: ZeroSet,
        phase: f64,
    },
    Polynomial(Polynomial),
    PowerSeries {
        coeffs: Vec<Complex64>,
        radius: f64,
    },
    /// `outer ∘ inner`.
    Composition {
        outer: AnalyticMap,
        inner: AnalyticMap,
    },
    /// `factor · map(z)`.
    Scaled {
        map: AnalyticMap,
        factor: Complex64,
    },
}

#[derive(Debug)]
struct Inner {
    repr: Repr,
    guard: f64,
    rational: OnceLock<Option<Rational>>,
}

/// A holomorphic map given in closed form.
#[derive(Debug, Clone)]
pub struct AnalyticMap(Arc<Inner>);

impl AnalyticMap {
    fn from_repr(repr: Repr, guard: f64) -> Self {
        AnalyticMap(Arc::new(Inner {
            repr,
            guard,
            rational: OnceLock::new(),
        }))
    }

    pub fn identity() -> Self {
        Self::from_repr(Repr::Identity, f64::INFINITY)
    }

    /// Disk automorphism sending 0 to `a`.
    pub fn mobius(a: Complex64) -> Result<Self> {
        if !a.re.is_finite() || !a.im.is_finite() || a.norm() >= 1.0 - MOBIUS_MARGIN {
            return Err(Error::InvalidMap(format!(
                "Möbius parameter {a} must satisfy |a| < 1"
            )));
        }
        Ok(Self::from_repr(Repr::Mobius(a), pole_guard(a.norm())))
    }

    /// Finite Blaschke product with the given zeros (inside the unit disk).
    pub fn blaschke(zeros: ZeroSet, phase: f64) -> Result<Self> {
        if zeros.ambient_radius() > 1.0 {
            let zeros = ZeroSet::new(zeros.entries().to_vec(), 1.0)?;
            return Self::blaschke(zeros, phase);
        }
        if !phase.is_finite() {
            return Err(Error::InvalidMap("Blaschke phase must be finite".into()));
        }
        let max = zeros
            .entries()
            .iter()
            .map(|e| e.0.norm())
            .fold(0.0, f64::max);
        Ok(Self::from_repr(
            Repr::Blaschke { zeros, phase },
            pole_guard(max),
        ))
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty()
            || coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidMap(
                "polynomial needs finite coefficients".into(),
            ));
        }
        Ok(Self::from_repr(
            Repr::Polynomial(Polynomial::new(coeffs)),
            f64::INFINITY,
        ))
    }

    /// Truncated power series with a declared radius of convergence.
    pub fn power_series(coeffs: Vec<Complex64>, radius: f64) -> Result<Self> {
        if coeffs.is_empty()
            || coeffs
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidMap(
                "power series needs finite coefficients".into(),
            ));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidMap(format!(
                "series radius {radius} must be positive"
            )));
        }
        Ok(Self::from_repr(
            Repr::PowerSeries { coeffs, radius },
            SERIES_GUARD * radius,
        ))
    }

    /// `factor · map(z)`.
    pub fn scaled(map: AnalyticMap, factor: Complex64) -> Result<Self> {
        if !factor.re.is_finite() || !factor.im.is_finite() {
            return Err(Error::InvalidMap("scale factor must be finite".into()));
        }
        let guard = map.guard_radius();
        Ok(Self::from_repr(Repr::Scaled { map, factor }, guard))
    }

    /// `outer ∘ inner`, checked by sampling `inner` on the circle of radius
    /// `min(1, guard(inner))` against the guard radius of `outer`.
    ///
    /// By the maximum principle the sampled circle bounds `inner` on the whole disk.
    pub fn compose(outer: &AnalyticMap, inner: &AnalyticMap) -> Result<Self> {
        let radius = inner.guard_radius().min(1.0);
        let outer_guard = outer.guard_radius();
        if outer_guard.is_finite() {
            let samples = par::map_range(COMPOSE_SAMPLES, |k| {
                let z = Complex64::from_polar(radius, TAU * k as f64 / COMPOSE_SAMPLES as f64);
                inner.eval_unchecked(z)
            });
            if let Some(&value) = samples.iter().find(|v| !within(v.norm(), outer_guard)) {
                return Err(Error::CompositionRange {
                    value,
                    guard: outer_guard,
                });
            }
        }
        Ok(Self::from_repr(
            Repr::Composition {
                outer: outer.clone(),
                inner: inner.clone(),
            },
            radius,
        ))
    }

    pub fn repr(&self) -> &Repr {
        &self.0.repr
    }

    /// Largest modulus at which evaluation is permitted.
    pub fn guard_radius(&self) -> f64 {
        self.0.guard
    }

    fn check(&self, z: Complex64) -> Result<()> {
        if within(z.norm(), self.0.guard) {
            Ok(())
        } else {
            Err(Error::EvalOutsideDomain {
                modulus: z.norm(),
                guard: self.0.guard,
            })
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// Exact derivative by the rules of each representation.
    pub fn derivative_eval(&self, z: Complex64) -> Result<Complex64> {
        self.check(z)?;
        Ok(self.value_and_derivative(z).1)
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        match &self.0.repr {
            Repr::Identity => z,
            Repr::Mobius(a) => (z + a) / (ONE + a.conj() * z),
            Repr::Blaschke { zeros, phase } => {
                let mut acc = Complex64::from_polar(1.0, *phase);
                for &(a, m) in zeros.entries() {
                    acc *= ((z - a) / (ONE - a.conj() * z)).powu(m);
                }
                acc
            }
            Repr::Polynomial(p) => p.eval(z),
            Repr::PowerSeries { coeffs, .. } => {
                coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
            }
            Repr::Composition { outer, inner } => outer.eval_unchecked(inner.eval_unchecked(z)),
            Repr::Scaled { map, factor } => factor * map.eval_unchecked(z),
        }
    }

    pub(crate) fn value_and_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        match &self.0.repr {
            Repr::Identity => (z, ONE),
            Repr::Mobius(a) => {
                let den = ONE + a.conj() * z;
                (
                    (z + a) / den,
                    Complex64::new(1.0 - a.norm_sqr(), 0.0) / (den * den),
                )
            }
            Repr::Blaschke { zeros, phase } => {
                let unit = Complex64::from_polar(1.0, *phase);
                let factors: Vec<(Complex64, Complex64, u32)> = zeros
                    .entries()
                    .iter()
                    .map(|&(a, m)| {
                        let den = ONE - a.conj() * z;
                        (
                            (z - a) / den,
                            Complex64::new(1.0 - a.norm_sqr(), 0.0) / (den * den),
                            m,
                        )
                    })
                    .collect();
                let value = factors.iter().fold(unit, |acc, &(t, _, m)| acc * t.powu(m));
                let mut deriv = ZERO;
                for (k, &(t, dt, m)) in factors.iter().enumerate() {
                    let mut term = unit * dt * m as f64 * t.powu(m - 1);
                    for (j, &(s, _, mj)) in factors.iter().enumerate() {
                        if j != k {
                            term *= s.powu(mj);
                        }
                    }
                    deriv += term;
                }
                (value, deriv)
            }
            Repr::Polynomial(p) => p.eval_with_derivative(z),
            Repr::PowerSeries { coeffs, .. } => {
                let mut v = ZERO;
                let mut dv = ZERO;
                for &c in coeffs.iter().rev() {
                    dv = dv * z + v;
                    v = v * z + c;
                }
                (v, dv)
            }
            Repr::Composition { outer, inner } => {
                let (w, dw) = inner.value_and_derivative(z);
                let (v, dv) = outer.value_and_derivative(w);
                (v, dv * dw)
            }
            Repr::Scaled { map, factor } => {
                let (v, dv) = map.value_and_derivative(z);
                (factor * v, factor * dv)
            }
        }
    }

    /// Expanded rational form, when every part of the map is rational.
    pub fn rational(&self) -> Option<&Rational> {
        self.0
            .rational
            .get_or_init(|| match &self.0.repr {
                Repr::Identity => Some(Rational::polynomial(Polynomial::z())),
                Repr::Mobius(a) => Some(Rational {
                    num: Polynomial::new(vec![*a, ONE]),
                    den: Polynomial::new(vec![ONE, a.conj()]),
                }),
                Repr::Blaschke { zeros, phase } => {
                    let mut num = Polynomial::constant(Complex64::from_polar(1.0, *phase));
                    let mut den = Polynomial::constant(ONE);
                    for &(a, m) in zeros.entries() {
                        let zf = Polynomial::new(vec![-a, ONE]);
                        let pf = Polynomial::new(vec![ONE, -a.conj()]);
                        for _ in 0..m {
                            num = &num * &zf;
                            den = &den * &pf;
                        }
                    }
                    Some(Rational { num, den })
                }
                Repr::Polynomial(p) => Some(Rational::polynomial(p.clone())),
                Repr::PowerSeries { .. } => None,
                Repr::Composition { outer, inner } => {
                    Some(outer.rational()?.compose(inner.rational()?))
                }
                Repr::Scaled { map, factor } => Some(map.rational()?.scale(*factor)),
            })
            .as_ref()
    }

    /// Topological degree as a self-cover of the unit disk, if the map is one
    /// (identity, Möbius, nonconstant Blaschke, unimodular scalings and
    /// compositions of these). Such maps are proper with image exactly the disk.
    pub fn disk_cover_degree(&self) -> Option<u32> {
        match &self.0.repr {
            Repr::Identity | Repr::Mobius(_) => Some(1),
            Repr::Blaschke { zeros, .. } => Some(zeros.total_multiplicity()).filter(|&d| d > 0),
            Repr::Composition { outer, inner } => {
                Some(outer.disk_cover_degree()? * inner.disk_cover_degree()?)
            }
            Repr::Scaled { map, factor } if (factor.norm() - 1.0).abs() < 1e-14 => {
                map.disk_cover_degree()
            }
            _ => None,
        }
    }

    /// Taylor coefficients `c_0..=c_{n_max}` by a uniform-node discrete Fourier
    /// sum on the circle of radius `rho`, cross-validated at `1.1 rho`.
    pub fn taylor_coefficients(&self, n_max: usize, rho: f64) -> Result<CoefficientSeries> {
        if !(rho > 0.0) || !within(1.1 * rho, self.guard_radius()) {
            return Err(Error::Precondition(format!(
                "extraction radius {rho} (and 1.1x) must lie inside the guard radius {}",
                self.guard_radius()
            )));
        }
        let nodes = (8 * n_max).max(256).next_power_of_two();
        let coeffs = self.dft_coefficients(n_max, rho, nodes);
        let check = self.dft_coefficients(n_max, 1.1 * rho, nodes);
        let error_estimate = coeffs
            .iter()
            .zip(&check)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        Ok(CoefficientSeries {
            coeffs,
            extraction_radius: rho,
            error_estimate,
        })
    }

    fn dft_coefficients(&self, n_max: usize, rho: f64, nodes: usize) -> Vec<Complex64> {
        let roots: Vec<Complex64> = (0..nodes)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / nodes as f64))
            .collect();
        let values = par::map_range(nodes, |k| self.eval_unchecked(roots[k] * rho));
        par::map_range(n_max + 1, |n| {
            let mut acc = ZERO;
            for (k, v) in values.iter().enumerate() {
                acc += v * roots[(nodes - (n * k) % nodes) % nodes];
            }
            acc / (nodes as f64 * rho.powi(n as i32))
        })
    }

    /// Evaluation on `n` uniform nodes of the circle `|z| = r`.
    pub fn sample_circle(&self, r: f64, n: usize) -> Result<Vec<Complex64>> {
        self.check(Complex64::new(r, 0.0))?;
        Ok(par::map_range(n, |k| {
            self.eval_unchecked(Complex64::from_polar(r, TAU * k as f64 / n as f64))
        }))
    }
}

fn within(modulus: f64, guard: f64) -> bool {
    modulus <= guard * (1.0 + 1e-12)
}

fn pole_guard(max_param: f64) -> f64 {
    if max_param == 0.0 {
        f64::INFINITY
    } else {
        (1.0 - 1e-9) / max_param
    }
}

impl fmt::Display for AnalyticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.repr {
            Repr::Identity => write!(f, "identity"),
            Repr::Mobius(a) => write!(f, "mobius({})", fmt_complex(*a)),
            Repr::Blaschke { zeros, phase } => {
                write!(f, "blaschke([")?;
                for (i, (p, m)) in zeros.entries().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "({}, {m})", fmt_complex(*p))?;
                }
                write!(f, "], {phase:?})")
            }
            Repr::Polynomial(p) => write!(f, "poly([{}])", join(p.coeffs())),
            Repr::PowerSeries { coeffs, radius } => {
                write!(f, "series([{}], {radius:?})", join(coeffs))
            }
            Repr::Composition { outer, inner } => write!(f, "compose({outer}, {inner})"),
            Repr::Scaled { map, factor } => write!(f, "scale({map}, {})", fmt_complex(*factor)),
        }
    }
}

/// `a+bi` with a mandatory sign between the parts; round-trips exactly.
pub fn fmt_complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{}{:?}i", c.re, sign, c.im.abs())
}

fn join(cs: &[Complex64]) -> String {
    cs.iter()
        .map(|c| fmt_complex(*c))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geometric() -> AnalyticMap {
        // z / (1 - 0.5 z) = Σ 0.5^{n-1} z^n
        let mut coeffs = vec![c(0.0, 0.0)];
        coeffs.extend((1..80).map(|n| c(0.5f64.powi(n - 1), 0.0)));
        AnalyticMap::power_series(coeffs, 2.0).unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = AnalyticMap::mobius(c(0.5, 0.0)).unwrap();
        assert_eq!(m.eval(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));

        let b =
            AnalyticMap::blaschke(ZeroSet::new(vec![(c(0.0, 0.0), 2)], 1.0).unwrap(), 0.0).unwrap();
        assert!((b.eval(c(0.0, 0.3)).unwrap() - c(-0.09, 0.0)).norm() < 1e-15);

        assert!((geometric().eval(c(0.5, 0.0)).unwrap() - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let sq = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(sq.derivative_eval(c(0.5, 0.0)).unwrap(), c(1.0, 0.0));
        let m = AnalyticMap::mobius(c(0.5, 0.0)).unwrap();
        assert!((m.derivative_eval(c(0.0, 0.0)).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
        let comp = AnalyticMap::compose(&sq, &m).unwrap();
        assert!((comp.derivative_eval(c(0.0, 0.0)).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compose_examples() {
        let m = AnalyticMap::mobius(c(0.5, 0.0)).unwrap();
        let sq = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let id = AnalyticMap::identity();
        let a = AnalyticMap::compose(&id, &m).unwrap();
        let b = AnalyticMap::compose(&m, &sq).unwrap();
        assert_eq!(b.eval(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
        let inv = AnalyticMap::mobius(c(-0.5, 0.0)).unwrap();
        let ident = AnalyticMap::compose(&inv, &m).unwrap();
        for k in 0..64 {
            let z = Complex64::from_polar(0.9 * k as f64 / 64.0, 0.37 * k as f64);
            assert_eq!(a.eval(z).unwrap(), m.eval(z).unwrap());
            assert!((ident.eval(z).unwrap() - z).norm() < 1e-12);
        }
    }

    #[test]
    fn compose_rejects_range_escape() {
        let s = AnalyticMap::power_series(vec![c(0.0, 0.0), c(1.0, 0.0)], 1.0).unwrap();
        let m = AnalyticMap::mobius(c(0.2, 0.0)).unwrap();
        assert!(matches!(
            AnalyticMap::compose(&s, &m),
            Err(Error::CompositionRange { .. })
        ));
    }

    #[test]
    fn guards_are_enforced() {
        assert!(AnalyticMap::mobius(c(1.0, 0.0)).is_err());
        assert!(AnalyticMap::mobius(c(0.0, 1.0 - 1e-13)).is_err());
        let s = geometric();
        assert!(s.eval(c(1.9, 0.0)).is_ok());
        assert!(matches!(
            s.eval(c(1.95, 0.0)),
            Err(Error::EvalOutsideDomain { .. })
        ));
        assert!(ZeroSet::new(vec![(c(1.0, 0.0), 1)], 1.0).is_err());
        assert!(ZeroSet::new(vec![(c(0.1, 0.0), 1), (c(0.1, 1e-10), 1)], 1.0).is_err());
    }

    #[test]
    fn taylor_examples() {
        let p = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)])
            .unwrap();
        let t = p.taylor_coefficients(5, 0.5).unwrap();
        assert!(t.is_trusted());
        for (n, want) in [0.0, 1.0, 0.0, 3.0, 0.0, 0.0].iter().enumerate() {
            assert!((t.coeffs[n] - c(*want, 0.0)).norm() < 1e-12);
        }

        let g = geometric().taylor_coefficients(6, 0.5).unwrap();
        assert!(g.is_trusted());
        for n in 1..=6 {
            assert!((g.coeffs[n] - c(0.5f64.powi(n as i32 - 1), 0.0)).norm() < 1e-12);
        }

        let m = AnalyticMap::mobius(c(0.5, 0.0))
            .unwrap()
            .taylor_coefficients(1, 0.5)
            .unwrap();
        assert!((m.coeffs[0] - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn dft_and_series_division_agree() {
        let b = AnalyticMap::blaschke(
            ZeroSet::new(vec![(c(0.5, 0.1), 1), (c(-0.3, 0.0), 2)], 1.0).unwrap(),
            0.4,
        )
        .unwrap();
        let dft = b.taylor_coefficients(16, 0.5).unwrap();
        let exact = b.rational().unwrap().taylor(16).unwrap();
        for n in 0..=16 {
            assert!((dft.coeffs[n] - exact[n]).norm() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn display_uses_grammar() {
        let m = AnalyticMap::mobius(c(0.5, -0.25)).unwrap();
        let sq = AnalyticMap::polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let g = AnalyticMap::compose(&m, &sq).unwrap();
        assert_eq!(
            g.to_string(),
            "compose(mobius(0.5-0.25i), poly([0.0+0.0i, 0.0+0.0i, 1.0+0.0i]))"
        );
    }
}
