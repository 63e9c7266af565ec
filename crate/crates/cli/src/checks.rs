//! Typed checks: argument validation and execution.

use crate::scenario::{build_map, map_expr, CheckSpec, GridSpec, Scenario, ScenarioError, Value};
use littlewood::coeffs::{self, DominationRow};
use littlewood::geometry;
use littlewood::lelong::{self, EnvelopeSolver, LogValue, WeightSystem};
use littlewood::maps::{fmt_complex, AnalyticMap};
use littlewood::par;
use littlewood::potential::{self, BoundaryData, Composed, Pushforward, Quadrature, TestFunction};
use littlewood::report::{Relation, Verdict, VerificationReport};
use littlewood::Error;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::time::Instant;

/// Boundary data for the pushforward checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Data {
    Cos(i32),
    Sin(i32),
    Const(f64),
    /// `u∘f` on the circle.
    Composed(TestFunction),
}

#[derive(Debug, Clone)]
pub enum Check {
    Littlewood {
        f: AnalyticMap,
        g: AnalyticMap,
        u: TestFunction,
        r: f64,
    },
    Jensen {
        f: AnalyticMap,
        r: f64,
    },
    ZeroSum {
        f: AnalyticMap,
        g: AnalyticMap,
    },
    VanishFree {
        g: AnalyticMap,
        a: Complex64,
    },
    EqualImage {
        f: AnalyticMap,
        g: AnalyticMap,
        u: TestFunction,
    },
    Submean {
        f: AnalyticMap,
        data: Data,
        x: Complex64,
        rho: f64,
    },
    Perron {
        f: AnalyticMap,
        u: TestFunction,
        t: Complex64,
    },
    Proper {
        f: AnalyticMap,
    },
    Subordinate {
        g: AnalyticMap,
        f: AnalyticMap,
    },
    Envelope {
        map: AnalyticMap,
        weights: WeightSystem,
        x: Complex64,
    },
    Green {
        map: AnalyticMap,
        weights: WeightSystem,
    },
    Sample {
        map: AnalyticMap,
        weights: WeightSystem,
        x: Complex64,
        samples: usize,
    },
    Polydisc {
        factors: Vec<AnalyticMap>,
        pole: Vec<Complex64>,
        weight: f64,
        x: Vec<Complex64>,
    },
    Domination {
        f: AnalyticMap,
        g: AnalyticMap,
        n: usize,
    },
    Growth {
        g: AnalyticMap,
        n: usize,
    },
    Area {
        f: AnalyticMap,
        g: AnalyticMap,
        r: f64,
    },
    Derivative {
        f: AnalyticMap,
        g: AnalyticMap,
        r: f64,
    },
    Zeros {
        f: AnalyticMap,
        w: Complex64,
        rho: f64,
    },
}

/// Subcommand families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Verify,
    Green,
    Coeffs,
    Zeros,
}

impl Check {
    pub fn belongs_to(&self, family: Family) -> bool {
        match family {
            Family::Verify => true,
            Family::Green => matches!(
                self,
                Check::Envelope { .. }
                    | Check::Green { .. }
                    | Check::Sample { .. }
                    | Check::Polydisc { .. }
            ),
            Family::Coeffs => matches!(
                self,
                Check::Domination { .. }
                    | Check::Growth { .. }
                    | Check::Area { .. }
                    | Check::Derivative { .. }
            ),
            Family::Zeros => matches!(
                self,
                Check::Zeros { .. }
                    | Check::Jensen { .. }
                    | Check::ZeroSum { .. }
                    | Check::VanishFree { .. }
            ),
        }
    }
}

/// Typed view of a check's `key=value` arguments.
struct Args<'a> {
    spec: &'a CheckSpec,
    scenario: &'a Scenario,
    used: Vec<&'a str>,
}

type ArgResult<T> = std::result::Result<T, String>;

impl<'a> Args<'a> {
    fn raw(&mut self, key: &'a str) -> Option<&'a Value> {
        let v = self
            .spec
            .args
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v);
        if v.is_some() {
            self.used.push(key);
        }
        v
    }

    fn required(&mut self, key: &'a str) -> ArgResult<&'a Value> {
        self.raw(key)
            .ok_or_else(|| format!("missing argument '{key}'"))
    }

    fn map(&mut self, key: &'a str) -> ArgResult<AnalyticMap> {
        let v = self.required(key)?;
        self.map_value(key, v)
    }

    fn map_value(&self, key: &str, v: &Value) -> ArgResult<AnalyticMap> {
        let expr = map_expr(v).map_err(|m| format!("argument '{key}': {m}"))?;
        build_map(&expr, &self.scenario.maps).map_err(|m| format!("argument '{key}': {m}"))
    }

    fn complex(&mut self, key: &'a str) -> ArgResult<Complex64> {
        complex_value(self.required(key)?)
            .ok_or_else(|| format!("argument '{key}' must be a complex literal"))
    }

    fn complex_or(&mut self, key: &'a str, default: Complex64) -> ArgResult<Complex64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => complex_value(v)
                .ok_or_else(|| format!("argument '{key}' must be a complex literal")),
        }
    }

    fn real(&mut self, key: &'a str) -> ArgResult<f64> {
        real_value(self.required(key)?).ok_or_else(|| format!("argument '{key}' must be real"))
    }

    fn real_or(&mut self, key: &'a str, default: f64) -> ArgResult<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => real_value(v).ok_or_else(|| format!("argument '{key}' must be real")),
        }
    }

    fn count(&mut self, key: &'a str, default: Option<usize>) -> ArgResult<usize> {
        let v = match (self.raw(key), default) {
            (None, Some(d)) => return Ok(d),
            (None, None) => return Err(format!("missing argument '{key}'")),
            (Some(v), _) => v,
        };
        real_value(v)
            .filter(|x| x.fract() == 0.0 && *x >= 1.0 && *x <= 1e6)
            .map(|x| x as usize)
            .ok_or_else(|| format!("argument '{key}' must be a positive integer"))
    }

    fn test_function(&mut self, key: &'a str) -> ArgResult<TestFunction> {
        test_function(self.required(key)?).map_err(|m| format!("argument '{key}': {m}"))
    }

    fn complex_list(&mut self, key: &'a str) -> ArgResult<Vec<Complex64>> {
        match self.required(key)? {
            Value::List(items) => items
                .iter()
                .map(complex_value)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| format!("argument '{key}' must be a list of complex literals")),
            _ => Err(format!("argument '{key}' must be a list")),
        }
    }

    /// `poles=[(p, m), ...]`, or a single `pole=p` with optional `weight=m`.
    fn weights(&mut self) -> ArgResult<WeightSystem> {
        let poles = match (self.raw("poles"), self.raw("pole")) {
            (Some(_), Some(_)) => return Err("give either 'poles' or 'pole', not both".into()),
            (Some(Value::List(items)), None) => items
                .iter()
                .map(|item| match item {
                    Value::Tuple(pair) if pair.len() == 2 => {
                        Some((complex_value(&pair[0])?, real_value(&pair[1])?))
                    }
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .ok_or("poles must be (complex, weight) pairs")?,
            (Some(_), None) => return Err("poles must be a list".into()),
            (None, Some(v)) => {
                let p = complex_value(v).ok_or("pole must be a complex literal")?;
                vec![(p, self.real_or("weight", 1.0)?)]
            }
            (None, None) => return Err("missing argument 'poles'".into()),
        };
        WeightSystem::new(poles).map_err(|e| e.to_string())
    }

    fn data(&mut self, key: &'a str) -> ArgResult<Data> {
        let v = self.required(key)?;
        let int = |args: &[Value]| -> Option<i32> {
            match args {
                [a] => real_value(a)
                    .filter(|x| x.fract() == 0.0 && x.abs() <= 1e6)
                    .map(|x| x as i32),
                _ => None,
            }
        };
        match v {
            Value::Call(name, args) if name == "cos" => int(args)
                .map(Data::Cos)
                .ok_or("cos(k) needs an integer k".into()),
            Value::Call(name, args) if name == "sin" => int(args)
                .map(Data::Sin)
                .ok_or("sin(k) needs an integer k".into()),
            Value::Call(name, args) if name == "constant" => match args.as_slice() {
                [a] => real_value(a)
                    .map(Data::Const)
                    .ok_or("constant(c) needs a real c".into()),
                _ => Err("constant(c) takes one argument".into()),
            },
            other => test_function(other).map(Data::Composed).map_err(|_| {
                format!("argument '{key}' must be cos(k), sin(k), constant(c) or a test function")
            }),
        }
    }

    fn finish(self) -> ArgResult<()> {
        match self
            .spec
            .args
            .iter()
            .find(|(k, _)| !self.used.contains(&k.as_str()))
        {
            Some((k, _)) => Err(format!(
                "unknown argument '{k}' for check '{}'",
                self.spec.kind
            )),
            None => Ok(()),
        }
    }
}

fn complex_value(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(c) => Some(*c),
        _ => None,
    }
}

fn real_value(v: &Value) -> Option<f64> {
    complex_value(v).filter(|c| c.im == 0.0).map(|c| c.re)
}

/// `pow(p)`, `log(c)`, `re_squared` or `max_log(m)`.
pub fn test_function(v: &Value) -> ArgResult<TestFunction> {
    let one = |args: &[Value]| match args {
        [a] => Ok(a.clone()),
        _ => Err("expected one argument".to_string()),
    };
    match v {
        Value::Ident(name) if name == "re_squared" => Ok(TestFunction::ReSquared),
        Value::Call(name, args) => match name.as_str() {
            "pow" => real_value(&one(args)?)
                .ok_or("pow(p) needs a real p".to_string())
                .and_then(|p| TestFunction::power(p).map_err(|e| e.to_string())),
            "log" => complex_value(&one(args)?)
                .map(TestFunction::log_distance)
                .ok_or("log(c) needs a complex c".into()),
            "max_log" => real_value(&one(args)?)
                .ok_or("max_log(m) needs a real m".to_string())
                .and_then(|m| TestFunction::max_log(m).map_err(|e| e.to_string())),
            other => Err(format!("unknown test function '{other}'")),
        },
        other => Err(format!("'{other}' is not a test function")),
    }
}

/// Accepts the library operation names as aliases of the short check names.
pub fn canonical_kind(kind: &str) -> &str {
    match kind {
        "verify_littlewood" => "littlewood",
        "jensen_check" => "jensen",
        "zero_sum_inequality" => "zero_sum",
        "vanish_free_check" => "vanish_free",
        "equal_image_equality" => "equal_image",
        "submean_check" => "submean",
        "perron_chain" => "perron",
        "is_proper" => "proper",
        "is_subordinate" => "subordinate",
        "envelope_proper" => "envelope",
        "envelope_sample_check" => "sample",
        "envelope_polydisc" => "polydisc",
        "coeff_domination" => "domination",
        "sqrt_growth_bound" => "growth",
        "area_comparison" => "area",
        "derivative_hardy_comparison" => "derivative",
        "preimages" => "zeros",
        other => other,
    }
}

fn prepare_one(spec: &CheckSpec, scenario: &Scenario) -> ArgResult<Check> {
    let mut a = Args {
        spec,
        scenario,
        used: Vec::new(),
    };
    let check = match canonical_kind(&spec.kind) {
        "littlewood" => Check::Littlewood {
            f: a.map("f")?,
            g: a.map("g")?,
            u: a.test_function("u")?,
            r: a.real("r")?,
        },
        "jensen" => Check::Jensen {
            f: a.map("f")?,
            r: a.real_or("r", 1.0)?,
        },
        "zero_sum" => Check::ZeroSum {
            f: a.map("f")?,
            g: a.map("g")?,
        },
        "vanish_free" => Check::VanishFree {
            g: a.map("g")?,
            a: a.complex("a")?,
        },
        "equal_image" => Check::EqualImage {
            f: a.map("f")?,
            g: a.map("g")?,
            u: a.test_function("u")?,
        },
        "submean" => Check::Submean {
            f: a.map("f")?,
            data: a.data("data")?,
            x: a.complex("x")?,
            rho: a.real("rho")?,
        },
        "perron" => Check::Perron {
            f: a.map("f")?,
            u: a.test_function("u")?,
            t: a.complex("t")?,
        },
        "proper" => Check::Proper { f: a.map("f")? },
        "subordinate" => Check::Subordinate {
            g: a.map("g")?,
            f: a.map("f")?,
        },
        "envelope" => Check::Envelope {
            map: a.map("F")?,
            weights: a.weights()?,
            x: a.complex("x")?,
        },
        "green" => Check::Green {
            map: a.map("F")?,
            weights: a.weights()?,
        },
        "sample" => Check::Sample {
            map: a.map("F")?,
            weights: a.weights()?,
            x: a.complex("x")?,
            samples: a.count("samples", Some(1000))?,
        },
        "polydisc" => {
            let factors = match a.required("factors")? {
                Value::List(items) => items
                    .iter()
                    .map(|v| a.map_value("factors", v))
                    .collect::<ArgResult<Vec<_>>>()?,
                _ => return Err("argument 'factors' must be a list of maps".into()),
            };
            let pole = a.complex_list("pole")?;
            let x = a.complex_list("x")?;
            if pole.len() != factors.len() || x.len() != factors.len() {
                return Err("'factors', 'pole' and 'x' must have the same length".into());
            }
            Check::Polydisc {
                factors,
                pole,
                weight: a.real_or("weight", 1.0)?,
                x,
            }
        }
        "domination" => Check::Domination {
            f: a.map("f")?,
            g: a.map("g")?,
            n: a.count("n", Some(32))?,
        },
        "growth" => Check::Growth {
            g: a.map("g")?,
            n: a.count("n", Some(64))?,
        },
        "area" => Check::Area {
            f: a.map("f")?,
            g: a.map("g")?,
            r: a.real("r")?,
        },
        "derivative" => Check::Derivative {
            f: a.map("f")?,
            g: a.map("g")?,
            r: a.real("r")?,
        },
        "zeros" => Check::Zeros {
            f: a.map("f")?,
            w: a.complex_or("w", Complex64::new(0.0, 0.0))?,
            rho: a.real_or("rho", 1.0)?,
        },
        other => return Err(format!("unknown check kind '{other}'")),
    };
    a.finish()?;
    Ok(check)
}

/// Resolves every check of the scenario against its maps.
pub fn prepare(scenario: &Scenario) -> Result<Vec<Check>, ScenarioError> {
    scenario
        .checks
        .iter()
        .map(|spec| {
            prepare_one(spec, scenario).map_err(|message| ScenarioError::Validation {
                line: spec.line,
                message,
            })
        })
        .collect()
}

/// A float that serializes non-finite values as strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str(&fmt_num(self.0))
        }
    }
}

/// Shortest round-tripping decimal, with `inf`, `-inf` and `nan` spelled out.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
    HypothesisViolation,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Inconclusive => "inconclusive",
            Outcome::HypothesisViolation => "hypothesis_violation",
        }
    }
}

/// Files produced by a check in addition to its record.
#[derive(Debug, Clone)]
pub enum Artifact {
    Grid {
        spec: GridSpec,
        points: Vec<(Complex64, LogValue)>,
    },
    Table(Vec<DominationRow>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub spec: String,
    pub outcome: Outcome,
    pub lhs: Num,
    pub rhs: Num,
    pub margin: Num,
    pub tolerance: Num,
    pub relation: Option<Relation>,
    pub seed: u64,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub artifact: Option<Artifact>,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

/// Settings shared by every check of a run.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    pub quadrature: Quadrature,
    pub grid: GridSpec,
}

struct Outcomes {
    report: Option<VerificationReport>,
    outcome: Outcome,
    diagnostics: Vec<String>,
    artifact: Option<Artifact>,
}

impl From<VerificationReport> for Outcomes {
    fn from(report: VerificationReport) -> Self {
        let outcome = match report.verdict {
            Verdict::Holds => Outcome::Holds,
            Verdict::Fails => Outcome::Fails,
            Verdict::Inconclusive => Outcome::Inconclusive,
        };
        Outcomes {
            report: Some(report),
            outcome,
            diagnostics: Vec::new(),
            artifact: None,
        }
    }
}

impl Outcomes {
    fn with_artifact(mut self, artifact: Artifact) -> Self {
        self.artifact = Some(artifact);
        self
    }
}

/// Numerical breakdowns are inconclusive; everything else means the inputs
/// do not satisfy the check's hypotheses.
fn classify(e: &Error) -> Outcome {
    match e {
        Error::NonConvergent { .. }
        | Error::CurveTooClose { .. }
        | Error::RootCountMismatch { .. }
        | Error::SingularNode
        | Error::UntrustedCoefficients { .. } => Outcome::Inconclusive,
        _ => Outcome::HypothesisViolation,
    }
}

fn log_report(lhs: LogValue, rhs: LogValue, tol: f64) -> VerificationReport {
    match (lhs, rhs) {
        (LogValue::NegInfinity, LogValue::NegInfinity) => {
            let mut r = VerificationReport::equal(f64::NEG_INFINITY, f64::NEG_INFINITY, tol);
            r.margin = 0.0;
            r.verdict = Verdict::Holds;
            r.note("both sides are -inf")
        }
        _ => VerificationReport::equal(lhs.to_f64(), rhs.to_f64(), tol),
    }
}

fn grid_points(spec: &GridSpec) -> Vec<Complex64> {
    let n = spec.resolution;
    let step = (spec.hi - spec.lo) / (n - 1) as f64;
    (0..n * n)
        .map(|k| {
            Complex64::new(
                spec.lo + step * (k % n) as f64,
                spec.lo + step * (k / n) as f64,
            )
        })
        .collect()
}

fn run_green(
    map: &AnalyticMap,
    weights: &WeightSystem,
    grid: GridSpec,
) -> littlewood::Result<Outcomes> {
    let solver = EnvelopeSolver::new(weights.clone(), map.clone())?;
    let points = grid_points(&grid);
    let evaluated = par::try_map_range(
        points.len(),
        |k| -> littlewood::Result<Option<(LogValue, f64)>> {
            let x = points[k];
            if !geometry::image_contains(map, x)? {
                return Ok(None);
            }
            let pre = solver.center_preimages(x)?;
            let (value, _) = solver.value_at_preimage(pre[0]);
            let mut spread: f64 = 0.0;
            for &z in &pre[1..] {
                let (other, _) = solver.value_at_preimage(z);
                if let (Some(a), Some(b)) = (value.finite(), other.finite()) {
                    spread = spread.max((a - b).abs());
                } else if value.is_finite() != other.is_finite() {
                    spread = f64::INFINITY;
                }
            }
            Ok(Some((value, spread)))
        },
    )?;
    let mut kept = Vec::new();
    let mut spread: f64 = 0.0;
    for (x, e) in points.iter().zip(evaluated) {
        if let Some((v, s)) = e {
            kept.push((*x, v));
            spread = spread.max(s);
        }
    }
    let mut out: Outcomes = VerificationReport::at_most(spread, 0.0, 1e-10)
        .note(format!("{} of {} grid points lie in the image", kept.len(), points.len()))
        .note("lhs: largest disagreement between values built from different preimages of a grid point")
        .into();
    out.artifact = Some(Artifact::Grid {
        spec: grid,
        points: kept,
    });
    Ok(out)
}

fn execute(check: &Check, opts: &RunOptions) -> littlewood::Result<Outcomes> {
    let q = &opts.quadrature;
    Ok(match check {
        Check::Littlewood { f, g, u, r } => potential::verify_littlewood(f, g, u, *r, q)?.into(),
        Check::Jensen { f, r } => potential::jensen_check(f, *r, q)?.into(),
        Check::ZeroSum { f, g } => match potential::zero_sum_inequality(f, g) {
            Err(Error::CenterZero) => {
                let mut out: Outcomes =
                    log_report(LogValue::NegInfinity, LogValue::NegInfinity, 0.0).into();
                out.diagnostics
                    .push("f(0) = g(0) = 0: both zero sums are -inf".into());
                out
            }
            other => other?.into(),
        },
        Check::VanishFree { g, a } => potential::vanish_free_check(g, *a)?.into(),
        Check::EqualImage { f, g, u } => potential::equal_image_equality(f, g, u, q)?.into(),
        Check::Submean { f, data, x, rho } => {
            let boundary: Box<dyn BoundaryData> = match *data {
                Data::Cos(k) => Box::new(move |t: f64| (k as f64 * t).cos()),
                Data::Sin(k) => Box::new(move |t: f64| (k as f64 * t).sin()),
                Data::Const(c) => Box::new(move |_: f64| c),
                Data::Composed(u) => Box::new(Composed { map: f.clone(), u }),
            };
            let v = Pushforward::new(f, boundary.as_ref());
            potential::submean_check(&v, *x, *rho)?.into()
        }
        Check::Perron { f, u, t } => {
            let chain = potential::perron_chain(f, u, *t)?;
            let mut r = VerificationReport::at_most(
                chain.subharmonic,
                chain.harmonic,
                potential::SUBMEAN_TOL,
            )
            .note(format!("pushforward value {}", fmt_num(chain.pushforward)));
            let ordered = chain.subharmonic <= chain.pushforward + potential::SUBMEAN_TOL
                && chain.pushforward <= chain.harmonic + potential::SUBMEAN_TOL;
            if !ordered {
                r.verdict = Verdict::Fails;
                r = r.note("the pushforward value breaks the chain");
            }
            r.into()
        }
        Check::Proper { f } => geometry::is_proper(f)?.into(),
        Check::Subordinate { g, f } => {
            let v = geometry::is_subordinate(g, f, geometry::DEFAULT_PROBE_RADIUS)?;
            let mut r = VerificationReport::at_most(v.failing_probes as f64, 0.0, 0.0);
            if !v.centers_match {
                r.verdict = Verdict::Fails;
                r = r.note("g(0) != f(0)");
            }
            for w in v.witnesses.iter().take(4) {
                r = r.note(match w {
                    geometry::Witness::Escapes { z, value } => {
                        format!(
                            "g({}) = {} lies outside f(D)",
                            fmt_complex(*z),
                            fmt_complex(*value)
                        )
                    }
                    geometry::Witness::Inconclusive { z, reason, .. } => {
                        format!("undecided at {}: {reason}", fmt_complex(*z))
                    }
                });
            }
            match geometry::subordination_verdict(&v) {
                Verdict::Inconclusive => {
                    r.inconclusive("some probes are undecided near the image boundary")
                }
                Verdict::Fails => {
                    r.verdict = Verdict::Fails;
                    r
                }
                Verdict::Holds => r,
            }
            .into()
        }
        Check::Envelope { map, weights, x } => {
            let e = lelong::envelope_proper(weights, map, *x)?;
            let attained = lelong::lelong_functional(weights, &e.extremal_disc)?;
            let tol = 1e-10 * (1.0 + e.value.to_f64().abs().min(1e300));
            let mut r = log_report(e.value, attained, tol)
                .note(format!(
                    "centre preimage {}",
                    fmt_complex(e.center_preimage)
                ))
                .note("rhs: functional of the extremal disc");
            for c in &e.contributions {
                r = r.note(format!(
                    "pole {}: {}",
                    fmt_complex(Complex64::new(c.pole[0], c.pole[1])),
                    c.value
                ));
            }
            for d in e.diagnostics {
                r = r.note(d);
            }
            r.into()
        }
        Check::Green { map, weights } => run_green(map, weights, opts.grid)?,
        Check::Sample {
            map,
            weights,
            x,
            samples,
        } => lelong::envelope_sample_check(weights, map, *x, *samples, opts.seed)?.into(),
        Check::Polydisc {
            factors,
            pole,
            weight,
            x,
        } => {
            let e = lelong::envelope_polydisc(pole, *weight, factors, x)?;
            let attained = LogValue::log_modulus(e.pole_parameter).scale(*weight);
            let mut r = log_report(e.value, attained, 1e-12)
                .note(format!(
                    "disc passes through the pole at parameter {}",
                    fmt_complex(e.pole_parameter)
                ))
                .note(format!("leading coordinate {}", e.leading));
            let miss = e
                .extremal_disc
                .iter()
                .zip(pole)
                .map(|(f, p)| f.eval(e.pole_parameter).map(|v| (v - p).norm()))
                .collect::<littlewood::Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            if e.value.is_finite() && miss > 1e-12 {
                r.verdict = Verdict::Fails;
                r = r.note(format!("extremal disc misses the pole by {miss:e}"));
            }
            r.into()
        }
        Check::Domination { f, g, n } => {
            let t = coeffs::coeff_domination(f, g, *n)?;
            let last = *t.rows.last().expect("n >= 1");
            let mut r = VerificationReport::at_most(last.shifted_b_sum, last.a_sum, 1e-12);
            r = match t.n_found {
                Some(n0) => r.note(format!("domination holds for every computed n >= {n0}")),
                None => r.note("domination has not stabilised by the last row"),
            };
            if let Some(chain) = &t.chain {
                if !chain.violations.is_empty() {
                    r.verdict = Verdict::Fails;
                    r = r.note(format!(
                        "Parseval chain fails at rows {:?}",
                        chain.violations
                    ));
                }
            }
            for d in &t.diagnostics {
                r = r.note(d.clone());
            }
            Outcomes::from(r).with_artifact(Artifact::Table(t.rows))
        }
        Check::Growth { g, n } => {
            let b = coeffs::sqrt_growth_bound(g, *n)?;
            VerificationReport::at_most(b.sup, b.sup, 0.0)
                .note(format!("sup |b_n|/sqrt(n) attained at n = {}", b.argmax))
                .note(format!(
                    "running max at n = {}: {}",
                    n,
                    fmt_num(*b.running_max.last().unwrap())
                ))
                .note("diagnostic only: lhs = rhs = the observed supremum")
                .into()
        }
        Check::Area { f, g, r } => coeffs::area_comparison(f, g, *r)?.into(),
        Check::Derivative { f, g, r } => coeffs::derivative_hardy_comparison(f, g, *r, q)?.into(),
        Check::Zeros { f, w, rho } => {
            let pre = geometry::preimages(f, *w, *rho)?;
            let count = pre.total_multiplicity() as f64;
            let mut r = match geometry::winding_number(f, *rho, *w) {
                Ok(wr) => VerificationReport::equal(count, wr.count as f64, 0.0)
                    .note("rhs: winding count"),
                Err(e) => VerificationReport::equal(count, count, 0.0)
                    .inconclusive(format!("no winding count: {e}")),
            };
            for &(z, m) in pre.entries() {
                r = r.note(format!("zero {} multiplicity {m}", fmt_complex(z)));
            }
            r.into()
        }
    })
}

/// Runs one check into a record.
pub fn run_check(index: usize, spec: &CheckSpec, check: &Check, opts: &RunOptions) -> Record {
    let start = Instant::now();
    let result = execute(check, opts);
    let runtime_seconds = start.elapsed().as_secs_f64();
    let nan = Num(f64::NAN);
    let check_id = format!("{}#{}", spec.kind, index + 1);
    match result {
        Ok(out) => {
            let mut diagnostics = out.diagnostics;
            let (lhs, rhs, margin, tolerance, relation) = match out.report {
                Some(r) => {
                    diagnostics.splice(0..0, r.diagnostics);
                    (
                        Num(r.lhs),
                        Num(r.rhs),
                        Num(r.margin),
                        Num(r.tolerance),
                        Some(r.relation),
                    )
                }
                None => (nan, nan, nan, nan, None),
            };
            Record {
                check: check_id,
                spec: spec.to_string(),
                outcome: out.outcome,
                lhs,
                rhs,
                margin,
                tolerance,
                relation,
                seed: opts.seed,
                diagnostics,
                artifact: out.artifact,
                runtime_seconds,
            }
        }
        Err(e) => Record {
            check: check_id,
            spec: spec.to_string(),
            outcome: classify(&e),
            lhs: nan,
            rhs: nan,
            margin: nan,
            tolerance: nan,
            relation: None,
            seed: opts.seed,
            diagnostics: vec![e.to_string()],
            artifact: None,
            runtime_seconds,
        },
    }
}

/// Runs the selected checks concurrently; records keep declaration order.
pub fn run_all(
    scenario: &Scenario,
    checks: &[Check],
    family: Family,
    opts: &RunOptions,
) -> Vec<Record> {
    let selected: Vec<usize> = (0..checks.len())
        .filter(|&i| checks[i].belongs_to(family))
        .collect();
    par::map_slice(&selected, |&i| {
        run_check(i, &scenario.checks[i], &checks[i], opts)
    })
}

/// Process exit status for a set of records.
pub fn exit_code(records: &[Record]) -> i32 {
    let any = |o: Outcome| records.iter().any(|r| r.outcome == o);
    if any(Outcome::HypothesisViolation) {
        2
    } else if any(Outcome::Fails) {
        3
    } else if any(Outcome::Inconclusive) {
        4
    } else {
        0
    }
}
