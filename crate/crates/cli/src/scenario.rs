//! Scenario files: named map definitions, checks, and output settings.
//!
//! ```text
//! # comment
//! f = mobius(0.3+0i)
//! g = compose(f, poly([0, 0, 1]))
//! check littlewood(f=f, g=g, u=pow(2), r=0.9)
//! output format=json
//! plot lo=-1 hi=1 resolution=128
//! ```

use littlewood::maps::{fmt_complex, AnalyticMap, ZeroSet};
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

pub const MAX_RESOLUTION: usize = 2048;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error at line {line}: {message}")]
    Validation { line: usize, message: String },
}

/// Untyped argument value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(Complex64),
    Ident(String),
    Call(String, Vec<Value>),
    List(Vec<Value>),
    Tuple(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[Value]) -> fmt::Result {
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
        match self {
            Value::Number(c) if c.im == 0.0 && c.im.is_sign_positive() => write!(f, "{:?}", c.re),
            Value::Number(c) => f.write_str(&fmt_complex(*c)),
            Value::Ident(s) => f.write_str(s),
            Value::Call(name, args) => {
                write!(f, "{name}(")?;
                join(f, args)?;
                f.write_str(")")
            }
            Value::List(items) => {
                f.write_str("[")?;
                join(f, items)?;
                f.write_str("]")
            }
            Value::Tuple(items) => {
                f.write_str("(")?;
                join(f, items)?;
                f.write_str(")")
            }
        }
    }
}

/// Syntax tree of a map expression.
#[derive(Debug, Clone, PartialEq)]
pub enum MapExpr {
    Identity,
    Mobius(Complex64),
    Blaschke(Vec<(Complex64, u32)>, f64),
    Poly(Vec<Complex64>),
    Series(Vec<Complex64>, f64),
    Compose(Box<MapExpr>, Box<MapExpr>),
    Scale(Box<MapExpr>, Complex64),
    Name(String),
}

fn fmt_list(items: &[Complex64]) -> String {
    items
        .iter()
        .map(|&c| fmt_complex(c))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Identity => f.write_str("identity"),
            MapExpr::Mobius(a) => write!(f, "mobius({})", fmt_complex(*a)),
            MapExpr::Blaschke(zeros, phase) => {
                let zs: Vec<String> = zeros
                    .iter()
                    .map(|&(a, m)| format!("({}, {m})", fmt_complex(a)))
                    .collect();
                write!(f, "blaschke([{}], {phase:?})", zs.join(", "))
            }
            MapExpr::Poly(c) => write!(f, "poly([{}])", fmt_list(c)),
            MapExpr::Series(c, r) => write!(f, "series([{}], {r:?})", fmt_list(c)),
            MapExpr::Compose(a, b) => write!(f, "compose({a}, {b})"),
            MapExpr::Scale(a, c) => write!(f, "scale({a}, {})", fmt_complex(*c)),
            MapExpr::Name(n) => f.write_str(n),
        }
    }
}

/// Plot grid over the square `[lo, hi]²` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub resolution: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: -1.0,
            hi: 1.0,
            resolution: 128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct MapDef {
    pub name: String,
    pub expr: MapExpr,
    pub map: AnalyticMap,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    pub kind: String,
    pub args: Vec<(String, Value)>,
    pub line: usize,
}

impl fmt::Display for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, (k, v)) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Scenario {
    pub maps: Vec<MapDef>,
    pub checks: Vec<CheckSpec>,
    pub format: Option<Format>,
    pub plot: Option<GridSpec>,
}

impl Scenario {
    pub fn map(&self, name: &str) -> Option<&MapDef> {
        self.maps.iter().find(|d| d.name == name)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

type PResult<T> = std::result::Result<T, ScenarioError>;

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ScenarioError::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of line")),
            }
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.chars[start].is_ascii_digit() {
            self.pos = start;
            return self.error("expected an identifier");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// Unsigned decimal with optional fraction and exponent.
    fn unsigned_real(&mut self) -> PResult<f64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some('.') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start || (self.pos == start + 1 && self.chars[start] == '.') {
            self.pos = start;
            return self.error("expected a number");
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if digits == self.pos {
                self.pos = mark;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>().or_else(|_| {
            self.pos = start;
            self.error(format!("malformed number '{text}'"))
        })
    }

    /// `a`, `bi`, `a+bi` or `a-bi`, each part optionally signed.
    fn number(&mut self) -> PResult<Complex64> {
        self.skip_ws();
        let sign = |cur: &mut Self| -> f64 {
            match cur.peek() {
                Some('-') => {
                    cur.pos += 1;
                    -1.0
                }
                Some('+') => {
                    cur.pos += 1;
                    1.0
                }
                _ => 1.0,
            }
        };
        let s = sign(self);
        let first = s * self.unsigned_real()?;
        if self.peek() == Some('i') && !self.ident_continues(1) {
            self.pos += 1;
            return Ok(Complex64::new(0.0, first));
        }
        if matches!(self.peek(), Some('+' | '-')) {
            let mark = self.pos;
            let s2 = sign(self);
            if let Ok(im) = self.unsigned_real() {
                if self.peek() == Some('i') && !self.ident_continues(1) {
                    self.pos += 1;
                    return Ok(Complex64::new(first, s2 * im));
                }
            }
            self.pos = mark;
            return self.error("expected the imaginary part of a complex literal, like 0.5+0.25i");
        }
        Ok(Complex64::new(first, 0.0))
    }

    fn ident_continues(&self, offset: usize) -> bool {
        self.chars
            .get(self.pos + offset)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
    }

    fn values_until(&mut self, close: char) -> PResult<Vec<Value>> {
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.value()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(',')?;
        }
    }

    fn value(&mut self) -> PResult<Value> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                Ok(Value::List(self.values_until(']')?))
            }
            Some('(') => {
                self.pos += 1;
                Ok(Value::Tuple(self.values_until(')')?))
            }
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                Ok(Value::Number(self.number()?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident()?;
                if self.eat('(') {
                    Ok(Value::Call(name, self.values_until(')')?))
                } else {
                    Ok(Value::Ident(name))
                }
            }
            Some(c) => self.error(format!("unexpected character '{c}'")),
            None => self.error("unexpected end of line"),
        }
    }

    /// `key=value` pairs: comma-separated up to `close`, or whitespace-separated to the end of the line.
    fn key_values(&mut self, close: Option<char>) -> PResult<Vec<(String, Value)>> {
        let mut out = Vec::new();
        loop {
            if let Some(c) = close {
                if self.eat(c) {
                    return Ok(out);
                }
                if !out.is_empty() {
                    self.expect(',')?;
                }
            } else if self.at_end() {
                return Ok(out);
            }
            let key = self.ident()?;
            self.expect('=')?;
            let value = self.value()?;
            if out.iter().any(|(k, _)| *k == key) {
                return self.error(format!("argument '{key}' given twice"));
            }
            out.push((key, value));
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

/// Parses a single value, e.g. a map expression.
pub fn parse_value(text: &str) -> PResult<Value> {
    let mut cur = Cursor::new(text, 1);
    let v = cur.value()?;
    cur.finish()?;
    Ok(v)
}

fn validation<T>(line: usize, message: impl Into<String>) -> PResult<T> {
    Err(ScenarioError::Validation {
        line,
        message: message.into(),
    })
}

fn as_complex(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(c) => Some(*c),
        _ => None,
    }
}

fn as_real(v: &Value) -> Option<f64> {
    as_complex(v).filter(|c| c.im == 0.0).map(|c| c.re)
}

fn complex_list(v: &Value) -> Option<Vec<Complex64>> {
    match v {
        Value::List(items) => items.iter().map(as_complex).collect(),
        _ => None,
    }
}

/// Reads a map expression from a value.
pub fn map_expr(v: &Value) -> std::result::Result<MapExpr, String> {
    let arity = |name: &str, args: &[Value], n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("{name} takes {n} argument(s), got {}", args.len()))
        }
    };
    match v {
        Value::Ident(name) if name == "identity" => Ok(MapExpr::Identity),
        Value::Ident(name) => Ok(MapExpr::Name(name.clone())),
        Value::Call(name, args) => match name.as_str() {
            "mobius" => {
                arity(name, args, 1)?;
                as_complex(&args[0])
                    .map(MapExpr::Mobius)
                    .ok_or("mobius expects a complex literal".into())
            }
            "poly" => {
                arity(name, args, 1)?;
                complex_list(&args[0])
                    .map(MapExpr::Poly)
                    .ok_or("poly expects a list of complex literals".into())
            }
            "series" => {
                arity(name, args, 2)?;
                let c =
                    complex_list(&args[0]).ok_or("series expects a list of complex literals")?;
                let r = as_real(&args[1]).ok_or("series radius must be real")?;
                Ok(MapExpr::Series(c, r))
            }
            "blaschke" => {
                arity(name, args, 2)?;
                let Value::List(items) = &args[0] else {
                    return Err("blaschke expects a list of (zero, multiplicity) pairs".into());
                };
                let zeros = items
                    .iter()
                    .map(|item| match item {
                        Value::Tuple(pair) if pair.len() == 2 => {
                            let a = as_complex(&pair[0])?;
                            let m = as_real(&pair[1])
                                .filter(|m| m.fract() == 0.0 && *m >= 1.0 && *m <= 1e6)?;
                            Some((a, m as u32))
                        }
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or("blaschke zeros must be (complex, positive integer) pairs")?;
                let phase = as_real(&args[1]).ok_or("blaschke phase must be real")?;
                Ok(MapExpr::Blaschke(zeros, phase))
            }
            "compose" => {
                arity(name, args, 2)?;
                Ok(MapExpr::Compose(
                    Box::new(map_expr(&args[0])?),
                    Box::new(map_expr(&args[1])?),
                ))
            }
            "scale" => {
                arity(name, args, 2)?;
                let c = as_complex(&args[1]).ok_or("scale factor must be a complex literal")?;
                Ok(MapExpr::Scale(Box::new(map_expr(&args[0])?), c))
            }
            other => Err(format!("unknown map constructor '{other}'")),
        },
        other => Err(format!("'{other}' is not a map expression")),
    }
}

/// Builds the map described by `expr`, resolving names against `scenario`.
pub fn build_map(expr: &MapExpr, maps: &[MapDef]) -> std::result::Result<AnalyticMap, String> {
    let err = |e: littlewood::Error| e.to_string();
    match expr {
        MapExpr::Identity => Ok(AnalyticMap::identity()),
        MapExpr::Mobius(a) => AnalyticMap::mobius(*a).map_err(err),
        MapExpr::Blaschke(zeros, phase) => {
            AnalyticMap::blaschke(ZeroSet::new(zeros.clone(), 1.0).map_err(err)?, *phase)
                .map_err(err)
        }
        MapExpr::Poly(c) => AnalyticMap::polynomial(c.clone()).map_err(err),
        MapExpr::Series(c, r) => AnalyticMap::power_series(c.clone(), *r).map_err(err),
        MapExpr::Compose(a, b) => {
            AnalyticMap::compose(&build_map(a, maps)?, &build_map(b, maps)?).map_err(err)
        }
        MapExpr::Scale(a, c) => AnalyticMap::scaled(build_map(a, maps)?, *c).map_err(err),
        MapExpr::Name(n) => maps
            .iter()
            .find(|d| d.name == *n)
            .map(|d| d.map.clone())
            .ok_or_else(|| format!("map '{n}' is not defined")),
    }
}

fn parse_grid(args: &[(String, Value)], line: usize) -> PResult<GridSpec> {
    let mut grid = GridSpec::default();
    for (key, value) in args {
        let real = as_real(value);
        match (key.as_str(), real) {
            ("lo", Some(v)) => grid.lo = v,
            ("hi", Some(v)) => grid.hi = v,
            ("resolution", Some(v))
                if v.fract() == 0.0 && v >= 2.0 && v <= MAX_RESOLUTION as f64 =>
            {
                grid.resolution = v as usize
            }
            ("resolution", _) => {
                return validation(
                    line,
                    format!("resolution must be an integer in 2..={MAX_RESOLUTION}"),
                )
            }
            ("lo" | "hi", None) => {
                return validation(line, format!("plot bound '{key}' must be real"))
            }
            _ => return validation(line, format!("unknown plot setting '{key}'")),
        }
    }
    if !(grid.lo < grid.hi) {
        return validation(line, "plot needs lo < hi");
    }
    Ok(grid)
}

/// Parses and validates a scenario; every map is built, so map invariants
/// are enforced here.
pub fn parse_scenario(text: &str) -> PResult<Scenario> {
    let mut scenario = Scenario::default();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(content, line);
        let head = cur.ident()?;
        match head.as_str() {
            "check" => {
                let kind = cur.ident()?;
                cur.expect('(')?;
                let args = cur.key_values(Some(')'))?;
                cur.finish()?;
                scenario.checks.push(CheckSpec { kind, args, line });
            }
            "output" => {
                let args = cur.key_values(None)?;
                for (key, value) in args {
                    match (key.as_str(), &value) {
                        ("format", Value::Ident(f)) if f == "json" => {
                            scenario.format = Some(Format::Json)
                        }
                        ("format", Value::Ident(f)) if f == "csv" => {
                            scenario.format = Some(Format::Csv)
                        }
                        ("format", _) => return validation(line, "format must be json or csv"),
                        _ => return validation(line, format!("unknown output setting '{key}'")),
                    }
                }
            }
            "plot" => {
                let args = cur.key_values(None)?;
                scenario.plot = Some(parse_grid(&args, line)?);
            }
            name => {
                cur.expect('=')?;
                let value = cur.value()?;
                cur.finish()?;
                if name == "identity" {
                    return validation(line, "'identity' is reserved");
                }
                if scenario.map(name).is_some() {
                    return validation(line, format!("map '{name}' defined twice"));
                }
                let expr = map_expr(&value).or_else(|m| validation(line, m))?;
                let map = build_map(&expr, &scenario.maps).or_else(|m| validation(line, m))?;
                scenario.maps.push(MapDef {
                    name: name.to_string(),
                    expr,
                    map,
                    line,
                });
            }
        }
    }
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        for (text, re, im) in [
            ("0.5", 0.5, 0.0),
            ("-0.5+0.25i", -0.5, 0.25),
            ("1e-3-2i", 1e-3, -2.0),
            ("0.5i", 0.0, 0.5),
            ("-0.0-0.0i", -0.0, -0.0),
            ("+2", 2.0, 0.0),
        ] {
            assert_eq!(
                parse_value(text).unwrap(),
                Value::Number(Complex64::new(re, im)),
                "{text}"
            );
        }
        assert!(parse_value("0.5+i").is_err());
        assert!(parse_value("1.2.3").is_err());
    }

    #[test]
    fn spec_examples() {
        let s = parse_scenario("f = mobius(0.5+0i)").unwrap();
        assert!(matches!(s.maps[0].expr, MapExpr::Mobius(_)));

        let s = parse_scenario("f = mobius(0.5+0i)\ng = compose(f, poly([0,0,1]))").unwrap();
        let v = s.maps[1].map.eval(Complex64::new(0.5, 0.0)).unwrap();
        let expected = (0.25 + 0.5) / (1.0 + 0.5 * 0.25);
        assert!((v.re - expected).abs() < 1e-15);

        match parse_scenario("f = mobius(1+0i)") {
            Err(ScenarioError::Validation { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_scenario("# header\nf = mobius(0.5+0i\n") {
            Err(ScenarioError::Parse {
                line: 2, column, ..
            }) => assert_eq!(column, 18),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scenario("g = compose(f, identity)"),
            Err(ScenarioError::Validation { .. })
        ));
        assert!(matches!(
            parse_scenario("plot resolution=4096"),
            Err(ScenarioError::Validation { .. })
        ));
    }

    #[test]
    fn checks_and_settings() {
        let s = parse_scenario(
            "f = identity # the disk\ncheck green(F=f, poles=[(0.5+0i, 1)])\noutput format=csv\nplot lo=-1 hi=1 resolution=64",
        )
        .unwrap();
        assert_eq!(s.checks.len(), 1);
        assert_eq!(s.checks[0].kind, "green");
        assert_eq!(s.format, Some(Format::Csv));
        assert_eq!(
            s.plot,
            Some(GridSpec {
                lo: -1.0,
                hi: 1.0,
                resolution: 64
            })
        );
    }

    #[test]
    fn printing_round_trips() {
        let text = "compose(scale(blaschke([(0.5+0.1i, 2), (0i, 1)], 0.3), 0.5-0i), series([1, 0.5, 0.25i], 2))";
        let expr = map_expr(&parse_value(text).unwrap()).unwrap();
        let printed = expr.to_string();
        assert_eq!(map_expr(&parse_value(&printed).unwrap()).unwrap(), expr);
    }
}
