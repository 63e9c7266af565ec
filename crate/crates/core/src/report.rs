use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Which relation between `lhs` and `rhs` a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs <= rhs`, margin `rhs - lhs`.
    AtMost,
    /// `lhs >= rhs`, margin `lhs - rhs`.
    AtLeast,
    /// `lhs == rhs`, margin `-|rhs - lhs|`.
    Equal,
}

/// Outcome of one numerical inequality or identity check.
///
/// `margin` is the signed slack of the relation, so the verdict holds exactly
/// when `margin >= -tolerance` (unless marked inconclusive).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    pub fn at_most(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(lhs, rhs, tolerance, Relation::AtMost)
    }

    pub fn at_least(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(lhs, rhs, tolerance, Relation::AtLeast)
    }

    pub fn equal(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(lhs, rhs, tolerance, Relation::Equal)
    }

    fn build(lhs: f64, rhs: f64, tolerance: f64, relation: Relation) -> Self {
        let margin = match relation {
            Relation::AtMost => rhs - lhs,
            Relation::AtLeast => lhs - rhs,
            Relation::Equal => -(rhs - lhs).abs(),
        };
        // NaN margins (e.g. from -inf - -inf) never hold.
        let verdict = if margin >= -tolerance {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        VerificationReport {
            lhs,
            rhs,
            margin,
            tolerance,
            relation,
            verdict,
            diagnostics: Vec::new(),
        }
    }

    pub fn inconclusive(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Inconclusive;
        self.diagnostics.push(reason.into());
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_margin() {
        assert!(VerificationReport::at_most(1.0, 1.0 - 1e-9, 1e-8).holds());
        assert!(!VerificationReport::at_most(1.0, 1.0 - 1e-7, 1e-8).holds());
        assert!(VerificationReport::at_least(0.0, 1e-9, 1e-8).holds());
        assert!(!VerificationReport::at_least(0.0, 1.0, 1e-8).holds());
        assert!(VerificationReport::equal(2.0, 2.0 + 1e-9, 1e-8).holds());
        assert!(!VerificationReport::equal(2.0, 3.0, 1e-8).holds());
        let r = VerificationReport::at_most(0.0, 1.0, 0.0).inconclusive("probe hit guard");
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.margin, 1.0);
    }
}
