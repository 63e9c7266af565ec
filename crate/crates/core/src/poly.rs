//! Dense complex polynomials and rational functions.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim_exact();
        p
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Complex64, degree: usize) -> Self {
        let mut coeffs = vec![ZERO; degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    /// `Π (z - r)^m` over the given roots.
    pub fn from_roots(roots: &[(Complex64, u32)]) -> Self {
        let mut p = Self::constant(ONE);
        for &(r, m) in roots {
            let factor = Self::new(vec![-r, ONE]);
            for _ in 0..m {
                p = &p * &factor;
            }
        }
        p
    }

    fn trim_exact(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == ZERO {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
    }

    /// Drops leading coefficients below `rel_tol` times the largest coefficient.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let scale = self.norm_inf();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= rel_tol * scale {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |c_k| |z|^k`, the natural scale for the rounding error of `eval`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(ZERO);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::constant(ONE);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Taylor shift: coefficients of `p(c + h)` in powers of `h`.
    pub fn taylor_at(&self, c: Complex64) -> Vec<Complex64> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] += c * next;
            }
        }
        a
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(ZERO)
                    + rhs.coeffs.get(i).copied().unwrap_or(ZERO)
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.scale(-ONE)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

/// Quotient `num / den` of two polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Rational {
    pub fn polynomial(p: Polynomial) -> Self {
        Rational {
            num: p,
            den: Polynomial::constant(ONE),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Rational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `self ∘ inner`, homogenised so that no division by `inner.den` remains.
    pub fn compose(&self, inner: &Rational) -> Rational {
        let d = self.num.degree().max(self.den.degree());
        let p_pows: Vec<Polynomial> = (0..=d).map(|k| inner.num.pow(k)).collect();
        let q_pows: Vec<Polynomial> = (0..=d).map(|k| inner.den.pow(k)).collect();
        let homogenise = |outer: &Polynomial| {
            let mut acc = Polynomial::constant(ZERO);
            for (k, &c) in outer.coeffs().iter().enumerate() {
                if c != ZERO {
                    acc = &acc + &(&p_pows[k] * &q_pows[d - k]).scale(c);
                }
            }
            acc
        };
        Rational {
            num: homogenise(&self.num),
            den: homogenise(&self.den),
        }
    }

    /// Numerator of `self - w` after clearing the denominator.
    pub fn level_polynomial(&self, w: Complex64) -> Polynomial {
        &self.num - &self.den.scale(w)
    }

    /// First `n + 1` Taylor coefficients at the origin by series division.
    ///
    /// Requires a nonzero constant term in the denominator; the recurrence is
    /// stable when the poles lie outside the unit disk.
    pub fn taylor(&self, n: usize) -> Option<Vec<Complex64>> {
        let q = self.den.coeffs();
        let q0 = q[0];
        if q0.norm() < 1e-300 {
            return None;
        }
        let p = self.num.coeffs();
        let mut c = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = p.get(k).copied().unwrap_or(ZERO);
            for j in 1..q.len().min(k + 1) {
                acc -= q[j] * c[k - j];
            }
            c.push(acc / q0);
        }
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn horner_and_derivative() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]);
        let (v, dv) = p.eval_with_derivative(c(2.0, 0.0));
        assert_eq!(v, c(13.0, 0.0));
        assert_eq!(dv, c(12.0, 0.0));
        assert_eq!(p.derivative().eval(c(2.0, 0.0)), c(12.0, 0.0));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(3.0, 1.0), c(0.25, 0.0)]);
        let center = c(0.3, -0.2);
        let shifted = Polynomial::new(p.taylor_at(center));
        let h = c(0.11, 0.07);
        assert!((shifted.eval(h) - p.eval(center + h)).norm() < 1e-14);
    }

    #[test]
    fn rational_composition_is_pointwise() {
        // (z + 0.5) / (1 + 0.5 z) composed with z^2
        let mob = Rational {
            num: Polynomial::new(vec![c(0.5, 0.0), c(1.0, 0.0)]),
            den: Polynomial::new(vec![c(1.0, 0.0), c(0.5, 0.0)]),
        };
        let sq = Rational::polynomial(Polynomial::monomial(c(1.0, 0.0), 2));
        let comp = mob.compose(&sq);
        let z = c(0.3, 0.4);
        assert!((comp.eval(z) - mob.eval(z * z)).norm() < 1e-15);
    }

    #[test]
    fn series_division_geometric() {
        // z / (1 - 0.5 z)
        let r = Rational {
            num: Polynomial::z(),
            den: Polynomial::new(vec![c(1.0, 0.0), c(-0.5, 0.0)]),
        };
        let t = r.taylor(6).unwrap();
        assert_eq!(t[0], c(0.0, 0.0));
        for n in 1..=6 {
            assert!((t[n] - c(0.5f64.powi(n as i32 - 1), 0.0)).norm() < 1e-15);
        }
    }
}
