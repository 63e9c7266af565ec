//! Polynomial roots with multiplicities via companion-matrix eigenvalues.
//!
//! Raw eigenvalues are grouped by single-linkage clustering, nearby clusters
//! are merged when the polynomial's Taylor expansion at their centroid shows a
//! root of the combined multiplicity, and every root is then polished by
//! Newton's method on the `(m - 1)`-th derivative, which has a simple root there.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues closer than this are the same root.
pub const CLUSTER_RADIUS: f64 = 1e-7;

/// Clusters this close are candidates for a multiplicity merge.
const MERGE_RADIUS: f64 = 1e-2;

/// Relative size below which a Taylor coefficient counts as vanishing.
const MULTIPLICITY_TOL: f64 = 1e-10;

/// Target relative residual `|p(z)| / Σ|p_k||z|^k` after polishing.
pub const POLISH_RESIDUAL: f64 = 1e-12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub point: Complex64,
    pub multiplicity: u32,
}

/// All complex roots of `p` with multiplicities.
///
/// Fails with [`Error::DegenerateMap`] for the zero polynomial.
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::DegenerateMap(
            "zero polynomial has every point as a root".into(),
        ));
    }
    let p = p.trimmed(1e-14);
    let coeffs = p.coeffs();
    let zero_mult = coeffs.iter().take_while(|c| **c == ZERO).count();
    let reduced = Polynomial::new(coeffs[zero_mult..].to_vec());

    let raw = companion_eigenvalues(&reduced)?;
    let mut clusters = cluster(&raw);
    merge_multiple(&reduced, &mut clusters);

    let mut roots: Vec<Root> = clusters
        .into_iter()
        .map(|(c, m)| Root {
            point: polish(&reduced, c, m),
            multiplicity: m,
        })
        .collect();
    if zero_mult > 0 {
        roots.push(Root {
            point: ZERO,
            multiplicity: zero_mult as u32,
        });
    }
    roots.sort_by(|a, b| {
        a.point
            .norm()
            .total_cmp(&b.point.norm())
            .then(a.point.arg().total_cmp(&b.point.arg()))
    });
    Ok(roots)
}

fn companion_eigenvalues(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = p.coeffs();
    let lead = c[n];
    if n == 1 {
        return Ok(vec![-c[0] / lead]);
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = m
        .schur()
        .eigenvalues()
        .ok_or(Error::NonConvergent { nodes: n })?;
    Ok(eig.iter().copied().collect())
}

fn cluster(raw: &[Complex64]) -> Vec<(Complex64, u32)> {
    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() < CLUSTER_RADIUS * (1.0 + raw[i].norm()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, u32)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += raw[i];
                g.2 += 1;
            }
            None => groups.push((r, raw[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, s, m)| (s / m as f64, m))
        .collect()
}

/// Tests whether `p` has a root of multiplicity `m` at (a polished) `c`.
fn has_multiple_root(p: &Polynomial, c: Complex64, m: u32) -> bool {
    let h = p.taylor_at(c);
    let abs = Polynomial::new(
        p.coeffs()
            .iter()
            .map(|a| Complex64::new(a.norm(), 0.0))
            .collect(),
    );
    let h_abs = abs.taylor_at(Complex64::new(c.norm(), 0.0));
    (0..m as usize)
        .all(|j| h[j].norm() <= MULTIPLICITY_TOL * h_abs[j].norm().max(f64::MIN_POSITIVE))
}

fn merge_multiple(p: &Polynomial, clusters: &mut Vec<(Complex64, u32)>) {
    loop {
        let mut pairs = Vec::new();
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let d = (clusters[i].0 - clusters[j].0).norm();
                if d < MERGE_RADIUS * (1.0 + clusters[i].0.norm()) {
                    pairs.push((d, i, j));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let merged = pairs.into_iter().find_map(|(_, i, j)| {
            let (ci, mi) = clusters[i];
            let (cj, mj) = clusters[j];
            let m = mi + mj;
            let polished = polish(p, (ci * mi as f64 + cj * mj as f64) / m as f64, m);
            has_multiple_root(p, polished, m).then_some((i, j, polished, m))
        });
        match merged {
            Some((i, j, point, m)) => {
                clusters[i] = (point, m);
                clusters.remove(j);
            }
            None => return,
        }
    }
}

/// Newton's method on `p^(m-1)`, keeping the best iterate by residual.
fn polish(p: &Polynomial, start: Complex64, m: u32) -> Complex64 {
    let mut target = p.clone();
    for _ in 1..m {
        target = target.derivative();
    }
    let residual = |z: Complex64| {
        let scale = target.abs_eval(z);
        if scale == 0.0 {
            0.0
        } else {
            target.eval(z).norm() / scale
        }
    };
    let mut z = start;
    let mut best = (residual(z), z);
    for _ in 0..60 {
        let (v, dv) = target.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() {
            break;
        }
        let r = residual(z);
        if r < best.0 {
            best = (r, z);
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    best.1
}

/// Relative residual of `p` at `z`.
pub fn relative_residual(p: &Polynomial, z: Complex64) -> f64 {
    let scale = p.abs_eval(z);
    if scale == 0.0 {
        0.0
    } else {
        p.eval(z).norm() / scale
    }
}
