//! Gauss-Legendre quadrature and a small adaptive Simpson integrator.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Gauss-Legendre rule of a given degree on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Computes nodes and weights by Newton iteration on the Legendre
    /// polynomial, using the Chebyshev-like initial guess.
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::TooFewNodes { min: 1, got: 0 });
        }
        let n = degree;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = real::<T>(n as f64);
        for i in 0..n.div_ceil(2) {
            let theta = T::pi() * (real::<T>(i as f64) + real(0.75)) / (nf + real(0.5));
            let mut x = theta.cos();
            let mut dp = T::one();
            for _ in 0..60 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                let next = x - step;
                if next == x {
                    x = next;
                    break;
                }
                x = next;
            }
            let w = real::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            // the middle node of an odd rule is exactly zero
            nodes[n / 2] = T::zero();
            let (_, d) = legendre_with_derivative(n, T::zero());
            weights[n / 2] = real::<T>(2.0) / (d * d);
        }
        Ok(Self { nodes, weights })
    }

    pub fn degree(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: T, b: T) -> (Vec<T>, Vec<T>) {
        let half = (b - a) * real(0.5);
        let mid = (a + b) * real(0.5);
        let xs = self.nodes.iter().map(|&x| mid + half * x).collect();
        let ws = self.weights.iter().map(|&w| w * half).collect();
        (xs, ws)
    }

    /// Integrates `f` over [a, b].
    pub fn integrate(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        let (xs, ws) = self.mapped(a, b);
        xs.iter()
            .zip(&ws)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    for k in 2..=n {
        let kf = real::<T>(k as f64);
        let next = ((real::<T>(2.0) * kf - T::one()) * x * p - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nf = real::<T>(n as f64);
    let d = nf * (x * p - p_prev) / (x * x - T::one());
    (p, d)
}

/// Gauss-Legendre nodes and weights spread over consecutive panels, with the
/// node budget split proportionally to panel length (at least 4 per panel).
/// Panels of zero length are skipped.
pub fn composite_nodes<T: Real>(panels: &[(T, T)], total_nodes: usize) -> Result<(Vec<T>, Vec<T>)> {
    let lengths: Vec<T> = panels.iter().map(|&(a, b)| b - a).collect();
    let total: T = lengths.iter().fold(T::zero(), |acc, &l| acc + l);
    if total <= T::zero() {
        return Err(Error::OutOfRange {
            name: "panels",
            value: 0.0,
            range: "nonempty union",
        });
    }
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (&(a, b), &len) in panels.iter().zip(&lengths) {
        if len <= T::eps() * total {
            continue;
        }
        let share = (len / total).to_f64().unwrap_or(0.0) * total_nodes as f64;
        let n = (share.round() as usize).max(4);
        let rule = GaussLegendre::<T>::new(n)?;
        let (x, w) = rule.mapped(a, b);
        xs.extend(x);
        ws.extend(w);
    }
    Ok((xs, ws))
}

/// Adaptive Simpson integration to an absolute tolerance.
pub fn adaptive_simpson<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * real(0.5);
    let fm = f(m);
    let whole = simpson_slice(a, b, fa, fm, fb);
    simpson_recurse(&f, a, b, fa, fm, fb, whole, tol.max(T::eps()), 40)
}

fn simpson_slice<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / real::<T>(6.0) * (fa + real::<T>(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<T: Real>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> T {
    let m = (a + b) * real(0.5);
    let lm = (a + m) * real(0.5);
    let rm = (m + b) * real(0.5);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_slice(a, m, fa, flm, fm);
    let right = simpson_slice(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= real::<T>(15.0) * tol {
        return left + right + delta / real(15.0);
    }
    let half_tol = tol * real(0.5);
    simpson_recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
        + simpson_recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
}
