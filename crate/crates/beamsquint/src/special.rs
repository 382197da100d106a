//! Small special-function kit: normalized sinc, Dirichlet kernel ratio, and
//! the sine integral with its sinc-squared antiderivative.

use crate::quad::adaptive_simpson;
use crate::scalar::{real, Real};

/// sin(pi x) / (pi x), with the removable singularity filled in.
#[inline]
pub fn sinc<T: Real>(x: T) -> T {
    let px = T::pi() * x;
    if px.abs() < real(1e-6) {
        // sin(y)/y = 1 - y^2/6 + y^4/120
        let y2 = px * px;
        T::one() - y2 / real(6.0) + y2 * y2 / real(120.0)
    } else {
        px.sin() / px
    }
}

/// Dirichlet kernel ratio sin(n phi / 2) / sin(phi / 2), the value of the
/// centered geometric sum `sum_{k=0}^{n-1} exp(j phi (k - (n-1)/2))`.
///
/// The phase is reduced modulo 2 pi; within 1e-9 of a multiple of 2 pi a
/// series expansion replaces the 0/0 ratio.
pub fn dirichlet_ratio<T: Real>(n: usize, phi: T) -> T {
    let nf = real::<T>(n as f64);
    let two_pi = T::two_pi();
    let m = (phi / two_pi).round();
    let psi = phi - two_pi * m;
    // sign from sin(n(psi + 2 pi m)/2) / sin((psi + 2 pi m)/2) = (-1)^{m(n-1)} ...
    let m_int = m.to_i64().unwrap_or(0);
    let sign = if (m_int * (n as i64 - 1)) % 2 == 0 {
        T::one()
    } else {
        -T::one()
    };
    if psi.abs() < real(1e-9) {
        let corr = T::one() - (nf * nf - T::one()) * psi * psi / real(24.0);
        sign * nf * corr
    } else {
        sign * (nf * psi * real(0.5)).sin() / (psi * real(0.5)).sin()
    }
}

/// sin(t)/t with the removable singularity filled in (argument not scaled by pi).
#[inline]
fn sin_over_t<T: Real>(t: T) -> T {
    if t.abs() < real(1e-6) {
        let t2 = t * t;
        T::one() - t2 / real(6.0) + t2 * t2 / real(120.0)
    } else {
        t.sin() / t
    }
}

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
///
/// Adaptive Simpson over 2 pi segments; the integrand switches to its series
/// near t = 0. Odd in x.
pub fn si<T: Real>(x: T) -> T {
    if x < T::zero() {
        return -si(-x);
    }
    if x == T::zero() {
        return T::zero();
    }
    let two_pi = T::two_pi();
    let segments = (x / two_pi).floor().to_usize().unwrap_or(0);
    let tol = real::<T>(1e-13).max(T::eps() * real(8.0));
    let mut acc = T::zero();
    let mut a = T::zero();
    for _ in 0..segments {
        let b = a + two_pi;
        acc += adaptive_simpson(sin_over_t::<T>, a, b, tol);
        a = b;
    }
    if x > a {
        acc += adaptive_simpson(sin_over_t::<T>, a, x, tol);
    }
    acc
}

/// S(x) = int_0^x (sin(pi t)/(pi t))^2 dt = (Si(2 pi x) - sin^2(pi x)/(pi x)) / pi.
///
/// Odd in x; S(x) -> 1/2 as x -> infinity.
pub fn sinc_sq_integral<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let pi = T::pi();
    let s = (pi * x).sin();
    (si(T::two_pi() * x) - s * s / (pi * x)) / pi
}
