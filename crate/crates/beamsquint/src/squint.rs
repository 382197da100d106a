//! Classical analog-beamforming squint diagnostics: the Dirichlet gain, the
//! MRT gain profile of a linear array, and the 3-dB dispersion threshold.

use crate::error::{Error, Result};
use crate::geometry::{ArrayGeometry, BandSpec, Direction};
use crate::scalar::{real, speed_of_light, Real};
use crate::special::dirichlet_ratio;

/// Dirichlet gain `F_N(x) = (1/N)(sin(Nx/2)/sin(x/2))^2`, the beam pattern of
/// an N-element uniformly excited line. `F_N(2 pi k) = N` at the removable
/// singularities and `0 <= F_N <= N` everywhere.
pub fn dirichlet_gain<T: Real>(n: usize, x: T) -> T {
    debug_assert!(n >= 1);
    let d = dirichlet_ratio(n, x);
    d * d / real::<T>(n as f64)
}

/// Analog MRT gain of a linear array at relative frequency `f_rel`:
/// `F_N(2 pi d_x u_x f / c)`. The beamformer is matched at band center, so
/// the gain is N at `f_rel = 0` and droops with the frequency offset.
pub fn mrt_gain_ula<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    f_rel: T,
) -> Result<T> {
    if !geom.is_ula() {
        return Err(Error::NotUla);
    }
    band.check_in_band(f_rel)?;
    let x = T::two_pi() * geom.d_x() * dir.u_x() * f_rel / speed_of_light::<T>();
    Ok(dirichlet_gain(geom.n_x(), x))
}

/// Dispersion factor at which the band-edge MRT gain drops 3 dB: the root of
/// `sin(pi a / 2) / (N sin(pi a / 2N)) = 1/sqrt(2)` in (0, 2), found by
/// bisection to 1e-10. Decreasing in N with limit 0.886.
pub fn alpha_3db<T: Real>(n: usize) -> Result<T> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "[2, inf)",
        });
    }
    let nf = real::<T>(n as f64);
    let target = T::one() / real::<T>(2.0).sqrt();
    let half_pi = T::pi() * real(0.5);
    // normalized band-edge amplitude, decreasing over the main lobe (0, 2)
    let f = |a: T| (half_pi * a).sin() / (nf * (half_pi * a / nf).sin()) - target;
    let mut lo = real::<T>(1e-6);
    let mut hi = real::<T>(2.0);
    let tol = real::<T>(1e-10);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * real(0.5);
        if f(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * real(0.5))
}
