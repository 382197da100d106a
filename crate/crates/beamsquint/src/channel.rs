//! Line-of-sight wideband steering vectors, their closed-form inner products,
//! and the link budget.

use nalgebra::{Complex, DVector};

use crate::error::Result;
use crate::geometry::{ArrayGeometry, BandSpec, Direction};
use crate::scalar::{real, speed_of_light, Real};
use crate::special::dirichlet_ratio;
use crate::Error;

/// Unit-modulus steering vector at one relative frequency: entry n is
/// `exp(j 2 pi (f_c + f)/c u^T r_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector<T: Real> {
    entries: DVector<Complex<T>>,
    dir: Direction<T>,
    f_rel: T,
}

impl<T: Real> SteeringVector<T> {
    pub fn entries(&self) -> &DVector<Complex<T>> {
        &self.entries
    }

    /// Conjugate of the steering vector: the channel column whose matched
    /// filter is the steering vector itself.
    pub fn channel(&self) -> DVector<Complex<T>> {
        self.entries.map(|z| z.conj())
    }

    pub fn dir(&self) -> &Direction<T> {
        &self.dir
    }

    pub fn f_rel(&self) -> T {
        self.f_rel
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Per-element phases `2 pi (f_c + f)/c u^T r_n` without materializing
/// complex exponentials.
pub(crate) fn steering_phases<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    f_abs: T,
) -> Vec<T> {
    let k = T::two_pi() * f_abs / speed_of_light::<T>();
    geom.element_positions()
        .iter()
        .map(|p| k * (dir.u_x() * p[0] + dir.u_y() * p[1]))
        .collect()
}

/// Materializes the steering vector at relative frequency `f_rel`; rejects
/// out-of-band frequencies.
pub fn steering_vector<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    f_rel: T,
) -> Result<SteeringVector<T>> {
    band.check_in_band(f_rel)?;
    Ok(steering_vector_unchecked(geom, dir, band, f_rel))
}

/// As [`steering_vector`] but without the band check; beamspace columns sit
/// at synthetic frequencies outside [-W/2, W/2].
pub(crate) fn steering_vector_unchecked<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    f_rel: T,
) -> SteeringVector<T> {
    let phases = steering_phases(geom, dir, band.carrier() + f_rel);
    let entries = DVector::from_iterator(
        geom.len(),
        phases.iter().map(|&p| Complex::new(p.cos(), p.sin())),
    );
    SteeringVector {
        entries,
        dir: *dir,
        f_rel,
    }
}

/// Closed-form inner product `a*(f1) a(f2) = sum_n exp(j 2 pi (f2-f1)/c u^T r_n)`.
///
/// Over a centered separable grid the sum factors into one Dirichlet kernel
/// ratio per axis, making the value real and O(1) to evaluate. Magnitude is
/// at most N, with equality at f1 = f2.
pub fn steering_inner_product<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    f1: T,
    f2: T,
) -> Result<Complex<T>> {
    band.check_in_band(f1)?;
    band.check_in_band(f2)?;
    Ok(Complex::new(
        steering_cross_gain(geom, dir, f2 - f1),
        T::zero(),
    ))
}

/// The real value of `a*(f) a(f + df)` as a function of the frequency offset.
pub(crate) fn steering_cross_gain<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    df: T,
) -> T {
    let k = T::two_pi() * df / speed_of_light::<T>();
    let phi_x = k * dir.u_x() * geom.d_x();
    let phi_y = k * dir.u_y() * geom.d_y();
    dirichlet_ratio(geom.n_x(), phi_x) * dirichlet_ratio(geom.n_y(), phi_y)
}

/// Element gains, radiated power, range, and noise density of the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget<T> {
    g_t: T,
    g_r: T,
    p_t: T,
    d: T,
    n0: T,
}

impl<T: Real> LinkBudget<T> {
    /// Linear element gains, radiated power in W, range in m, and noise
    /// spectral density in W/Hz; all strictly positive.
    pub fn new(g_t: T, g_r: T, p_t: T, d: T, n0: T) -> Result<Self> {
        for (value, name) in [
            (g_t, "g_t"),
            (g_r, "g_r"),
            (p_t, "p_t"),
            (d, "d"),
            (n0, "n0"),
        ] {
            if !(value > T::zero()) {
                return Err(Error::InvalidLinkBudget(name));
            }
        }
        Ok(Self { g_t, g_r, p_t, d, n0 })
    }
}

/// Link SNR `lambda^2 g_t g_r p_t / ((4 pi d)^2 W n0)`.
pub fn snr<T: Real>(band: &BandSpec<T>, budget: &LinkBudget<T>) -> T {
    let lambda = band.wavelength();
    let four_pi_d = real::<T>(4.0) * T::pi() * budget.d;
    lambda * lambda * budget.g_t * budget.g_r * budget.p_t
        / (four_pi_d * four_pi_d * band.bandwidth() * budget.n0)
}
