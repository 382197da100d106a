//! Array layouts, steering directions, and the squint-factor bookkeeping
//! derived from projected apertures.

use crate::error::{Error, Result};
use crate::scalar::{as_f64, real, speed_of_light, Real};

/// Uniform planar array layout. A uniform linear array is the special case
/// `n_y = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry<T> {
    n_x: usize,
    n_y: usize,
    d_x: T,
    d_y: T,
}

impl<T: Real> ArrayGeometry<T> {
    /// Element counts and spacings in meters. Counts must be at least 1 and
    /// spacings positive.
    pub fn new(n_x: usize, n_y: usize, d_x: T, d_y: T) -> Result<Self> {
        if n_x == 0 || n_y == 0 {
            return Err(Error::InvalidGeometry(format!(
                "counts must be >= 1, got {n_x}x{n_y}"
            )));
        }
        if !(d_x > T::zero()) || !(d_y > T::zero()) {
            return Err(Error::InvalidGeometry(format!(
                "spacings must be positive, got d_x = {}, d_y = {}",
                as_f64(d_x),
                as_f64(d_y)
            )));
        }
        Ok(Self { n_x, n_y, d_x, d_y })
    }

    /// Linear array of `n` elements along the x axis.
    pub fn ula(n: usize, d: T) -> Result<Self> {
        Self::new(n, 1, d, d)
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn d_x(&self) -> T {
        self.d_x
    }

    pub fn d_y(&self) -> T {
        self.d_y
    }

    /// Total element count.
    pub fn len(&self) -> usize {
        self.n_x * self.n_y
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Linear arrays are represented with `n_y = 1`.
    pub fn is_ula(&self) -> bool {
        self.n_y == 1
    }

    /// Apertures `L_x = n_x d_x` and `L_y = n_y d_y`.
    pub fn aperture(&self) -> (T, T) {
        (
            real::<T>(self.n_x as f64) * self.d_x,
            real::<T>(self.n_y as f64) * self.d_y,
        )
    }

    /// Position of element `n`, where the x/y grid indices are the quotient
    /// and remainder of `n / n_y`. Positions are centered so they sum to zero.
    pub fn position(&self, n: usize) -> [T; 2] {
        let ix = n / self.n_y;
        let iy = n % self.n_y;
        [
            self.d_x * (real::<T>(ix as f64) - real::<T>((self.n_x - 1) as f64) * real(0.5)),
            self.d_y * (real::<T>(iy as f64) - real::<T>((self.n_y - 1) as f64) * real(0.5)),
        ]
    }

    /// All element positions in index order.
    pub fn element_positions(&self) -> Vec<[T; 2]> {
        (0..self.len()).map(|n| self.position(n)).collect()
    }
}

/// Beamforming target in uv-coordinates: the projection of the unit pointing
/// vector onto the array plane. The origin is broadside, the unit circle is
/// endfire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    u_x: T,
    u_y: T,
}

impl<T: Real> Direction<T> {
    /// Requires `u_x^2 + u_y^2 <= 1` up to roundoff slack.
    pub fn new(u_x: T, u_y: T) -> Result<Self> {
        let norm2 = u_x * u_x + u_y * u_y;
        if norm2 > T::one() + real(1e-9) {
            return Err(Error::InvalidDirection {
                norm: as_f64(norm2.sqrt()),
            });
        }
        Ok(Self { u_x, u_y })
    }

    /// Exact broadside.
    pub fn broadside() -> Self {
        Self {
            u_x: T::zero(),
            u_y: T::zero(),
        }
    }

    pub fn u_x(&self) -> T {
        self.u_x
    }

    pub fn u_y(&self) -> T {
        self.u_y
    }

    pub fn norm(&self) -> T {
        self.u_x.hypot(self.u_y)
    }

    pub fn is_broadside(&self) -> bool {
        self.u_x == T::zero() && self.u_y == T::zero()
    }
}

/// Builds a direction from azimuth `theta` and zenith `phi`, both in degrees:
/// `u_x = sin(phi) cos(theta)`, `u_y = sin(phi) sin(theta)`.
pub fn uv_from_angles<T: Real>(theta_deg: T, phi_deg: T) -> Direction<T> {
    let to_rad = T::pi() / real(180.0);
    let (theta, phi) = (theta_deg * to_rad, phi_deg * to_rad);
    let mut u_x = phi.sin() * theta.cos();
    let mut u_y = phi.sin() * theta.sin();
    let norm = u_x.hypot(u_y);
    if norm > T::one() {
        // |sin(phi)| can exceed 1 by roundoff after the product
        u_x /= norm;
        u_y /= norm;
    }
    Direction { u_x, u_y }
}

/// Carrier frequency and signal bandwidth in Hz. Relative frequencies live in
/// [-W/2, W/2]; `W < 2 f_c` keeps absolute frequencies positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSpec<T> {
    f_c: T,
    w: T,
}

impl<T: Real> BandSpec<T> {
    pub fn new(f_c: T, w: T) -> Result<Self> {
        if !(f_c > T::zero()) || !(w > T::zero()) || !(w < real::<T>(2.0) * f_c) {
            return Err(Error::InvalidBand {
                f_c: as_f64(f_c),
                w: as_f64(w),
            });
        }
        Ok(Self { f_c, w })
    }

    pub fn carrier(&self) -> T {
        self.f_c
    }

    pub fn bandwidth(&self) -> T {
        self.w
    }

    /// Carrier wavelength c / f_c.
    pub fn wavelength(&self) -> T {
        speed_of_light::<T>() / self.f_c
    }

    /// Checks a relative frequency against [-W/2, W/2].
    pub fn check_in_band(&self, f_rel: T) -> Result<()> {
        let half = self.w * real(0.5);
        if f_rel.abs() <= half {
            Ok(())
        } else {
            Err(Error::OutOfBand {
                f_rel: as_f64(f_rel),
                half_width: as_f64(half),
            })
        }
    }
}

/// Shape of the projected aperture in the rotated frame: the weight profile
/// is a trapezoid through (-l1/2, 0), (-l2/2, l3), (l2/2, l3), (l1/2, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedAperture<T> {
    pub l1: T,
    pub l2: T,
    pub l3: T,
}

/// Channel dispersion bookkeeping for a (geometry, direction, band) triple.
///
/// `alpha_x = (W/f_c)(L_x u_x / lambda)` and likewise for y; `alpha_up =
/// |alpha_x| + |alpha_y|` is the projected-aperture dispersion that sets the
/// RF-chain requirement. At exact broadside the projection geometry is
/// absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquintFactor<T> {
    alpha_x: T,
    alpha_y: T,
    norm: T,
    alpha_up: T,
    projection: Option<ProjectedAperture<T>>,
}

impl<T: Real> SquintFactor<T> {
    pub fn alpha_x(&self) -> T {
        self.alpha_x
    }

    pub fn alpha_y(&self) -> T {
        self.alpha_y
    }

    /// Euclidean norm of (alpha_x, alpha_y).
    pub fn norm(&self) -> T {
        self.norm
    }

    /// |alpha_x| + |alpha_y| = norm * l1.
    pub fn alpha_up(&self) -> T {
        self.alpha_up
    }

    /// Projected-aperture trapezoid geometry; `None` at exact broadside.
    pub fn projection(&self) -> Option<ProjectedAperture<T>> {
        self.projection
    }

    pub fn is_broadside(&self) -> bool {
        self.projection.is_none()
    }

    /// Lower dispersion parameter `norm * ((1-delta) l1 + delta l2)` of the
    /// sandwich bound, for `delta` in [0, 1].
    pub fn alpha_lo(&self, delta: T) -> Result<T> {
        if delta < T::zero() || delta > T::one() {
            return Err(Error::OutOfRange {
                name: "delta",
                value: as_f64(delta),
                range: "[0, 1]",
            });
        }
        let p = self.projection.ok_or(Error::Broadside)?;
        Ok(self.norm * ((T::one() - delta) * p.l1 + delta * p.l2))
    }
}

/// Computes the squint factor of a geometry/direction/band triple.
pub fn squint_factor<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
) -> SquintFactor<T> {
    let c = speed_of_light::<T>();
    let (l_x, l_y) = geom.aperture();
    // (W/f_c)(L u / lambda) = W L u / c
    let alpha_x = band.bandwidth() * l_x * dir.u_x() / c;
    let alpha_y = band.bandwidth() * l_y * dir.u_y() / c;
    let norm = alpha_x.hypot(alpha_y);
    let alpha_up = alpha_x.abs() + alpha_y.abs();
    let projection = (norm > T::zero()).then(|| {
        let amax = alpha_x.abs().max(alpha_y.abs());
        ProjectedAperture {
            l1: alpha_up / norm,
            l2: (alpha_x.abs() - alpha_y.abs()).abs() / norm,
            l3: norm / amax,
        }
    });
    SquintFactor {
        alpha_x,
        alpha_y,
        norm,
        alpha_up,
        projection,
    }
}

/// Minimum RF-chain count `ceil(alpha_up) + additional`, at least 1.
pub fn required_rf_chains<T: Real>(sf: &SquintFactor<T>, additional: usize) -> usize {
    let base = sf.alpha_up().ceil().to_usize().unwrap_or(0);
    (base + additional).max(1)
}
