//! Spectra of the continuous sinc-kernel operators: the linear-array kernel
//! on [-1/2, 1/2], the planar kernel through its weighted one-dimensional
//! reduction, polarization counts, sandwich bounds, and the
//! discretization-error diagnostic linking discrete arrays to the continuum.

use crate::error::{Error, Result};
use crate::geometry::{ArrayGeometry, BandSpec, Direction, SquintFactor};
use crate::quad::{composite_nodes, GaussLegendre};
use crate::scalar::{as_f64, real, Real};
use crate::special::{sinc, sinc_sq_integral};
use crate::spectra::{correlation_matrix, spectrum_dense};

/// Dispersion parameter of a kernel spectrum: scalar for the linear-array
/// kernel, a 2-vector for the planar one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelAlpha<T> {
    Linear(T),
    Planar([T; 2]),
}

/// Nonincreasing Nystrom eigenvalues of a sinc-kernel operator.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpectrum<T> {
    alpha: KernelAlpha<T>,
    eigenvalues: Vec<T>,
    nodes: usize,
}

impl<T: Real> KernelSpectrum<T> {
    pub fn alpha(&self) -> KernelAlpha<T> {
        self.alpha
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Quadrature resolution the spectrum was computed at.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `lambda_ell`, zero beyond the computed range (the operator spectrum
    /// decays superexponentially past the polarization edge).
    pub fn eigenvalue(&self, ell: usize) -> T {
        self.eigenvalues.get(ell).copied().unwrap_or_else(T::zero)
    }

    /// Sum of the leading `n` eigenvalues.
    pub fn partial_sum(&self, n: usize) -> T {
        self.eigenvalues
            .iter()
            .take(n)
            .fold(T::zero(), |acc, &l| acc + l)
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.alpha, KernelAlpha::Linear(_))
    }
}

/// Default Nystrom resolution `50 + 10 ceil(alpha)`; doubling it moves the
/// leading eigenvalues by less than 1e-10 over the tested range.
pub fn default_nodes<T: Real>(alpha: T) -> usize {
    50 + 10 * alpha.ceil().to_usize().unwrap_or(0).max(1)
}

/// `sin(pi a (x - x')) / (pi (x - x'))` with the removable singularity.
#[inline]
fn sinc_kernel<T: Real>(a: T, dx: T) -> T {
    a * sinc(a * dx)
}

/// Symmetric Nystrom eigenvalues of `sqrt(w) K sqrt(w)` on the given nodes.
fn nystrom_eigenvalues<T: Real>(anorm: T, xs: &[T], weights: &[T]) -> Vec<T> {
    let n = xs.len();
    let sw: Vec<T> = weights.iter().map(|&w| w.max(T::zero()).sqrt()).collect();
    let a = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        sw[i] * sw[j] * sinc_kernel(anorm, xs[i] - xs[j])
    });
    let mut values: Vec<T> = a.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    values
}

/// Spectrum of the linear-array kernel `sin(pi alpha (r - r'))/(pi (r - r'))`
/// on [-1/2, 1/2], by Gauss-Legendre Nystrom discretization.
///
/// Eigenvalues are clipped into [0, 1 + 1e-9]; their sum equals `alpha` up to
/// solver roundoff because the quadrature preserves the kernel trace exactly.
pub fn ula_kernel_spectrum<T: Real>(alpha: T, n_nodes: usize) -> Result<KernelSpectrum<T>> {
    if !(alpha > T::zero()) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: as_f64(alpha),
            range: "(0, inf)",
        });
    }
    if n_nodes < 8 {
        return Err(Error::TooFewNodes {
            min: 8,
            got: n_nodes,
        });
    }
    let rule = GaussLegendre::new(n_nodes)?;
    let (xs, ws) = rule.mapped(-real::<T>(0.5), real(0.5));
    let ceiling = T::one() + real(1e-9);
    let eigenvalues = nystrom_eigenvalues(alpha, &xs, &ws)
        .into_iter()
        .map(|l| l.clamp(T::zero(), ceiling))
        .collect();
    Ok(KernelSpectrum {
        alpha: KernelAlpha::Linear(alpha),
        eigenvalues,
        nodes: n_nodes,
    })
}

/// Number of eigenvalues exceeding `epsilon`; the spectrum polarizes so this
/// count tracks `alpha` up to a logarithmic correction.
pub fn polarization_count<T: Real>(spec: &KernelSpectrum<T>, epsilon: T) -> Result<usize> {
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: as_f64(epsilon),
            range: "(0, 1)",
        });
    }
    if !spec.is_linear() {
        return Err(Error::NotOneDimensional);
    }
    Ok(spec.eigenvalues.iter().filter(|&&l| l > epsilon).count())
}

/// Cross-section profile of the unit square projected onto the dispersion
/// direction: a trapezoid through (-l1/2, 0), (-l2/2, l3), (l2/2, l3),
/// (l1/2, 0) that integrates to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightProfile<T> {
    l1: T,
    l2: T,
    l3: T,
}

impl<T: Real> WeightProfile<T> {
    /// The four (position, value) breakpoints, left to right.
    pub fn breakpoints(&self) -> [(T, T); 4] {
        let half = real::<T>(0.5);
        [
            (-self.l1 * half, T::zero()),
            (-self.l2 * half, self.l3),
            (self.l2 * half, self.l3),
            (self.l1 * half, T::zero()),
        ]
    }

    /// Piecewise-linear evaluation; zero outside [-l1/2, l1/2].
    pub fn eval(&self, x: T) -> T {
        let half = real::<T>(0.5);
        let ax = x.abs();
        if ax <= self.l2 * half {
            self.l3
        } else if ax >= self.l1 * half {
            T::zero()
        } else {
            // linear ramp between (l2/2, l3) and (l1/2, 0)
            self.l3 * (self.l1 * half - ax) / ((self.l1 - self.l2) * half)
        }
    }

    /// Closed-form trapezoid area `(l1 + l2) l3 / 2`.
    pub fn area(&self) -> T {
        (self.l1 + self.l2) * self.l3 * real(0.5)
    }
}

/// Weight profile of a planar squint factor; degenerates to a triangle when
/// `|alpha_x| = |alpha_y|` and to the unit rectangle in the linear-array
/// limit. Broadside has no projection and is rejected.
pub fn upa_weight_profile<T: Real>(sf: &SquintFactor<T>) -> Result<WeightProfile<T>> {
    let p = sf.projection().ok_or(Error::Broadside)?;
    Ok(WeightProfile {
        l1: p.l1,
        l2: p.l2,
        l3: p.l3,
    })
}

/// Spectrum of the planar sinc-kernel operator through its one-dimensional
/// reduction: the symmetrically weighted kernel
/// `sqrt(w(x)) sin(pi |alpha| (x - x')) / (pi (x - x')) sqrt(w(x'))`
/// with `w` the projected-aperture trapezoid. Shares the planar operator's
/// eigenvalues exactly.
///
/// The quadrature splits at the trapezoid breakpoints so each panel sees a
/// smooth integrand; `n_nodes` is the total node budget.
pub fn upa_reduced_spectrum<T: Real>(sf: &SquintFactor<T>, n_nodes: usize) -> Result<KernelSpectrum<T>> {
    let profile = upa_weight_profile(sf)?;
    if n_nodes < 8 {
        return Err(Error::TooFewNodes {
            min: 8,
            got: n_nodes,
        });
    }
    let half = real::<T>(0.5);
    let mut cuts = vec![
        -profile.l1 * half,
        -profile.l2 * half,
        profile.l2 * half,
        profile.l1 * half,
    ];
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let panels: Vec<(T, T)> = cuts.windows(2).map(|p| (p[0], p[1])).collect();
    let (xs, ws) = composite_nodes(&panels, n_nodes)?;
    let weighted: Vec<T> = xs
        .iter()
        .zip(&ws)
        .map(|(&x, &w)| w * profile.eval(x))
        .collect();
    let eigenvalues = nystrom_eigenvalues(sf.norm(), &xs, &weighted)
        .into_iter()
        .map(|l| l.max(T::zero()))
        .collect();
    Ok(KernelSpectrum {
        alpha: KernelAlpha::Planar([sf.alpha_x(), sf.alpha_y()]),
        eigenvalues,
        nodes: xs.len(),
    })
}

/// Sandwich bounds `delta l3 lambda_ell(B_{alpha_lo(delta)}) <=
/// lambda_ell(B_alpha) <= l3 lambda_ell(B_{alpha_up})` on the planar kernel
/// eigenvalues, from the two linear-array spectra.
pub fn sandwich_bounds<T: Real>(
    sf: &SquintFactor<T>,
    delta: T,
    ell: usize,
    n_nodes: usize,
) -> Result<(T, T)> {
    let profile = upa_weight_profile(sf)?;
    let alpha_lo = sf.alpha_lo(delta)?;
    let upper = profile.l3 * ula_kernel_spectrum(sf.alpha_up(), n_nodes)?.eigenvalue(ell);
    let lower = if delta > T::zero() && alpha_lo > T::zero() {
        delta * profile.l3 * ula_kernel_spectrum(alpha_lo, n_nodes)?.eigenvalue(ell)
    } else {
        T::zero()
    };
    Ok((lower, upper))
}

/// Normalized squared mismatch between the rescaled discrete spectrum and the
/// continuum one:
/// `sum_ell ((|alpha|/N) lambda_ell(B) - lambda_ell(B_alpha))^2 / sum_ell lambda_ell(B_alpha)^2`.
pub fn discretization_error<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_nodes: usize,
) -> Result<T> {
    let sf = crate::geometry::squint_factor(geom, dir, band);
    if sf.is_broadside() {
        return Err(Error::Broadside);
    }
    let b = correlation_matrix(geom, dir, band)?;
    let discrete = spectrum_dense(&b, false)?;
    let continuum = upa_reduced_spectrum(&sf, n_nodes)?;
    let scale = sf.norm() / real::<T>(geom.len() as f64);
    let len = discrete.eigenvalues().len().max(continuum.eigenvalues().len());
    let mut num = T::zero();
    let mut den = T::zero();
    for ell in 0..len {
        let d = discrete
            .eigenvalues()
            .get(ell)
            .copied()
            .unwrap_or_else(T::zero)
            * scale;
        let c = continuum.eigenvalue(ell);
        num += (d - c) * (d - c);
        den += c * c;
    }
    Ok(num / den)
}

/// Dense-grid limit of the normalized beamspace gain: the average sinc-squared
/// mass captured by `n_rf` unit-spaced windows of width `alpha`,
/// `(1/alpha) sum_{ell < n_rf} int_{c_ell - alpha/2}^{c_ell + alpha/2} sinc^2(t) dt`
/// with `c_ell = ell - (n_rf - 1)/2`.
pub fn beamspace_limit_gain<T: Real>(alpha: T, n_rf: usize) -> Result<T> {
    if !(alpha > T::zero()) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: as_f64(alpha),
            range: "(0, inf)",
        });
    }
    if n_rf == 0 {
        return Err(Error::OutOfRange {
            name: "n_rf",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let half = alpha * real(0.5);
    let mut total = T::zero();
    for ell in 0..n_rf {
        let center = real::<T>(ell as f64) - real::<T>((n_rf - 1) as f64) * real(0.5);
        total += sinc_sq_integral(center + half) - sinc_sq_integral(center - half);
    }
    Ok(total / alpha)
}
