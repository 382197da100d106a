//! Gain computations for constrained analog networks: beamspace combs,
//! hybridly-connected and partially-connected subarray structures, and the
//! separable / multiantenna decoupling bounds.

use nalgebra::{Complex, DMatrix, DVector};

use crate::channel::{steering_cross_gain, steering_vector_unchecked};
use crate::continuum::ula_kernel_spectrum;
use crate::error::{Error, Result};
use crate::geometry::{squint_factor, ArrayGeometry, BandSpec, Direction, SquintFactor};
use crate::scalar::{as_f64, real, speed_of_light, Real};
use crate::special::sinc_sq_integral;
use crate::spectra::{
    avg_gain, band_quadrature, correlation_matrix, default_quadrature_nodes, AnalogBeamformer,
    Architecture,
};

/// Partition of a planar array into an `m_x` x `m_y` grid of identical
/// subarrays, each wired to its own `chains_per_subarray` RF chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridPartition {
    m_x: usize,
    m_y: usize,
    chains_per_subarray: usize,
}

impl HybridPartition {
    pub fn new(m_x: usize, m_y: usize, chains_per_subarray: usize) -> Result<Self> {
        if m_x == 0 || m_y == 0 || chains_per_subarray == 0 {
            return Err(Error::OutOfRange {
                name: "partition",
                value: 0.0,
                range: "all counts >= 1",
            });
        }
        Ok(Self {
            m_x,
            m_y,
            chains_per_subarray,
        })
    }

    pub fn m_x(&self) -> usize {
        self.m_x
    }

    pub fn m_y(&self) -> usize {
        self.m_y
    }

    pub fn chains_per_subarray(&self) -> usize {
        self.chains_per_subarray
    }

    pub fn n_subarrays(&self) -> usize {
        self.m_x * self.m_y
    }

    pub fn total_chains(&self) -> usize {
        self.n_subarrays() * self.chains_per_subarray
    }

    /// Checks that the grid divides the array.
    pub fn validate_for<T: Real>(&self, geom: &ArrayGeometry<T>) -> Result<()> {
        if geom.n_x() % self.m_x != 0 || geom.n_y() % self.m_y != 0 {
            return Err(Error::BadPartition {
                m_x: self.m_x,
                m_y: self.m_y,
                n_x: geom.n_x(),
                n_y: geom.n_y(),
            });
        }
        Ok(())
    }

    /// Geometry of one subarray.
    pub fn subarray_geometry<T: Real>(&self, geom: &ArrayGeometry<T>) -> Result<ArrayGeometry<T>> {
        self.validate_for(geom)?;
        ArrayGeometry::new(
            geom.n_x() / self.m_x,
            geom.n_y() / self.m_y,
            geom.d_x(),
            geom.d_y(),
        )
    }

    /// Global element indices of each subarray, subarrays in row-major
    /// (x-grid major) order and elements in the subarray's own index order.
    pub fn subarray_element_indices<T: Real>(
        &self,
        geom: &ArrayGeometry<T>,
    ) -> Result<Vec<Vec<usize>>> {
        self.validate_for(geom)?;
        let sx = geom.n_x() / self.m_x;
        let sy = geom.n_y() / self.m_y;
        let mut out = Vec::with_capacity(self.n_subarrays());
        for p in 0..self.m_x {
            for q in 0..self.m_y {
                let mut idx = Vec::with_capacity(sx * sy);
                for ix in 0..sx {
                    for iy in 0..sy {
                        idx.push((p * sx + ix) * geom.n_y() + (q * sy + iy));
                    }
                }
                out.push(idx);
            }
        }
        Ok(out)
    }

    /// Displacement of each subarray relative to the first one.
    pub fn subarray_offsets<T: Real>(&self, geom: &ArrayGeometry<T>) -> Result<Vec<[T; 2]>> {
        self.validate_for(geom)?;
        let sx = geom.n_x() / self.m_x;
        let sy = geom.n_y() / self.m_y;
        let mut out = Vec::with_capacity(self.n_subarrays());
        for p in 0..self.m_x {
            for q in 0..self.m_y {
                out.push([
                    real::<T>((p * sx) as f64) * geom.d_x(),
                    real::<T>((q * sy) as f64) * geom.d_y(),
                ]);
            }
        }
        Ok(out)
    }
}

/// Dispersion denominator of the beamspace comb: `|alpha_x|` for a linear
/// array, `alpha_up` for a planar one. Zero means no squint and no comb.
fn beamspace_denominator<T: Real>(geom: &ArrayGeometry<T>, sf: &SquintFactor<T>) -> Result<T> {
    let denom = if geom.is_ula() {
        sf.alpha_x().abs()
    } else {
        sf.alpha_up()
    };
    if denom > T::zero() {
        Ok(denom)
    } else {
        Err(Error::Broadside)
    }
}

/// Relative frequencies of the beamspace columns, `f_ell =
/// (ell - (N_RF - 1)/2) W / alpha`, de-duplicated by nudging any coinciding
/// beams one quadrature step apart so the analog matrix keeps full column
/// rank.
pub fn beamspace_frequencies<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_rf: usize,
) -> Result<Vec<T>> {
    if n_rf == 0 {
        return Err(Error::OutOfRange {
            name: "n_rf",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let sf = squint_factor(geom, dir, band);
    let denom = beamspace_denominator(geom, &sf)?;
    let mut freqs: Vec<T> = (0..n_rf)
        .map(|ell| {
            (real::<T>(ell as f64) - real::<T>((n_rf - 1) as f64) * real(0.5)) / denom
                * band.bandwidth()
        })
        .collect();
    // rank guard: columns at frequencies whose steering vectors coincide are
    // pushed apart by one quadrature step
    let n = real::<T>(geom.len() as f64);
    let step = band.bandwidth() / real::<T>(default_quadrature_nodes(sf.alpha_up()) as f64);
    let dup_tol = T::one() - real(1e-9);
    for _ in 0..8 * n_rf {
        let mut bumped = false;
        for j in 1..n_rf {
            for i in 0..j {
                let overlap = steering_cross_gain(geom, dir, freqs[j] - freqs[i]).abs() / n;
                if overlap >= dup_tol {
                    freqs[j] += step;
                    bumped = true;
                }
            }
        }
        if !bumped {
            return Ok(freqs);
        }
    }
    Err(Error::RankDeficient)
}

/// Materializes the beamspace analog stage: column `ell` is the conjugate
/// steering vector at `f_ell`. Columns are left unnormalized; every gain in
/// the library is invariant to column scale.
pub fn beamspace_beamformer<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_rf: usize,
) -> Result<AnalogBeamformer<T>> {
    let freqs = beamspace_frequencies(geom, dir, band, n_rf)?;
    let n = geom.len();
    let mut m = DMatrix::<Complex<T>>::zeros(n, n_rf);
    for (j, &f) in freqs.iter().enumerate() {
        let col = steering_vector_unchecked(geom, dir, band, f).channel();
        m.set_column(j, &col);
    }
    AnalogBeamformer::tagged(m, Architecture::Beamspace)
}

/// Normalized average gain `g_avg / N` of the beamspace stage, evaluated
/// entirely through closed-form inner products: both the column Gram matrix
/// and the per-frequency responses are Dirichlet-kernel products, so the
/// cost is independent of the element count.
pub fn beamspace_avg_gain<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_rf: usize,
) -> Result<T> {
    let sf = squint_factor(geom, dir, band);
    beamspace_avg_gain_with_nodes(
        geom,
        dir,
        band,
        n_rf,
        default_quadrature_nodes(sf.alpha_up()),
    )
}

/// As [`beamspace_avg_gain`] with an explicit quadrature resolution.
pub fn beamspace_avg_gain_with_nodes<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_rf: usize,
    k_nodes: usize,
) -> Result<T> {
    let freqs = beamspace_frequencies(geom, dir, band, n_rf)?;
    let gram = DMatrix::<T>::from_fn(n_rf, n_rf, |i, j| {
        steering_cross_gain(geom, dir, freqs[j] - freqs[i])
    });
    let chol = gram.cholesky().ok_or(Error::RankDeficient)?;
    let (fq, wq) = band_quadrature(band, k_nodes)?;
    let mut acc = T::zero();
    for (&f, &w) in fq.iter().zip(&wq) {
        let c = DVector::<T>::from_fn(n_rf, |ell, _| {
            steering_cross_gain(geom, dir, f - freqs[ell])
        });
        let solved = chol.solve(&c);
        acc += w * c.dot(&solved);
    }
    Ok(acc / real(geom.len() as f64))
}

/// Average gain retained when each beamspace chain only processes a
/// `b / alpha` slice of the band: `int_{-b/2}^{b/2} sinc^2(t) dt` in the
/// dense-array limit.
pub fn reduced_band_gain<T: Real>(band_fraction: T) -> Result<T> {
    if !(band_fraction > T::zero()) {
        return Err(Error::OutOfRange {
            name: "band_fraction",
            value: as_f64(band_fraction),
            range: "(0, inf)",
        });
    }
    Ok(real::<T>(2.0) * sinc_sq_integral(band_fraction * real(0.5)))
}

/// Average gain of a hybridly-connected array: the sum of the per-subarray
/// average gains, one analog block per subarray. Equals the gain of the
/// assembled block-diagonal matrix.
pub fn hybrid_partition_gain<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    part: &HybridPartition,
    subarray_beamformers: &[AnalogBeamformer<T>],
) -> Result<T> {
    part.validate_for(geom)?;
    if subarray_beamformers.len() != part.n_subarrays() {
        return Err(Error::NonConforming(format!(
            "{} beamformers for {} subarrays",
            subarray_beamformers.len(),
            part.n_subarrays()
        )));
    }
    let sub_geom = part.subarray_geometry(geom)?;
    for (m, w) in subarray_beamformers.iter().enumerate() {
        if w.elements() != sub_geom.len() || w.n_rf() != part.chains_per_subarray() {
            return Err(Error::NonConforming(format!(
                "subarray {m}: beamformer is {}x{}, expected {}x{}",
                w.elements(),
                w.n_rf(),
                sub_geom.len(),
                part.chains_per_subarray()
            )));
        }
    }
    // identical topology: every subarray shares one correlation matrix, and
    // the subarray displacement only contributes a global phase that the
    // gain is blind to
    let b_sub = correlation_matrix(&sub_geom, dir, band)?;
    let mut total = T::zero();
    for w in subarray_beamformers {
        total += avg_gain(w, &b_sub)?;
    }
    Ok(total)
}

/// RF chains a hybridly-connected partition needs for asymptotically
/// squint-free operation: `ceil(m_y |alpha_x| + m_x |alpha_y|)`, at least 1.
/// For linear arrays (`m_y = 1`, `alpha_y = 0`) this is `ceil(alpha)`, the
/// fully-connected requirement.
pub fn hybridly_required_chains<T: Real>(part: &HybridPartition, sf: &SquintFactor<T>) -> usize {
    let need = real::<T>(part.m_y as f64) * sf.alpha_x().abs()
        + real::<T>(part.m_x as f64) * sf.alpha_y().abs();
    need.ceil().to_usize().unwrap_or(0).max(1)
}

/// Dense-array limit of the normalized gain of M identical MRT subarrays on
/// one linear array: the mean of sinc^2 over [-alpha/2M, alpha/2M], i.e.
/// `(2M/(pi alpha))(Si(pi alpha / M) - sin^2(pi alpha / 2M)/(pi alpha / 2M))`.
pub fn partial_mrt_gain<T: Real>(alpha: T, m: usize) -> Result<T> {
    if !(alpha > T::zero()) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: as_f64(alpha),
            range: "(0, inf)",
        });
    }
    if m == 0 {
        return Err(Error::OutOfRange {
            name: "m",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let x = alpha / real::<T>((2 * m) as f64);
    Ok(sinc_sq_integral(x) / x)
}

/// Dense-array limit of the normalized gain of M identical subarrays with the
/// per-subarray gain-optimal beamformer: `lambda_0(B_{alpha/M}) / (alpha/M)`.
pub fn partial_optimal_gain<T: Real>(alpha: T, m: usize, n_nodes: usize) -> Result<T> {
    if m == 0 {
        return Err(Error::OutOfRange {
            name: "m",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let a_sub = alpha / real::<T>(m as f64);
    let spec = ula_kernel_spectrum(a_sub, n_nodes)?;
    Ok(spec.eigenvalue(0) / a_sub)
}

/// Per-subarray digital weights `exp(-j 2 pi (f_c + f)/c u^T r_m)` that let a
/// single RF chain plus delay lines match the M-chain partially-connected
/// array: with identical subarray beamformers they achieve `g(f) = M g_0(f)`
/// at every frequency.
pub fn delay_line_weights<T: Real>(
    part: &HybridPartition,
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    f_rel: T,
) -> Result<DVector<Complex<T>>> {
    if part.chains_per_subarray() != 1 {
        return Err(Error::NotSingleChain {
            chains_per_subarray: part.chains_per_subarray(),
        });
    }
    band.check_in_band(f_rel)?;
    let offsets = part.subarray_offsets(geom)?;
    let k = T::two_pi() * (band.carrier() + f_rel) / speed_of_light::<T>();
    Ok(DVector::from_iterator(
        offsets.len(),
        offsets.iter().map(|r| {
            let phase = -k * (dir.u_x() * r[0] + dir.u_y() * r[1]);
            Complex::new(phase.cos(), phase.sin())
        }),
    ))
}

/// Upper bound on the normalized gain of a separable planar beamformer:
/// the smaller of the two per-axis normalized gains.
pub fn separable_gain_bound<T: Real>(gx_norm: T, gy_norm: T) -> Result<T> {
    for (v, name) in [(gx_norm, "gx_norm"), (gy_norm, "gy_norm")] {
        if v < T::zero() || v > T::one() {
            return Err(Error::OutOfRange {
                name,
                value: as_f64(v),
                range: "[0, 1]",
            });
        }
    }
    Ok(gx_norm.min(gy_norm))
}

/// Attainable range of the end-to-end normalized gain of a transmit/receive
/// pair with the given per-side normalized average gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiGainBounds<T> {
    pub lower: T,
    pub upper: T,
}

/// Bounds `max(g_t + g_r - 1, 0) <= g_avg/(N_t N_r) <= min(g_t, g_r)` for a
/// multiantenna link; both ends are attained by indicator gain profiles.
pub fn multi_gain_bounds<T: Real>(gt_norm: T, gr_norm: T) -> Result<MultiGainBounds<T>> {
    for (v, name) in [(gt_norm, "gt_norm"), (gr_norm, "gr_norm")] {
        if v < T::zero() || v > T::one() {
            return Err(Error::OutOfRange {
                name,
                value: as_f64(v),
                range: "[0, 1]",
            });
        }
    }
    Ok(MultiGainBounds {
        lower: (gt_norm + gr_norm - T::one()).max(T::zero()),
        upper: gt_norm.min(gr_norm),
    })
}
