//! The bandwidth-averaged correlation matrix, its spectrum, and analog
//! beamformers with their average and per-frequency gains.
//!
//! The correlation matrix `B = (1/W) int a(f) a*(f) df` factors as
//! `D* S D` where `S` is the real symmetric sinc matrix
//! `S[n',n] = sinc(W u^T (r_n - r_n') / c)` and `D` is the unit-modulus
//! carrier phase diagonal. `S` is what gets stored; eigenvalues are shared
//! with `B`, eigenvectors differ by the diagonal, and every gain formula
//! derotates through `D` so that all public quantities refer to `B` itself.

use nalgebra::{Complex, DMatrix, DVector};

use crate::channel::{steering_cross_gain, steering_phases, SteeringVector};
use crate::error::{Error, Result};
use crate::geometry::{ArrayGeometry, BandSpec, Direction};
use crate::quad::GaussLegendre;
use crate::scalar::{real, speed_of_light, Real};
use crate::special::sinc;

/// Default cap on the element count of a materialized correlation matrix.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Frequency-averaged steering correlation matrix of one (geometry,
/// direction, band) triple.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T: Real> {
    sinc: DMatrix<T>,
    carrier: DVector<Complex<T>>,
}

impl<T: Real> CorrelationMatrix<T> {
    /// Number of array elements.
    pub fn dim(&self) -> usize {
        self.sinc.nrows()
    }

    /// The stored real symmetric sinc entries (unit diagonal, trace N).
    pub fn entries(&self) -> &DMatrix<T> {
        &self.sinc
    }

    /// Carrier phase diagonal `D_n = exp(j 2 pi f_c u^T r_n / c)`.
    pub fn carrier(&self) -> &DVector<Complex<T>> {
        &self.carrier
    }

    /// Applies the full matrix `B = D* S D` to a vector.
    pub fn apply(&self, v: &DVector<Complex<T>>) -> DVector<Complex<T>> {
        let rotated = DVector::from_iterator(
            v.len(),
            v.iter().zip(self.carrier.iter()).map(|(x, d)| d * x),
        );
        let re = rotated.map(|z| z.re);
        let im = rotated.map(|z| z.im);
        let sre = &self.sinc * re;
        let sim = &self.sinc * im;
        DVector::from_iterator(
            v.len(),
            sre.iter()
                .zip(sim.iter())
                .zip(self.carrier.iter())
                .map(|((&r, &i), d)| d.conj() * Complex::new(r, i)),
        )
    }

    /// Materializes the full complex matrix; for tests and small arrays.
    pub fn full_matrix(&self) -> DMatrix<Complex<T>> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| {
            self.carrier[i].conj() * self.carrier[j] * Complex::new(self.sinc[(i, j)], T::zero())
        })
    }
}

/// Builds the correlation matrix under the default dense cap.
pub fn correlation_matrix<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
) -> Result<CorrelationMatrix<T>> {
    correlation_matrix_capped(geom, dir, band, DEFAULT_DENSE_CAP)
}

/// Builds the correlation matrix with an explicit element cap.
pub fn correlation_matrix_capped<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    cap: usize,
) -> Result<CorrelationMatrix<T>> {
    if geom.len() > cap {
        return Err(Error::DenseCapExceeded {
            n: geom.len(),
            cap,
        });
    }
    Ok(correlation_matrix_from_positions(
        &geom.element_positions(),
        dir,
        band,
    ))
}

/// Correlation matrix of an explicit element layout; entries depend only on
/// position differences, so any translation of the layout gives the same
/// matrix.
pub fn correlation_matrix_from_positions<T: Real>(
    positions: &[[T; 2]],
    dir: &Direction<T>,
    band: &BandSpec<T>,
) -> CorrelationMatrix<T> {
    let n = positions.len();
    let c = speed_of_light::<T>();
    let proj: Vec<T> = positions
        .iter()
        .map(|p| dir.u_x() * p[0] + dir.u_y() * p[1])
        .collect();
    let w_over_c = band.bandwidth() / c;
    let sinc_m = DMatrix::from_fn(n, n, |i, j| sinc(w_over_c * (proj[j] - proj[i])));
    let k_c = T::two_pi() * band.carrier() / c;
    let carrier = DVector::from_iterator(
        n,
        proj.iter().map(|&p| {
            let ph = k_c * p;
            Complex::new(ph.cos(), ph.sin())
        }),
    );
    CorrelationMatrix {
        sinc: sinc_m,
        carrier,
    }
}

/// Eigenvalues (nonincreasing, clipped at zero) and optional eigenvectors of
/// a correlation matrix or of its Gram surrogate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: Option<DMatrix<Complex<T>>>,
}

impl<T: Real> SpectrumResult<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvector columns matching the eigenvalue order, when
    /// they were requested.
    pub fn eigenvectors(&self) -> Option<&DMatrix<Complex<T>>> {
        self.eigenvectors.as_ref()
    }

    /// Sum of the leading `n_rf` eigenvalues: the optimal average gain with
    /// that many RF chains.
    pub fn partial_sum(&self, n_rf: usize) -> T {
        self.eigenvalues
            .iter()
            .take(n_rf)
            .fold(T::zero(), |acc, &l| acc + l)
    }
}

fn sorted_clipped<T: Real>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    for v in &mut values {
        if *v < T::zero() {
            *v = T::zero();
        }
    }
    values
}

/// Dense eigendecomposition of the correlation matrix.
///
/// Eigenvalues come back nonincreasing with negative roundoff clipped to
/// zero; eigenvectors (if requested) are eigenvectors of the full matrix `B`.
pub fn spectrum_dense<T: Real>(
    b: &CorrelationMatrix<T>,
    want_vectors: bool,
) -> Result<SpectrumResult<T>> {
    let n = b.dim();
    if !want_vectors {
        let values = b.sinc.clone().symmetric_eigenvalues();
        return Ok(SpectrumResult {
            eigenvalues: sorted_clipped(values.iter().copied().collect()),
            eigenvectors: None,
        });
    }
    let eig = nalgebra::linalg::SymmetricEigen::try_new(b.sinc.clone(), T::eps(), 100 * (n + 10))
        .ok_or(Error::EigenFailed)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<T> = order
        .iter()
        .map(|&i| eig.eigenvalues[i].max(T::zero()))
        .collect();
    // derotate: eigenvectors of B = D* S D are D* u
    let vectors = DMatrix::from_fn(n, n, |r, c| {
        b.carrier[r].conj() * Complex::new(eig.eigenvectors[(r, order[c])], T::zero())
    });
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: Some(vectors),
    })
}

/// Default frequency-quadrature resolution `max(64, 8 ceil(alpha_up))`; the
/// effective rank of the correlation matrix is about `alpha_up` and the
/// integrand is entire, so this converges spectrally.
pub fn default_quadrature_nodes<T: Real>(alpha_up: T) -> usize {
    let ceil = alpha_up.ceil().to_usize().unwrap_or(0);
    (8 * ceil).max(64)
}

/// Gauss-Legendre nodes on [-W/2, W/2] with weights normalized to sum to 1.
pub(crate) fn band_quadrature<T: Real>(band: &BandSpec<T>, k: usize) -> Result<(Vec<T>, Vec<T>)> {
    let rule = GaussLegendre::new(k)?;
    let half = band.bandwidth() * real(0.5);
    let (f, w) = rule.mapped(-half, half);
    let wn = w.iter().map(|&x| x / band.bandwidth()).collect();
    Ok((f, wn))
}

/// Weighted Gram matrix of the band quadrature: the k x k surrogate whose
/// nonzero eigenvalues approximate those of the correlation matrix.
fn weighted_gram<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    freqs: &[T],
    weights: &[T],
) -> DMatrix<T> {
    let k = freqs.len();
    let sw: Vec<T> = weights.iter().map(|&w| w.sqrt()).collect();
    DMatrix::from_fn(k, k, |i, j| {
        sw[i] * sw[j] * steering_cross_gain(geom, dir, freqs[j] - freqs[i])
    })
}

/// Spectrum of the correlation matrix through the frequency-domain Gram
/// route: `B ~ sum_k w_k a(f_k) a*(f_k)` shares its nonzero eigenvalues with
/// the k x k weighted Gram matrix of closed-form inner products, so no N x N
/// matrix is ever materialized.
pub fn spectrum_gram<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    k_nodes: usize,
) -> Result<SpectrumResult<T>> {
    if k_nodes < 2 {
        return Err(Error::TooFewNodes {
            min: 2,
            got: k_nodes,
        });
    }
    let (freqs, weights) = band_quadrature(band, k_nodes)?;
    let gram = weighted_gram(geom, dir, &freqs, &weights);
    let values = gram.symmetric_eigenvalues();
    let mut eigenvalues = sorted_clipped(values.iter().copied().collect());
    eigenvalues.truncate(geom.len().min(k_nodes));
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: None,
    })
}

/// As [`spectrum_gram`], additionally reconstructing eigenvectors as weighted
/// steering combinations. Materializes N-dimensional vectors, hence the cap.
pub fn spectrum_gram_with_vectors<T: Real>(
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    k_nodes: usize,
    cap: usize,
) -> Result<SpectrumResult<T>> {
    if k_nodes < 2 {
        return Err(Error::TooFewNodes {
            min: 2,
            got: k_nodes,
        });
    }
    let n = geom.len();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let (freqs, weights) = band_quadrature(band, k_nodes)?;
    let gram = weighted_gram(geom, dir, &freqs, &weights);
    let k = freqs.len();
    let eig = nalgebra::linalg::SymmetricEigen::try_new(gram, T::eps(), 100 * (k + 10))
        .ok_or(Error::EigenFailed)?;
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("eigenvalues are finite")
    });

    // channel columns scaled by sqrt(w): B_k = A A* with A = [sqrt(w_i) a(f_i)]
    let mut a = DMatrix::<Complex<T>>::zeros(n, k);
    for (i, (&f, &w)) in freqs.iter().zip(&weights).enumerate() {
        let phases = steering_phases(geom, dir, band.carrier() + f);
        let sw = w.sqrt();
        for (r, &ph) in phases.iter().enumerate() {
            // channel entry exp(-j phi) scaled
            a[(r, i)] = Complex::new(ph.cos() * sw, -ph.sin() * sw);
        }
    }

    let cutoff = eig.eigenvalues[order[0]].max(T::zero()) * real(1e-12);
    let mut eigenvalues = Vec::with_capacity(n.min(k));
    let mut columns: Vec<DVector<Complex<T>>> = Vec::new();
    for &idx in order.iter().take(n.min(k)) {
        let lambda = eig.eigenvalues[idx].max(T::zero());
        eigenvalues.push(lambda);
        if lambda > cutoff {
            let coeff = eig.eigenvectors.column(idx);
            let mut v = DVector::<Complex<T>>::zeros(n);
            for (i, &cf) in coeff.iter().enumerate() {
                v.axpy(Complex::new(cf, T::zero()), &a.column(i).clone_owned(), Complex::new(T::one(), T::zero()));
            }
            let norm = v.norm();
            if norm > T::zero() {
                v /= Complex::new(norm, T::zero());
            }
            columns.push(v);
        }
    }
    let eigenvectors = DMatrix::from_fn(n, columns.len(), |r, c| columns[c][r]);
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
    })
}

/// Connectivity tag of an analog beamforming matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Architecture {
    /// Every element reachable from every chain.
    Full,
    /// Columns are steering vectors on a regular frequency comb.
    Beamspace,
    /// Block-diagonal network: consecutive row/column blocks of the given
    /// sizes, one block per subarray.
    BlockDiagonal {
        row_blocks: Vec<usize>,
        col_blocks: Vec<usize>,
    },
}

/// Frequency-flat analog beamforming stage: an N x N_RF complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogBeamformer<T: Real> {
    matrix: DMatrix<Complex<T>>,
    architecture: Architecture,
}

impl<T: Real> AnalogBeamformer<T> {
    /// Wraps a fully-connected analog matrix. Needs at least one column and
    /// no more columns than rows.
    pub fn new(matrix: DMatrix<Complex<T>>) -> Result<Self> {
        Self::tagged(matrix, Architecture::Full)
    }

    pub(crate) fn tagged(matrix: DMatrix<Complex<T>>, architecture: Architecture) -> Result<Self> {
        if matrix.ncols() == 0 || matrix.nrows() < matrix.ncols() {
            return Err(Error::RankDeficient);
        }
        Ok(Self {
            matrix,
            architecture,
        })
    }

    /// Wraps a block-diagonal matrix, verifying the zero pattern against the
    /// declared partition blocks.
    pub fn block_diagonal(
        matrix: DMatrix<Complex<T>>,
        row_blocks: Vec<usize>,
        col_blocks: Vec<usize>,
    ) -> Result<Self> {
        if row_blocks.len() != col_blocks.len() {
            return Err(Error::NonConforming(
                "row and column block lists differ in length".into(),
            ));
        }
        if row_blocks.iter().sum::<usize>() != matrix.nrows()
            || col_blocks.iter().sum::<usize>() != matrix.ncols()
        {
            return Err(Error::NonConforming(
                "block sizes do not sum to the matrix dimensions".into(),
            ));
        }
        let mut r0 = 0;
        let mut c0 = 0;
        let blocks: Vec<(usize, usize, usize, usize)> = row_blocks
            .iter()
            .zip(&col_blocks)
            .map(|(&r, &c)| {
                let b = (r0, r0 + r, c0, c0 + c);
                r0 += r;
                c0 += c;
                b
            })
            .collect();
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                let inside = blocks
                    .iter()
                    .any(|&(rs, re, cs, ce)| i >= rs && i < re && j >= cs && j < ce);
                if !inside && matrix[(i, j)] != Complex::new(T::zero(), T::zero()) {
                    return Err(Error::NonConforming(format!(
                        "nonzero entry at ({i}, {j}) outside the declared blocks"
                    )));
                }
            }
        }
        Self::tagged(
            matrix,
            Architecture::BlockDiagonal {
                row_blocks,
                col_blocks,
            },
        )
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn architecture(&self) -> &Architecture {
        &self.architecture
    }

    /// Number of RF chains (columns).
    pub fn n_rf(&self) -> usize {
        self.matrix.ncols()
    }

    /// Number of array elements (rows).
    pub fn elements(&self) -> usize {
        self.matrix.nrows()
    }

    fn gram_cholesky(&self) -> Result<nalgebra::linalg::Cholesky<Complex<T>, nalgebra::Dyn>> {
        let gram = self.matrix.adjoint() * &self.matrix;
        let scale = gram
            .diagonal()
            .iter()
            .fold(T::zero(), |acc, d| acc.max(d.re));
        let chol = gram.cholesky().ok_or(Error::RankDeficient)?;
        // a pivot at roundoff scale means numerically dependent columns
        let tol = scale * real::<T>(100.0) * T::eps();
        for pivot in chol.l_dirty().diagonal().iter() {
            if pivot.re * pivot.re <= tol {
                return Err(Error::RankDeficient);
            }
        }
        Ok(chol)
    }
}

/// Stacks the leading eigenvectors into the gain-optimal analog beamformer.
pub fn optimal_analog_beamformer<T: Real>(
    spec: &SpectrumResult<T>,
    n_rf: usize,
) -> Result<AnalogBeamformer<T>> {
    let vectors = spec.eigenvectors().ok_or(Error::NotEnoughVectors {
        requested: n_rf,
        available: 0,
    })?;
    if n_rf == 0 || n_rf > vectors.ncols() {
        return Err(Error::NotEnoughVectors {
            requested: n_rf,
            available: vectors.ncols(),
        });
    }
    AnalogBeamformer::tagged(vectors.columns(0, n_rf).into_owned(), Architecture::Full)
}

/// Average beamforming gain `tr(W (W*W)^{-1} W* B)` of an analog stage under
/// the optimal per-frequency digital stage.
pub fn avg_gain<T: Real>(w_a: &AnalogBeamformer<T>, b: &CorrelationMatrix<T>) -> Result<T> {
    if w_a.elements() != b.dim() {
        return Err(Error::NonConforming(format!(
            "beamformer has {} rows, correlation matrix has {}",
            w_a.elements(),
            b.dim()
        )));
    }
    let chol = w_a.gram_cholesky()?;
    // derotate through the carrier diagonal: tr(... B) = tr(G^{-1} X* S X), X = D W
    let n = b.dim();
    let k = w_a.n_rf();
    let mut x = DMatrix::<Complex<T>>::zeros(n, k);
    for j in 0..k {
        for i in 0..n {
            x[(i, j)] = b.carrier[i] * w_a.matrix[(i, j)];
        }
    }
    let mut sx = DMatrix::<Complex<T>>::zeros(n, k);
    for j in 0..k {
        let col = x.column(j);
        let re = DVector::from_iterator(n, col.iter().map(|z| z.re));
        let im = DVector::from_iterator(n, col.iter().map(|z| z.im));
        let sre = &b.sinc * re;
        let sim = &b.sinc * im;
        for i in 0..n {
            sx[(i, j)] = Complex::new(sre[i], sim[i]);
        }
    }
    let m = x.adjoint() * sx;
    let solved = chol.solve(&m);
    Ok(solved.trace().re)
}

/// Per-frequency gain `||(W*W)^{-1/2} W* a(f)||^2` together with digital
/// weights that attain it (scaled to unit transmit power).
pub fn instantaneous_gain<T: Real>(
    w_a: &AnalogBeamformer<T>,
    a_f: &SteeringVector<T>,
) -> Result<(T, DVector<Complex<T>>)> {
    if w_a.elements() != a_f.len() {
        return Err(Error::NonConforming(format!(
            "beamformer has {} rows, steering vector has {}",
            w_a.elements(),
            a_f.len()
        )));
    }
    let chol = w_a.gram_cholesky()?;
    let c = w_a.matrix.adjoint() * a_f.channel();
    // g = c* G^{-1} c through one solve
    let solved = chol.solve(&c);
    let g = c
        .iter()
        .zip(solved.iter())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (ci, si)| {
            acc + ci.conj() * si
        })
        .re;
    let g = g.max(T::zero());
    // unit-power digital weights: w_d = G^{-1} c / sqrt(g), so ||W w_d|| = 1
    let mut w_d = solved;
    if g > T::zero() {
        let scale = Complex::new(T::one() / g.sqrt(), T::zero());
        w_d *= scale;
    }
    Ok((g, w_d))
}

/// Sampled gain-versus-frequency curve with its quadrature average.
#[derive(Debug, Clone, PartialEq)]
pub struct GainProfile<T> {
    grid: Vec<T>,
    g: Vec<T>,
    g_avg: T,
}

impl<T: Real> GainProfile<T> {
    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn gains(&self) -> &[T] {
        &self.g
    }

    pub fn g_avg(&self) -> T {
        self.g_avg
    }
}

/// Evaluates the per-frequency gain of an analog stage on the band quadrature
/// grid and averages it.
pub fn gain_profile<T: Real>(
    w_a: &AnalogBeamformer<T>,
    geom: &ArrayGeometry<T>,
    dir: &Direction<T>,
    band: &BandSpec<T>,
    n_nodes: usize,
) -> Result<GainProfile<T>> {
    let (freqs, weights) = band_quadrature(band, n_nodes)?;
    let mut g = Vec::with_capacity(freqs.len());
    let mut g_avg = T::zero();
    for (&f, &w) in freqs.iter().zip(&weights) {
        let sv = crate::channel::steering_vector(geom, dir, band, f)?;
        let (gain, _) = instantaneous_gain(w_a, &sv)?;
        g_avg += w * gain;
        g.push(gain);
    }
    Ok(GainProfile {
        grid: freqs,
        g,
        g_avg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::uv_from_angles;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn setup() -> (ArrayGeometry<f64>, Direction<f64>, BandSpec<f64>) {
        let band = BandSpec::new(60e9, 4e9).unwrap();
        let d = band.wavelength() / 2.0;
        let geom = ArrayGeometry::ula(8, d).unwrap();
        let dir = uv_from_angles(0.0, 60.0);
        (geom, dir, band)
    }

    #[test]
    fn broadside_matrix_is_all_ones() {
        let (geom, _, band) = setup();
        let b = correlation_matrix(&geom, &Direction::broadside(), &band).unwrap();
        for v in b.entries().iter() {
            assert_eq!(*v, 1.0);
        }
        let spec = spectrum_dense(&b, false).unwrap();
        assert_relative_eq!(spec.eigenvalues()[0], 8.0, max_relative = 1e-12);
        for &l in &spec.eigenvalues()[1..] {
            assert_abs_diff_eq!(l, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn unit_diagonal_and_trace() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        for i in 0..b.dim() {
            assert_eq!(b.entries()[(i, i)], 1.0);
        }
        let spec = spectrum_dense(&b, false).unwrap();
        let sum: f64 = spec.eigenvalues().iter().sum();
        assert_abs_diff_eq!(sum, geom.len() as f64, epsilon = 1e-9);
    }

    #[test]
    fn dense_cap_enforced() {
        let (_, dir, band) = setup();
        let big = ArrayGeometry::new(128, 128, 1e-3, 1e-3).unwrap();
        assert!(matches!(
            correlation_matrix(&big, &dir, &band),
            Err(Error::DenseCapExceeded { n: 16384, cap: 4096 })
        ));
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let spec = spectrum_dense(&b, true).unwrap();
        let vectors = spec.eigenvectors().unwrap();
        for l in 0..3 {
            let v = vectors.column(l).clone_owned();
            let bv = b.apply(&v);
            let res = &bv - &v * Complex::new(spec.eigenvalues()[l], 0.0);
            assert_abs_diff_eq!(res.norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn carrier_independence_of_eigenvalues() {
        // same geometry in meters, same W, different carriers
        let dir = Direction::new(0.4, -0.2).unwrap();
        let geom = ArrayGeometry::new(6, 4, 2.1e-3, 1.7e-3).unwrap();
        let b1 = BandSpec::new(80e9, 3e9).unwrap();
        let b2 = BandSpec::new(212e9, 3e9).unwrap();
        let s1 = spectrum_dense(&correlation_matrix(&geom, &dir, &b1).unwrap(), false).unwrap();
        let s2 = spectrum_dense(&correlation_matrix(&geom, &dir, &b2).unwrap(), false).unwrap();
        for (a, b) in s1.eigenvalues().iter().zip(s2.eigenvalues()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn gram_matches_dense_spot() {
        let (geom, dir, band) = setup();
        let dense = spectrum_dense(&correlation_matrix(&geom, &dir, &band).unwrap(), false).unwrap();
        let gram = spectrum_gram(&geom, &dir, &band, 64).unwrap();
        for l in 0..5 {
            assert_relative_eq!(
                gram.eigenvalues()[l],
                dense.eigenvalues()[l],
                max_relative = 1e-9,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn gram_needs_two_nodes() {
        let (geom, dir, band) = setup();
        assert!(matches!(
            spectrum_gram(&geom, &dir, &band, 1),
            Err(Error::TooFewNodes { min: 2, got: 1 })
        ));
    }

    #[test]
    fn gram_broadside_single_eigenvalue() {
        let (geom, _, band) = setup();
        let spec = spectrum_gram(&geom, &Direction::broadside(), &band, 32).unwrap();
        assert_relative_eq!(spec.eigenvalues()[0], geom.len() as f64, max_relative = 1e-12);
        for &l in &spec.eigenvalues()[1..] {
            assert_abs_diff_eq!(l, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn gram_trace_is_n() {
        let (geom, dir, band) = setup();
        let spec = spectrum_gram(&geom, &dir, &band, 48).unwrap();
        let sum: f64 = spec.eigenvalues().iter().sum();
        assert_abs_diff_eq!(sum, geom.len() as f64, epsilon = 1e-9);
    }

    #[test]
    fn optimal_beamformer_gain_is_partial_sum() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let spec = spectrum_dense(&b, true).unwrap();
        for n_rf in [1usize, 2, 4, 8] {
            let w = optimal_analog_beamformer(&spec, n_rf).unwrap();
            let g = avg_gain(&w, &b).unwrap();
            assert_relative_eq!(g, spec.partial_sum(n_rf), max_relative = 1e-10);
        }
        // all-digital recovers N
        let w = optimal_analog_beamformer(&spec, geom.len()).unwrap();
        assert_relative_eq!(avg_gain(&w, &b).unwrap(), geom.len() as f64, max_relative = 1e-9);
    }

    #[test]
    fn optimal_beamformer_requires_vectors() {
        let (geom, dir, band) = setup();
        let spec = spectrum_gram(&geom, &dir, &band, 32).unwrap();
        assert!(matches!(
            optimal_analog_beamformer(&spec, 2),
            Err(Error::NotEnoughVectors { available: 0, .. })
        ));
    }

    #[test]
    fn broadside_single_chain_reaches_n() {
        let (geom, _, band) = setup();
        let dir = Direction::broadside();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let spec = spectrum_dense(&b, true).unwrap();
        let w = optimal_analog_beamformer(&spec, 1).unwrap();
        assert_relative_eq!(avg_gain(&w, &b).unwrap(), geom.len() as f64, max_relative = 1e-12);
    }

    #[test]
    fn avg_gain_invariant_under_column_scaling() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let spec = spectrum_dense(&b, true).unwrap();
        let w = optimal_analog_beamformer(&spec, 3).unwrap();
        let mut scaled = w.matrix().clone();
        for (j, s) in [(0usize, 2.5), (1, 0.3), (2, 7.0)] {
            let col = scaled.column(j) * Complex::new(s, 0.0);
            scaled.set_column(j, &col);
        }
        let ws = AnalogBeamformer::new(scaled).unwrap();
        assert_relative_eq!(
            avg_gain(&ws, &b).unwrap(),
            avg_gain(&w, &b).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn matched_filter_instantaneous_gain() {
        let (geom, dir, band) = setup();
        let f = 0.9e9;
        let sv = crate::channel::steering_vector(&geom, &dir, &band, f).unwrap();
        // single matched column: conj of the steering vector
        let col = DMatrix::from_fn(geom.len(), 1, |i, _| {
            sv.entries()[i].conj() / Complex::new((geom.len() as f64).sqrt(), 0.0)
        });
        let w = AnalogBeamformer::new(col).unwrap();
        let (g, w_d) = instantaneous_gain(&w, &sv).unwrap();
        assert_relative_eq!(g, geom.len() as f64, max_relative = 1e-12);
        // returned weights attain the gain at unit power
        let tx = w.matrix() * &w_d;
        assert_relative_eq!(tx.norm(), 1.0, max_relative = 1e-12);
        let resp = sv
            .channel()
            .iter()
            .zip(tx.iter())
            .fold(Complex::new(0.0, 0.0), |acc, (a, t)| acc + a.conj() * t);
        assert_relative_eq!(resp.norm_sqr(), g, max_relative = 1e-10);
    }

    #[test]
    fn rank_deficiency_detected() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let sv = crate::channel::steering_vector(&geom, &dir, &band, 0.0).unwrap();
        let mut m = DMatrix::<Complex<f64>>::zeros(geom.len(), 2);
        for i in 0..geom.len() {
            m[(i, 0)] = sv.entries()[i];
            m[(i, 1)] = sv.entries()[i]; // duplicate column
        }
        let w = AnalogBeamformer::new(m).unwrap();
        assert!(matches!(avg_gain(&w, &b), Err(Error::RankDeficient)));
        // more columns than rows rejected at construction
        assert!(AnalogBeamformer::new(DMatrix::<Complex<f64>>::zeros(2, 3)).is_err());
    }

    #[test]
    fn gain_profile_average_consistency() {
        let (geom, dir, band) = setup();
        let b = correlation_matrix(&geom, &dir, &band).unwrap();
        let spec = spectrum_dense(&b, true).unwrap();
        let w = optimal_analog_beamformer(&spec, 2).unwrap();
        let profile = gain_profile(&w, &geom, &dir, &band, 64).unwrap();
        assert_relative_eq!(profile.g_avg(), avg_gain(&w, &b).unwrap(), max_relative = 1e-9);
        let n = geom.len() as f64;
        for &g in profile.gains() {
            assert!(g >= 0.0 && g <= n * (1.0 + 1e-12));
        }
        assert!(profile.g_avg() <= n);
    }
}
