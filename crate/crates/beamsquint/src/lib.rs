//! Beam-squint analysis for wideband hybrid antenna arrays.
//!
//! The library quantifies how much beamforming gain a frequency-flat analog
//! stage loses over a wide band (beam squint), and how many RF chains a
//! hybrid array needs to make the loss vanish. It covers:
//!
//! * array geometry, uv-coordinate steering and the channel dispersion
//!   factor `alpha = (W/f_c)(L u / lambda)` ([`geometry`]);
//! * line-of-sight wideband steering vectors with closed-form inner
//!   products, and the link budget ([`channel`]);
//! * the bandwidth-averaged correlation matrix, its eigenvalue spectrum
//!   through a dense path and a Gram path that never materializes N x N
//!   matrices, and gain formulas for arbitrary analog stages ([`spectra`]);
//! * spectra of the continuous sinc-kernel operators behind the dispersion
//!   law, eigenvalue polarization counts, the planar-to-linear reduction and
//!   its sandwich bounds ([`continuum`]);
//! * beamspace, hybridly-connected and partially-connected architectures
//!   plus the separable and multiantenna gain bounds ([`architectures`]);
//! * classical analog squint diagnostics: Dirichlet gain, MRT gain profile
//!   and the 3-dB dispersion threshold ([`squint`]).
//!
//! All numerics are generic over the scalar type through [`Real`]; the crate
//! root exports `f64` aliases for the common types.

pub mod architectures;
pub mod channel;
mod error;
pub mod continuum;
pub mod geometry;
pub mod quad;
mod scalar;
pub mod special;
pub mod spectra;
pub mod squint;

pub use error::{Error, Result};
pub use scalar::{real, speed_of_light, Real};

/// `f64` aliases of the core domain types.
pub type ArrayGeometry = geometry::ArrayGeometry<f64>;
pub type Direction = geometry::Direction<f64>;
pub type BandSpec = geometry::BandSpec<f64>;
pub type SquintFactor = geometry::SquintFactor<f64>;
pub type ProjectedAperture = geometry::ProjectedAperture<f64>;
pub type SteeringVector = channel::SteeringVector<f64>;
pub type LinkBudget = channel::LinkBudget<f64>;
pub type CorrelationMatrix = spectra::CorrelationMatrix<f64>;
pub type SpectrumResult = spectra::SpectrumResult<f64>;
pub type AnalogBeamformer = spectra::AnalogBeamformer<f64>;
pub type GainProfile = spectra::GainProfile<f64>;
pub type KernelSpectrum = continuum::KernelSpectrum<f64>;
pub type WeightProfile = continuum::WeightProfile<f64>;
pub type MultiGainBounds = architectures::MultiGainBounds<f64>;

pub use architectures::HybridPartition;
pub use spectra::Architecture;
