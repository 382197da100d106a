use std::fmt;

/// Errors reported by the library.
///
/// Input validation failures and numerical failures are kept apart so that
/// batch front-ends can map them to distinct exit codes; see
/// [`Error::is_numerical`].
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Array dimensions or spacings out of range.
    InvalidGeometry(String),
    /// Direction outside the unit disk in uv-coordinates.
    InvalidDirection { norm: f64 },
    /// Band violates 0 < W < 2 f_c.
    InvalidBand { f_c: f64, w: f64 },
    /// Nonpositive link-budget entry.
    InvalidLinkBudget(&'static str),
    /// Relative frequency outside [-W/2, W/2].
    OutOfBand { f_rel: f64, half_width: f64 },
    /// Dense matrix would exceed the element cap; use the Gram path.
    DenseCapExceeded { n: usize, cap: usize },
    /// Eigensolver did not converge.
    EigenFailed,
    /// Analog beamformer does not have full column rank.
    RankDeficient,
    /// Operation undefined at exact broadside (zero squint factor).
    Broadside,
    /// Scalar parameter outside its admissible range.
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    /// Too few quadrature nodes.
    TooFewNodes { min: usize, got: usize },
    /// Operation requires a linear array (n_y = 1).
    NotUla,
    /// Operation requires a one-dimensional kernel spectrum.
    NotOneDimensional,
    /// Subarray grid does not divide the array.
    BadPartition {
        m_x: usize,
        m_y: usize,
        n_x: usize,
        n_y: usize,
    },
    /// Beamformer shape or zero pattern does not conform to the partition.
    NonConforming(String),
    /// Requested more columns than the spectrum provides.
    NotEnoughVectors { requested: usize, available: usize },
    /// Delay-line weights need exactly one chain per subarray.
    NotSingleChain { chains_per_subarray: usize },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::EigenFailed | Error::RankDeficient)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGeometry(msg) => write!(f, "invalid array geometry: {msg}"),
            Error::InvalidDirection { norm } => {
                write!(f, "direction outside the unit disk: |u| = {norm}")
            }
            Error::InvalidBand { f_c, w } => {
                write!(f, "band requires 0 < W < 2 f_c, got f_c = {f_c} Hz, W = {w} Hz")
            }
            Error::InvalidLinkBudget(field) => {
                write!(f, "link budget field `{field}` must be positive")
            }
            Error::OutOfBand { f_rel, half_width } => write!(
                f,
                "relative frequency {f_rel} Hz outside [-{half_width}, {half_width}] Hz"
            ),
            Error::DenseCapExceeded { n, cap } => write!(
                f,
                "correlation matrix of {n} elements exceeds the dense cap {cap}; \
                 use the Gram path (spectrum_gram)"
            ),
            Error::EigenFailed => write!(f, "eigendecomposition did not converge"),
            Error::RankDeficient => write!(f, "analog beamformer is rank deficient"),
            Error::Broadside => {
                write!(f, "operation undefined at exact broadside (zero squint factor)")
            }
            Error::OutOfRange { name, value, range } => {
                write!(f, "parameter `{name}` = {value} outside {range}")
            }
            Error::TooFewNodes { min, got } => {
                write!(f, "need at least {min} quadrature nodes, got {got}")
            }
            Error::NotUla => write!(f, "operation requires a linear array (n_y = 1)"),
            Error::NotOneDimensional => {
                write!(f, "operation requires a one-dimensional kernel spectrum")
            }
            Error::BadPartition { m_x, m_y, n_x, n_y } => write!(
                f,
                "subarray grid {m_x}x{m_y} does not divide the {n_x}x{n_y} array"
            ),
            Error::NonConforming(msg) => {
                write!(f, "beamformer does not conform to the partition: {msg}")
            }
            Error::NotEnoughVectors { requested, available } => write!(
                f,
                "requested {requested} beamformer columns but only {available} eigenvectors available"
            ),
            Error::NotSingleChain { chains_per_subarray } => write!(
                f,
                "delay-line weights need one chain per subarray, partition has {chains_per_subarray}"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Library-wide result type.
pub type Result<V> = std::result::Result<V, Error>;
