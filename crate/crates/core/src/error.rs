use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An amplitude pair with vanishing norm cannot represent a state.
    #[error("zero-norm amplitude pair cannot be normalized")]
    ZeroNorm,

    /// The field vector vanishes where a finite precession axis is required.
    #[error("field vector has zero norm")]
    ZeroField,

    /// A stationary-only operation received a time-varying field.
    #[error("operation requires a stationary field")]
    NonStationaryField,

    /// Integrator step too large relative to the field strength.
    #[error("integrator step {step} too coarse for field magnitude {max_field}")]
    StepTooCoarse { step: f64, max_field: f64 },

    /// Target state does not lie on the precession cone of the initial state.
    #[error("target not reachable by precession: axis-projection gap {gap:.3e}")]
    Unreachable { gap: f64 },

    /// The fidelity maximum over a full precession period stays below threshold.
    #[error("target never reached: best fidelity {best_fidelity} over one period")]
    NeverReached { best_fidelity: f64 },

    /// Sample grid too sparse for the requested reconstruction.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    /// Path length vanished although the endpoints are distinct.
    #[error("degenerate evolution: endpoints distinct but traversed length is zero")]
    DegenerateEvolution,

    /// Both |h0| and the field norm vanish.
    #[error("zero Hamiltonian has no spectral norm direction")]
    ZeroHamiltonian,

    /// State is an eigenstate of the field; the trajectory is a point and
    /// curvature is undefined.
    #[error("eigenstate singularity: energy-uncertainty denominator vanishes")]
    EigenstateSingularity,

    /// Time-varying curvature needs the field rate dh/dt.
    #[error("field rate dh/dt unavailable")]
    MissingFieldRate,

    /// Time averaging over an empty interval.
    #[error("zero-duration interval")]
    ZeroDuration,

    /// Accessible volume vanished; complexity is undefined for a motionless state.
    #[error("point trajectory: accessible volume is zero")]
    PointTrajectory,

    /// C is too close to one for the length scale to be finite.
    #[error("maximal complexity c = {c}; length scale diverges")]
    MaximalComplexity { c: f64 },

    /// Source and target Bloch vectors are collinear.
    #[error("degenerate pair: source and target Bloch vectors are collinear")]
    DegeneratePair,

    /// Invalid run configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Fixture name not recognized.
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    /// Stable short name of the error variant, for diagnostics and exit
    /// messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroNorm => "ZeroNorm",
            Error::ZeroField => "ZeroField",
            Error::NonStationaryField => "NonStationaryField",
            Error::StepTooCoarse { .. } => "StepTooCoarse",
            Error::Unreachable { .. } => "Unreachable",
            Error::NeverReached { .. } => "NeverReached",
            Error::GridTooCoarse(_) => "GridTooCoarse",
            Error::DegenerateEvolution => "DegenerateEvolution",
            Error::ZeroHamiltonian => "ZeroHamiltonian",
            Error::EigenstateSingularity => "EigenstateSingularity",
            Error::MissingFieldRate => "MissingFieldRate",
            Error::ZeroDuration => "ZeroDuration",
            Error::PointTrajectory => "PointTrajectory",
            Error::MaximalComplexity { .. } => "MaximalComplexity",
            Error::DegeneratePair => "DegeneratePair",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::UnknownFixture(_) => "UnknownFixture",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
