use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("Fock cutoff {cutoff} insufficient: {detail}")]
    CutoffTooSmall { cutoff: usize, detail: String },

    #[error("oracle mismatch at t = {t}: {field} differs by {delta:.3e}")]
    OracleMismatch { t: f64, field: String, delta: f64 },

    #[error(transparent)]
    Core(chargepair::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<chargepair::Error> for ScenarioError {
    fn from(e: chargepair::Error) -> Self {
        match e {
            chargepair::Error::CutoffTooSmall { cutoff, tail } => ScenarioError::CutoffTooSmall {
                cutoff,
                detail: format!("coherent tail mass {tail:.3e}"),
            },
            other => ScenarioError::Core(other),
        }
    }
}

impl ScenarioError {
    /// Process exit code for the `simulate` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) | ScenarioError::UnknownPreset(_) | ScenarioError::Core(_) => {
                2
            }
            ScenarioError::OracleMismatch { .. } => 3,
            ScenarioError::CutoffTooSmall { .. } => 4,
            ScenarioError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, ScenarioError>;
