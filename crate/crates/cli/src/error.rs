use std::fmt;

/// Process exit codes. These are part of the command-line interface.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const UNPHYSICAL: u8 = 2;
    pub const MALFORMED: u8 = 3;
    pub const OUT_OF_RANGE: u8 = 4;
    pub const VERIFY_BREACH: u8 = 5;
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Unphysical { min_eigenvalue: f64 },
    Malformed(String),
    OutOfRange(String),
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Unphysical { .. } => exit::UNPHYSICAL,
            Self::Malformed(_) => exit::MALFORMED,
            Self::OutOfRange(_) => exit::OUT_OF_RANGE,
            Self::Failed(_) => exit::FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unphysical { min_eigenvalue } => write!(
                f,
                "unphysical covariance matrix: minimum eigenvalue of σ + iΩ/2 is {min_eigenvalue:.6e}"
            ),
            Self::Malformed(m) => write!(f, "malformed input: {m}"),
            Self::OutOfRange(m) => write!(f, "out of range: {m}"),
            Self::Failed(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<twomode::Error> for CliError {
    fn from(e: twomode::Error) -> Self {
        use twomode::Error as E;
        match e {
            E::Unphysical { min_eigenvalue } => Self::Unphysical { min_eigenvalue },
            E::Shape(_) => Self::Malformed(e.to_string()),
            E::OutOfRange(m) => Self::OutOfRange(m),
            E::CutoffTooSmall { .. } => Self::OutOfRange(e.to_string()),
            other => Self::Failed(other.to_string()),
        }
    }
}
