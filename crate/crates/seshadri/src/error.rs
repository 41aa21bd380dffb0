use seshadri_core::fan::FanError;
use seshadri_core::gorenstein::GorensteinError;
use seshadri_core::sl3::Sl3Error;
use seshadri_core::toric::ToricError;
use seshadri_core::valuation::ValuationError;

/// Failures of a command. Input errors exit with 2, domain errors with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

macro_rules! domain {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain!(
    FanError,
    ValuationError,
    Sl3Error,
    ToricError,
    GorensteinError
);
