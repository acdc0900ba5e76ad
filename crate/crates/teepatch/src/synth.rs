//! placeholder
use thiserror::Error;
#[derive(Debug, Error)]
pub enum SynthError {
    #[error("placeholder")]
    Todo,
}
