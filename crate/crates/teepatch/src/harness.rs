//! placeholder
use thiserror::Error;
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("placeholder")]
    Todo,
}
