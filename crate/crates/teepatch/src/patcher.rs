//! placeholder
use thiserror::Error;
#[derive(Debug, Error)]
pub enum PatchError {
    #[error("placeholder")]
    Todo,
}
