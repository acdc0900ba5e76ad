//! placeholder
use thiserror::Error;
#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("placeholder")]
    Todo,
}
