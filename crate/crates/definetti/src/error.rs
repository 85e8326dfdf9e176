use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] definetti_core::Error),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("oracle construction failed: {0}")]
    Oracle(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
