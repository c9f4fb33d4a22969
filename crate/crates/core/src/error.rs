use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} exceeds cap {limit} (needed {needed})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        needed: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("boundary width mismatch: {0} vs {1}")]
    WidthMismatch(u32, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, limit: usize, needed: usize) -> Result<()> {
    if needed > limit {
        Err(Error::CapExceeded {
            what,
            limit,
            needed,
        })
    } else {
        Ok(())
    }
}
