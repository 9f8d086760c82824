use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where a parameter search stood when it gave up. Carried inside
/// [`Error::Estimation`] so callers can inspect or report partial progress.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationFailure {
    pub reason: String,
    /// Last (fault_content, detection_rate) iterate, when one existed.
    pub last_iterate: Option<(f64, f64)>,
}

impl fmt::Display for EstimationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if let Some((a, b)) = self.last_iterate {
            write!(f, " (last iterate: fault_content={a}, detection_rate={b})")?;
        }
        Ok(())
    }
}

/// A rejected or malformed configuration entry, tied back to its key and,
/// when it came from a file, the line it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub key: String,
    pub line: Option<usize>,
    pub reason: String,
}

impl ConfigIssue {
    pub fn new(key: impl Into<String>, line: Option<usize>, reason: impl Into<String>) -> Self {
        Self { key: key.into(), line, reason: reason.into() }
    }
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "key `{}`", self.key)?;
        if let Some(line) = self.line {
            write!(f, " (line {line})")?;
        }
        write!(f, ": {}", self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameter estimation could not converge or had no admissible optimum.
    #[error("estimation error: {0}")]
    Estimation(EstimationFailure),

    /// A configuration or input file was rejected.
    #[error("configuration error: {0}")]
    Config(ConfigIssue),

    /// The underlying I/O failed (path included in the message).
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn estimation(reason: impl Into<String>, last_iterate: Option<(f64, f64)>) -> Self {
        Error::Estimation(EstimationFailure { reason: reason.into(), last_iterate })
    }

    pub fn config(key: impl Into<String>, line: Option<usize>, reason: impl Into<String>) -> Self {
        Error::Config(ConfigIssue::new(key, line, reason))
    }
}
