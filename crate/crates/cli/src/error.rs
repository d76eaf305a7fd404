//! Process-level errors with their exit codes. Anything wrong with the
//! inputs (unreadable files, malformed JSON, domain violations) exits 2;
//! a numeric failure inside an otherwise valid computation exits 3. The
//! error also serializes to a small JSON object for stderr so scripts can
//! tell the cases apart without parsing prose.

use std::fmt;

/// What went wrong, bucketed by whose fault it is.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or schema-violating configuration.
    Config(String),
    /// Valid file, but the model or arguments are outside the domain.
    Domain(standby_core::Error),
    /// The computation itself failed (quadrature or root bracketing).
    Numeric(standby_core::Error),
    /// Filesystem trouble around inputs or outputs.
    Io(String),
}

impl CliError {
    pub fn from_core(err: standby_core::Error) -> Self {
        if err.is_domain() {
            CliError::Domain(err)
        } else {
            CliError::Numeric(err)
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Domain(_) => "domain",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }

    /// Machine-readable stderr payload.
    pub fn to_json(&self) -> String {
        let message = self.to_string();
        serde_json::json!({ "error": { "kind": self.kind(), "message": message } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Domain(e) | CliError::Numeric(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}
