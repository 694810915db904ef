use thiserror::Error;

/// Exit code for a spec that cannot be read, parsed or validated.
pub const EXIT_SPEC: i32 = 2;
/// Exit code for an engine planning error.
pub const EXIT_PLAN: i32 = 3;
/// Exit code for a verification violation.
pub const EXIT_VIOLATION: i32 = 4;
/// Exit code for failures writing outputs.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError: {}{message}", location(*.line, *.column))]
    Parse {
        line: Option<u64>,
        column: Option<u64>,
        message: String,
    },
    #[error("ValidationError: {0}")]
    Validation(String),
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("IoError: {0}")]
    Unreadable(String),
    #[error("{0}")]
    Plan(aquanim::Error),
    #[error("IoError: {0}")]
    Output(String),
}

fn location(line: Option<u64>, column: Option<u64>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("line {l}, column {c}: "),
        (Some(l), None) => format!("line {l}: "),
        _ => String::new(),
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Validation(_) => "ValidationError",
            CliError::InvalidSpec(_) => "InvalidSpec",
            CliError::Unreadable(_) | CliError::Output(_) => "IoError",
            CliError::Plan(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Plan(_) => EXIT_PLAN,
            CliError::Output(_) => EXIT_IO,
            _ => EXIT_SPEC,
        }
    }

    /// Text without the leading code.
    pub fn detail(&self) -> String {
        let full = self.to_string();
        let prefix = format!("{}: ", self.code());
        full.strip_prefix(&prefix).map(str::to_string).unwrap_or(full)
    }

    pub(crate) fn from_json(e: &serde_json::Error) -> CliError {
        CliError::Parse {
            line: Some(e.line() as u64),
            column: Some(e.column() as u64),
            message: strip_json_location(&e.to_string()),
        }
    }
}

fn strip_json_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl From<aquanim::Error> for CliError {
    fn from(e: aquanim::Error) -> Self {
        CliError::Plan(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_and_exit_codes() {
        let e = CliError::Parse {
            line: Some(3),
            column: Some(7),
            message: "bad".into(),
        };
        assert_eq!(e.to_string(), "ParseError: line 3, column 7: bad");
        assert_eq!(e.exit_code(), 2);
        assert_eq!(e.detail(), "line 3, column 7: bad");
        let p = CliError::from(aquanim::Error::EmptySelection);
        assert_eq!(p.code(), "EmptySelection");
        assert_eq!(p.exit_code(), 3);
        assert_eq!(p.detail(), "at least one bin must be selected");
        assert_eq!(CliError::Output("x".into()).exit_code(), 1);
    }
}
