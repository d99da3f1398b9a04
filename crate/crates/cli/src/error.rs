use std::fmt;
use std::process::ExitCode;

use amvs_core::pddl::PddlError;
use amvs_core::Error;

pub const SYNTAX: u8 = 2;
pub const SEMANTIC: u8 = 3;
pub const COLLAPSE: u8 = 4;
pub const IO: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn code_of(e: &Error) -> u8 {
    match e.root() {
        Error::UpdateAfterCollapse { .. }
        | Error::NegativeWithEmptyLower { .. }
        | Error::CollapsedSpace { .. } => COLLAPSE,
        Error::Snapshot(_) => SYNTAX,
        _ => SEMANTIC,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::new(code_of(&e), e.to_string())
    }
}

impl From<PddlError> for CliError {
    fn from(e: PddlError) -> Self {
        let code = match &e {
            PddlError::Syntax { .. }
            | PddlError::UnsupportedFeature(_)
            | PddlError::MalformedRecord { .. } => SYNTAX,
            PddlError::Type(_) | PddlError::SchemaMismatch(_) => SEMANTIC,
            PddlError::Io(_) => IO,
            PddlError::Model(inner) => code_of(inner),
        };
        Self::new(code, e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
