use nci_core::bridge::BridgeError;
use nci_core::constructive::ConstructError;
use nci_core::expr::{DotError, ParseError};
use nci_core::json::FormatError;
use nci_core::lattice::LatticeError;
use nci_core::mobius::MobiusError;
use nci_core::search::SearchError;
use nci_core::subset::SubsetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags or flag combinations.
    Usage(String),
    /// A failure reported by the library, under its error name.
    Domain { name: &'static str, message: String },
}

impl CliError {
    pub fn domain(name: &'static str, message: impl Into<String>) -> CliError {
        CliError::Domain {
            name,
            message: message.into(),
        }
    }
}

macro_rules! named {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::domain(e.name(), e.to_string())
            }
        })*
    };
}

named!(
    BridgeError,
    ConstructError,
    DotError,
    FormatError,
    LatticeError,
    MobiusError,
    SearchError,
    SubsetError
);

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::domain("ParseError", e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::domain("IoError", e.to_string())
    }
}
