use wrlattice::Error;

pub const EMPTY: u8 = 2;
pub const EXPECTATION: u8 = 3;
pub const CONSTRUCTION: u8 = 4;
pub const USAGE: u8 = 64;
pub const DOMAIN: u8 = 65;
pub const INPUT: u8 = 66;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(USAGE, message)
    }

    /// Any library error raised while reading user files.
    pub fn input(e: Error) -> Self {
        Self::new(INPUT, e.to_string())
    }

    /// Errors from building a code: file problems stay input errors.
    pub fn construction(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse { .. } => Self::input(e),
            _ => Self::new(CONSTRUCTION, e.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Parse { .. } => INPUT,
            Error::InvalidConfig(_) | Error::GridMismatch => USAGE,
            Error::BudgetExhausted { .. } => EMPTY,
            Error::EmptyCoset { .. } | Error::CodebookTooLarge { .. } | Error::InvalidSignaling(_) => CONSTRUCTION,
            _ => DOMAIN,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(INPUT, e.to_string())
    }
}
