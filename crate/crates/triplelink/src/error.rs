use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// Bad flags or arguments.
    Usage(String),
    Io(std::io::Error),
    /// Malformed input file.
    Format(String),
    Core(triplelink_core::Error),
}

impl Error {
    /// 2 for anything the user can fix in the input, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        use triplelink_core::Error as E;
        match self {
            Error::Usage(_) | Error::Io(_) | Error::Format(_) => 2,
            Error::Core(e) => match e {
                E::NonIntegerDegree { .. }
                | E::NonIntegerResult { .. }
                | E::WindingResidual { .. }
                | E::NoConvergence
                | E::ResolutionFailure
                | E::NearPole
                | E::NearAntipode
                | E::CoincidentPoints
                | E::DegeneratePlane => 3,
                _ => 2,
            },
        }
    }

    /// A short suggestion shown under the message, if there is one.
    pub fn hint(&self) -> Option<&'static str> {
        use triplelink_core::Error as E;
        let Error::Core(e) = self else { return None };
        Some(match e {
            E::NonzeroLinking { .. } => "the triple linking number is an integer only when all pairwise linking numbers vanish",
            E::NonIntegerDegree { .. } => "the grid does not resolve the link; raise --grid",
            E::AliasBound { .. } => "choose --nmax at most grid/2 - 1",
            E::GridTooLarge(_) => "the double-sum formula is quadratic in grid points; use --grid 16 or less",
            E::NotGeneric(_) | E::NotOpenBook => "the bicycle pipeline needs Z on the binding and Morse page angles on X and Y",
            E::ResolutionFailure => "icycles come closer than the finest tracing grid can separate",
            E::InvalidDiagram(_) => "diagrams must be crossing-free with embedded curves",
            E::NonGenericPath => "choose a basepoint away from the diagram",
            _ => return None,
        })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(m) => write!(f, "usage: {m}"),
            Error::Io(e) => write!(f, "i/o: {e}"),
            Error::Format(m) => write!(f, "bad input: {m}"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Core(e) => Some(e),
            _ => None,
        }
    }
}

impl From<triplelink_core::Error> for Error {
    fn from(e: triplelink_core::Error) -> Self {
        Error::Core(e)
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}
