use adastego::baselines::BaselineError;
use adastego::steganalysis::AnalysisError;
use adastego::{CodecError, SegmentError, StatsError};
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Capacity,
    Corrupt,
    Format,
    Args,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Capacity => 2,
            Kind::Corrupt => 3,
            Kind::Format => 4,
            Kind::Args => 5,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Kind::Capacity => "capacity",
            Kind::Corrupt => "corrupt",
            Kind::Format => "format",
            Kind::Args => "arguments",
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub message: String,
}

impl Failure {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn args(message: impl Into<String>) -> Self {
        Self::new(Kind::Args, message)
    }

    pub fn format(message: impl Into<String>) -> Self {
        Self::new(Kind::Format, message)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::format(format!("{}: {e}", path.display()))
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("adastego: {}", self.message);
        let json = serde_json::json!({"error": self.kind.label(), "message": self.message});
        println!("{json}");
        ExitCode::from(self.kind.code())
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        let kind = match &e {
            CodecError::CapacityExceeded { .. } => Kind::Capacity,
            CodecError::CorruptStego { .. } | CodecError::HeaderOverrun { .. } => Kind::Corrupt,
            CodecError::DimensionMismatch { .. } => Kind::Format,
            CodecError::Segment(_) => Kind::Args,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<SegmentError> for Failure {
    fn from(e: SegmentError) -> Self {
        let kind = match e {
            SegmentError::InvalidParams(_) => Kind::Args,
            SegmentError::ImageTooSmall { .. } => Kind::Format,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<StatsError> for Failure {
    fn from(e: StatsError) -> Self {
        let kind = match e {
            StatsError::DimensionMismatch(..) => Kind::Format,
            _ => Kind::Args,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<BaselineError> for Failure {
    fn from(e: BaselineError) -> Self {
        let kind = match e {
            BaselineError::CapacityExceeded { .. } => Kind::Capacity,
            BaselineError::ZeroKey => Kind::Args,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let kind = match &e {
            AnalysisError::Stats(StatsError::DimensionMismatch(..)) => Kind::Format,
            AnalysisError::TooNarrow { .. } | AnalysisError::NotEnoughData(_) => Kind::Format,
            _ => Kind::Args,
        };
        Self::new(kind, e.to_string())
    }
}
