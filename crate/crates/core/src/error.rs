use thiserror::Error;

use crate::datamodel::DataModelError;
use crate::ingest::IngestError;
use crate::mapcode::MapCodeError;
use crate::mining::MiningError;
use crate::ratio::FractionError;
use crate::rules::RuleError;

/// Any error raised by the mining pipeline, tagged with the stage that failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("datamodel: {0}")]
    DataModel(#[from] DataModelError),
    #[error("ingest: {0}")]
    Ingest(#[from] IngestError),
    #[error("mapcode: {0}")]
    MapCode(#[from] MapCodeError),
    #[error("mining: {0}")]
    Mining(#[from] MiningError),
    #[error("rules: {0}")]
    Rules(#[from] RuleError),
    #[error("threshold: {0}")]
    Fraction(#[from] FractionError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
