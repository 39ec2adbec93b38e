//! JSON pool configuration documents.
//!
//! ```json
//! {"reserves": [4, 4], "weights": [0.5, 0.5], "mean": {"type": "power", "p": 0.5}}
//! ```
//!
//! `mean` is one of `{"type": "power", "p": ..}`, `{"type": "geometric"}`,
//! `{"type": "fmean", "f": "log"}` or `{"type": "fmean", "f": "power", "fp": ..}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{FKind, MeanSpec, Weights};
use crate::pool::Pool;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolConfigDoc {
    pub reserves: Vec<f64>,
    pub weights: Vec<f64>,
    pub mean: MeanDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeanDoc {
    Power {
        p: f64,
    },
    Geometric,
    Fmean {
        f: FDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fp: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FDoc {
    Power,
    Log,
}

impl MeanDoc {
    pub fn to_spec(self) -> Result<MeanSpec> {
        Ok(match self {
            MeanDoc::Power { p } => MeanSpec::Power(p),
            MeanDoc::Geometric => MeanSpec::Geometric,
            MeanDoc::Fmean { f: FDoc::Log, fp: None } => MeanSpec::FMean(FKind::Log),
            MeanDoc::Fmean { f: FDoc::Log, fp: Some(_) } => {
                return Err(Error::Config("\"fp\" is only meaningful with \"f\": \"power\"".into()))
            }
            MeanDoc::Fmean { f: FDoc::Power, fp: Some(p) } => MeanSpec::FMean(FKind::Power(p)),
            MeanDoc::Fmean { f: FDoc::Power, fp: None } => {
                return Err(Error::Config("\"f\": \"power\" requires an \"fp\" exponent".into()))
            }
        })
    }

    pub fn from_spec(spec: MeanSpec) -> Self {
        match spec {
            MeanSpec::Power(p) => MeanDoc::Power { p },
            MeanSpec::Geometric => MeanDoc::Geometric,
            MeanSpec::FMean(FKind::Log) => MeanDoc::Fmean { f: FDoc::Log, fp: None },
            MeanSpec::FMean(FKind::Power(p)) => MeanDoc::Fmean {
                f: FDoc::Power,
                fp: Some(p),
            },
        }
    }
}

impl PoolConfigDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_pool(&self) -> Result<Pool> {
        let weights = Weights::new(self.weights.clone())?;
        Pool::new(self.reserves.clone(), weights, self.mean.to_spec()?)
    }

    pub fn from_pool(pool: &Pool) -> Self {
        PoolConfigDoc {
            reserves: pool.reserves().to_vec(),
            weights: pool.weights().as_slice().to_vec(),
            mean: MeanDoc::from_spec(pool.spec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config documents always serialize")
    }
}
