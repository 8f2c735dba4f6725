use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which construction a command evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Pole series over the dyadic lattice.
    #[value(alias = "thm1")]
    #[serde(alias = "thm1")]
    Lattice,
    /// Single-pole block series.
    Block,
    /// Shifted blocks on the line.
    #[value(alias = "thm2")]
    #[serde(alias = "thm2")]
    Line,
    /// Radial blocks in R^p.
    #[value(alias = "masterthm")]
    #[serde(alias = "masterthm")]
    Radial,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

/// Fully resolved settings of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Weight sequence, e.g. `gevrey:1`.
    pub family: String,
    pub construction: Option<Construction>,
    pub precision_bits: u32,
    pub tolerance: f64,
    /// Fixed number of groups, instead of choosing it from the tolerance.
    pub terms: Option<usize>,
    /// Evaluation points as exact strings (`p/q`, decimals; comma lists in R^p).
    pub points: Vec<String>,
    pub orders: Vec<usize>,
    /// Multi-indices as comma lists.
    pub multi_indices: Vec<String>,
    pub dimension: usize,
    pub output: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: "gevrey:1".into(),
            construction: None,
            precision_bits: crate::numerics::DEFAULT_PREC,
            tolerance: crate::assemblies::DEFAULT_ASSEMBLY_TOL,
            terms: None,
            points: Vec::new(),
            orders: Vec::new(),
            multi_indices: Vec::new(),
            dimension: 2,
            output: None,
            cache: None,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(64..=crate::numerics::MAX_PREC).contains(&self.precision_bits) {
            return Err(Error::InvalidArgument(format!(
                "precision must be in 64..={} bits",
                crate::numerics::MAX_PREC
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(Error::InvalidArgument("tolerance must lie in (0, 1)".into()));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(())
    }
}
