//! Experiment parameters.

use pldg_core::Variant;
use serde::{Deserialize, Serialize};

use crate::error::{PldgError, Result};

/// How points are placed in the square region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Uniform,
    /// Gaussian blobs around uniformly placed cluster centers.
    Clustered,
}

/// Which protocol variants a trial runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum VariantChoice {
    #[serde(rename = "PLDG")]
    #[value(name = "pldg", alias = "PLDG")]
    Pldg,
    #[serde(rename = "PLDG'")]
    #[value(name = "pldg-prime", alias = "PLDG'")]
    PldgPrime,
    #[serde(rename = "both")]
    #[value(name = "both")]
    Both,
}

impl VariantChoice {
    pub fn variants(self) -> &'static [Variant] {
        match self {
            VariantChoice::Pldg => &[Variant::Pldg],
            VariantChoice::PldgPrime => &[Variant::PldgPrime],
            VariantChoice::Both => &[Variant::Pldg, Variant::PldgPrime],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Points per instance.
    pub n: usize,
    /// Side length of the square region, in radio ranges.
    pub side: f64,
    pub generator: GeneratorKind,
    pub variant: VariantChoice,
    pub trials: usize,
    /// Multiple of the metric tolerance that generated instances keep clear of degeneracies.
    pub clearance: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            n: 50,
            side: 3.0,
            generator: GeneratorKind::Uniform,
            variant: VariantChoice::Both,
            trials: 1,
            clearance: 10.0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(PldgError::Config(msg.to_owned()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            return bad("side must be positive");
        }
        if self.trials < 1 {
            return bad("trials must be at least 1");
        }
        if !(self.clearance.is_finite() && self.clearance >= 1.0) {
            return bad("clearance must be at least 1");
        }
        Ok(())
    }

    /// Seed of trial `t`: consecutive trials use consecutive seeds.
    pub fn trial_seed(&self, t: usize) -> u64 {
        self.seed.wrapping_add(t as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let ok = ExperimentConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            ExperimentConfig { n: 1, ..ok.clone() },
            ExperimentConfig {
                side: 0.0,
                ..ok.clone()
            },
            ExperimentConfig {
                side: f64::NAN,
                ..ok.clone()
            },
            ExperimentConfig {
                trials: 0,
                ..ok.clone()
            },
            ExperimentConfig {
                clearance: 0.5,
                ..ok.clone()
            },
        ] {
            assert!(
                matches!(bad.validate(), Err(PldgError::Config(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn variant_names_match_the_protocol() {
        let s = serde_json::to_string(&VariantChoice::PldgPrime).unwrap();
        assert_eq!(s, "\"PLDG'\"");
        assert_eq!(Variant::PldgPrime.name(), "PLDG'");
        assert_eq!(VariantChoice::Both.variants().len(), 2);
    }
}
