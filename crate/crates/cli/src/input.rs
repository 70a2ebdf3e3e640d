use std::path::Path;

use anyhow::{Context, Result};
use lefschetz_core::algebra::{AlgebraDescription, GradedAlgebra};
use sha2::{Digest, Sha256};

use crate::report::InputDigest;

/// Reads input files and records their digests.
#[derive(Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let hash = Sha256::digest(text.as_bytes());
        self.digests.push(InputDigest {
            path: path.display().to_string(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        });
        Ok(text)
    }

    pub fn description(&mut self, path: &Path) -> Result<AlgebraDescription> {
        let text = self.read(path)?;
        AlgebraDescription::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn algebra(&mut self, path: &Path) -> Result<GradedAlgebra> {
        let d = self.description(path)?;
        d.build().with_context(|| format!("building {}", path.display()))
    }
}
