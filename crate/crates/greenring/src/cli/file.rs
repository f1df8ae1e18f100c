//! JSON persistence for based rings.
//!
//! Schema (`format_version: 1`): labels, unit index, optional involution
//! permutation, and the nonzero structure constants as `[i, j, k, N]` rows
//! sorted by `(i, j, k)`. Serialization is byte-stable for a fixed ring.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::based::BasedRing;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("constant entry ({i},{j},{k}) out of range for {rank} labels")]
    IndexOutOfRange { i: usize, j: usize, k: usize, rank: usize },
    #[error("duplicate constant entry ({i},{j},{k})")]
    Duplicate { i: usize, j: usize, k: usize },
    #[error("constant entry ({i},{j},{k}) has N = 0")]
    ZeroConstant { i: usize, j: usize, k: usize },
    #[error("unit index {unit} out of range for {rank} labels")]
    UnitOutOfRange { unit: usize, rank: usize },
    #[error("involution length {len} does not match {rank} labels")]
    InvolutionLength { len: usize, rank: usize },
    #[error("involution entry {value} at {index} out of range for {rank} labels")]
    InvolutionRange { index: usize, value: usize, rank: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasedRingFile {
    pub format_version: u32,
    pub labels: Vec<String>,
    pub unit: usize,
    pub involution: Option<Vec<usize>>,
    pub constants: Vec<(usize, usize, usize, i64)>,
}

impl BasedRingFile {
    pub fn from_ring(ring: &BasedRing) -> Self {
        BasedRingFile {
            format_version: FORMAT_VERSION,
            labels: ring.labels().to_vec(),
            unit: ring.unit_index(),
            involution: ring.involution().map(|s| s.to_vec()),
            constants: ring.constants(),
        }
    }

    /// Schema validation: version, index ranges, nonzero constants, no
    /// duplicate cells, involution shape.
    pub fn validate(&self) -> Result<(), FileError> {
        if self.format_version != FORMAT_VERSION {
            return Err(FileError::Version(self.format_version));
        }
        let rank = self.labels.len();
        if self.unit >= rank {
            return Err(FileError::UnitOutOfRange { unit: self.unit, rank });
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, k, n) in &self.constants {
            if i >= rank || j >= rank || k >= rank {
                return Err(FileError::IndexOutOfRange { i, j, k, rank });
            }
            if n == 0 {
                return Err(FileError::ZeroConstant { i, j, k });
            }
            if !seen.insert((i, j, k)) {
                return Err(FileError::Duplicate { i, j, k });
            }
        }
        if let Some(sigma) = &self.involution {
            if sigma.len() != rank {
                return Err(FileError::InvolutionLength { len: sigma.len(), rank });
            }
            for (index, &value) in sigma.iter().enumerate() {
                if value >= rank {
                    return Err(FileError::InvolutionRange { index, value, rank });
                }
            }
        }
        Ok(())
    }

    /// Assembles a ring without mathematical validation (see
    /// [`BasedRing::violations`] for that); the schema is validated here.
    pub fn to_ring(&self) -> Result<BasedRing, FileError> {
        self.validate()?;
        let mut constants: BTreeMap<(usize, usize), Vec<(usize, i64)>> = BTreeMap::new();
        for &(i, j, k, n) in &self.constants {
            constants.entry((i, j)).or_default().push((k, n));
        }
        Ok(BasedRing::from_parts_unchecked(
            self.labels.clone(),
            self.unit,
            constants,
            self.involution.clone(),
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::{RingKind, RingSpec};

    #[test]
    fn round_trip_is_identity_and_byte_stable() {
        let spec = RingSpec::new(RingKind::Stable, 4, 1).unwrap();
        let mut ring = BasedRing::from_presented(&spec).unwrap();
        ring.detect_involution().unwrap();
        let file = BasedRingFile::from_ring(&ring);
        let json = file.to_json();
        let parsed: BasedRingFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_ring().unwrap();
        assert_eq!(back, ring);
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn validation_rejects_bad_files() {
        let spec = RingSpec::new(RingKind::Stable, 3, 1).unwrap();
        let ring = BasedRing::from_presented(&spec).unwrap();
        let good = BasedRingFile::from_ring(&ring);
        good.validate().unwrap();

        let mut bad = good.clone();
        bad.format_version = 2;
        assert!(matches!(bad.validate(), Err(FileError::Version(2))));

        let mut bad = good.clone();
        bad.constants.push((0, 0, 99, 1));
        assert!(matches!(bad.validate(), Err(FileError::IndexOutOfRange { .. })));

        let mut bad = good.clone();
        let first = bad.constants[0];
        bad.constants.push(first);
        assert!(matches!(bad.validate(), Err(FileError::Duplicate { .. })));

        let mut bad = good.clone();
        bad.constants.push((1, 1, 1, 0));
        assert!(matches!(bad.validate(), Err(FileError::ZeroConstant { .. })));

        let mut bad = good;
        bad.involution = Some(vec![0; 2]);
        assert!(matches!(bad.validate(), Err(FileError::InvolutionLength { .. })));
    }
}
