use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Per-degree basis labels; the dimension in degree `d` is the number of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    degrees: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the basis in `degree`; labels must be unique.
    pub fn set(&mut self, degree: i64, labels: Vec<String>) -> Result<()> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return input(format!("duplicate basis label {l} in degree {degree}"));
            }
        }
        if labels.is_empty() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, labels);
        }
        Ok(())
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.degrees.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Dimensions for every degree in `range`, zeros included.
    pub fn dims(&self, range: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        range.map(|d| self.dim(d)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(Vec::len).sum()
    }

    pub fn nonzero_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }
}
