use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive integer labels, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Labeling {
    values: Vec<u64>,
    max_label: u64,
}

impl Labeling {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if let Some(vertex) = values.iter().position(|&x| x == 0) {
            return Err(Error::ZeroLabel { vertex });
        }
        let max_label = values.iter().copied().max().unwrap_or(0);
        Ok(Self { values, max_label })
    }

    pub fn all_ones(n: usize) -> Self {
        Self {
            values: vec![1; n],
            max_label: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u64> {
        self.values
    }

    pub fn max_label(&self) -> u64 {
        self.max_label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u64 {
        self.values[v]
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.values.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u64>> for Labeling {
    type Error = Error;

    fn try_from(values: Vec<u64>) -> Result<Self> {
        Labeling::new(values)
    }
}

impl From<Labeling> for Vec<u64> {
    fn from(l: Labeling) -> Self {
        l.values
    }
}
