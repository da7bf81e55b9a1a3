//! In-memory labeled datasets. Presentation order is part of the value:
//! construction is order-sensitive, so samples are always kept and
//! returned in the order they were loaded.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{ClassLabel, FeatureVector};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    dimension: usize,
    samples: Vec<(FeatureVector, ClassLabel)>,
}

impl LabeledDataset {
    pub fn new(dimension: usize) -> Self {
        LabeledDataset {
            dimension,
            samples: Vec::new(),
        }
    }

    pub fn from_samples(
        dimension: usize,
        samples: Vec<(FeatureVector, ClassLabel)>,
    ) -> Result<Self> {
        for (x, _) in &samples {
            if x.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: x.len(),
                });
            }
        }
        Ok(LabeledDataset { dimension, samples })
    }

    pub fn push(&mut self, x: FeatureVector, label: ClassLabel) -> Result<()> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        self.samples.push((x, label));
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[(FeatureVector, ClassLabel)] {
        &self.samples
    }

    /// Distinct labels in first-appearance order.
    pub fn distinct_labels(&self) -> Vec<ClassLabel> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (_, label) in &self.samples {
            if seen.insert(label.clone()) {
                out.push(label.clone());
            }
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.samples
            .iter()
            .map(|(_, l)| l)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Samples whose label is in `labels`, in original relative order.
    pub fn subset_by_labels(&self, labels: &BTreeSet<ClassLabel>) -> LabeledDataset {
        LabeledDataset {
            dimension: self.dimension,
            samples: self
                .samples
                .iter()
                .filter(|(_, l)| labels.contains(l))
                .cloned()
                .collect(),
        }
    }
}
