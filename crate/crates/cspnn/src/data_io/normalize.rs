//! Per-feature min-max normalization to `[-1, 1]`, fit on the training
//! split only. Test data is transformed with the training parameters and
//! deliberately not clamped, so out-of-range test values extrapolate
//! linearly. A feature that is constant in training maps to 0 everywhere.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::model::FeatureVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    ranges: Vec<(f64, f64)>,
}

impl NormalizationParams {
    /// Per-feature `(min, max)` pairs in feature order.
    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    pub fn from_ranges(ranges: Vec<(f64, f64)>) -> Result<Self> {
        for (i, (lo, hi)) in ranges.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return Err(Error::Config(format!("invalid range for feature {i}")));
            }
        }
        Ok(NormalizationParams { ranges })
    }

    pub fn dimension(&self) -> usize {
        self.ranges.len()
    }

    fn map_value(&self, feature: usize, value: f64) -> f64 {
        let (lo, hi) = self.ranges[feature];
        let span = hi - lo;
        if span == 0.0 {
            0.0
        } else {
            2.0 * (value - lo) / span - 1.0
        }
    }
}

pub fn fit_normalizer(train: &LabeledDataset) -> Result<NormalizationParams> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); train.dimension()];
    for (x, _) in train.samples() {
        for (slot, v) in ranges.iter_mut().zip(x.values()) {
            slot.0 = slot.0.min(*v);
            slot.1 = slot.1.max(*v);
        }
    }
    Ok(NormalizationParams { ranges })
}

pub fn apply_normalizer(
    params: &NormalizationParams,
    data: &LabeledDataset,
) -> Result<LabeledDataset> {
    if data.dimension() != params.dimension() {
        return Err(Error::DimensionMismatch {
            expected: params.dimension(),
            actual: data.dimension(),
        });
    }
    let mut out = LabeledDataset::new(data.dimension());
    for (x, label) in data.samples() {
        let mapped = x
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| params.map_value(i, *v))
            .collect();
        out.push(FeatureVector::new(mapped)?, label.clone())?;
    }
    Ok(out)
}
