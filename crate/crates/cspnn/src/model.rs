//! Network data structures and the pure feed-forward mathematics.
//!
//! A model is a flat list of Gaussian RBF units, each wired to exactly one
//! output unit (its subnet). Classification feeds an input through every
//! unit with a single shared radius and picks the output with the largest
//! sum of activations. The radius is not a stored parameter: it is derived
//! per input as `d_max / k`, where `d_max` is the largest distance from the
//! input to any stored centroid and `k` is the current number of classes,
//! so it tracks the pattern space as units and classes come and go.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distances at or below this are treated as zero when the adaptive radius
/// degenerates (all centroids coincide with the input).
pub const DEGENERATE_EPS: f64 = 1e-12;

/// A fixed-dimension pattern vector with finite components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteFeature { index });
        }
        Ok(FeatureVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Moves this vector to the midpoint between itself and `other`.
    pub(crate) fn move_to_midpoint(&mut self, other: &FeatureVector) {
        for (c, x) in self.0.iter_mut().zip(other.values()) {
            *c = (*c + x) / 2.0;
        }
    }
}

/// Class label; an opaque token compared by equality only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassLabel(String);

impl ClassLabel {
    pub fn new(label: impl Into<String>) -> Self {
        ClassLabel(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ClassLabel {
    fn from(s: &str) -> Self {
        ClassLabel(s.to_owned())
    }
}

impl From<String> for ClassLabel {
    fn from(s: String) -> Self {
        ClassLabel(s)
    }
}

/// Stable identifier of a hidden unit. Assigned monotonically at creation
/// and never reused, so unlearning targets survive unrelated removals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitId(pub u64);

impl std::fmt::Display for UnitId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// One hidden RBF unit: a centroid plus the index of its owning output unit.
#[derive(Debug, Clone, PartialEq)]
pub struct RbfUnit {
    id: UnitId,
    subnet: usize,
    centroid: FeatureVector,
}

impl RbfUnit {
    pub fn id(&self) -> UnitId {
        self.id
    }

    /// Index of the owning output unit (the one hidden-to-output weight).
    pub fn subnet(&self) -> usize {
        self.subnet
    }

    pub fn centroid(&self) -> &FeatureVector {
        &self.centroid
    }

    pub(crate) fn set_subnet(&mut self, subnet: usize) {
        self.subnet = subnet;
    }

    pub(crate) fn centroid_mut_midpoint(&mut self, x: &FeatureVector) {
        self.centroid.move_to_midpoint(x);
    }
}

/// One output unit; its position in the output list is its index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputUnit {
    label: ClassLabel,
}

impl OutputUnit {
    pub fn label(&self) -> &ClassLabel {
        &self.label
    }
}

/// Result of one feed-forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Forward {
    /// One unnormalized score per output unit (sum of subnet activations).
    pub scores: Vec<f64>,
    /// Index of the winning output unit (smallest index on ties).
    pub predicted: usize,
    /// Largest Euclidean distance from the input to any centroid.
    pub d_max: f64,
}

/// How the shared radius is chosen for a forward pass.
#[derive(Debug, Clone, Copy)]
pub(crate) enum SigmaMode {
    /// `sigma = d_max / k`, recomputed from the current input.
    Adaptive,
    /// Caller-supplied positive radius (static PNN, limit experiments).
    Fixed(f64),
    /// The sigma -> 0 limit: activation 1 at zero distance, 0 elsewhere.
    ZeroLimit,
}

/// Full per-pass detail kept internal for the learning algorithms.
#[derive(Debug, Clone)]
pub(crate) struct ForwardDetail {
    pub squared_distances: Vec<f64>,
    pub scores: Vec<f64>,
    pub predicted: usize,
    pub d_max: f64,
}

impl ForwardDetail {
    fn into_forward(self) -> Forward {
        Forward {
            scores: self.scores,
            predicted: self.predicted,
            d_max: self.d_max,
        }
    }
}

/// Gaussian RBF activation: `exp(-||x - c||^2 / sigma^2)`.
///
/// Equals 1 exactly when `x == c` and decreases strictly with distance.
pub fn activation(x: &FeatureVector, c: &FeatureVector, sigma: f64) -> Result<f64> {
    if x.len() != c.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            actual: x.len(),
        });
    }
    if sigma <= 0.0 {
        return Err(Error::NonPositiveSigma(sigma));
    }
    Ok((-squared_distance(x.values(), c.values()) / (sigma * sigma)).exp())
}

/// Shared radius for the current pattern space: `d_max / class_count`.
///
/// Returns `None` when `d_max` is degenerate (all centroids sit on the
/// input); callers then use the zero-radius limit instead of dividing.
pub fn unique_radius(d_max: f64, class_count: usize) -> Result<Option<f64>> {
    if class_count == 0 {
        return Err(Error::ZeroClassCount);
    }
    if d_max <= DEGENERATE_EPS {
        return Ok(None);
    }
    Ok(Some(d_max / class_count as f64))
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// Index of the maximum; the smallest index wins on exact ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// The network: a dynamic set of RBF units grouped into per-class subnets.
#[derive(Debug, Clone, PartialEq)]
pub struct CsPnnModel {
    dimension: usize,
    hidden: Vec<RbfUnit>,
    outputs: Vec<OutputUnit>,
    next_unit_id: u64,
}

impl CsPnnModel {
    /// An empty network for `dimension`-sized inputs.
    pub fn new(dimension: usize) -> Self {
        CsPnnModel {
            dimension,
            hidden: Vec::new(),
            outputs: Vec::new(),
            next_unit_id: 0,
        }
    }

    /// Rebuilds a model from stored parts, validating every invariant.
    ///
    /// `units` entries are `(id, subnet index, centroid)` in hidden-layer
    /// order. `next_unit_id` must exceed every unit id.
    pub fn from_parts(
        dimension: usize,
        labels: Vec<ClassLabel>,
        units: Vec<(u64, usize, FeatureVector)>,
        next_unit_id: u64,
    ) -> Result<Self> {
        let mut outputs = Vec::with_capacity(labels.len());
        for label in labels {
            if outputs.iter().any(|o: &OutputUnit| o.label == label) {
                return Err(Error::DuplicateLabel(label.as_str().to_owned()));
            }
            outputs.push(OutputUnit { label });
        }
        let mut hidden = Vec::with_capacity(units.len());
        let mut seen = std::collections::HashSet::new();
        for (id, subnet, centroid) in units {
            if centroid.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: centroid.len(),
                });
            }
            if subnet >= outputs.len() {
                return Err(Error::Config(format!(
                    "unit {id} references subnet {subnet} but only {} outputs exist",
                    outputs.len()
                )));
            }
            if !seen.insert(id) || id >= next_unit_id {
                return Err(Error::Config(format!("invalid unit id {id}")));
            }
            hidden.push(RbfUnit {
                id: UnitId(id),
                subnet,
                centroid,
            });
        }
        Ok(CsPnnModel {
            dimension,
            hidden,
            outputs,
            next_unit_id,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Hidden units in layer order.
    pub fn hidden_units(&self) -> &[RbfUnit] {
        &self.hidden
    }

    pub fn outputs(&self) -> &[OutputUnit] {
        &self.outputs
    }

    /// Current hidden-unit count (the `j` counter).
    pub fn hidden_count(&self) -> usize {
        self.hidden.len()
    }

    /// Current class count (the `k` counter).
    pub fn class_count(&self) -> usize {
        self.outputs.len()
    }

    /// True before any sample has been presented.
    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty() && self.hidden.is_empty()
    }

    pub fn next_unit_id(&self) -> u64 {
        self.next_unit_id
    }

    /// Output index owning `label`, if any.
    pub fn output_index(&self, label: &ClassLabel) -> Option<usize> {
        self.outputs.iter().position(|o| &o.label == label)
    }

    pub fn label_of(&self, output_index: usize) -> &ClassLabel {
        &self.outputs[output_index].label
    }

    pub(crate) fn push_output(&mut self, label: ClassLabel) -> usize {
        self.outputs.push(OutputUnit { label });
        self.outputs.len() - 1
    }

    pub(crate) fn push_unit(&mut self, centroid: FeatureVector, subnet: usize) -> UnitId {
        let id = UnitId(self.next_unit_id);
        self.next_unit_id += 1;
        self.hidden.push(RbfUnit {
            id,
            subnet,
            centroid,
        });
        id
    }

    pub(crate) fn hidden_mut(&mut self) -> &mut Vec<RbfUnit> {
        &mut self.hidden
    }

    pub(crate) fn outputs_mut(&mut self) -> &mut Vec<OutputUnit> {
        &mut self.outputs
    }

    /// Largest Euclidean distance between `x` and any stored centroid.
    pub fn max_centroid_distance(&self, x: &FeatureVector) -> Result<f64> {
        self.check_input(x)?;
        let max_sq = self
            .hidden
            .iter()
            .map(|u| squared_distance(u.centroid.values(), x.values()))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(max_sq.sqrt())
    }

    /// One adaptive-radius feed-forward pass.
    pub fn forward(&self, x: &FeatureVector) -> Result<Forward> {
        Ok(self.forward_detail(x, SigmaMode::Adaptive)?.into_forward())
    }

    /// Feed-forward with a caller-supplied radius instead of `d_max / k`.
    pub fn forward_with_sigma(&self, x: &FeatureVector, sigma: f64) -> Result<Forward> {
        if sigma <= 0.0 {
            return Err(Error::NonPositiveSigma(sigma));
        }
        Ok(self
            .forward_detail(x, SigmaMode::Fixed(sigma))?
            .into_forward())
    }

    fn check_input(&self, x: &FeatureVector) -> Result<()> {
        if self.hidden.is_empty() {
            return Err(Error::EmptyModel);
        }
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Distance pass, activations, scores and argmax in one sweep.
    ///
    /// `d_max` falls out of the same distance loop used for the
    /// activations, so the adaptive radius costs one comparison per unit.
    /// The argmax is taken over exponent-shifted sums (every exponent
    /// rebased on the smallest squared distance): the shift multiplies
    /// every score by the same positive constant, so the ordering is
    /// unchanged while staying well-conditioned even when the raw
    /// activations underflow at very small radii.
    pub(crate) fn forward_detail(&self, x: &FeatureVector, mode: SigmaMode) -> Result<ForwardDetail> {
        self.check_input(x)?;

        let mut squared = Vec::with_capacity(self.hidden.len());
        let mut max_sq = f64::NEG_INFINITY;
        let mut min_sq = f64::INFINITY;
        for unit in &self.hidden {
            let d2 = squared_distance(unit.centroid.values(), x.values());
            max_sq = max_sq.max(d2);
            min_sq = min_sq.min(d2);
            squared.push(d2);
        }
        let d_max = max_sq.sqrt();

        let sigma = match mode {
            SigmaMode::Adaptive => unique_radius(d_max, self.outputs.len())?,
            SigmaMode::Fixed(s) => {
                if s <= 0.0 {
                    return Err(Error::NonPositiveSigma(s));
                }
                Some(s)
            }
            SigmaMode::ZeroLimit => None,
        };

        let k = self.outputs.len();
        let mut scores = vec![0.0; k];
        let mut shifted = vec![0.0; k];
        match sigma {
            None => {
                let eps_sq = DEGENERATE_EPS * DEGENERATE_EPS;
                for (unit, &d2) in self.hidden.iter().zip(&squared) {
                    let a = if d2 <= eps_sq { 1.0 } else { 0.0 };
                    scores[unit.subnet] += a;
                    shifted[unit.subnet] += a;
                }
            }
            Some(s) => {
                let inv = 1.0 / (s * s);
                for (unit, &d2) in self.hidden.iter().zip(&squared) {
                    scores[unit.subnet] += (-d2 * inv).exp();
                    shifted[unit.subnet] += (-(d2 - min_sq) * inv).exp();
                }
            }
        }

        Ok(ForwardDetail {
            squared_distances: squared,
            scores,
            predicted: argmax(&shifted),
            d_max,
        })
    }
}
