//! One-pass construction, unlearning and evaluation.
//!
//! `construct` grows the network while streaming over the training data
//! exactly once: a sample of an unseen class opens a new subnet seeded at
//! the sample; a misclassified sample becomes a new RBF in its own class's
//! subnet; a correctly classified sample instead pulls the most activated
//! RBF of the winning subnet halfway towards it. No training data is
//! retained beyond the centroids and there is nothing to tune.
//!
//! Unlearning is structural: removing hidden units (by stable id) or whole
//! class subnets simply unloads them, and the adaptive radius picks up the
//! reduced network on the next forward pass.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::model::{argmax, ClassLabel, CsPnnModel, SigmaMode, UnitId};

/// Per-class tally inside an [`EvalReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassStats {
    pub count: usize,
    pub correct: usize,
}

/// Outcome of evaluating a model on a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub total: usize,
    pub correct: usize,
    /// Tallies keyed by true label.
    pub per_class: BTreeMap<ClassLabel, ClassStats>,
    /// `(true label, predicted label)` per sample, in dataset order.
    pub predictions: Vec<(ClassLabel, ClassLabel)>,
    /// Hidden-unit count at evaluation time.
    pub hidden_count: usize,
    /// Wall time of the evaluation; informational only, never compared.
    pub elapsed_secs: f64,
}

impl EvalReport {
    /// Accuracy in percent; 0 for an empty dataset.
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            100.0 * self.correct as f64 / self.total as f64
        }
    }
}

pub(crate) fn build_report(
    pairs: Vec<(ClassLabel, ClassLabel)>,
    hidden_count: usize,
    elapsed_secs: f64,
) -> EvalReport {
    let mut per_class: BTreeMap<ClassLabel, ClassStats> = BTreeMap::new();
    let mut correct = 0;
    for (truth, predicted) in &pairs {
        let stats = per_class.entry(truth.clone()).or_default();
        stats.count += 1;
        if truth == predicted {
            stats.correct += 1;
            correct += 1;
        }
    }
    EvalReport {
        total: pairs.len(),
        correct,
        per_class,
        predictions: pairs,
        hidden_count,
        elapsed_secs,
    }
}

impl CsPnnModel {
    /// Presents `data` once, in order, growing or nudging the network.
    ///
    /// Works on both an empty model (initial construction) and a trained
    /// one (reconstruction for incremental learning and relearning after
    /// unlearning). An empty dataset is a no-op.
    pub fn construct(&mut self, data: &LabeledDataset) -> Result<()> {
        if data.is_empty() {
            return Ok(());
        }
        if data.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: data.dimension(),
            });
        }

        let mut start = 0;
        if self.is_empty() {
            let (x, label) = &data.samples()[0];
            let subnet = self.push_output(label.clone());
            self.push_unit(x.clone(), subnet);
            start = 1;
        }

        for (x, label) in &data.samples()[start..] {
            match self.output_index(label) {
                None => {
                    let subnet = self.push_output(label.clone());
                    self.push_unit(x.clone(), subnet);
                }
                Some(true_k) => {
                    if self.hidden_count() == 0 {
                        // Reachable only after unlearning every unit: there
                        // is no evidence to classify against, so grow.
                        self.push_unit(x.clone(), true_k);
                        continue;
                    }
                    let pass = self.forward_detail(x, SigmaMode::Adaptive)?;
                    if pass.predicted != true_k {
                        self.push_unit(x.clone(), true_k);
                    } else {
                        let winner = self.most_activated_in_subnet(
                            pass.predicted,
                            &pass.squared_distances,
                        );
                        self.hidden_mut()[winner].centroid_mut_midpoint(x);
                    }
                }
            }
        }
        Ok(())
    }

    /// Most activated unit of `subnet` = the one nearest to the input
    /// (activation decreases strictly with distance under the shared
    /// radius). Smallest index wins on ties.
    fn most_activated_in_subnet(&self, subnet: usize, squared_distances: &[f64]) -> usize {
        let mut best: Option<usize> = None;
        for (j, unit) in self.hidden_units().iter().enumerate() {
            if unit.subnet() != subnet {
                continue;
            }
            match best {
                Some(b) if squared_distances[j] >= squared_distances[b] => {}
                _ => best = Some(j),
            }
        }
        best.expect("winning subnet owns at least one unit")
    }

    /// Removes the hidden units named by `ids`; output units are kept even
    /// if a subnet empties out. Returns the number of units removed.
    ///
    /// Unknown ids leave the model untouched.
    pub fn unlearn_units(&mut self, ids: &[UnitId]) -> Result<usize> {
        let targets: BTreeSet<UnitId> = ids.iter().copied().collect();
        for id in &targets {
            if !self.hidden_units().iter().any(|u| u.id() == *id) {
                return Err(Error::UnknownUnitId(id.0));
            }
        }
        let before = self.hidden_count();
        self.hidden_mut().retain(|u| !targets.contains(&u.id()));
        Ok(before - self.hidden_count())
    }

    /// Removes whole subnets: each named label's output unit and every RBF
    /// wired to it. Returns the number of classes removed.
    ///
    /// Unknown labels leave the model untouched.
    pub fn unlearn_classes(&mut self, labels: &[ClassLabel]) -> Result<usize> {
        let mut removed_outputs = BTreeSet::new();
        for label in labels {
            let index = self
                .output_index(label)
                .ok_or_else(|| Error::UnknownLabel(label.as_str().to_owned()))?;
            removed_outputs.insert(index);
        }
        if removed_outputs.is_empty() {
            return Ok(0);
        }

        // Remaining outputs shift down; remap the subnet wiring to match.
        let old_count = self.class_count();
        let mut remap = vec![usize::MAX; old_count];
        let mut next = 0;
        for (old, slot) in remap.iter_mut().enumerate() {
            if !removed_outputs.contains(&old) {
                *slot = next;
                next += 1;
            }
        }

        self.hidden_mut()
            .retain(|u| !removed_outputs.contains(&u.subnet()));
        for unit in self.hidden_mut() {
            let subnet = remap[unit.subnet()];
            unit.set_subnet(subnet);
        }
        let mut old = 0;
        self.outputs_mut().retain(|_| {
            let keep = !removed_outputs.contains(&old);
            old += 1;
            keep
        });
        Ok(removed_outputs.len())
    }

    /// Classifies every sample of `data` without mutating the model.
    ///
    /// The radius is re-derived per test sample from the current network,
    /// so a model that has been unlearned or regrown is evaluated as-is.
    pub fn evaluate(&self, data: &LabeledDataset) -> Result<EvalReport> {
        self.evaluate_mode(data, SigmaMode::Adaptive)
    }

    pub(crate) fn evaluate_mode(
        &self,
        data: &LabeledDataset,
        mode: SigmaMode,
    ) -> Result<EvalReport> {
        if self.hidden_count() == 0 || self.class_count() == 0 {
            return Err(Error::EmptyModel);
        }
        if data.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: data.dimension(),
            });
        }
        let started = Instant::now();
        let pairs: Result<Vec<(ClassLabel, ClassLabel)>> = data
            .samples()
            .par_iter()
            .map(|(x, truth)| {
                let pass = self.forward_detail(x, mode)?;
                Ok((truth.clone(), self.label_of(pass.predicted).clone()))
            })
            .collect();
        Ok(build_report(
            pairs?,
            self.hidden_count(),
            started.elapsed().as_secs_f64(),
        ))
    }
}

/// Nearest-centroid prediction used as an oracle in tests and by the
/// sigma -> 0 comparisons; smallest unit index wins distance ties.
pub fn nearest_centroid_output(model: &CsPnnModel, x: &crate::model::FeatureVector) -> Result<usize> {
    if model.hidden_count() == 0 {
        return Err(Error::EmptyModel);
    }
    let negated: Vec<f64> = model
        .hidden_units()
        .iter()
        .map(|u| -crate::model::squared_distance(u.centroid().values(), x.values()))
        .collect();
    Ok(model.hidden_units()[argmax(&negated)].subnet())
}
