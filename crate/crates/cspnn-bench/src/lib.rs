//! Synthetic dataset generation for the benchmarks: seeded Gaussian
//! class clusters in `[-1, 1]`-ish space, shaped like the normalized
//! datasets the classifier is used on.

use cspnn::rng::Xoshiro256;
use cspnn::{ClassLabel, FeatureVector, LabeledDataset};

pub struct ClusterSpec {
    pub classes: usize,
    pub samples_per_class: usize,
    pub dimension: usize,
    /// Standard deviation of each cluster around its center.
    pub spread: f64,
    pub seed: u64,
}

/// Samples interleaved across classes (class 0, 1, ..., repeat), the way
/// shuffled dataset files present them.
pub fn gaussian_clusters(spec: &ClusterSpec) -> LabeledDataset {
    let mut rng = Xoshiro256::new(spec.seed);
    let centers: Vec<Vec<f64>> = (0..spec.classes)
        .map(|_| (0..spec.dimension).map(|_| rng.next_f64() * 2.0 - 1.0).collect())
        .collect();

    let mut data = LabeledDataset::new(spec.dimension);
    for _ in 0..spec.samples_per_class {
        for (class, center) in centers.iter().enumerate() {
            let point: Vec<f64> = center
                .iter()
                .map(|c| c + gaussian(&mut rng) * spec.spread)
                .collect();
            data.push(
                FeatureVector::new(point).expect("finite sample"),
                ClassLabel::new(format!("c{class}")),
            )
            .expect("dimension matches");
        }
    }
    data
}

/// Standard normal via Box-Muller.
fn gaussian(rng: &mut Xoshiro256) -> f64 {
    let u1 = loop {
        let u = rng.next_f64();
        if u > 0.0 {
            break u;
        }
    };
    let u2 = rng.next_f64();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}
