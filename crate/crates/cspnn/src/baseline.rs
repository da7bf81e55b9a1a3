//! The original PNN baseline: every training pattern becomes a centroid
//! and a single static radius `sigma = D_max / N_c` is fixed at build
//! time, where `D_max` is the largest distance between any two training
//! patterns. Kept as the reference point the compact model is measured
//! against.

use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::learning::EvalReport;
use crate::model::{squared_distance, CsPnnModel, SigmaMode, DEGENERATE_EPS};

#[derive(Debug, Clone, PartialEq)]
pub struct StaticPnnModel {
    network: CsPnnModel,
    sigma: f64,
    d_max: f64,
}

impl StaticPnnModel {
    pub fn network(&self) -> &CsPnnModel {
        &self.network
    }

    /// The fixed radius `D_max / N_c`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Largest pairwise training distance.
    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn hidden_count(&self) -> usize {
        self.network.hidden_count()
    }

    /// Evaluates with the stored radius. The radius never adapts; only
    /// the centroid distances change per sample.
    pub fn evaluate(&self, data: &LabeledDataset) -> Result<EvalReport> {
        // An all-identical training set yields D_max = 0; fall back to the
        // zero-radius limit rather than dividing by it.
        let mode = if self.sigma > DEGENERATE_EPS {
            SigmaMode::Fixed(self.sigma)
        } else {
            SigmaMode::ZeroLimit
        };
        self.network.evaluate_mode(data, mode)
    }

    /// Evaluates with an explicit radius override (limit experiments).
    pub fn evaluate_with_sigma(&self, data: &LabeledDataset, sigma: f64) -> Result<EvalReport> {
        if sigma <= 0.0 {
            return Err(Error::NonPositiveSigma(sigma));
        }
        self.network.evaluate_mode(data, SigmaMode::Fixed(sigma))
    }
}

/// Builds the original PNN: one RBF per training sample, subnets in label
/// first-appearance order, and the static radius from the pairwise scan.
///
/// The scan streams over pairs without materializing a distance matrix.
pub fn build_static(data: &LabeledDataset) -> Result<StaticPnnModel> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut network = CsPnnModel::new(data.dimension());
    for (x, label) in data.samples() {
        let subnet = match network.output_index(label) {
            Some(k) => k,
            None => network.push_output(label.clone()),
        };
        network.push_unit(x.clone(), subnet);
    }

    let d_max = max_pairwise_distance(data);
    let sigma = d_max / network.class_count() as f64;
    Ok(StaticPnnModel {
        network,
        sigma,
        d_max,
    })
}

fn max_pairwise_distance(data: &LabeledDataset) -> f64 {
    let samples = data.samples();
    let max_sq = (0..samples.len())
        .into_par_iter()
        .map(|i| {
            let (xi, _) = &samples[i];
            samples[i + 1..]
                .iter()
                .map(|(xj, _)| squared_distance(xi.values(), xj.values()))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    max_sq.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learning::nearest_centroid_output;
    use crate::model::{ClassLabel, FeatureVector};

    fn fv(values: &[f64]) -> FeatureVector {
        FeatureVector::new(values.to_vec()).unwrap()
    }

    fn dataset(dimension: usize, rows: &[(&[f64], &str)]) -> LabeledDataset {
        LabeledDataset::from_samples(
            dimension,
            rows.iter()
                .map(|(x, l)| (fv(x), ClassLabel::from(*l)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sigma_is_pairwise_max_over_class_count() {
        let m = build_static(&dataset(1, &[(&[0.0], "a"), (&[6.0], "b")])).unwrap();
        assert_eq!(m.d_max(), 6.0);
        assert_eq!(m.sigma(), 3.0);
    }

    #[test]
    fn one_unit_per_training_sample() {
        let data = dataset(
            2,
            &[
                (&[0.0, 0.0], "a"),
                (&[1.0, 0.0], "b"),
                (&[0.0, 1.0], "b"),
                (&[1.0, 1.0], "a"),
                (&[0.5, 0.5], "c"),
            ],
        );
        let m = build_static(&data).unwrap();
        assert_eq!(m.hidden_count(), data.len());
        assert_eq!(m.network().class_count(), 3);
    }

    #[test]
    fn empty_dataset_is_rejected() {
        assert!(matches!(
            build_static(&LabeledDataset::new(4)),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn pairwise_scan_matches_independent_reimplementation() {
        // Deterministic pseudo-random points, checked against a plain
        // double loop written separately from the scan under test.
        let mut rows = Vec::new();
        let mut v: u64 = 0x2545F4914F6CDD1D;
        for _ in 0..40 {
            let mut coords = Vec::new();
            for _ in 0..3 {
                v ^= v << 13;
                v ^= v >> 7;
                v ^= v << 17;
                coords.push((v % 2000) as f64 / 100.0 - 10.0);
            }
            rows.push((fv(&coords), ClassLabel::from("x")));
        }
        let data = LabeledDataset::from_samples(3, rows).unwrap();

        let mut expected: f64 = 0.0;
        for (i, (a, _)) in data.samples().iter().enumerate() {
            for (b, _) in &data.samples()[i + 1..] {
                let d: f64 = a
                    .values()
                    .iter()
                    .zip(b.values())
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum();
                expected = expected.max(d.sqrt());
            }
        }
        assert_eq!(max_pairwise_distance(&data), expected);
    }

    #[test]
    fn single_training_point_is_classified_perfectly() {
        let data = dataset(2, &[(&[0.25, -0.5], "only")]);
        let m = build_static(&data).unwrap();
        // D_max = 0 here: the degenerate radius path must still classify.
        let report = m.evaluate(&data).unwrap();
        assert_eq!(report.accuracy(), 100.0);
    }

    #[test]
    fn xor_layout_matches_brute_force() {
        let train = dataset(
            2,
            &[
                (&[0.0, 0.0], "a"),
                (&[1.0, 1.0], "a"),
                (&[1.0, 0.0], "b"),
                (&[0.0, 1.0], "b"),
            ],
        );
        let m = build_static(&train).unwrap();
        assert!((m.d_max() - 2.0f64.sqrt()).abs() < 1e-15);

        let test = dataset(
            2,
            &[
                (&[0.1, 0.1], "a"),
                (&[0.9, 0.9], "a"),
                (&[0.9, 0.1], "b"),
                (&[0.1, 0.9], "b"),
            ],
        );
        let report = m.evaluate(&test).unwrap();
        // Brute-force recomputation of every score.
        let sigma2 = m.sigma() * m.sigma();
        for ((x, _), (_, predicted)) in test.samples().iter().zip(&report.predictions) {
            let mut scores = vec![0.0; m.network().class_count()];
            for u in m.network().hidden_units() {
                let d2: f64 = u
                    .centroid()
                    .values()
                    .iter()
                    .zip(x.values())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                scores[u.subnet()] += (-d2 / sigma2).exp();
            }
            let mut best = 0;
            for (i, s) in scores.iter().enumerate() {
                if *s > scores[best] {
                    best = i;
                }
            }
            assert_eq!(predicted, m.network().label_of(best));
        }
        assert_eq!(report.accuracy(), 100.0);
    }

    #[test]
    fn tiny_sigma_converges_to_nearest_neighbor() {
        let train = dataset(
            2,
            &[
                (&[0.0, 0.0], "a"),
                (&[1.0, 1.0], "a"),
                (&[1.0, 0.0], "b"),
                (&[0.0, 1.0], "b"),
                (&[0.5, 0.8], "c"),
            ],
        );
        let m = build_static(&train).unwrap();
        let probes = [
            [0.1, 0.2],
            [0.8, 0.9],
            [0.9, 0.2],
            [0.2, 0.9],
            [0.55, 0.75],
            [0.4, 0.45],
        ];
        for p in probes {
            let x = fv(&p);
            let tiny = m.d_max() * 1e-3;
            let report = m
                .evaluate_with_sigma(
                    &LabeledDataset::from_samples(2, vec![(x.clone(), ClassLabel::from("?"))])
                        .unwrap(),
                    tiny,
                )
                .unwrap();
            let expected = nearest_centroid_output(m.network(), &x).unwrap();
            assert_eq!(report.predictions[0].1, *m.network().label_of(expected));
        }
    }
}
