//! Dataset ingestion and preparation: CSV and IDX loaders, min-max
//! normalization, class filtering/grouping, seeded class permutations and
//! the dataset manifest.
//!
//! The manifest is a TOML file with one `[datasets.<name>]` table per
//! dataset declaring its files, label column, class count and feature
//! count. Relative paths are resolved against a caller-chosen data root
//! (the CLI defaults to `$CSPNN_DATA_DIR`, falling back to the manifest's
//! directory).

mod csv;
mod idx;
mod normalize;

pub use self::csv::load_csv;
pub use self::idx::load_idx;
pub use self::normalize::{apply_normalizer, fit_normalizer, NormalizationParams};

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::model::ClassLabel;
use crate::rng::Xoshiro256;

/// Which CSV column holds the class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelPosition {
    First,
    Last,
    /// Zero-based column index.
    Column(usize),
}

impl LabelPosition {
    pub(crate) fn resolve(self, fields: usize) -> Option<usize> {
        match self {
            LabelPosition::First => (fields > 0).then_some(0),
            LabelPosition::Last => fields.checked_sub(1),
            LabelPosition::Column(i) => (i < fields).then_some(i),
        }
    }
}

/// Where a dataset's files live and how to parse them.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv {
        train: PathBuf,
        test: PathBuf,
        label: LabelPosition,
    },
    Idx {
        train_images: PathBuf,
        train_labels: PathBuf,
        test_images: PathBuf,
        test_labels: PathBuf,
    },
}

/// One manifest entry: declared shape plus file locations.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub name: String,
    pub source: DataSource,
    /// Declared class count; loaded data may not exceed it.
    pub classes: usize,
    /// Declared feature count; loaded data must match it.
    pub features: usize,
}

/// The parsed manifest: dataset specs keyed by name.
#[derive(Debug, Clone)]
pub struct Manifest {
    datasets: BTreeMap<String, DatasetSpec>,
}

#[derive(Deserialize)]
struct RawManifest {
    datasets: BTreeMap<String, RawDataset>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RawDataset {
    format: String,
    classes: usize,
    features: usize,
    train: Option<String>,
    test: Option<String>,
    label: Option<toml::Value>,
    train_images: Option<String>,
    train_labels: Option<String>,
    test_images: Option<String>,
    test_labels: Option<String>,
}

impl Manifest {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_str_named(&text, path)
    }

    pub fn from_str_named(text: &str, path: &Path) -> Result<Self> {
        let raw: RawManifest =
            toml::from_str(text).map_err(|e| Error::parse(path, 0, e.to_string()))?;
        let mut datasets = BTreeMap::new();
        for (name, entry) in raw.datasets {
            let spec = entry.into_spec(&name, path)?;
            datasets.insert(name, spec);
        }
        Ok(Manifest { datasets })
    }

    pub fn get(&self, name: &str) -> Option<&DatasetSpec> {
        self.datasets.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.datasets.keys().map(String::as_str)
    }
}

impl RawDataset {
    fn into_spec(self, name: &str, path: &Path) -> Result<DatasetSpec> {
        let missing =
            |field: &str| Error::parse(path, 0, format!("dataset {name}: missing `{field}`"));
        let source = match self.format.as_str() {
            "csv" => {
                let label = match self.label {
                    None => LabelPosition::Last,
                    Some(toml::Value::String(s)) if s == "first" => LabelPosition::First,
                    Some(toml::Value::String(s)) if s == "last" => LabelPosition::Last,
                    Some(toml::Value::Integer(i)) if i >= 0 => {
                        LabelPosition::Column(i as usize)
                    }
                    Some(v) => {
                        return Err(Error::parse(
                            path,
                            0,
                            format!("dataset {name}: bad label position {v:?}"),
                        ))
                    }
                };
                DataSource::Csv {
                    train: self.train.ok_or_else(|| missing("train"))?.into(),
                    test: self.test.ok_or_else(|| missing("test"))?.into(),
                    label,
                }
            }
            "idx" => DataSource::Idx {
                train_images: self.train_images.ok_or_else(|| missing("train-images"))?.into(),
                train_labels: self.train_labels.ok_or_else(|| missing("train-labels"))?.into(),
                test_images: self.test_images.ok_or_else(|| missing("test-images"))?.into(),
                test_labels: self.test_labels.ok_or_else(|| missing("test-labels"))?.into(),
            },
            other => {
                return Err(Error::parse(
                    path,
                    0,
                    format!("dataset {name}: unknown format {other:?}"),
                ))
            }
        };
        Ok(DatasetSpec {
            name: name.to_owned(),
            source,
            classes: self.classes,
            features: self.features,
        })
    }
}

fn resolve(root: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_owned()
    } else {
        root.join(path)
    }
}

/// Loads the raw (unnormalized) train and test splits of `spec`, checking
/// the loaded shape against the declared one.
pub fn load_dataset(spec: &DatasetSpec, root: &Path) -> Result<(LabeledDataset, LabeledDataset)> {
    let (train, test) = match &spec.source {
        DataSource::Csv { train, test, label } => (
            load_csv(&resolve(root, train), *label)?,
            load_csv(&resolve(root, test), *label)?,
        ),
        DataSource::Idx {
            train_images,
            train_labels,
            test_images,
            test_labels,
        } => (
            load_idx(&resolve(root, train_images), &resolve(root, train_labels))?,
            load_idx(&resolve(root, test_images), &resolve(root, test_labels))?,
        ),
    };

    for (split, data) in [("train", &train), ("test", &test)] {
        if data.dimension() != spec.features {
            return Err(Error::Config(format!(
                "dataset {}: {split} split has {} features, manifest declares {}",
                spec.name,
                data.dimension(),
                spec.features
            )));
        }
    }
    let mut observed: BTreeSet<ClassLabel> = BTreeSet::new();
    for data in [&train, &test] {
        observed.extend(data.samples().iter().map(|(_, l)| l.clone()));
    }
    if observed.len() > spec.classes {
        return Err(Error::Config(format!(
            "dataset {}: {} distinct labels observed, manifest declares {}",
            spec.name,
            observed.len(),
            spec.classes
        )));
    }
    Ok((train, test))
}

/// Loads `spec` and normalizes both splits with parameters fit on train.
pub fn load_normalized(
    spec: &DatasetSpec,
    root: &Path,
) -> Result<(LabeledDataset, LabeledDataset, NormalizationParams)> {
    let (train, test) = load_dataset(spec, root)?;
    let params = fit_normalizer(&train)?;
    let train = apply_normalizer(&params, &train)?;
    let test = apply_normalizer(&params, &test)?;
    Ok((train, test, params))
}

/// Splits `data` into one dataset per class group, preserving original
/// relative order within each group. Groups must be disjoint and every
/// grouped label must occur in `data`.
pub fn split_by_classes(
    data: &LabeledDataset,
    class_groups: &[BTreeSet<ClassLabel>],
) -> Result<Vec<LabeledDataset>> {
    let mut seen: BTreeSet<&ClassLabel> = BTreeSet::new();
    for group in class_groups {
        for label in group {
            if !seen.insert(label) {
                return Err(Error::Config(format!(
                    "class groups overlap on label {:?}",
                    label.as_str()
                )));
            }
        }
    }
    let present: BTreeSet<&ClassLabel> = data.samples().iter().map(|(_, l)| l).collect();
    for label in &seen {
        if !present.contains(label) {
            return Err(Error::UnknownLabel(label.as_str().to_owned()));
        }
    }
    Ok(class_groups
        .iter()
        .map(|group| data.subset_by_labels(group))
        .collect())
}

/// Deterministic shuffle of `labels` driven by `seed`; see [`crate::rng`]
/// for the pinned generator and shuffle algorithm.
pub fn seeded_class_permutation(labels: &[ClassLabel], seed: u64) -> Vec<ClassLabel> {
    let mut permuted = labels.to_vec();
    Xoshiro256::new(seed).shuffle(&mut permuted);
    permuted
}
