//! Experiment harness: standard classification, class-incremental
//! learning (classes arrive in groups) and continuous unlearning plus
//! relearning. Runs are averaged over seeded repetitions and reported as
//! stage records that serialize to CSV and JSON.
//!
//! Every record is reproducible bit-exactly from the config and base
//! seed: per-run seeds come from a SplitMix64 stream over the base seed,
//! and each run only draws from its own generator.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::data_io::seeded_class_permutation;
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::learning::EvalReport;
use crate::model::{ClassLabel, CsPnnModel};
use crate::rng::{SplitMix64, Xoshiro256};
use crate::baseline;

/// Which experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Full training set at once; optionally also the static baseline.
    Standard { with_baseline: bool },
    /// Classes arrive `group_size` at a time (1..=4); for size 1 the
    /// first group exceptionally holds two classes.
    Cil { group_size: u32 },
    /// Repeated unlearn/relearn of `floor(N_c / divisor)` classes,
    /// divisor in 2..=4.
    Cuil { divisor: u32 },
}

impl Scenario {
    fn tag(&self) -> &'static str {
        match self {
            Scenario::Standard { .. } => "standard",
            Scenario::Cil { .. } => "cil",
            Scenario::Cuil { .. } => "cuil",
        }
    }

    fn param(&self) -> Option<u32> {
        match self {
            Scenario::Standard { .. } => None,
            Scenario::Cil { group_size } => Some(*group_size),
            Scenario::Cuil { divisor } => Some(*divisor),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    /// Dataset name recorded in every stage row.
    pub dataset: String,
    pub scenario: Scenario,
    /// Seeded repetitions to average over.
    pub runs: usize,
    /// Unlearn/relearn iterations per run (continuous-unlearning only).
    pub unlearn_iterations: usize,
    pub base_seed: u64,
}

impl ProtocolConfig {
    pub fn new(dataset: impl Into<String>, scenario: Scenario) -> Self {
        ProtocolConfig {
            dataset: dataset.into(),
            scenario,
            runs: 10,
            unlearn_iterations: 4,
            base_seed: 42,
        }
    }
}

/// One evaluated stage of one run (or an average across runs when
/// `seed` is `None`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageRecord {
    pub scenario: String,
    pub dataset: String,
    pub param: Option<u32>,
    pub stage: String,
    /// Classes present in the model at this stage; empty on averaged rows.
    pub classes: Vec<ClassLabel>,
    /// Per-run seed; `None` marks an averaged row.
    pub seed: Option<u64>,
    pub accuracy: f64,
    pub hidden_count: f64,
}

fn record(
    cfg: &ProtocolConfig,
    stage: &str,
    classes: Vec<ClassLabel>,
    seed: Option<u64>,
    report: &EvalReport,
) -> StageRecord {
    StageRecord {
        scenario: cfg.scenario.tag().to_owned(),
        dataset: cfg.dataset.clone(),
        param: cfg.scenario.param(),
        stage: stage.to_owned(),
        classes,
        seed,
        accuracy: report.accuracy(),
        hidden_count: report.hidden_count as f64,
    }
}

/// Group sizes for a class-incremental schedule over `n_classes`.
///
/// Size 1 starts with a two-class group and then single classes; larger
/// sizes fill full groups and append the nonzero remainder as a final
/// partial group.
pub fn cil_group_sizes(n_classes: usize, group_size: usize) -> Vec<usize> {
    if group_size == 1 {
        let mut sizes = vec![2.min(n_classes)];
        sizes.extend(std::iter::repeat(1).take(n_classes.saturating_sub(2)));
        return sizes;
    }
    let mut sizes = vec![group_size; n_classes / group_size];
    let remainder = n_classes % group_size;
    if remainder > 0 {
        sizes.push(remainder);
    }
    sizes
}

fn per_run_seeds(base_seed: u64, runs: usize) -> Vec<u64> {
    let mut stream = SplitMix64::new(base_seed);
    (0..runs).map(|_| stream.next_u64()).collect()
}

/// Full-training-set construction and evaluation; adds a baseline row
/// when configured.
pub fn run_standard(
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &ProtocolConfig,
) -> Result<Vec<StageRecord>> {
    let with_baseline = match cfg.scenario {
        Scenario::Standard { with_baseline } => with_baseline,
        _ => return Err(Error::Config("config is not a standard scenario".into())),
    };
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let classes = train.distinct_labels();
    let mut records = Vec::new();

    let mut model = CsPnnModel::new(train.dimension());
    model.construct(train)?;
    let report = model.evaluate(test)?;
    records.push(record(cfg, "cs-pnn", classes.clone(), None, &report));

    if with_baseline {
        let static_model = baseline::build_static(train)?;
        let report = static_model.evaluate(test)?;
        records.push(record(cfg, "original-pnn", classes, None, &report));
    }
    Ok(records)
}

/// Class-incremental runs: per seed, permute the class order, present
/// groups sequentially and evaluate after each group on the test data of
/// every class seen so far.
pub fn run_cil(
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &ProtocolConfig,
) -> Result<Vec<StageRecord>> {
    let group_size = match cfg.scenario {
        Scenario::Cil { group_size } => group_size,
        _ => return Err(Error::Config("config is not a cil scenario".into())),
    };
    if !(1..=4).contains(&group_size) {
        return Err(Error::Config(format!(
            "cil group size must be 1..=4, got {group_size}"
        )));
    }
    let labels = train.distinct_labels();
    if labels.len() <= 5 {
        return Err(Error::Config(format!(
            "cil needs more than 5 classes, dataset has {}",
            labels.len()
        )));
    }
    if cfg.runs == 0 {
        return Err(Error::Config("run count must be at least 1".into()));
    }

    let seeds = per_run_seeds(cfg.base_seed, cfg.runs);
    let per_run: Result<Vec<Vec<StageRecord>>> = seeds
        .par_iter()
        .map(|&seed| cil_single_run(train, test, cfg, group_size as usize, &labels, seed))
        .collect();
    Ok(per_run?.into_iter().flatten().collect())
}

fn cil_single_run(
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &ProtocolConfig,
    group_size: usize,
    labels: &[ClassLabel],
    seed: u64,
) -> Result<Vec<StageRecord>> {
    let order = seeded_class_permutation(labels, seed);
    let sizes = cil_group_sizes(labels.len(), group_size);

    let mut model = CsPnnModel::new(train.dimension());
    let mut seen: BTreeSet<ClassLabel> = BTreeSet::new();
    let mut records = Vec::with_capacity(sizes.len());
    let mut cursor = 0;
    for (stage_index, size) in sizes.iter().enumerate() {
        let group: BTreeSet<ClassLabel> = order[cursor..cursor + size].iter().cloned().collect();
        cursor += size;

        model.construct(&train.subset_by_labels(&group))?;
        seen.extend(group);

        let report = model.evaluate(&test.subset_by_labels(&seen))?;
        records.push(record(
            cfg,
            &(stage_index + 1).to_string(),
            seen.iter().cloned().collect(),
            Some(seed),
            &report,
        ));
    }
    Ok(records)
}

/// Continuous unlearning runs: construct on everything, then repeatedly
/// unlearn a seed-chosen class subset (stage `iU`) and relearn it from
/// the original training data (stage `iC`), evaluating after every step.
pub fn run_cuil(
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &ProtocolConfig,
) -> Result<Vec<StageRecord>> {
    let divisor = match cfg.scenario {
        Scenario::Cuil { divisor } => divisor,
        _ => return Err(Error::Config("config is not a cuil scenario".into())),
    };
    if !(2..=4).contains(&divisor) {
        return Err(Error::Config(format!(
            "cuil divisor must be 2..=4, got {divisor}"
        )));
    }
    let labels = train.distinct_labels();
    let n_unlearn = labels.len() / divisor as usize;
    if n_unlearn == 0 {
        return Err(Error::Config(format!(
            "cuil divisor {divisor} leaves no classes to unlearn out of {}",
            labels.len()
        )));
    }
    if cfg.runs == 0 {
        return Err(Error::Config("run count must be at least 1".into()));
    }

    let seeds = per_run_seeds(cfg.base_seed, cfg.runs);
    let per_run: Result<Vec<Vec<StageRecord>>> = seeds
        .par_iter()
        .map(|&seed| cuil_single_run(train, test, cfg, n_unlearn, &labels, seed))
        .collect();
    Ok(per_run?.into_iter().flatten().collect())
}

fn cuil_single_run(
    train: &LabeledDataset,
    test: &LabeledDataset,
    cfg: &ProtocolConfig,
    n_unlearn: usize,
    labels: &[ClassLabel],
    seed: u64,
) -> Result<Vec<StageRecord>> {
    let mut rng = Xoshiro256::new(seed);
    let mut records = Vec::with_capacity(1 + 2 * cfg.unlearn_iterations);

    let mut model = CsPnnModel::new(train.dimension());
    model.construct(train)?;
    let report = model.evaluate(test)?;
    records.push(record(
        cfg,
        "Ini.",
        labels.to_vec(),
        Some(seed),
        &report,
    ));

    for iteration in 1..=cfg.unlearn_iterations {
        // Classes drawn uniformly without replacement; previously
        // relearned classes stay eligible.
        let chosen: Vec<ClassLabel> = rng
            .sample_indices(labels.len(), n_unlearn)
            .into_iter()
            .map(|i| labels[i].clone())
            .collect();
        let chosen_set: BTreeSet<ClassLabel> = chosen.iter().cloned().collect();
        let remaining: BTreeSet<ClassLabel> = labels
            .iter()
            .filter(|l| !chosen_set.contains(l))
            .cloned()
            .collect();

        model.unlearn_classes(&chosen)?;
        let report = model.evaluate(&test.subset_by_labels(&remaining))?;
        records.push(record(
            cfg,
            &format!("{iteration}U"),
            remaining.iter().cloned().collect(),
            Some(seed),
            &report,
        ));

        model.construct(&train.subset_by_labels(&chosen_set))?;
        let report = model.evaluate(test)?;
        records.push(record(
            cfg,
            &format!("{iteration}C"),
            labels.to_vec(),
            Some(seed),
            &report,
        ));
    }
    Ok(records)
}

/// Arithmetic mean of per-seed records per distinct stage, in stage
/// first-appearance order. Averaged rows carry no seed and no class set.
pub fn average_stages(records: &[StageRecord]) -> Vec<StageRecord> {
    let mut order: Vec<(String, String, Option<u32>, String)> = Vec::new();
    let mut sums: std::collections::HashMap<(String, String, Option<u32>, String), (f64, f64, usize)> =
        std::collections::HashMap::new();
    for r in records {
        if r.seed.is_none() {
            continue;
        }
        let key = (
            r.scenario.clone(),
            r.dataset.clone(),
            r.param,
            r.stage.clone(),
        );
        let entry = sums.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (0.0, 0.0, 0)
        });
        entry.0 += r.accuracy;
        entry.1 += r.hidden_count;
        entry.2 += 1;
    }
    order
        .into_iter()
        .map(|key| {
            let (acc, hidden, n) = sums[&key];
            StageRecord {
                scenario: key.0,
                dataset: key.1,
                param: key.2,
                stage: key.3,
                classes: Vec::new(),
                seed: None,
                accuracy: acc / n as f64,
                hidden_count: hidden / n as f64,
            }
        })
        .collect()
}

/// CSV rendering: one row per record, averaged rows marked `avg`.
pub fn to_csv(records: &[StageRecord]) -> String {
    let mut out = String::from("scenario,dataset,param,stage,seed,accuracy,hidden_count\n");
    for r in records {
        let param = r.param.map_or_else(|| "-".to_owned(), |p| p.to_string());
        let seed = r.seed.map_or_else(|| "avg".to_owned(), |s| s.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{:.4},{:.2}\n",
            r.scenario, r.dataset, param, r.stage, seed, r.accuracy, r.hidden_count
        ));
    }
    out
}

/// JSON rendering with full precision.
pub fn to_json(records: &[StageRecord]) -> Result<String> {
    serde_json::to_string_pretty(records)
        .map_err(|e| Error::Config(format!("serializing records: {e}")))
}
