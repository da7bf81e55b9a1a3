//! Acceptance suite. One test per criterion; each prints a single
//! `[criterion N] PASS` / `SKIP` line (run with `-- --nocapture` to see
//! them all).
//!
//! Criteria 1-4 reproduce published-scale results on real datasets and
//! run only when the data directory is present (`$CSPNN_DATA_DIR`, or
//! `data/` at the workspace root; `scripts/fetch_datasets.sh` sets it
//! up). They are skipped, loudly, when the files are absent. Criteria
//! 5-8 run on synthetic fixtures and always execute. Timing-sensitive
//! criteria assume `--release`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cspnn::data_io::{load_normalized, Manifest};
use cspnn::protocols::{average_stages, run_cil, run_cuil, ProtocolConfig, Scenario, StageRecord};
use cspnn::rng::Xoshiro256;
use cspnn::{
    build_static, ClassLabel, CsPnnModel, FeatureVector, LabeledDataset, UnitId,
};

// ---------------------------------------------------------------- data --

fn data_root() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("CSPNN_DATA_DIR") {
        let p = PathBuf::from(dir);
        return p.exists().then_some(p);
    }
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    p.exists().then_some(p)
}

fn manifest_path(root: &Path) -> PathBuf {
    let local = root.join("datasets.toml");
    if local.exists() {
        local
    } else {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../datasets.toml")
    }
}

/// `Ok(None)` when the dataset's files are not available; `Err` when they
/// exist but fail to load.
fn load_dataset_pair(
    name: &str,
) -> cspnn::Result<Option<(LabeledDataset, LabeledDataset)>> {
    let Some(root) = data_root() else {
        return Ok(None);
    };
    let manifest = Manifest::from_path(&manifest_path(&root))?;
    let Some(spec) = manifest.get(name) else {
        return Ok(None);
    };
    let present = match &spec.source {
        cspnn::data_io::DataSource::Csv { train, test, .. } => {
            resolve(&root, train).exists() && resolve(&root, test).exists()
        }
        cspnn::data_io::DataSource::Idx {
            train_images,
            train_labels,
            test_images,
            test_labels,
        } => {
            resolve(&root, train_images).exists()
                && resolve(&root, train_labels).exists()
                && resolve(&root, test_images).exists()
                && resolve(&root, test_labels).exists()
        }
    };
    if !present {
        return Ok(None);
    }
    let (train, test, _params) = load_normalized(spec, &root)?;
    Ok(Some((train, test)))
}

fn resolve(root: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_owned()
    } else {
        root.join(p)
    }
}

fn skip(criterion: &str, dataset: &str) {
    println!(
        "[criterion {criterion}] SKIP: dataset {dataset:?} not found \
         (set CSPNN_DATA_DIR or populate ./data, see README)"
    );
}

// ----------------------------------------------------- criteria 1 and 2 --

struct StandardExpectation {
    dataset: &'static str,
    accuracy: f64,
    hidden: f64,
}

const ORIGINAL_PNN_EXPECTED: [StandardExpectation; 4] = [
    StandardExpectation { dataset: "optdigits", accuracy: 98.39, hidden: 3823.0 },
    StandardExpectation { dataset: "pendigits", accuracy: 94.25, hidden: 7494.0 },
    StandardExpectation { dataset: "segmentation", accuracy: 85.33, hidden: 210.0 },
    StandardExpectation { dataset: "ionosphere", accuracy: 85.43, hidden: 200.0 },
];

const CSPNN_EXPECTED: [StandardExpectation; 4] = [
    StandardExpectation { dataset: "optdigits", accuracy: 95.05, hidden: 188.0 },
    StandardExpectation { dataset: "pendigits", accuracy: 95.05, hidden: 263.0 },
    StandardExpectation { dataset: "segmentation", accuracy: 82.81, hidden: 49.0 },
    StandardExpectation { dataset: "ionosphere", accuracy: 90.07, hidden: 92.0 },
];

const ORIGINAL_ACC_TOLERANCE: f64 = 1.5;
const CSPNN_ACC_TOLERANCE: f64 = 3.0;
const HIDDEN_RELATIVE_TOLERANCE: f64 = 0.40;
const ORIGINAL_RUNTIME_LIMIT_SECS: f64 = 120.0;
const CSPNN_RUNTIME_LIMIT_SECS: f64 = 60.0;

#[test]
fn criterion_1_original_pnn_standard_tasks() {
    let started = Instant::now();
    let mut lines = Vec::new();
    for expect in &ORIGINAL_PNN_EXPECTED {
        let Some((train, test)) = load_dataset_pair(expect.dataset).unwrap() else {
            skip("1", expect.dataset);
            return;
        };
        let model = build_static(&train).unwrap();
        assert_eq!(
            model.hidden_count(),
            train.len(),
            "{}: original PNN must accommodate every training sample",
            expect.dataset
        );
        let report = model.evaluate(&test).unwrap();
        let accuracy = report.accuracy();
        assert!(
            (accuracy - expect.accuracy).abs() <= ORIGINAL_ACC_TOLERANCE,
            "{}: original PNN accuracy {accuracy:.2}% outside {} +/- {}",
            expect.dataset,
            expect.accuracy,
            ORIGINAL_ACC_TOLERANCE
        );
        lines.push(format!(
            "{} {:.2}% (expected {:.2}) N_h={}",
            expect.dataset,
            accuracy,
            expect.accuracy,
            model.hidden_count()
        ));
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < ORIGINAL_RUNTIME_LIMIT_SECS,
        "original PNN suite took {elapsed:.1}s, limit {ORIGINAL_RUNTIME_LIMIT_SECS}s"
    );
    println!(
        "[criterion 1] PASS: original PNN standard tasks in {elapsed:.1}s: {}",
        lines.join("; ")
    );
}

#[test]
fn criterion_2_cspnn_standard_tasks() {
    let started = Instant::now();
    let mut lines = Vec::new();
    for expect in &CSPNN_EXPECTED {
        let Some((train, test)) = load_dataset_pair(expect.dataset).unwrap() else {
            skip("2", expect.dataset);
            return;
        };
        let mut model = CsPnnModel::new(train.dimension());
        model.construct(&train).unwrap();
        assert!(
            model.hidden_count() < train.len(),
            "{}: compact model must stay below one unit per sample",
            expect.dataset
        );
        let hidden = model.hidden_count() as f64;
        assert!(
            (hidden - expect.hidden).abs() <= HIDDEN_RELATIVE_TOLERANCE * expect.hidden,
            "{}: N_h {hidden} outside {} +/- 40%",
            expect.dataset,
            expect.hidden
        );
        let report = model.evaluate(&test).unwrap();
        let accuracy = report.accuracy();
        assert!(
            (accuracy - expect.accuracy).abs() <= CSPNN_ACC_TOLERANCE,
            "{}: accuracy {accuracy:.2}% outside {} +/- {}",
            expect.dataset,
            expect.accuracy,
            CSPNN_ACC_TOLERANCE
        );
        lines.push(format!(
            "{} {:.2}% (expected {:.2}) N_h={} (expected {})",
            expect.dataset, accuracy, expect.accuracy, hidden, expect.hidden
        ));
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < CSPNN_RUNTIME_LIMIT_SECS,
        "CS-PNN suite took {elapsed:.1}s, limit {CSPNN_RUNTIME_LIMIT_SECS}s"
    );
    println!(
        "[criterion 2] PASS: CS-PNN standard tasks in {elapsed:.1}s: {}",
        lines.join("; ")
    );
}

// ---------------------------------------------------------- criterion 3 --

const CIL_RUNS: usize = 10;
const CIL_BASE_SEED: u64 = 42;
const CIL_ACC_TOLERANCE: f64 = 4.0;

struct CilExpectation {
    dataset: &'static str,
    task: u32,
    accuracy: f64,
    hidden: f64,
}

const CIL_EXPECTED: [CilExpectation; 3] = [
    CilExpectation { dataset: "optdigits", task: 1, accuracy: 91.7, hidden: 116.0 },
    CilExpectation { dataset: "optdigits", task: 4, accuracy: 93.3, hidden: 137.0 },
    CilExpectation { dataset: "pendigits", task: 1, accuracy: 92.1, hidden: 200.0 },
];

fn final_stage_average(train: &LabeledDataset, test: &LabeledDataset, dataset: &str, task: u32) -> StageRecord {
    let mut cfg = ProtocolConfig::new(dataset, Scenario::Cil { group_size: task });
    cfg.runs = CIL_RUNS;
    cfg.base_seed = CIL_BASE_SEED;
    let records = run_cil(train, test, &cfg).unwrap();
    average_stages(&records)
        .into_iter()
        .last()
        .expect("at least one averaged stage")
}

#[test]
fn criterion_3_cil_final_stage_averages() {
    let mut cache: std::collections::HashMap<&str, (LabeledDataset, LabeledDataset)> =
        std::collections::HashMap::new();
    for name in ["optdigits", "pendigits"] {
        match load_dataset_pair(name).unwrap() {
            Some(pair) => {
                cache.insert(name, pair);
            }
            None => {
                skip("3", name);
                return;
            }
        }
    }

    let mut lines = Vec::new();
    for expect in &CIL_EXPECTED {
        let (train, test) = &cache[expect.dataset];
        let record = final_stage_average(train, test, expect.dataset, expect.task);
        assert!(
            (record.accuracy - expect.accuracy).abs() <= CIL_ACC_TOLERANCE,
            "{} task{}: averaged accuracy {:.2}% outside {} +/- {}",
            expect.dataset,
            expect.task,
            record.accuracy,
            expect.accuracy,
            CIL_ACC_TOLERANCE
        );
        assert!(
            (record.hidden_count - expect.hidden).abs()
                <= HIDDEN_RELATIVE_TOLERANCE * expect.hidden,
            "{} task{}: averaged N_h {:.1} outside {} +/- 40%",
            expect.dataset,
            expect.task,
            record.hidden_count,
            expect.hidden
        );
        lines.push(format!(
            "{} task{} {:.2}%/{:.1} (expected {}/{})",
            expect.dataset,
            expect.task,
            record.accuracy,
            record.hidden_count,
            expect.accuracy,
            expect.hidden
        ));
    }

    // More classes per increment must not cost accuracy (within a point).
    for name in ["optdigits", "pendigits"] {
        let (train, test) = &cache[name];
        let task1 = final_stage_average(train, test, name, 1);
        let task4 = final_stage_average(train, test, name, 4);
        assert!(
            task4.accuracy >= task1.accuracy - 1.0,
            "{name}: task4 final accuracy {:.2}% fell more than 1 point below task1 {:.2}%",
            task4.accuracy,
            task1.accuracy
        );
        lines.push(format!(
            "{name} trend task4 {:.2}% vs task1 {:.2}%",
            task4.accuracy, task1.accuracy
        ));
    }
    println!("[criterion 3] PASS: {}", lines.join("; "));
}

// ---------------------------------------------------------- criterion 4 --

const CUIL_RUNS: usize = 10;
const CUIL_RATIO_LOW: f64 = 0.3;
const CUIL_RATIO_HIGH: f64 = 0.7;
const CUIL_ACC_DRIFT_LIMIT: f64 = 6.0;

#[test]
fn criterion_4_cuil_hidden_ratio_and_accuracy_drift() {
    let Some((train, test)) = load_dataset_pair("pendigits").unwrap() else {
        skip("4", "pendigits");
        return;
    };
    let mut cfg = ProtocolConfig::new("pendigits", Scenario::Cuil { divisor: 2 });
    cfg.runs = CUIL_RUNS;
    cfg.base_seed = CIL_BASE_SEED;
    let records = run_cuil(&train, &test, &cfg).unwrap();
    let averaged = average_stages(&records);

    let stage = |name: &str| -> &StageRecord {
        averaged
            .iter()
            .find(|r| r.stage == name)
            .unwrap_or_else(|| panic!("missing averaged stage {name}"))
    };
    let initial = stage("Ini.");

    let mut lines = vec![format!("Ini. {:.2}%/{:.1}", initial.accuracy, initial.hidden_count)];
    for i in 1..=cfg.unlearn_iterations {
        let unlearned = stage(&format!("{i}U"));
        let relearned = stage(&format!("{i}C"));
        let ratio = unlearned.hidden_count / relearned.hidden_count;
        assert!(
            (CUIL_RATIO_LOW..=CUIL_RATIO_HIGH).contains(&ratio),
            "iteration {i}: post-unlearn/post-relearn N_h ratio {ratio:.3} outside \
             [{CUIL_RATIO_LOW}, {CUIL_RATIO_HIGH}]"
        );
        let drift = (relearned.accuracy - initial.accuracy).abs();
        assert!(
            drift <= CUIL_ACC_DRIFT_LIMIT,
            "iteration {i}: relearned accuracy {:.2}% drifted {drift:.2} points from \
             initial {:.2}% (limit {CUIL_ACC_DRIFT_LIMIT})",
            relearned.accuracy,
            initial.accuracy
        );
        lines.push(format!(
            "{i}U/{i}C ratio {ratio:.3}, {i}C {:.2}%",
            relearned.accuracy
        ));
    }
    println!("[criterion 4] PASS: cuil pendigits j=2: {}", lines.join("; "));
}

// ---------------------------------------------------------- criterion 5 --

fn fv(values: &[f64]) -> FeatureVector {
    FeatureVector::new(values.to_vec()).unwrap()
}

fn toy(dimension: usize, rows: &[(&[f64], &str)]) -> LabeledDataset {
    LabeledDataset::from_samples(
        dimension,
        rows.iter()
            .map(|(x, l)| (fv(x), ClassLabel::from(*l)))
            .collect(),
    )
    .unwrap()
}

/// `(label, subnet, centroid)` triples the constructed model must match,
/// in hidden-layer order. Expected values were hand-traced through the
/// construction algorithm step by step and cross-checked against an
/// independent reference implementation.
fn assert_model(model: &CsPnnModel, labels: &[&str], units: &[(u64, usize, &[f64])]) {
    let observed: Vec<&str> = model.outputs().iter().map(|o| o.label().as_str()).collect();
    assert_eq!(observed, labels, "output labels");
    assert_eq!(model.hidden_count(), units.len(), "hidden count");
    for (unit, (id, subnet, centroid)) in model.hidden_units().iter().zip(units) {
        assert_eq!(unit.id().0, *id, "unit id");
        assert_eq!(unit.subnet(), *subnet, "unit subnet");
        assert_eq!(unit.centroid().values(), *centroid, "unit centroid");
    }
}

#[test]
fn criterion_5_hand_traced_construction() {
    // Trace A: 1-D, correct classification moves the nearest centroid to
    // the midpoint; no growth.
    let mut model = CsPnnModel::new(1);
    model
        .construct(&toy(1, &[(&[-1.0], "A"), (&[1.0], "B"), (&[-0.8], "A")]))
        .unwrap();
    assert_model(
        &model,
        &["A", "B"],
        &[(0, 0, &[-0.9]), (1, 1, &[1.0])],
    );

    // Trace B: 2-D crowding, misclassification in both directions grows
    // units into the true class's subnet; later correct samples nudge.
    //   s3 (3.9,0) A scores A=0.018316 B=0.997374 -> grow A-unit
    //   s4 (4.1,0) B scores A=1.008843 B=0.997623 -> grow B-unit
    //   s5 (0.2,0) A correct -> unit0 to (0.1, 0)
    //   s6 (4.0,0) B correct -> unit1 midpoint with itself (unchanged)
    let mut model = CsPnnModel::new(2);
    model
        .construct(&toy(
            2,
            &[
                (&[0.0, 0.0], "A"),
                (&[4.0, 0.0], "B"),
                (&[3.9, 0.0], "A"),
                (&[4.1, 0.0], "B"),
                (&[0.2, 0.0], "A"),
                (&[4.0, 0.0], "B"),
            ],
        ))
        .unwrap();
    assert_model(
        &model,
        &["A", "B"],
        &[
            (0, 0, &[0.1, 0.0]),
            (1, 1, &[4.0, 0.0]),
            (2, 0, &[3.9, 0.0]),
            (3, 1, &[4.1, 0.0]),
        ],
    );

    // Trace C: 3 classes; duplicate of the seed exercises the degenerate
    // (d_max = 0) radius, then new classes, midpoint updates and a final
    // misclassification between neighboring clusters.
    //   s2 (0,0) A duplicate -> degenerate radius, correct, no change
    //   s5 (2.2,2) B correct -> unit1 to (2.1, 2)
    //   s6 (0,1.8) A correct -> unit0 to (0, 0.9)
    //   s7 (-2.2,2) C correct -> unit2 to (-2.1, 2)
    //   s8 (1.4,0.9) A scores A=0.269672 B=0.320876 -> grow A-unit
    let mut model = CsPnnModel::new(2);
    model
        .construct(&toy(
            2,
            &[
                (&[0.0, 0.0], "A"),
                (&[0.0, 0.0], "A"),
                (&[2.0, 2.0], "B"),
                (&[-2.0, 2.0], "C"),
                (&[2.2, 2.0], "B"),
                (&[0.0, 1.8], "A"),
                (&[-2.2, 2.0], "C"),
                (&[1.4, 0.9], "A"),
            ],
        ))
        .unwrap();
    assert_model(
        &model,
        &["A", "B", "C"],
        &[
            (0, 0, &[0.0, 0.9]),
            (1, 1, &[2.1, 2.0]),
            (2, 2, &[-2.1, 2.0]),
            (3, 0, &[1.4, 0.9]),
        ],
    );

    println!("[criterion 5] PASS: three hand-traced constructions match exactly");
}

// ------------------------------------------------- random-model helpers --

struct RandomCase {
    model: CsPnnModel,
    labels: Vec<ClassLabel>,
}

/// Random model with every class owning at least one unit: dimensions
/// 1..=8, classes 1..=5, units up to 20, centroids uniform in [-1, 1].
fn random_model(rng: &mut Xoshiro256) -> RandomCase {
    let dimension = 1 + rng.next_index(8);
    let classes = 1 + rng.next_index(5);
    let units = classes + rng.next_index(21 - classes);
    let labels: Vec<ClassLabel> = (0..classes)
        .map(|k| ClassLabel::new(format!("k{k}")))
        .collect();
    let mut parts = Vec::with_capacity(units);
    for j in 0..units {
        let subnet = if j < classes { j } else { rng.next_index(classes) };
        let centroid: Vec<f64> = (0..dimension).map(|_| rng.next_f64() * 2.0 - 1.0).collect();
        parts.push((j as u64, subnet, FeatureVector::new(centroid).unwrap()));
    }
    let model = CsPnnModel::from_parts(dimension, labels.clone(), parts, units as u64).unwrap();
    RandomCase { model, labels }
}

fn random_input(rng: &mut Xoshiro256, dimension: usize) -> FeatureVector {
    FeatureVector::new((0..dimension).map(|_| rng.next_f64() * 3.0 - 1.5).collect()).unwrap()
}

// ---------------------------------------------------------- criterion 6 --

/// Straight-loop recomputation of the adaptive-radius forward pass,
/// written independently of the library implementation.
fn brute_force_forward(model: &CsPnnModel, x: &FeatureVector) -> (Vec<f64>, usize, f64) {
    let mut d2 = Vec::new();
    for unit in model.hidden_units() {
        let mut acc = 0.0;
        for (a, b) in unit.centroid().values().iter().zip(x.values()) {
            acc += (a - b) * (a - b);
        }
        d2.push(acc);
    }
    let d_max = d2.iter().cloned().fold(f64::NEG_INFINITY, f64::max).sqrt();
    let sigma = d_max / model.class_count() as f64;
    let mut scores = vec![0.0; model.class_count()];
    for (unit, dd) in model.hidden_units().iter().zip(&d2) {
        scores[unit.subnet()] += (-dd / (sigma * sigma)).exp();
    }
    let mut best = 0;
    for (k, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = k;
        }
    }
    (scores, best, d_max)
}

#[test]
fn criterion_6_brute_force_forward_oracle() {
    let mut rng = Xoshiro256::new(0x6_0001);
    let mut checked = 0usize;
    for _ in 0..100 {
        let case = random_model(&mut rng);
        for _ in 0..100 {
            let x = random_input(&mut rng, case.model.dimension());
            let (scores, best, d_max) = brute_force_forward(&case.model, &x);
            let forward = case.model.forward(&x).unwrap();
            assert_eq!(forward.predicted, best, "argmax diverged");
            assert_eq!(forward.scores.len(), scores.len());
            for (a, b) in forward.scores.iter().zip(&scores) {
                let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                assert!(
                    (a - b).abs() / scale <= 1e-12,
                    "score {a} vs oracle {b} beyond 1e-12 relative"
                );
            }
            assert!((forward.d_max - d_max).abs() <= 1e-12 * d_max.max(1.0));
            checked += 1;
        }
    }
    assert_eq!(checked, 10_000);
    println!("[criterion 6] PASS: {checked} forward passes match the straight-loop oracle");
}

// ---------------------------------------------------------- criterion 7 --

#[test]
fn criterion_7_near_zero_radius_is_nearest_centroid() {
    let mut rng = Xoshiro256::new(0x7_0001);
    let mut checked = 0usize;
    while checked < 100 {
        let case = random_model(&mut rng);
        let x = random_input(&mut rng, case.model.dimension());

        // Independent 1-NN oracle over the centroids.
        let mut nearest = 0usize;
        let mut nearest_d2 = f64::INFINITY;
        for (j, unit) in case.model.hidden_units().iter().enumerate() {
            let mut d2 = 0.0;
            for (a, b) in unit.centroid().values().iter().zip(x.values()) {
                d2 += (a - b) * (a - b);
            }
            if d2 < nearest_d2 {
                nearest_d2 = d2;
                nearest = j;
            }
        }
        let expected = case.model.hidden_units()[nearest].subnet();

        let d_max = case.model.max_centroid_distance(&x).unwrap();
        assert!(d_max > 0.0);
        let forward = case.model.forward_with_sigma(&x, 1e-3 * d_max).unwrap();
        assert_eq!(
            forward.predicted, expected,
            "sigma -> 0 limit must classify by nearest centroid"
        );
        checked += 1;
    }
    println!("[criterion 7] PASS: {checked} near-zero-radius predictions equal 1-NN");
}

// ---------------------------------------------------------- criterion 8 --

#[test]
fn criterion_8_unlearning_algebra() {
    let mut rng = Xoshiro256::new(0x8_0001);
    let mut class_cases = 0usize;
    let mut unit_cases = 0usize;

    for _ in 0..200 {
        let case = random_model(&mut rng);

        if case.labels.len() >= 2 {
            // Remove a strict subset of classes.
            let remove_count = 1 + rng.next_index(case.labels.len() - 1);
            let removed: Vec<ClassLabel> = rng
                .sample_indices(case.labels.len(), remove_count)
                .into_iter()
                .map(|i| case.labels[i].clone())
                .collect();
            let removed_set: BTreeSet<&ClassLabel> = removed.iter().collect();

            let expected_ids: BTreeSet<u64> = case
                .model
                .hidden_units()
                .iter()
                .filter(|u| !removed_set.contains(case.model.label_of(u.subnet())))
                .map(|u| u.id().0)
                .collect();

            let mut model = case.model.clone();
            let k_before = model.class_count();
            model.unlearn_classes(&removed).unwrap();
            assert_eq!(model.class_count(), k_before - removed.len());

            let remaining_ids: BTreeSet<u64> =
                model.hidden_units().iter().map(|u| u.id().0).collect();
            assert_eq!(remaining_ids, expected_ids, "exactly the subnet's units go");
            for label in &removed {
                assert!(model.output_index(label).is_none());
            }
            if model.hidden_count() > 0 {
                for _ in 0..20 {
                    let x = random_input(&mut rng, model.dimension());
                    let predicted = model.label_of(model.forward(&x).unwrap().predicted);
                    assert!(
                        !removed_set.contains(predicted),
                        "prediction emitted an unlearned label"
                    );
                }
            }
            class_cases += 1;
        }

        // Instance-wise removal: j drops by the id count, outputs stay.
        let total = case.model.hidden_count();
        let remove_units = rng.next_index(total + 1);
        let ids: Vec<UnitId> = rng
            .sample_indices(total, remove_units)
            .into_iter()
            .map(|i| case.model.hidden_units()[i].id())
            .collect();
        let mut model = case.model.clone();
        let removed = model.unlearn_units(&ids).unwrap();
        assert_eq!(removed, ids.len());
        assert_eq!(model.hidden_count(), total - ids.len());
        assert_eq!(model.class_count(), case.model.class_count());
        let outputs_before: Vec<&ClassLabel> =
            case.model.outputs().iter().map(|o| o.label()).collect();
        let outputs_after: Vec<&ClassLabel> =
            model.outputs().iter().map(|o| o.label()).collect();
        assert_eq!(outputs_before, outputs_after);
        unit_cases += 1;
    }

    println!(
        "[criterion 8] PASS: unlearning algebra held on {class_cases} class and \
         {unit_cases} unit removals"
    );
}
