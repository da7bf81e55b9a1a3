//! `cspnn` command line: dataset-driven train/test/unlearn lifecycle with
//! model persistence, plus one-command reproduction of the benchmark
//! scenarios.
//!
//! Exit codes: 0 success, 1 usage or invalid parameters, 2 I/O or parse
//! failure, 3 contract violation (dimension mismatch, unknown label or
//! unit id, empty model, ...).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use cspnn::data_io::{
    apply_normalizer, fit_normalizer, load_dataset, load_normalized, split_by_classes, Manifest,
};
use cspnn::protocols::{self, average_stages, ProtocolConfig, Scenario, StageRecord};
use cspnn::{ClassLabel, CsPnnModel, EvalReport, LabeledDataset, UnitId};
use cspnn_cli::{ModelFile, ModelMeta};

#[derive(Parser)]
#[command(name = "cspnn", version, about = "Compact-sized PNN classifier toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a model from a dataset's training split (optionally
    /// continuing from an existing model).
    Train {
        /// Dataset name from the manifest.
        dataset: String,
        /// Where to write the model file.
        #[arg(long)]
        out: PathBuf,
        /// Existing model to grow incrementally.
        #[arg(long = "model-in")]
        model_in: Option<PathBuf>,
        /// Restrict training to these classes (comma-separated labels).
        #[arg(long, value_delimiter = ',')]
        classes: Option<Vec<String>>,
        #[command(flatten)]
        sources: SourceArgs,
    },
    /// Evaluate a model on a dataset split and print the report.
    Test {
        model: PathBuf,
        dataset: String,
        /// Which split to evaluate.
        #[arg(long, value_enum, default_value_t = Split::Test)]
        split: Split,
        /// Write per-sample predictions to this file.
        #[arg(long)]
        predictions: Option<PathBuf>,
        /// Format for the predictions file.
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[command(flatten)]
        sources: SourceArgs,
    },
    /// Remove classes or individual hidden units from a model.
    Unlearn {
        model_in: PathBuf,
        /// Where to write the modified model.
        #[arg(long)]
        out: PathBuf,
        /// Class labels to remove (whole subnets), comma-separated.
        #[arg(long, value_delimiter = ',')]
        classes: Option<Vec<String>>,
        /// Hidden-unit ids to remove, comma-separated.
        #[arg(long, value_delimiter = ',')]
        units: Option<Vec<u64>>,
    },
    /// Run a benchmark scenario and emit stage records.
    Bench {
        #[arg(value_enum)]
        scenario: ScenarioArg,
        /// Dataset name from the manifest.
        dataset: String,
        /// Classes added per increment (1-4), class-incremental only.
        #[arg(long)]
        task: Option<u32>,
        /// Unlearn divisor (2-4), unlearn-relearn only.
        #[arg(long)]
        j: Option<u32>,
        /// Seeded repetitions to average over.
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for the CSV/JSON record files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also run the original (one unit per sample) PNN baseline.
        #[arg(long)]
        baseline: bool,
        #[command(flatten)]
        sources: SourceArgs,
    },
    /// Print a saved model's structure.
    Inspect {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = InspectFormat::Text)]
        format: InspectFormat,
    },
}

#[derive(Debug, Clone, clap::Args)]
struct SourceArgs {
    /// Manifest path (default: <data dir>/datasets.toml, else ./datasets.toml).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Dataset root for relative manifest paths (default: $CSPNN_DATA_DIR,
    /// else the manifest's directory).
    #[arg(long = "data-dir")]
    data_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Split {
    Train,
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InspectFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScenarioArg {
    Standard,
    Cil,
    Cuil,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &cspnn::Error) -> i32 {
    if err.is_config() {
        1
    } else if err.is_io_or_parse() {
        2
    } else {
        3
    }
}

fn run(cli: Cli) -> cspnn::Result<()> {
    match cli.command {
        Command::Train {
            dataset,
            out,
            model_in,
            classes,
            sources,
        } => cmd_train(&dataset, &out, model_in.as_deref(), classes, &sources),
        Command::Test {
            model,
            dataset,
            split,
            predictions,
            format,
            sources,
        } => cmd_test(&model, &dataset, split, predictions.as_deref(), format, &sources),
        Command::Unlearn {
            model_in,
            out,
            classes,
            units,
        } => cmd_unlearn(&model_in, &out, classes, units),
        Command::Bench {
            scenario,
            dataset,
            task,
            j,
            runs,
            seed,
            out,
            baseline,
            sources,
        } => cmd_bench(scenario, &dataset, task, j, runs, seed, out.as_deref(), baseline, &sources),
        Command::Inspect { model, format } => cmd_inspect(&model, format),
    }
}

/// Locates the manifest and the data root the relative paths resolve to.
fn resolve_sources(sources: &SourceArgs) -> cspnn::Result<(Manifest, PathBuf)> {
    let env_dir = std::env::var_os("CSPNN_DATA_DIR").map(PathBuf::from);
    let data_dir = sources.data_dir.clone().or(env_dir);
    let manifest_path = sources.manifest.clone().unwrap_or_else(|| match &data_dir {
        Some(dir) => dir.join("datasets.toml"),
        None => PathBuf::from("datasets.toml"),
    });
    let manifest = Manifest::from_path(&manifest_path)?;
    let root = data_dir.unwrap_or_else(|| {
        manifest_path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_owned)
            .unwrap_or_else(|| PathBuf::from("."))
    });
    Ok((manifest, root))
}

fn lookup<'m>(manifest: &'m Manifest, name: &str) -> cspnn::Result<&'m cspnn::data_io::DatasetSpec> {
    manifest.get(name).ok_or_else(|| {
        let known: Vec<&str> = manifest.names().collect();
        cspnn::Error::Config(format!(
            "unknown dataset {name:?}; manifest lists: {}",
            known.join(", ")
        ))
    })
}

fn filter_classes(data: &LabeledDataset, classes: &[String]) -> cspnn::Result<LabeledDataset> {
    let group: BTreeSet<ClassLabel> = classes.iter().map(|c| ClassLabel::new(c.clone())).collect();
    let mut parts = split_by_classes(data, &[group])?;
    Ok(parts.remove(0))
}

fn cmd_train(
    dataset: &str,
    out: &Path,
    model_in: Option<&Path>,
    classes: Option<Vec<String>>,
    sources: &SourceArgs,
) -> cspnn::Result<()> {
    let (manifest, root) = resolve_sources(sources)?;
    let spec = lookup(&manifest, dataset)?;
    let (raw_train, _) = load_dataset(spec, &root)?;

    let (mut model, meta) = match model_in {
        Some(path) => {
            let file = ModelFile::load(path)?;
            (file.model, file.meta)
        }
        None => {
            let params = fit_normalizer(&raw_train)?;
            (
                CsPnnModel::new(spec.features),
                ModelMeta {
                    dataset: dataset.to_owned(),
                    normalization: Some(params),
                },
            )
        }
    };

    let mut train = match &meta.normalization {
        Some(params) => apply_normalizer(params, &raw_train)?,
        None => raw_train,
    };
    if let Some(classes) = classes {
        train = filter_classes(&train, &classes)?;
    }

    model.construct(&train)?;
    println!(
        "trained on {} samples: hidden units j = {}, classes k = {}",
        train.len(),
        model.hidden_count(),
        model.class_count()
    );
    ModelFile::new(model, meta).save(out)?;
    println!("model written to {}", out.display());
    Ok(())
}

fn cmd_test(
    model_path: &Path,
    dataset: &str,
    split: Split,
    predictions: Option<&Path>,
    format: ReportFormat,
    sources: &SourceArgs,
) -> cspnn::Result<()> {
    let file = ModelFile::load(model_path)?;
    let (manifest, root) = resolve_sources(sources)?;
    let spec = lookup(&manifest, dataset)?;
    let (train, test) = load_dataset(spec, &root)?;
    let raw = match split {
        Split::Train => train,
        Split::Test => test,
    };
    let data = match &file.meta.normalization {
        Some(params) => apply_normalizer(params, &raw)?,
        None => raw,
    };

    let report = file.model.evaluate(&data)?;
    print_report(&report);

    if let Some(path) = predictions {
        write_predictions(&report, path, format)?;
        println!("predictions written to {}", path.display());
    }
    Ok(())
}

fn print_report(report: &EvalReport) {
    println!(
        "accuracy: {:.2}% ({}/{} correct), hidden units: {}, {:.3}s",
        report.accuracy(),
        report.correct,
        report.total,
        report.hidden_count,
        report.elapsed_secs
    );
    println!("per-class:");
    for (label, stats) in &report.per_class {
        let pct = if stats.count == 0 {
            0.0
        } else {
            100.0 * stats.correct as f64 / stats.count as f64
        };
        println!("  {:>12}  {:>6}/{:<6}  {:.2}%", label, stats.correct, stats.count, pct);
    }
}

fn write_predictions(report: &EvalReport, path: &Path, format: ReportFormat) -> cspnn::Result<()> {
    let content = match format {
        ReportFormat::Csv => {
            let mut out = String::from("index,true,predicted\n");
            for (i, (truth, predicted)) in report.predictions.iter().enumerate() {
                out.push_str(&format!("{i},{truth},{predicted}\n"));
            }
            out
        }
        ReportFormat::Json => {
            let rows: Vec<serde_json::Value> = report
                .predictions
                .iter()
                .map(|(t, p)| serde_json::json!({"true": t.as_str(), "predicted": p.as_str()}))
                .collect();
            serde_json::to_string_pretty(&rows).expect("prediction rows serialize")
        }
    };
    std::fs::write(path, content).map_err(|e| cspnn::Error::Io {
        path: path.to_owned(),
        source: e,
    })
}

fn cmd_unlearn(
    model_in: &Path,
    out: &Path,
    classes: Option<Vec<String>>,
    units: Option<Vec<u64>>,
) -> cspnn::Result<()> {
    if classes.is_some() == units.is_some() {
        return Err(cspnn::Error::Config(
            "pass exactly one of --classes or --units".into(),
        ));
    }
    let mut file = ModelFile::load(model_in)?;
    let (j_before, k_before) = (file.model.hidden_count(), file.model.class_count());

    if let Some(classes) = classes {
        let labels: Vec<ClassLabel> = classes.into_iter().map(ClassLabel::new).collect();
        let removed = file.model.unlearn_classes(&labels)?;
        println!("removed {removed} class subnet(s)");
    } else if let Some(units) = units {
        let ids: Vec<UnitId> = units.into_iter().map(UnitId).collect();
        let removed = file.model.unlearn_units(&ids)?;
        println!("removed {removed} hidden unit(s)");
    }

    println!(
        "j: {} -> {}, k: {} -> {}",
        j_before,
        file.model.hidden_count(),
        k_before,
        file.model.class_count()
    );
    file.save(out)?;
    println!("model written to {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    scenario: ScenarioArg,
    dataset: &str,
    task: Option<u32>,
    j: Option<u32>,
    runs: usize,
    seed: u64,
    out: Option<&Path>,
    baseline: bool,
    sources: &SourceArgs,
) -> cspnn::Result<()> {
    let scenario = match scenario {
        ScenarioArg::Standard => Scenario::Standard {
            with_baseline: baseline,
        },
        ScenarioArg::Cil => Scenario::Cil {
            group_size: task.ok_or_else(|| {
                cspnn::Error::Config("cil needs --task <1-4> (classes per increment)".into())
            })?,
        },
        ScenarioArg::Cuil => Scenario::Cuil {
            divisor: j.ok_or_else(|| {
                cspnn::Error::Config("cuil needs --j <2-4> (unlearn divisor)".into())
            })?,
        },
    };

    let (manifest, root) = resolve_sources(sources)?;
    let spec = lookup(&manifest, dataset)?;
    let (train, test, _params) = load_normalized(spec, &root)?;

    let mut cfg = ProtocolConfig::new(dataset, scenario);
    cfg.runs = runs;
    cfg.base_seed = seed;

    let mut records = match scenario {
        Scenario::Standard { .. } => protocols::run_standard(&train, &test, &cfg)?,
        Scenario::Cil { .. } => protocols::run_cil(&train, &test, &cfg)?,
        Scenario::Cuil { .. } => protocols::run_cuil(&train, &test, &cfg)?,
    };
    let averaged = average_stages(&records);
    let summary = if averaged.is_empty() {
        records.clone()
    } else {
        averaged.clone()
    };
    records.extend(averaged);

    print_summary(&summary);

    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| cspnn::Error::Io {
            path: dir.to_owned(),
            source: e,
        })?;
        let base = match scenario {
            Scenario::Standard { .. } => format!("standard_{dataset}"),
            Scenario::Cil { group_size } => format!("cil_{dataset}_task{group_size}"),
            Scenario::Cuil { divisor } => format!("cuil_{dataset}_j{divisor}"),
        };
        let csv_path = dir.join(format!("{base}.csv"));
        let json_path = dir.join(format!("{base}.json"));
        std::fs::write(&csv_path, protocols::to_csv(&records)).map_err(|e| cspnn::Error::Io {
            path: csv_path.clone(),
            source: e,
        })?;
        std::fs::write(&json_path, protocols::to_json(&records)?).map_err(|e| {
            cspnn::Error::Io {
                path: json_path.clone(),
                source: e,
            }
        })?;
        println!(
            "records written to {} and {}",
            csv_path.display(),
            json_path.display()
        );
    }
    Ok(())
}

fn print_summary(rows: &[StageRecord]) {
    println!("{:<14} {:>10} {:>10}", "stage", "acc (%)", "N_h");
    for row in rows {
        println!(
            "{:<14} {:>10.2} {:>10.1}",
            row.stage, row.accuracy, row.hidden_count
        );
    }
}

fn cmd_inspect(model_path: &Path, format: InspectFormat) -> cspnn::Result<()> {
    let file = ModelFile::load(model_path)?;
    match format {
        InspectFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&file.to_json()).expect("model json serializes")
            );
        }
        InspectFormat::Text => {
            println!("dataset: {}", file.meta.dataset);
            println!("dimension: {}", file.model.dimension());
            println!(
                "normalization: {}",
                if file.meta.normalization.is_some() {
                    "stored"
                } else {
                    "none"
                }
            );
            println!(
                "hidden units: {}, classes: {}",
                file.model.hidden_count(),
                file.model.class_count()
            );
            for (k, output) in file.model.outputs().iter().enumerate() {
                let owned = file
                    .model
                    .hidden_units()
                    .iter()
                    .filter(|u| u.subnet() == k)
                    .count();
                println!("  [{k}] {:<12} {owned} unit(s)", output.label().as_str());
            }
        }
    }
    Ok(())
}
