//! CSV ingestion. Files are comma-separated numeric features plus one
//! label column; a non-numeric first row (in its feature columns) is
//! treated as a header and skipped. Labels are taken verbatim.

use std::path::Path;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::model::{ClassLabel, FeatureVector};

use super::LabelPosition;

pub fn load_csv(path: &Path, label: LabelPosition) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => Error::parse(path, 0, format!("{other:?}")),
        })?;

    let mut expected_fields: Option<usize> = None;
    let mut dataset: Option<LabeledDataset> = None;
    let mut first_row = true;

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }

        match expected_fields {
            None => expected_fields = Some(record.len()),
            Some(n) if record.len() != n => {
                return Err(Error::parse(
                    path,
                    line,
                    format!("expected {n} fields, got {}", record.len()),
                ));
            }
            Some(_) => {}
        }

        let label_index = label.resolve(record.len()).ok_or_else(|| {
            Error::parse(
                path,
                line,
                format!("label column out of range for {} fields", record.len()),
            )
        })?;

        let mut values = Vec::with_capacity(record.len() - 1);
        let mut bad_cell: Option<usize> = None;
        for (i, cell) in record.iter().enumerate() {
            if i == label_index {
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    bad_cell = Some(i);
                    break;
                }
            }
        }

        if let Some(column) = bad_cell {
            if first_row {
                // Header row; field count restarts with the first data row.
                expected_fields = None;
                first_row = false;
                continue;
            }
            return Err(Error::parse(
                path,
                line,
                format!("column {} is not a finite number", column + 1),
            ));
        }
        first_row = false;

        let truth = ClassLabel::new(record.get(label_index).unwrap_or(""));
        let x = FeatureVector::new(values)?;
        match &mut dataset {
            None => {
                let mut d = LabeledDataset::new(x.len());
                d.push(x, truth)?;
                dataset = Some(d);
            }
            Some(d) => d.push(x, truth)?,
        }
    }

    dataset.ok_or_else(|| Error::parse(path, 0, "no data rows"))
}
