//! IDX image/label ingestion, bit-exact per the MNIST distribution
//! format: big-endian magic, count and dimension headers followed by an
//! unsigned-byte payload. Images are flattened row-major; pixel values
//! are kept raw (normalization is a separate step).

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use byteorder::{BigEndian, ReadBytesExt};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::model::{ClassLabel, FeatureVector};

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

pub fn load_idx(images_path: &Path, labels_path: &Path) -> Result<LabeledDataset> {
    let (images, rows, cols) = read_images(images_path)?;
    let labels = read_labels(labels_path)?;
    if images.len() != labels.len() {
        return Err(Error::parse(
            images_path,
            0,
            format!(
                "{} images but {} labels in {}",
                images.len(),
                labels.len(),
                labels_path.display()
            ),
        ));
    }

    let dimension = rows * cols;
    let mut dataset = LabeledDataset::new(dimension);
    for (pixels, label) in images.into_iter().zip(labels) {
        let values = pixels.into_iter().map(f64::from).collect();
        dataset.push(FeatureVector::new(values)?, ClassLabel::new(label.to_string()))?;
    }
    Ok(dataset)
}

fn read_images(path: &Path) -> Result<(Vec<Vec<u8>>, usize, usize)> {
    let mut reader = open(path)?;
    let magic = read_u32(&mut reader, path)?;
    if magic != IMAGES_MAGIC {
        return Err(Error::parse(
            path,
            0,
            format!("bad image magic {magic:#010x}, expected {IMAGES_MAGIC:#010x}"),
        ));
    }
    let count = read_u32(&mut reader, path)? as usize;
    let rows = read_u32(&mut reader, path)? as usize;
    let cols = read_u32(&mut reader, path)? as usize;

    let mut images = Vec::with_capacity(count);
    for _ in 0..count {
        let mut pixels = vec![0u8; rows * cols];
        reader
            .read_exact(&mut pixels)
            .map_err(|_| Error::parse(path, 0, "truncated image payload"))?;
        images.push(pixels);
    }
    Ok((images, rows, cols))
}

fn read_labels(path: &Path) -> Result<Vec<u8>> {
    let mut reader = open(path)?;
    let magic = read_u32(&mut reader, path)?;
    if magic != LABELS_MAGIC {
        return Err(Error::parse(
            path,
            0,
            format!("bad label magic {magic:#010x}, expected {LABELS_MAGIC:#010x}"),
        ));
    }
    let count = read_u32(&mut reader, path)? as usize;
    let mut labels = vec![0u8; count];
    reader
        .read_exact(&mut labels)
        .map_err(|_| Error::parse(path, 0, "truncated label payload"))?;
    Ok(labels)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn read_u32(reader: &mut BufReader<File>, path: &Path) -> Result<u32> {
    reader
        .read_u32::<BigEndian>()
        .map_err(|_| Error::parse(path, 0, "truncated header"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn idx_images(count: u32, rows: u32, cols: u32, pixels: &[u8]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(&IMAGES_MAGIC.to_be_bytes()).unwrap();
        f.write_all(&count.to_be_bytes()).unwrap();
        f.write_all(&rows.to_be_bytes()).unwrap();
        f.write_all(&cols.to_be_bytes()).unwrap();
        f.write_all(pixels).unwrap();
        f
    }

    fn idx_labels(labels: &[u8]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(&LABELS_MAGIC.to_be_bytes()).unwrap();
        f.write_all(&(labels.len() as u32).to_be_bytes()).unwrap();
        f.write_all(labels).unwrap();
        f
    }

    #[test]
    fn single_image_round_trip() {
        let images = idx_images(1, 2, 3, &[0, 1, 2, 3, 4, 255]);
        let labels = idx_labels(&[7]);
        let d = load_idx(images.path(), labels.path()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.dimension(), 6);
        assert_eq!(d.samples()[0].0.values(), &[0.0, 1.0, 2.0, 3.0, 4.0, 255.0]);
        assert_eq!(d.samples()[0].1.as_str(), "7");
    }

    #[test]
    fn magic_mismatch_is_rejected() {
        let mut bad = tempfile::NamedTempFile::new().unwrap();
        bad.write_all(&0x0000_0801u32.to_be_bytes()).unwrap();
        bad.write_all(&0u32.to_be_bytes()).unwrap();
        bad.write_all(&0u32.to_be_bytes()).unwrap();
        bad.write_all(&0u32.to_be_bytes()).unwrap();
        let labels = idx_labels(&[]);
        assert!(matches!(
            load_idx(bad.path(), labels.path()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn count_mismatch_is_rejected() {
        let images = idx_images(1, 1, 1, &[9]);
        let labels = idx_labels(&[1, 2]);
        assert!(matches!(
            load_idx(images.path(), labels.path()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn truncated_payload_is_rejected() {
        let images = idx_images(2, 2, 2, &[1, 2, 3, 4, 5]); // 3 bytes short
        let labels = idx_labels(&[0, 1]);
        assert!(matches!(
            load_idx(images.path(), labels.path()),
            Err(Error::Parse { .. })
        ));
    }
}
