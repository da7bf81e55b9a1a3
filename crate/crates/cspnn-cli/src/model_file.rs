//! Versioned binary model persistence.
//!
//! Layout (version 1, all integers little-endian):
//!
//! ```text
//! magic            4 bytes  "CSPN"
//! version          u16
//! dimension        u32
//! dataset name     u32 length + UTF-8 bytes
//! normalization    u8 flag; if 1: dimension x (f64 min, f64 max)
//! output units     u32 count; per unit: u32 length + UTF-8 label
//! hidden units     u32 count; per unit: u64 id, u32 subnet,
//!                  dimension x f64 centroid
//! next unit id     u64
//! ```
//!
//! Centroids round-trip bit-exactly (raw f64 bits), so a loaded model
//! classifies identically to the saved one. Saving writes to a temp file
//! in the target directory and renames it into place.

use std::io::Cursor;
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use cspnn::data_io::NormalizationParams;
use cspnn::{ClassLabel, CsPnnModel, Error, FeatureVector, Result};

const MAGIC: [u8; 4] = *b"CSPN";
const VERSION: u16 = 1;

/// Creation metadata stored alongside the network.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelMeta {
    pub dataset: String,
    /// Training-time feature transform, applied automatically at test
    /// time when present.
    pub normalization: Option<NormalizationParams>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: CsPnnModel,
    pub meta: ModelMeta,
}

impl ModelFile {
    pub fn new(model: CsPnnModel, meta: ModelMeta) -> Self {
        ModelFile { model, meta }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&MAGIC);
        out.write_u16::<LittleEndian>(VERSION).unwrap();
        out.write_u32::<LittleEndian>(self.model.dimension() as u32)
            .unwrap();

        write_string(&mut out, &self.meta.dataset);
        match &self.meta.normalization {
            None => out.push(0),
            Some(params) => {
                out.push(1);
                for (lo, hi) in params.ranges() {
                    out.write_f64::<LittleEndian>(*lo).unwrap();
                    out.write_f64::<LittleEndian>(*hi).unwrap();
                }
            }
        }

        out.write_u32::<LittleEndian>(self.model.class_count() as u32)
            .unwrap();
        for output in self.model.outputs() {
            write_string(&mut out, output.label().as_str());
        }

        out.write_u32::<LittleEndian>(self.model.hidden_count() as u32)
            .unwrap();
        for unit in self.model.hidden_units() {
            out.write_u64::<LittleEndian>(unit.id().0).unwrap();
            out.write_u32::<LittleEndian>(unit.subnet() as u32).unwrap();
            for v in unit.centroid().values() {
                out.write_f64::<LittleEndian>(*v).unwrap();
            }
        }
        out.write_u64::<LittleEndian>(self.model.next_unit_id())
            .unwrap();
        out
    }

    pub fn from_bytes(bytes: &[u8], origin: &Path) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            path: origin.to_owned(),
            line: 0,
            message: msg.to_owned(),
        };
        let mut cur = Cursor::new(bytes);

        let mut magic = [0u8; 4];
        std::io::Read::read_exact(&mut cur, &mut magic).map_err(|_| bad("truncated header"))?;
        if magic != MAGIC {
            return Err(bad("not a model file (bad magic)"));
        }
        let version = cur
            .read_u16::<LittleEndian>()
            .map_err(|_| bad("truncated header"))?;
        if version != VERSION {
            return Err(bad(&format!("unsupported model version {version}")));
        }
        let dimension = cur
            .read_u32::<LittleEndian>()
            .map_err(|_| bad("truncated header"))? as usize;

        let dataset = read_string(&mut cur).ok_or_else(|| bad("truncated dataset name"))?;
        let norm_flag = cur.read_u8().map_err(|_| bad("truncated header"))?;
        let normalization = match norm_flag {
            0 => None,
            1 => {
                let mut ranges = Vec::with_capacity(dimension);
                for _ in 0..dimension {
                    let lo = cur
                        .read_f64::<LittleEndian>()
                        .map_err(|_| bad("truncated normalization block"))?;
                    let hi = cur
                        .read_f64::<LittleEndian>()
                        .map_err(|_| bad("truncated normalization block"))?;
                    ranges.push((lo, hi));
                }
                Some(NormalizationParams::from_ranges(ranges)?)
            }
            _ => return Err(bad("bad normalization flag")),
        };

        let output_count = cur
            .read_u32::<LittleEndian>()
            .map_err(|_| bad("truncated output block"))? as usize;
        let mut labels = Vec::with_capacity(output_count);
        for _ in 0..output_count {
            let label = read_string(&mut cur).ok_or_else(|| bad("truncated output label"))?;
            labels.push(ClassLabel::new(label));
        }

        let hidden_count = cur
            .read_u32::<LittleEndian>()
            .map_err(|_| bad("truncated hidden block"))? as usize;
        let mut units = Vec::with_capacity(hidden_count);
        for _ in 0..hidden_count {
            let id = cur
                .read_u64::<LittleEndian>()
                .map_err(|_| bad("truncated hidden unit"))?;
            let subnet = cur
                .read_u32::<LittleEndian>()
                .map_err(|_| bad("truncated hidden unit"))? as usize;
            let mut values = Vec::with_capacity(dimension);
            for _ in 0..dimension {
                values.push(
                    cur.read_f64::<LittleEndian>()
                        .map_err(|_| bad("truncated centroid"))?,
                );
            }
            units.push((id, subnet, FeatureVector::new(values)?));
        }
        let next_unit_id = cur
            .read_u64::<LittleEndian>()
            .map_err(|_| bad("truncated trailer"))?;

        let model = CsPnnModel::from_parts(dimension, labels, units, next_unit_id)?;
        Ok(ModelFile {
            model,
            meta: ModelMeta {
                dataset,
                normalization,
            },
        })
    }

    /// Atomic save: write a temp file next to `path`, then rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
            .map_err(|e| Error::Io {
                path: path.to_owned(),
                source: e,
            })?;
        std::io::Write::write_all(&mut tmp, &self.to_bytes()).map_err(|e| Error::Io {
            path: path.to_owned(),
            source: e,
        })?;
        tmp.persist(path).map_err(|e| Error::Io {
            path: path.to_owned(),
            source: e.error,
        })?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io {
            path: path.to_owned(),
            source: e,
        })?;
        Self::from_bytes(&bytes, path)
    }

    /// Inspection-friendly JSON rendering of the full model.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "version": VERSION,
            "dimension": self.model.dimension(),
            "dataset": self.meta.dataset,
            "normalization": self.meta.normalization.as_ref().map(|p| {
                p.ranges()
                    .iter()
                    .map(|(lo, hi)| serde_json::json!({"min": lo, "max": hi}))
                    .collect::<Vec<_>>()
            }),
            "outputs": self
                .model
                .outputs()
                .iter()
                .enumerate()
                .map(|(k, o)| serde_json::json!({"index": k, "label": o.label().as_str()}))
                .collect::<Vec<_>>(),
            "hidden": self
                .model
                .hidden_units()
                .iter()
                .map(|u| {
                    serde_json::json!({
                        "id": u.id().0,
                        "subnet": u.subnet(),
                        "centroid": u.centroid().values(),
                    })
                })
                .collect::<Vec<_>>(),
            "next_unit_id": self.model.next_unit_id(),
        })
    }
}

fn write_string(out: &mut Vec<u8>, s: &str) {
    out.write_u32::<LittleEndian>(s.len() as u32).unwrap();
    out.extend_from_slice(s.as_bytes());
}

fn read_string(cur: &mut Cursor<&[u8]>) -> Option<String> {
    let len = cur.read_u32::<LittleEndian>().ok()? as usize;
    let start = cur.position() as usize;
    let bytes = cur.get_ref().get(start..start + len)?;
    let s = String::from_utf8(bytes.to_vec()).ok()?;
    cur.set_position((start + len) as u64);
    Some(s)
}
