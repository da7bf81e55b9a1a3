//! Library surface of the CLI crate: the model-file format, re-exported
//! so integration tests and downstream tooling can read and write models
//! without shelling out.

pub mod model_file;

pub use model_file::{ModelFile, ModelMeta};
