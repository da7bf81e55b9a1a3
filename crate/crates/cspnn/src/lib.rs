//! Compact-sized probabilistic neural network (CS-PNN).
//!
//! A CS-PNN is a three-layer RBF classifier that is built in a single
//! pass over the training data with nothing to tune: a hidden unit is
//! added only when a training sample is misclassified, otherwise the
//! nearest same-class centroid is nudged to the midpoint. The one shared
//! kernel radius is re-derived from the data on every pass
//! (`d_max / class_count`), which lets the network grow new class subnets
//! incrementally and unload them again (unlearning) without retraining or
//! stored data.
//!
//! Module map:
//!
//! - [`model`] — network types and the feed-forward math
//! - [`learning`] — one-pass construction, unlearning, evaluation
//! - [`baseline`] — the original every-sample-a-centroid PNN for reference
//! - [`data_io`] — CSV/IDX loading, normalization, class grouping
//! - [`protocols`] — standard / class-incremental / unlearn-relearn
//!   experiment harness with seeded, averaged runs
//! - [`rng`] — pinned PRNG so every seeded run is reproducible forever

pub mod baseline;
pub mod data_io;
pub mod dataset;
pub mod error;
pub mod learning;
pub mod model;
pub mod protocols;
pub mod rng;

pub use baseline::{build_static, StaticPnnModel};
pub use dataset::LabeledDataset;
pub use error::{Error, Result};
pub use learning::{ClassStats, EvalReport};
pub use model::{
    activation, unique_radius, ClassLabel, CsPnnModel, FeatureVector, Forward, OutputUnit,
    RbfUnit, UnitId,
};
pub use protocols::{ProtocolConfig, Scenario, StageRecord};
