//! Dataset ingestion and synthesis: file loading/saving, the verifiable
//! king-rook-king generator, class-noise injection, and seeded sampling.

pub mod csv;
pub mod krk;
pub mod noise;
pub mod sampling;

pub use csv::{load_csv, save_csv};
pub use krk::{
    first_matching_rule, generate_krk, krk_class_names, krk_encode, krk_full_dataset, krk_illegal,
    krk_schema, KrkPosition, POSITION_COUNT, RULE_COUNT,
};
pub use noise::{inject_noise, NoiseSpec};
pub use sampling::sample_split;
