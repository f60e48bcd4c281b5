pub mod codes;
pub mod curve;
pub mod error;
pub mod example;
pub mod format;
pub mod galois;
pub mod linalg;
pub mod poly;
pub mod udmg;
pub mod waveform;

pub use codes::{
    bounds, duplicate, first_column_code, min_distance, partition_bound, BoundClass, BoundReport, LinearCode,
};
pub use curve::{
    genus0_udmg, goppa_udmg, line_points, BaseBasis, CurvePoint, DivisorSpec, FnElement, FunctionField,
    GoppaConstruction, WeierstrassCurve,
};
pub use error::{Error, Result};
pub use format::{ConstructionFile, MatrixSetFile};
pub use galois::{make_field, Elem, Field, FieldSpec, FqElement, Operation};
pub use linalg::{FqMatrix, Rref, Subspace};
pub use poly::Poly;
pub use udmg::{allowable_vectors, minimal_genus, Chain, PruneMode, QuotientResult, Udmg, Udvsg, VerifyReport};
pub use waveform::{
    audit_product_distance, build_scheme, complexify, gap_exhaustive, modulation_bounds, snr, CodeScheme, Modulator,
};
