//! Genus-0 and genus-1 function fields and the Goppa UDMG construction.

pub mod divisor;
pub mod function;
pub mod goppa;
pub mod series;
pub mod weierstrass;

pub use divisor::{increasing_zero_basis, rr_basis, DivisorSpec, ZeroBasis};
pub use function::{FnElement, FunctionField, Model};
pub use goppa::{genus0_udmg, goppa_generator, goppa_udmg, line_points, BaseBasis, GoppaConstruction};
pub use series::{evaluate, local_expand, series_at, Laurent, LocalExpansion};
pub use weierstrass::{enumerate_points, CurvePoint, WeierstrassCurve};
