//! The worked genus-1 example: the curve `s^2 = r^3 + r + 1` over F_5,
//! all nine of its rational points, and `D = 3 O + (r + s)`.
//!
//! `PRINTED_MATRICES` and `PRINTED_GENERATOR` are the reference data.
//! The reference set does not verify at genus 1: its eighth basis uses
//! `gamma - 3 beta - alpha`, which does not vanish to order 2 at `(2, 4)`,
//! and its ninth matrix does not map `(gamma, beta, alpha)` onto `B_0`.
//! `CORRECTED_MATRICES` replaces those two matrices with the ones induced
//! by `gamma - beta + 3 alpha` and by `(gamma, beta, alpha)`.

use crate::curve::{CurvePoint, DivisorSpec, FunctionField, WeierstrassCurve};
use crate::error::Result;
use crate::galois::{make_field, Elem, Field};
use crate::linalg::FqMatrix;
use crate::udmg::Udmg;

pub const Q: u64 = 5;
pub const K: usize = 3;
pub const CURVE_A: Elem = 1;
pub const CURVE_B: Elem = 1;
pub const DIVISOR_N: usize = 3;
pub const DIVISOR_H: &str = "r + s";

/// `P_1, ..., P_8` affine, `P_9 = O`.
pub const AFFINE_POINTS: [(Elem, Elem); 8] = [(0, 1), (4, 2), (3, 4), (0, 4), (4, 3), (3, 1), (2, 1), (2, 4)];

pub const PRINTED_MATRICES: [[[Elem; 3]; 3]; 9] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [4, 1, 0], [4, 3, 1]],
    [[1, 0, 0], [3, 1, 0], [4, 3, 1]],
    [[1, 0, 0], [0, 1, 0], [3, 4, 1]],
    [[1, 0, 0], [4, 1, 0], [0, 1, 1]],
    [[1, 0, 0], [3, 1, 0], [1, 1, 1]],
    [[1, 0, 0], [2, 1, 0], [4, 1, 1]],
    [[1, 0, 0], [2, 1, 0], [4, 3, 1]],
    [[1, 0, 1], [3, 1, 0], [1, 0, 0]],
];

pub const CORRECTED_MATRICES: [[[Elem; 3]; 3]; 9] = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [4, 1, 0], [4, 3, 1]],
    [[1, 0, 0], [3, 1, 0], [4, 3, 1]],
    [[1, 0, 0], [0, 1, 0], [3, 4, 1]],
    [[1, 0, 0], [4, 1, 0], [0, 1, 1]],
    [[1, 0, 0], [3, 1, 0], [1, 1, 1]],
    [[1, 0, 0], [2, 1, 0], [4, 1, 1]],
    [[1, 0, 0], [2, 1, 0], [2, 3, 1]],
    [[0, 0, 1], [0, 1, 0], [1, 2, 4]],
];

pub const PRINTED_GENERATOR: [[Elem; 9]; 3] =
    [[1, 1, 1, 1, 1, 1, 1, 1, 1], [0, 4, 3, 0, 4, 3, 2, 2, 3], [0, 4, 4, 3, 0, 1, 4, 4, 1]];

pub fn field() -> Field {
    make_field(Q, 1).expect("5 is prime")
}

pub fn curve() -> WeierstrassCurve {
    WeierstrassCurve::new(&field(), CURVE_A, CURVE_B).expect("nonsingular")
}

pub fn points() -> Vec<CurvePoint> {
    AFFINE_POINTS.iter().map(|&(x, y)| CurvePoint::affine(x, y)).chain(std::iter::once(CurvePoint::Infinity)).collect()
}

pub fn divisor() -> Result<DivisorSpec> {
    let ff = FunctionField::elliptic(&curve());
    Ok(DivisorSpec::with_function(DIVISOR_N, ff.parse(DIVISOR_H)?))
}

fn to_udmg(data: &[[[Elem; 3]; 3]; 9], genus: usize) -> Udmg {
    let f = field();
    let matrices = data
        .iter()
        .map(|m| FqMatrix::from_rows(&f, &m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("3x3"))
        .collect();
    Udmg::new(&f, K, genus, matrices).expect("rows match K")
}

pub fn printed_udmg(genus: usize) -> Udmg {
    to_udmg(&PRINTED_MATRICES, genus)
}

pub fn corrected_udmg(genus: usize) -> Udmg {
    to_udmg(&CORRECTED_MATRICES, genus)
}

pub fn printed_generator() -> FqMatrix {
    let rows: Vec<Vec<Elem>> = PRINTED_GENERATOR.iter().map(|r| r.to_vec()).collect();
    FqMatrix::from_rows(&field(), &rows).expect("3x9")
}
