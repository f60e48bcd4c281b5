//! Divisors `D = n O + (h)`, their Riemann-Roch bases, and increasing zero
//! bases at a point.

use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::linalg::FqMatrix;

use super::function::{FnElement, FunctionField, Model};
use super::series::{local_expand, series_at};
use super::weierstrass::CurvePoint;

/// `D = n O + (h)`; on the line `O` is the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSpec {
    pub n: usize,
    pub h: Option<FnElement>,
}

impl DivisorSpec {
    pub fn at_infinity(n: usize) -> DivisorSpec {
        DivisorSpec { n, h: None }
    }

    pub fn with_function(n: usize, h: FnElement) -> DivisorSpec {
        DivisorSpec { n, h: Some(h) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Multiplicity of `P` in `D`.
    pub fn coefficient_at(&self, ff: &FunctionField, p: &CurvePoint) -> Result<i64> {
        let base = if p.is_infinity() { self.n as i64 } else { 0 };
        let hv = match &self.h {
            Some(h) => local_expand(ff, h, p, 1)?.valuation,
            None => 0,
        };
        Ok(base + hv)
    }
}

/// `{m_j / h}` where `m_j` runs over the monomials with pole order at most
/// `n` at infinity, ordered by pole order: `1, r, s, r^2, r s, ...` on the
/// curve and `1, x, ..., x^n` on the line.
pub fn rr_basis(ff: &FunctionField, d: &DivisorSpec) -> Result<Vec<FnElement>> {
    let monomials: Vec<FnElement> = match ff.model() {
        Model::Line => (0..=d.n).map(|j| ff.pow(&ff.r(), j)).collect(),
        Model::Elliptic(_) => {
            if d.n < 1 {
                return Err(Error::UnsupportedDivisor("genus 1 needs n >= 1".into()));
            }
            let s = ff.s()?;
            std::iter::once(0)
                .chain(2..=d.n)
                .map(|k| if k % 2 == 0 { ff.pow(&ff.r(), k / 2) } else { ff.mul(&ff.pow(&ff.r(), (k - 3) / 2), &s) })
                .collect()
        }
    };
    match &d.h {
        None => Ok(monomials),
        Some(h) => {
            let inv = ff.inv(h)?;
            Ok(monomials.iter().map(|m| ff.mul(m, &inv)).collect())
        }
    }
}

/// An increasing zero basis together with the transform that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBasis {
    pub basis: Vec<FnElement>,
    /// Orders of vanishing of `t^shift * basis[j]`, strictly increasing.
    pub valuations: Vec<usize>,
    /// `basis[j] = sum_k transform[j][k] * input[k]`.
    pub transform: FqMatrix,
}

/// Row-reduces the local expansion coefficients of `t^shift * f` at `P`.
///
/// Each output element is monic in its leading local coefficient. The
/// expansion precision starts at `precision` and doubles up to eight-fold
/// before giving up.
pub fn increasing_zero_basis(
    ff: &FunctionField,
    basis: &[FnElement],
    p: &CurvePoint,
    shift: usize,
    precision: usize,
) -> Result<ZeroBasis> {
    let f = ff.field();
    let k = basis.len();
    let shift = shift as i64;
    let mut prec = precision.max(1);
    loop {
        let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(k);
        for (j, b) in basis.iter().enumerate() {
            let s = series_at(ff, b, p, prec as i64 - shift)?;
            if (s.start()..-shift).any(|e| s.coeff(e) != 0) {
                return Err(Error::PointInSupport(p.to_string()));
            }
            let mut row: Vec<Elem> = (0..prec as i64).map(|e| s.coeff(e - shift)).collect();
            row.extend((0..k).map(|c| if c == j { 1 } else { 0 }));
            rows.push(row);
        }
        let m = FqMatrix::from_rows(f, &rows)?;
        let r = m.rref_limited(prec);
        if r.rank == k {
            let cols: Vec<usize> = (prec..prec + k).collect();
            let transform = r.reduced.select_columns(&cols);
            let out = transform
                .row_vecs()
                .iter()
                .map(|coeffs| coeffs.iter().zip(basis).fold(ff.zero(), |acc, (&c, b)| ff.add(&acc, &ff.scale(b, c))))
                .collect();
            return Ok(ZeroBasis { basis: out, valuations: r.pivots, transform });
        }
        if prec >= 8 * precision.max(1) {
            return Err(Error::DependentBasis);
        }
        prec *= 2;
    }
}
