//! Goppa UDMGs from the projective line and from elliptic curves.
//!
//! For each evaluation point `P_i` an increasing zero basis `B_i` of
//! `L(D)` is computed; `M_i` is the matrix with `M_i B_i = B_0`. With
//! `B_i = T_i F` and `B_0 = T_0 F` for a fixed basis `F`, this is
//! `M_i = T_0 T_i^-1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::FqMatrix;
use crate::udmg::Udmg;

use super::divisor::{increasing_zero_basis, rr_basis, DivisorSpec, ZeroBasis};
use super::function::{FnElement, FunctionField};
use super::series::evaluate;
use super::weierstrass::{CurvePoint, WeierstrassCurve};

/// Which ordered basis of `L(D)` the matrices map onto.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseBasis {
    /// The increasing zero basis at the first point.
    #[default]
    FirstPoint,
    /// The monomial basis from [`rr_basis`].
    Raw,
}

#[derive(Clone, Debug)]
pub struct GoppaConstruction {
    pub function_field: FunctionField,
    pub points: Vec<CurvePoint>,
    pub divisor: DivisorSpec,
    /// Local order offset per point: the multiplicity of `P_i` in `D`.
    pub shifts: Vec<usize>,
    pub raw_basis: Vec<FnElement>,
    pub b0: Vec<FnElement>,
    pub bases: Vec<ZeroBasis>,
    pub matrices: Vec<FqMatrix>,
    pub udmg: Udmg,
}

impl GoppaConstruction {
    pub fn k(&self) -> usize {
        self.raw_basis.len()
    }

    pub fn genus(&self) -> usize {
        self.function_field.genus()
    }

    pub fn field(&self) -> &Field {
        self.function_field.field()
    }

    /// `K x L`; column `j` is the first column of `M_j`.
    pub fn generator(&self) -> FqMatrix {
        goppa_generator(self)
    }

    /// `B_0i(P_j)` evaluated through local expansions.
    pub fn evaluation_matrix(&self) -> Result<FqMatrix> {
        let k = self.k();
        let mut g = FqMatrix::zeros(self.field(), k, self.points.len());
        for (j, (p, &shift)) in self.points.iter().zip(&self.shifts).enumerate() {
            for (i, b) in self.b0.iter().enumerate() {
                g.set(i, j, evaluate(&self.function_field, b, p, shift)?);
            }
        }
        Ok(g)
    }

    /// Checks `(M_j)_{i,1} = B_0i(P_j)` for all `i, j`, evaluating `B_0`
    /// by direct substitution where that is determinate and by series
    /// otherwise. Returns the first mismatching `(i, j)`.
    pub fn check_generator_identity(&self) -> Result<Option<(usize, usize)>> {
        let ff = &self.function_field;
        for (j, (p, &shift)) in self.points.iter().zip(&self.shifts).enumerate() {
            for (i, b) in self.b0.iter().enumerate() {
                let value = match ff.eval_direct(b, p, shift)? {
                    Some(v) => v,
                    None => evaluate(ff, b, p, shift)?,
                };
                if self.matrices[j].get(i, 0) != value {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

pub fn goppa_generator(gc: &GoppaConstruction) -> FqMatrix {
    let k = gc.k();
    let cols: Vec<Vec<Elem>> = gc.matrices.iter().map(|m| m.column(0)).collect();
    FqMatrix::from_columns(gc.field(), k, &cols).expect("first columns have K entries")
}

fn check_points(ff: &FunctionField, points: &[CurvePoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if !ff.contains(p) {
            return Err(Error::PointNotOnCurve(p.to_string()));
        }
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoints(p.to_string()));
        }
    }
    Ok(())
}

fn build(
    ff: FunctionField,
    points: Vec<CurvePoint>,
    divisor: DivisorSpec,
    shifts: Vec<usize>,
    base: BaseBasis,
) -> Result<GoppaConstruction> {
    let f = ff.field().clone();
    let raw = rr_basis(&ff, &divisor)?;
    let k = raw.len();
    let g = ff.genus();
    if k < g {
        return Err(Error::TooFewSections { k, g });
    }
    let precision = k + g + 2;
    let bases = points
        .par_iter()
        .zip(&shifts)
        .map(|(p, &shift)| increasing_zero_basis(&ff, &raw, p, shift, precision))
        .collect::<Result<Vec<_>>>()?;

    let (b0, t0) = match (base, bases.first()) {
        (BaseBasis::FirstPoint, Some(z)) => (z.basis.clone(), z.transform.clone()),
        _ => (raw.clone(), FqMatrix::identity(&f, k)),
    };
    let matrices = bases.iter().map(|z| t0.mul(&z.transform.inverse()?)).collect::<Result<Vec<_>>>()?;
    let udmg = Udmg::new(&f, k, g, matrices.clone())?;
    Ok(GoppaConstruction { function_field: ff, points, divisor, shifts, raw_basis: raw, b0, bases, matrices, udmg })
}

/// Goppa UDMG of `(X, P, D)` on an elliptic curve. The evaluation points
/// must avoid the support of `D`.
pub fn goppa_udmg(
    curve: &WeierstrassCurve,
    points: &[CurvePoint],
    divisor: &DivisorSpec,
    base: BaseBasis,
) -> Result<GoppaConstruction> {
    let ff = FunctionField::elliptic(curve);
    check_points(&ff, points)?;
    if divisor.n < 1 {
        return Err(Error::UnsupportedDivisor("genus 1 needs n >= 1".into()));
    }
    for p in points {
        if divisor.coefficient_at(&ff, p)? != 0 {
            return Err(Error::SupportCollision(p.to_string()));
        }
    }
    build(ff, points.to_vec(), divisor.clone(), vec![0; points.len()], base)
}

/// Genus-0 UDMG on the projective line with `D = (K - 1) inf`. A point at
/// infinity is handled by shifting local orders by `K - 1`, which yields
/// the reversed monomial basis there.
pub fn genus0_udmg(field: &Field, points: &[CurvePoint], k: usize, base: BaseBasis) -> Result<GoppaConstruction> {
    if k < 1 {
        return Err(Error::InvalidInput("K must be at least 1".into()));
    }
    let ff = FunctionField::line(field);
    let max = field.order() as usize + 1;
    if points.len() > max {
        return Err(Error::TooManyPoints { count: points.len(), max });
    }
    check_points(&ff, points)?;
    let shifts = points.iter().map(|p| if p.is_infinity() { k - 1 } else { 0 }).collect();
    build(ff, points.to_vec(), DivisorSpec::at_infinity(k - 1), shifts, base)
}

/// All points of the line: `0, 1, ..., q-1, inf`.
pub fn line_points(field: &Field) -> Vec<CurvePoint> {
    field.elements().map(CurvePoint::line).chain(std::iter::once(CurvePoint::Infinity)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn genus0_at_zero_is_identity() {
        let f = make_field(5, 1).unwrap();
        let gc = genus0_udmg(&f, &line_points(&f), 3, BaseBasis::FirstPoint).unwrap();
        assert_eq!(gc.matrices[0], FqMatrix::identity(&f, 3));
        assert!(gc.udmg.verify().valid);
        assert_eq!(gc.check_generator_identity().unwrap(), None);
    }

    #[test]
    fn genus0_k1_is_trivial() {
        let f = make_field(3, 1).unwrap();
        let gc = genus0_udmg(&f, &line_points(&f), 1, BaseBasis::FirstPoint).unwrap();
        assert!(gc.matrices.iter().all(|m| *m == FqMatrix::identity(&f, 1)));
        assert!(!gc.udmg.is_nondegenerate());
    }

    #[test]
    fn genus0_rejects_bad_points() {
        let f = make_field(3, 1).unwrap();
        let dup = [CurvePoint::line(1), CurvePoint::line(1)];
        assert!(matches!(genus0_udmg(&f, &dup, 2, BaseBasis::Raw), Err(Error::DuplicatePoints(_))));
        let many = vec![CurvePoint::line(0); 5];
        assert!(matches!(genus0_udmg(&f, &many, 2, BaseBasis::Raw), Err(Error::TooManyPoints { .. })));
    }

    #[test]
    fn support_collision() {
        let f = make_field(5, 1).unwrap();
        let c = WeierstrassCurve::new(&f, 1, 1).unwrap();
        let e = goppa_udmg(&c, &[CurvePoint::Infinity], &DivisorSpec::at_infinity(3), BaseBasis::FirstPoint);
        assert!(matches!(e, Err(Error::SupportCollision(_))));
    }

    #[test]
    fn single_point_is_degenerate() {
        let f = make_field(5, 1).unwrap();
        let c = WeierstrassCurve::new(&f, 1, 1).unwrap();
        let gc =
            goppa_udmg(&c, &[CurvePoint::affine(0, 1)], &DivisorSpec::at_infinity(2), BaseBasis::FirstPoint).unwrap();
        assert_eq!((gc.udmg.k(), gc.udmg.total_columns()), (2, 2));
        assert!(!gc.udmg.is_nondegenerate());
    }
}
