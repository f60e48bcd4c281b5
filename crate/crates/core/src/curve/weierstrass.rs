use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

/// `s^2 = r^3 + a r + b` over a field of characteristic other than 2 and 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: Field,
    a: Elem,
    b: Elem,
}

/// A rational point. On the projective line (genus 0) a finite point `x`
/// is written `Affine { x, y: 0 }`, the line being the curve `y = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Elem, y: Elem },
}

impl CurvePoint {
    pub fn affine(x: Elem, y: Elem) -> CurvePoint {
        CurvePoint::Affine { x, y }
    }

    pub fn line(x: Elem) -> CurvePoint {
        CurvePoint::Affine { x, y: 0 }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(field: &Field, a: Elem, b: Elem) -> Result<WeierstrassCurve> {
        let p = field.characteristic();
        if p == 2 || p == 3 {
            return Err(Error::BadCharacteristic(p));
        }
        let a = field.check(a as u64)?;
        let b = field.check(b as u64)?;
        let curve = WeierstrassCurve { field: field.clone(), a, b };
        if curve.discriminant() == 0 {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    /// `-16 (4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> Elem {
        let f = &self.field;
        let a3 = f.mul(f.mul(self.a, self.a), self.a);
        let b2 = f.mul(self.b, self.b);
        let inner = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), b2));
        f.mul(f.from_int(-16), inner)
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self, x: Elem) -> Elem {
        let f = &self.field;
        f.add(f.add(f.mul(f.mul(x, x), x), f.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                self.field.contains(x as u64) && self.field.contains(y as u64) && self.field.mul(y, y) == self.rhs(x)
            }
        }
    }

    /// `[q + 1 - floor(2 sqrt q), q + 1 + floor(2 sqrt q)]`.
    pub fn hasse_weil_interval(&self) -> (i64, i64) {
        let q = self.field.order() as i64;
        let mut m = 0i64;
        while (m + 1) * (m + 1) <= 4 * q {
            m += 1;
        }
        (q + 1 - m, q + 1 + m)
    }

    /// All rational points: `O` first, then affine points in `(x, y)` order.
    pub fn points(&self) -> Result<Vec<CurvePoint>> {
        let f = &self.field;
        let mut pts = vec![CurvePoint::Infinity];
        for x in f.elements() {
            let v = self.rhs(x);
            for y in f.elements() {
                if f.mul(y, y) == v {
                    pts.push(CurvePoint::Affine { x, y });
                }
            }
        }
        let (lo, hi) = self.hasse_weil_interval();
        let count = pts.len();
        if (count as i64) < lo || (count as i64) > hi {
            return Err(Error::HasseWeilViolation { count, lo, hi });
        }
        Ok(pts)
    }
}

pub fn enumerate_points(curve: &WeierstrassCurve) -> Result<Vec<CurvePoint>> {
    curve.points()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn validation() {
        let f5 = make_field(5, 1).unwrap();
        assert!(WeierstrassCurve::new(&f5, 1, 1).is_ok());
        assert_eq!(WeierstrassCurve::new(&f5, 0, 0), Err(Error::SingularCurve));
        let f7 = make_field(7, 1).unwrap();
        assert!(WeierstrassCurve::new(&f7, 1, 0).is_ok());
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(WeierstrassCurve::new(&f3, 1, 1), Err(Error::BadCharacteristic(3)));
    }

    #[test]
    fn census_over_f7() {
        let f7 = make_field(7, 1).unwrap();
        let c = WeierstrassCurve::new(&f7, 1, 0).unwrap();
        // independent count: O plus pairs with y^2 = x^3 + x
        let brute = 1
            + (0..7u32)
                .flat_map(|x| (0..7u32).map(move |y| (x, y)))
                .filter(|&(x, y)| (y * y) % 7 == (x * x * x + x) % 7)
                .count();
        let pts = c.points().unwrap();
        assert_eq!(pts.len(), brute);
        assert_eq!(pts[0], CurvePoint::Infinity);
        assert!(pts.iter().all(|p| c.contains(p)));
    }

    #[test]
    fn interval_at_q5() {
        let c = WeierstrassCurve::new(&make_field(5, 1).unwrap(), 1, 1).unwrap();
        assert_eq!(c.hasse_weil_interval(), (2, 10));
    }
}
