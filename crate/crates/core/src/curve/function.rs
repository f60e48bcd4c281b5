//! Rational functions on the projective line or on a short Weierstrass
//! curve, kept in the canonical form `(A(r) + s B(r)) / C(r)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::poly::Poly;

use super::weierstrass::{CurvePoint, WeierstrassCurve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    /// Genus 0: `F_q(x)`, with `r` playing the role of `x` and `B = 0`.
    Line,
    /// Genus 1: `F_q(r, s)` with `s^2 = r^3 + a r + b`.
    Elliptic(WeierstrassCurve),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionField {
    field: Field,
    model: Model,
}

/// `(A + s B) / C` with `C` monic and `gcd(A, B, C) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FnElement {
    a: Poly,
    b: Poly,
    c: Poly,
}

impl FnElement {
    pub fn numerator_a(&self) -> &Poly {
        &self.a
    }

    pub fn numerator_b(&self) -> &Poly {
        &self.b
    }

    pub fn denominator(&self) -> &Poly {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for FnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => self.a.display("r"),
            (true, false) => format!("s*({})", self.b.display("r")),
            (false, false) => format!("{} + s*({})", self.a.display("r"), self.b.display("r")),
        };
        if self.c.is_one() {
            f.write_str(&num)
        } else {
            write!(f, "({num})/({})", self.c.display("r"))
        }
    }
}

impl FunctionField {
    pub fn line(field: &Field) -> FunctionField {
        FunctionField { field: field.clone(), model: Model::Line }
    }

    pub fn elliptic(curve: &WeierstrassCurve) -> FunctionField {
        FunctionField { field: curve.field().clone(), model: Model::Elliptic(curve.clone()) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn curve(&self) -> Option<&WeierstrassCurve> {
        match &self.model {
            Model::Line => None,
            Model::Elliptic(c) => Some(c),
        }
    }

    pub fn genus(&self) -> usize {
        match self.model {
            Model::Line => 0,
            Model::Elliptic(_) => 1,
        }
    }

    /// `r^3 + a r + b`, the square of `s`.
    fn s_squared(&self) -> Option<Poly> {
        self.curve().map(|c| Poly::new(vec![c.b(), c.a(), 0, 1]))
    }

    /// Builds `(A + s B) / C` in canonical form.
    pub fn element(&self, a: Poly, b: Poly, c: Poly) -> Result<FnElement> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if matches!(self.model, Model::Line) && !b.is_zero() {
            return Err(Error::InvalidInput("the rational function field has no s".into()));
        }
        let f = &self.field;
        if a.is_zero() && b.is_zero() {
            return Ok(self.zero());
        }
        let g = a.gcd(&b, f).gcd(&c, f);
        let (mut a, mut b, mut c) = (a.div_exact(&g, f), b.div_exact(&g, f), c.div_exact(&g, f));
        let lead = f.inv_nonzero(c.lead());
        a = a.scale(lead, f);
        b = b.scale(lead, f);
        c = c.scale(lead, f);
        Ok(FnElement { a, b, c })
    }

    pub fn from_poly(&self, a: Poly) -> FnElement {
        FnElement { a, b: Poly::zero(), c: Poly::one() }
    }

    pub fn zero(&self) -> FnElement {
        self.from_poly(Poly::zero())
    }

    pub fn one(&self) -> FnElement {
        self.constant(1)
    }

    pub fn constant(&self, c: Elem) -> FnElement {
        self.from_poly(Poly::constant(c))
    }

    /// The coordinate `r` (or `x` on the line).
    pub fn r(&self) -> FnElement {
        self.from_poly(Poly::x())
    }

    /// The coordinate `s`; only on a curve.
    pub fn s(&self) -> Result<FnElement> {
        if self.curve().is_none() {
            return Err(Error::InvalidInput("the rational function field has no s".into()));
        }
        Ok(FnElement { a: Poly::zero(), b: Poly::one(), c: Poly::one() })
    }

    pub fn add(&self, x: &FnElement, y: &FnElement) -> FnElement {
        let f = &self.field;
        let a = x.a.mul(&y.c, f).add(&y.a.mul(&x.c, f), f);
        let b = x.b.mul(&y.c, f).add(&y.b.mul(&x.c, f), f);
        self.element(a, b, x.c.mul(&y.c, f)).expect("nonzero denominator")
    }

    pub fn neg(&self, x: &FnElement) -> FnElement {
        let f = &self.field;
        FnElement { a: x.a.neg(f), b: x.b.neg(f), c: x.c.clone() }
    }

    pub fn sub(&self, x: &FnElement, y: &FnElement) -> FnElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &FnElement, c: Elem) -> FnElement {
        self.mul(x, &self.constant(c))
    }

    pub fn mul(&self, x: &FnElement, y: &FnElement) -> FnElement {
        let f = &self.field;
        let mut a = x.a.mul(&y.a, f);
        if let Some(s2) = self.s_squared() {
            a = a.add(&x.b.mul(&y.b, f).mul(&s2, f), f);
        }
        let b = x.a.mul(&y.b, f).add(&x.b.mul(&y.a, f), f);
        self.element(a, b, x.c.mul(&y.c, f)).expect("nonzero denominator")
    }

    /// `C (A - s B) / (A^2 - s^2 B^2)`.
    pub fn inv(&self, x: &FnElement) -> Result<FnElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let mut norm = x.a.mul(&x.a, f);
        if let Some(s2) = self.s_squared() {
            norm = norm.sub(&x.b.mul(&x.b, f).mul(&s2, f), f);
        }
        self.element(x.c.mul(&x.a, f), x.c.mul(&x.b, f).neg(f), norm)
    }

    pub fn div(&self, x: &FnElement, y: &FnElement) -> Result<FnElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FnElement, e: usize) -> FnElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// Whether `P` is a rational point of this model.
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match (&self.model, p) {
            (_, CurvePoint::Infinity) => true,
            (Model::Line, CurvePoint::Affine { x, y }) => self.field.contains(*x as u64) && *y == 0,
            (Model::Elliptic(c), _) => c.contains(p),
        }
    }

    /// Value of `t^shift * x` at `P` from leading terms and direct
    /// substitution, without power series. `None` when the direct formula
    /// is indeterminate (`C(P) = 0` at an affine point).
    ///
    /// At infinity the uniformizers are `1/x` on the line and `r/s` on the
    /// curve, where `r = t^-2 (1 + ...)` and `s = t^-3 (1 + ...)`, so only
    /// the leading coefficients matter.
    pub fn eval_direct(&self, x: &FnElement, p: &CurvePoint, shift: usize) -> Result<Option<Elem>> {
        let f = &self.field;
        if x.is_zero() {
            return Ok(Some(0));
        }
        match p {
            CurvePoint::Affine { x: x0, y: y0 } => {
                let c = x.c.eval(*x0, f);
                if c == 0 {
                    return Ok(None);
                }
                let num = f.add(x.a.eval(*x0, f), f.mul(*y0, x.b.eval(*x0, f)));
                let v = f.mul(num, f.inv_nonzero(c));
                if shift > 0 {
                    // the shifted function vanishes wherever the plain one is finite
                    return Ok(Some(0));
                }
                Ok(Some(v))
            }
            CurvePoint::Infinity => {
                let (step_a, step_b) = match self.model {
                    Model::Line => (1i64, 0i64),
                    Model::Elliptic(_) => (2, 3),
                };
                let deg = |p: &Poly| p.degree().map(|d| d as i64);
                let pole_a = deg(&x.a).map(|d| step_a * d);
                let pole_b = deg(&x.b).map(|d| step_a * d + step_b);
                // the two pole orders have different parity on the curve
                let (pole_num, lead) = match (pole_a, pole_b) {
                    (Some(pa), Some(pb)) if pb > pa => (pb, x.b.lead()),
                    (Some(pa), _) => (pa, x.a.lead()),
                    (None, Some(pb)) => (pb, x.b.lead()),
                    (None, None) => unreachable!("nonzero element"),
                };
                let pole = pole_num - step_a * deg(&x.c).expect("nonzero denominator") - shift as i64;
                match pole.cmp(&0) {
                    std::cmp::Ordering::Greater => Err(Error::PoleAtSupport(p.to_string())),
                    std::cmp::Ordering::Less => Ok(Some(0)),
                    std::cmp::Ordering::Equal => Ok(Some(f.mul(lead, f.inv_nonzero(x.c.lead())))),
                }
            }
        }
    }

    /// Parses a polynomial in `r` and `s` with integer coefficients, such
    /// as `r + s`, `2*r^2 - s*r + 1` or `s^2`.
    pub fn parse(&self, text: &str) -> Result<FnElement> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = self.zero();
        for term in terms {
            acc = self.add(&acc, &self.parse_term(&term)?);
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Result<FnElement> {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {term:?}")));
        }
        let mut acc = self.constant(self.field.from_int(sign));
        for factor in body.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: usize = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (b, e)
                }
                None => (factor, 1),
            };
            let value = match base {
                "r" | "x" => self.r(),
                "s" | "y" => self.s().map_err(|_| Error::Parse("s is not available in genus 0".into()))?,
                n => {
                    let v: i64 = n.parse().map_err(|_| Error::Parse(format!("unrecognized factor {factor:?}")))?;
                    self.constant(self.field.from_int(v))
                }
            };
            acc = self.mul(&acc, &self.pow(&value, exp));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn f5_curve() -> FunctionField {
        let f = make_field(5, 1).unwrap();
        FunctionField::elliptic(&WeierstrassCurve::new(&f, 1, 1).unwrap())
    }

    #[test]
    fn s_squared_is_the_cubic() {
        let ff = f5_curve();
        let s = ff.s().unwrap();
        assert_eq!(ff.mul(&s, &s), ff.from_poly(Poly::new(vec![1, 1, 0, 1])));
    }

    #[test]
    fn inverse_of_r_plus_s() {
        let ff = f5_curve();
        let h = ff.add(&ff.r(), &ff.s().unwrap());
        let inv = ff.inv(&h).unwrap();
        assert_eq!(ff.mul(&h, &inv), ff.one());
    }

    #[test]
    fn sum_of_alpha_beta_gamma() {
        let ff = f5_curve();
        let f = ff.field().clone();
        let h = ff.parse("r + s").unwrap();
        let alpha = ff.inv(&h).unwrap();
        let beta = ff.mul(&ff.r(), &alpha);
        let gamma = ff.mul(&ff.s().unwrap(), &alpha);
        let total = ff.add(&ff.add(&alpha, &beta), &gamma);
        let expected = ff.div(&ff.parse("1 + r + s").unwrap(), &h).unwrap();
        assert_eq!(total, expected);
        // evaluate both at the points where neither denominator vanishes
        let curve = ff.curve().unwrap().clone();
        for p in curve.points().unwrap().into_iter().filter(|p| !p.is_infinity()) {
            let CurvePoint::Affine { x, y } = p else { unreachable!() };
            let hv = f.add(x, y);
            if hv == 0 {
                continue;
            }
            let direct = f.mul(f.add(f.add(1, x), y), f.inv(hv).unwrap());
            assert_eq!(ff.eval_direct(&total, &p, 0).unwrap(), Some(direct));
        }
    }

    #[test]
    fn parse_handles_signs_and_powers() {
        let ff = f5_curve();
        let e = ff.parse("2*r^2 - s*r + 1").unwrap();
        let manual = ff.element(Poly::new(vec![1, 0, 2]), Poly::new(vec![0, 4]), Poly::one()).unwrap();
        assert_eq!(e, manual);
        assert!(ff.parse("r +").is_err());
        assert!(ff.parse("q").is_err());
        let line = FunctionField::line(&make_field(3, 1).unwrap());
        assert!(line.parse("s").is_err());
    }

    #[test]
    fn values_at_infinity() {
        let ff = f5_curve();
        let h = ff.parse("r + s").unwrap();
        let gamma = ff.div(&ff.s().unwrap(), &h).unwrap();
        let beta = ff.div(&ff.r(), &h).unwrap();
        assert_eq!(ff.eval_direct(&gamma, &CurvePoint::Infinity, 0).unwrap(), Some(1));
        assert_eq!(ff.eval_direct(&beta, &CurvePoint::Infinity, 0).unwrap(), Some(0));
        assert!(ff.eval_direct(&ff.r(), &CurvePoint::Infinity, 0).is_err());
    }
}
