//! Truncated Laurent series in a local uniformizer, and local expansions
//! of function-field elements.
//!
//! Uniformizers: `r - x(P)` at an affine point with `y(P) != 0`, `s` at an
//! affine point with `y(P) = 0`, `r/s` at `O`; `x - x0` and `1/x` on the
//! line.

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::poly::Poly;

use super::function::{FnElement, FunctionField, Model};
use super::weierstrass::CurvePoint;

/// `sum coeffs[k] t^(start + k) + O(t^abs)`, with `coeffs.len() = abs - start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    start: i64,
    coeffs: Vec<Elem>,
}

impl Laurent {
    fn with_abs(start: i64, mut coeffs: Vec<Elem>, abs: i64) -> Laurent {
        let len = (abs - start).max(0) as usize;
        coeffs.resize(len, 0);
        Laurent { start: start.min(abs), coeffs }
    }

    pub fn constant(c: Elem, abs: i64) -> Laurent {
        Laurent::with_abs(0, vec![c], abs)
    }

    /// `t^k` known to absolute precision `abs`.
    pub fn monomial(k: i64, abs: i64) -> Laurent {
        Laurent::with_abs(k, vec![1], abs)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exponents below `abs` are known exactly.
    pub fn abs(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `t^k`, for `k < abs`.
    pub fn coeff(&self, k: i64) -> Elem {
        debug_assert!(k < self.abs());
        if k < self.start {
            0
        } else {
            self.coeffs[(k - self.start) as usize]
        }
    }

    /// Order of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|&c| c != 0).map(|i| self.start + i as i64)
    }

    fn trimmed(mut self) -> Laurent {
        let lead = self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        self
    }

    pub fn add(&self, other: &Laurent, f: &Field) -> Laurent {
        let start = self.start.min(other.start);
        let abs = self.abs().min(other.abs());
        let coeffs = (start..abs).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Laurent::with_abs(start, coeffs, abs)
    }

    pub fn mul(&self, other: &Laurent, f: &Field) -> Laurent {
        let a = self.clone().trimmed();
        let b = other.clone().trimmed();
        let start = a.start + b.start;
        let abs = (a.start + b.abs()).min(b.start + a.abs());
        let n = (abs - start).max(0) as usize;
        let mut coeffs = vec![0; n];
        for (i, &x) in a.coeffs.iter().enumerate().take(n) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(x, y));
            }
        }
        Laurent::with_abs(start, coeffs, abs)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Laurent {
        Laurent { start: self.start, coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect() }
    }

    /// Fails when no nonzero coefficient is known.
    pub fn inv(&self, f: &Field) -> Result<Laurent> {
        let a = self.clone().trimmed();
        if a.coeffs.is_empty() {
            return Err(Error::PrecisionExhausted(self.coeffs.len()));
        }
        let n = a.coeffs.len();
        let c0 = f.inv_nonzero(a.coeffs[0]);
        let mut out = vec![0; n];
        out[0] = c0;
        for k in 1..n {
            let s = (1..=k).fold(0, |acc, i| f.add(acc, f.mul(a.coeffs[i], out[k - i])));
            out[k] = f.neg(f.mul(s, c0));
        }
        Ok(Laurent { start: -a.start, coeffs: out })
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly, f: &Field, abs: i64) -> Laurent {
        let mut acc = Laurent::constant(0, abs);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self, f).add(&Laurent::constant(c, abs), f);
        }
        acc
    }
}

/// Expansion `t^v (c_0 + c_1 t + ...)` of a function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub valuation: i64,
    /// `c_0 != 0` unless `zero_to_precision`.
    pub coeffs: Vec<Elem>,
    pub zero_to_precision: bool,
}

/// Series of `r` and `s` in the uniformizer at `P`, both known to
/// absolute precision at least `work - 6`.
fn coordinate_series(ff: &FunctionField, p: &CurvePoint, work: i64) -> Result<(Laurent, Option<Laurent>)> {
    let f = ff.field();
    if !ff.contains(p) {
        return Err(Error::PointNotOnCurve(p.to_string()));
    }
    match (ff.model(), p) {
        (Model::Line, CurvePoint::Affine { x, .. }) => Ok((Laurent::with_abs(0, vec![*x, 1], work), None)),
        (Model::Line, CurvePoint::Infinity) => Ok((Laurent::monomial(-1, work), None)),
        (Model::Elliptic(c), CurvePoint::Affine { x, y }) if *y != 0 => {
            // t = r - x0; solve (y0 + u)^2 = G(t) with G(t) = F(x0 + t)
            let g = Poly::new(vec![c.b(), c.a(), 0, 1]).taylor_shift(*x, f);
            let n = work.max(1) as usize;
            let mut s = vec![0; n];
            s[0] = *y;
            let inv2y = f.inv_nonzero(f.add(*y, *y));
            for k in 1..n {
                let conv = (1..k).fold(0, |acc, i| f.add(acc, f.mul(s[i], s[k - i])));
                s[k] = f.mul(f.sub(g.coeff(k), conv), inv2y);
            }
            Ok((Laurent::with_abs(0, vec![*x, 1], work), Some(Laurent::with_abs(0, s, work))))
        }
        (Model::Elliptic(c), CurvePoint::Affine { x, .. }) => {
            // t = s; r = x0 + u with c1 u + c2 u^2 + u^3 = t^2
            let c1 = f.add(f.mul(f.from_int(3), f.mul(*x, *x)), c.a());
            let c2 = f.mul(f.from_int(3), *x);
            let inv_c1 = f.inv_nonzero(c1);
            let n = work.max(1) as usize;
            let mut u = vec![0; n];
            for k in 2..n {
                let sq = conv_coeff(&u, &u, k, f);
                let cube = (0..=k).fold(0, |acc, i| f.add(acc, f.mul(u[i], conv_coeff(&u, &u, k - i, f))));
                let rhs = f.sub(if k == 2 { 1 } else { 0 }, f.add(f.mul(c2, sq), cube));
                u[k] = f.mul(rhs, inv_c1);
            }
            u[0] = *x;
            Ok((Laurent::with_abs(0, u, work), Some(Laurent::monomial(1, work))))
        }
        (Model::Elliptic(c), CurvePoint::Infinity) => {
            // z = r/s = t, w = 1/s = z^3 + a z w^2 + b w^3
            let n = work.max(4) as usize;
            let mut w = vec![0; n];
            for k in 3..n {
                let w2 = |m: usize| if m == 0 { 0 } else { conv_coeff(&w, &w, m, f) };
                let zw2 = if k >= 1 { w2(k - 1) } else { 0 };
                let w3 = (0..=k).fold(0, |acc, i| f.add(acc, f.mul(w[i], conv_coeff(&w, &w, k - i, f))));
                let mut v = f.add(f.mul(c.a(), zw2), f.mul(c.b(), w3));
                if k == 3 {
                    v = f.add(v, 1);
                }
                w[k] = v;
            }
            let w = Laurent::with_abs(0, w, n as i64);
            let s = w.inv(f)?;
            let r = s.mul(&Laurent::monomial(1, work), f);
            Ok((r, Some(s)))
        }
    }
}

fn conv_coeff(a: &[Elem], b: &[Elem], k: usize, f: &Field) -> Elem {
    (0..=k.min(a.len() - 1)).filter(|&i| k - i < b.len()).fold(0, |acc, i| f.add(acc, f.mul(a[i], b[k - i])))
}

/// Laurent series of `x` at `P` computed with working precision `work`.
fn series_once(ff: &FunctionField, x: &FnElement, p: &CurvePoint, work: i64) -> Result<Laurent> {
    let f = ff.field();
    let (r, s) = coordinate_series(ff, p, work)?;
    let mut num = r.eval_poly(x.numerator_a(), f, work);
    if let Some(s) = s {
        if !x.numerator_b().is_zero() {
            num = num.add(&s.mul(&r.eval_poly(x.numerator_b(), f, work), f), f);
        }
    }
    let den = r.eval_poly(x.denominator(), f, work);
    Ok(num.mul(&den.inv(f)?, f))
}

/// Series of `x` at `P` known at least through `t^(abs - 1)`.
///
/// Working precision starts a little above `abs` and doubles until the
/// target is met, giving up after eight-fold growth.
pub fn series_at(ff: &FunctionField, x: &FnElement, p: &CurvePoint, abs: i64) -> Result<Laurent> {
    let degree_slack = 3 * [x.numerator_a(), x.numerator_b(), x.denominator()]
        .iter()
        .map(|q| q.degree().unwrap_or(0) as i64)
        .sum::<i64>();
    let base = abs.max(1) + 8 + degree_slack;
    let mut work = base;
    while work <= 8 * base {
        match series_once(ff, x, p, work) {
            Ok(s) if s.abs() >= abs => return Ok(s),
            Ok(_) | Err(Error::PrecisionExhausted(_)) => work *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionExhausted(abs.max(0) as usize))
}

/// Expansion of `x` at `P` with `prec` coefficients after the leading one.
pub fn local_expand(ff: &FunctionField, x: &FnElement, p: &CurvePoint, prec: usize) -> Result<LocalExpansion> {
    if prec == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    if x.is_zero() {
        return Ok(LocalExpansion { valuation: 0, coeffs: vec![0; prec], zero_to_precision: true });
    }
    // A nonzero function of degree d has |v_P| <= d, and the degree is
    // bounded by the pole orders of its numerator and denominator.
    let deg_bound = 3 * [x.numerator_a(), x.numerator_b(), x.denominator()]
        .iter()
        .map(|q| q.degree().map_or(0, |d| d as i64 + 2))
        .sum::<i64>();
    let mut abs = prec as i64;
    loop {
        let s = series_at(ff, x, p, abs)?;
        if let Some(v) = s.valuation() {
            if s.abs() >= v + prec as i64 {
                let coeffs = (v..v + prec as i64).map(|k| s.coeff(k)).collect();
                return Ok(LocalExpansion { valuation: v, coeffs, zero_to_precision: false });
            }
            abs = v + prec as i64;
        } else if abs > deg_bound + prec as i64 {
            return Err(Error::PrecisionExhausted(prec));
        } else {
            abs *= 2;
        }
    }
}

/// Value of `t^shift * x` at `P`. A pole there is an error.
pub fn evaluate(ff: &FunctionField, x: &FnElement, p: &CurvePoint, shift: usize) -> Result<Elem> {
    let s = series_at(ff, x, p, 1 - shift as i64)?;
    let below = (s.start()..-(shift as i64)).any(|k| s.coeff(k) != 0);
    if below {
        return Err(Error::PoleAtSupport(p.to_string()));
    }
    Ok(s.coeff(-(shift as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::weierstrass::WeierstrassCurve;
    use crate::galois::make_field;
    use proptest::prelude::*;

    fn f5_curve() -> FunctionField {
        FunctionField::elliptic(&WeierstrassCurve::new(&make_field(5, 1).unwrap(), 1, 1).unwrap())
    }

    #[test]
    fn uniformizer_has_valuation_one() {
        let ff = f5_curve();
        let p = CurvePoint::affine(4, 2);
        let t = ff.sub(&ff.r(), &ff.constant(4));
        let e = local_expand(&ff, &t, &p, 3).unwrap();
        assert_eq!((e.valuation, e.coeffs[0]), (1, 1));
    }

    #[test]
    fn coordinates_at_infinity() {
        let ff = f5_curve();
        let o = CurvePoint::Infinity;
        assert_eq!(local_expand(&ff, &ff.r(), &o, 2).unwrap().valuation, -2);
        assert_eq!(local_expand(&ff, &ff.s().unwrap(), &o, 2).unwrap().valuation, -3);
        let z = ff.div(&ff.r(), &ff.s().unwrap()).unwrap();
        let e = local_expand(&ff, &z, &o, 4).unwrap();
        assert_eq!((e.valuation, e.coeffs.clone()), (1, vec![1, 0, 0, 0]));
    }

    #[test]
    fn alpha_at_first_point() {
        let ff = f5_curve();
        let alpha = ff.inv(&ff.parse("r + s").unwrap()).unwrap();
        let p1 = CurvePoint::affine(0, 1);
        let e = local_expand(&ff, &alpha, &p1, 2).unwrap();
        assert_eq!((e.valuation, e.coeffs[0]), (0, 1));
        assert_eq!(evaluate(&ff, &alpha, &p1, 0).unwrap(), 1);
    }

    #[test]
    fn two_torsion_point_uses_s() {
        // y^2 = x^3 + x over F_7 has (0, 0)
        let ff = FunctionField::elliptic(&WeierstrassCurve::new(&make_field(7, 1).unwrap(), 1, 0).unwrap());
        let p = CurvePoint::affine(0, 0);
        assert_eq!(local_expand(&ff, &ff.s().unwrap(), &p, 2).unwrap().valuation, 1);
        assert_eq!(local_expand(&ff, &ff.r(), &p, 2).unwrap().valuation, 2);
    }

    #[test]
    fn pole_is_reported() {
        let ff = f5_curve();
        let e = evaluate(&ff, &ff.r(), &CurvePoint::Infinity, 0);
        assert!(matches!(e, Err(Error::PoleAtSupport(_))));
        assert_eq!(evaluate(&ff, &ff.r(), &CurvePoint::Infinity, 2).unwrap(), 1);
    }

    #[test]
    fn line_expansions() {
        let ff = FunctionField::line(&make_field(3, 1).unwrap());
        let x = ff.r();
        assert_eq!(local_expand(&ff, &x, &CurvePoint::Infinity, 1).unwrap().valuation, -1);
        let e = local_expand(&ff, &x, &CurvePoint::line(2), 2).unwrap();
        assert_eq!((e.valuation, e.coeffs.clone()), (0, vec![2, 1]));
    }

    fn random_element(ff: &FunctionField, seed: &[u32]) -> FnElement {
        let a = Poly::new(seed[0..3].to_vec());
        let b = Poly::new(seed[3..5].to_vec());
        let c = Poly::new(vec![seed[5], seed[6], 1]);
        ff.element(a, b, c).unwrap()
    }

    proptest! {
        #[test]
        fn valuation_is_additive(
            s1 in prop::collection::vec(0u32..5, 7),
            s2 in prop::collection::vec(0u32..5, 7),
            idx in 0usize..9,
        ) {
            let ff = f5_curve();
            let f = random_element(&ff, &s1);
            let g = random_element(&ff, &s2);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let p = ff.curve().unwrap().points().unwrap()[idx];
            let vf = local_expand(&ff, &f, &p, 2).unwrap().valuation;
            let vg = local_expand(&ff, &g, &p, 2).unwrap().valuation;
            let vfg = local_expand(&ff, &ff.mul(&f, &g), &p, 2).unwrap().valuation;
            prop_assert_eq!(vfg, vf + vg);
        }

        #[test]
        fn series_value_matches_direct(s in prop::collection::vec(0u32..5, 7), idx in 0usize..9) {
            let ff = f5_curve();
            let f = random_element(&ff, &s);
            let p = ff.curve().unwrap().points().unwrap()[idx];
            if let Ok(Some(v)) = ff.eval_direct(&f, &p, 0) {
                prop_assert_eq!(evaluate(&ff, &f, &p, 0).unwrap(), v);
            }
        }
    }
}
