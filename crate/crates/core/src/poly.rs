//! Dense univariate polynomials over a [`Field`], constant term first.
//!
//! A `Poly` does not carry its field; every operation takes it explicitly.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(vec![field.neg(a), 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, f: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    pub fn divrem(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv_nonzero(divisor.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quo = vec![0; rem.len() - db];
        for k in (0..quo.len()).rev() {
            let c = f.mul(rem[k + db], inv_lead);
            quo[k] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
                }
            }
        }
        rem.truncate(db);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, divisor: &Poly, f: &Field) -> Poly {
        let (q, r) = self.divrem(divisor, f).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv_nonzero(self.lead()), f)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Coefficients of `p(x0 + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, x0: Elem, f: &Field) -> Poly {
        // Horner in the shifted variable
        let shift = Poly::new(vec![x0, 1]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| acc.mul(&shift, f).add(&Poly::constant(c), f))
    }

    /// Coefficient list reversed to length `n + 1`: `x^n p(1/x)`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, 0);
        c.reverse();
        Poly::new(c)
    }

    /// Human-readable form in the variable `var`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (k, c) {
                (0, _) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, _) => format!("{c}*{var}"),
                (_, 1) => format!("{var}^{k}"),
                _ => format!("{c}*{var}^{k}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn divrem_reconstructs() {
        let f = make_field(5, 1).unwrap();
        let a = Poly::new(vec![1, 2, 3, 4, 1]);
        let b = Poly::new(vec![3, 0, 2]);
        let (q, r) = a.divrem(&b, &f).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = make_field(7, 1).unwrap();
        let common = Poly::linear(&f, 3);
        let a = common.mul(&Poly::linear(&f, 1), &f);
        let b = common.mul(&Poly::linear(&f, 5), &f);
        assert_eq!(a.gcd(&b, &f), common);
        assert_eq!(Poly::zero().gcd(&Poly::zero(), &f), Poly::zero());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = make_field(5, 1).unwrap();
        let p = Poly::new(vec![1, 0, 4, 2]);
        let s = p.taylor_shift(3, &f);
        for t in f.elements() {
            assert_eq!(s.eval(t, &f), p.eval(f.add(3, t), &f));
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(Poly::one().divrem(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(Poly::new(vec![1, 0, 3, 1]).display("r"), "r^3 + 3*r^2 + 1");
        assert_eq!(Poly::zero().display("r"), "0");
    }
}
