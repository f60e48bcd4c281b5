//! Exact arithmetic in GF(p^m).
//!
//! Elements are packed integers in `[0, q)`: the base-p digits of the rep
//! are the coefficients of the residue polynomial, constant term first.
//! Prime fields use plain modular arithmetic; extension fields use
//! exp/log tables built over a primitive element, which is cheap under the
//! 2^20 order cap.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Packed representation of a field element.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients `c_0, ..., c_m` of the monic reduction polynomial,
    /// constant term first. Present iff `m > 1`.
    pub modulus: Option<Vec<u32>>,
    pub q: u32,
}

struct Tables {
    exp: Vec<Elem>,
    log: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    tables: Option<Tables>,
}

/// A finite field. Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut m = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Builds GF(p^m), choosing the lexicographically smallest monic
/// irreducible modulus when `m > 1`.
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    check_order(p, m)?;
    if m == 1 {
        return Ok(Field::build(p as u32, 1, None));
    }
    let modulus = smallest_irreducible(p as u32, m);
    Ok(Field::build(p as u32, m, Some(modulus)))
}

fn check_order(p: u64, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > MAX_FIELD_ORDER as u128 {
        return Err(Error::FieldTooLarge { p, m });
    }
    Ok(())
}

// Dense F_p[x] helpers used only while setting up extension fields.
fn digits_of(mut rep: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0; m];
    for d in out.iter_mut() {
        *d = rep % p;
        rep /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    // b is monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let v = (a[shift + i] + p - (lead * bc) % p) % p;
                a[shift + i] = v;
            }
        }
        a.pop();
    }
    a
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for r in 0..count {
            let mut f = digits_of(r as u32, p, d);
            f.push(1);
            let rem = poly_rem(modulus.to_vec(), &f, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for r in 0..count {
        let mut f = digits_of(r as u32, p, m as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

fn mul_mod_poly(a: u32, b: u32, modulus: &[u32], p: u32) -> u32 {
    let m = modulus.len() - 1;
    let da = digits_of(a, p, m);
    let db = digits_of(b, p, m);
    let mut prod = vec![0u32; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    pack(&poly_rem(prod, modulus, p), p)
}

fn build_tables(p: u32, m: u32, modulus: &[u32]) -> Tables {
    let q = p.pow(m);
    let order = q - 1;
    for g in 2..q {
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = 1u32;
        loop {
            exp.push(x);
            x = mul_mod_poly(x, g, modulus, p);
            if x == 1 || exp.len() > order as usize {
                break;
            }
        }
        if exp.len() == order as usize {
            let mut log = vec![0u32; q as usize];
            for (k, &e) in exp.iter().enumerate() {
                log[e as usize] = k as u32;
            }
            return Tables { exp, log };
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

impl Field {
    fn build(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Field {
        let q = p.pow(m);
        let tables = modulus.as_ref().map(|f| build_tables(p, m, f));
        Field { inner: Arc::new(Inner { spec: FieldSpec { p, m, modulus, q }, tables }) }
    }

    /// Builds GF(p^m) from an explicit modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("modulus must have degree at least 1".into()));
        }
        let m = (modulus.len() - 1) as u32;
        check_order(p, m)?;
        let p = p as u32;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if m == 1 {
            return Ok(Field::build(p, 1, None));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        Ok(Field::build(p, m, Some(modulus)))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        match &spec.modulus {
            Some(f) if spec.m > 1 => Field::with_modulus(spec.p as u64, f.clone()),
            _ => make_field(spec.p as u64, spec.m),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.spec.m
    }

    pub fn order(&self) -> u32 {
        self.inner.spec.q
    }

    pub fn contains(&self, rep: u64) -> bool {
        rep < self.order() as u64
    }

    pub fn check(&self, rep: u64) -> Result<Elem> {
        if self.contains(rep) {
            Ok(rep as Elem)
        } else {
            Err(Error::ElementOutOfRange { rep, q: self.order() })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.characteristic() as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.spec.p;
        if self.inner.spec.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.spec.p;
        if self.inner.spec.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.inner.tables {
            None => ((a as u64 * b as u64) % self.inner.spec.p as u64) as Elem,
            Some(t) => {
                let n = t.exp.len() as u64;
                let k = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
                t.exp[k as usize]
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        match &self.inner.tables {
            None => {
                // extended Euclid over the integers
                let p = self.inner.spec.p as i64;
                let (mut r0, mut r1) = (p, a as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let quo = r0 / r1;
                    (r0, r1) = (r1, r0 - quo * r1);
                    (t0, t1) = (t1, t0 - quo * t1);
                }
                t0.rem_euclid(p) as Elem
            }
            Some(t) => {
                let n = t.exp.len() as u32;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents invert first. `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if e == 0 {
            return Ok(1);
        }
        let base = if e < 0 { self.inv(a)? } else { a };
        if base == 0 {
            return Ok(0);
        }
        let mut e = e.unsigned_abs() % (self.order() as u64 - 1);
        if e == 0 {
            return Ok(1);
        }
        let mut acc = 1;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Square roots of `a` (zero, one or two of them), smallest rep first.
    pub fn sqrt_all(&self, a: Elem) -> Vec<Elem> {
        let mut roots: Vec<Elem> = self.elements().filter(|&y| self.mul(y, y) == a).collect();
        roots.sort_unstable();
        roots
    }

    /// Checked arithmetic on wrapped elements.
    pub fn arith(&self, a: &FqElement, op: Operation<'_>) -> Result<FqElement> {
        if &a.field != self {
            return Err(Error::FieldMismatch);
        }
        let other = |b: &FqElement| -> Result<Elem> {
            if &b.field != self {
                Err(Error::FieldMismatch)
            } else {
                Ok(b.rep)
            }
        };
        let rep = match op {
            Operation::Add(b) => self.add(a.rep, other(b)?),
            Operation::Sub(b) => self.sub(a.rep, other(b)?),
            Operation::Mul(b) => self.mul(a.rep, other(b)?),
            Operation::Neg => self.neg(a.rep),
            Operation::Inv => self.inv(a.rep)?,
            Operation::Pow(e) => self.pow(a.rep, e)?,
        };
        Ok(FqElement { rep, field: self.clone() })
    }

    pub fn element(&self, rep: u64) -> Result<FqElement> {
        Ok(FqElement { rep: self.check(rep)?, field: self.clone() })
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.inner.spec;
        if s.m == 1 {
            write!(f, "GF({})", s.p)
        } else {
            write!(f, "GF({}^{})", s.p, s.m)
        }
    }
}

/// Operations accepted by [`Field::arith`].
#[derive(Clone, Copy, Debug)]
pub enum Operation<'a> {
    Add(&'a FqElement),
    Sub(&'a FqElement),
    Mul(&'a FqElement),
    Neg,
    Inv,
    Pow(i64),
}

/// A field element that remembers its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqElement {
    rep: Elem,
    field: Field,
}

impl FqElement {
    pub fn rep(&self) -> Elem {
        self.rep
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn add(&self, other: &FqElement) -> Result<FqElement> {
        self.field.arith(self, Operation::Add(other))
    }

    pub fn sub(&self, other: &FqElement) -> Result<FqElement> {
        self.field.arith(self, Operation::Sub(other))
    }

    pub fn mul(&self, other: &FqElement) -> Result<FqElement> {
        self.field.arith(self, Operation::Mul(other))
    }

    pub fn neg(&self) -> FqElement {
        FqElement { rep: self.field.neg(self.rep), field: self.field.clone() }
    }

    pub fn inv(&self) -> Result<FqElement> {
        self.field.arith(self, Operation::Inv)
    }

    pub fn pow(&self, e: i64) -> Result<FqElement> {
        self.field.arith(self, Operation::Pow(e))
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}
