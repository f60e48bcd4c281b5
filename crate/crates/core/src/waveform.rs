//! Gapped PAM modulation of square UDMG code schemes, with exact SNR and
//! product-distance audits.
//!
//! `mu_0(a) = sum_i (a_i - (q-1)/2) q^(N-i) w_i` with
//! `w_i = 1 + ((q-1)(N+1-i) + 1)/(qN)`. Multiplying by `S = 2qN` makes every
//! value an integer, so audits run on integers and only reports convert to
//! rationals.
//!
//! A message `v` in the complement `W` is sent on channel `i` as the row
//! vector `v M_i`. Two messages agree in the first `lambda_i` symbols of
//! channel `i` exactly when their difference is orthogonal to the first
//! `lambda_i` columns of `M_i`, which the UDMG property limits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::{FqMatrix, Subspace};
use crate::udmg::Udmg;

/// Cap on `|W|` for exhaustive SNR sums.
pub const MAX_MESSAGES: u64 = 1 << 22;
/// Cap on `|W|^2` for pair audits.
pub const MAX_PAIRS: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    q: u32,
    n: usize,
}

impl Modulator {
    pub fn new(q: u32, n: usize) -> Result<Modulator> {
        if q < 2 || n < 1 {
            return Err(Error::InvalidInput(format!("modulator needs q >= 2 and N >= 1, got q = {q}, N = {n}")));
        }
        Ok(Modulator { q, n })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The common denominator `S = 2qN`.
    pub fn scale(&self) -> i128 {
        2 * self.q as i128 * self.n as i128
    }

    /// `w_1, ..., w_N`.
    pub fn weights(&self) -> Vec<BigRational> {
        let qn = self.q as i64 * self.n as i64;
        (1..=self.n as i64)
            .map(|i| {
                let num = qn + (self.q as i64 - 1) * (self.n as i64 + 1 - i) + 1;
                BigRational::new(num.into(), qn.into())
            })
            .collect()
    }

    fn check(&self, a: &[Elem]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch(format!("{} symbols for N = {}", a.len(), self.n)));
        }
        if let Some(&s) = a.iter().find(|&&s| s >= self.q) {
            return Err(Error::SymbolOutOfRange { symbol: s, q: self.q });
        }
        Ok(())
    }

    /// `S * mu_0(a)`; symbols must be in range.
    pub fn scaled_mu0(&self, a: &[Elem]) -> i128 {
        let q = self.q as i128;
        let n = self.n as i128;
        let mut acc = 0i128;
        let mut place = 1i128;
        for (idx, &s) in a.iter().enumerate().rev() {
            let i = idx as i128 + 1;
            let w = q * n + (q - 1) * (n + 1 - i) + 1;
            acc += (2 * s as i128 - q + 1) * place * w;
            place *= q;
        }
        acc
    }

    pub fn mu0(&self, a: &[Elem]) -> Result<BigRational> {
        self.check(a)?;
        Ok(BigRational::new(self.scaled_mu0(a).into(), self.scale().into()))
    }

    pub fn gap_check(&self, a: &[Elem], b: &[Elem]) -> Result<GapCheck> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::EqualInputs);
        }
        let m = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        let diff = (self.scaled_mu0(a) - self.scaled_mu0(b)).abs();
        let delta = BigRational::new(diff.into(), self.scale().into());
        let floor = BigRational::new(BigInt::from(self.q).pow((self.n - m - 1) as u32), BigInt::from(self.n));
        let pass = delta > floor;
        Ok(GapCheck { m, delta, floor, pass })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCheck {
    /// Length of the common prefix.
    pub m: usize,
    pub delta: BigRational,
    /// `q^(N-m-1) / N`.
    pub floor: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSummary {
    pub q: u32,
    pub n: usize,
    /// Ordered pairs of distinct symbol vectors.
    pub pairs_checked: u64,
    pub all_pass: bool,
    /// Smallest `|mu_0(a) - mu_0(b)|` among pairs with common prefix `m`.
    pub min_delta_by_prefix: Vec<BigRational>,
}

/// Checks the gap inequality on every ordered pair of distinct vectors.
pub fn gap_exhaustive(q: u32, n: usize) -> Result<GapSummary> {
    let md = Modulator::new(q, n)?;
    let total = (q as u64)
        .checked_pow(n as u32)
        .filter(|&t| t * t <= MAX_PAIRS)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{n} symbol vectors are too many for a pair scan")))?;
    let vectors: Vec<Vec<Elem>> = (0..total).map(|i| digits(i, q as u64, n)).collect();
    let values: Vec<i128> = vectors.iter().map(|v| md.scaled_mu0(v)).collect();
    let s = md.scale();
    // N |dS| > S q^(N-m-1)  <=>  |d| > q^(N-m-1)/N
    let per_pair = |i: usize, j: usize| -> (usize, i128, bool) {
        let m = vectors[i].iter().zip(&vectors[j]).take_while(|(x, y)| x == y).count();
        let d = (values[i] - values[j]).abs();
        let pass = n as i128 * d > s * (q as i128).pow((n - m - 1) as u32);
        (m, d, pass)
    };
    let (all_pass, mins) = (0..vectors.len())
        .into_par_iter()
        .map(|i| {
            let mut mins = vec![i128::MAX; n];
            let mut ok = true;
            for j in 0..vectors.len() {
                if i != j {
                    let (m, d, pass) = per_pair(i, j);
                    ok &= pass;
                    mins[m] = mins[m].min(d);
                }
            }
            (ok, mins)
        })
        .reduce(
            || (true, vec![i128::MAX; n]),
            |(a, ma), (b, mb)| (a && b, ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect()),
        );
    Ok(GapSummary {
        q,
        n,
        pairs_checked: total * (total - 1),
        all_pass,
        min_delta_by_prefix: mins.into_iter().map(|d| BigRational::new(d.into(), s.into())).collect(),
    })
}

fn digits(mut idx: u64, q: u64, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = (idx % q) as Elem;
        idx /= q;
    }
    out
}

#[derive(Clone, Debug)]
pub struct CodeScheme {
    pub udmg: Udmg,
    pub modulator: Modulator,
    /// Left kernels of the `M_i`.
    pub kernels: Vec<Subspace>,
    pub kernel_span: Subspace,
    /// `dim` of the kernel span.
    pub delta: usize,
    /// Message space, the deterministic complement of the kernel span.
    pub message_space: Subspace,
}

impl CodeScheme {
    pub fn field(&self) -> &Field {
        self.udmg.field()
    }

    pub fn n(&self) -> usize {
        self.udmg.k()
    }

    pub fn l(&self) -> usize {
        self.udmg.len()
    }

    pub fn message_dim(&self) -> usize {
        self.message_space.dim()
    }

    /// `(N - Delta) log2 q` bits per channel use.
    pub fn rate(&self) -> f64 {
        self.message_dim() as f64 * (self.field().order() as f64).log2()
    }

    pub fn message_count(&self) -> u64 {
        (self.field().order() as u64).saturating_pow(self.message_dim() as u32)
    }

    /// Every message in `W`, as coefficient combinations of its basis.
    pub fn messages(&self) -> Result<Vec<Vec<Elem>>> {
        let count = self.message_count();
        if count > MAX_MESSAGES {
            return Err(Error::TooLarge(format!("{count} messages exceed the 2^22 cap")));
        }
        let f = self.field();
        let basis = self.message_space.basis_vectors();
        let q = f.order() as u64;
        Ok((0..count)
            .map(|idx| {
                let coeffs = digits(idx, q, basis.len());
                let mut v = vec![0; self.n()];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(*c, y));
                    }
                }
                v
            })
            .collect())
    }

    /// `rho_i(v) = v M_i`.
    pub fn encode(&self, v: &[Elem]) -> Vec<Vec<Elem>> {
        self.udmg.matrices().iter().map(|m| m.vec_mul(v).expect("message length is N")).collect()
    }

    /// `S * mu_0(rho_i(v))` for each channel.
    fn scaled_codeword(&self, v: &[Elem]) -> Vec<i128> {
        self.encode(v).iter().map(|x| self.modulator.scaled_mu0(x)).collect()
    }
}

/// Builds the scheme of a square UDMG (`N_i = K = N` for all `i`).
pub fn build_scheme(u: &Udmg) -> Result<CodeScheme> {
    let n = u.k();
    if let Some((i, m)) = u.matrices().iter().enumerate().find(|(_, m)| m.rows() != n || m.cols() != n) {
        return Err(Error::NotSquare(format!("matrix {} is {}x{}, expected {n}x{n}", i + 1, m.rows(), m.cols())));
    }
    if u.is_empty() || n == 0 {
        return Err(Error::NotSquare("no matrices or zero height".into()));
    }
    let l = u.len();
    if l * n.saturating_sub(u.genus()) < n {
        return Err(Error::HypothesisUnmet(format!("L (N - g) >= N fails: L = {l}, N = {n}, g = {}", u.genus())));
    }
    let report = u.verify();
    if !report.valid {
        return Err(Error::HypothesisUnmet(format!(
            "not a UDMG of genus {}: witness {:?}",
            u.genus(),
            report.witness.unwrap_or_default()
        )));
    }
    let f = u.field();
    let kernels: Vec<Subspace> = u.matrices().iter().map(FqMatrix::left_kernel_basis).collect();
    let kernel_span = Subspace::sum(f, n, &kernels)?;
    let message_space = kernel_span.complement();
    Ok(CodeScheme {
        udmg: u.clone(),
        modulator: Modulator::new(f.order(), n)?,
        kernels,
        delta: kernel_span.dim(),
        kernel_span,
        message_space,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulationBounds {
    /// `L / (6 q^(2gL+2))` for odd `q`, `L / (2 q^(gL+4))` for even `q`.
    pub alpha: BigRational,
    /// `L q^(Lg)`.
    pub beta: BigRational,
    /// `alpha q^(2N) / N^2`.
    pub lower: BigRational,
    /// `beta q^(2N)`.
    pub upper: BigRational,
}

pub fn modulation_bounds(q: u32, n: usize, l: usize, g: usize) -> ModulationBounds {
    let qb = BigInt::from(q);
    let lb = BigInt::from(l);
    let alpha = if q % 2 == 1 {
        BigRational::new(lb.clone(), BigInt::from(6) * qb.pow((2 * g * l + 2) as u32))
    } else {
        BigRational::new(lb.clone(), BigInt::from(2) * qb.pow((g * l + 4) as u32))
    };
    let beta = BigRational::from_integer(lb * qb.pow((l * g) as u32));
    let q2n = BigRational::from_integer(qb.pow(2 * n as u32));
    let lower = &alpha * &q2n / BigRational::from_integer(BigInt::from(n * n));
    let upper = &beta * &q2n;
    ModulationBounds { alpha, beta, lower, upper }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnrReport {
    pub snr: BigRational,
    pub bounds: ModulationBounds,
    pub within_bounds: bool,
    pub messages: u64,
}

/// `(1/|W|) sum_v sum_i mu_0(rho_i v)^2`, exactly.
pub fn snr(scheme: &CodeScheme) -> Result<SnrReport> {
    let messages = scheme.messages()?;
    let total: BigInt = messages
        .par_iter()
        .map(|v| scheme.scaled_codeword(v).iter().map(|&x| BigInt::from(x * x)).sum::<BigInt>())
        .reduce(BigInt::zero, |a, b| a + b);
    let s = BigInt::from(scheme.modulator.scale());
    let snr = BigRational::new(total, &s * &s * BigInt::from(messages.len()));
    let bounds = modulation_bounds(scheme.field().order(), scheme.n(), scheme.l(), scheme.udmg.genus());
    let within_bounds = bounds.lower <= snr && snr <= bounds.upper;
    Ok(SnrReport { snr, bounds, within_bounds, messages: messages.len() as u64 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    /// Unordered pairs of distinct messages.
    pub pairs_checked: u64,
    /// `prod_i |mu_0(rho_i v) - mu_0(rho_i w)|^2`, minimized over pairs.
    pub min_product: Option<BigRational>,
    /// `q^(2(LN - (N+g-1) - L)) / N^(2L)`.
    pub floor: BigRational,
    /// Largest `sum_i lambda_i` seen; must stay below `N + g`.
    pub max_agreement: usize,
    pub pass: bool,
    /// No pairs exist.
    pub vacuous: bool,
    /// Indices into the message list of a pair attaining the minimum.
    pub worst_pair: Option<(Vec<Elem>, Vec<Elem>)>,
}

/// Checks over all message pairs that agreement prefixes satisfy
/// `sum lambda_i <= N + g - 1` and that the product distance clears both
/// the per-pair bound `prod q^(2(N-lambda_i-1))/N^2` and the global floor.
pub fn audit_product_distance(scheme: &CodeScheme) -> Result<AuditReport> {
    let count = scheme.message_count();
    if count.saturating_mul(count) > MAX_PAIRS {
        return Err(Error::TooLarge(format!("{count}^2 message pairs exceed the 2^24 cap")));
    }
    let messages = scheme.messages()?;
    let encoded: Vec<Vec<Vec<Elem>>> = messages.iter().map(|v| scheme.encode(v)).collect();
    let values: Vec<Vec<i128>> =
        encoded.iter().map(|cw| cw.iter().map(|x| scheme.modulator.scaled_mu0(x)).collect()).collect();

    let q = scheme.field().order();
    let n = scheme.n();
    let l = scheme.l();
    let g = scheme.udmg.genus();
    let s = BigInt::from(scheme.modulator.scale());
    let s2l = s.pow(2 * l as u32);
    let n2l = BigInt::from(n).pow(2 * l as u32);
    let qb = BigInt::from(q);

    let floor_exp = (l * n) as i64 - (n + g) as i64 + 1 - l as i64;
    let floor = pow_rational(&qb, 2 * floor_exp) / BigRational::from_integer(n2l.clone());

    struct Acc {
        pass: bool,
        max_agreement: usize,
        min: Option<(BigInt, usize, usize)>,
    }
    let merge = |a: Acc, b: Acc| -> Acc {
        let min = match (a.min, b.min) {
            (Some(x), Some(y)) => Some(if (&y.0, y.1, y.2) < (&x.0, x.1, x.2) { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        };
        Acc { pass: a.pass && b.pass, max_agreement: a.max_agreement.max(b.max_agreement), min }
    };
    let limit = n + g - 1;
    let acc = (0..messages.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = Acc { pass: true, max_agreement: 0, min: None };
            for j in i + 1..messages.len() {
                let lambdas: Vec<usize> = encoded[i]
                    .iter()
                    .zip(&encoded[j])
                    .map(|(x, y)| x.iter().zip(y).take_while(|(a, b)| a == b).count())
                    .collect();
                let agreement: usize = lambdas.iter().sum();
                acc.max_agreement = acc.max_agreement.max(agreement);
                let product: BigInt =
                    values[i].iter().zip(&values[j]).map(|(a, b)| BigInt::from((a - b) * (a - b))).product();
                // product / S^2L >= prod q^(2(N - lambda_i - 1)) / N^2L
                let per_pair_ok = lambdas.iter().all(|&lam| lam < n) && {
                    let e: usize = lambdas.iter().map(|&lam| n - lam - 1).sum();
                    &product * &n2l >= &s2l * qb.pow(2 * e as u32)
                };
                let floor_ok = BigRational::new(product.clone(), s2l.clone()) >= floor;
                acc.pass &= agreement <= limit && per_pair_ok && floor_ok;
                let better = match &acc.min {
                    None => true,
                    Some((m, _, _)) => product < *m,
                };
                if better {
                    acc.min = Some((product, i, j));
                }
            }
            acc
        })
        .reduce(|| Acc { pass: true, max_agreement: 0, min: None }, merge);

    let pairs_checked = (messages.len() as u64) * (messages.len().saturating_sub(1) as u64) / 2;
    Ok(AuditReport {
        pairs_checked,
        min_product: acc.min.as_ref().map(|(p, _, _)| BigRational::new(p.clone(), s2l.clone())),
        floor,
        max_agreement: acc.max_agreement,
        pass: acc.pass,
        vacuous: pairs_checked == 0,
        worst_pair: acc.min.map(|(_, i, j)| (messages[i].clone(), messages[j].clone())),
    })
}

fn pow_rational(base: &BigInt, e: i64) -> BigRational {
    let p = BigRational::from_integer(base.pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexScheme {
    pub snr: BigRational,
    pub complex_snr: BigRational,
    /// Message dimension of `W x W`.
    pub message_dim: usize,
    pub base_message_dim: usize,
    pub snr_doubled: bool,
    pub rate_doubled: bool,
}

impl ComplexScheme {
    pub fn rate(&self, q: u32) -> f64 {
        self.message_dim as f64 * (q as f64).log2()
    }
}

/// The scheme on `W x W` sending `(v, w)` as `mu(v) + i mu(w)`. Its SNR is
/// summed explicitly over all pairs rather than inferred.
pub fn complexify(scheme: &CodeScheme) -> Result<ComplexScheme> {
    let base = snr(scheme)?;
    let count = scheme.message_count();
    if count.saturating_mul(count) > MAX_PAIRS {
        return Err(Error::TooLarge(format!("{count}^2 message pairs exceed the 2^24 cap")));
    }
    let messages = scheme.messages()?;
    let power: Vec<BigInt> =
        messages.iter().map(|v| scheme.scaled_codeword(v).iter().map(|&x| BigInt::from(x * x)).sum()).collect();
    // |mu(v) + i mu(w)|^2 = |mu(v)|^2 + |mu(w)|^2
    let total: BigInt =
        power.par_iter().map(|pv| power.iter().map(|pw| pv + pw).sum::<BigInt>()).reduce(BigInt::zero, |a, b| a + b);
    let s = BigInt::from(scheme.modulator.scale());
    let m = BigInt::from(messages.len());
    let complex_snr = BigRational::new(total, &s * &s * &m * &m);
    let two = BigRational::from_integer(BigInt::from(2));
    let message_dim = 2 * scheme.message_dim();
    Ok(ComplexScheme {
        snr_doubled: complex_snr == &two * &base.snr,
        rate_doubled: message_dim == 2 * scheme.message_dim(),
        snr: base.snr,
        complex_snr,
        message_dim,
        base_message_dim: scheme.message_dim(),
    })
}

/// `num/den` form for reports.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nonnegative rationals only; used in reports to give a rough magnitude.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let approx = |b: &BigInt| -> (f64, i64) {
        let bits = b.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: BigInt = b >> shift as usize;
        (top.to_string().parse::<f64>().unwrap_or(0.0), shift)
    };
    let (n, ns) = approx(&r.numer().abs());
    let (d, ds) = approx(r.denom());
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * n / d * 2f64.powi((ns - ds) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mu0_examples() {
        let m = Modulator::new(5, 1).unwrap();
        assert_eq!(m.weights(), vec![rat(2, 1)]);
        assert_eq!(m.mu0(&[3]).unwrap(), rat(2, 1));
        let m = Modulator::new(5, 3).unwrap();
        assert_eq!(m.mu0(&[2, 2, 2]).unwrap(), rat(0, 1));
        let m = Modulator::new(2, 2).unwrap();
        // w_1 = 1 + (1*2 + 1)/4, w_2 = 1 + (1*1 + 1)/4
        assert_eq!(m.weights(), vec![rat(7, 4), rat(3, 2)]);
        // (1/2)*2*(7/4) + (1/2)*(3/2)
        assert_eq!(m.mu0(&[1, 1]).unwrap(), rat(5, 2));
        assert_eq!(m.mu0(&[2, 0]), Err(Error::SymbolOutOfRange { symbol: 2, q: 2 }));
    }

    #[test]
    fn weights_are_between_one_and_two() {
        for q in 2..=9 {
            for n in 1..=8 {
                for w in Modulator::new(q, n).unwrap().weights() {
                    assert!(w >= rat(1, 1) && w <= rat(2, 1), "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        let m = Modulator::new(5, 3).unwrap();
        let g = m.gap_check(&[1, 0, 0], &[0, 4, 4]).unwrap();
        assert_eq!(g.m, 0);
        assert_eq!(g.floor, rat(25, 3));
        assert_eq!(g.delta, rat(28, 3));
        assert!(g.pass);
        let g = m.gap_check(&[1, 2, 3], &[1, 2, 4]).unwrap();
        assert_eq!(g.floor, rat(1, 3));
        assert!(g.pass);
        assert_eq!(m.gap_check(&[1, 1, 1], &[1, 1, 1]), Err(Error::EqualInputs));
    }

    #[test]
    fn binary_gap_exhaustive() {
        for n in 1..=4 {
            let s = gap_exhaustive(2, n).unwrap();
            assert!(s.all_pass);
            assert_eq!(s.pairs_checked, (1 << n) * ((1 << n) - 1));
        }
    }

    #[test]
    fn identity_scheme_snr() {
        let f = make_field(5, 1).unwrap();
        let u = Udmg::new(&f, 1, 0, vec![FqMatrix::identity(&f, 1)]).unwrap();
        let s = build_scheme(&u).unwrap();
        assert_eq!(s.delta, 0);
        let r = snr(&s).unwrap();
        assert_eq!(r.snr, rat(8, 1));
        assert!(r.within_bounds);
        let c = complexify(&s).unwrap();
        assert_eq!(c.complex_snr, rat(16, 1));
        assert!(c.snr_doubled && c.rate_doubled);
    }

    #[test]
    fn non_square_is_rejected() {
        let f = make_field(2, 1).unwrap();
        let m = FqMatrix::from_rows(&f, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let u = Udmg::new(&f, 2, 0, vec![m]).unwrap();
        assert!(matches!(build_scheme(&u), Err(Error::NotSquare(_))));
    }

    #[test]
    fn single_message_audit_is_vacuous() {
        let f = make_field(2, 1).unwrap();
        let u = Udmg::new(&f, 1, 0, vec![FqMatrix::identity(&f, 1)]).unwrap();
        let mut s = build_scheme(&u).unwrap();
        s.message_space = Subspace::zero(&f, 1);
        assert_eq!(s.message_count(), 1);
        let a = audit_product_distance(&s).unwrap();
        assert!(a.vacuous && a.pass);
        assert!(complexify(&s).unwrap().snr_doubled);
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(rational_string(&rat(19, 8)), "19/8");
        assert_eq!(rational_string(&rat(16, 2)), "8");
        assert!((rational_to_f64(&rat(28, 3)) - 9.3333).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn mu0_is_odd_under_symbol_involution(q in 2u32..8, a in prop::collection::vec(0u32..8, 1..5)) {
            let a: Vec<u32> = a.into_iter().map(|x| x % q).collect();
            let m = Modulator::new(q, a.len()).unwrap();
            let flipped: Vec<u32> = a.iter().map(|&x| q - 1 - x).collect();
            prop_assert_eq!(m.mu0(&flipped).unwrap(), -m.mu0(&a).unwrap());
        }
    }
}
