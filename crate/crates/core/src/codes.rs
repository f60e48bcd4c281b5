//! First-column codes of UDMGs, minimum distance, and size bounds.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::FqMatrix;
use crate::udmg::Udmg;

/// Largest `q^k` accepted by [`min_distance`].
pub const MAX_CODEWORDS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: FqMatrix,
    d: Option<usize>,
}

impl LinearCode {
    pub fn new(generator: FqMatrix) -> Result<LinearCode> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::RankDeficient { rank, k: generator.rows() });
        }
        Ok(LinearCode { generator, d: None })
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    /// Minimum distance, if computed.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    /// Singleton defect `n + 1 - d - k`, if `d` is known.
    pub fn defect(&self) -> Option<usize> {
        self.d.map(|d| self.n() + 1 - d - self.k())
    }

    pub fn with_distance(mut self) -> Result<LinearCode> {
        self.d = Some(min_distance(&self)?);
        Ok(self)
    }
}

/// Least Hamming weight over all `q^k - 1` nonzero codewords.
pub fn min_distance(code: &LinearCode) -> Result<usize> {
    let q = code.field().order() as u64;
    let k = code.k() as u32;
    let count = q
        .checked_pow(k)
        .filter(|&c| c <= MAX_CODEWORDS)
        .ok_or_else(|| Error::TooLarge(format!("{q}^{k} codewords exceed the 2^22 enumeration cap")))?;
    let g = &code.generator;
    let d = (1..count)
        .into_par_iter()
        .map(|idx| {
            let msg = digits(idx, q, k as usize);
            g.vec_mul(&msg).expect("message length is k").iter().filter(|&&c| c != 0).count()
        })
        .min()
        .unwrap_or(code.n());
    Ok(d)
}

fn digits(mut idx: u64, q: u64, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for d in out.iter_mut().rev() {
        *d = (idx % q) as Elem;
        idx /= q;
    }
    out
}

/// The `[L, K]` code whose generator has the first column of `M_i` as its
/// `i`-th column, with its minimum distance.
pub fn first_column_code(u: &Udmg) -> Result<LinearCode> {
    let need = u.k() + u.genus();
    if u.len() < need {
        return Err(Error::TooShort { l: u.len(), need });
    }
    let cols: Vec<Vec<Elem>> = u.matrices().iter().map(|m| m.column(0)).collect();
    let g = FqMatrix::from_columns(u.field(), u.k(), &cols)?;
    let code = LinearCode::new(g)?.with_distance()?;
    let defect = code.defect().expect("distance computed");
    if defect > u.genus() {
        return Err(Error::DefectAboveGenus { defect, genus: u.genus() });
    }
    Ok(code)
}

/// Each matrix repeated `copies` times in place. A genus `g` UDMG of height
/// `K` becomes one of genus `copies (K - 1 + g) - (K - 1)`: a failing
/// selection uses prefixes summing to at most `K - 1 + g` per distinct
/// matrix, hence at most `copies` times that overall.
pub fn duplicate(u: &Udmg, copies: usize) -> Result<Udmg> {
    if copies == 0 {
        return Err(Error::InvalidInput("at least one copy is needed".into()));
    }
    if u.k() == 0 {
        return Err(Error::InvalidInput("height must be positive".into()));
    }
    let matrices = u.matrices().iter().flat_map(|m| std::iter::repeat_n(m.clone(), copies)).collect();
    let genus = copies * (u.k() - 1 + u.genus()) - (u.k() - 1);
    Udmg::new(u.field(), u.k(), genus, matrices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClass {
    One,
    Two,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsmdsBound {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// `k - 2 + (q + 1)(s + 1)`.
    pub bound: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "K")]
    pub k: usize,
    pub q: u64,
    pub g: usize,
    pub lengths: Option<Vec<usize>>,
    /// `K - 2 + (g + 1)(q + 1)`.
    pub thm_1dim: usize,
    pub class: BoundClass,
    /// `(g + 1)(q + 1)`.
    pub bound_class1: usize,
    /// `floor((K - 2) / (gamma - 1))`.
    pub bound_class2_upper: Option<usize>,
    /// `g + 3`.
    pub bound_class2_lower: usize,
    pub class2_note: &'static str,
    /// The class-appropriate upper bound on `L`.
    pub thm_bounddelta: Option<usize>,
    pub gamma: Option<usize>,
    /// Largest `L` with `C(K-2+L, K-1) <= C(K+g-1, K-1) (q^K - 1)/(q - 1)`.
    pub partition_bound: Option<usize>,
    pub partition_note: Option<String>,
    pub asmds: Option<AsmdsBound>,
}

const CLASS2_NOTE: &str = "class 2: the quotient argument gives g + 2 < L, so g + 3 <= L <= floor((K - 2)/(gamma - 1))";

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Largest `L` satisfying the counting inequality; the left side grows
/// strictly with `L` for `K >= 2`.
pub fn partition_bound(k: usize, q: u64, g: usize) -> usize {
    let qk = BigUint::from(q).pow(k as u32);
    let rhs = binomial(k + g - 1, k - 1) * (qk - 1u32) / BigUint::from(q - 1);
    let mut l = 0;
    while binomial(k - 2 + l + 1, k - 1) <= rhs {
        l += 1;
    }
    l
}

pub fn bounds(
    k: usize,
    q: u64,
    g: usize,
    lengths: Option<&[usize]>,
    nks: Option<(usize, usize, usize)>,
) -> Result<BoundReport> {
    if k < 2 {
        return Err(Error::HypothesisUnmet(format!("K >= 2 is required, got K = {k}")));
    }
    if q < 2 {
        return Err(Error::HypothesisUnmet(format!("q >= 2 is required, got q = {q}")));
    }
    let thm_1dim = k - 2 + (g + 1) * (q as usize + 1);
    let bound_class1 = (g + 1) * (q as usize + 1);
    let gamma = lengths.and_then(|ls| ls.iter().copied().min());

    let class = match lengths {
        None => BoundClass::NotApplicable("no lengths given".into()),
        Some(ls) if ls.iter().any(|&n| n < 2) => BoundClass::NotApplicable("some N_i < 2".into()),
        Some(ls) if ls.iter().map(|&n| n - 1).sum::<usize>() >= k - 2 => BoundClass::One,
        Some(_) => BoundClass::Two,
    };
    let bound_class2_upper = gamma.filter(|&gm| gm >= 2).map(|gm| (k - 2) / (gm - 1));
    let thm_bounddelta = match class {
        BoundClass::One => Some(bound_class1),
        BoundClass::Two => bound_class2_upper,
        BoundClass::NotApplicable(_) => None,
    };

    let (partition_bound, partition_note) = match lengths {
        Some(ls) if ls.iter().any(|&n| n + 1 < k) => (None, Some(format!("requires every N_i >= K - 1 = {}", k - 1))),
        Some(_) => (Some(partition_bound(k, q, g)), None),
        None => (Some(partition_bound(k, q, g)), Some("assumes every N_i >= K - 1".into())),
    };

    let asmds = nks.map(|(n, kk, s)| {
        let bound = kk + (q as usize + 1) * (s + 1) - 2;
        AsmdsBound { n, k: kk, s, bound, satisfied: n <= bound }
    });

    Ok(BoundReport {
        k,
        q,
        g,
        lengths: lengths.map(<[usize]>::to_vec),
        thm_1dim,
        class,
        bound_class1,
        bound_class2_upper,
        bound_class2_lower: g + 3,
        class2_note: CLASS2_NOTE,
        thm_bounddelta,
        gamma,
        partition_bound,
        partition_note,
        asmds,
    })
}
