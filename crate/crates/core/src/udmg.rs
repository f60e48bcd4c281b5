//! UDMGs and their coordinate-free form (UDVSGs).
//!
//! A list of `K`-row matrices is a UDMG of genus `g` when every allowable
//! selection of column prefixes, `lambda_i` columns from matrix `i` with
//! `sum lambda_i = K + g`, spans F_q^K.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::linalg::{rank_of_rows, FqMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Udmg {
    field: Field,
    k: usize,
    genus: usize,
    matrices: Vec<FqMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    /// Lexicographically first failing allowable vector.
    pub witness: Option<Vec<usize>>,
    /// Allowable vectors examined, up to and including the witness.
    pub checked: usize,
    pub total: usize,
    /// No allowable vectors exist, so validity holds emptily.
    pub vacuous: bool,
}

impl Udmg {
    pub fn new(field: &Field, k: usize, genus: usize, matrices: Vec<FqMatrix>) -> Result<Udmg> {
        for (i, m) in matrices.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != k {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} has {} rows, expected K = {k}",
                    i + 1,
                    m.rows()
                )));
            }
        }
        Ok(Udmg { field: field.clone(), k, genus, matrices })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrices(&self) -> &[FqMatrix] {
        &self.matrices
    }

    /// Number of matrices `L`.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.matrices.iter().map(FqMatrix::cols).collect()
    }

    pub fn total_columns(&self) -> usize {
        self.matrices.iter().map(FqMatrix::cols).sum()
    }

    pub fn with_genus(&self, genus: usize) -> Udmg {
        Udmg { genus, ..self.clone() }
    }

    /// `N >= K + g`, every `N_i <= K + g` and `K >= 2`.
    pub fn is_nondegenerate(&self) -> bool {
        let kg = self.k + self.genus;
        self.total_columns() >= kg && self.lengths().iter().all(|&n| n <= kg) && self.k >= 2
    }

    /// Whether the first `lambda_i` columns of each matrix span F_q^K.
    pub fn spans(&self, lambda: &[usize]) -> bool {
        self.prefix_rank(lambda) == self.k
    }

    pub fn prefix_rank(&self, lambda: &[usize]) -> usize {
        let rows: Vec<Vec<Elem>> = (0..self.k)
            .map(|r| self.matrices.iter().zip(lambda).flat_map(|(m, &l)| m.row(r)[..l].iter().copied()).collect())
            .collect();
        rank_of_rows(&self.field, rows)
    }

    /// The `K x sum(lambda)` matrix of selected columns.
    pub fn prefix_matrix(&self, lambda: &[usize]) -> FqMatrix {
        let parts: Vec<FqMatrix> = self.matrices.iter().zip(lambda).map(|(m, &l)| m.prefix(l)).collect();
        FqMatrix::hconcat(&self.field, self.k, &parts).expect("matrices share K")
    }

    pub fn verify(&self) -> VerifyReport {
        let vectors = allowable_vectors(&self.lengths(), self.k, self.genus);
        let total = vectors.len();
        let failure = vectors.par_iter().position_first(|lam| !self.spans(lam));
        match failure {
            Some(i) => {
                VerifyReport { valid: false, witness: Some(vectors[i].clone()), checked: i + 1, total, vacuous: false }
            }
            None => VerifyReport { valid: true, witness: None, checked: total, total, vacuous: total == 0 },
        }
    }

    /// Keeps the first `N'_i` columns of each matrix and drops matrices
    /// truncated to nothing.
    pub fn truncate(&self, lengths: &[usize]) -> Result<Udmg> {
        if lengths.len() != self.len() {
            return Err(Error::LengthMismatch(format!("{} lengths for {} matrices", lengths.len(), self.len())));
        }
        if let Some((i, _)) = lengths.iter().zip(self.lengths()).enumerate().find(|(_, (&a, b))| a > *b) {
            return Err(Error::LengthMismatch(format!("N'_{} = {} exceeds N_{}", i + 1, lengths[i], i + 1)));
        }
        let matrices = self.matrices.iter().zip(lengths).filter(|(_, &n)| n > 0).map(|(m, &n)| m.prefix(n)).collect();
        Ok(Udmg { matrices, ..self.clone() })
    }

    /// Chain of column-prefix spans for each matrix.
    pub fn realize(&self) -> Udvsg {
        let chains = self
            .matrices
            .iter()
            .map(|m| {
                let subspaces = (1..=m.cols()).map(|j| Subspace::column_space(&m.prefix(j))).collect();
                Chain { field: self.field.clone(), ambient: self.k, subspaces }
            })
            .collect();
        Udvsg { field: self.field.clone(), k: self.k, genus: self.genus, chains }
    }
}

/// Least genus at which the matrices verify, and whether that genus is
/// only reached vacuously (`K + g > N`).
pub fn minimal_genus(field: &Field, k: usize, matrices: &[FqMatrix]) -> Result<(usize, bool)> {
    let u = Udmg::new(field, k, 0, matrices.to_vec())?;
    let n = u.total_columns();
    for g in 0.. {
        if k + g > n {
            return Ok((g, true));
        }
        if u.with_genus(g).verify().valid {
            return Ok((g, false));
        }
    }
    unreachable!()
}

/// Compositions of `K + g` with parts capped by `lengths`, in ascending
/// lexicographic order.
pub fn allowable_vectors(lengths: &[usize], k: usize, g: usize) -> Vec<Vec<usize>> {
    capped_compositions(lengths, 0, k + g)
}

/// Vectors with `lo <= lambda_i <= lengths[i]` summing to `total`, in
/// ascending lexicographic order.
pub fn capped_compositions(lengths: &[usize], lo: usize, total: usize) -> Vec<Vec<usize>> {
    // suffix capacity bounds prune the search
    let mut max_rest = vec![0; lengths.len() + 1];
    for i in (0..lengths.len()).rev() {
        max_rest[i] = max_rest[i + 1] + lengths[i];
    }
    let mut out = Vec::new();
    if lengths.iter().any(|&n| n < lo) {
        return out;
    }
    let mut cur = Vec::with_capacity(lengths.len());
    fn rec(
        i: usize,
        left: usize,
        lo: usize,
        lengths: &[usize],
        max_rest: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == lengths.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let min_rest = lo * (lengths.len() - i - 1);
        for v in lo..=lengths[i].min(left) {
            let rest = left - v;
            if rest > max_rest[i + 1] || rest < min_rest {
                continue;
            }
            cur.push(v);
            rec(i + 1, rest, lo, lengths, max_rest, cur, out);
            cur.pop();
        }
    }
    rec(0, total, lo, lengths, &max_rest, &mut cur, &mut out);
    out
}

/// A chain `V_1 <= ... <= V_N` of subspaces of F_q^K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    field: Field,
    ambient: usize,
    subspaces: Vec<Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneMode {
    /// Drop leading zero subspaces.
    Reduced,
    /// Also drop repeated subspaces.
    Irredundant,
}

impl Chain {
    pub fn new(field: &Field, ambient: usize, subspaces: Vec<Subspace>) -> Result<Chain> {
        if let Some(s) = subspaces.iter().find(|s| s.ambient_dim() != ambient) {
            return Err(Error::AmbientMismatch(s.ambient_dim(), ambient));
        }
        let chain = Chain { field: field.clone(), ambient, subspaces };
        if !chain.is_closely_nested() {
            return Err(Error::InvalidInput("chain is not closely nested".into()));
        }
        Ok(chain)
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// `V_j` with the convention `V_0 = {0}`.
    pub fn at(&self, j: usize) -> Subspace {
        if j == 0 {
            Subspace::zero(&self.field, self.ambient)
        } else {
            self.subspaces[j - 1].clone()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    pub fn is_nested(&self) -> bool {
        self.subspaces.windows(2).all(|w| w[0].is_subspace_of(&w[1]))
    }

    pub fn is_closely_nested(&self) -> bool {
        let dims = self.dims();
        self.is_nested() && dims.first().is_none_or(|&d| d <= 1) && dims.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn prune(&self, mode: PruneMode) -> Chain {
        let mut subspaces: Vec<Subspace> = self.subspaces.iter().skip_while(|s| s.is_zero()).cloned().collect();
        if mode == PruneMode::Irredundant {
            subspaces.dedup();
        }
        Chain { subspaces, ..self.clone() }
    }

    /// One column per step: a new basis vector where the dimension grows,
    /// zero where it stays put.
    pub fn to_matrix(&self) -> FqMatrix {
        let mut cols = Vec::with_capacity(self.len());
        let mut prev = Subspace::zero(&self.field, self.ambient);
        for s in &self.subspaces {
            let col = if s.dim() > prev.dim() {
                s.basis_vectors().into_iter().find(|v| !prev.contains(v)).expect("dimension grew")
            } else {
                vec![0; self.ambient]
            };
            cols.push(col);
            prev = s.clone();
        }
        FqMatrix::from_columns(&self.field, self.ambient, &cols).expect("vectors have ambient length")
    }
}

/// Universally decodable vector spaces of genus `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Udvsg {
    field: Field,
    k: usize,
    genus: usize,
    chains: Vec<Chain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: Udvsg,
    pub d: usize,
    pub r: usize,
    pub b_dim: usize,
    /// The quotient re-verified at its stated parameters.
    pub verified: bool,
}

impl Udvsg {
    pub fn new(field: &Field, k: usize, genus: usize, chains: Vec<Chain>) -> Result<Udvsg> {
        for c in &chains {
            if c.ambient != k {
                return Err(Error::AmbientMismatch(c.ambient, k));
            }
            if !c.is_closely_nested() {
                return Err(Error::InvalidInput("chain is not closely nested".into()));
            }
        }
        Ok(Udvsg { field: field.clone(), k, genus, chains })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Chain::len).collect()
    }

    fn sum_at(&self, lambda: &[usize]) -> Subspace {
        let parts: Vec<Subspace> = self.chains.iter().zip(lambda).map(|(c, &l)| c.at(l)).collect();
        Subspace::sum(&self.field, self.k, &parts).expect("chains share the ambient space")
    }

    /// Allowable vectors with `0 <= lambda_i` and `sum = K + g`.
    pub fn verify(&self) -> VerifyReport {
        let vectors = allowable_vectors(&self.lengths(), self.k, self.genus);
        self.check_all(vectors)
    }

    /// The variant with `1 <= lambda_i` and `sum >= K + g`. Spans only grow
    /// with `lambda`, so the minimal sums `max(K + g, L)` suffice.
    pub fn verify_positive(&self) -> VerifyReport {
        let target = (self.k + self.genus).max(self.chains.len());
        let vectors = capped_compositions(&self.lengths(), 1, target);
        self.check_all(vectors)
    }

    fn check_all(&self, vectors: Vec<Vec<usize>>) -> VerifyReport {
        let total = vectors.len();
        match vectors.par_iter().position_first(|lam| !self.sum_at(lam).is_full()) {
            Some(i) => {
                VerifyReport { valid: false, witness: Some(vectors[i].clone()), checked: i + 1, total, vacuous: false }
            }
            None => VerifyReport { valid: true, witness: None, checked: total, total, vacuous: total == 0 },
        }
    }

    pub fn to_udmg(&self) -> Udmg {
        let matrices = self.chains.iter().map(Chain::to_matrix).collect();
        Udmg { field: self.field.clone(), k: self.k, genus: self.genus, matrices }
    }

    /// Quotient by the proper sub-UDVSG of lengths `truncation`.
    ///
    /// `B` is the sum of the truncated tops `V^i_{N'_i}`; every chain is
    /// pushed into `W / B` and its first `N'_i` entries are dropped. The
    /// result has height `d + r` and genus `g - d`.
    pub fn quotient(&self, truncation: &[usize]) -> Result<QuotientResult> {
        let lengths = self.lengths();
        if truncation.len() != lengths.len() {
            return Err(Error::LengthMismatch(format!(
                "{} truncation lengths for {} chains",
                truncation.len(),
                lengths.len()
            )));
        }
        if truncation.iter().zip(&lengths).any(|(a, b)| a >= b) {
            return Err(Error::NotProperSub(truncation.to_vec()));
        }
        let report = self.verify();
        if !report.valid {
            return Err(Error::InvalidInput(format!(
                "input fails verification at genus {}, witness {:?}",
                self.genus,
                report.witness.unwrap_or_default()
            )));
        }
        if report.vacuous {
            return Err(Error::InvalidInput("input has no allowable vectors".into()));
        }

        let b = self.sum_at(truncation);
        let prefix: usize = truncation.iter().sum();
        let r = self.k.saturating_sub(prefix);
        let d = (self.k - r) - b.dim();
        if d > self.genus {
            return Err(Error::InvalidInput(format!("quotient defect {d} exceeds genus {}", self.genus)));
        }
        let q = b.quotient_map();
        let height = self.k - b.dim();
        let chains = self
            .chains
            .iter()
            .zip(truncation)
            .map(|(c, &skip)| {
                let subspaces = c.subspaces[skip..]
                    .iter()
                    .map(|s| s.image(&q).expect("quotient map has ambient columns"))
                    .collect();
                Chain { field: self.field.clone(), ambient: height, subspaces }
            })
            .collect();
        let quotient = Udvsg { field: self.field.clone(), k: height, genus: self.genus - d, chains };
        let verified = quotient.chains.iter().all(Chain::is_closely_nested) && quotient.verify().valid;
        Ok(QuotientResult { quotient, d, r, b_dim: b.dim(), verified })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn mat(f: &Field, rows: &[&[u32]]) -> FqMatrix {
        FqMatrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn allowable_examples() {
        assert_eq!(allowable_vectors(&[1, 1, 1], 2, 0), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        let nine = allowable_vectors(&[3; 9], 3, 1);
        assert!(nine.contains(&vec![3, 1, 0, 0, 0, 0, 0, 0, 0]));
        assert!(nine.iter().all(|v| v.iter().sum::<usize>() == 4));
        // three single columns are allowable only at genus 0
        assert!(!nine.contains(&vec![0, 0, 0, 0, 0, 1, 1, 1, 0]));
        assert!(allowable_vectors(&[3; 9], 3, 0).contains(&vec![0, 0, 0, 0, 0, 1, 1, 1, 0]));
        assert!(allowable_vectors(&[2, 2], 3, 2).is_empty());
    }

    #[test]
    fn identity_is_a_udm() {
        let f = make_field(5, 1).unwrap();
        let u = Udmg::new(&f, 3, 0, vec![FqMatrix::identity(&f, 3)]).unwrap();
        let r = u.verify();
        assert!(r.valid && !r.vacuous);
        assert_eq!(minimal_genus(&f, 3, u.matrices()).unwrap(), (0, false));
    }

    #[test]
    fn two_binary_identities() {
        let f = make_field(2, 1).unwrap();
        let id = FqMatrix::identity(&f, 2);
        let u = Udmg::new(&f, 2, 0, vec![id.clone(), id]).unwrap();
        // (1,1) picks e_1 twice
        assert_eq!(u.verify().witness, Some(vec![1, 1]));
        let scan: Vec<bool> = (0..=2).map(|g| u.with_genus(g).verify().valid).collect();
        assert_eq!(scan, vec![false, true, true]);
        assert_eq!(minimal_genus(&f, 2, u.matrices()).unwrap(), (1, false));
    }

    #[test]
    fn truncate_to_nothing_is_empty() {
        let f = make_field(3, 1).unwrap();
        let u = Udmg::new(&f, 2, 0, vec![FqMatrix::identity(&f, 2); 2]).unwrap();
        assert_eq!(u.truncate(&[2, 2]).unwrap(), u);
        assert!(u.truncate(&[0, 0]).unwrap().is_empty());
        assert!(matches!(u.truncate(&[3, 0]), Err(Error::LengthMismatch(_))));
        assert!(matches!(u.truncate(&[1]), Err(Error::LengthMismatch(_))));
    }

    #[test]
    fn prune_modes() {
        let f = make_field(5, 1).unwrap();
        let m = mat(&f, &[&[1, 1], &[0, 0]]);
        let chain = &Udmg::new(&f, 2, 0, vec![m]).unwrap().realize().chains[0];
        assert_eq!(chain.dims(), vec![1, 1]);
        assert_eq!(chain.prune(PruneMode::Irredundant).len(), 1);
        assert_eq!(chain.prune(PruneMode::Reduced).len(), 2);

        let m = mat(&f, &[&[0, 1], &[0, 0]]);
        let chain = &Udmg::new(&f, 2, 0, vec![m]).unwrap().realize().chains[0];
        let reduced = chain.prune(PruneMode::Reduced);
        assert_eq!(reduced.dims(), vec![1]);
    }

    #[test]
    fn conventions_can_disagree() {
        // M_1 = (0), M_2 = (1): lambda = (1, 0) fails, yet every vector
        // with both parts positive includes the spanning column.
        let f = make_field(2, 1).unwrap();
        let u = Udmg::new(&f, 1, 0, vec![mat(&f, &[&[0]]), mat(&f, &[&[1]])]).unwrap();
        let v = u.realize();
        assert!(!v.verify().valid);
        assert!(v.verify_positive().valid);
    }

    #[test]
    fn chain_round_trips_through_matrix() {
        let f = make_field(3, 1).unwrap();
        let m = mat(&f, &[&[0, 1, 2, 0], &[0, 0, 0, 1], &[0, 1, 2, 2]]);
        let c = &Udmg::new(&f, 3, 0, vec![m]).unwrap().realize().chains[0];
        assert!(c.is_closely_nested());
        let back = &Udmg::new(&f, 3, 0, vec![c.to_matrix()]).unwrap().realize().chains[0];
        assert_eq!(back, c);
    }

    #[test]
    fn quotient_by_empty_is_identity() {
        let f = make_field(5, 1).unwrap();
        let u = Udmg::new(&f, 2, 0, vec![FqMatrix::identity(&f, 2); 3]).unwrap().with_genus(2);
        let v = u.realize();
        let q = v.quotient(&[0, 0, 0]).unwrap();
        assert_eq!((q.d, q.r, q.b_dim), (0, 2, 0));
        assert_eq!(q.quotient, v);
        assert!(q.verified);
        assert!(matches!(v.quotient(&[2, 0, 0]), Err(Error::NotProperSub(_))));
    }
}
