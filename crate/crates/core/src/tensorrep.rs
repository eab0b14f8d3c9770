//! Matrices of Hecke elements on `V^{⊗m}`, `V = C^N`, the quantum symmetric
//! power `W = S_q^k(V)`, and fused R-matrices on `W ⊗ W`.
//!
//! Tensor basis vectors `e_{i_1} ⊗ ... ⊗ e_{i_m}` are ordered
//! lexicographically (first factor most significant) and matrices act on
//! column vectors.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, format_rational, int, parse_rational, BigRational, ParamPoint};
use crate::fusedhecke::{baxter_coefficients, braid_word, classical_coefficients};
use crate::heckecore::{symmetriser_sum, AlgebraElement};

/// Largest tensor space `N^m` a representation may act on.
pub const MAX_TENSOR_DIM: usize = 6561;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// First entry on which two matrices disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub left: BigRational,
    pub right: BigRational,
}

impl fmt::Display for EntryDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({},{}) differs: {} vs {}", self.row + 1, self.col + 1, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixVerification {
    pub holds: bool,
    pub diff: Option<EntryDiff>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = other.cols;
        let entries: Vec<BigRational> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut out = vec![BigRational::zero(); cols];
                for (k, a) in self.row(r).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (c, b) in other.row(k).iter().enumerate() {
                        if !b.is_zero() {
                            out[c] += a * b;
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self { rows: self.rows, cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Domain("matrix shapes differ".into()));
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row echelon form by exact elimination; returns pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let x = self.get(r, j) * &inv;
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let x = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// The unique `X` with `self · X = rhs`. Requires full column rank and
    /// `rhs` inside the column span; otherwise a consistency error.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if rhs.rows != self.rows {
            return Err(Error::Domain("right-hand side has the wrong number of rows".into()));
        }
        let n = self.cols;
        let mut aug = Self::zeros(self.rows, n + rhs.cols);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                aug.set(r, n + c, rhs.get(r, c).clone());
            }
        }
        let pivots = aug.echelon();
        if pivots.iter().take_while(|&&c| c < n).count() != n {
            return Err(Error::Consistency("coefficient matrix is rank deficient".into()));
        }
        if pivots.len() > n {
            return Err(Error::Consistency("right-hand side is not in the column span".into()));
        }
        let mut out = Self::zeros(n, rhs.cols);
        for r in 0..n {
            for c in 0..rhs.cols {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Ok(out)
    }

    pub fn first_difference(&self, other: &Self) -> Option<EntryDiff> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some(EntryDiff { row: 0, col: 0, left: BigRational::zero(), right: BigRational::zero() });
        }
        (0..self.entries.len()).find(|&i| self.entries[i] != other.entries[i]).map(|i| EntryDiff {
            row: i / self.cols,
            col: i % self.cols,
            left: self.entries[i].clone(),
            right: other.entries[i].clone(),
        })
    }

    pub fn compare(&self, other: &Self) -> MatrixVerification {
        let diff = self.first_difference(other);
        MatrixVerification { holds: diff.is_none(), diff }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(format_rational).collect()).collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for row in self.to_string_rows() {
            w.write_record(&row).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
        let rows = r
            .records()
            .map(|rec| {
                rec.map(|rec| rec.iter().map(|s| s.trim().to_string()).collect::<Vec<_>>())
                    .map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_string_rows(&rows)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for row in self.to_string_rows() {
            let cells: Vec<String> = row.into_iter().map(|s| if s == "0" { ".".into() } else { s }).collect();
            writeln!(f, "  {}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// Wire form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn new(
        k: usize,
        n: usize,
        q: &BigRational,
        u: Option<&BigRational>,
        p: Option<usize>,
        m: &RationalMatrix,
    ) -> Self {
        Self {
            k,
            n,
            q: format_rational(q),
            u: u.map(format_rational),
            p,
            mu: None,
            dim: m.rows(),
            matrix: m.to_string_rows(),
        }
    }

    pub fn matrix(&self) -> Result<RationalMatrix> {
        let m = RationalMatrix::from_string_rows(&self.matrix)?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Parse(format!("matrix is not {0}x{0}", self.dim)));
        }
        Ok(m)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

fn tensor_dim(n: usize, m: usize) -> Result<usize> {
    let dim = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(n));
    match dim {
        Some(d) if d <= MAX_TENSOR_DIM => Ok(d),
        _ => Err(Error::Resource(format!("N^m = {n}^{m} exceeds {MAX_TENSOR_DIM}"))),
    }
}

/// `Ř(e_i ⊗ e_j)`: `q e_i⊗e_j` if `i = j`, `e_j⊗e_i + (q - q^{-1}) e_i⊗e_j` if
/// `i < j`, `e_j⊗e_i` if `i > j`.
pub fn hecke_rmatrix(n: usize, q: &BigRational) -> Result<RationalMatrix> {
    check_n(n)?;
    ParamPoint::check_q(q, 1)?;
    let lambda = q - q.recip();
    let mut m = RationalMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                m.set(col, col, q.clone());
            } else {
                m.set(j * n + i, col, BigRational::one());
                if i < j {
                    m.set(col, col, lambda.clone());
                }
            }
        }
    }
    Ok(m)
}

type SparseVec = FxHashMap<usize, BigRational>;

/// Action of `σ_i` (1-based) on `V^{⊗m}`.
struct TensorSpace {
    n: usize,
    m: usize,
    q: BigRational,
    lambda: BigRational,
}

impl TensorSpace {
    fn new(n: usize, m: usize, q: &BigRational) -> Result<Self> {
        check_n(n)?;
        tensor_dim(n, m)?;
        Ok(Self { n, m, q: q.clone(), lambda: q - q.recip() })
    }

    fn place(&self, i: usize) -> usize {
        self.n.pow((self.m - i) as u32)
    }

    fn digit(&self, idx: usize, i: usize) -> usize {
        (idx / self.place(i)) % self.n
    }

    fn apply_generator(&self, v: &SparseVec, i: usize) -> SparseVec {
        let (pa, pb) = (self.place(i), self.place(i + 1));
        let mut out = SparseVec::with_capacity_and_hasher(v.len() * 2, Default::default());
        for (&idx, c) in v {
            let (a, b) = (self.digit(idx, i), self.digit(idx, i + 1));
            if a == b {
                *out.entry(idx).or_insert_with(BigRational::zero) += c * &self.q;
                continue;
            }
            let swapped = idx - a * pa - b * pb + b * pa + a * pb;
            *out.entry(swapped).or_insert_with(BigRational::zero) += c;
            if a < b && !self.lambda.is_zero() {
                *out.entry(idx).or_insert_with(BigRational::zero) += c * &self.lambda;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `σ_{i_1} ... σ_{i_r} v`.
    fn apply_word(&self, v: &SparseVec, word: &[usize]) -> SparseVec {
        word.iter().rev().fold(v.clone(), |acc, &i| self.apply_generator(&acc, i))
    }

    fn apply_element(&self, x: &AlgebraElement, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::default();
        for (w, c) in x.terms() {
            for (idx, y) in self.apply_word(v, &w.reduced_word()) {
                *out.entry(idx).or_insert_with(BigRational::zero) += y * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn unit_vector(idx: usize) -> SparseVec {
    let mut v = SparseVec::default();
    v.insert(idx, BigRational::one());
    v
}

/// Image of `x ∈ H_m(q)` in `End(V^{⊗m})`, `σ_i ↦ Id^{⊗(i-1)} ⊗ Ř ⊗ Id^{⊗(m-1-i)}`.
pub fn represent(x: &AlgebraElement, n: usize) -> Result<RationalMatrix> {
    let space = TensorSpace::new(n, x.strands(), x.q())?;
    let dim = tensor_dim(n, x.strands())?;
    let columns: Vec<SparseVec> = (0..dim).into_par_iter().map(|j| space.apply_element(x, &unit_vector(j))).collect();
    let mut out = RationalMatrix::zeros(dim, dim);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// Basis of `W = S_q^k(V)`: the vectors `S_{[1,k]}(e_{i_1} ⊗ ... ⊗ e_{i_k})`
/// for `i_1 <= ... <= i_k`, as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct WBasis {
    pub k: usize,
    pub n: usize,
    pub indices: Vec<Vec<usize>>,
    pub vectors: RationalMatrix,
}

impl WBasis {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }
}

fn nondecreasing(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let start = prefix.last().copied().unwrap_or(1);
                (start..=n).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn w_basis(k: usize, n: usize, q: &BigRational) -> Result<WBasis> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    ParamPoint::check_q(q, k as u32)?;
    let space = TensorSpace::new(n, k, q)?;
    let sym = symmetriser_sum(1, k, k, q)?;
    let indices = nondecreasing(k, n);
    let dim = space.n.pow(k as u32);
    let mut vectors = RationalMatrix::zeros(dim, indices.len());
    for (c, alpha) in indices.iter().enumerate() {
        let idx = alpha.iter().fold(0, |acc, &i| acc * n + (i - 1));
        for (r, x) in space.apply_element(&sym, &unit_vector(idx)) {
            vectors.set(r, c, x);
        }
    }
    let expected = binomial((k + n - 1) as u32, k as u32);
    if BigRational::from_integer(indices.len().into()) != expected || vectors.rank() != indices.len() {
        return Err(Error::Consistency(format!("W basis for k={k}, N={n} is degenerate at q={q}")));
    }
    Ok(WBasis { k, n, indices, vectors })
}

fn apply_block_symmetrisers(
    space: &TensorSpace,
    sym: &RationalMatrix,
    k: usize,
    v: &[BigRational],
) -> Vec<BigRational> {
    let block = space.n.pow(k as u32);
    let mut tmp = vec![BigRational::zero(); v.len()];
    // S on the first k factors: index = a * block + b
    for b in 0..block {
        for a in 0..block {
            let x = &v[a * block + b];
            if x.is_zero() {
                continue;
            }
            for r in 0..block {
                let s = sym.get(r, a);
                if !s.is_zero() {
                    tmp[r * block + b] += s * x;
                }
            }
        }
    }
    let mut out = vec![BigRational::zero(); v.len()];
    for a in 0..block {
        for b in 0..block {
            let x = &tmp[a * block + b];
            if x.is_zero() {
                continue;
            }
            for r in 0..block {
                let s = sym.get(r, b);
                if !s.is_zero() {
                    out[a * block + r] += s * x;
                }
            }
        }
    }
    out
}

/// Matrix of `Σ^{(k;p)}` on `W ⊗ W` in the basis `w_α ⊗ w_β`.
pub fn sigma_matrix(k: usize, p: usize, n: usize, q: &BigRational) -> Result<RationalMatrix> {
    if p > k {
        return Err(Error::Domain(format!("p = {p} exceeds k = {k}")));
    }
    let wb = w_basis(k, n, q)?;
    sigma_matrix_in(&wb, p, q)
}

fn sigma_matrix_in(wb: &WBasis, p: usize, q: &BigRational) -> Result<RationalMatrix> {
    let (k, n) = (wb.k, wb.n);
    let space = TensorSpace::new(n, 2 * k, q)?;
    let sym = represent(&symmetriser_sum(1, k, k, q)?, n)?;
    let basis = wb.vectors.kron(&wb.vectors);
    let word = braid_word(k, k, p);
    let d = wb.dim();
    let images: Vec<Vec<BigRational>> = (0..d * d)
        .into_par_iter()
        .map(|col| {
            let v: SparseVec = (0..basis.rows())
                .filter(|&r| !basis.get(r, col).is_zero())
                .map(|r| (r, basis.get(r, col).clone()))
                .collect();
            let moved = space.apply_word(&v, &word);
            let mut dense = vec![BigRational::zero(); basis.rows()];
            for (i, c) in moved {
                dense[i] = c;
            }
            apply_block_symmetrisers(&space, &sym, k, &dense)
        })
        .collect();
    let mut rhs = RationalMatrix::zeros(basis.rows(), d * d);
    for (c, img) in images.into_iter().enumerate() {
        for (r, x) in img.into_iter().enumerate() {
            rhs.set(r, c, x);
        }
    }
    basis.solve(&rhs).map_err(|e| match e {
        Error::Consistency(m) => Error::Consistency(format!("image of W⊗W leaves W⊗W: {m}")),
        other => other,
    })
}

/// `dim W` from a matrix on `W ⊗ W`.
fn w_dim(m: &RationalMatrix) -> usize {
    (1..=m.rows()).find(|d| d * d == m.rows()).expect("square of dim W")
}

fn combine(mats: &[RationalMatrix], coeffs: &[BigRational]) -> Result<RationalMatrix> {
    let mut acc = RationalMatrix::zeros(mats[0].rows(), mats[0].cols());
    for (m, c) in mats.iter().zip(coeffs) {
        acc = acc.add(&m.scale(c))?;
    }
    Ok(acc)
}

/// All `Σ^{(k;p)}` matrices, `p = 0..=k`.
pub fn sigma_matrices(k: usize, n: usize, q: &BigRational) -> Result<Vec<RationalMatrix>> {
    let wb = w_basis(k, n, q)?;
    (0..=k).map(|p| sigma_matrix_in(&wb, p, q)).collect()
}

/// `Σ_p a_p^{(k,k)}(u) Σ^{(k;p)}` on `W ⊗ W`.
pub fn fused_r_matrix(k: usize, n: usize, u: &BigRational, q: &BigRational) -> Result<RationalMatrix> {
    let a = baxter_coefficients(k, k, u, q)?;
    combine(&sigma_matrices(k, n, q)?, &a.values)
}

/// Additive solution `Σ_p c_p(μ) Σ^{(k;p)}` at `q = 1`.
pub fn classical_r_matrix(k: usize, n: usize, mu: &BigRational) -> Result<RationalMatrix> {
    let c = classical_coefficients(k, k, mu)?;
    combine(&sigma_matrices(k, n, &int(1))?, &c)
}

fn ybe_sides(
    r_u: &RationalMatrix,
    r_uv: &RationalMatrix,
    r_v: &RationalMatrix,
    d: usize,
) -> Result<MatrixVerification> {
    let id = RationalMatrix::identity(d);
    let left = |r: &RationalMatrix| r.kron(&id);
    let right = |r: &RationalMatrix| id.kron(r);
    let lhs = left(r_u).mul(&right(r_uv))?.mul(&left(r_v))?;
    let rhs = right(r_v).mul(&left(r_uv))?.mul(&right(r_u))?;
    Ok(lhs.compare(&rhs))
}

/// `(Ř(u)⊗Id)(Id⊗Ř(uv))(Ř(v)⊗Id) = (Id⊗Ř(v))(Ř(uv)⊗Id)(Id⊗Ř(u))` on `W^{⊗3}`.
pub fn verify_matrix_ybe(
    k: usize,
    n: usize,
    u: &BigRational,
    v: &BigRational,
    q: &BigRational,
) -> Result<MatrixVerification> {
    ParamPoint::new(q.clone(), Some(u.clone()), Some(v.clone()), k as u32)?;
    let sig = sigma_matrices(k, n, q)?;
    let d = w_dim(&sig[0]);
    tensor_dim(d, 3).map_err(|_| Error::Resource(format!("dim(W)^3 = {d}^3 exceeds {MAX_TENSOR_DIM}")))?;
    let r = |x: &BigRational| -> Result<RationalMatrix> { combine(&sig, &baxter_coefficients(k, k, x, q)?.values) };
    ybe_sides(&r(u)?, &r(&(u * v))?, &r(v)?, d)
}

/// The additive equation for [`classical_r_matrix`] with arguments `μ, μ+ν, ν`.
pub fn verify_classical_matrix_ybe(
    k: usize,
    n: usize,
    mu: &BigRational,
    nu: &BigRational,
) -> Result<MatrixVerification> {
    let sig = sigma_matrices(k, n, &int(1))?;
    let d = w_dim(&sig[0]);
    tensor_dim(d, 3).map_err(|_| Error::Resource(format!("dim(W)^3 = {d}^3 exceeds {MAX_TENSOR_DIM}")))?;
    let r = |x: &BigRational| -> Result<RationalMatrix> { combine(&sig, &classical_coefficients(k, k, x)?) };
    ybe_sides(&r(mu)?, &r(&(mu + nu))?, &r(nu)?, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q_int, rat};
    use crate::heckecore::{generator, unit};
    use crate::symgroup::all_permutations;

    #[test]
    fn rmatrix_entries_and_hecke_relation() {
        let q = int(2);
        let r = hecke_rmatrix(2, &q).unwrap();
        assert_eq!(r.get(0, 0), &q);
        // column e_1⊗e_2 = e_2⊗e_1 + λ e_1⊗e_2
        assert_eq!(r.get(2, 1), &int(1));
        assert_eq!(r.get(1, 1), &rat(3, 2));
        assert_eq!(r.get(1, 2), &int(1));
        assert!(r.get(2, 2).is_zero());
        for n in [2, 3] {
            let r = hecke_rmatrix(n, &q).unwrap();
            let lhs = r.mul(&r).unwrap();
            let rhs = r.scale(&(&q - q.recip())).add(&RationalMatrix::identity(n * n)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rmatrix_braid_relation() {
        let q = rat(3, 2);
        let r = hecke_rmatrix(2, &q).unwrap();
        let id = RationalMatrix::identity(2);
        let a = r.kron(&id);
        let b = id.kron(&r);
        assert_eq!(a.mul(&b).unwrap().mul(&a).unwrap(), b.mul(&a).unwrap().mul(&b).unwrap());
    }

    #[test]
    fn represent_generators_match_kron() {
        let q = rat(5, 3);
        let r = hecke_rmatrix(2, &q).unwrap();
        let id = RationalMatrix::identity(2);
        assert_eq!(represent(&generator(1, 3, &q).unwrap(), 2).unwrap(), r.kron(&id));
        assert_eq!(represent(&generator(2, 3, &q).unwrap(), 2).unwrap(), id.kron(&r));
        assert_eq!(represent(&unit(3, &q).unwrap(), 2).unwrap(), RationalMatrix::identity(8));
        assert!(matches!(represent(&unit(9, &q).unwrap(), 3), Err(Error::Resource(_))));
    }

    #[test]
    fn represent_is_homomorphism_on_basis() {
        let q = int(2);
        let perms = all_permutations(3).unwrap();
        for a in &perms {
            for b in &perms {
                let xa = AlgebraElement::basis(*a, &q).unwrap();
                let xb = AlgebraElement::basis(*b, &q).unwrap();
                let lhs = represent(&xa.multiply(&xb).unwrap(), 2).unwrap();
                let rhs = represent(&xa, 2).unwrap().mul(&represent(&xb, 2).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn symmetriser_image_rank() {
        let q = int(2);
        let s = represent(&symmetriser_sum(1, 2, 2, &q).unwrap(), 2).unwrap();
        assert_eq!(s.mul(&s).unwrap(), s);
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn w_basis_examples() {
        let q = int(2);
        let wb = w_basis(1, 3, &q).unwrap();
        assert_eq!(wb.vectors, RationalMatrix::identity(3));
        let wb = w_basis(2, 2, &q).unwrap();
        assert_eq!(wb.dim(), 3);
        let inv2 = q_int(2, &q).unwrap().recip();
        let v2 = wb.vectors.column(1);
        assert_eq!(v2, vec![int(0), &q * &inv2, inv2.clone(), int(0)]);
        assert_eq!(w_basis(2, 3, &q).unwrap().dim(), 6);
        assert_eq!(w_basis(3, 2, &q).unwrap().dim(), 4);
    }

    #[test]
    fn sigma_matrix_edge_cases() {
        let q = rat(3, 2);
        assert_eq!(sigma_matrix(2, 0, 2, &q).unwrap(), RationalMatrix::identity(9));
        assert_eq!(sigma_matrix(1, 1, 3, &q).unwrap(), hecke_rmatrix(3, &q).unwrap());
        assert!(sigma_matrix(2, 3, 2, &q).is_err());
    }

    #[test]
    fn fused_r_k1() {
        let (q, u) = (int(2), rat(3, 5));
        let r = fused_r_matrix(1, 2, &u, &q).unwrap();
        let c = (&q - q.recip()) / (BigRational::one() - &u);
        let expected = hecke_rmatrix(2, &q).unwrap().sub(&RationalMatrix::identity(4).scale(&c)).unwrap();
        assert_eq!(r, expected);
        assert!(matches!(fused_r_matrix(1, 2, &int(1), &q), Err(Error::Pole(_))));
    }

    #[test]
    fn matrix_ybe_small() {
        let (q, u, v) = (int(2), rat(3, 5), rat(7, 11));
        assert!(verify_matrix_ybe(1, 2, &u, &v, &q).unwrap().holds);
        assert!(verify_matrix_ybe(2, 2, &rat(3, 7), &rat(5, 9), &q).unwrap().holds);
        assert!(verify_classical_matrix_ybe(2, 2, &rat(7, 2), &rat(9, 4)).unwrap().holds);
    }

    #[test]
    fn solve_and_rank() {
        let a =
            RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)], vec![int(5), int(6)]]).unwrap();
        let x = RationalMatrix::from_rows(vec![vec![rat(1, 2)], vec![int(-3)]]).unwrap();
        let b = a.mul(&x).unwrap();
        assert_eq!(a.solve(&b).unwrap(), x);
        let off = RationalMatrix::from_rows(vec![vec![int(1)], vec![int(0)], vec![int(0)]]).unwrap();
        assert!(matches!(a.solve(&off), Err(Error::Consistency(_))));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let q = rat(3, 2);
        let m = fused_r_matrix(2, 2, &rat(3, 7), &q).unwrap();
        assert_eq!(RationalMatrix::from_csv(&m.to_csv().unwrap()).unwrap(), m);
        let j = MatrixJson::new(2, 2, &q, Some(&rat(3, 7)), None, &m);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"N\":2"));
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.matrix().unwrap(), m);
    }
}
