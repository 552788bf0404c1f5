//! Minor summation quantities and two-sided identity checkers.
//!
//! Every `check_*` function evaluates both sides of one determinant/Pfaffian
//! identity independently (subset or chain enumeration on one side, a single
//! determinant or Pfaffian of a product matrix on the other) and compares
//! them exactly. Secondary relations that the same identity implies are
//! recorded as extra [`Comparison`]s on the report.
//!
//! Conventions: `A`, `B` are `m × n`, `X` is `n × n`; `A^I` is the column
//! selection of `A` by `I`; `U_n` is strictly upper triangular of ones and
//! `J` the all-ones matrix.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::combinat::{inv_word, subsets, IndexSet};
use crate::matrix::{Matrix, MatrixError, Structured};
use crate::ring::{RingTag, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{what} requires {parity} m, got m = {m}")]
    Parity {
        what: &'static str,
        parity: &'static str,
        m: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown identity {given:?}; valid ids: {valid}")]
    UnknownIdentity { given: String, valid: String },
}

type Result<T> = std::result::Result<T, IdentityError>;

/// Stable identifiers of the checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Okada,
    Byun,
    Main1,
    Main2,
    Rank1,
    LemmaAux,
    Iswa,
    LemmaIswa,
    Ab,
    Ab2,
    Cor7,
    ClosedForms,
    DetPfSquare,
    CauchyBinetPf,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::Okada,
        IdentityId::Byun,
        IdentityId::Main1,
        IdentityId::Main2,
        IdentityId::Rank1,
        IdentityId::LemmaAux,
        IdentityId::Iswa,
        IdentityId::LemmaIswa,
        IdentityId::Ab,
        IdentityId::Ab2,
        IdentityId::Cor7,
        IdentityId::ClosedForms,
        IdentityId::DetPfSquare,
        IdentityId::CauchyBinetPf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Okada => "okada",
            IdentityId::Byun => "byun",
            IdentityId::Main1 => "main1",
            IdentityId::Main2 => "main2",
            IdentityId::Rank1 => "rank1",
            IdentityId::LemmaAux => "lemma-aux",
            IdentityId::Iswa => "iswa",
            IdentityId::LemmaIswa => "lemma-iswa",
            IdentityId::Ab => "ab",
            IdentityId::Ab2 => "ab2",
            IdentityId::Cor7 => "cor7",
            IdentityId::ClosedForms => "closed-forms",
            IdentityId::DetPfSquare => "det-pf-square",
            IdentityId::CauchyBinetPf => "cauchy-binet-pf",
        }
    }

    pub fn valid_ids() -> String {
        IdentityId::ALL.map(IdentityId::as_str).join(", ")
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity {
                given: s.to_string(),
                valid: IdentityId::valid_ids(),
            })
    }
}

/// One exact comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub pass: bool,
}

impl Comparison {
    pub fn new(label: impl Into<String>, lhs: Scalar, rhs: Scalar) -> Self {
        let pass = lhs == rhs;
        Comparison {
            label: label.into(),
            lhs,
            rhs,
            pass,
        }
    }
}

/// Outcome of one identity check. `pass` holds iff `lhs == rhs` and every
/// extra comparison passes.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub input_digest: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Comparison>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub(crate) struct ReportBuilder {
    identity: &'static str,
    digest: String,
    started: Instant,
    checks: Vec<Comparison>,
}

impl ReportBuilder {
    pub(crate) fn new(identity: &'static str, inputs: &[&dyn Digestible]) -> Self {
        ReportBuilder {
            identity,
            digest: input_digest(identity, inputs),
            started: Instant::now(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn also(&mut self, label: impl Into<String>, lhs: Scalar, rhs: Scalar) {
        self.checks.push(Comparison::new(label, lhs, rhs));
    }

    pub(crate) fn finish(self, lhs: Scalar, rhs: Scalar) -> IdentityReport {
        let pass = lhs == rhs && self.checks.iter().all(|c| c.pass);
        IdentityReport {
            identity: self.identity,
            input_digest: self.digest,
            lhs,
            rhs,
            pass,
            checks: self.checks,
            elapsed: self.started.elapsed(),
        }
    }
}

/// Anything whose canonical text feeds the input digest.
pub trait Digestible {
    fn canonical_text(&self) -> String;
}

impl Digestible for Matrix {
    fn canonical_text(&self) -> String {
        self.to_json()
    }
}

impl Digestible for IndexSet {
    fn canonical_text(&self) -> String {
        format!("{}:{}", self.ambient(), self)
    }
}

impl Digestible for Vec<Scalar> {
    fn canonical_text(&self) -> String {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Digestible for usize {
    fn canonical_text(&self) -> String {
        self.to_string()
    }
}

/// First 16 bytes of SHA-256 over the identity id and the inputs' canonical
/// text, hex encoded.
pub fn input_digest(identity: &str, inputs: &[&dyn Digestible]) -> String {
    let mut h = Sha256::new();
    h.update(identity.as_bytes());
    for input in inputs {
        h.update(b"\n");
        h.update(input.canonical_text().as_bytes());
    }
    h.finalize()[..16].iter().map(|b| format!("{b:02x}")).collect()
}

/// Vectors `a`, `b` of a rank-1 matrix `(a_i b_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Data {
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

impl Rank1Data {
    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(IdentityError::Shape(format!(
                "rank-1 vectors of lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(Rank1Data { a, b })
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    fn outer(ring: &RingTag, a: &[Scalar], b: &[Scalar]) -> Matrix {
        Matrix::from_fn(ring, a.len(), b.len(), |i, j| &a[i] * &b[j])
    }
}

/// `(-1)^(k choose 2)` is negative iff `k mod 4` is 2 or 3.
pub fn binom2_sign_negative(k: usize) -> bool {
    k % 4 >= 2
}

fn require_parity(what: &'static str, m: usize, even: bool) -> Result<()> {
    if m.is_multiple_of(2) == even {
        Ok(())
    } else {
        Err(IdentityError::Parity {
            what,
            parity: if even { "even" } else { "odd" },
            m,
        })
    }
}

fn require_rows(a: &Matrix) -> Result<usize> {
    if a.rows() == 0 {
        return Err(IdentityError::Shape("m must be positive".into()));
    }
    Ok(a.rows())
}

fn require_same_shape(a: &Matrix, b: &Matrix) -> Result<()> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(IdentityError::Shape(format!(
            "A is {}x{} but B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.ring() != b.ring() {
        return Err(MatrixError::MixedRings {
            expected: a.ring().to_string(),
            found: b.ring().to_string(),
        }
        .into());
    }
    Ok(())
}

fn require_square_of(x: &Matrix, n: usize, name: &str) -> Result<()> {
    if x.rows() != n || x.cols() != n {
        return Err(IdentityError::Shape(format!(
            "{name} must be {n}x{n}, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    Ok(())
}

fn require_skew(y: &Matrix) -> Result<()> {
    match y.skew_violation() {
        Some((row, col)) => Err(MatrixError::NotSkewSymmetric { row, col }.into()),
        None => Ok(()),
    }
}

/// `P Q Rᵗ`.
fn sandwich(p: &Matrix, q: &Matrix, r: &Matrix) -> Result<Matrix> {
    Ok(p.mul(q)?.mul(&r.transpose())?)
}

fn ones_minus_transpose(x: &Matrix) -> Result<Matrix> {
    let n = x.rows();
    Ok(Matrix::structured(Structured::Ones, n, x.ring()).sub(&x.transpose())?)
}

/// `Σ_{|I| = m} det A^I`, zero when `m > n`.
pub fn minor_sum(a: &Matrix) -> Result<Scalar> {
    let mut acc = Scalar::zero(a.ring());
    for cols in subsets(a.cols(), a.rows()) {
        acc += a.columns(&cols)?.det()?;
    }
    Ok(acc)
}

fn check_abx(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<usize> {
    let m = require_rows(a)?;
    require_same_shape(a, b)?;
    require_square_of(x, a.cols(), "X")?;
    if x.ring() != a.ring() {
        return Err(MatrixError::MixedRings {
            expected: a.ring().to_string(),
            found: x.ring().to_string(),
        }
        .into());
    }
    Ok(m)
}

/// `f_{A,B}(X) = Σ_{|I|=|J|=m/2} det X_{I,J} · det(A^I B^J)` for even `m`.
pub fn f_ab(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<Scalar> {
    let m = check_abx(a, b, x)?;
    require_parity("f_AB", m, true)?;
    let n = a.cols();
    let half = m / 2;
    let mut acc = Scalar::zero(a.ring());
    for i in subsets(n, half) {
        let a_cols = a.columns(&i)?;
        for j in subsets(n, half) {
            let dx = x.submatrix(&i, &j)?.det()?;
            if dx.is_zero() {
                continue;
            }
            let dab = Matrix::concat_columns(&[&a_cols, &b.columns(&j)?])?.det()?;
            if !dab.is_zero() {
                acc += dx * dab;
            }
        }
    }
    Ok(acc)
}

/// `g_{A,B}(X) = Σ det(𝟏 X_{I,J}) · det(A^I B^J)` over `|I| = (m+1)/2`,
/// `|J| = (m-1)/2`, for odd `m`; `𝟏` is a column of ones.
pub fn g_ab(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<Scalar> {
    let m = check_abx(a, b, x)?;
    require_parity("g_AB", m, false)?;
    let n = a.cols();
    let ring = a.ring();
    let ones = Matrix::from_fn(ring, m.div_ceil(2), 1, |_, _| Scalar::one(ring));
    let mut acc = Scalar::zero(ring);
    for i in subsets(n, m.div_ceil(2)) {
        let a_cols = a.columns(&i)?;
        for j in subsets(n, m / 2) {
            let dx = Matrix::concat_columns(&[&ones, &x.submatrix(&i, &j)?])?.det()?;
            if dx.is_zero() {
                continue;
            }
            let dab = Matrix::concat_columns(&[&a_cols, &b.columns(&j)?])?.det()?;
            if !dab.is_zero() {
                acc += dx * dab;
            }
        }
    }
    Ok(acc)
}

fn diag_entry(diag: &[Scalar], i: usize) -> Result<&Scalar> {
    diag.get(i - 1)
        .ok_or_else(|| IdentityError::Shape(format!("diagonal has {} entries, index {i} requested", diag.len())))
}

fn ring_of(diag: &[Scalar]) -> Result<RingTag> {
    diag.first()
        .map(Scalar::ring)
        .ok_or_else(|| IdentityError::Shape("empty diagonal".into()))
}

/// Closed form of `det X_{I,J}` for `X` upper triangular with ones above the
/// diagonal and diagonal `diag`: nonzero only along the chain
/// `i₁ ≤ j₁ ≤ i₂ ≤ ⋯ ≤ j_ℓ`, where it is a product of `X_{i,i}` (at `i_k = j_k`)
/// and `1 - X_{i,i}` (at `j_{k-1} = i_k`, with `j₀ = 0`).
pub fn x1_closed_form(diag: &[Scalar], n: usize, rows: &IndexSet, cols: &IndexSet) -> Result<Scalar> {
    if rows.len() != cols.len() {
        return Err(IdentityError::Shape(format!(
            "|I| = {} but |J| = {}",
            rows.len(),
            cols.len()
        )));
    }
    let ring = ring_of(diag)?;
    let (i, j) = (rows.indices(), cols.indices());
    if i.iter().chain(j).any(|&v| v > n) {
        return Err(IdentityError::Shape(format!("index sets must lie in [{n}]")));
    }
    let one = Scalar::one(&ring);
    let mut acc = one.clone();
    let mut prev_j = 0;
    for k in 0..i.len() {
        if !(prev_j <= i[k] && i[k] <= j[k]) {
            return Ok(Scalar::zero(&ring));
        }
        let d = diag_entry(diag, i[k])?;
        if i[k] == j[k] {
            acc *= d;
        }
        if prev_j == i[k] {
            acc *= &one - d;
        }
        prev_j = j[k];
    }
    Ok(acc)
}

/// Closed form of `det(𝟏 X_{I,J})` with `|I| = |J| + 1 = ℓ + 1`, same `X` as
/// [`x1_closed_form`]: nonzero only along `i₁ ≤ j₁ ≤ ⋯ ≤ j_ℓ ≤ i_{ℓ+1}`, where
/// it is `(-1)^ℓ` times a product of `X_{i_k,i_k}` (at `i_k = j_k`) and
/// `1 - X_{i_{k+1},i_{k+1}}` (at `j_k = i_{k+1}`).
pub fn x2_closed_form(diag: &[Scalar], n: usize, rows: &IndexSet, cols: &IndexSet) -> Result<Scalar> {
    if rows.len() != cols.len() + 1 {
        return Err(IdentityError::Shape(format!(
            "need |I| = |J| + 1, got |I| = {}, |J| = {}",
            rows.len(),
            cols.len()
        )));
    }
    let ring = ring_of(diag)?;
    let (i, j) = (rows.indices(), cols.indices());
    if i.iter().chain(j).any(|&v| v > n) {
        return Err(IdentityError::Shape(format!("index sets must lie in [{n}]")));
    }
    let one = Scalar::one(&ring);
    let ell = j.len();
    let mut acc = one.clone();
    for k in 0..ell {
        if !(i[k] <= j[k] && j[k] <= i[k + 1]) {
            return Ok(Scalar::zero(&ring));
        }
        if i[k] == j[k] {
            acc *= diag_entry(diag, i[k])?;
        }
        if j[k] == i[k + 1] {
            acc *= &one - diag_entry(diag, i[k + 1])?;
        }
    }
    Ok(acc.negate_if(ell % 2 == 1))
}

/// `n × n` matrix with `diag` on the diagonal, ones above, zeros below.
pub fn upper_with_diagonal(diag: &[Scalar]) -> Result<Matrix> {
    let ring = ring_of(diag)?;
    let mut x = Matrix::structured(Structured::Upper, diag.len(), &ring);
    for (k, d) in diag.iter().enumerate() {
        x.set(k, k, d.clone())?;
    }
    Ok(x)
}

/// Relation between consecutive entries of an index chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Weak,
    Strict,
}

impl Step {
    fn flip(self) -> Step {
        match self {
            Step::Weak => Step::Strict,
            Step::Strict => Step::Weak,
        }
    }
}

/// `Σ det(P^{c₁} Q^{c₂} P^{c₃} ⋯)` over chains `c₁ ∘ c₂ ∘' c₃ ∘ ⋯` in `[n]` of
/// length `m`, where the relations alternate starting with `first`.
pub fn chain_sum(p: &Matrix, q: &Matrix, first: Step) -> Result<Scalar> {
    require_rows(p)?;
    require_same_shape(p, q)?;
    let (m, n) = (p.rows(), p.cols());
    let p_cols: Vec<Matrix> = (1..=n).map(|j| p.column(j)).collect::<std::result::Result<_, _>>()?;
    let q_cols: Vec<Matrix> = (1..=n).map(|j| q.column(j)).collect::<std::result::Result<_, _>>()?;
    let mut acc = Scalar::zero(p.ring());
    let mut chain = Vec::with_capacity(m);
    chain_rec(&p_cols, &q_cols, m, n, first, &mut chain, &mut acc)?;
    Ok(acc)
}

fn chain_rec(
    p_cols: &[Matrix],
    q_cols: &[Matrix],
    m: usize,
    n: usize,
    first: Step,
    chain: &mut Vec<usize>,
    acc: &mut Scalar,
) -> Result<()> {
    let t = chain.len();
    if t == m {
        let blocks: Vec<&Matrix> = chain
            .iter()
            .enumerate()
            .map(|(pos, &c)| if pos % 2 == 0 { &p_cols[c - 1] } else { &q_cols[c - 1] })
            .collect();
        *acc += Matrix::concat_columns(&blocks)?.det()?;
        return Ok(());
    }
    let start = match chain.last() {
        None => 1,
        Some(&prev) => {
            // Relation between positions t-1 and t (0-based) alternates from `first`.
            let step = if (t - 1).is_multiple_of(2) { first } else { first.flip() };
            match step {
                Step::Weak => prev,
                Step::Strict => prev + 1,
            }
        }
    };
    for c in start..=n {
        chain.push(c);
        chain_rec(p_cols, q_cols, m, n, first, chain, acc)?;
        chain.pop();
    }
    Ok(())
}

/// `Pf(A X Bᵗ - B Xᵗ Aᵗ) = (-1)^C(m/2,2) f_{A,B}(X)` for even `m`.
pub fn check_main2(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<IdentityReport> {
    let m = check_abx(a, b, x)?;
    require_parity("main2", m, true)?;
    let rep = ReportBuilder::new(IdentityId::Main2.as_str(), &[a, b, x]);
    let y = sandwich(a, x, b)?.sub(&sandwich(b, &x.transpose(), a)?)?;
    let lhs = y.pfaffian()?;
    let rhs = f_ab(a, b, x)?.negate_if(binom2_sign_negative(m / 2));
    Ok(rep.finish(lhs, rhs))
}

/// `det(A X Bᵗ + B (J - Xᵗ) Aᵗ)` against `f_{A,B}(X) f_{B,A}(J - Xᵗ)` (even
/// `m`) or `g_{A,B}(X) g_{B,A}(J - Xᵗ)` (odd `m`). For odd `m` the second form
/// `(-1)^((m-1)/2) g_{A,B}(X) g_{B,A}(Xᵗ)` and the factor relation
/// `g_{B,A}(J - Xᵗ) = (-1)^((m-1)/2) g_{B,A}(Xᵗ)` are checked as well.
pub fn check_main1(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<IdentityReport> {
    let m = check_abx(a, b, x)?;
    let mut rep = ReportBuilder::new(IdentityId::Main1.as_str(), &[a, b, x]);
    let jx = ones_minus_transpose(x)?;
    let lhs = sandwich(a, x, b)?.add(&sandwich(b, &jx, a)?)?.det()?;
    let rhs = if m % 2 == 0 {
        f_ab(a, b, x)? * f_ab(b, a, &jx)?
    } else {
        let g_abx = g_ab(a, b, x)?;
        let g_ba_jx = g_ab(b, a, &jx)?;
        let g_ba_xt = g_ab(b, a, &x.transpose())?;
        let negative = (m / 2) % 2 == 1;
        rep.also("second odd form", lhs.clone(), (&g_abx * &g_ba_xt).negate_if(negative));
        rep.also("g_BA(J - Xt) vs g_BA(Xt)", g_ba_jx.clone(), g_ba_xt.negate_if(negative));
        g_abx * g_ba_jx
    };
    Ok(rep.finish(lhs, rhs))
}

fn alternating_pf_sum(coeffs: &[Scalar], y: &Matrix) -> Result<Scalar> {
    let m = y.rows();
    let mut acc = Scalar::zero(y.ring());
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let pf = y
            .delete_rc(&IndexSet::new(m, vec![i + 1]).expect("in range"))?
            .pfaffian()?;
        acc += (c * &pf).negate_if(i % 2 == 1);
    }
    Ok(acc)
}

/// Factorisation of `det(Y + (a_i b_j))` for skew `Y`: via `Pf(Y)` and
/// `Pf(Y(i,j))` for even size, via `Pf(Y(i))` for odd size. The symmetric
/// specialisation `b = a` is checked alongside.
pub fn check_rank1(y: &Matrix, r1: &Rank1Data) -> Result<IdentityReport> {
    require_skew(y)?;
    let m = y.rows();
    if m == 0 || r1.a.len() != m {
        return Err(IdentityError::Shape(format!(
            "Y is {m}x{m} but rank-1 vectors have length {}",
            r1.a.len()
        )));
    }
    if let Some(bad) = r1.a.iter().chain(&r1.b).find(|s| s.ring() != *y.ring()) {
        return Err(MatrixError::MixedRings {
            expected: y.ring().to_string(),
            found: bad.ring().to_string(),
        }
        .into());
    }
    let ring = y.ring();
    let mut rep = ReportBuilder::new(IdentityId::Rank1.as_str(), &[y, &r1.a, &r1.b]);
    let lhs = y.add(&Rank1Data::outer(ring, &r1.a, &r1.b))?.det()?;
    let sym = y.add(&Rank1Data::outer(ring, &r1.a, &r1.a))?.det()?;
    let rhs = if m.is_multiple_of(2) {
        let pf = y.pfaffian()?;
        let mut inner = pf.clone();
        for i in 1..=m {
            for j in i + 1..=m {
                let coeff = &r1.a[i - 1] * &r1.b[j - 1] - &r1.a[j - 1] * &r1.b[i - 1];
                if coeff.is_zero() {
                    continue;
                }
                let sub = y
                    .delete_rc(&IndexSet::new(m, vec![i, j]).expect("in range"))?
                    .pfaffian()?;
                inner += (coeff * sub).negate_if((i + j) % 2 == 0);
            }
        }
        let det_y = y.det()?;
        rep.also("symmetric: det(Y + aa^t) vs det(Y)", sym, det_y.clone());
        rep.also("det(Y) vs Pf(Y)^2", det_y, pf.square());
        pf * inner
    } else {
        let fa = alternating_pf_sum(&r1.a, y)?;
        let fb = alternating_pf_sum(&r1.b, y)?;
        rep.also("symmetric: det(Y + aa^t) vs square", sym, fa.square());
        fa * fb
    };
    Ok(rep.finish(lhs, rhs))
}

/// `Σ_i (-1)^(i-1) (Σ_j A_ij) Pf(Y(i)) = (-1)^C((m-1)/2,2) g_{A,B}(X)` with
/// `Y = A X Bᵗ - B Xᵗ Aᵗ`, odd `m`.
pub fn check_lemma_aux(a: &Matrix, b: &Matrix, x: &Matrix) -> Result<IdentityReport> {
    let m = check_abx(a, b, x)?;
    require_parity("lemma-aux", m, false)?;
    let rep = ReportBuilder::new(IdentityId::LemmaAux.as_str(), &[a, b, x]);
    let y = sandwich(a, x, b)?.sub(&sandwich(b, &x.transpose(), a)?)?;
    let row_sums: Vec<Scalar> = (0..m)
        .map(|i| a.row(i).iter().fold(Scalar::zero(a.ring()), |acc, v| acc + v))
        .collect();
    let lhs = alternating_pf_sum(&row_sums, &y)?;
    let rhs = g_ab(a, b, x)?.negate_if(binom2_sign_negative(m / 2));
    Ok(rep.finish(lhs, rhs))
}

fn okada_pfaffian(a: &Matrix) -> Result<Scalar> {
    let u = Matrix::structured(Structured::Upper, a.cols(), a.ring());
    let y = sandwich(a, &u, a)?.sub(&sandwich(a, &u.transpose(), a)?)?;
    Ok(y.pfaffian()?)
}

/// `Σ_{|I|=m} det A^I = Pf(A U Aᵗ - A Uᵗ Aᵗ)`; odd `m` goes through the
/// augmented matrix `Â`. For `m > n` both sides must vanish.
pub fn check_okada(a: &Matrix) -> Result<IdentityReport> {
    let m = require_rows(a)?;
    let mut rep = ReportBuilder::new(IdentityId::Okada.as_str(), &[a]);
    let lhs = minor_sum(a)?;
    let rhs = if m % 2 == 0 {
        okada_pfaffian(a)?
    } else {
        let hat = a.augment_hat();
        rep.also("minor sum of augmented matrix", minor_sum(&hat)?, lhs.clone());
        okada_pfaffian(&hat)?
    };
    Ok(rep.finish(lhs, rhs))
}

/// `(Σ det A^I)² = det(A (2U + Id) Aᵗ)`, any `m`.
pub fn check_byun(a: &Matrix) -> Result<IdentityReport> {
    require_rows(a)?;
    let rep = ReportBuilder::new(IdentityId::Byun.as_str(), &[a]);
    let ring = a.ring();
    let n = a.cols();
    let u = Matrix::structured(Structured::Upper, n, ring);
    let k = u.add(&u)?.add(&Matrix::identity(ring, n))?;
    let lhs = minor_sum(a)?.square();
    let rhs = sandwich(a, &k, a)?.det()?;
    Ok(rep.finish(lhs, rhs))
}

/// `Σ_{|I|=m} Pf(Y_{I,I}) det A^I = Pf(A Y Aᵗ)` for even `m`, skew `Y`.
pub fn check_iswa(a: &Matrix, y: &Matrix) -> Result<IdentityReport> {
    let m = require_rows(a)?;
    require_parity("iswa", m, true)?;
    require_square_of(y, a.cols(), "Y")?;
    require_skew(y)?;
    let rep = ReportBuilder::new(IdentityId::Iswa.as_str(), &[a, y]);
    let mut lhs = Scalar::zero(a.ring());
    for i in subsets(a.cols(), m) {
        let pf = y.submatrix(&i, &i)?.pfaffian()?;
        if !pf.is_zero() {
            lhs += pf * a.columns(&i)?.det()?;
        }
    }
    let rhs = sandwich(a, y, a)?.pfaffian()?;
    Ok(rep.finish(lhs, rhs))
}

/// Strictly upper triangular part of `y`.
fn strict_upper(y: &Matrix) -> Matrix {
    let zero = Scalar::zero(y.ring());
    Matrix::from_fn(y.ring(), y.rows(), y.cols(), |i, j| {
        if i < j {
            y.get(i, j).clone()
        } else {
            zero.clone()
        }
    })
}

/// `Σ_{J ⊔ K = I} (-1)^(C(m/2,2) + inv(JK)) det X_{J,K} = Pf(Y_{I,I})`, `X`
/// the strictly upper part of skew `Y`, `|I| = m` even.
pub fn check_lemma_iswa(y: &Matrix, set: &IndexSet) -> Result<IdentityReport> {
    require_skew(y)?;
    let m = set.len();
    require_parity("lemma-iswa", m, true)?;
    if set.ambient() != y.rows() {
        return Err(IdentityError::Shape(format!(
            "I is a subset of [{}] but Y is {}x{}",
            set.ambient(),
            y.rows(),
            y.cols()
        )));
    }
    let rep = ReportBuilder::new(IdentityId::LemmaIswa.as_str(), &[y, set]);
    let x = strict_upper(y);
    let base = binom2_sign_negative(m / 2);
    let members = set.indices();
    let mut lhs = Scalar::zero(y.ring());
    for pick in subsets(m, m / 2) {
        let j: Vec<usize> = pick.iter().map(|p| members[p - 1]).collect();
        let k: Vec<usize> = pick.complement().iter().map(|p| members[p - 1]).collect();
        let jset = IndexSet::new(y.rows(), j.clone()).expect("subset of I");
        let kset = IndexSet::new(y.rows(), k.clone()).expect("subset of I");
        let d = x.submatrix(&jset, &kset)?.det()?;
        if !d.is_zero() {
            lhs += d.negate_if(base ^ (inv_word(&j, &k) % 2 == 1));
        }
    }
    let rhs = y.submatrix(set, set)?.pfaffian()?;
    Ok(rep.finish(lhs, rhs))
}

/// `det(A U Bᵗ + B U Aᵗ + A Bᵗ)` against the product of the weak-first chain
/// sum over `A, B` and the strict-first chain sum over `B, A`. Also compared
/// with the `f`/`g` product at `X = U + Id`, factor by factor.
pub fn check_ab(a: &Matrix, b: &Matrix) -> Result<IdentityReport> {
    let m = require_rows(a)?;
    require_same_shape(a, b)?;
    let mut rep = ReportBuilder::new(IdentityId::Ab.as_str(), &[a, b]);
    let ring = a.ring();
    let n = a.cols();
    let u = Matrix::structured(Structured::Upper, n, ring);
    let u_id = u.add(&Matrix::identity(ring, n))?;
    let lhs = sandwich(a, &u, b)?
        .add(&sandwich(b, &u, a)?)?
        .add(&a.mul(&b.transpose())?)?
        .det()?;
    let first = chain_sum(a, b, Step::Weak)?;
    let second = chain_sum(b, a, Step::Strict)?;
    // Reordering A^I B^J into alternating columns: (-1)^C(m/2,2) for even m;
    // for odd m = 2l+1 the reordering gives (-1)^C(l+1,2) and det(𝟏 X) adds (-1)^l.
    let (fa, fb, negative) = if m % 2 == 0 {
        (f_ab(a, b, &u_id)?, f_ab(b, a, &u)?, binom2_sign_negative(m / 2))
    } else {
        let l = m / 2;
        (
            g_ab(a, b, &u_id)?,
            g_ab(b, a, &u)?,
            (l % 2 == 1) ^ binom2_sign_negative(l + 1),
        )
    };
    rep.also("via X = U + Id", lhs.clone(), &fa * &fb);
    rep.also("first factor", first.clone(), fa.negate_if(negative));
    rep.also("second factor", second.clone(), fb.negate_if(negative));
    Ok(rep.finish(lhs, first * second))
}

/// Asymmetric Okada formulae for even `m`: the strict-first chain sum equals
/// `Pf(A U Bᵗ - B Uᵗ Aᵗ)` (primary comparison) and the weak-first chain sum
/// equals `Pf(A (U + Id) Bᵗ - B (Uᵗ + Id) Aᵗ)`.
pub fn check_ab2(a: &Matrix, b: &Matrix) -> Result<IdentityReport> {
    let m = require_rows(a)?;
    require_same_shape(a, b)?;
    require_parity("ab2", m, true)?;
    let mut rep = ReportBuilder::new(IdentityId::Ab2.as_str(), &[a, b]);
    let ring = a.ring();
    let n = a.cols();
    let u = Matrix::structured(Structured::Upper, n, ring);
    let u_id = u.add(&Matrix::identity(ring, n))?;
    let strict_lhs = chain_sum(a, b, Step::Strict)?;
    let strict_rhs = sandwich(a, &u, b)?.sub(&sandwich(b, &u.transpose(), a)?)?.pfaffian()?;
    let weak_lhs = chain_sum(a, b, Step::Weak)?;
    let weak_rhs = sandwich(a, &u_id, b)?
        .sub(&sandwich(b, &u_id.transpose(), a)?)?
        .pfaffian()?;
    rep.also("weak chains", weak_lhs, weak_rhs);
    Ok(rep.finish(strict_lhs, strict_rhs))
}

/// `det(A (X + J - Xᵗ) Aᵗ) = det(A (X - Xᵗ) Aᵗ) = f_A(X)²`, even `m`.
pub fn check_cor7(a: &Matrix, x: &Matrix) -> Result<IdentityReport> {
    let m = check_abx(a, a, x)?;
    require_parity("cor7", m, true)?;
    let mut rep = ReportBuilder::new(IdentityId::Cor7.as_str(), &[a, x]);
    let skew = x.sub(&x.transpose())?;
    let with_ones = skew.add(&Matrix::structured(Structured::Ones, x.rows(), x.ring()))?;
    let f_sq = f_ab(a, a, x)?.square();
    let lhs = sandwich(a, &with_ones, a)?.det()?;
    rep.also("det(A(X - Xt)At)", sandwich(a, &skew, a)?.det()?, f_sq.clone());
    Ok(rep.finish(lhs, f_sq))
}

/// Checks both closed forms against cofactor determinants for every pair
/// `(I, J)` in `[n]` with `|I| = |J|` and `|I| = |J| + 1`. The primary
/// comparison is (number of agreeing pairs, number of pairs); each
/// disagreement is listed.
pub fn check_closed_forms(n: usize, diag: &[Scalar]) -> Result<IdentityReport> {
    if diag.len() != n || n == 0 {
        return Err(IdentityError::Shape(format!(
            "need a diagonal of length n = {n} >= 1, got {}",
            diag.len()
        )));
    }
    let mut rep = ReportBuilder::new(IdentityId::ClosedForms.as_str(), &[&n, &diag.to_vec()]);
    let x = upper_with_diagonal(diag)?;
    let ring = x.ring().clone();
    let (mut agree, mut total) = (0u64, 0u64);
    let mut mismatches = Vec::new();
    for l in 0..=n {
        for i in subsets(n, l) {
            for j in subsets(n, l) {
                let closed = x1_closed_form(diag, n, &i, &j)?;
                let det = x.submatrix(&i, &j)?.det_cofactor()?;
                total += 1;
                if closed == det {
                    agree += 1;
                } else {
                    mismatches.push(Comparison::new(format!("det X_{{{i},{j}}}"), closed, det));
                }
            }
        }
    }
    for l in 0..n {
        let ones = Matrix::from_fn(&ring, l + 1, 1, |_, _| Scalar::one(&ring));
        for i in subsets(n, l + 1) {
            for j in subsets(n, l) {
                let closed = x2_closed_form(diag, n, &i, &j)?;
                let det = Matrix::concat_columns(&[&ones, &x.submatrix(&i, &j)?])?.det_cofactor()?;
                total += 1;
                if closed == det {
                    agree += 1;
                } else {
                    mismatches.push(Comparison::new(format!("det(1 X_{{{i},{j}}})"), closed, det));
                }
            }
        }
    }
    rep.checks.extend(mismatches);
    Ok(rep.finish(Scalar::int(agree), Scalar::int(total)))
}

/// `det(Y) = Pf(Y)²` for even-size skew `Y` (with the matching-sum and
/// Laplace Pfaffians compared for sizes up to 10); `det(Y) = 0` for odd size.
pub fn check_det_pf_square(y: &Matrix) -> Result<IdentityReport> {
    require_skew(y)?;
    let mut rep = ReportBuilder::new(IdentityId::DetPfSquare.as_str(), &[y]);
    let lhs = y.det()?;
    let rhs = if y.rows().is_multiple_of(2) {
        let pf = y.pfaffian_laplace()?;
        if y.rows() <= 10 {
            rep.also("matching sum vs Laplace", y.pfaffian_matchings()?, pf.clone());
        }
        pf.square()
    } else {
        Scalar::zero(y.ring())
    };
    Ok(rep.finish(lhs, rhs))
}

/// `Pf(A Bᵗ - B Aᵗ) = (-1)^C(m/2,2) Σ_{|I|=m/2} det(A^I B^I)`, even `m`; the
/// sum is also compared with `f_{A,B}(Id)`.
pub fn check_cauchy_binet_pf(a: &Matrix, b: &Matrix) -> Result<IdentityReport> {
    let m = require_rows(a)?;
    require_same_shape(a, b)?;
    require_parity("cauchy-binet-pf", m, true)?;
    let mut rep = ReportBuilder::new(IdentityId::CauchyBinetPf.as_str(), &[a, b]);
    let lhs = a.mul(&b.transpose())?.sub(&b.mul(&a.transpose())?)?.pfaffian()?;
    let mut sum = Scalar::zero(a.ring());
    for i in subsets(a.cols(), m / 2) {
        sum += Matrix::concat_columns(&[&a.columns(&i)?, &b.columns(&i)?])?.det()?;
    }
    let identity = Matrix::identity(a.ring(), a.cols());
    rep.also("f_AB(Id)", f_ab(a, b, &identity)?, sum.clone());
    let negative = binom2_sign_negative(m / 2);
    Ok(rep.finish(lhs, sum.negate_if(negative)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> IndexSet {
        IndexSet::new(n, v.to_vec()).unwrap()
    }

    fn poly_ring(names: &[&str]) -> RingTag {
        RingTag::polynomial(names.iter().copied()).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        let err = "bogus".parse::<IdentityId>().unwrap_err().to_string();
        assert!(err.contains("okada") && err.contains("cauchy-binet-pf"), "{err}");
    }

    #[test]
    fn sign_of_binom2() {
        for k in 0..12usize {
            let c = k * k.saturating_sub(1) / 2;
            assert_eq!(binom2_sign_negative(k), c % 2 == 1, "k = {k}");
        }
    }

    #[test]
    fn f_ab_identity_two_by_two() {
        // (I,J) pairs over {1},{2}: only the cross terms survive.
        let ring = poly_ring(&["x1_1", "x1_2", "x2_1", "x2_2"]);
        let x = Matrix::generic(&ring, "x", 2, 2).unwrap();
        let id = Matrix::identity(&ring, 2);
        let expected = Scalar::parse("x1_2 - x2_1", &ring).unwrap();
        assert_eq!(f_ab(&id, &id, &x).unwrap(), expected);
        let zero = Matrix::zeros(&ring, 2, 2);
        assert!(f_ab(&id, &id, &zero).unwrap().is_zero());
    }

    #[test]
    fn f_ab_at_identity_is_cauchy_binet_sum() {
        let a = Matrix::from_i64(&[[1, -2, 3, 0], [2, 1, -1, 4]]);
        let b = Matrix::from_i64(&[[0, 1, 5, -3], [1, 1, 2, 2]]);
        let mut sum = Scalar::int(0);
        for i in subsets(4, 1) {
            sum += Matrix::concat_columns(&[&a.columns(&i).unwrap(), &b.columns(&i).unwrap()])
                .unwrap()
                .det_cofactor()
                .unwrap();
        }
        let id = Matrix::identity(&RingTag::Integer, 4);
        assert_eq!(f_ab(&a, &b, &id).unwrap(), sum);
    }

    #[test]
    fn f_and_g_parity_errors() {
        let a = Matrix::from_i64(&[[1, 2]]);
        let x = Matrix::identity(&RingTag::Integer, 2);
        assert!(matches!(f_ab(&a, &a, &x), Err(IdentityError::Parity { .. })));
        let a2 = Matrix::from_i64(&[[1, 2], [3, 4]]);
        assert!(matches!(g_ab(&a2, &a2, &x), Err(IdentityError::Parity { .. })));
        let bad_x = Matrix::identity(&RingTag::Integer, 3);
        assert!(matches!(f_ab(&a2, &a2, &bad_x), Err(IdentityError::Shape(_))));
    }

    #[test]
    fn g_ab_with_one_row_is_row_sum() {
        let a = Matrix::from_i64(&[[3, -1, 4]]);
        let b = Matrix::from_i64(&[[7, 7, 7]]);
        let x = Matrix::from_i64(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        assert_eq!(g_ab(&a, &b, &x).unwrap(), Scalar::int(6));
        let zero = Matrix::zeros(&RingTag::Integer, 1, 3);
        assert!(g_ab(&zero, &b, &x).unwrap().is_zero());
    }

    #[test]
    fn x1_examples() {
        let ring = poly_ring(&["d1", "d2", "d3"]);
        let diag: Vec<Scalar> = ["d1", "d2", "d3"]
            .iter()
            .map(|v| Scalar::var(&ring, v).unwrap())
            .collect();
        assert_eq!(x1_closed_form(&diag, 3, &set(3, &[1]), &set(3, &[1])).unwrap(), diag[0]);
        assert!(x1_closed_form(&diag, 3, &set(3, &[2]), &set(3, &[1]))
            .unwrap()
            .is_zero());
        // det [[d1, 1], [0, 1]] = d1
        assert_eq!(
            x1_closed_form(&diag, 3, &set(3, &[1, 2]), &set(3, &[1, 3])).unwrap(),
            diag[0]
        );
        // det [[1, 1], [d2, 1]] = 1 - d2
        assert_eq!(
            x1_closed_form(&diag, 3, &set(3, &[1, 2]), &set(3, &[2, 3])).unwrap(),
            Scalar::parse("1 - d2", &ring).unwrap()
        );
        assert!(x1_closed_form(&diag, 3, &set(3, &[1]), &set(3, &[1, 2])).is_err());
    }

    #[test]
    fn x2_examples() {
        let ring = poly_ring(&["d1", "d2", "d3"]);
        let diag: Vec<Scalar> = ["d1", "d2", "d3"]
            .iter()
            .map(|v| Scalar::var(&ring, v).unwrap())
            .collect();
        assert!(x2_closed_form(&diag, 3, &set(3, &[1]), &set(3, &[])).unwrap().is_one());
        assert_eq!(
            x2_closed_form(&diag, 3, &set(3, &[1, 2]), &set(3, &[1])).unwrap(),
            -&diag[0]
        );
        assert!(x2_closed_form(&diag, 3, &set(3, &[1, 2]), &set(3, &[3]))
            .unwrap()
            .is_zero());
        assert!(x2_closed_form(&diag, 3, &set(3, &[1]), &set(3, &[1])).is_err());
    }

    #[test]
    fn chain_sum_single_row() {
        // m = 1: one column from P, any index.
        let a = Matrix::from_i64(&[[2, 3, 5]]);
        let b = Matrix::from_i64(&[[1, 1, 1]]);
        assert_eq!(chain_sum(&a, &b, Step::Weak).unwrap(), Scalar::int(10));
        assert_eq!(chain_sum(&a, &b, Step::Strict).unwrap(), Scalar::int(10));
    }

    #[test]
    fn okada_golden() {
        let a = Matrix::from_i64(&[[1, 1, 1], [1, 2, 3]]);
        let r = check_okada(&a).unwrap();
        assert_eq!(r.lhs, Scalar::int(4));
        assert_eq!(r.rhs, Scalar::int(4));
        assert!(r.pass);
        let odd = check_okada(&Matrix::from_i64(&[[1, 2, 3]])).unwrap();
        assert_eq!(odd.lhs, Scalar::int(6));
        assert!(odd.pass, "{odd:?}");
        assert!(check_okada(&Matrix::identity(&RingTag::Integer, 4))
            .unwrap()
            .lhs
            .is_one());
    }

    #[test]
    fn okada_with_more_rows_than_columns() {
        for a in [
            Matrix::from_i64(&[[1, 2], [3, 4], [5, 6], [7, 9]]),
            Matrix::from_i64(&[[1, 2], [3, 4], [5, 7]]),
        ] {
            let r = check_okada(&a).unwrap();
            assert!(r.lhs.is_zero() && r.pass, "{r:?}");
        }
    }

    #[test]
    fn byun_golden() {
        let a = Matrix::from_i64(&[[1, 1, 1], [1, 2, 3]]);
        let r = check_byun(&a).unwrap();
        assert_eq!(r.lhs, Scalar::int(16));
        assert_eq!(r.rhs, Scalar::int(16));
        let zero = check_byun(&Matrix::zeros(&RingTag::Integer, 2, 3)).unwrap();
        assert!(zero.pass && zero.lhs.is_zero());
    }

    #[test]
    fn iswa_reduces_to_okada() {
        let a = Matrix::from_i64(&[[1, 0, 2, -1], [3, 1, 1, 2]]);
        let u = Matrix::structured(Structured::Upper, 4, &RingTag::Integer);
        let y = u.sub(&u.transpose()).unwrap();
        let r = check_iswa(&a, &y).unwrap();
        let okada = check_okada(&a).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, okada.lhs);
        assert_eq!(r.rhs, okada.rhs);
    }

    #[test]
    fn lemma_iswa_two_element_set() {
        let y = Matrix::from_i64(&[[0, 7, 1], [-7, 0, 2], [-1, -2, 0]]);
        let r = check_lemma_iswa(&y, &set(3, &[1, 2])).unwrap();
        assert_eq!(r.lhs, Scalar::int(7));
        assert!(r.pass);
        assert!(matches!(
            check_lemma_iswa(&y, &set(3, &[1, 2, 3])),
            Err(IdentityError::Parity { .. })
        ));
    }

    #[test]
    fn rank1_rejects_non_skew() {
        let y = Matrix::from_i64(&[[0, 1], [1, 0]]);
        let r1 = Rank1Data::new(vec![Scalar::int(1); 2], vec![Scalar::int(1); 2]).unwrap();
        assert!(matches!(
            check_rank1(&y, &r1),
            Err(IdentityError::Matrix(MatrixError::NotSkewSymmetric { .. }))
        ));
        assert!(Rank1Data::new(vec![Scalar::int(1)], vec![]).is_err());
    }

    #[test]
    fn parity_guards() {
        let a = Matrix::from_i64(&[[1, 2, 3]]);
        let x = Matrix::identity(&RingTag::Integer, 3);
        assert!(check_main2(&a, &a, &x).is_err());
        assert!(check_cor7(&a, &x).is_err());
        assert!(check_ab2(&a, &a).is_err());
        let a2 = Matrix::from_i64(&[[1, 2, 3], [0, 1, 1]]);
        assert!(check_lemma_aux(&a2, &a2, &x).is_err());
        let empty = Matrix::zeros(&RingTag::Integer, 0, 3);
        assert!(check_byun(&empty).is_err());
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = Matrix::from_i64(&[[1, 2]]);
        let b = Matrix::from_i64(&[[1, 3]]);
        let d1 = input_digest("byun", &[&a]);
        assert_eq!(d1, input_digest("byun", &[&a]));
        assert_eq!(d1.len(), 32);
        assert_ne!(d1, input_digest("byun", &[&b]));
        assert_ne!(d1, input_digest("okada", &[&a]));
    }
}
