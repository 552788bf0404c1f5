//! Complete homogeneous and skew Schur polynomials in finitely many
//! variables, and both sides of the Cauchy-type skew Schur identity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::combinat::{is_horizontal_strip, lambda_of, subsets, IndexSet, Partition};
use crate::identities::{chain_sum, IdentityError, IdentityReport, ReportBuilder, Step};
use crate::matrix::{Matrix, MatrixError, Structured};
use crate::ring::{Monomial, Poly, RingError, RingTag, Scalar, Vars};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymfunError {
    #[error("the Cauchy identity requires even m, got m = {0}")]
    OddM(usize),
    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),
    #[error("variable {0:?} is not in the ring")]
    UnknownVariable(String),
    #[error("symmetric polynomials need a polynomial ring, got {0}")]
    NotPolynomial(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

type Result<T> = std::result::Result<T, SymfunError>;

/// A block of indeterminates inside a polynomial ring.
#[derive(Debug, Clone)]
pub struct VarBlock {
    vars: Vars,
    positions: Vec<usize>,
}

impl VarBlock {
    pub fn new(ring: &RingTag, names: &[&str]) -> Result<Self> {
        let RingTag::Polynomial(vars) = ring else {
            return Err(SymfunError::NotPolynomial(ring.to_string()));
        };
        let positions = names
            .iter()
            .map(|n| {
                vars.index_of(n)
                    .ok_or_else(|| SymfunError::UnknownVariable(n.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(VarBlock {
            vars: vars.clone(),
            positions,
        })
    }

    /// `prefix1, ..., prefix{k}` in a ring of their own.
    pub fn standalone(prefix: &str, k: usize) -> Result<Self> {
        let names: Vec<String> = (1..=k).map(|i| format!("{prefix}{i}")).collect();
        let ring = RingTag::polynomial(names.iter().cloned())?;
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        VarBlock::new(&ring, &refs)
    }

    pub fn ring(&self) -> RingTag {
        RingTag::Polynomial(self.vars.clone())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Shared ring `x1..x{kx}, y1..y{ky}` (x-block first) with both blocks.
pub fn cauchy_ring(kx: usize, ky: usize) -> Result<(RingTag, VarBlock, VarBlock)> {
    let xs: Vec<String> = (1..=kx).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=ky).map(|i| format!("y{i}")).collect();
    let ring = RingTag::polynomial(xs.iter().chain(&ys).cloned())?;
    let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
    let yr: Vec<&str> = ys.iter().map(String::as_str).collect();
    let x = VarBlock::new(&ring, &xr)?;
    let y = VarBlock::new(&ring, &yr)?;
    Ok((ring, x, y))
}

/// `h_n` over the block: sum of all monomials of degree `n`; `h_0 = 1` and
/// `h_n = 0` for `n < 0`.
pub fn h_complete(n: i64, block: &VarBlock) -> Scalar {
    let nvars = block.vars.len();
    if n < 0 {
        return Scalar::Poly(Poly::zero(&block.vars));
    }
    let mut terms = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill_degree(&block.positions, n as u32, &mut exps, &mut terms);
    Scalar::Poly(Poly::from_terms(&block.vars, terms))
}

fn fill_degree(positions: &[usize], left: u32, exps: &mut [u32], out: &mut Vec<(Monomial, BigInt)>) {
    match positions {
        [] => {
            if left == 0 {
                out.push((Monomial::new(exps.to_vec()), BigInt::one()));
            }
        }
        [last] => {
            exps[*last] = left;
            out.push((Monomial::new(exps.to_vec()), BigInt::one()));
            exps[*last] = 0;
        }
        [first, rest @ ..] => {
            for e in 0..=left {
                exps[*first] = e;
                fill_degree(rest, left - e, exps, out);
            }
            exps[*first] = 0;
        }
    }
}

/// Memoized `h_d` over one block.
struct HCache<'a> {
    block: &'a VarBlock,
    values: HashMap<i64, Scalar>,
}

impl<'a> HCache<'a> {
    fn new(block: &'a VarBlock) -> Self {
        HCache {
            block,
            values: HashMap::new(),
        }
    }

    fn get(&mut self, d: i64) -> Scalar {
        let block = self.block;
        self.values.entry(d).or_insert_with(|| h_complete(d, block)).clone()
    }
}

/// `s_{λ/μ} = det(h_{λ_j - j - μ_i + i})` over the block, by cofactor
/// expansion. Zero when `μ ⊄ λ`.
pub fn skew_schur(lambda: &Partition, mu: &Partition, block: &VarBlock) -> Result<Scalar> {
    skew_schur_cached(lambda, mu, &mut HCache::new(block))
}

fn skew_schur_cached(lambda: &Partition, mu: &Partition, h: &mut HCache<'_>) -> Result<Scalar> {
    let ring = h.block.ring();
    if !lambda.contains(mu) {
        return Ok(Scalar::zero(&ring));
    }
    let len = lambda.len().max(mu.len());
    let mut data = Vec::with_capacity(len * len);
    for i in 0..len {
        for j in 0..len {
            let d = lambda.part(j) as i64 - j as i64 - mu.part(i) as i64 + i as i64;
            data.push(h.get(d));
        }
    }
    Ok(Matrix::new(ring, len, len, data)?.det_cofactor()?)
}

/// Exchanges two indeterminates of a polynomial.
pub fn swap_variables(p: &Scalar, a: &str, b: &str) -> Result<Scalar> {
    let Scalar::Poly(poly) = p else {
        return Err(SymfunError::NotPolynomial(p.ring().to_string()));
    };
    let vars = poly.vars();
    let ia = vars.index_of(a).ok_or_else(|| SymfunError::UnknownVariable(a.into()))?;
    let ib = vars.index_of(b).ok_or_else(|| SymfunError::UnknownVariable(b.into()))?;
    let terms = poly.terms().iter().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e.swap(ia, ib);
        (Monomial::new(e), c.clone())
    });
    Ok(Scalar::Poly(Poly::from_terms(vars, terms)))
}

/// `i₁ ≤ j₁ < i₂ ≤ j₂ < ⋯`.
fn interleaves_weakly(i: &IndexSet, j: &IndexSet) -> bool {
    let (i, j) = (i.indices(), j.indices());
    (0..i.len()).all(|k| i[k] <= j[k] && (k + 1 == i.len() || j[k] < i[k + 1]))
}

/// Both sides of the Cauchy-type identity for skew Schur polynomials,
/// truncated to `kx` x-variables and `ky` y-variables.
///
/// The left side sums `±s_{λ(I)/λ(R)}(x) s_{λ(J)/λ(S)}(y)` over splits
/// `R ⊔ S = [m]` and pairs `(I, J)` with `λ(J)/λ(I)` a horizontal strip. The
/// right side is the Pfaffian of the `m × m` matrix of h-products. Extra
/// comparisons: the strip filter against the interleaving `i₁ ≤ j₁ < i₂ ≤ ⋯`
/// (number of disagreeing pairs, expected 0), the right-side matrix against
/// `A(U + Id)Bᵗ - B(Uᵗ + Id)Aᵗ` with `A = (h_{j-i}(x))`, `B = (h_{j-i}(y))`
/// (number of differing entries), and the weak-first chain sum over `A, B`.
pub fn check_cauchy(m: usize, n: usize, kx: usize, ky: usize) -> Result<IdentityReport> {
    if m % 2 == 1 {
        return Err(SymfunError::OddM(m));
    }
    for (count, name) in [(m, "m"), (n, "n"), (kx, "kx"), (ky, "ky")] {
        if count == 0 {
            return Err(SymfunError::ZeroCount(name));
        }
    }
    let mut rep = ReportBuilder::new("cauchy", &[&m, &n, &kx, &ky]);
    let (ring, xb, yb) = cauchy_ring(kx, ky)?;
    let mut hx = HCache::new(&xb);
    let mut hy = HCache::new(&yb);
    let half = m / 2;

    let mut entries = Vec::with_capacity(m * m);
    for i in 1..=m as i64 {
        for j in 1..=m as i64 {
            let mut acc = Scalar::zero(&ring);
            for k in 1..=n as i64 {
                for l in k..=n as i64 {
                    acc += hx.get(k - i) * hy.get(l - j) - hy.get(l - i) * hx.get(k - j);
                }
            }
            entries.push(acc);
        }
    }
    let pf_matrix = Matrix::new(ring.clone(), m, m, entries)?;
    if let Some((row, col)) = pf_matrix.skew_violation() {
        return Err(MatrixError::NotSkewSymmetric { row, col }.into());
    }
    let rhs = pf_matrix.pfaffian()?;

    let big: Vec<IndexSet> = subsets(n, half).collect();
    let strips: Vec<(usize, usize)> = (0..big.len())
        .flat_map(|a| (0..big.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| is_horizontal_strip(&lambda_of(&big[b]), &lambda_of(&big[a])))
        .collect();
    let filter_disagreements = (0..big.len())
        .flat_map(|a| (0..big.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            is_horizontal_strip(&lambda_of(&big[b]), &lambda_of(&big[a])) != interleaves_weakly(&big[a], &big[b])
        })
        .count();

    let mut lhs = Scalar::zero(&ring);
    for r in subsets(m, half) {
        let s = r.complement();
        let negative = r.iter().map(|v| v - 1).sum::<usize>() % 2 == 1;
        let (lr, ls) = (lambda_of(&r), lambda_of(&s));
        let sx: Vec<Scalar> = big
            .iter()
            .map(|i| skew_schur_cached(&lambda_of(i), &lr, &mut hx))
            .collect::<Result<_>>()?;
        let sy: Vec<Scalar> = big
            .iter()
            .map(|j| skew_schur_cached(&lambda_of(j), &ls, &mut hy))
            .collect::<Result<_>>()?;
        let mut part = Scalar::zero(&ring);
        for &(a, b) in &strips {
            if !sx[a].is_zero() && !sy[b].is_zero() {
                part += &sx[a] * &sy[b];
            }
        }
        lhs += part.negate_if(negative);
    }

    let a = Matrix::from_fn(&ring, m, n, |i, j| hx.get(j as i64 - i as i64));
    let b = Matrix::from_fn(&ring, m, n, |i, j| hy.get(j as i64 - i as i64));
    let u_id = Matrix::structured(Structured::Upper, n, &ring).add(&Matrix::identity(&ring, n))?;
    let ab23 = a
        .mul(&u_id)?
        .mul(&b.transpose())?
        .sub(&b.mul(&u_id.transpose())?.mul(&a.transpose())?)?;
    let differing = pf_matrix
        .entries()
        .iter()
        .zip(ab23.entries())
        .filter(|(p, q)| p != q)
        .count();

    rep.also(
        "strip filter vs interleaving filter (disagreeing pairs)",
        Scalar::int(filter_disagreements),
        Scalar::int(0),
    );
    rep.also(
        "entries differing from the h-matrix product",
        Scalar::int(differing),
        Scalar::int(0),
    );
    rep.also(
        "weak-first chain sum of h-matrices",
        chain_sum(&a, &b, Step::Weak)?,
        rhs.clone(),
    );
    Ok(rep.finish(lhs, rhs))
}
