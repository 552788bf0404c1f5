//! Non-intersecting lattice paths with fixed or free endpoints.
//!
//! Starts and candidate ends lie on staircases (x non-decreasing, y
//! non-increasing, points distinct), so every vertex-disjoint family connects
//! the i-th start to the i-th chosen end and the Lindström determinant counts
//! families without signs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{subsets, IndexSet};
use crate::identities::{minor_sum, IdentityError};
use crate::matrix::{Matrix, MatrixError, Structured};
use crate::ring::{RingTag, Scalar};

pub type Point = (i64, i64);

/// Upper bound on the number of path tuples the brute-force oracle visits.
pub const ENUMERATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathsError {
    #[error("{what} point {point:?} appears twice")]
    Duplicate { what: &'static str, point: Point },
    #[error("{what} points must have non-decreasing x and non-increasing y; {prev:?} is followed by {next:?}")]
    NotStaircase {
        what: &'static str,
        prev: Point,
        next: Point,
    },
    #[error("step {0:?} must have non-negative coordinates and be nonzero")]
    BadStep(Point),
    #[error("choose = {choose} but there are {starts} starts")]
    ChooseMismatch { choose: usize, starts: usize },
    #[error("cannot choose {choose} of {ends} candidate ends")]
    TooFewEnds { choose: usize, ends: usize },
    #[error("need one end per start: {starts} starts, {ends} ends")]
    SizeMismatch { starts: usize, ends: usize },
    #[error("{0} path tuples exceed the enumeration guard of 1000000; shrink the instance")]
    GuardExceeded(BigInt),
    #[error("Byun determinant {0} is not the square of a non-negative integer")]
    NotPerfectSquare(Box<Scalar>),
    #[error("free-endpoint routes disagree: brute {}, okada {}, byun {}", .0.brute, .0.okada, .0.byun)]
    RouteDisagreement(Box<Routes>),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

type Result<T> = std::result::Result<T, PathsError>;

pub const NORTH_EAST: [Point; 2] = [(1, 0), (0, 1)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathProblem {
    starts: Vec<Point>,
    ends: Vec<Point>,
    steps: Vec<Point>,
    choose: usize,
}

fn check_staircase(what: &'static str, points: &[Point]) -> Result<()> {
    let mut seen = HashSet::new();
    for &p in points {
        if !seen.insert(p) {
            return Err(PathsError::Duplicate { what, point: p });
        }
    }
    for w in points.windows(2) {
        if !(w[0].0 <= w[1].0 && w[0].1 >= w[1].1) {
            return Err(PathsError::NotStaircase {
                what,
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

impl PathProblem {
    /// Unit north-east steps.
    pub fn new(starts: Vec<Point>, ends: Vec<Point>, choose: usize) -> Result<Self> {
        Self::with_steps(starts, ends, NORTH_EAST.to_vec(), choose)
    }

    /// Steps must be nonzero with non-negative coordinates, which makes the
    /// walk model acyclic.
    pub fn with_steps(starts: Vec<Point>, ends: Vec<Point>, steps: Vec<Point>, choose: usize) -> Result<Self> {
        check_staircase("start", &starts)?;
        check_staircase("end", &ends)?;
        let steps = check_steps(&steps)?;
        if choose != starts.len() {
            return Err(PathsError::ChooseMismatch {
                choose,
                starts: starts.len(),
            });
        }
        if choose > ends.len() {
            return Err(PathsError::TooFewEnds {
                choose,
                ends: ends.len(),
            });
        }
        Ok(PathProblem {
            starts,
            ends,
            steps,
            choose,
        })
    }

    pub fn starts(&self) -> &[Point] {
        &self.starts
    }

    pub fn ends(&self) -> &[Point] {
        &self.ends
    }

    pub fn steps(&self) -> &[Point] {
        &self.steps
    }

    pub fn choose(&self) -> usize {
        self.choose
    }

    /// Number of single paths from `from` to `to`.
    pub fn path_count(&self, from: Point, to: Point) -> BigInt {
        path_count_with(&self.steps, from, to)
    }

    fn all_paths(&self, from: Point, to: Point) -> Vec<Vec<Point>> {
        let mut out = Vec::new();
        let mut cur = vec![from];
        self.paths_rec(to, &mut cur, &mut out);
        out
    }

    fn paths_rec(&self, to: Point, cur: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
        let at = *cur.last().expect("path starts non-empty");
        if at == to {
            out.push(cur.clone());
            return;
        }
        for &(sx, sy) in &self.steps {
            let next = (at.0 + sx, at.1 + sy);
            if next.0 <= to.0 && next.1 <= to.1 {
                cur.push(next);
                self.paths_rec(to, cur, out);
                cur.pop();
            }
        }
    }
}

fn check_steps(steps: &[Point]) -> Result<Vec<Point>> {
    if let Some(&s) = steps.iter().find(|s| s.0 < 0 || s.1 < 0 || **s == (0, 0)) {
        return Err(PathsError::BadStep(s));
    }
    let mut steps = steps.to_vec();
    steps.sort_unstable();
    steps.dedup();
    Ok(steps)
}

/// `steps` sorted and deduplicated.
fn path_count_with(steps: &[Point], from: Point, to: Point) -> BigInt {
    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
    if dx < 0 || dy < 0 {
        return BigInt::zero();
    }
    if steps == [(0, 1), (1, 0)] {
        return binomial((dx + dy) as u64, dx as u64);
    }
    count_dfs(steps, from, to, &mut HashMap::new())
}

fn count_dfs(steps: &[Point], at: Point, to: Point, memo: &mut HashMap<Point, BigInt>) -> BigInt {
    if at == to {
        return BigInt::from(1);
    }
    if let Some(v) = memo.get(&at) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for &(sx, sy) in steps {
        let next = (at.0 + sx, at.1 + sy);
        if next.0 <= to.0 && next.1 <= to.1 {
            total += count_dfs(steps, next, to, memo);
        }
    }
    memo.insert(at, total.clone());
    total
}

/// Single-path counts between arbitrary point lists; only the step set is
/// validated.
pub fn count_matrix(starts: &[Point], ends: &[Point], steps: &[Point]) -> Result<Matrix> {
    let steps = check_steps(steps)?;
    Ok(Matrix::from_fn(&RingTag::Integer, starts.len(), ends.len(), |i, j| {
        Scalar::Int(path_count_with(&steps, starts[i], ends[j]))
    }))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Entry `(i, j)` counts single paths from start `i` to candidate end `j`.
pub fn lindstrom_matrix(p: &PathProblem) -> Matrix {
    Matrix::from_fn(&RingTag::Integer, p.starts.len(), p.ends.len(), |i, j| {
        Scalar::Int(p.path_count(p.starts[i], p.ends[j]))
    })
}

fn check_end_selection(p: &PathProblem, ends: &IndexSet) -> Result<()> {
    if ends.len() != p.starts.len() || ends.ambient() != p.ends.len() {
        return Err(PathsError::SizeMismatch {
            starts: p.starts.len(),
            ends: ends.len(),
        });
    }
    Ok(())
}

/// Non-intersecting families from the starts to the selected ends.
pub fn count_fixed(p: &PathProblem, ends: &IndexSet) -> Result<Scalar> {
    check_end_selection(p, ends)?;
    Ok(lindstrom_matrix(p).columns(ends)?.det()?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Routes {
    pub brute: Scalar,
    pub okada: Scalar,
    pub byun: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreeCount {
    pub count: Scalar,
    pub routes: Routes,
}

/// Non-intersecting families from the starts to any `choose` of the
/// candidate ends, computed as a sum of determinants, as an Okada Pfaffian
/// and as the square root of the Byun determinant. Any disagreement is an
/// error carrying all three values.
pub fn count_free(p: &PathProblem) -> Result<FreeCount> {
    let a = lindstrom_matrix(p);
    let ring = RingTag::Integer;
    let n = a.cols();

    let mut brute = Scalar::zero(&ring);
    for cols in subsets(n, a.rows()) {
        brute += a.columns(&cols)?.det_cofactor()?;
    }

    let (okada_src, size) = if a.rows().is_multiple_of(2) {
        (a.clone(), n)
    } else {
        (a.augment_hat(), n + 1)
    };
    let u = Matrix::structured(Structured::Upper, size, &ring);
    let okada = okada_src
        .mul(&u)?
        .mul(&okada_src.transpose())?
        .sub(&okada_src.mul(&u.transpose())?.mul(&okada_src.transpose())?)?
        .pfaffian()?;

    let u = Matrix::structured(Structured::Upper, n, &ring);
    let k = u.add(&u)?.add(&Matrix::identity(&ring, n))?;
    let square = a.mul(&k)?.mul(&a.transpose())?.det()?;
    let byun = match square.as_bigint() {
        Some(v) if !v.is_negative() && v.sqrt().pow(2) == *v => Scalar::Int(v.sqrt()),
        _ => return Err(PathsError::NotPerfectSquare(Box::new(square))),
    };

    if brute != okada || brute != byun {
        return Err(PathsError::RouteDisagreement(Box::new(Routes { brute, okada, byun })));
    }
    debug_assert_eq!(brute, minor_sum(&a)?);
    Ok(FreeCount {
        count: brute.clone(),
        routes: Routes { brute, okada, byun },
    })
}

/// Explicit enumeration of vertex-disjoint path tuples connecting start `i`
/// to the `i`-th selected end. Refuses instances whose product of single
/// path counts exceeds [`ENUMERATION_GUARD`].
pub fn brute_force_nonintersecting(p: &PathProblem, ends: &IndexSet) -> Result<Scalar> {
    check_end_selection(p, ends)?;
    let targets: Vec<Point> = ends.iter().map(|j| p.ends[j - 1]).collect();
    let product: BigInt = p
        .starts
        .iter()
        .zip(&targets)
        .map(|(&s, &t)| p.path_count(s, t))
        .product();
    if product > BigInt::from(ENUMERATION_GUARD) {
        return Err(PathsError::GuardExceeded(product));
    }
    if product.is_zero() {
        return Ok(Scalar::int(0));
    }
    let families: Vec<Vec<Vec<Point>>> = p
        .starts
        .iter()
        .zip(&targets)
        .map(|(&s, &t)| p.all_paths(s, t))
        .collect();
    let mut used = HashSet::new();
    let count = disjoint_rec(&families, 0, &mut used);
    Ok(Scalar::int(count))
}

fn disjoint_rec(families: &[Vec<Vec<Point>>], k: usize, used: &mut HashSet<Point>) -> u64 {
    if k == families.len() {
        return 1;
    }
    let mut total = 0;
    for path in &families[k] {
        if path.iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(path.iter().copied());
        total += disjoint_rec(families, k + 1, used);
        for v in path {
            used.remove(v);
        }
    }
    total
}

/// JSON problem `{"starts": [[x,y],...], "ends": [[x,y],...], "choose": m}`
/// with optional `"steps"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathProblemFile {
    pub starts: Vec<[i64; 2]>,
    pub ends: Vec<[i64; 2]>,
    pub choose: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<[i64; 2]>>,
}

impl PathProblemFile {
    pub fn into_problem(self) -> Result<PathProblem> {
        let pts = |v: Vec<[i64; 2]>| v.into_iter().map(|[x, y]| (x, y)).collect::<Vec<_>>();
        let steps = self.steps.map(pts).unwrap_or_else(|| NORTH_EAST.to_vec());
        PathProblem::with_steps(pts(self.starts), pts(self.ends), steps, self.choose)
    }
}

/// Path count as `u64` when it fits; convenience for callers and tests.
pub fn path_count_u64(p: &PathProblem, from: Point, to: Point) -> Option<u64> {
    p.path_count(from, to).to_u64()
}
