//! Enumeration primitives: index subsets, perfect matchings and their
//! crossing numbers, word inversions, partitions attached to index sets and
//! horizontal strips.
//!
//! All streams are lazy and deterministic (lexicographic).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("index {index} outside 1..={ambient}")]
    OutOfRange { index: usize, ambient: usize },
    #[error("indices must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<usize>),
    #[error("perfect matchings need an even ground set, got {0} elements")]
    OddGroundSet(usize),
    #[error("ground set has repeated elements: {0:?}")]
    RepeatedGround(Vec<usize>),
}

/// Strictly increasing subset of `1..=ambient`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    ambient: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(ambient: usize, indices: Vec<usize>) -> Result<Self, CombinatError> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > ambient) {
            return Err(CombinatError::OutOfRange { index: bad, ambient });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CombinatError::NotIncreasing(indices));
        }
        Ok(IndexSet { ambient, indices })
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSet {
            ambient: n,
            indices: (1..=n).collect(),
        }
    }

    pub fn empty(ambient: usize) -> Self {
        IndexSet {
            ambient,
            indices: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            ambient: self.ambient,
            indices: (1..=self.ambient).filter(|&i| !self.contains(i)).collect(),
        }
    }

    /// Bitmask with bit `i - 1` set for every member.
    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `k`-subsets of `[n]` in lexicographic order. Empty when `k > n`.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets {
        n,
        current: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let cur = self.current.take()?;
        let out = IndexSet {
            ambient: self.n,
            indices: cur.clone(),
        };
        let k = cur.len();
        let mut next = cur;
        // Rightmost position that can still be bumped.
        if let Some(p) = (0..k).rev().find(|&p| next[p] < self.n - (k - 1 - p)) {
            next[p] += 1;
            for q in p + 1..k {
                next[q] = next[q - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Pairing of an even ground set. Each pair is stored smaller element first;
/// pairs are listed by increasing first element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self, CombinatError> {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut seen: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(CombinatError::RepeatedGround(seen));
        }
        Ok(PerfectMatching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All perfect matchings of `ground`, `(m-1)!!` of them. The smallest
/// remaining element is paired first, trying partners in increasing order.
pub fn perfect_matchings(ground: &[usize]) -> Result<Matchings, CombinatError> {
    if ground.len() % 2 == 1 {
        return Err(CombinatError::OddGroundSet(ground.len()));
    }
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CombinatError::RepeatedGround(sorted));
    }
    Ok(Matchings {
        ground: sorted,
        choices: Some(vec![0; ground.len() / 2]),
    })
}

/// Odometer over partner choices: at level `t` the smallest unmatched element
/// is paired with the `choices[t]`-th of the others (`m - 2t - 1` options).
pub struct Matchings {
    ground: Vec<usize>,
    choices: Option<Vec<usize>>,
}

impl Iterator for Matchings {
    type Item = PerfectMatching;

    fn next(&mut self) -> Option<PerfectMatching> {
        let choices = self.choices.as_mut()?;
        let mut rest = self.ground.clone();
        let mut pairs = Vec::with_capacity(choices.len());
        for &c in choices.iter() {
            let a = rest.remove(0);
            let b = rest.remove(c);
            pairs.push((a, b));
        }
        let m = self.ground.len();
        let mut advanced = false;
        for t in (0..choices.len()).rev() {
            if choices[t] + 1 < m - 2 * t - 1 {
                choices[t] += 1;
                advanced = true;
                break;
            }
            choices[t] = 0;
        }
        if !advanced {
            self.choices = None;
        }
        Some(PerfectMatching { pairs })
    }
}

/// Number of quadruples `i < j < k < l` with `{i,k}` and `{j,l}` both pairs.
pub fn crossing_number(matching: &PerfectMatching) -> usize {
    let p = &matching.pairs;
    let mut count = 0;
    for (x, &(a, b)) in p.iter().enumerate() {
        for &(c, d) in &p[x + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                count += 1;
            }
        }
    }
    count
}

/// Inversions of the word `first` followed by `second`: pairs `(j, k)` with
/// `j` in `first`, `k` in `second`, and `j > k`.
pub fn inv_word(first: &[usize], second: &[usize]) -> usize {
    first.iter().map(|&j| second.iter().filter(|&&k| j > k).count()).sum()
}

/// Non-increasing sequence of non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        parts.windows(2).all(|w| w[0] >= w[1]).then_some(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `self` contains `other` cell-wise.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..self.len().max(other.len())).all(|i| other.part(i) <= self.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(i_k - k, ..., i_2 - 2, i_1 - 1)` for `I = {i_1 < ... < i_k}`.
pub fn lambda_of(set: &IndexSet) -> Partition {
    Partition(
        set.indices
            .iter()
            .enumerate()
            .rev()
            .map(|(pos, &i)| i - (pos + 1))
            .collect(),
    )
}

/// Inverse of [`lambda_of`] for `k`-subsets of `[n]`; `None` when the
/// partition does not fit in a `k × (n-k)` box.
pub fn index_set_of(lambda: &Partition, k: usize, n: usize) -> Option<IndexSet> {
    if lambda.len() > k || k > n || lambda.part(0) > n - k {
        return None;
    }
    let indices = (1..=k).map(|pos| lambda.part(k - pos) + pos).collect();
    IndexSet::new(n, indices).ok()
}

/// `λ₁ ≥ μ₁ ≥ λ₂ ≥ μ₂ ≥ ⋯`, the shorter partition padded with zeros.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    let len = outer.len().max(inner.len());
    (0..len).all(|i| outer.part(i) >= inner.part(i) && inner.part(i) >= outer.part(i + 1))
}
