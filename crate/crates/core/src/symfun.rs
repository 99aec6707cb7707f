//! Partitions, dominance order and Kostka numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("weight mismatch: |mu| = {0}, |lambda| = {1}")]
    WeightMismatch(u32, u32),
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("weight {0} exceeds the supported bound {1}")]
    TooLarge(u32, u32),
}

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SymError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&l| l >= j).count() as u32)
                .collect(),
        )
    }

    fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = SymError;
    fn try_from(v: Vec<u32>) -> Result<Self, SymError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub const MAX_PARTITION_WEIGHT: u32 = 20;

/// All partitions of `n` in reverse lexicographic order, so `(n)` comes first
/// and `(1^n)` last. This total order refines dominance.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// True iff `lambda` dominates `mu`: every partial sum of `mu` is at most the
/// corresponding partial sum of `lambda`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool, SymError> {
    if mu.weight() != lambda.weight() {
        return Err(SymError::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let n = mu.len().max(lambda.len());
    let (mut a, mut b) = (0, 0);
    for i in 0..n {
        a += mu.part(i);
        b += lambda.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of semistandard tableaux of shape `mu` and content `lambda`.
///
/// Entries `1, 2, ...` are placed one value at a time; each value occupies a
/// horizontal strip, so the count is the number of strip chains from the empty
/// shape to `mu`.
pub fn kostka(mu: &Partition, lambda: &Partition) -> Result<u64, SymError> {
    if mu.weight() != lambda.weight() {
        return Err(SymError::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let rows = mu.len();
    let shape = vec![0u32; rows];
    Ok(count_strips(mu.parts(), lambda.parts(), shape))
}

fn count_strips(mu: &[u32], content: &[u32], shape: Vec<u32>) -> u64 {
    let Some((&k, rest)) = content.split_first() else {
        return u64::from(shape.as_slice() == mu);
    };
    let mut total = 0;
    let mut next = shape.clone();
    add_strip(mu, &shape, &mut next, 0, k, &mut |s| {
        total += count_strips(mu, rest, s.to_vec());
    });
    total
}

/// Visits every `next` with `shape[j] <= next[j] <= min(mu[j], shape[j-1])`
/// and `sum(next - shape) = k`.
fn add_strip(mu: &[u32], shape: &[u32], next: &mut Vec<u32>, row: usize, k: u32, visit: &mut dyn FnMut(&[u32])) {
    if row == shape.len() {
        if k == 0 {
            visit(next);
        }
        return;
    }
    let cap = if row == 0 { mu[0] } else { mu[row].min(shape[row - 1]) };
    let room = cap.saturating_sub(shape[row]);
    for add in 0..=room.min(k) {
        next[row] = shape[row] + add;
        add_strip(mu, shape, next, row + 1, k - add, visit);
    }
    next[row] = shape[row];
}

/// `K[i][j] = kostka(parts[i], parts[j])` over `partitions_of(n)`, with its
/// integer inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaMatrix {
    pub n: u32,
    pub partitions: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
}

pub const MAX_KOSTKA_WEIGHT: u32 = 8;

pub fn kostka_matrix(n: u32) -> Result<KostkaMatrix, SymError> {
    if n > MAX_KOSTKA_WEIGHT {
        return Err(SymError::TooLarge(n, MAX_KOSTKA_WEIGHT));
    }
    let partitions = partitions_of(n);
    let m = partitions.len();
    let entries: Vec<Vec<i64>> = partitions
        .iter()
        .map(|mu| {
            partitions
                .iter()
                .map(|la| kostka(mu, la).map(|k| k as i64))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()?;
    // upper unitriangular, so back substitution stays in the integers
    let mut inverse = vec![vec![0i64; m]; m];
    for j in 0..m {
        inverse[j][j] = 1;
        for i in (0..j).rev() {
            let s: i64 = (i + 1..=j).map(|k| entries[i][k] * inverse[k][j]).sum();
            inverse[i][j] = -s;
        }
    }
    Ok(KostkaMatrix {
        n,
        partitions,
        entries,
        inverse,
    })
}

impl KostkaMatrix {
    pub fn is_unitriangular(&self) -> bool {
        let m = self.partitions.len();
        (0..m).all(|i| self.entries[i][i] == 1 && (0..i).all(|j| self.entries[i][j] == 0))
    }

    pub fn times_inverse_is_identity(&self) -> bool {
        let m = self.partitions.len();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let s: i64 = (0..m).map(|k| self.entries[i][k] * self.inverse[k][j]).sum();
                s == i64::from(i == j)
            })
        })
    }
}
