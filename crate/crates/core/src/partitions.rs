//! Integer partitions, their counts, dominance order and the grading used to
//! order orbit labels.
//!
//! The grade of a partition of `s` is its 1-based position in ascending
//! lexicographic order of the weakly decreasing part sequences: `(1,…,1)` has
//! grade 1 and `(s)` has grade `p(s)`. Lexicographic order refines dominance,
//! so a label of higher grade never lies below a label of lower grade.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("cannot compare partitions of {0} and {1}")]
    WeightMismatch(u32, u32),
    #[error("malformed partition {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers. The derived ordering
/// is lexicographic, which for partitions of the same weight is the grade
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `k` copies of `part`.
    pub fn rectangle(part: u32, k: usize) -> Self {
        if part == 0 {
            return Self::empty();
        }
        Partition(vec![part; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_one(&self) -> bool {
        self.0.last() == Some(&1)
    }

    /// Multiplicities of the distinct part values.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&v| v == self.0[i]).count();
            out.push(j);
            i += j;
        }
        out
    }

    /// Parts joined without separators, the way formula ids are written
    /// (`(5,2)` → `"52"`). Ambiguous once a part exceeds 9.
    pub fn compact(&self) -> String {
        if self.0.iter().any(|&p| p > 9) {
            return self.to_string();
        }
        self.0.iter().map(|p| p.to_string()).collect()
    }

    /// Inverse of [`Partition::compact`]; comma-separated input is accepted
    /// as well.
    pub fn from_compact(s: &str) -> Result<Self, PartitionError> {
        if s.contains(',') {
            return s.parse();
        }
        let parts = s
            .chars()
            .map(|c| c.to_digit(10).filter(|&d| d > 0).ok_or_else(|| PartitionError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Comma-separated parts such as `3,2,1,1,1,1`; the empty string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| PartitionError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `s` in grade order.
pub fn enumerate_partitions(s: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(s, s, &mut current, &mut out);
    // Generated largest-first; grade order is the reverse.
    out.reverse();
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// `p(s)` from Euler's pentagonal-number recurrence.
pub fn partition_count(s: u32) -> u128 {
    let s = s as usize;
    let mut p = vec![0u128; s + 1];
    p[0] = 1;
    for n in 1..=s {
        let mut acc: i128 = 0;
        for k in 1.. {
            let k = k as i64;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                acc += sign * p[n - g2] as i128;
            }
        }
        p[n] = acc as u128;
    }
    p[s]
}

/// Partitions of `s` with no part equal to 1, in grade order.
pub fn no_one_partitions(s: u32) -> Vec<Partition> {
    enumerate_partitions(s).into_iter().filter(|p| !p.contains_one()).collect()
}

/// Number of partitions of `s` with no part equal to 1.
pub fn kappa(s: u32) -> u128 {
    match s {
        0 => 1,
        _ => partition_count(s) - partition_count(s - 1),
    }
}

/// Whether every prefix sum of `a` is at least the matching prefix sum of
/// `b` (shorter sequences padded with zeros).
pub fn dominates(a: &Partition, b: &Partition) -> Result<bool, PartitionError> {
    if a.weight() != b.weight() {
        return Err(PartitionError::WeightMismatch(a.weight(), b.weight()));
    }
    let (mut sa, mut sb) = (0u32, 0u32);
    for i in 0..a.len().max(b.len()) {
        sa += a.0.get(i).copied().unwrap_or(0);
        sb += b.0.get(i).copied().unwrap_or(0);
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partitions of `n` with every part at most `k`.
fn bounded_count(n: u32, k: u32, memo: &mut Vec<Vec<Option<u128>>>) -> u128 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let k = k.min(n);
    if let Some(v) = memo[n as usize][k as usize] {
        return v;
    }
    let v = bounded_count(n, k - 1, memo) + bounded_count(n - k, k, memo);
    memo[n as usize][k as usize] = Some(v);
    v
}

/// 1-based position of `p` in [`enumerate_partitions`] of its weight.
pub fn grade(p: &Partition) -> u128 {
    let s = p.weight();
    let mut memo = vec![vec![None; s as usize + 1]; s as usize + 1];
    let mut smaller = 0u128;
    let mut remaining = s;
    for &part in &p.0 {
        // Sequences agreeing so far but with a smaller part here.
        for c in 1..part {
            smaller += bounded_count(remaining - c, c, &mut memo);
        }
        remaining -= part;
    }
    smaller + 1
}

/// Every partition of `q.weight()` dominated by `q`, in grade order; `q`
/// itself is last.
pub fn sub_dominants(q: &Partition) -> Vec<Partition> {
    enumerate_partitions(q.weight())
        .into_iter()
        .filter(|p| dominates(q, p).expect("equal weights"))
        .collect()
}
