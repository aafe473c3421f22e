//! Freudenthal's recursion for weight multiplicities, used as the reference
//! oracle for every table the formula engine produces.
//!
//! Weights are handled as `N+1`-vectors of nonnegative integers summing to
//! the height (the polynomial `GL(N+1)` picture). Differences of squared
//! norms are unchanged by projecting to the Σ=0 hyperplane because all
//! weights of one representation share the same coordinate sum, so the
//! recursion runs in integers with `ρ = (N, N−1, …, 0)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::partitions::{sub_dominants, Partition};
use crate::weights::{
    rep_dimension, to_orbit_label, weyl_dimension, weyl_dimension_of_label, DynkinLabels, MultiplicityTable,
    OrbitLabel, WeightError,
};

/// Largest representation [`freudenthal`] accepts.
pub const FREUDENTHAL_DIMENSION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreudenthalError {
    #[error("representation too large for the oracle: dimension {0} exceeds {FREUDENTHAL_DIMENSION_LIMIT}")]
    TooLarge(BigUint),
    #[error("rank {rank} cannot hold a label with {sigma} parts")]
    RankTooSmall { sigma: usize, rank: u32 },
    #[error("no ranks given")]
    NoRanks,
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Multiplicity table of the irreducible representation with highest
/// weight `d`.
pub fn freudenthal(d: &DynkinLabels) -> Result<MultiplicityTable, FreudenthalError> {
    let dim = weyl_dimension(d);
    if dim > BigUint::from(FREUDENTHAL_DIMENSION_LIMIT) {
        return Err(FreudenthalError::TooLarge(dim));
    }
    freudenthal_label(&to_orbit_label(d), d.rank())
}

/// Freudenthal recursion for the top label `q` at rank `N` (σ ≤ N+1),
/// without the size guard. The cost grows with the number of sub-dominant
/// labels, not with the dimension.
pub fn freudenthal_label(q: &OrbitLabel, rank: u32) -> Result<MultiplicityTable, FreudenthalError> {
    let slots = rank as usize + 1;
    if q.len() > slots {
        return Err(FreudenthalError::RankTooSmall { sigma: q.len(), rank });
    }
    let rho: Vec<i64> = (0..slots).map(|i| (slots - 1 - i) as i64).collect();
    let norm = |v: &[i64]| -> i64 { v.iter().zip(&rho).map(|(a, r)| (a + r) * (a + r)).sum() };
    let pad = |p: &Partition| -> Vec<i64> {
        let mut v: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
        v.resize(slots, 0);
        v
    };
    let top = pad(q);
    let top_norm = norm(&top);

    // Descending grade: the top comes first, and every weight λ + tα with
    // α > 0 sorts to a label of strictly higher grade.
    let labels: Vec<Partition> = sub_dominants(q).into_iter().rev().filter(|l| l.len() <= slots).collect();
    let mut m: BTreeMap<Partition, u64> = BTreeMap::new();
    m.insert(q.clone(), 1);
    for label in labels.iter().skip(1) {
        let lam = pad(label);
        let denom = top_norm - norm(&lam);
        assert!(denom > 0, "Freudenthal denominator must be positive for {label} below {q}");
        let support = label.len();
        let mut sum: i64 = 0;
        for j in 0..support {
            for i in 0..j {
                for t in 1..=lam[j] {
                    let mut w = lam.clone();
                    w[i] += t;
                    w[j] -= t;
                    let mult = m.get(&sorted_label(&w)).copied().unwrap_or(0) as i64;
                    if mult != 0 {
                        sum += mult * (w[i] - w[j]);
                    }
                }
            }
        }
        let num = 2 * sum;
        assert!(num % denom == 0, "Freudenthal quotient must be integral at {label}");
        let value = num / denom;
        assert!(value >= 0, "multiplicities are nonnegative");
        m.insert(label.clone(), value as u64);
    }
    Ok(MultiplicityTable::new(q.clone(), m)?)
}

fn sorted_label(w: &[i64]) -> Partition {
    Partition::from_unsorted(w.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect())
}

/// Rank-independent table for `q`: Freudenthal at the smallest rank where
/// every sub-dominant orbit is nonempty.
pub fn stable_table(q: &OrbitLabel) -> MultiplicityTable {
    let rank = q.weight().saturating_sub(1).max(q.len() as u32).max(1);
    freudenthal_label(q, rank).expect("rank holds every sub-dominant label")
}

/// Whether the table's dimension matches the Weyl dimension formula.
pub fn check_dimension(t: &MultiplicityTable, rank: u32) -> bool {
    rep_dimension(t, rank) == weyl_dimension_of_label(t.top(), rank)
}

/// Per-label multiplicities across several ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub top: Partition,
    pub ranks: Vec<u32>,
    /// Labels present at every rank, with their multiplicity per rank.
    pub values: BTreeMap<Partition, Vec<u64>>,
    /// Labels whose multiplicity changes with the rank.
    pub unstable: Vec<Partition>,
    pub stable: bool,
}

pub fn stability_report(q: &OrbitLabel, ranks: &[u32]) -> Result<StabilityReport, FreudenthalError> {
    let Some(&min_rank) = ranks.iter().min() else { return Err(FreudenthalError::NoRanks) };
    if (min_rank as usize) < q.len() {
        return Err(FreudenthalError::RankTooSmall { sigma: q.len(), rank: min_rank });
    }
    let tables = ranks.iter().map(|&n| freudenthal_label(q, n)).collect::<Result<Vec<_>, _>>()?;
    let values: BTreeMap<Partition, Vec<u64>> = sub_dominants(q)
        .into_iter()
        .filter(|l| l.len() <= min_rank as usize + 1)
        .map(|l| {
            let row = tables.iter().map(|t| t.get(&l)).collect();
            (l, row)
        })
        .collect();
    let unstable: Vec<Partition> =
        values.iter().filter(|(_, v)| v.windows(2).any(|w| w[0] != w[1])).map(|(k, _)| k.clone()).collect();
    Ok(StabilityReport { top: q.clone(), ranks: ranks.to_vec(), stable: unstable.is_empty(), values, unstable })
}
