//! The linear system for unknown multiplicities and its exact solution.
//!
//! Every identity at every rank gives one equation
//! `Σ_α m(α) [cof(ρ_α, id, N)·A + |Π(ρ_α)|·B] = 0` in the multiplicities of
//! the sub-dominant orbits. The top has multiplicity 1, which moves its
//! column to the right-hand side.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{FormulaError, MultiplicityIdentity};
use crate::characters::cof;
use crate::exact::{as_integer, format_rational, EchelonForm, ExactMatrix, Rational};
use crate::freudenthal::stable_table;
use crate::partitions::{sub_dominants, Partition};
use crate::weights::{orbit_dimension, MultiplicityTable, OrbitLabel, TableDocument, ThetaPowers};

/// Ranks used when none are given: `σ+1, …, σ+u+2` for `u` unknowns.
pub fn default_ranks(sigma: usize, unknowns: usize) -> Vec<u32> {
    let lo = sigma as u32 + 1;
    (lo..=lo + unknowns as u32 + 1).collect()
}

/// `M · m = rhs` for the multiplicities of `unknowns`.
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub top: OrbitLabel,
    pub unknowns: Vec<OrbitLabel>,
    /// `(formula label, rank)` of each row.
    pub rows: Vec<(String, u32)>,
    pub matrix: ExactMatrix,
    pub rhs: Vec<Rational>,
}

/// Coefficient of `m(label)` in the identity's equation at `rank`.
fn entry(label: &OrbitLabel, identity: &dyn MultiplicityIdentity, a: &Rational, b: &Rational, rank: u32) -> Result<Rational, FormulaError> {
    let dim = Rational::from_integer(orbit_dimension(label, rank).into());
    Ok(cof(label, identity.id(), rank)? * a + dim * b)
}

pub fn assemble_system(
    top: &OrbitLabel,
    identities: &[&dyn MultiplicityIdentity],
    ranks: &[u32],
) -> Result<AssembledSystem, FormulaError> {
    if let Some(&n) = ranks.iter().find(|&&n| n as usize <= top.len()) {
        return Err(FormulaError::RankTooSmall { top: top.clone(), sigma: top.len(), rank: n });
    }
    let unknowns: Vec<OrbitLabel> = sub_dominants(top).into_iter().filter(|l| l != top).collect();
    let mut matrix = ExactMatrix::zeros(0, unknowns.len());
    let mut rhs = Vec::new();
    let mut rows = Vec::new();
    if unknowns.is_empty() {
        return Ok(AssembledSystem { top: top.clone(), unknowns, rows, matrix, rhs });
    }
    for identity in identities {
        for &n in ranks {
            let theta = ThetaPowers::new(top, n);
            let (a, b) = identity.multipliers(&theta, n)?;
            let row = unknowns.iter().map(|l| entry(l, *identity, &a, &b, n)).collect::<Result<Vec<_>, _>>()?;
            matrix.push_row(row)?;
            rhs.push(-entry(top, *identity, &a, &b, n)?);
            rows.push((identity.label(), n));
        }
    }
    Ok(AssembledSystem { top: top.clone(), unknowns, rows, matrix, rhs })
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Ranks to start from; [`default_ranks`] when `None`.
    pub ranks: Option<Vec<u32>>,
    /// Compare the solution with the Freudenthal table.
    pub cross_check: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub top: Partition,
    /// Ranks of the final system, after any extension.
    pub ranks: Vec<u32>,
    /// Labels of the identities in the final system.
    pub formulas: Vec<String>,
    pub system_rank: usize,
    pub nullity: usize,
    pub table: TableDocument,
    pub oracle_agreement: Option<bool>,
    pub warnings: Vec<String>,
}

impl SolveReport {
    pub fn multiplicities(&self) -> MultiplicityTable {
        self.table.clone().into_table().expect("solver output is a valid table")
    }
}

/// Solves for the multiplicities of the representation with top `top`.
///
/// When the system leaves unknowns free, ranks are added one at a time (up
/// to `σ + u + 5`, or the largest requested rank if higher), then the
/// `fallback` identities one at a time, before giving up.
pub fn solve_multiplicities(
    top: &OrbitLabel,
    identities: &[&dyn MultiplicityIdentity],
    fallback: &[&dyn MultiplicityIdentity],
    options: &SolveOptions,
) -> Result<SolveReport, FormulaError> {
    let sigma = top.len();
    let unknown_count = sub_dominants(top).len() - 1;
    let mut ranks = options.ranks.clone().unwrap_or_else(|| default_ranks(sigma, unknown_count));
    if ranks.is_empty() {
        return Err(FormulaError::NoRanks);
    }
    ranks.sort_unstable();
    ranks.dedup();
    if ranks[0] as usize <= sigma {
        return Err(FormulaError::RankTooSmall { top: top.clone(), sigma, rank: ranks[0] });
    }
    let single = |rank: u32, formulas: Vec<String>| {
        let table = MultiplicityTable::single_orbit(top.clone());
        SolveReport {
            top: top.clone(),
            ranks: vec![rank],
            formulas,
            system_rank: 0,
            nullity: 0,
            table: table.to_document(rank),
            oracle_agreement: options.cross_check.then(|| stable_table(top) == table),
            warnings: Vec::new(),
        }
    };
    if unknown_count == 0 {
        return Ok(single(ranks[0], Vec::new()));
    }
    if identities.is_empty() && fallback.is_empty() {
        return Err(FormulaError::NoFormulas);
    }
    let mut active: Vec<&dyn MultiplicityIdentity> = identities.to_vec();
    let mut spare = fallback.iter();
    if active.is_empty() {
        active.push(*spare.next().expect("fallback nonempty"));
    }
    let rank_limit = (sigma + unknown_count + 5).max(*ranks.last().expect("nonempty") as usize) as u32;

    let (system, ech) = loop {
        let system = assemble_system(top, &active, &ranks)?;
        let ech = EchelonForm::new(&system.matrix, &system.rhs)?;
        if !ech.is_consistent() {
            return Err(FormulaError::Inconsistent { top: top.clone() });
        }
        if ech.nullity() == 0 {
            break (system, ech);
        }
        let last = *ranks.last().expect("nonempty");
        if last < rank_limit {
            ranks.push(last + 1);
        } else if let Some(&extra) = spare.next() {
            active.push(extra);
        } else {
            return Err(FormulaError::Underdetermined {
                top: top.clone(),
                rank: ech.rank(),
                nullity: ech.nullity(),
                ranks,
            });
        }
    };
    let solution = ech.unique_solution()?;

    let mut entries = BTreeMap::from([(top.clone(), 1u64)]);
    for (label, value) in system.unknowns.iter().zip(&solution) {
        let m = as_integer(value).filter(|v| !v.is_negative()).and_then(|v| v.to_u64()).ok_or_else(|| {
            FormulaError::NotIntegral { top: top.clone(), label: label.clone(), value: format_rational(value) }
        })?;
        if !m.is_zero() {
            entries.insert(label.clone(), m);
        }
    }
    let table = MultiplicityTable::new(top.clone(), entries)?;

    let mut warnings = Vec::new();
    for label in &system.unknowns {
        let empty: Vec<u32> = ranks.iter().copied().filter(|&n| label.len() > n as usize + 1).collect();
        if !empty.is_empty() {
            warnings.push(format!("orbit {label} is empty at ranks {empty:?}; its equations there use the formal continuation"));
        }
    }
    let oracle_agreement = options.cross_check.then(|| stable_table(top) == table);
    Ok(SolveReport {
        top: top.clone(),
        table: table.to_document(ranks[0]),
        formulas: active.iter().map(|f| f.label()).collect(),
        ranks,
        system_rank: ech.rank(),
        nullity: ech.nullity(),
        oracle_agreement,
        warnings,
    })
}
