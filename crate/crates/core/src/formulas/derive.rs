//! New multiplicity identities fitted from oracle tables.
//!
//! For an index `id` the ansatz is
//!
//! ```text
//! rep_cof(R, id, N) / dim R(N) = Σ_Q c_Q(N) Π_{d∈Q} Θ(d)
//! ```
//!
//! over products `Q` of Θ degrees with no part 1, total degree at most
//! `|id|` and of the same parity. At each rank the coefficients are the
//! unique solution of an exact linear system built from the corpus; the
//! `c_Q` are then reconstructed as rational functions of `N` and the result
//! is checked on tables and ranks that took no part in the fit.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{phi_residual, FormulaError, MultiplicityIdentity};
use crate::characters::rep_cof;
use crate::exact::{reconstruct_auto, EchelonForm, ExactMatrix, PolyN, RatFuncN, Rational};
use crate::partitions::{no_one_partitions, Partition};
use crate::weights::{rep_dimension, MultiplicityTable, ThetaPowers};

/// Spare samples each reconstructed coefficient must predict exactly.
const RECONSTRUCTION_CHECKS: usize = 3;

/// Ranks beyond the fitted ones at which the whole corpus is re-checked.
const EXTRAPOLATION_RANKS: u32 = 3;

/// Every `corpus` entry with `index % HOLDOUT_STRIDE == HOLDOUT_STRIDE - 1`
/// is kept out of the fit and used for validation only.
const HOLDOUT_STRIDE: usize = 4;

/// Fit ranks per unit of index degree; enough for the coefficient degrees
/// seen up to degree 8 with the reconstruction's spare checks.
const RANKS_PER_DEGREE: u32 = 8;

/// Fit ranks for `id` on `corpus`: `8·|id|` consecutive ranks starting just
/// above the longest corpus label, and no lower than `|id| − 1`.
pub fn default_derive_ranks(id: &Partition, corpus: &[MultiplicityTable]) -> Vec<u32> {
    let lo = corpus.iter().map(|t| t.top().len() as u32).max().unwrap_or(0).max(id.weight().saturating_sub(2)) + 1;
    (lo..lo + RANKS_PER_DEGREE * id.weight()).collect()
}

/// Θ products allowed in the ansatz for `id`, in grade order by degree.
pub fn ansatz_basis(id: &Partition) -> Vec<Partition> {
    let s = id.weight();
    (0..=s).filter(|d| d % 2 == s % 2).flat_map(no_one_partitions).collect()
}

/// Exact ansatz coefficients `c_Q` at one rank, fitted on every table of
/// `corpus` whose label length is below `rank`.
pub fn fit_ansatz_at(
    id: &Partition,
    corpus: &[MultiplicityTable],
    rank: u32,
) -> Result<BTreeMap<Partition, Rational>, FormulaError> {
    let basis = ansatz_basis(id);
    let max_degree = basis.iter().flat_map(|q| q.parts().first().copied()).max().unwrap_or(0);
    let usable: Vec<&MultiplicityTable> = corpus.iter().filter(|t| (t.top().len() as u32) < rank).collect();
    let rows = usable
        .par_iter()
        .map(|t| {
            let theta = ThetaPowers::new(t.top(), rank).with_degrees(max_degree);
            let row: Vec<Rational> = basis.iter().map(|q| theta.monomial(q)).collect();
            let dim = Rational::from_integer(rep_dimension(t, rank).into());
            Ok((row, rep_cof(t, id, rank)? / dim))
        })
        .collect::<Result<Vec<_>, FormulaError>>()?;
    let (rows, rhs): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let matrix = ExactMatrix::from_rows(rows, basis.len())?;
    let ech = EchelonForm::new(&matrix, &rhs)?;
    if !ech.is_consistent() {
        return Err(FormulaError::AnsatzInconsistent { id: id.clone(), rank });
    }
    if ech.nullity() > 0 {
        return Err(FormulaError::CorpusTooSmall { id: id.clone(), rank, nullity: ech.nullity() });
    }
    Ok(basis.into_iter().zip(ech.unique_solution()?).collect())
}

/// A fitted identity `rep_cof · D(N) − dim · Σ_Q P_Q(N) Θ_Q = 0`, stored
/// with denominators cleared: `c_Q = P_Q / D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DerivedDocument", try_from = "DerivedDocument")]
pub struct DerivedFormula {
    pub id: Partition,
    pub denominator: PolyN,
    /// Nonzero numerators only.
    pub numerators: BTreeMap<Partition, PolyN>,
    pub fit_ranks: Vec<u32>,
    pub fit_tops: Vec<Partition>,
    pub holdout_tops: Vec<Partition>,
    /// Ranks at which every corpus table was checked.
    pub validation_ranks: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DerivedDocument {
    id: Partition,
    denominator: Vec<String>,
    numerators: BTreeMap<Partition, Vec<String>>,
    fit_ranks: Vec<u32>,
    fit_tops: Vec<Partition>,
    holdout_tops: Vec<Partition>,
    validation_ranks: Vec<u32>,
}

impl From<DerivedFormula> for DerivedDocument {
    fn from(f: DerivedFormula) -> Self {
        DerivedDocument {
            id: f.id,
            denominator: f.denominator.to_strings(),
            numerators: f.numerators.iter().map(|(q, p)| (q.clone(), p.to_strings())).collect(),
            fit_ranks: f.fit_ranks,
            fit_tops: f.fit_tops,
            holdout_tops: f.holdout_tops,
            validation_ranks: f.validation_ranks,
        }
    }
}

impl TryFrom<DerivedDocument> for DerivedFormula {
    type Error = FormulaError;

    fn try_from(d: DerivedDocument) -> Result<Self, Self::Error> {
        Ok(DerivedFormula {
            id: d.id,
            denominator: PolyN::from_strings(&d.denominator)?,
            numerators: d
                .numerators
                .into_iter()
                .map(|(q, p)| Ok((q, PolyN::from_strings(&p)?)))
                .collect::<Result<_, FormulaError>>()?,
            fit_ranks: d.fit_ranks,
            fit_tops: d.fit_tops,
            holdout_tops: d.holdout_tops,
            validation_ranks: d.validation_ranks,
        })
    }
}

impl DerivedFormula {
    /// `c_Q` as a rational function; zero for products outside the fit.
    pub fn coefficient(&self, q: &Partition) -> RatFuncN {
        let num = self.numerators.get(q).cloned().unwrap_or_else(PolyN::zero);
        RatFuncN::new(num, self.denominator.clone()).expect("denominator is nonzero")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derived formula serializes")
    }
}

impl MultiplicityIdentity for DerivedFormula {
    fn id(&self) -> &Partition {
        &self.id
    }

    fn label(&self) -> String {
        format!("d{}", self.id.compact())
    }

    fn multipliers(&self, theta: &ThetaPowers, rank: u32) -> Result<(Rational, Rational), FormulaError> {
        let n = rank as i64;
        let mut b = Rational::zero();
        for (q, p) in &self.numerators {
            b -= p.eval_int(n) * theta.monomial(q);
        }
        Ok((self.denominator.eval_int(n), b))
    }
}

fn poly_lcm(a: &PolyN, b: &PolyN) -> Result<PolyN, FormulaError> {
    let g = a.gcd(b);
    Ok((a * &b.div_exact(&g)?).monic())
}

/// Fits, reconstructs and validates an identity for `id` from oracle tables.
///
/// Every fourth corpus table is held out. The fit uses `ranks`, each of
/// which must exceed the label length of every corpus table; validation
/// checks the held-out tables at those ranks and the whole corpus at a few
/// ranks beyond them.
pub fn derive_formula(id: &Partition, corpus: &[MultiplicityTable], ranks: &[u32]) -> Result<DerivedFormula, FormulaError> {
    if id.contains_one() || id.weight() < 4 {
        return Err(FormulaError::BadIndex(id.clone(), "needs degree at least 4 and no part 1".to_string()));
    }
    if corpus.is_empty() {
        return Err(FormulaError::EmptyCorpus);
    }
    if ranks.is_empty() {
        return Err(FormulaError::NoRanks);
    }
    for t in corpus {
        if let Some(&n) = ranks.iter().find(|&&n| n as usize <= t.top().len()) {
            return Err(FormulaError::RankTooSmall { top: t.top().clone(), sigma: t.top().len(), rank: n });
        }
    }
    let (holdout, fit): (Vec<(usize, &MultiplicityTable)>, Vec<(usize, &MultiplicityTable)>) =
        corpus.iter().enumerate().partition(|(i, _)| i % HOLDOUT_STRIDE == HOLDOUT_STRIDE - 1);
    let fit: Vec<MultiplicityTable> = fit.into_iter().map(|(_, t)| t.clone()).collect();
    let holdout: Vec<MultiplicityTable> = holdout.into_iter().map(|(_, t)| t.clone()).collect();
    if holdout.is_empty() {
        return Err(FormulaError::NoHoldout { id: id.clone(), tables: corpus.len() });
    }

    let mut ranks = ranks.to_vec();
    ranks.sort_unstable();
    ranks.dedup();
    let fits = ranks.par_iter().map(|&n| fit_ansatz_at(id, &fit, n)).collect::<Result<Vec<_>, _>>()?;

    let mut coefficients: BTreeMap<Partition, RatFuncN> = BTreeMap::new();
    for q in ansatz_basis(id) {
        let points: Vec<(i64, Rational)> = ranks.iter().zip(&fits).map(|(&n, c)| (n as i64, c[&q].clone())).collect();
        let f = reconstruct_auto(&points, RECONSTRUCTION_CHECKS)?;
        if !f.num().is_zero() {
            coefficients.insert(q, f);
        }
    }
    let mut denominator = PolyN::one();
    for f in coefficients.values() {
        denominator = poly_lcm(&denominator, f.den())?;
    }
    let numerators = coefficients
        .iter()
        .map(|(q, f)| Ok((q.clone(), f.num() * &denominator.div_exact(f.den())?)))
        .collect::<Result<BTreeMap<_, _>, FormulaError>>()?;

    let max = *ranks.last().expect("ranks nonempty");
    let extra: Vec<u32> = (max + 1..=max + EXTRAPOLATION_RANKS).collect();
    let formula = DerivedFormula {
        id: id.clone(),
        denominator,
        numerators,
        fit_ranks: ranks.clone(),
        fit_tops: fit.iter().map(|t| t.top().clone()).collect(),
        holdout_tops: holdout.iter().map(|t| t.top().clone()).collect(),
        validation_ranks: ranks.iter().chain(&extra).copied().collect(),
    };
    let checks: Vec<(&MultiplicityTable, u32)> = holdout
        .iter()
        .flat_map(|t| ranks.iter().chain(&extra).map(move |&n| (t, n)))
        .chain(fit.iter().flat_map(|t| extra.iter().map(move |&n| (t, n))))
        .collect();
    let failure = checks
        .par_iter()
        .map(|&(t, n)| Ok((!phi_residual(&formula, t, n)?.is_zero()).then(|| (t.top().clone(), n))))
        .collect::<Result<Vec<_>, FormulaError>>()?
        .into_iter()
        .flatten()
        .next();
    if let Some((top, rank)) = failure {
        return Err(FormulaError::ValidationFailed { id: id.clone(), top, rank });
    }
    Ok(formula)
}
