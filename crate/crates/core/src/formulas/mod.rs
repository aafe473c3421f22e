//! Multiplicity formulas: identities `Φ = 0` that tie the power-sum
//! coefficient `cof_id` of a representation to its dimension and to power
//! sums Θ of its shifted highest weight.
//!
//! Every identity here has the shape
//!
//! ```text
//! Φ(R, N) = rep_cof(R, id, N) · A(N, Λ) + dim R(N) · B(N, Λ)
//! ```
//!
//! with `Λ` the highest weight of `R`. Since both `rep_cof` and the
//! dimension are linear in the orbit multiplicities, each identity at each
//! rank gives one linear equation for the unknown multiplicities.

mod builtin;
mod calibrate;
mod derive;
mod solve;

pub use builtin::builtin_formulas;
pub use calibrate::{
    calibrate, validate_formula, Calibration, FailurePoint, FormulaStatus, Provenance,
    SuspectDetails, TermComparison, ValidationReport,
};
pub use derive::{ansatz_basis, default_derive_ranks, derive_formula, fit_ansatz_at, DerivedFormula};
pub use solve::{assemble_system, default_ranks, solve_multiplicities, AssembledSystem, SolveOptions, SolveReport};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{rep_cof, CharacterError};
use crate::exact::{AlgebraError, PolyN, RatFuncN, Rational};
use crate::freudenthal::FreudenthalError;
use crate::partitions::{Partition, PartitionError};
use crate::weights::{rep_dimension, MultiplicityTable, OrbitLabel, ThetaPowers, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("symbol {0} has no calibrated value")]
    Unresolved(GSymbol),
    #[error("{symbol} has a pole at N = {rank}")]
    Pole { symbol: GSymbol, rank: u32 },
    #[error("unknown formula {0:?}")]
    UnknownFormula(String),
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("no ranks given")]
    NoRanks,
    #[error("rank {rank} must exceed {sigma}, the number of parts of {top}")]
    RankTooSmall { top: Partition, sigma: usize, rank: u32 },
    #[error("calibration of {symbol} failed: {reason}")]
    Calibration { symbol: GSymbol, reason: String },
    #[error("underdetermined system for {top}: rank {rank}, {nullity} free unknowns after extending to ranks {ranks:?}")]
    Underdetermined { top: Partition, rank: usize, nullity: usize, ranks: Vec<u32> },
    #[error("inconsistent system for {top}: no multiplicities satisfy the chosen formulas")]
    Inconsistent { top: Partition },
    #[error("solution for {top} is not a table of nonnegative integers: m({label}) = {value}")]
    NotIntegral { top: Partition, label: Partition, value: String },
    #[error("no formula available for the solve")]
    NoFormulas,
    #[error("ansatz for {id} is inconsistent at N = {rank}: no combination of Θ products fits the corpus")]
    AnsatzInconsistent { id: Partition, rank: u32 },
    #[error("corpus too small to fit {id} at N = {rank}: {nullity} coefficients undetermined")]
    CorpusTooSmall { id: Partition, rank: u32, nullity: usize },
    #[error("corpus of {tables} tables leaves none held out to validate {id}")]
    NoHoldout { id: Partition, tables: usize },
    #[error("derived formula for {id} fails on held-out {top} at N = {rank}")]
    ValidationFailed { id: Partition, top: Partition, rank: u32 },
    #[error("invalid formula index {0}: {1}")]
    BadIndex(Partition, String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Freudenthal(#[from] FreudenthalError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// The unnamed factors multiplying the formulas, each an unknown function
/// of the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GSymbol {
    G,
    G4,
    G5,
    G6,
    G22,
}

impl GSymbol {
    pub const ALL: [GSymbol; 5] = [GSymbol::G, GSymbol::G4, GSymbol::G5, GSymbol::G6, GSymbol::G22];

    pub fn name(self) -> &'static str {
        match self {
            GSymbol::G => "g",
            GSymbol::G4 => "g4",
            GSymbol::G5 => "g5",
            GSymbol::G6 => "g6",
            GSymbol::G22 => "g22",
        }
    }
}

impl fmt::Display for GSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GSymbol {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GSymbol::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| FormulaError::UnknownFormula(s.to_string()))
    }
}

/// `coefficient · poly(N) · symbol(N)`, the symbol factor being optional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicFactor {
    pub coefficient: i64,
    pub poly: PolyN,
    pub symbol: Option<GSymbol>,
}

impl SymbolicFactor {
    pub fn new(coefficient: i64, poly: PolyN, symbol: Option<GSymbol>) -> Self {
        SymbolicFactor { coefficient, poly, symbol }
    }

    /// The explicit part `coefficient · poly(N)`.
    fn explicit(&self, rank: u32) -> Rational {
        self.poly.eval_int(rank as i64) * Rational::from_integer(self.coefficient.into())
    }
}

/// One bracketed term `coefficient · f(N) · [symbol(N)] · Π Θ(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTerm {
    /// Name of the coefficient polynomial, e.g. `f^{52}_{43}`.
    pub name: String,
    pub factor: SymbolicFactor,
    pub degrees: Partition,
}

/// Transcription of one formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaSpec {
    pub id: Partition,
    pub cof_factor: SymbolicFactor,
    pub dim_terms: Vec<SymbolicFactor>,
    pub theta_terms: Vec<ThetaTerm>,
}

/// Where a symbol sits inside a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Cof,
    Dim(usize),
    Theta(usize),
}

/// An affine expression `constant + Σ_g coefficient_g · g(N)` in the
/// symbol values at one rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: Rational,
    pub coefficients: BTreeMap<GSymbol, Rational>,
}

impl LinearForm {
    fn add(&mut self, symbol: Option<GSymbol>, v: Rational) {
        match symbol {
            None => self.constant += v,
            Some(g) => *self.coefficients.entry(g).or_insert_with(Rational::zero) += v,
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = GSymbol> + '_ {
        self.coefficients.iter().filter(|(_, c)| !c.is_zero()).map(|(g, _)| *g)
    }

    /// Value with the given symbols substituted.
    pub fn eval(&self, values: &impl Fn(GSymbol) -> Option<Rational>) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for (g, c) in &self.coefficients {
            if !c.is_zero() {
                acc += c * values(*g)?;
            }
        }
        Some(acc)
    }
}

impl FormulaSpec {
    /// Short name used on the command line and in reports, e.g. `52`.
    pub fn label(&self) -> String {
        self.id.compact()
    }

    pub fn symbols(&self) -> Vec<GSymbol> {
        let mut out: Vec<GSymbol> = self.slots().into_iter().map(|(_, g)| g).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every slot that carries a symbol, in reading order.
    pub fn slots(&self) -> Vec<(Slot, GSymbol)> {
        let mut out = Vec::new();
        if let Some(g) = self.cof_factor.symbol {
            out.push((Slot::Cof, g));
        }
        for (i, t) in self.dim_terms.iter().enumerate() {
            if let Some(g) = t.symbol {
                out.push((Slot::Dim(i), g));
            }
        }
        for (i, t) in self.theta_terms.iter().enumerate() {
            if let Some(g) = t.factor.symbol {
                out.push((Slot::Theta(i), g));
            }
        }
        out
    }

    pub fn slot_name(&self, slot: Slot) -> String {
        match slot {
            Slot::Cof => "cof factor".to_string(),
            Slot::Dim(i) => format!("dimension term {}", i + 1),
            Slot::Theta(i) => format!("theta term {}", self.theta_terms[i].name),
        }
    }

    fn slot_factor_mut(&mut self, slot: Slot) -> &mut SymbolicFactor {
        match slot {
            Slot::Cof => &mut self.cof_factor,
            Slot::Dim(i) => &mut self.dim_terms[i],
            Slot::Theta(i) => &mut self.theta_terms[i].factor,
        }
    }

    /// Copy with the symbol in `slot` replaced by `sign · symbol`.
    pub fn rebind(&self, slot: Slot, symbol: GSymbol, negate: bool) -> FormulaSpec {
        let mut out = self.clone();
        let f = out.slot_factor_mut(slot);
        f.symbol = Some(symbol);
        if negate {
            f.coefficient = -f.coefficient;
        }
        out
    }

    /// The multiplier of `rep_cof` as a linear form in the symbols.
    pub fn cof_form(&self, rank: u32) -> LinearForm {
        let mut form = LinearForm::default();
        form.add(self.cof_factor.symbol, self.cof_factor.explicit(rank));
        form
    }

    /// The multiplier of the dimension (explicit dimension terms plus the
    /// theta block) as a linear form in the symbols.
    pub fn dim_form(&self, theta: &ThetaPowers, rank: u32) -> LinearForm {
        let mut form = LinearForm::default();
        for t in &self.dim_terms {
            form.add(t.symbol, t.explicit(rank));
        }
        for t in &self.theta_terms {
            form.add(t.factor.symbol, t.factor.explicit(rank) * theta.monomial(&t.degrees));
        }
        form
    }

    /// `Φ(R, N)` as a linear form in the symbol values.
    pub fn phi_form(&self, table: &MultiplicityTable, rank: u32) -> Result<LinearForm, FormulaError> {
        let c = rep_cof(table, &self.id, rank)?;
        let d = Rational::from_integer(rep_dimension(table, rank).into());
        let theta = ThetaPowers::new(table.top(), rank);
        let mut form = LinearForm::default();
        for (g, v) in scaled(&self.cof_form(rank), &c).into_iter().chain(scaled(&self.dim_form(&theta, rank), &d)) {
            form.add(g, v);
        }
        Ok(form)
    }
}

fn scaled(form: &LinearForm, k: &Rational) -> Vec<(Option<GSymbol>, Rational)> {
    std::iter::once((None, &form.constant * k))
        .chain(form.coefficients.iter().map(|(g, c)| (Some(*g), c * k)))
        .collect()
}

/// Anything that gives, at each rank, the two multipliers of an identity
/// `rep_cof · A + dim · B = 0`.
pub trait MultiplicityIdentity: Sync {
    fn id(&self) -> &Partition;

    fn label(&self) -> String;

    /// `(A, B)` for a representation whose highest weight has power sums
    /// `theta` at rank `rank`.
    fn multipliers(&self, theta: &ThetaPowers, rank: u32) -> Result<(Rational, Rational), FormulaError>;
}

/// A transcription bound to calibrated symbol values.
#[derive(Clone, Copy, Debug)]
pub struct CalibratedFormula<'a> {
    pub spec: &'a FormulaSpec,
    pub calibration: &'a Calibration,
}

impl MultiplicityIdentity for CalibratedFormula<'_> {
    fn id(&self) -> &Partition {
        &self.spec.id
    }

    fn label(&self) -> String {
        self.spec.label()
    }

    fn multipliers(&self, theta: &ThetaPowers, rank: u32) -> Result<(Rational, Rational), FormulaError> {
        let values = self.calibration.values_at(&self.spec.symbols(), rank)?;
        let lookup = |g: GSymbol| values.get(&g).cloned();
        let a = self.spec.cof_form(rank).eval(&lookup).expect("values resolved");
        let b = self.spec.dim_form(theta, rank).eval(&lookup).expect("values resolved");
        Ok((a, b))
    }
}

/// `Σ coefficient · f(N) · [g(N)] · Π Θ(d, Λ, N)` over the theta terms.
pub fn theta_block(spec: &FormulaSpec, top: &OrbitLabel, rank: u32, cal: &Calibration) -> Result<Rational, FormulaError> {
    let theta = ThetaPowers::new(top, rank);
    let values = cal.values_at(&spec.symbols(), rank)?;
    let mut acc = Rational::zero();
    for t in &spec.theta_terms {
        let mut v = t.factor.explicit(rank) * theta.monomial(&t.degrees);
        if let Some(g) = t.factor.symbol {
            v *= &values[&g];
        }
        acc += v;
    }
    Ok(acc)
}

/// `Φ` evaluated on a hypothesised table: zero exactly when the table is
/// consistent with the identity at this rank.
pub fn phi_residual(
    identity: &dyn MultiplicityIdentity,
    hypothesis: &MultiplicityTable,
    rank: u32,
) -> Result<Rational, FormulaError> {
    let theta = ThetaPowers::new(hypothesis.top(), rank);
    let (a, b) = identity.multipliers(&theta, rank)?;
    let c = rep_cof(hypothesis, identity.id(), rank)?;
    let d = Rational::from_integer(rep_dimension(hypothesis, rank).into());
    Ok(c * a + d * b)
}

/// Evaluates a calibrated symbol at a rank.
pub(crate) fn eval_symbol(f: &RatFuncN, symbol: GSymbol, rank: u32) -> Result<Rational, FormulaError> {
    f.eval_int(rank as i64).map_err(|_| FormulaError::Pole { symbol, rank })
}

/// Every rank-independent table with a top of height in `heights`, each
/// computed by the Freudenthal oracle.
pub fn oracle_corpus(heights: impl IntoIterator<Item = u32>) -> Vec<MultiplicityTable> {
    use rayon::prelude::*;
    let tops: Vec<Partition> =
        heights.into_iter().filter(|&h| h > 0).flat_map(crate::partitions::enumerate_partitions).collect();
    tops.par_iter().map(crate::freudenthal::stable_table).collect()
}

/// Builtin specs and their calibration on heights 1..4, computed once per
/// test binary.
#[cfg(test)]
pub(crate) fn test_calibration() -> &'static (Vec<FormulaSpec>, Calibration) {
    static CELL: std::sync::OnceLock<(Vec<FormulaSpec>, Calibration)> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let specs = builtin_formulas();
        let cal = calibrate(&specs, &oracle_corpus(1..=4), &(5..=28).collect::<Vec<_>>()).expect("calibration");
        (specs, cal)
    })
}
