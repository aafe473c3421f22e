//! Calibration of the unnamed factors g, g4, g5, g6, g22 from oracle data,
//! and validation of identities against oracle tables.
//!
//! At a fixed rank every `Φ = 0` equation on a known table is affine in the
//! symbol values, so each formula with a single unknown symbol yields that
//! symbol's value at every rank. Formulas sharing a symbol vote; the
//! majority value is reconstructed as a rational function of `N`, and the
//! dissenters are marked suspect together with a localization of where they
//! go wrong.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::derive::fit_ansatz_at;
use super::{
    eval_symbol, phi_residual, CalibratedFormula, FormulaError, FormulaSpec, GSymbol, LinearForm,
    MultiplicityIdentity, Slot,
};
use crate::exact::{format_rational, parse_rational, reconstruct_auto, PolyN, RatFuncN, Rational};
use crate::partitions::Partition;
use crate::weights::MultiplicityTable;

/// Spare samples a reconstructed symbol must predict exactly.
const RECONSTRUCTION_CHECKS: usize = 3;

/// A `(table, rank)` pair where an identity failed, with its residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailurePoint {
    pub top: Partition,
    pub rank: u32,
    pub residual: String,
}

/// Transcribed versus fitted coefficient of one Θ product in the
/// normalized identity `cof/dim = Σ c_Q Θ_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermComparison {
    /// Θ degrees of the product; empty for the constant term.
    pub monomial: Partition,
    pub transcribed: String,
    pub fitted: String,
    /// `transcribed / fitted`, when the fitted value is nonzero.
    pub ratio: Option<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspectDetails {
    pub reason: String,
    pub first_failure: Option<FailurePoint>,
    /// Symbol substitutions under which the formula validates.
    pub hints: Vec<String>,
    pub comparison_rank: Option<u32>,
    pub term_comparison: Vec<TermComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaStatus {
    Valid,
    Suspect(Box<SuspectDetails>),
}

impl FormulaStatus {
    pub fn is_valid(&self) -> bool {
        matches!(self, FormulaStatus::Valid)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub corpus: String,
    pub corpus_tops: Vec<Partition>,
    pub ranks: Vec<u32>,
    pub notes: Vec<String>,
}

/// Calibrated symbol values and the verdict on every formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CalibrationDocument", try_from = "CalibrationDocument")]
pub struct Calibration {
    pub symbols: BTreeMap<GSymbol, RatFuncN>,
    /// Keyed by formula label, in the order the formulas were given.
    pub status: IndexMap<String, FormulaStatus>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RatFuncDocument {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CalibrationDocument {
    symbols: BTreeMap<GSymbol, RatFuncDocument>,
    status: IndexMap<String, FormulaStatus>,
    provenance: Provenance,
}

impl From<Calibration> for CalibrationDocument {
    fn from(c: Calibration) -> Self {
        CalibrationDocument {
            symbols: c
                .symbols
                .iter()
                .map(|(g, f)| (*g, RatFuncDocument { num: f.num().to_strings(), den: f.den().to_strings() }))
                .collect(),
            status: c.status,
            provenance: c.provenance,
        }
    }
}

impl TryFrom<CalibrationDocument> for Calibration {
    type Error = FormulaError;

    fn try_from(d: CalibrationDocument) -> Result<Self, Self::Error> {
        let mut symbols = BTreeMap::new();
        for (g, f) in d.symbols {
            let num = PolyN::from_strings(&f.num)?;
            let den = PolyN::from_strings(&f.den)?;
            symbols.insert(g, RatFuncN::new(num, den)?);
        }
        Ok(Calibration { symbols, status: d.status, provenance: d.provenance })
    }
}

impl Calibration {
    /// Values of the requested symbols at one rank.
    pub fn values_at(&self, symbols: &[GSymbol], rank: u32) -> Result<BTreeMap<GSymbol, Rational>, FormulaError> {
        symbols
            .iter()
            .map(|&g| {
                let f = self.symbols.get(&g).ok_or(FormulaError::Unresolved(g))?;
                Ok((g, eval_symbol(f, g, rank)?))
            })
            .collect()
    }

    pub fn is_valid(&self, label: &str) -> bool {
        self.status.get(label).is_some_and(FormulaStatus::is_valid)
    }

    /// The specs marked valid, bound to this calibration.
    pub fn valid_formulas<'a>(&'a self, specs: &'a [FormulaSpec]) -> Vec<CalibratedFormula<'a>> {
        specs
            .iter()
            .filter(|s| self.is_valid(&s.label()))
            .map(|spec| CalibratedFormula { spec, calibration: self })
            .collect()
    }

    pub fn bind<'a>(&'a self, spec: &'a FormulaSpec) -> CalibratedFormula<'a> {
        CalibratedFormula { spec, calibration: self }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("calibration serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Per-rank values of one symbol; `None` where the data leaves it free.
type Samples = Vec<Option<Rational>>;

/// The Φ forms of one formula over the corpus: `[table][rank]`.
struct FormGrid {
    forms: Vec<Vec<LinearForm>>,
}

impl FormGrid {
    fn build(spec: &FormulaSpec, corpus: &[MultiplicityTable], ranks: &[u32]) -> Result<Self, FormulaError> {
        let forms = corpus
            .par_iter()
            .map(|t| ranks.iter().map(|&n| spec.phi_form(t, n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FormGrid { forms })
    }

    /// Solves every rank for `target`, with the other symbols taken from
    /// `known`. Errors with the first equation that contradicts the rest.
    fn solve_symbol(
        &self,
        target: GSymbol,
        known: &BTreeMap<GSymbol, Samples>,
        corpus: &[MultiplicityTable],
        ranks: &[u32],
    ) -> Result<Samples, FailurePoint> {
        let mut out = Vec::with_capacity(ranks.len());
        for (k, &n) in ranks.iter().enumerate() {
            let mut value: Option<Rational> = None;
            let mut pending: Vec<(usize, Rational, Rational)> = Vec::new();
            for (i, row) in self.forms.iter().enumerate() {
                let form = &row[k];
                let a = form.coefficients.get(&target).cloned().unwrap_or_else(Rational::zero);
                let mut rest = form.clone();
                rest.coefficients.remove(&target);
                let Some(b) = rest.eval(&|g| known.get(&g).and_then(|v| v[k].clone())) else { continue };
                if value.is_none() && !a.is_zero() {
                    value = Some(-&b / &a);
                }
                pending.push((i, a, b));
            }
            for (i, a, b) in pending {
                let residual = match &value {
                    Some(v) => a * v + b,
                    None => b,
                };
                if !residual.is_zero() {
                    return Err(FailurePoint {
                        top: corpus[i].top().clone(),
                        rank: n,
                        residual: format_rational(&residual),
                    });
                }
            }
            out.push(value);
        }
        Ok(out)
    }

    /// First nonzero residual with the symbols substituted, if any.
    fn first_failure(
        &self,
        values: &BTreeMap<GSymbol, Samples>,
        corpus: &[MultiplicityTable],
        ranks: &[u32],
    ) -> Option<FailurePoint> {
        for (k, &n) in ranks.iter().enumerate() {
            for (i, row) in self.forms.iter().enumerate() {
                if let Some(r) = row[k].eval(&|g| values.get(&g).and_then(|v| v[k].clone())) {
                    if !r.is_zero() {
                        return Some(FailurePoint {
                            top: corpus[i].top().clone(),
                            rank: n,
                            residual: format_rational(&r),
                        });
                    }
                }
            }
        }
        None
    }
}

fn compatible(a: &Samples, b: &Samples) -> bool {
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    })
}

fn merge(a: &mut Samples, b: &Samples) {
    for (x, y) in a.iter_mut().zip(b) {
        if x.is_none() {
            *x = y.clone();
        }
    }
}

fn reconstruct(symbol: GSymbol, samples: &Samples, ranks: &[u32]) -> Result<RatFuncN, FormulaError> {
    let points: Vec<(i64, Rational)> =
        ranks.iter().zip(samples).filter_map(|(&n, v)| v.clone().map(|v| (n as i64, v))).collect();
    if points.is_empty() {
        return Err(FormulaError::Calibration { symbol, reason: "no rank determines it".to_string() });
    }
    reconstruct_auto(&points, RECONSTRUCTION_CHECKS)
        .map_err(|e| FormulaError::Calibration { symbol, reason: format!("{e}; add more ranks") })
}

fn sample(f: &RatFuncN, ranks: &[u32]) -> Samples {
    ranks.iter().map(|&n| f.eval_int(n as i64).ok()).collect()
}

/// Calibrates the symbols from `corpus` (oracle tables) over `ranks`, and
/// classifies every spec as valid or suspect.
pub fn calibrate(
    specs: &[FormulaSpec],
    corpus: &[MultiplicityTable],
    ranks: &[u32],
) -> Result<Calibration, FormulaError> {
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
    let grids =
        specs.iter().map(|s| FormGrid::build(s, corpus, ranks)).collect::<Result<Vec<_>, FormulaError>>()?;

    let mut status: Vec<Option<FormulaStatus>> = vec![None; specs.len()];
    let mut reasons: Vec<Option<(String, Option<FailurePoint>)>> = vec![None; specs.len()];
    let mut samples: BTreeMap<GSymbol, Samples> = BTreeMap::new();
    let mut symbols: BTreeMap<GSymbol, RatFuncN> = BTreeMap::new();

    // Single-symbol formulas vote on their symbol.
    for g in GSymbol::ALL {
        let voters: Vec<usize> = (0..specs.len()).filter(|&i| specs[i].symbols() == [g]).collect();
        let mut clusters: Vec<(Samples, Vec<usize>)> = Vec::new();
        for &i in &voters {
            match grids[i].solve_symbol(g, &samples, corpus, ranks) {
                Err(fp) => {
                    reasons[i] = Some((format!("equations for {g} contradict each other"), Some(fp)));
                }
                Ok(v) => match clusters.iter_mut().find(|(c, _)| compatible(c, &v)) {
                    Some((c, members)) => {
                        merge(c, &v);
                        members.push(i);
                    }
                    None => clusters.push((v, vec![i])),
                },
            }
        }
        // Largest cluster wins; ties go to the earlier formula.
        let Some(best) = (0..clusters.len()).max_by_key(|&c| (clusters[c].1.len(), std::cmp::Reverse(c))) else {
            continue;
        };
        let winners: Vec<String> = clusters[best].1.iter().map(|&i| specs[i].label()).collect();
        for (c, (_, members)) in clusters.iter().enumerate() {
            if c != best {
                for &i in members {
                    reasons[i] = Some((
                        format!("its {g} values disagree with those of formulas {}", winners.join(", ")),
                        None,
                    ));
                }
            }
        }
        let f = reconstruct(g, &clusters[best].0, ranks)?;
        samples.insert(g, sample(&f, ranks));
        symbols.insert(g, f);
    }

    // Remaining formulas: solve a single missing symbol, else just check.
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..specs.len() {
            if reasons[i].is_some() || status[i].is_some() {
                continue;
            }
            let missing: Vec<GSymbol> =
                specs[i].symbols().into_iter().filter(|g| !symbols.contains_key(g)).collect();
            match missing.as_slice() {
                [] => {
                    status[i] = Some(FormulaStatus::Valid);
                }
                [g] => {
                    match grids[i].solve_symbol(*g, &samples, corpus, ranks) {
                        Err(fp) => reasons[i] = Some((format!("equations for {g} contradict each other"), Some(fp))),
                        Ok(v) => {
                            let f = reconstruct(*g, &v, ranks)?;
                            samples.insert(*g, sample(&f, ranks));
                            symbols.insert(*g, f);
                            status[i] = Some(FormulaStatus::Valid);
                        }
                    }
                    progress = true;
                }
                _ => {}
            }
        }
    }

    // Every provisional verdict is confirmed against all residuals.
    let mut final_status = IndexMap::new();
    for (i, spec) in specs.iter().enumerate() {
        let verdict = match (&reasons[i], &status[i]) {
            (Some((reason, fp)), _) => Some((reason.clone(), fp.clone())),
            (None, Some(_)) => grids[i]
                .first_failure(&samples, corpus, ranks)
                .map(|fp| ("nonzero residual with the calibrated symbols".to_string(), Some(fp))),
            (None, None) => {
                let missing: Vec<String> = spec
                    .symbols()
                    .into_iter()
                    .filter(|g| !symbols.contains_key(g))
                    .map(|g| g.to_string())
                    .collect();
                Some((format!("symbols {} could not be determined", missing.join(", ")), None))
            }
        };
        let st = match verdict {
            None => FormulaStatus::Valid,
            Some((reason, first_failure)) => {
                let first_failure = first_failure.or_else(|| grids[i].first_failure(&samples, corpus, ranks));
                let hints = rebinding_hints(spec, &symbols, &samples, corpus, ranks)?;
                let comparison_rank = *ranks.iter().max().expect("ranks nonempty");
                let term_comparison = compare_terms(spec, &symbols, corpus, comparison_rank);
                FormulaStatus::Suspect(Box::new(SuspectDetails {
                    reason,
                    first_failure,
                    hints,
                    comparison_rank: term_comparison.as_ref().map(|_| comparison_rank),
                    term_comparison: term_comparison.unwrap_or_default(),
                }))
            }
        };
        final_status.insert(spec.label(), st);
    }

    let heights: BTreeSet<u32> = corpus.iter().map(|t| t.top().weight()).collect();
    let provenance = Provenance {
        corpus: format!(
            "Freudenthal tables for {} tops of heights {}",
            corpus.len(),
            heights.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
        ),
        corpus_tops: corpus.iter().map(|t| t.top().clone()).collect(),
        ranks: ranks.to_vec(),
        notes: vec![
            "identities are checked at every rank above the corpus label lengths, including ranks where some \
             sub-orbits are empty; cof values there use the formal polynomial continuation"
                .to_string(),
        ],
    };
    Ok(Calibration { symbols, status: final_status, provenance })
}

/// Substitutions `symbol → ±other` (one slot at a time, then every slot of
/// a symbol at once) under which the formula's residuals all vanish.
fn rebinding_hints(
    spec: &FormulaSpec,
    symbols: &BTreeMap<GSymbol, RatFuncN>,
    samples: &BTreeMap<GSymbol, Samples>,
    corpus: &[MultiplicityTable],
    ranks: &[u32],
) -> Result<Vec<String>, FormulaError> {
    let slots = spec.slots();
    let mut candidates: Vec<(String, FormulaSpec)> = Vec::new();
    let sign = |neg: bool| if neg { "−" } else { "" };
    for (slot, from) in &slots {
        for &to in symbols.keys() {
            for negate in [false, true] {
                if to == *from && !negate {
                    continue;
                }
                candidates.push((
                    format!("{}: {from} behaves as {}{to}", spec.slot_name(*slot), sign(negate)),
                    spec.rebind(*slot, to, negate),
                ));
            }
        }
    }
    let distinct: BTreeSet<GSymbol> = slots.iter().map(|(_, g)| *g).collect();
    for from in distinct {
        let mine: Vec<Slot> = slots.iter().filter(|(_, g)| *g == from).map(|(s, _)| *s).collect();
        if mine.len() < 2 {
            continue;
        }
        for &to in symbols.keys() {
            for negate in [false, true] {
                if to == from && !negate {
                    continue;
                }
                let rebound = mine.iter().fold(spec.clone(), |acc, &s| acc.rebind(s, to, negate));
                candidates.push((format!("every {from} slot behaves as {}{to}", sign(negate)), rebound));
            }
        }
    }
    let found: Vec<Option<String>> = candidates
        .par_iter()
        .map(|(text, candidate)| {
            if !candidate.symbols().iter().all(|g| symbols.contains_key(g)) {
                return Ok(None);
            }
            let grid = FormGrid::build(candidate, corpus, ranks)?;
            Ok(grid.first_failure(samples, corpus, ranks).is_none().then(|| text.clone()))
        })
        .collect::<Result<_, FormulaError>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The transcription's implied `c_Q` at one rank next to a fresh fit of the
/// same identity shape on the corpus. `None` when either side is
/// unavailable at that rank.
fn compare_terms(
    spec: &FormulaSpec,
    symbols: &BTreeMap<GSymbol, RatFuncN>,
    corpus: &[MultiplicityTable],
    rank: u32,
) -> Option<Vec<TermComparison>> {
    let fitted = fit_ansatz_at(&spec.id, corpus, rank).ok()?;
    let lookup = |g: GSymbol| symbols.get(&g).and_then(|f| f.eval_int(rank as i64).ok());
    let a = spec.cof_form(rank).eval(&lookup)?;
    if a.is_zero() {
        return None;
    }
    let mut implied: BTreeMap<Partition, Rational> = BTreeMap::new();
    for t in &spec.dim_terms {
        let mut v = t.poly.eval_int(rank as i64) * Rational::from_integer(t.coefficient.into());
        if let Some(g) = t.symbol {
            v *= lookup(g)?;
        }
        *implied.entry(Partition::empty()).or_insert_with(Rational::zero) -= v / &a;
    }
    for t in &spec.theta_terms {
        let mut v = t.factor.poly.eval_int(rank as i64) * Rational::from_integer(t.factor.coefficient.into());
        if let Some(g) = t.factor.symbol {
            v *= lookup(g)?;
        }
        *implied.entry(t.degrees.clone()).or_insert_with(Rational::zero) -= v / &a;
    }
    let keys: BTreeSet<Partition> = implied.keys().chain(fitted.keys()).cloned().collect();
    Some(
        keys.into_iter()
            .map(|q| {
                let tr = implied.get(&q).cloned().unwrap_or_else(Rational::zero);
                let fi = fitted.get(&q).cloned().unwrap_or_else(Rational::zero);
                TermComparison {
                    monomial: q,
                    transcribed: format_rational(&tr),
                    fitted: format_rational(&fi),
                    ratio: (!fi.is_zero()).then(|| format_rational(&(&tr / &fi))),
                    agrees: tr == fi,
                }
            })
            .collect(),
    )
}

/// Outcome of checking one identity on oracle tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub formula: String,
    /// Number of `(table, rank)` pairs checked.
    pub checked: usize,
    /// `None` when nothing could be checked.
    pub valid: Option<bool>,
    pub first_failure: Option<FailurePoint>,
    pub residuals: Vec<FailurePoint>,
}

/// Residual of `identity` on every table at every rank above the table's
/// label length.
pub fn validate_formula(
    identity: &dyn MultiplicityIdentity,
    corpus: &[MultiplicityTable],
    ranks: &[u32],
) -> Result<ValidationReport, FormulaError> {
    let pairs: Vec<(&MultiplicityTable, u32)> = corpus
        .iter()
        .flat_map(|t| ranks.iter().filter(|&&n| n as usize > t.top().len()).map(move |&n| (t, n)))
        .collect();
    let residuals = pairs
        .par_iter()
        .map(|&(t, n)| {
            Ok(FailurePoint { top: t.top().clone(), rank: n, residual: format_rational(&phi_residual(identity, t, n)?) })
        })
        .collect::<Result<Vec<_>, FormulaError>>()?;
    let first_failure = residuals.iter().find(|r| r.residual != "0").cloned();
    Ok(ValidationReport {
        formula: identity.label(),
        checked: residuals.len(),
        valid: (!residuals.is_empty()).then_some(first_failure.is_none()),
        first_failure,
        residuals,
    })
}

impl ValidationReport {
    /// Parses a residual back to a rational (residuals are stored as text).
    pub fn residual_value(entry: &FailurePoint) -> Rational {
        parse_rational(&entry.residual).expect("residuals are formatted rationals")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::formulas::{oracle_corpus, test_calibration};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// `(N+a)!/(N−b)!` as a polynomial.
    fn factorial_ratio(a: i64, b: i64) -> RatFuncN {
        RatFuncN::from_poly(PolyN::product(&(-b + 1..=a).map(PolyN::linear).collect::<Vec<_>>()))
    }

    fn suspect(cal: &Calibration, label: &str) -> SuspectDetails {
        match &cal.status[label] {
            FormulaStatus::Suspect(d) => (**d).clone(),
            FormulaStatus::Valid => panic!("{label} should be suspect"),
        }
    }

    #[test]
    fn symbols_are_falling_factorials() {
        let (_, cal) = test_calibration();
        assert_eq!(cal.symbols[&GSymbol::G], factorial_ratio(7, 6));
        assert_eq!(cal.symbols[&GSymbol::G6], factorial_ratio(6, 5));
        assert_eq!(cal.symbols[&GSymbol::G5], factorial_ratio(5, 4));
        assert_eq!(cal.symbols[&GSymbol::G4], factorial_ratio(4, 3));
        let g22 = &cal.symbols[&GSymbol::G22];
        assert_eq!(g22.eval_int(7).unwrap(), rat(542_203_200));
        assert!(g22.is_polynomial());
    }

    #[test]
    fn classification() {
        let (specs, cal) = test_calibration();
        let labels: Vec<&str> = cal.status.keys().map(String::as_str).collect();
        assert_eq!(labels, specs.iter().map(|s| s.label()).collect::<Vec<_>>());
        let valid: Vec<&str> = labels.iter().copied().filter(|l| cal.is_valid(l)).collect();
        assert_eq!(valid, ["7", "52", "43", "322", "42", "33", "5", "32", "4", "22"]);
        assert_eq!(cal.valid_formulas(specs).len(), 10);
    }

    #[test]
    fn suspects_are_localized() {
        let (_, cal) = test_calibration();
        let six = suspect(cal, "6");
        assert!(six.first_failure.is_some());
        assert_eq!(six.hints, ["dimension term 1: g behaves as g6"]);
        let disagreeing: Vec<Partition> =
            six.term_comparison.iter().filter(|t| !t.agrees).map(|t| t.monomial.clone()).collect();
        assert_eq!(disagreeing, [Partition::empty()]);

        let two = suspect(cal, "222");
        assert!(two.reason.contains("42, 33"), "{}", two.reason);
        assert_eq!(two.hints, ["every g6 slot behaves as −g6"]);
        for t in &two.term_comparison {
            if t.monomial.is_empty() {
                assert!(t.agrees);
            } else {
                assert_eq!(t.ratio.as_deref(), Some("-1"), "{}", t.monomial);
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let (_, cal) = test_calibration();
        let text = cal.to_json();
        let back = Calibration::from_json(&text).unwrap();
        assert_eq!(&back, cal);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"7\": \"valid\""));
    }

    #[test]
    fn deterministic() {
        let (specs, cal) = test_calibration();
        let again = calibrate(specs, &oracle_corpus(1..=4), &(5..=28).collect::<Vec<_>>()).unwrap();
        assert_eq!(again.to_json(), cal.to_json());
    }

    #[test]
    fn validation_catches_a_perturbed_coefficient() {
        let (specs, cal) = test_calibration();
        let corpus = oracle_corpus(5..=5);
        let ranks: Vec<u32> = (6..=10).collect();
        let four = specs.iter().find(|s| s.label() == "4").unwrap();
        let ok = validate_formula(&cal.bind(four), &corpus, &ranks).unwrap();
        assert_eq!(ok.valid, Some(true));
        assert_eq!(ok.checked, corpus.len() * ranks.len());

        let mut bad = four.clone();
        bad.theta_terms[0].factor.coefficient += 1;
        let report = validate_formula(&cal.bind(&bad), &corpus, &ranks).unwrap();
        assert_eq!(report.valid, Some(false));
        let first = report.first_failure.unwrap();
        assert_ne!(ValidationReport::residual_value(&first), rat(0));

        let empty = validate_formula(&cal.bind(four), &[], &ranks).unwrap();
        assert_eq!((empty.valid, empty.checked), (None, 0));
    }

    #[test]
    fn rejects_bad_input() {
        let specs = crate::formulas::builtin_formulas();
        let corpus = oracle_corpus(1..=2);
        assert_eq!(calibrate(&specs, &[], &[5]), Err(FormulaError::EmptyCorpus));
        assert_eq!(calibrate(&specs, &corpus, &[]), Err(FormulaError::NoRanks));
        assert!(matches!(calibrate(&specs, &corpus, &[2, 5]), Err(FormulaError::RankTooSmall { rank: 2, .. })));
        let _ = p("1");
    }
}
