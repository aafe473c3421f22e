//! Subcommand implementations. Each returns a [`Report`] or a
//! [`CliError`] whose kind decides the exit code.

use std::io::{Read, Write};
use std::path::Path;

use serde_json::{json, Value};

use anmult::characters::{cof_poly, orbit_character_expansion};
use anmult::exact::{format_rational, reconstruct_auto, Rational};
use anmult::formulas::{
    builtin_formulas, calibrate, default_derive_ranks, derive_formula, oracle_corpus, phi_residual,
    solve_multiplicities, Calibration, DerivedFormula, FormulaSpec, FormulaStatus, MultiplicityIdentity,
    SolveOptions,
};
use anmult::freudenthal::{freudenthal, stable_table};
use anmult::partitions::{grade, sub_dominants, Partition};
use anmult::weights::{
    orbit_dimension, rep_dimension, theta_vector, weyl_dimension, OrbitLabel, TableDocument, ThetaPowers,
    WeightSpec,
};

use crate::output::{Report, Table};
use crate::{Cli, CliError, Command};

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Dim { weight, rank } => dim(&parse_weight(weight)?, *rank),
        Command::Orbits { weight, rank } => orbits(&parse_weight(weight)?, *rank),
        Command::Theta { weight, rank, degrees, closed_form } => {
            theta(&parse_weight(weight)?, *rank, &parse_ranks(degrees)?, *closed_form)
        }
        Command::Cof { weight, degree, index, rank, physical } => {
            let index = index.as_deref().map(parse_partition).transpose()?;
            cof(&parse_weight(weight)?, *degree, index.as_ref(), *rank, *physical)
        }
        Command::Freudenthal { weight, rank } => freudenthal_table(&parse_weight(weight)?, *rank),
        Command::Calibrate { corpus_height, ranks } => {
            let ranks = match ranks {
                Some(r) => parse_ranks(r)?,
                None => (corpus_height + 1..=corpus_height + 24).collect(),
            };
            calibrate_cache(&cli.cache, *corpus_height, &ranks)
        }
        Command::Solve { weight, formulas, ranks, cross_check, corpus_height } => {
            let top = parse_weight(weight)?.orbit_label();
            let set = FormulaSet::load(&cli.cache, formulas.as_deref(), *corpus_height)?;
            let ranks = ranks.as_deref().map(parse_ranks).transpose()?;
            solve(&top, &set, ranks, *cross_check)
        }
        Command::Derive { index, corpus_height, ranks } => {
            let id = parse_partition(index)?;
            let ranks = ranks.as_deref().map(parse_ranks).transpose()?;
            derive(&id, *corpus_height, ranks)
        }
        Command::Verify { file, formulas, ranks, corpus_height } => {
            let table = read_table(file)?;
            let set = FormulaSet::load(&cli.cache, formulas.as_deref(), *corpus_height)?;
            let ranks = ranks.as_deref().map(parse_ranks).transpose()?;
            verify(table, &set, ranks)
        }
    }
}

fn parse_weight(s: &str) -> Result<WeightSpec, CliError> {
    Ok(s.parse()?)
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    Ok(s.parse()?)
}

/// `a..b` and `a..=b` (both inclusive), or a comma list.
fn parse_ranks(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Domain(format!("malformed range {s:?}: expected a..b or a comma list"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let ranks: Vec<u32> = match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?);
            (lo..=hi).collect()
        }
        None => s.split(',').map(num).collect::<Result<_, _>>()?,
    };
    if ranks.is_empty() {
        return Err(bad());
    }
    Ok(ranks)
}

/// The rank for a weight: `--rank`, else the Dynkin input's own rank, else
/// `default`.
fn resolve_rank(spec: &WeightSpec, rank: Option<u32>, default: impl FnOnce(&OrbitLabel) -> u32) -> u32 {
    rank.or(spec.explicit_rank()).unwrap_or_else(|| default(&spec.orbit_label()))
}

/// Smallest rank at which every sub-dominant orbit of `q` is nonempty.
fn stable_rank(q: &OrbitLabel) -> u32 {
    q.weight().saturating_sub(1).max(q.len() as u32).max(1)
}

fn minimal_rank(q: &OrbitLabel) -> u32 {
    (q.len() as u32).max(1)
}

fn labels_of(d: &anmult::weights::DynkinLabels) -> Vec<u32> {
    d.labels().to_vec()
}

fn dim(spec: &WeightSpec, rank: Option<u32>) -> Result<Report, CliError> {
    let d = spec.dynkin(Some(resolve_rank(spec, rank, minimal_rank)))?;
    let value = weyl_dimension(&d);
    let json = json!({
        "top": spec.orbit_label(),
        "rank": d.rank(),
        "dynkin": labels_of(&d),
        "dimension": value.to_string(),
    });
    Ok(Report::new(json, Table::scalar(value)))
}

fn orbits(spec: &WeightSpec, rank: Option<u32>) -> Result<Report, CliError> {
    let q = spec.orbit_label();
    let n = resolve_rank(spec, rank, stable_rank);
    spec.dynkin(Some(n))?;
    let mut table = Table::new(&["label", "grade", "parts", "orbit_dim"]);
    let rows: Vec<Value> = sub_dominants(&q)
        .into_iter()
        .map(|l| {
            let size = orbit_dimension(&l, n);
            table.row(vec![l.to_string(), grade(&l).to_string(), l.len().to_string(), size.to_string()]);
            json!({"label": l, "grade": grade(&l).to_string(), "parts": l.len(), "orbit_dimension": size.to_string()})
        })
        .collect();
    table.note(format!("rank {n}; empty orbits have dimension 0"));
    Ok(Report::new(json!({"top": q, "rank": n, "orbits": rows}), table))
}

fn theta(spec: &WeightSpec, rank: Option<u32>, degrees: &[u32], closed_form: bool) -> Result<Report, CliError> {
    let q = spec.orbit_label();
    if closed_form {
        let mut table = Table::new(&["s", "theta(s)"]);
        let mut forms = serde_json::Map::new();
        for &s in degrees {
            let lo = minimal_rank(&q) as i64;
            let points: Vec<(i64, Rational)> =
                (lo..lo + 2 * s as i64 + 12).map(|n| (n, ThetaPowers::new(&q, n as u32).get(s))).collect();
            let f = reconstruct_auto(&points, 3)?;
            table.row(vec![s.to_string(), f.to_string()]);
            forms.insert(s.to_string(), Value::String(f.to_string()));
        }
        table.note("as functions of the rank N");
        return Ok(Report::new(json!({"top": q, "theta": forms}), table));
    }
    let d = spec.dynkin(Some(resolve_rank(spec, rank, minimal_rank)))?;
    let v = theta_vector(&d);
    let mut table = Table::new(&["s", "theta(s)"]);
    let mut values = serde_json::Map::new();
    for &s in degrees {
        let t = format_rational(&v.power_sum(s));
        table.row(vec![s.to_string(), t.clone()]);
        values.insert(s.to_string(), Value::String(t));
    }
    let coords: Vec<String> = v.coords().iter().map(format_rational).collect();
    table.note(format!("rank {}; theta = ({})", d.rank(), coords.join(", ")));
    Ok(Report::new(json!({"top": q, "rank": d.rank(), "coordinates": coords, "theta": values}), table))
}

fn cof(
    spec: &WeightSpec,
    degree: Option<u32>,
    index: Option<&Partition>,
    rank: Option<u32>,
    physical: bool,
) -> Result<Report, CliError> {
    let q = spec.orbit_label();
    let rank = rank.or(spec.explicit_rank());
    let terms: Vec<(Partition, anmult::exact::PolyN)> = match index {
        Some(idx) => {
            if let Some(s) = degree.filter(|&s| s != idx.weight()) {
                return Err(CliError::Domain(format!("index {idx} has degree {}, not {s}", idx.weight())));
            }
            vec![(idx.clone(), cof_poly(&q, idx)?)]
        }
        None => {
            let s = degree.expect("clap requires --degree without --index");
            let e = orbit_character_expansion(&q, s);
            let all = if physical { e.physical() } else { e.terms().clone() };
            all.into_iter().collect()
        }
    };
    let mut table = Table::new(&["index", if rank.is_some() { "value" } else { "polynomial in N" }]);
    let mut coeffs = serde_json::Map::new();
    for (idx, p) in terms {
        let text = match rank {
            Some(n) => format_rational(&p.eval_int(n as i64)),
            None => p.to_string(),
        };
        table.row(vec![idx.to_string(), text.clone()]);
        coeffs.insert(idx.to_string(), Value::String(text));
    }
    if let Some(n) = rank {
        table.note(format!("rank {n}"));
    }
    Ok(Report::new(json!({"top": q, "rank": rank, "coefficients": coeffs}), table))
}

fn table_report(doc: TableDocument, dimension: Option<String>) -> Result<Report, CliError> {
    let mut table = Table::new(&["label", "m"]);
    for (l, m) in &doc.multiplicities {
        table.row(vec![l.to_string(), m.to_string()]);
    }
    let mut json = serde_json::to_value(&doc)?;
    if let Some(d) = dimension {
        table.note(format!("rank {}; dimension {d}", doc.rank));
        json["dimension"] = Value::String(d);
    }
    Ok(Report::new(json, table))
}

fn freudenthal_table(spec: &WeightSpec, rank: Option<u32>) -> Result<Report, CliError> {
    let q = spec.orbit_label();
    let (t, n) = match rank.or(spec.explicit_rank()) {
        Some(n) => (freudenthal(&spec.dynkin(Some(n))?)?, n),
        None => (stable_table(&q), stable_rank(&q)),
    };
    table_report(t.to_document(n), Some(rep_dimension(&t, n).to_string()))
}

fn write_atomically(path: &Path, text: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Domain(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn calibrate_cache(cache: &Path, height: u32, ranks: &[u32]) -> Result<Report, CliError> {
    let specs = builtin_formulas();
    let cal = calibrate(&specs, &oracle_corpus(1..=height), ranks)?;
    write_atomically(cache, &cal.to_json())?;
    let mut table = Table::new(&["item", "value"]);
    for (g, f) in &cal.symbols {
        table.row(vec![g.to_string(), f.to_string()]);
    }
    for (label, status) in &cal.status {
        let verdict = match status {
            FormulaStatus::Valid => "valid".to_string(),
            FormulaStatus::Suspect(d) => format!("suspect: {}; hints: {}", d.reason, d.hints.join("; ")),
        };
        table.row(vec![format!("({label})"), verdict]);
    }
    table.note(format!("written to {}", cache.display()));
    let mut json = serde_json::to_value(&cal)?;
    json["cache"] = Value::String(cache.display().to_string());
    Ok(Report::new(json, table))
}

/// Formulas named on the command line (`7,52,d8`), or every valid
/// transcription from the calibration cache.
struct FormulaSet {
    specs: Vec<FormulaSpec>,
    calibration: Option<Calibration>,
    /// Labels of the transcriptions to use.
    chosen: Vec<String>,
    derived: Vec<DerivedFormula>,
}

impl FormulaSet {
    fn load(cache: &Path, requested: Option<&str>, corpus_height: u32) -> Result<Self, CliError> {
        let specs = builtin_formulas();
        let names: Vec<&str> = requested.map(|r| r.split(',').map(str::trim).collect()).unwrap_or_default();
        let (derived_ids, chosen): (Vec<&str>, Vec<&str>) = names.iter().partition(|n| n.starts_with('d'));
        let needs_cache = requested.is_none() || !chosen.is_empty();
        let calibration = needs_cache.then(|| load_calibration(cache)).transpose()?;
        let chosen: Vec<String> = match (&calibration, requested) {
            (Some(cal), None) => cal.status.iter().filter(|(_, s)| s.is_valid()).map(|(l, _)| l.clone()).collect(),
            (Some(cal), Some(_)) => chosen
                .iter()
                .map(|&name| match cal.status.get(name) {
                    Some(FormulaStatus::Valid) => Ok(name.to_string()),
                    Some(FormulaStatus::Suspect(_)) => Err(CliError::Domain(format!(
                        "formula ({name}) is suspect in the calibration; see `anmult calibrate` for details"
                    ))),
                    None => Err(CliError::Domain(format!("unknown formula {name:?}"))),
                })
                .collect::<Result<_, _>>()?,
            (None, _) => Vec::new(),
        };
        let derived = if derived_ids.is_empty() {
            Vec::new()
        } else {
            let corpus = oracle_corpus(1..=corpus_height);
            derived_ids
                .iter()
                .map(|name| {
                    let id = Partition::from_compact(&name[1..])?;
                    Ok(derive_formula(&id, &corpus, &default_derive_ranks(&id, &corpus))?)
                })
                .collect::<Result<_, CliError>>()?
        };
        Ok(FormulaSet { specs, calibration, chosen, derived })
    }

    fn identities(&self) -> Vec<Box<dyn MultiplicityIdentity + '_>> {
        let mut out: Vec<Box<dyn MultiplicityIdentity + '_>> = Vec::new();
        if let Some(cal) = &self.calibration {
            for spec in self.specs.iter().filter(|s| self.chosen.contains(&s.label())) {
                out.push(Box::new(cal.bind(spec)));
            }
        }
        for d in &self.derived {
            out.push(Box::new(d.clone()));
        }
        out
    }
}

fn load_calibration(cache: &Path) -> Result<Calibration, CliError> {
    let text = std::fs::read_to_string(cache).map_err(|e| {
        CliError::Domain(format!("cannot read calibration cache {}: {e}; run `anmult calibrate` first", cache.display()))
    })?;
    Ok(Calibration::from_json(&text)?)
}

fn solve(top: &OrbitLabel, set: &FormulaSet, ranks: Option<Vec<u32>>, cross_check: bool) -> Result<Report, CliError> {
    let owned = set.identities();
    let identities: Vec<&dyn MultiplicityIdentity> = owned.iter().map(|b| b.as_ref()).collect();
    let report = solve_multiplicities(top, &identities, &[], &SolveOptions { ranks, cross_check })?;
    let mut table = Table::new(&["label", "m"]);
    for (l, m) in &report.table.multiplicities {
        table.row(vec![l.to_string(), m.to_string()]);
    }
    table.note(format!("formulas {}; ranks {:?}", report.formulas.join(","), report.ranks));
    if let Some(agree) = report.oracle_agreement {
        table.note(format!("freudenthal agreement: {agree}"));
    }
    for w in &report.warnings {
        table.note(format!("warning: {w}"));
    }
    let failure = (report.oracle_agreement == Some(false))
        .then(|| format!("solution for {top} disagrees with the Freudenthal table"));
    Ok(Report::new(serde_json::to_value(&report)?, table).failing(failure))
}

fn derive(id: &Partition, height: u32, ranks: Option<Vec<u32>>) -> Result<Report, CliError> {
    let corpus = oracle_corpus(1..=height);
    let ranks = ranks.unwrap_or_else(|| default_derive_ranks(id, &corpus));
    let d = derive_formula(id, &corpus, &ranks)?;
    let mut table = Table::new(&["term", "coefficient"]);
    table.row(vec!["denominator".into(), d.denominator.to_string()]);
    for (q, p) in &d.numerators {
        table.row(vec![format!("theta[{q}]"), p.to_string()]);
    }
    table.note(format!(
        "{}: fitted on {} tables at ranks {}..{}, validated on {} held-out tables",
        d.label(),
        d.fit_tops.len(),
        d.fit_ranks.first().unwrap_or(&0),
        d.fit_ranks.last().unwrap_or(&0),
        d.holdout_tops.len()
    ));
    Ok(Report::new(serde_json::to_value(&d)?, table))
}

/// A table from a file or stdin, either bare or inside a `solve` report.
fn read_table(file: &Path) -> Result<anmult::weights::MultiplicityTable, CliError> {
    let mut text = String::new();
    if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(file)?;
    }
    let mut value: Value = serde_json::from_str(&text)?;
    if let Some(inner) = value.get_mut("table") {
        value = inner.take();
    }
    let doc: TableDocument = serde_json::from_value(value)?;
    Ok(doc.into_table()?)
}

fn verify(t: anmult::weights::MultiplicityTable, set: &FormulaSet, ranks: Option<Vec<u32>>) -> Result<Report, CliError> {
    let sigma = t.top().len() as u32;
    let ranks = ranks.unwrap_or_else(|| (sigma + 1..=sigma + 5).collect());
    if let Some(&n) = ranks.iter().find(|&&n| n <= sigma) {
        return Err(CliError::Domain(format!("rank {n} must exceed {sigma}, the number of parts of {}", t.top())));
    }
    let owned = set.identities();
    if owned.is_empty() {
        return Err(CliError::Domain("no formula selected".into()));
    }
    let mut table = Table::new(&["formula", "rank", "residual"]);
    let mut rows = Vec::new();
    let mut failures = 0;
    for f in &owned {
        for &n in &ranks {
            let r = format_rational(&phi_residual(f.as_ref(), &t, n)?);
            failures += usize::from(r != "0");
            table.row(vec![f.label(), n.to_string(), r.clone()]);
            rows.push(json!({"formula": f.label(), "rank": n, "residual": r}));
        }
    }
    let json = json!({"top": t.top(), "ranks": ranks, "residuals": rows, "valid": failures == 0});
    let failure = (failures > 0).then(|| format!("{failures} nonzero residuals"));
    Ok(Report::new(json, table).failing(failure))
}
