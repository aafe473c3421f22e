//! End-to-end properties of the formula engine against the Freudenthal
//! oracle.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use anmult::exact::Rational;
use anmult::formulas::{
    assemble_system, builtin_formulas, calibrate, default_derive_ranks, derive_formula, oracle_corpus, phi_residual,
    solve_multiplicities, Calibration, DerivedFormula, FormulaError, FormulaSpec, MultiplicityIdentity, SolveOptions,
};
use anmult::freudenthal::stable_table;
use anmult::partitions::{enumerate_partitions, sub_dominants, Partition};
use anmult::weights::MultiplicityTable;
use proptest::prelude::*;

fn calibrated() -> &'static (Vec<FormulaSpec>, Calibration) {
    static CELL: OnceLock<(Vec<FormulaSpec>, Calibration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let specs = builtin_formulas();
        let cal = calibrate(&specs, &oracle_corpus(1..=4), &(5..=28).collect::<Vec<_>>()).unwrap();
        (specs, cal)
    })
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn derived(id: &str) -> DerivedFormula {
    let corpus = oracle_corpus(1..=6);
    let id = p(id);
    derive_formula(&id, &corpus, &default_derive_ranks(&id, &corpus)).unwrap()
}

#[test]
fn solver_matches_oracle_on_every_small_top() {
    let (specs, cal) = calibrated();
    let valid = cal.valid_formulas(specs);
    let all: Vec<&dyn MultiplicityIdentity> = valid.iter().map(|f| f as &dyn MultiplicityIdentity).collect();
    for h in 1..=6 {
        for top in enumerate_partitions(h) {
            let opts = SolveOptions { ranks: None, cross_check: true };
            let report = solve_multiplicities(&top, &all, &[], &opts).unwrap();
            assert_eq!(report.oracle_agreement, Some(true), "{top}");
            // A single identity may leave unknowns free, but never yields a
            // wrong table.
            for f in &valid {
                match solve_multiplicities(&top, &[f], &[], &opts) {
                    Ok(r) => assert_eq!(r.oracle_agreement, Some(true), "{top} with {}", f.label()),
                    Err(FormulaError::Underdetermined { .. }) => {}
                    Err(e) => panic!("{top} with {}: {e}", f.label()),
                }
            }
        }
    }
}

#[test]
fn valid_formulas_vanish_on_oracle_tables() {
    let (specs, cal) = calibrated();
    for f in cal.valid_formulas(specs) {
        for t in oracle_corpus(1..=6) {
            let sigma = t.top().len() as u32;
            for n in [sigma + 1, sigma + 3, 31] {
                assert_eq!(phi_residual(&f, &t, n).unwrap(), Rational::from_integer(0.into()), "{} {} N={n}", f.label(), t.top());
            }
        }
    }
}

/// Two equations `row · m = rhs` with the same solution set.
fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

#[test]
fn derived_and_transcribed_formulas_have_the_same_vanishing_locus() {
    let (specs, cal) = calibrated();
    for (id, label) in [("4", "4"), ("2,2", "22"), ("5", "5"), ("4,2", "42"), ("7", "7")] {
        let d = derived(id);
        let spec = specs.iter().find(|s| s.label() == label).unwrap();
        let t = cal.bind(spec);
        for h in 2..=6 {
            for top in enumerate_partitions(h) {
                let sigma = top.len() as u32;
                let ranks: Vec<u32> = (sigma + 1..=sigma + 6).collect();
                let sd = assemble_system(&top, &[&d], &ranks).unwrap();
                let st = assemble_system(&top, &[&t], &ranks).unwrap();
                for r in 0..sd.rows.len() {
                    let row = |s: &anmult::formulas::AssembledSystem| {
                        let mut v = s.matrix.row(r).to_vec();
                        v.push(s.rhs[r].clone());
                        v
                    };
                    assert!(proportional(&row(&sd), &row(&st)), "{top} at N={}: d{id} vs ({label})", ranks[r]);
                }
                let opts = SolveOptions::default();
                match (solve_multiplicities(&top, &[&d], &[], &opts), solve_multiplicities(&top, &[&t], &[], &opts)) {
                    (Ok(a), Ok(b)) => assert_eq!(a.multiplicities(), b.multiplicities(), "{top}"),
                    (Err(a), Err(b)) => assert_eq!(std::mem::discriminant(&a), std::mem::discriminant(&b), "{top}"),
                    (a, b) => panic!("{top}: d{id} {:?} vs ({label}) {:?}", a.map(|r| r.table), b.map(|r| r.table)),
                }
            }
        }
    }
}

#[test]
fn derived_json_round_trip() {
    let d = derived("3,2");
    let text = d.to_json();
    let back: DerivedFormula = serde_json::from_str(&text).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.to_json(), text);
    assert_eq!(back.label(), "d32");
}

/// A table with the given top and arbitrary multiplicities below it.
fn table_with(top: &Partition, values: &[u64]) -> MultiplicityTable {
    let mut entries = BTreeMap::from([(top.clone(), 1)]);
    for (label, &m) in sub_dominants(top).into_iter().filter(|l| l != top).zip(values) {
        if m > 0 {
            entries.insert(label, m);
        }
    }
    MultiplicityTable::new(top.clone(), entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Φ is affine in the multiplicities: Φ(a) + Φ(b) = Φ(a + b) + Φ(0)
    /// for tables sharing a top.
    #[test]
    fn residual_is_linear_in_multiplicities(
        h in 2u32..=6,
        pick in any::<prop::sample::Index>(),
        a in prop::collection::vec(0u64..50, 11),
        b in prop::collection::vec(0u64..50, 11),
        formula in 0usize..10,
        extra in 1u32..6,
    ) {
        let (specs, cal) = calibrated();
        let valid = cal.valid_formulas(specs);
        let f = &valid[formula % valid.len()];
        let tops = enumerate_partitions(h);
        let top = pick.get(&tops);
        let n = top.len() as u32 + extra;
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let r = |v: &[u64]| phi_residual(f, &table_with(top, v), n).unwrap();
        prop_assert_eq!(r(&a) + r(&b), r(&sum) + r(&[]));
    }

    /// A corrupted multiplicity is detected by some valid formula at some
    /// rank in the default solve window.
    #[test]
    fn corruption_is_detected(h in 3u32..=6, pick in any::<prop::sample::Index>(), which in any::<prop::sample::Index>(), delta in 1u64..4) {
        let (specs, cal) = calibrated();
        let tops: Vec<Partition> = enumerate_partitions(h).into_iter().filter(|q| sub_dominants(q).len() > 1).collect();
        let top = pick.get(&tops);
        let truth = stable_table(top);
        let labels: Vec<Partition> = sub_dominants(top).into_iter().filter(|l| l != top).collect();
        let label = which.get(&labels);
        let bad = truth.with_entry(label.clone(), truth.get(label) + delta);
        let sigma = top.len() as u32;
        let detected = cal.valid_formulas(specs).iter().any(|f| {
            (sigma + 1..=sigma + labels.len() as u32 + 2)
                .any(|n| phi_residual(f, &bad, n).unwrap() != Rational::from_integer(0.into()))
        });
        prop_assert!(detected);
    }
}
