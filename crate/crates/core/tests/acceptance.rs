//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with a custom harness so the report lines always reach the test
//! output; the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use anmult::characters::{
    brute_force_expansion, brute_force_monomials, cof, orbit_character_expansion, to_monomial_basis,
};
use anmult::exact::{rat, PolyN, Rational};
use anmult::formulas::{
    builtin_formulas, calibrate, default_derive_ranks, derive_formula, oracle_corpus, solve_multiplicities,
    validate_formula, FormulaStatus, MultiplicityIdentity, SolveOptions,
};
use anmult::freudenthal::{check_dimension, freudenthal, stability_report};
use anmult::partitions::{enumerate_partitions, no_one_partitions, sub_dominants, Partition};
use anmult::weights::{rep_dimension, theta_power, to_dynkin, weyl_dimension, DynkinLabels};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn section_four_top() -> Partition {
    p("3,2,1,1,1,1")
}

/// The §IV multiplicities, keyed by label.
fn section_four_values() -> BTreeMap<Partition, u64> {
    [
        ("3,2,1,1,1,1", 1),
        ("2,2,2,1,1,1", 2),
        ("3,1,1,1,1,1,1", 5),
        ("2,2,1,1,1,1,1", 10),
        ("2,1,1,1,1,1,1,1", 35),
        ("1,1,1,1,1,1,1,1,1", 105),
    ]
    .into_iter()
    .map(|(l, m)| (p(l), m))
    .collect()
}

fn solve_section_four(identity: &dyn MultiplicityIdentity) -> Result<(), String> {
    let opts = SolveOptions { ranks: Some((8..=12).collect()), cross_check: false };
    let report = solve_multiplicities(&section_four_top(), &[identity], &[], &opts)
        .map_err(|e| format!("formula {}: {e}", identity.label()))?;
    let got: BTreeMap<Partition, u64> = report.table.multiplicities.into_iter().collect();
    check(got == section_four_values(), || format!("formula {} gave {got:?}", identity.label()))?;
    check(report.ranks == (8..=12).collect::<Vec<_>>(), || format!("formula {} needed ranks {:?}", identity.label(), report.ranks))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let specs = builtin_formulas();
    let cal = calibrate(&specs, &oracle_corpus(1..=4), &(5..=28).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let valid = cal.valid_formulas(&specs);
    check(!valid.is_empty(), || "no transcription validated".to_string())?;
    for f in &valid {
        solve_section_four(f)?;
    }
    let corpus = oracle_corpus(1..=6);
    let ids: Vec<Partition> = (4..=7).flat_map(no_one_partitions).collect();
    for id in &ids {
        let d = derive_formula(id, &corpus, &default_derive_ranks(id, &corpus)).map_err(|e| e.to_string())?;
        solve_section_four(&d)?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:.1?}"))?;
    Ok(format!(
        "m = (1,2,5,10,35,105) at N = 8..12 from each of {} valid transcriptions and {} derived formulas in {elapsed:.1?}",
        valid.len(),
        ids.len()
    ))
}

fn section_four_weight(rank: u32) -> DynkinLabels {
    let mut r = vec![0; rank as usize];
    for i in [0, 1, 5] {
        r[i] = 1;
    }
    DynkinLabels::new(r).unwrap()
}

fn criterion_2() -> Outcome {
    // (numerator constant, ascending coefficients) of Θ(s) · g(s,N).
    let closed: [(u32, i64, &[i64]); 6] = [
        (2, 3, &[-1152, -70, 113, 4, 1]),
        (3, 432, &[448, 98, -31, -4, 1]),
        (4, 1, &[-7925760, -3447368, -69144, 191516, 11947, -2052, 1154, 24, 3]),
        (5, 432, &[663040, 458420, 96638, -22556, -8441, 608, 144, -16, 3]),
        (
            6,
            1,
            &[
                -9704669184,
                -9453386848,
                -3436715360,
                155802792,
                289898824,
                6448322,
                -10826973,
                375224,
                259141,
                -7110,
                2445,
                36,
                3,
            ],
        ),
        (
            7,
            288,
            &[
                1099055104, 1399367648, 708562192, 61441320, -51346940, -8957530, 2041581, 268592, -85565, -1730,
                1875, -60, 9,
            ],
        ),
    ];
    let mut checked = 0;
    for (s, k, coeffs) in closed {
        let poly = PolyN::from_i64(coeffs);
        for n in 7..=12u32 {
            let g = rat(3) * rat(2i64.pow(s)) * rat(s as i64 + 1) * rat(n as i64 + 1).pow(s as i32 - 1);
            let expect = rat(k) * poly.eval_int(n as i64) / g;
            let got = theta_power(s, &section_four_weight(n));
            check(got == expect, || format!("Θ({s}) at N={n}: {got} vs {expect}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} exact matches for s = 2..7, N = 7..12"))
}

fn criterion_3() -> Outcome {
    for n in 7..=12u32 {
        let d = section_four_weight(n);
        let weyl = weyl_dimension(&d);
        let table = freudenthal(&d).map_err(|e| e.to_string())?;
        let summed = rep_dimension(&table, n);
        let closed = PolyN::product(&[-4, -3, -2, -1, 0, 1, 1, 2, 3].map(PolyN::linear)).eval_int(n as i64) / rat(3456);
        check(Rational::from_integer(weyl.clone().into()) == closed && weyl == summed, || {
            format!("N={n}: Weyl {weyl}, table {summed}, closed form {closed}")
        })?;
        if n == 7 {
            check(weyl == BigUint::from(4200u32), || format!("dimension at N=7 is {weyl}"))?;
        }
    }
    Ok("Weyl = Σ m·|orbit| = closed form for N = 7..12 (4200 at N = 7)".to_string())
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(rat(1), |acc, k| acc * rat(k))
}

fn criterion_4() -> Outcome {
    let mut closed = 0;
    let mut vanishing = 0;
    for k in 1..=3usize {
        let fundamental = Partition::rectangle(1, k);
        for s in 2..=7 {
            for pi in no_one_partitions(s) {
                for n in 6..=12u32 {
                    let got = cof(&fundamental, &pi, n).map_err(|e| e.to_string())?;
                    if pi.len() == k {
                        let mut expect = factorial(s);
                        for &part in pi.parts() {
                            expect /= factorial(part);
                        }
                        for m in pi.multiplicities() {
                            expect /= factorial(m as u32);
                        }
                        check(got == expect, || format!("cof_{pi}(λ_{k}) at N={n}: {got} vs {expect}"))?;
                        closed += 1;
                    } else if pi.len() > k {
                        check(got == rat(0), || format!("cof_{pi}(λ_{k}) at N={n} is {got}, expected 0"))?;
                        vanishing += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{closed} closed-form values and {vanishing} vanishing values match"))
}

fn criterion_5() -> Outcome {
    let mut compared = 0;
    for h in 1..=5 {
        for q in enumerate_partitions(h) {
            for s in 1..=7 {
                let formal = orbit_character_expansion(&q, s);
                for n in (q.len() as u32 - 1).max(1)..=7 {
                    let values = formal.eval(n as i64);
                    if n + 1 >= s {
                        let brute = brute_force_expansion(&q, s, n).map_err(|e| e.to_string())?;
                        check(brute == values, || format!("{q}, s={s}, N={n}"))?;
                    } else {
                        let brute = brute_force_monomials(&q, s, n).map_err(|e| e.to_string())?;
                        check(brute == to_monomial_basis(&values, s, n), || format!("{q}, s={s}, N={n} (monomial basis)"))?;
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} (label, s, N) cases agree coefficient-wise"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=9u32 {
        let trivial = freudenthal(&DynkinLabels::zero(n).unwrap()).map_err(|e| e.to_string())?;
        check(check_dimension(&trivial, n), || format!("trivial representation at N={n}"))?;
        count += 1;
        for h in 1..=6 {
            for q in enumerate_partitions(h).into_iter().filter(|q| q.len() <= n as usize) {
                let table = freudenthal(&to_dynkin(&q, n).unwrap()).map_err(|e| e.to_string())?;
                check(check_dimension(&table, n), || format!("{q} at N={n}"))?;
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(600), || format!("took {elapsed:.1?}"))?;
    Ok(format!("{count} dominant weights of height ≤ 6, N ≤ 9, in {elapsed:.1?}"))
}

fn criterion_7() -> Outcome {
    let specs = builtin_formulas();
    let ranks: Vec<u32> = (5..=28).collect();
    let cal = calibrate(&specs, &oracle_corpus(1..=4), &ranks).map_err(|e| e.to_string())?;
    let again = calibrate(&specs, &oracle_corpus(1..=4), &ranks).map_err(|e| e.to_string())?;
    check(cal.to_json() == again.to_json(), || "calibration is not deterministic".to_string())?;
    check(cal.status.len() == 12, || format!("{} formulas classified", cal.status.len()))?;

    let held_out = oracle_corpus(5..=6);
    let held_ranks: Vec<u32> = (7..=20).collect();
    let mut valid = Vec::new();
    for f in cal.valid_formulas(&specs) {
        let report = validate_formula(&f, &held_out, &held_ranks).map_err(|e| e.to_string())?;
        check(report.valid == Some(true), || format!("{} fails on the height 5..6 corpus: {:?}", f.label(), report.first_failure))?;
        valid.push(f.label());
    }
    let mut suspects = Vec::new();
    for (label, status) in &cal.status {
        let FormulaStatus::Suspect(details) = status else { continue };
        let first = details.first_failure.as_ref().ok_or_else(|| format!("{label}: no failing point recorded"))?;
        let terms: Vec<String> =
            details.term_comparison.iter().filter(|t| !t.agrees).map(|t| format!("Θ[{}]", t.monomial)).collect();
        check(!terms.is_empty() || !details.hints.is_empty(), || format!("{label}: failure not localized"))?;
        suspects.push(format!(
            "({label}) first fails at top {} N={}; differing terms {}; {}",
            first.top,
            first.rank,
            terms.join(" "),
            details.hints.join("; ")
        ));
    }
    if suspects.is_empty() {
        return Ok("all 12 transcriptions valid (height ≤ 4 calibration, height 5..6 validation)".to_string());
    }
    // With suspects, criterion 1 must still hold through the remaining
    // valid and derived formulas; it is checked in full by criterion 1.
    check(!valid.is_empty(), || "no valid transcription left".to_string())?;
    Ok(format!(
        "{}/12 valid and confirmed on heights 5..6 [{}]; suspect: {}",
        valid.len(),
        valid.join(","),
        suspects.join(" | ")
    ))
}

fn criterion_8() -> Outcome {
    let mut corpus = oracle_corpus(1..=5);
    corpus.extend(oracle_corpus(7..=7));
    let d8 = derive_formula(&p("8"), &corpus, &default_derive_ranks(&p("8"), &corpus)).map_err(|e| e.to_string())?;
    let d44 =
        derive_formula(&p("4,4"), &corpus, &default_derive_ranks(&p("4,4"), &corpus)).map_err(|e| e.to_string())?;
    let tops: Vec<Partition> = enumerate_partitions(6).into_iter().filter(|q| q.len() < 6).collect();
    check(tops.len() == 10, || format!("{} held-out tops", tops.len()))?;
    for top in &tops {
        let opts = SolveOptions { ranks: None, cross_check: true };
        let report = solve_multiplicities(top, &[&d8, &d44], &[], &opts).map_err(|e| e.to_string())?;
        check(report.oracle_agreement == Some(true), || format!("{top}: solver disagrees with Freudenthal"))?;
    }
    Ok(format!(
        "d8 ({} Θ terms) and d44 ({} Θ terms) validated; {} height-6 tops match Freudenthal",
        d8.numerators.len(),
        d44.numerators.len(),
        tops.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut tops = 0;
    for h in 1..=5 {
        for q in enumerate_partitions(h) {
            let sigma = q.len() as u32;
            let ranks: Vec<u32> = (sigma + 1..=sigma + 4).filter(|&n| n + 1 >= h).collect();
            let report = stability_report(&q, &ranks).map_err(|e| e.to_string())?;
            check(report.stable, || format!("{q} unstable at {:?}", report.unstable))?;
            // Every sub-dominant orbit is nonempty, and occurs, at each rank.
            check(report.values.len() == sub_dominants(&q).len(), || format!("{q} is missing labels"))?;
            check(report.values.values().all(|v| v.iter().all(|&m| m > 0)), || format!("{q} has a zero multiplicity"))?;
            tops += 1;
        }
    }
    Ok(format!("{tops} tops stable across N = σ+1..σ+4 with all sub-orbits nonempty"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS — {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL — {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
