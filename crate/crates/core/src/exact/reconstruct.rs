//! Recovering polynomials and rational functions of `N` from exact samples.

use std::collections::HashSet;

use num_traits::Zero;

use super::{rat, AlgebraError, PolyN, RatFuncN, Rational};

fn check_abscissae(points: &[(i64, Rational)]) -> Result<(), AlgebraError> {
    if points.is_empty() {
        return Err(AlgebraError::NoPoints);
    }
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(*x) {
            return Err(AlgebraError::DuplicateAbscissa(*x));
        }
    }
    Ok(())
}

/// The unique polynomial of degree below `points.len()` through all points
/// (Newton divided differences).
pub fn poly_interpolate(points: &[(i64, Rational)]) -> Result<PolyN, AlgebraError> {
    check_abscissae(points)?;
    let n = points.len();
    let xs: Vec<Rational> = points.iter().map(|(x, _)| rat(*x)).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = PolyN::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &PolyN::linear(-points[i].0)) + &PolyN::constant(dd[i].clone());
    }
    Ok(p)
}

/// Rational function with numerator degree at most `max_num_deg` and
/// denominator degree at most `max_den_deg` through all points, found with
/// the extended Euclidean algorithm on the interpolant.
pub fn ratfunc_reconstruct(
    points: &[(i64, Rational)],
    max_num_deg: usize,
    max_den_deg: usize,
) -> Result<RatFuncN, AlgebraError> {
    check_abscissae(points)?;
    if points.len() < max_num_deg + max_den_deg + 1 {
        return Err(AlgebraError::ReconstructionFailed(format!(
            "{} points cannot fix degrees ({max_num_deg}, {max_den_deg})",
            points.len()
        )));
    }
    let modulus = PolyN::product(&points.iter().map(|(x, _)| PolyN::linear(-x)).collect::<Vec<_>>());
    let interp = poly_interpolate(points)?;
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1) = (PolyN::zero(), PolyN::one());
    while r1.degree().is_some_and(|d| d > max_num_deg) {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let fail = |why: &str| AlgebraError::ReconstructionFailed(why.to_string());
    if t1.degree().is_none_or(|d| d > max_den_deg) {
        return Err(fail("denominator degree bound exceeded"));
    }
    let candidate = RatFuncN::new(r1, t1).map_err(|_| fail("degenerate candidate"))?;
    verify(&candidate, points)?;
    Ok(candidate)
}

fn verify(f: &RatFuncN, points: &[(i64, Rational)]) -> Result<(), AlgebraError> {
    for (x, y) in points {
        match f.eval_int(*x) {
            Ok(v) if &v == y => {}
            _ => {
                return Err(AlgebraError::ReconstructionFailed(format!(
                    "candidate {f} disagrees with sample at N = {x}"
                )))
            }
        }
    }
    Ok(())
}

/// Reconstructs a rational function without prior degree bounds.
///
/// A polynomial is accepted when its interpolant leaves at least `checks`
/// samples unused. Otherwise a Thiele continued fraction is grown point by
/// point until it predicts the next `checks` samples exactly. The result is
/// always verified against every sample.
pub fn reconstruct_auto(points: &[(i64, Rational)], checks: usize) -> Result<RatFuncN, AlgebraError> {
    check_abscissae(points)?;
    let checks = checks.max(1);
    let p = poly_interpolate(points)?;
    if p.degree().map_or(0, |d| d + 1) + checks <= points.len() {
        return Ok(RatFuncN::from_poly(p));
    }
    if let Some(f) = thiele(points, checks) {
        if verify(&f, points).is_ok() {
            return Ok(f);
        }
    }
    // Thiele can trip over unlucky zero reciprocal differences; fall back to
    // bounded Euclidean reconstruction over every split of the budget.
    let budget = points.len().saturating_sub(checks + 1);
    for total in 0..=budget {
        for den in 0..=total {
            if let Ok(f) = ratfunc_reconstruct(&points[..total + 1], total - den, den) {
                if verify(&f, points).is_ok() {
                    return Ok(f);
                }
            }
        }
    }
    Err(AlgebraError::ReconstructionFailed(format!(
        "no rational function fits {} samples with {checks} spare",
        points.len()
    )))
}

fn thiele(points: &[(i64, Rational)], checks: usize) -> Option<RatFuncN> {
    let xs: Vec<Rational> = points.iter().map(|(x, _)| rat(*x)).collect();
    let mut a: Vec<Rational> = Vec::new();
    let mut k = 0;
    while k < points.len() {
        if !a.is_empty() && k + checks <= points.len() {
            let predicts = (k..k + checks).all(|j| eval_cf(&a, &xs, &xs[j]).as_ref() == Some(&points[j].1));
            if predicts {
                return to_ratfunc(&a, points);
            }
        }
        // Next reciprocal difference.
        let mut v = points[k].1.clone();
        for i in 0..k {
            let diff = &v - &a[i];
            if diff.is_zero() {
                return None;
            }
            v = (&xs[k] - &xs[i]) / diff;
        }
        a.push(v);
        k += 1;
    }
    None
}

fn eval_cf(a: &[Rational], xs: &[Rational], x: &Rational) -> Option<Rational> {
    let mut val = a.last()?.clone();
    for i in (0..a.len() - 1).rev() {
        if val.is_zero() {
            return None;
        }
        val = &a[i] + (x - &xs[i]) / val;
    }
    Some(val)
}

fn to_ratfunc(a: &[Rational], points: &[(i64, Rational)]) -> Option<RatFuncN> {
    let mut num = PolyN::constant(a.last()?.clone());
    let mut den = PolyN::one();
    for i in (0..a.len() - 1).rev() {
        // a_i + (N - x_i) * den / num
        let shifted = &PolyN::linear(-points[i].0) * &den;
        let next_num = &num.scale(&a[i]) + &shifted;
        den = num;
        num = next_num;
    }
    RatFuncN::new(num, den).ok()
}
