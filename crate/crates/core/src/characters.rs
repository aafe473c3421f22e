//! Generalized orbit characters `ch_s(Π) = Σ_{μ∈Π} (μ·x)^s` expanded in
//! products of power sums `p_k = Σ_I x_I^k`, with coefficients that are
//! polynomials in the rank `N`.
//!
//! The expansion is formal: the `N+1` variables are independent, so
//! coefficients on partitions containing a part 1 are well defined even
//! though they are invisible on the physical hyperplane where `p_1 = 0`.
//! Only the 1-free coefficients are exposed as [`cof`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{solve_linear_exact, AlgebraError, ExactMatrix, PolyN, Rational};
use crate::partitions::{enumerate_partitions, Partition};
use crate::weights::{orbit_dimension, orbit_weights, MultiplicityTable, OrbitLabel, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("coefficient not physical: index {0} contains a part 1")]
    NotPhysical(Partition),
    #[error("brute-force guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("power-sum decomposition is not unique with {vars} variables at degree {degree}; compare monomials instead")]
    NotUnique { vars: u32, degree: u32 },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Largest orbit the brute-force oracle will enumerate.
pub const BRUTE_FORCE_ORBIT_LIMIT: u64 = 100_000;
/// Largest degree the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_DEGREE: u32 = 8;

/// `ch_s` of one orbit as `Σ_ρ coef_ρ(N) · p_ρ` over partitions ρ of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumExpansion {
    degree: u32,
    terms: BTreeMap<Partition, PolyN>,
}

impl PowerSumExpansion {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient on `p_ρ`; zero when absent.
    pub fn get(&self, rho: &Partition) -> PolyN {
        self.terms.get(rho).cloned().unwrap_or_else(PolyN::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, PolyN> {
        &self.terms
    }

    /// Every coefficient evaluated at rank `n`, zeros dropped.
    pub fn eval(&self, n: i64) -> BTreeMap<Partition, Rational> {
        self.terms
            .iter()
            .map(|(k, p)| (k.clone(), p.eval_int(n)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Only the coefficients that survive `p_1 = 0`.
    pub fn physical(&self) -> BTreeMap<Partition, PolyN> {
        self.terms.iter().filter(|(k, _)| !k.contains_one()).map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// `m̃_η = Σ` over injective placements of the exponents of `η` onto
/// variables of `Π x^η`, i.e. the monomial symmetric function scaled by
/// `Π mult(η)!`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugmentedMonomial {
    pub exponents: Partition,
}

type PowerSumTerms = BTreeMap<Partition, BigInt>;

fn augmented_memo() -> &'static RwLock<HashMap<Partition, Arc<PowerSumTerms>>> {
    static MEMO: OnceLock<RwLock<HashMap<Partition, Arc<PowerSumTerms>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

impl AugmentedMonomial {
    pub fn new(exponents: Partition) -> Self {
        AugmentedMonomial { exponents }
    }

    /// Integer power-sum expansion via
    /// `m̃_{(a)∪η} = p_a · m̃_η − Σ_i m̃_{η with η_i raised by a}`.
    pub fn to_power_sums(&self) -> Arc<PowerSumTerms> {
        let eta = &self.exponents;
        if let Some(hit) = augmented_memo().read().expect("memo lock").get(eta) {
            return hit.clone();
        }
        let mut out = PowerSumTerms::new();
        match eta.parts().split_first() {
            None => {
                out.insert(Partition::empty(), BigInt::one());
            }
            Some((&a, rest)) => {
                let rest_vec = rest.to_vec();
                let tail = AugmentedMonomial::new(Partition::from_unsorted(rest_vec.clone())).to_power_sums();
                for (rho, c) in tail.iter() {
                    let mut parts = rho.parts().to_vec();
                    parts.push(a);
                    *out.entry(Partition::from_unsorted(parts)).or_default() += c;
                }
                for i in 0..rest_vec.len() {
                    let mut merged = rest_vec.clone();
                    merged[i] += a;
                    let sub = AugmentedMonomial::new(Partition::from_unsorted(merged)).to_power_sums();
                    for (rho, c) in sub.iter() {
                        *out.entry(rho.clone()).or_default() -= c;
                    }
                }
                out.retain(|_, c| !c.is_zero());
            }
        }
        let out = Arc::new(out);
        augmented_memo().write().expect("memo lock").insert(eta.clone(), out.clone());
        out
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn expansion_memo() -> &'static RwLock<HashMap<(Partition, u32), Arc<PowerSumExpansion>>> {
    static MEMO: OnceLock<RwLock<HashMap<(Partition, u32), Arc<PowerSumExpansion>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Every partition with at most `max_len` parts, parts ≤ `max_part`, of
/// weight exactly `w`.
fn bounded_partitions(w: u32, max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
    if w == 0 {
        return vec![Vec::new()];
    }
    if max_len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(w)).rev() {
        for mut rest in bounded_partitions(w - first, max_len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Formal expansion of `ch_s` for the orbit of `q`, memoized per `(q, s)`.
///
/// Copies of one repeated value `v` (multiplicity `c`) receive a multiset of
/// exponents `λ`; the number of exponent assignments producing it is
/// `c!/((c−ℓ(λ))! Π mult(λ)!)`, and the final division by `c!` leaves the
/// per-group weight `1/((c−ℓ(λ))! Π mult(λ)!)`. Zero-exponent parts occupy
/// the remaining slots in `(N+1−r)_{σ−r}` ways.
pub fn orbit_character_expansion(q: &OrbitLabel, s: u32) -> Arc<PowerSumExpansion> {
    let key = (q.clone(), s);
    if let Some(hit) = expansion_memo().read().expect("memo lock").get(&key) {
        return hit.clone();
    }
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &v in q.parts() {
        match groups.last_mut() {
            Some((w, c)) if *w == v => *c += 1,
            _ => groups.push((v, 1)),
        }
    }
    let sigma = q.len();
    let mut acc: BTreeMap<Partition, BTreeMap<usize, Rational>> = BTreeMap::new();
    let mut choice: Vec<Vec<u32>> = Vec::new();
    expand_groups(&groups, s, &mut choice, &mut |choice| {
        let mut eta: Vec<u32> = Vec::new();
        let mut weight = Rational::from_integer(factorial(s as u64));
        for (lambda, &(v, c)) in choice.iter().zip(&groups) {
            let deg: u32 = lambda.iter().sum();
            weight *= Rational::from_integer(num_traits::pow(BigInt::from(v), deg as usize));
            let mut den = factorial((c - lambda.len()) as u64);
            for part in lambda {
                den *= factorial(*part as u64);
            }
            for m in Partition::from_unsorted(lambda.clone()).multiplicities() {
                den *= factorial(m as u64);
            }
            weight /= Rational::from_integer(den);
            eta.extend_from_slice(lambda);
        }
        let r = eta.len();
        let bucket_key = r;
        for (rho, c) in AugmentedMonomial::new(Partition::from_unsorted(eta)).to_power_sums().iter() {
            *acc.entry(rho.clone()).or_default().entry(bucket_key).or_insert_with(Rational::zero) +=
                &weight * Rational::from_integer(c.clone());
        }
    });
    let mut terms = BTreeMap::new();
    for (rho, by_r) in acc {
        let poly = by_r.into_iter().fold(PolyN::zero(), |p, (r, c)| {
            &p + &PolyN::falling_from(r as i64, sigma - r).scale(&c)
        });
        if !poly.is_zero() {
            terms.insert(rho, poly);
        }
    }
    let out = Arc::new(PowerSumExpansion { degree: s, terms });
    expansion_memo().write().expect("memo lock").insert(key, out.clone());
    out
}

fn expand_groups(
    groups: &[(u32, usize)],
    remaining: u32,
    choice: &mut Vec<Vec<u32>>,
    emit: &mut dyn FnMut(&[Vec<u32>]),
) {
    let Some((&(_, c), rest)) = groups.split_first() else {
        if remaining == 0 {
            emit(choice);
        }
        return;
    };
    let budget = if rest.is_empty() { remaining..=remaining } else { 0..=remaining };
    for w in budget {
        for lambda in bounded_partitions(w, c, w) {
            choice.push(lambda);
            expand_groups(rest, remaining - w, choice, emit);
            choice.pop();
        }
    }
}

/// The `idx` coefficient of the expansion of `q` as a polynomial in `N`.
pub fn cof_poly(q: &OrbitLabel, idx: &Partition) -> Result<PolyN, CharacterError> {
    if idx.contains_one() {
        return Err(CharacterError::NotPhysical(idx.clone()));
    }
    if q.is_empty() || idx.is_empty() {
        // The zero orbit contributes 0^s = 0 for every s ≥ 1.
        return Ok(PolyN::zero());
    }
    Ok(orbit_character_expansion(q, idx.weight()).get(idx))
}

/// `cof_idx(q, N)`.
pub fn cof(q: &OrbitLabel, idx: &Partition, rank: u32) -> Result<Rational, CharacterError> {
    Ok(cof_poly(q, idx)?.eval_int(rank as i64))
}

/// `Σ_α m(α) cof_idx(ρ_α)` as a polynomial in `N`.
///
/// Orbits with σ > N+1 are taken at the formal polynomial value, which
/// agrees with the literal zero orbit whenever `|idx| ≤ N+1`.
pub fn rep_cof_poly(t: &MultiplicityTable, idx: &Partition) -> Result<PolyN, CharacterError> {
    let mut acc = PolyN::zero();
    for (label, m) in t.iter() {
        acc = &acc + &cof_poly(label, idx)?.scale(&Rational::from_integer(m.into()));
    }
    Ok(acc)
}

pub fn rep_cof(t: &MultiplicityTable, idx: &Partition, rank: u32) -> Result<Rational, CharacterError> {
    Ok(rep_cof_poly(t, idx)?.eval_int(rank as i64))
}

/// Coefficient of `x_1^{λ_1} … x_ℓ^{λ_ℓ}` in `p_ρ`: the number of ways to
/// send each part of ρ to a variable so that variable `i` collects `λ_i`.
fn power_sum_monomial_coefficient(rho: &[u32], lambda: &[u32]) -> u64 {
    fn go(rho: &[u32], room: &mut [u32]) -> u64 {
        let Some((&part, rest)) = rho.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for i in 0..room.len() {
            if room[i] >= part {
                room[i] -= part;
                total += go(rest, room);
                room[i] += part;
            }
        }
        total
    }
    go(rho, &mut lambda.to_vec())
}

/// Monomial-basis coefficients `[x^λ]` (λ a partition of `s` with at most
/// `N+1` parts) of a power-sum combination.
pub fn to_monomial_basis(
    power_sums: &BTreeMap<Partition, Rational>,
    s: u32,
    rank: u32,
) -> BTreeMap<Partition, Rational> {
    enumerate_partitions(s)
        .into_iter()
        .filter(|l| l.len() <= rank as usize + 1)
        .map(|lambda| {
            let v: Rational = power_sums
                .iter()
                .map(|(rho, c)| c * Rational::from_integer(power_sum_monomial_coefficient(rho.parts(), lambda.parts()).into()))
                .sum();
            (lambda, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// `[x^λ] Σ_{w ∈ orbit} (w·x)^s` by literal enumeration of the orbit:
/// `multinomial(s; λ) · Σ_w Π_i w_i^{λ_i}`.
pub fn brute_force_monomials(q: &OrbitLabel, s: u32, rank: u32) -> Result<BTreeMap<Partition, Rational>, CharacterError> {
    let size = orbit_dimension(q, rank);
    if size > BigUint::from(BRUTE_FORCE_ORBIT_LIMIT) {
        return Err(CharacterError::GuardExceeded(format!("orbit of {q} at rank {rank} has {size} weights")));
    }
    if s > BRUTE_FORCE_MAX_DEGREE {
        return Err(CharacterError::GuardExceeded(format!("degree {s} above {BRUTE_FORCE_MAX_DEGREE}")));
    }
    let weights = orbit_weights(q, rank)?;
    let mut out = BTreeMap::new();
    for lambda in enumerate_partitions(s).into_iter().filter(|l| l.len() <= rank as usize + 1) {
        let mut sum = BigInt::zero();
        for w in &weights {
            let mut term = BigInt::one();
            for (i, &e) in lambda.parts().iter().enumerate() {
                term *= num_traits::pow(BigInt::from(w[i]), e as usize);
            }
            sum += term;
        }
        let mut multinomial = factorial(s as u64);
        for &e in lambda.parts() {
            multinomial /= factorial(e as u64);
        }
        let v = sum * multinomial;
        if !v.is_zero() {
            out.insert(lambda, Rational::from_integer(v));
        }
    }
    Ok(out)
}

/// Independent oracle: enumerate the orbit, expand `(w·x)^s` literally and
/// solve for the power-sum coefficients over the monomial basis. Requires
/// `N+1 ≥ s`, where power-sum products of degree `s` are independent.
pub fn brute_force_expansion(q: &OrbitLabel, s: u32, rank: u32) -> Result<BTreeMap<Partition, Rational>, CharacterError> {
    if rank + 1 < s {
        return Err(CharacterError::NotUnique { vars: rank + 1, degree: s });
    }
    let monomials = brute_force_monomials(q, s, rank)?;
    let basis = enumerate_partitions(s);
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|lambda| {
            basis
                .iter()
                .map(|rho| Rational::from_integer(power_sum_monomial_coefficient(rho.parts(), lambda.parts()).into()))
                .collect()
        })
        .collect();
    let a = ExactMatrix::from_rows(rows, basis.len())?;
    let b: Vec<Rational> = basis.iter().map(|l| monomials.get(l).cloned().unwrap_or_else(Rational::zero)).collect();
    let x = solve_linear_exact(&a, &b)?.solution;
    Ok(basis.into_iter().zip(x).filter(|(_, v)| !v.is_zero()).collect())
}
