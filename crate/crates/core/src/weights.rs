//! Dominant weights of `A_N` in Dynkin and orbit-label form, the ρ-shifted
//! coordinates θ and their power sums Θ(s), orbit sizes and the Weyl
//! dimension formula.
//!
//! Weights live in the `N+1`-coordinate hyperplane with coordinates summing
//! to zero and the standard dot product, so simple roots are coordinate
//! differences of squared length 2. An orbit label `q` stands for the weight
//! with coordinates `q_I - |q|/(N+1)` (zeros padded to `N+1` entries).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ratio, PolyN, Rational};
use crate::partitions::{dominates, sub_dominants, Partition, PartitionError};

/// Orbit label: the weakly decreasing `q` of a dominant weight
/// `Σ q_i μ_i`. Its number of parts is σ and its weight is the height.
pub type OrbitLabel = Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("rank too small: label with {sigma} parts needs rank at least {sigma}, got {rank}")]
    RankTooSmall { sigma: usize, rank: u32 },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("malformed weight {0:?}: expected q:<parts> or r:<labels>")]
    Parse(String),
    #[error("label {0} is not dominated by the top weight {1}")]
    NotDominated(Partition, Partition),
    #[error("top weight must have multiplicity 1, got {0}")]
    TopMultiplicity(u64),
    #[error("orbit too large: {0} weights exceeds the enumeration limit")]
    OrbitTooLarge(BigUint),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Dynkin labels `r_1..r_N` of a dominant weight; their count is the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinLabels {
    r: Vec<u32>,
}

impl DynkinLabels {
    pub fn new(r: Vec<u32>) -> Result<Self, WeightError> {
        if r.is_empty() {
            return Err(WeightError::ZeroRank);
        }
        Ok(DynkinLabels { r })
    }

    /// The fundamental weight `λ_k` (1-based) at the given rank.
    pub fn fundamental(k: usize, rank: u32) -> Result<Self, WeightError> {
        let mut r = vec![0; rank as usize];
        *r.get_mut(k.wrapping_sub(1)).ok_or(WeightError::ZeroRank)? = 1;
        Self::new(r)
    }

    pub fn zero(rank: u32) -> Result<Self, WeightError> {
        Self::new(vec![0; rank as usize])
    }

    pub fn rank(&self) -> u32 {
        self.r.len() as u32
    }

    pub fn labels(&self) -> &[u32] {
        &self.r
    }
}

impl fmt::Display for DynkinLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.r.iter().map(|v| v.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

/// A weight as typed on the command line: `q:3,2,1,1,1,1` or
/// `r:1,1,0,0,0,1,0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Orbit(OrbitLabel),
    Dynkin(DynkinLabels),
}

impl WeightSpec {
    pub fn orbit_label(&self) -> OrbitLabel {
        match self {
            WeightSpec::Orbit(q) => q.clone(),
            WeightSpec::Dynkin(d) => to_orbit_label(d),
        }
    }

    /// Dynkin labels at `rank`; Dynkin input carries its own rank and
    /// ignores the argument unless they disagree.
    pub fn dynkin(&self, rank: Option<u32>) -> Result<DynkinLabels, WeightError> {
        match (self, rank) {
            (WeightSpec::Dynkin(d), None) => Ok(d.clone()),
            (WeightSpec::Dynkin(d), Some(n)) if n == d.rank() => Ok(d.clone()),
            (WeightSpec::Dynkin(d), Some(n)) => to_dynkin(&to_orbit_label(d), n),
            (WeightSpec::Orbit(q), Some(n)) => to_dynkin(q, n),
            (WeightSpec::Orbit(q), None) => to_dynkin(q, (q.len() as u32).max(1)),
        }
    }

    pub fn explicit_rank(&self) -> Option<u32> {
        match self {
            WeightSpec::Dynkin(d) => Some(d.rank()),
            WeightSpec::Orbit(_) => None,
        }
    }
}

impl FromStr for WeightSpec {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError::Parse(s.to_string());
        let (kind, body) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "q" => Ok(WeightSpec::Orbit(body.parse()?)),
            "r" => {
                let r = body
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                DynkinLabels::new(r)
            }
            .map(WeightSpec::Dynkin),
            _ => Err(bad()),
        }
    }
}

/// `q_j = Σ_{i≥j} r_i`, trailing zeros dropped.
pub fn to_orbit_label(d: &DynkinLabels) -> OrbitLabel {
    let mut q = Vec::with_capacity(d.r.len());
    let mut acc = 0;
    for &r in d.r.iter().rev() {
        acc += r;
        q.push(acc);
    }
    q.reverse();
    Partition::from_unsorted(q)
}

/// `r_i = q_i - q_{i+1}`; needs σ ≤ rank.
pub fn to_dynkin(q: &OrbitLabel, rank: u32) -> Result<DynkinLabels, WeightError> {
    if rank == 0 {
        return Err(WeightError::ZeroRank);
    }
    if q.len() > rank as usize {
        return Err(WeightError::RankTooSmall { sigma: q.len(), rank });
    }
    let parts = q.parts();
    let at = |i: usize| parts.get(i).copied().unwrap_or(0);
    DynkinLabels::new((0..rank as usize).map(|i| at(i) - at(i + 1)).collect())
}

pub fn height(q: &OrbitLabel) -> u32 {
    q.weight()
}

/// Integer orbit-label coordinates padded to `rank + 1` entries.
fn padded(q: &OrbitLabel, rank: u32) -> Vec<i64> {
    let mut v: Vec<i64> = q.parts().iter().map(|&p| p as i64).collect();
    v.resize(rank as usize + 1, 0);
    v
}

/// Coordinates of `Λ + ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaVector {
    theta: Vec<Rational>,
}

impl ThetaVector {
    pub fn rank(&self) -> u32 {
        self.theta.len() as u32 - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.theta
    }

    pub fn power_sum(&self, s: u32) -> Rational {
        self.theta.iter().map(|t| crate::exact::rat_pow(t, s)).sum()
    }
}

/// The unique vector with `θ_i − θ_{i+1} = 1 + r_i` and `Σ θ_I = 0`.
pub fn theta_vector(d: &DynkinLabels) -> ThetaVector {
    let n = d.rank() as i64;
    let scaled = theta_numerators(&to_orbit_label(d), d.rank());
    let den = 2 * (n + 1);
    ThetaVector { theta: scaled.iter().map(|v| Rational::new(v.clone(), BigInt::from(den))).collect() }
}

/// `2(N+1) θ_I` as integers: `2(N+1) q_I − 2h + (N+1)(N − 2I)` for
/// 0-based `I`.
fn theta_numerators(q: &OrbitLabel, rank: u32) -> Vec<BigInt> {
    let n = rank as i64;
    let h = q.weight() as i64;
    padded(q, rank)
        .iter()
        .enumerate()
        .map(|(i, &qi)| BigInt::from(2 * (n + 1) * qi - 2 * h + (n + 1) * (n - 2 * i as i64)))
        .collect()
}

/// `Θ(s) = Σ_I θ_I^s`.
pub fn theta_power(s: u32, d: &DynkinLabels) -> Rational {
    ThetaPowers::new(&to_orbit_label(d), d.rank()).get(s)
}

/// Power sums Θ(s) of one highest weight at one rank, computed on demand
/// from integer numerators over the common denominator `2(N+1)`.
#[derive(Clone, Debug)]
pub struct ThetaPowers {
    numerators: Vec<BigInt>,
    denominator: BigInt,
    cache: Vec<Option<Rational>>,
}

impl ThetaPowers {
    pub fn new(q: &OrbitLabel, rank: u32) -> Self {
        ThetaPowers {
            numerators: theta_numerators(q, rank),
            denominator: BigInt::from(2 * (rank as i64 + 1)),
            cache: Vec::new(),
        }
    }

    pub fn get(&self, s: u32) -> Rational {
        if let Some(Some(v)) = self.cache.get(s as usize) {
            return v.clone();
        }
        let num: BigInt = self.numerators.iter().map(|v| num_traits::pow(v.clone(), s as usize)).sum();
        Rational::new(num, num_traits::pow(self.denominator.clone(), s as usize))
    }

    /// Fills the cache up to degree `max_s`.
    pub fn with_degrees(mut self, max_s: u32) -> Self {
        self.cache = (0..=max_s).map(|s| Some(self.get(s))).collect();
        self
    }

    /// `Π_{d ∈ degrees} Θ(d)`; the empty product is 1.
    pub fn monomial(&self, degrees: &Partition) -> Rational {
        degrees.parts().iter().fold(Rational::one(), |acc, &d| acc * self.get(d))
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of distinct permutations of `(q_1,…,q_σ,0,…,0)` in `N+1` slots;
/// zero when σ > N+1.
pub fn orbit_dimension(q: &OrbitLabel, rank: u32) -> BigUint {
    let slots = rank as u64 + 1;
    let sigma = q.len() as u64;
    if sigma > slots {
        return BigUint::zero();
    }
    let num: BigUint = (slots - sigma + 1..=slots).map(BigUint::from).product();
    let den: BigUint = q.multiplicities().iter().map(|&m| factorial(m as u64)).product();
    num / den
}

/// Orbit size as a polynomial in `N`: `(N+1)_σ / Π mult!`, which vanishes
/// at every integer rank with σ > N+1.
pub fn orbit_dimension_poly(q: &OrbitLabel) -> PolyN {
    let den: BigUint = q.multiplicities().iter().map(|&m| factorial(m as u64)).product();
    PolyN::falling_from(0, q.len()).scale(&Rational::new(BigInt::one(), BigInt::from(den)))
}

/// Largest orbit [`orbit_weights`] will enumerate.
pub const ORBIT_ENUMERATION_LIMIT: u64 = 1_000_000;

/// Every weight of the orbit as padded orbit-label coordinates (distinct
/// permutations in lexicographic order). Empty when σ > N+1.
pub fn orbit_weights(q: &OrbitLabel, rank: u32) -> Result<Vec<Vec<u32>>, WeightError> {
    let size = orbit_dimension(q, rank);
    if size > BigUint::from(ORBIT_ENUMERATION_LIMIT) {
        return Err(WeightError::OrbitTooLarge(size));
    }
    if q.len() > rank as usize + 1 {
        return Ok(Vec::new());
    }
    let mut v: Vec<u32> = padded(q, rank).iter().map(|&x| x as u32).collect();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `Π_{i<j} (θ_i − θ_j)/(j − i)`.
pub fn weyl_dimension(d: &DynkinLabels) -> BigUint {
    weyl_dimension_of_label(&to_orbit_label(d), d.rank())
}

/// Weyl dimension from an orbit label with up to `N+1` parts (a label with
/// exactly `N+1` parts names the same representation as the label with
/// every part lowered by the last one); zero for more than `N+1` parts.
pub fn weyl_dimension_of_label(q: &OrbitLabel, rank: u32) -> BigUint {
    if q.len() > rank as usize + 1 {
        return BigUint::zero();
    }
    let q = padded(q, rank);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            let gap = (j - i) as u64;
            num *= (q[i] - q[j]) as u64 + gap;
            den *= gap;
        }
    }
    num / den
}

/// Multiplicities of the Weyl orbits making up one irreducible
/// representation, keyed by orbit label. Labels absent from `entries` have
/// multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    top: OrbitLabel,
    entries: BTreeMap<OrbitLabel, u64>,
}

impl MultiplicityTable {
    pub fn new(top: OrbitLabel, entries: BTreeMap<OrbitLabel, u64>) -> Result<Self, WeightError> {
        for label in entries.keys() {
            if label.weight() != top.weight() || !dominates(&top, label)? {
                return Err(WeightError::NotDominated(label.clone(), top));
            }
        }
        match entries.get(&top) {
            Some(1) => {}
            other => return Err(WeightError::TopMultiplicity(other.copied().unwrap_or(0))),
        }
        Ok(MultiplicityTable { top, entries })
    }

    /// A table consisting of the top orbit alone (fundamental weights and the
    /// trivial representation).
    pub fn single_orbit(top: OrbitLabel) -> Self {
        let entries = BTreeMap::from([(top.clone(), 1)]);
        MultiplicityTable { top, entries }
    }

    pub fn top(&self) -> &OrbitLabel {
        &self.top
    }

    pub fn get(&self, label: &OrbitLabel) -> u64 {
        self.entries.get(label).copied().unwrap_or(0)
    }

    /// `(label, multiplicity)` in grade order.
    pub fn iter(&self) -> impl Iterator<Item = (&OrbitLabel, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every sub-dominant label with its multiplicity, zeros included.
    pub fn dense(&self) -> Vec<(OrbitLabel, u64)> {
        sub_dominants(&self.top).into_iter().map(|l| { let m = self.get(&l); (l, m) }).collect()
    }

    /// Copy with one multiplicity replaced (used to probe residuals).
    pub fn with_entry(&self, label: OrbitLabel, m: u64) -> Self {
        let mut entries = self.entries.clone();
        entries.insert(label, m);
        MultiplicityTable { top: self.top.clone(), entries }
    }

    pub fn to_document(&self, rank: u32) -> TableDocument {
        TableDocument {
            top: self.top.clone(),
            rank,
            multiplicities: self.entries.iter().map(|(k, &v)| (k.clone(), v)).collect(),
        }
    }
}

/// JSON form of a table: `{"top": "3,2,1,1,1,1", "rank": 8,
/// "multiplicities": {"1,1,1,1,1,1,1,1,1": 105, …}}` with labels in grade
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub top: Partition,
    pub rank: u32,
    pub multiplicities: IndexMap<Partition, u64>,
}

impl TableDocument {
    pub fn into_table(self) -> Result<MultiplicityTable, WeightError> {
        MultiplicityTable::new(self.top, self.multiplicities.into_iter().collect())
    }
}

/// `Σ_α m(α) · |Π(ρ_α)|`.
pub fn rep_dimension(t: &MultiplicityTable, rank: u32) -> BigUint {
    t.iter().map(|(label, m)| orbit_dimension(label, rank) * m).sum()
}

/// Dimension as a polynomial in `N` for a rank-independent table.
pub fn rep_dimension_poly(t: &MultiplicityTable) -> PolyN {
    t.iter().fold(PolyN::zero(), |acc, (label, m)| {
        &acc + &orbit_dimension_poly(label).scale(&ratio(m as i64, 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::partitions::enumerate_partitions;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(v: &[u32]) -> DynkinLabels {
        DynkinLabels::new(v.to_vec()).unwrap()
    }

    fn paper_table() -> MultiplicityTable {
        let e = [
            ("3,2,1,1,1,1", 1),
            ("2,2,2,1,1,1", 2),
            ("3,1,1,1,1,1,1", 5),
            ("2,2,1,1,1,1,1", 10),
            ("2,1,1,1,1,1,1,1", 35),
            ("1,1,1,1,1,1,1,1,1", 105),
        ];
        MultiplicityTable::new(p("3,2,1,1,1,1"), e.iter().map(|(k, v)| (p(k), *v)).collect()).unwrap()
    }

    #[test]
    fn label_conversions() {
        assert_eq!(to_orbit_label(&r(&[1, 1, 0, 0, 0, 1, 0])), p("3,2,1,1,1,1"));
        assert_eq!(to_orbit_label(&DynkinLabels::fundamental(3, 6).unwrap()), p("1,1,1"));
        assert_eq!(to_orbit_label(&DynkinLabels::zero(4).unwrap()), Partition::empty());
        assert_eq!(to_dynkin(&p("3,2,1,1,1,1"), 7).unwrap(), r(&[1, 1, 0, 0, 0, 1, 0]));
        assert_eq!(to_dynkin(&p("1,1"), 4).unwrap(), r(&[0, 1, 0, 0]));
        assert_eq!(to_dynkin(&p("2"), 1).unwrap(), r(&[2]));
        assert_eq!(to_dynkin(&p("1,1,1"), 2), Err(WeightError::RankTooSmall { sigma: 3, rank: 2 }));
    }

    #[test]
    fn heights() {
        assert_eq!(height(&p("3,2,1,1,1,1")), 9);
        assert_eq!(height(&Partition::empty()), 0);
        assert_eq!(height(&p("1,1,1")), 3);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_vector(&r(&[1])).coords(), &[rat(1), rat(-1)]);
        assert_eq!(theta_vector(&r(&[0])).coords(), &[ratio(1, 2), ratio(-1, 2)]);
        let expect: Vec<Rational> = [43, 27, 11, 3, -5, -13, -29, -37].iter().map(|&v| ratio(v, 8)).collect();
        assert_eq!(theta_vector(&r(&[1, 1, 0, 0, 0, 1, 0])).coords(), expect.as_slice());
        assert_eq!(theta_power(1, &r(&[3, 0, 2])), rat(0));
        assert_eq!(theta_power(2, &r(&[1, 1, 0, 0, 0, 1, 0])), ratio(639, 8));
        assert_eq!(theta_power(3, &r(&[1])), rat(0));
    }

    #[test]
    fn theta_powers_match_direct_sums() {
        let d = r(&[2, 0, 1, 3]);
        let tv = theta_vector(&d);
        let tp = ThetaPowers::new(&to_orbit_label(&d), 4).with_degrees(8);
        for s in 0..=9 {
            assert_eq!(tp.get(s), tv.power_sum(s));
        }
    }

    #[test]
    fn orbit_dimension_examples() {
        for n in 1..10u32 {
            for k in 1..=n as usize {
                let binom = factorial(n as u64 + 1) / (factorial(k as u64) * factorial(n as u64 + 1 - k as u64));
                assert_eq!(orbit_dimension(&Partition::rectangle(1, k), n), binom);
            }
        }
        assert_eq!(orbit_dimension(&p("3,2,1,1,1,1"), 7), BigUint::from(840u32));
        assert_eq!(orbit_dimension(&Partition::rectangle(1, 9), 7), BigUint::zero());
        assert_eq!(orbit_dimension(&Partition::empty(), 3), BigUint::one());
    }

    #[test]
    fn orbit_polynomial_agrees() {
        for s in 1..=6 {
            for q in enumerate_partitions(s) {
                let poly = orbit_dimension_poly(&q);
                for n in 1..10u32 {
                    assert_eq!(poly.eval_int(n as i64), Rational::from_integer(orbit_dimension(&q, n).into()));
                }
            }
        }
    }

    #[test]
    fn orbit_weight_enumeration() {
        for s in 1..=5 {
            for q in enumerate_partitions(s) {
                for n in 1..6u32 {
                    let w = orbit_weights(&q, n).unwrap();
                    assert_eq!(BigUint::from(w.len()), orbit_dimension(&q, n), "{q} at {n}");
                }
            }
        }
    }

    #[test]
    fn orbit_weight_examples() {
        assert_eq!(orbit_weights(&p("1"), 1).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(orbit_weights(&p("2,1"), 2).unwrap().len(), 6);
        assert_eq!(orbit_weights(&p("1,1"), 3).unwrap().len(), 6);
        assert!(matches!(orbit_weights(&p("1"), 2_000_000), Err(WeightError::OrbitTooLarge(_))));
    }

    #[test]
    fn weyl_dimension_examples() {
        for n in 1..8 {
            assert_eq!(weyl_dimension(&DynkinLabels::fundamental(1, n).unwrap()), BigUint::from(n + 1));
        }
        assert_eq!(weyl_dimension(&r(&[1, 1, 0, 0, 0, 1, 0])), BigUint::from(4200u32));
        assert_eq!(weyl_dimension(&r(&[1, 1])), BigUint::from(8u32));
        assert_eq!(weyl_dimension_of_label(&p("2,1,1"), 2), BigUint::from(3u32));
        assert_eq!(weyl_dimension_of_label(&p("1,1,1,1"), 2), BigUint::zero());
    }

    #[test]
    fn rep_dimension_examples() {
        assert_eq!(rep_dimension(&paper_table(), 7), BigUint::from(4200u32));
        for n in 1..6 {
            assert_eq!(rep_dimension(&MultiplicityTable::single_orbit(p("1")), n), BigUint::from(n + 1));
        }
        assert_eq!(rep_dimension(&MultiplicityTable::single_orbit(Partition::empty()), 3), BigUint::one());
    }

    #[test]
    fn table_validation() {
        let bad = BTreeMap::from([(p("2,1"), 1), (p("3"), 1)]);
        assert!(matches!(MultiplicityTable::new(p("2,1"), bad), Err(WeightError::NotDominated(..))));
        let no_top = BTreeMap::from([(p("1,1,1"), 2)]);
        assert_eq!(MultiplicityTable::new(p("2,1"), no_top), Err(WeightError::TopMultiplicity(0)));
        let doc = paper_table().to_document(8);
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.starts_with(r#"{"top":"3,2,1,1,1,1","rank":8,"multiplicities":{"1,1,1,1,1,1,1,1,1":105,"#));
        let back: TableDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_table().unwrap(), paper_table());
    }

    #[test]
    fn weight_spec_parsing() {
        assert_eq!("q:3,2,1".parse::<WeightSpec>().unwrap(), WeightSpec::Orbit(p("3,2,1")));
        assert_eq!("r:1,0".parse::<WeightSpec>().unwrap(), WeightSpec::Dynkin(r(&[1, 0])));
        assert!("x:1".parse::<WeightSpec>().is_err());
        assert!("r:".parse::<WeightSpec>().is_err());
        assert!("q:1,2".parse::<WeightSpec>().is_err());
    }

    proptest! {
        #[test]
        fn label_round_trip(q in (0u32..=8).prop_flat_map(|h| proptest::sample::select(enumerate_partitions(h))), extra in 0u32..=10) {
            let rank = (q.len() as u32).max(1) + extra;
            prop_assume!(rank <= 10);
            let d = to_dynkin(&q, rank).unwrap();
            prop_assert_eq!(to_orbit_label(&d), q);
            prop_assert_eq!(to_dynkin(&to_orbit_label(&d), d.rank()).unwrap(), d);
        }

        #[test]
        fn theta_invariants(r_vec in proptest::collection::vec(0u32..5, 1..=9)) {
            let d = DynkinLabels::new(r_vec).unwrap();
            let t = theta_vector(&d);
            let n1 = BigInt::from(d.rank() + 1);
            prop_assert_eq!(t.coords().iter().sum::<Rational>(), rat(0));
            for (i, w) in t.coords().windows(2).enumerate() {
                prop_assert_eq!(&w[0] - &w[1], rat(1 + d.labels()[i] as i64));
            }
            for c in t.coords() {
                prop_assert!((&n1 % c.denom()).is_zero());
            }
        }
    }
}
