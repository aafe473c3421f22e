use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, AlgebraError> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(AlgebraError::Shape(format!("row {bad} does not have {cols} entries")));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) -> Result<(), AlgebraError> {
        if row.len() != self.cols {
            return Err(AlgebraError::Shape(format!("expected {} entries, got {}", self.cols, row.len())));
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub solution: Vec<Rational>,
    pub rank: usize,
    pub nullity: usize,
}

/// Fraction-free row echelon form of an augmented system `[A | b]`.
///
/// Rows are cleared to integers first; elimination then uses Bareiss'
/// one-step division so every intermediate entry is an integer minor.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    cols: usize,
    // Echelon rows, each `cols + 1` integers long.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    consistent: bool,
}

impl EchelonForm {
    pub fn new(a: &ExactMatrix, b: &[Rational]) -> Result<Self, AlgebraError> {
        if a.rows() != b.len() {
            return Err(AlgebraError::Shape(format!("{} rows but {} right-hand sides", a.rows(), b.len())));
        }
        let n = a.cols();
        let mut m: Vec<Vec<BigInt>> = (0..a.rows())
            .map(|r| integer_row(a.row(r).iter().chain(std::iter::once(&b[r]))))
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut consistent = true;
        let mut r = 0;
        for c in 0..=n {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            if c == n {
                consistent = false;
                break;
            }
            m.swap(p, r);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..=n {
                    let num = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Ok(EchelonForm { cols: n, rows: m, pivots, consistent })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// For each unknown, its value if the (consistent) system pins it down
    /// uniquely, else `None`. Returns all `None` for inconsistent systems.
    pub fn determined_values(&self) -> Vec<Option<Rational>> {
        let n = self.cols;
        if !self.consistent {
            return vec![None; n];
        }
        // Reduced row echelon form over the rationals.
        let mut rref: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let inv = Rational::from_integer(row[p].clone()).recip();
                row.iter().map(|v| Rational::from_integer(v.clone()) * &inv).collect()
            })
            .collect();
        for i in (0..rref.len()).rev() {
            let p = self.pivots[i];
            let (above, rest) = rref.split_at_mut(i);
            let pr = &rest[0];
            for row in above.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..=n {
                    let d = &f * &pr[j];
                    row[j] -= d;
                }
            }
        }
        let mut out = vec![None; n];
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        for (row, &p) in rref.iter().zip(&self.pivots) {
            if free.iter().all(|&f| row[f].is_zero()) {
                out[p] = Some(row[n].clone());
            }
        }
        out
    }

    /// The unique solution, if there is one.
    pub fn unique_solution(&self) -> Result<Vec<Rational>, AlgebraError> {
        if !self.consistent {
            return Err(AlgebraError::Inconsistent { rank: self.rank() });
        }
        if self.nullity() > 0 {
            return Err(AlgebraError::Underdetermined { rank: self.rank(), nullity: self.nullity() });
        }
        let n = self.cols;
        let mut x = vec![Rational::zero(); n];
        for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
            let mut acc = Rational::from_integer(row[n].clone());
            for j in p + 1..n {
                if !row[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = acc / Rational::from_integer(row[p].clone());
        }
        Ok(x)
    }
}

fn integer_row<'a>(entries: impl Iterator<Item = &'a Rational> + Clone) -> Vec<BigInt> {
    let lcm = entries.clone().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    entries.map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Solves `a x = b` exactly. Inconsistent systems and systems with a
/// nontrivial kernel are errors that carry the rank (and nullity).
pub fn solve_linear_exact(a: &ExactMatrix, b: &[Rational]) -> Result<LinearSolution, AlgebraError> {
    let ech = EchelonForm::new(a, b)?;
    let solution = ech.unique_solution()?;
    Ok(LinearSolution { solution, rank: ech.rank(), nullity: ech.nullity() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows[0].len();
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn small_examples() {
        let s = solve_linear_exact(&ExactMatrix::identity(2), &[rat(1), rat(4)]).unwrap();
        assert_eq!(s.solution, vec![rat(1), rat(4)]);
        assert_eq!((s.rank, s.nullity), (2, 0));
        let s = solve_linear_exact(&m(&[&[1, 0], &[0, 2]]), &[rat(1), rat(4)]).unwrap();
        assert_eq!(s.solution, vec![rat(1), rat(2)]);
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear_exact(&a, &[rat(1), rat(3)]), Err(AlgebraError::Inconsistent { rank: 1 }));
        assert_eq!(
            solve_linear_exact(&a, &[rat(1), rat(2)]),
            Err(AlgebraError::Underdetermined { rank: 1, nullity: 1 })
        );
    }

    #[test]
    fn overdetermined_consistent() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        let x = [ratio(1, 3), ratio(-2, 7)];
        let b = a.mul_vec(&x);
        assert_eq!(solve_linear_exact(&a, &b).unwrap().solution, x.to_vec());
    }

    #[test]
    fn partially_determined_unknowns() {
        // x0 = 3, x1 + x2 = 1
        let a = m(&[&[1, 0, 0], &[0, 1, 1]]);
        let e = EchelonForm::new(&a, &[rat(3), rat(1)]).unwrap();
        assert_eq!(e.determined_values(), vec![Some(rat(3)), None, None]);
    }

    #[test]
    fn zero_column_skipped() {
        let a = m(&[&[0, 1, 2], &[0, 2, 5]]);
        let e = EchelonForm::new(&a, &[rat(1), rat(3)]).unwrap();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.determined_values(), vec![None, Some(rat(-1)), Some(rat(1))]);
    }

    fn rational_entry() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..=i64::MAX).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn recovers_solution_of_nonsingular_systems(
            n in 1usize..=12,
            seed in proptest::collection::vec(rational_entry(), 12 * 12 + 12),
        ) {
            let mut a = ExactMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, seed[i * 12 + j].clone());
                }
            }
            let x: Vec<Rational> = seed[144..144 + n].to_vec();
            let b = a.mul_vec(&x);
            match solve_linear_exact(&a, &b) {
                Ok(s) => prop_assert_eq!(s.solution, x),
                // Random matrices are singular with probability ~0; skip if so.
                Err(AlgebraError::Underdetermined { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
