use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, rat, AlgebraError, Rational};

/// Univariate polynomial in the rank variable `N` with exact rational
/// coefficients. `coeffs[i]` multiplies `N^i`; the highest stored
/// coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyN {
    coeffs: Vec<Rational>,
}

impl PolyN {
    pub fn zero() -> Self {
        PolyN { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `N`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `N + a`.
    pub fn linear(a: i64) -> Self {
        Self::from_coeffs(vec![rat(a), Rational::one()])
    }

    /// Coefficients in ascending powers of `N`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyN { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Builds a polynomial from `(coefficient, power)` pairs in any order;
    /// repeated powers accumulate.
    pub fn from_terms(terms: &[(i64, usize)]) -> Self {
        let top = terms.iter().map(|&(_, p)| p).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); top + 1];
        for &(c, p) in terms {
            coeffs[p] += rat(c);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a PolyN>) -> Self {
        factors.into_iter().fold(PolyN::one(), |acc, f| &acc * f)
    }

    /// `(N + 1 - start)(N - start) ... ` with `len` factors, i.e. the falling
    /// factorial `(N + 1 - start)_len`.
    pub fn falling_from(start: i64, len: usize) -> Self {
        (0..len as i64).fold(PolyN::one(), |acc, k| &acc * &PolyN::linear(1 - start - k))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        // Horner with an integer abscissa keeps everything in one common
        // denominator pass.
        let x = BigInt::from(n);
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return PolyN::zero();
        }
        PolyN::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => PolyN::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(PolyN::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &PolyN) -> (PolyN, PolyN) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (PolyN::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (PolyN::from_coeffs(quot), PolyN::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &PolyN) -> PolyN {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &PolyN) -> Result<PolyN, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::Shape("inexact polynomial division".into()))
        }
    }

    /// Coefficients as exact decimal strings, ascending powers.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings(coeffs: &[String]) -> Result<Self, AlgebraError> {
        coeffs
            .iter()
            .map(|s| super::parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_coeffs)
    }
}

/// Evaluates `p` at the integer `n`.
pub fn poly_eval(p: &PolyN, n: i64) -> Rational {
    p.eval_int(n)
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && power > 0;
            if !unit {
                write!(f, "{}", format_rational(&mag))?;
            }
            match power {
                0 => {}
                1 if unit => write!(f, "N")?,
                1 => write!(f, "*N")?,
                p if unit => write!(f, "N^{p}")?,
                p => write!(f, "*N^{p}")?,
            }
        }
        Ok(())
    }
}

impl Add<&PolyN> for &PolyN {
    type Output = PolyN;
    fn add(self, rhs: &PolyN) -> PolyN {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        PolyN::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub<&PolyN> for &PolyN {
    type Output = PolyN;
    fn sub(self, rhs: &PolyN) -> PolyN {
        self + &(-rhs)
    }
}

impl Neg for &PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        PolyN { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&PolyN> for &PolyN {
    type Output = PolyN;
    fn mul(self, rhs: &PolyN) -> PolyN {
        if self.is_zero() || rhs.is_zero() {
            return PolyN::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyN::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<PolyN> for PolyN {
            type Output = PolyN;
            fn $m(self, rhs: PolyN) -> PolyN { (&self).$m(&rhs) }
        }
        impl $tr<&PolyN> for PolyN {
            type Output = PolyN;
            fn $m(self, rhs: &PolyN) -> PolyN { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        -&self
    }
}
