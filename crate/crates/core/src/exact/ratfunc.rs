use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, PolyN, Rational};

/// Rational function `num(N) / den(N)` in canonical form: monic denominator,
/// numerator and denominator coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncN {
    num: PolyN,
    den: PolyN,
}

impl RatFuncN {
    pub fn new(num: PolyN, den: PolyN) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(PolyN::zero()));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().expect("nonzero").recip();
        Ok(RatFuncN { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn from_poly(p: PolyN) -> Self {
        RatFuncN { num: p, den: PolyN::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolyN::constant(c))
    }

    pub fn num(&self) -> &PolyN {
        &self.num
    }

    pub fn den(&self) -> &PolyN {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<&PolyN> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn eval_int(&self, n: i64) -> Result<Rational, AlgebraError> {
        let d = self.den.eval_int(n);
        if d.is_zero() {
            return Err(AlgebraError::Pole(n));
        }
        Ok(self.num.eval_int(n) / d)
    }

    pub fn mul_poly(&self, p: &PolyN) -> Result<Self, AlgebraError> {
        Self::new(&self.num * p, self.den.clone())
    }
}

impl fmt::Display for RatFuncN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.leading().is_some_and(One::is_one) && self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Default for RatFuncN {
    fn default() -> Self {
        Self::from_poly(PolyN::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn normalizes_common_factors_and_monic_denominator() {
        let num = &PolyN::linear(1) * &PolyN::linear(3);
        let den = &PolyN::linear(1).scale(&rat(2)) * &PolyN::linear(-2);
        let r = RatFuncN::new(num, den).unwrap();
        assert_eq!(r.den(), &PolyN::linear(-2));
        assert_eq!(r.num(), &PolyN::linear(3).scale(&crate::exact::ratio(1, 2)));
        assert!(RatFuncN::new(PolyN::one(), PolyN::zero()).is_err());
    }

    #[test]
    fn poles_are_reported() {
        let r = RatFuncN::new(PolyN::one(), PolyN::linear(-3)).unwrap();
        assert_eq!(r.eval_int(3), Err(AlgebraError::Pole(3)));
        assert_eq!(r.eval_int(4).unwrap(), rat(1));
    }

    #[test]
    fn zero_is_canonical() {
        let z = RatFuncN::new(PolyN::zero(), PolyN::linear(5)).unwrap();
        assert_eq!(z, RatFuncN::default());
        assert!(z.num().is_zero());
    }
}
