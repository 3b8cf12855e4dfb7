use std::fmt;

use num_traits::Zero;

use super::scalar::Scalar;
use super::ExactError;

/// Dense univariate polynomial, lowest degree first, no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    /// `∏ (t - r)` over the given roots (with repetition).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a F>) -> Self {
        roots.into_iter().fold(Self::constant(F::one()), |acc, r| {
            acc.mul(&Self::new(vec![-r.clone(), F::one()]))
        })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), ExactError> {
        let gd = g.degree().ok_or(ExactError::DivisionByZero)?;
        let lead_inv = g.leading().and_then(F::inv).ok_or(ExactError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= gd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - gd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + gd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * gc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(gd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(F::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divmod(&g).expect("gcd is nonzero").0.monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &F) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Self::new(vec![-r.clone(), F::one()]);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.divmod(&lin).expect("linear divisor");
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, Rational};

    type P = Poly<Rational>;

    #[test]
    fn divmod_examples() {
        let (q, r) = P::from_i64s(&[-1, 0, 1]).divmod(&P::from_i64s(&[-1, 1])).unwrap();
        assert_eq!((q, r), (P::from_i64s(&[1, 1]), P::zero()));

        let (q, r) = P::from_i64s(&[1, 0, 1]).divmod(&P::t()).unwrap();
        assert_eq!((q, r), (P::t(), P::from_i64s(&[1])));

        // t^3 = t·(t^2 + 1) - t
        let (q, r) = P::from_i64s(&[0, 0, 0, 1]).divmod(&P::from_i64s(&[1, 0, 1])).unwrap();
        assert_eq!((q, r), (P::t(), P::from_i64s(&[0, -1])));
    }

    #[test]
    fn divmod_by_zero() {
        assert_eq!(P::t().divmod(&P::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = P::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(P::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn squarefree_and_multiplicity() {
        let r = [int(1), int(1), int(1), int(-2)];
        let p = P::from_roots(r.iter());
        assert_eq!(p.squarefree_part(), P::from_roots([int(1), int(-2)].iter()));
        assert_eq!(p.root_multiplicity(&int(1)), 3);
        assert_eq!(p.root_multiplicity(&int(-2)), 1);
        assert_eq!(p.root_multiplicity(&int(5)), 0);
    }
}
