//! Exact root extraction over the rationals and the Gaussian rationals by
//! divisor enumeration (the rational root theorem over `Z` and over `Z[i]`).

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::scalar::{lcm_of_denominators, GaussianRational, Rational, Scalar};
use super::ExactError;

/// Largest integer (or Gaussian norm) that divisor enumeration will factor.
pub const DEFAULT_NORM_CAP: u64 = 1_000_000_000_000;

/// Distinct rational roots of `f`, sorted ascending.
pub fn rational_roots(f: &Poly<Rational>) -> Result<Vec<Rational>, ExactError> {
    rational_roots_capped(f, DEFAULT_NORM_CAP)
}

pub fn rational_roots_capped(f: &Poly<Rational>, norm_cap: u64) -> Result<Vec<Rational>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut g = f.squarefree_part();
    let mut roots = Vec::new();
    if g.degree() > Some(0) && g.coeff(0).is_zero() {
        roots.push(Rational::zero());
        g = g.divmod(&Poly::t())?.0;
    }
    if g.degree() > Some(0) {
        let ints = integer_coefficients(&g);
        let a0 = capped_u64(ints[0].abs(), norm_cap)?;
        let an = capped_u64(ints[ints.len() - 1].abs(), norm_cap)?;
        let (ps, qs) = (divisors(a0), divisors(an));
        for &q in &qs {
            for &p in &ps {
                if p.gcd(&q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let p = BigInt::from(p) * sign;
                    if homogeneous_eval(&ints, &p, &BigInt::from(q)).is_zero() {
                        roots.push(Rational::new(p, BigInt::from(q)));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Distinct Gaussian-rational roots of `f`, in a deterministic order.
pub fn gaussian_rational_roots(f: &Poly<GaussianRational>) -> Result<Vec<GaussianRational>, ExactError> {
    gaussian_rational_roots_capped(f, DEFAULT_NORM_CAP)
}

pub fn gaussian_rational_roots_capped(
    f: &Poly<GaussianRational>,
    norm_cap: u64,
) -> Result<Vec<GaussianRational>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut g = f.squarefree_part();
    let mut roots = Vec::new();
    if g.degree() > Some(0) && g.coeff(0).is_zero() {
        roots.push(GaussianRational::zero());
        g = g.divmod(&Poly::t())?.0;
    }
    if g.degree() > Some(0) {
        let ints = gaussian_integer_coefficients(&g);
        let a0 = GaussInt::from_big(&ints[0], norm_cap)?;
        let an = GaussInt::from_big(&ints[ints.len() - 1], norm_cap)?;
        let (ps, qs) = (gaussian_divisors(a0), gaussian_divisors(an));
        let mut seen = HashSet::new();
        for q in &qs {
            for p in &ps {
                for unit in GaussInt::UNITS {
                    let cand = p.mul(unit).ratio(q);
                    if seen.insert(cand.clone()) && g.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    roots.dedup();
    Ok(roots)
}

/// Each distinct root paired with its multiplicity; the multiplicities sum
/// to the degree exactly when `f` splits into linear factors.
pub fn root_multiplicities<F: Scalar>(f: &Poly<F>, norm_cap: u64) -> Result<Vec<(F, usize)>, ExactError> {
    Ok(F::field_roots(f, norm_cap)?
        .into_iter()
        .map(|r| {
            let m = f.root_multiplicity(&r);
            (r, m)
        })
        .collect())
}

fn capped_u64(n: BigInt, cap: u64) -> Result<u64, ExactError> {
    match n.to_u64() {
        Some(v) if v <= cap => Ok(v),
        _ => Err(ExactError::NormCapExceeded { value: n.to_string(), cap }),
    }
}

/// Scales by the common denominator and divides out the content.
fn integer_coefficients(p: &Poly<Rational>) -> Vec<BigInt> {
    let l = lcm_of_denominators(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn gaussian_integer_coefficients(p: &Poly<GaussianRational>) -> Vec<(BigInt, BigInt)> {
    let l = lcm_of_denominators(p.coeffs().iter().flat_map(|c| [&c.re, &c.im]));
    let lr = Rational::from_integer(l);
    let ints: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| ((&c.re * &lr).to_integer(), (&c.im * &lr).to_integer()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, (a, b)| acc.gcd(a).gcd(b));
    ints.into_iter()
        .map(|(a, b)| (a / &content, b / &content))
        .collect()
}

/// `Σ a_i p^i q^(n-i)`, zero iff `p/q` is a root.
fn homogeneous_eval(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = a.len() - 1;
    let mut acc = BigInt::zero();
    let mut ppow = BigInt::one();
    let qpows: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * q))
        .take(n + 1)
        .collect();
    for (i, c) in a.iter().enumerate() {
        acc += c * &ppow * &qpows[n - i];
        ppow *= p;
    }
    acc
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n` (`n = 0` yields no divisors).
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct GaussInt {
    re: i128,
    im: i128,
}

impl GaussInt {
    const UNITS: [GaussInt; 4] = [
        GaussInt { re: 1, im: 0 },
        GaussInt { re: 0, im: 1 },
        GaussInt { re: -1, im: 0 },
        GaussInt { re: 0, im: -1 },
    ];

    fn new(re: i128, im: i128) -> Self {
        Self { re, im }
    }

    fn from_big((re, im): &(BigInt, BigInt), cap: u64) -> Result<Self, ExactError> {
        let norm = re * re + im * im;
        capped_u64(norm, cap)?;
        Ok(Self::new(re.to_i128().unwrap(), im.to_i128().unwrap()))
    }

    fn norm(self) -> i128 {
        self.re * self.re + self.im * self.im
    }

    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    /// Exact quotient when `d` divides `self`.
    fn div_exact(self, d: Self) -> Option<Self> {
        let n = d.norm();
        let num = self.mul(Self::new(d.re, -d.im));
        (num.re % n == 0 && num.im % n == 0).then(|| Self::new(num.re / n, num.im / n))
    }

    fn ratio(self, d: &Self) -> GaussianRational {
        let n = BigInt::from(d.norm());
        let num = self.mul(Self::new(d.re, -d.im));
        GaussianRational::new(
            Rational::new(BigInt::from(num.re), n.clone()),
            Rational::new(BigInt::from(num.im), n),
        )
    }
}

/// Gaussian primes lying over the rational prime `p`, up to units.
fn gaussian_primes_over(p: u64) -> Vec<GaussInt> {
    let p = p as i128;
    if p == 2 {
        return vec![GaussInt::new(1, 1)];
    }
    if p % 4 == 3 {
        return vec![GaussInt::new(p, 0)];
    }
    let mut a = 1i128;
    loop {
        let b2 = p - a * a;
        let b = (b2 as f64).sqrt().round() as i128;
        if let Some(b) = [b - 1, b, b + 1].into_iter().find(|b| *b >= 0 && b * b == b2) {
            return vec![GaussInt::new(a, b), GaussInt::new(a, -b)];
        }
        a += 1;
    }
}

/// Divisors of a nonzero Gaussian integer, one representative per associate class.
fn gaussian_divisors(g: GaussInt) -> Vec<GaussInt> {
    let n = g.norm() as u64;
    let mut divs = vec![GaussInt::new(1, 0)];
    for (p, _) in factorize(n) {
        for pi in gaussian_primes_over(p) {
            let mut rest = g;
            let mut e = 0;
            while let Some(q) = rest.div_exact(pi) {
                rest = q;
                e += 1;
            }
            let current = divs.clone();
            let mut pk = GaussInt::new(1, 0);
            for _ in 0..e {
                pk = pk.mul(pi);
                divs.extend(current.iter().map(|d| d.mul(pk)));
            }
        }
    }
    divs
}
