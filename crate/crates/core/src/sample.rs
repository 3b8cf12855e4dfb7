//! Seeded random generators for exact test data.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{Matrix, Rational, Scalar};

/// The generator used for every seeded run.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ num_bound` and `1 ≤ q ≤ den_bound`.
pub fn rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound.max(1));
    Rational::new(p.into(), q.into())
}

/// A random scalar; Gaussian fields also get a random imaginary part.
pub fn scalar<F: Scalar, R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> F {
    let re = rational(rng, num_bound, den_bound);
    let im = rational(rng, num_bound, den_bound);
    F::from_parts(re.clone(), im).or_else(|| F::from_parts(re, Rational::zero())).expect("real parts embed")
}

pub fn vector<F: Scalar, R: Rng>(rng: &mut R, n: usize, num_bound: i64, den_bound: i64) -> Vec<F> {
    (0..n).map(|_| scalar(rng, num_bound, den_bound)).collect()
}

/// Small-integer invertible matrix, redrawn until invertible.
pub fn invertible_matrix<F: Scalar, R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<F> {
    loop {
        let entries: Vec<F> = (0..n * n).map(|_| scalar(rng, bound, 1)).collect();
        let m = Matrix::from_fn(n, n, |r, c| entries[r * n + c].clone());
        if m.is_invertible() {
            return m;
        }
    }
}

/// A uniformly random function `{0..n} → {0..m}`; `m` must be positive when `n` is.
pub fn assignment<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

/// Every function `{0..n} → {0..m}` in lexicographic order.
pub fn all_assignments(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 { 1 } else { m.checked_pow(n as u32).unwrap_or(0) };
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = code % m;
            code /= m;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_counts() {
        assert_eq!(all_assignments(3, 2).count(), 8);
        assert_eq!(all_assignments(0, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(all_assignments(2, 0).count(), 0);
        assert_eq!(all_assignments(2, 3).nth(5), Some(vec![1, 2]));
    }
}
