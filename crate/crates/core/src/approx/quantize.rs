use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::ApproxError;
use crate::exact::Rational;

/// Largest double `≤ q`.
pub fn round_down(q: &Rational) -> f64 {
    let mut r = q.to_f64().expect("finite");
    while Rational::from_float(r).expect("finite") > *q {
        r = r.next_down();
    }
    while Rational::from_float(r.next_up()).is_some_and(|n| n <= *q) {
        r = r.next_up();
    }
    r
}

/// Smallest double `≥ q`.
pub fn round_up(q: &Rational) -> f64 {
    -round_down(&-q.clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantized {
    pub values: Vec<f64>,
    /// `2^{-k}·λ` rounded up.
    pub bound: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Grid index of `v` by the right-closed rule, or `None` when doubles cannot decide it.
fn fast_index(v: f64, lo: f64, h: f64) -> Option<f64> {
    let (d, err) = two_sum(v, -lo);
    if err != 0.0 {
        return None;
    }
    let t = d / h;
    let exact = t.mul_add(h, -d) == 0.0;
    if !exact && (t == t.ceil() || t.next_down().ceil() != t.next_up().ceil()) {
        return None;
    }
    Some(t.ceil().max(1.0))
}

/// `round_down(lo + i·h)` when the product is exact.
fn fast_grid_point(i: f64, lo: f64, h: f64) -> Option<f64> {
    let p = i * h;
    if i.mul_add(h, -p) != 0.0 {
        return None;
    }
    let (m, e) = two_sum(lo, p);
    Some(if e < 0.0 { m.next_down() } else { m })
}

/// Replaces each value `v` by the grid point `μ_i = λ0 + i·2^{-k}·λ` closing
/// the interval `Z_i` containing it, where `Z_1 = [μ_0, μ_1]` and
/// `Z_i = (μ_{i−1}, μ_i]`. Grid points are rounded down to doubles, which
/// keeps every output in `[v, μ_i]` and so within `2^{-k}·λ` of `v`.
pub fn quantize(values: &[f64], range: [f64; 2], k: u32) -> Result<Quantized, ApproxError> {
    let [lo, hi] = range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(ApproxError::Malformed("range must be a finite interval".into()));
    }
    if let Some((i, &v)) = values.iter().enumerate().find(|(_, v)| !(lo <= **v && **v <= hi)) {
        return Err(ApproxError::OutOfRange { level: 0, point: i, value: v });
    }
    if lo == hi {
        return Ok(Quantized { values: vec![lo; values.len()], bound: 0.0 });
    }
    let exact = |x: f64| Rational::from_float(x).expect("finite");
    let scale = Rational::one() / Rational::from_integer(num_bigint::BigInt::one() << k);
    let h_exact = (exact(hi) - exact(lo)) * &scale;
    let bound = round_up(&h_exact);
    let h_fast = (exact(bound) == h_exact).then_some(bound);

    let slow = |v: f64| -> f64 {
        let t = (exact(v) - exact(lo)) / &h_exact;
        let i = t.ceil().max(Rational::one());
        round_down(&(exact(lo) + i * &h_exact))
    };
    let out = values
        .iter()
        .map(|&v| {
            h_fast
                .and_then(|h| fast_index(v, lo, h).and_then(|i| fast_grid_point(i, lo, h)))
                .unwrap_or_else(|| slow(v))
        })
        .collect();
    Ok(Quantized { values: out, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_example() {
        let q = quantize(&[0.0, 0.3, 0.9], [0.0, 1.0], 2).unwrap();
        assert_eq!(q.values, vec![0.25, 0.5, 1.0]);
        assert_eq!(q.bound, 0.25);
    }

    #[test]
    fn grid_points_are_fixed_except_the_left_end() {
        let q = quantize(&[0.5, 0.75, 0.0], [0.0, 1.0], 2).unwrap();
        assert_eq!(q.values, vec![0.5, 0.75, 0.25]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(quantize(&[2.0], [0.0, 1.0], 3), Err(ApproxError::OutOfRange { point: 0, .. })));
        assert!(matches!(quantize(&[f64::NAN], [0.0, 1.0], 3), Err(ApproxError::OutOfRange { .. })));
    }

    #[test]
    fn rounding_helpers() {
        let third = Rational::new(1.into(), 3.into());
        let (d, u) = (round_down(&third), round_up(&third));
        assert_eq!(u, d.next_up());
        assert!(Rational::from_float(d).unwrap() < third && third < Rational::from_float(u).unwrap());
        assert_eq!(round_down(&Rational::from_float(0.1).unwrap()), 0.1);
    }

    #[test]
    fn slow_path_matches_exact_rule() {
        // a non-dyadic width forces the exact path
        let range = [-0.3, 0.7];
        let vals = [-0.3, -0.2, 0.1, 0.7, 0.45];
        let q = quantize(&vals, range, 3).unwrap();
        let ex = |x: f64| Rational::from_float(x).unwrap();
        let h = ex(q.bound);
        for (v, r) in vals.iter().zip(&q.values) {
            let err = ex(*r) - ex(*v);
            assert!(err >= Rational::from_integer(0.into()) && err <= h, "{v} -> {r}");
        }
    }
}
