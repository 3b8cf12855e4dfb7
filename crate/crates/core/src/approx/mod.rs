//! Continuous real functions on a tower limit, given by per-level value
//! tables and an oscillation modulus, and their certified approximation by
//! step functions with finitely many values.

mod quantize;

pub use quantize::{quantize, round_down, round_up, Quantized};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::Rational;
use crate::json::{array, field, usize_field, JsonError};
use crate::profinite::{InverseSystem, ProfiniteError, StepFn};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApproxError {
    #[error("malformed function: {0}")]
    Malformed(String),
    #[error("value {value} at level {level}, point {point} is outside the declared range")]
    OutOfRange { level: usize, point: usize, value: f64 },
    #[error("levels {coarse} and {fine} differ by more than the modulus at point {point}")]
    Inconsistent { coarse: usize, fine: usize, point: usize },
    #[error("InsufficientDepth: oscillation at depth {depth} is {osc}, not below {epsilon}")]
    InsufficientDepth { depth: usize, osc: f64, epsilon: f64 },
    #[error("epsilon must be positive and finite")]
    BadEpsilon,
    #[error(transparent)]
    Profinite(#[from] ProfiniteError),
}

/// `(a − b) > bound` decided exactly for finite doubles.
fn exceeds(a: f64, b: f64, bound: f64) -> bool {
    let s = a - b;
    let bb = s - a;
    let err = (a - (s - bb)) + (-b - bb);
    let (s, err) = if s < 0.0 { (-s, -err) } else { (s, err) };
    s > bound || (s == bound && err > 0.0)
}

/// A function `f` on the limit with `|f − values_k ∘ π_k| ≤ osc[k]` at every level `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentedFn {
    depth: usize,
    values: Vec<Vec<f64>>,
    osc: Vec<f64>,
    range: [f64; 2],
}

impl RepresentedFn {
    /// Validates shapes, the range, the modulus, and level consistency at every point of every level.
    pub fn new(sys: &InverseSystem, values: Vec<Vec<f64>>, osc: Vec<f64>, range: [f64; 2]) -> Result<Self, ApproxError> {
        let depth = values.len().checked_sub(1).ok_or_else(|| ApproxError::Malformed("no levels".into()))?;
        sys.check_level(depth)?;
        if osc.len() != values.len() {
            return Err(ApproxError::Malformed("one oscillation value per level is required".into()));
        }
        if !(range[0].is_finite() && range[1].is_finite() && range[0] <= range[1]) {
            return Err(ApproxError::Malformed("range must be a finite interval".into()));
        }
        if osc.iter().any(|o| !o.is_finite() || *o < 0.0) || osc.windows(2).any(|w| w[1] > w[0]) {
            return Err(ApproxError::Malformed("modulus must be finite, nonnegative and nonincreasing".into()));
        }
        for (k, vals) in values.iter().enumerate() {
            if vals.len() != sys.size(k) {
                return Err(ApproxError::Malformed(format!("level {k} needs {} values", sys.size(k))));
            }
            if let Some((z, &v)) = vals.iter().enumerate().find(|(_, v)| !(range[0] <= **v && **v <= range[1])) {
                return Err(ApproxError::OutOfRange { level: k, point: z, value: v });
            }
        }
        for fine in 1..=depth {
            for (z, &v) in values[fine].iter().enumerate() {
                let mut p = z;
                for coarse in (0..fine).rev() {
                    p = sys.transitions()[coarse][p];
                    if exceeds(values[coarse][p], v, osc[coarse]) || exceeds(v, values[coarse][p], osc[coarse]) {
                        return Err(ApproxError::Inconsistent { coarse, fine, point: z });
                    }
                }
            }
        }
        Ok(Self { depth, values, osc, range })
    }

    /// `x ↦ Σ_i x_i 2^{-i}` on the Cantor tower of the given depth: the
    /// level-`k` value of a `k`-bit prefix `z` is `z / 2^k`, within `2^{-k}` of `f`.
    pub fn cantor_binary_value(sys: &InverseSystem) -> Result<Self, ApproxError> {
        let depth = sys.depth();
        if *sys != InverseSystem::cantor(depth) {
            return Err(ApproxError::Malformed("expected the Cantor tower".into()));
        }
        let values = (0..=depth)
            .map(|k| {
                let scale = (-(k as f64)).exp2();
                (0..1usize << k).map(|z| z as f64 * scale).collect()
            })
            .collect();
        let osc = (0..=depth).map(|k| (-(k as f64)).exp2()).collect();
        Self::new(sys, values, osc, [0.0, 1.0])
    }

    pub fn constant(sys: &InverseSystem, depth: usize, c: f64) -> Result<Self, ApproxError> {
        let values = (0..=depth).map(|k| vec![c; sys.size(k)]).collect();
        Self::new(sys, values, vec![0.0; depth + 1], [c, c])
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self, level: usize) -> &[f64] {
        &self.values[level]
    }

    pub fn osc(&self) -> &[f64] {
        &self.osc
    }

    pub fn range(&self) -> [f64; 2] {
        self.range
    }

    pub fn to_json(&self) -> Value {
        json!({"depth": self.depth, "values": self.values, "osc": self.osc, "range": self.range})
    }

    pub fn from_json(sys: &InverseSystem, v: &Value) -> Result<Self, JsonError> {
        let floats = |v: &Value, what: &str| -> Result<Vec<f64>, JsonError> {
            array(v, what)?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| JsonError::Schema(format!("{what} must hold numbers"))))
                .collect()
        };
        let depth = usize_field(v, "depth")?;
        let values = array(field(v, "values")?, "values")?
            .iter()
            .map(|l| floats(l, "level values"))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != depth + 1 {
            return Err(JsonError::Schema(format!("depth {depth} needs {} value tables", depth + 1)));
        }
        let osc = floats(field(v, "osc")?, "osc")?;
        let range = floats(field(v, "range")?, "range")?;
        let range: [f64; 2] = range.try_into().map_err(|_| JsonError::Schema("range must have two entries".into()))?;
        Self::new(sys, values, osc, range).map_err(|e| JsonError::Schema(e.to_string()))
    }
}

/// `[lo, hi]` containing the sup norm of `f`.
pub fn sup_norm_bounds(f: &RepresentedFn) -> [f64; 2] {
    let m = f.values[f.depth].iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let o = f.osc[f.depth];
    [(m - o).max(0.0), m + o]
}

/// A step function within `bound` of `f` everywhere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCert {
    pub epsilon: f64,
    pub level: usize,
    /// Oscillation at `level`.
    pub osc: f64,
    /// Grid exponent of the quantization, if one was applied.
    pub grid: Option<u32>,
    /// Upper bound on the quantization error.
    pub quantization_bound: f64,
    pub bound: f64,
    pub distinct_values: usize,
    #[serde(skip)]
    pub step: StepFn<f64>,
}

fn check_epsilon(epsilon: f64) -> Result<(), ApproxError> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(ApproxError::BadEpsilon)
    }
}

fn least_level(f: &RepresentedFn, target: f64) -> Result<usize, ApproxError> {
    f.osc.iter().position(|&o| o < target).ok_or(ApproxError::InsufficientDepth {
        depth: f.depth,
        osc: f.osc[f.depth],
        epsilon: target,
    })
}

fn distinct(values: &[f64]) -> usize {
    let mut v: Vec<u64> = values.iter().map(|x| x.to_bits()).collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// The table at the least level whose oscillation is below `ε`.
pub fn step_approximate(sys: &InverseSystem, f: &RepresentedFn, epsilon: f64) -> Result<DensityCert, ApproxError> {
    check_epsilon(epsilon)?;
    let level = least_level(f, epsilon)?;
    let values = f.values[level].clone();
    Ok(DensityCert {
        epsilon,
        level,
        osc: f.osc[level],
        grid: None,
        quantization_bound: 0.0,
        bound: f.osc[level],
        distinct_values: distinct(&values),
        step: StepFn::new(sys, level, values)?,
    })
}

/// Level chosen at `ε/2`, values snapped to the least dyadic grid of mesh
/// below `ε/2`; the bound is the exact sum of both errors rounded up.
pub fn density_certificate(sys: &InverseSystem, f: &RepresentedFn, epsilon: f64) -> Result<DensityCert, ApproxError> {
    check_epsilon(epsilon)?;
    let half = epsilon / 2.0;
    let level = least_level(f, half)?;
    let exact = |x: f64| Rational::from_float(x).expect("finite");
    let width = exact(f.range[1]) - exact(f.range[0]);
    let half_exact = exact(half);
    let mut grid = 0u32;
    let mut mesh = width.clone();
    while mesh >= half_exact {
        grid += 1;
        mesh /= Rational::from_integer(2.into());
    }
    loop {
        let q = quantize(&f.values[level], f.range, grid).expect("values were range-checked");
        let bound = round_up(&(exact(f.osc[level]) + exact(q.bound)));
        if bound < epsilon {
            return Ok(DensityCert {
                epsilon,
                level,
                osc: f.osc[level],
                grid: Some(grid),
                quantization_bound: q.bound,
                bound,
                distinct_values: distinct(&q.values),
                step: StepFn::new(sys, level, q.values)?,
            });
        }
        // rounding the exact sum up reached ε; a finer grid leaves room
        grid += 1;
        if grid > 1100 {
            return Err(ApproxError::BadEpsilon);
        }
    }
}
