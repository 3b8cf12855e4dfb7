use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{ClopenSet, InverseSystem, ProfiniteError};

/// A function on the limit that factors through level `level`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFn<T> {
    level: usize,
    values: Vec<T>,
}

impl<T: Clone> StepFn<T> {
    pub fn new(sys: &InverseSystem, level: usize, values: Vec<T>) -> Result<Self, ProfiniteError> {
        sys.check_level(level)?;
        if values.len() != sys.size(level) {
            return Err(ProfiniteError::Malformed(format!(
                "level {level} has {} points, got {} values",
                sys.size(level),
                values.len()
            )));
        }
        Ok(Self { level, values })
    }

    pub fn constant(sys: &InverseSystem, c: T) -> Self {
        Self { level: 0, values: vec![c; sys.size(0)] }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value on the cylinder of point `z` at level `k ≥ self.level`.
    pub fn value_at(&self, sys: &InverseSystem, k: usize, z: usize) -> &T {
        &self.values[sys.project(z, k, self.level)]
    }

    /// The same function read through a deeper level.
    pub fn lift(&self, sys: &InverseSystem, to: usize) -> Result<Self, ProfiniteError> {
        sys.check_level(to)?;
        if to < self.level {
            return Err(ProfiniteError::LevelOutOfRange { level: to, depth: sys.depth() });
        }
        let values = (0..sys.size(to)).map(|z| self.value_at(sys, to, z).clone()).collect();
        Ok(Self { level: to, values })
    }

    fn zip_with(&self, other: &Self, sys: &InverseSystem, op: impl Fn(&T, &T) -> T) -> Self {
        let k = self.level.max(other.level);
        let values = (0..sys.size(k)).map(|z| op(self.value_at(sys, k, z), other.value_at(sys, k, z))).collect();
        Self { level: k, values }
    }
}

impl<T: Clone + PartialEq> StepFn<T> {
    /// Equality as functions on the limit, across levels.
    pub fn same_function(&self, other: &Self, sys: &InverseSystem) -> bool {
        let k = self.level.max(other.level);
        (0..sys.size(k)).all(|z| self.value_at(sys, k, z) == other.value_at(sys, k, z))
    }
}

impl<T: Clone + Add<Output = T>> StepFn<T> {
    pub fn add(&self, other: &Self, sys: &InverseSystem) -> Self {
        self.zip_with(other, sys, |a, b| a.clone() + b.clone())
    }
}

impl<T: Clone + Mul<Output = T>> StepFn<T> {
    pub fn mul(&self, other: &Self, sys: &InverseSystem) -> Self {
        self.zip_with(other, sys, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { level: self.level, values: self.values.iter().map(|v| c.clone() * v.clone()).collect() }
    }
}

impl<T: Clone + Zero + One> StepFn<T> {
    /// `1_c`, the 0/1 function of a clopen set at its canonical level.
    pub fn indicator(sys: &InverseSystem, c: &ClopenSet) -> Self {
        let values =
            (0..sys.size(c.level())).map(|z| if c.members().contains(&z) { T::one() } else { T::zero() }).collect();
        Self { level: c.level(), values }
    }
}

impl<T: Clone + Zero + One + PartialEq> StepFn<T> {
    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|v| v.clone() * v.clone() == *v)
    }

    /// The clopen set `{f = 1}` when this function is an indicator.
    pub fn as_indicator(&self, sys: &InverseSystem) -> Option<ClopenSet> {
        if !self.values.iter().all(|v| v.is_zero() || v.is_one()) {
            return None;
        }
        let members = self.values.iter().enumerate().filter(|(_, v)| v.is_one()).map(|(z, _)| z);
        ClopenSet::new(sys, self.level, members).ok()
    }
}

/// `s = Σ λ_i · 1_{e_i}` with distinct `λ_i` in order of first appearance
/// and pairwise-disjoint `e_i` covering the limit.
pub fn step_decompose<T: Clone + PartialEq>(sys: &InverseSystem, s: &StepFn<T>) -> Vec<(T, ClopenSet)> {
    let mut groups: Vec<(T, Vec<usize>)> = Vec::new();
    for (z, v) in s.values.iter().enumerate() {
        match groups.iter_mut().find(|(w, _)| w == v) {
            Some((_, members)) => members.push(z),
            None => groups.push((v.clone(), vec![z])),
        }
    }
    groups
        .into_iter()
        .map(|(v, members)| (v, ClopenSet::new(sys, s.level, members).expect("indices come from the level")))
        .collect()
}
