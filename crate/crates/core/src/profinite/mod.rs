//! Towers of finite discrete sets and their limits: cylinders, the clopen
//! boolean algebra, step functions and refinement of clopen coverings.
//!
//! A tower `X_0 ← X_1 ← … ← X_N` is stored level by level. Transitions are
//! required to be surjective, so every point of every level is the image of
//! some point of the limit and a clopen set has a unique minimal level.

mod step;

pub use step::{step_decompose, StepFn};

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{array, field, usize_field, JsonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfiniteError {
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("transition into level {0} is not surjective")]
    NotSurjective(usize),
    #[error("level {level} outside 0..={depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("point {point} outside level {level}")]
    PointOutOfRange { level: usize, point: usize },
    #[error("cylinder {witness} is not covered")]
    NotACovering { witness: Cylinder },
    #[error("the two cylinders are not disjoint")]
    NotDistinct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystem {
    sizes: Vec<usize>,
    /// `transitions[k - 1][z]` is the image in level `k - 1` of point `z` of level `k`.
    transitions: Vec<Vec<usize>>,
}

impl InverseSystem {
    pub fn new(sizes: Vec<usize>, transitions: Vec<Vec<usize>>) -> Result<Self, ProfiniteError> {
        if sizes.is_empty() {
            return Err(ProfiniteError::Malformed("at least one level is required".into()));
        }
        if transitions.len() + 1 != sizes.len() {
            return Err(ProfiniteError::Malformed(format!(
                "{} levels need {} transitions",
                sizes.len(),
                sizes.len() - 1
            )));
        }
        for (i, t) in transitions.iter().enumerate() {
            let k = i + 1;
            if t.len() != sizes[k] {
                return Err(ProfiniteError::Malformed(format!("transition from level {k} has the wrong length")));
            }
            if let Some(&p) = t.iter().find(|&&p| p >= sizes[k - 1]) {
                return Err(ProfiniteError::PointOutOfRange { level: k - 1, point: p });
            }
            if t.iter().collect::<BTreeSet<_>>().len() != sizes[k - 1] {
                return Err(ProfiniteError::NotSurjective(k - 1));
            }
        }
        Ok(Self { sizes, transitions })
    }

    /// Binary strings of length `k` at level `k`, truncating the last bit going down.
    pub fn cantor(depth: usize) -> Self {
        let sizes: Vec<usize> = (0..=depth).map(|k| 1 << k).collect();
        let transitions = (1..=depth).map(|k| (0..1usize << k).map(|z| z >> 1).collect()).collect();
        Self { sizes, transitions }
    }

    /// A random tower with `levels` levels, one root, and 1 to `fanout` children per point.
    pub fn random<R: Rng>(rng: &mut R, levels: usize, fanout: usize) -> Self {
        let mut sizes = vec![1];
        let mut transitions = Vec::new();
        for _ in 1..levels.max(1) {
            let parent_count = *sizes.last().expect("nonempty");
            let t: Vec<usize> = (0..parent_count).flat_map(|p| vec![p; rng.gen_range(1..=fanout.max(1))]).collect();
            sizes.push(t.len());
            transitions.push(t);
        }
        Self { sizes, transitions }
    }

    /// Index of the deepest level, which stands in for the limit.
    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn check_level(&self, level: usize) -> Result<(), ProfiniteError> {
        if level > self.depth() {
            return Err(ProfiniteError::LevelOutOfRange { level, depth: self.depth() });
        }
        Ok(())
    }

    /// Image of point `z` of level `from` in level `to ≤ from`.
    pub fn project(&self, mut z: usize, from: usize, to: usize) -> usize {
        for k in (to + 1..=from).rev() {
            z = self.transitions[k - 1][z];
        }
        z
    }

    /// Preimage of a subset of level `from` in level `to ≥ from`.
    pub fn lift(&self, set: &BTreeSet<usize>, from: usize, to: usize) -> BTreeSet<usize> {
        (0..self.sizes[to]).filter(|&z| set.contains(&self.project(z, to, from))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"levels": self.sizes, "transitions": self.transitions})
    }

    pub fn from_json(v: &Value) -> Result<Self, JsonError> {
        let nums = |v: &Value, what: &str| -> Result<Vec<usize>, JsonError> {
            array(v, what)?
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| JsonError::Schema(format!("{what} must hold indices"))))
                .collect()
        };
        let sizes = nums(field(v, "levels")?, "levels")?;
        let transitions = array(field(v, "transitions")?, "transitions")?
            .iter()
            .map(|t| nums(t, "transition"))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sizes, transitions).map_err(|e| JsonError::Schema(e.to_string()))
    }
}

/// The basic clopen set of limit points passing through `point` at `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cylinder {
    pub level: usize,
    pub point: usize,
}

impl std::fmt::Display for Cylinder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{}", self.point, self.level)
    }
}

impl Cylinder {
    pub fn new(sys: &InverseSystem, level: usize, point: usize) -> Result<Self, ProfiniteError> {
        sys.check_level(level)?;
        if point >= sys.size(level) {
            return Err(ProfiniteError::PointOutOfRange { level, point });
        }
        Ok(Self { level, point })
    }
}

/// A clopen subset of the limit in canonical form: `members` is not a
/// union of fibers of the transition below `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClopenSet {
    level: usize,
    members: BTreeSet<usize>,
}

impl ClopenSet {
    pub fn new(sys: &InverseSystem, level: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, ProfiniteError> {
        sys.check_level(level)?;
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&p) = members.iter().find(|&&p| p >= sys.size(level)) {
            return Err(ProfiniteError::PointOutOfRange { level, point: p });
        }
        Ok(Self::canonical(sys, level, members))
    }

    pub fn empty() -> Self {
        Self { level: 0, members: BTreeSet::new() }
    }

    pub fn full(sys: &InverseSystem) -> Self {
        Self { level: 0, members: (0..sys.size(0)).collect() }
    }

    pub fn cylinder(sys: &InverseSystem, c: Cylinder) -> Self {
        Self::canonical(sys, c.level, BTreeSet::from([c.point]))
    }

    fn canonical(sys: &InverseSystem, mut level: usize, mut members: BTreeSet<usize>) -> Self {
        while level > 0 {
            let t = &sys.transitions[level - 1];
            let image: BTreeSet<usize> = members.iter().map(|&z| t[z]).collect();
            let saturated = t.iter().enumerate().all(|(z, p)| members.contains(&z) == image.contains(p));
            if !saturated {
                break;
            }
            members = image;
            level -= 1;
        }
        Self { level, members }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self, sys: &InverseSystem) -> bool {
        self.members.len() == sys.size(self.level)
    }

    /// The same set as a subset of a deeper level.
    pub fn pullback(&self, sys: &InverseSystem, to_level: usize) -> Result<BTreeSet<usize>, ProfiniteError> {
        sys.check_level(to_level)?;
        if to_level < self.level {
            return Err(ProfiniteError::LevelOutOfRange { level: to_level, depth: sys.depth() });
        }
        Ok(sys.lift(&self.members, self.level, to_level))
    }

    pub fn contains(&self, sys: &InverseSystem, c: Cylinder) -> bool {
        if c.level >= self.level {
            self.members.contains(&sys.project(c.point, c.level, self.level))
        } else {
            sys.lift(&BTreeSet::from([c.point]), c.level, self.level).is_subset(&self.members)
        }
    }

    fn combine(&self, other: &Self, sys: &InverseSystem, op: impl Fn(bool, bool) -> bool) -> Self {
        let k = self.level.max(other.level);
        let a = sys.lift(&self.members, self.level, k);
        let b = sys.lift(&other.members, other.level, k);
        let members = (0..sys.size(k)).filter(|z| op(a.contains(z), b.contains(z))).collect();
        Self::canonical(sys, k, members)
    }

    pub fn union(&self, other: &Self, sys: &InverseSystem) -> Self {
        self.combine(other, sys, |x, y| x || y)
    }

    pub fn intersect(&self, other: &Self, sys: &InverseSystem) -> Self {
        self.combine(other, sys, |x, y| x && y)
    }

    pub fn symmetric_difference(&self, other: &Self, sys: &InverseSystem) -> Self {
        self.combine(other, sys, |x, y| x != y)
    }

    pub fn complement(&self, sys: &InverseSystem) -> Self {
        let members = (0..sys.size(self.level)).filter(|z| !self.members.contains(z)).collect();
        Self::canonical(sys, self.level, members)
    }

    pub fn to_json(&self) -> Value {
        json!({"level": self.level, "members": self.members})
    }

    pub fn from_json(sys: &InverseSystem, v: &Value) -> Result<Self, JsonError> {
        let level = usize_field(v, "level")?;
        let members = array(field(v, "members")?, "members")?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| JsonError::Schema("members must be indices".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sys, level, members).map_err(|e| JsonError::Schema(e.to_string()))
    }
}

/// The covering of the limit induced by the level map to `X_{k0}`: every
/// point of level `k0` is sent to a part containing its cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementCert {
    pub k0: usize,
    pub rho: Vec<usize>,
}

impl RefinementCert {
    /// Rechecks containment of every level-`k0` cylinder in its assigned part.
    pub fn validate(&self, sys: &InverseSystem, cover: &[ClopenSet]) -> bool {
        if self.k0 > sys.depth() || self.rho.len() != sys.size(self.k0) {
            return false;
        }
        self.rho.iter().enumerate().all(|(z, &i)| {
            i < cover.len()
                && cover[i].level <= self.k0
                && cover[i].pullback(sys, self.k0).map(|s| s.contains(&z)).unwrap_or(false)
        })
    }

    /// The refining covering: the cylinders of level `k0`, pairwise disjoint and clopen.
    pub fn induced_covering(&self, sys: &InverseSystem) -> Vec<ClopenSet> {
        (0..sys.size(self.k0)).map(|z| ClopenSet::cylinder(sys, Cylinder { level: self.k0, point: z })).collect()
    }
}

/// Refines a clopen covering by the cylinders of the deepest level used by
/// its parts. A tower is linearly ordered, so that level dominates every part.
pub fn refine_covering(sys: &InverseSystem, cover: &[ClopenSet]) -> Result<RefinementCert, ProfiniteError> {
    let k0 = cover.iter().map(ClopenSet::level).max().unwrap_or(0);
    let lifted = cover.iter().map(|c| c.pullback(sys, k0)).collect::<Result<Vec<_>, _>>()?;
    let rho = (0..sys.size(k0))
        .map(|z| {
            lifted
                .iter()
                .position(|s| s.contains(&z))
                .ok_or(ProfiniteError::NotACovering { witness: Cylinder { level: k0, point: z } })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RefinementCert { k0, rho })
}

/// An idempotent equal to 1 on the cylinder `x` and 0 on the cylinder `y`.
pub fn separating_idempotent<T: num_traits::Zero + num_traits::One + Clone>(
    sys: &InverseSystem,
    x: Cylinder,
    y: Cylinder,
) -> Result<StepFn<T>, ProfiniteError> {
    Cylinder::new(sys, x.level, x.point)?;
    Cylinder::new(sys, y.level, y.point)?;
    let k = x.level.min(y.level);
    if sys.project(x.point, x.level, k) == sys.project(y.point, y.level, k) {
        return Err(ProfiniteError::NotDistinct);
    }
    Ok(StepFn::indicator(sys, &ClopenSet::cylinder(sys, x)))
}
