use std::collections::{BTreeSet, HashSet};

use super::{CommRing, RingError};

/// The boolean ring of all subsets of a finite ground set: addition is
/// symmetric difference, multiplication is intersection. An empty ground set
/// gives the zero ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolRing {
    ground: Vec<String>,
}

impl BoolRing {
    pub fn new(ground: Vec<String>) -> Result<Self, RingError> {
        let mut seen = HashSet::new();
        for g in &ground {
            if !seen.insert(g) {
                return Err(RingError::DuplicateLabel(g.clone()));
            }
        }
        Ok(Self { ground })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// All `2^|ground|` elements.
    pub fn elements(&self) -> Vec<BTreeSet<usize>> {
        let n = self.ground.len();
        (0u64..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    }
}

impl CommRing for BoolRing {
    type Elem = BTreeSet<usize>;

    fn zero(&self) -> Self::Elem {
        BTreeSet::new()
    }

    fn one(&self) -> Self::Elem {
        (0..self.ground.len()).collect()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.symmetric_difference(b).copied().collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.intersection(b).copied().collect()
    }

    fn owns(&self, a: &Self::Elem) -> bool {
        a.iter().all(|&i| i < self.ground.len())
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        (*a == self.one()).then(|| a.clone())
    }
}

/// The ring map `P(S) → P(T)`, `U ↦ f⁻¹(U)`, induced by a map `f : T → S` of ground sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolPullback {
    pub source: BoolRing,
    pub target: BoolRing,
    /// `map[t]` is the image in the source ground set of target point `t`.
    pub map: Vec<usize>,
}

impl BoolPullback {
    pub fn new(source: BoolRing, target: BoolRing, map: Vec<usize>) -> Result<Self, RingError> {
        if map.len() != target.len() || map.iter().any(|&s| s >= source.len()) {
            return Err(RingError::Malformed("set map is not total".into()));
        }
        Ok(Self { source, target, map })
    }

    pub fn apply(&self, u: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.map.len()).filter(|t| u.contains(&self.map[*t])).collect()
    }
}
