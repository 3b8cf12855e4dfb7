//! Finite discrete spaces against their function rings `K^X`: the pullback
//! functor, the reflection into the maximal spectrum, recovery of maps from
//! homomorphisms, the compactification certificate and the canonical norm.

mod norm;
mod scc;

pub use norm::{
    check_banach_star_real, check_contractive, check_contractive_with, coefficient_norm_sq, norm_agrees_across_runs, sup_norm, Axiom, PreparedSamples,
    BanachReport, CanonicalStructure, ContractivityReport, NormView,
};
pub use scc::{scc_finite, Scc, SccCertificate};
pub(crate) use norm::{check_common, violation};

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::exact::{Matrix, Scalar};
use crate::rings::{function_ring, RingError, RingHom};
use crate::spectra::{mspec_map, split_characters, Character, SpectraError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("homomorphism is not between function rings of the given spaces")]
    NotFunctionRing,
    #[error("coordinate {0} of the homomorphism is not a point evaluation")]
    NotInduced(usize),
    #[error("double evaluation is not bijective, so the algebra carries no canonical norm")]
    NotBcRing,
    #[error("axiom {axiom:?} fails at {element}")]
    AxiomViolation { axiom: Axiom, element: String },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A finite discrete space with distinct point labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSpace {
    labels: Vec<String>,
}

impl FinSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, DualityError> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(DualityError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Points labelled `{prefix}0, {prefix}1, …`.
    pub fn anonymous(prefix: &str, n: usize) -> Self {
        Self { labels: (0..n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A total function between finite spaces, by point index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    source: FinSpace,
    target: FinSpace,
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(source: FinSpace, target: FinSpace, assignment: Vec<usize>) -> Result<Self, DualityError> {
        if assignment.len() != source.len() {
            return Err(DualityError::Malformed(format!(
                "{} images for {} source points",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(DualityError::Malformed(format!("image {bad} outside a target of size {}", target.len())));
        }
        Ok(Self { source, target, assignment })
    }

    pub fn identity(space: &FinSpace) -> Self {
        Self { source: space.clone(), target: space.clone(), assignment: (0..space.len()).collect() }
    }

    pub fn source(&self) -> &FinSpace {
        &self.source
    }

    pub fn target(&self) -> &FinSpace {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SpaceMap) -> Result<SpaceMap, DualityError> {
        if next.source != self.target {
            return Err(DualityError::Malformed("composition across different spaces".into()));
        }
        Ok(SpaceMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&y| next.assignment[y]).collect(),
        })
    }
}

/// Indicator character `ev_x` of `K^n`.
pub fn point_evaluation<F: Scalar>(n: usize, x: usize) -> Character<F> {
    Character::new((0..n).map(|j| if j == x { F::one() } else { F::zero() }).collect())
}

/// The pullback `K^{target} → K^{source}`, `a ↦ a ∘ f`.
pub fn f_functor<F: Scalar>(f: &SpaceMap) -> RingHom<F> {
    let (n, m) = (f.target.len(), f.source.len());
    let matrix = Matrix::from_fn(m, n, |y, x| if f.assignment[y] == x { F::one() } else { F::zero() });
    RingHom::new(Arc::new(function_ring(n)), Arc::new(function_ring(m)), matrix).expect("pullbacks are homomorphisms")
}

/// `x ↦ Ker(ev_x)` against the characters found by the splitter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection<F> {
    pub characters: Vec<Character<F>>,
    /// `map[x]` indexes the character with kernel `Ker(ev_x)`.
    pub map: Vec<usize>,
    pub bijective: bool,
}

impl<F: Scalar> Reflection<F> {
    /// Inverse of `map`, defined on characters hit by some point.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.characters.len()];
        for (x, &k) in self.map.iter().enumerate() {
            inv[k] = Some(x);
        }
        inv
    }

    /// Basis of the maximal ideal `Ker(ev_x)`.
    pub fn kernel(&self, x: usize) -> Vec<Vec<F>> {
        self.characters[self.map[x]].kernel_basis()
    }

    pub fn point_of(&self, chi: &Character<F>) -> Option<usize> {
        let k = self.characters.iter().position(|c| c == chi)?;
        self.inverse()[k]
    }
}

pub fn refl_alg<F: Scalar>(space: &FinSpace) -> Result<Reflection<F>, DualityError> {
    let n = space.len();
    let characters = split_characters(&function_ring::<F>(n))?;
    let map = (0..n)
        .map(|x| {
            let ev = point_evaluation(n, x);
            characters.iter().position(|c| *c == ev).ok_or(DualityError::Spectra(SpectraError::UnmatchedCharacter(x)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    let bijective = distinct.len() == n && characters.len() == n;
    Ok(Reflection { characters, map, bijective })
}

/// The unique `f : Y → X` with `f_functor(f) = φ` for `φ : K^X → K^Y`.
pub fn hom_to_map<F: Scalar>(phi: &RingHom<F>, x: &FinSpace, y: &FinSpace) -> Result<SpaceMap, DualityError> {
    let (src, tgt) = (phi.source(), phi.target());
    if src.dim() != x.len() || tgt.dim() != y.len() || !src.is_standard_function_ring() || !tgt.is_standard_function_ring()
    {
        return Err(DualityError::NotFunctionRing);
    }
    let refl = refl_alg::<F>(x)?;
    let assignment = (0..y.len())
        .map(|yi| {
            let chi = Character::new(phi.matrix().row(yi).to_vec());
            chi.validate(src).map_err(|_| DualityError::NotInduced(yi))?;
            refl.point_of(&chi).ok_or(DualityError::NotInduced(yi))
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpaceMap::new(y.clone(), x.clone(), assignment)
}

/// Checks `refl_X ∘ f = MSpec(F(f)) ∘ refl_Y` pointwise for `f : Y → X`.
pub fn naturality_holds<F: Scalar>(f: &SpaceMap) -> Result<bool, DualityError> {
    let ms = mspec_map(&f_functor::<F>(f))?;
    let refl_x = refl_alg::<F>(f.target())?;
    let refl_y = refl_alg::<F>(f.source())?;
    for y in 0..f.source().len() {
        let ev_y = &refl_y.characters[refl_y.map[y]];
        let Some(t) = ms.target_characters.iter().position(|c| c == ev_y) else {
            return Ok(false);
        };
        let image = &ms.source_characters[ms.map[t]];
        if *image != refl_x.characters[refl_x.map[f.apply(y)]] {
            return Ok(false);
        }
    }
    Ok(true)
}
