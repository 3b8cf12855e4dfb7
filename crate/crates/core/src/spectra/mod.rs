//! Maximal spectra, Zariski sets, evaluation and double-evaluation maps.

pub mod demos;
mod split;

pub use split::{
    dev, dev_with, ev_hom, mspec_map, split_characters, split_characters_with, Character, DevTransform, MSpecMap,
    SplitConfig,
};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::exact::{roots::factorize, ExactError, Scalar};
use crate::rings::{BoolRing, CommRing, RingError, ScAlgebra, ZMod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    /// Some residue field is strictly larger than the base field.
    #[error("NotKValued")]
    NotKValued,
    #[error("subspace is not a proper ideal")]
    NotAnIdeal,
    #[error("character {0} of the target has no matching source character")]
    UnmatchedCharacter(usize),
    #[error("dimension {dim} exceeds the splitter cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A ring whose maximal ideals can be listed.
pub trait MaxSpectrum: CommRing {
    /// Representation of one maximal ideal.
    type Point: Clone + PartialEq + fmt::Debug;

    /// All maximal ideals; empty exactly for the zero ring.
    fn mspec(&self) -> Result<Vec<Self::Point>, SpectraError>;

    /// Whether `a` lies in the maximal ideal `m`.
    fn contains(&self, m: &Self::Point, a: &Self::Elem) -> bool;

    /// A maximal ideal containing `a`, if one can be found.
    fn non_unit_witness(&self, a: &Self::Elem) -> Option<Self::Point> {
        self.mspec().ok()?.into_iter().find(|m| self.contains(m, a))
    }
}

/// Maximal ideals of `Z/n` are `(p)` for the primes `p | n`.
impl MaxSpectrum for ZMod {
    type Point = u64;

    fn mspec(&self) -> Result<Vec<u64>, SpectraError> {
        Ok(factorize(self.modulus()).into_iter().map(|(p, _)| p).collect())
    }

    fn contains(&self, p: &u64, a: &u64) -> bool {
        a.is_multiple_of(*p)
    }

    fn non_unit_witness(&self, a: &u64) -> Option<u64> {
        let g = num_integer::gcd(*a, self.modulus());
        factorize(g).first().map(|&(p, _)| p)
    }
}

/// The maximal ideal at ground point `x` is `{S : x ∉ S}`.
impl MaxSpectrum for BoolRing {
    type Point = usize;

    fn mspec(&self) -> Result<Vec<usize>, SpectraError> {
        Ok((0..self.len()).collect())
    }

    fn contains(&self, x: &usize, a: &BTreeSet<usize>) -> bool {
        !a.contains(x)
    }
}

/// Maximal ideals are kernels of characters.
impl<F: Scalar> MaxSpectrum for ScAlgebra<F> {
    type Point = Character<F>;

    fn mspec(&self) -> Result<Vec<Character<F>>, SpectraError> {
        split_characters(self)
    }

    fn contains(&self, chi: &Character<F>, a: &Vec<F>) -> bool {
        chi.eval(a).is_zero()
    }
}

/// A subset of the maximal spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct ZariskiSet<P> {
    pub ambient: Vec<P>,
    pub members: Vec<bool>,
}

impl<P: Clone> ZariskiSet<P> {
    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    pub fn complement(&self) -> Self {
        Self { ambient: self.ambient.clone(), members: self.members.iter().map(|m| !m).collect() }
    }

    pub fn points(&self) -> Vec<P> {
        self.ambient
            .iter()
            .zip(&self.members)
            .filter(|(_, &m)| m)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// `Zer(a)`: the maximal ideals containing `a`.
pub fn zer<R: MaxSpectrum>(ring: &R, a: &R::Elem) -> Result<ZariskiSet<R::Point>, SpectraError> {
    Ok(zer_in(ring, ring.mspec()?, a))
}

/// `Zer(a)` against a precomputed spectrum.
pub fn zer_in<R: MaxSpectrum>(ring: &R, ambient: Vec<R::Point>, a: &R::Elem) -> ZariskiSet<R::Point> {
    let members = ambient.iter().map(|m| ring.contains(m, a)).collect();
    ZariskiSet { ambient, members }
}

/// `NZer(a)`: the complement of `Zer(a)`, a principal open set.
pub fn nzer<R: MaxSpectrum>(ring: &R, a: &R::Elem) -> Result<ZariskiSet<R::Point>, SpectraError> {
    Ok(zer(ring, a)?.complement())
}

/// Reduction `Z/n → F_p` at the maximal ideal `(p)`, available only when
/// `F_p` is the requested base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueCharacter {
    pub modulus: u64,
    pub prime: u64,
}

impl ResidueCharacter {
    pub fn eval(&self, a: u64) -> u64 {
        a % self.prime
    }
}

pub fn zmod_ev_hom(ring: &ZMod, base_prime: u64, m: u64) -> Result<ResidueCharacter, SpectraError> {
    if !ring.mspec()?.contains(&m) {
        return Err(SpectraError::NotAnIdeal);
    }
    if m != base_prime {
        return Err(SpectraError::NotKValued);
    }
    Ok(ResidueCharacter { modulus: ring.modulus(), prime: m })
}
