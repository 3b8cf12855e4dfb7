//! The three ring presentations everything else is instantiated on:
//! `Z/n`, boolean rings of subsets, and structure-constant algebras over an
//! exact field.

mod algebra;
mod boolean;
mod hom;
mod zmod;

pub use algebra::{function_ring, polynomial_quotient, scramble, transport, ScAlgebra, Scrambled, DEFAULT_DIM_CAP};
pub use boolean::{BoolPullback, BoolRing};
pub use hom::{HomViolation, RingHom};
pub use zmod::{ZMod, ZModProjection};

use std::fmt;

use thiserror::Error;

use crate::exact::{ExactError, GaussianRational, Rational};
use crate::spectra::MaxSpectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("element does not belong to this ring")]
    OwnerMismatch,
    #[error("structure constants are not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit does not act as identity on basis element {0}")]
    BadUnit(usize),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A commutative ring with unit whose elements are plain values.
pub trait CommRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Whether `a` has the shape of an element of this ring.
    fn owns(&self, a: &Self::Elem) -> bool;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero_ring(&self) -> bool {
        self.zero() == self.one()
    }
}

/// Product of two elements, refusing elements of a different ring.
pub fn ring_mul<R: CommRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem, RingError> {
    if !ring.owns(a) || !ring.owns(b) {
        return Err(RingError::OwnerMismatch);
    }
    Ok(ring.mul(a, b))
}

/// Outcome of a unit test: an inverse, or a maximal ideal containing the element.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitTest<E, P> {
    Unit { inverse: E },
    /// `witness` is `None` only when the maximal spectrum cannot be computed.
    NonUnit { witness: Option<P> },
}

impl<E, P> UnitTest<E, P> {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitTest::Unit { .. })
    }
}

pub fn is_unit<R: MaxSpectrum>(ring: &R, a: &R::Elem) -> Result<UnitTest<R::Elem, R::Point>, RingError> {
    if !ring.owns(a) {
        return Err(RingError::OwnerMismatch);
    }
    Ok(match ring.inverse(a) {
        Some(inverse) => UnitTest::Unit { inverse },
        None => UnitTest::NonUnit { witness: ring.non_unit_witness(a) },
    })
}

/// A ring presentation as read from or written to JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum RingSpec {
    ZMod(ZMod),
    Bool(BoolRing),
    ScQ(ScAlgebra<Rational>),
    ScQi(ScAlgebra<GaussianRational>),
}
