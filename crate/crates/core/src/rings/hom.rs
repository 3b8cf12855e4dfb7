use std::sync::Arc;

use thiserror::Error;

use super::{CommRing, ScAlgebra};
use crate::exact::{ExactError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomViolation {
    #[error("matrix shape does not match source and target dimensions")]
    Shape,
    #[error("unit is not sent to unit")]
    Unit,
    #[error("product of basis elements {0} and {1} is not preserved")]
    Product(usize, usize),
}

/// A linear map between structure-constant algebras, `φ(e_j) = column j`.
#[derive(Clone, Debug)]
pub struct RingHom<F: Scalar> {
    source: Arc<ScAlgebra<F>>,
    target: Arc<ScAlgebra<F>>,
    matrix: Matrix<F>,
}

impl<F: Scalar> RingHom<F> {
    /// A candidate map with only its shape checked.
    pub fn candidate(
        source: Arc<ScAlgebra<F>>,
        target: Arc<ScAlgebra<F>>,
        matrix: Matrix<F>,
    ) -> Result<Self, HomViolation> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(HomViolation::Shape);
        }
        Ok(Self { source, target, matrix })
    }

    /// A validated ring homomorphism.
    pub fn new(source: Arc<ScAlgebra<F>>, target: Arc<ScAlgebra<F>>, matrix: Matrix<F>) -> Result<Self, HomViolation> {
        let h = Self::candidate(source, target, matrix)?;
        h.validate()?;
        Ok(h)
    }

    pub fn identity(alg: Arc<ScAlgebra<F>>) -> Self {
        let n = alg.dim();
        Self { source: alg.clone(), target: alg, matrix: Matrix::identity(n) }
    }

    /// Checks unitality, then multiplicativity on every basis pair; reports the first failure.
    pub fn validate(&self) -> Result<(), HomViolation> {
        if self.apply(self.source.unit()) != self.target.one() {
            return Err(HomViolation::Unit);
        }
        let n = self.source.dim();
        let images: Vec<Vec<F>> = (0..n).map(|j| self.matrix.column(j)).collect();
        for i in 0..n {
            for j in i..n {
                let lhs = self.apply(&self.source.table()[i][j]);
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(HomViolation::Product(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<ScAlgebra<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ScAlgebra<F>> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, a: &[F]) -> Vec<F> {
        self.matrix.mul_vec(a).expect("shape checked at construction")
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingHom<F>) -> Result<RingHom<F>, ExactError> {
        if next.source.as_ref() != self.target.as_ref() {
            return Err(ExactError::ShapeMismatch);
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use crate::rings::function_ring;

    fn q(n: usize) -> Arc<ScAlgebra<Rational>> {
        Arc::new(function_ring(n))
    }

    #[test]
    fn diagonal_embedding_is_valid() {
        let h = RingHom::new(q(1), q(2), Matrix::from_i64s(&[&[1], &[1]]));
        assert!(h.is_ok());
    }

    #[test]
    fn unit_to_zero_is_flagged() {
        let h = RingHom::candidate(q(1), q(2), Matrix::from_i64s(&[&[0], &[0]])).unwrap();
        assert_eq!(h.validate(), Err(HomViolation::Unit));
    }

    #[test]
    fn swap_is_an_automorphism() {
        let h = RingHom::new(q(2), q(2), Matrix::from_i64s(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.then(&h).unwrap().matrix(), &Matrix::identity(2));
    }

    #[test]
    fn non_multiplicative_is_flagged() {
        // e0 ↦ (2,0), e1 ↦ (-1,1): unital, but e0·e0 = e0 ↦ (2,0) while (2,0)^2 = (4,0)
        let h = RingHom::candidate(q(2), q(2), Matrix::from_i64s(&[&[2, -1], &[0, 1]])).unwrap();
        assert_eq!(h.validate(), Err(HomViolation::Product(0, 0)));
    }

    #[test]
    fn shape_is_checked() {
        assert_eq!(
            RingHom::candidate(q(2), q(2), Matrix::from_i64s(&[&[1, 0]])).err(),
            Some(HomViolation::Shape)
        );
    }
}
