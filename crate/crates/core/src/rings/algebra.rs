use num_traits::One;

use super::{CommRing, RingError};
use crate::exact::{ExactError, Matrix, Poly, Scalar};

/// Default cap on the dimension of a structure-constant algebra.
pub const DEFAULT_DIM_CAP: usize = 12;

/// A finite-dimensional commutative algebra over `F` given by structure
/// constants: `e_i · e_j = Σ_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAlgebra<F> {
    dim: usize,
    table: Vec<Vec<Vec<F>>>,
    unit: Vec<F>,
}

impl<F: Scalar> ScAlgebra<F> {
    pub fn new(table: Vec<Vec<Vec<F>>>, unit: Vec<F>) -> Result<Self, RingError> {
        Self::with_cap(table, unit, DEFAULT_DIM_CAP)
    }

    /// Validates shape, commutativity, associativity on basis triples and the unit law.
    pub fn with_cap(table: Vec<Vec<Vec<F>>>, unit: Vec<F>, cap: usize) -> Result<Self, RingError> {
        let dim = unit.len();
        if dim > cap {
            return Err(RingError::DimensionCap { dim, cap });
        }
        let shape_ok = table.len() == dim
            && table.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(RingError::Malformed(format!("table must be {dim}x{dim}x{dim}")));
        }
        let alg = Self { dim, table, unit };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), RingError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(RingError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&self.table[i][j], &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.table[j][k]);
                    if left != right {
                        return Err(RingError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul(&self.unit, &self.basis(i)) != self.basis(i) {
                return Err(RingError::BadUnit(i));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vec<Vec<F>>] {
        &self.table
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn scalar(&self, s: &F) -> Vec<F> {
        self.unit.iter().map(|u| u.clone() * s.clone()).collect()
    }

    /// Matrix of `x ↦ a·x` in the standard basis.
    pub fn mult_matrix(&self, a: &[F]) -> Matrix<F> {
        let mut m = Matrix::<F>::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + ai.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// Same structure constants read over another field through `lift`.
    pub fn map_field<G: Scalar>(&self, lift: impl Fn(&F) -> G) -> ScAlgebra<G> {
        ScAlgebra {
            dim: self.dim,
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(&lift).collect()).collect())
                .collect(),
            unit: self.unit.iter().map(&lift).collect(),
        }
    }

    /// Whether the standard basis consists of orthogonal idempotents summing to the unit.
    pub fn is_standard_function_ring(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let expect = if i == j { self.basis(i) } else { vec![F::zero(); self.dim] };
                self.table[i][j] == expect
            })
        }) && self.unit.iter().all(One::is_one)
    }
}

impl<F: Scalar> CommRing for ScAlgebra<F> {
    type Elem = Vec<F>;

    fn zero(&self) -> Vec<F> {
        vec![F::zero(); self.dim]
    }

    fn one(&self) -> Vec<F> {
        self.unit.clone()
    }

    fn add(&self, a: &Vec<F>, b: &Vec<F>) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    fn neg(&self, a: &Vec<F>) -> Vec<F> {
        a.iter().map(|x| -x.clone()).collect()
    }

    fn mul(&self, a: &Vec<F>, b: &Vec<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai.clone() * bj.clone();
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let acc = std::mem::replace(&mut out[k], F::zero());
                        out[k] = acc + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    fn owns(&self, a: &Vec<F>) -> bool {
        a.len() == self.dim
    }

    fn inverse(&self, a: &Vec<F>) -> Option<Vec<F>> {
        let x = self.mult_matrix(a).solve(&self.unit)?;
        // a solution of a·x = 1 is automatically the inverse in a commutative algebra
        Some(x)
    }
}

/// `F^n` with componentwise multiplication: the ring of all `F`-valued
/// functions on an `n`-point discrete space. `n = 0` is the zero ring.
pub fn function_ring<F: Scalar>(n: usize) -> ScAlgebra<F> {
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![F::zero(); n];
                    if i == j {
                        v[i] = F::one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    ScAlgebra { dim: n, table, unit: vec![F::one(); n] }
}

/// `F[t]/(f)` in the basis `1, t, …, t^{d−1}`, for `f` of degree `d ≥ 1`.
pub fn polynomial_quotient<F: Scalar>(f: &Poly<F>) -> Result<ScAlgebra<F>, RingError> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(RingError::Malformed("modulus must have positive degree".into())),
    };
    let reduce = |k: usize| -> Result<Vec<F>, RingError> {
        let mut mono = vec![F::zero(); k + 1];
        mono[k] = F::one();
        let (_, r) = Poly::new(mono).divmod(f)?;
        Ok((0..d).map(|i| r.coeff(i)).collect())
    };
    let powers = (0..2 * d - 1).map(reduce).collect::<Result<Vec<_>, _>>()?;
    let table = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
    ScAlgebra::new(table, powers[0].clone())
}

/// The same algebra presented in the basis `b_j = Σ_i p[i][j] e_i`.
pub fn transport<F: Scalar>(alg: &ScAlgebra<F>, p: &Matrix<F>) -> Result<ScAlgebra<F>, RingError> {
    if p.rows() != alg.dim || !p.is_square() {
        return Err(RingError::Exact(ExactError::ShapeMismatch));
    }
    let q = p.inverse()?;
    let cols: Vec<Vec<F>> = (0..alg.dim).map(|j| p.column(j)).collect();
    let mut table = vec![vec![Vec::new(); alg.dim]; alg.dim];
    for j in 0..alg.dim {
        for k in j..alg.dim {
            let prod = q.mul_vec(&alg.mul(&cols[j], &cols[k]))?;
            table[k][j] = prod.clone();
            table[j][k] = prod;
        }
    }
    let unit = q.mul_vec(&alg.unit)?;
    Ok(ScAlgebra { dim: alg.dim, table, unit })
}

/// An algebra transported through a hidden change of basis, kept for oracle checks.
#[derive(Clone, Debug)]
pub struct Scrambled<F: Scalar> {
    pub algebra: ScAlgebra<F>,
    /// Columns are the new basis vectors in the original coordinates.
    pub basis_change: Matrix<F>,
}

pub fn scramble<F: Scalar>(alg: &ScAlgebra<F>, p: &Matrix<F>) -> Result<Scrambled<F>, RingError> {
    Ok(Scrambled { algebra: transport(alg, p)?, basis_change: p.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Rational};
    use crate::rings::ring_mul;

    type A = ScAlgebra<Rational>;

    #[test]
    fn polynomial_quotient_reduces_powers() {
        // t^3 = 2 in Q[t]/(t^3 - 2)
        let a = polynomial_quotient(&Poly::<Rational>::from_i64s(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.table()[1][2], vec![int(2), int(0), int(0)]);
        assert_eq!(a.table()[2][2], vec![int(0), int(2), int(0)]);
        assert!(polynomial_quotient(&Poly::<Rational>::from_i64s(&[5])).is_err());
    }

    #[test]
    fn componentwise_product() {
        let a = function_ring::<Rational>(2);
        let p = ring_mul(&a, &vec![int(1), int(2)], &vec![int(3), int(4)]).unwrap();
        assert_eq!(p, vec![int(3), int(8)]);
        assert_eq!(ring_mul(&a, &vec![int(1)], &vec![int(1), int(1)]), Err(RingError::OwnerMismatch));
    }

    #[test]
    fn function_ring_shapes() {
        let a = function_ring::<Rational>(2);
        assert_eq!(a.unit(), &[int(1), int(1)]);
        assert!(a.is_standard_function_ring());
        let z = function_ring::<Rational>(0);
        assert!(z.is_zero_ring());
    }

    #[test]
    fn rejects_bad_tables() {
        // basis (1, t) with t·1 = t but 1·t = 0: not commutative
        let one = vec![int(1), int(0)];
        let t = vec![int(0), int(1)];
        let zero = vec![int(0), int(0)];
        let bad = A::new(vec![vec![one.clone(), zero.clone()], vec![t.clone(), zero.clone()]], one.clone());
        assert_eq!(bad, Err(RingError::NotCommutative(0, 1)));

        // unit (1,0) in Q^2: does not fix e_1
        let f = function_ring::<Rational>(2);
        let bad_unit = A::new(f.table().to_vec(), vec![int(1), int(0)]);
        assert_eq!(bad_unit, Err(RingError::BadUnit(1)));
    }

    #[test]
    fn rejects_non_associative() {
        // e0 e0 = e1, e1 e1 = e0, e0 e1 = 0, unit required but absent: associativity fails first
        let e0 = vec![int(1), int(0)];
        let e1 = vec![int(0), int(1)];
        let z = vec![int(0), int(0)];
        let bad = A::new(vec![vec![e1.clone(), z.clone()], vec![z, e0]], vec![int(1), int(1)]);
        assert!(matches!(bad, Err(RingError::NotAssociative(..))));
    }

    #[test]
    fn scramble_identity_and_back() {
        let a = function_ring::<Rational>(2);
        let same = scramble(&a, &Matrix::identity(2)).unwrap();
        assert_eq!(same.algebra, a);

        let p = Matrix::from_i64s(&[&[1, 1], &[0, 1]]);
        let s = scramble(&a, &p).unwrap();
        assert!(!s.algebra.is_standard_function_ring());
        let back = transport(&s.algebra, &p.inverse().unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn scramble_singular() {
        let a = function_ring::<Rational>(2);
        let p = Matrix::from_i64s(&[&[1, 2], &[2, 4]]);
        assert_eq!(scramble(&a, &p).err(), Some(RingError::Exact(ExactError::SingularMatrix)));
    }

    #[test]
    fn inverse_in_function_ring() {
        let a = function_ring::<Rational>(3);
        let x = vec![int(2), int(-1), int(5)];
        let inv = a.inverse(&x).unwrap();
        assert_eq!(a.mul(&x, &inv), a.one());
        assert!(a.inverse(&vec![int(1), int(0), int(1)]).is_none());
    }

    #[test]
    fn dimension_cap() {
        let f = function_ring::<Rational>(3);
        let r = A::with_cap(f.table().to_vec(), f.unit().to_vec(), 2);
        assert_eq!(r, Err(RingError::DimensionCap { dim: 3, cap: 2 }));
    }
}
