//! Character splitting for structure-constant algebras.
//!
//! The algebra is cut into blocks (ideals) by generalized eigenspaces of
//! multiplication operators. A block on which every basis element has a
//! single eigenvalue is local, and its eigenvalue tuple is a character. If
//! some characteristic polynomial does not split over the base field the
//! algebra has a residue field larger than the base field and the splitter
//! refuses.
//!
//! Trying basis elements is enough to reach every local block: two local
//! blocks on which all basis elements agree would carry the same character,
//! which is impossible for distinct blocks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;


use super::SpectraError;
use crate::exact::{root_multiplicities, Matrix, Scalar, DEFAULT_NORM_CAP};
use crate::rings::{CommRing, HomViolation, RingHom, ScAlgebra, DEFAULT_DIM_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitConfig {
    /// Cap on integers factored during root extraction.
    pub norm_cap: u64,
    pub dim_cap: usize,
    /// `None` tries basis elements in index order; `Some(seed)` shuffles the order.
    pub seed: Option<u64>,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self { norm_cap: DEFAULT_NORM_CAP, dim_cap: DEFAULT_DIM_CAP, seed: None }
    }
}

/// A unital ring homomorphism to the base field, stored as the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character<F> {
    values: Vec<F>,
}

impl<F: Scalar> Character<F> {
    pub fn new(values: Vec<F>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn eval(&self, a: &[F]) -> F {
        crate::exact::matrix::dot(&self.values, a)
    }

    /// Unitality and multiplicativity on all basis pairs.
    pub fn validate(&self, alg: &ScAlgebra<F>) -> Result<(), HomViolation> {
        if self.values.len() != alg.dim() {
            return Err(HomViolation::Shape);
        }
        if !self.eval(alg.unit()).is_one() {
            return Err(HomViolation::Unit);
        }
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                let lhs = self.eval(&alg.table()[i][j]);
                if lhs != self.values[i].clone() * self.values[j].clone() {
                    return Err(HomViolation::Product(i, j));
                }
            }
        }
        Ok(())
    }

    /// Basis of the kernel: the maximal ideal this character represents.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        Matrix::from_rows(vec![self.values.clone()]).kernel_basis()
    }

    /// `χ ∘ φ` for a homomorphism into this character's algebra.
    pub fn pull_back(&self, phi: &RingHom<F>) -> Character<F> {
        let m = phi.matrix();
        let values = (0..m.cols()).map(|j| self.eval(&m.column(j))).collect();
        Character { values }
    }
}

pub fn split_characters<F: Scalar>(alg: &ScAlgebra<F>) -> Result<Vec<Character<F>>, SpectraError> {
    split_characters_with(alg, &SplitConfig::default())
}

pub fn split_characters_with<F: Scalar>(
    alg: &ScAlgebra<F>,
    cfg: &SplitConfig,
) -> Result<Vec<Character<F>>, SpectraError> {
    if alg.dim() > cfg.dim_cap {
        return Err(SpectraError::DimensionCap { dim: alg.dim(), cap: cfg.dim_cap });
    }
    let mut order: Vec<usize> = (0..alg.dim()).collect();
    if let Some(seed) = cfg.seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut out = Vec::new();
    split_block(alg, Matrix::identity(alg.dim()), &order, cfg, &mut out)?;
    Ok(out)
}

/// `block` has full column rank; its columns span an ideal of `alg`.
fn split_block<F: Scalar>(
    alg: &ScAlgebra<F>,
    block: Matrix<F>,
    order: &[usize],
    cfg: &SplitConfig,
    out: &mut Vec<Character<F>>,
) -> Result<(), SpectraError> {
    let d = block.cols();
    if d == 0 {
        return Ok(());
    }
    let columns: Vec<Vec<F>> = (0..d).map(|k| block.column(k)).collect();
    let mut values = vec![F::zero(); alg.dim()];
    for &j in order {
        let e = alg.basis(j);
        let restricted_cols: Vec<Vec<F>> = columns
            .iter()
            .map(|b| block.solve(&alg.mul(&e, b)).expect("block is an ideal"))
            .collect();
        let restricted = Matrix::from_columns(d, &restricted_cols);
        let cp = restricted.char_poly()?;
        let roots = root_multiplicities(&cp, cfg.norm_cap)?;
        if roots.iter().map(|(_, m)| m).sum::<usize>() < d {
            return Err(SpectraError::NotKValued);
        }
        if roots.len() == 1 {
            values[j] = roots[0].0.clone();
            continue;
        }
        for (lambda, mult) in roots {
            let shifted = restricted.add(&Matrix::identity(d).scale(&-lambda))?;
            let mut power = Matrix::identity(d);
            for _ in 0..mult {
                power = power.mul(&shifted)?;
            }
            let kernel = power.kernel_basis();
            let sub: Vec<Vec<F>> = kernel.iter().map(|v| block.mul_vec(v)).collect::<Result<_, _>>()?;
            split_block(alg, Matrix::from_columns(alg.dim(), &sub), order, cfg, out)?;
        }
        return Ok(());
    }
    out.push(Character::new(values));
    Ok(())
}

/// The double-evaluation map `a ↦ (χ(a))_χ`.
#[derive(Clone, Debug)]
pub struct DevTransform<F: Scalar> {
    pub characters: Vec<Character<F>>,
    /// Rows are character value vectors.
    pub matrix: Matrix<F>,
    pub bijective: bool,
}

impl<F: Scalar> DevTransform<F> {
    pub fn apply(&self, a: &[F]) -> Vec<F> {
        self.characters.iter().map(|c| c.eval(a)).collect()
    }

    pub fn from_characters(dim: usize, characters: Vec<Character<F>>) -> Self {
        let matrix = Matrix::from_fn(characters.len(), dim, |r, c| characters[r].values[c].clone());
        let bijective = matrix.is_invertible();
        Self { characters, matrix, bijective }
    }
}

pub fn dev<F: Scalar>(alg: &ScAlgebra<F>) -> Result<DevTransform<F>, SpectraError> {
    dev_with(alg, &SplitConfig::default())
}

pub fn dev_with<F: Scalar>(alg: &ScAlgebra<F>, cfg: &SplitConfig) -> Result<DevTransform<F>, SpectraError> {
    Ok(DevTransform::from_characters(alg.dim(), split_characters_with(alg, cfg)?))
}

/// `MSpec(φ) : MSpec(target) → MSpec(source)` as indices into the two character lists.
#[derive(Clone, Debug)]
pub struct MSpecMap<F> {
    pub source_characters: Vec<Character<F>>,
    pub target_characters: Vec<Character<F>>,
    /// `map[t]` is the index of `χ_t ∘ φ` among the source characters.
    pub map: Vec<usize>,
}

pub fn mspec_map<F: Scalar>(phi: &RingHom<F>) -> Result<MSpecMap<F>, SpectraError> {
    let source_characters = split_characters(phi.source())?;
    let target_characters = split_characters(phi.target())?;
    let map = target_characters
        .iter()
        .enumerate()
        .map(|(t, chi)| {
            let pulled = chi.pull_back(phi);
            source_characters
                .iter()
                .position(|c| *c == pulled)
                .ok_or(SpectraError::UnmatchedCharacter(t))
        })
        .collect::<Result<_, _>>()?;
    Ok(MSpecMap { source_characters, target_characters, map })
}

/// The character with kernel spanned by `ideal`, when that subspace is an
/// ideal of codimension one not containing the unit.
pub fn ev_hom<F: Scalar>(alg: &ScAlgebra<F>, ideal: &[Vec<F>]) -> Result<Character<F>, SpectraError> {
    let n = alg.dim();
    if ideal.iter().any(|v| v.len() != n) {
        return Err(SpectraError::NotAnIdeal);
    }
    let span = Matrix::from_columns(n, ideal);
    for v in ideal {
        for j in 0..n {
            if span.solve(&alg.mul(&alg.basis(j), v)).is_none() {
                return Err(SpectraError::NotAnIdeal);
            }
        }
    }
    if span.solve(alg.unit()).is_some() {
        return Err(SpectraError::NotAnIdeal);
    }
    if span.rank() + 1 != n {
        return Err(SpectraError::NotKValued);
    }
    // functional vanishing on the ideal with value 1 at the unit
    let mut rows: Vec<Vec<F>> = ideal.to_vec();
    rows.push(alg.unit().to_vec());
    let mut rhs = vec![F::zero(); ideal.len()];
    rhs.push(F::one());
    let values = Matrix::from_rows(rows).solve(&rhs).ok_or(SpectraError::NotAnIdeal)?;
    let chi = Character::new(values);
    chi.validate(alg).map_err(|_| SpectraError::NotKValued)?;
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact::{int, GaussianRational, Rational};
    use crate::rings::{function_ring, scramble};

    /// `Q[t]/(t^2 + b t + c)` in the basis (1, t).
    pub(crate) fn quotient_by_quadratic<F: Scalar>(b: F, c: F) -> ScAlgebra<F> {
        let one = vec![F::one(), F::zero()];
        let t = vec![F::zero(), F::one()];
        let t2 = vec![-c, -b];
        ScAlgebra::new(vec![vec![one.clone(), t.clone()], vec![t, t2]], one).unwrap()
    }

    #[test]
    fn idempotent_quotient_splits() {
        // t^2 = t
        let a = quotient_by_quadratic::<Rational>(int(-1), int(0));
        let mut chars = split_characters(&a).unwrap();
        chars.sort_by(|x, y| x.values().cmp(y.values()));
        assert_eq!(chars, vec![Character::new(vec![int(1), int(0)]), Character::new(vec![int(1), int(1)])]);
    }

    #[test]
    fn circle_quotient_is_not_k_valued() {
        let a = quotient_by_quadratic::<Rational>(int(0), int(1));
        assert_eq!(split_characters(&a), Err(SpectraError::NotKValued));
    }

    #[test]
    fn circle_quotient_splits_over_gaussian() {
        let a = quotient_by_quadratic::<GaussianRational>(GaussianRational::from_ints(0, 0), GaussianRational::from_ints(1, 0));
        let chars = split_characters(&a).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(dev(&a).unwrap().bijective);
    }

    #[test]
    fn scrambled_q3_recovers_hidden_basis() {
        let base = function_ring::<Rational>(3);
        let p = Matrix::from_i64s(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let s = scramble(&base, &p).unwrap();
        let chars = split_characters(&s.algebra).unwrap();
        assert_eq!(chars.len(), 3);
        // the point evaluation at x sends new basis vector b_j to p[x][j]
        for x in 0..3 {
            let expect = Character::new(p.row(x).to_vec());
            assert!(chars.contains(&expect), "missing row {x}");
        }
        let d = dev(&s.algebra).unwrap();
        assert!(d.bijective);
    }

    #[test]
    fn nilpotent_quotient_has_one_character() {
        let a = quotient_by_quadratic::<Rational>(int(0), int(0));
        let d = dev(&a).unwrap();
        assert_eq!(d.characters, vec![Character::new(vec![int(1), int(0)])]);
        assert!(!d.bijective);
    }

    #[test]
    fn ev_hom_from_kernel_of_projection() {
        let a = function_ring::<Rational>(2);
        // Ker(π_x) for x = point 0 is spanned by e_1
        let chi = ev_hom(&a, &[vec![int(0), int(1)]]).unwrap();
        assert_eq!(chi, Character::new(vec![int(1), int(0)]));
        // 1-dim algebra, unique maximal ideal 0
        let k = function_ring::<Rational>(1);
        assert_eq!(ev_hom(&k, &[]).unwrap(), Character::new(vec![int(1)]));
        // a line through the unit is not a proper ideal
        assert_eq!(ev_hom(&a, &[vec![int(1), int(1)]]), Err(SpectraError::NotAnIdeal));
        // ℚ[t]/(t^2+1): the zero ideal is maximal with residue field of degree 2
        let c = quotient_by_quadratic::<Rational>(int(0), int(1));
        assert_eq!(ev_hom(&c, &[]), Err(SpectraError::NotKValued));
    }

    #[test]
    fn kernel_round_trip() {
        let base = function_ring::<Rational>(3);
        let s = scramble(&base, &Matrix::from_i64s(&[&[1, 2, 0], &[0, 1, 0], &[1, 0, 1]])).unwrap();
        for chi in split_characters(&s.algebra).unwrap() {
            assert_eq!(ev_hom(&s.algebra, &chi.kernel_basis()).unwrap(), chi);
        }
    }

    #[test]
    fn mspec_of_diagonal_is_constant() {
        let k = Arc::new(function_ring::<Rational>(1));
        let q2 = Arc::new(function_ring::<Rational>(2));
        let phi = RingHom::new(k, q2, Matrix::from_i64s(&[&[1], &[1]])).unwrap();
        assert_eq!(mspec_map(&phi).unwrap().map, vec![0, 0]);
    }

    #[test]
    fn mspec_of_identity_is_identity() {
        let q3 = Arc::new(function_ring::<Rational>(3));
        let m = mspec_map(&RingHom::identity(q3)).unwrap();
        assert_eq!(m.map, vec![0, 1, 2]);
    }

    #[test]
    fn seeded_order_gives_same_character_set() {
        let base = function_ring::<Rational>(4);
        let p = Matrix::from_i64s(&[&[1, 1, 0, 2], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let s = scramble(&base, &p).unwrap();
        let mut a = split_characters(&s.algebra).unwrap();
        let mut b = split_characters_with(&s.algebra, &SplitConfig { seed: Some(7), ..Default::default() }).unwrap();
        a.sort_by(|x, y| x.values().cmp(y.values()));
        b.sort_by(|x, y| x.values().cmp(y.values()));
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_cap_enforced() {
        let a = function_ring::<Rational>(3);
        let cfg = SplitConfig { dim_cap: 2, ..Default::default() };
        assert_eq!(split_characters_with(&a, &cfg), Err(SpectraError::DimensionCap { dim: 3, cap: 2 }));
    }
}
