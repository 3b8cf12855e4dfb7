//! Involutions on algebras over `Q(i)`, hermitian real forms, and the
//! passage `A_0 ↦ Q(i) ⊗ A_0` back and forth.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::duality::{
    check_banach_star_real, coefficient_norm_sq, Axiom, BanachReport, CanonicalStructure, DualityError,
};
use crate::exact::{GaussianRational, Matrix, Rational, Scalar};
use crate::rings::{CommRing, HomViolation, RingError, RingHom, ScAlgebra};
use crate::spectra::{split_characters, Character, SpectraError};

type Qi = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("hermitian elements do not form a real form of the algebra")]
    NotRealForm,
    #[error("character {0} does not restrict to a rational character")]
    NotRational(usize),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl ComplexError {
    pub fn is_not_k_valued(&self) -> bool {
        matches!(
            self,
            ComplexError::Spectra(SpectraError::NotKValued)
                | ComplexError::Duality(DualityError::Spectra(SpectraError::NotKValued))
        )
    }
}

fn conj_vec(a: &[Qi]) -> Vec<Qi> {
    a.iter().map(Scalar::conj).collect()
}

/// An algebra over `Q(i)` with the conjugate-linear involution `a ↦ S·conj(a)`.
#[derive(Clone, Debug)]
pub struct InvolutiveAlgebra {
    algebra: ScAlgebra<Qi>,
    star: Matrix<Qi>,
}

impl InvolutiveAlgebra {
    /// Checks `S·conj(S) = 1`, `1* = 1` and `(e_i e_j)* = e_i* e_j*` on all basis pairs.
    pub fn new(algebra: ScAlgebra<Qi>, star: Matrix<Qi>) -> Result<Self, ComplexError> {
        let n = algebra.dim();
        if star.rows() != n || star.cols() != n {
            return Err(ComplexError::NotInvolution("star matrix has the wrong shape".into()));
        }
        let ia = Self { algebra, star };
        if ia.star.mul(&ia.star.conj()).expect("square") != Matrix::identity(n) {
            return Err(ComplexError::NotInvolution("star is not its own inverse".into()));
        }
        if ia.star(ia.algebra.unit()) != ia.algebra.one() {
            return Err(ComplexError::NotInvolution("star does not fix the unit".into()));
        }
        let images: Vec<Vec<Qi>> = (0..n).map(|j| ia.star.column(j)).collect();
        for i in 0..n {
            for j in i..n {
                if ia.star(&ia.algebra.table()[i][j]) != ia.algebra.mul(&images[i], &images[j]) {
                    return Err(ComplexError::NotInvolution(format!("star is not multiplicative on ({i}, {j})")));
                }
            }
        }
        Ok(ia)
    }

    pub fn algebra(&self) -> &ScAlgebra<Qi> {
        &self.algebra
    }

    pub fn star_matrix(&self) -> &Matrix<Qi> {
        &self.star
    }

    pub fn star(&self, a: &[Qi]) -> Vec<Qi> {
        self.star.mul_vec(&conj_vec(a)).expect("shape checked")
    }
}

/// `a* = dev⁻¹(conj(dev(a)))`, so `S = D⁻¹·conj(D)`.
pub fn canonical_involution(alg: &ScAlgebra<Qi>) -> Result<InvolutiveAlgebra, ComplexError> {
    let canon = CanonicalStructure::new(alg)?;
    let d = &canon.dev().matrix;
    let star = d.inverse().expect("dev is bijective").mul(&d.conj()).expect("square");
    InvolutiveAlgebra::new(alg.clone(), star)
}

/// The fixed points of the involution as a rational algebra, with the
/// hermitian basis vectors it is written in.
#[derive(Clone, Debug, Serialize)]
pub struct RealForm {
    #[serde(skip)]
    pub algebra: ScAlgebra<Rational>,
    /// Columns are the hermitian basis vectors.
    #[serde(skip)]
    pub basis: Matrix<Qi>,
    pub dim: usize,
}

impl RealForm {
    pub fn vectors(&self) -> Vec<Vec<Qi>> {
        (0..self.basis.cols()).map(|j| self.basis.column(j)).collect()
    }
}

/// Solves `S·conj(a) = a` over the rationals: with `a = x + iy` and
/// `S = P + iQ` this is `(P − 1)x + Qy = 0`, `Qx − (P + 1)y = 0`.
pub fn hermitian_subring(ia: &InvolutiveAlgebra) -> Result<RealForm, ComplexError> {
    let n = ia.algebra.dim();
    let s = &ia.star;
    let p = |r: usize, c: usize| s[(r, c)].re.clone();
    let q = |r: usize, c: usize| s[(r, c)].im.clone();
    let delta = |r: usize, c: usize| if r == c { Rational::one() } else { Rational::zero() };
    let system = Matrix::from_fn(2 * n, 2 * n, |r, c| match (r < n, c < n) {
        (true, true) => p(r, c) - delta(r, c),
        (true, false) => q(r, c - n),
        (false, true) => q(r - n, c),
        (false, false) => -p(r - n, c - n) - delta(r - n, c - n),
    });
    let kernel = system.kernel_basis();
    if kernel.len() != n {
        return Err(ComplexError::NotRealForm);
    }
    let vectors: Vec<Vec<Qi>> = kernel
        .iter()
        .map(|v| (0..n).map(|k| Qi::new(v[k].clone(), v[n + k].clone())).collect())
        .collect();
    let basis = Matrix::from_columns(n, &vectors);
    if !basis.is_invertible() {
        return Err(ComplexError::NotRealForm);
    }
    let rational = |v: Vec<Qi>| -> Result<Vec<Rational>, ComplexError> {
        v.iter().map(|x| x.to_rational().ok_or(ComplexError::NotRealForm)).collect()
    };
    let coords = |a: &[Qi]| basis.solve(a).ok_or(ComplexError::NotRealForm).and_then(rational);
    let mut table = vec![vec![Vec::new(); n]; n];
    for j in 0..n {
        for k in 0..n {
            table[j][k] = coords(&ia.algebra.mul(&vectors[j], &vectors[k]))?;
        }
    }
    let unit = coords(ia.algebra.unit())?;
    let algebra = ScAlgebra::new(table, unit)?;
    Ok(RealForm { algebra, basis, dim: n })
}

/// `Q(i) ⊗ A_0` with `(λ ⊗ a)* = conj(λ) ⊗ a`.
pub fn induce(a0: &ScAlgebra<Rational>) -> InvolutiveAlgebra {
    let algebra = a0.map_field(|x| Qi::from_rational(x.clone()));
    let star = Matrix::identity(a0.dim());
    InvolutiveAlgebra::new(algebra, star).expect("conjugation on scalars is an involution")
}

/// Outcome of checking an explicit isomorphism matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub dim: usize,
    pub invertible: bool,
    pub unital: bool,
    pub multiplicative: bool,
    /// Only meaningful on the complex side.
    pub star_compatible: bool,
}

impl IsoCertificate {
    pub fn holds(&self) -> bool {
        self.invertible && self.unital && self.multiplicative && self.star_compatible
    }
}

fn hom_flags<F: Scalar>(source: ScAlgebra<F>, target: ScAlgebra<F>, matrix: Matrix<F>) -> (bool, bool, bool) {
    let invertible = matrix.is_invertible();
    let hom = RingHom::candidate(Arc::new(source), Arc::new(target), matrix);
    match hom.map(|h| h.validate()) {
        Ok(Ok(())) => (invertible, true, true),
        Ok(Err(HomViolation::Unit)) => (invertible, false, false),
        Ok(Err(_)) => (invertible, true, false),
        Err(_) => (false, false, false),
    }
}

/// `ζ : A_0 → H(I(A_0))`, sending `a` to its coordinates in the hermitian basis.
pub fn zeta_certificate(a0: &ScAlgebra<Rational>) -> Result<IsoCertificate, ComplexError> {
    let real = hermitian_subring(&induce(a0))?;
    let h = Matrix::from_fn(a0.dim(), a0.dim(), |r, c| {
        real.basis[(r, c)].to_rational().expect("hermitian basis of an induced algebra is rational")
    });
    let zeta = h.inverse().map_err(|_| ComplexError::NotRealForm)?;
    let (invertible, unital, multiplicative) = hom_flags(a0.clone(), real.algebra, zeta);
    Ok(IsoCertificate { dim: a0.dim(), invertible, unital, multiplicative, star_compatible: true })
}

/// `η : I(H(A)) → A`, sending the `j`-th basis vector to the `j`-th hermitian vector.
pub fn eta_certificate(ia: &InvolutiveAlgebra) -> Result<IsoCertificate, ComplexError> {
    let real = hermitian_subring(ia)?;
    let induced = induce(&real.algebra);
    // η(conj(a)) = S·conj(η(a)) for all a  ⇔  H = S·conj(H)
    let star_compatible = real.basis == ia.star.mul(&real.basis.conj()).expect("square");
    let (invertible, unital, multiplicative) = hom_flags(induced.algebra, ia.algebra.clone(), real.basis);
    Ok(IsoCertificate { dim: ia.algebra.dim(), invertible, unital, multiplicative, star_compatible })
}

/// Both round trips: `H∘I ≅ Id` on `A_0` and `I∘H ≅ Id` on `I(A_0)` with its
/// canonical involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub zeta: IsoCertificate,
    pub eta: IsoCertificate,
}

pub fn equivalence_roundtrip(a0: &ScAlgebra<Rational>) -> Result<RoundTrip, ComplexError> {
    let zeta = zeta_certificate(a0)?;
    let eta = eta_certificate(&canonical_involution(induce(a0).algebra())?)?;
    Ok(RoundTrip { zeta, eta })
}

/// `MSpec(Q(i) ⊗ A_0) → MSpec(A_0)` by restriction of characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub complex_characters: Vec<Character<Qi>>,
    pub real_characters: Vec<Character<Rational>>,
    /// `matching[c]` is the index of the restriction of complex character `c`.
    pub matching: Vec<usize>,
    pub bijective: bool,
    /// `χ(e_j)` equals the restricted character's value on every basis element.
    pub dev_compatible: bool,
}

pub fn base_change_mspec(a0: &ScAlgebra<Rational>) -> Result<BaseChange, ComplexError> {
    let real_characters = split_characters(a0)?;
    let complex_characters = split_characters(induce(a0).algebra())?;
    let mut matching = Vec::with_capacity(complex_characters.len());
    for (c, chi) in complex_characters.iter().enumerate() {
        let restricted: Vec<Rational> = chi
            .values()
            .iter()
            .map(|v| v.to_rational().ok_or(ComplexError::NotRational(c)))
            .collect::<Result<_, _>>()?;
        let restricted = Character::new(restricted);
        matching.push(real_characters.iter().position(|r| *r == restricted).ok_or(ComplexError::NotRational(c))?);
    }
    let mut seen = matching.clone();
    seen.sort_unstable();
    seen.dedup();
    let bijective = seen.len() == matching.len() && matching.len() == real_characters.len();
    let dev_compatible = complex_characters.iter().zip(&matching).all(|(chi, &r)| {
        (0..a0.dim()).all(|j| {
            chi.eval(&induce(a0).algebra().basis(j)) == Qi::from_rational(real_characters[r].eval(&a0.basis(j)))
        })
    });
    Ok(BaseChange { complex_characters, real_characters, matching, bijective, dev_compatible })
}

/// Complex Banach* axioms: unit norm, definiteness, `‖a²‖ = ‖a‖²`,
/// submultiplicativity and `‖a·a*‖ = ‖a‖²`, all on squared norms.
pub fn check_banach_star_complex(
    ia: &InvolutiveAlgebra,
    norm_sq: impl Fn(&[Qi]) -> Rational,
    samples: &[Vec<Qi>],
) -> Result<BanachReport, ComplexError> {
    let mut checks = crate::duality::check_common(&ia.algebra, &norm_sq, samples)?;
    for a in samples {
        checks += 1;
        let na = norm_sq(a);
        if norm_sq(&ia.algebra.mul(a, &ia.star(a))) != &na * &na {
            return Err(crate::duality::violation(Axiom::StarNorm, a).into());
        }
    }
    Ok(BanachReport { samples: samples.len(), checks })
}

/// The real check applied to the hermitian real form, in its own coordinates.
pub fn check_real_form_banach(ia: &InvolutiveAlgebra, samples: &[Vec<Rational>]) -> Result<BanachReport, ComplexError> {
    let real = hermitian_subring(ia)?;
    let canon = CanonicalStructure::new(&real.algebra)?;
    Ok(check_banach_star_real(&real.algebra, |a| canon.norm_sq(a), samples)?)
}

/// Swap-and-conjugate on `Q(i)^2`: a valid involution that is not the canonical one.
pub fn doctored_swap_star() -> InvolutiveAlgebra {
    let alg = crate::rings::function_ring::<Qi>(2);
    let swap = Matrix::from_fn(2, 2, |r, c| if r != c { Qi::one() } else { Qi::zero() });
    InvolutiveAlgebra::new(alg, swap).expect("swap is an automorphism")
}

/// Plain coordinate norm, for use with [`check_banach_star_complex`] on function algebras.
pub fn coordinate_norm_sq(a: &[Qi]) -> Rational {
    coefficient_norm_sq(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::rings::{function_ring, scramble};

    fn g(re: i64, im: i64) -> Qi {
        Qi::from_ints(re, im)
    }

    fn quadratic(b: Qi, c: Qi) -> ScAlgebra<Qi> {
        let one = vec![Qi::one(), Qi::zero()];
        let t = vec![Qi::zero(), Qi::one()];
        ScAlgebra::new(vec![vec![one.clone(), t.clone()], vec![t, vec![-c, -b]]], one).unwrap()
    }

    #[test]
    fn canonical_on_function_algebra_is_conjugation() {
        let ia = canonical_involution(&function_ring::<Qi>(2)).unwrap();
        assert_eq!(ia.star(&[g(1, 1), g(2, 0)]), vec![g(1, -1), g(2, 0)]);
        assert_eq!(ia.star_matrix(), &Matrix::identity(2));
    }

    #[test]
    fn scrambled_star_matches_transported_conjugation() {
        let p = Matrix::from_fn(3, 3, |r, c| match (r, c) {
            (0, 1) => g(0, 1),
            (1, 2) => g(1, 1),
            (r, c) if r == c => g(1, 0),
            _ => g(0, 0),
        });
        let s = scramble(&function_ring::<Qi>(3), &p).unwrap();
        let ia = canonical_involution(&s.algebra).unwrap();
        // new coordinates a correspond to old P·a; conjugation there pulls back to P⁻¹·conj(P)·conj(a)
        let expect = p.inverse().unwrap().mul(&p.conj()).unwrap();
        assert_eq!(ia.star_matrix(), &expect);
        let h = hermitian_subring(&ia).unwrap();
        assert_eq!(h.dim, 3);
        assert_eq!(split_characters(&h.algebra).unwrap().len(), 3);
    }

    #[test]
    fn non_split_quadratic_refused() {
        // t^2 + i has no root in Q(i)
        let err = canonical_involution(&quadratic(g(0, 0), g(0, 1))).unwrap_err();
        assert!(err.is_not_k_valued(), "{err:?}");
    }

    #[test]
    fn hermitian_examples() {
        let h = hermitian_subring(&canonical_involution(&function_ring::<Qi>(2)).unwrap()).unwrap();
        assert_eq!(h.vectors(), vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(1, 0)]]);
        let one = hermitian_subring(&canonical_involution(&function_ring::<Qi>(1)).unwrap()).unwrap();
        assert_eq!(one.vectors(), vec![vec![g(1, 0)]]);
    }

    #[test]
    fn induce_examples() {
        let ia = induce(&function_ring::<Rational>(2));
        assert_eq!(ia.algebra(), &function_ring::<Qi>(2));
        assert_eq!(ia.star(&[g(1, 1), g(0, -2)]), vec![g(1, -1), g(0, 2)]);
        // Q[t]/(t^2 - t) induces a split algebra
        let one = vec![int(1), int(0)];
        let t = vec![int(0), int(1)];
        let idem = ScAlgebra::new(vec![vec![one.clone(), t.clone()], vec![t.clone(), t]], one).unwrap();
        assert_eq!(split_characters(induce(&idem).algebra()).unwrap().len(), 2);
        let b = base_change_mspec(&idem).unwrap();
        assert!(b.bijective && b.dev_compatible);
    }

    #[test]
    fn round_trips() {
        for n in 1..=3 {
            let r = equivalence_roundtrip(&function_ring::<Rational>(n)).unwrap();
            assert!(r.zeta.holds() && r.eta.holds(), "{r:?}");
        }
        let s = scramble(&function_ring::<Rational>(3), &Matrix::from_i64s(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 1]])).unwrap();
        let r = equivalence_roundtrip(&s.algebra).unwrap();
        assert!(r.zeta.holds() && r.eta.holds());
    }

    #[test]
    fn base_change_refuses_circle() {
        let one = vec![int(1), int(0)];
        let t = vec![int(0), int(1)];
        let circle = ScAlgebra::new(vec![vec![one.clone(), t.clone()], vec![t, vec![int(-1), int(0)]]], one).unwrap();
        assert!(base_change_mspec(&circle).unwrap_err().is_not_k_valued());
        let b = base_change_mspec(&function_ring::<Rational>(3)).unwrap();
        assert_eq!(b.matching, vec![0, 1, 2]);
    }

    #[test]
    fn complex_banach() {
        let ia = canonical_involution(&function_ring::<Qi>(2)).unwrap();
        let a = vec![g(1, 1), g(0, 0)];
        assert_eq!(coordinate_norm_sq(&ia.algebra().mul(&a, &ia.star(&a))), int(4));
        assert!(check_banach_star_complex(&ia, coordinate_norm_sq, &[a, vec![g(2, -1), g(0, 3)]]).is_ok());
        let err = check_banach_star_complex(&doctored_swap_star(), coordinate_norm_sq, &[vec![g(1, 0), g(0, 0)]]);
        assert!(matches!(
            err,
            Err(ComplexError::Duality(DualityError::AxiomViolation { axiom: Axiom::StarNorm, .. }))
        ));
        let real = check_real_form_banach(&ia, &[vec![rat(1, 2), int(-3)]]).unwrap();
        assert_eq!(real.samples, 1);
    }

    #[test]
    fn rejects_bad_star() {
        let alg = function_ring::<Qi>(2);
        let twice = Matrix::identity(2).scale(&g(2, 0));
        assert!(matches!(InvolutiveAlgebra::new(alg, twice), Err(ComplexError::NotInvolution(_))));
    }
}
