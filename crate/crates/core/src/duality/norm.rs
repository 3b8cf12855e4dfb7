use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::DualityError;
use crate::exact::{FieldTag, Matrix, Rational, Scalar};
use crate::rings::{CommRing, RingHom, ScAlgebra};
use crate::spectra::{dev_with, DevTransform, SplitConfig};

/// A norm value. Over `Qi` the sup of moduli can be irrational, so the
/// square is reported instead and `squared` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormView {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub value: Rational,
    pub squared: bool,
}

impl NormView {
    /// The squared norm, always exact.
    pub fn square(&self) -> Rational {
        if self.squared {
            self.value.clone()
        } else {
            &self.value * &self.value
        }
    }
}

/// Sup of the absolute values of the coordinates.
pub fn sup_norm<F: Scalar>(coords: &[F]) -> NormView {
    match F::TAG {
        FieldTag::Q => NormView {
            value: coords
                .iter()
                .map(|c| c.to_rational().expect("rational field").abs())
                .max()
                .unwrap_or_else(Rational::zero),
            squared: false,
        },
        FieldTag::Qi => NormView { value: coefficient_norm_sq(coords), squared: true },
    }
}

/// Max of the squared moduli of the raw coordinates, with no change of basis.
pub fn coefficient_norm_sq<F: Scalar>(coords: &[F]) -> Rational {
    coords.iter().map(Scalar::modulus_sq).max().unwrap_or_else(Rational::zero)
}

/// The canonical norm and involution of an algebra whose double evaluation is bijective.
#[derive(Clone, Debug)]
pub struct CanonicalStructure<F: Scalar> {
    dev: DevTransform<F>,
    dev_inverse: Matrix<F>,
}

impl<F: Scalar> CanonicalStructure<F> {
    pub fn new(alg: &ScAlgebra<F>) -> Result<Self, DualityError> {
        Self::with_config(alg, &SplitConfig::default())
    }

    pub fn with_config(alg: &ScAlgebra<F>, cfg: &SplitConfig) -> Result<Self, DualityError> {
        let dev = dev_with(alg, cfg)?;
        if !dev.bijective {
            return Err(DualityError::NotBcRing);
        }
        let dev_inverse = dev.matrix.inverse().map_err(|_| DualityError::NotBcRing)?;
        Ok(Self { dev, dev_inverse })
    }

    pub fn dev(&self) -> &DevTransform<F> {
        &self.dev
    }

    pub fn norm(&self, a: &[F]) -> NormView {
        sup_norm(&self.dev.apply(a))
    }

    pub fn norm_sq(&self, a: &[F]) -> Rational {
        coefficient_norm_sq(&self.dev.apply(a))
    }

    /// Coordinatewise conjugation transported through `dev`.
    pub fn star(&self, a: &[F]) -> Vec<F> {
        let conj: Vec<F> = self.dev.apply(a).iter().map(Scalar::conj).collect();
        self.dev_inverse.mul_vec(&conj).expect("square")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    UnitNorm,
    Definite,
    SquareNorm,
    StarNorm,
    Submultiplicative,
    OnePlusSquareInvertible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BanachReport {
    pub samples: usize,
    pub checks: usize,
}

pub(crate) fn show<F: Scalar>(a: &[F]) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn violation<F: Scalar>(axiom: Axiom, a: &[F]) -> DualityError {
    DualityError::AxiomViolation { axiom, element: show(a) }
}

/// Axioms shared by the real and complex checks: unit norm, definiteness,
/// `‖a²‖ = ‖a‖²` and submultiplicativity on consecutive sample pairs.
pub(crate) fn check_common<F: Scalar>(
    alg: &ScAlgebra<F>,
    norm_sq: &impl Fn(&[F]) -> Rational,
    samples: &[Vec<F>],
) -> Result<usize, DualityError> {
    let mut checks = 0;
    if !alg.is_zero_ring() {
        checks += 1;
        if !norm_sq(alg.unit()).is_one() {
            return Err(violation(Axiom::UnitNorm, alg.unit()));
        }
    }
    for (i, a) in samples.iter().enumerate() {
        let na = norm_sq(a);
        checks += 2;
        if na.is_zero() != a.iter().all(Zero::is_zero) {
            return Err(violation(Axiom::Definite, a));
        }
        if norm_sq(&alg.mul(a, a)) != &na * &na {
            return Err(violation(Axiom::SquareNorm, a));
        }
        if let Some(b) = samples.get(i + 1) {
            checks += 1;
            if norm_sq(&alg.mul(a, b)) > na * norm_sq(b) {
                return Err(violation(Axiom::Submultiplicative, a));
            }
        }
    }
    Ok(checks)
}

/// Real Banach* axioms for the norm whose square is `norm_sq`, plus an exact
/// inverse of `1 + a²` for every sample.
pub fn check_banach_star_real<F: Scalar>(
    alg: &ScAlgebra<F>,
    norm_sq: impl Fn(&[F]) -> Rational,
    samples: &[Vec<F>],
) -> Result<BanachReport, DualityError> {
    let mut checks = check_common(alg, &norm_sq, samples)?;
    for a in samples {
        checks += 1;
        let s = alg.add(&alg.one(), &alg.mul(a, a));
        match alg.inverse(&s) {
            Some(inv) if alg.mul(&s, &inv) == alg.one() => {}
            _ => return Err(violation(Axiom::OnePlusSquareInvertible, a)),
        }
    }
    Ok(BanachReport { samples: samples.len(), checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractivityReport {
    pub samples: usize,
    pub norm_violations: usize,
    pub star_violations: usize,
    /// The map is a pullback along a map of finite spaces, so it only drops
    /// or repeats coordinates and cannot increase the sup norm.
    pub automatic: bool,
    pub first_violation: Option<String>,
}

/// Checks `‖φ(a)‖ ≤ ‖a‖` and `φ(a*) = φ(a)*` for the canonical structures on both sides.
pub fn check_contractive<F: Scalar>(phi: &RingHom<F>, samples: &[Vec<F>]) -> Result<ContractivityReport, DualityError> {
    let src = CanonicalStructure::new(phi.source())?;
    let tgt = CanonicalStructure::new(phi.target())?;
    Ok(check_contractive_with(phi, &src, &tgt, &src.prepare(samples)))
}

/// Samples together with their double-evaluation coordinates.
#[derive(Clone, Debug)]
pub struct PreparedSamples<F> {
    samples: Vec<Vec<F>>,
    coords: Vec<Vec<F>>,
}

impl<F: Scalar> CanonicalStructure<F> {
    pub fn prepare(&self, samples: &[Vec<F>]) -> PreparedSamples<F> {
        PreparedSamples { samples: samples.to_vec(), coords: samples.iter().map(|a| self.dev.apply(a)).collect() }
    }
}

/// [`check_contractive`] against canonical structures already computed for
/// the source and target of `phi`. Works in double-evaluation coordinates,
/// where `φ` becomes `T = dev_t·φ·dev_s⁻¹`: the norm condition reads
/// `sup|T d| ≤ sup|d|` and the star condition `T·conj(d) = conj(T·d)`.
pub fn check_contractive_with<F: Scalar>(
    phi: &RingHom<F>,
    src: &CanonicalStructure<F>,
    tgt: &CanonicalStructure<F>,
    prepared: &PreparedSamples<F>,
) -> ContractivityReport {
    let m = phi.matrix();
    let automatic = phi.source().is_standard_function_ring()
        && phi.target().is_standard_function_ring()
        && (0..m.rows()).all(|r| {
            let row = m.row(r);
            row.iter().all(|v| v.is_zero() || v.is_one()) && row.iter().filter(|v| v.is_one()).count() == 1
        });
    let t = tgt.dev.matrix.mul(m).and_then(|x| x.mul(&src.dev_inverse)).expect("shapes match phi");
    let mut report = ContractivityReport {
        samples: prepared.samples.len(),
        norm_violations: 0,
        star_violations: 0,
        automatic,
        first_violation: None,
    };
    for (a, d) in prepared.samples.iter().zip(&prepared.coords) {
        let image = t.mul_vec(d).expect("square");
        let conj_d: Vec<F> = d.iter().map(Scalar::conj).collect();
        let norm_bad = coefficient_norm_sq(&image) > coefficient_norm_sq(d);
        let star_bad = t.mul_vec(&conj_d).expect("square").iter().zip(&image).any(|(x, y)| *x != y.conj());
        report.norm_violations += usize::from(norm_bad);
        report.star_violations += usize::from(star_bad);
        if (norm_bad || star_bad) && report.first_violation.is_none() {
            report.first_violation = Some(show(a));
        }
    }
    report
}

/// Whether two splitter runs with different seeds induce the same norm on every sample.
pub fn norm_agrees_across_runs<F: Scalar>(
    alg: &ScAlgebra<F>,
    seeds: (u64, u64),
    samples: &[Vec<F>],
) -> Result<bool, DualityError> {
    let a = CanonicalStructure::with_config(alg, &SplitConfig { seed: Some(seeds.0), ..Default::default() })?;
    let b = CanonicalStructure::with_config(alg, &SplitConfig { seed: Some(seeds.1), ..Default::default() })?;
    Ok(samples.iter().all(|x| a.norm(x) == b.norm(x)))
}
