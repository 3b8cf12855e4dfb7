use serde::Serialize;

use super::{f_functor, refl_alg, DualityError, FinSpace, Reflection, SpaceMap};
use crate::exact::Scalar;
use crate::sample::all_assignments;
use crate::spectra::mspec_map;

/// Outcome of checking the universal property against every small target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccCertificate {
    pub space: Vec<String>,
    #[serde(rename = "barX_size")]
    pub barx_size: usize,
    pub c_bijective: bool,
    /// Largest target size enumerated; larger targets are not examined.
    pub target_cap: usize,
    /// Number of maps `f : X → Y` checked across all targets.
    pub targets_checked: usize,
    pub factorizations_unique: bool,
    /// Whether `refl_Y⁻¹ ∘ MSpec(F(f))` is the factorization found by enumeration.
    pub algebraic_route_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct Scc<F> {
    pub barx: FinSpace,
    pub c: SpaceMap,
    pub reflection: Reflection<F>,
    pub certificate: SccCertificate,
}

/// `X̄ = MSpec(K^X)` with `c = refl_alg`, and an enumerative check that every
/// `f : X → Y` with `|Y| ≤ target_cap` factors uniquely as `f̄ ∘ c`.
pub fn scc_finite<F: Scalar>(x: &FinSpace, target_cap: usize) -> Result<Scc<F>, DualityError> {
    let reflection = refl_alg::<F>(x)?;
    let inverse = reflection.inverse();
    let barx = FinSpace::new(
        inverse
            .iter()
            .enumerate()
            .map(|(k, p)| match p {
                Some(xi) => format!("Ker(ev_{})", x.labels()[*xi]),
                None => format!("m{k}"),
            })
            .collect(),
    )?;
    let c = SpaceMap::new(x.clone(), barx.clone(), reflection.map.clone())?;

    let mut targets_checked = 0;
    let mut unique = true;
    let mut agrees = true;
    for m in 0..=target_cap {
        let y = FinSpace::anonymous("y", m);
        let refl_y = refl_alg::<F>(&y)?;
        for f in all_assignments(x.len(), m) {
            targets_checked += 1;
            let factorizations: Vec<Vec<usize>> = all_assignments(barx.len(), m)
                .filter(|g| c.assignment().iter().zip(&f).all(|(&k, &fx)| g[k] == fx))
                .collect();
            if factorizations.len() != 1 {
                unique = false;
                continue;
            }
            let fmap = SpaceMap::new(x.clone(), y.clone(), f)?;
            let ms = mspec_map(&f_functor::<F>(&fmap))?;
            let algebraic: Option<Vec<usize>> = reflection
                .characters
                .iter()
                .map(|chi| {
                    let t = ms.target_characters.iter().position(|c| c == chi)?;
                    refl_y.point_of(&ms.source_characters[ms.map[t]])
                })
                .collect();
            if algebraic.as_ref() != Some(&factorizations[0]) {
                agrees = false;
            }
        }
    }
    let certificate = SccCertificate {
        space: x.labels().to_vec(),
        barx_size: barx.len(),
        c_bijective: reflection.bijective,
        target_cap,
        targets_checked,
        factorizations_unique: unique,
        algebraic_route_agrees: agrees,
    };
    Ok(Scc { barx, c, reflection, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rational};

    #[test]
    fn singleton_and_empty() {
        let one = scc_finite::<Rational>(&FinSpace::anonymous("x", 1), 2).unwrap();
        assert_eq!(one.certificate.barx_size, 1);
        assert!(one.certificate.factorizations_unique && one.certificate.c_bijective);
        let empty = scc_finite::<Rational>(&FinSpace::anonymous("x", 0), 2).unwrap();
        assert_eq!(empty.certificate.barx_size, 0);
        // one empty map into each of the three targets
        assert_eq!(empty.certificate.targets_checked, 3);
        assert!(empty.certificate.factorizations_unique);
    }

    #[test]
    fn three_points_cap_three() {
        let s = scc_finite::<GaussianRational>(&FinSpace::anonymous("x", 3), 3).unwrap();
        // 0, 1, 8 and 27 maps into targets of size 0..=3
        assert_eq!(s.certificate.targets_checked, 36);
        assert!(s.certificate.factorizations_unique);
        assert!(s.certificate.algebraic_route_agrees);
        assert_eq!(s.barx.labels()[s.c.apply(1)], "Ker(ev_x1)");
    }
}
