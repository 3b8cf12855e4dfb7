use std::fs;
use std::sync::Arc;

use bcring::approx::{density_certificate, RepresentedFn};
use bcring::complexify::{
    canonical_involution, eta_certificate, equivalence_roundtrip, hermitian_subring, induce, InvolutiveAlgebra,
};
use bcring::duality::{
    check_banach_star_real, f_functor, hom_to_map, naturality_holds, norm_agrees_across_runs, refl_alg, scc_finite,
    CanonicalStructure, DualityError, FinSpace, SpaceMap,
};
use bcring::exact::{GaussianRational, Poly, Rational, Scalar};
use bcring::json::{
    matrix_from_json, matrix_to_json, ring_spec_from_json, ring_spec_to_json, sc_to_json, star_from_json,
    vector_from_json, vector_to_json, JsonError,
};
use bcring::profinite::{refine_covering, ClopenSet, InverseSystem, ProfiniteError};
use bcring::rings::{function_ring, RingHom, RingSpec, ScAlgebra};
use bcring::sample;
use bcring::spectra::demos::{demo_non_hausdorff, demo_preimage_not_maximal};
use bcring::spectra::{dev_with, split_characters_with, MaxSpectrum, SplitConfig};
use bcring::suites::{run_suite, suite_by_name, SuiteConfig, SUITES};
use serde_json::{json, Value};

use crate::report::{classify, Failure, Outcome};
use crate::{Cli, Verb};

type Qi = GaussianRational;

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.verb {
        Verb::RingMspec => ring_mspec(cli, false),
        Verb::RingSplit => ring_mspec(cli, true),
        Verb::DualityRoundtrip => duality_roundtrip(cli),
        Verb::Scc => scc(cli),
        Verb::NormCheck => norm_check(cli),
        Verb::ProfiniteRefine => profinite_refine(cli),
        Verb::ApproxDensity => approx_density(cli),
        Verb::ComplexHermitian => complex_hermitian(cli),
        Verb::ComplexRoundtrip => complex_roundtrip(cli),
        Verb::DemoNonfunctorial => demo_nonfunctorial(),
        Verb::DemoNonhausdorff => demo_nonhausdorff(cli),
        Verb::Suite { name } => suite(cli, name),
    }
}

fn input(cli: &Cli) -> Result<Value, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| Failure::Schema("--input is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Schema(JsonError::from(e).to_string()))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::Schema(format!("missing field {key:?}")))
}

fn split_config(cli: &Cli) -> SplitConfig {
    let mut cfg = SplitConfig::default();
    if let Some(cap) = cli.norm_cap {
        cfg.norm_cap = cap;
    }
    cfg
}

fn labels(v: &Value, key: &str) -> Result<FinSpace, Failure> {
    let items = get(v, key)?
        .as_array()
        .ok_or_else(|| Failure::Schema(format!("{key:?} must be an array of labels")))?
        .iter()
        .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Failure::Schema(format!("{key:?} labels must be strings"))))
        .collect::<Result<Vec<_>, _>>()?;
    FinSpace::new(items).map_err(|e| Failure::Schema(e.to_string()))
}

fn indices(v: &Value, key: &str) -> Result<Vec<usize>, Failure> {
    get(v, key)?
        .as_array()
        .ok_or_else(|| Failure::Schema(format!("{key:?} must be an array of indices")))?
        .iter()
        .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| Failure::Schema(format!("{key:?} entries must be indices"))))
        .collect()
}

fn is_qi(v: &Value) -> Result<bool, Failure> {
    match v.get("field").and_then(Value::as_str) {
        None | Some("Q") => Ok(false),
        Some("Qi") => Ok(true),
        Some(other) => Err(Failure::Schema(format!("unknown field {other:?}"))),
    }
}

const MSPEC_PROPERTY: &str = "maximal ideals of the ring, as kernels of characters where the ring is an algebra";

fn sc_mspec<F: Scalar>(a: &ScAlgebra<F>, cfg: &SplitConfig, ring: Value) -> Result<Outcome, Failure> {
    let characters = split_characters_with(a, cfg).map_err(classify(MSPEC_PROPERTY))?;
    let dev = dev_with(a, cfg).map_err(classify(MSPEC_PROPERTY))?;
    let valid = characters.iter().all(|c| c.validate(a).is_ok());
    let mspec: Vec<Value> = characters
        .iter()
        .map(|c| Value::Array(c.kernel_basis().iter().map(|v| vector_to_json(v)).collect()))
        .collect();
    Ok(Outcome {
        property: MSPEC_PROPERTY,
        holds: valid,
        result: json!({
            "ring": ring,
            "mspec": mspec,
            "characters": characters.iter().map(|c| vector_to_json(c.values())).collect::<Vec<_>>(),
            "dev_bijective": dev.bijective,
            "error": null,
        }),
    })
}

fn ring_mspec(cli: &Cli, split_only: bool) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    let spec = ring_spec_from_json(&v)?;
    let ring = ring_spec_to_json(&spec);
    let cfg = split_config(cli);
    let simple = |mspec: Vec<Value>| Outcome {
        property: MSPEC_PROPERTY,
        holds: true,
        result: json!({"ring": ring.clone(), "mspec": mspec, "characters": null, "dev_bijective": null, "error": null}),
    };
    match &spec {
        RingSpec::ScQ(a) => sc_mspec(a, &cfg, ring.clone()),
        RingSpec::ScQi(a) => sc_mspec(a, &cfg, ring.clone()),
        _ if split_only => Err(Failure::Schema("ring-split needs a structure-constant algebra (kind \"sc\")".into())),
        RingSpec::ZMod(z) => {
            let primes = z.mspec().map_err(classify(MSPEC_PROPERTY))?;
            Ok(simple(primes.iter().map(|p| json!(format!("({p})"))).collect()))
        }
        RingSpec::Bool(b) => {
            let points = b.mspec().map_err(classify(MSPEC_PROPERTY))?;
            Ok(simple(points.iter().map(|&x| json!(format!("m_{}", b.ground()[x]))).collect()))
        }
    }
}

const DUALITY_PROPERTY: &str = "maps of finite spaces and homomorphisms of their function rings determine each other";

fn duality_for<F: Scalar>(v: &Value) -> Result<Outcome, Failure> {
    let (x, y) = (labels(v, "source")?, labels(v, "target")?);
    let refl = |s: &FinSpace| refl_alg::<F>(s).map(|r| r.bijective).map_err(classify(DUALITY_PROPERTY));
    let reflections = json!({"source": refl(&x)?, "target": refl(&y)?});
    if let Some(m) = v.get("matrix") {
        // a homomorphism K^source → K^target, recovered as a map target → source
        let matrix = matrix_from_json::<F>(m, x.len())?;
        if matrix.rows() != y.len() {
            return Err(Failure::Schema("matrix needs one row per target point".into()));
        }
        let phi = RingHom::new(Arc::new(function_ring(x.len())), Arc::new(function_ring(y.len())), matrix)
            .map_err(|e| Failure::Schema(format!("not a ring homomorphism: {e}")))?;
        return match hom_to_map(&phi, &x, &y) {
            Ok(f) => {
                let back = f_functor::<F>(&f).matrix() == phi.matrix();
                Ok(Outcome {
                    property: DUALITY_PROPERTY,
                    holds: back,
                    result: json!({"map": f.assignment(), "f_functor_recovers_hom": back, "reflection_bijective": reflections}),
                })
            }
            Err(DualityError::NotInduced(point)) => Ok(Outcome {
                property: DUALITY_PROPERTY,
                holds: false,
                result: json!({"witness": {"point": y.labels()[point]}, "reflection_bijective": reflections}),
            }),
            Err(e) => Err(classify(DUALITY_PROPERTY)(e)),
        };
    }
    let f = SpaceMap::new(x.clone(), y.clone(), indices(v, "assignment")?).map_err(|e| Failure::Schema(e.to_string()))?;
    let hom = f_functor::<F>(&f);
    let back = hom_to_map(&hom, &y, &x).map_err(classify(DUALITY_PROPERTY))?;
    let natural = naturality_holds::<F>(&f).map_err(classify(DUALITY_PROPERTY))?;
    let round = back.assignment() == f.assignment();
    Ok(Outcome {
        property: DUALITY_PROPERTY,
        holds: round && natural,
        result: json!({
            "f_functor": matrix_to_json(hom.matrix()),
            "recovered": back.assignment(),
            "round_trip": round,
            "naturality": natural,
            "reflection_bijective": reflections,
        }),
    })
}

fn duality_roundtrip(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    if is_qi(&v)? {
        duality_for::<Qi>(&v)
    } else {
        duality_for::<Rational>(&v)
    }
}

const SCC_PROPERTY: &str = "every map to a finite space factors uniquely through the reflection into the maximal spectrum";

fn scc(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    let x = labels(&v, "space")?;
    let cap = cli.max_size.unwrap_or(3);
    let cert = if is_qi(&v)? {
        scc_finite::<Qi>(&x, cap).map(|s| s.certificate)
    } else {
        scc_finite::<Rational>(&x, cap).map(|s| s.certificate)
    }
    .map_err(classify(SCC_PROPERTY))?;
    Ok(Outcome {
        property: SCC_PROPERTY,
        holds: cert.c_bijective && cert.factorizations_unique && cert.algebraic_route_agrees,
        result: serde_json::to_value(&cert).expect("serializable"),
    })
}

const NORM_PROPERTY: &str = "the canonical norm makes the ring a Banach* ring";

fn axiom_failure(e: DualityError) -> Result<Value, Failure> {
    match e {
        DualityError::AxiomViolation { axiom, element } => Ok(json!({"axiom": axiom, "element": element})),
        other => Err(classify(NORM_PROPERTY)(other)),
    }
}

fn norm_report<F: Scalar>(
    a: &ScAlgebra<F>,
    cli: &Cli,
    check: impl Fn(&CanonicalStructure<F>, &[Vec<F>]) -> Result<Option<Value>, Failure>,
) -> Result<Outcome, Failure> {
    let canon = CanonicalStructure::with_config(a, &split_config(cli)).map_err(classify(NORM_PROPERTY))?;
    let mut rng = sample::rng(cli.seed);
    let count = cli.samples.unwrap_or(1000);
    let xs: Vec<Vec<F>> = (0..count).map(|_| sample::vector(&mut rng, a.dim(), 20, 6)).collect();
    let violation = check(&canon, &xs)?;
    let unique = norm_agrees_across_runs(a, (cli.seed, cli.seed.wrapping_add(1)), &xs).map_err(classify(NORM_PROPERTY))?;
    Ok(Outcome {
        property: NORM_PROPERTY,
        holds: violation.is_none() && unique,
        result: json!({
            "field": F::TAG.to_string(),
            "dim": a.dim(),
            "samples": count,
            "violation": violation,
            "norm_agrees_across_splitter_runs": unique,
        }),
    })
}

fn norm_check(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    match ring_spec_from_json(&v)? {
        RingSpec::ScQ(a) => norm_report(&a, cli, |canon, xs| {
            match check_banach_star_real(&a, |x| canon.norm_sq(x), xs) {
                Ok(_) => Ok(None),
                Err(e) => axiom_failure(e).map(Some),
            }
        }),
        RingSpec::ScQi(a) => norm_report(&a, cli, |canon, xs| {
            let ia = canonical_involution(&a).map_err(classify(NORM_PROPERTY))?;
            match bcring::complexify::check_banach_star_complex(&ia, |x| canon.norm_sq(x), xs) {
                Ok(_) => Ok(None),
                Err(bcring::complexify::ComplexError::Duality(e)) => axiom_failure(e).map(Some),
                Err(e) => Err(classify(NORM_PROPERTY)(e)),
            }
        }),
        _ => Err(Failure::Schema("norm-check needs a structure-constant algebra (kind \"sc\")".into())),
    }
}

const REFINE_PROPERTY: &str = "a clopen covering of a profinite tower is refined by the covering induced by one level";

fn profinite_refine(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    let sys = InverseSystem::from_json(get(&v, "system")?)?;
    let cover = get(&v, "cover")?
        .as_array()
        .ok_or_else(|| Failure::Schema("\"cover\" must be an array of clopen sets".into()))?
        .iter()
        .map(|c| ClopenSet::from_json(&sys, c))
        .collect::<Result<Vec<_>, _>>()?;
    match refine_covering(&sys, &cover) {
        Ok(cert) => {
            let valid = cert.validate(&sys, &cover);
            Ok(Outcome {
                property: REFINE_PROPERTY,
                holds: valid,
                result: json!({
                    "k0": cert.k0,
                    "rho": cert.rho,
                    "validates": valid,
                    "refinement": cert.induced_covering(&sys).iter().map(ClopenSet::to_json).collect::<Vec<_>>(),
                }),
            })
        }
        Err(ProfiniteError::NotACovering { witness }) => Ok(Outcome {
            property: REFINE_PROPERTY,
            holds: false,
            result: json!({"uncovered": witness.to_string()}),
        }),
        Err(e) => Err(Failure::Schema(e.to_string())),
    }
}

const DENSITY_PROPERTY: &str = "step functions are dense: the certified step function lies within epsilon";

fn approx_density(cli: &Cli) -> Result<Outcome, Failure> {
    let epsilon = cli.epsilon.unwrap_or(1e-3);
    let (sys, f) = match &cli.input {
        Some(_) => {
            let v = input(cli)?;
            let sys = InverseSystem::from_json(get(&v, "system")?)?;
            let f = RepresentedFn::from_json(&sys, get(&v, "function")?)?;
            (sys, f)
        }
        None => {
            let sys = InverseSystem::cantor(cli.depth.unwrap_or(21));
            let f = RepresentedFn::cantor_binary_value(&sys).map_err(classify(DENSITY_PROPERTY))?;
            (sys, f)
        }
    };
    let cert = density_certificate(&sys, &f, epsilon).map_err(classify(DENSITY_PROPERTY))?;
    Ok(Outcome {
        property: DENSITY_PROPERTY,
        holds: cert.bound < epsilon,
        result: serde_json::to_value(&cert).expect("serializable"),
    })
}

const HERMITIAN_PROPERTY: &str = "the fixed points of the involution form a real form of the algebra";
const ROUNDTRIP_PROPERTY: &str = "taking hermitian parts and complexifying are mutually inverse up to explicit isomorphisms";

fn involutive(v: &Value, a: ScAlgebra<Qi>, property: &'static str) -> Result<InvolutiveAlgebra, Failure> {
    match star_from_json(v, a.dim())? {
        Some(star) => InvolutiveAlgebra::new(a, star).map_err(|e| Failure::Schema(e.to_string())),
        None => canonical_involution(&a).map_err(classify(property)),
    }
}

fn complex_hermitian(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    let ia = match ring_spec_from_json(&v)? {
        RingSpec::ScQi(a) => involutive(&v, a, HERMITIAN_PROPERTY)?,
        RingSpec::ScQ(a) => induce(&a),
        _ => return Err(Failure::Schema("complex-hermitian needs a structure-constant algebra (kind \"sc\")".into())),
    };
    let real = hermitian_subring(&ia).map_err(classify(HERMITIAN_PROPERTY))?;
    let cfg = split_config(cli);
    let complex_points = split_characters_with(ia.algebra(), &cfg).map(|c| c.len()).ok();
    let real_points = split_characters_with(&real.algebra, &cfg).map(|c| c.len()).ok();
    Ok(Outcome {
        property: HERMITIAN_PROPERTY,
        holds: real.dim == ia.algebra().dim() && complex_points == real_points,
        result: json!({
            "star": matrix_to_json(ia.star_matrix()),
            "hermitian_basis": real.vectors().iter().map(|b| vector_to_json(b)).collect::<Vec<_>>(),
            "real_form": sc_to_json(&real.algebra),
            "characters": {"complex": complex_points, "real_form": real_points},
        }),
    })
}

fn complex_roundtrip(cli: &Cli) -> Result<Outcome, Failure> {
    let v = input(cli)?;
    match ring_spec_from_json(&v)? {
        RingSpec::ScQ(a) => {
            let rt = equivalence_roundtrip(&a).map_err(classify(ROUNDTRIP_PROPERTY))?;
            Ok(Outcome {
                property: ROUNDTRIP_PROPERTY,
                holds: rt.zeta.holds() && rt.eta.holds(),
                result: serde_json::to_value(&rt).expect("serializable"),
            })
        }
        RingSpec::ScQi(a) => {
            let ia = involutive(&v, a, ROUNDTRIP_PROPERTY)?;
            let eta = eta_certificate(&ia).map_err(classify(ROUNDTRIP_PROPERTY))?;
            Ok(Outcome { property: ROUNDTRIP_PROPERTY, holds: eta.holds(), result: json!({"eta": eta}) })
        }
        _ => Err(Failure::Schema("complex-roundtrip needs a structure-constant algebra (kind \"sc\")".into())),
    }
}

fn demo_nonfunctorial() -> Result<Outcome, Failure> {
    let r = demo_preimage_not_maximal();
    Ok(Outcome {
        property: "preimages of maximal ideals need not be maximal, so the maximal spectrum is not functorial",
        holds: r.ideal_maximal && !r.maximal,
        result: serde_json::to_value(&r).expect("serializable"),
    })
}

fn demo_nonhausdorff(cli: &Cli) -> Result<Outcome, Failure> {
    const PROPERTY: &str = "two nonempty principal open sets of the maximal spectrum of Q[t] always meet";
    let v = input(cli)?;
    let poly = |key: &str| -> Result<Poly<Rational>, Failure> { Ok(Poly::new(vector_from_json(get(&v, key)?)?)) };
    let (a, b) = (poly("a")?, poly("b")?);
    let w = demo_non_hausdorff(&a, &b).map_err(|e| Failure::Schema(e.to_string()))?;
    Ok(Outcome {
        property: PROPERTY,
        holds: w.candidates_tried <= w.candidate_bound,
        result: serde_json::to_value(&w).expect("serializable"),
    })
}

fn suite(cli: &Cli, name: &str) -> Result<Outcome, Failure> {
    let criteria: Vec<u8> = if name == "all" {
        (1..=SUITES.len() as u8).collect()
    } else {
        let known: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        vec![suite_by_name(name).ok_or_else(|| {
            Failure::Schema(format!("unknown suite {name:?}; expected \"all\" or one of {}", known.join(", ")))
        })?]
    };
    let cfg = SuiteConfig {
        seed: cli.seed,
        max_size: cli.max_size,
        epsilon: cli.epsilon,
        depth: cli.depth,
        samples: cli.samples,
        norm_cap: cli.norm_cap,
    };
    let reports: Vec<_> = criteria.iter().map(|&c| run_suite(c, &cfg).expect("known criterion")).collect();
    let property = if let [single] = criteria.as_slice() { SUITES[usize::from(*single) - 1].1 } else { "all acceptance properties" };
    Ok(Outcome {
        property,
        holds: reports.iter().all(|r| r.passed),
        result: serde_json::to_value(&reports).expect("serializable"),
    })
}
