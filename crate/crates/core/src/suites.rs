//! Seeded property suites, one per acceptance criterion. Each returns a
//! deterministic report; wall-clock limits are enforced by the callers.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::approx::{density_certificate, quantize, RepresentedFn};
use crate::complexify::{
    canonical_involution, check_banach_star_complex, doctored_swap_star, equivalence_roundtrip, eta_certificate,
};
use crate::duality::{
    check_banach_star_real, check_contractive_with, coefficient_norm_sq, f_functor, hom_to_map, naturality_holds,
    refl_alg, scc_finite, CanonicalStructure, DualityError, FinSpace,
};
use crate::exact::{GaussianRational, Matrix, Poly, Rational, Scalar};
use crate::profinite::{refine_covering, ClopenSet, InverseSystem};
use crate::rings::{function_ring, is_unit, polynomial_quotient, scramble, transport, RingHom, ScAlgebra, ZMod};
use crate::sample;
use crate::spectra::demos::{demo_non_hausdorff, demo_preimage_not_maximal};
use crate::spectra::{dev_with, split_characters_with, zer_in, MaxSpectrum, SplitConfig, SpectraError};

type Qi = GaussianRational;

/// Knobs shared by all suites; `None` selects the acceptance parameters.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_size: Option<usize>,
    pub epsilon: Option<f64>,
    pub depth: Option<usize>,
    pub samples: Option<usize>,
    pub norm_cap: Option<u64>,
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn split(&self) -> SplitConfig {
        let mut cfg = SplitConfig::default();
        if let Some(cap) = self.norm_cap {
            cfg.norm_cap = cap;
        }
        cfg
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub criterion: u8,
    pub suite: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failure_count: usize,
    /// The first few failing cases.
    pub failures: Vec<String>,
    pub details: Value,
}

impl SuiteReport {
    fn new(criterion: u8) -> Self {
        let (suite, property) = SUITES[usize::from(criterion) - 1];
        Self {
            criterion,
            suite,
            property,
            passed: true,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            details: Value::Null,
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(case());
            }
        }
    }
}

/// Suite names with the property each one exercises, indexed by criterion.
pub const SUITES: [(&str, &str); 12] = [
    ("duality", "finite spaces and function rings are dual: both round trips are identities and reflection is natural"),
    ("splitter", "the character splitter recovers the hidden idempotent basis of a scrambled function ring"),
    ("not-k-valued", "rings with a residue field larger than the base field are refused, split ones are not"),
    ("units", "an element is a unit exactly when no maximal ideal contains it"),
    ("scc", "the reflection into the maximal spectrum has the universal property of the compactification"),
    ("banach", "function rings with the canonical norm and involution satisfy the Banach* axioms"),
    ("contractive", "ring homomorphisms between function rings are contractive and respect the involution"),
    ("refinement", "every clopen covering of a profinite tower is refined by the covering of some level"),
    ("density", "step functions are dense: a certified step function lies within epsilon"),
    ("quantize", "snapping to a dyadic grid of the range moves each value by at most the mesh"),
    ("hermitian", "the hermitian subring and complexification are mutually inverse equivalences"),
    ("demos", "the fraction-field preimage of a maximal ideal is not maximal, and the maximal spectrum is not Hausdorff"),
];

pub fn suite_by_name(name: &str) -> Option<u8> {
    SUITES.iter().position(|(n, _)| *n == name).map(|i| i as u8 + 1)
}

pub fn run_suite(criterion: u8, cfg: &SuiteConfig) -> Option<SuiteReport> {
    Some(match criterion {
        1 => duality(cfg),
        2 => splitter(cfg),
        3 => not_k_valued(cfg),
        4 => units(cfg),
        5 => scc(cfg),
        6 => banach(cfg),
        7 => contractive(cfg),
        8 => refinement(cfg),
        9 => density(cfg),
        10 => quantization(cfg),
        11 => hermitian(cfg),
        12 => demos(cfg),
        _ => return None,
    })
}

/// Every ring homomorphism `K^X → K^Y` with `|X|, |Y| ≤ max`, found by
/// testing every 0/1 matrix rather than by building pullbacks.
pub fn hom_corpus<F: Scalar>(max: usize) -> Vec<(usize, usize, RingHom<F>)> {
    let mut out = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            let (src, tgt) = (Arc::new(function_ring::<F>(n)), Arc::new(function_ring::<F>(m)));
            for code in 0u64..(1u64 << (n * m)) {
                let matrix =
                    Matrix::from_fn(m, n, |r, c| if code >> (r * n + c) & 1 == 1 { F::one() } else { F::zero() });
                if let Ok(h) = RingHom::new(src.clone(), tgt.clone(), matrix) {
                    out.push((n, m, h));
                }
            }
        }
    }
    out
}

fn duality_for<F: Scalar>(report: &mut SuiteReport, max: usize) -> usize {
    let spaces: Vec<FinSpace> = (0..=max).map(|n| FinSpace::anonymous("x", n)).collect();
    for x in &spaces {
        let ok = refl_alg::<F>(x).map(|r| r.bijective).unwrap_or(false);
        report.check(ok, || format!("{}: refl_alg not bijective on {} points", F::TAG, x.len()));
    }
    let corpus = hom_corpus::<F>(max);
    for (n, m, phi) in &corpus {
        let back = hom_to_map(phi, &spaces[*n], &spaces[*m]).map(|f| f_functor::<F>(&f).matrix() == phi.matrix());
        report.check(back == Ok(true), || format!("{}: F(hom_to_map(phi)) != phi for {} <- {}", F::TAG, m, n));
    }
    for n in 0..=max {
        for m in 0..=max {
            let expected = if m == 0 { 1 } else { n.pow(m as u32) };
            let found = corpus.iter().filter(|(a, b, _)| *a == n && *b == m).count();
            report.check(found == expected, || format!("{}: {found} homs K^{n} -> K^{m}, expected {expected}", F::TAG));
            for f in sample::all_assignments(m, n) {
                let map = crate::duality::SpaceMap::new(spaces[m].clone(), spaces[n].clone(), f.clone())
                    .expect("assignment in range");
                let round = hom_to_map(&f_functor::<F>(&map), &spaces[n], &spaces[m]).map(|g| g.assignment() == f);
                report.check(round == Ok(true), || format!("{}: hom_to_map(F(f)) != f for f = {f:?}", F::TAG));
                let natural = naturality_holds::<F>(&map);
                report.check(natural == Ok(true), || format!("{}: naturality fails for f = {f:?}", F::TAG));
            }
        }
    }
    corpus.len()
}

pub fn duality(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(1);
    let max = cfg.max_size.unwrap_or(4);
    let q = duality_for::<Rational>(&mut r, max);
    let qi = duality_for::<Qi>(&mut r, max);
    r.details = json!({"max_size": max, "homs_Q": q, "homs_Qi": qi});
    r
}

fn splitter_for<F: Scalar>(report: &mut SuiteReport, cfg: &SuiteConfig, rng: &mut ChaCha8Rng, count: usize) {
    let split = cfg.split();
    for _ in 0..count {
        let n = rng.gen_range(1..=cfg.max_size.unwrap_or(8));
        let p = sample::invertible_matrix::<F, _>(rng, n, 3);
        let s = scramble(&function_ring::<F>(n), &p).expect("invertible");
        // b_j = Σ_i p[i][j] e_i, so the characters are the rows of p
        let hidden: std::collections::HashSet<Vec<F>> = (0..n).map(|i| p.row(i).to_vec()).collect();
        let found = split_characters_with(&s.algebra, &split).map(|cs| {
            let set: std::collections::HashSet<Vec<F>> = cs.iter().map(|c| c.values().to_vec()).collect();
            (cs.len(), set)
        });
        let ok = matches!(&found, Ok((len, set)) if *len == n && *set == hidden);
        report.check(ok, || format!("{}: n = {n}, scramble {p:?}: got {found:?}", F::TAG));
        let bij = dev_with(&s.algebra, &split).map(|d| d.bijective).unwrap_or(false);
        report.check(bij, || format!("{}: dev not bijective for n = {n}", F::TAG));
    }
}

pub fn splitter(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(2);
    let count = cfg.samples(100);
    let mut rng = cfg.rng(2);
    splitter_for::<Rational>(&mut r, cfg, &mut rng, count);
    splitter_for::<Qi>(&mut r, cfg, &mut rng, count);
    r.details = json!({"scrambles_per_field": count, "max_dim": cfg.max_size.unwrap_or(8)});
    r
}

fn is_rational_square(q: &Rational) -> bool {
    let sq = |n: &BigInt| !n.is_negative() && n.sqrt().pow(2) == *n;
    sq(q.numer()) && sq(q.denom())
}

pub fn not_k_valued(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(3);
    let mut rng = cfg.rng(3);
    let count = cfg.samples(20);
    let split = cfg.split();
    let mut irreducible = Vec::new();
    while irreducible.len() < count {
        let (b, c) = (sample::rational(&mut rng, 9, 4), sample::rational(&mut rng, 9, 4));
        let disc = &b * &b - Rational::from_integer(4.into()) * &c;
        if !is_rational_square(&disc) {
            irreducible.push((b, c));
        }
    }
    for (b, c) in &irreducible {
        let alg = polynomial_quotient(&Poly::new(vec![c.clone(), b.clone(), Rational::one()])).expect("degree 2");
        let res = split_characters_with(&alg, &split);
        r.check(res == Err(SpectraError::NotKValued), || format!("t^2 + ({b})t + ({c}) not refused: {res:?}"));
    }
    for _ in 0..count {
        let (x, y) = (sample::rational(&mut rng, 9, 4), sample::rational(&mut rng, 9, 4));
        let alg = polynomial_quotient(&Poly::from_roots([&x, &y])).expect("degree 2");
        let expected: BTreeSet<Rational> = [x.clone(), y.clone()].into();
        let res = split_characters_with(&alg, &split);
        // a character is determined by the image of t, which must be a root
        let ok = matches!(&res, Ok(cs) if cs.iter().map(|c| c.values()[1].clone()).collect::<BTreeSet<_>>() == expected
            && cs.len() == expected.len());
        r.check(ok, || format!("(t - {x})(t - {y}) falsely refused or mis-split: {res:?}"));
    }
    r.details = json!({"irreducible": count, "split": count});
    r
}

pub fn units(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(4);
    let max = cfg.max_size.unwrap_or(10_000) as u64;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16) as u64;
    let shards: Vec<(usize, Vec<String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let (mut cases, mut bad) = (0usize, Vec::new());
                    for n in (2..=max).filter(|n| n % workers == w) {
                        let ring = ZMod::new(n).expect("positive modulus");
                        let spectrum = ring.mspec().expect("finite");
                        for a in 0..n {
                            cases += 1;
                            let unit = is_unit(&ring, &a).expect("owned").is_unit();
                            let zer_empty = zer_in(&ring, spectrum.clone(), &a).is_empty();
                            if unit != zer_empty || unit != (a.gcd(&n) == 1) {
                                bad.push(format!("n = {n}, a = {a}: unit {unit}, Zer empty {zer_empty}"));
                            }
                        }
                    }
                    (cases, bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    for (cases, bad) in shards {
        r.cases += cases;
        r.failure_count += bad.len();
        r.passed &= bad.is_empty();
        r.failures.extend(bad.into_iter().take(MAX_LISTED_FAILURES - r.failures.len().min(MAX_LISTED_FAILURES)));
    }
    r.details = json!({"max_modulus": max});
    r
}

fn scc_for<F: Scalar>(report: &mut SuiteReport, max: usize) {
    for n in 0..=max {
        let x = FinSpace::anonymous("x", n);
        let res = scc_finite::<F>(&x, max);
        let expected: usize = (0..=max).map(|m| if n == 0 { 1 } else { m.pow(n as u32) }).sum();
        let ok = matches!(&res, Ok(s) if s.certificate.c_bijective
            && s.certificate.factorizations_unique
            && s.certificate.algebraic_route_agrees
            && s.certificate.targets_checked == expected
            && s.barx.len() == n);
        report.check(ok, || format!("{}: |X| = {n}: {:?}", F::TAG, res.map(|s| s.certificate)));
    }
}

pub fn scc(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(5);
    let max = cfg.max_size.unwrap_or(3);
    scc_for::<Rational>(&mut r, max);
    scc_for::<Qi>(&mut r, max);
    r.details = json!({"max_size": max});
    r
}

/// Function rings `K^n`, `1 ≤ n ≤ max`, each plain and through a random scramble.
fn function_ring_corpus<F: Scalar>(rng: &mut ChaCha8Rng, max: usize) -> Vec<ScAlgebra<F>> {
    (1..=max)
        .flat_map(|n| {
            let p = sample::invertible_matrix::<F, _>(rng, n, 2);
            [function_ring::<F>(n), transport(&function_ring::<F>(n), &p).expect("invertible")]
        })
        .collect()
}

pub fn banach(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(6);
    let mut rng = cfg.rng(6);
    let max = cfg.max_size.unwrap_or(6);
    let samples = cfg.samples(1000);
    for alg in function_ring_corpus::<Rational>(&mut rng, max) {
        let xs: Vec<Vec<Rational>> = (0..samples).map(|_| sample::vector(&mut rng, alg.dim(), 20, 6)).collect();
        let res = CanonicalStructure::new(&alg)
            .and_then(|c| check_banach_star_real(&alg, |a| c.norm_sq(a), &xs));
        r.check(res.is_ok(), || format!("Q, dim {}: {res:?}", alg.dim()));
    }
    for alg in function_ring_corpus::<Qi>(&mut rng, max) {
        let xs: Vec<Vec<Qi>> = (0..samples).map(|_| sample::vector(&mut rng, alg.dim(), 20, 6)).collect();
        let res = CanonicalStructure::new(&alg).map_err(Into::into).and_then(|c| {
            let ia = canonical_involution(&alg)?;
            check_banach_star_complex(&ia, |a| c.norm_sq(a), &xs)
        });
        r.check(res.is_ok(), || format!("Qi, dim {}: {res:?}", alg.dim()));
    }
    // Q[t]/(t^2 + 1) with the coefficient norm: 1 + t^2 = 0
    let circle = polynomial_quotient(&Poly::<Rational>::from_i64s(&[1, 0, 1])).expect("degree 2");
    let xs: Vec<Vec<Rational>> = (0..samples).map(|_| sample::vector(&mut rng, 2, 20, 6)).chain([vec![Rational::zero(), Rational::one()]]).collect();
    let neg_real = check_banach_star_real(&circle, coefficient_norm_sq, &xs);
    let real_flagged = matches!(neg_real, Err(DualityError::AxiomViolation { .. }));
    r.check(real_flagged, || format!("doctored real case not flagged: {neg_real:?}"));
    // swap-and-conjugate star on Qi^2 with the sup norm
    let swap = doctored_swap_star();
    let xs: Vec<Vec<Qi>> = (0..samples).map(|_| sample::vector(&mut rng, 2, 20, 6)).collect();
    let neg_complex = check_banach_star_complex(&swap, |a| crate::duality::sup_norm(a).square(), &xs);
    let complex_flagged = neg_complex.as_ref().is_err_and(|e| {
        matches!(e, crate::complexify::ComplexError::Duality(DualityError::AxiomViolation { .. }))
    });
    r.check(complex_flagged, || format!("doctored complex case not flagged: {neg_complex:?}"));
    r.details = json!({
        "max_dim": max,
        "samples_per_algebra": samples,
        "doctored_real": neg_real.err().map(|e| e.to_string()),
        "doctored_complex": neg_complex.err().map(|e| e.to_string()),
    });
    r
}

fn contractive_for<F: Scalar>(report: &mut SuiteReport, rng: &mut ChaCha8Rng, max: usize, samples: usize) -> usize {
    let basis_changes: Vec<Matrix<F>> = (0..=max).map(|n| sample::invertible_matrix::<F, _>(rng, n, 2)).collect();
    let pools: Vec<Vec<Vec<F>>> =
        (0..=max).map(|n| (0..samples).map(|_| sample::vector(rng, n, 20, 6)).collect()).collect();
    let plain: Vec<Arc<ScAlgebra<F>>> = (0..=max).map(|n| Arc::new(function_ring::<F>(n))).collect();
    let scrambled: Vec<Arc<ScAlgebra<F>>> = (0..=max)
        .map(|n| Arc::new(transport(&plain[n], &basis_changes[n]).expect("invertible")))
        .collect();
    let canonical = |algs: &[Arc<ScAlgebra<F>>]| -> Result<Vec<CanonicalStructure<F>>, DualityError> {
        algs.iter().map(|a| CanonicalStructure::new(a)).collect()
    };
    let (plain_cs, scrambled_cs) = match (canonical(&plain), canonical(&scrambled)) {
        (Ok(p), Ok(s)) => (p, s),
        (p, s) => {
            report.check(false, || format!("{}: canonical structure unavailable: {:?} {:?}", F::TAG, p.err(), s.err()));
            return 0;
        }
    };
    let plain_pools: Vec<_> = plain_cs.iter().zip(&pools).map(|(c, p)| c.prepare(p)).collect();
    let scrambled_pools: Vec<_> = scrambled_cs.iter().zip(&pools).map(|(c, p)| c.prepare(p)).collect();
    let corpus = hom_corpus::<F>(max);
    for (n, m, phi) in &corpus {
        let res = check_contractive_with(phi, &plain_cs[*n], &plain_cs[*m], &plain_pools[*n]);
        report.check(res.norm_violations == 0 && res.star_violations == 0, || {
            format!("{}: K^{n} -> K^{m}, {:?}: {res:?}", F::TAG, phi.matrix())
        });
        // the same map between scrambled presentations
        let (p, q) = (&basis_changes[*n], &basis_changes[*m]);
        let matrix = q.inverse().expect("invertible").mul(phi.matrix()).and_then(|t| t.mul(p)).expect("shapes");
        let res = RingHom::new(scrambled[*n].clone(), scrambled[*m].clone(), matrix)
            .map(|h| check_contractive_with(&h, &scrambled_cs[*n], &scrambled_cs[*m], &scrambled_pools[*n]));
        let ok = matches!(&res, Ok(c) if c.norm_violations == 0 && c.star_violations == 0);
        report.check(ok, || format!("{}: scrambled K^{n} -> K^{m}: {res:?}", F::TAG));
    }
    corpus.len()
}

pub fn contractive(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(7);
    let mut rng = cfg.rng(7);
    let max = cfg.max_size.unwrap_or(4);
    let samples = cfg.samples(1000);
    let q = contractive_for::<Rational>(&mut r, &mut rng, max, samples);
    let qi = contractive_for::<Qi>(&mut r, &mut rng, max, samples);
    r.details = json!({"max_size": max, "samples_per_hom": samples, "homs_Q": q, "homs_Qi": qi});
    r
}

/// A random clopen covering: a few random clopen sets, then the uncovered
/// remainder split into up to two more parts.
pub fn random_covering(rng: &mut ChaCha8Rng, sys: &InverseSystem) -> Vec<ClopenSet> {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let level = rng.gen_range(0..=sys.depth());
        let members: Vec<usize> = (0..sys.size(level)).filter(|_| rng.gen_bool(0.4)).collect();
        parts.push(ClopenSet::new(sys, level, members).expect("in range"));
    }
    let covered = parts.iter().fold(ClopenSet::empty(), |acc, p| acc.union(p, sys));
    let rest = covered.complement(sys);
    if !rest.is_empty() {
        let level = rng.gen_range(rest.level()..=sys.depth());
        let points: Vec<usize> = rest.pullback(sys, level).expect("deeper").into_iter().collect();
        let cut = rng.gen_range(0..=points.len());
        for chunk in [&points[..cut], &points[cut..]] {
            if !chunk.is_empty() {
                parts.push(ClopenSet::new(sys, level, chunk.iter().copied()).expect("in range"));
            }
        }
    }
    parts
}

pub fn refinement(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(8);
    let mut rng = cfg.rng(8);
    let towers = cfg.samples(200);
    for t in 0..towers {
        let (levels, fanout) = (rng.gen_range(1..=5), rng.gen_range(1..=3));
        let sys = InverseSystem::random(&mut rng, levels, fanout);
        let cover = random_covering(&mut rng, &sys);
        let max_level = cover.iter().map(ClopenSet::level).max().unwrap_or(0);
        let cert = refine_covering(&sys, &cover);
        // independent recheck: each deepest point lies in the part assigned to its level-k0 ancestor
        let ok = cert.as_ref().is_ok_and(|c| {
            let d = sys.depth();
            c.k0 <= max_level
                && c.rho.len() == sys.size(c.k0)
                && (0..sys.size(d)).all(|z| {
                    let part = &cover[c.rho[sys.project(z, d, c.k0)]];
                    part.members().contains(&sys.project(z, d, part.level()))
                })
                && c.validate(&sys, &cover)
        });
        r.check(ok, || format!("tower {t} {:?}: {cert:?}", sys.sizes()));
    }
    r.details = json!({"towers": towers});
    r
}

pub const DENSITY_EPSILONS: [f64; 3] = [1e-1, 1e-3, 1e-6];

pub fn density(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(9);
    let mut rng = cfg.rng(9);
    let depth = cfg.depth.unwrap_or(21);
    let samples = cfg.samples(10_000);
    let epsilons = cfg.epsilon.map_or(DENSITY_EPSILONS.to_vec(), |e| vec![e]);
    let sys = InverseSystem::cantor(depth);
    let f = match RepresentedFn::cantor_binary_value(&sys) {
        Ok(f) => f,
        Err(e) => {
            r.check(false, || e.to_string());
            return r;
        }
    };
    let two64 = Rational::from_integer(BigInt::one() << 64);
    let mut certs = Vec::new();
    for &eps in &epsilons {
        let cert = match density_certificate(&sys, &f, eps) {
            Ok(c) => c,
            Err(e) => {
                r.check(false, || format!("epsilon {eps}: {e}"));
                continue;
            }
        };
        r.check(cert.bound < eps, || format!("epsilon {eps}: bound {} not below epsilon", cert.bound));
        let tolerance = cert.bound.next_up().next_up();
        let exact_bound = Rational::from_float(cert.bound).expect("finite");
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let x: u64 = rng.gen();
            let prefix = (x >> (64 - cert.level)) as usize;
            let step = cert.step.values()[prefix];
            let truth = Rational::from_integer(x.into()) / &two64;
            let err_exact = (truth.clone() - Rational::from_float(step).expect("finite")).abs();
            let err = (x as f64 * (-64f64).exp2() - step).abs();
            worst = worst.max(err);
            r.check(err <= tolerance && err_exact <= exact_bound, || {
                format!("epsilon {eps}: x = {x:#018x}, |f - step| = {err} exceeds {}", cert.bound)
            });
        }
        certs.push(json!({"epsilon": eps, "level": cert.level, "grid": cert.grid, "bound": cert.bound,
            "distinct_values": cert.distinct_values, "max_sampled_error": worst}));
    }
    r.details = json!({"depth": depth, "samples_per_epsilon": samples, "certificates": certs});
    r
}

pub fn quantization(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(10);
    let mut rng = cfg.rng(10);
    let vectors = cfg.samples(1000);
    let ex = |x: f64| Rational::from_float(x).expect("finite");
    for v in 0..vectors {
        // alternate arbitrary ranges with dyadic ones, where the mesh is a double
        let (lo, hi) = if v % 2 == 0 {
            let a: f64 = rng.gen_range(-100.0..100.0);
            (a, a + rng.gen_range(1e-3..50.0))
        } else {
            let a = f64::from(rng.gen_range(-64i32..64)) / 8.0;
            (a, a + f64::from(rng.gen_range(1i32..64)) / 8.0)
        };
        let len = rng.gen_range(1..=64);
        let mut values: Vec<f64> = (0..len).map(|_| rng.gen_range(lo..=hi)).collect();
        values.extend([lo, hi]);
        let width = ex(hi) - ex(lo);
        for k in 1..=10u32 {
            let q = match quantize(&values, [lo, hi], k) {
                Ok(q) => q,
                Err(e) => {
                    r.check(false, || format!("vector {v}, k = {k}: {e}"));
                    continue;
                }
            };
            let mesh = &width / Rational::from_integer(BigInt::one() << k);
            let within = values.iter().zip(&q.values).all(|(a, b)| (ex(*b) - ex(*a)).abs() <= mesh);
            let count = q.values.iter().map(|x| x.to_bits()).collect::<BTreeSet<_>>().len();
            r.check(within && count <= (1 << k) + 1, || {
                format!("vector {v} on [{lo}, {hi}], k = {k}: within {within}, {count} values")
            });
            if v % 2 == 1 {
                // the left end point is moved by exactly one mesh
                r.check(ex(q.values[len]) - ex(lo) == mesh, || format!("no tight witness on [{lo}, {hi}] at k = {k}"));
            }
        }
    }
    r.details = json!({"vectors": vectors, "k": [1, 10]});
    r
}

/// Dimension ≤ `max` rational algebras known to be function rings: `Q^n`,
/// random scrambles of it, and `Q[t]` modulo products of distinct linear factors.
pub fn real_corpus(rng: &mut ChaCha8Rng, max: usize) -> Vec<ScAlgebra<Rational>> {
    let mut out = function_ring_corpus::<Rational>(rng, max);
    for d in 1..=max {
        let mut roots = BTreeSet::new();
        while roots.len() < d {
            roots.insert(sample::rational(rng, 6, 3));
        }
        out.push(polynomial_quotient(&Poly::from_roots(&roots)).expect("positive degree"));
    }
    out
}

pub fn hermitian(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(11);
    let mut rng = cfg.rng(11);
    let max = cfg.max_size.unwrap_or(6);
    let corpus = real_corpus(&mut rng, max);
    for a0 in &corpus {
        let res = equivalence_roundtrip(a0);
        r.check(res.as_ref().is_ok_and(|t| t.zeta.holds() && t.eta.holds()), || {
            format!("Q algebra of dim {}: {res:?}", a0.dim())
        });
    }
    let complex = function_ring_corpus::<Qi>(&mut rng, max);
    for a in &complex {
        let res = canonical_involution(a).and_then(|ia| eta_certificate(&ia));
        r.check(res.as_ref().is_ok_and(|c| c.holds()), || format!("Qi algebra of dim {}: {res:?}", a.dim()));
    }
    r.details = json!({"real_algebras": corpus.len(), "complex_algebras": complex.len(), "max_dim": max});
    r
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly<Rational> {
    // products of small integer linear factors make the early candidates roots
    let deg = rng.gen_range(0..=5);
    let roots: Vec<Rational> = (0..deg)
        .map(|_| if rng.gen_bool(0.7) { Rational::from_integer(rng.gen_range(0..6).into()) } else { sample::rational(rng, 9, 3) })
        .collect();
    let lead = loop {
        let c = sample::rational(rng, 9, 3);
        if !c.is_zero() {
            break c;
        }
    };
    Poly::from_roots(&roots).scale(&lead)
}

pub fn demos(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new(12);
    let mut rng = cfg.rng(12);
    let pre = demo_preimage_not_maximal();
    r.check(pre.ideal_maximal && !pre.maximal && pre.preimage == "(0)" && pre.witness.as_deref().is_some_and(|w| w.ends_with('t')), || {
        format!("preimage demo: {pre:?}")
    });
    let pairs = cfg.samples(100);
    let mut worst = 0usize;
    for _ in 0..pairs {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        let res = demo_non_hausdorff(&a, &b);
        let ok = res.as_ref().is_ok_and(|w| {
            let c = Rational::from_integer(w.c.into());
            let bound = a.degree().unwrap_or(0) + b.degree().unwrap_or(0) + 1;
            w.candidates_tried <= bound && !a.eval(&c).is_zero() && !b.eval(&c).is_zero()
        });
        if let Ok(w) = &res {
            worst = worst.max(w.candidates_tried);
        }
        r.check(ok, || format!("a = {a:?}, b = {b:?}: {res:?}"));
    }
    r.details = json!({"preimage": pre, "pairs": pairs, "max_candidates_tried": worst});
    r
}
