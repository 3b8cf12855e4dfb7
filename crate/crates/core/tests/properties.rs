use std::collections::BTreeSet;

use bcring::approx::{density_certificate, quantize, RepresentedFn};
use bcring::complexify::{equivalence_roundtrip, hermitian_subring, induce};
use bcring::exact::{int, rat, rational_roots, root_multiplicities, GaussianRational, Matrix, Poly, Rational, DEFAULT_NORM_CAP};
use bcring::profinite::{refine_covering, step_decompose, ClopenSet, InverseSystem, StepFn};
use bcring::rings::{function_ring, scramble, transport, CommRing, ZMod};
use bcring::sample;
use bcring::spectra::split_characters;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn poly(cs: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(cs)
}

/// Rank by fraction-free elimination over the integers.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[r][c]);
            let pivot = m[rank].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot) {
                *x = a * *x - b * p;
            }
            let g = m[r].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn int_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn square_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))
}

fn tower(seed: u64) -> InverseSystem {
    let mut rng = sample::rng(seed);
    let levels = rng.gen_range(1..=5);
    let fanout = rng.gen_range(1..=3);
    InverseSystem::random(&mut rng, levels, fanout)
}

fn random_clopen<R: Rng>(rng: &mut R, sys: &InverseSystem) -> ClopenSet {
    let level = rng.gen_range(0..=sys.depth());
    let members: Vec<usize> = (0..sys.size(level)).filter(|_| rng.gen_bool(0.5)).collect();
    ClopenSet::new(sys, level, members).unwrap()
}

/// Points of the deepest level lying in `c`.
fn points(sys: &InverseSystem, c: &ClopenSet) -> BTreeSet<usize> {
    c.pullback(sys, sys.depth()).unwrap()
}

fn random_step<R: Rng>(rng: &mut R, sys: &InverseSystem, values: i64) -> StepFn<Rational> {
    let level = rng.gen_range(0..=sys.depth());
    let vals = (0..sys.size(level)).map(|_| int(rng.gen_range(0..values))).collect();
    StepFn::new(sys, level, vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_divmod_round_trip(f in prop::collection::vec(-20i64..=20, 0..8), g in prop::collection::vec(-20i64..=20, 1..5)) {
        let (f, g) = (poly(&f), poly(&g));
        prop_assume!(!g.is_zero());
        let (q, r) = f.divmod(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&r), f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn roots_of_linear_products(roots in prop::collection::vec((-9i64..=9, 1i64..=4), 0..5), lead in 1i64..=6) {
        let rs: Vec<Rational> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
        let f = Poly::from_roots(&rs).scale(&int(lead));
        let mut expected: Vec<Rational> = rs.clone();
        expected.sort();
        expected.dedup();
        prop_assert_eq!(rational_roots(&f).unwrap(), expected.clone());
        let mult = root_multiplicities(&f, DEFAULT_NORM_CAP).unwrap();
        for (r, m) in mult {
            prop_assert_eq!(m, rs.iter().filter(|x| **x == r).count());
        }
    }

    #[test]
    fn gaussian_roots_of_linear_products(roots in prop::collection::vec((-4i64..=4, -4i64..=4), 1..4)) {
        let rs: Vec<GaussianRational> = roots.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect();
        let f = Poly::from_roots(&rs);
        let found = bcring::exact::gaussian_rational_roots(&f).unwrap();
        let distinct = rs.iter().enumerate().filter(|(i, r)| !rs[..*i].contains(r)).count();
        prop_assert_eq!(found.len(), distinct);
        for r in &found {
            prop_assert!(rs.contains(r));
        }
    }

    #[test]
    fn cayley_hamilton(rows in square_matrix(6)) {
        let m = int_matrix(&rows);
        let p = m.char_poly().unwrap();
        prop_assert_eq!(p.degree(), Some(rows.len()));
        prop_assert!(p.leading().unwrap().is_one());
        prop_assert!(m.eval_poly(&p).unwrap().is_zero());
    }

    #[test]
    fn kernel_matches_independent_rank(rows in small_matrix(6)) {
        let m = int_matrix(&rows);
        let rank = integer_rank(&rows);
        prop_assert_eq!(m.rank(), rank);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - rank);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !kernel.is_empty() {
            prop_assert_eq!(Matrix::from_rows(kernel.clone()).rank(), kernel.len());
        }
    }

    #[test]
    fn inverse_and_solve(seed: u64, n in 1usize..=5) {
        let mut rng = sample::rng(seed);
        let p: Matrix<Rational> = sample::invertible_matrix(&mut rng, n, 3);
        let inv = p.inverse().unwrap();
        prop_assert_eq!(p.mul(&inv).unwrap(), Matrix::identity(n));
        let b: Vec<Rational> = sample::vector(&mut rng, n, 9, 4);
        let x = p.solve(&b).unwrap();
        prop_assert_eq!(p.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn scrambled_function_ring_characters_are_rows(seed: u64, n in 1usize..=5) {
        let mut rng = sample::rng(seed);
        let p: Matrix<Rational> = sample::invertible_matrix(&mut rng, n, 3);
        let s = scramble(&function_ring::<Rational>(n), &p).unwrap();
        let mut found: Vec<Vec<Rational>> =
            split_characters(&s.algebra).unwrap().into_iter().map(|c| c.values().to_vec()).collect();
        found.sort();
        let mut rows = p.to_rows();
        rows.sort();
        prop_assert_eq!(found, rows);
        let back = transport(&s.algebra, &p.inverse().unwrap()).unwrap();
        prop_assert!(back.is_standard_function_ring());
    }

    #[test]
    fn zmod_units_are_coprime_residues(n in 1u64..5000, a in any::<u64>()) {
        let ring = ZMod::new(n).unwrap();
        let a = a % n;
        match ring.inverse(&a) {
            Some(b) => {
                prop_assert_eq!(ring.mul(&a, &b), ring.one());
                prop_assert!(n == 1 || a.gcd(&n) == 1);
            }
            None => prop_assert!(n > 1 && a.gcd(&n) > 1),
        }
    }

    #[test]
    fn clopen_boolean_laws(seed: u64) {
        let sys = tower(seed);
        let mut rng = sample::rng(seed ^ 1);
        let (a, b, c) = (random_clopen(&mut rng, &sys), random_clopen(&mut rng, &sys), random_clopen(&mut rng, &sys));
        let all: BTreeSet<usize> = (0..sys.size(sys.depth())).collect();
        let (pa, pb, pc) = (points(&sys, &a), points(&sys, &b), points(&sys, &c));
        prop_assert_eq!(points(&sys, &a.union(&b, &sys)), &pa | &pb);
        prop_assert_eq!(points(&sys, &a.intersect(&b, &sys)), &pa & &pb);
        prop_assert_eq!(points(&sys, &a.symmetric_difference(&b, &sys)), &pa ^ &pb);
        prop_assert_eq!(points(&sys, &a.complement(&sys)), &all - &pa);
        prop_assert_eq!(a.union(&b, &sys), b.union(&a, &sys));
        prop_assert_eq!(
            a.intersect(&b.union(&c, &sys), &sys),
            a.intersect(&b, &sys).union(&a.intersect(&c, &sys), &sys)
        );
        prop_assert_eq!(a.complement(&sys).complement(&sys), a.clone());
        prop_assert_eq!(
            a.union(&b, &sys).complement(&sys),
            a.complement(&sys).intersect(&b.complement(&sys), &sys)
        );
        prop_assert_eq!(a.is_empty(), pa.is_empty());
        prop_assert_eq!(a.is_full(&sys), pa == all);
        prop_assert_eq!(&pc, &points(&sys, &ClopenSet::new(&sys, c.level(), c.members().iter().copied()).unwrap()));
    }

    #[test]
    fn idempotent_step_functions_are_indicators(seed: u64) {
        let sys = tower(seed);
        let mut rng = sample::rng(seed ^ 2);
        let s = random_step(&mut rng, &sys, 3);
        let indicator = s.as_indicator(&sys);
        prop_assert_eq!(s.is_idempotent(), indicator.is_some());
        if let Some(c) = indicator {
            prop_assert!(StepFn::<Rational>::indicator(&sys, &c).same_function(&s, &sys));
        }
        let c = random_clopen(&mut rng, &sys);
        let e = StepFn::<Rational>::indicator(&sys, &c);
        prop_assert!(e.is_idempotent());
        prop_assert_eq!(e.as_indicator(&sys), Some(c));
    }

    #[test]
    fn decomposition_rebuilds_the_function(seed: u64) {
        let sys = tower(seed);
        let mut rng = sample::rng(seed ^ 3);
        let s = random_step(&mut rng, &sys, 5);
        let parts = step_decompose(&sys, &s);
        let mut total = StepFn::constant(&sys, Rational::zero());
        let mut seen = BTreeSet::new();
        for (value, part) in &parts {
            let pts = points(&sys, part);
            prop_assert!(!pts.is_empty());
            prop_assert!(seen.is_disjoint(&pts));
            seen.extend(pts);
            total = total.add(&StepFn::indicator(&sys, part).scale(value), &sys);
        }
        prop_assert_eq!(seen.len(), sys.size(sys.depth()));
        prop_assert!(total.same_function(&s, &sys));
        let values: BTreeSet<&Rational> = parts.iter().map(|(v, _)| v).collect();
        prop_assert_eq!(values.len(), parts.len());
    }

    #[test]
    fn step_functions_close_under_ring_operations(seed: u64) {
        let sys = tower(seed);
        let mut rng = sample::rng(seed ^ 4);
        let (f, g) = (random_step(&mut rng, &sys, 7), random_step(&mut rng, &sys, 7));
        let (sum, prod) = (f.add(&g, &sys), f.mul(&g, &sys));
        prop_assert_eq!(sum.level(), f.level().max(g.level()));
        let d = sys.depth();
        for z in 0..sys.size(d) {
            let (x, y) = (f.value_at(&sys, d, z), g.value_at(&sys, d, z));
            prop_assert_eq!(sum.value_at(&sys, d, z), &(x + y));
            prop_assert_eq!(prod.value_at(&sys, d, z), &(x * y));
        }
        prop_assert!(f.lift(&sys, d).unwrap().same_function(&f, &sys));
    }

    #[test]
    fn refinement_certificates_validate(seed: u64, parts in 1usize..6) {
        let sys = tower(seed);
        let mut rng = sample::rng(seed ^ 5);
        let mut cover: Vec<ClopenSet> = (0..parts).map(|_| random_clopen(&mut rng, &sys)).collect();
        let covered = cover.iter().fold(ClopenSet::empty(), |acc, c| acc.union(c, &sys));
        let rest = covered.complement(&sys);
        if !rest.is_empty() {
            cover.push(rest);
        }
        let cert = refine_covering(&sys, &cover).unwrap();
        prop_assert!(cert.validate(&sys, &cover));
        prop_assert!(cover.iter().all(|c| c.level() <= cert.k0));
        for (z, piece) in cert.induced_covering(&sys).iter().enumerate() {
            prop_assert!(points(&sys, piece).is_subset(&points(&sys, &cover[cert.rho[z]])));
        }
    }

    #[test]
    fn quantization_error_is_bounded(lo in -1e3f64..1e3, width in 1e-6f64..1e3, ts in prop::collection::vec(0.0f64..=1.0, 1..50), k in 1u32..=20) {
        let hi = lo + width;
        let values: Vec<f64> = ts.iter().map(|t| (lo + t * width).clamp(lo, hi)).collect();
        let q = quantize(&values, [lo, hi], k).unwrap();
        let exact = |x: f64| Rational::from_float(x).unwrap();
        let bound = exact(q.bound);
        prop_assert!(exact(hi) - exact(lo) <= bound.clone() * Rational::from_integer(1u64.checked_shl(k).unwrap().into()));
        for (v, w) in values.iter().zip(&q.values) {
            prop_assert!(w >= v && *w <= hi);
            prop_assert!(exact(*w) - exact(*v) <= bound);
        }
    }

    #[test]
    fn density_levels_grow_as_epsilon_shrinks(e1 in 1e-5f64..1.0, e2 in 1e-5f64..1.0) {
        let sys = InverseSystem::cantor(18);
        let f = RepresentedFn::cantor_binary_value(&sys).unwrap();
        let (small, large) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let (a, b) = (density_certificate(&sys, &f, small).unwrap(), density_certificate(&sys, &f, large).unwrap());
        prop_assert!(a.level >= b.level);
        prop_assert!(a.bound <= small && b.bound <= large);
        let d = sys.depth();
        let slack = f.osc()[d];
        for z in (0..sys.size(d)).step_by(997) {
            let err = (a.step.value_at(&sys, d, z) - f.values(d)[z]).abs();
            prop_assert!(err <= a.bound + slack);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induced_involution_laws(seed: u64, n in 1usize..=4) {
        let mut rng = sample::rng(seed);
        let p: Matrix<Rational> = sample::invertible_matrix(&mut rng, n, 2);
        let a0 = transport(&function_ring::<Rational>(n), &p).unwrap();
        let ia = induce(&a0);
        let alg = ia.algebra().clone();
        for _ in 0..4 {
            let a: Vec<GaussianRational> = sample::vector(&mut rng, n, 5, 3);
            let b: Vec<GaussianRational> = sample::vector(&mut rng, n, 5, 3);
            prop_assert_eq!(ia.star(&ia.star(&a)), a.clone());
            prop_assert_eq!(ia.star(&alg.mul(&a, &b)), alg.mul(&ia.star(&a), &ia.star(&b)));
            prop_assert_eq!(ia.star(&alg.add(&a, &b)), alg.add(&ia.star(&a), &ia.star(&b)));
        }
        prop_assert_eq!(ia.star(&alg.one()), alg.one());
        let real = hermitian_subring(&ia).unwrap();
        prop_assert_eq!(real.dim, n);
        for v in real.vectors() {
            prop_assert_eq!(ia.star(&v), v);
        }
        let rt = equivalence_roundtrip(&a0).unwrap();
        prop_assert!(rt.zeta.holds() && rt.eta.holds());
    }
}
