//! Mixed-norm monotonicity, duality, the embedding inequality, and
//! modulation norms.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tftk::coeff::{Axis, CoeffArray};
use tftk::gabor::{CanonicalKind, GaborLattice, GaborSystem};
use tftk::norms::{
    check_weight_laws, embedding_constant, mixed_norm, modulation_norm_full,
    modulation_norm_lattice, Exponent, MixedNormSpec, Permutation, Weight,
};
use tftk::signal::{gaussian_window, Signal, Window};

fn random_array(rng: &mut ChaCha8Rng, extents: &[usize]) -> CoeffArray {
    let axes: Vec<Axis> = extents
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            if i % 2 == 0 {
                Axis::time(i / 2 + 1, e)
            } else {
                Axis::frequency(i / 2 + 1, e)
            }
        })
        .collect();
    let len = extents.iter().product();
    CoeffArray::new(
        axes,
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Signal {
    Signal::new(
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

#[test]
fn exponent_monotonicity_unweighted() {
    // p_i <= r_i entrywise implies norm with r <= norm with p
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let menu = [1.0, 1.25, 1.5, 2.0, 3.0, f64::INFINITY];
    for trial in 0..500 {
        let extents = if trial % 2 == 0 { vec![4usize, 5] } else { vec![3usize, 3, 2, 4] };
        let a = random_array(&mut rng, &extents);
        let m = extents.len();
        let mut lo = Vec::with_capacity(m);
        let mut hi = Vec::with_capacity(m);
        for _ in 0..m {
            let i = rng.gen_range(0..menu.len());
            let j = rng.gen_range(i..menu.len());
            lo.push(Exponent::new(menu[i]).unwrap());
            hi.push(Exponent::new(menu[j]).unwrap());
        }
        let spec_lo =
            MixedNormSpec::new(lo, Permutation::identity(m), Weight::One).unwrap();
        let spec_hi =
            MixedNormSpec::new(hi, Permutation::identity(m), Weight::One).unwrap();
        let n_lo = mixed_norm(&a, &spec_lo).unwrap();
        let n_hi = mixed_norm(&a, &spec_hi).unwrap();
        assert!(n_hi <= n_lo * (1.0 + 1e-12) + 1e-12, "{n_hi} > {n_lo}");
    }
}

#[test]
fn weight_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for _ in 0..500 {
        let a = random_array(&mut rng, &[5, 4]);
        let s = rng.gen_range(0.0..2.0);
        let t = rng.gen_range(0.0..=s);
        let p = vec![Exponent::Finite(rng.gen_range(1.0..3.0)); 2];
        let with_t = MixedNormSpec::new(
            p.clone(),
            Permutation::identity(2),
            Weight::Poly { s: t },
        )
        .unwrap();
        let with_s =
            MixedNormSpec::new(p, Permutation::identity(2), Weight::Poly { s }).unwrap();
        let nt = mixed_norm(&a, &with_t).unwrap();
        let ns = mixed_norm(&a, &with_s).unwrap();
        assert!(nt <= ns * (1.0 + 1e-12) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn permutation_round_trip(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_array(&mut rng, &[2, 3, 2, 2]);
        // Fisher-Yates over 4 slots
        let mut image: Vec<usize> = (1..=4).collect();
        for i in (1..4).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        let c = Permutation::from_one_based(&image).unwrap();
        let round =
            tftk::norms::permute_axes(&tftk::norms::permute_axes(&a, &c).unwrap(), &c.inverse())
                .unwrap();
        prop_assert_eq!(round, a);
    }

    #[test]
    fn equal_exponents_are_permutation_invariant(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_array(&mut rng, &[3, 3, 3, 3]);
        let p = [1.0, 1.5, 2.0][seed as usize % 3];
        let mut image: Vec<usize> = (1..=4).collect();
        for i in (1..4).rev() {
            let j = rng.gen_range(0..=i);
            image.swap(i, j);
        }
        let c = Permutation::from_one_based(&image).unwrap();
        // radial weights commute with coordinate permutations on equal extents
        for weight in [Weight::One, Weight::Poly { s: 1.0 }] {
            let id_spec = MixedNormSpec::new(
                vec![Exponent::Finite(p); 4],
                Permutation::identity(4),
                weight.clone(),
            )
            .unwrap();
            let perm_spec =
                MixedNormSpec::new(vec![Exponent::Finite(p); 4], c.clone(), weight).unwrap();
            let n0 = mixed_norm(&a, &id_spec).unwrap();
            let n1 = mixed_norm(&a, &perm_spec).unwrap();
            prop_assert!((n0 - n1).abs() <= 1e-12 * n0.max(1.0));
        }
    }
}

#[test]
fn duality_pairing_bound() {
    // |sum A conj(B)| <= ||A||_{p,c,w} ||B||_{p',c,1/w}
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..200 {
        let a = random_array(&mut rng, &[4, 3, 2]);
        let b = CoeffArray::new(
            a.axes().to_vec(),
            (0..a.values().len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap();
        let image = [[1usize, 2, 3], [2, 3, 1], [3, 1, 2]][rng.gen_range(0..3)];
        let spec = MixedNormSpec::new(
            vec![
                Exponent::new([1.0, 1.5, 2.0][rng.gen_range(0..3)]).unwrap(),
                Exponent::new([1.0, 2.0, f64::INFINITY][rng.gen_range(0..3)]).unwrap(),
                Exponent::new([1.25, 4.0][rng.gen_range(0..2)]).unwrap(),
            ],
            Permutation::from_one_based(&image).unwrap(),
            Weight::Poly { s: rng.gen_range(-1.0..1.0) },
        )
        .unwrap();
        let pairing = a.inner(&b).unwrap().norm();
        let bound = mixed_norm(&a, &spec).unwrap() * mixed_norm(&b, &spec.conjugate()).unwrap();
        assert!(pairing <= bound * (1.0 + 1e-12) + 1e-12, "{pairing} > {bound}");
    }
}

#[test]
fn embedding_inequality_with_computed_constant() {
    // ||x||_{2,2,p,p} <= C ||x||_{2,2,2,2; outer weight v_s}
    let (d, s, p) = (1usize, 1.0f64, 1.5f64);
    let constant = embedding_constant(d, s, p, 64).unwrap().constant_with_tail;
    let lhs_spec = MixedNormSpec::new(
        vec![
            Exponent::Finite(2.0),
            Exponent::Finite(2.0),
            Exponent::Finite(p),
            Exponent::Finite(p),
        ],
        Permutation::identity(4),
        Weight::One,
    )
    .unwrap();
    let rhs_spec = MixedNormSpec::new(
        vec![Exponent::Finite(2.0); 4],
        Permutation::identity(4),
        Weight::PolyOuter { s, outer: 2 },
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2021);
    for _ in 0..500 {
        let x = random_array(&mut rng, &[5, 5, 7, 7]);
        let lhs = mixed_norm(&x, &lhs_spec).unwrap();
        let rhs = mixed_norm(&x, &rhs_spec).unwrap();
        assert!(lhs <= constant * rhs + 1e-12, "{lhs} > {constant} * {rhs}");
    }
}

#[test]
fn modulation_norm_special_values() {
    let n = 8usize;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = Window::normalized(random_signal(&mut rng, n)).unwrap();
    let g = gaussian_window(n).unwrap();
    let l22 = MixedNormSpec::unweighted(&[2.0, 2.0]).unwrap();
    // orthogonality relation: unit f, unit g gives sqrt(N)
    let got = modulation_norm_full(f.signal(), &g, &l22).unwrap();
    assert!((got - (n as f64).sqrt()).abs() <= 1e-10);
    // zero signal
    let zero = Signal::zeros(n).unwrap();
    assert_eq!(modulation_norm_full(&zero, &g, &l22).unwrap(), 0.0);
    // equal exponents: same value for every permutation
    let p11 = MixedNormSpec::new(
        vec![Exponent::Finite(1.5); 2],
        Permutation::from_one_based(&[2, 1]).unwrap(),
        Weight::One,
    )
    .unwrap();
    let p11_id = MixedNormSpec::unweighted(&[1.5, 1.5]).unwrap();
    let a = modulation_norm_full(f.signal(), &g, &p11_id).unwrap();
    let b = modulation_norm_full(f.signal(), &g, &p11).unwrap();
    assert!((a - b).abs() <= 1e-12 * a);
}

#[test]
fn lattice_modulation_norms() {
    let n = 16usize;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sys = GaborSystem::new(
        GaborLattice::new(n, 2, 2).unwrap(),
        gaussian_window(n).unwrap(),
    )
    .unwrap();
    let tight = sys.canonical_system(CanonicalKind::Tight).unwrap();
    let l22 = MixedNormSpec::unweighted(&[2.0, 2.0]).unwrap();
    for _ in 0..20 {
        let f = random_signal(&mut rng, n);
        let got = modulation_norm_lattice(&f, &tight, &l22).unwrap();
        assert!((got - f.norm()).abs() <= 1e-10 * f.norm());
    }
    // orthonormal basis: l1 norm of the basis coefficients
    let onb = GaborSystem::new(
        GaborLattice::new(n, 1, n).unwrap(),
        Window::unit(Signal::delta(n, 0).unwrap()).unwrap(),
    )
    .unwrap();
    let l11 = MixedNormSpec::unweighted(&[1.0, 1.0]).unwrap();
    let f = random_signal(&mut rng, n);
    let got = modulation_norm_lattice(&f, &onb, &l11).unwrap();
    let want: f64 = f.values().iter().map(|z| z.norm()).sum();
    assert!((got - want).abs() <= 1e-12 * want);
}

#[test]
fn lattice_to_full_norm_ratio_is_bounded() {
    // empirical two-sided comparison of lattice-sampled and full-grid norms
    let n = 16usize;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = gaussian_window(n).unwrap();
    let sys = GaborSystem::new(GaborLattice::new(n, 2, 2).unwrap(), g.clone()).unwrap();
    for ps in [[1.0, 1.0], [2.0, 2.0], [1.5, 2.0], [2.0, 1.0]] {
        let spec = MixedNormSpec::unweighted(&ps).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for _ in 0..100 {
            let f = Window::normalized(random_signal(&mut rng, n)).unwrap();
            let lattice = modulation_norm_lattice(f.signal(), &sys, &spec).unwrap();
            let full = modulation_norm_full(f.signal(), &g, &spec).unwrap();
            let ratio = lattice / full;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        assert!(lo > 0.0 && hi.is_finite() && lo <= hi, "p = {ps:?}: [{lo}, {hi}]");
    }
}

#[test]
fn weight_law_sampler_agrees_with_exhaustive_small_box() {
    // oracle: exhaustive submultiplicativity of v_s on [-8, 8]^2
    let v = Weight::Poly { s: 1.7 };
    let mut worst: f64 = 0.0;
    for z1a in -8i64..=8 {
        for z1b in -8i64..=8 {
            for z2a in -8i64..=8 {
                for z2b in -8i64..=8 {
                    let r = v.eval(&[z1a + z2a, z1b + z2b]).unwrap()
                        / (v.eval(&[z1a, z1b]).unwrap() * v.eval(&[z2a, z2b]).unwrap());
                    worst = worst.max(r);
                }
            }
        }
    }
    assert!(worst <= 1.0 + 1e-12);
    let report = check_weight_laws(&v, &v, 2000, 9).unwrap();
    assert!(report.submultiplicative_max_ratio <= worst + 1e-12);
}
