use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simpack::lattice::{index, Lattice, Mat2};
use simpack::oracle::{certify_subpacking, enumerate, index_by_counting, scal_set_bruteforce, Window};
use simpack::packing::presets::*;
use simpack::packing::{check_similarity, lcm_witness, scal_set_packing};
use simpack::ring::{ring_gcd, ring_lcm, FieldElem, Ring, RingElem};
use simpack::similarity::{compose, decompose, denominator, scal_lattice, Direction, Similarity};
use simpack::PointPacking;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ring_of(eis: bool) -> Ring {
    if eis {
        Ring::Eisenstein
    } else {
        Ring::Gaussian
    }
}

fn elem() -> impl Strategy<Value = RingElem> {
    (any::<bool>(), -60i64..60, -60i64..60).prop_map(|(e, a, b)| RingElem::from_i64(ring_of(e), a, b))
}

fn nonzero_pair() -> impl Strategy<Value = (RingElem, RingElem)> {
    (any::<bool>(), -30i64..30, -30i64..30, -30i64..30, -30i64..30)
        .prop_filter("nonzero", |t| (t.1, t.2) != (0, 0) && (t.3, t.4) != (0, 0))
        .prop_map(|(e, a, b, c, d)| {
            let r = ring_of(e);
            (RingElem::from_i64(r, a, b), RingElem::from_i64(r, c, d))
        })
}

fn mul(x: &RingElem, y: &RingElem) -> RingElem {
    (&x.to_field() * &y.to_field()).to_ring().unwrap()
}

fn primitive(rng: &mut ChaCha8Rng, ring: Ring, max_norm: i64) -> RingElem {
    loop {
        let a = rng.gen_range(-10i64..=10);
        let b = rng.gen_range(-10i64..=10);
        let z = RingElem::from_i64(ring, a, b);
        if !z.is_zero() && z.is_primitive() && z.norm() <= BigInt::from(max_norm) {
            return z;
        }
    }
}

/// Random packing over `Z[u]` or a small integer sublattice of it, shifts
/// with denominators up to 6.
fn random_packing(rng: &mut ChaCha8Rng, ring: Ring, with_zero: bool, ring_lattice: bool) -> PointPacking {
    let lattice = if ring_lattice || rng.gen_bool(0.5) {
        Lattice::ring_lattice(ring)
    } else {
        let m = Mat2::from_i64([[rng.gen_range(1..=3), rng.gen_range(0..=2)], [0, rng.gen_range(1..=3)]]);
        Lattice::new(ring, &m).unwrap()
    };
    let m = rng.gen_range(1..=4);
    let mut shifts: Vec<FieldElem> = Vec::new();
    if with_zero {
        shifts.push(FieldElem::zero(ring));
    }
    for _ in 0..40 {
        if shifts.len() == m {
            break;
        }
        let d = rng.gen_range(1..=6);
        let c = [q(rng.gen_range(0..d), d), q(rng.gen_range(0..d), d)];
        let x = lattice.point(&c);
        if shifts.iter().all(|y| !lattice.contains(&(&x - y))) {
            shifts.push(x);
        }
    }
    PointPacking::new(lattice, shifts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_multiplicative(x in elem(), y in elem()) {
        let y = RingElem::new(x.ring(), y.a().clone(), y.b().clone());
        prop_assert_eq!(mul(&x, &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn conj_preserves_norm(x in elem()) {
        prop_assert_eq!(x.conj().norm(), x.norm());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn decompose_round_trip(e in any::<bool>(), a in -40i64..40, b in -40i64..40, d1 in 1i64..30, d2 in 1i64..30, conj in any::<bool>()) {
        prop_assume!((a, b) != (0, 0));
        let w = FieldElem::new(ring_of(e), q(a, d1), q(b, d2));
        let s = Similarity::new(w.clone(), conj).unwrap();
        let (r, d) = decompose(&s);
        prop_assert!(r > BigRational::zero());
        prop_assert!(d.z.is_primitive());
        prop_assert_eq!(d.z.to_field().scale(&r), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gcd_divides_and_is_unit_stable((x, y) in nonzero_pair()) {
        let g = ring_gcd(&x, &y).unwrap();
        prop_assert!(g.divides(&x));
        prop_assert!(g.divides(&y));
        prop_assert_eq!(g.canonical_associate(), g.clone());
        for u in x.ring().units() {
            prop_assert_eq!(ring_gcd(&mul(&u, &x), &y).unwrap(), g.clone());
        }
        let l = ring_lcm(&x, &y).unwrap();
        prop_assert!(x.divides(&l) && y.divides(&l));
        prop_assert_eq!(l.norm() * g.norm(), x.norm() * y.norm());
    }
}

#[test]
fn gcd_has_maximal_norm() {
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        let all: Vec<RingElem> = (-15i64..=15)
            .flat_map(|a| (-15i64..=15).map(move |b| RingElem::from_i64(ring, a, b)))
            .filter(|x| !x.is_zero() && x.norm() <= BigInt::from(200))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let x = &all[rng.gen_range(0..all.len())];
            let y = &all[rng.gen_range(0..all.len())];
            let g = ring_gcd(x, y).unwrap();
            let best = all
                .iter()
                .filter(|d| d.divides(x) && d.divides(y))
                .map(|d| d.norm())
                .max()
                .unwrap();
            assert_eq!(g.norm(), best, "gcd({x}, {y}) = {g}");
        }
    }
}

#[test]
fn intersection_and_sum_indices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let ring = ring_of(rng.gen_bool(0.5));
        let mut lat = || {
            let d = rng.gen_range(1..=4);
            let m = Mat2::from_cols(
                [q(rng.gen_range(-6..=6), d), q(rng.gen_range(-6..=6), d)],
                [q(rng.gen_range(-6..=6), d), q(rng.gen_range(-6..=6), d)],
            );
            Lattice::new(ring, &m).ok()
        };
        let (Some(a), Some(b)) = (lat(), lat()) else { continue };
        let i = a.intersect(&b);
        let s = a.sum(&b);
        assert!(i.is_sublattice_of(&a) && i.is_sublattice_of(&b));
        assert!(a.is_sublattice_of(&s) && b.is_sublattice_of(&s));
        assert_eq!(index(&i, &b), index(&a, &s));
        // nested triple
        assert_eq!(index(&i, &s), index(&i, &a) * index(&a, &s));
        // maximality: points of a lying in b lie in a ∩ b
        for _ in 0..4 {
            let c = [q(rng.gen_range(-20..=20), 1), q(rng.gen_range(-20..=20), 1)];
            let x = a.point(&c);
            assert_eq!(b.contains(&x), i.contains(&x));
        }
    }
}

#[test]
fn n_formula_for_ring_lattices() {
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        let gamma = Lattice::ring_lattice(ring);
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                let z = RingElem::from_i64(ring, a, b);
                if z.is_zero() || z.norm() > BigInt::from(50) {
                    continue;
                }
                for qq in 1..=6i64 {
                    for p in [1i64, 5, 7] {
                        if p.gcd(&qq) != 1 {
                            continue;
                        }
                        let w = z.to_field().scale(&q(p, qq));
                        let img = gamma.scale_by(&w).unwrap();
                        let n = index(&gamma.intersect(&img), &img);
                        let g = ring_gcd(&z, &RingElem::from_i64(ring, qq, 0)).unwrap();
                        assert_eq!(n, BigRational::new(BigInt::from(qq * qq), g.norm()), "z={z} p/q={p}/{qq}");
                    }
                }
            }
        }
    }
}

#[test]
fn denominator_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let ring = ring_of(rng.gen_bool(0.5));
        let lattice = if rng.gen_bool(0.5) {
            Lattice::ring_lattice(ring)
        } else {
            Lattice::new(ring, &Mat2::from_i64([[rng.gen_range(1..=3), rng.gen_range(0..=2)], [0, rng.gen_range(1..=3)]])).unwrap()
        };
        let d = Direction::new(primitive(&mut rng, ring, 60), rng.gen_bool(0.3)).unwrap();
        let r = denominator(&lattice, &d);
        let maps_in = |k: &BigRational| {
            let s = Similarity::from_direction(k, &d).unwrap();
            s.image(&lattice).is_sublattice_of(&lattice)
        };
        assert!(maps_in(&r));
        for den in 1..=12i64 {
            for num in 1..=12 * den {
                let k = q(num, den);
                if k >= r {
                    break;
                }
                assert!(!maps_in(&k), "{k} below den {r} for {d}");
            }
        }
    }
}

#[test]
fn scal_is_multiplicative_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gamma = Lattice::ring_lattice(Ring::Gaussian);
    for _ in 0..50 {
        let d1 = Direction::new(primitive(&mut rng, Ring::Gaussian, 40), false).unwrap();
        let d2 = Direction::new(primitive(&mut rng, Ring::Gaussian, 40), rng.gen_bool(0.5)).unwrap();
        let (s1, s2) = (scal_lattice(&gamma, &d1), scal_lattice(&gamma, &d2));
        let k1 = &s1.den * BigRational::from_integer(BigInt::from(rng.gen_range(1..5)));
        let k2 = &s2.den * BigRational::from_integer(BigInt::from(rng.gen_range(1..5)));
        let a = Similarity::from_direction(&k1, &d1).unwrap();
        let b = Similarity::from_direction(&k2, &d2).unwrap();
        let c = compose(&b, &a);
        let (r, d) = decompose(&c);
        assert!(scal_lattice(&gamma, &d).contains(&r), "{c}");
        let neg = Similarity::new(-a.multiplier(), false).unwrap();
        assert!(neg.image(&gamma).is_sublattice_of(&gamma));
    }
}

#[test]
fn engine_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        for _ in 0..80 {
            let zero = rng.gen_bool(0.5);
            let packing = random_packing(&mut rng, ring, zero, false);
            let z = primitive(&mut rng, ring, 100);
            let r = q(rng.gen_range(1..=10), rng.gen_range(1..=4));
            let s = Similarity::from_direction(&r, &Direction::new(z, rng.gen_bool(0.5)).unwrap()).unwrap();
            let report = check_similarity(&packing, &s);
            let cert = certify_subpacking(&packing, &s);
            assert_eq!(report.accepted, cert.contained, "{packing} under {s}");
            if report.accepted {
                assert_eq!(report.tau.len(), packing.m() * report.n.to_string().parse::<usize>().unwrap());
                assert!(report.n <= BigInt::from(packing.m()));
                for k in 0..packing.m() {
                    assert_eq!(BigInt::from(report.targets(k).len()), report.n);
                }
                assert_eq!(index_by_counting(&packing, &s).unwrap(), s.scale_squared());
                if packing.is_inversion_symmetric() {
                    let neg = Similarity::new(-s.multiplier(), s.is_conjugating()).unwrap();
                    assert!(check_similarity(&packing, &neg).accepted);
                }
            } else {
                let p = cert.counterexample.unwrap();
                assert!(!packing.contains(&p));
            }
        }
    }
}

#[test]
fn lcm_witness_is_accepted() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        for _ in 0..60 {
            let packing = random_packing(&mut rng, ring, true, false);
            let d = Direction::new(primitive(&mut rng, ring, 100), rng.gen_bool(0.5)).unwrap();
            let s = Similarity::from_direction(&lcm_witness(&packing, &d), &d).unwrap();
            assert!(check_similarity(&packing, &s).accepted, "{packing} under {s}");
        }
    }
}

#[test]
fn scal_set_matches_per_factor_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        for _ in 0..6 {
            let zero = rng.gen_bool(0.5);
            let packing = random_packing(&mut rng, ring, zero, true);
            let d = Direction::new(primitive(&mut rng, ring, 30), rng.gen_bool(0.5)).unwrap();
            let set = scal_set_packing(&packing, &d).unwrap();
            for _ in 0..50 {
                let k = q(rng.gen_range(1..=40), rng.gen_range(1..=4));
                let s = Similarity::from_direction(&(&k * &set.den), &d).unwrap();
                assert_eq!(set.contains(&k), check_similarity(&packing, &s).accepted, "{k} for {d} on {packing}");
            }
        }
    }
}

#[test]
fn bruteforce_matches_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for packing in [rect12(), hexagonal(), hexagonal_shifted()] {
        for _ in 0..4 {
            let d = Direction::new(primitive(&mut rng, packing.ring(), 20), rng.gen_bool(0.5)).unwrap();
            let set = scal_set_packing(&packing, &d).unwrap();
            let brute = scal_set_bruteforce(&packing, &d, 12, 3);
            for qq in 1..=3i64 {
                for p in 1..=12i64 {
                    if p.gcd(&qq) != 1 {
                        continue;
                    }
                    let r = q(p, qq);
                    let k = &r / &set.den;
                    assert_eq!(brute.contains(&r), set.contains(&k), "{r} for {d}");
                }
            }
        }
    }
}

#[test]
fn hexagonal_packings_have_n_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for packing in [hexagonal(), hexagonal_shifted()] {
        for _ in 0..60 {
            let d = Direction::new(primitive(&mut rng, Ring::Eisenstein, 60), rng.gen_bool(0.5)).unwrap();
            let r = q(rng.gen_range(1..=12), rng.gen_range(1..=3));
            let s = Similarity::from_direction(&r, &d).unwrap();
            let report = check_similarity(&packing, &s);
            if report.accepted {
                assert!(report.n.is_one());
            }
        }
    }
}

#[test]
fn enumeration_density() {
    for packing in [rect12(), hexagonal(), ex34(), ex22()] {
        for side in [4i64, 7, 12] {
            let w = Window::from_i64(-side, -side, side, side).unwrap();
            let area = BigRational::from_integer(BigInt::from(4 * side * side));
            let expected = area * BigRational::from_integer(BigInt::from(packing.m())) / packing.lattice().det();
            let got = BigRational::from_integer(BigInt::from(enumerate(&packing, &w).len()));
            let slack = BigRational::from_integer(BigInt::from(packing.m() as i64 * 8 * side * 3 + 8));
            let diff = if got > expected { &got - &expected } else { &expected - &got };
            assert!(diff <= slack, "{packing}: {got} vs {expected}");
        }
    }
}
