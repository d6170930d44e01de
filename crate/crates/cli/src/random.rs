//! Seeded random instances for sweeps.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use simpack::lattice::{Lattice, Mat2};
use simpack::packing::check_similarity;
use simpack::similarity::{denominator, Direction};
use simpack::{FieldElem, PointPacking, Ring, RingElem, Similarity};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A primitive `z` with `norm(z) ≤ max_norm`.
pub fn primitive<R: Rng>(rng: &mut R, ring: Ring, max_norm: i64) -> RingElem {
    loop {
        let z = RingElem::from_i64(ring, rng.gen_range(-11..=11), rng.gen_range(-11..=11));
        if !z.is_zero() && z.is_primitive() && z.norm() <= BigInt::from(max_norm) {
            return z;
        }
    }
}

pub fn direction<R: Rng>(rng: &mut R, ring: Ring, max_norm: i64) -> Direction {
    let z = primitive(rng, ring, max_norm);
    Direction::new(z, rng.gen_bool(0.5)).expect("nonzero")
}

/// Half the time the ring itself, otherwise a small integer sublattice of it.
pub fn lattice<R: Rng>(rng: &mut R, ring: Ring) -> Lattice {
    if rng.gen_bool(0.5) {
        return Lattice::ring_lattice(ring);
    }
    let m = Mat2::from_i64([[rng.gen_range(1..=3), rng.gen_range(0..=2)], [0, rng.gen_range(1..=3)]]);
    Lattice::new(ring, &m).expect("positive diagonal")
}

/// Up to `max_m` pairwise incongruent shifts with lattice-coordinate
/// denominators up to `max_den`; `0` is the first shift when `with_zero`.
pub fn packing<R: Rng>(rng: &mut R, lattice: Lattice, max_m: usize, max_den: i64, with_zero: bool) -> PointPacking {
    let ring = lattice.ring();
    let m = rng.gen_range(1..=max_m);
    let mut shifts: Vec<FieldElem> = Vec::new();
    if with_zero {
        shifts.push(FieldElem::zero(ring));
    }
    for _ in 0..64 {
        if shifts.len() >= m {
            break;
        }
        let d = rng.gen_range(1..=max_den);
        let x = lattice.point(&[q(rng.gen_range(0..d), d), q(rng.gen_range(0..d), d)]);
        if shifts.iter().all(|y| !lattice.contains(&(&x - y))) {
            shifts.push(x);
        }
    }
    PointPacking::new(lattice, shifts).expect("incongruent by construction")
}

/// `w = (p/q)·z`, `p ≤ 10`, `q ≤ 4`, `norm(z) ≤ 100`, random conjugation.
pub fn similarity<R: Rng>(rng: &mut R, ring: Ring) -> Similarity {
    let d = direction(rng, ring, 100);
    let r = q(rng.gen_range(1..=10), rng.gen_range(1..=4));
    Similarity::from_direction(&r, &d).expect("nonzero")
}

/// An instance for engine/oracle comparison.
pub fn instance<R: Rng>(rng: &mut R, ring: Ring) -> (PointPacking, Similarity) {
    let lat = lattice(rng, ring);
    let with_zero = rng.gen_bool(0.5);
    let p = packing(rng, lat, 4, 6, with_zero);
    (p, similarity(rng, ring))
}

/// An accepted similarity of `packing`: a random direction scaled by a
/// random multiple of `lcm(shift denominators)·den(Γ, R)`, or by a random
/// small factor when that happens to be accepted.
pub fn accepted<R: Rng>(rng: &mut R, packing: &PointPacking, max_norm: i64) -> Similarity {
    loop {
        let d = direction(rng, packing.ring(), max_norm);
        let den = denominator(packing.lattice(), &d);
        let r = if rng.gen_bool(0.5) {
            den * q(rng.gen_range(1..=6), rng.gen_range(1..=2))
        } else {
            den * BigRational::from_integer(packing.shift_denominator_lcm() * BigInt::from(rng.gen_range(1..=3)))
        };
        let s = Similarity::from_direction(&r, &d).expect("nonzero");
        if check_similarity(packing, &s).accepted {
            return s;
        }
    }
}
