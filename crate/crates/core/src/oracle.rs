//! Brute-force verification by finite enumeration.
//!
//! Nothing here uses lattice sums, intersections or indices. Containment
//! `s(L) ⊆ L` is decided by walking the preimages `γ ∈ Γ / DΓ`, where `D` is the
//! least common denominator of the matrix of `s` in lattice coordinates: then
//! `s(DΓ) ⊆ Γ`, so every point of `s(L)` is congruent mod `Γ` to one of the
//! finitely many points checked.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Mat2, Vec2};
use crate::packing::PointPacking;
use crate::ring::FieldElem;
use crate::similarity::{Direction, Similarity};

/// Half-open box `[x0, x1) × [y0, y1)` in ring-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec2,
    pub hi: Vec2,
}

impl Window {
    pub fn new(x0: BigRational, y0: BigRational, x1: BigRational, y1: BigRational) -> Option<Window> {
        (x0 < x1 && y0 < y1).then(|| Window { lo: [x0, y0], hi: [x1, y1] })
    }

    pub fn from_i64(x0: i64, y0: i64, x1: i64, y1: i64) -> Option<Window> {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        Window::new(q(x0), q(y0), q(x1), q(y1))
    }

    fn contains(&self, v: &Vec2) -> bool {
        (0..2).all(|i| self.lo[i] <= v[i] && v[i] < self.hi[i])
    }
}

/// Integer vectors `c` with `A·c + y0` inside the window.
fn lattice_points_in(a: &Mat2, y0: &Vec2, window: &Window) -> Vec<Vec2> {
    let ainv = a.inv().expect("invertible");
    let mut range: Vec<(BigInt, BigInt)> = Vec::with_capacity(2);
    for i in 0..2 {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for j in 0..2 {
            let coef = &ainv.m[i][j];
            let ends = [
                coef * (&window.lo[j] - &y0[j]),
                coef * (&window.hi[j] - &y0[j]),
            ];
            let (mn, mx) = if ends[0] <= ends[1] { (&ends[0], &ends[1]) } else { (&ends[1], &ends[0]) };
            lo += mn;
            hi += mx;
        }
        range.push((lo.floor().to_integer(), hi.ceil().to_integer()));
    }
    let mut out = Vec::new();
    let mut u = range[0].0.clone();
    while u <= range[0].1 {
        let mut v = range[1].0.clone();
        while v <= range[1].1 {
            let c = [BigRational::from_integer(u.clone()), BigRational::from_integer(v.clone())];
            let y = a.apply(&c);
            let y = [&y[0] + &y0[0], &y[1] + &y0[1]];
            if window.contains(&y) {
                out.push(c);
            }
            v += 1;
        }
        u += 1;
    }
    out
}

/// All points of `L` inside the window, ordered by component then lattice coordinates.
pub fn enumerate(packing: &PointPacking, window: &Window) -> Vec<FieldElem> {
    let b = packing.lattice().basis();
    let ring = packing.ring();
    packing
        .shifts()
        .iter()
        .flat_map(|x| {
            let x0 = x.coords();
            lattice_points_in(b, &x0, window)
                .into_iter()
                .map(move |c| {
                    let y = b.apply(&c);
                    FieldElem::from_coords(ring, [&y[0] + &x0[0], &y[1] + &x0[1]])
                })
        })
        .collect()
}

/// Points of `s(L)` inside the window.
pub fn enumerate_image(packing: &PointPacking, s: &Similarity, window: &Window) -> Vec<Vec<FieldElem>> {
    let tb = s.matrix().mul(packing.lattice().basis());
    let ring = packing.ring();
    packing
        .shifts()
        .iter()
        .map(|x| {
            let x0 = s.apply(x).coords();
            lattice_points_in(&tb, &x0, window)
                .into_iter()
                .map(|c| {
                    let y = tb.apply(&c);
                    FieldElem::from_coords(ring, [&y[0] + &x0[0], &y[1] + &x0[1]])
                })
                .collect()
        })
        .collect()
}

/// Outcome of an exhaustive containment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub contained: bool,
    /// A point of `s(L)` outside `L` when `contained` is false.
    pub counterexample: Option<FieldElem>,
    /// Number of points examined.
    pub checked: usize,
}

/// Matrix of `s` in lattice coordinates.
fn lattice_matrix(packing: &PointPacking, s: &Similarity) -> Mat2 {
    let b = packing.lattice().basis();
    b.inv().expect("invertible").mul(&s.matrix()).mul(b)
}

/// Decide `s(L) ⊆ L` exactly.
pub fn certify_subpacking(packing: &PointPacking, s: &Similarity) -> Certificate {
    let d = lattice_matrix(packing, s).denominator();
    let gamma = packing.lattice();
    let mut checked = 0;
    let mut u = BigInt::zero();
    while u < d {
        let mut v = BigInt::zero();
        while v < d {
            let g = gamma.point(&[BigRational::from_integer(u.clone()), BigRational::from_integer(v.clone())]);
            for x in packing.shifts() {
                let p = s.apply(&(x + &g));
                checked += 1;
                if !packing.contains(&p) {
                    return Certificate { contained: false, counterexample: Some(p), checked };
                }
            }
            v += 1;
        }
        u += 1;
    }
    Certificate { contained: true, counterexample: None, checked }
}

/// Decide `s(L) = L` exactly, via `s(L) ⊆ L` and `s⁻¹(L) ⊆ L`.
pub fn certify_equal(packing: &PointPacking, s: &Similarity) -> bool {
    certify_subpacking(packing, s).contained && certify_subpacking(packing, &s.inverse()).contained
}

/// Index of `s(L)` in `L` as the ratio of point counts in one fundamental
/// domain `B·[0, D)²` of a period lattice `DΓ ⊆ Γ ∩ sΓ`.
///
/// The cell is a union of `D²` translates of `B·[0,1)²`, each holding exactly
/// one point of every component of `L`, so `L` contributes `m·D²` points;
/// the points of `s(L)` are enumerated.
pub fn index_by_counting(packing: &PointPacking, s: &Similarity) -> Result<BigRational> {
    let cert = certify_subpacking(packing, s);
    if !cert.contained {
        let p = cert.counterexample.expect("refutation carries a point");
        return Err(Error::NotASubpacking(format!("{p} lies in s(L) but not in L")));
    }
    let a = lattice_matrix(packing, s);
    let d = a.inv().expect("invertible").denominator();
    let dq = BigRational::from_integer(d.clone());
    let cell = Window { lo: [BigRational::zero(), BigRational::zero()], hi: [dq.clone(), dq] };
    let gamma = packing.lattice();

    let count_l = BigInt::from(packing.m()) * &d * &d;
    let count_image: usize = packing
        .shifts()
        .iter()
        .map(|x| lattice_points_in(&a, &gamma.coords_of(&s.apply(x)), &cell).len())
        .sum();
    Ok(BigRational::new(count_l, BigInt::from(count_image)))
}

/// `{ p/q : 1 ≤ p ≤ p_bound, 1 ≤ q ≤ q_bound, gcd(p, q) = 1 }` restricted to
/// the factors `r` for which `r·z` (with the direction's conjugation) maps `L`
/// into itself.
pub fn scal_set_bruteforce(
    packing: &PointPacking,
    d: &Direction,
    p_bound: u64,
    q_bound: u64,
) -> BTreeSet<BigRational> {
    let mut out = BTreeSet::new();
    for q in 1..=q_bound {
        for p in 1..=p_bound {
            if !p.gcd(&q).is_one() {
                continue;
            }
            let r = BigRational::new(BigInt::from(p), BigInt::from(q));
            let s = Similarity::from_direction(&r, d).expect("nonzero factor");
            if certify_subpacking(packing, &s).contained {
                out.insert(r);
            }
        }
    }
    out
}
