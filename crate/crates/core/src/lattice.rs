//! Planar lattices with exact rational bases over the ring basis `{1, u}`.
//!
//! A [`Lattice`] keeps its basis in column Hermite normal form
//!
//! ```text
//!     | h11  h12 |
//!     |  0   h22 |     h11, h22 > 0,   0 ≤ h12 < h11
//! ```
//!
//! so two lattices are equal exactly when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{FieldElem, Ring};

pub type Vec2 = [BigRational; 2];

/// A 2×2 rational matrix, `m[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m: [[BigRational; 2]; 2],
}

impl Mat2 {
    pub fn from_cols(c0: Vec2, c1: Vec2) -> Mat2 {
        let [a, c] = c0;
        let [b, d] = c1;
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Mat2 {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        Mat2 {
            m: [[q(rows[0][0]), q(rows[0][1])], [q(rows[1][0]), q(rows[1][1])]],
        }
    }

    pub fn identity() -> Mat2 {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    pub fn col(&self, j: usize) -> Vec2 {
        [self.m[0][j].clone(), self.m[1][j].clone()]
    }

    pub fn det(&self) -> BigRational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn inv(&self) -> Option<Mat2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.m;
        Some(Mat2 {
            m: [
                [&m[1][1] / &d, -&m[0][1] / &d],
                [-&m[1][0] / &d, &m[0][0] / &d],
            ],
        })
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.m;
        Mat2 {
            m: [[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]],
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2 { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.m;
        [
            &m[0][0] * &v[0] + &m[0][1] * &v[1],
            &m[1][0] * &v[0] + &m[1][1] * &v[1],
        ]
    }

    pub fn scale(&self, k: &BigRational) -> Mat2 {
        let m = &self.m;
        Mat2 {
            m: [[&m[0][0] * k, &m[0][1] * k], [&m[1][0] * k, &m[1][1] * k]],
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigRational> {
        self.m.iter().flatten()
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|x| x.is_integer())
    }

    /// Least common denominator of the entries.
    pub fn denominator(&self) -> BigInt {
        self.entries()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Matrix of `x ↦ w·x` over `{1, u}`.
    pub fn multiplication(w: &FieldElem) -> Mat2 {
        let (p, q) = (w.a().clone(), w.b().clone());
        match w.ring() {
            Ring::Gaussian => Mat2::from_cols([p.clone(), q.clone()], [-&q, p]),
            Ring::Eisenstein => Mat2::from_cols([p.clone(), q.clone()], [-&q, &p - &q]),
        }
    }

    /// Matrix of complex conjugation over `{1, u}`.
    pub fn conjugation(ring: Ring) -> Mat2 {
        match ring {
            Ring::Gaussian => Mat2::from_i64([[1, 0], [0, -1]]),
            Ring::Eisenstein => Mat2::from_i64([[1, -1], [0, -1]]),
        }
    }
}

pub(crate) fn is_integral(v: &Vec2) -> bool {
    v[0].is_integer() && v[1].is_integer()
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Extended gcd with `s·a + t·b = g`, `g ≥ 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Column Hermite normal form of the integer lattice spanned by `cols`.
/// Returns `(h11, h12, h22)`, or `None` when the span is not of full rank.
fn hnf_integer(cols: Vec<[BigInt; 2]>) -> Option<(BigInt, BigInt, BigInt)> {
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut flat: Vec<BigInt> = Vec::new();
    for c in cols {
        if c[1].is_zero() {
            flat.push(c[0].clone());
            continue;
        }
        pivot = Some(match pivot {
            None => c,
            Some(p) => {
                let (g, s, t) = ext_gcd(&p[1], &c[1]);
                let (pg, cg) = (&p[1] / &g, &c[1] / &g);
                // unimodular: (p, c) ↦ (s·p + t·c, cg·p − pg·c)
                flat.push(&cg * &p[0] - &pg * &c[0]);
                [&s * &p[0] + &t * &c[0], g]
            }
        });
    }
    let mut p = pivot?;
    let h11 = flat.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if h11.is_zero() {
        return None;
    }
    if p[1].is_negative() {
        p = [-&p[0], -&p[1]];
    }
    let h12 = p[0].mod_floor(&h11);
    Some((h11, h12, p[1].clone()))
}

/// Hermite normal form of the rational lattice spanned by `gens`.
fn hnf_rational(gens: &[Vec2]) -> Option<Mat2> {
    let denom = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let d = BigRational::from_integer(denom.clone());
    let cols = gens
        .iter()
        .map(|v| [(&v[0] * &d).to_integer(), (&v[1] * &d).to_integer()])
        .collect();
    let (h11, h12, h22) = hnf_integer(cols)?;
    let q = |x: BigInt| BigRational::new(x, denom.clone());
    Some(Mat2::from_cols(
        [q(h11), BigRational::zero()],
        [q(h12), q(h22)],
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ring: Ring,
    basis: Mat2,
}

impl Lattice {
    /// The lattice spanned by the columns of `basis`.
    pub fn new(ring: Ring, basis: &Mat2) -> Result<Lattice> {
        if basis.det().is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Lattice::from_generators(ring, &[basis.col(0), basis.col(1)])
    }

    /// The lattice generated by an arbitrary finite set of vectors.
    pub fn from_generators(ring: Ring, gens: &[Vec2]) -> Result<Lattice> {
        let basis = hnf_rational(gens).ok_or(Error::DegenerateLattice)?;
        Ok(Lattice { ring, basis })
    }

    /// `Z[i]` or `Z[ω]` itself.
    pub fn ring_lattice(ring: Ring) -> Lattice {
        Lattice { ring, basis: Mat2::identity() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    pub fn generators(&self) -> [FieldElem; 2] {
        [
            FieldElem::from_coords(self.ring, self.basis.col(0)),
            FieldElem::from_coords(self.ring, self.basis.col(1)),
        ]
    }

    pub fn is_ring_lattice(&self) -> bool {
        self.basis == Mat2::identity()
    }

    /// Covolume in ring-basis coordinates (positive).
    pub fn det(&self) -> BigRational {
        self.basis.det()
    }

    /// Lattice coordinates `B⁻¹·x` of a point.
    pub fn coords_of(&self, x: &FieldElem) -> Vec2 {
        assert_eq!(self.ring, x.ring(), "ring mismatch");
        let [[h11, h12], [_, h22]] = &self.basis.m;
        let [xa, xb] = x.coords();
        let v = &xb / h22;
        let u = (&xa - h12 * &v) / h11;
        [u, v]
    }

    pub fn point(&self, c: &Vec2) -> FieldElem {
        FieldElem::from_coords(self.ring, self.basis.apply(c))
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        is_integral(&self.coords_of(x))
    }

    /// Representative of `x + Γ` with lattice coordinates in `[0, 1)²`.
    pub fn reduce(&self, x: &FieldElem) -> FieldElem {
        let [u, v] = self.coords_of(x);
        self.point(&[frac(&u), frac(&v)])
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// Image of the lattice under the linear map with matrix `t` (ring coordinates).
    pub fn transform(&self, t: &Mat2) -> Result<Lattice> {
        Lattice::new(self.ring, &t.mul(&self.basis))
    }

    /// `w·Γ`.
    pub fn scale_by(&self, w: &FieldElem) -> Result<Lattice> {
        assert_eq!(self.ring, w.ring(), "ring mismatch");
        if w.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        self.transform(&Mat2::multiplication(w))
    }

    /// `q·Γ` for a rational `q ≠ 0`.
    pub fn scale_rational(&self, q: &BigRational) -> Result<Lattice> {
        self.scale_by(&FieldElem::from_rational(self.ring, q.clone()))
    }

    /// Dual lattice with respect to the coordinate dot product.
    fn dual(&self) -> Lattice {
        let b = self.basis.inv().expect("lattice basis is invertible").transpose();
        Lattice::new(self.ring, &b).expect("dual of a lattice is a lattice")
    }

    /// `Γ₁ + Γ₂`.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let gens = [
            self.basis.col(0),
            self.basis.col(1),
            other.basis.col(0),
            other.basis.col(1),
        ];
        Lattice::from_generators(self.ring, &gens).expect("sum of full-rank lattices")
    }

    /// `Γ₁ ∩ Γ₂`, computed as the dual of `Γ₁* + Γ₂*`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        self.dual().sum(&other.dual()).dual()
    }
}

/// `|det B′| / |det B|`; equals `[Γ : Γ′]` when `Γ′ ⊆ Γ`.
pub fn index(sub: &Lattice, sup: &Lattice) -> BigRational {
    assert_eq!(sub.ring, sup.ring, "ring mismatch");
    sub.det().abs() / sup.det().abs()
}

/// Coset representatives of `sup / sub`; requires `sub ⊆ sup`.
pub fn coset_reps(sub: &Lattice, sup: &Lattice) -> Vec<FieldElem> {
    assert!(sub.is_sublattice_of(sup), "coset_reps needs a sublattice");
    let rel = sup.basis.inv().expect("invertible").mul(&sub.basis);
    let h = Lattice::new(sub.ring, &rel).expect("full rank");
    let h11 = h.basis.m[0][0].to_integer();
    let h22 = h.basis.m[1][1].to_integer();
    let mut reps = Vec::new();
    let mut v = BigInt::zero();
    while v < h22 {
        let mut u = BigInt::zero();
        while u < h11 {
            let c = [
                BigRational::from_integer(u.clone()),
                BigRational::from_integer(v.clone()),
            ];
            reps.push(sup.point(&c));
            u += 1;
        }
        v += 1;
    }
    reps
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g0, g1] = self.generators();
        write!(f, "⟨{g0}, {g1}⟩")
    }
}
