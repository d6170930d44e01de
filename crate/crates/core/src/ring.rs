//! Exact arithmetic in the Gaussian integers `Z[i]`, the Eisenstein integers
//! `Z[ω]` (`ω = e^{2πi/3}`), and their fraction fields `Q(i)`, `Q(ω)`.
//!
//! Elements are stored by their coordinates over the basis `{1, u}` with
//! `u = i` or `u = ω`. In the Eisenstein ring `ω² = -1 - ω`, so
//! `norm(a + bω) = a² - ab + b²` and `conj(a + bω) = (a - b) - bω`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Gaussian,
    Eisenstein,
}

impl Ring {
    /// Symbol of the second basis element.
    pub fn unit_symbol(self) -> &'static str {
        match self {
            Ring::Gaussian => "i",
            Ring::Eisenstein => "ω",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Gaussian => "gaussian",
            Ring::Eisenstein => "eisenstein",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "gaussian" | "Z[i]" => Some(Ring::Gaussian),
            "eisenstein" | "Z[w]" | "Z[ω]" => Some(Ring::Eisenstein),
            _ => None,
        }
    }

    /// All units of the ring: 4 in `Z[i]`, 6 in `Z[ω]`.
    pub fn units(self) -> Vec<RingElem> {
        let pairs: &[(i64, i64)] = match self {
            Ring::Gaussian => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            Ring::Eisenstein => &[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        };
        pairs
            .iter()
            .map(|&(a, b)| RingElem::from_i64(self, a, b))
            .collect()
    }

    /// Coordinates of `u²` over `{1, u}`.
    fn u_squared(self) -> (i64, i64) {
        match self {
            Ring::Gaussian => (-1, 0),
            Ring::Eisenstein => (-1, -1),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `a + b·u` with integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: Ring,
    a: BigInt,
    b: BigInt,
}

impl RingElem {
    pub fn new(ring: Ring, a: BigInt, b: BigInt) -> Self {
        RingElem { ring, a, b }
    }

    pub fn from_i64(ring: Ring, a: i64, b: i64) -> Self {
        RingElem::new(ring, BigInt::from(a), BigInt::from(b))
    }

    pub fn zero(ring: Ring) -> Self {
        RingElem::from_i64(ring, 0, 0)
    }

    pub fn one(ring: Ring) -> Self {
        RingElem::from_i64(ring, 1, 0)
    }

    pub fn from_int(ring: Ring, n: BigInt) -> Self {
        RingElem::new(ring, n, BigInt::zero())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn conj(&self) -> RingElem {
        match self.ring {
            Ring::Gaussian => RingElem::new(self.ring, self.a.clone(), -&self.b),
            Ring::Eisenstein => RingElem::new(self.ring, &self.a - &self.b, -&self.b),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> RingElem {
        RingElem::new(self.ring, &self.a * k, &self.b * k)
    }

    pub fn to_field(&self) -> FieldElem {
        FieldElem::new(
            self.ring,
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        )
    }

    /// The unit multiple with `a > 0, b ≥ 0`. In `Z[ω]` that quadrant holds two
    /// associates, so the one with `a > b` (argument in `[0, π/3)`) is taken.
    pub fn canonical_associate(&self) -> RingElem {
        if self.is_zero() {
            return self.clone();
        }
        self.ring
            .units()
            .into_iter()
            .map(|u| &u * self)
            .find(|x| x.is_canonical())
            .expect("every nonzero element has a canonical associate")
    }

    fn is_canonical(&self) -> bool {
        match self.ring {
            Ring::Gaussian => self.a.is_positive() && !self.b.is_negative(),
            Ring::Eisenstein => !self.b.is_negative() && self.a > self.b,
        }
    }

    /// Euclidean division: `self = q·d + r` with `norm(r) < norm(d)`.
    pub fn div_rem(&self, d: &RingElem) -> (RingElem, RingElem) {
        assert!(!d.is_zero(), "division by zero ring element");
        let exact = &self.to_field() * &d.to_field().inv();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let round = |t: &BigRational| (t + &half).floor().to_integer();
        let q = RingElem::new(self.ring, round(exact.a()), round(exact.b()));
        let r = self - &(&q * d);
        debug_assert!(r.norm() < d.norm());
        (q, r)
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &RingElem) -> Option<RingElem> {
        if d.is_zero() {
            return None;
        }
        let q = &self.to_field() * &d.to_field().inv();
        q.to_ring()
    }

    pub fn divides(&self, x: &RingElem) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Integer content `c = gcd(a, b)` and the primitive part `z0` with `z = c·z0`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, RingElem)> {
        if self.is_zero() {
            return Err(Error::ZeroContent);
        }
        let c = self.a.gcd(&self.b);
        let z0 = RingElem::new(self.ring, &self.a / &c, &self.b / &c);
        Ok((c, z0))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).is_one()
    }
}

/// Greatest common divisor in the Euclidean ring, as its canonical associate.
pub fn ring_gcd(x: &RingElem, y: &RingElem) -> Result<RingElem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch(x.ring, y.ring));
    }
    if x.is_zero() && y.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let (mut p, mut q) = (x.clone(), y.clone());
    while !q.is_zero() {
        let (_, r) = p.div_rem(&q);
        p = q;
        q = r;
    }
    Ok(p.canonical_associate())
}

/// Least common multiple, as its canonical associate.
pub fn ring_lcm(x: &RingElem, y: &RingElem) -> Result<RingElem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch(x.ring, y.ring));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::UndefinedLcm);
    }
    let g = ring_gcd(x, y)?;
    let l = (x * y).div_exact(&g).expect("gcd divides the product");
    Ok(l.canonical_associate())
}

fn mul_coords<T>(ring: Ring, a: &T, b: &T, c: &T, d: &T) -> (T, T)
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    // (a + bu)(c + du) = ac + (ad + bc)u + bd·u²
    let bd = b * d;
    let re = a * c;
    let im = a * d + b * c;
    match ring.u_squared() {
        (-1, 0) => (re - bd, im),
        (-1, -1) => (re - bd.clone(), im - bd),
        _ => unreachable!(),
    }
}

macro_rules! impl_ring_ops {
    ($t:ident) => {
        impl Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.ring, rhs.ring, "ring mismatch");
                $t::new(self.ring, &self.a + &rhs.a, &self.b + &rhs.b)
            }
        }

        impl Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.ring, rhs.ring, "ring mismatch");
                $t::new(self.ring, &self.a - &rhs.a, &self.b - &rhs.b)
            }
        }

        impl Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                assert_eq!(self.ring, rhs.ring, "ring mismatch");
                let (a, b) = mul_coords(self.ring, &self.a, &self.b, &rhs.a, &rhs.b);
                $t::new(self.ring, a, b)
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t::new(self.ring, -&self.a, -&self.b)
            }
        }

        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }

        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

impl_ring_ops!(RingElem);
impl_ring_ops!(FieldElem);

/// `a + b·u` with rational coordinates; a point of the plane or a multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ring: Ring,
    a: BigRational,
    b: BigRational,
}

impl FieldElem {
    pub fn new(ring: Ring, a: BigRational, b: BigRational) -> Self {
        FieldElem { ring, a, b }
    }

    pub fn from_coords(ring: Ring, [a, b]: [BigRational; 2]) -> Self {
        FieldElem { ring, a, b }
    }

    /// `(a_num/a_den) + (b_num/b_den)·u`.
    pub fn from_ratios(ring: Ring, a: (i64, i64), b: (i64, i64)) -> Self {
        FieldElem::new(ring, ratio(a.0, a.1), ratio(b.0, b.1))
    }

    pub fn zero(ring: Ring) -> Self {
        FieldElem::new(ring, BigRational::zero(), BigRational::zero())
    }

    pub fn one(ring: Ring) -> Self {
        FieldElem::new(ring, BigRational::one(), BigRational::zero())
    }

    pub fn from_rational(ring: Ring, r: BigRational) -> Self {
        FieldElem::new(ring, r, BigRational::zero())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn coords(&self) -> [BigRational; 2] {
        [self.a.clone(), self.b.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigRational {
        let (a, b) = (&self.a, &self.b);
        match self.ring {
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn conj(&self) -> FieldElem {
        match self.ring {
            Ring::Gaussian => FieldElem::new(self.ring, self.a.clone(), -&self.b),
            Ring::Eisenstein => FieldElem::new(self.ring, &self.a - &self.b, -&self.b),
        }
    }

    /// Multiplicative inverse `conj(x) / norm(x)`. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero field element");
        let c = self.conj();
        FieldElem::new(self.ring, &c.a / &n, &c.b / &n)
    }

    pub fn scale(&self, k: &BigRational) -> FieldElem {
        FieldElem::new(self.ring, &self.a * k, &self.b * k)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_ring(&self) -> Option<RingElem> {
        self.is_integral().then(|| {
            RingElem::new(self.ring, self.a.to_integer(), self.b.to_integer())
        })
    }

    /// `(n, r)` with `self = r / n` and `n ≥ 1` minimal.
    pub fn clear_denominators(&self) -> (BigInt, RingElem) {
        let n = self.a.denom().lcm(self.b.denom());
        let ra = (&self.a * BigRational::from_integer(n.clone())).to_integer();
        let rb = (&self.b * BigRational::from_integer(n.clone())).to_integer();
        (n, RingElem::new(self.ring, ra, rb))
    }

    /// Approximate Cartesian coordinates, for drawing only.
    pub fn to_cartesian(&self) -> (f64, f64) {
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        match self.ring {
            Ring::Gaussian => (a, b),
            Ring::Eisenstein => (a - b / 2.0, b * 3f64.sqrt() / 2.0),
        }
    }
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_ring_coords(f: &mut fmt::Formatter<'_>, ring: Ring, a: &BigInt, b: &BigInt) -> fmt::Result {
    let u = ring.unit_symbol();
    if a.is_zero() && b.is_zero() {
        return f.write_str("0");
    }
    if !a.is_zero() {
        write!(f, "{a}")?;
    }
    if !b.is_zero() {
        let mag = b.abs();
        let sign = if b.is_negative() {
            "-"
        } else if a.is_zero() {
            ""
        } else {
            "+"
        };
        if mag.is_one() {
            write!(f, "{sign}{u}")?;
        } else {
            write!(f, "{sign}{mag}{u}")?;
        }
    }
    Ok(())
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_ring_coords(f, self.ring, &self.a, &self.b)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, r) = self.clear_denominators();
        if n.is_one() {
            return write!(f, "{r}");
        }
        if r.a.is_zero() || r.b.is_zero() {
            write!(f, "{r}/{n}")
        } else {
            write!(f, "({r})/{n}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> RingElem {
        RingElem::from_i64(Ring::Gaussian, a, b)
    }

    fn e(a: i64, b: i64) -> RingElem {
        RingElem::from_i64(Ring::Eisenstein, a, b)
    }

    /// Divisors of `x` found by scanning every element up to the norm of `x`.
    fn brute_common_divisors(x: &RingElem, y: &RingElem, bound: i64) -> Vec<RingElem> {
        let mut out = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                let d = RingElem::from_i64(x.ring(), a, b);
                if !d.is_zero() && d.divides(x) && d.divides(y) {
                    out.push(d);
                }
            }
        }
        out
    }

    #[test]
    fn gcd_of_one_plus_two_i_and_five() {
        let d = ring_gcd(&g(1, 2), &g(5, 0)).unwrap();
        assert_eq!(d, g(1, 2));
        let divisors = brute_common_divisors(&g(1, 2), &g(5, 0), 5);
        let max = divisors.iter().map(|d| d.norm()).max().unwrap();
        assert_eq!(d.norm(), max);
        assert_eq!(max, BigInt::from(5));
    }

    #[test]
    fn gcd_with_unit_and_idempotence() {
        assert_eq!(ring_gcd(&g(7, -3), &g(1, 0)).unwrap(), g(1, 0));
        assert_eq!(ring_gcd(&e(2, 1), &e(2, 1)).unwrap(), e(2, 1).canonical_associate());
        assert_eq!(ring_gcd(&g(0, 0), &g(0, 3)).unwrap(), g(3, 0));
    }

    #[test]
    fn gcd_errors() {
        assert_eq!(ring_gcd(&g(0, 0), &g(0, 0)), Err(Error::UndefinedGcd));
        assert_eq!(
            ring_gcd(&g(1, 0), &e(1, 0)),
            Err(Error::RingMismatch(Ring::Gaussian, Ring::Eisenstein))
        );
        assert_eq!(ring_lcm(&g(0, 0), &g(1, 0)), Err(Error::UndefinedLcm));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(ring_lcm(&g(2, 0), &g(3, 0)).unwrap(), g(6, 0));
        assert_eq!(ring_lcm(&g(-3, 4), &g(1, 0)).unwrap(), g(-3, 4).canonical_associate());
        let pz = g(1, 2);
        let q = g(5, 0);
        let l = ring_lcm(&pz, &q).unwrap();
        let d = ring_gcd(&pz, &q).unwrap();
        assert_eq!(l.norm() * d.norm(), pz.norm() * q.norm());
        assert_eq!(l, g(5, 0));
        // brute-force: least-norm nonzero common multiple among small elements
        let mut best: Option<BigInt> = None;
        for a in -6..=6 {
            for b in -6..=6 {
                let m = g(a, b);
                if !m.is_zero() && pz.divides(&m) && q.divides(&m) {
                    let n = m.norm();
                    if best.as_ref().map_or(true, |b| &n < b) {
                        best = Some(n);
                    }
                }
            }
        }
        assert_eq!(best, Some(l.norm()));
    }

    #[test]
    fn content_examples() {
        assert_eq!(g(2, 4).content_and_primitive().unwrap(), (BigInt::from(2), g(1, 2)));
        assert_eq!(g(1, 2).content_and_primitive().unwrap(), (BigInt::from(1), g(1, 2)));
        assert_eq!(e(3, 3).content_and_primitive().unwrap(), (BigInt::from(3), e(1, 1)));
        assert_eq!(g(0, 0).content_and_primitive(), Err(Error::ZeroContent));
    }

    #[test]
    fn conjugation() {
        assert_eq!(g(3, 5).conj(), g(3, -5));
        assert_eq!(e(2, 1).conj(), e(1, -1));
        assert_eq!(e(1, -1).norm(), BigInt::from(3));
        assert_eq!(e(2, 1).norm(), BigInt::from(3));
        assert_eq!(e(4, -7).conj().conj(), e(4, -7));
    }

    #[test]
    fn omega_squared() {
        let w = e(0, 1);
        assert_eq!(&w * &w, e(-1, -1));
        assert_eq!(&(&w * &w) * &w, e(1, 0));
    }

    #[test]
    fn canonical_associate_is_unique() {
        for ring in [Ring::Gaussian, Ring::Eisenstein] {
            for a in -4..=4 {
                for b in -4..=4 {
                    let x = RingElem::from_i64(ring, a, b);
                    if x.is_zero() {
                        continue;
                    }
                    let count = ring
                        .units()
                        .iter()
                        .filter(|u| (*u * &x).is_canonical())
                        .count();
                    assert_eq!(count, 1, "{x}");
                }
            }
        }
    }

    #[test]
    fn field_display() {
        let r = Ring::Eisenstein;
        assert_eq!(FieldElem::from_ratios(r, (2, 3), (1, 3)).to_string(), "(2+ω)/3");
        assert_eq!(FieldElem::from_ratios(r, (4, 3), (2, 3)).to_string(), "(4+2ω)/3");
        assert_eq!(FieldElem::from_ratios(Ring::Gaussian, (1, 2), (0, 1)).to_string(), "1/2");
        assert_eq!(FieldElem::from_ratios(Ring::Gaussian, (0, 1), (-1, 3)).to_string(), "-i/3");
        assert_eq!(FieldElem::zero(r).to_string(), "0");
        assert_eq!(e(1, -1).to_string(), "1-ω");
    }

    #[test]
    fn clear_denominators_minimal() {
        let x = FieldElem::from_ratios(Ring::Eisenstein, (2, 3), (1, 6));
        let (n, r) = x.clear_denominators();
        assert_eq!(n, BigInt::from(6));
        assert_eq!(r, e(4, 1));
    }
}
