//! Similarities `x ↦ w·x` and `x ↦ w·conj(x)` with `w ∈ Q(i)` or `Q(ω)`,
//! their denominators with respect to a lattice, and scaling-factor sets.
//!
//! A scaling factor is never a float: `β = r·|z|` is carried as the rational
//! `r` together with the primitive ring element `z` of its [`Direction`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Mat2};
use crate::ring::{FieldElem, Ring, RingElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Similarity {
    w: FieldElem,
    conjugate: bool,
}

impl Similarity {
    pub fn new(w: FieldElem, conjugate: bool) -> Result<Similarity> {
        if w.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(Similarity { w, conjugate })
    }

    pub fn identity(ring: Ring) -> Similarity {
        Similarity { w: FieldElem::one(ring), conjugate: false }
    }

    /// The map with multiplier `r·z`, `z` taken from the direction.
    pub fn from_direction(r: &BigRational, d: &Direction) -> Result<Similarity> {
        Similarity::new(d.z.to_field().scale(r), d.conjugate)
    }

    pub fn multiplier(&self) -> &FieldElem {
        &self.w
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugate
    }

    pub fn ring(&self) -> Ring {
        self.w.ring()
    }

    pub fn apply(&self, x: &FieldElem) -> FieldElem {
        if self.conjugate {
            &self.w * &x.conj()
        } else {
            &self.w * x
        }
    }

    /// Matrix over `{1, u}`; conjugation acts first.
    pub fn matrix(&self) -> Mat2 {
        let m = Mat2::multiplication(&self.w);
        if self.conjugate {
            m.mul(&Mat2::conjugation(self.ring()))
        } else {
            m
        }
    }

    pub fn image(&self, lattice: &Lattice) -> Lattice {
        lattice
            .transform(&self.matrix())
            .expect("a nonzero similarity is invertible")
    }

    pub fn inverse(&self) -> Similarity {
        let wi = self.w.inv();
        let w = if self.conjugate { wi.conj() } else { wi };
        Similarity { w, conjugate: self.conjugate }
    }

    /// `β² = norm(w)`.
    pub fn scale_squared(&self) -> BigRational {
        self.w.norm()
    }

    pub fn direction(&self) -> Direction {
        decompose(self).1
    }

    /// `β` as an exact surd, e.g. `2/5·√5`.
    pub fn beta_display(&self) -> String {
        let (r, d) = decompose(self);
        surd_display(&r, &d.z.norm())
    }
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugate {
            write!(f, "x ↦ ({})·conj(x)", self.w)
        } else {
            write!(f, "x ↦ ({})·x", self.w)
        }
    }
}

/// The isometry `R = z/|z|` (optionally followed by conjugation first), with `z`
/// primitive. `z` and `uz` for a unit `u` are different rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    pub z: RingElem,
    pub conjugate: bool,
}

impl Direction {
    /// Primitive part of `z` is taken; `z` must be nonzero.
    pub fn new(z: RingElem, conjugate: bool) -> Result<Direction> {
        let (_, z) = z.content_and_primitive()?;
        Ok(Direction { z, conjugate })
    }

    pub fn ring(&self) -> Ring {
        self.z.ring()
    }

    /// Matrix of `x ↦ z·x` or `x ↦ z·conj(x)`.
    fn matrix(&self) -> Mat2 {
        Similarity { w: self.z.to_field(), conjugate: self.conjugate }.matrix()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugate {
            write!(f, "({})·T_r", self.z)
        } else {
            write!(f, "{}", self.z)
        }
    }
}

/// `w = r·z` with `r > 0` rational and `z` primitive.
pub fn decompose(s: &Similarity) -> (BigRational, Direction) {
    let (n, num) = s.w.clear_denominators();
    let (c, z) = num.content_and_primitive().expect("multiplier is nonzero");
    let r = BigRational::new(c, n);
    (r, Direction { z, conjugate: s.conjugate })
}

/// The rational `r` with `den(Γ, R) = r·|z|`: the least `r > 0` such that
/// `r·z` (composed with conjugation if any) maps `Γ` into `Γ`.
pub fn denominator(lattice: &Lattice, d: &Direction) -> BigRational {
    assert_eq!(lattice.ring(), d.ring(), "ring mismatch");
    let b = lattice.basis();
    let a = b.inv().expect("invertible").mul(&d.matrix()).mul(b);
    let l = a.denominator();
    let lq = BigRational::from_integer(l.clone());
    let content = a
        .entries()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&(x * &lq).to_integer()));
    BigRational::new(l, content)
}

/// `Scal(Γ, R) = den·Z`.
pub fn scal_lattice(lattice: &Lattice, d: &Direction) -> ScalSet {
    ScalSet {
        direction: d.clone(),
        den: denominator(lattice, d),
        classes: vec![ScalClass {
            q: BigInt::one(),
            modulus: BigInt::one(),
            residues: BTreeSet::from([BigInt::zero()]),
            tau: Vec::new(),
        }],
    }
}

/// `β = r·|z| ∈ scal(Γ, R) = den·Q*`: every nonzero rational multiple
/// qualifies when the multiplier is rational over the ring.
pub fn in_scal_rational(r: &BigRational) -> bool {
    !r.is_zero()
}

/// `s₂ ∘ s₁`.
pub fn compose(s2: &Similarity, s1: &Similarity) -> Similarity {
    let inner = if s2.conjugate { s1.w.conj() } else { s1.w.clone() };
    Similarity {
        w: &s2.w * &inner,
        conjugate: s2.conjugate ^ s1.conjugate,
    }
}

/// One residue-class family of scaling factors:
/// `{ (p/q)·den·|z| : p ≡ r (mod modulus) for some listed r, gcd(p, q) = 1 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalClass {
    pub q: BigInt,
    pub modulus: BigInt,
    pub residues: BTreeSet<BigInt>,
    /// Component correspondence shared by every factor in the class, as
    /// `(k, j)` shift-index pairs. Empty for lattice scaling sets.
    pub tau: Vec<(usize, usize)>,
}

impl ScalClass {
    pub fn contains(&self, k: &BigRational) -> bool {
        k.denom() == &self.q && self.residues.contains(&k.numer().mod_floor(&self.modulus))
    }

    /// Smallest positive `p/q` in the class.
    pub fn smallest_positive(&self) -> Option<BigRational> {
        self.residues
            .iter()
            .map(|r| if r.is_zero() { self.modulus.clone() } else { r.clone() })
            .min()
            .map(|p| BigRational::new(p, self.q.clone()))
    }

    /// One string per residue, relative to a symbolic unit, e.g. `den·(2+3Z)`.
    pub fn display_with(&self, unit: &str) -> Vec<String> {
        self.fmt_with(&Unit::Symbol(unit.to_string()))
    }

    fn fmt_with(&self, unit: &Unit) -> Vec<String> {
        let m = &self.modulus;
        self.residues
            .iter()
            .map(|r| match unit {
                Unit::Rational(u) => {
                    // fold the unit and 1/q into the residue class itself
                    let scale = u / BigRational::from_integer(self.q.clone());
                    let times = |k: &BigInt| BigRational::from_integer(k.clone()) * &scale;
                    let step = times(m);
                    let step = if step.is_one() {
                        "Z".to_string()
                    } else {
                        format!("{}Z", factor_display(&step))
                    };
                    if m.is_one() || r.is_zero() {
                        step
                    } else {
                        format!("({}+{step})", rational_display(&times(r)))
                    }
                }
                Unit::Symbol(sym) => {
                    let body = if m.is_one() {
                        "Z".to_string()
                    } else if r.is_zero() {
                        format!("{m}Z")
                    } else {
                        format!("({r}+{m}Z)")
                    };
                    if self.q.is_one() {
                        format!("{sym}·{body}")
                    } else {
                        format!("{sym}·({body})/{}", self.q)
                    }
                }
            })
            .collect()
    }
}

enum Unit {
    Symbol(String),
    Rational(BigRational),
}

fn factor_display(k: &BigRational) -> String {
    if k.is_integer() {
        k.numer().to_string()
    } else {
        format!("({})", rational_display(k))
    }
}

/// A scaling-factor set as a finite union of residue classes of multiples of
/// `den·|z|`. The empty class list is the set `{0}`: the direction is not a
/// similarity isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalSet {
    pub direction: Direction,
    /// `den(Γ, R) / |z|`.
    pub den: BigRational,
    pub classes: Vec<ScalClass>,
}

impl ScalSet {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Membership of `β = r·|z|`. Zero is always a member.
    pub fn contains(&self, r: &BigRational) -> bool {
        if r.is_zero() {
            return true;
        }
        let k = r / &self.den;
        self.classes.iter().any(|c| c.contains(&k))
    }

    /// The class containing `β = r·|z|`, if any.
    pub fn class_of(&self, r: &BigRational) -> Option<&ScalClass> {
        let k = r / &self.den;
        self.classes.iter().find(|c| c.contains(&k))
    }

    /// Smallest positive member as `r` in `β = r·|z|`.
    pub fn smallest_positive(&self) -> Option<BigRational> {
        self.classes
            .iter()
            .filter_map(ScalClass::smallest_positive)
            .min()
            .map(|k| k * &self.den)
    }

    /// The smallest positive member displayed as a surd.
    pub fn denominator_display(&self) -> Option<String> {
        self.smallest_positive()
            .map(|r| surd_display(&r, &self.direction.z.norm()))
    }

    /// Display relative to a symbolic unit, e.g. `den·3Z ∪ den·(2+3Z)`.
    pub fn display_with(&self, unit: &str) -> String {
        self.display_unit(&Unit::Symbol(unit.to_string()))
    }

    /// Display with the denominator written out, e.g. `√5·2Z ∪ √5·(1+2Z)`
    /// or `3Z ∪ (2+3Z)` when the denominator is rational.
    pub fn display_absolute(&self) -> String {
        let (s, f) = split_square(&self.direction.z.norm());
        if f.is_one() {
            self.display_unit(&Unit::Rational(&self.den * BigRational::from_integer(s)))
        } else {
            self.display_unit(&Unit::Symbol(surd_display(&self.den, &self.direction.z.norm())))
        }
    }

    fn display_unit(&self, unit: &Unit) -> String {
        if self.classes.is_empty() {
            return "∅".to_string();
        }
        self.classes
            .iter()
            .flat_map(|c| c.fmt_with(unit))
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }
}

impl fmt::Display for ScalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_absolute())
    }
}

/// `p/q` with `q` omitted when 1.
pub fn rational_display(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r·√n` with square factors of `n` pulled out, e.g. `surd(2, 8) = 4·√2`.
pub fn surd_display(r: &BigRational, n: &BigInt) -> String {
    assert!(!n.is_negative());
    let (s, f) = split_square(n);
    let coef = r * BigRational::from_integer(s);
    if f.is_one() || coef.is_zero() {
        return rational_display(&coef);
    }
    if coef.is_one() {
        format!("√{f}")
    } else if (-&coef).is_one() {
        format!("-√{f}")
    } else {
        format!("{}·√{f}", rational_display(&coef))
    }
}

/// `n = s²·f` with `f` squarefree.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= &p;
        }
        p += 1;
    }
    f *= rest;
    (s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;

    fn gw(a: i64, b: i64) -> FieldElem {
        RingElem::from_i64(Ring::Gaussian, a, b).to_field()
    }

    fn sim(w: FieldElem, c: bool) -> Similarity {
        Similarity::new(w, c).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let (r, d) = decompose(&sim(gw(1, 2), false));
        assert_eq!((r, d.z), (ratio(1, 1), RingElem::from_i64(Ring::Gaussian, 1, 2)));
        let (r, d) = decompose(&sim(gw(1, 2).scale(&ratio(2, 5)), false));
        assert_eq!((r, d.z), (ratio(2, 5), RingElem::from_i64(Ring::Gaussian, 1, 2)));
        let (r, d) = decompose(&sim(gw(2, 2), false));
        assert_eq!((r, d.z), (ratio(2, 1), RingElem::from_i64(Ring::Gaussian, 1, 1)));
        let (r, d) = decompose(&sim(gw(-3, 0), true));
        assert_eq!((r, d.z, d.conjugate), (ratio(3, 1), RingElem::from_i64(Ring::Gaussian, -1, 0), true));
    }

    #[test]
    fn denominator_examples() {
        let zi = Lattice::ring_lattice(Ring::Gaussian);
        let d = Direction::new(RingElem::from_i64(Ring::Gaussian, 1, 2), false).unwrap();
        assert_eq!(denominator(&zi, &d), ratio(1, 1));
        assert_eq!(scal_lattice(&zi, &d).display_absolute(), "√5·Z");

        let rect = Lattice::new(Ring::Gaussian, &Mat2::from_i64([[3, 0], [0, 1]])).unwrap();
        let quarter = Direction::new(RingElem::from_i64(Ring::Gaussian, 0, 1), false).unwrap();
        assert_eq!(denominator(&rect, &quarter), ratio(3, 1));
        assert_eq!(scal_lattice(&rect, &quarter).display_absolute(), "3Z");

        let ze = Lattice::ring_lattice(Ring::Eisenstein);
        let d = Direction::new(RingElem::from_i64(Ring::Eisenstein, 1, 1), false).unwrap();
        assert_eq!(denominator(&ze, &d), ratio(1, 1));
    }

    #[test]
    fn compose_examples() {
        let i = sim(gw(0, 1), false);
        assert_eq!(compose(&i, &i), sim(gw(-1, 0), false));
        let t = sim(gw(1, 0), true);
        assert_eq!(compose(&t, &t), sim(gw(1, 0), false));
        let a = sim(gw(1, 2), false);
        let b = sim(gw(1, -2), false);
        let c = compose(&a, &b);
        assert_eq!(c, sim(gw(5, 0), false));
        for p in [gw(3, -1), FieldElem::from_ratios(Ring::Gaussian, (1, 2), (2, 3))] {
            assert_eq!(c.apply(&p), a.apply(&b.apply(&p)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let r = Ring::Eisenstein;
        let s = sim(FieldElem::from_ratios(r, (2, 3), (-1, 1)), true);
        let x = FieldElem::from_ratios(r, (5, 7), (1, 2));
        assert_eq!(s.inverse().apply(&s.apply(&x)), x);
        assert_eq!(s.apply(&s.inverse().apply(&x)), x);
    }

    #[test]
    fn surds() {
        assert_eq!(surd_display(&ratio(1, 1), &BigInt::from(5)), "√5");
        assert_eq!(surd_display(&ratio(2, 1), &BigInt::from(2)), "2·√2");
        assert_eq!(surd_display(&ratio(2, 5), &BigInt::from(5)), "2/5·√5");
        assert_eq!(surd_display(&ratio(3, 2), &BigInt::from(4)), "3");
        assert_eq!(surd_display(&ratio(1, 1), &BigInt::from(12)), "2·√3");
        assert_eq!(surd_display(&ratio(1, 1), &BigInt::from(1)), "1");
    }

    #[test]
    fn scal_set_membership() {
        let d = Direction::new(RingElem::from_i64(Ring::Eisenstein, 1, 1), false).unwrap();
        let set = ScalSet {
            direction: d,
            den: ratio(1, 1),
            classes: vec![
                ScalClass { q: BigInt::one(), modulus: BigInt::from(3), residues: [BigInt::zero()].into(), tau: vec![] },
                ScalClass { q: BigInt::one(), modulus: BigInt::from(3), residues: [BigInt::from(2)].into(), tau: vec![] },
            ],
        };
        assert_eq!(set.display_absolute(), "3Z ∪ (2+3Z)");
        assert_eq!(set.display_with("den"), "den·3Z ∪ den·(2+3Z)");
        assert_eq!(set.smallest_positive(), Some(ratio(2, 1)));
        assert!(set.contains(&ratio(-1, 1)));
        assert!(!set.contains(&ratio(4, 1)));
        assert!(!set.contains(&ratio(3, 2)));
        assert!(set.contains(&ratio(0, 1)));
    }
}
