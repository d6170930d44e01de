//! Crystallographic point packings `L = ⋃ (x_k + Γ)` and the component-wise
//! test for similar subpackings.
//!
//! A similarity `s` maps `L` onto a subpacking exactly when, for every shift
//! `x_k`, the image component `s(x_k + Γ)` meets exactly
//! `n = [sΓ : Γ ∩ sΓ]` components of `L`. Component `j` is met iff
//! `s(x_k) − x_j ∈ Γ + sΓ`, and then the intersection is a single coset of
//! `Γ ∩ sΓ`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{coset_reps, index, Lattice, Mat2};
use crate::ring::{ring_gcd, FieldElem, Ring, RingElem};
use crate::similarity::{denominator, scal_lattice, Direction, ScalClass, ScalSet, Similarity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPacking {
    lattice: Lattice,
    /// Shifts reduced into the fundamental domain `B·[0,1)²`.
    shifts: Vec<FieldElem>,
    /// Shifts as supplied, used for display.
    labels: Vec<FieldElem>,
}

impl PointPacking {
    pub fn new(lattice: Lattice, shifts: Vec<FieldElem>) -> Result<PointPacking> {
        if shifts.is_empty() {
            return Err(Error::EmptyPacking);
        }
        let normalized: Vec<FieldElem> = shifts
            .iter()
            .map(|x| {
                if x.ring() != lattice.ring() {
                    return Err(Error::RingMismatch(lattice.ring(), x.ring()));
                }
                Ok(lattice.reduce(x))
            })
            .collect::<Result<_>>()?;
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                if normalized[i] == normalized[j] {
                    return Err(Error::CongruentShifts(i, j));
                }
            }
        }
        Ok(PointPacking { lattice, shifts: normalized, labels: shifts })
    }

    /// A single lattice viewed as a one-component packing.
    pub fn from_lattice(lattice: Lattice) -> PointPacking {
        let ring = lattice.ring();
        PointPacking::new(lattice, vec![FieldElem::zero(ring)]).expect("one shift")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ring(&self) -> Ring {
        self.lattice.ring()
    }

    pub fn shifts(&self) -> &[FieldElem] {
        &self.shifts
    }

    pub fn labels(&self) -> &[FieldElem] {
        &self.labels
    }

    /// Number of components `m`.
    pub fn m(&self) -> usize {
        self.shifts.len()
    }

    /// Index of the component containing `x`, if `x ∈ L`.
    pub fn component_of(&self, x: &FieldElem) -> Option<usize> {
        let r = self.lattice.reduce(x);
        self.shifts.iter().position(|s| *s == r)
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        self.component_of(x).is_some()
    }

    /// `−L = L`.
    pub fn is_inversion_symmetric(&self) -> bool {
        self.shifts.iter().all(|x| self.contains(&-x))
    }

    /// Least common multiple of the shift denominators, in lattice coordinates
    /// (the same as ring coordinates when `Γ` is the ring itself).
    pub fn shift_denominator_lcm(&self) -> BigInt {
        self.shifts
            .iter()
            .flat_map(|x| self.lattice.coords_of(x))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn tau_display(&self, tau: &[(usize, usize)]) -> String {
        let pairs: Vec<String> = tau
            .iter()
            .map(|&(k, j)| format!("({},{})", self.labels[k], self.labels[j]))
            .collect();
        format!("{{{}}}", pairs.join(","))
    }
}

impl fmt::Display for PointPacking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .map(|x| format!("({x} + Γ)"))
            .collect();
        write!(f, "{} with Γ = {}", parts.join(" ∪ "), self.lattice)
    }
}

/// The packings used throughout as worked examples.
pub mod presets {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// `Z[i] ∪ (1/2 + Z[i])`: the 1×2 rectangular lattice.
    pub fn rect12() -> PointPacking {
        let r = Ring::Gaussian;
        PointPacking::new(
            Lattice::ring_lattice(r),
            vec![FieldElem::zero(r), FieldElem::from_rational(r, q(1, 2))],
        )
        .unwrap()
    }

    /// The honeycomb `Z[ω] ∪ ((2+ω)/3 + Z[ω])`.
    pub fn hexagonal() -> PointPacking {
        let r = Ring::Eisenstein;
        PointPacking::new(
            Lattice::ring_lattice(r),
            vec![FieldElem::zero(r), hex_shift()],
        )
        .unwrap()
    }

    /// `(2+ω)/3`.
    pub fn hex_shift() -> FieldElem {
        FieldElem::from_ratios(Ring::Eisenstein, (2, 3), (1, 3))
    }

    /// The honeycomb translated by `(2+ω)/3`, so the origin is a hexagon centre.
    pub fn hexagonal_shifted() -> PointPacking {
        shift(&hexagonal(), &hex_shift())
    }

    /// `Z[i]` written over `Γ = {3a + bi}` with shifts `0, 1, 2`.
    pub fn ex34() -> PointPacking {
        let r = Ring::Gaussian;
        let gamma = Lattice::new(r, &Mat2::from_i64([[3, 0], [0, 1]])).unwrap();
        let shifts = (0..3).map(|k| RingElem::from_i64(r, k, 0).to_field()).collect();
        PointPacking::new(gamma, shifts).unwrap()
    }

    /// `Z[i] ∪ ((1+i)/2 + Z[i])`, itself a square lattice.
    pub fn ex22() -> PointPacking {
        let r = Ring::Gaussian;
        PointPacking::new(
            Lattice::ring_lattice(r),
            vec![FieldElem::zero(r), FieldElem::from_ratios(r, (1, 2), (1, 2))],
        )
        .unwrap()
    }

    pub fn by_name(name: &str) -> Option<PointPacking> {
        match name {
            "rect12" => Some(rect12()),
            "hex" => Some(hexagonal()),
            "hex-shifted" => Some(hexagonal_shifted()),
            "ex34" => Some(ex34()),
            "ex22" => Some(ex22()),
            _ => None,
        }
    }

    pub const NAMES: [&str; 5] = ["rect12", "hex", "hex-shifted", "ex34", "ex22"];
}

/// `s(x_k + Γ) ∩ (x_j + Γ) = offset + lattice`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub k: usize,
    pub j: usize,
    pub offset: FieldElem,
    pub lattice: Lattice,
}

/// `s(x_k + Γ) ∩ (x_j + Γ)`, which is empty or one coset of `Γ ∩ sΓ`.
pub fn component_intersection(
    lattice: &Lattice,
    x_k: &FieldElem,
    x_j: &FieldElem,
    s: &Similarity,
) -> Option<(FieldElem, Lattice)> {
    let image = s.image(lattice);
    let d = &s.apply(x_k) - x_j;
    if !lattice.sum(&image).contains(&d) {
        return None;
    }
    let inter = lattice.intersect(&image);
    // d = ℓ + b with ℓ ∈ Γ, b ∈ sΓ; b ranges over sΓ / (Γ ∩ sΓ)
    let ell = coset_reps(&inter, &image)
        .into_iter()
        .map(|b| &d - &b)
        .find(|ell| lattice.contains(ell))
        .expect("d ∈ Γ + sΓ has a decomposition");
    let offset = inter.reduce(&(x_j + &ell));
    Some((offset, inter))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityReport {
    pub similarity: Similarity,
    pub accepted: bool,
    /// `[sΓ : Γ ∩ sΓ]`.
    pub n: BigInt,
    /// `(k, j)` with `s(x_k) − x_j ∈ Γ + sΓ`, sorted.
    pub tau: Vec<(usize, usize)>,
    /// The coset `s(x_k + Γ) ∩ (x_j + Γ)` for each pair of `tau`; filled when accepted.
    pub witness: Vec<Coset>,
    /// First `k` whose image component meets a number of components other than `n`.
    pub failing_component: Option<usize>,
    pub intersection: Lattice,
    pub lattice_sum: Lattice,
}

impl SimilarityReport {
    /// `J_k`.
    pub fn targets(&self, k: usize) -> Vec<usize> {
        self.tau.iter().filter(|p| p.0 == k).map(|p| p.1).collect()
    }
}

/// Decide whether `s(L)` is a subpacking of `L` and record `τ`.
pub fn check_similarity(packing: &PointPacking, s: &Similarity) -> SimilarityReport {
    let gamma = packing.lattice();
    let image = s.image(gamma);
    let inter = gamma.intersect(&image);
    let sum = gamma.sum(&image);
    let n = index(&inter, &image);
    debug_assert!(n.is_integer());
    let n = n.to_integer();

    let mut tau = Vec::new();
    let mut failing = None;
    for (k, x_k) in packing.shifts().iter().enumerate() {
        let y = s.apply(x_k);
        let before = tau.len();
        for (j, x_j) in packing.shifts().iter().enumerate() {
            if sum.contains(&(&y - x_j)) {
                tau.push((k, j));
            }
        }
        if failing.is_none() && BigInt::from(tau.len() - before) != n {
            failing = Some(k);
        }
    }
    let accepted = failing.is_none();

    let witness = if accepted {
        tau.iter()
            .map(|&(k, j)| {
                let (offset, lattice) = component_intersection(
                    gamma,
                    &packing.shifts()[k],
                    &packing.shifts()[j],
                    s,
                )
                .expect("pair in tau intersects");
                Coset { k, j, offset, lattice }
            })
            .collect()
    } else {
        Vec::new()
    };

    SimilarityReport {
        similarity: s.clone(),
        accepted,
        n,
        tau,
        witness,
        failing_component: failing,
        intersection: inter,
        lattice_sum: sum,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The hypothesis of the statement does not apply.
    Vacuous,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Vacuous => "vacuous",
        }
    }

    pub fn ok(self) -> bool {
        self != CheckStatus::Fail
    }

    fn from_bool(b: bool) -> CheckStatus {
        if b {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryDiagnostics {
    /// `n ≥ 2` ⇒ two distinct shifts differ by an element of `(1/n)Γ`.
    pub shifts_in_fraction_lattice: CheckStatus,
    /// A witnessing pair `(j₁, j₂)` for the first check.
    pub fraction_pair: Option<(usize, usize)>,
    /// `sΓ ⊆ Γ` ⇒ every `J_k` is a singleton.
    pub singleton_targets: CheckStatus,
    /// `n·s(Γ) ⊆ Γ`.
    pub n_beta_in_lattice_scal: CheckStatus,
}

impl CorollaryDiagnostics {
    pub fn all_ok(&self) -> bool {
        self.shifts_in_fraction_lattice.ok()
            && self.singleton_targets.ok()
            && self.n_beta_in_lattice_scal.ok()
    }
}

/// Consequences of an accepted report that can be checked independently.
pub fn check_corollaries(report: &SimilarityReport, packing: &PointPacking) -> CorollaryDiagnostics {
    if !report.accepted {
        return CorollaryDiagnostics {
            shifts_in_fraction_lattice: CheckStatus::Vacuous,
            fraction_pair: None,
            singleton_targets: CheckStatus::Vacuous,
            n_beta_in_lattice_scal: CheckStatus::Vacuous,
        };
    }
    let gamma = packing.lattice();
    let n = BigRational::from_integer(report.n.clone());

    let (first, fraction_pair) = if report.n > BigInt::one() {
        let fine = gamma.scale_rational(&n.recip()).expect("n ≠ 0");
        let shifts = packing.shifts();
        let pair = (0..shifts.len())
            .flat_map(|a| (0..shifts.len()).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && fine.contains(&(&shifts[b] - &shifts[a])));
        (CheckStatus::from_bool(pair.is_some()), pair)
    } else {
        (CheckStatus::Vacuous, None)
    };

    let image = report.similarity.image(gamma);
    let second = if image.is_sublattice_of(gamma) {
        let singletons = (0..packing.m()).all(|k| report.targets(k).len() == 1);
        CheckStatus::from_bool(singletons)
    } else {
        CheckStatus::Vacuous
    };

    let third = CheckStatus::from_bool(
        image
            .scale_rational(&n)
            .expect("n ≠ 0")
            .is_sublattice_of(gamma),
    );

    CorollaryDiagnostics {
        shifts_in_fraction_lattice: first,
        fraction_pair,
        singleton_targets: second,
        n_beta_in_lattice_scal: third,
    }
}

fn divisors(m: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *m {
        if (m % &d).is_zero() {
            small.push(d.clone());
            let e = m / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Collapse a per-residue signature table (mod `modulus`) into residue classes
/// of the smallest period.
fn merge_classes(
    q: &BigInt,
    modulus: &BigInt,
    table: &BTreeMap<BigInt, Option<Vec<(usize, usize)>>>,
) -> Vec<ScalClass> {
    let period = divisors(modulus)
        .into_iter()
        .filter(|d| q.is_one() || (d % q).is_zero())
        .find(|d| {
            table.iter().all(|(r, sig)| {
                let shifted = (r + d).mod_floor(modulus);
                table.get(&shifted) == Some(sig)
            })
        })
        .unwrap_or_else(|| modulus.clone());

    let mut groups: Vec<(Vec<(usize, usize)>, BTreeSet<BigInt>)> = Vec::new();
    for (r, sig) in table.range(..period.clone()) {
        let Some(tau) = sig else { continue };
        match groups.iter_mut().find(|g| &g.0 == tau) {
            Some(g) => {
                g.1.insert(r.clone());
            }
            None => groups.push((tau.clone(), BTreeSet::from([r.clone()]))),
        }
    }
    groups
        .into_iter()
        .map(|(tau, residues)| ScalClass {
            q: q.clone(),
            modulus: period.clone(),
            residues,
            tau,
        })
        .collect()
}

/// The exact set `Scal(L, R)` for a packing over `Z[i]` or `Z[ω]`.
///
/// Every `β ∈ Scal(L, R)` is `(p/q)·den·|z|` with `q² / norm(gcd(z, q)) = n ≤ m`.
/// For each admissible `q` the acceptance of `p` is periodic modulo
/// `q·norm(z)·lcm(shift denominators)`, so one full residue sweep decides it.
pub fn scal_set_packing(packing: &PointPacking, d: &Direction) -> Result<ScalSet> {
    let gamma = packing.lattice();
    if !gamma.is_ring_lattice() {
        return Err(Error::UnsupportedLattice(format!(
            "{gamma} is not the full ring lattice; test scaling factors individually"
        )));
    }
    let ring = packing.ring();
    let den = denominator(gamma, d);
    let m = BigInt::from(packing.m());
    let nz = d.z.norm();
    let shift_den = packing.shift_denominator_lcm();

    let mut classes = Vec::new();
    let mut q = BigInt::one();
    while &q * &q <= &m * &nz {
        let g = ring_gcd(&d.z, &RingElem::from_int(ring, q.clone()))?;
        if &q * &q > &m * g.norm() {
            q += 1;
            continue;
        }
        let modulus = &q * &nz * &shift_den;
        let mut table = BTreeMap::new();
        let mut r = BigInt::zero();
        while r < modulus {
            if r.gcd(&q).is_one() {
                let p = if r.is_zero() { modulus.clone() } else { r.clone() };
                let factor = BigRational::new(p, q.clone()) * &den;
                let s = Similarity::from_direction(&factor, d)?;
                let report = check_similarity(packing, &s);
                table.insert(r.clone(), report.accepted.then_some(report.tau));
            }
            r += 1;
        }
        classes.extend(merge_classes(&q, &modulus, &table));
        q += 1;
    }
    Ok(ScalSet { direction: d.clone(), den, classes })
}

/// `r` in `β = r·|z|` with `β = lcm(shift denominators)·den(Γ, R)`; for a
/// packing containing `0` with rational shifts this factor always works.
pub fn lcm_witness(packing: &PointPacking, d: &Direction) -> BigRational {
    BigRational::from_integer(packing.shift_denominator_lcm()) * denominator(packing.lattice(), d)
}

/// `per(L)`: `Γ` together with every `t = x_j − x_0` for which `t + L = L`.
pub fn periods(packing: &PointPacking) -> Lattice {
    let gamma = packing.lattice();
    let shifts = packing.shifts();
    let base = &shifts[0];
    let mut gens = vec![gamma.basis().col(0), gamma.basis().col(1)];
    for x_j in shifts {
        let t = x_j - base;
        let is_period = shifts.iter().all(|x_k| packing.contains(&(&t + x_k)));
        if is_period {
            gens.push(t.coords());
        }
    }
    Lattice::from_generators(packing.ring(), &gens).expect("contains Γ")
}

/// The same point set over the maximal generating lattice `per(L)`.
pub fn reduce(packing: &PointPacking) -> PointPacking {
    let per = periods(packing);
    let mut seen = HashSet::new();
    let mut labels = Vec::new();
    for (x, label) in packing.shifts().iter().zip(packing.labels()) {
        if seen.insert(per.reduce(x)) {
            labels.push(label.clone());
        }
    }
    let reduced = PointPacking::new(per, labels).expect("distinct classes mod per(L)");
    assert!(same_point_set(packing, &reduced), "reduction preserves the point set");
    reduced
}

/// Whether two packings describe the same subset of the plane.
pub fn same_point_set(a: &PointPacking, b: &PointPacking) -> bool {
    if a.ring() != b.ring() {
        return false;
    }
    let common = a.lattice().intersect(b.lattice());
    let common = &common;
    let classes = |p: &PointPacking| -> HashSet<FieldElem> {
        let reps = coset_reps(common, p.lattice());
        p.shifts()
            .iter()
            .flat_map(|x| reps.iter().map(move |c| common.reduce(&(x + c))))
            .collect()
    };
    classes(a) == classes(b)
}

/// `x + L`.
pub fn shift(packing: &PointPacking, x: &FieldElem) -> PointPacking {
    let labels = packing.labels().iter().map(|s| x + s).collect();
    PointPacking::new(packing.lattice().clone(), labels).expect("translation keeps shifts distinct")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub first: Similarity,
    pub second: Similarity,
    /// Both maps are individually accepted.
    pub preconditions_hold: bool,
    /// `second ∘ first`.
    pub composed: Similarity,
    pub composed_accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub direction: Direction,
    /// `Scal(L, R) ⊆ Scal(Γ, R)`.
    pub holds: bool,
    /// Decided from the exact packing set rather than bounded sampling.
    pub exact: bool,
    pub packing_scal: Option<ScalSet>,
    pub lattice_scal: ScalSet,
    /// Some `r` with `r·|z| ∈ Scal(L, R) \ Scal(Γ, R)`.
    pub counterexample: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub pairs: Vec<PairCheck>,
    pub hypotheses: Vec<HypothesisCheck>,
}

impl ClosureReport {
    pub fn all_compositions_accepted(&self) -> bool {
        self.pairs.iter().all(|p| !p.preconditions_hold || p.composed_accepted)
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }
}

const SAMPLE_P_BOUND: i64 = 24;

/// Check `Scal(L, R) ⊆ Scal(Γ, R)` for one direction.
pub fn hypothesis_check(packing: &PointPacking, d: &Direction) -> HypothesisCheck {
    let gamma = packing.lattice();
    let lattice_scal = scal_lattice(gamma, d);
    let den = lattice_scal.den.clone();
    match scal_set_packing(packing, d) {
        Ok(set) => {
            // classes are multiples of den; only q = 1 classes lie in den·Z
            let bad = set.classes.iter().find(|c| !c.q.is_one());
            HypothesisCheck {
                direction: d.clone(),
                holds: bad.is_none(),
                exact: true,
                counterexample: bad
                    .and_then(ScalClass::smallest_positive)
                    .map(|k| k * &den),
                packing_scal: Some(set),
                lattice_scal,
            }
        }
        Err(_) => {
            // n = q² / ... ≤ m bounds the reduced denominator q
            let mut counterexample = None;
            'search: for q in 2..=packing.m() as i64 {
                for p in 1..=SAMPLE_P_BOUND {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    let k = BigRational::new(BigInt::from(p), BigInt::from(q));
                    let r = k * &den;
                    let s = Similarity::from_direction(&r, d).expect("nonzero");
                    if check_similarity(packing, &s).accepted {
                        counterexample = Some(r);
                        break 'search;
                    }
                }
            }
            HypothesisCheck {
                direction: d.clone(),
                holds: counterexample.is_none(),
                exact: false,
                packing_scal: None,
                lattice_scal,
                counterexample,
            }
        }
    }
}

/// Composition closure on sampled pairs plus the `Scal(L,R) ⊆ Scal(Γ,R)`
/// hypothesis for every direction involved.
pub fn closure_check(packing: &PointPacking, samples: &[(Similarity, Similarity)]) -> ClosureReport {
    let pairs: Vec<PairCheck> = samples
        .iter()
        .map(|(first, second)| {
            let preconditions_hold = check_similarity(packing, first).accepted
                && check_similarity(packing, second).accepted;
            let composed = crate::similarity::compose(second, first);
            let composed_accepted = check_similarity(packing, &composed).accepted;
            PairCheck {
                first: first.clone(),
                second: second.clone(),
                preconditions_hold,
                composed,
                composed_accepted,
            }
        })
        .collect();

    let mut directions: Vec<Direction> = Vec::new();
    for (a, b) in samples {
        for d in [a.direction(), b.direction()] {
            if !directions.contains(&d) {
                directions.push(d);
            }
        }
    }
    let hypotheses = directions.iter().map(|d| hypothesis_check(packing, d)).collect();
    ClosureReport { pairs, hypotheses }
}

/// Probe whether the inverse rotation of `s` is again a similarity isometry,
/// by searching `β = (p/q)·den` with `p ≤ p_bound`, `q ≤ q_bound`.
/// Returns an accepted scaled inverse if one is found.
pub fn inverse_probe(packing: &PointPacking, s: &Similarity, p_bound: i64, q_bound: i64) -> Option<Similarity> {
    let inv = s.inverse().direction();
    let den = denominator(packing.lattice(), &inv);
    for q in 1..=q_bound {
        for p in 1..=p_bound {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = BigRational::new(BigInt::from(p), BigInt::from(q)) * &den;
            let cand = Similarity::from_direction(&r, &inv).ok()?;
            if check_similarity(packing, &cand).accepted {
                return Some(cand);
            }
        }
    }
    None
}

/// Number of components each image component meets, as a machine integer.
pub fn n_as_usize(report: &SimilarityReport) -> Option<usize> {
    report.n.to_usize()
}
