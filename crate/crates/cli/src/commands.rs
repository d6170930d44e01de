use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use simpack::lattice::index;
use simpack::oracle::{certify_equal, certify_subpacking, index_by_counting, scal_set_bruteforce, Window};
use simpack::packing::{check_corollaries, check_similarity, periods, reduce, scal_set_packing, SimilarityReport};
use simpack::similarity::{decompose, denominator, rational_display, surd_display, Direction};
use simpack::{PointPacking, Ring, RingElem, Similarity};

use crate::input::PackingDoc;
use crate::tables::{to_csv, TableSpec};
use crate::{random, render, CliError, Outcome, EXIT_DISCREPANCY, EXIT_OK, EXIT_REJECTED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn pair_labels(packing: &PointPacking, tau: &[(usize, usize)]) -> Vec<[String; 2]> {
    let l = packing.labels();
    tau.iter().map(|&(k, j)| [l[k].to_string(), l[j].to_string()]).collect()
}

#[derive(Serialize)]
pub struct Corollaries {
    pub shifts_in_fraction_lattice: String,
    pub fraction_pair: Option<[String; 2]>,
    pub singleton_targets: String,
    pub n_beta_in_lattice_scal: String,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub packing: String,
    pub similarity: String,
    pub direction: String,
    pub beta: String,
    pub den_lattice: String,
    pub accepted: bool,
    pub n: u64,
    pub tau: Vec<[String; 2]>,
    pub tau_display: String,
    pub index: Option<String>,
    pub failing_component: Option<usize>,
    pub scal_packing: Option<String>,
    pub den_packing: Option<String>,
    pub corollaries: Option<Corollaries>,
}

pub fn analyze_report(packing: &PointPacking, s: &Similarity) -> (SimilarityReport, AnalyzeReport) {
    let report = check_similarity(packing, s);
    let (_, d) = decompose(s);
    let nz = d.z.norm();
    let den = denominator(packing.lattice(), &d);
    let scal = scal_set_packing(packing, &d).ok();
    let corollaries = report.accepted.then(|| {
        let c = check_corollaries(&report, packing);
        let l = packing.labels();
        Corollaries {
            shifts_in_fraction_lattice: c.shifts_in_fraction_lattice.as_str().to_string(),
            fraction_pair: c.fraction_pair.map(|(a, b)| [l[a].to_string(), l[b].to_string()]),
            singleton_targets: c.singleton_targets.as_str().to_string(),
            n_beta_in_lattice_scal: c.n_beta_in_lattice_scal.as_str().to_string(),
        }
    });
    let out = AnalyzeReport {
        packing: packing.to_string(),
        similarity: s.to_string(),
        direction: d.to_string(),
        beta: s.beta_display(),
        den_lattice: surd_display(&den, &nz),
        accepted: report.accepted,
        n: report.n.to_u64().expect("small index"),
        tau: pair_labels(packing, &report.tau),
        tau_display: packing.tau_display(&report.tau),
        index: report.accepted.then(|| rational_display(&s.scale_squared())),
        failing_component: report.failing_component,
        scal_packing: scal.as_ref().map(|set| set.display_absolute()),
        den_packing: scal.as_ref().and_then(|set| set.denominator_display()),
        corollaries,
    };
    (report, out)
}

pub fn analyze(packing: &PointPacking, s: &Similarity) -> Outcome {
    let (report, out) = analyze_report(packing, s);
    Outcome::new(if report.accepted { EXIT_OK } else { EXIT_REJECTED }, json(&out))
}

/// `samples` default when no explicit `z` is given.
pub fn table(name: &str, samples: usize, zs: &[[i64; 2]], format: Format) -> Result<Outcome, CliError> {
    let spec = TableSpec::by_name(name)?;
    let zs: Vec<RingElem> = if zs.is_empty() {
        spec.default_samples(samples)
    } else {
        zs.iter().map(|z| RingElem::from_i64(spec.ring(), z[0], z[1])).collect()
    };
    if zs.iter().any(|z| z.is_zero()) {
        return Err(CliError::Input("z must be nonzero".into()));
    }
    let rows = spec.rows(&zs)?;
    let text = match format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => json(&rows),
    };
    Ok(Outcome::new(EXIT_OK, text))
}

/// The SVG text, or exit 1 when the similarity is rejected.
pub fn render_svg(packing: &PointPacking, s: Option<&Similarity>, window: &Window) -> Result<String, Outcome> {
    if let Some(s) = s {
        let report = check_similarity(packing, s);
        if !report.accepted {
            return Err(Outcome::new(EXIT_REJECTED, format!("rejected: {s} does not map the packing into itself\n")));
        }
    }
    Ok(render::render(packing, s, window))
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub packing: String,
    pub similarity: String,
    pub engine_accepted: bool,
    pub oracle_contained: bool,
    pub counterexample: Option<String>,
    pub checked: usize,
    pub index_expected: String,
    pub index_counted: Option<String>,
    pub equal: bool,
    pub agreement: bool,
}

pub fn verify_report(packing: &PointPacking, s: &Similarity) -> VerifyReport {
    let engine = check_similarity(packing, s).accepted;
    let cert = certify_subpacking(packing, s);
    let expected = s.scale_squared();
    let counted = cert.contained.then(|| index_by_counting(packing, s).expect("contained"));
    let agreement = engine == cert.contained && counted.as_ref().is_none_or(|c| *c == expected);
    VerifyReport {
        packing: packing.to_string(),
        similarity: s.to_string(),
        engine_accepted: engine,
        oracle_contained: cert.contained,
        counterexample: cert.counterexample.map(|p| p.to_string()),
        checked: cert.checked,
        index_expected: rational_display(&expected),
        index_counted: counted.as_ref().map(rational_display),
        // s(L) = L needs index 1; only then is the inverse sweep worth running
        equal: cert.contained && expected.is_one() && certify_equal(packing, s),
        agreement,
    }
}

pub fn verify_similarity(packing: &PointPacking, s: &Similarity) -> Outcome {
    let r = verify_report(packing, s);
    Outcome::new(if r.agreement { EXIT_OK } else { EXIT_DISCREPANCY }, json(&r))
}

#[derive(Serialize)]
pub struct DirectionVerifyReport {
    pub packing: String,
    pub direction: String,
    pub p_bound: u64,
    pub q_bound: u64,
    /// Accepted `r` in `β = r·|z|`.
    pub bruteforce: Vec<String>,
    pub engine: Vec<String>,
    pub scal_packing: Option<String>,
    pub agreement: bool,
}

pub fn verify_direction(packing: &PointPacking, d: &Direction, p_bound: u64, q_bound: u64) -> Result<Outcome, CliError> {
    if p_bound == 0 || q_bound == 0 {
        return Err(CliError::Input("bounds must be at least 1".into()));
    }
    let brute = scal_set_bruteforce(packing, d, p_bound, q_bound);
    let set = scal_set_packing(packing, d).ok();
    let mut engine = Vec::new();
    for q in 1..=q_bound {
        for p in 1..=p_bound {
            let r = BigRational::new(p.into(), q.into());
            if r.denom() != &q.into() {
                continue;
            }
            let accepted = match &set {
                Some(set) => set.contains(&r),
                None => check_similarity(packing, &Similarity::from_direction(&r, d)?).accepted,
            };
            if accepted {
                engine.push(r);
            }
        }
    }
    engine.sort();
    let brute: Vec<BigRational> = brute.into_iter().collect();
    let agreement = brute == engine;
    let out = DirectionVerifyReport {
        packing: packing.to_string(),
        direction: d.to_string(),
        p_bound,
        q_bound,
        bruteforce: brute.iter().map(rational_display).collect(),
        engine: engine.iter().map(rational_display).collect(),
        scal_packing: set.map(|s| s.display_absolute()),
        agreement,
    };
    Ok(Outcome::new(if agreement { EXIT_OK } else { EXIT_DISCREPANCY }, json(&out)))
}

#[derive(Serialize)]
pub struct RandomVerifyReport {
    pub seed: u64,
    pub cases_per_ring: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub discrepancies: Vec<VerifyReport>,
}

pub fn random_report(cases: usize, seed: u64) -> RandomVerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted, mut rejected) = (0, 0);
    let mut discrepancies = Vec::new();
    for ring in [Ring::Gaussian, Ring::Eisenstein] {
        for _ in 0..cases {
            let (packing, s) = random::instance(&mut rng, ring);
            let r = verify_report(&packing, &s);
            if r.engine_accepted {
                accepted += 1;
            } else {
                rejected += 1;
            }
            if !r.agreement {
                discrepancies.push(r);
            }
        }
    }
    RandomVerifyReport { seed, cases_per_ring: cases, accepted, rejected, discrepancies }
}

pub fn verify_random(cases: usize, seed: u64) -> Outcome {
    let r = random_report(cases, seed);
    Outcome::new(if r.discrepancies.is_empty() { EXIT_OK } else { EXIT_DISCREPANCY }, json(&r))
}

#[derive(Serialize)]
pub struct PeriodsReport {
    pub packing: PackingDoc,
    /// Generators of `per(L)`, as coordinates over `{1, u}`.
    pub periods: [[String; 2]; 2],
    /// Covolume of `per(L)` relative to `Γ`.
    pub relative_covolume: String,
    pub components_before: usize,
    pub components_after: usize,
    pub reduced: PackingDoc,
}

pub fn periods_report(packing: &PointPacking) -> PeriodsReport {
    let per = periods(packing);
    let reduced = reduce(packing);
    let b = per.basis();
    let show = |v: [BigRational; 2]| [rational_display(&v[0]), rational_display(&v[1])];
    PeriodsReport {
        packing: PackingDoc::from_packing(packing),
        periods: [show(b.col(0)), show(b.col(1))],
        relative_covolume: rational_display(&index(&per, packing.lattice())),
        components_before: packing.m(),
        components_after: reduced.m(),
        reduced: PackingDoc::from_packing(&reduced),
    }
}

pub fn periods_cmd(packing: &PointPacking) -> Outcome {
    Outcome::new(EXIT_OK, json(&periods_report(packing)))
}
