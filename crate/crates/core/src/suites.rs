//! Named verification suites.
//!
//! Each function returns an [`AxiomReport`] whose records carry the seed and
//! trial that produced them, so any failure can be replayed in isolation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_trace::{FreeTraceElement, GeneralFreeTraceElement, PointedSet};
use crate::intervals::{
    canonical_decomposition, is_cyclically_ordered, CircleConfig, CircleModule, LittleIntervals, UnitIntervalConfig,
};
use crate::loops::suspension::{may_approximation, SuspensionSpace};
use crate::loops::{
    concat, j1_trace, loop_sup_distance, passes_through, ratio, t1, t2, t2_involution, LoopAlgebra, LoopTrace, PlLoop,
    PlSpace, Ratio,
};
use crate::operad::{
    check_module_axioms, check_module_axioms_exhaustive, check_operad_axioms, check_operad_axioms_exhaustive,
    check_trace_compatibility, trial_rng, AxiomReport, RandomCheck,
};
use crate::permutation::Permutation;
use crate::polytopes::{
    compose_k, compose_w, enumerate_faces_k, enumerate_faces_w, euler_characteristic, f_vector, AssociahedronFaces,
    Bracketing, CyclicTubing, CyclohedronFaces, K_CAP, W_CAP,
};

/// Largest `k + l + m` for the exhaustive polytope axiom checks.
pub const EXHAUSTIVE_TOTAL: usize = 9;
/// Sample points per loop comparison.
pub const EVAL_POINTS: usize = 4096;

const GEOMETRIC_TOL: f64 = 1e-12;
const LOOP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Operad,
    Module,
    Trace,
    Polytopes,
    Freetrace,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["operad", "module", "trace", "polytopes", "freetrace", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "operad" => Suite::Operad,
            "module" => Suite::Module,
            "trace" => Suite::Trace,
            "polytopes" => Suite::Polytopes,
            "freetrace" => Suite::Freetrace,
            "all" => Suite::All,
            _ => {
                return Err(Error::Harness(format!(
                    "unknown suite `{s}` (expected one of {})",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    /// Overrides every per-instance default tolerance.
    pub tol: Option<f64>,
}

/// One row of the polytope table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FVectorRow {
    pub polytope: String,
    pub n: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub trials: u64,
    pub passed: bool,
    pub reports: Vec<AxiomReport>,
    pub f_vectors: Vec<FVectorRow>,
}

/// Runs a suite. `trials = 0` is rejected.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    if cfg.trials == 0 {
        return Err(Error::Harness("trials must be at least 1".into()));
    }
    let (seed, trials) = (cfg.seed, cfg.trials);
    let tol = |default: f64| cfg.tol.unwrap_or(default);
    let mut reports = Vec::new();
    let mut f_vectors = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Operad) {
        reports.push(little_intervals_report(seed, trials, tol(GEOMETRIC_TOL))?);
        reports.push(associahedron_exhaustive_report(EXHAUSTIVE_TOTAL)?);
    }
    if wants(Suite::Module) {
        reports.push(circle_module_report(seed, trials, tol(GEOMETRIC_TOL))?);
        reports.push(cyclohedron_exhaustive_report(EXHAUSTIVE_TOTAL)?);
        reports.push(canonical_form_report(seed, trials)?);
    }
    if wants(Suite::Trace) {
        reports.push(pl_trace_report(seed, trials, tol(LOOP_TOL), EVAL_POINTS)?);
        reports.push(pl_algebra_report(seed, trials, tol(LOOP_TOL), EVAL_POINTS)?);
        reports.push(suspension_trace_report(seed, trials, tol(LOOP_TOL), EVAL_POINTS)?);
        reports.push(loop_formula_report(seed, trials)?);
        reports.push(basepoint_report(seed, trials, tol(GEOMETRIC_TOL))?);
    }
    if wants(Suite::Polytopes) {
        let (report, rows) = polytope_report()?;
        reports.push(report);
        reports.push(dimension_additivity_report()?);
        f_vectors = rows;
    }
    if wants(Suite::Freetrace) {
        reports.push(diagram_report(seed, trials, tol(LOOP_TOL), EVAL_POINTS)?);
    }
    let passed = reports.iter().all(AxiomReport::passed);
    Ok(SuiteOutcome { suite, seed, trials, passed, reports, f_vectors })
}

fn exact(ok: bool) -> Result<f64> {
    Ok(if ok { 0.0 } else { f64::INFINITY })
}

pub fn little_intervals_report(seed: u64, trials: u64, tol: f64) -> Result<AxiomReport> {
    check_operad_axioms(&LittleIntervals, UnitIntervalConfig::random, &RandomCheck::new(seed, trials, tol))
}

pub fn circle_module_report(seed: u64, trials: u64, tol: f64) -> Result<AxiomReport> {
    check_module_axioms(
        &CircleModule::default(),
        CircleConfig::random,
        UnitIntervalConfig::random,
        &RandomCheck::new(seed, trials, tol),
    )
}

pub fn associahedron_exhaustive_report(max_total: usize) -> Result<AxiomReport> {
    check_operad_axioms_exhaustive(&AssociahedronFaces, enumerate_faces_k, 1, max_total, 0.0)
}

pub fn cyclohedron_exhaustive_report(max_total: usize) -> Result<AxiomReport> {
    check_module_axioms_exhaustive(
        &CyclohedronFaces::default(),
        enumerate_faces_w,
        enumerate_faces_k,
        1,
        max_total,
        0.0,
    )
}

/// `dim(x ∘ᵢ y) = dim x + dim y` for every enumerated pair whose
/// composite stays within the enumeration caps.
pub fn dimension_additivity_report() -> Result<AxiomReport> {
    let mut report = AxiomReport::new("face composition dimensions");
    let ks: Vec<Vec<Bracketing>> = (0..=K_CAP).map(|n| enumerate_faces_k(n.max(1))).collect::<Result<_>>()?;
    let ws: Vec<Vec<CyclicTubing>> = (0..=W_CAP).map(|n| enumerate_faces_w(n.max(1))).collect::<Result<_>>()?;
    for k in 1..=K_CAP {
        for l in 1..=K_CAP + 1 - k {
            let ok = ks[k].iter().all(|x| {
                ks[l].iter().all(|y| {
                    (1..=k).all(|i| compose_k(x, y, i).is_ok_and(|c| c.dimension() == x.dimension() + y.dimension()))
                })
            });
            report.push("dimension_additivity_k", vec![k, l], 0, 0, exact(ok), 0.0);
        }
    }
    for k in 1..=W_CAP {
        for l in 1..=W_CAP + 1 - k {
            let ok = ws[k].iter().all(|x| {
                ks[l].iter().all(|y| {
                    (1..=k).all(|i| compose_w(x, y, i).is_ok_and(|c| c.dimension() == x.dimension() + y.dimension()))
                })
            });
            report.push("dimension_additivity_w", vec![k, l], 0, 0, exact(ok), 0.0);
        }
    }
    Ok(report)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// F-vectors of `K₁ … K₈` and `W₁ … W₇` with vertex counts against
/// closed forms and Euler characteristics.
pub fn polytope_report() -> Result<(AxiomReport, Vec<FVectorRow>)> {
    let mut report = AxiomReport::new("polytope face lattices");
    let mut rows = Vec::new();
    for n in 1..=K_CAP {
        let f = f_vector(enumerate_faces_k(n)?.iter().map(Bracketing::dimension));
        let m = (n - 1) as u64;
        let catalan = binomial(2 * m, m) / (m + 1);
        report.push("vertices_k_catalan", vec![n], 0, 0, Ok((f[0] as f64 - catalan as f64).abs()), 0.0);
        let chi = euler_characteristic(&f);
        report.push("euler_characteristic_k", vec![n], 0, 0, Ok((chi - 1).abs() as f64), 0.0);
        rows.push(FVectorRow { polytope: "K".into(), n, f_vector: f, euler_characteristic: chi });
    }
    for n in 1..=W_CAP {
        let f = f_vector(enumerate_faces_w(n)?.iter().map(CyclicTubing::dimension));
        let m = (n - 1) as u64;
        report.push("vertices_w_binomial", vec![n], 0, 0, Ok((f[0] as f64 - binomial(2 * m, m) as f64).abs()), 0.0);
        let chi = euler_characteristic(&f);
        report.push("euler_characteristic_w", vec![n], 0, 0, Ok((chi - 1).abs() as f64), 0.0);
        let anchor: Option<&[usize]> = match n {
            1 => Some(&[1]),
            2 => Some(&[2, 1]),
            3 => Some(&[6, 6, 1]),
            _ => None,
        };
        if let Some(a) = anchor {
            report.push("f_vector_w_anchor", vec![n], 0, 0, exact(f == a), 0.0);
        }
        if n == 4 {
            report.push("vertices_w4", vec![n], 0, 0, exact(f[0] == 20), 0.0);
        }
        rows.push(FVectorRow { polytope: "W".into(), n, f_vector: f, euler_characteristic: chi });
    }
    Ok((report, rows))
}

/// Round trip `σ·ordered = d` and ℤₙ-orbit invariance of the canonical form.
pub fn canonical_form_report(seed: u64, trials: u64) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("cyclic canonical form");
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.gen_range(0..=6);
        let d = CircleConfig::random(&mut rng, n);
        let dec = canonical_decomposition(&d);
        let round = dec.recompose().map(|r| r == d && is_cyclically_ordered(&dec.ordered));
        report.push("canonical_round_trip", vec![n], seed, trial, round.and_then(exact), 0.0);
        let orbit = (0..n.max(1)).try_fold(true, |ok, r| {
            let rotated = dec.ordered.permute(&Permutation::cyclic(n, r))?;
            Ok::<_, Error>(ok && canonical_decomposition(&rotated).ordered == dec.ordered)
        });
        report.push("canonical_orbit_invariance", vec![n], seed, trial, orbit.and_then(exact), 0.0);
    }
    Ok(report)
}

/// The basepoint used by the loop suites.
pub fn loop_basepoint() -> Vec<f64> {
    vec![0.0, 0.0]
}

/// `n` random based PL loops at [`loop_basepoint`].
pub fn random_loops<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<PlLoop> {
    let b = loop_basepoint();
    (0..n).map(|_| PlLoop::random_based(rng, &b, 6)).collect()
}

pub fn pl_trace_report(seed: u64, trials: u64, tol: f64, eval_points: usize) -> Result<AxiomReport> {
    check_trace_compatibility(
        &LoopTrace::new(PlSpace::new(loop_basepoint())),
        CircleConfig::random,
        UnitIntervalConfig::random,
        random_loops,
        &RandomCheck::new(seed, trials, tol).arities(0, 3),
        eval_points,
    )
}

pub fn pl_algebra_report(seed: u64, trials: u64, tol: f64, eval_points: usize) -> Result<AxiomReport> {
    check_trace_compatibility(
        &LoopAlgebra::new(PlSpace::new(loop_basepoint())),
        UnitIntervalConfig::random,
        UnitIntervalConfig::random,
        random_loops,
        &RandomCheck::new(seed, trials, tol).arities(0, 3),
        eval_points,
    )
}

/// The pointed set used by the suspension and free-trace suites.
pub fn sample_pointed_set() -> PointedSet {
    let points = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![-1.0, 0.5]];
    PointedSet::new(points, vec![0.0, 0.0]).expect("fixed set is valid")
}

pub fn suspension_trace_report(seed: u64, trials: u64, tol: f64, eval_points: usize) -> Result<AxiomReport> {
    let x = sample_pointed_set();
    let b = x.basepoint.clone();
    let label = |rng: &mut rand_chacha::ChaCha8Rng| x.points[rng.gen_range(0..x.points.len())].clone();
    check_trace_compatibility(
        &LoopTrace::new(SuspensionSpace::new(b.clone())),
        CircleConfig::random,
        UnitIntervalConfig::random,
        |rng, n| {
            (0..n)
                .map(|_| {
                    let l = rng.gen_range(0..=2);
                    let c = UnitIntervalConfig::random(rng, l);
                    let labels: Vec<_> = (0..l).map(|_| label(rng)).collect();
                    may_approximation(&c, &labels, &b).expect("arities agree")
                })
                .collect()
        },
        &RandomCheck::new(seed, trials, tol).arities(0, 3),
        eval_points,
    )
}

fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> Ratio {
    ratio(rng.gen_range(0.0..1.0)).expect("finite")
}

/// Explicit formulas: the charming equation, `T₁(0, ·)` as the inclusion,
/// `Σ₂`-invariance of `T₂` and a non-associativity witness for `*`.
pub fn loop_formula_report(seed: u64, pairs: u64) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("explicit loop formulas");
    let half = crate::loops::ratio_of(1, 2);
    let zero = crate::loops::ratio_of(0, 1);
    for trial in 0..pairs {
        let mut rng = trial_rng(seed, trial);
        let ls = random_loops(&mut rng, 2);
        let (phi, psi) = (&ls[0], &ls[1]);
        let charming = (|| {
            let lhs = concat(phi, psi)?.rotate(&half);
            exact(lhs.vertices() == concat(psi, phi)?.vertices())
        })();
        report.push("charming_equation", vec![2], seed, trial, charming, 0.0);
        let inclusion = t1(&zero, phi).map(|l| l == phi.as_free()).and_then(exact);
        report.push("t1_at_zero_is_inclusion", vec![1], seed, trial, inclusion, 0.0);
        let (alpha, t) = (random_angle(&mut rng), random_angle(&mut rng));
        let invariance = (|| {
            let (a2, s2) = t2_involution(&alpha, &t);
            let lhs = t2(&alpha, &t, phi, psi)?;
            let rhs = t2(&a2, &s2, psi, phi)?;
            exact(lhs.reduced_vertices() == rhs.reduced_vertices())
        })();
        report.push("t2_swap_invariance", vec![2], seed, trial, invariance, 0.0);
    }
    let witness = (|| {
        let b = loop_basepoint();
        let a = PlLoop::based_from_f64(b.clone(), &[(0.5, vec![1.0, 0.0])])?;
        let c = PlLoop::constant(crate::loops::LoopKind::Based, b);
        let left = concat(&concat(&a, &c)?, &c)?;
        let right = concat(&a, &concat(&c, &c)?)?;
        let gap = loop_sup_distance(&left, &right, EVAL_POINTS)?;
        exact(gap > 0.0 && !left.same_map(&right))
    })();
    report.push("concat_not_strictly_associative", vec![3], seed, 0, witness, 0.0);
    Ok(report)
}

/// `j1_trace(d, loops)` passes through the basepoint whenever the arcs
/// leave part of the circle uncovered.
pub fn basepoint_report(seed: u64, trials: u64, tol: f64) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("trace image meets the basepoint");
    let space = PlSpace::new(loop_basepoint());
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.gen_range(0..=4);
        let d = CircleConfig::random(&mut rng, n);
        let loops = random_loops(&mut rng, n);
        if d.total_length() >= 1.0 {
            continue;
        }
        let outcome =
            j1_trace(&space, &d, &loops).and_then(|l| passes_through(&l, &loop_basepoint(), tol)).and_then(exact);
        report.push("passes_through_basepoint", vec![n], seed, trial, outcome, tol);
    }
    Ok(report)
}

/// The approximation square on random elements of the free trace, plus
/// exact checks on bare labels and on the two quotient relations.
pub fn diagram_report(seed: u64, trials: u64, tol: f64, samples: usize) -> Result<AxiomReport> {
    let mut report = AxiomReport::new("approximation diagram");
    let x = sample_pointed_set();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.gen_range(0..=4);
        let g = GeneralFreeTraceElement::random(&mut rng, &x, n, 3);
        report.push("diagram_commutes", vec![n], seed, trial, g.diagram_residual(samples), tol);

        let e = FreeTraceElement::random(&mut rng, &x, n);
        let bare = GeneralFreeTraceElement::from_bare(&e);
        report.push("diagram_exact_on_bare_labels", vec![n], seed, trial, bare.diagram_residual(samples), 0.0);

        let sigma = Permutation::random(n, &mut rng);
        let permuted = e.permute(&sigma).map(|p| p.cohen_h() == e.cohen_h()).and_then(exact);
        report.push("cohen_h_symmetric_relation", vec![n], seed, trial, permuted, 0.0);

        let with_base = FreeTraceElement::random(&mut rng, &x, n + 1);
        let deleted = (|| {
            let j = rng.gen_range(0..=n);
            let mut labels = with_base.labels.clone();
            labels[j] = x.basepoint.clone();
            let full = FreeTraceElement::new(with_base.circle.clone(), labels.clone(), x.clone())?;
            let mut arcs = with_base.circle.arcs().to_vec();
            arcs.remove(j);
            labels.remove(j);
            let short = FreeTraceElement::new(CircleConfig::new(arcs)?, labels, x.clone())?;
            exact(full.cohen_h() == short.cohen_h() && full.equals(&short, 0.0))
        })();
        report.push("cohen_h_basepoint_relation", vec![n + 1], seed, trial, deleted, 0.0);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn zero_trials_are_rejected() {
        let cfg = SuiteConfig { seed: 1, trials: 0, tol: None };
        assert!(run_suite(Suite::Trace, &cfg).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn every_suite_passes() {
        let cfg = SuiteConfig { seed: 7, trials: 40, tol: None };
        let out = run_suite(Suite::All, &cfg).unwrap();
        for r in &out.reports {
            assert!(r.passed(), "{}: {:?}", r.instance, r.failures().next());
        }
        assert!(out.passed);
        let w3 = out.f_vectors.iter().find(|r| r.polytope == "W" && r.n == 3).unwrap();
        assert_eq!(w3.f_vector, vec![6, 6, 1]);
    }
}
