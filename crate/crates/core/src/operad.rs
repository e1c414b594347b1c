//! Operads, right modules, algebras and traces, together with an axiom
//! harness that checks any instance against the ∘ᵢ laws.
//!
//! Instances supply their own comparator through `distance`: combinatorial
//! instances return `0.0` or `f64::INFINITY`, geometric ones a residual that
//! the harness compares against a tolerance.
//!
//! The laws checked, for `x ∈ P(k)`, `y ∈ P(l)`, `z ∈ P(m)`:
//!
//! * `(x ∘ᵢ y) ∘ⱼ z = (x ∘ⱼ z) ∘_{i+m-1} y` for `j < i`,
//! * `(x ∘ᵢ y) ∘ⱼ z = x ∘ᵢ (y ∘_{j-i+1} z)` for `i ≤ j < i+l`,
//! * `(x ∘ᵢ y) ∘ⱼ z = (x ∘_{j-l+1} z) ∘ᵢ y` for `j ≥ i+l`,
//! * `e ∘₁ x = x` and `x ∘ᵢ e = x`,
//! * `(σ·x) ∘_{σ(i)} (τ·y) = (σ ∘ᵢ τ)·(x ∘ᵢ y)` for symmetric instances.
//!
//! For a right module the same laws hold with `x` taken from the module and
//! `y`, `z` from the operad (the left unit law has no module analogue).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::permutation::Permutation;

/// A graded family `{P(n)}` with compositions `P(k) × P(l) → P(k+l-1)`.
pub trait Operad {
    type Elem: Clone + fmt::Debug;

    fn name(&self) -> String;
    fn arity(&self, x: &Self::Elem) -> usize;
    fn compose(&self, x: &Self::Elem, y: &Self::Elem, i: usize) -> Result<Self::Elem>;
    fn unit(&self) -> Self::Elem;
    /// `0.0` means equal; arity mismatches must report `f64::INFINITY`.
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;
    /// The Σₙ-action, or `None` for a non-symmetric operad.
    fn permute(&self, _sigma: &Permutation, _x: &Self::Elem) -> Option<Result<Self::Elem>> {
        None
    }
}

/// A right module `M` over an operad: `M(k) × P(l) → M(k+l-1)`.
pub trait RightModule {
    type Base: Operad;
    type Elem: Clone + fmt::Debug;

    fn name(&self) -> String;
    fn base(&self) -> &Self::Base;
    fn arity(&self, m: &Self::Elem) -> usize;
    fn compose(&self, m: &Self::Elem, p: &<Self::Base as Operad>::Elem, i: usize) -> Result<Self::Elem>;
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;
    fn permute(&self, _sigma: &Permutation, _m: &Self::Elem) -> Option<Result<Self::Elem>> {
        None
    }
}

/// An `M`-trace `V` over a `P`-algebra `U`: maps `Aₙ : P(n) → Hom(Uⁿ, U)` and
/// `Tₙ : M(n) → Hom(Uⁿ, V)` with
/// `T_{k+l-1}(m ∘ᵢ p) = T_k(m) ∘ᵢ A_l(p)`.
pub trait Trace {
    type Module: RightModule;
    type Input: Clone + fmt::Debug;
    type Output: fmt::Debug;

    fn name(&self) -> String;
    fn module(&self) -> &Self::Module;
    /// The algebra structure `A_l(p)(u₁,…,u_l)`.
    fn act(
        &self,
        p: &<<Self::Module as RightModule>::Base as Operad>::Elem,
        inputs: &[Self::Input],
    ) -> Result<Self::Input>;
    /// The trace map `T_k(m)(u₁,…,u_k)`.
    fn trace(&self, m: &<Self::Module as RightModule>::Elem, inputs: &[Self::Input]) -> Result<Self::Output>;
    /// Distance between two target values; `eval_points` is the number of
    /// uniform sample points the comparator may use.
    fn output_distance(&self, a: &Self::Output, b: &Self::Output, eval_points: usize) -> f64;
}

/// One checked axiom instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomRecord {
    pub axiom: String,
    pub arities: Vec<usize>,
    pub seed: u64,
    pub trial: u64,
    /// Serialized as `null` when infinite (a composition error or a mismatch).
    pub residual: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// The outcome of running the harness on one instance.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AxiomReport {
    pub instance: String,
    pub records: Vec<AxiomRecord>,
}

/// Per-axiom aggregate of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomSummary {
    pub axiom: String,
    pub checked: usize,
    pub failures: usize,
    pub max_residual: f64,
}

impl AxiomReport {
    pub fn new(instance: impl Into<String>) -> Self {
        Self { instance: instance.into(), records: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.records.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> Vec<AxiomSummary> {
        let mut by_axiom: BTreeMap<&str, AxiomSummary> = BTreeMap::new();
        for r in &self.records {
            let s = by_axiom.entry(&r.axiom).or_insert_with(|| AxiomSummary {
                axiom: r.axiom.clone(),
                checked: 0,
                failures: 0,
                max_residual: 0.0,
            });
            s.checked += 1;
            s.failures += usize::from(!r.pass);
            s.max_residual = s.max_residual.max(r.residual);
        }
        by_axiom.into_values().collect()
    }

    /// Records a check computed outside the harness.
    pub fn push(&mut self, axiom: &str, arities: Vec<usize>, seed: u64, trial: u64, outcome: Result<f64>, tol: f64) {
        let (residual, detail) = match outcome {
            Ok(r) if r.is_nan() => (f64::INFINITY, Some("NaN residual".to_string())),
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        self.records.push(AxiomRecord {
            axiom: axiom.to_string(),
            arities,
            seed,
            trial,
            residual,
            pass: residual <= tol,
            detail,
        });
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.records.extend(other.records);
    }
}

/// Settings for a seeded random run of the harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomCheck {
    pub seed: u64,
    pub trials: u64,
    pub min_arity: usize,
    pub max_arity: usize,
    pub tol: f64,
}

impl RandomCheck {
    pub fn new(seed: u64, trials: u64, tol: f64) -> Self {
        Self { seed, trials, min_arity: 0, max_arity: 3, tol }
    }

    pub fn arities(mut self, min: usize, max: usize) -> Self {
        self.min_arity = min;
        self.max_arity = max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Harness("trials must be at least 1".into()));
        }
        if self.min_arity > self.max_arity {
            return Err(Error::Harness("min_arity exceeds max_arity".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::Harness("tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// The generator for trial `trial` of a run seeded with `seed`. Each trial
/// reads its own ChaCha stream, so trials are independent and reproducible.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Collects records for one trial, keeping the worst residual per axiom.
struct TrialLog<'a> {
    report: &'a mut AxiomReport,
    seed: u64,
    trial: u64,
    tol: f64,
    arities: Vec<usize>,
    worst: BTreeMap<&'static str, (f64, Option<String>)>,
}

impl<'a> TrialLog<'a> {
    fn new(report: &'a mut AxiomReport, seed: u64, trial: u64, tol: f64, arities: Vec<usize>) -> Self {
        Self { report, seed, trial, tol, arities, worst: BTreeMap::new() }
    }

    fn note(&mut self, axiom: &'static str, outcome: Result<f64>) {
        let (residual, detail) = match outcome {
            Ok(r) if r.is_nan() => (f64::INFINITY, Some("NaN residual".to_string())),
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        let slot = self.worst.entry(axiom).or_insert((0.0, None));
        if residual > slot.0 || (residual == slot.0 && detail.is_some() && slot.1.is_none()) {
            *slot = (residual, detail);
        }
    }

    fn finish(self) {
        for (axiom, (residual, detail)) in self.worst {
            self.report.records.push(AxiomRecord {
                axiom: axiom.to_string(),
                arities: self.arities.clone(),
                seed: self.seed,
                trial: self.trial,
                residual,
                pass: residual <= self.tol,
                detail,
            });
        }
    }
}

fn sample_checked<T, F>(
    sampler: &mut F,
    rng: &mut ChaCha8Rng,
    arity: usize,
    arity_of: impl Fn(&T) -> usize,
) -> Result<T>
where
    F: FnMut(&mut ChaCha8Rng, usize) -> T,
{
    let x = sampler(rng, arity);
    let got = arity_of(&x);
    if got != arity {
        return Err(Error::SamplerArity { requested: arity, got });
    }
    Ok(x)
}

/// The three ∘ᵢ∘ⱼ associativity laws for a left element `x` (operad or
/// module) of arity `k`, with `y`, `z` from the base operad.
fn associativity_cases<X, Y>(
    log: &mut TrialLog<'_>,
    k: usize,
    l: usize,
    m: usize,
    x: &X,
    y: &Y,
    z: &Y,
    left: &dyn Fn(&X, &Y, usize) -> Result<X>,
    inner: &dyn Fn(&Y, &Y, usize) -> Result<Y>,
    dist: &dyn Fn(&X, &X) -> f64,
) {
    for i in 1..=k {
        let xy = left(x, y, i);
        for j in 1..=(k + l - 1) {
            let (axiom, rhs): (&'static str, Result<X>) = if j < i {
                ("assoc_parallel_before", left(x, z, j).and_then(|xz| left(&xz, y, i + m - 1)))
            } else if j < i + l {
                ("assoc_nested", inner(y, z, j - i + 1).and_then(|yz| left(x, &yz, i)))
            } else {
                ("assoc_parallel_after", left(x, z, j - l + 1).and_then(|xz| left(&xz, y, i)))
            };
            let lhs = xy.as_ref().map_err(Clone::clone).and_then(|xy| left(xy, z, j));
            log.note(axiom, lhs.and_then(|a| rhs.map(|b| dist(&a, &b))));
        }
    }
}

fn arity_triple<R: Rng>(rng: &mut R, cfg: &RandomCheck) -> (usize, usize, usize) {
    let mut draw = || rng.gen_range(cfg.min_arity..=cfg.max_arity);
    // The left element must have arity ≥ 1 for any ∘ᵢ to exist.
    let k = draw().max(1);
    (k, draw(), draw())
}

/// Seeded random check of the operad axioms.
pub fn check_operad_axioms<O, F>(op: &O, mut sampler: F, cfg: &RandomCheck) -> Result<AxiomReport>
where
    O: Operad,
    F: FnMut(&mut ChaCha8Rng, usize) -> O::Elem,
{
    cfg.validate()?;
    let mut report = AxiomReport::new(op.name());
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let (k, l, m) = arity_triple(&mut rng, cfg);
        let arity = |x: &O::Elem| op.arity(x);
        let x = sample_checked(&mut sampler, &mut rng, k, arity)?;
        let y = sample_checked(&mut sampler, &mut rng, l, arity)?;
        let z = sample_checked(&mut sampler, &mut rng, m, arity)?;
        let sigma = Permutation::random(k, &mut rng);
        let tau = Permutation::random(l, &mut rng);
        let mut log = TrialLog::new(&mut report, cfg.seed, trial, cfg.tol, vec![k, l, m]);
        operad_laws(op, &mut log, &x, &y, &z, Some((&sigma, &tau)));
        log.finish();
    }
    Ok(report)
}

fn operad_laws<O: Operad>(
    op: &O,
    log: &mut TrialLog<'_>,
    x: &O::Elem,
    y: &O::Elem,
    z: &O::Elem,
    perms: Option<(&Permutation, &Permutation)>,
) {
    let (k, l, m) = (op.arity(x), op.arity(y), op.arity(z));
    let compose = |a: &O::Elem, b: &O::Elem, i: usize| op.compose(a, b, i);
    let dist = |a: &O::Elem, b: &O::Elem| op.distance(a, b);
    associativity_cases(log, k, l, m, x, y, z, &compose, &compose, &dist);

    let e = op.unit();
    log.note("unit_left", op.compose(&e, x, 1).map(|ex| op.distance(&ex, x)));
    for i in 1..=k {
        log.note("unit_right", op.compose(x, &e, i).map(|xe| op.distance(&xe, x)));
    }

    if let Some((sigma, tau)) = perms {
        for i in 1..=k {
            let Some(sx) = op.permute(sigma, x) else { return };
            let outcome = (|| {
                let sx = sx?;
                let ty = op.permute(tau, y).expect("symmetric instance")?;
                let lhs = op.compose(&sx, &ty, sigma.apply(i))?;
                let block = sigma.block_compose(tau, i)?;
                let rhs = op.permute(&block, &op.compose(x, y, i)?).expect("symmetric instance")?;
                Ok(op.distance(&lhs, &rhs))
            })();
            log.note("equivariance", outcome);
        }
    }
}

/// Exhaustive check of the operad axioms over every triple of elements
/// with arities in `min_arity..` and `k + l + m ≤ max_total`.
pub fn check_operad_axioms_exhaustive<O, F>(
    op: &O,
    elements: F,
    min_arity: usize,
    max_total: usize,
    tol: f64,
) -> Result<AxiomReport>
where
    O: Operad,
    F: Fn(usize) -> Result<Vec<O::Elem>>,
{
    let mut report = AxiomReport::new(op.name());
    let mut cache: BTreeMap<usize, Vec<O::Elem>> = BTreeMap::new();
    let largest = max_total.saturating_sub(2 * min_arity);
    for a in min_arity..=largest {
        cache.insert(a, elements(a)?);
    }
    let mut instance = 0u64;
    for k in min_arity.max(1)..=largest {
        for l in min_arity..=max_total.saturating_sub(k) {
            for m in min_arity..=max_total.saturating_sub(k + l) {
                let mut log = TrialLog::new(&mut report, 0, instance, tol, vec![k, l, m]);
                for x in &cache[&k] {
                    for y in &cache[&l] {
                        for z in &cache[&m] {
                            operad_laws(op, &mut log, x, y, z, None);
                        }
                    }
                }
                log.finish();
                instance += 1;
            }
        }
    }
    Ok(report)
}

fn module_laws<M: RightModule>(
    module: &M,
    log: &mut TrialLog<'_>,
    x: &M::Elem,
    y: &<M::Base as Operad>::Elem,
    z: &<M::Base as Operad>::Elem,
    perms: Option<(&Permutation, &Permutation)>,
) {
    let base = module.base();
    let (k, l, m) = (module.arity(x), base.arity(y), base.arity(z));
    let left = |a: &M::Elem, b: &<M::Base as Operad>::Elem, i: usize| module.compose(a, b, i);
    let inner = |a: &<M::Base as Operad>::Elem, b: &<M::Base as Operad>::Elem, i: usize| base.compose(a, b, i);
    let dist = |a: &M::Elem, b: &M::Elem| module.distance(a, b);
    associativity_cases(log, k, l, m, x, y, z, &left, &inner, &dist);

    let e = base.unit();
    for i in 1..=k {
        log.note("unit_right", module.compose(x, &e, i).map(|xe| module.distance(&xe, x)));
    }

    if let Some((sigma, tau)) = perms {
        for i in 1..=k {
            let Some(sx) = module.permute(sigma, x) else { return };
            let outcome = (|| {
                let sx = sx?;
                let ty =
                    base.permute(tau, y).ok_or_else(|| Error::Unsupported("base operad is not symmetric".into()))??;
                let lhs = module.compose(&sx, &ty, sigma.apply(i))?;
                let block = sigma.block_compose(tau, i)?;
                let rhs = module.permute(&block, &module.compose(x, y, i)?).expect("symmetric instance")?;
                Ok(module.distance(&lhs, &rhs))
            })();
            log.note("equivariance", outcome);
        }
    }
}

/// Seeded random check of the right-module axioms. `module_sampler` draws
/// module elements, `operad_sampler` elements of the base operad.
pub fn check_module_axioms<M, F, G>(
    module: &M,
    mut module_sampler: F,
    mut operad_sampler: G,
    cfg: &RandomCheck,
) -> Result<AxiomReport>
where
    M: RightModule,
    F: FnMut(&mut ChaCha8Rng, usize) -> M::Elem,
    G: FnMut(&mut ChaCha8Rng, usize) -> <M::Base as Operad>::Elem,
{
    cfg.validate()?;
    let mut report = AxiomReport::new(module.name());
    let base = module.base();
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let (k, l, m) = arity_triple(&mut rng, cfg);
        let x = sample_checked(&mut module_sampler, &mut rng, k, |x| module.arity(x))?;
        let y = sample_checked(&mut operad_sampler, &mut rng, l, |y| base.arity(y))?;
        let z = sample_checked(&mut operad_sampler, &mut rng, m, |z| base.arity(z))?;
        let sigma = Permutation::random(k, &mut rng);
        let tau = Permutation::random(l, &mut rng);
        let mut log = TrialLog::new(&mut report, cfg.seed, trial, cfg.tol, vec![k, l, m]);
        module_laws(module, &mut log, &x, &y, &z, Some((&sigma, &tau)));
        log.finish();
    }
    Ok(report)
}

/// Exhaustive check of the module axioms; `module_elements(k)` and
/// `operad_elements(l)` list every element of the given arity.
pub fn check_module_axioms_exhaustive<M, F, G>(
    module: &M,
    module_elements: F,
    operad_elements: G,
    min_arity: usize,
    max_total: usize,
    tol: f64,
) -> Result<AxiomReport>
where
    M: RightModule,
    F: Fn(usize) -> Result<Vec<M::Elem>>,
    G: Fn(usize) -> Result<Vec<<M::Base as Operad>::Elem>>,
{
    let mut report = AxiomReport::new(module.name());
    let mut ops = BTreeMap::new();
    let largest = max_total.saturating_sub(2 * min_arity);
    for a in min_arity..=largest {
        ops.insert(a, operad_elements(a)?);
    }
    let mut instance = 0u64;
    for k in min_arity.max(1)..=largest {
        let xs = module_elements(k)?;
        for l in min_arity..=max_total.saturating_sub(k) {
            for m in min_arity..=max_total.saturating_sub(k + l) {
                let mut log = TrialLog::new(&mut report, 0, instance, tol, vec![k, l, m]);
                for x in &xs {
                    for y in &ops[&l] {
                        for z in &ops[&m] {
                            module_laws(module, &mut log, x, y, z, None);
                        }
                    }
                }
                log.finish();
                instance += 1;
            }
        }
    }
    Ok(report)
}

/// Seeded random check of trace compatibility and Σₙ-equivariance of `Tₙ`.
///
/// `input_sampler(rng, n)` draws `n` algebra elements sharing whatever
/// structure the algebra requires (e.g. a common basepoint).
pub fn check_trace_compatibility<T, F, G, H>(
    tr: &T,
    mut module_sampler: F,
    mut operad_sampler: G,
    mut input_sampler: H,
    cfg: &RandomCheck,
    eval_points: usize,
) -> Result<AxiomReport>
where
    T: Trace,
    F: FnMut(&mut ChaCha8Rng, usize) -> <T::Module as RightModule>::Elem,
    G: FnMut(&mut ChaCha8Rng, usize) -> <<T::Module as RightModule>::Base as Operad>::Elem,
    H: FnMut(&mut ChaCha8Rng, usize) -> Vec<T::Input>,
{
    cfg.validate()?;
    if eval_points == 0 {
        return Err(Error::Harness("eval_points must be at least 1".into()));
    }
    let module = tr.module();
    let base = module.base();
    let mut report = AxiomReport::new(tr.name());
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, trial);
        let mut draw = || rng.gen_range(cfg.min_arity..=cfg.max_arity);
        let (k, l) = (draw().max(1), draw());
        let m = sample_checked(&mut module_sampler, &mut rng, k, |x| module.arity(x))?;
        let p = sample_checked(&mut operad_sampler, &mut rng, l, |y| base.arity(y))?;
        let inputs = input_sampler(&mut rng, k + l - 1);
        if inputs.len() != k + l - 1 {
            return Err(Error::SamplerArity { requested: k + l - 1, got: inputs.len() });
        }
        let own = input_sampler(&mut rng, k);
        if own.len() != k {
            return Err(Error::SamplerArity { requested: k, got: own.len() });
        }
        let sigma = Permutation::random(k, &mut rng);
        let mut log = TrialLog::new(&mut report, cfg.seed, trial, cfg.tol, vec![k, l]);
        for i in 1..=k {
            let outcome = (|| {
                let lhs = tr.trace(&module.compose(&m, &p, i)?, &inputs)?;
                let inner = tr.act(&p, &inputs[i - 1..i - 1 + l])?;
                let mut outer: Vec<T::Input> = inputs[..i - 1].to_vec();
                outer.push(inner);
                outer.extend_from_slice(&inputs[i - 1 + l..]);
                let rhs = tr.trace(&m, &outer)?;
                Ok(tr.output_distance(&lhs, &rhs, eval_points))
            })();
            log.note("trace_compatibility", outcome);
        }
        if let Some(sm) = module.permute(&sigma, &m) {
            let outcome = (|| {
                let lhs = tr.trace(&sm?, &sigma.act(&own)?)?;
                let rhs = tr.trace(&m, &own)?;
                Ok(tr.output_distance(&lhs, &rhs, eval_points))
            })();
            log.note("trace_equivariance", outcome);
        }
        log.finish();
    }
    Ok(report)
}

/// An element of `Hom(Uᵏ, V)`.
pub struct Operation<U, V> {
    arity: usize,
    f: Arc<dyn Fn(&[U]) -> V + Send + Sync>,
}

impl<U, V> Clone for Operation<U, V> {
    fn clone(&self) -> Self {
        Self { arity: self.arity, f: Arc::clone(&self.f) }
    }
}

impl<U, V> fmt::Debug for Operation<U, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operation").field("arity", &self.arity).finish_non_exhaustive()
    }
}

impl<U, V> Operation<U, V> {
    pub fn new(arity: usize, f: impl Fn(&[U]) -> V + Send + Sync + 'static) -> Self {
        Self { arity, f: Arc::new(f) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn call(&self, args: &[U]) -> Result<V> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        Ok((self.f)(args))
    }
}

/// `(f ∘ᵢ g)(u₁,…,u_{k+l-1}) = f(u₁,…,u_{i-1}, g(uᵢ,…,u_{i+l-1}), u_{i+l},…)`,
/// the right `End_U`-module structure on `End_{U,V}`.
pub fn end_compose<U, V>(f: &Operation<U, V>, g: &Operation<U, U>, i: usize) -> Result<Operation<U, V>>
where
    U: Clone + 'static,
    V: 'static,
{
    check_index(i, f.arity)?;
    let (k, l) = (f.arity, g.arity);
    let (f, g) = (f.clone(), g.clone());
    Ok(Operation::new(k + l - 1, move |args: &[U]| {
        let mut outer = Vec::with_capacity(k);
        outer.extend_from_slice(&args[..i - 1]);
        outer.push((g.f)(&args[i - 1..i - 1 + l]));
        outer.extend_from_slice(&args[i - 1 + l..]);
        (f.f)(&outer)
    }))
}

/// All tuples of length `n` over `domain`, in lexicographic order.
pub fn tuples<U: Clone>(domain: &[U], n: usize) -> Vec<Vec<U>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                domain.iter().map(move |u| {
                    let mut t = t.clone();
                    t.push(u.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// The endomorphism operad `End_U`, compared pointwise on a finite domain.
#[derive(Debug, Clone)]
pub struct FiniteEnd<U> {
    pub domain: Vec<U>,
}

impl<U: Clone + PartialEq + fmt::Debug + Send + Sync + 'static> Operad for FiniteEnd<U> {
    type Elem = Operation<U, U>;

    fn name(&self) -> String {
        "End_U".into()
    }

    fn arity(&self, x: &Self::Elem) -> usize {
        x.arity
    }

    fn compose(&self, x: &Self::Elem, y: &Self::Elem, i: usize) -> Result<Self::Elem> {
        end_compose(x, y, i)
    }

    fn unit(&self) -> Self::Elem {
        Operation::new(1, |a: &[U]| a[0].clone())
    }

    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        pointwise_distance(&self.domain, a, b)
    }

    fn permute(&self, sigma: &Permutation, x: &Self::Elem) -> Option<Result<Self::Elem>> {
        Some(permute_operation(sigma, x))
    }
}

/// `End_{U,V}` as a right module over [`FiniteEnd`].
#[derive(Debug, Clone)]
pub struct FiniteEndModule<U, V> {
    pub base: FiniteEnd<U>,
    _target: std::marker::PhantomData<V>,
}

impl<U, V> FiniteEndModule<U, V> {
    pub fn new(domain: Vec<U>) -> Self {
        Self { base: FiniteEnd { domain }, _target: std::marker::PhantomData }
    }
}

impl<U, V> RightModule for FiniteEndModule<U, V>
where
    U: Clone + PartialEq + fmt::Debug + Send + Sync + 'static,
    V: PartialEq + fmt::Debug + 'static,
{
    type Base = FiniteEnd<U>;
    type Elem = Operation<U, V>;

    fn name(&self) -> String {
        "End_{U,V}".into()
    }

    fn base(&self) -> &FiniteEnd<U> {
        &self.base
    }

    fn arity(&self, m: &Self::Elem) -> usize {
        m.arity
    }

    fn compose(&self, m: &Self::Elem, p: &Operation<U, U>, i: usize) -> Result<Self::Elem> {
        end_compose(m, p, i)
    }

    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        pointwise_distance(&self.base.domain, a, b)
    }

    fn permute(&self, sigma: &Permutation, m: &Self::Elem) -> Option<Result<Self::Elem>> {
        Some(permute_operation(sigma, m))
    }
}

fn pointwise_distance<U: Clone, V: PartialEq>(domain: &[U], a: &Operation<U, V>, b: &Operation<U, V>) -> f64 {
    if a.arity != b.arity {
        return f64::INFINITY;
    }
    let differ = tuples(domain, a.arity).iter().any(|t| (a.f)(t) != (b.f)(t));
    if differ {
        f64::INFINITY
    } else {
        0.0
    }
}

/// `(σ·f)(u₁,…,uₙ) = f(u_{σ(1)},…,u_{σ(n)})`, the action for which
/// `Tₙ(σ·m)(σ·u) = Tₙ(m)(u)`.
fn permute_operation<U: Clone + 'static, V: 'static>(
    sigma: &Permutation,
    f: &Operation<U, V>,
) -> Result<Operation<U, V>> {
    if sigma.size() != f.arity {
        return Err(Error::ArityMismatch { expected: f.arity, got: sigma.size() });
    }
    let sigma = sigma.clone();
    let f = f.clone();
    Ok(Operation::new(f.arity, move |args: &[U]| {
        let pulled: Vec<U> = (1..=sigma.size()).map(|j| args[sigma.apply(j) - 1].clone()).collect();
        (f.f)(&pulled)
    }))
}
