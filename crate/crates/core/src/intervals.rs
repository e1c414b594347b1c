//! The little intervals operad 𝒞₁ and its right module 𝒥₁ of little arcs
//! in the circle.
//!
//! Both are stored as lists of `(start, len)` pieces. Circle angles are in
//! revolutions, so the circle is `ℝ/ℤ` and the basepoint `*` is angle `0`.

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::operad::{Operad, RightModule};
use crate::permutation::Permutation;

/// Slack allowed when checking that closed pieces only touch at endpoints.
pub const TOUCH_SLACK: f64 = 1e-12;

/// Minimal arc length, and `1 - MIN_ARC` is the maximal one.
pub const MIN_ARC: f64 = 1e-9;

/// Default absolute tolerance for comparing configurations.
pub const CONFIG_TOL: f64 = 1e-12;

/// A linear piece `[start, start + len]`, serialized as `[start, len]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Piece {
    pub start: f64,
    pub len: f64,
}

impl Piece {
    pub const fn new(start: f64, len: f64) -> Self {
        Self { start, len }
    }

    pub fn end(&self) -> f64 {
        self.start + self.len
    }
}

impl From<[f64; 2]> for Piece {
    fn from([start, len]: [f64; 2]) -> Self {
        Self { start, len }
    }
}

impl From<Piece> for [f64; 2] {
    fn from(p: Piece) -> Self {
        [p.start, p.len]
    }
}

fn by_start(a: &Piece, b: &Piece) -> Ordering {
    a.start.total_cmp(&b.start)
}

/// An element of 𝒞₁(n): `n` little intervals in `[0,1]` with disjoint interiors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Piece>", into = "Vec<Piece>")]
pub struct UnitIntervalConfig {
    pieces: Vec<Piece>,
}

impl UnitIntervalConfig {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        for (j, p) in pieces.iter().enumerate() {
            if !(p.start.is_finite() && p.len.is_finite()) {
                return Err(Error::InvalidConfig(format!("interval {} is not finite", j + 1)));
            }
            if p.len <= 0.0 {
                return Err(Error::InvalidConfig(format!("interval {} has non-positive length", j + 1)));
            }
            if p.start < -TOUCH_SLACK || p.end() > 1.0 + TOUCH_SLACK {
                return Err(Error::InvalidConfig(format!("interval {} leaves [0,1]", j + 1)));
            }
        }
        let mut sorted = pieces.clone();
        sorted.sort_by(by_start);
        for w in sorted.windows(2) {
            if w[0].end() > w[1].start + TOUCH_SLACK {
                return Err(Error::InvalidConfig("intervals overlap".into()));
            }
        }
        Ok(Self { pieces })
    }

    /// Convenience constructor from `(a, b)` endpoint pairs.
    pub fn from_endpoints(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| Piece::new(a, b - a)).collect())
    }

    /// The operad unit `[(0, 1)]`.
    pub fn unit() -> Self {
        Self { pieces: vec![Piece::new(0.0, 1.0)] }
    }

    /// The distinguished element `* ∈ 𝒞₁(0)`.
    pub fn point() -> Self {
        Self { pieces: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.pieces.len()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(|p| p.len).sum()
    }

    /// Stick-breaking sampler: `2n + 1` random weights become the gaps and
    /// lengths of a valid configuration, listed in a random order. Gaps are
    /// sometimes zero so touching intervals are exercised.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let weights: Vec<f64> = (0..2 * n + 1)
            .map(|j| if j % 2 == 0 && rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.05..1.0) })
            .collect();
        let pieces = stick_break(&weights, 0.0);
        let sigma = Permutation::random(n, rng);
        Self { pieces: sigma.act(&pieces).expect("sizes agree") }
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        Ok(Self { pieces: sigma.act(&self.pieces)? })
    }

    /// Sup-norm distance between endpoint lists; infinite across arities.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.arity() != other.arity() {
            return f64::INFINITY;
        }
        self.pieces
            .iter()
            .zip(&other.pieces)
            .map(|(a, b)| (a.start - b.start).abs().max((a.len - b.len).abs()))
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<Piece>> for UnitIntervalConfig {
    type Error = Error;
    fn try_from(p: Vec<Piece>) -> Result<Self> {
        Self::new(p)
    }
}

impl From<UnitIntervalConfig> for Vec<Piece> {
    fn from(c: UnitIntervalConfig) -> Self {
        c.pieces
    }
}

/// Cumulative positions of `weights` normalized to total `1`, read as
/// alternating gap/piece/gap/… and shifted by `offset`.
fn stick_break(weights: &[f64], offset: f64) -> Vec<Piece> {
    let total: f64 = weights.iter().sum();
    let mut cum = 0.0;
    let mut marks = Vec::with_capacity(weights.len());
    for w in weights {
        cum += w;
        marks.push(cum / total);
    }
    (0..weights.len() / 2)
        .map(|k| {
            let a = marks[2 * k];
            let b = marks[2 * k + 1];
            Piece::new(offset + a, b - a)
        })
        .collect()
}

/// `f ∘ᵢ g`: interval `i` of `f` is replaced by the affine image of `g`.
pub fn compose_intervals(f: &UnitIntervalConfig, g: &UnitIntervalConfig, i: usize) -> Result<UnitIntervalConfig> {
    check_index(i, f.arity())?;
    let host = f.pieces[i - 1];
    let mut pieces = Vec::with_capacity(f.arity() + g.arity() - 1);
    pieces.extend_from_slice(&f.pieces[..i - 1]);
    pieces.extend(g.pieces.iter().map(|p| Piece::new(host.start + host.len * p.start, host.len * p.len)));
    pieces.extend_from_slice(&f.pieces[i..]);
    UnitIntervalConfig::new(pieces)
}

/// An element of 𝒥₁(n): `n` arcs of the circle with disjoint interiors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Piece>", into = "Vec<Piece>")]
pub struct CircleConfig {
    arcs: Vec<Piece>,
}

impl CircleConfig {
    pub fn new(arcs: Vec<Piece>) -> Result<Self> {
        for (j, a) in arcs.iter().enumerate() {
            if !(a.start.is_finite() && a.len.is_finite()) {
                return Err(Error::InvalidConfig(format!("arc {} is not finite", j + 1)));
            }
            if !(0.0..1.0).contains(&a.start) {
                return Err(Error::InvalidConfig(format!("arc {} starts outside [0,1)", j + 1)));
            }
            if a.len < MIN_ARC || a.len > 1.0 - MIN_ARC {
                return Err(Error::InvalidConfig(format!(
                    "arc {} has length {} outside [{MIN_ARC}, 1 - {MIN_ARC}]",
                    j + 1,
                    a.len
                )));
            }
        }
        let mut sorted = arcs.clone();
        sorted.sort_by(by_start);
        for w in sorted.windows(2) {
            if w[0].end() > w[1].start + TOUCH_SLACK {
                return Err(Error::InvalidConfig("arcs overlap".into()));
            }
        }
        if let (Some(first), Some(last)) = (sorted.first(), sorted.last()) {
            if sorted.len() > 1 && last.end() > 1.0 + first.start + TOUCH_SLACK {
                return Err(Error::InvalidConfig("arcs overlap across the basepoint".into()));
            }
        }
        Ok(Self { arcs })
    }

    pub fn empty() -> Self {
        Self { arcs: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Piece] {
        &self.arcs
    }

    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.len).sum()
    }

    /// Random rotation of a stick-broken configuration, arcs in random order.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        let mut weights: Vec<f64> = (0..2 * n + 1)
            .map(|j| if j % 2 == 0 && rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.05..1.0) })
            .collect();
        // Keep some gap so a single arc stays shorter than the circle.
        weights[2 * n] += 0.05;
        let offset = rng.gen_range(0.0..1.0);
        let arcs: Vec<Piece> =
            stick_break(&weights, 0.0).into_iter().map(|p| Piece::new(wrap(p.start + offset), p.len)).collect();
        let sigma = Permutation::random(n, rng);
        Self { arcs: sigma.act(&arcs).expect("sizes agree") }
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        Ok(Self { arcs: sigma.act(&self.arcs)? })
    }

    /// Sup-norm distance; start angles are compared on the circle.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.arity() != other.arity() {
            return f64::INFINITY;
        }
        self.arcs
            .iter()
            .zip(&other.arcs)
            .map(|(a, b)| {
                let d = (a.start - b.start).abs();
                d.min(1.0 - d).max((a.len - b.len).abs())
            })
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<Piece>> for CircleConfig {
    type Error = Error;
    fn try_from(p: Vec<Piece>) -> Result<Self> {
        Self::new(p)
    }
}

impl From<CircleConfig> for Vec<Piece> {
    fn from(c: CircleConfig) -> Self {
        c.arcs
    }
}

/// Reduce an angle into `[0, 1)`.
pub fn wrap(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// `d ∘ᵢ g`: arc `i` of `d`, parametrized linearly by `[0,1]`, is replaced
/// by the images of the intervals of `g`. Composing with `*` deletes the arc.
pub fn module_compose(d: &CircleConfig, g: &UnitIntervalConfig, i: usize) -> Result<CircleConfig> {
    check_index(i, d.arity())?;
    let host = d.arcs[i - 1];
    let mut arcs = Vec::with_capacity(d.arity() + g.arity() - 1);
    arcs.extend_from_slice(&d.arcs[..i - 1]);
    arcs.extend(g.pieces().iter().map(|p| Piece::new(wrap(host.start + host.len * p.start), host.len * p.len)));
    arcs.extend_from_slice(&d.arcs[i..]);
    CircleConfig::new(arcs)
}

/// Membership in F₀(S¹, n): the arcs occur in the cyclic order of their
/// indices. Vacuously true for `n ≤ 2`.
pub fn is_cyclically_ordered(d: &CircleConfig) -> bool {
    let n = d.arity();
    if n <= 2 {
        return true;
    }
    let order = start_order(d);
    let r = order[0];
    order.iter().enumerate().all(|(pos, &idx)| idx == (r + pos) % n)
}

/// Zero-based indices of the arcs sorted by start angle.
fn start_order(d: &CircleConfig) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.arity()).collect();
    order.sort_by(|&a, &b| by_start(&d.arcs[a], &d.arcs[b]));
    order
}

/// A point of `Σₙ ×_{ℤₙ} F₀(S¹, n)` representing a configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicDecomposition {
    pub sigma: Permutation,
    pub ordered: CircleConfig,
}

/// Splits `d` as `σ·ordered` with `ordered` cyclically ordered. The ℤₙ
/// ambiguity is fixed by putting the arc with the smallest start angle first.
pub fn canonical_decomposition(d: &CircleConfig) -> CyclicDecomposition {
    let order = start_order(d);
    let sigma = Permutation::new(order.iter().map(|&j| j + 1).collect()).expect("sorting is a bijection");
    let ordered = CircleConfig { arcs: order.iter().map(|&j| d.arcs[j]).collect() };
    CyclicDecomposition { sigma, ordered }
}

impl CyclicDecomposition {
    /// Reassembles `σ·ordered`.
    pub fn recompose(&self) -> Result<CircleConfig> {
        self.ordered.permute(&self.sigma)
    }
}

/// 𝒞₁ as an [`Operad`], compared within [`CONFIG_TOL`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LittleIntervals;

impl Operad for LittleIntervals {
    type Elem = UnitIntervalConfig;

    fn name(&self) -> String {
        "little-intervals".into()
    }

    fn arity(&self, x: &UnitIntervalConfig) -> usize {
        x.arity()
    }

    fn compose(&self, x: &UnitIntervalConfig, y: &UnitIntervalConfig, i: usize) -> Result<UnitIntervalConfig> {
        compose_intervals(x, y, i)
    }

    fn unit(&self) -> UnitIntervalConfig {
        UnitIntervalConfig::unit()
    }

    fn distance(&self, a: &UnitIntervalConfig, b: &UnitIntervalConfig) -> f64 {
        a.distance(b)
    }

    fn permute(&self, sigma: &Permutation, x: &UnitIntervalConfig) -> Option<Result<UnitIntervalConfig>> {
        Some(x.permute(sigma))
    }
}

/// 𝒥₁ as a right module over [`LittleIntervals`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CircleModule {
    base: LittleIntervals,
}

impl RightModule for CircleModule {
    type Base = LittleIntervals;
    type Elem = CircleConfig;

    fn name(&self) -> String {
        "circle-arcs over little-intervals".into()
    }

    fn base(&self) -> &LittleIntervals {
        &self.base
    }

    fn arity(&self, m: &CircleConfig) -> usize {
        m.arity()
    }

    fn compose(&self, m: &CircleConfig, p: &UnitIntervalConfig, i: usize) -> Result<CircleConfig> {
        module_compose(m, p, i)
    }

    fn distance(&self, a: &CircleConfig, b: &CircleConfig) -> f64 {
        a.distance(b)
    }

    fn permute(&self, sigma: &Permutation, m: &CircleConfig) -> Option<Result<CircleConfig>> {
        Some(m.permute(sigma))
    }
}

/// JSON envelope `{"type": "circle" | "unit", "items": [[start, len], …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "items", rename_all = "lowercase")]
pub enum ConfigFile {
    Circle(CircleConfig),
    Unit(UnitIntervalConfig),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{check_module_axioms, check_operad_axioms, RandomCheck};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(pairs: &[(f64, f64)]) -> UnitIntervalConfig {
        UnitIntervalConfig::from_endpoints(pairs).unwrap()
    }

    fn circle(items: &[(f64, f64)]) -> CircleConfig {
        CircleConfig::new(items.iter().map(|&(s, l)| Piece::new(s, l)).collect()).unwrap()
    }

    #[test]
    fn compose_intervals_affine_substitution() {
        let f = unit(&[(0.0, 0.4), (0.5, 1.0)]);
        let g = unit(&[(0.0, 0.5), (0.5, 1.0)]);
        let fg = compose_intervals(&f, &g, 2).unwrap();
        assert_eq!(fg, unit(&[(0.0, 0.4), (0.5, 0.75), (0.75, 1.0)]));
        assert_eq!(compose_intervals(&f, &UnitIntervalConfig::unit(), 1).unwrap(), f);
        assert_eq!(compose_intervals(&f, &g, 3).unwrap_err(), Error::IndexOutOfRange { index: 3, arity: 2 });
    }

    #[test]
    fn unit_config_invariants() {
        assert!(UnitIntervalConfig::from_endpoints(&[(0.0, 0.5), (0.4, 1.0)]).is_err());
        assert!(UnitIntervalConfig::from_endpoints(&[(0.5, 0.5)]).is_err());
        assert!(UnitIntervalConfig::from_endpoints(&[(0.0, 1.5)]).is_err());
        // closed endpoints may touch
        assert!(UnitIntervalConfig::from_endpoints(&[(0.5, 1.0), (0.0, 0.5)]).is_ok());
        assert_eq!(UnitIntervalConfig::point().arity(), 0);
    }

    #[test]
    fn circle_config_invariants() {
        assert!(CircleConfig::new(vec![Piece::new(0.0, 1.0)]).is_err());
        assert!(CircleConfig::new(vec![Piece::new(0.0, 0.0)]).is_err());
        assert!(CircleConfig::new(vec![Piece::new(1.0, 0.5)]).is_err());
        assert!(CircleConfig::new(vec![Piece::new(0.8, 0.3), Piece::new(0.05, 0.2)]).is_err());
        assert!(CircleConfig::new(vec![Piece::new(0.8, 0.3), Piece::new(0.1, 0.2)]).is_ok());
    }

    #[test]
    fn module_compose_examples() {
        let d = circle(&[(0.0, 0.25), (0.5, 0.25)]);
        let g = unit(&[(0.0, 0.5)]);
        assert_eq!(module_compose(&d, &g, 1).unwrap(), circle(&[(0.0, 0.125), (0.5, 0.25)]));

        let d = circle(&[(0.0, 0.2), (0.3, 0.2), (0.6, 0.2)]);
        let deleted = module_compose(&d, &UnitIntervalConfig::point(), 2).unwrap();
        assert_eq!(deleted, circle(&[(0.0, 0.2), (0.6, 0.2)]));
    }

    #[test]
    fn module_compose_wraps_through_basepoint() {
        let d = circle(&[(0.75, 0.5)]);
        let g = unit(&[(0.0, 0.25), (0.5, 1.0)]);
        let c = module_compose(&d, &g, 1).unwrap();
        assert_eq!(c, circle(&[(0.75, 0.125), (0.0, 0.25)]));
    }

    #[test]
    fn little_intervals_axioms() {
        let cfg = RandomCheck::new(17, 500, CONFIG_TOL).arities(0, 4);
        let r = check_operad_axioms(&LittleIntervals, UnitIntervalConfig::random, &cfg).unwrap();
        assert!(r.passed(), "{:?}", r.failures().next());
        assert!(r.max_residual() < CONFIG_TOL);
    }

    #[test]
    fn circle_module_axioms() {
        let cfg = RandomCheck::new(23, 500, CONFIG_TOL).arities(0, 4);
        let r = check_module_axioms(&CircleModule::default(), CircleConfig::random, UnitIntervalConfig::random, &cfg)
            .unwrap();
        assert!(r.passed(), "{:?}", r.failures().next());
    }

    #[test]
    fn total_length_is_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let k = rng.gen_range(1..5);
            let d = CircleConfig::random(&mut rng, k);
            let l = rng.gen_range(0..4);
            let g = UnitIntervalConfig::random(&mut rng, l);
            let i = rng.gen_range(1..=k);
            let c = module_compose(&d, &g, i).unwrap();
            assert!(c.total_length() <= d.total_length() + 1e-15);
        }
        let d = circle(&[(0.1, 0.3), (0.5, 0.25)]);
        let full = unit(&[(0.0, 0.25), (0.25, 1.0)]);
        let c = module_compose(&d, &full, 1).unwrap();
        assert_eq!(c.total_length(), d.total_length());
    }

    /// Independent oracle: try several representatives inside each arc and
    /// every choice of lift to ℝ, looking for θ₁ < … < θₙ < θ₁ + 1.
    fn cyclic_order_oracle(d: &CircleConfig) -> bool {
        let n = d.arity();
        let reps: Vec<Vec<f64>> =
            d.arcs().iter().map(|a| [0.25, 0.5, 0.75].iter().map(|s| a.start + s * a.len).collect()).collect();
        for lifts in 0..(1u32 << n) {
            for choice in 0..3usize.pow(n as u32) {
                let theta: Vec<f64> = (0..n)
                    .map(|j| {
                        let c = (choice / 3usize.pow(j as u32)) % 3;
                        reps[j][c] + f64::from((lifts >> j) & 1)
                    })
                    .collect();
                let chain = theta.windows(2).all(|w| w[0] < w[1]);
                if chain && theta[n - 1] < theta[0] + 1.0 {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn cyclic_order_examples() {
        assert!(is_cyclically_ordered(&circle(&[(0.0, 0.1), (0.3, 0.1), (0.7, 0.1)])));
        assert!(is_cyclically_ordered(&circle(&[(0.7, 0.1), (0.0, 0.1), (0.3, 0.1)])));
        let bad = circle(&[(0.0, 0.1), (0.7, 0.1), (0.3, 0.1)]);
        assert!(!is_cyclically_ordered(&bad));
        assert!(!cyclic_order_oracle(&bad));
        assert!(is_cyclically_ordered(&CircleConfig::empty()));
    }

    #[test]
    fn cyclic_order_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let n = rng.gen_range(1..6);
            let d = CircleConfig::random(&mut rng, n);
            assert_eq!(is_cyclically_ordered(&d), cyclic_order_oracle(&d), "{d:?}");
        }
    }

    #[test]
    fn canonical_decomposition_examples() {
        let d = circle(&[(0.0, 0.1), (0.3, 0.1)]);
        let c = canonical_decomposition(&d);
        assert!(c.sigma.is_identity());
        assert_eq!(c.ordered, d);

        let d = circle(&[(0.7, 0.1), (0.0, 0.1)]);
        let c = canonical_decomposition(&d);
        assert_eq!(c.ordered, circle(&[(0.0, 0.1), (0.7, 0.1)]));
        assert_eq!(c.sigma, Permutation::transposition(2, 1, 2).unwrap());
        assert_eq!(c.recompose().unwrap(), d);
    }

    #[test]
    fn canonical_decomposition_round_trip_and_orbit_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let n = rng.gen_range(1..7);
            let d = CircleConfig::random(&mut rng, n);
            let c = canonical_decomposition(&d);
            assert_eq!(c.recompose().unwrap(), d);
            assert!(is_cyclically_ordered(&c.ordered));
            for r in 0..n {
                let relabeled = d.permute(&Permutation::cyclic(n, r)).unwrap();
                assert_eq!(canonical_decomposition(&relabeled).ordered, c.ordered);
            }
        }
    }

    #[test]
    fn permutation_action_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let n = rng.gen_range(0..6);
            let d = CircleConfig::random(&mut rng, n);
            let s = Permutation::random(n, &mut rng);
            let t = Permutation::random(n, &mut rng);
            assert_eq!(d.permute(&s.compose(&t).unwrap()).unwrap(), d.permute(&t).unwrap().permute(&s).unwrap());
            assert_eq!(d.permute(&Permutation::identity(n)).unwrap(), d);
        }
        let d = circle(&[(0.0, 0.1), (0.3, 0.1), (0.6, 0.1)]);
        let t = Permutation::transposition(3, 1, 3).unwrap();
        assert_eq!(d.permute(&t).unwrap().permute(&t).unwrap(), d);
        assert!(d.permute(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn json_envelope() {
        let f: ConfigFile = serde_json::from_str(r#"{"type":"circle","items":[[0.5,0.25],[0.0,0.125]]}"#).unwrap();
        assert_eq!(f, ConfigFile::Circle(circle(&[(0.5, 0.25), (0.0, 0.125)])));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"type":"circle","items":[[0.5,0.25],[0.0,0.125]]}"#);
        let bad: std::result::Result<ConfigFile, _> = serde_json::from_str(r#"{"type":"unit","items":[[0.5,0.75]]}"#);
        assert!(bad.is_err());
    }
}
