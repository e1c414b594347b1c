//! Piecewise-linear loops in `ℝ^dim`.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{frac, in_unit_interval, ratio, ratio_of, to_f64, LoopKind, LoopSpace, Ratio, Window};
use crate::error::{Error, Result};

/// A closed piecewise-linear loop `[0,1]/{0~1} → ℝ^dim`.
///
/// Vertices carry parameters `t ∈ [0,1)` in increasing order; the loop
/// interpolates linearly between consecutive vertices and from the last
/// vertex around to the first. A based loop has a vertex `(0, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlLoop {
    kind: LoopKind,
    basepoint: Vec<f64>,
    vertices: Vec<(Ratio, Vec<f64>)>,
    times: Vec<f64>,
}

impl PlLoop {
    pub fn new(kind: LoopKind, basepoint: Vec<f64>, vertices: Vec<(Ratio, Vec<f64>)>) -> Result<Self> {
        let dim = basepoint.len();
        if vertices.is_empty() {
            return Err(Error::InvalidLoop("a loop needs at least one vertex".into()));
        }
        if basepoint.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidLoop("basepoint is not finite".into()));
        }
        for (t, p) in &vertices {
            if !in_unit_interval(t) {
                return Err(Error::InvalidLoop(format!("parameter {} outside [0,1)", to_f64(t))));
            }
            if p.len() != dim {
                return Err(Error::DimensionMismatch(dim, p.len()));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidLoop("vertex is not finite".into()));
            }
        }
        if vertices.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidLoop("parameters must strictly increase".into()));
        }
        if kind == LoopKind::Based && !(vertices[0].0.is_zero() && vertices[0].1 == basepoint) {
            return Err(Error::InvalidLoop("a based loop must start at (0, b)".into()));
        }
        let times = vertices.iter().map(|(t, _)| to_f64(t)).collect();
        Ok(Self { kind, basepoint, vertices, times })
    }

    pub fn constant(kind: LoopKind, basepoint: Vec<f64>) -> Self {
        let vertices = vec![(Ratio::zero(), basepoint.clone())];
        Self { kind, basepoint, vertices, times: vec![0.0] }
    }

    /// Based loop through `points` at the parameters `times`, closed up
    /// at the basepoint. Parameters are taken exactly.
    pub fn based_from_f64(basepoint: Vec<f64>, inner: &[(f64, Vec<f64>)]) -> Result<Self> {
        let mut vertices = vec![(Ratio::zero(), basepoint.clone())];
        for (t, p) in inner {
            vertices.push((ratio(*t)?, p.clone()));
        }
        Self::new(LoopKind::Based, basepoint, vertices)
    }

    /// A random based loop with up to `max_inner` interior vertices in
    /// `[-1, 1]^dim`.
    pub fn random_based<R: Rng + ?Sized>(rng: &mut R, basepoint: &[f64], max_inner: usize) -> Self {
        let m = rng.gen_range(0..=max_inner);
        let mut ts: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).filter(|t| *t > 0.0).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let inner: Vec<(f64, Vec<f64>)> =
            ts.into_iter().map(|t| (t, basepoint.iter().map(|_| rng.gen_range(-1.0..1.0)).collect())).collect();
        Self::based_from_f64(basepoint.to_vec(), &inner).expect("sampled vertices are valid")
    }

    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    pub fn basepoint(&self) -> &[f64] {
        &self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn vertices(&self) -> &[(Ratio, Vec<f64>)] {
        &self.vertices
    }

    /// Vertex parameters as floats.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// The same map, forgetting the basepoint condition.
    pub fn as_free(&self) -> Self {
        Self { kind: LoopKind::Free, ..self.clone() }
    }

    /// The value at `u`, read mod 1.
    pub fn eval(&self, u: f64) -> Vec<f64> {
        let n = self.vertices.len();
        if n == 1 {
            return self.vertices[0].1.clone();
        }
        let u = u - u.floor();
        let idx = self.times.partition_point(|&t| t <= u);
        let (a, b, ta, tb) = if idx == 0 {
            (n - 1, 0, self.times[n - 1] - 1.0, self.times[0])
        } else if idx == n {
            (n - 1, 0, self.times[n - 1], self.times[0] + 1.0)
        } else {
            (idx - 1, idx, self.times[idx - 1], self.times[idx])
        };
        let w = if tb > ta { (u - ta) / (tb - ta) } else { 0.0 };
        let (pa, pb) = (&self.vertices[a].1, &self.vertices[b].1);
        pa.iter().zip(pb).map(|(x, y)| x + w * (y - x)).collect()
    }

    /// `u ↦ self(u + α)`, a free loop.
    pub fn rotate(&self, alpha: &Ratio) -> Self {
        let mut vertices: Vec<(Ratio, Vec<f64>)> =
            self.vertices.iter().map(|(t, p)| (frac(&(t - alpha)), p.clone())).collect();
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        let times = vertices.iter().map(|(t, _)| to_f64(t)).collect();
        Self { kind: LoopKind::Free, basepoint: self.basepoint.clone(), vertices, times }
    }

    /// Vertices with interior points of constant runs removed; a constant
    /// loop reduces to a single vertex at `0`.
    pub fn reduced_vertices(&self) -> Vec<(Ratio, Vec<f64>)> {
        let n = self.vertices.len();
        if self.vertices.iter().all(|(_, p)| *p == self.vertices[0].1) {
            return vec![(Ratio::zero(), self.vertices[0].1.clone())];
        }
        (0..n)
            .filter(|&j| {
                let prev = &self.vertices[(j + n - 1) % n].1;
                let next = &self.vertices[(j + 1) % n].1;
                let here = &self.vertices[j].1;
                !(prev == here && here == next)
            })
            .map(|j| self.vertices[j].clone())
            .collect()
    }

    /// Exact equality as maps `S¹ → ℝ^dim` (kind is ignored).
    pub fn same_map(&self, other: &PlLoop) -> bool {
        self.reduced_vertices() == other.reduced_vertices()
    }

    pub fn to_json(&self) -> LoopJson {
        let mut breakpoints: Vec<(f64, Vec<f64>)> = self.vertices.iter().map(|(t, p)| (to_f64(t), p.clone())).collect();
        if self.vertices[0].0.is_zero() {
            breakpoints.push((1.0, self.vertices[0].1.clone()));
        }
        LoopJson { kind: self.kind, basepoint: self.basepoint.clone(), breakpoints }
    }

    pub fn from_json(j: &LoopJson) -> Result<Self> {
        let mut bps = j.breakpoints.clone();
        if bps.len() > 1 && bps.last().map(|b| b.0) == Some(1.0) {
            let (_, last) = bps.pop().expect("non-empty");
            if bps[0].0 != 0.0 || bps[0].1 != last {
                return Err(Error::InvalidLoop("loop is not closed: value at 1 differs from value at 0".into()));
            }
        }
        let vertices = bps.into_iter().map(|(t, p)| Ok((ratio(t)?, p))).collect::<Result<Vec<_>>>()?;
        Self::new(j.kind, j.basepoint.clone(), vertices)
    }
}

/// Loop JSON: `{"kind": "based" | "free", "basepoint": […], "breakpoints": [[t, […]], …]}`.
///
/// A trailing breakpoint at `t = 1` repeating the one at `t = 0` is accepted
/// and emitted whenever the loop has a vertex at `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopJson {
    pub kind: LoopKind,
    pub basepoint: Vec<f64>,
    pub breakpoints: Vec<(f64, Vec<f64>)>,
}

/// Piecewise-linear loops in `ℝ^dim` based at `basepoint`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlSpace {
    pub basepoint: Vec<f64>,
}

impl PlSpace {
    pub fn new(basepoint: Vec<f64>) -> Self {
        Self { basepoint }
    }
}

impl LoopSpace for PlSpace {
    type Loop = PlLoop;

    fn constant(&self, kind: LoopKind) -> PlLoop {
        PlLoop::constant(kind, self.basepoint.clone())
    }

    fn check_based(&self, l: &PlLoop) -> Result<()> {
        if l.dim() != self.basepoint.len() {
            return Err(Error::DimensionMismatch(self.basepoint.len(), l.dim()));
        }
        if l.kind != LoopKind::Based || l.basepoint != self.basepoint {
            return Err(Error::BasepointMismatch);
        }
        Ok(())
    }

    fn glue(&self, parts: &[(Window, &PlLoop)], kind: LoopKind) -> Result<PlLoop> {
        let b = &self.basepoint;
        let mut vertices: Vec<(Ratio, Vec<f64>)> = Vec::new();
        if kind == LoopKind::Based || parts.is_empty() {
            vertices.push((Ratio::zero(), b.clone()));
        }
        for (w, l) in parts {
            vertices.extend(l.vertices.iter().map(|(t, p)| (w.at(t), p.clone())));
            vertices.push((w.at(&Ratio::one()), b.clone()));
        }
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Ratio, Vec<f64>)> = Vec::with_capacity(vertices.len());
        for v in vertices {
            match merged.last() {
                Some(last) if last.0 == v.0 => {
                    if last.1 != v.1 {
                        return Err(Error::InvalidLoop("windows overlap".into()));
                    }
                }
                _ => merged.push(v),
            }
        }
        PlLoop::new(kind, b.clone(), merged)
    }

    fn distance(&self, a: &PlLoop, b: &PlLoop, samples: usize) -> Result<f64> {
        loop_sup_distance(a, b, samples)
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Sup of `|l1(u) - l2(u)|` over `samples` uniform points and every
/// breakpoint of either loop.
pub fn loop_sup_distance(l1: &PlLoop, l2: &PlLoop, samples: usize) -> Result<f64> {
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch(l1.dim(), l2.dim()));
    }
    let uniform = (0..samples).map(|k| k as f64 / samples as f64);
    let points = uniform.chain(l1.times.iter().copied()).chain(l2.times.iter().copied());
    Ok(points.map(|u| euclid(&l1.eval(u), &l2.eval(u))).fold(0.0, f64::max))
}

/// Whether the image of `l` comes within `tol` of `c`.
pub fn passes_through(l: &PlLoop, c: &[f64], tol: f64) -> Result<bool> {
    if l.dim() != c.len() {
        return Err(Error::DimensionMismatch(l.dim(), c.len()));
    }
    let n = l.vertices.len();
    let mut best = f64::INFINITY;
    for j in 0..n {
        let a = &l.vertices[j].1;
        let b = &l.vertices[(j + 1) % n].1;
        best = best.min(segment_distance(a, b, c));
    }
    Ok(best <= tol)
}

fn segment_distance(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let ab: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let len2: f64 = ab.iter().map(|x| x * x).sum();
    let s = if len2 > 0.0 {
        let dot: f64 = a.iter().zip(c).zip(&ab).map(|((x, z), d)| (z - x) * d).sum();
        (dot / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let closest: Vec<f64> = a.iter().zip(&ab).map(|(x, d)| x + s * d).collect();
    euclid(&closest, c)
}

fn require_based(l: &PlLoop) -> Result<()> {
    if l.kind != LoopKind::Based {
        return Err(Error::InvalidLoop("expected a based loop".into()));
    }
    Ok(())
}

/// Loop composition `φ * ψ`: `φ(2u)` on `[0, ½]`, `ψ(2u - 1)` on `[½, 1]`.
pub fn concat(phi: &PlLoop, psi: &PlLoop) -> Result<PlLoop> {
    require_based(phi)?;
    require_based(psi)?;
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(phi.dim(), psi.dim()));
    }
    if phi.basepoint != psi.basepoint {
        return Err(Error::BasepointMismatch);
    }
    let half = ratio_of(1, 2);
    let vertices = phi
        .vertices
        .iter()
        .map(|(t, p)| (t * &half, p.clone()))
        .chain(psi.vertices.iter().map(|(t, p)| (&half + t * &half, p.clone())))
        .collect();
    PlLoop::new(LoopKind::Based, phi.basepoint.clone(), vertices)
}

fn check_angle(alpha: &Ratio) -> Result<()> {
    if !in_unit_interval(alpha) {
        return Err(Error::InvalidLoop(format!("angle {} outside [0,1)", to_f64(alpha))));
    }
    Ok(())
}

/// `T₁(α, φ)(u) = φ(u + α)`.
pub fn t1(alpha: &Ratio, phi: &PlLoop) -> Result<PlLoop> {
    check_angle(alpha)?;
    require_based(phi)?;
    Ok(phi.rotate(alpha))
}

/// `T₂(α, t, φ, ψ)(u) = (φ * ψ)(u + t/2 + α)`.
pub fn t2(alpha: &Ratio, t: &Ratio, phi: &PlLoop, psi: &PlLoop) -> Result<PlLoop> {
    check_angle(alpha)?;
    if *t < Ratio::zero() || *t > Ratio::one() {
        return Err(Error::InvalidLoop(format!("t = {} outside [0,1]", to_f64(t))));
    }
    let shift = t * ratio_of(1, 2) + alpha;
    Ok(concat(phi, psi)?.rotate(&shift))
}

/// The coordinate action of the transposition on `C₂ ≅ S¹ × I` under which
/// `T₂` is invariant when the two loops are swapped.
pub fn t2_involution(alpha: &Ratio, t: &Ratio) -> (Ratio, Ratio) {
    (frac(&(alpha + t)), Ratio::one() - t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{compose_intervals, CircleConfig, Piece, UnitIntervalConfig};
    use crate::loops::{c1_action, j1_trace, LoopAlgebra, LoopTrace};
    use crate::operad::{check_trace_compatibility, RandomCheck};
    use crate::permutation::Permutation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b() -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn square() -> PlLoop {
        PlLoop::based_from_f64(b(), &[(0.25, vec![1.0, 0.0]), (0.5, vec![1.0, 1.0]), (0.75, vec![0.0, 1.0])]).unwrap()
    }

    fn tri() -> PlLoop {
        PlLoop::based_from_f64(b(), &[(0.5, vec![-2.0, 0.5])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PlLoop::new(LoopKind::Based, b(), vec![(ratio_of(1, 2), b())]).is_err());
        assert!(PlLoop::new(LoopKind::Free, b(), vec![(ratio_of(1, 1), b())]).is_err());
        assert!(PlLoop::new(LoopKind::Free, b(), vec![(ratio_of(1, 2), vec![1.0])]).is_err());
        assert!(PlLoop::new(LoopKind::Free, b(), vec![(ratio_of(1, 2), vec![1.0, 2.0])]).is_ok());
        assert!(PlLoop::new(LoopKind::Free, b(), vec![]).is_err());
    }

    #[test]
    fn evaluation_interpolates_cyclically() {
        let s = square();
        assert_eq!(s.eval(0.125), vec![0.5, 0.0]);
        assert_eq!(s.eval(0.875), vec![0.0, 0.5]);
        assert_eq!(s.eval(1.125), vec![0.5, 0.0]);
        let f = s.rotate(&ratio_of(1, 8));
        assert_eq!(f.eval(0.0), vec![0.5, 0.0]);
        assert_eq!(f.eval(0.9375), vec![0.25, 0.0]);
    }

    #[test]
    fn concat_with_constant() {
        let c = PlLoop::constant(LoopKind::Based, b());
        let sc = concat(&square(), &c).unwrap();
        for k in 0..64 {
            let u = k as f64 / 64.0;
            if u <= 0.5 {
                assert_eq!(sc.eval(u), square().eval(2.0 * u));
            } else {
                assert_eq!(sc.eval(u), b());
            }
        }
        let other = PlLoop::constant(LoopKind::Based, vec![1.0, 0.0]);
        assert_eq!(concat(&square(), &other).unwrap_err(), Error::BasepointMismatch);
    }

    #[test]
    fn charming_equation() {
        let lhs = concat(&square(), &tri()).unwrap().rotate(&ratio_of(1, 2));
        let rhs = concat(&tri(), &square()).unwrap();
        assert!(lhs.same_map(&rhs));
        assert_eq!(lhs.vertices(), rhs.vertices());
    }

    #[test]
    fn concat_is_not_associative_on_the_nose() {
        let (a, bb, c) = (square(), tri(), square().rotate(&ratio_of(0, 1)));
        let c = PlLoop::new(LoopKind::Based, c.basepoint().to_vec(), c.vertices().to_vec()).unwrap();
        let left = concat(&concat(&a, &bb).unwrap(), &c).unwrap();
        let right = concat(&a, &concat(&bb, &c).unwrap()).unwrap();
        // Witness: at u = 1/8 the left loop is at square(1/2), the right at square(1/4).
        assert_eq!(left.eval(0.125), vec![1.0, 1.0]);
        assert_eq!(right.eval(0.125), vec![1.0, 0.0]);
        assert!(loop_sup_distance(&left, &right, 256).unwrap() > 0.5);
        assert!(!left.same_map(&right));
    }

    #[test]
    fn c1_action_identity_and_halves() {
        let space = PlSpace::new(b());
        let one = c1_action(&space, &UnitIntervalConfig::unit(), &[square()]).unwrap();
        assert_eq!(one, square());
        let halves = UnitIntervalConfig::from_endpoints(&[(0.0, 0.5), (0.5, 1.0)]).unwrap();
        let got = c1_action(&space, &halves, &[square(), tri()]).unwrap();
        assert_eq!(got, concat(&square(), &tri()).unwrap());
        let empty = c1_action(&space, &UnitIntervalConfig::point(), &[]).unwrap();
        assert_eq!(empty, PlLoop::constant(LoopKind::Based, b()));
        assert!(c1_action(&space, &halves, &[square()]).is_err());
    }

    #[test]
    fn c1_action_halves_random_loops() {
        let space = PlSpace::new(b());
        let halves = UnitIntervalConfig::from_endpoints(&[(0.0, 0.5), (0.5, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let phi = PlLoop::random_based(&mut rng, &b(), 6);
            let psi = PlLoop::random_based(&mut rng, &b(), 6);
            let got = c1_action(&space, &halves, &[phi.clone(), psi.clone()]).unwrap();
            assert_eq!(got, concat(&phi, &psi).unwrap());
        }
    }

    #[test]
    fn j1_trace_single_arc_passes_through_basepoint() {
        let space = PlSpace::new(vec![3.0, 3.0]);
        let phi = PlLoop::based_from_f64(vec![3.0, 3.0], &[(0.5, vec![5.0, 3.0])]).unwrap();
        let d = CircleConfig::new(vec![Piece::new(0.6, 0.7)]).unwrap();
        let free = j1_trace(&space, &d, std::slice::from_ref(&phi)).unwrap();
        assert_eq!(free.kind(), LoopKind::Free);
        assert!(passes_through(&free, &[3.0, 3.0], 1e-12).unwrap());
        // constant on the complementary arc [0.3, 0.6]
        assert_eq!(free.eval(0.45), vec![3.0, 3.0]);
        // left inverse: reading arc 1 back through α recovers φ
        for k in 0..=16 {
            let s = k as f64 / 16.0;
            let u = 0.6 + 0.7 * s;
            let back = free.eval(u);
            let want = phi.eval(s);
            assert!(euclid(&back, &want) < 1e-12);
        }
        let empty = j1_trace(&space, &CircleConfig::empty(), &[]).unwrap();
        assert!(empty.same_map(&PlLoop::constant(LoopKind::Free, vec![3.0, 3.0])));
    }

    #[test]
    fn t1_examples() {
        let zero = t1(&ratio_of(0, 1), &square()).unwrap();
        assert_eq!(zero, square().as_free());
        let alpha = ratio_of(3, 16);
        let r = t1(&alpha, &square()).unwrap();
        for k in 0..1024 {
            let u = k as f64 / 1024.0;
            assert_eq!(r.eval(u), square().eval(u + 3.0 / 16.0));
        }
        assert!(loop_sup_distance(&r, &square(), 64).unwrap() > 0.0);
        let swapped = t1(&ratio_of(1, 2), &concat(&square(), &tri()).unwrap()).unwrap();
        assert!(swapped.same_map(&concat(&tri(), &square()).unwrap()));
        assert!(t1(&ratio_of(1, 1), &square()).is_err());
    }

    #[test]
    fn rotation_is_a_circle_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let phi = PlLoop::random_based(&mut rng, &b(), 5);
            let a = ratio(rng.gen_range(0.0..1.0)).unwrap();
            let c = ratio(rng.gen_range(0.0..1.0)).unwrap();
            let twice = phi.rotate(&a).rotate(&c);
            assert_eq!(twice, phi.rotate(&frac(&(&a + &c))));
        }
    }

    #[test]
    fn t2_examples() {
        let zero = t2(&ratio_of(0, 1), &ratio_of(0, 1), &square(), &tri()).unwrap();
        assert!(zero.same_map(&concat(&square(), &tri()).unwrap()));
        let (alpha, t) = (ratio_of(5, 7), ratio_of(2, 3));
        let lhs = t2(&alpha, &t, &square(), &tri()).unwrap();
        let (a2, t2v) = t2_involution(&alpha, &t);
        let rhs = t2(&a2, &t2v, &tri(), &square()).unwrap();
        assert_eq!(lhs.reduced_vertices(), rhs.reduced_vertices());
        for k in 0..32 {
            let u = k as f64 / 32.0;
            assert_eq!(lhs.eval(u), lhs.eval(u + 1.0));
        }
    }

    #[test]
    fn passes_through_and_distance() {
        assert!(passes_through(&square(), &[1.0, 0.5], 1e-12).unwrap());
        assert!(!passes_through(&square(), &[0.5, 0.5], 0.1).unwrap());
        assert!(passes_through(&square(), &[1.0], 0.1).is_err());
        assert_eq!(loop_sup_distance(&square(), &square(), 100).unwrap(), 0.0);
        let other = PlLoop::constant(LoopKind::Based, vec![0.0]);
        assert!(loop_sup_distance(&square(), &other, 10).is_err());
    }

    #[test]
    fn json_round_trip() {
        let j = square().to_json();
        assert_eq!(j.breakpoints.last().unwrap(), &(1.0, b()));
        assert_eq!(PlLoop::from_json(&j).unwrap(), square());
        let text = r#"{"kind":"based","basepoint":[0,0],"breakpoints":[[0,[0,0]],[0.5,[1,1]],[1,[0,1]]]}"#;
        let j: LoopJson = serde_json::from_str(text).unwrap();
        assert!(PlLoop::from_json(&j).is_err());
    }

    fn loops(rng: &mut ChaCha8Rng, n: usize) -> Vec<PlLoop> {
        (0..n).map(|_| PlLoop::random_based(rng, &b(), 5)).collect()
    }

    #[test]
    fn trace_compatibility_on_pl_loops() {
        let tr = LoopTrace::new(PlSpace::new(b()));
        let cfg = RandomCheck::new(2024, 200, 1e-9).arities(0, 3);
        let report =
            check_trace_compatibility(&tr, CircleConfig::random, UnitIntervalConfig::random, loops, &cfg, 4096)
                .unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.records.iter().any(|r| r.axiom == "trace_equivariance"));
    }

    #[test]
    fn algebra_compatibility_on_pl_loops() {
        let tr = LoopAlgebra::new(PlSpace::new(b()));
        // Float composition of the configurations, amplified by steep loops.
        let cfg = RandomCheck::new(7, 200, 1e-9).arities(0, 3);
        let report =
            check_trace_compatibility(&tr, UnitIntervalConfig::random, UnitIntervalConfig::random, loops, &cfg, 1024)
                .unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn actions_are_equivariant_exactly() {
        let space = PlSpace::new(b());
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for n in 0..6 {
            for _ in 0..40 {
                let d = CircleConfig::random(&mut rng, n);
                let c = UnitIntervalConfig::random(&mut rng, n);
                let ls = loops(&mut rng, n);
                let sigma = Permutation::random(n, &mut rng);
                let moved = sigma.act(&ls).unwrap();
                assert_eq!(
                    j1_trace(&space, &d.permute(&sigma).unwrap(), &moved).unwrap(),
                    j1_trace(&space, &d, &ls).unwrap()
                );
                assert_eq!(
                    c1_action(&space, &c.permute(&sigma).unwrap(), &moved).unwrap(),
                    c1_action(&space, &c, &ls).unwrap()
                );
            }
        }
    }

    #[test]
    fn short_arcs_force_the_basepoint() {
        let space = PlSpace::new(b());
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut checked = 0;
        for _ in 0..500 {
            let n = rng.gen_range(0..5);
            let d = CircleConfig::random(&mut rng, n);
            if d.total_length() >= 1.0 {
                continue;
            }
            let free = j1_trace(&space, &d, &loops(&mut rng, n)).unwrap();
            assert!(passes_through(&free, &b(), 0.0).unwrap());
            checked += 1;
        }
        assert!(checked > 400);
    }

    #[test]
    fn trace_restricted_to_an_arc_recovers_the_loop() {
        let space = PlSpace::new(b());
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..50 {
            let n = rng.gen_range(1..5);
            let d = CircleConfig::random(&mut rng, n);
            let ls = loops(&mut rng, n);
            let free = j1_trace(&space, &d, &ls).unwrap();
            for (arc, l) in d.arcs().iter().zip(&ls) {
                let w = Window::from_piece(arc).unwrap();
                // every vertex of φ reappears at α(t)
                for (t, p) in l.vertices() {
                    let at = w.at(t);
                    let hit = free.vertices().iter().find(|(u, _)| *u == at).unwrap();
                    assert_eq!(&hit.1, p);
                }
            }
        }
    }

    #[test]
    fn charming_equation_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..100 {
            let (phi, psi) = (PlLoop::random_based(&mut rng, &b(), 6), PlLoop::random_based(&mut rng, &b(), 6));
            let lhs = concat(&phi, &psi).unwrap().rotate(&ratio_of(1, 2));
            assert_eq!(lhs.vertices(), concat(&psi, &phi).unwrap().vertices());
        }
    }

    #[test]
    fn algebra_compatibility_is_exact_on_dyadic_configurations() {
        let space = PlSpace::new(b());
        let quarters = |n: usize| -> Vec<UnitIntervalConfig> {
            let mut out = Vec::new();
            let total = 5usize.pow(2 * n as u32);
            for code in 0..total {
                let mut c = code;
                let mut ends = Vec::new();
                for _ in 0..n {
                    let (a, z) = (c % 5, (c / 5) % 5);
                    c /= 25;
                    ends.push((a as f64 / 4.0, z as f64 / 4.0));
                }
                if let Ok(cfg) = UnitIntervalConfig::from_endpoints(&ends) {
                    out.push(cfg);
                }
            }
            out
        };
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let mut checked = 0;
        for k in 1..=2 {
            for l in 0..=2 {
                for c in quarters(k) {
                    for c2 in quarters(l) {
                        let ls = loops(&mut rng, k + l - 1);
                        for i in 1..=k {
                            let lhs = c1_action(&space, &compose_intervals(&c, &c2, i).unwrap(), &ls).unwrap();
                            let mut outer = ls[..i - 1].to_vec();
                            outer.push(c1_action(&space, &c2, &ls[i - 1..i - 1 + l]).unwrap());
                            outer.extend_from_slice(&ls[i - 1 + l..]);
                            assert!(lhs.same_map(&c1_action(&space, &c, &outer).unwrap()));
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }
}
