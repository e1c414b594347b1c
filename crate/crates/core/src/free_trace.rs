//! The free 𝒥₁-trace on the free 𝒞₁-algebra `𝒞₁X` of a finite pointed set.
//!
//! An element of `⊔ 𝒥₁(n) ×_{Σₙ} (𝒞₁X)ⁿ` is flattened by absorbing each
//! algebra entry into the circle configuration, then normalized by deleting
//! basepoint labels and rotating into cyclic order. Two elements are equal in
//! the quotient exactly when their normal forms agree.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{canonical_decomposition, module_compose, CircleConfig, UnitIntervalConfig};
use crate::loops::suspension::{cohen_loop, may_approximation, suspension_sup_distance, Label, SuspensionSpace};
use crate::loops::{j1_trace, SuspensionLoop};
use crate::permutation::Permutation;

/// A finite pointed set `X ⊂ ℝ^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointedSet {
    pub points: Vec<Label>,
    pub basepoint: Label,
}

impl PointedSet {
    /// The basepoint is added to `points` if missing.
    pub fn new(mut points: Vec<Label>, basepoint: Label) -> Result<Self> {
        let dim = basepoint.len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(dim, p.len()));
        }
        if points.iter().chain([&basepoint]).flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("points of X must be finite".into()));
        }
        if !points.contains(&basepoint) {
            points.push(basepoint.clone());
        }
        Ok(Self { points, basepoint })
    }

    pub fn dim(&self) -> usize {
        self.basepoint.len()
    }

    fn check(&self, label: &Label) -> Result<()> {
        if self.points.contains(label) {
            Ok(())
        } else {
            Err(Error::UnknownLabel(label.clone()))
        }
    }

    fn random_label<R: Rng + ?Sized>(&self, rng: &mut R) -> Label {
        self.points[rng.gen_range(0..self.points.len())].clone()
    }
}

/// A representative `(d; x₁ … xₙ)` of a class in `L(X)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FreeTraceJson")]
pub struct FreeTraceElement {
    pub circle: CircleConfig,
    pub labels: Vec<Label>,
    #[serde(rename = "X")]
    pub x: PointedSet,
}

impl FreeTraceElement {
    pub fn new(circle: CircleConfig, labels: Vec<Label>, x: PointedSet) -> Result<Self> {
        if circle.arity() != labels.len() {
            return Err(Error::ArityMismatch { expected: circle.arity(), got: labels.len() });
        }
        for l in &labels {
            x.check(l)?;
        }
        Ok(Self { circle, labels, x })
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, x: &PointedSet, n: usize) -> Self {
        let circle = CircleConfig::random(rng, n);
        let labels = (0..n).map(|_| x.random_label(rng)).collect();
        Self { circle, labels, x: x.clone() }
    }

    /// `(σ·d; σ·x)`, the same class.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        Ok(Self { circle: self.circle.permute(sigma)?, labels: sigma.act(&self.labels)?, x: self.x.clone() })
    }

    /// Deletes basepoint-labelled arcs, then puts the rest in cyclic order
    /// starting from the smallest start angle.
    pub fn normalize(&self) -> Self {
        let (arcs, labels): (Vec<_>, Vec<_>) = self
            .circle
            .arcs()
            .iter()
            .zip(&self.labels)
            .filter(|(_, l)| **l != self.x.basepoint)
            .map(|(a, l)| (*a, l.clone()))
            .unzip();
        let kept = CircleConfig::new(arcs).expect("a subset of disjoint arcs is disjoint");
        let dec = canonical_decomposition(&kept);
        let labels = (1..=labels.len()).map(|j| labels[dec.sigma.apply(j) - 1].clone()).collect();
        Self { circle: dec.ordered, labels, x: self.x.clone() }
    }

    /// Equality in the quotient: arcs within `tol`, labels exactly.
    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        let (a, b) = (self.normalize(), other.normalize());
        a.labels == b.labels
            && a.circle.arcs().iter().zip(b.circle.arcs()).all(|(p, q)| {
                let ds = (p.start - q.start).abs();
                ds.min(1.0 - ds) <= tol && (p.len - q.len).abs() <= tol
            })
    }

    /// Cohen's map `h : L(X) → ΛSX`.
    pub fn cohen_h(&self) -> SuspensionLoop {
        cohen_loop(&self.circle, &self.labels, &self.x.basepoint).expect("arcs and labels agree")
    }
}

/// An element `(c; y₁ … yₗ)` of the free 𝒞₁-algebra on `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub intervals: UnitIntervalConfig,
    pub labels: Vec<Label>,
}

impl AlgebraEntry {
    pub fn new(intervals: UnitIntervalConfig, labels: Vec<Label>) -> Result<Self> {
        if intervals.arity() != labels.len() {
            return Err(Error::ArityMismatch { expected: intervals.arity(), got: labels.len() });
        }
        Ok(Self { intervals, labels })
    }

    pub fn bare(label: Label) -> Self {
        Self { intervals: UnitIntervalConfig::unit(), labels: vec![label] }
    }

    pub fn is_bare(&self) -> bool {
        self.intervals == UnitIntervalConfig::unit()
    }
}

/// A representative `(d; a₁ … aₙ)` of a class in `T_{𝒥₁}(𝒞₁X)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeneralJson")]
pub struct GeneralFreeTraceElement {
    pub circle: CircleConfig,
    pub entries: Vec<AlgebraEntry>,
    #[serde(rename = "X")]
    pub x: PointedSet,
}

impl GeneralFreeTraceElement {
    pub fn new(circle: CircleConfig, entries: Vec<AlgebraEntry>, x: PointedSet) -> Result<Self> {
        if circle.arity() != entries.len() {
            return Err(Error::ArityMismatch { expected: circle.arity(), got: entries.len() });
        }
        for e in &entries {
            if e.intervals.arity() != e.labels.len() {
                return Err(Error::ArityMismatch { expected: e.intervals.arity(), got: e.labels.len() });
            }
            for l in &e.labels {
                x.check(l)?;
            }
        }
        Ok(Self { circle, entries, x })
    }

    pub fn from_bare(e: &FreeTraceElement) -> Self {
        let entries = e.labels.iter().cloned().map(AlgebraEntry::bare).collect();
        Self { circle: e.circle.clone(), entries, x: e.x.clone() }
    }

    /// `n` entries of arity at most `max_entry_arity`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, x: &PointedSet, n: usize, max_entry_arity: usize) -> Self {
        let circle = CircleConfig::random(rng, n);
        let entries = (0..n)
            .map(|_| {
                let l = rng.gen_range(0..=max_entry_arity);
                let intervals = UnitIntervalConfig::random(rng, l);
                let labels = (0..l).map(|_| x.random_label(rng)).collect();
                AlgebraEntry { intervals, labels }
            })
            .collect();
        Self { circle, entries, x: x.clone() }
    }

    /// Applies the module relation to the entries in the given order of
    /// their original positions (zero-based).
    pub fn flatten_in_order(&self, order: &[usize]) -> Result<FreeTraceElement> {
        let n = self.entries.len();
        let mut seen = vec![false; n];
        for &j in order {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("{order:?} is not an ordering of {n} entries")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPermutation(format!("{order:?} is not an ordering of {n} entries")));
        }
        // width[j]: how many positions entry j occupies right now.
        let mut width = vec![1usize; n];
        let mut circle = self.circle.clone();
        for &j in order {
            let e = &self.entries[j];
            if e.is_bare() {
                continue;
            }
            let at = width[..j].iter().sum::<usize>() + 1;
            circle = module_compose(&circle, &e.intervals, at)?;
            width[j] = e.labels.len();
        }
        let labels = self.entries.iter().flat_map(|e| e.labels.iter().cloned()).collect();
        Ok(FreeTraceElement { circle, labels, x: self.x.clone() })
    }

    /// Applies the module relation left to right until every entry is a
    /// bare label.
    pub fn flatten(&self) -> Result<FreeTraceElement> {
        let order: Vec<usize> = (0..self.entries.len()).collect();
        self.flatten_in_order(&order)
    }

    /// Drops basepoint-labelled intervals inside each entry.
    pub fn collapse_entries(&self) -> Self {
        let b = &self.x.basepoint;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                if e.is_bare() {
                    return e.clone();
                }
                let (pieces, labels): (Vec<_>, Vec<_>) = e
                    .intervals
                    .pieces()
                    .iter()
                    .zip(&e.labels)
                    .filter(|(_, l)| *l != b)
                    .map(|(p, l)| (*p, l.clone()))
                    .unzip();
                let intervals = UnitIntervalConfig::new(pieces).expect("a subset of disjoint intervals is disjoint");
                AlgebraEntry { intervals, labels }
            })
            .collect();
        Self { circle: self.circle.clone(), entries, x: self.x.clone() }
    }

    /// The image of the element in `ΛSX` through the approximation map on
    /// each entry followed by the 𝒥₁-trace.
    pub fn trace_route(&self) -> Result<SuspensionLoop> {
        let b = &self.x.basepoint;
        let space = SuspensionSpace::new(b.clone());
        let loops =
            self.entries.iter().map(|e| may_approximation(&e.intervals, &e.labels, b)).collect::<Result<Vec<_>>>()?;
        j1_trace(&space, &self.circle, &loops)
    }

    /// Sup distance between `h(flatten(e))` and [`Self::trace_route`].
    pub fn diagram_residual(&self, samples: usize) -> Result<f64> {
        let direct = self.flatten()?.cohen_h();
        suspension_sup_distance(&direct, &self.trace_route()?, samples)
    }
}

#[derive(Deserialize)]
struct FreeTraceJson {
    circle: CircleConfig,
    labels: Vec<Label>,
    #[serde(rename = "X")]
    x: PointedSet,
}

impl TryFrom<FreeTraceJson> for FreeTraceElement {
    type Error = Error;

    fn try_from(j: FreeTraceJson) -> Result<Self> {
        let x = PointedSet::new(j.x.points, j.x.basepoint)?;
        Self::new(j.circle, j.labels, x)
    }
}

#[derive(Deserialize)]
struct GeneralJson {
    circle: CircleConfig,
    entries: Vec<AlgebraEntry>,
    #[serde(rename = "X")]
    x: PointedSet,
}

impl TryFrom<GeneralJson> for GeneralFreeTraceElement {
    type Error = Error;

    fn try_from(j: GeneralJson) -> Result<Self> {
        let x = PointedSet::new(j.x.points, j.x.basepoint)?;
        Self::new(j.circle, j.entries, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Piece;
    use crate::operad::trial_rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x() -> PointedSet {
        PointedSet::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![2.0, 2.0]], vec![0.0, 0.0]).unwrap()
    }

    fn circle(items: &[(f64, f64)]) -> CircleConfig {
        CircleConfig::new(items.iter().map(|&(s, l)| Piece::new(s, l)).collect()).unwrap()
    }

    fn p(a: f64, b: f64) -> Label {
        vec![a, b]
    }

    #[test]
    fn pointed_set_validation() {
        assert_eq!(x().points.len(), 4);
        assert!(PointedSet::new(vec![vec![1.0]], vec![0.0, 0.0]).is_err());
        let d = circle(&[(0.0, 0.5)]);
        assert_eq!(
            FreeTraceElement::new(d.clone(), vec![p(5.0, 5.0)], x()).unwrap_err(),
            Error::UnknownLabel(p(5.0, 5.0))
        );
        assert!(FreeTraceElement::new(d, vec![], x()).is_err());
    }

    #[test]
    fn normalize_deletes_basepoint_labels() {
        let e = FreeTraceElement::new(
            circle(&[(0.0, 0.2), (0.3, 0.2), (0.6, 0.2)]),
            vec![p(1.0, 0.0), p(0.0, 0.0), p(0.0, 1.0)],
            x(),
        )
        .unwrap();
        let n = e.normalize();
        assert_eq!(n.circle, circle(&[(0.0, 0.2), (0.6, 0.2)]));
        assert_eq!(n.labels, vec![p(1.0, 0.0), p(0.0, 1.0)]);
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn normalize_rotates_into_cyclic_order() {
        let e = FreeTraceElement::new(
            circle(&[(0.5, 0.1), (0.1, 0.1), (0.8, 0.1)]),
            vec![p(1.0, 0.0), p(0.0, 1.0), p(2.0, 2.0)],
            x(),
        )
        .unwrap();
        let n = e.normalize();
        assert_eq!(n.circle, circle(&[(0.1, 0.1), (0.5, 0.1), (0.8, 0.1)]));
        assert_eq!(n.labels, vec![p(0.0, 1.0), p(1.0, 0.0), p(2.0, 2.0)]);
    }

    #[test]
    fn quotient_by_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for n in 0..7 {
            for _ in 0..30 {
                let e = FreeTraceElement::random(&mut rng, &x(), n);
                let sigma = Permutation::random(n, &mut rng);
                let moved = e.permute(&sigma).unwrap();
                assert!(e.equals(&moved, 0.0));
                assert_eq!(e.normalize(), moved.normalize());
                assert_eq!(e.cohen_h(), moved.cohen_h());
                let m = e.normalize().arity();
                for r in 0..m {
                    let rot = e.normalize().permute(&Permutation::cyclic(m, r)).unwrap();
                    assert_eq!(rot.normalize().circle, e.normalize().circle);
                }
            }
        }
    }

    #[test]
    fn distinct_geometry_is_distinct() {
        let a = FreeTraceElement::new(circle(&[(0.0, 0.2)]), vec![p(1.0, 0.0)], x()).unwrap();
        let b = FreeTraceElement::new(circle(&[(0.0, 0.3)]), vec![p(1.0, 0.0)], x()).unwrap();
        let c = FreeTraceElement::new(circle(&[(0.0, 0.2)]), vec![p(0.0, 1.0)], x()).unwrap();
        assert!(!a.equals(&b, 1e-9));
        assert!(a.equals(&b, 0.2));
        assert!(!a.equals(&c, 1.0));
    }

    #[test]
    fn flatten_fixes_bare_elements() {
        let e = FreeTraceElement::random(&mut ChaCha8Rng::seed_from_u64(73), &x(), 4);
        assert_eq!(GeneralFreeTraceElement::from_bare(&e).flatten().unwrap(), e);
    }

    #[test]
    fn flatten_one_step() {
        let c = UnitIntervalConfig::from_endpoints(&[(0.0, 0.5), (0.5, 1.0)]).unwrap();
        let d = circle(&[(0.25, 0.5)]);
        let g = GeneralFreeTraceElement::new(
            d.clone(),
            vec![AlgebraEntry::new(c.clone(), vec![p(1.0, 0.0), p(0.0, 1.0)]).unwrap()],
            x(),
        )
        .unwrap();
        let f = g.flatten().unwrap();
        assert_eq!(f.circle, module_compose(&d, &c, 1).unwrap());
        assert_eq!(f.labels, vec![p(1.0, 0.0), p(0.0, 1.0)]);
    }

    fn orders(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in orders(n - 1) {
            for at in 0..=rest.len() {
                let mut o = rest.clone();
                o.insert(at, n - 1);
                out.push(o);
            }
        }
        out
    }

    #[test]
    fn flatten_is_confluent() {
        for trial in 0..50 {
            let mut rng = trial_rng(79, trial);
            let g = GeneralFreeTraceElement::random(&mut rng, &x(), 3, 3);
            let want = g.flatten().unwrap();
            for o in orders(3) {
                assert_eq!(g.flatten_in_order(&o).unwrap(), want);
            }
        }
        let g = GeneralFreeTraceElement::random(&mut trial_rng(79, 0), &x(), 2, 1);
        assert!(g.flatten_in_order(&[0, 0]).is_err());
        assert!(g.flatten_in_order(&[0]).is_err());
    }

    #[test]
    fn collapsing_before_or_after_flattening_agrees() {
        for trial in 0..200 {
            let mut rng = trial_rng(83, trial);
            let n = rng.gen_range(0..4);
            let g = GeneralFreeTraceElement::random(&mut rng, &x(), n, 3);
            let after = g.flatten().unwrap().normalize();
            let before = g.collapse_entries().flatten().unwrap().normalize();
            assert_eq!(after, before);
        }
    }

    #[test]
    fn cohen_h_examples() {
        let empty = FreeTraceElement::new(CircleConfig::empty(), vec![], x()).unwrap();
        assert_eq!(empty.cohen_h(), SuspensionLoop::constant(crate::loops::LoopKind::Free, vec![0.0, 0.0]));
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for _ in 0..100 {
            let n = rng.gen_range(0..6);
            let e = FreeTraceElement::random(&mut rng, &x(), n);
            assert_eq!(e.cohen_h(), e.normalize().cohen_h());
            let bare = GeneralFreeTraceElement::from_bare(&e);
            assert_eq!(e.cohen_h(), bare.trace_route().unwrap());
            assert_eq!(bare.diagram_residual(1024).unwrap(), 0.0);
        }
    }

    #[test]
    fn diagram_commutes() {
        for trial in 0..200 {
            let mut rng = trial_rng(97, trial);
            let n = rng.gen_range(0..5);
            let g = GeneralFreeTraceElement::random(&mut rng, &x(), n, 3);
            let r = g.diagram_residual(2048).unwrap();
            assert!(r < 1e-9, "trial {trial}: {r}");
        }
        let none = GeneralFreeTraceElement::new(CircleConfig::empty(), vec![], x()).unwrap();
        assert_eq!(none.diagram_residual(16).unwrap(), 0.0);
    }

    #[test]
    fn json_shape() {
        let e = FreeTraceElement::new(circle(&[(0.5, 0.25)]), vec![p(1.0, 0.0)], x()).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["circle"], serde_json::json!([[0.5, 0.25]]));
        assert_eq!(v["labels"], serde_json::json!([[1.0, 0.0]]));
        assert_eq!(v["X"]["basepoint"], serde_json::json!([0.0, 0.0]));
        let back: FreeTraceElement = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(back, e);
        let mut bad = v;
        bad["labels"] = serde_json::json!([[9.0, 9.0]]);
        assert!(serde_json::from_value::<FreeTraceElement>(bad).is_err());
    }
}
