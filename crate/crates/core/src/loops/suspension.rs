//! Loops in the reduced suspension `SX` of a finite pointed set `X ⊂ ℝ^dim`.
//!
//! Every loop built here is a union of *excursions*: on a window
//! `[start, start + len]` the loop climbs linearly from height 0 to height 1
//! inside the cone line of one label, and sits at the basepoint elsewhere.
//! That family contains the approximation loops and is closed under gluing,
//! so it is all the trace constructions need.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{frac, in_unit_interval, to_f64, LoopKind, LoopSpace, Ratio, Window};
use crate::error::{Error, Result};
use crate::intervals::{CircleConfig, UnitIntervalConfig, TOUCH_SLACK};

/// A point of `X`.
pub type Label = Vec<f64>;

/// A point of `SX` in canonical form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuspensionPoint {
    Base,
    At { label: Label, height: f64 },
}

impl SuspensionPoint {
    /// Collapses `height ∈ {0, 1}` and `label = b` to the basepoint.
    pub fn new(label: &[f64], height: f64, basepoint: &[f64]) -> Self {
        if height <= 0.0 || height >= 1.0 || label == basepoint {
            SuspensionPoint::Base
        } else {
            SuspensionPoint::At { label: label.to_vec(), height }
        }
    }

    fn to_base(&self) -> f64 {
        match self {
            SuspensionPoint::Base => 0.0,
            SuspensionPoint::At { height, .. } => height.min(1.0 - height),
        }
    }

    /// Quotient metric: heights compare within a label, and any path
    /// between different labels goes through the basepoint.
    pub fn distance(&self, other: &SuspensionPoint) -> f64 {
        match (self, other) {
            (SuspensionPoint::At { label: x, height: s }, SuspensionPoint::At { label: y, height: r }) if x == y => {
                (s - r).abs().min(self.to_base() + other.to_base())
            }
            _ => self.to_base() + other.to_base(),
        }
    }
}

/// One excursion of a suspension loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Excursion {
    pub start: Ratio,
    pub len: Ratio,
    pub label: Label,
}

/// A based or free loop in `SX`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuspensionLoop {
    kind: LoopKind,
    basepoint: Vec<f64>,
    excursions: Vec<Excursion>,
    spans: Vec<(f64, f64)>,
}

impl SuspensionLoop {
    /// Drops excursions labelled by the basepoint and sorts the rest.
    /// Neighbours may overlap by up to [`TOUCH_SLACK`].
    pub fn new(kind: LoopKind, basepoint: Vec<f64>, excursions: Vec<Excursion>) -> Result<Self> {
        let mut kept: Vec<Excursion> = Vec::with_capacity(excursions.len());
        for e in excursions {
            if !in_unit_interval(&e.start) {
                return Err(Error::InvalidLoop(format!("excursion start {} outside [0,1)", to_f64(&e.start))));
            }
            if e.len <= Ratio::zero() || e.len > Ratio::one() {
                return Err(Error::InvalidLoop(format!("excursion length {} outside (0,1]", to_f64(&e.len))));
            }
            if e.label.len() != basepoint.len() {
                return Err(Error::DimensionMismatch(basepoint.len(), e.label.len()));
            }
            if kind == LoopKind::Based && to_f64(&(&e.start + &e.len - Ratio::one())) > TOUCH_SLACK {
                return Err(Error::InvalidLoop("a based loop cannot wrap past 0".into()));
            }
            if e.label != basepoint {
                kept.push(e);
            }
        }
        kept.sort_by(|a, b| a.start.cmp(&b.start));
        let n = kept.len();
        for j in 0..n {
            let (a, b) = (&kept[j], &kept[(j + 1) % n]);
            let end = &a.start + &a.len;
            let next = if j + 1 == n { &b.start + Ratio::one() } else { b.start.clone() };
            if to_f64(&(end - next)) > TOUCH_SLACK {
                return Err(Error::InvalidLoop("excursions overlap".into()));
            }
        }
        let spans = kept.iter().map(|e| (to_f64(&e.start), to_f64(&e.len))).collect();
        Ok(Self { kind, basepoint, excursions: kept, spans })
    }

    pub fn constant(kind: LoopKind, basepoint: Vec<f64>) -> Self {
        Self { kind, basepoint, excursions: Vec::new(), spans: Vec::new() }
    }

    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    pub fn basepoint(&self) -> &[f64] {
        &self.basepoint
    }

    pub fn excursions(&self) -> &[Excursion] {
        &self.excursions
    }

    /// The value at `u`, read mod 1.
    pub fn eval(&self, u: f64) -> SuspensionPoint {
        let u = u - u.floor();
        for (e, &(s, l)) in self.excursions.iter().zip(&self.spans) {
            let mut off = u - s;
            if off < 0.0 {
                off += 1.0;
            }
            if off <= l {
                return SuspensionPoint::new(&e.label, off / l, &self.basepoint);
            }
        }
        SuspensionPoint::Base
    }

    /// Excursion endpoints as floats.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.excursions.iter().flat_map(|e| [to_f64(&e.start), to_f64(&frac(&(&e.start + &e.len)))]).collect()
    }

    /// The same map, forgetting the basepoint condition.
    pub fn as_free(&self) -> Self {
        Self { kind: LoopKind::Free, ..self.clone() }
    }
}

/// Sup of the quotient distance over `samples` uniform points and every
/// breakpoint of either loop.
pub fn suspension_sup_distance(a: &SuspensionLoop, b: &SuspensionLoop, samples: usize) -> Result<f64> {
    if a.basepoint.len() != b.basepoint.len() {
        return Err(Error::DimensionMismatch(a.basepoint.len(), b.basepoint.len()));
    }
    let uniform = (0..samples).map(|k| k as f64 / samples as f64);
    let (ba, bb) = (a.breakpoints(), b.breakpoints());
    let points = uniform.chain(ba).chain(bb);
    Ok(points.map(|u| a.eval(u).distance(&b.eval(u))).fold(0.0, f64::max))
}

/// `SX` for `X` pointed at `basepoint`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuspensionSpace {
    pub basepoint: Vec<f64>,
}

impl SuspensionSpace {
    pub fn new(basepoint: Vec<f64>) -> Self {
        Self { basepoint }
    }
}

impl LoopSpace for SuspensionSpace {
    type Loop = SuspensionLoop;

    fn constant(&self, kind: LoopKind) -> SuspensionLoop {
        SuspensionLoop::constant(kind, self.basepoint.clone())
    }

    fn check_based(&self, l: &SuspensionLoop) -> Result<()> {
        if l.basepoint.len() != self.basepoint.len() {
            return Err(Error::DimensionMismatch(self.basepoint.len(), l.basepoint.len()));
        }
        if l.kind != LoopKind::Based || l.basepoint != self.basepoint {
            return Err(Error::BasepointMismatch);
        }
        Ok(())
    }

    fn glue(&self, parts: &[(Window, &SuspensionLoop)], kind: LoopKind) -> Result<SuspensionLoop> {
        let excursions = parts
            .iter()
            .flat_map(|(w, l)| {
                l.excursions.iter().map(move |e| Excursion {
                    start: w.at(&e.start),
                    len: &w.len * &e.len,
                    label: e.label.clone(),
                })
            })
            .collect();
        SuspensionLoop::new(kind, self.basepoint.clone(), excursions)
    }

    fn distance(&self, a: &SuspensionLoop, b: &SuspensionLoop, samples: usize) -> Result<f64> {
        suspension_sup_distance(a, b, samples)
    }
}

fn excursions_over(pieces: &[crate::intervals::Piece], labels: &[Label]) -> Result<Vec<Excursion>> {
    if pieces.len() != labels.len() {
        return Err(Error::ArityMismatch { expected: pieces.len(), got: labels.len() });
    }
    pieces
        .iter()
        .zip(labels)
        .map(|(p, x)| {
            let w = Window::from_piece(p)?;
            Ok(Excursion { start: w.start, len: w.len, label: x.clone() })
        })
        .collect()
}

/// The approximation map `𝒞₁X → ΩSX`: interval `i`, read at `s ∈ [0,1]`,
/// goes to `(xᵢ, s)`.
pub fn may_approximation(c: &UnitIntervalConfig, labels: &[Label], basepoint: &[f64]) -> Result<SuspensionLoop> {
    SuspensionLoop::new(LoopKind::Based, basepoint.to_vec(), excursions_over(c.pieces(), labels)?)
}

/// The free loop `u ↦ (xᵢ, αᵢ⁻¹(u))` on arc `i`, basepoint elsewhere.
pub fn cohen_loop(d: &CircleConfig, labels: &[Label], basepoint: &[f64]) -> Result<SuspensionLoop> {
    SuspensionLoop::new(LoopKind::Free, basepoint.to_vec(), excursions_over(d.arcs(), labels)?)
}
