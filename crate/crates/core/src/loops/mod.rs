//! Loops and the actions on them.
//!
//! Loop parameters are exact rationals, so every reparametrization below is
//! exact and "equal as maps" reduces to equality of vertex lists. Point
//! coordinates stay `f64`; they are copied, never recomputed.
//!
//! [`LoopSpace`] abstracts the one operation both actions need: gluing
//! based loops into disjoint windows of the circle and filling the rest
//! with the basepoint. [`c1_action`] glues into the windows of a
//! [`UnitIntervalConfig`] and yields a based loop; [`j1_trace`] glues into
//! the arcs of a [`CircleConfig`] and yields a free loop.

pub mod pl;
pub mod suspension;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{CircleConfig, CircleModule, LittleIntervals, Piece, UnitIntervalConfig};
use crate::operad::{Operad, RightModule, Trace};
use crate::permutation::Permutation;

pub use pl::{concat, loop_sup_distance, passes_through, t1, t2, t2_involution, PlLoop, PlSpace};
pub use suspension::{cohen_loop, may_approximation, Label, SuspensionLoop, SuspensionPoint, SuspensionSpace};

/// Exact loop parameter.
pub type Ratio = BigRational;

/// The exact rational value of a finite float.
pub fn ratio(x: f64) -> Result<Ratio> {
    Ratio::from_float(x).ok_or_else(|| Error::InvalidLoop(format!("{x} is not finite")))
}

pub fn ratio_of(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// `x - ⌊x⌋ ∈ [0, 1)`.
pub fn frac(x: &Ratio) -> Ratio {
    x - x.floor()
}

pub fn to_f64(x: &Ratio) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn in_unit_interval(x: &Ratio) -> bool {
    !x.is_negative() && x < &Ratio::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    Based,
    Free,
}

impl fmt::Display for LoopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopKind::Based => "based",
            LoopKind::Free => "free",
        })
    }
}

/// The affine window `[start, start + len]` of the circle, read mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub start: Ratio,
    pub len: Ratio,
}

impl Window {
    pub fn from_piece(p: &Piece) -> Result<Self> {
        Ok(Self { start: ratio(p.start)?, len: ratio(p.len)? })
    }

    /// The circle point `start + len·s`.
    pub fn at(&self, s: &Ratio) -> Ratio {
        frac(&(&self.start + &self.len * s))
    }
}

/// A space of loops in a pointed space.
pub trait LoopSpace {
    type Loop: Clone + fmt::Debug;

    /// The constant loop at the basepoint.
    fn constant(&self, kind: LoopKind) -> Self::Loop;

    /// Rejects loops that are not based at this space's basepoint.
    fn check_based(&self, l: &Self::Loop) -> Result<()>;

    /// The loop equal to `φ ∘ α⁻¹` on each window `α` and to the basepoint
    /// elsewhere. Windows must have disjoint interiors.
    fn glue(&self, parts: &[(Window, &Self::Loop)], kind: LoopKind) -> Result<Self::Loop>;

    /// Sup distance over `samples` uniform points plus every breakpoint.
    fn distance(&self, a: &Self::Loop, b: &Self::Loop, samples: usize) -> Result<f64>;
}

fn glue_windows<S: LoopSpace>(space: &S, pieces: &[Piece], loops: &[S::Loop], kind: LoopKind) -> Result<S::Loop> {
    if pieces.len() != loops.len() {
        return Err(Error::ArityMismatch { expected: pieces.len(), got: loops.len() });
    }
    let mut parts = Vec::with_capacity(pieces.len());
    for (p, l) in pieces.iter().zip(loops) {
        space.check_based(l)?;
        parts.push((Window::from_piece(p)?, l));
    }
    space.glue(&parts, kind)
}

/// The Boardman–Vogt action `𝒞₁(n) × (ΩX)ⁿ → ΩX`.
pub fn c1_action<S: LoopSpace>(space: &S, c: &UnitIntervalConfig, loops: &[S::Loop]) -> Result<S::Loop> {
    glue_windows(space, c.pieces(), loops, LoopKind::Based)
}

/// The 𝒥₁-trace `𝒥₁(n) × (ΩX)ⁿ → ΛX`: `φᵢ ∘ αᵢ⁻¹` on arc `i`, the
/// basepoint off the arcs.
pub fn j1_trace<S: LoopSpace>(space: &S, d: &CircleConfig, loops: &[S::Loop]) -> Result<S::Loop> {
    glue_windows(space, d.arcs(), loops, LoopKind::Free)
}

/// An operad viewed as a right module over itself, so that algebra
/// structures can be checked with the trace harness.
#[derive(Debug, Clone, Copy, Default)]
pub struct SelfModule<O>(pub O);

impl<O: Operad> RightModule for SelfModule<O> {
    type Base = O;
    type Elem = O::Elem;

    fn name(&self) -> String {
        format!("{} over itself", self.0.name())
    }

    fn base(&self) -> &O {
        &self.0
    }

    fn arity(&self, m: &O::Elem) -> usize {
        self.0.arity(m)
    }

    fn compose(&self, m: &O::Elem, p: &O::Elem, i: usize) -> Result<O::Elem> {
        self.0.compose(m, p, i)
    }

    fn distance(&self, a: &O::Elem, b: &O::Elem) -> f64 {
        self.0.distance(a, b)
    }

    fn permute(&self, sigma: &Permutation, m: &O::Elem) -> Option<Result<O::Elem>> {
        self.0.permute(sigma, m)
    }
}

/// `ΛX` as a 𝒥₁-trace over the 𝒞₁-algebra `ΩX`.
#[derive(Debug, Clone)]
pub struct LoopTrace<S> {
    pub space: S,
    module: CircleModule,
}

impl<S> LoopTrace<S> {
    pub fn new(space: S) -> Self {
        Self { space, module: CircleModule::default() }
    }
}

impl<S: LoopSpace> Trace for LoopTrace<S> {
    type Module = CircleModule;
    type Input = S::Loop;
    type Output = S::Loop;

    fn name(&self) -> String {
        "free loops over based loops".into()
    }

    fn module(&self) -> &CircleModule {
        &self.module
    }

    fn act(&self, p: &UnitIntervalConfig, inputs: &[S::Loop]) -> Result<S::Loop> {
        c1_action(&self.space, p, inputs)
    }

    fn trace(&self, m: &CircleConfig, inputs: &[S::Loop]) -> Result<S::Loop> {
        j1_trace(&self.space, m, inputs)
    }

    fn output_distance(&self, a: &S::Loop, b: &S::Loop, eval_points: usize) -> f64 {
        self.space.distance(a, b, eval_points).unwrap_or(f64::INFINITY)
    }
}

/// `ΩX` as an algebra over 𝒞₁, in trace form (module = 𝒞₁ itself).
#[derive(Debug, Clone)]
pub struct LoopAlgebra<S> {
    pub space: S,
    module: SelfModule<LittleIntervals>,
}

impl<S> LoopAlgebra<S> {
    pub fn new(space: S) -> Self {
        Self { space, module: SelfModule(LittleIntervals) }
    }
}

impl<S: LoopSpace> Trace for LoopAlgebra<S> {
    type Module = SelfModule<LittleIntervals>;
    type Input = S::Loop;
    type Output = S::Loop;

    fn name(&self) -> String {
        "based loops over little-intervals".into()
    }

    fn module(&self) -> &SelfModule<LittleIntervals> {
        &self.module
    }

    fn act(&self, p: &UnitIntervalConfig, inputs: &[S::Loop]) -> Result<S::Loop> {
        c1_action(&self.space, p, inputs)
    }

    fn trace(&self, m: &UnitIntervalConfig, inputs: &[S::Loop]) -> Result<S::Loop> {
        c1_action(&self.space, m, inputs)
    }

    fn output_distance(&self, a: &S::Loop, b: &S::Loop, eval_points: usize) -> f64 {
        self.space.distance(a, b, eval_points).unwrap_or(f64::INFINITY)
    }
}
