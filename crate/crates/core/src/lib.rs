//! Operads of little intervals and cyclohedra acting on free loop spaces.
//!
//! * [`operad`]: contracts for operads, right modules and traces, plus the
//!   seeded axiom harness every instance plugs into.
//! * [`intervals`]: the little intervals operad 𝒞₁ and its circle module 𝒥₁.
//! * [`polytopes`]: face lattices of associahedra and cyclohedra with their
//!   operad and module compositions.
//! * [`loops`]: piecewise-linear loops, the 𝒞₁-action on based loops, the
//!   𝒥₁-trace on free loops and the reduced suspension.
//! * [`free_trace`]: the free trace on the free 𝒞₁-algebra, Cohen's map `h`
//!   and the approximation square.
//! * [`suites`]: ready-made axiom suites shared by the CLI and the tests.

pub mod error;
pub mod free_trace;
pub mod intervals;
pub mod loops;
pub mod operad;
pub mod permutation;
pub mod polytopes;
pub mod suites;

pub use error::{Error, Result};
pub use free_trace::{FreeTraceElement, GeneralFreeTraceElement, PointedSet};
pub use intervals::{CircleConfig, CyclicDecomposition, Piece, UnitIntervalConfig};
pub use loops::{PlLoop, Ratio, SuspensionLoop};
pub use operad::{AxiomRecord, AxiomReport, Operad, RightModule, Trace};
pub use permutation::Permutation;
pub use polytopes::{Bracketing, CyclicTubing};
