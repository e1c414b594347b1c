//! Face lattices of the associahedra `Kₙ` and the cyclohedra `Wₙ`.
//!
//! A face of `Kₙ` is a set of pairwise nested-or-disjoint brackets on the
//! positions `1..=n`; a bracket covers `2..=n-1` consecutive positions.
//!
//! A face of `Wₙ` is a tubing of the `n`-cycle whose nodes are the *gaps*
//! of `n` points on the circle: gap `j` sits between point `j` and point
//! `j + 1 (mod n)`. A tube of gaps `{a, …, b}` is the cluster of points
//! `{a, …, b + 1}`; a tube of `n - 1` gaps is the cluster of all points cut
//! open at the missing gap. Tubes are pairwise nested, or disjoint with a
//! union that is not itself a cyclic segment.
//!
//! Sets are stored as bitmasks (bit `j - 1` for index `j`), so `n ≤ 64`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::operad::{Operad, RightModule};

/// Largest `n` for which [`enumerate_faces_k`] runs.
pub const K_CAP: usize = 8;
/// Largest `n` for which [`enumerate_faces_w`] runs.
pub const W_CAP: usize = 7;

const MAX_N: usize = 64;

fn ones(count: usize) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

fn is_interval(mask: u64) -> bool {
    mask != 0 && {
        let shifted = mask >> mask.trailing_zeros();
        shifted & (shifted + 1) == 0
    }
}

/// True for the full set and for every non-empty cyclic run in `ℤ/n`.
fn is_cyclic_segment(mask: u64, n: usize) -> bool {
    if mask == 0 {
        return false;
    }
    let full = ones(n);
    if mask == full {
        return true;
    }
    // A run starts wherever its cyclic predecessor is absent.
    let rotated = ((mask << 1) | (mask >> (n - 1))) & full;
    (mask & !rotated).count_ones() == 1
}

fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn mask_of(set: &[usize], n: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &j in set {
        if j == 0 || j > n {
            return Err(Error::InvalidFace(format!("index {j} outside 1..{n}")));
        }
        mask |= 1 << (j - 1);
    }
    Ok(mask)
}

fn compatible_brackets(a: u64, b: u64) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

fn compatible_tubes(a: u64, b: u64, n: usize) -> bool {
    let meet = a & b;
    if meet == a || meet == b {
        return true;
    }
    meet == 0 && !is_cyclic_segment(a | b, n)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::InvalidFace(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

/// A face of the associahedron `Kₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracketing {
    n: usize,
    brackets: BTreeSet<u64>,
}

impl Bracketing {
    pub fn new(n: usize, brackets: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_n(n)?;
        let brackets: BTreeSet<u64> = brackets.into_iter().collect();
        for &b in &brackets {
            let size = b.count_ones() as usize;
            if !is_interval(b) || b & !ones(n) != 0 || size < 2 || size + 1 > n {
                return Err(Error::InvalidFace(format!("bad bracket {:?} in K{n}", indices(b))));
            }
        }
        for &a in &brackets {
            for &b in &brackets {
                if !compatible_brackets(a, b) {
                    return Err(Error::InvalidFace(format!("brackets {:?} and {:?} overlap", indices(a), indices(b))));
                }
            }
        }
        Ok(Self { n, brackets })
    }

    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let masks = sets.iter().map(|s| mask_of(s, n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, masks)
    }

    /// The top cell of `Kₙ` (no brackets).
    pub fn top(n: usize) -> Self {
        Self { n, brackets: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn brackets(&self) -> &BTreeSet<u64> {
        &self.brackets
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.brackets.iter().map(|&b| indices(b)).collect()
    }

    pub fn dimension(&self) -> usize {
        if self.n < 2 {
            0
        } else {
            self.n - 2 - self.brackets.len()
        }
    }
}

/// A face of the cyclohedron `Wₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicTubing {
    n: usize,
    tubes: BTreeSet<u64>,
}

impl CyclicTubing {
    pub fn new(n: usize, tubes: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_n(n)?;
        if n == 0 {
            return Err(Error::InvalidFace("W0 does not exist".into()));
        }
        let tubes: BTreeSet<u64> = tubes.into_iter().collect();
        for &t in &tubes {
            if t & !ones(n) != 0 || t == ones(n) || !is_cyclic_segment(t, n) {
                return Err(Error::InvalidFace(format!("bad tube {:?} in W{n}", indices(t))));
            }
        }
        for &a in &tubes {
            for &b in &tubes {
                if !compatible_tubes(a, b, n) {
                    return Err(Error::InvalidFace(format!(
                        "tubes {:?} and {:?} are incompatible",
                        indices(a),
                        indices(b)
                    )));
                }
            }
        }
        Ok(Self { n, tubes })
    }

    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let masks = sets.iter().map(|s| mask_of(s, n)).collect::<Result<Vec<_>>>()?;
        Self::new(n, masks)
    }

    pub fn top(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tubes(&self) -> &BTreeSet<u64> {
        &self.tubes
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.tubes.iter().map(|&t| indices(t)).collect()
    }

    pub fn dimension(&self) -> usize {
        self.n - 1 - self.tubes.len()
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.n)?;
        write_sets(f, &self.sets())
    }
}

impl fmt::Display for CyclicTubing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.n)?;
        write_sets(f, &self.sets())
    }
}

fn write_sets(f: &mut fmt::Formatter<'_>, sets: &[Vec<usize>]) -> fmt::Result {
    write!(f, "{{")?;
    for (k, s) in sets.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        let items: Vec<String> = s.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))?;
    }
    write!(f, "}}")
}

/// Every set of pairwise compatible items from `candidates`.
fn compatible_families(candidates: &[u64], compatible: impl Fn(u64, u64) -> bool) -> Vec<Vec<u64>> {
    fn go(
        start: usize,
        chosen: &mut Vec<u64>,
        candidates: &[u64],
        compatible: &dyn Fn(u64, u64) -> bool,
        out: &mut Vec<Vec<u64>>,
    ) {
        out.push(chosen.clone());
        for idx in start..candidates.len() {
            let c = candidates[idx];
            if chosen.iter().all(|&x| compatible(x, c)) {
                chosen.push(c);
                go(idx + 1, chosen, candidates, compatible, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), candidates, &compatible, &mut out);
    out
}

/// All faces of `Kₙ`, top cell first, then by decreasing dimension.
pub fn enumerate_faces_k(n: usize) -> Result<Vec<Bracketing>> {
    if n > K_CAP {
        return Err(Error::ResourceLimit { n, cap: K_CAP });
    }
    let mut candidates = Vec::new();
    for size in 2..n {
        for start in 0..=(n - size) {
            candidates.push(ones(size) << start);
        }
    }
    let mut faces: Vec<Bracketing> = compatible_families(&candidates, compatible_brackets)
        .into_iter()
        .map(|b| Bracketing { n, brackets: b.into_iter().collect() })
        .collect();
    faces.sort_by(|a, b| b.dimension().cmp(&a.dimension()).then_with(|| a.cmp(b)));
    Ok(faces)
}

/// All faces of `Wₙ`, top cell first, then by decreasing dimension.
pub fn enumerate_faces_w(n: usize) -> Result<Vec<CyclicTubing>> {
    if n > W_CAP {
        return Err(Error::ResourceLimit { n, cap: W_CAP });
    }
    if n == 0 {
        return Err(Error::InvalidFace("W0 does not exist".into()));
    }
    let mut candidates = Vec::new();
    for size in 1..n {
        for start in 0..n {
            let run = ones(size) << start;
            candidates.push((run | run >> n) & ones(n));
        }
    }
    let mut faces: Vec<CyclicTubing> = compatible_families(&candidates, |a, b| compatible_tubes(a, b, n))
        .into_iter()
        .map(|t| CyclicTubing { n, tubes: t.into_iter().collect() })
        .collect();
    faces.sort_by(|a, b| b.dimension().cmp(&a.dimension()).then_with(|| a.cmp(b)));
    Ok(faces)
}

/// Face counts by dimension, lowest dimension first.
pub fn f_vector<I: IntoIterator<Item = usize>>(dimensions: I) -> Vec<usize> {
    let mut counts = Vec::new();
    for d in dimensions {
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    counts
}

/// `Σ_d (-1)^d f_d`, including the top cell.
pub fn euler_characteristic(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Positions of a `k`-element list after position `i` becomes a block of `l`.
fn expand_positions(mask: u64, i: usize, l: usize) -> u64 {
    let low = mask & ones(i - 1);
    let high = (mask >> i) << (i - 1 + l);
    let mid = if mask >> (i - 1) & 1 == 1 { ones(l) << (i - 1) } else { 0 };
    low | mid | high
}

/// `x ∘ᵢ y` in the associahedron operad: position `i` of `x` becomes the
/// block `i..i+l-1`, which is bracketed whenever it is a proper bracket.
pub fn compose_k(x: &Bracketing, y: &Bracketing, i: usize) -> Result<Bracketing> {
    let (k, l) = (x.n, y.n);
    check_index(i, k)?;
    if l == 0 {
        return Err(Error::Unsupported("composition with K0".into()));
    }
    check_n(k + l - 1)?;
    let mut brackets: BTreeSet<u64> = x.brackets.iter().map(|&b| expand_positions(b, i, l)).collect();
    brackets.extend(y.brackets.iter().map(|&b| b << (i - 1)));
    if l >= 2 && k >= 2 {
        brackets.insert(ones(l) << (i - 1));
    }
    Bracketing::new(k + l - 1, brackets)
}

/// `m ∘ᵢ y` in the right `K`-module of cyclohedra: point `i` of the circle
/// becomes a cluster of `l` points bracketed as `y`.
///
/// On gaps: gaps before point `i` keep their index, later gaps shift by
/// `l - 1`, and the `l - 1` gaps inside the cluster are new. A tube whose
/// cluster contains point `i` (i.e. holds gap `i - 1` or gap `i`) grows by
/// the whole cluster; the cluster itself is a tube when `l ≥ 2`.
pub fn compose_w(m: &CyclicTubing, y: &Bracketing, i: usize) -> Result<CyclicTubing> {
    let (k, l) = (m.n, y.n);
    check_index(i, k)?;
    if l == 0 {
        return Err(Error::Unsupported("composition with K0".into()));
    }
    let n = k + l - 1;
    check_n(n)?;
    let before = if i == 1 { k - 1 } else { i - 2 };
    let at = i - 1;
    let cluster = ones(l - 1) << (i - 1);
    let map = |t: u64| {
        let low = t & ones(i - 1);
        let high = (t >> (i - 1)) << (i - 1 + l - 1);
        let touches = (t >> before & 1) | (t >> at & 1) == 1;
        low | high | if touches { cluster } else { 0 }
    };
    let mut tubes: BTreeSet<u64> = m.tubes.iter().map(|&t| map(t)).collect();
    tubes.extend(y.brackets.iter().map(|&b| (b & (b >> 1)) << (i - 1)));
    if l >= 2 {
        tubes.insert(cluster);
    }
    CyclicTubing::new(n, tubes)
}

/// `f1 ≤ f2` in the face poset: `f2`'s sets are among `f1`'s.
pub fn face_leq_k(f1: &Bracketing, f2: &Bracketing) -> Result<bool> {
    if f1.n != f2.n {
        return Err(Error::ArityMismatch { expected: f1.n, got: f2.n });
    }
    Ok(f2.brackets.is_subset(&f1.brackets))
}

pub fn face_leq_w(f1: &CyclicTubing, f2: &CyclicTubing) -> Result<bool> {
    if f1.n != f2.n {
        return Err(Error::ArityMismatch { expected: f1.n, got: f2.n });
    }
    Ok(f2.tubes.is_subset(&f1.tubes))
}

/// The associahedra as a (non-symmetric) operad on faces.
#[derive(Debug, Clone, Copy, Default)]
pub struct AssociahedronFaces;

impl Operad for AssociahedronFaces {
    type Elem = Bracketing;

    fn name(&self) -> String {
        "associahedron faces".into()
    }

    fn arity(&self, x: &Bracketing) -> usize {
        x.n
    }

    fn compose(&self, x: &Bracketing, y: &Bracketing, i: usize) -> Result<Bracketing> {
        compose_k(x, y, i)
    }

    fn unit(&self) -> Bracketing {
        Bracketing::top(1)
    }

    fn distance(&self, a: &Bracketing, b: &Bracketing) -> f64 {
        if a == b {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Cyclohedron faces as a right module over [`AssociahedronFaces`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CyclohedronFaces {
    base: AssociahedronFaces,
}

impl RightModule for CyclohedronFaces {
    type Base = AssociahedronFaces;
    type Elem = CyclicTubing;

    fn name(&self) -> String {
        "cyclohedron faces over associahedron faces".into()
    }

    fn base(&self) -> &AssociahedronFaces {
        &self.base
    }

    fn arity(&self, m: &CyclicTubing) -> usize {
        m.n
    }

    fn compose(&self, m: &CyclicTubing, y: &Bracketing, i: usize) -> Result<CyclicTubing> {
        compose_w(m, y, i)
    }

    fn distance(&self, a: &CyclicTubing, b: &CyclicTubing) -> f64 {
        if a == b {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceKind {
    K,
    W,
}

/// JSON face format `{"kind": "K" | "W", "n": …, "sets": [[…], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub kind: FaceKind,
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

/// A parsed face of either family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Face {
    K(Bracketing),
    W(CyclicTubing),
}

impl Face {
    pub fn dimension(&self) -> usize {
        match self {
            Face::K(b) => b.dimension(),
            Face::W(t) => t.dimension(),
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::K(b) => b.fmt(f),
            Face::W(t) => t.fmt(f),
        }
    }
}

impl TryFrom<FaceJson> for Face {
    type Error = Error;
    fn try_from(j: FaceJson) -> Result<Self> {
        match j.kind {
            FaceKind::K => Bracketing::from_sets(j.n, &j.sets).map(Face::K),
            FaceKind::W => CyclicTubing::from_sets(j.n, &j.sets).map(Face::W),
        }
    }
}

impl From<&Face> for FaceJson {
    fn from(f: &Face) -> Self {
        match f {
            Face::K(b) => FaceJson { kind: FaceKind::K, n: b.n, sets: b.sets() },
            Face::W(t) => FaceJson { kind: FaceKind::W, n: t.n, sets: t.sets() },
        }
    }
}
