//! Elements of the symmetric groups Σₙ.
//!
//! A permutation acts on lists from the left: `σ·(x₁,…,xₙ)` puts item `j` at
//! position `σ(j)`. With `στ = σ∘τ` this is a left action,
//! `(στ)·x = σ·(τ·x)`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1, …, n}` stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n {
                return Err(Error::InvalidPermutation(format!("image {x} outside 1..{n}")));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The cyclic shift `j ↦ j + r (mod n)`, an element of ℤₙ ⊂ Σₙ.
    pub fn cyclic(n: usize, r: usize) -> Self {
        Self { images: (0..n).map(|j| (j + r) % n.max(1) + 1).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        crate::error::check_index(a, n)?;
        crate::error::check_index(b, n)?;
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        for j in (1..n).rev() {
            let k = rng.gen_range(0..=j);
            images.swap(j, k);
        }
        Self { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `σ(j)` for `j ∈ 1..=n`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| x == j + 1)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::ArityMismatch { expected: self.size(), got: other.size() });
        }
        Ok(Permutation { images: other.images.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x - 1] = j + 1;
        }
        Permutation { images }
    }

    /// Left action on a list: item `j` moves to position `σ(j)`.
    pub fn act<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.size() {
            return Err(Error::ArityMismatch { expected: self.size(), got: items.len() });
        }
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (j, item) in items.iter().enumerate() {
            out[self.images[j] - 1] = Some(item.clone());
        }
        Ok(out.into_iter().map(|x| x.expect("bijection")).collect())
    }

    /// The block permutation `σ ∘ᵢ τ` in Σ_{k+l-1}.
    ///
    /// It satisfies `(σ·x) ∘_{σ(i)} (τ·y) = (σ ∘ᵢ τ)·(x ∘ᵢ y)` for any
    /// symmetric operad, where the block of `y` sits at positions `i..i+l-1`.
    pub fn block_compose(&self, tau: &Permutation, i: usize) -> Result<Permutation> {
        let k = self.size();
        let l = tau.size();
        crate::error::check_index(i, k)?;
        let target = self.apply(i);
        let shift = |p: usize| if p < target { p } else { p + l - 1 };
        let mut images = Vec::with_capacity(k + l - 1);
        for j in 1..i {
            images.push(shift(self.apply(j)));
        }
        for r in 1..=l {
            images.push(target - 1 + tau.apply(r));
        }
        for j in i + 1..=k {
            images.push(shift(self.apply(j)));
        }
        Permutation::new(images)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, x) in self.images.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}
