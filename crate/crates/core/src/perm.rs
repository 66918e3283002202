//! Permutations of `{1..m}`, the symmetric-group shadow of a braid.
//!
//! Images are stored 0-based; `Display` and the public accessors use the
//! 1-based labels of fiber positions. Composition follows function
//! composition: `(p ∘ q)(j) = p(q(j))`, so the projection from braids is a
//! homomorphism with `perm(w1 · w2) = perm(w1) ∘ perm(w2)`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        assert!(m <= u8::MAX as usize, "at most 255 strands are supported");
        Permutation { images: (0..m as u8).collect() }
    }

    /// The order-reversing permutation `j ↦ m+1−j`, image of Δ.
    pub fn reversal(m: usize) -> Self {
        assert!(m <= u8::MAX as usize, "at most 255 strands are supported");
        Permutation { images: (0..m as u8).rev().collect() }
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// Builds a permutation from 1-based images; `None` unless it is a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let m = images.len();
        if m > u8::MAX as usize {
            return None;
        }
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &v in images {
            if v == 0 || v > m || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
            out.push((v - 1) as u8);
        }
        Some(Permutation { images: out.into() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1] as usize + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv.into() }
    }

    /// Right multiplication by the adjacent transposition `(i i+1)`, 0-based `i`.
    /// From 0-based images already known to form a bijection.
    pub(crate) fn from_raw(images: Box<[u8]>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        });
        Permutation { images }
    }

    pub(crate) fn swap_positions(&mut self, i: usize) {
        self.images.swap(i, i + 1);
    }

    /// Left multiplication by the adjacent transposition `(i i+1)`, 0-based `i`.
    pub(crate) fn swap_values(&mut self, i: usize) {
        let (a, b) = (i as u8, i as u8 + 1);
        for v in self.images.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images = self.images();
        for (i, v) in images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
