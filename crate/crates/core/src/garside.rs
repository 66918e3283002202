//! Garside left normal form in `B_m`.
//!
//! Every braid is written uniquely as `Δ^p · A_1 ⋯ A_r` where each `A_i` is a
//! permutation braid other than `1` and `Δ`, and every adjacent pair is
//! left-weighted: the starting set of `A_{i+1}` lies inside the finishing set
//! of `A_i`. Permutation braids are stored by their permutation, which
//! determines them.
//!
//! With `perm(σ_i) = (i i+1)` and `perm(xy) = perm(x) ∘ perm(y)`:
//! `i` starts a simple element `A` iff `A⁻¹(i) > A⁻¹(i+1)`, and `i` finishes
//! `A` iff `A(i) > A(i+1)`.

use std::fmt;

use crate::braid::BraidWord;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    strands: usize,
    delta_power: i64,
    factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn identity(strands: usize) -> Self {
        NormalForm { strands, delta_power: 0, factors: Vec::new() }
    }

    pub fn from_word(word: &BraidWord) -> Self {
        let m = word.strands();
        // Runs of same-sign letters are merged into permutation braids; a
        // negative run is stored as the simple element it inverts.
        let mut items: Vec<(Permutation, bool)> = Vec::new();
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let negative = l < 0;
            if let Some((p, inv)) = items.last_mut() {
                if *inv == negative {
                    if !negative && p.raw()[i] < p.raw()[i + 1] {
                        p.swap_positions(i);
                        continue;
                    }
                    if negative {
                        let raw = p.raw();
                        let at = |v: usize| raw.iter().position(|&x| x as usize == v);
                        if at(i) < at(i + 1) {
                            p.swap_values(i);
                            continue;
                        }
                    }
                }
            }
            let mut p = Permutation::identity(m);
            p.swap_positions(i);
            items.push((p, negative));
        }
        Self::from_signed_simples(m, items)
    }

    /// Normal form of `∏ A_j^{±1}` over permutation braids `A_j`, flagged
    /// `true` when inverted. Each `A⁻¹` is rewritten as `Δ⁻¹ (Δ A⁻¹)` and the
    /// `Δ⁻¹`s are collected at the front, conjugating the simples they pass.
    fn from_signed_simples(strands: usize, items: Vec<(Permutation, bool)>) -> Self {
        let inverses = items.iter().filter(|(_, inv)| *inv).count() as i64;
        let delta = Permutation::reversal(strands);
        let mut nf = NormalForm { strands, delta_power: -inverses, factors: Vec::new() };
        let mut remaining = inverses;
        for (p, inv) in items {
            let simple = if inv {
                remaining -= 1;
                delta.compose(&p.inverse())
            } else {
                p
            };
            nf.mul_simple(if remaining % 2 == 1 { flip(&simple) } else { simple });
        }
        nf
    }

    /// Rebuilds a normal form from its parts, checking every invariant.
    pub fn from_parts(strands: usize, delta_power: i64, factors: Vec<Permutation>) -> Option<Self> {
        let nf = NormalForm { strands, delta_power, factors };
        let delta = Permutation::reversal(strands);
        let ok = nf.factors.iter().all(|f| f.degree() == strands && !f.is_identity() && *f != delta)
            && nf.is_left_weighted();
        ok.then_some(nf)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Infimum: the exponent of Δ.
    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Every adjacent pair of canonical factors is left-weighted.
    pub fn is_left_weighted(&self) -> bool {
        self.factors.windows(2).all(|w| {
            let (a, b) = (w[0].raw(), w[1].inverse());
            let b = b.raw();
            (0..self.strands.saturating_sub(1)).all(|i| !(b[i] > b[i + 1]) || a[i] > a[i + 1])
        })
    }

    /// Right multiplication by the permutation braid of `simple`.
    fn mul_simple(&mut self, simple: Permutation) {
        if simple.is_identity() {
            return;
        }
        if simple.raw().iter().enumerate().all(|(i, &v)| v as usize == self.strands - 1 - i) {
            self.mul_delta_power(1);
            return;
        }
        self.factors.push(simple);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (left, right) = self.factors.split_at_mut(j);
            if !make_left_weighted(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        let leading = self
            .factors
            .iter()
            .take_while(|f| f.raw().iter().enumerate().all(|(i, &v)| v as usize == self.strands - 1 - i))
            .count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.delta_power += leading as i64;
        }
        while self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
    }

    /// Right multiplication by `Δ^q`, via `X Δ = Δ τ(X)`.
    fn mul_delta_power(&mut self, q: i64) {
        self.delta_power += q;
        if q % 2 != 0 {
            for f in &mut self.factors {
                *f = flip(f);
            }
        }
    }

    /// Normal form of `self · other`.
    pub fn multiply(&self, other: &NormalForm) -> NormalForm {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut out = self.clone();
        out.mul_delta_power(other.delta_power);
        for f in &other.factors {
            out.mul_simple(f.clone());
        }
        out
    }

    pub fn inverse(&self) -> NormalForm {
        let items = self.factors.iter().rev().map(|f| (f.clone(), true)).collect();
        let mut out = Self::from_signed_simples(self.strands, items);
        out.mul_delta_power(-self.delta_power);
        out
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &NormalForm) -> NormalForm {
        c.multiply(self).multiply(&c.inverse())
    }

    /// A word for the braid. Positive infimum gives `Δ^p A_1 ⋯ A_r`; a
    /// negative one is spelled with the left complements
    /// `Δ^{-k} A_1 ⋯ A_k = ∏_j (∂ τ^{k−j}(A_j))⁻¹`, where `∂A = A⁻¹Δ`,
    /// which is much shorter than writing `Δ⁻¹` out.
    pub fn to_word(&self) -> BraidWord {
        let m = self.strands;
        let delta = Permutation::reversal(m);
        let mut letters = Vec::new();
        let mut rest: &[Permutation] = &self.factors;
        if self.delta_power >= 0 {
            let delta_word = positive_word(&delta);
            for _ in 0..self.delta_power {
                letters.extend_from_slice(&delta_word);
            }
        } else {
            let k = self.delta_power.unsigned_abs() as usize;
            let paired = k.min(rest.len());
            // Unpaired Δ⁻¹s come first: Δ^{-k} = Δ^{-(k-paired)} Δ^{-paired}.
            let inv_delta: Vec<i32> = positive_word(&delta).iter().rev().map(|&l| -l).collect();
            for _ in paired..k {
                letters.extend_from_slice(&inv_delta);
            }
            for (j, a) in rest[..paired].iter().enumerate() {
                let shift = paired - 1 - j;
                let a = if shift % 2 == 1 { flip(a) } else { a.clone() };
                let complement = a.inverse().compose(&delta);
                letters.extend(positive_word(&complement).iter().rev().map(|&l| -l));
            }
            rest = &rest[paired..];
        }
        for f in rest {
            letters.extend(positive_word(f));
        }
        BraidWord::from_letters_unchecked(m, letters).freely_reduced()
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = if self.delta_power % 2 == 0 {
            Permutation::identity(self.strands)
        } else {
            Permutation::reversal(self.strands)
        };
        for f in &self.factors {
            p = p.compose(f);
        }
        p
    }

    /// Text form: `strands`, `delta`, then one `factor` line per canonical factor.
    pub fn to_text(&self) -> String {
        let mut out = format!("strands {}\ndelta {}\n", self.strands, self.delta_power);
        for f in &self.factors {
            out.push_str(&format!("factor {f}\n"));
        }
        out
    }
}

/// Conjugation by Δ: `σ_i ↦ σ_{m−i}`.
fn flip(p: &Permutation) -> Permutation {
    let raw = p.raw();
    let n = raw.len() as u8;
    Permutation::from_raw(raw.iter().rev().map(|&v| n - 1 - v).collect())
}

/// Moves generators from the front of `b` to the back of `a` until the pair is
/// left-weighted. Returns whether anything moved.
fn make_left_weighted(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.degree();
    let mut bi = [0u8; 256];
    for (j, &v) in b.raw().iter().enumerate() {
        bi[v as usize] = j as u8;
    }
    let mut changed = false;
    loop {
        let ar = a.raw();
        let Some(i) = (0..n - 1).find(|&i| bi[i] > bi[i + 1] && ar[i] < ar[i + 1]) else {
            return changed;
        };
        a.swap_positions(i);
        b.swap_values(i);
        bi.swap(i, i + 1);
        changed = true;
    }
}

/// A reduced positive word for the permutation braid of `p`.
fn positive_word(p: &Permutation) -> Vec<i32> {
    let mut q = p.clone();
    let mut rev = Vec::with_capacity(q.length());
    while let Some(i) = (0..q.degree().saturating_sub(1)).find(|&i| q.raw()[i] > q.raw()[i + 1]) {
        q.swap_positions(i);
        rev.push(i as i32 + 1);
    }
    rev.reverse();
    rev
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NF(B{}; Δ^{}", self.strands, self.delta_power)?;
        for p in &self.factors {
            write!(f, " [{p}]")?;
        }
        f.write_str(")")
    }
}
