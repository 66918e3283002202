//! Presentations of the fundamental group of the complement from a
//! factorization, through the right Artin action of `B_m` on the free group.
//!
//! `σ_k` acts by `x_k ↦ x_k x_{k+1} x_k⁻¹`, `x_{k+1} ↦ x_k` and fixes the other
//! generators; a word acts letter by letter from the left, so
//! `x·(ab) = (x·a)·b`. The product `x_1 ⋯ x_m` is fixed by every braid, and
//! `x_i · w` abelianizes to `x_{π⁻¹(i)}` with `π` the permutation of `w`.

use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, ParseError, Result};
use crate::factorization::{FactorKind, Factorization};
use crate::snf;
use crate::text;

/// A freely reduced word in `x_1, …, x_m`; `k` is `x_k`, `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    generators: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    /// Validates and freely reduces.
    pub fn new(generators: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > generators {
                return Err(Error::FreeGeneratorOutOfRange { index: l.unsigned_abs() as usize, generators });
            }
        }
        let mut w = FreeWord { generators, letters: Vec::with_capacity(letters.len()) };
        w.push_all(&letters);
        Ok(w)
    }

    pub fn identity(generators: usize) -> Self {
        FreeWord { generators, letters: Vec::new() }
    }

    pub fn generator(generators: usize, i: usize) -> Result<Self> {
        Self::new(generators, vec![i as i32])
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push_all(&mut self, letters: &[i32]) {
        for &l in letters {
            if self.letters.last() == Some(&-l) {
                self.letters.pop();
            } else {
                self.letters.push(l);
            }
        }
    }

    /// Concatenation, freely reduced.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.push_all(&other.letters);
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { generators: self.generators, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    /// Exponent sum of each generator.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.generators];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    pub fn parse_tokens(generators: usize, line: &str) -> Result<FreeWord, (usize, String)> {
        let mut letters = Vec::new();
        for (col, tok) in text::tokens(line) {
            letters.push(parse_free_letter(tok, generators).map_err(|e| (col, e))?);
        }
        Ok(FreeWord::new(generators, letters).expect("letters validated"))
    }
}

fn parse_free_letter(tok: &str, generators: usize) -> Result<i32, String> {
    let (sign, rest) = match tok.as_bytes().first() {
        Some(b'x') => (1, &tok[1..]),
        Some(b'X') => (-1, &tok[1..]),
        _ => return Err(format!("expected `x<k>` or `X<k>`, found `{tok}`")),
    };
    match rest.parse::<usize>() {
        Ok(k) if (1..=generators).contains(&k) => Ok(sign * k as i32),
        Ok(k) => Err(format!("generator x{k} out of range 1..={generators}")),
        Err(_) => Err(format!("invalid generator `{tok}`")),
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if l > 0 { 'x' } else { 'X' }, l.unsigned_abs())?;
        }
        Ok(())
    }
}

/// Images `x_1 · w, …, x_m · w`.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let m = w.strands();
    let mut img: Vec<FreeWord> = (1..=m).map(|i| FreeWord { generators: m, letters: vec![i as i32] }).collect();
    // φ_{l·w'} = φ_{w'} ∘ φ_l: fold letters in from the right.
    for &l in w.letters().iter().rev() {
        let k = l.unsigned_abs() as usize - 1;
        let (a, b) = (img[k].clone(), img[k + 1].clone());
        if l > 0 {
            img[k] = a.mul(&b).mul(&a.inverse());
            img[k + 1] = a;
        } else {
            img[k] = b.clone();
            img[k + 1] = b.inverse().mul(&a).mul(&b);
        }
    }
    img
}

/// `x_i · w`, 1-based `i`.
pub fn artin_action(w: &BraidWord, i: usize) -> Result<FreeWord> {
    if i < 1 || i > w.strands() {
        return Err(Error::FreeGeneratorOutOfRange { index: i, generators: w.strands() });
    }
    Ok(artin_images(w).swap_remove(i - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<FreeWord>,
}

/// Free rank and torsion coefficients of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank)?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, " torsion {}", t.join(" "))?;
        }
        Ok(())
    }
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<FreeWord>) -> Result<Self> {
        if let Some(r) = relators.iter().find(|r| r.generators != generators) {
            return Err(Error::StrandMismatch { left: generators, right: r.generators });
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Through the Smith normal form of the relator exponent matrix.
    pub fn abelianization(&self) -> Abelianization {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(FreeWord::abelianize).collect();
        let factors = snf::invariant_factors(&rows);
        let one = BigInt::from(1);
        Abelianization {
            rank: self.generators - factors.len(),
            torsion: factors.into_iter().filter(|d| *d != one).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generators);
        for r in &self.relators {
            out.push_str(&format!("{r}\n"));
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<Presentation, ParseError> {
        let mut lines = text::content_lines(input);
        let (ln, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "missing `gens <m>` header"))?;
        let generators = text::parse_header(ln, header, "gens")?;
        let mut relators = Vec::new();
        for (ln, line) in lines {
            let r = FreeWord::parse_tokens(generators, line).map_err(|(col, e)| ParseError::new(ln, col, e))?;
            relators.push(r);
        }
        Ok(Presentation { generators, relators })
    }
}

/// Relators `(x_i · β) x_i⁻¹` for every factor `β` and every generator it
/// moves, duplicates removed, in factor order.
pub fn presentation(f: &Factorization) -> Presentation {
    let m = f.strands();
    let per_factor: Vec<Vec<FreeWord>> = f
        .factors()
        .par_iter()
        .map(|factor| {
            artin_images(&factor.expand())
                .into_iter()
                .enumerate()
                .filter_map(|(i, img)| {
                    let x = FreeWord { generators: m, letters: vec![i as i32 + 1] };
                    (img != x).then(|| img.mul(&x.inverse()))
                })
                .collect()
        })
        .collect();
    let relators: IndexSet<FreeWord> = per_factor.into_iter().flatten().collect();
    Presentation { generators: m, relators: relators.into_iter().collect() }
}

/// Reasons the generic fixed-point relations may not describe the curve
/// complement faithfully.
pub fn presentation_warnings(f: &Factorization) -> Vec<String> {
    let mut out = Vec::new();
    if !f.is_delta2_factorization() {
        out.push("product of the factors is not the full twist".to_string());
    }
    let cusps = f.factors().iter().filter(|x| x.kind() == FactorKind::Cusp).count();
    if cusps > 0 {
        out.push(format!("{cusps} cuspidal factor(s): only the generic fixed-point relations are emitted"));
    }
    out
}
