//! Braid words in the Artin generators of `B_m`.
//!
//! A letter `k > 0` is `σ_k`, the positive half-twist of adjacent strands
//! `k, k+1`; a letter `-k` is its inverse. Words compose left to right.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::garside::NormalForm;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Checks every letter against the strand count. The word is kept as given.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { needed: 1, got: 0 });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub(crate) fn from_letters_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// `σ_k`, or `σ_k⁻¹` for negative `k`.
    pub fn generator(strands: usize, k: i32) -> Result<Self> {
        Self::new(strands, vec![k])
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    fn check_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(())
    }

    /// Cancels adjacent `σ_k σ_k⁻¹` pairs until none remain.
    pub fn freely_reduced(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce(self.letters.iter().copied()) }
    }

    /// Concatenation `self · other`, freely reduced.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_strands(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &BraidWord) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: free_reduce(self.letters.iter().chain(other.letters.iter()).copied()),
        }
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `c · self · c⁻¹`, freely reduced.
    pub fn conjugate(&self, c: &BraidWord) -> Result<BraidWord> {
        self.check_strands(c)?;
        Ok(c.compose_unchecked(self).compose_unchecked(&c.invert()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters: free_reduce(letters.into_iter()) }
    }

    /// Image in `S_m`; `σ_k` maps to the transposition `(k k+1)`.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            p.swap_positions(l.unsigned_abs() as usize - 1);
        }
        p
    }

    /// Sum of letter signs: the abelianization `B_m → Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn normal_form(&self) -> NormalForm {
        NormalForm::from_word(self)
    }

    /// Word problem: equality as braids, decided by normal forms.
    pub fn equals(&self, other: &BraidWord) -> Result<bool> {
        self.check_strands(other)?;
        Ok(self.normal_form() == other.normal_form())
    }

    /// Re-reads the word in `B_strands` with every index shifted by `offset`.
    pub fn embed(&self, strands: usize, offset: usize) -> Result<BraidWord> {
        let letters = self
            .letters
            .iter()
            .map(|&l| l.signum() * (l.abs() + offset as i32))
            .collect();
        BraidWord::new(strands, letters)
    }

    /// Text form with header: `strands <m>` then the tokens on one line.
    pub fn to_text(&self) -> String {
        format!("strands {}\n{}\n", self.strands, self)
    }

    /// Parses the `strands <m>` header followed by any number of token lines.
    pub fn parse_text(text: &str) -> Result<BraidWord, ParseError> {
        let mut lines = crate::text::content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "missing `strands <m>` header"))?;
        let strands = crate::text::parse_header(ln, header, "strands")?;
        if strands == 0 {
            return Err(ParseError::new(ln, 1, "strand count must be positive"));
        }
        let mut letters = Vec::new();
        for (ln, line) in lines {
            for (col, tok) in crate::text::tokens(line) {
                letters.push(parse_letter(tok, strands).map_err(|m| ParseError::new(ln, col, m))?);
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated `s<k>`/`S<k>` tokens with a known strand count.
    pub fn parse_tokens(strands: usize, tokens: &str) -> Result<BraidWord, String> {
        let letters = tokens
            .split_whitespace()
            .map(|tok| parse_letter(tok, strands))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BraidWord { strands, letters })
    }
}

pub(crate) fn parse_letter(tok: &str, strands: usize) -> Result<i32, String> {
    let (sign, digits) = match tok.as_bytes().first() {
        Some(b's') => (1, &tok[1..]),
        Some(b'S') => (-1, &tok[1..]),
        _ => return Err(format!("expected s<k> or S<k>, found `{tok}`")),
    };
    let k: i32 = digits.parse().map_err(|_| format!("bad generator index in `{tok}`"))?;
    if k < 1 || k as usize >= strands {
        return Err(format!("generator `{tok}` out of range for {strands} strands"));
    }
    Ok(sign * k)
}

fn free_reduce(letters: impl Iterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "S{}", -l)?;
            }
        }
        Ok(())
    }
}

/// A positive half-twist exchanging strands `low` and `high` of `B_strands`
/// along the band passing below the strands in between.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfTwist {
    strands: usize,
    low: usize,
    high: usize,
}

impl HalfTwist {
    pub fn new(strands: usize, low: usize, high: usize) -> Result<Self> {
        if low < 1 || low >= high || high > strands {
            return Err(Error::InvalidHalfTwist { strands, low, high });
        }
        Ok(HalfTwist { strands, low, high })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn low(&self) -> usize {
        self.low
    }

    pub fn high(&self) -> usize {
        self.high
    }

    /// Number of strands in the band `low..=high`.
    pub fn span(&self) -> usize {
        self.high - self.low + 1
    }

    /// `(σ_{b−1}⋯σ_{a+1}) σ_a (σ_{b−1}⋯σ_{a+1})⁻¹` for the band `[a, b]`.
    pub fn word(&self) -> BraidWord {
        let (a, b) = (self.low as i32, self.high as i32);
        let mut letters = Vec::with_capacity(2 * (b - a) as usize - 1);
        letters.extend((a + 1..b).rev());
        letters.push(a);
        letters.extend((a + 1..b).map(|k| -k));
        BraidWord { strands: self.strands, letters }
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::transposition(self.strands, self.low, self.high)
    }

    /// Δ restricted to the block `low..=high`: the half-twist of the whole block.
    pub fn block_delta(&self) -> BraidWord {
        let letters = delta_letters(self.span())
            .into_iter()
            .map(|l| l + self.low as i32 - 1)
            .collect();
        BraidWord { strands: self.strands, letters }
    }

    /// Δ² restricted to the block `low..=high`.
    pub fn block_full_twist(&self) -> BraidWord {
        self.block_delta().pow(2)
    }
}

/// `(σ1)(σ2σ1)⋯(σ_{m−1}⋯σ1)`.
fn delta_letters(m: usize) -> Vec<i32> {
    let mut letters = Vec::with_capacity(m * (m - 1) / 2);
    for top in 1..m as i32 {
        letters.extend((1..=top).rev());
    }
    letters
}

/// Garside element Δ of `B_m`.
pub fn delta(m: usize) -> Result<BraidWord> {
    if m < 1 {
        return Err(Error::TooFewStrands { needed: 1, got: m });
    }
    Ok(BraidWord { strands: m, letters: delta_letters(m) })
}

/// Δ², the generator of the center of `B_m`.
pub fn full_twist(m: usize) -> Result<BraidWord> {
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    Ok(delta(m)?.pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(m, letters.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(w(2, &[1]).compose(&w(2, &[-1])).unwrap().is_empty());
        assert_eq!(w(3, &[1, 2]).compose(&w(3, &[1])).unwrap(), w(3, &[1, 2, 1]));
        assert_eq!(BraidWord::identity(3).compose(&w(3, &[2])).unwrap(), w(3, &[2]));
        assert!(matches!(
            w(3, &[1]).compose(&w(4, &[1])),
            Err(Error::StrandMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(3, &[1, 2]).invert(), w(3, &[-2, -1]));
        assert!(BraidWord::identity(3).invert().is_empty());
        assert_eq!(w(2, &[-1]).invert(), w(2, &[1]));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w(3, &[1]).permutation().images(), vec![2, 1, 3]);
        assert!(full_twist(3).unwrap().permutation().is_identity());
        // 1 → 2 → 3 → 1
        assert_eq!(w(3, &[1, 2]).permutation().images(), vec![2, 3, 1]);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w(3, &[1, 2, -1]).exponent_sum(), 1);
        for m in 2..8 {
            assert_eq!(full_twist(m).unwrap().exponent_sum(), (m * (m - 1)) as i64);
        }
        assert_eq!(w(3, &[1, 2, 1, 2, 1, 2]).exponent_sum(), 6);
    }

    #[test]
    fn half_twist_words() {
        assert_eq!(HalfTwist::new(2, 1, 2).unwrap().word(), w(2, &[1]));
        assert_eq!(HalfTwist::new(3, 1, 3).unwrap().word(), w(3, &[2, 1, -2]));
        let h = HalfTwist::new(6, 2, 5).unwrap();
        assert_eq!(h.word().permutation(), Permutation::transposition(6, 2, 5));
        assert_eq!(h.word().exponent_sum(), 1);
        assert!(HalfTwist::new(3, 2, 2).is_err());
        assert!(HalfTwist::new(3, 0, 2).is_err());
        assert!(HalfTwist::new(3, 1, 4).is_err());
    }

    #[test]
    fn full_twist_examples() {
        assert_eq!(full_twist(2).unwrap(), w(2, &[1, 1]));
        assert!(full_twist(3).unwrap().equals(&w(3, &[1, 2, 1, 2, 1, 2])).unwrap());
        assert_eq!(full_twist(4).unwrap().exponent_sum(), 12);
        assert!(matches!(full_twist(1), Err(Error::TooFewStrands { .. })));
    }

    #[test]
    fn block_delta_is_shifted_delta() {
        let h = HalfTwist::new(5, 2, 4).unwrap();
        assert_eq!(h.block_delta(), w(5, &[2, 3, 2]));
        assert_eq!(h.block_full_twist().exponent_sum(), 6);
        assert_eq!(HalfTwist::new(4, 3, 4).unwrap().block_delta(), w(4, &[3]));
    }

    #[test]
    fn half_twist_is_positive_conjugate_of_first_generator() {
        // σ_{i+1} = (σ_i σ_{i+1}) σ_i (σ_i σ_{i+1})⁻¹, and the band word is
        // (σ_{b−1}⋯σ_{a+1}) σ_a (⋯)⁻¹.
        for m in 2..7 {
            for a in 1..m {
                for b in a + 1..=m {
                    let mut conj: Vec<i32> = ((a + 1) as i32..b as i32).rev().collect();
                    for i in (1..a as i32).rev() {
                        conj.push(i);
                        conj.push(i + 1);
                    }
                    let c = w(m, &conj);
                    let expected = w(m, &[1]).conjugate(&c).unwrap();
                    let h = HalfTwist::new(m, a, b).unwrap();
                    assert!(h.word().equals(&expected).unwrap(), "m={m} [{a},{b}]");
                }
            }
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let word = BraidWord::parse_text("strands 3\ns1 s2 S1\n").unwrap();
        assert_eq!(word, w(3, &[1, 2, -1]));
        assert_eq!(BraidWord::parse_text(&word.to_text()).unwrap(), word);
        let err = BraidWord::parse_text("strands 3\ns1 s3\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        let err = BraidWord::parse_text("strand 3\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));
    }
}
