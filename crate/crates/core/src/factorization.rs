//! Positive factorizations of `Δ²` and the Hurwitz moves acting on them.
//!
//! A factor is stored structurally as `conjugator · core · conjugator⁻¹`,
//! where the core is a positive power of a half-twist, the full twist of a
//! block of consecutive strands, or (only through an explicit unchecked
//! constructor) an arbitrary word. Factors multiply left to right: factor 1
//! is leftmost in the product.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{full_twist, BraidWord, HalfTwist};
use crate::error::{Error, ParseError, Result};
use crate::garside::NormalForm;
use crate::perm::Permutation;
use crate::text;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorCore {
    /// `base^exponent`, exponent ≥ 1.
    Twist { base: HalfTwist, exponent: u32 },
    /// Δ² on the strands `block.low()..=block.high()`.
    BlockTwist { block: HalfTwist },
    /// An arbitrary word, admitted without positivity guarantees.
    Word(BraidWord),
}

/// Singularity class carried by a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Branch,
    Node,
    Cusp,
    Tangency,
    /// A half-twist power outside `1..=4`.
    HigherPower(u32),
    /// Full twist on a block of `k` strands.
    Block(usize),
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuredFactor {
    conjugator: BraidWord,
    core: FactorCore,
}

impl StructuredFactor {
    /// `conjugator · base^exponent · conjugator⁻¹`.
    pub fn new(conjugator: BraidWord, base: HalfTwist, exponent: u32) -> Result<Self> {
        if conjugator.strands() != base.strands() {
            return Err(Error::StrandMismatch { left: conjugator.strands(), right: base.strands() });
        }
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(StructuredFactor { conjugator, core: FactorCore::Twist { base, exponent } })
    }

    /// An unconjugated half-twist power.
    pub fn twist(base: HalfTwist, exponent: u32) -> Result<Self> {
        Self::new(BraidWord::identity(base.strands()), base, exponent)
    }

    /// `conjugator · Δ²⟨block⟩ · conjugator⁻¹`.
    pub fn block_full_twist(conjugator: BraidWord, block: HalfTwist) -> Result<Self> {
        if conjugator.strands() != block.strands() {
            return Err(Error::StrandMismatch { left: conjugator.strands(), right: block.strands() });
        }
        Ok(StructuredFactor { conjugator, core: FactorCore::BlockTwist { block } })
    }

    /// Admits an arbitrary word. Such factors are flagged and carry no
    /// positivity guarantee.
    pub fn unchecked_word(conjugator: BraidWord, word: BraidWord) -> Result<Self> {
        if conjugator.strands() != word.strands() {
            return Err(Error::StrandMismatch { left: conjugator.strands(), right: word.strands() });
        }
        Ok(StructuredFactor { conjugator, core: FactorCore::Word(word) })
    }

    pub fn strands(&self) -> usize {
        self.conjugator.strands()
    }

    pub fn conjugator(&self) -> &BraidWord {
        &self.conjugator
    }

    pub fn core(&self) -> &FactorCore {
        &self.core
    }

    /// The half-twist (or block) the factor is built on, if structured.
    pub fn base(&self) -> Option<HalfTwist> {
        match &self.core {
            FactorCore::Twist { base, .. } => Some(*base),
            FactorCore::BlockTwist { block } => Some(*block),
            FactorCore::Word(_) => None,
        }
    }

    /// Exponent sum of the denoted braid: its degree.
    pub fn exponent(&self) -> i64 {
        match &self.core {
            FactorCore::Twist { exponent, .. } => *exponent as i64,
            FactorCore::BlockTwist { block } => (block.span() * (block.span() - 1)) as i64,
            FactorCore::Word(w) => w.exponent_sum(),
        }
    }

    pub fn kind(&self) -> FactorKind {
        match &self.core {
            FactorCore::Twist { exponent: 1, .. } => FactorKind::Branch,
            FactorCore::Twist { exponent: 2, .. } => FactorKind::Node,
            FactorCore::Twist { exponent: 3, .. } => FactorKind::Cusp,
            FactorCore::Twist { exponent: 4, .. } => FactorKind::Tangency,
            FactorCore::Twist { exponent, .. } => FactorKind::HigherPower(*exponent),
            FactorCore::BlockTwist { block } => FactorKind::Block(block.span()),
            FactorCore::Word(_) => FactorKind::Unchecked,
        }
    }

    /// Factors outside the curve vocabulary (branch, node, cusp, tangency,
    /// block full twist).
    pub fn is_flagged(&self) -> bool {
        matches!(self.kind(), FactorKind::HigherPower(_) | FactorKind::Unchecked)
    }

    fn core_word(&self) -> BraidWord {
        match &self.core {
            FactorCore::Twist { base, exponent } => base.word().pow(*exponent as i64),
            FactorCore::BlockTwist { block } => block.block_full_twist(),
            FactorCore::Word(w) => w.clone(),
        }
    }

    /// The denoted word, freely reduced.
    pub fn expand(&self) -> BraidWord {
        self.core_word()
            .conjugate(&self.conjugator)
            .expect("conjugator and core share a strand count")
    }

    pub fn permutation(&self) -> Permutation {
        self.expand().permutation()
    }

    /// `(exponent, cycle type)`, preserved by conjugation.
    pub fn class(&self) -> (i64, Vec<usize>) {
        (self.exponent(), self.core_word().permutation().cycle_type())
    }

    /// Same core, conjugated further by `outer`: `outer · self · outer⁻¹`.
    pub fn conjugated_by(&self, outer: &BraidWord) -> StructuredFactor {
        let conjugator = outer
            .compose(&self.conjugator)
            .expect("conjugator and core share a strand count");
        StructuredFactor { conjugator: reduce_conjugator(&conjugator), core: self.core.clone() }
    }

    fn to_line(&self) -> String {
        let conj = if self.conjugator.is_empty() {
            "conj= ;".to_string()
        } else {
            format!("conj= {} ;", self.conjugator)
        };
        match &self.core {
            FactorCore::Twist { base, exponent } => {
                format!("{conj} base= {} {} ; exp= {exponent}", base.low(), base.high())
            }
            FactorCore::BlockTwist { block } => {
                format!("{conj} base= {} {} ; exp= full", block.low(), block.high())
            }
            FactorCore::Word(w) if w.is_empty() => format!("{conj} word="),
            FactorCore::Word(w) => format!("{conj} word= {w}"),
        }
    }
}

/// Shorter of the freely reduced word and the normal-form word; ties go to
/// the normal form so that reduction is idempotent.
pub fn reduce_conjugator(c: &BraidWord) -> BraidWord {
    let free = c.freely_reduced();
    if free.is_empty() {
        return free;
    }
    let canonical = c.normal_form().to_word();
    if canonical.len() <= free.len() {
        canonical
    } else {
        free
    }
}

/// Which of the two Hurwitz moves to apply at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// `(a, b) ↦ (a b a⁻¹, a)`
    Forward,
    /// `(a, b) ↦ (b, b⁻¹ a b)`
    Inverse,
}

/// A Hurwitz move at a 1-based position `k`, acting on factors `k, k+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzMove {
    pub position: usize,
    pub kind: MoveKind,
}

impl HurwitzMove {
    pub fn inverse(self) -> HurwitzMove {
        let kind = match self.kind {
            MoveKind::Forward => MoveKind::Inverse,
            MoveKind::Inverse => MoveKind::Forward,
        };
        HurwitzMove { position: self.position, kind }
    }
}

impl fmt::Display for HurwitzMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MoveKind::Forward => write!(f, "H{}", self.position),
            MoveKind::Inverse => write!(f, "h{}", self.position),
        }
    }
}

/// Necessary conditions for Hurwitz equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmInvariants {
    pub product_nf: NormalForm,
    /// Multiset of `(exponent, cycle type)` with multiplicities.
    pub class_multiset: BTreeMap<(i64, Vec<usize>), usize>,
}

/// Tuple of factor normal forms: equal keys mean equal tuples of braids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<NormalForm>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    strands: usize,
    factors: Vec<StructuredFactor>,
}

impl Factorization {
    pub fn new(strands: usize, factors: Vec<StructuredFactor>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.strands() != strands) {
            return Err(Error::StrandMismatch { left: strands, right: f.strands() });
        }
        Ok(Factorization { strands, factors })
    }

    pub fn empty(strands: usize) -> Self {
        Factorization { strands, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[StructuredFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn into_factors(self) -> Vec<StructuredFactor> {
        self.factors
    }

    /// Sum of factor exponents.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(StructuredFactor::exponent).sum()
    }

    /// Left-to-right product of the expanded factors.
    pub fn product(&self) -> BraidWord {
        self.factors
            .iter()
            .fold(BraidWord::identity(self.strands), |acc, f| acc.compose_unchecked(&f.expand()))
    }

    /// Adjacent conjugators left by Hurwitz moves share long stretches, so the
    /// freely reduced product word is much shorter than its factors together.
    pub fn product_normal_form(&self) -> NormalForm {
        self.product().normal_form()
    }

    /// Whether the product equals `Δ²`: a necessary condition for being a
    /// braid monodromy factorization.
    pub fn is_delta2_factorization(&self) -> bool {
        match full_twist(self.strands) {
            Ok(target) => self.product_normal_form() == target.normal_form(),
            Err(_) => false,
        }
    }

    fn check_position(&self, k: usize) -> Result<()> {
        if k < 1 || k >= self.factors.len() {
            return Err(Error::MoveOutOfRange { position: k, len: self.factors.len() });
        }
        Ok(())
    }

    /// `(…, b_k, b_{k+1}, …) ↦ (…, b_k b_{k+1} b_k⁻¹, b_k, …)`, 1-based `k`.
    pub fn hurwitz_move(&self, k: usize) -> Result<Factorization> {
        self.check_position(k)?;
        let mut factors = self.factors.clone();
        let left = &self.factors[k - 1];
        let right = &self.factors[k];
        factors[k - 1] = right.conjugated_by(&left.expand());
        factors[k] = left.clone();
        Ok(Factorization { strands: self.strands, factors })
    }

    /// `(…, a_k, a_{k+1}, …) ↦ (…, a_{k+1}, a_{k+1}⁻¹ a_k a_{k+1}, …)`, 1-based `k`.
    pub fn hurwitz_move_inverse(&self, k: usize) -> Result<Factorization> {
        self.check_position(k)?;
        let mut factors = self.factors.clone();
        let left = &self.factors[k - 1];
        let right = &self.factors[k];
        factors[k - 1] = right.clone();
        factors[k] = left.conjugated_by(&right.expand().invert());
        Ok(Factorization { strands: self.strands, factors })
    }

    pub fn apply_move(&self, mv: HurwitzMove) -> Result<Factorization> {
        match mv.kind {
            MoveKind::Forward => self.hurwitz_move(mv.position),
            MoveKind::Inverse => self.hurwitz_move_inverse(mv.position),
        }
    }

    /// Applies a move sequence left to right.
    pub fn replay(&self, moves: &[HurwitzMove]) -> Result<Factorization> {
        moves.iter().try_fold(self.clone(), |f, &mv| f.apply_move(mv))
    }

    pub fn hm_invariants(&self) -> HmInvariants {
        let mut class_multiset = BTreeMap::new();
        for f in &self.factors {
            *class_multiset.entry(f.class()).or_insert(0) += 1;
        }
        HmInvariants { product_nf: self.product_normal_form(), class_multiset }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(self.factors.iter().map(|f| f.expand().normal_form()).collect())
    }

    /// Whether any factor falls outside the curve vocabulary.
    pub fn has_flagged_factors(&self) -> bool {
        self.factors.iter().any(StructuredFactor::is_flagged)
    }

    /// Text form: `strands`, `factors`, then one factor per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("strands {}\nfactors {}\n", self.strands, self.factors.len());
        for f in &self.factors {
            out.push_str(&f.to_line());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<Factorization, ParseError> {
        let mut lines = text::content_lines(input);
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "missing `strands <m>` header"))?;
        let strands = text::parse_header(ln, line, "strands")?;
        if strands == 0 {
            return Err(ParseError::new(ln, 1, "strand count must be positive"));
        }
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(ln + 1, 1, "missing `factors <n>` header"))?;
        let count = text::parse_header(ln, line, "factors")?;
        let mut factors = Vec::with_capacity(count);
        let mut last = ln;
        for (ln, line) in lines {
            if factors.len() == count {
                return Err(ParseError::new(ln, 1, format!("more than the declared {count} factors")));
            }
            factors.push(parse_factor_line(ln, line, strands)?);
            last = ln;
        }
        if factors.len() != count {
            return Err(ParseError::new(
                last + 1,
                1,
                format!("expected {count} factors, found {}", factors.len()),
            ));
        }
        Ok(Factorization { strands, factors })
    }
}

/// Splits `key= value ; key= value` into `(column, key, value, value column)`.
fn fields(line: &str) -> Vec<(usize, &str, &str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in line.split(';') {
        let lead = part.len() - part.trim_start().len();
        let body = part.trim();
        let col = start + lead + 1;
        match body.find('=') {
            Some(eq) => {
                let value_raw = &body[eq + 1..];
                let value_lead = value_raw.len() - value_raw.trim_start().len();
                out.push((col, body[..eq].trim(), value_raw.trim(), col + eq + 1 + value_lead));
            }
            None => out.push((col, body, "", col)),
        }
        start += part.len() + 1;
    }
    out
}

fn parse_factor_line(ln: usize, line: &str, strands: usize) -> Result<StructuredFactor, ParseError> {
    let parts = fields(line);
    let err = |col: usize, msg: String| ParseError::new(ln, col, msg);
    let (col, key, value, vcol) = parts[0];
    if key != "conj" {
        return Err(err(col, format!("expected `conj=`, found `{key}`")));
    }
    let conjugator = parse_word_field(ln, vcol, value, strands)?;
    let Some(&(col, key, value, vcol)) = parts.get(1) else {
        return Err(err(line.len() + 1, "expected `; base=` or `; word=`".into()));
    };
    let factor = match key {
        "word" => {
            if let Some(&(col, key, ..)) = parts.get(2) {
                return Err(err(col, format!("unexpected field `{key}`")));
            }
            let word = parse_word_field(ln, vcol, value, strands)?;
            StructuredFactor::unchecked_word(conjugator, word).expect("strands checked")
        }
        "base" => {
            let nums: Vec<(usize, &str)> = text::tokens(value).map(|(c, t)| (c + vcol - 1, t)).collect();
            if nums.len() != 2 {
                return Err(err(vcol, "expected `base= <a> <b>`".into()));
            }
            let mut ends = [0usize; 2];
            for (slot, (c, t)) in ends.iter_mut().zip(&nums) {
                *slot = t.parse().map_err(|_| err(*c, format!("invalid strand index `{t}`")))?;
            }
            let base = HalfTwist::new(strands, ends[0], ends[1])
                .map_err(|e| err(vcol, e.to_string()))?;
            let Some(&(col, key, value, vcol)) = parts.get(2) else {
                return Err(err(line.len() + 1, "expected `; exp=`".into()));
            };
            if key != "exp" {
                return Err(err(col, format!("expected `exp=`, found `{key}`")));
            }
            if let Some(&(col, key, ..)) = parts.get(3) {
                return Err(err(col, format!("unexpected field `{key}`")));
            }
            if value == "full" {
                StructuredFactor::block_full_twist(conjugator, base).expect("strands checked")
            } else {
                let e: u32 = value
                    .parse()
                    .ok()
                    .filter(|&e| e > 0)
                    .ok_or_else(|| err(vcol, format!("invalid exponent `{value}`")))?;
                StructuredFactor::new(conjugator, base, e).expect("strands checked")
            }
        }
        _ => return Err(err(col, format!("expected `base=` or `word=`, found `{key}`"))),
    };
    Ok(factor)
}

fn parse_word_field(ln: usize, vcol: usize, value: &str, strands: usize) -> Result<BraidWord, ParseError> {
    let mut letters = Vec::new();
    for (c, tok) in text::tokens(value) {
        letters.push(
            crate::braid::parse_letter(tok, strands).map_err(|m| ParseError::new(ln, vcol + c - 1, m))?,
        );
    }
    Ok(BraidWord::new(strands, letters).expect("letters validated"))
}
