//! Regeneration of a degenerated factorization in `B_n` into factors of the
//! regenerated branch curve in `B_{2n}`, with the global degree audit.
//!
//! Strand `j` of `B_n` becomes the pair `(j, j′) = (2j−1, 2j)`. Conjugators
//! are carried over by the 2-cable `σ_k ↦ σ_{2k} σ_{2k−1} σ_{2k+1} σ_{2k}`,
//! which moves each pair as a ribbon. For a factor on the half-twist `[i, j]`:
//!
//! | rule | input | output                                                    |
//! |------|-------|-----------------------------------------------------------|
//! | I    | `Z`   | `Z_{ij′}`, `Z_{i′j}`                                      |
//! | II   | `Z²`  | `Z²_{ij}`, `Z²_{i′j}`, `Z²_{ij′}`, `Z²_{i′j′}`            |
//! | III  | `Z⁴`  | `Z³_{ij′}` and its conjugates by `Z_{jj′}` and `Z_{jj′}⁻¹` |
//!
//! Every output inherits the cabled conjugator of its input. The local
//! conjugators of Rule III sit inside it. With half-twists banding below the
//! strands they pass, this Rule II order is the one whose output extends to
//! a factorization of `Δ²` by branch points: for two and three generic lines
//! the opposite order admits no completion at all.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::braid::{full_twist, BraidWord, HalfTwist};
use crate::error::{Error, ParseError, Result};
use crate::factorization::{Factorization, FactorCore, StructuredFactor};
use crate::garside::NormalForm;
use crate::text;

/// Strand `j` of `B_n` ↦ strands `(2j−1, 2j)` of `B_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexDoubling {
    n: usize,
}

impl IndexDoubling {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStrands { needed: 2, got: n });
        }
        Ok(IndexDoubling { n })
    }

    pub fn source_strands(&self) -> usize {
        self.n
    }

    pub fn target_strands(&self) -> usize {
        2 * self.n
    }

    pub fn map(&self, j: usize) -> (usize, usize) {
        (2 * j - 1, 2 * j)
    }

    pub fn endpoint(&self, j: usize, end: Endpoint) -> usize {
        match end {
            Endpoint::Plain => 2 * j - 1,
            Endpoint::Primed => 2 * j,
        }
    }

    /// The 2-cable of a braid word.
    pub fn cable(&self, w: &BraidWord) -> Result<BraidWord> {
        if w.strands() != self.n {
            return Err(Error::StrandMismatch { left: w.strands(), right: self.n });
        }
        let mut letters = Vec::with_capacity(4 * w.len());
        for &l in w.letters() {
            let k = 2 * l.abs();
            let block = [k, k - 1, k + 1, k];
            if l > 0 {
                letters.extend(block);
            } else {
                letters.extend(block.iter().rev().map(|&x| -x));
            }
        }
        Ok(BraidWord::from_letters_unchecked(self.target_strands(), letters))
    }
}

/// Which point of a doubled pair a half-twist ends at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    /// `j ↦ 2j − 1`
    Plain,
    /// `j′ ↦ 2j`
    Primed,
}

/// The half-twist `Z_{ij}`, `Z_{i′j}`, `Z_{ij′}` or `Z_{i′j′}` of `B_{2n}`.
pub fn double_halftwist(h: HalfTwist, low: Endpoint, high: Endpoint) -> Result<HalfTwist> {
    let d = IndexDoubling::new(h.strands())?;
    HalfTwist::new(d.target_strands(), d.endpoint(h.low(), low), d.endpoint(h.high(), high))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegenerationRule {
    /// I: a branch point becomes two.
    Branch,
    /// II: a node becomes four.
    Node,
    /// II regenerating one side only: a node becomes two.
    NodeOneSided,
    /// III: a tangency becomes three cusps.
    Tangency,
    /// Kept under index doubling.
    Pass,
}

impl RegenerationRule {
    /// The rule applied when none is assigned.
    pub fn default_for(factor: &StructuredFactor) -> Option<Self> {
        match factor.core() {
            FactorCore::Twist { exponent: 1, .. } => Some(RegenerationRule::Branch),
            FactorCore::Twist { exponent: 2, .. } => Some(RegenerationRule::Node),
            FactorCore::Twist { exponent: 4, .. } => Some(RegenerationRule::Tangency),
            _ => None,
        }
    }

    fn required_exponent(self) -> Option<u32> {
        match self {
            RegenerationRule::Branch => Some(1),
            RegenerationRule::Node | RegenerationRule::NodeOneSided => Some(2),
            RegenerationRule::Tangency => Some(4),
            RegenerationRule::Pass => None,
        }
    }
}

impl fmt::Display for RegenerationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegenerationRule::Branch => "I",
            RegenerationRule::Node => "II",
            RegenerationRule::NodeOneSided => "II-one-sided",
            RegenerationRule::Tangency => "III",
            RegenerationRule::Pass => "pass",
        })
    }
}

impl std::str::FromStr for RegenerationRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "I" => Ok(RegenerationRule::Branch),
            "II" => Ok(RegenerationRule::Node),
            "II-one-sided" => Ok(RegenerationRule::NodeOneSided),
            "III" => Ok(RegenerationRule::Tangency),
            "pass" => Ok(RegenerationRule::Pass),
            _ => Err(format!("unknown rule `{s}` (expected I, II, II-one-sided, III or pass)")),
        }
    }
}

/// Rules for some factors (1-based); the rest fall back to the exponent default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleAssignment {
    rules: BTreeMap<usize, RegenerationRule>,
}

impl RuleAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(len: usize, rule: RegenerationRule) -> Self {
        RuleAssignment { rules: (1..=len).map(|i| (i, rule)).collect() }
    }

    pub fn set(&mut self, index: usize, rule: RegenerationRule) {
        self.rules.insert(index, rule);
    }

    pub fn get(&self, index: usize) -> Option<RegenerationRule> {
        self.rules.get(&index).copied()
    }

    /// One `<index> I|II|II-one-sided|III|pass` per line.
    pub fn parse_text(input: &str) -> Result<Self, ParseError> {
        let mut out = RuleAssignment::new();
        for (ln, line) in text::content_lines(input) {
            let toks: Vec<(usize, &str)> = text::tokens(line).collect();
            if toks.len() != 2 {
                let col = toks.get(2).map_or(1, |t| t.0);
                return Err(ParseError::new(ln, col, "expected `<index> <rule>`"));
            }
            let (col, idx) = toks[0];
            let index: usize = idx
                .parse()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| ParseError::new(ln, col, format!("invalid factor index `{idx}`")))?;
            let rule = toks[1].1.parse().map_err(|e| ParseError::new(ln, toks[1].0, e))?;
            if out.rules.insert(index, rule).is_some() {
                return Err(ParseError::new(ln, col, format!("factor {index} assigned twice")));
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.rules.iter().map(|(i, r)| format!("{i} {r}\n")).collect()
    }
}

fn twist_core(f: &StructuredFactor, index: usize, want: u32) -> Result<HalfTwist> {
    match f.core() {
        FactorCore::Twist { base, exponent } if *exponent == want => Ok(*base),
        _ => Err(Error::Regeneration {
            index,
            message: format!("rule needs a half-twist of exponent {want}, found degree {}", f.exponent()),
        }),
    }
}

fn regenerate_factor(
    d: &IndexDoubling,
    f: &StructuredFactor,
    index: usize,
    rule: RegenerationRule,
) -> Result<Vec<StructuredFactor>> {
    use Endpoint::{Plain, Primed};
    let conj = d.cable(f.conjugator())?;
    let z = |base: HalfTwist, lo, hi| double_halftwist(base, lo, hi);
    let out = match rule {
        RegenerationRule::Branch => {
            let h = twist_core(f, index, 1)?;
            vec![
                StructuredFactor::new(conj.clone(), z(h, Plain, Primed)?, 1)?,
                StructuredFactor::new(conj, z(h, Primed, Plain)?, 1)?,
            ]
        }
        RegenerationRule::Node => {
            let h = twist_core(f, index, 2)?;
            [(Plain, Plain), (Primed, Plain), (Plain, Primed), (Primed, Primed)]
                .into_iter()
                .map(|(lo, hi)| StructuredFactor::new(conj.clone(), z(h, lo, hi)?, 2))
                .collect::<Result<_>>()?
        }
        RegenerationRule::NodeOneSided => {
            let h = twist_core(f, index, 2)?;
            vec![
                StructuredFactor::new(conj.clone(), z(h, Plain, Plain)?, 2)?,
                StructuredFactor::new(conj, z(h, Primed, Plain)?, 2)?,
            ]
        }
        RegenerationRule::Tangency => {
            let h = twist_core(f, index, 4)?;
            let base = z(h, Plain, Primed)?;
            let jj = HalfTwist::new(d.target_strands(), d.endpoint(h.high(), Plain), d.endpoint(h.high(), Primed))?
                .word();
            vec![
                StructuredFactor::new(conj.clone(), base, 3)?,
                StructuredFactor::new(conj.compose_unchecked(&jj), base, 3)?,
                StructuredFactor::new(conj.compose_unchecked(&jj.invert()), base, 3)?,
            ]
        }
        RegenerationRule::Pass => {
            let m = d.target_strands();
            vec![match f.core() {
                FactorCore::Twist { base, exponent } => StructuredFactor::new(
                    conj,
                    HalfTwist::new(m, 2 * base.low() - 1, 2 * base.high())?,
                    *exponent,
                )?,
                FactorCore::BlockTwist { block } => StructuredFactor::block_full_twist(
                    conj,
                    HalfTwist::new(m, 2 * block.low() - 1, 2 * block.high())?,
                )?,
                FactorCore::Word(w) => StructuredFactor::unchecked_word(conj, d.cable(w)?)?,
            }]
        }
    };
    Ok(out)
}

/// Applies the assigned (or default) rule to every factor and concatenates
/// the outputs in input order.
pub fn regenerate(f: &Factorization, rules: &RuleAssignment) -> Result<Factorization> {
    let d = IndexDoubling::new(f.strands())?;
    if let Some((&index, _)) = rules.rules.range(f.len() + 1..).next() {
        return Err(Error::Regeneration { index, message: format!("only {} factors", f.len()) });
    }
    let parts = f
        .factors()
        .par_iter()
        .enumerate()
        .map(|(i, factor)| {
            let index = i + 1;
            let rule = rules.get(index).or_else(|| RegenerationRule::default_for(factor)).ok_or_else(|| {
                Error::Regeneration {
                    index,
                    message: format!("no rule for a factor of degree {}; assign `pass`", factor.exponent()),
                }
            })?;
            if let Some(want) = rule.required_exponent() {
                twist_core(factor, index, want)?;
            }
            regenerate_factor(&d, factor, index, rule)
        })
        .collect::<Result<Vec<_>>>()?;
    Factorization::new(d.target_strands(), parts.into_iter().flatten().collect())
}

/// Degree of a factorization against `deg Δ² = m(m−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub achieved_degree: i64,
    pub target_degree: i64,
    /// Missing exponent-1 branch-point factors.
    pub deficit: i64,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "achieved {} target {} deficit {}", self.achieved_degree, self.target_degree, self.deficit)
    }
}

pub fn degree_audit(f: &Factorization) -> Result<AuditReport> {
    let m = f.strands() as i64;
    let achieved_degree = f.degree();
    let target_degree = m * (m - 1);
    if achieved_degree > target_degree {
        return Err(Error::OverfullFactorization { achieved: achieved_degree, target: target_degree });
    }
    Ok(AuditReport { achieved_degree, target_degree, deficit: target_degree - achieved_degree })
}

/// Comment header recording the doubling, the rule conventions and the audit.
pub fn output_header(source_strands: usize, report: &AuditReport) -> String {
    format!(
        "# regenerated B_{} -> B_{}\n\
         # doubling: j -> (2j-1, 2j); conjugators by 2-cable s_k -> s_2k s_2k-1 s_2k+1 s_2k\n\
         # I: Z_ij' Z_i'j | II: Z2_ij Z2_i'j Z2_ij' Z2_i'j' | III: Z3_ij', conj by Z_jj', conj by Z_jj'^-1\n\
         # audit: {report}\n",
        source_strands,
        2 * source_strands,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// The completed factorization and the 1-based positions of the inserted
    /// exponent-1 factors.
    Found { factorization: Factorization, inserted: Vec<usize> },
    /// No placement of `deficit` half-twists completes the product.
    Impossible { explored: usize },
    /// Budget exhausted.
    Inconclusive { explored: usize },
}

/// Searches for `deficit` unconjugated half-twists which, inserted anywhere
/// among the factors of `f` (keeping their order), make the product `Δ²`.
///
/// Every prefix of a positive factorization of `Δ²` left-divides `Δ²`, so
/// the residual `prefix⁻¹ Δ²` must stay positive. This prunes almost every
/// branch; residuals already shown dead are remembered.
pub fn complete_deficit(f: &Factorization, budget: usize) -> Result<Completion> {
    let report = degree_audit(f)?;
    let m = f.strands();
    let target = full_twist(m)?.normal_form();
    let bands: Vec<(HalfTwist, NormalForm)> = (1..m)
        .flat_map(|a| (a + 1..=m).map(move |b| (a, b)))
        .map(|(a, b)| {
            let h = HalfTwist::new(m, a, b).expect("valid band");
            (h, h.word().invert().normal_form())
        })
        .collect();
    let existing: Vec<NormalForm> = f.factors().iter().map(|x| x.expand().invert().normal_form()).collect();
    let mut suffix_degree = vec![0i64; f.len() + 1];
    for i in (0..f.len()).rev() {
        suffix_degree[i] = suffix_degree[i + 1] + f.factors()[i].exponent();
    }
    let mut search = Search {
        bands: &bands,
        existing: &existing,
        suffix_degree: &suffix_degree,
        budget,
        explored: 0,
        dead: HashSet::new(),
        path: Vec::new(),
    };
    let found = search.run(0, report.deficit as usize, target);
    Ok(match found {
        Some(true) => {
            let mut factors = Vec::with_capacity(f.len() + search.path.len());
            let mut inserted = Vec::new();
            let mut next = f.factors().iter();
            for step in &search.path {
                match step {
                    Step::Existing => factors.push(next.next().expect("path follows the factors").clone()),
                    Step::Insert(h) => {
                        factors.push(StructuredFactor::twist(*h, 1)?);
                        inserted.push(factors.len());
                    }
                }
            }
            Completion::Found { factorization: Factorization::new(m, factors)?, inserted }
        }
        Some(false) => Completion::Impossible { explored: search.explored },
        None => Completion::Inconclusive { explored: search.explored },
    })
}

fn exponent_sum(nf: &NormalForm) -> i64 {
    let m = nf.strands() as i64;
    nf.delta_power() * m * (m - 1) / 2 + nf.factors().iter().map(|p| p.length() as i64).sum::<i64>()
}

#[derive(Clone, Copy)]
enum Step {
    Existing,
    Insert(HalfTwist),
}

struct Search<'a> {
    bands: &'a [(HalfTwist, NormalForm)],
    /// Inverses of the existing factors.
    existing: &'a [NormalForm],
    suffix_degree: &'a [i64],
    budget: usize,
    explored: usize,
    dead: HashSet<(usize, usize, NormalForm)>,
    path: Vec<Step>,
}

impl Search<'_> {
    /// `Some(true)` found, `Some(false)` subtree exhausted, `None` out of budget.
    fn run(&mut self, next: usize, left: usize, residual: NormalForm) -> Option<bool> {
        if residual.delta_power() < 0 || exponent_sum(&residual) != self.suffix_degree[next] + left as i64 {
            return Some(false);
        }
        if next == self.existing.len() {
            let perm = residual.permutation();
            let transpositions = perm.degree() - perm.cycle_type().len();
            if transpositions > left {
                return Some(false);
            }
            if left == 0 {
                return Some(residual.is_identity());
            }
        }
        let state = (next, left, residual);
        if self.dead.contains(&state) {
            return Some(false);
        }
        let (next, left, residual) = state;
        let mut exhausted = true;
        let mut children: Vec<(Step, usize, usize, &NormalForm)> = Vec::new();
        if next < self.existing.len() {
            children.push((Step::Existing, next + 1, left, &self.existing[next]));
        }
        if left > 0 {
            children.extend(self.bands.iter().map(|(h, inv)| (Step::Insert(*h), next, left - 1, inv)));
        }
        for (step, n, l, inv) in children {
            if self.explored >= self.budget {
                return None;
            }
            self.explored += 1;
            self.path.push(step);
            match self.run(n, l, inv.multiply(&residual)) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => exhausted = false,
            }
            self.path.pop();
        }
        if exhausted {
            self.dead.insert((next, left, residual));
            Some(false)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ht(m: usize, a: usize, b: usize) -> HalfTwist {
        HalfTwist::new(m, a, b).unwrap()
    }

    fn single(m: usize, a: usize, b: usize, e: u32) -> Factorization {
        Factorization::new(m, vec![StructuredFactor::twist(ht(m, a, b), e).unwrap()]).unwrap()
    }

    #[test]
    fn doubled_half_twists() {
        use Endpoint::*;
        let h = ht(2, 1, 2);
        assert_eq!(double_halftwist(h, Plain, Plain).unwrap(), ht(4, 1, 3));
        assert_eq!(double_halftwist(h, Primed, Primed).unwrap(), ht(4, 2, 4));
        assert_eq!(double_halftwist(h, Primed, Plain).unwrap(), ht(4, 2, 3));
        for lo in [Plain, Primed] {
            for hi in [Plain, Primed] {
                assert_eq!(double_halftwist(h, lo, hi).unwrap().word().exponent_sum(), 1);
            }
        }
    }

    #[test]
    fn cable_is_a_homomorphism() {
        let d = IndexDoubling::new(3).unwrap();
        // Braid relation and its image.
        let l = BraidWord::new(3, vec![1, 2, 1]).unwrap();
        let r = BraidWord::new(3, vec![2, 1, 2]).unwrap();
        assert!(d.cable(&l).unwrap().equals(&d.cable(&r).unwrap()).unwrap());
        let w = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        let back = d.cable(&w).unwrap().compose(&d.cable(&w.invert()).unwrap()).unwrap();
        assert!(back.normal_form().is_identity());
        // Pairs move together: the cable of σ_k sends pair k onto pair k+1.
        let p = d.cable(&BraidWord::generator(3, 1).unwrap()).unwrap().permutation();
        assert_eq!(p.images()[..4], [3, 4, 1, 2]);
    }

    #[test]
    fn rule_degree_budgets() {
        for (e, rule, want_len, want_deg) in [
            (1, RegenerationRule::Branch, 2, 2),
            (2, RegenerationRule::Node, 4, 8),
            (4, RegenerationRule::Tangency, 3, 9),
            (2, RegenerationRule::NodeOneSided, 2, 4),
        ] {
            let f = single(3, 1, 3, e);
            let out = regenerate(&f, &RuleAssignment::uniform(1, rule)).unwrap();
            assert_eq!((out.len(), out.degree(), out.strands()), (want_len, want_deg, 6), "{rule}");
            assert!(!out.has_flagged_factors());
        }
    }

    #[test]
    fn rule_outputs() {
        let f = single(2, 1, 2, 1);
        let out = regenerate(&f, &RuleAssignment::new()).unwrap();
        let bases: Vec<_> = out.factors().iter().map(|x| x.base().unwrap()).collect();
        assert_eq!(bases, vec![ht(4, 1, 4), ht(4, 2, 3)]);

        let out = regenerate(&single(2, 1, 2, 2), &RuleAssignment::new()).unwrap();
        let bases: Vec<_> = out.factors().iter().map(|x| x.base().unwrap()).collect();
        assert_eq!(bases, vec![ht(4, 1, 3), ht(4, 2, 3), ht(4, 1, 4), ht(4, 2, 4)]);
        assert!(out.factors().iter().all(|x| x.permutation().is_identity()));

        let out = regenerate(&single(2, 1, 2, 4), &RuleAssignment::new()).unwrap();
        for x in out.factors() {
            assert_eq!(x.exponent(), 3);
            assert_eq!(x.class(), out.factors()[0].class());
        }
        // Each cusp's permutation is the transposition of its conjugated base.
        assert_eq!(out.factors()[0].permutation(), ht(4, 1, 4).permutation());
        assert_eq!(out.factors()[1].conjugator().letters(), &[3]);
        assert_eq!(out.factors()[2].conjugator().letters(), &[-3]);
    }

    #[test]
    fn conjugators_are_cabled() {
        let f = Factorization::new(
            3,
            vec![StructuredFactor::new(BraidWord::new(3, vec![2]).unwrap(), ht(3, 1, 2), 2).unwrap()],
        )
        .unwrap();
        let out = regenerate(&f, &RuleAssignment::new()).unwrap();
        for x in out.factors() {
            assert_eq!(x.conjugator().letters(), &[4, 3, 5, 4]);
        }
    }

    #[test]
    fn rule_errors() {
        let f = single(3, 1, 2, 3);
        assert!(matches!(regenerate(&f, &RuleAssignment::new()), Err(Error::Regeneration { index: 1, .. })));
        assert!(matches!(
            regenerate(&single(3, 1, 2, 2), &RuleAssignment::uniform(1, RegenerationRule::Branch)),
            Err(Error::Regeneration { index: 1, .. })
        ));
        let passed = regenerate(&f, &RuleAssignment::uniform(1, RegenerationRule::Pass)).unwrap();
        assert_eq!(passed.factors()[0].base(), Some(ht(6, 1, 4)));
        assert!(matches!(regenerate(&Factorization::empty(1), &RuleAssignment::new()), Err(Error::TooFewStrands { .. })));
        let empty = regenerate(&Factorization::empty(3), &RuleAssignment::new()).unwrap();
        assert_eq!((empty.len(), empty.strands()), (0, 6));
        assert!(regenerate(&f, &RuleAssignment::uniform(2, RegenerationRule::Pass)).is_err());
    }

    #[test]
    fn audit() {
        let out = regenerate(&single(2, 1, 2, 2), &RuleAssignment::new()).unwrap();
        let r = degree_audit(&out).unwrap();
        assert_eq!((r.achieved_degree, r.target_degree, r.deficit), (8, 12, 4));
        let full = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 2).unwrap()]).unwrap();
        assert_eq!(degree_audit(&full).unwrap().deficit, 0);
        let over = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 3).unwrap()]).unwrap();
        assert!(matches!(degree_audit(&over), Err(Error::OverfullFactorization { achieved: 3, target: 2 })));
    }

    #[test]
    fn rules_file() {
        let r = RuleAssignment::parse_text("# rules\n1 I\n3 pass\n2 II-one-sided\n").unwrap();
        assert_eq!(r.get(2), Some(RegenerationRule::NodeOneSided));
        assert_eq!(r.to_text(), "1 I\n2 II-one-sided\n3 pass\n");
        let e = RuleAssignment::parse_text("1 I\n2 IV\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = RuleAssignment::parse_text("0 I\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(RuleAssignment::parse_text("1 I\n1 II\n").is_err());
    }

    #[test]
    fn completion_search() {
        // σ1 · σ1 in B_3 with three branch points missing; a completion must
        // interleave them, e.g. σ1 σ2 σ1 σ1 σ2 σ1.
        let f = Factorization::new(
            3,
            vec![
                StructuredFactor::twist(ht(3, 1, 2), 1).unwrap(),
                StructuredFactor::twist(ht(3, 1, 2), 1).unwrap(),
                StructuredFactor::twist(ht(3, 2, 3), 1).unwrap(),
            ],
        )
        .unwrap();
        let Completion::Found { factorization, inserted } = complete_deficit(&f, 100_000).unwrap() else {
            panic!("completion expected");
        };
        assert_eq!(inserted.len(), 3);
        assert_eq!(factorization.len(), 6);
        assert!(factorization.is_delta2_factorization());
        let kept: Vec<_> = (1..=6).filter(|i| !inserted.contains(i)).map(|i| factorization.factors()[i - 1].clone()).collect();
        assert_eq!(kept, f.factors());

        let g = Factorization::new(2, vec![]).unwrap();
        assert!(matches!(
            complete_deficit(&g, 100).unwrap(),
            Completion::Found { ref inserted, .. } if inserted == &[1, 2]
        ));
        // Degree 4 of 6 is used, but σ1⁴ left-divides no positive factorization of Δ².
        let h = single(3, 1, 2, 4);
        assert!(matches!(complete_deficit(&h, 100_000).unwrap(), Completion::Impossible { .. }));
        assert!(matches!(complete_deficit(&mixed_example(), 2).unwrap(), Completion::Inconclusive { explored: 2 }));
    }

    #[test]
    fn regenerated_node_completes_by_branch_points() {
        let out = regenerate(&single(2, 1, 2, 2), &RuleAssignment::new()).unwrap();
        let Completion::Found { factorization, inserted } = complete_deficit(&out, 10_000).unwrap() else {
            panic!("completion expected");
        };
        assert_eq!(inserted, vec![5, 6, 7, 8]);
        assert!(factorization.is_delta2_factorization());
        // The mirror order of the four nodes admits no completion.
        let mirrored: Vec<_> = out.factors().iter().rev().cloned().collect();
        let mirrored = Factorization::new(4, mirrored).unwrap();
        assert!(matches!(complete_deficit(&mirrored, 10_000).unwrap(), Completion::Impossible { .. }));
    }

    fn mixed_example() -> Factorization {
        Factorization::new(3, vec![StructuredFactor::twist(ht(3, 1, 2), 1).unwrap()]).unwrap()
    }
}
