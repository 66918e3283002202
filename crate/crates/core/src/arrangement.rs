//! Braid monodromy of real affine line arrangements by a sweep of the x-axis.
//!
//! Lines are `y = a·x + b` with exact rational coefficients. Fiber positions
//! are numbered bottom to top by `y`. Sweeping left to right, every singular
//! point reverses the block of consecutive positions occupied by its lines.
//!
//! The base point sits to the right of every singular point and loops are
//! ordered by decreasing distance from it, so the leftmost point contributes
//! the first factor. With block half-twists `T_1, …, T_n` in sweep order,
//! the factor of point `j` is `C_j Δ²⟨block_j⟩ C_j⁻¹` with
//! `C_j = T_n T_{n−1} ⋯ T_{j+1}`. The product telescopes to
//! `(T_n ⋯ T_1)(T_1 ⋯ T_n) = Δ · Δ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::braid::{BraidWord, HalfTwist};
use crate::error::{Error, ParseError, Result};
use crate::factorization::{Factorization, StructuredFactor};
use crate::text;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl Line {
    pub fn new(slope: BigRational, intercept: BigRational) -> Self {
        Line { slope, intercept }
    }

    pub fn from_integers(slope: i64, intercept: i64) -> Self {
        Line { slope: BigRational::from_integer(slope.into()), intercept: BigRational::from_integer(intercept.into()) }
    }

    pub fn y_at(&self, x: &BigRational) -> BigRational {
        &self.slope * x + &self.intercept
    }

    /// Intersection point, `None` for parallel lines.
    pub fn meet(&self, other: &Line) -> Option<(BigRational, BigRational)> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            return None;
        }
        let x = (&other.intercept - &self.intercept) / ds;
        let y = self.y_at(&x);
        Some((x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<Line>,
}

impl LineArrangement {
    /// Rejects identical lines. Parallel lines are accepted.
    pub fn new(lines: Vec<Line>) -> Result<Self> {
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i] == lines[j] {
                    return Err(Error::DuplicateLines { first: i + 1, second: j + 1 });
                }
            }
        }
        Ok(LineArrangement { lines })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Pairs of parallel lines (0-based indices).
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                if self.lines[i].slope == self.lines[j].slope {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Applies `x ↦ scale·x + shift` to the plane (`scale > 0`).
    pub fn reparameterize(&self, scale: &BigRational, shift: &BigRational) -> LineArrangement {
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let slope = &l.slope / scale;
                let intercept = &l.intercept - &slope * shift;
                Line { slope, intercept }
            })
            .collect();
        LineArrangement { lines }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("arrangement {}\n", self.lines.len());
        for l in &self.lines {
            out.push_str(&format!("line {} {}\n", l.slope, l.intercept));
        }
        out
    }

    pub fn parse_text(input: &str) -> Result<LineArrangement, ParseError> {
        let mut lines = text::content_lines(input);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, 1, "missing `arrangement <m>` header"))?;
        let count = text::parse_header(ln, header, "arrangement")?;
        let mut out = Vec::with_capacity(count);
        let mut last = ln;
        for (ln, line) in lines {
            let toks: Vec<(usize, &str)> = text::tokens(line).collect();
            match toks.first() {
                Some((_, "line")) => {}
                Some((col, t)) => return Err(ParseError::new(ln, *col, format!("expected `line`, found `{t}`"))),
                None => unreachable!("content lines are non-blank"),
            }
            if toks.len() != 3 {
                let col = toks.get(3).map_or(line.trim_end().len() + 1, |t| t.0);
                return Err(ParseError::new(ln, col, "expected `line <slope> <intercept>`"));
            }
            let slope = parse_rational(ln, toks[1])?;
            let intercept = parse_rational(ln, toks[2])?;
            if out.len() == count {
                return Err(ParseError::new(ln, 1, format!("more than the declared {count} lines")));
            }
            out.push(Line { slope, intercept });
            last = ln;
        }
        if out.len() != count {
            return Err(ParseError::new(last + 1, 1, format!("expected {count} lines, found {}", out.len())));
        }
        LineArrangement::new(out).map_err(|e| ParseError::new(last, 1, e.to_string()))
    }
}

fn parse_rational(ln: usize, (col, tok): (usize, &str)) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(ln, col, format!("invalid rational `{tok}`"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ParseError::new(ln, col, format!("zero denominator in `{tok}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(tok).map_err(|_| bad())?)),
    }
}

/// A point where two or more lines meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub x: BigRational,
    pub y: BigRational,
    /// Participating lines, 0-based, ascending.
    pub lines: Vec<usize>,
    /// Fiber positions occupied by the lines just left of `x`, 1-based.
    pub block: (usize, usize),
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) k={} block [{},{}]", self.x, self.y, self.lines.len(), self.block.0, self.block.1)
    }
}

/// The combinatorial sweep: initial order at `x → −∞` plus block reversals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    /// Line indices bottom to top at `x → −∞`.
    pub initial_order: Vec<usize>,
    /// Block reversals in sweep order, as 1-based position intervals.
    pub events: Vec<(usize, usize)>,
}

impl WiringDiagram {
    pub fn strands(&self) -> usize {
        self.initial_order.len()
    }

    /// Order after every reversal has been applied.
    pub fn final_order(&self) -> Vec<usize> {
        let mut order = self.initial_order.clone();
        for &(a, b) in &self.events {
            order[a - 1..b].reverse();
        }
        order
    }
}

/// Bottom-to-top order for very negative `x`: steeper lines lie lower.
fn initial_order(lines: &[Line]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&i, &j| {
        lines[j]
            .slope
            .cmp(&lines[i].slope)
            .then_with(|| lines[i].intercept.cmp(&lines[j].intercept))
    });
    order
}

/// All intersection points, grouped exactly and sorted by `x` then `y`.
pub fn singular_points(arrangement: &LineArrangement) -> Result<Vec<SingularPoint>> {
    let lines = arrangement.lines();
    let mut meets: BTreeMap<(BigRational, BigRational), BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = lines[i].meet(&lines[j]) {
                let entry = meets.entry(p).or_default();
                entry.insert(i);
                entry.insert(j);
            }
        }
    }

    let mut order = initial_order(lines);
    let mut position = vec![0usize; lines.len()];
    let mut points = Vec::with_capacity(meets.len());
    let mut pending: Vec<SingularPoint> = Vec::new();

    let flush = |pending: &mut Vec<SingularPoint>, order: &mut Vec<usize>, position: &mut Vec<usize>| {
        for p in pending.iter() {
            order[p.block.0 - 1..p.block.1].reverse();
        }
        for (pos, &line) in order.iter().enumerate() {
            position[line] = pos + 1;
        }
    };
    flush(&mut pending, &mut order, &mut position);

    for ((x, y), members) in meets {
        if pending.first().is_some_and(|p| p.x != x) {
            flush(&mut pending, &mut order, &mut position);
            points.append(&mut pending);
        }
        let members: Vec<usize> = members.into_iter().collect();
        let lo = members.iter().map(|&l| position[l]).min().expect("at least two lines");
        let hi = members.iter().map(|&l| position[l]).max().expect("at least two lines");
        if hi - lo + 1 != members.len() {
            return Err(Error::NonSweepable(format!(
                "lines through ({x}, {y}) are not consecutive in the fiber"
            )));
        }
        if let Some(other) = pending.iter().find(|p| p.block.0 <= hi && lo <= p.block.1) {
            return Err(Error::NonSweepable(format!(
                "points ({}, {}) and ({x}, {y}) share an x-value with overlapping blocks; \
                 perturb the intercept of line {} slightly",
                other.x,
                other.y,
                members[0] + 1
            )));
        }
        pending.push(SingularPoint { x, y, lines: members, block: (lo, hi) });
    }
    points.append(&mut pending);
    Ok(points)
}

pub fn to_wiring_diagram(arrangement: &LineArrangement) -> Result<WiringDiagram> {
    let points = singular_points(arrangement)?;
    Ok(WiringDiagram {
        initial_order: initial_order(arrangement.lines()),
        events: points.iter().map(|p| p.block).collect(),
    })
}

/// Factorization determined by a wiring diagram. With `expand_blocks`, a
/// `k`-fold point yields `k(k−1)/2` node factors instead of one block factor.
pub fn monodromy_from_wiring(diagram: &WiringDiagram, expand_blocks: bool) -> Result<Factorization> {
    let m = diagram.strands();
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    let blocks = diagram
        .events
        .iter()
        .map(|&(a, b)| HalfTwist::new(m, a, b))
        .collect::<Result<Vec<_>>>()?;
    // Walk from the base point leftwards: conjugators accumulate T_n ⋯ T_{j+1}.
    let mut per_point: Vec<Vec<StructuredFactor>> = Vec::with_capacity(blocks.len());
    let mut transport = BraidWord::identity(m);
    for block in blocks.iter().rev() {
        per_point.push(point_factors(&transport, block, expand_blocks)?);
        transport = transport.compose_unchecked(&block.block_delta());
    }
    per_point.reverse();
    Factorization::new(m, per_point.into_iter().flatten().collect())
}

fn point_factors(conj: &BraidWord, block: &HalfTwist, expand_blocks: bool) -> Result<Vec<StructuredFactor>> {
    let k = block.span();
    if k == 2 {
        return Ok(vec![StructuredFactor::new(conj.clone(), *block, 2)?]);
    }
    if !expand_blocks {
        return Ok(vec![StructuredFactor::block_full_twist(conj.clone(), *block)?]);
    }
    // Δ²_k = ∏_{j=2..k} (A_{1j} A_{2j} ⋯ A_{j−1,j}), A_{ij} the squared band generator.
    let (m, a) = (block.strands(), block.low());
    let mut out = Vec::with_capacity(k * (k - 1) / 2);
    for j in 2..=k {
        for i in 1..j {
            out.push(StructuredFactor::new(conj.clone(), HalfTwist::new(m, a + i - 1, a + j - 1)?, 2)?);
        }
    }
    Ok(out)
}

/// Braid monodromy factorization of `Δ²` for an arrangement without parallels.
pub fn braid_monodromy(arrangement: &LineArrangement, expand_blocks: bool) -> Result<Factorization> {
    let m = arrangement.len();
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    if let Some(&(first, second)) = arrangement.parallel_pairs().first() {
        return Err(Error::ParallelLines { first: first + 1, second: second + 1, deficit: degree_check(arrangement)?.deficit });
    }
    monodromy_from_wiring(&to_wiring_diagram(arrangement)?, expand_blocks)
}

/// Comparison of `Σ k_p(k_p − 1)` with `m(m − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub achieved: i64,
    pub target: i64,
    pub deficit: i64,
    pub parallel_pairs: Vec<(usize, usize)>,
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "achieved {} target {} deficit {}", self.achieved, self.target, self.deficit)
    }
}

pub fn degree_check(arrangement: &LineArrangement) -> Result<DegreeReport> {
    let m = arrangement.len() as i64;
    let achieved = singular_points(arrangement)?
        .iter()
        .map(|p| {
            let k = p.multiplicity() as i64;
            k * (k - 1)
        })
        .sum();
    let target = m * (m - 1);
    Ok(DegreeReport { achieved, target, deficit: target - achieved, parallel_pairs: arrangement.parallel_pairs() })
}

/// `p/q` as an exact rational, for building arrangements in code.
pub fn rational(p: i64, q: i64) -> BigRational {
    assert!(q != 0, "zero denominator");
    BigRational::new(p.into(), q.into())
}
