#![allow(dead_code)]

use bmt::arrangement::{rational, singular_points, Line, LineArrangement};
use bmt::{BraidWord, Factorization, HalfTwist, StructuredFactor};
use rand::Rng;

pub fn random_word(rng: &mut impl Rng, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let k = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

/// Inserts one defining relator of `B_m` (or a trivial pair) at a random
/// position: `σ_i σ_i⁻¹`, `σ_i σ_j σ_i⁻¹ σ_j⁻¹` with `|i − j| ≥ 2`, or
/// `σ_i σ_{i+1} σ_i σ_{i+1}⁻¹ σ_i⁻¹ σ_{i+1}⁻¹`, possibly inverted.
pub fn insert_relator(rng: &mut impl Rng, w: &BraidWord) -> BraidWord {
    let m = w.strands() as i32;
    let relator: Vec<i32> = loop {
        let i = rng.gen_range(1..m);
        match rng.gen_range(0..3) {
            0 => break vec![i, -i],
            1 if m >= 4 => {
                let j = rng.gen_range(1..m);
                if (i - j).abs() >= 2 {
                    break vec![i, j, -i, -j];
                }
            }
            2 if i + 1 < m => break vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
            _ => {}
        }
    };
    let relator = if rng.gen_bool(0.5) { relator.iter().rev().map(|&l| -l).collect() } else { relator };
    let at = rng.gen_range(0..=w.len());
    let mut letters = w.letters()[..at].to_vec();
    letters.extend(relator);
    letters.extend_from_slice(&w.letters()[at..]);
    BraidWord::new(w.strands(), letters).unwrap()
}

/// Six exponent-1 factors alternating `[1,2]`, `[2,3]` in `B_3`.
pub fn b3_example() -> Factorization {
    let factors = (0..6)
        .map(|i| StructuredFactor::twist(HalfTwist::new(3, 1 + i % 2, 2 + i % 2).unwrap(), 1).unwrap())
        .collect();
    Factorization::new(3, factors).unwrap()
}

fn random_rational(rng: &mut impl Rng, bound: i64) -> num_rational::BigRational {
    rational(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// `m` lines with random rational coefficients, resampled until no two are
/// parallel and no three are concurrent.
pub fn random_generic_arrangement(rng: &mut impl Rng, m: usize) -> LineArrangement {
    loop {
        let lines: Vec<Line> =
            (0..m).map(|_| Line::new(random_rational(rng, 9), random_rational(rng, 9))).collect();
        let Ok(arr) = LineArrangement::new(lines) else { continue };
        if !arr.parallel_pairs().is_empty() {
            continue;
        }
        if singular_points(&arr).unwrap().iter().all(|p| p.multiplicity() == 2) {
            return arr;
        }
    }
}

/// `k` lines through one random point plus `extra` further lines, with no
/// parallels and no other coincidences.
pub fn random_concurrent_arrangement(rng: &mut impl Rng, k: usize, extra: usize) -> LineArrangement {
    loop {
        let (px, py) = (random_rational(rng, 5), random_rational(rng, 5));
        let mut lines: Vec<Line> = (0..k)
            .map(|_| {
                let slope = random_rational(rng, 9);
                let intercept = &py - &slope * &px;
                Line::new(slope, intercept)
            })
            .collect();
        lines.extend((0..extra).map(|_| Line::new(random_rational(rng, 9), random_rational(rng, 9))));
        let Ok(arr) = LineArrangement::new(lines) else { continue };
        if !arr.parallel_pairs().is_empty() {
            continue;
        }
        let pts = singular_points(&arr).unwrap();
        let big = pts.iter().filter(|p| p.multiplicity() > 2).count();
        if big == 1 && pts.iter().all(|p| p.multiplicity() == 2 || p.multiplicity() == k) {
            return arr;
        }
    }
}
