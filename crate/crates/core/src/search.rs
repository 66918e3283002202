//! Bounded search over Hurwitz orbits.
//!
//! Equivalence of factorizations is only semi-decidable here: the search
//! either finds a move sequence, exhibits an invariant (or an exhausted
//! orbit) separating the two, or gives up when the node budget runs out.
//!
//! Search states are canonical keys (tuples of factor normal forms), so the
//! moves run directly on normal forms. Frontier levels are expanded in
//! parallel and merged sequentially in a fixed order, which keeps results
//! independent of scheduling. Positions are tried low to high, the forward
//! move before the inverse.

use indexmap::map::Entry;
use indexmap::{IndexMap, IndexSet};
use rayon::prelude::*;

use crate::factorization::{CanonicalKey, Factorization, HurwitzMove, MoveKind};
use crate::garside::NormalForm;

/// Why two factorizations cannot be Hurwitz equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    StrandCount { left: usize, right: usize },
    Length { left: usize, right: usize },
    ProductDiffers,
    ClassMultisetDiffers,
    /// The whole orbit of one side was enumerated without meeting the other.
    OrbitExhausted { orbit_size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Moves that carry the first factorization onto the second.
    Equivalent(Vec<HurwitzMove>),
    NotEquivalent(Witness),
    Inconclusive { explored: usize },
}

/// Result of a bounded orbit enumeration.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Distinct keys in discovery order, the start first.
    pub keys: Vec<CanonicalKey>,
    /// True when the reported set is closed under both moves.
    pub exhausted: bool,
}

fn apply(key: &[NormalForm], mv: HurwitzMove) -> Vec<NormalForm> {
    let i = mv.position - 1;
    let mut out = key.to_vec();
    match mv.kind {
        MoveKind::Forward => {
            out[i] = key[i + 1].conjugate_by(&key[i]);
            out[i + 1] = key[i].clone();
        }
        MoveKind::Inverse => {
            out[i] = key[i + 1].clone();
            out[i + 1] = key[i].conjugate_by(&key[i + 1].inverse());
        }
    }
    out
}

fn moves(len: usize) -> Vec<HurwitzMove> {
    (1..len)
        .flat_map(|position| {
            [MoveKind::Forward, MoveKind::Inverse].map(|kind| HurwitzMove { position, kind })
        })
        .collect()
}

fn expand_level(frontier: &[CanonicalKey], moves: &[HurwitzMove]) -> Vec<Vec<(CanonicalKey, HurwitzMove)>> {
    frontier
        .par_iter()
        .map(|key| {
            moves
                .iter()
                .map(|&mv| (CanonicalKey(apply(&key.0, mv)), mv))
                .collect()
        })
        .collect()
}

struct Side {
    /// key → (parent index, move from parent); the root has no parent.
    seen: IndexMap<CanonicalKey, Option<(usize, HurwitzMove)>>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: CanonicalKey) -> Self {
        let mut seen = IndexMap::new();
        seen.insert(root, None);
        Side { seen, frontier: vec![0] }
    }

    /// Moves from the root to node `idx`.
    fn path_to(&self, mut idx: usize) -> Vec<HurwitzMove> {
        let mut path = Vec::new();
        while let Some((_, Some((parent, mv)))) = self.seen.get_index(idx) {
            path.push(*mv);
            idx = *parent;
        }
        path.reverse();
        path
    }
}

/// Bounded bidirectional breadth-first search for a Hurwitz move sequence
/// from `left` to `right`. `budget` caps the number of distinct states.
pub fn hurwitz_equivalent(left: &Factorization, right: &Factorization, budget: usize) -> Verdict {
    if left.strands() != right.strands() {
        return Verdict::NotEquivalent(Witness::StrandCount { left: left.strands(), right: right.strands() });
    }
    if left.len() != right.len() {
        return Verdict::NotEquivalent(Witness::Length { left: left.len(), right: right.len() });
    }
    let (li, ri) = (left.hm_invariants(), right.hm_invariants());
    if li.class_multiset != ri.class_multiset {
        return Verdict::NotEquivalent(Witness::ClassMultisetDiffers);
    }
    if li.product_nf != ri.product_nf {
        return Verdict::NotEquivalent(Witness::ProductDiffers);
    }

    let (lk, rk) = (left.canonical_key(), right.canonical_key());
    if lk == rk {
        return Verdict::Equivalent(Vec::new());
    }
    let moves = moves(left.len());
    let mut sides = [Side::new(lk), Side::new(rk)];

    loop {
        let explored = sides[0].seen.len() + sides[1].seen.len();
        for (s, side) in sides.iter().enumerate() {
            if side.frontier.is_empty() {
                let orbit_size = sides[s].seen.len();
                return Verdict::NotEquivalent(Witness::OrbitExhausted { orbit_size });
            }
        }
        if explored >= budget {
            return Verdict::Inconclusive { explored };
        }
        let s = if sides[1].frontier.len() < sides[0].frontier.len() { 1 } else { 0 };
        let (mine, other) = if s == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        let frontier_keys: Vec<CanonicalKey> = mine
            .frontier
            .iter()
            .map(|&i| mine.seen.get_index(i).expect("frontier index").0.clone())
            .collect();
        let parents = std::mem::take(&mut mine.frontier);
        let expanded = expand_level(&frontier_keys, &moves);
        let mut explored = explored;
        for (&parent, children) in parents.iter().zip(expanded) {
            for (child, mv) in children {
                if let Some(meet) = other.seen.get_index_of(&child) {
                    let mut mine_path = mine.path_to(parent);
                    mine_path.push(mv);
                    let other_path = other.path_to(meet);
                    let (forward, backward) = if s == 0 { (mine_path, other_path) } else { (other_path, mine_path) };
                    let mut certificate = forward;
                    certificate.extend(backward.into_iter().rev().map(HurwitzMove::inverse));
                    return Verdict::Equivalent(certificate);
                }
                if let Entry::Vacant(slot) = mine.seen.entry(child) {
                    let idx = slot.index();
                    slot.insert(Some((parent, mv)));
                    mine.frontier.push(idx);
                    explored += 1;
                    if explored >= budget {
                        return Verdict::Inconclusive { explored };
                    }
                }
            }
        }
    }
}

/// Breadth-first enumeration of the Hurwitz orbit of `start`, keeping at most
/// `budget` distinct keys.
pub fn orbit_enumerate(start: &Factorization, budget: usize) -> OrbitReport {
    let moves = moves(start.len());
    let mut seen: IndexSet<CanonicalKey> = IndexSet::new();
    seen.insert(start.canonical_key());
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let keys: Vec<CanonicalKey> = frontier
            .iter()
            .map(|&i| seen.get_index(i).expect("frontier index").clone())
            .collect();
        frontier.clear();
        for children in expand_level(&keys, &moves) {
            for (child, _) in children {
                if seen.contains(&child) {
                    continue;
                }
                if seen.len() >= budget {
                    return OrbitReport { keys: seen.into_iter().collect(), exhausted: false };
                }
                frontier.push(seen.insert_full(child).0);
            }
        }
    }
    OrbitReport { keys: seen.into_iter().collect(), exhausted: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{BraidWord, HalfTwist};
    use crate::factorization::StructuredFactor;

    fn ht(m: usize, a: usize, b: usize) -> HalfTwist {
        HalfTwist::new(m, a, b).unwrap()
    }

    fn b3_example() -> Factorization {
        let factors = (0..6)
            .map(|i| StructuredFactor::twist(ht(3, 1 + i % 2, 2 + i % 2), 1).unwrap())
            .collect();
        Factorization::new(3, factors).unwrap()
    }

    #[test]
    fn single_move_is_found() {
        let f = b3_example();
        let g = f.hurwitz_move(3).unwrap();
        let Verdict::Equivalent(cert) = hurwitz_equivalent(&f, &g, 10_000) else {
            panic!("expected equivalence");
        };
        assert_eq!(cert.len(), 1);
        assert_eq!(f.replay(&cert).unwrap().canonical_key(), g.canonical_key());
    }

    #[test]
    fn key_level_moves_match_structural_moves() {
        let f = b3_example().hurwitz_move(2).unwrap().hurwitz_move_inverse(4).unwrap();
        for mv in moves(f.len()) {
            let structural = f.apply_move(mv).unwrap().canonical_key();
            assert_eq!(CanonicalKey(apply(&f.canonical_key().0, mv)), structural, "{mv}");
        }
    }

    #[test]
    fn different_classes_are_separated() {
        let a = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 2).unwrap()]).unwrap();
        let b = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 1).unwrap()]).unwrap();
        assert_eq!(
            hurwitz_equivalent(&a, &b, 100),
            Verdict::NotEquivalent(Witness::ClassMultisetDiffers)
        );
        assert!(matches!(
            hurwitz_equivalent(&a, &b3_example(), 100),
            Verdict::NotEquivalent(Witness::StrandCount { .. })
        ));
    }

    #[test]
    fn product_and_exhaustion_witnesses() {
        // (σ1, σ2) and (σ2, σ1) have the same classes but different products.
        let s1 = StructuredFactor::twist(ht(3, 1, 2), 1).unwrap();
        let s2 = StructuredFactor::twist(ht(3, 2, 3), 1).unwrap();
        let a = Factorization::new(3, vec![s1.clone(), s2.clone()]).unwrap();
        let b = Factorization::new(3, vec![s2, s1]).unwrap();
        assert_eq!(hurwitz_equivalent(&a, &b, 100), Verdict::NotEquivalent(Witness::ProductDiffers));
        // The orbit of (x, x⁻¹) is {(x, x⁻¹), (x⁻¹, x)}; (σ1, σ1⁻¹) never reaches (σ2, σ2⁻¹).
        let pair = |k: i32| {
            let id = BraidWord::identity(3);
            let x = BraidWord::new(3, vec![k]).unwrap();
            Factorization::new(
                3,
                vec![
                    StructuredFactor::unchecked_word(id.clone(), x.clone()).unwrap(),
                    StructuredFactor::unchecked_word(id, x.invert()).unwrap(),
                ],
            )
            .unwrap()
        };
        assert_eq!(
            hurwitz_equivalent(&pair(1), &pair(2), 100),
            Verdict::NotEquivalent(Witness::OrbitExhausted { orbit_size: 2 })
        );
        let orbit = orbit_enumerate(&a, 100);
        assert!(orbit.exhausted);
        assert_eq!(orbit.keys.len(), 3);
    }

    #[test]
    fn tiny_orbits() {
        let one = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 2).unwrap()]).unwrap();
        let report = orbit_enumerate(&one, 10);
        assert_eq!((report.keys.len(), report.exhausted), (1, true));
        let pair = Factorization::new(2, vec![StructuredFactor::twist(ht(2, 1, 2), 1).unwrap(); 2]).unwrap();
        let report = orbit_enumerate(&pair, 10);
        assert_eq!((report.keys.len(), report.exhausted), (1, true));
    }

    #[test]
    fn budget_stops_enumeration() {
        let report = orbit_enumerate(&b3_example(), 50);
        assert!(!report.exhausted);
        assert_eq!(report.keys.len(), 50);
    }
}
