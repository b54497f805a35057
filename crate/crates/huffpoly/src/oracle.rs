//! Brute-force verifiers that are independent of the Huffman construction
//! path: exhaustive enumeration of strictly m-ary tree shapes for optimality
//! and height checks, and bounded search over weight sequences confirming
//! that the closed-form minimizing sequence really attains the minimum cost.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::huffman::{build_huffman, WeightSequence};
use crate::minimizing::{minimizing_sequence, MinimizingSpec};

/// Largest leaf count the shape enumerators accept by default.
pub const DEFAULT_LEAF_CAP: usize = 9;

/// Default ceiling on the number of candidate sequences a search may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{leaves} leaves exceed the exhaustive cap of {cap} ({shapes} ordered shapes)")]
    LeafCapExceeded {
        leaves: usize,
        cap: usize,
        shapes: BigInt,
    },
    #[error("{candidates} candidate sequences exceed the search budget of {budget}")]
    BudgetExceeded { candidates: BigInt, budget: u64 },
    #[error(
        "max weight {max_weight} is below {required}, the largest element \
         of the reference minimizing sequence"
    )]
    MaxWeightTooSmall { max_weight: u64, required: BigInt },
}

/// Canonical unordered shape of a strictly m-ary tree. Children are kept
/// sorted, so shapes that differ only by sibling permutation compare equal;
/// the weighted external path length is sibling-order invariant, which makes
/// this the right granularity for cost enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

impl Shape {
    fn leaf_depths(&self) -> Vec<usize> {
        fn walk(shape: &Shape, depth: usize, out: &mut Vec<usize>) {
            match shape {
                Shape::Leaf => out.push(depth),
                Shape::Node(children) => {
                    for child in children {
                        walk(child, depth + 1, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out.sort_unstable();
        out
    }
}

struct ShapeEnumerator {
    arity: usize,
    memo: BTreeMap<usize, Vec<Shape>>,
}

impl ShapeEnumerator {
    fn new(arity: usize) -> Self {
        ShapeEnumerator {
            arity,
            memo: BTreeMap::new(),
        }
    }

    /// All canonical shapes with exactly `leaves` leaves.
    fn shapes(&mut self, leaves: usize) -> Vec<Shape> {
        if let Some(cached) = self.memo.get(&leaves) {
            return cached.clone();
        }
        let mut found = BTreeSet::new();
        if leaves == 1 {
            found.insert(Shape::Leaf);
        } else {
            let mut sizes = Vec::new();
            let mut partitions = Vec::new();
            child_size_partitions(
                leaves,
                self.arity,
                1,
                self.arity - 1,
                &mut sizes,
                &mut partitions,
            );
            for partition in partitions {
                let options: Vec<Vec<Shape>> =
                    partition.iter().map(|&s| self.shapes(s)).collect();
                let mut picks = vec![0usize; options.len()];
                loop {
                    let mut children: Vec<Shape> = picks
                        .iter()
                        .zip(&options)
                        .map(|(&p, opts)| opts[p].clone())
                        .collect();
                    children.sort();
                    found.insert(Shape::Node(children));
                    // odometer over the per-child shape choices
                    let mut pos = 0;
                    loop {
                        if pos == picks.len() {
                            break;
                        }
                        picks[pos] += 1;
                        if picks[pos] < options[pos].len() {
                            break;
                        }
                        picks[pos] = 0;
                        pos += 1;
                    }
                    if pos == picks.len() {
                        break;
                    }
                }
            }
        }
        let result: Vec<Shape> = found.into_iter().collect();
        self.memo.insert(leaves, result.clone());
        result
    }
}

/// Non-decreasing child leaf counts summing to `total`, each congruent to
/// 1 mod `step`.
fn child_size_partitions(
    total: usize,
    parts: usize,
    min: usize,
    step: usize,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if parts == 0 {
        if total == 0 {
            out.push(acc.clone());
        }
        return;
    }
    let mut size = min;
    while size + (parts - 1) <= total {
        if (size - 1).is_multiple_of(step) {
            acc.push(size);
            child_size_partitions(total - size, parts - 1, size, step, acc, out);
            acc.pop();
        }
        size += 1;
    }
}

/// Number of canonical (sibling-order deduplicated) shapes. For arity 2 this
/// is the Wedderburn–Etherington number of the leaf count.
pub fn canonical_shape_count(arity: usize, leaves: usize) -> usize {
    ShapeEnumerator::new(arity).shapes(leaves).len()
}

/// Number of ordered shapes, i.e. without sibling deduplication. For arity 2
/// this is the Catalan number of `leaves - 1`. Reported when an instance is
/// refused so the caller can see the enumeration it asked for.
fn ordered_shape_count(arity: usize, leaves: usize) -> BigInt {
    fn count(
        leaves: usize,
        arity: usize,
        memo: &mut BTreeMap<usize, BigInt>,
    ) -> BigInt {
        if leaves == 1 {
            return BigInt::one();
        }
        if let Some(cached) = memo.get(&leaves) {
            return cached.clone();
        }
        fn split(
            remaining: usize,
            parts: usize,
            arity: usize,
            memo: &mut BTreeMap<usize, BigInt>,
        ) -> BigInt {
            if parts == 1 {
                return if remaining >= 1 && (remaining - 1).is_multiple_of(arity - 1) {
                    count(remaining, arity, memo)
                } else {
                    BigInt::zero()
                };
            }
            let mut total = BigInt::zero();
            let mut size = 1;
            while size + (parts - 1) <= remaining {
                if (size - 1) % (arity - 1) == 0 {
                    let left = count(size, arity, memo);
                    if !left.is_zero() {
                        total += left * split(remaining - size, parts - 1, arity, memo);
                    }
                }
                size += 1;
            }
            total
        }
        let result = split(leaves, arity, arity, memo);
        memo.insert(leaves, result.clone());
        result
    }
    count(leaves, arity, &mut BTreeMap::new())
}

/// Minimum weighted external path length over every strictly m-ary tree on
/// the given leaf weights, by exhaustive shape enumeration with the optimal
/// leaf assignment per shape (ascending weights against descending depths).
///
/// This route never touches the Huffman construction, so it can serve as its
/// optimality oracle. Instances above [`DEFAULT_LEAF_CAP`] leaves are refused.
pub fn exhaustive_optimal_cost(input: &WeightSequence) -> Result<BigInt, OracleError> {
    exhaustive_optimal_cost_with_cap(input, DEFAULT_LEAF_CAP)
}

pub fn exhaustive_optimal_cost_with_cap(
    input: &WeightSequence,
    cap: usize,
) -> Result<BigInt, OracleError> {
    let leaves = input.len();
    if leaves > cap {
        return Err(OracleError::LeafCapExceeded {
            leaves,
            cap,
            shapes: ordered_shape_count(input.arity(), leaves),
        });
    }
    let mut best: Option<BigInt> = None;
    for shape in ShapeEnumerator::new(input.arity()).shapes(leaves) {
        let depths = shape.leaf_depths();
        // rearrangement: pair ascending weights with descending depths
        let cost: BigInt = depths
            .iter()
            .rev()
            .zip(input.weights())
            .map(|(&d, w)| w * BigInt::from(d))
            .sum();
        if best.as_ref().is_none_or(|b| &cost < b) {
            best = Some(cost);
        }
    }
    Ok(best.expect("at least one shape exists for a valid weight sequence"))
}

/// True iff the elongated chain attains the maximum height over all strictly
/// m-ary shapes with the given leaf count.
pub fn max_height_check(arity: usize, leaves: usize) -> Result<bool, OracleError> {
    assert!(arity >= 2);
    assert!(
        leaves >= 1 && (leaves - 1).is_multiple_of(arity - 1),
        "leaf count {leaves} is not reachable by a strictly {arity}-ary tree"
    );
    if leaves > DEFAULT_LEAF_CAP {
        return Err(OracleError::LeafCapExceeded {
            leaves,
            cap: DEFAULT_LEAF_CAP,
            shapes: ordered_shape_count(arity, leaves),
        });
    }
    let chain_height = (leaves - 1) / (arity - 1);
    let tallest = ShapeEnumerator::new(arity)
        .shapes(leaves)
        .iter()
        .map(|s| *s.leaf_depths().last().expect("shapes have leaves"))
        .max()
        .expect("at least one shape");
    Ok(tallest == chain_height)
}

/// Bounds for [`minimality_search`]: the instance shape plus an inclusive
/// upper bound on candidate weights and a visit budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    spec: MinimizingSpec,
    max_weight: u64,
    budget: u64,
}

impl SearchBounds {
    pub fn new(spec: MinimizingSpec, max_weight: u64) -> Self {
        SearchBounds {
            spec,
            max_weight,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn spec(&self) -> MinimizingSpec {
        self.spec
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }
}

/// Outcome of a bounded minimality search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalitySearch {
    /// Lexicographically smallest sequence attaining the best cost.
    pub best_sequence: Vec<BigInt>,
    pub best_cost: BigInt,
    /// Constructed cost of the closed-form minimizing sequence.
    pub reference_cost: BigInt,
    /// Whether the closed-form minimizing sequence attains the best cost.
    pub matches_reference: bool,
    /// Every admissible sequence that ties the best cost, in lexicographic
    /// order. Minimality, not uniqueness, is the claim under test, so ties
    /// are reported rather than collapsed.
    pub tying_sequences: Vec<Vec<BigInt>>,
    /// Number of candidate sequences visited.
    pub visited: u64,
}

/// Exhausts every non-decreasing sequence of length n over `1..=max_weight`,
/// keeps those that are absolutely ordered with an elongated Huffman tree,
/// and reports the minimum constructed cost among them.
///
/// Requires `max_weight` to cover the largest element of the closed-form
/// minimizing sequence so that the reference itself lies in the search space.
pub fn minimality_search(bounds: &SearchBounds) -> Result<MinimalitySearch, OracleError> {
    let spec = bounds.spec;
    let n = spec.leaf_count();
    let reference = minimizing_sequence(spec);
    let largest = reference
        .weights()
        .last()
        .expect("minimizing sequences are non-empty")
        .clone();
    if BigInt::from(bounds.max_weight) < largest {
        return Err(OracleError::MaxWeightTooSmall {
            max_weight: bounds.max_weight,
            required: largest,
        });
    }
    let candidates = sequences_with_repetition(bounds.max_weight, n);
    if candidates > BigInt::from(bounds.budget) {
        return Err(OracleError::BudgetExceeded {
            candidates,
            budget: bounds.budget,
        });
    }

    let (reference_tree, _) = build_huffman(&reference);
    let reference_cost = reference_tree.cost();

    let mut best_cost: Option<BigInt> = None;
    let mut ties: Vec<Vec<BigInt>> = Vec::new();
    let mut visited = 0u64;
    let mut current = vec![1u64; n];
    loop {
        visited += 1;
        let weights: Vec<BigInt> = current.iter().map(|&w| BigInt::from(w)).collect();
        let candidate = WeightSequence::new(weights, spec.arity())
            .expect("enumerated sequences are valid by construction");
        if candidate.is_absolutely_ordered() {
            let (tree, _) = build_huffman(&candidate);
            if tree.is_elongated() {
                let cost = tree.cost();
                match &best_cost {
                    Some(best) if &cost > best => {}
                    Some(best) if &cost == best => ties.push(candidate.weights().to_vec()),
                    _ => {
                        best_cost = Some(cost);
                        ties = vec![candidate.weights().to_vec()];
                    }
                }
            }
        }
        if !advance_non_decreasing(&mut current, bounds.max_weight) {
            break;
        }
    }

    let best_cost = best_cost.expect("the reference sequence is always admissible");
    Ok(MinimalitySearch {
        best_sequence: ties[0].clone(),
        matches_reference: reference_cost == best_cost,
        best_cost,
        reference_cost,
        tying_sequences: ties,
        visited,
    })
}

/// Advances a non-decreasing sequence to its lexicographic successor over
/// `1..=max`, returning false once exhausted.
fn advance_non_decreasing(current: &mut [u64], max: u64) -> bool {
    let n = current.len();
    for i in (0..n).rev() {
        if current[i] < max {
            current[i] += 1;
            let v = current[i];
            for slot in current.iter_mut().skip(i + 1) {
                *slot = v;
            }
            return true;
        }
    }
    false
}

/// Number of non-decreasing sequences of length `len` over `1..=max`:
/// the binomial coefficient C(max + len - 1, len).
fn sequences_with_repetition(max: u64, len: usize) -> BigInt {
    let mut result = BigInt::one();
    for k in 1..=len as u64 {
        result = result * BigInt::from(max - 1 + k) / BigInt::from(k);
    }
    result
}

/// Deterministic corpus of small valid instances with arity in {2, 3}, at
/// most 7 leaves, and weights in 1..=5; the same seed always yields the same
/// corpus, independent of platform.
pub fn small_instance_corpus(count: usize, seed: u64) -> Vec<WeightSequence> {
    let mut rng = SplitMix64(seed);
    (0..count)
        .map(|_| {
            let arity = 2 + (rng.next() % 2) as usize;
            let max_merges = 6 / (arity - 1);
            let merges = 1 + (rng.next() % max_merges as u64) as usize;
            let n = merges * (arity - 1) + 1;
            let mut weights: Vec<u64> = (0..n).map(|_| 1 + rng.next() % 5).collect();
            weights.sort_unstable();
            WeightSequence::new(weights.into_iter().map(BigInt::from).collect(), arity)
                .expect("corpus instances are valid by construction")
        })
        .collect()
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn seq(vs: &[i64], m: usize) -> WeightSequence {
        WeightSequence::new(vs.iter().map(|&v| big(v)).collect(), m).unwrap()
    }

    fn bounds(merges: usize, arity: usize, max_weight: u64) -> SearchBounds {
        SearchBounds::new(MinimizingSpec::new(merges, arity).unwrap(), max_weight)
    }

    #[test]
    fn exhaustive_cost_examples() {
        assert_eq!(
            exhaustive_optimal_cost(&seq(&[1, 1, 1, 2, 2, 4, 4], 3)),
            Ok(big(25))
        );
        assert_eq!(exhaustive_optimal_cost(&seq(&[1, 1], 2)), Ok(big(2)));
        assert_eq!(exhaustive_optimal_cost(&seq(&[1, 1, 2, 3, 5], 2)), Ok(big(25)));
    }

    #[test]
    fn binary_shape_counts_are_wedderburn_etherington() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 46];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(canonical_shape_count(2, i + 1), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn ternary_seven_leaves_has_two_shapes() {
        assert_eq!(canonical_shape_count(3, 7), 2);
        assert_eq!(canonical_shape_count(3, 5), 1);
    }

    #[test]
    fn ordered_counts_are_catalan_for_binary() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (i, &want) in catalan.iter().enumerate() {
            assert_eq!(
                ordered_shape_count(2, i + 1),
                BigInt::from(want),
                "n = {}",
                i + 1
            );
        }
    }

    #[test]
    fn cap_refusal_reports_shape_count() {
        let weights: Vec<i64> = vec![1; 11];
        let err = exhaustive_optimal_cost(&seq(&weights, 2)).unwrap_err();
        assert_eq!(
            err,
            OracleError::LeafCapExceeded {
                leaves: 11,
                cap: DEFAULT_LEAF_CAP,
                shapes: big(16796),
            }
        );
    }

    #[test]
    fn agreement_with_construction_on_corpus() {
        for input in small_instance_corpus(60, 0x5eed) {
            let (tree, _) = build_huffman(&input);
            assert_eq!(
                exhaustive_optimal_cost(&input).unwrap(),
                tree.cost(),
                "input: {:?} arity {}",
                input.weights(),
                input.arity()
            );
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(small_instance_corpus(25, 7), small_instance_corpus(25, 7));
        assert_ne!(small_instance_corpus(25, 7), small_instance_corpus(25, 8));
    }

    #[test]
    fn minimality_search_examples() {
        let found = minimality_search(&bounds(3, 2, 4)).unwrap();
        assert_eq!(found.best_cost, big(13));
        assert!(found.matches_reference);

        let found = minimality_search(&bounds(2, 3, 3)).unwrap();
        assert_eq!(found.best_cost, big(10));
        assert!(found.matches_reference);

        let found = minimality_search(&bounds(1, 2, 1)).unwrap();
        assert_eq!(found.best_sequence, vec![big(1), big(1)]);
        assert_eq!(found.best_cost, big(2));
        assert_eq!(found.visited, 1);
    }

    #[test]
    fn minimality_ties_include_reference() {
        let found = minimality_search(&bounds(2, 2, 2)).unwrap();
        assert_eq!(found.best_cost, big(6));
        assert!(found
            .tying_sequences
            .contains(&vec![big(1), big(1), big(2)]));
    }

    #[test]
    fn search_budget_refusal() {
        let err = minimality_search(&bounds(3, 2, 4).with_budget(5)).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded {
                candidates: big(35),
                budget: 5,
            }
        );
    }

    #[test]
    fn max_weight_must_cover_reference() {
        let err = minimality_search(&bounds(4, 2, 4)).unwrap_err();
        assert_eq!(
            err,
            OracleError::MaxWeightTooSmall {
                max_weight: 4,
                required: big(5),
            }
        );
    }

    #[test]
    fn max_height_examples() {
        assert_eq!(max_height_check(2, 5), Ok(true));
        assert_eq!(max_height_check(3, 7), Ok(true));
        assert_eq!(max_height_check(2, 3), Ok(true));
    }

    #[test]
    fn candidate_counting() {
        assert_eq!(sequences_with_repetition(6, 5), big(252));
        assert_eq!(sequences_with_repetition(1, 4), big(1));
        assert_eq!(sequences_with_repetition(4, 4), big(35));
    }

    #[test]
    fn non_decreasing_enumeration_is_complete_and_ordered() {
        let mut current = vec![1u64; 3];
        let mut all = vec![current.clone()];
        while advance_non_decreasing(&mut current, 3) {
            all.push(current.clone());
        }
        assert_eq!(all.len(), 10); // C(5, 3)
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        assert!(all
            .iter()
            .all(|s| s.windows(2).all(|p| p[0] <= p[1])));
    }
}
